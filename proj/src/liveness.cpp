// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "minicc/pipeline.hpp"

#include "minicc/errors.hpp"

namespace minicc
{
namespace
{
void expr_temps(const CExprPtr& e, std::set<int>& out)
{
    if (!e)
        return;
    std::vector<int> ids;
    e->collect_temps(ids);
    out.insert(ids.begin(), ids.end());
}
}  // namespace

std::set<int> cfg_stmt_uses(const CfgStmt& s)
{
    std::set<int> out;
    expr_temps(s.ptr, out);
    expr_temps(s.value, out);
    expr_temps(s.cond, out);
    for (const auto& a : s.args)
        expr_temps(a, out);
    for (const auto& t : s.topics)
        expr_temps(t, out);
    if (s.ret)
        expr_temps(*s.ret, out);
    out.insert(s.callmethod_args.begin(), s.callmethod_args.end());
    return out;
}

int cfg_stmt_def(const CfgStmt& s)
{
    if (s.kind == CfgStmt::Kind::set || s.kind == CfgStmt::Kind::call ||
        s.kind == CfgStmt::Kind::callmethod)
        return s.temp_id;
    return -1;
}

Liveness liveness(const CfgFn& f)
{
    size_t n = f.nodes.size();
    Liveness lv;
    lv.live_in.assign(n, {});
    lv.live_out.assign(n, {});

    std::vector<std::set<int>> uses(n);
    std::vector<int> defs(n);
    for (size_t i = 0; i < n; ++i)
    {
        uses[i] = cfg_stmt_uses(f.nodes[i].stmt);
        defs[i] = cfg_stmt_def(f.nodes[i].stmt);
    }

    bool changed = true;
    while (changed)
    {
        changed = false;
        for (size_t i = n; i-- > 0;)
        {
            std::set<int> out;
            for (int s : f.nodes[i].succ)
                out.insert(lv.live_in[static_cast<size_t>(s)].begin(),
                           lv.live_in[static_cast<size_t>(s)].end());
            std::set<int> in = uses[i];
            for (int t : out)
                if (t != defs[i])
                    in.insert(t);
            if (out != lv.live_out[i] || in != lv.live_in[i])
            {
                lv.live_out[i] = std::move(out);
                lv.live_in[i] = std::move(in);
                changed = true;
            }
        }
    }
    return lv;
}
}  // namespace minicc
