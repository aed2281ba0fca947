// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "minicc/pipeline.hpp"

#include "minicc/errors.hpp"

#include <algorithm>

namespace minicc
{
namespace
{
/// A stack frame can hold at most this many addressable slots; deeper
/// frames would need dup/swap indices past 16.
constexpr int k_max_slots = 15;

CExprPtr rename_expr(const CExprPtr& e, const std::vector<int>& map)
{
    if (!e)
        return e;
    switch (e->kind)
    {
        case CExpr::Kind::cnst:
        case CExpr::Kind::call0:
            return e;
        case CExpr::Kind::temp:
            return CExpr::make_temp(map[static_cast<size_t>(e->temp_id)]);
        case CExpr::Kind::sload:
            return CExpr::make_sload(rename_expr(e->sub, map));
        case CExpr::Kind::unop:
            return CExpr::make_unop(e->un, rename_expr(e->sub, map));
        case CExpr::Kind::binop:
            return CExpr::make_binop(e->bin, rename_expr(e->lhs, map),
                                     rename_expr(e->rhs, map));
        case CExpr::Kind::hash1:
            return CExpr::make_hash1(rename_expr(e->sub, map));
        case CExpr::Kind::hash2:
            return CExpr::make_hash2(rename_expr(e->lhs, map), rename_expr(e->rhs, map));
        case CExpr::Kind::call1:
            return CExpr::make_call1(e->b1, rename_expr(e->sub, map));
    }
    throw InternalError("regalloc: bad expression kind");
}

CfgStmt rename_stmt(const CfgStmt& s, const std::vector<int>& map)
{
    CfgStmt out = s;
    out.ptr = rename_expr(s.ptr, map);
    out.value = rename_expr(s.value, map);
    out.cond = rename_expr(s.cond, map);
    for (auto& a : out.args)
        a = rename_expr(a, map);
    for (auto& t : out.topics)
        t = rename_expr(t, map);
    if (out.ret)
        *out.ret = rename_expr(*out.ret, map);
    if (out.temp_id >= 0)
        out.temp_id = map[static_cast<size_t>(out.temp_id)];
    for (auto& a : out.callmethod_args)
        a = map[static_cast<size_t>(a)];
    return out;
}
}  // namespace

CfgFn allocate_temps(const CfgFn& f, const Liveness& live)
{
    int n = f.n_temps;
    int n_args = f.n_args;
    if (n_args > k_max_slots)
        fail("StackTooDeep",
             f.name + ": " + std::to_string(n_args) + " arguments need more than " +
                 std::to_string(k_max_slots) + " frame slots");

    std::vector<std::set<int>> adj(static_cast<size_t>(n));
    auto connect = [&](int a, int b) {
        if (a != b)
        {
            adj[static_cast<size_t>(a)].insert(b);
            adj[static_cast<size_t>(b)].insert(a);
        }
    };
    for (size_t i = 0; i < f.nodes.size(); ++i)
    {
        int d = cfg_stmt_def(f.nodes[i].stmt);
        if (d >= 0)
            for (int t : live.live_out[i])
                connect(d, t);
    }
    // Arguments are defined on entry, all at once.
    if (!f.nodes.empty())
        for (int a = 0; a < n_args; ++a)
            for (int t : live.live_in[static_cast<size_t>(f.entry)])
                connect(a, t);
    for (int a = 0; a < n_args; ++a)
        for (int b = a + 1; b < n_args; ++b)
            connect(a, b);

    // Maximum cardinality search: repeatedly take the vertex with the
    // most already-ordered neighbors. Arguments come first since their
    // colors are fixed; ties break on the smaller id.
    std::vector<int> order;
    std::vector<bool> placed(static_cast<size_t>(n), false);
    std::vector<int> weight(static_cast<size_t>(n), 0);
    auto place = [&](int v) {
        placed[static_cast<size_t>(v)] = true;
        order.push_back(v);
        for (int u : adj[static_cast<size_t>(v)])
            ++weight[static_cast<size_t>(u)];
    };
    for (int a = 0; a < n_args; ++a)
        place(a);
    for (int step = n_args; step < n; ++step)
    {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!placed[static_cast<size_t>(v)] &&
                (best < 0 || weight[static_cast<size_t>(v)] > weight[static_cast<size_t>(best)]))
                best = v;
        place(best);
    }

    std::vector<int> color(static_cast<size_t>(n), -1);
    for (int a = 0; a < n_args; ++a)
        color[static_cast<size_t>(a)] = a;
    for (int v : order)
    {
        if (color[static_cast<size_t>(v)] >= 0)
            continue;
        std::set<int> used;
        for (int u : adj[static_cast<size_t>(v)])
            if (color[static_cast<size_t>(u)] >= 0)
                used.insert(color[static_cast<size_t>(u)]);
        int c = 0;
        while (used.count(c))
            ++c;
        if (c >= k_max_slots)
            fail("StackTooDeep", f.name + ": more than " + std::to_string(k_max_slots) +
                                     " simultaneously live temps");
        color[static_cast<size_t>(v)] = c;
    }

    int n_slots = n_args;
    for (int c : color)
        n_slots = std::max(n_slots, c + 1);

    CfgFn out;
    out.name = f.name;
    out.kind = f.kind;
    out.n_args = n_args;
    out.n_temps = n_slots;
    out.returns_value = f.returns_value;
    out.entry = f.entry;
    out.selector_signature = f.selector_signature;
    for (const auto& node : f.nodes)
        out.nodes.push_back({rename_stmt(node.stmt, color), node.succ});
    return out;
}

CgraphProgram allocate_program(const CgraphProgram& p)
{
    CgraphProgram out;
    out.name = p.name;
    out.layout = p.layout;
    out.source_node_count = p.source_node_count;
    for (const auto& f : p.functions)
        out.functions.push_back(allocate_temps(f, liveness(f)));
    return out;
}
}  // namespace minicc
