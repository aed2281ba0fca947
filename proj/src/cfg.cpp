// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "minicc/pipeline.hpp"

#include "minicc/errors.hpp"

namespace minicc
{
namespace
{
struct CfgBuilder
{
    std::vector<CfgNode> nodes;

    int add(CfgStmt stmt, std::vector<int> succ)
    {
        nodes.push_back({std::move(stmt), std::move(succ)});
        return static_cast<int>(nodes.size()) - 1;
    }

    /// Emits nodes for s so that execution continues at succ; returns
    /// the entry node of s. Built bottom-up, so statements later in
    /// the text get smaller ids; the false arm of a branch is emitted
    /// first so it always has the smaller id of the two.
    int emit(const ClikeStmtPtr& s, int succ, int break_to)
    {
        switch (s->kind)
        {
            case ClikeStmt::Kind::skip:
            {
                CfgStmt st;
                st.kind = CfgStmt::Kind::skip;
                return add(std::move(st), {succ});
            }
            case ClikeStmt::Kind::sstore:
            {
                CfgStmt st;
                st.kind = CfgStmt::Kind::sstore;
                st.ptr = s->ptr;
                st.value = s->value;
                return add(std::move(st), {succ});
            }
            case ClikeStmt::Kind::set:
            {
                CfgStmt st;
                st.kind = CfgStmt::Kind::set;
                st.temp_id = s->temp_id;
                st.value = s->value;
                return add(std::move(st), {succ});
            }
            case ClikeStmt::Kind::call:
            {
                CfgStmt st;
                st.kind = CfgStmt::Kind::call;
                st.temp_id = s->temp_id;
                st.callee = s->callee;
                st.args = s->args;
                return add(std::move(st), {succ});
            }
            case ClikeStmt::Kind::sequence:
                return emit(s->s1, emit(s->s2, succ, break_to), break_to);
            case ClikeStmt::Kind::ifte:
            {
                int on_false = emit(s->s2, succ, break_to);
                int on_true = emit(s->s1, succ, break_to);
                CfgStmt st;
                st.kind = CfgStmt::Kind::branch;
                st.cond = s->ptr;
                return add(std::move(st), {on_true, on_false});
            }
            case ClikeStmt::Kind::loop:
            {
                CfgStmt header;
                header.kind = CfgStmt::Kind::skip;
                int h = add(std::move(header), {});
                int body = emit(s->s1, h, succ);
                nodes[static_cast<size_t>(h)].succ = {body};
                return h;
            }
            case ClikeStmt::Kind::break_:
            {
                if (break_to < 0)
                    throw InternalError("cfg: break outside a loop");
                CfgStmt st;
                st.kind = CfgStmt::Kind::skip;
                return add(std::move(st), {break_to});
            }
            case ClikeStmt::Kind::done:
            {
                CfgStmt st;
                st.kind = CfgStmt::Kind::done;
                if (s->value)
                    st.ret = s->value;
                return add(std::move(st), {});
            }
            case ClikeStmt::Kind::transfer:
            {
                CfgStmt st;
                st.kind = CfgStmt::Kind::transfer;
                st.ptr = s->ptr;
                st.value = s->value;
                return add(std::move(st), {succ});
            }
            case ClikeStmt::Kind::callmethod:
            {
                CfgStmt st;
                st.kind = CfgStmt::Kind::callmethod;
                st.ptr = s->ptr;
                st.callmethod_args = s->callmethod_args;
                st.temp_id = s->temp_id;
                return add(std::move(st), {succ});
            }
            case ClikeStmt::Kind::log:
            {
                CfgStmt st;
                st.kind = CfgStmt::Kind::log;
                st.topics = s->topics;
                st.args = s->args;
                return add(std::move(st), {succ});
            }
            case ClikeStmt::Kind::revert:
            {
                CfgStmt st;
                st.kind = CfgStmt::Kind::revert;
                return add(std::move(st), {});
            }
        }
        throw InternalError("cfg: bad statement kind");
    }
};
}  // namespace

CfgFn build_cfg(const ClikeFn& f)
{
    CfgBuilder b;
    CfgStmt fallback;
    fallback.kind = CfgStmt::Kind::done;
    int exit_node = b.add(std::move(fallback), {});

    CfgFn out;
    out.name = f.name;
    out.kind = f.kind;
    out.n_args = f.n_args;
    out.n_temps = f.n_temps;
    out.returns_value = f.returns_value;
    out.selector_signature = f.selector_signature;
    out.entry = b.emit(f.body, exit_node, -1);
    out.nodes = std::move(b.nodes);
    out.prune_unreachable();
    return out;
}

CgraphProgram to_cgraph(const ClikeProgram& p)
{
    CgraphProgram out;
    out.name = p.name;
    out.layout = p.layout;
    out.source_node_count = p.source_node_count;
    for (const auto& f : p.functions)
        out.functions.push_back(build_cfg(f));
    return out;
}
}  // namespace minicc
