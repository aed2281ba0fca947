// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "minicc/pipeline.hpp"

#include "minicc/errors.hpp"

namespace minicc
{
CbasicFn to_cbasic_fn(const CfgFn& f)
{
    auto label_of = [&](int node) { return f.name + "$b" + std::to_string(node); };

    CbasicFn out;
    out.name = f.name;
    out.kind = f.kind;
    out.n_args = f.n_args;
    out.n_slots = f.n_temps;
    out.returns_value = f.returns_value;
    out.selector_signature = f.selector_signature;
    out.entry = label_of(f.entry);

    for (size_t i = 0; i < f.nodes.size(); ++i)
    {
        const CfgNode& node = f.nodes[i];
        BasicBlock b;
        b.label = label_of(static_cast<int>(i));
        switch (node.stmt.kind)
        {
            case CfgStmt::Kind::branch:
                b.term.kind = Terminator::Kind::branch;
                b.term.cond = node.stmt.cond;
                b.term.target = label_of(node.succ.at(0));
                b.term.target2 = label_of(node.succ.at(1));
                break;
            case CfgStmt::Kind::call:
                b.term.kind = Terminator::Kind::call;
                b.term.callee = node.stmt.callee;
                b.term.args = node.stmt.args;
                b.term.result_temp = node.stmt.temp_id;
                b.term.cont = label_of(node.succ.at(0));
                break;
            case CfgStmt::Kind::done:
                b.term.kind = Terminator::Kind::done;
                b.term.ret = node.stmt.ret;
                break;
            case CfgStmt::Kind::revert:
                b.term.kind = Terminator::Kind::revert;
                break;
            default:
                b.body.push_back(node.stmt);
                b.term.kind = Terminator::Kind::jump;
                b.term.target = label_of(node.succ.at(0));
                break;
        }
        out.blocks.push_back(std::move(b));
    }
    return out;
}

CbasicProgram to_cbasic(const CgraphProgram& p)
{
    CbasicProgram out;
    out.name = p.name;
    out.layout = p.layout;
    out.source_node_count = p.source_node_count;
    for (const auto& f : p.functions)
        out.functions.push_back(to_cbasic_fn(f));
    return out;
}
}  // namespace minicc
