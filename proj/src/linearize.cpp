// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "minicc/pipeline.hpp"

#include "minicc/errors.hpp"

#include <map>

namespace minicc
{
namespace
{
LinStmt lin_of_cfg(const CfgStmt& s)
{
    LinStmt out;
    switch (s.kind)
    {
        case CfgStmt::Kind::skip:
            out.kind = LinStmt::Kind::skip;
            return out;
        case CfgStmt::Kind::sstore:
            out.kind = LinStmt::Kind::sstore;
            out.ptr = s.ptr;
            out.value = s.value;
            return out;
        case CfgStmt::Kind::set:
            out.kind = LinStmt::Kind::set;
            out.temp_id = s.temp_id;
            out.value = s.value;
            return out;
        case CfgStmt::Kind::transfer:
            out.kind = LinStmt::Kind::transfer;
            out.ptr = s.ptr;
            out.value = s.value;
            return out;
        case CfgStmt::Kind::log:
            out.kind = LinStmt::Kind::log;
            out.topics = s.topics;
            out.args = s.args;
            return out;
        case CfgStmt::Kind::callmethod:
            out.kind = LinStmt::Kind::callmethod;
            out.ptr = s.ptr;
            out.callmethod_args = s.callmethod_args;
            out.temp_id = s.temp_id;
            return out;
        default:
            throw InternalError("linearize: control statement in a block body");
    }
}
}  // namespace

ClinearFn linearize_fn(const CbasicFn& f)
{
    std::map<Label, size_t> index;
    for (size_t i = 0; i < f.blocks.size(); ++i)
        index[f.blocks[i].label] = i;
    auto block_id = [&](const Label& l) {
        auto it = index.find(l);
        if (it == index.end())
            throw InternalError("linearize: jump to a label without a block: " + l);
        return it->second;
    };

    // Depth-first layout. A block's successors are visited smallest
    // node id first, which places the false arm of a branch (built
    // with the smaller id) directly after it.
    std::vector<size_t> layout;
    std::vector<bool> seen(f.blocks.size(), false);
    auto visit = [&](auto&& self, size_t i) -> void {
        if (seen[i])
            return;
        seen[i] = true;
        layout.push_back(i);
        const Terminator& t = f.blocks[i].term;
        switch (t.kind)
        {
            case Terminator::Kind::jump:
                self(self, block_id(t.target));
                break;
            case Terminator::Kind::branch:
            {
                size_t a = block_id(t.target);
                size_t b = block_id(t.target2);
                self(self, std::min(a, b));
                self(self, std::max(a, b));
                break;
            }
            case Terminator::Kind::call:
                self(self, block_id(t.cont));
                break;
            case Terminator::Kind::done:
            case Terminator::Kind::revert:
                break;
        }
    };
    visit(visit, block_id(f.entry));

    ClinearFn out;
    out.name = f.name;
    out.kind = f.kind;
    out.n_args = f.n_args;
    out.n_slots = f.n_slots;
    out.returns_value = f.returns_value;
    out.selector_signature = f.selector_signature;
    out.entry = f.name + "$entry";

    LinStmt entry_label;
    entry_label.kind = LinStmt::Kind::label;
    entry_label.label = out.entry;
    out.code.push_back(std::move(entry_label));
    LinStmt fetch;
    fetch.kind = LinStmt::Kind::fetchargs;
    out.code.push_back(std::move(fetch));
    for (int i = f.n_args; i < f.n_slots; ++i)
    {
        LinStmt intro;
        intro.kind = LinStmt::Kind::intro;
        out.code.push_back(std::move(intro));
    }

    int ret_counter = 0;
    for (size_t pos = 0; pos < layout.size(); ++pos)
    {
        const BasicBlock& b = f.blocks[layout[pos]];
        std::optional<size_t> next;
        if (pos + 1 < layout.size())
            next = layout[pos + 1];

        LinStmt lbl;
        lbl.kind = LinStmt::Kind::label;
        lbl.label = b.label;
        out.code.push_back(std::move(lbl));
        for (const auto& s : b.body)
            out.code.push_back(lin_of_cfg(s));

        auto emit_jump_unless_next = [&](const Label& target) {
            if (next && f.blocks[*next].label == target)
                return;
            LinStmt j;
            j.kind = LinStmt::Kind::jump;
            j.label = target;
            out.code.push_back(std::move(j));
        };

        switch (b.term.kind)
        {
            case Terminator::Kind::jump:
                emit_jump_unless_next(b.term.target);
                break;
            case Terminator::Kind::branch:
            {
                LinStmt ji;
                ji.kind = LinStmt::Kind::jumpi;
                ji.cond = b.term.cond;
                ji.label = b.term.target;
                out.code.push_back(std::move(ji));
                emit_jump_unless_next(b.term.target2);
                break;
            }
            case Terminator::Kind::call:
            {
                Label rl = f.name + "$r" + std::to_string(ret_counter++);
                LinStmt call;
                call.kind = LinStmt::Kind::call;
                call.callee = b.term.callee;
                call.args = b.term.args;
                call.temp_id = b.term.result_temp;
                call.cont = rl;
                out.code.push_back(std::move(call));
                LinStmt rlbl;
                rlbl.kind = LinStmt::Kind::label;
                rlbl.label = rl;
                out.code.push_back(std::move(rlbl));
                emit_jump_unless_next(b.term.cont);
                break;
            }
            case Terminator::Kind::done:
            {
                LinStmt done;
                done.kind = LinStmt::Kind::done;
                done.ret = b.term.ret;
                out.code.push_back(std::move(done));
                break;
            }
            case Terminator::Kind::revert:
            {
                LinStmt rv;
                rv.kind = LinStmt::Kind::revert;
                out.code.push_back(std::move(rv));
                break;
            }
        }
    }
    return out;
}

ClinearProgram linearize(const CbasicProgram& p)
{
    ClinearProgram out;
    out.name = p.name;
    out.layout = p.layout;
    out.source_node_count = p.source_node_count;
    for (const auto& f : p.functions)
        out.functions.push_back(linearize_fn(f));
    return out;
}
}  // namespace minicc
