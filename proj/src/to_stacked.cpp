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
struct FnStacker
{
    const ClinearProgram& prog;
    const ClinearFn& fn;
    StackedFn out;
    /// Work entries above the frame at the next statement.
    int depth = 0;
    /// Whether the previous statement can fall into the next one.
    bool flow_open = true;
    /// Return label -> (result slot or -1, callee returns a value).
    std::map<Label, std::pair<int, bool>> pending;

    explicit FnStacker(const ClinearProgram& p, const ClinearFn& f) : prog(p), fn(f)
    {
        out.name = f.name;
        out.kind = f.kind;
        out.n_args = f.n_args;
        out.n_slots = f.n_slots;
        out.returns_value = f.returns_value;
        out.entry = f.entry;
        out.selector_signature = f.selector_signature;
    }

    void put(StackedStmt s)
    {
        out.depth_before.push_back(depth);
        out.code.push_back(std::move(s));
    }

    void put_rvalue(StackedExpr e, int net)
    {
        StackedStmt s;
        s.kind = StackedStmt::Kind::rvalue;
        s.expr = std::move(e);
        put(std::move(s));
        depth += net;
    }

    void emit_expr(const CExprPtr& e)
    {
        StackedExpr se;
        switch (e->kind)
        {
            case CExpr::Kind::cnst:
                se.kind = StackedExpr::Kind::const256;
                se.literal = e->literal;
                put_rvalue(std::move(se), +1);
                return;
            case CExpr::Kind::temp:
                se.kind = StackedExpr::Kind::temp;
                se.temp_index = e->temp_id;
                put_rvalue(std::move(se), +1);
                return;
            case CExpr::Kind::sload:
                emit_expr(e->sub);
                se.kind = StackedExpr::Kind::sload;
                put_rvalue(std::move(se), 0);
                return;
            case CExpr::Kind::unop:
                emit_expr(e->sub);
                se.kind = StackedExpr::Kind::unop;
                se.un = e->un;
                put_rvalue(std::move(se), 0);
                return;
            case CExpr::Kind::binop:
                // Right operand first, so the left lands on top where
                // the operator expects it. No swaps, ever.
                emit_expr(e->rhs);
                emit_expr(e->lhs);
                se.kind = StackedExpr::Kind::binop;
                se.bin = e->bin;
                put_rvalue(std::move(se), -1);
                return;
            case CExpr::Kind::hash1:
                emit_expr(e->sub);
                se.kind = StackedExpr::Kind::unop;
                se.un = IrUnop::ohash1;
                put_rvalue(std::move(se), 0);
                return;
            case CExpr::Kind::hash2:
                // Key on top: the hash cell order is (key, base), the
                // mapping-layout convention.
                emit_expr(e->lhs);
                emit_expr(e->rhs);
                se.kind = StackedExpr::Kind::binop;
                se.bin = IrBinop::ohash2;
                put_rvalue(std::move(se), -1);
                return;
            case CExpr::Kind::call0:
                se.kind = StackedExpr::Kind::call0;
                se.b0 = e->b0;
                put_rvalue(std::move(se), +1);
                return;
            case CExpr::Kind::call1:
                emit_expr(e->sub);
                se.kind = StackedExpr::Kind::call1;
                se.b1 = e->b1;
                put_rvalue(std::move(se), 0);
                return;
        }
        throw InternalError("to_stacked: bad expression kind");
    }

    void put_pushlabel(const Label& l)
    {
        StackedStmt s;
        s.kind = StackedStmt::Kind::pushlabel;
        s.label = l;
        put(std::move(s));
        ++depth;
    }

    void emit_stmt(const LinStmt& s)
    {
        switch (s.kind)
        {
            case LinStmt::Kind::label:
            {
                int arrival = 0;
                auto it = pending.find(s.label);
                if (it != pending.end())
                    arrival = it->second.second ? 1 : 0;
                if (flow_open && depth != arrival)
                    throw InternalError("to_stacked: depth mismatch at label " + s.label);
                depth = arrival;
                flow_open = true;
                StackedStmt st;
                st.kind = StackedStmt::Kind::label;
                st.label = s.label;
                put(std::move(st));
                if (it != pending.end())
                {
                    auto [slot, has_value] = it->second;
                    if (slot >= 0)
                    {
                        if (!has_value)
                            throw InternalError(
                                "to_stacked: result wanted from a void call");
                        StackedStmt set;
                        set.kind = StackedStmt::Kind::set;
                        set.n = slot;
                        put(std::move(set));
                        --depth;
                    }
                    else if (has_value)
                    {
                        StackedStmt pop;
                        pop.kind = StackedStmt::Kind::pop;
                        put(std::move(pop));
                        --depth;
                    }
                    pending.erase(it);
                }
                return;
            }
            case LinStmt::Kind::fetchargs:
            {
                StackedStmt st;
                st.kind = StackedStmt::Kind::fetchargs;
                put(std::move(st));
                return;
            }
            case LinStmt::Kind::intro:
            {
                StackedStmt st;
                st.kind = StackedStmt::Kind::pushvoid;
                put(std::move(st));
                return;
            }
            case LinStmt::Kind::skip:
            {
                StackedStmt st;
                st.kind = StackedStmt::Kind::skip;
                put(std::move(st));
                return;
            }
            case LinStmt::Kind::set:
            {
                emit_expr(s.value);
                StackedStmt st;
                st.kind = StackedStmt::Kind::set;
                st.n = s.temp_id;
                put(std::move(st));
                --depth;
                return;
            }
            case LinStmt::Kind::sstore:
            {
                emit_expr(s.value);
                emit_expr(s.ptr);
                StackedStmt st;
                st.kind = StackedStmt::Kind::assign;
                put(std::move(st));
                depth -= 2;
                return;
            }
            case LinStmt::Kind::transfer:
            {
                emit_expr(s.ptr);
                emit_expr(s.value);
                StackedStmt st;
                st.kind = StackedStmt::Kind::transfer;
                put(std::move(st));
                depth -= 2;
                return;
            }
            case LinStmt::Kind::log:
            {
                for (size_t i = s.topics.size(); i-- > 0;)
                    emit_expr(s.topics[i]);
                for (size_t i = s.args.size(); i-- > 0;)
                    emit_expr(s.args[i]);
                StackedStmt st;
                st.kind = StackedStmt::Kind::log;
                st.log_topics = static_cast<int>(s.topics.size());
                st.log_data = static_cast<int>(s.args.size());
                put(std::move(st));
                depth -= static_cast<int>(s.topics.size() + s.args.size());
                return;
            }
            case LinStmt::Kind::jump:
            {
                put_pushlabel(s.label);
                StackedStmt st;
                st.kind = StackedStmt::Kind::jump_internal;
                put(std::move(st));
                --depth;
                flow_open = false;
                return;
            }
            case LinStmt::Kind::jumpi:
            {
                emit_expr(s.cond);
                put_pushlabel(s.label);
                StackedStmt st;
                st.kind = StackedStmt::Kind::jumpi;
                put(std::move(st));
                depth -= 2;
                return;
            }
            case LinStmt::Kind::call:
            {
                const ClinearFn* callee = prog.find(s.callee);
                if (!callee)
                    fail("UnresolvedLabel", "call to undefined function " + s.callee);
                if (callee->kind != FunctionKind::internal)
                    fail("TypeMismatch",
                         "call target is not an internal function: " + s.callee);
                put_pushlabel(s.cont);
                for (const auto& a : s.args)
                    emit_expr(a);
                put_pushlabel(callee->entry);
                StackedStmt st;
                st.kind = StackedStmt::Kind::jump_call;
                put(std::move(st));
                pending[s.cont] = {s.temp_id, callee->returns_value};
                flow_open = false;
                return;
            }
            case LinStmt::Kind::done:
            {
                if (s.ret)
                    emit_expr(*s.ret);
                else if (fn.returns_value)
                    throw InternalError("to_stacked: value function returns nothing");
                StackedStmt st;
                st.kind = StackedStmt::Kind::done;
                st.n = fn.n_slots;
                st.returns_value = fn.returns_value;
                put(std::move(st));
                flow_open = false;
                return;
            }
            case LinStmt::Kind::callmethod:
            {
                StackedStmt st;
                st.kind = StackedStmt::Kind::callmethod;
                st.cm_args = static_cast<int>(s.callmethod_args.size());
                st.cm_rets = s.temp_id >= 0 ? 1 : 0;
                put(std::move(st));
                return;
            }
            case LinStmt::Kind::revert:
            {
                StackedStmt st;
                st.kind = StackedStmt::Kind::revert;
                put(std::move(st));
                flow_open = false;
                return;
            }
        }
        throw InternalError("to_stacked: bad statement kind");
    }
};
}  // namespace

StackedProgram to_stacked(const ClinearProgram& p)
{
    StackedProgram out;
    out.name = p.name;
    out.layout = p.layout;
    out.source_node_count = p.source_node_count;

    for (const auto& f : p.functions)
    {
        FnStacker st(p, f);
        for (const auto& s : f.code)
            st.emit_stmt(s);
        if (!st.pending.empty())
            throw InternalError("to_stacked: unplaced return label in " + f.name);
        out.functions.push_back(std::move(st.out));
    }

    // Every label referenced by a push must be defined exactly once in
    // the whole program.
    std::map<Label, int> defined;
    for (const auto& f : out.functions)
        for (const auto& s : f.code)
            if (s.kind == StackedStmt::Kind::label)
                ++defined[s.label];
    for (const auto& [l, count] : defined)
        if (count > 1)
            fail("DuplicateLabel", l);
    for (const auto& f : out.functions)
        for (const auto& s : f.code)
            if (s.kind == StackedStmt::Kind::pushlabel && !defined.count(s.label))
                fail("UnresolvedLabel", s.label + " referenced in " + f.name);
    return out;
}
}  // namespace minicc
