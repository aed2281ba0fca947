// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "minicc/pipeline.hpp"

#include "minicc/errors.hpp"

namespace minicc
{
namespace
{
constexpr int k_dup_swap_limit = 16;

struct FnFlattener
{
    const StackedProgram& prog;
    const StackedFn& fn;
    ExprlessFn out;

    explicit FnFlattener(const StackedProgram& p, const StackedFn& f) : prog(p), fn(f)
    {
        out.name = f.name;
        out.kind = f.kind;
        out.n_args = f.n_args;
        out.n_slots = f.n_slots;
        out.returns_value = f.returns_value;
        out.entry = f.entry;
        out.selector_signature = f.selector_signature;
    }

    void put(ExStmt s) { out.code.push_back(std::move(s)); }

    void put_kind(ExStmt::Kind k)
    {
        ExStmt s;
        s.kind = k;
        put(std::move(s));
    }

    void put_push_value(Value v)
    {
        ExStmt s;
        s.kind = ExStmt::Kind::push;
        s.push = PushArg::of_value(std::move(v));
        put(std::move(s));
    }

    void put_push_label(Label l)
    {
        ExStmt s;
        s.kind = ExStmt::Kind::push;
        s.push = PushArg::of_label(std::move(l));
        put(std::move(s));
    }

    void put_dup(int n)
    {
        if (n > k_dup_swap_limit)
            fail("StackTooDeep",
                 fn.name + ": temp read needs DUP" + std::to_string(n));
        ExStmt s;
        s.kind = ExStmt::Kind::dup;
        s.n = n;
        put(std::move(s));
    }

    void put_swap(int n)
    {
        if (n > k_dup_swap_limit)
            fail("StackTooDeep",
                 fn.name + ": temp write needs SWAP" + std::to_string(n));
        ExStmt s;
        s.kind = ExStmt::Kind::swap;
        s.n = n;
        put(std::move(s));
    }

    void emit_rvalue(const StackedExpr& e, int depth)
    {
        ExStmt s;
        switch (e.kind)
        {
            case StackedExpr::Kind::const256:
                put_push_value(Value::from_word(e.literal));
                return;
            case StackedExpr::Kind::global:
            {
                const GlobalVar* g = prog.layout.find_global(e.global_name);
                if (!g)
                    fail("UnknownGlobal", e.global_name);
                put_push_value(Value::from_word(g->slot));
                return;
            }
            case StackedExpr::Kind::temp:
                // Slot i sits depth + n_slots - i entries below the top.
                put_dup(depth + fn.n_slots - e.temp_index);
                return;
            case StackedExpr::Kind::sload:
                put_kind(ExStmt::Kind::sload);
                return;
            case StackedExpr::Kind::unop:
                s.kind = ExStmt::Kind::unop;
                s.un = e.un;
                put(std::move(s));
                return;
            case StackedExpr::Kind::binop:
                s.kind = ExStmt::Kind::binop;
                s.bin = e.bin;
                s.swapped = e.swapped;
                put(std::move(s));
                return;
            case StackedExpr::Kind::call0:
                s.kind = ExStmt::Kind::call0;
                s.b0 = e.b0;
                put(std::move(s));
                return;
            case StackedExpr::Kind::call1:
                s.kind = ExStmt::Kind::call1;
                s.b1 = e.b1;
                put(std::move(s));
                return;
        }
        throw InternalError("to_expressionless: bad expression kind");
    }

    void emit_fetchargs()
    {
        switch (fn.kind)
        {
            case FunctionKind::method:
                // Word 0 of calldata is the selector; arguments follow.
                for (int i = 0; i < fn.n_args; ++i)
                {
                    put_push_value(Value::from_word(32 * (i + 1)));
                    put_kind(ExStmt::Kind::calldataload);
                }
                return;
            case FunctionKind::constructor:
                for (int i = 0; i < fn.n_args; ++i)
                {
                    ExStmt s;
                    s.kind = ExStmt::Kind::constructordataload;
                    s.n = i;
                    put(std::move(s));
                }
                return;
            case FunctionKind::internal:
                // Arguments are already on the stack, left by the caller.
                return;
        }
    }

    void emit_done()
    {
        if (fn.kind == FunctionKind::internal)
        {
            // Collapse the frame so only the return value (if any) and
            // the caller's return label remain, label on top.
            if (fn.returns_value)
            {
                put_swap(fn.n_slots + 1);
                for (int i = 0; i < fn.n_slots; ++i)
                {
                    put_swap(1);
                    put_kind(ExStmt::Kind::pop);
                }
            }
            else
            {
                for (int i = 0; i < fn.n_slots; ++i)
                    put_kind(ExStmt::Kind::pop);
            }
        }
        ExStmt s;
        s.kind = ExStmt::Kind::done;
        s.fn_kind = fn.kind;
        s.returns_value = fn.returns_value;
        put(std::move(s));
    }

    void emit_stmt(const StackedStmt& st, int depth)
    {
        switch (st.kind)
        {
            case StackedStmt::Kind::skip:
                put_kind(ExStmt::Kind::skip);
                return;
            case StackedStmt::Kind::rvalue:
                emit_rvalue(st.expr, depth);
                return;
            case StackedStmt::Kind::pushvoid:
                put_push_value(Value::from_word(0));
                return;
            case StackedStmt::Kind::pop:
                put_kind(ExStmt::Kind::pop);
                return;
            case StackedStmt::Kind::assign:
                put_kind(ExStmt::Kind::sstore);
                return;
            case StackedStmt::Kind::set:
                // Value is on top and counted in depth; swap it into
                // the slot and drop the old slot contents.
                put_swap(depth + fn.n_slots - st.n - 1);
                put_kind(ExStmt::Kind::pop);
                return;
            case StackedStmt::Kind::done:
                emit_done();
                return;
            case StackedStmt::Kind::pushlabel:
                put_push_label(st.label);
                return;
            case StackedStmt::Kind::label:
            {
                ExStmt s;
                s.kind = ExStmt::Kind::label;
                s.label = st.label;
                put(std::move(s));
                return;
            }
            case StackedStmt::Kind::jump_call:
                if (fn.kind == FunctionKind::constructor)
                    fail("CallInConstructor",
                         fn.name + " calls a function during deployment");
                put_kind(ExStmt::Kind::jump);
                return;
            case StackedStmt::Kind::jump_internal:
                put_kind(ExStmt::Kind::jump);
                return;
            case StackedStmt::Kind::jumpi:
                put_kind(ExStmt::Kind::jumpi);
                return;
            case StackedStmt::Kind::transfer:
                put_kind(ExStmt::Kind::transfer);
                return;
            case StackedStmt::Kind::callmethod:
            {
                ExStmt s;
                s.kind = ExStmt::Kind::callmethod;
                s.cm_args = st.cm_args;
                s.cm_rets = st.cm_rets;
                put(std::move(s));
                return;
            }
            case StackedStmt::Kind::log:
            {
                ExStmt s;
                s.kind = ExStmt::Kind::log;
                s.log_topics = st.log_topics;
                s.log_data = st.log_data;
                put(std::move(s));
                return;
            }
            case StackedStmt::Kind::revert:
                put_kind(ExStmt::Kind::revert);
                return;
            case StackedStmt::Kind::fetchargs:
                emit_fetchargs();
                return;
        }
        throw InternalError("to_expressionless: bad statement kind");
    }
};
}  // namespace

ExprlessProgram to_expressionless(const StackedProgram& p)
{
    ExprlessProgram out;
    out.name = p.name;
    out.layout = p.layout;
    out.source_node_count = p.source_node_count;
    for (const auto& f : p.functions)
    {
        if (f.depth_before.size() != f.code.size())
            throw InternalError("to_expressionless: depth annotations out of step");
        FnFlattener fl(p, f);
        for (size_t i = 0; i < f.code.size(); ++i)
            fl.emit_stmt(f.code[i], f.depth_before[i]);
        out.functions.push_back(std::move(fl.out));
    }
    return out;
}
}  // namespace minicc
