// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "minicc/ir_exec.hpp"

#include "minicc/errors.hpp"
#include "minicc/gas.hpp"
#include "minicc/pipeline.hpp"

#include <map>
#include <optional>

namespace minicc
{
namespace
{
constexpr int k_max_call_depth = 256;

Word mask160()
{
    return (Word(1) << 160) - 1;
}

Word as_int(const Value& v, const char* what)
{
    if (!v.is_int())
        fail("StuckState", std::string(what) + " is not an integer value: " + v.str());
    return v.word();
}

/// Storage pointers computed by compiled code are slot constants or
/// hash chains with integer indices; anything else is stuck.
HashKey value_to_key(const Value& v)
{
    if (v.is_int())
        return HashKey::singleton(v.word());
    if (v.kind() == Value::Kind::hash2 && v.second().is_int())
        return HashKey::pair(value_to_key(v.first()), v.second().word());
    fail("StuckState", "storage pointer is not a slot or hash chain: " + v.str());
}

const TypePtr& word_type()
{
    static const TypePtr t = Type::make_int(256);
    return t;
}

void check_call_args(const std::string& name, size_t want,
                     const std::vector<Value>& args)
{
    if (args.size() != want)
        fail("ArityMismatch", name + " expects " + std::to_string(want) +
                                  " arguments, got " + std::to_string(args.size()));
    for (const auto& a : args)
        if (!a.is_int())
            fail("TypeMismatch", "arguments must be integer values");
}

template <class Prog>
int64_t count_methods(const Prog& p)
{
    int64_t n = 0;
    for (const auto& f : p.functions)
        if (f.kind == FunctionKind::method)
            ++n;
    return n;
}

bool slot_is_zero(const Memory& m, const HashKey& k)
{
    auto it = m.storage_entries().find(k);
    if (it == m.storage_entries().end())
        return true;
    return it->second.is_int() && it->second.word() == 0;
}

// ===========================================================================
// Upper-bound phases: Clike, Cgraph, Cbasic, Clinear. These charge the
// same per-construct bounds as the reference executor, so the bound
// can only stay or shrink along the pipeline.

struct BCtx
{
    Memory mem;
    MachineEnv env;
    std::vector<LogRecord> events;
    int64_t gas = 0;
};

Value eval_cexpr(BCtx& c, const std::vector<Value>& temps, const CExprPtr& e)
{
    if (!e)
        throw InternalError("ir run: missing expression");
    switch (e->kind)
    {
        case CExpr::Kind::cnst:
            c.gas += gas::bound::expr_node;
            return Value::from_word(e->literal);
        case CExpr::Kind::temp:
            c.gas += gas::bound::expr_node;
            if (e->temp_id < 0 || e->temp_id >= static_cast<int>(temps.size()))
                fail("StuckState", "temp id out of range: " + std::to_string(e->temp_id));
            return temps[e->temp_id];
        case CExpr::Kind::sload:
        {
            c.gas += gas::bound::sload_node;
            Value ptr = eval_cexpr(c, temps, e->sub);
            return c.mem.sread(value_to_key(ptr), word_type());
        }
        case CExpr::Kind::unop:
        {
            if (e->un == IrUnop::ohash1)
            {
                c.gas += gas::bound::hash_node;
                return Value::hash1(eval_cexpr(c, temps, e->sub));
            }
            c.gas += gas::bound::expr_node;
            Word x = as_int(eval_cexpr(c, temps, e->sub), "operand");
            return Value::from_word(e->un == IrUnop::lnot ? Word(x == 0 ? 1 : 0) : ~x);
        }
        case CExpr::Kind::binop:
        {
            if (e->bin == IrBinop::ohash2)
            {
                c.gas += gas::bound::hash_node;
                Value base = eval_cexpr(c, temps, e->lhs);
                Value key = eval_cexpr(c, temps, e->rhs);
                return Value::hash2(std::move(base), std::move(key));
            }
            c.gas += gas::bound::expr_node;
            Word a = as_int(eval_cexpr(c, temps, e->lhs), "operand");
            Word b = as_int(eval_cexpr(c, temps, e->rhs), "operand");
            switch (e->bin)
            {
                case IrBinop::add: return Value::from_word(a + b);
                case IrBinop::sub: return Value::from_word(a - b);
                case IrBinop::mul: return Value::from_word(a * b);
                case IrBinop::div_: return Value::from_word(word_div(a, b));
                case IrBinop::mod: return Value::from_word(word_mod(a, b));
                case IrBinop::bit_and: return Value::from_word(a & b);
                case IrBinop::bit_or: return Value::from_word(a | b);
                case IrBinop::bit_xor: return Value::from_word(a ^ b);
                case IrBinop::eq: return Value::from_word(a == b ? 1 : 0);
                case IrBinop::lt: return Value::from_word(a < b ? 1 : 0);
                case IrBinop::gt: return Value::from_word(a > b ? 1 : 0);
                case IrBinop::ohash2: break;
            }
            throw InternalError("ir run: bad binop");
        }
        case CExpr::Kind::hash1:
            c.gas += gas::bound::hash_node;
            return Value::hash1(eval_cexpr(c, temps, e->sub));
        case CExpr::Kind::hash2:
        {
            c.gas += gas::bound::hash_node;
            Value base = eval_cexpr(c, temps, e->lhs);
            Value key = eval_cexpr(c, temps, e->rhs);
            return Value::hash2(std::move(base), std::move(key));
        }
        case CExpr::Kind::call0:
            c.gas += gas::bound::expr_node;
            switch (e->b0)
            {
                case Builtin0::self_address: return Value::from_word(c.env.self_address);
                case Builtin0::caller: return Value::from_word(c.env.caller);
                case Builtin0::callvalue: return Value::from_word(c.env.callvalue);
                case Builtin0::block_number: return Value::from_word(c.env.block_number);
            }
            throw InternalError("ir run: bad builtin");
        case CExpr::Kind::call1:
        {
            c.gas += gas::bound::balance_node;
            Word addr = as_int(eval_cexpr(c, temps, e->sub), "balance address");
            return Value::from_word(c.env.balance_of(addr));
        }
    }
    throw InternalError("ir run: bad expression kind");
}

void bound_set_temp(std::vector<Value>& temps, int id, Value v)
{
    if (id < 0 || id >= static_cast<int>(temps.size()))
        fail("StuckState", "temp id out of range: " + std::to_string(id));
    temps[id] = std::move(v);
}

bool bound_transfer(BCtx& c, const Word& to, const Word& amount)
{
    c.gas += gas::bound::transfer;
    return c.env.transfer_hook ? c.env.transfer_hook(to, amount)
                               : c.env.do_transfer(to, amount);
}

void bound_log(BCtx& c, const std::vector<Value>& temps,
               const std::vector<CExprPtr>& topics, const std::vector<CExprPtr>& data)
{
    c.gas += gas::bound::log(static_cast<int64_t>(topics.size()),
                             static_cast<int64_t>(data.size()));
    LogRecord rec;
    for (const auto& t : topics)
        rec.topics.push_back(eval_cexpr(c, temps, t));
    for (const auto& d : data)
        rec.data.push_back(eval_cexpr(c, temps, d));
    c.events.push_back(std::move(rec));
}

/// Straight-line statement shared by the graph and block phases;
/// false means a failed transfer reverted the run.
bool exec_simple(BCtx& c, std::vector<Value>& temps, const CfgStmt& s)
{
    switch (s.kind)
    {
        case CfgStmt::Kind::skip:
            c.gas += gas::bound::stmt;
            return true;
        case CfgStmt::Kind::sstore:
        {
            c.gas += gas::bound::storage_write;
            Value v = eval_cexpr(c, temps, s.value);
            Value ptr = eval_cexpr(c, temps, s.ptr);
            c.mem.swrite(value_to_key(ptr), std::move(v));
            return true;
        }
        case CfgStmt::Kind::set:
        {
            c.gas += gas::bound::stmt;
            bound_set_temp(temps, s.temp_id, eval_cexpr(c, temps, s.value));
            return true;
        }
        case CfgStmt::Kind::transfer:
        {
            Word to = as_int(eval_cexpr(c, temps, s.ptr), "transfer recipient");
            Word amount = as_int(eval_cexpr(c, temps, s.value), "transfer amount");
            return bound_transfer(c, to, amount);
        }
        case CfgStmt::Kind::log:
            bound_log(c, temps, s.topics, s.args);
            return true;
        default:
            throw InternalError("ir run: not a straight-line statement");
    }
}

// --------------------------------------------------------------------- Clike

struct ClikeRunner
{
    const ClikeProgram& p;
    BCtx& c;
    Value ret = Value::unit();
    int depth = 0;

    enum class Flow
    {
        normal,
        brk,
        done,
        reverted,
    };

    Flow exec(std::vector<Value>& temps, const ClikeStmtPtr& s)
    {
        switch (s->kind)
        {
            case ClikeStmt::Kind::skip:
                c.gas += gas::bound::stmt;
                return Flow::normal;
            case ClikeStmt::Kind::sstore:
            {
                c.gas += gas::bound::storage_write;
                Value v = eval_cexpr(c, temps, s->value);
                Value ptr = eval_cexpr(c, temps, s->ptr);
                c.mem.swrite(value_to_key(ptr), std::move(v));
                return Flow::normal;
            }
            case ClikeStmt::Kind::set:
                c.gas += gas::bound::stmt;
                bound_set_temp(temps, s->temp_id, eval_cexpr(c, temps, s->value));
                return Flow::normal;
            case ClikeStmt::Kind::call:
                return exec_call(temps, *s);
            case ClikeStmt::Kind::sequence:
            {
                Flow f = exec(temps, s->s1);
                if (f != Flow::normal)
                    return f;
                return exec(temps, s->s2);
            }
            case ClikeStmt::Kind::ifte:
            {
                c.gas += gas::bound::stmt;
                Word cond = as_int(eval_cexpr(c, temps, s->ptr), "condition");
                return exec(temps, cond != 0 ? s->s1 : s->s2);
            }
            case ClikeStmt::Kind::loop:
                while (true)
                {
                    c.gas += gas::bound::stmt;
                    Flow f = exec(temps, s->s1);
                    if (f == Flow::brk)
                        return Flow::normal;
                    if (f != Flow::normal)
                        return f;
                }
            case ClikeStmt::Kind::break_:
                c.gas += gas::bound::stmt;
                return Flow::brk;
            case ClikeStmt::Kind::done:
                c.gas += gas::bound::done;
                ret = s->value ? eval_cexpr(c, temps, s->value) : Value::unit();
                return Flow::done;
            case ClikeStmt::Kind::transfer:
            {
                Word to = as_int(eval_cexpr(c, temps, s->ptr), "transfer recipient");
                Word amount = as_int(eval_cexpr(c, temps, s->value), "transfer amount");
                return bound_transfer(c, to, amount) ? Flow::normal : Flow::reverted;
            }
            case ClikeStmt::Kind::callmethod:
                fail("UnsupportedFeature",
                     "cross-contract method calls are not executable");
            case ClikeStmt::Kind::log:
                bound_log(c, temps, s->topics, s->args);
                return Flow::normal;
            case ClikeStmt::Kind::revert:
                c.gas += gas::bound::revert;
                return Flow::reverted;
        }
        throw InternalError("ir run: bad statement kind");
    }

    Flow exec_call(std::vector<Value>& temps, const ClikeStmt& s)
    {
        const ClikeFn* callee = p.find(s.callee);
        if (!callee)
            fail("UnknownIdent", "call to undefined function " + s.callee);
        if (callee->kind != FunctionKind::internal)
            fail("TypeMismatch", "call target is not an internal function: " + s.callee);
        if (static_cast<int>(s.args.size()) != callee->n_args)
            fail("ArityMismatch", s.callee);
        if (depth >= k_max_call_depth)
            throw InternalError("ir run: call depth limit exceeded");

        c.gas += gas::bound::call_fixed;
        std::vector<Value> inner(callee->n_temps, Value::from_word(0));
        for (size_t i = 0; i < s.args.size(); ++i)
            inner[i] = eval_cexpr(c, temps, s.args[i]);

        ++depth;
        ret = Value::unit();
        Flow f = exec(inner, callee->body);
        --depth;
        if (f == Flow::reverted)
            return Flow::reverted;
        if (f == Flow::brk)
            throw InternalError("ir run: break escaped a function body");
        if (f == Flow::normal)
            c.gas += gas::bound::done;
        if (s.temp_id >= 0)
            bound_set_temp(temps, s.temp_id, ret);
        return Flow::normal;
    }
};

// -------------------------------------------------------------------- Cgraph

struct CgraphRunner
{
    const CgraphProgram& p;
    BCtx& c;
    int depth = 0;

    bool run(const CfgFn& fn, std::vector<Value>& temps, Value& ret)
    {
        int node = fn.entry;
        while (true)
        {
            if (node < 0 || node >= static_cast<int>(fn.nodes.size()))
                fail("StuckState", fn.name + ": control left the graph");
            const CfgNode& nd = fn.nodes[node];
            const CfgStmt& s = nd.stmt;
            auto succ0 = [&]() -> int {
                if (nd.succ.empty())
                    fail("StuckState", fn.name + ": missing successor");
                return nd.succ[0];
            };
            switch (s.kind)
            {
                case CfgStmt::Kind::skip:
                case CfgStmt::Kind::sstore:
                case CfgStmt::Kind::set:
                case CfgStmt::Kind::transfer:
                case CfgStmt::Kind::log:
                    if (!exec_simple(c, temps, s))
                        return false;
                    node = succ0();
                    break;
                case CfgStmt::Kind::branch:
                {
                    c.gas += gas::bound::stmt;
                    Word cond = as_int(eval_cexpr(c, temps, s.cond), "condition");
                    if (nd.succ.size() != 2)
                        fail("StuckState", fn.name + ": branch without two successors");
                    node = cond != 0 ? nd.succ[0] : nd.succ[1];
                    break;
                }
                case CfgStmt::Kind::call:
                {
                    const CfgFn* callee = p.find(s.callee);
                    if (!callee)
                        fail("UnknownIdent", "call to undefined function " + s.callee);
                    if (callee->kind != FunctionKind::internal)
                        fail("TypeMismatch",
                             "call target is not an internal function: " + s.callee);
                    if (static_cast<int>(s.args.size()) != callee->n_args)
                        fail("ArityMismatch", s.callee);
                    if (depth >= k_max_call_depth)
                        throw InternalError("ir run: call depth limit exceeded");
                    c.gas += gas::bound::call_fixed;
                    std::vector<Value> inner(callee->n_temps, Value::from_word(0));
                    for (size_t i = 0; i < s.args.size(); ++i)
                        inner[i] = eval_cexpr(c, temps, s.args[i]);
                    Value result = Value::unit();
                    ++depth;
                    bool ok = run(*callee, inner, result);
                    --depth;
                    if (!ok)
                        return false;
                    if (s.temp_id >= 0)
                        bound_set_temp(temps, s.temp_id, std::move(result));
                    node = succ0();
                    break;
                }
                case CfgStmt::Kind::done:
                    c.gas += gas::bound::done;
                    ret = s.ret ? eval_cexpr(c, temps, *s.ret) : Value::unit();
                    return true;
                case CfgStmt::Kind::callmethod:
                    fail("UnsupportedFeature",
                         "cross-contract method calls are not executable");
                case CfgStmt::Kind::revert:
                    c.gas += gas::bound::revert;
                    return false;
            }
        }
    }
};

// -------------------------------------------------------------------- Cbasic

struct CbasicRunner
{
    const CbasicProgram& p;
    BCtx& c;
    int depth = 0;

    bool run(const CbasicFn& fn, std::vector<Value>& temps, Value& ret)
    {
        auto block = [&](const Label& l) -> const BasicBlock* {
            const BasicBlock* b = fn.find_block(l);
            if (!b)
                fail("StuckState", fn.name + ": jump to unknown block " + l);
            return b;
        };
        const BasicBlock* b = block(fn.entry);
        while (true)
        {
            for (const CfgStmt& s : b->body)
                if (!exec_simple(c, temps, s))
                    return false;
            const Terminator& t = b->term;
            switch (t.kind)
            {
                case Terminator::Kind::jump:
                    b = block(t.target);
                    break;
                case Terminator::Kind::branch:
                {
                    c.gas += gas::bound::stmt;
                    Word cond = as_int(eval_cexpr(c, temps, t.cond), "condition");
                    b = block(cond != 0 ? t.target : t.target2);
                    break;
                }
                case Terminator::Kind::call:
                {
                    const CbasicFn* callee = p.find(t.callee);
                    if (!callee)
                        fail("UnknownIdent", "call to undefined function " + t.callee);
                    if (callee->kind != FunctionKind::internal)
                        fail("TypeMismatch",
                             "call target is not an internal function: " + t.callee);
                    if (static_cast<int>(t.args.size()) != callee->n_args)
                        fail("ArityMismatch", t.callee);
                    if (depth >= k_max_call_depth)
                        throw InternalError("ir run: call depth limit exceeded");
                    c.gas += gas::bound::call_fixed;
                    std::vector<Value> inner(callee->n_slots, Value::from_word(0));
                    for (size_t i = 0; i < t.args.size(); ++i)
                        inner[i] = eval_cexpr(c, temps, t.args[i]);
                    Value result = Value::unit();
                    ++depth;
                    bool ok = run(*callee, inner, result);
                    --depth;
                    if (!ok)
                        return false;
                    if (t.result_temp >= 0)
                        bound_set_temp(temps, t.result_temp, std::move(result));
                    b = block(t.cont);
                    break;
                }
                case Terminator::Kind::done:
                    c.gas += gas::bound::done;
                    ret = t.ret ? eval_cexpr(c, temps, *t.ret) : Value::unit();
                    return true;
                case Terminator::Kind::revert:
                    c.gas += gas::bound::revert;
                    return false;
            }
        }
    }
};

// ------------------------------------------------------------------- Clinear

struct ClinearRunner
{
    const ClinearProgram& p;
    BCtx& c;
    int depth = 0;

    bool run(const ClinearFn& fn, std::vector<Value>& temps, Value& ret)
    {
        std::map<Label, size_t> labels;
        for (size_t i = 0; i < fn.code.size(); ++i)
            if (fn.code[i].kind == LinStmt::Kind::label)
                labels[fn.code[i].label] = i;
        auto target = [&](const Label& l) -> size_t {
            auto it = labels.find(l);
            if (it == labels.end())
                fail("StuckState", fn.name + ": jump to unknown label " + l);
            return it->second;
        };

        size_t pc = 0;
        while (pc < fn.code.size())
        {
            const LinStmt& s = fn.code[pc];
            switch (s.kind)
            {
                case LinStmt::Kind::label:
                case LinStmt::Kind::fetchargs:
                case LinStmt::Kind::intro:
                    ++pc;
                    break;
                case LinStmt::Kind::skip:
                    c.gas += gas::bound::stmt;
                    ++pc;
                    break;
                case LinStmt::Kind::set:
                    c.gas += gas::bound::stmt;
                    bound_set_temp(temps, s.temp_id, eval_cexpr(c, temps, s.value));
                    ++pc;
                    break;
                case LinStmt::Kind::sstore:
                {
                    c.gas += gas::bound::storage_write;
                    Value v = eval_cexpr(c, temps, s.value);
                    Value ptr = eval_cexpr(c, temps, s.ptr);
                    c.mem.swrite(value_to_key(ptr), std::move(v));
                    ++pc;
                    break;
                }
                case LinStmt::Kind::transfer:
                {
                    Word to = as_int(eval_cexpr(c, temps, s.ptr), "transfer recipient");
                    Word amount =
                        as_int(eval_cexpr(c, temps, s.value), "transfer amount");
                    if (!bound_transfer(c, to, amount))
                        return false;
                    ++pc;
                    break;
                }
                case LinStmt::Kind::log:
                    bound_log(c, temps, s.topics, s.args);
                    ++pc;
                    break;
                case LinStmt::Kind::jump:
                    pc = target(s.label);
                    break;
                case LinStmt::Kind::jumpi:
                {
                    c.gas += gas::bound::stmt;
                    Word cond = as_int(eval_cexpr(c, temps, s.cond), "condition");
                    pc = cond != 0 ? target(s.label) : pc + 1;
                    break;
                }
                case LinStmt::Kind::call:
                {
                    const ClinearFn* callee = p.find(s.callee);
                    if (!callee)
                        fail("UnknownIdent", "call to undefined function " + s.callee);
                    if (callee->kind != FunctionKind::internal)
                        fail("TypeMismatch",
                             "call target is not an internal function: " + s.callee);
                    if (static_cast<int>(s.args.size()) != callee->n_args)
                        fail("ArityMismatch", s.callee);
                    if (depth >= k_max_call_depth)
                        throw InternalError("ir run: call depth limit exceeded");
                    c.gas += gas::bound::call_fixed;
                    std::vector<Value> inner(callee->n_slots, Value::from_word(0));
                    for (size_t i = 0; i < s.args.size(); ++i)
                        inner[i] = eval_cexpr(c, temps, s.args[i]);
                    Value result = Value::unit();
                    ++depth;
                    bool ok = run(*callee, inner, result);
                    --depth;
                    if (!ok)
                        return false;
                    if (s.temp_id >= 0)
                        bound_set_temp(temps, s.temp_id, std::move(result));
                    ++pc;
                    break;
                }
                case LinStmt::Kind::done:
                    c.gas += gas::bound::done;
                    ret = s.ret ? eval_cexpr(c, temps, *s.ret) : Value::unit();
                    return true;
                case LinStmt::Kind::callmethod:
                    fail("UnsupportedFeature",
                         "cross-contract method calls are not executable");
                case LinStmt::Kind::revert:
                    c.gas += gas::bound::revert;
                    return false;
            }
        }
        fail("StuckState", fn.name + ": control ran off the end");
    }
};

// ----------------------------------------------------- bound-phase wrappers

struct BoundPrep
{
    BCtx c;
    std::map<Word, Word> pre_balances;
    std::vector<Value> temps;
};

BoundPrep prep_bound(const Memory& pre, MachineEnv env, const std::string& name,
                     int n_args, int n_temps, const std::vector<Value>& args,
                     int64_t entry)
{
    check_call_args(name, static_cast<size_t>(n_args), args);
    BoundPrep bp;
    bp.pre_balances = env.balances;
    bp.c = BCtx{pre, std::move(env), {}, entry};
    bp.temps.assign(static_cast<size_t>(n_temps), Value::from_word(0));
    for (size_t i = 0; i < args.size(); ++i)
        bp.temps[i] = args[i];
    return bp;
}

ExecOutcome settle_bound(BoundPrep& bp, const Memory& pre, bool completed,
                         Value ret, bool returns_value)
{
    ExecOutcome out;
    out.gas_bound = bp.c.gas;
    if (!completed)
    {
        out.reverted = true;
        out.state = pre;
        out.balances = std::move(bp.pre_balances);
        return out;
    }
    out.ret = returns_value ? std::move(ret) : Value::unit();
    out.state = std::move(bp.c.mem);
    out.balances = std::move(bp.c.env.balances);
    out.events = std::move(bp.c.events);
    return out;
}

// ===========================================================================
// Exact phases: Stacked, Expressionless, Methodical. Every statement
// charges the precise fee of its assembled image, so the totals match
// the EVM run byte for byte.

struct SEntry
{
    bool is_label = false;
    Value v;
    Label l;

    static SEntry of_value(Value x)
    {
        SEntry e;
        e.v = std::move(x);
        return e;
    }
    static SEntry of_label(Label x)
    {
        SEntry e;
        e.is_label = true;
        e.l = std::move(x);
        return e;
    }
};

SEntry stack_pop(std::vector<SEntry>& st, const char* what)
{
    if (st.empty())
        fail("StuckState", std::string("pop of ") + what + " from an empty stack");
    SEntry e = std::move(st.back());
    st.pop_back();
    return e;
}

Value stack_pop_value(std::vector<SEntry>& st, const char* what)
{
    SEntry e = stack_pop(st, what);
    if (e.is_label)
        fail("StuckState", std::string(what) + " is a code label");
    return std::move(e.v);
}

Word stack_pop_int(std::vector<SEntry>& st, const char* what)
{
    return as_int(stack_pop_value(st, what), what);
}

Label stack_pop_label(std::vector<SEntry>& st, const char* what)
{
    SEntry e = stack_pop(st, what);
    if (!e.is_label)
        fail("StuckState", std::string(what) + " is not a code label");
    return std::move(e.l);
}

struct XCtx
{
    Memory mem;
    MachineEnv env;
    std::vector<LogRecord> events;
    int64_t gas_used = 0;
    int64_t mem_words = 0;
    bool limited = false;
    int64_t gas_remaining = 0;
    bool oog = false;

    bool charge(int64_t cost)
    {
        if (oog)
            return false;
        if (limited)
        {
            if (cost > gas_remaining)
            {
                oog = true;
                gas_remaining = 0;
                return false;
            }
            gas_remaining -= cost;
        }
        gas_used += cost;
        return true;
    }

    /// One memory-touching instruction: base fee plus expansion,
    /// charged atomically the way the EVM meters it.
    bool charge_mem(int64_t base_cost, int64_t words)
    {
        if (!charge(base_cost + gas::memory_expansion(mem_words, words)))
            return false;
        if (words > mem_words)
            mem_words = words;
        return true;
    }
};

// Exact image fees. Each helper walks the image instruction by
// instruction so memory expansion lands where the bytecode pays it.

bool charge_ohash1(XCtx& c)
{
    // PUSH1 0; MSTORE; PUSH1 32; PUSH1 0; SHA3
    return c.charge(gas::verylow) && c.charge_mem(gas::verylow, 1) &&
           c.charge(2 * gas::verylow) && c.charge_mem(gas::sha3_cost(32), 1);
}

bool charge_ohash2(XCtx& c)
{
    // PUSH1 0; MSTORE; PUSH1 32; MSTORE; PUSH1 64; PUSH1 0; SHA3
    return c.charge(gas::verylow) && c.charge_mem(gas::verylow, 1) &&
           c.charge(gas::verylow) && c.charge_mem(gas::verylow, 2) &&
           c.charge(2 * gas::verylow) && c.charge_mem(gas::sha3_cost(64), 2);
}

int64_t plain_binop_fee(IrBinop op)
{
    switch (op)
    {
        case IrBinop::mul:
        case IrBinop::div_:
        case IrBinop::mod: return gas::low;
        default: return gas::verylow;
    }
}

bool charge_transfer_image(XCtx& c, bool with_value)
{
    // PUSH1 0 x4; DUP5; DUP7; PUSH2 2300; CALL; SWAP2; POP; POP;
    // ISZERO; PUSH2 abort; JUMPI
    int64_t call = gas::call_base + (with_value ? gas::call_value : 0);
    return c.charge(7 * gas::verylow) && c.charge(call) &&
           c.charge(3 * gas::verylow + 2 * gas::base + gas::high);
}

bool charge_abort_block(XCtx& c)
{
    // JUMPDEST; PUSH1 0; PUSH1 0; REVERT
    return c.charge(gas::jumpdest + 2 * gas::verylow + gas::zero);
}

bool charge_log_image(XCtx& c, int n_topics, int n_data)
{
    for (int j = 0; j < n_data; ++j)
        if (!c.charge(gas::verylow) || !c.charge_mem(gas::verylow, j + 1))
            return false;
    return c.charge(2 * gas::verylow) &&
           c.charge_mem(gas::log_cost(n_topics, 32 * int64_t(n_data)), n_data);
}

bool charge_method_return(XCtx& c)
{
    // PUSH1 0; MSTORE; PUSH1 32; PUSH1 0; RETURN
    return c.charge(gas::verylow) && c.charge_mem(gas::verylow, 1) &&
           c.charge(2 * gas::verylow) && c.charge_mem(gas::zero, 1);
}

bool charge_ctor_return(XCtx& c, const CodeLayout& layout)
{
    // PUSH2; PUSH2; PUSH1 0; CODECOPY; PUSH2; PUSH1 0; RETURN
    int64_t words = gas::words_for_bytes(layout.runtime_len);
    return c.charge(3 * gas::verylow) &&
           c.charge_mem(gas::codecopy_cost(layout.runtime_len), words) &&
           c.charge(2 * gas::verylow) && c.charge_mem(gas::zero, words);
}

bool charge_ctor_arg_load(XCtx& c)
{
    // PUSH1 32; PUSH2 src; PUSH1 0; CODECOPY; PUSH1 0; MLOAD
    return c.charge(3 * gas::verylow) && c.charge_mem(gas::codecopy_cost(32), 1) &&
           c.charge(gas::verylow) && c.charge_mem(gas::verylow, 1);
}

bool charge_revert_image(XCtx& c)
{
    // PUSH1 0; PUSH1 0; REVERT (empty memory range)
    return c.charge(2 * gas::verylow + gas::zero);
}

/// Gas the dispatcher burns reaching the method at `index` in dispatch
/// order: selector load, then one compare group per method tried.
int64_t dispatch_fee(int64_t index)
{
    return 2 * gas::verylow + (index + 1) * (4 * gas::verylow + gas::high);
}

enum class XHalt
{
    done_ok,
    reverted,
    oog,
};

/// Transfer step shared by the exact machines: charges the CALL image
/// and moves the funds. 0 = ok, 1 = failed (abort path), -1 = gas ran
/// out.
int exec_transfer(XCtx& c, Word to, const Word& amount)
{
    if (!charge_transfer_image(c, amount != 0))
        return -1;
    to &= mask160();
    bool ok = c.env.transfer_hook ? c.env.transfer_hook(to, amount)
                                  : c.env.do_transfer(to, amount);
    return ok ? 0 : 1;
}

void exec_log(XCtx& c, std::vector<SEntry>& stack, int n_topics, int n_data)
{
    LogRecord rec;
    rec.data.resize(static_cast<size_t>(n_data));
    for (int j = 0; j < n_data; ++j)
        rec.data[static_cast<size_t>(j)] = stack_pop_value(stack, "log data");
    for (int t = 0; t < n_topics; ++t)
        rec.topics.push_back(stack_pop_value(stack, "log topic"));
    c.events.push_back(std::move(rec));
}

Value builtin0_value(const MachineEnv& env, Builtin0 b)
{
    switch (b)
    {
        case Builtin0::self_address: return Value::from_word(env.self_address);
        case Builtin0::caller: return Value::from_word(env.caller);
        case Builtin0::callvalue: return Value::from_word(env.callvalue);
        case Builtin0::block_number: return Value::from_word(env.block_number);
    }
    throw InternalError("ir run: bad builtin");
}

// ------------------------------------------------------------------- Stacked

struct StackedMachine
{
    const StackedProgram& p;
    XCtx& c;
    CodeLayout layout;
    const std::vector<Value>& args;
    std::map<Label, std::pair<int, int>> labels;
    std::vector<SEntry> stack;
    int fi = 0;
    size_t si = 0;
    Value ret = Value::unit();

    StackedMachine(const StackedProgram& prog, XCtx& ctx, CodeLayout lay,
                   const std::vector<Value>& a)
        : p(prog), c(ctx), layout(lay), args(a), labels(prog.label_index())
    {
    }

    void jump_to(const Label& l)
    {
        auto it = labels.find(l);
        if (it == labels.end())
            fail("StuckState", "jump to unknown label " + l);
        fi = it->second.first;
        si = static_cast<size_t>(it->second.second);
    }

    bool exec_rvalue(const StackedFn& fn, const StackedExpr& e, int depth)
    {
        switch (e.kind)
        {
            case StackedExpr::Kind::const256:
                if (!c.charge(gas::verylow))
                    return false;
                stack.push_back(SEntry::of_value(Value::from_word(e.literal)));
                return true;
            case StackedExpr::Kind::global:
            {
                const GlobalVar* g = p.layout.find_global(e.global_name);
                if (!g)
                    fail("StuckState", "unknown global " + e.global_name);
                if (!c.charge(gas::verylow))
                    return false;
                stack.push_back(SEntry::of_value(Value::from_word(g->slot)));
                return true;
            }
            case StackedExpr::Kind::temp:
            {
                if (!c.charge(gas::verylow))
                    return false;
                int d = depth + fn.n_slots - e.temp_index;
                if (d < 1 || d > static_cast<int>(stack.size()))
                    fail("StuckState", fn.name + ": temp read outside the stack");
                stack.push_back(stack[stack.size() - static_cast<size_t>(d)]);
                return true;
            }
            case StackedExpr::Kind::sload:
            {
                if (!c.charge(gas::sload))
                    return false;
                Value ptr = stack_pop_value(stack, "storage address");
                stack.push_back(SEntry::of_value(
                    c.mem.sread(value_to_key(ptr), word_type())));
                return true;
            }
            case StackedExpr::Kind::unop:
            {
                if (e.un == IrUnop::ohash1)
                {
                    if (!charge_ohash1(c))
                        return false;
                    Value x = stack_pop_value(stack, "hash operand");
                    stack.push_back(SEntry::of_value(Value::hash1(std::move(x))));
                    return true;
                }
                if (!c.charge(gas::verylow))
                    return false;
                Word x = stack_pop_int(stack, "operand");
                stack.push_back(SEntry::of_value(Value::from_word(
                    e.un == IrUnop::lnot ? Word(x == 0 ? 1 : 0) : ~x)));
                return true;
            }
            case StackedExpr::Kind::binop:
                return exec_binop(e.bin, e.swapped);
            case StackedExpr::Kind::call0:
                if (!c.charge(gas::base))
                    return false;
                stack.push_back(SEntry::of_value(builtin0_value(c.env, e.b0)));
                return true;
            case StackedExpr::Kind::call1:
            {
                if (!c.charge(gas::balance))
                    return false;
                Word addr = stack_pop_int(stack, "balance address") & mask160();
                stack.push_back(SEntry::of_value(Value::from_word(c.env.balance_of(addr))));
                return true;
            }
        }
        throw InternalError("ir run: bad stacked expression");
    }

    bool exec_binop(IrBinop op, bool swapped)
    {
        if (swapped)
        {
            if (!c.charge(gas::verylow))
                return false;
            if (stack.size() < 2)
                fail("StuckState", "swap on a short stack");
            std::swap(stack[stack.size() - 1], stack[stack.size() - 2]);
        }
        if (op == IrBinop::ohash2)
        {
            if (!charge_ohash2(c))
                return false;
            Value key = stack_pop_value(stack, "hash key");
            Value base = stack_pop_value(stack, "hash base");
            stack.push_back(
                SEntry::of_value(Value::hash2(std::move(base), std::move(key))));
            return true;
        }
        if (!c.charge(plain_binop_fee(op)))
            return false;
        Word a = stack_pop_int(stack, "operand");
        Word b = stack_pop_int(stack, "operand");
        Word r;
        switch (op)
        {
            case IrBinop::add: r = a + b; break;
            case IrBinop::sub: r = a - b; break;
            case IrBinop::mul: r = a * b; break;
            case IrBinop::div_: r = word_div(a, b); break;
            case IrBinop::mod: r = word_mod(a, b); break;
            case IrBinop::bit_and: r = a & b; break;
            case IrBinop::bit_or: r = a | b; break;
            case IrBinop::bit_xor: r = a ^ b; break;
            case IrBinop::eq: r = a == b ? 1 : 0; break;
            case IrBinop::lt: r = a < b ? 1 : 0; break;
            case IrBinop::gt: r = a > b ? 1 : 0; break;
            case IrBinop::ohash2: throw InternalError("unreachable");
        }
        stack.push_back(SEntry::of_value(Value::from_word(r)));
        return true;
    }

    bool exec_fetchargs(const StackedFn& fn)
    {
        switch (fn.kind)
        {
            case FunctionKind::method:
                for (int i = 0; i < fn.n_args; ++i)
                {
                    // PUSH1 32(i+1); CALLDATALOAD
                    if (!c.charge(2 * gas::verylow))
                        return false;
                    stack.push_back(SEntry::of_value(args[static_cast<size_t>(i)]));
                }
                return true;
            case FunctionKind::constructor:
                for (int i = 0; i < fn.n_args; ++i)
                {
                    if (!charge_ctor_arg_load(c))
                        return false;
                    stack.push_back(SEntry::of_value(args[static_cast<size_t>(i)]));
                }
                return true;
            case FunctionKind::internal:
                // The caller left the arguments in place.
                return true;
        }
        throw InternalError("ir run: bad function kind");
    }

    /// done: halts methods and constructors, returns internals to
    /// their caller through the stacked return label.
    std::optional<XHalt> exec_done(const StackedFn& fn, const StackedStmt& s)
    {
        switch (fn.kind)
        {
            case FunctionKind::internal:
            {
                int64_t fee =
                    fn.returns_value
                        ? gas::verylow + (gas::verylow + gas::base) * s.n + gas::mid
                        : gas::base * s.n + gas::mid;
                if (!c.charge(fee))
                    return XHalt::oog;
                Value r = Value::unit();
                if (fn.returns_value)
                    r = stack_pop_value(stack, "return value");
                for (int i = 0; i < s.n; ++i)
                    stack_pop(stack, "frame slot");
                Label rl = stack_pop_label(stack, "return address");
                if (fn.returns_value)
                    stack.push_back(SEntry::of_value(std::move(r)));
                jump_to(rl);
                return std::nullopt;
            }
            case FunctionKind::method:
                if (fn.returns_value)
                {
                    if (!charge_method_return(c))
                        return XHalt::oog;
                    ret = stack_pop_value(stack, "return value");
                }
                return XHalt::done_ok;
            case FunctionKind::constructor:
                if (!charge_ctor_return(c, layout))
                    return XHalt::oog;
                return XHalt::done_ok;
        }
        throw InternalError("ir run: bad function kind");
    }

    XHalt run()
    {
        while (true)
        {
            if (fi < 0 || fi >= static_cast<int>(p.functions.size()))
                fail("StuckState", "control left the program");
            const StackedFn& fn = p.functions[static_cast<size_t>(fi)];
            if (si >= fn.code.size())
                fail("StuckState", fn.name + ": control ran off the end");
            const StackedStmt& s = fn.code[si];
            int depth = fn.depth_before[si];
            switch (s.kind)
            {
                case StackedStmt::Kind::skip:
                    ++si;
                    break;
                case StackedStmt::Kind::rvalue:
                    if (!exec_rvalue(fn, s.expr, depth))
                        return XHalt::oog;
                    ++si;
                    break;
                case StackedStmt::Kind::pushvoid:
                    if (!c.charge(gas::verylow))
                        return XHalt::oog;
                    stack.push_back(SEntry::of_value(Value::from_word(0)));
                    ++si;
                    break;
                case StackedStmt::Kind::pop:
                    if (!c.charge(gas::base))
                        return XHalt::oog;
                    stack_pop(stack, "discarded value");
                    ++si;
                    break;
                case StackedStmt::Kind::assign:
                {
                    Value ptr = stack_pop_value(stack, "storage address");
                    Value val = stack_pop_value(stack, "stored value");
                    HashKey k = value_to_key(ptr);
                    bool cur_zero = slot_is_zero(c.mem, k);
                    bool new_zero = val.is_int() && val.word() == 0;
                    if (!c.charge(gas::sstore_cost(cur_zero, new_zero)))
                        return XHalt::oog;
                    c.mem.swrite(k, std::move(val));
                    ++si;
                    break;
                }
                case StackedStmt::Kind::set:
                {
                    // SWAP(depth + slots - n - 1); POP
                    if (!c.charge(gas::verylow + gas::base))
                        return XHalt::oog;
                    int m = depth + fn.n_slots - s.n - 1;
                    if (m < 1 || m >= static_cast<int>(stack.size()))
                        fail("StuckState", fn.name + ": temp write outside the stack");
                    std::swap(stack[stack.size() - 1],
                              stack[stack.size() - 1 - static_cast<size_t>(m)]);
                    stack_pop(stack, "replaced slot value");
                    ++si;
                    break;
                }
                case StackedStmt::Kind::done:
                {
                    auto halt = exec_done(fn, s);
                    if (halt)
                        return *halt;
                    break;
                }
                case StackedStmt::Kind::pushlabel:
                    if (!c.charge(gas::verylow))
                        return XHalt::oog;
                    stack.push_back(SEntry::of_label(s.label));
                    ++si;
                    break;
                case StackedStmt::Kind::label:
                    if (!c.charge(gas::jumpdest))
                        return XHalt::oog;
                    ++si;
                    break;
                case StackedStmt::Kind::jump_call:
                case StackedStmt::Kind::jump_internal:
                {
                    if (!c.charge(gas::mid))
                        return XHalt::oog;
                    Label l = stack_pop_label(stack, "jump target");
                    jump_to(l);
                    break;
                }
                case StackedStmt::Kind::jumpi:
                {
                    if (!c.charge(gas::high))
                        return XHalt::oog;
                    Label l = stack_pop_label(stack, "jump target");
                    Word cond = stack_pop_int(stack, "condition");
                    if (cond != 0)
                        jump_to(l);
                    else
                        ++si;
                    break;
                }
                case StackedStmt::Kind::transfer:
                {
                    Word amount = stack_pop_int(stack, "transfer amount");
                    Word to = stack_pop_int(stack, "transfer recipient");
                    int r = exec_transfer(c, to, amount);
                    if (r < 0)
                        return XHalt::oog;
                    if (r > 0)
                    {
                        if (!charge_abort_block(c))
                            return XHalt::oog;
                        return XHalt::reverted;
                    }
                    ++si;
                    break;
                }
                case StackedStmt::Kind::callmethod:
                    fail("UnsupportedFeature",
                         "cross-contract method calls are not executable");
                case StackedStmt::Kind::log:
                    if (!charge_log_image(c, s.log_topics, s.log_data))
                        return XHalt::oog;
                    exec_log(c, stack, s.log_topics, s.log_data);
                    ++si;
                    break;
                case StackedStmt::Kind::revert:
                    if (!charge_revert_image(c))
                        return XHalt::oog;
                    return XHalt::reverted;
                case StackedStmt::Kind::fetchargs:
                    if (!exec_fetchargs(fn))
                        return XHalt::oog;
                    ++si;
                    break;
            }
        }
    }
};

// ------------------------------------------------- Expressionless/Methodical

/// Executes flat push/dup/swap code: the per-function streams of the
/// expressionless phase and the fused code units of the methodical
/// phase both run here.
struct FlatMachine
{
    XCtx& c;
    std::vector<const ExStmt*> code;
    std::map<Label, size_t> labels;
    CodeLayout layout;
    std::vector<Word> calldata;
    const std::vector<Value>* ctor_args = nullptr;
    Label abort_label;
    bool abort_in_code = false;
    std::vector<std::pair<int64_t, int64_t>>* sync_log = nullptr;
    std::vector<SEntry> stack;
    size_t pc = 0;
    Value ret = Value::unit();

    explicit FlatMachine(XCtx& ctx) : c(ctx) {}

    /// Appends a code unit; returns the index of its first statement.
    size_t add_unit(const std::vector<ExStmt>& stmts)
    {
        size_t start = code.size();
        for (const auto& s : stmts)
        {
            if (s.kind == ExStmt::Kind::label)
            {
                auto [it, fresh] = labels.emplace(s.label, code.size());
                (void)it;
                if (!fresh)
                    fail("DuplicateLabel", "label defined twice: " + s.label);
            }
            code.push_back(&s);
        }
        return start;
    }

    void jump_to(const Label& l)
    {
        auto it = labels.find(l);
        if (it == labels.end())
            fail("StuckState", "jump to unknown label " + l);
        pc = it->second;
    }

    std::optional<XHalt> step()
    {
        if (pc >= code.size())
            fail("StuckState", "control ran off the end of the code");
        const ExStmt& s = *code[pc];
        switch (s.kind)
        {
            case ExStmt::Kind::push:
                if (!c.charge(gas::verylow))
                    return XHalt::oog;
                if (s.push.is_label)
                    stack.push_back(SEntry::of_label(s.push.label));
                else if (s.push.value.is_unit())
                    stack.push_back(SEntry::of_value(Value::from_word(0)));
                else
                    stack.push_back(SEntry::of_value(s.push.value));
                ++pc;
                return std::nullopt;
            case ExStmt::Kind::dup:
            {
                if (!c.charge(gas::verylow))
                    return XHalt::oog;
                if (s.n < 1 || s.n > static_cast<int>(stack.size()))
                    fail("StuckState", "dup reaches below the stack");
                stack.push_back(stack[stack.size() - static_cast<size_t>(s.n)]);
                ++pc;
                return std::nullopt;
            }
            case ExStmt::Kind::swap:
            {
                if (!c.charge(gas::verylow))
                    return XHalt::oog;
                if (s.n < 1 || s.n >= static_cast<int>(stack.size()))
                    fail("StuckState", "swap reaches below the stack");
                std::swap(stack[stack.size() - 1],
                          stack[stack.size() - 1 - static_cast<size_t>(s.n)]);
                ++pc;
                return std::nullopt;
            }
            case ExStmt::Kind::sload:
            {
                if (!c.charge(gas::sload))
                    return XHalt::oog;
                Value ptr = stack_pop_value(stack, "storage address");
                stack.push_back(SEntry::of_value(
                    c.mem.sread(value_to_key(ptr), word_type())));
                ++pc;
                return std::nullopt;
            }
            case ExStmt::Kind::unop:
            {
                if (s.un == IrUnop::ohash1)
                {
                    if (!charge_ohash1(c))
                        return XHalt::oog;
                    Value x = stack_pop_value(stack, "hash operand");
                    stack.push_back(SEntry::of_value(Value::hash1(std::move(x))));
                    ++pc;
                    return std::nullopt;
                }
                if (!c.charge(gas::verylow))
                    return XHalt::oog;
                Word x = stack_pop_int(stack, "operand");
                stack.push_back(SEntry::of_value(Value::from_word(
                    s.un == IrUnop::lnot ? Word(x == 0 ? 1 : 0) : ~x)));
                ++pc;
                return std::nullopt;
            }
            case ExStmt::Kind::binop:
            {
                if (s.swapped)
                {
                    if (!c.charge(gas::verylow))
                        return XHalt::oog;
                    if (stack.size() < 2)
                        fail("StuckState", "swap on a short stack");
                    std::swap(stack[stack.size() - 1], stack[stack.size() - 2]);
                }
                if (s.bin == IrBinop::ohash2)
                {
                    if (!charge_ohash2(c))
                        return XHalt::oog;
                    Value key = stack_pop_value(stack, "hash key");
                    Value base = stack_pop_value(stack, "hash base");
                    stack.push_back(SEntry::of_value(
                        Value::hash2(std::move(base), std::move(key))));
                    ++pc;
                    return std::nullopt;
                }
                if (!c.charge(plain_binop_fee(s.bin)))
                    return XHalt::oog;
                Word a = stack_pop_int(stack, "operand");
                Word b = stack_pop_int(stack, "operand");
                Word r;
                switch (s.bin)
                {
                    case IrBinop::add: r = a + b; break;
                    case IrBinop::sub: r = a - b; break;
                    case IrBinop::mul: r = a * b; break;
                    case IrBinop::div_: r = word_div(a, b); break;
                    case IrBinop::mod: r = word_mod(a, b); break;
                    case IrBinop::bit_and: r = a & b; break;
                    case IrBinop::bit_or: r = a | b; break;
                    case IrBinop::bit_xor: r = a ^ b; break;
                    case IrBinop::eq: r = a == b ? 1 : 0; break;
                    case IrBinop::lt: r = a < b ? 1 : 0; break;
                    case IrBinop::gt: r = a > b ? 1 : 0; break;
                    case IrBinop::ohash2: throw InternalError("unreachable");
                }
                stack.push_back(SEntry::of_value(Value::from_word(r)));
                ++pc;
                return std::nullopt;
            }
            case ExStmt::Kind::call0:
                if (!c.charge(gas::base))
                    return XHalt::oog;
                stack.push_back(SEntry::of_value(builtin0_value(c.env, s.b0)));
                ++pc;
                return std::nullopt;
            case ExStmt::Kind::call1:
            {
                if (!c.charge(gas::balance))
                    return XHalt::oog;
                Word addr = stack_pop_int(stack, "balance address") & mask160();
                stack.push_back(
                    SEntry::of_value(Value::from_word(c.env.balance_of(addr))));
                ++pc;
                return std::nullopt;
            }
            case ExStmt::Kind::skip:
                ++pc;
                return std::nullopt;
            case ExStmt::Kind::pop:
                if (!c.charge(gas::base))
                    return XHalt::oog;
                stack_pop(stack, "discarded value");
                ++pc;
                return std::nullopt;
            case ExStmt::Kind::sstore:
            {
                Value ptr = stack_pop_value(stack, "storage address");
                Value val = stack_pop_value(stack, "stored value");
                HashKey k = value_to_key(ptr);
                bool cur_zero = slot_is_zero(c.mem, k);
                bool new_zero = val.is_int() && val.word() == 0;
                if (!c.charge(gas::sstore_cost(cur_zero, new_zero)))
                    return XHalt::oog;
                c.mem.swrite(k, std::move(val));
                ++pc;
                return std::nullopt;
            }
            case ExStmt::Kind::done:
                switch (s.fn_kind)
                {
                    case FunctionKind::internal:
                    {
                        // Frame cleanup already ran; this is a plain jump.
                        if (!c.charge(gas::mid))
                            return XHalt::oog;
                        Label l = stack_pop_label(stack, "return address");
                        jump_to(l);
                        return std::nullopt;
                    }
                    case FunctionKind::method:
                        if (s.returns_value)
                        {
                            if (!charge_method_return(c))
                                return XHalt::oog;
                            ret = stack_pop_value(stack, "return value");
                        }
                        return XHalt::done_ok;
                    case FunctionKind::constructor:
                        if (!charge_ctor_return(c, layout))
                            return XHalt::oog;
                        return XHalt::done_ok;
                }
                throw InternalError("ir run: bad function kind");
            case ExStmt::Kind::label:
                if (!c.charge(gas::jumpdest))
                    return XHalt::oog;
                ++pc;
                return std::nullopt;
            case ExStmt::Kind::jump:
            {
                if (!c.charge(gas::mid))
                    return XHalt::oog;
                Label l = stack_pop_label(stack, "jump target");
                jump_to(l);
                return std::nullopt;
            }
            case ExStmt::Kind::jumpi:
            {
                if (!c.charge(gas::high))
                    return XHalt::oog;
                Label l = stack_pop_label(stack, "jump target");
                Word cond = stack_pop_int(stack, "condition");
                if (cond != 0)
                    jump_to(l);
                else
                    ++pc;
                return std::nullopt;
            }
            case ExStmt::Kind::transfer:
            {
                Word amount = stack_pop_int(stack, "transfer amount");
                Word to = stack_pop_int(stack, "transfer recipient");
                int r = exec_transfer(c, to, amount);
                if (r < 0)
                    return XHalt::oog;
                if (r > 0)
                {
                    if (abort_in_code)
                    {
                        jump_to(abort_label);
                        return std::nullopt;
                    }
                    if (!charge_abort_block(c))
                        return XHalt::oog;
                    return XHalt::reverted;
                }
                ++pc;
                return std::nullopt;
            }
            case ExStmt::Kind::callmethod:
                fail("UnsupportedFeature",
                     "cross-contract method calls are not executable");
            case ExStmt::Kind::log:
                if (!charge_log_image(c, s.log_topics, s.log_data))
                    return XHalt::oog;
                exec_log(c, stack, s.log_topics, s.log_data);
                ++pc;
                return std::nullopt;
            case ExStmt::Kind::revert:
                if (!charge_revert_image(c))
                    return XHalt::oog;
                return XHalt::reverted;
            case ExStmt::Kind::calldataload:
            {
                if (!c.charge(gas::verylow))
                    return XHalt::oog;
                Word off = stack_pop_int(stack, "calldata offset");
                if (off % 32 != 0)
                    fail("StuckState", "misaligned calldata read");
                Word w = off / 32;
                Value v = Value::from_word(0);
                if (w < calldata.size())
                    v = Value::from_word(calldata[static_cast<size_t>(w)]);
                stack.push_back(SEntry::of_value(std::move(v)));
                ++pc;
                return std::nullopt;
            }
            case ExStmt::Kind::constructordataload:
            {
                if (!ctor_args)
                    fail("StuckState", "constructor data read outside deployment");
                if (!charge_ctor_arg_load(c))
                    return XHalt::oog;
                if (s.n < 0 || s.n >= static_cast<int>(ctor_args->size()))
                    fail("StuckState", "constructor argument index out of range");
                stack.push_back(
                    SEntry::of_value((*ctor_args)[static_cast<size_t>(s.n)]));
                ++pc;
                return std::nullopt;
            }
        }
        throw InternalError("ir run: bad statement kind");
    }

    XHalt run()
    {
        while (true)
        {
            std::optional<XHalt> h = step();
            if (sync_log && !(h && *h == XHalt::oog))
                sync_log->emplace_back(c.gas_used, c.gas_remaining);
            if (h)
                return *h;
        }
    }
};

// ------------------------------------------------------ exact-phase wrappers

struct ExactPrep
{
    XCtx c;
    std::map<Word, Word> pre_balances;
};

ExactPrep prep_exact(const Memory& pre, MachineEnv env)
{
    ExactPrep xp;
    xp.pre_balances = env.balances;
    xp.c = XCtx{pre, std::move(env), {}, 0, 0, false, 0, false};
    return xp;
}

ExecOutcome settle_exact(ExactPrep& xp, const Memory& pre, XHalt halt, Value ret,
                         bool returns_value)
{
    if (halt == XHalt::oog)
        throw InternalError("ir run: gas exhausted without a limit");
    ExecOutcome out;
    out.gas_bound = xp.c.gas_used;
    if (halt == XHalt::reverted)
    {
        out.reverted = true;
        out.state = pre;
        out.balances = std::move(xp.pre_balances);
        return out;
    }
    out.ret = returns_value ? std::move(ret) : Value::unit();
    out.state = std::move(xp.c.mem);
    out.balances = std::move(xp.c.env.balances);
    out.events = std::move(xp.c.events);
    return out;
}

/// Finds a method and its dispatch position (index among methods in
/// program order).
template <class Prog, class Fn>
std::pair<const Fn*, int64_t> find_dispatch(const Prog& p, const std::string& name)
{
    int64_t index = 0;
    for (const auto& f : p.functions)
    {
        if (f.kind != FunctionKind::method)
            continue;
        if (f.name == name)
            return {&f, index};
        ++index;
    }
    fail("UnknownIdent", "no method named " + name);
}

template <class Prog, class Fn>
const Fn* find_ctor(const Prog& p)
{
    for (const auto& f : p.functions)
        if (f.kind == FunctionKind::constructor)
            return &f;
    fail("UnknownIdent", "program has no constructor");
}
}  // namespace

// ===========================================================================
// Public entry points.

ExecOutcome clike_run_method(const ClikeProgram& p, const Memory& pre,
                             MachineEnv env, const std::string& method,
                             const std::vector<Value>& args)
{
    const ClikeFn* fn = p.find(method);
    if (!fn || fn->kind != FunctionKind::method)
        fail("UnknownIdent", "no method named " + method);
    int64_t entry = gas::bound::method_entry(count_methods(p),
                                             static_cast<int64_t>(args.size()));
    BoundPrep bp = prep_bound(pre, std::move(env), method, fn->n_args, fn->n_temps,
                              args, entry);
    ClikeRunner r{p, bp.c};
    auto f = r.exec(bp.temps, fn->body);
    if (f == ClikeRunner::Flow::brk)
        throw InternalError("ir run: break escaped a function body");
    if (f == ClikeRunner::Flow::normal)
        bp.c.gas += gas::bound::done;
    return settle_bound(bp, pre, f != ClikeRunner::Flow::reverted, r.ret,
                        fn->returns_value);
}

ExecOutcome clike_run_constructor(const ClikeProgram& p, const Memory& pre,
                                  MachineEnv env, const std::vector<Value>& args)
{
    const ClikeFn* fn = find_ctor<ClikeProgram, ClikeFn>(p);
    BoundPrep bp = prep_bound(pre, std::move(env), fn->name, fn->n_args,
                              fn->n_temps, args,
                              gas::bound::deploy(p.source_node_count));
    ClikeRunner r{p, bp.c};
    auto f = r.exec(bp.temps, fn->body);
    if (f == ClikeRunner::Flow::brk)
        throw InternalError("ir run: break escaped a function body");
    if (f == ClikeRunner::Flow::normal)
        bp.c.gas += gas::bound::done;
    return settle_bound(bp, pre, f != ClikeRunner::Flow::reverted, r.ret,
                        fn->returns_value);
}

ExecOutcome cgraph_run_method(const CgraphProgram& p, const Memory& pre,
                              MachineEnv env, const std::string& method,
                              const std::vector<Value>& args)
{
    const CfgFn* fn = p.find(method);
    if (!fn || fn->kind != FunctionKind::method)
        fail("UnknownIdent", "no method named " + method);
    int64_t entry = gas::bound::method_entry(count_methods(p),
                                             static_cast<int64_t>(args.size()));
    BoundPrep bp = prep_bound(pre, std::move(env), method, fn->n_args, fn->n_temps,
                              args, entry);
    CgraphRunner r{p, bp.c};
    Value ret = Value::unit();
    bool ok = r.run(*fn, bp.temps, ret);
    return settle_bound(bp, pre, ok, std::move(ret), fn->returns_value);
}

ExecOutcome cgraph_run_constructor(const CgraphProgram& p, const Memory& pre,
                                   MachineEnv env, const std::vector<Value>& args)
{
    const CfgFn* fn = find_ctor<CgraphProgram, CfgFn>(p);
    BoundPrep bp = prep_bound(pre, std::move(env), fn->name, fn->n_args,
                              fn->n_temps, args,
                              gas::bound::deploy(p.source_node_count));
    CgraphRunner r{p, bp.c};
    Value ret = Value::unit();
    bool ok = r.run(*fn, bp.temps, ret);
    return settle_bound(bp, pre, ok, std::move(ret), fn->returns_value);
}

ExecOutcome cbasic_run_method(const CbasicProgram& p, const Memory& pre,
                              MachineEnv env, const std::string& method,
                              const std::vector<Value>& args)
{
    const CbasicFn* fn = p.find(method);
    if (!fn || fn->kind != FunctionKind::method)
        fail("UnknownIdent", "no method named " + method);
    int64_t entry = gas::bound::method_entry(count_methods(p),
                                             static_cast<int64_t>(args.size()));
    BoundPrep bp = prep_bound(pre, std::move(env), method, fn->n_args, fn->n_slots,
                              args, entry);
    CbasicRunner r{p, bp.c};
    Value ret = Value::unit();
    bool ok = r.run(*fn, bp.temps, ret);
    return settle_bound(bp, pre, ok, std::move(ret), fn->returns_value);
}

ExecOutcome cbasic_run_constructor(const CbasicProgram& p, const Memory& pre,
                                   MachineEnv env, const std::vector<Value>& args)
{
    const CbasicFn* fn = find_ctor<CbasicProgram, CbasicFn>(p);
    BoundPrep bp = prep_bound(pre, std::move(env), fn->name, fn->n_args,
                              fn->n_slots, args,
                              gas::bound::deploy(p.source_node_count));
    CbasicRunner r{p, bp.c};
    Value ret = Value::unit();
    bool ok = r.run(*fn, bp.temps, ret);
    return settle_bound(bp, pre, ok, std::move(ret), fn->returns_value);
}

ExecOutcome clinear_run_method(const ClinearProgram& p, const Memory& pre,
                               MachineEnv env, const std::string& method,
                               const std::vector<Value>& args)
{
    const ClinearFn* fn = p.find(method);
    if (!fn || fn->kind != FunctionKind::method)
        fail("UnknownIdent", "no method named " + method);
    int64_t entry = gas::bound::method_entry(count_methods(p),
                                             static_cast<int64_t>(args.size()));
    BoundPrep bp = prep_bound(pre, std::move(env), method, fn->n_args, fn->n_slots,
                              args, entry);
    ClinearRunner r{p, bp.c};
    Value ret = Value::unit();
    bool ok = r.run(*fn, bp.temps, ret);
    return settle_bound(bp, pre, ok, std::move(ret), fn->returns_value);
}

ExecOutcome clinear_run_constructor(const ClinearProgram& p, const Memory& pre,
                                    MachineEnv env, const std::vector<Value>& args)
{
    const ClinearFn* fn = find_ctor<ClinearProgram, ClinearFn>(p);
    BoundPrep bp = prep_bound(pre, std::move(env), fn->name, fn->n_args,
                              fn->n_slots, args,
                              gas::bound::deploy(p.source_node_count));
    ClinearRunner r{p, bp.c};
    Value ret = Value::unit();
    bool ok = r.run(*fn, bp.temps, ret);
    return settle_bound(bp, pre, ok, std::move(ret), fn->returns_value);
}

ExecOutcome stacked_run_method(const StackedProgram& p, const Memory& pre,
                               MachineEnv env, const std::string& method,
                               const std::vector<Value>& args,
                               const CodeLayout& layout)
{
    auto [fn, index] = find_dispatch<StackedProgram, StackedFn>(p, method);
    check_call_args(method, static_cast<size_t>(fn->n_args), args);
    ExactPrep xp = prep_exact(pre, std::move(env));
    StackedMachine m(p, xp.c, layout, args);
    for (size_t i = 0; i < p.functions.size(); ++i)
        if (&p.functions[i] == fn)
            m.fi = static_cast<int>(i);
    xp.c.charge(dispatch_fee(index));
    XHalt h = m.run();
    return settle_exact(xp, pre, h, std::move(m.ret), fn->returns_value);
}

ExecOutcome stacked_run_constructor(const StackedProgram& p, const Memory& pre,
                                    MachineEnv env, const std::vector<Value>& args,
                                    const CodeLayout& layout)
{
    const StackedFn* fn = find_ctor<StackedProgram, StackedFn>(p);
    check_call_args(fn->name, static_cast<size_t>(fn->n_args), args);
    ExactPrep xp = prep_exact(pre, std::move(env));
    StackedMachine m(p, xp.c, layout, args);
    for (size_t i = 0; i < p.functions.size(); ++i)
        if (&p.functions[i] == fn)
            m.fi = static_cast<int>(i);
    XHalt h = m.run();
    return settle_exact(xp, pre, h, std::move(m.ret), fn->returns_value);
}

ExecOutcome exprless_run_method(const ExprlessProgram& p, const Memory& pre,
                                MachineEnv env, const std::string& method,
                                const std::vector<Value>& args,
                                const CodeLayout& layout)
{
    auto [fn, index] = find_dispatch<ExprlessProgram, ExprlessFn>(p, method);
    check_call_args(method, static_cast<size_t>(fn->n_args), args);
    ExactPrep xp = prep_exact(pre, std::move(env));
    FlatMachine m(xp.c);
    m.layout = layout;
    size_t start = 0;
    for (const auto& f : p.functions)
    {
        if (f.kind == FunctionKind::constructor)
            continue;
        size_t at = m.add_unit(f.code);
        if (&f == fn)
            start = at;
    }
    m.calldata.push_back(selector_of(fn->selector_signature));
    for (const auto& a : args)
        m.calldata.push_back(a.word());
    m.pc = start;
    xp.c.charge(dispatch_fee(index));
    XHalt h = m.run();
    return settle_exact(xp, pre, h, std::move(m.ret), fn->returns_value);
}

ExecOutcome exprless_run_constructor(const ExprlessProgram& p, const Memory& pre,
                                     MachineEnv env, const std::vector<Value>& args,
                                     const CodeLayout& layout)
{
    const ExprlessFn* fn = find_ctor<ExprlessProgram, ExprlessFn>(p);
    check_call_args(fn->name, static_cast<size_t>(fn->n_args), args);
    ExactPrep xp = prep_exact(pre, std::move(env));
    FlatMachine m(xp.c);
    m.layout = layout;
    m.ctor_args = &args;
    m.pc = m.add_unit(fn->code);
    XHalt h = m.run();
    return settle_exact(xp, pre, h, std::move(m.ret), fn->returns_value);
}

namespace
{
MethodicalRun settle_methodical(ExactPrep& xp, const Memory& pre, XHalt halt,
                                Value ret, bool returns_value, int64_t gas_limit)
{
    MethodicalRun run;
    if (halt == XHalt::oog)
    {
        run.out_of_gas = true;
        run.outcome.reverted = true;
        run.outcome.state = pre;
        run.outcome.balances = std::move(xp.pre_balances);
        run.outcome.gas_bound = gas_limit;
        return run;
    }
    run.outcome = settle_exact(xp, pre, halt, std::move(ret), returns_value);
    return run;
}
}  // namespace

MethodicalRun methodical_run_method(
    const MethodicalProgram& p, const Memory& pre, MachineEnv env,
    const std::string& method, const std::vector<Value>& args, int64_t gas_limit,
    std::vector<std::pair<int64_t, int64_t>>* sync_log)
{
    const MethodEntry* me = p.find_method(method);
    if (!me)
        fail("UnknownIdent", "no method named " + method);
    check_call_args(method, static_cast<size_t>(me->n_args), args);
    ExactPrep xp = prep_exact(pre, std::move(env));
    xp.c.limited = true;
    xp.c.gas_remaining = gas_limit;
    FlatMachine m(xp.c);
    m.layout = p.code_layout;
    m.abort_label = p.runtime_abort;
    m.abort_in_code = true;
    m.sync_log = sync_log;
    m.add_unit(p.runtime_code);
    m.calldata.push_back(me->selector);
    for (const auto& a : args)
        m.calldata.push_back(a.word());
    XHalt h = m.run();
    return settle_methodical(xp, pre, h, std::move(m.ret), me->returns_value,
                             gas_limit);
}

MethodicalRun methodical_run_constructor(
    const MethodicalProgram& p, const Memory& pre, MachineEnv env,
    const std::vector<Value>& args, int64_t gas_limit,
    std::vector<std::pair<int64_t, int64_t>>* sync_log)
{
    check_call_args("constructor", static_cast<size_t>(p.ctor_args), args);
    ExactPrep xp = prep_exact(pre, std::move(env));
    xp.c.limited = true;
    xp.c.gas_remaining = gas_limit;
    FlatMachine m(xp.c);
    m.layout = p.code_layout;
    m.abort_label = p.deploy_abort;
    m.abort_in_code = true;
    m.sync_log = sync_log;
    m.ctor_args = &args;
    m.add_unit(p.deploy_code);
    XHalt h = m.run();
    return settle_methodical(xp, pre, h, std::move(m.ret), false, gas_limit);
}

}  // namespace minicc
