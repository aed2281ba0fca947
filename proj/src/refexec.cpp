// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "minicc/refexec.hpp"

#include "minicc/errors.hpp"
#include "minicc/gas.hpp"

namespace minicc
{
namespace
{
constexpr int k_max_call_depth = 256;

struct Frame
{
    std::map<std::string, Value> locals;
};

struct Ctx
{
    const Program& p;
    Memory mem;
    MachineEnv env;
    std::vector<LogRecord> events;
    int64_t gas = 0;
    Value ret = Value::unit();
    int depth = 0;
};

enum class Flow
{
    normal,
    brk,
    done,
    reverted,
};

Value eval_expr(Ctx& c, Frame& f, const ExprPtr& e);

Word as_word(const Value& v)
{
    if (!v.is_int())
        throw InternalError("reference run: arithmetic on a non-integer value");
    return v.word();
}

bool is_local_name(const Expr& e)
{
    return e.kind == Expr::Kind::var || e.kind == Expr::Kind::temp;
}

/// Walks a storage-rooted access path, evaluating dynamic indices as
/// it goes. Index expressions are not bounds-checked here: the range
/// side conditions own that, and the compiled code hashes the index
/// regardless.
struct PathResult
{
    HashKey key;
    TypePtr ty;
};

PathResult eval_storage_path(Ctx& c, Frame& f, const ExprPtr& e)
{
    switch (e->kind)
    {
        case Expr::Kind::glob:
        {
            const GlobalVar* g = c.p.layout.find_global(e->name);
            if (!g)
                fail("UnknownIdent", "no contract state variable " + e->name);
            c.gas += gas::bound::expr_node;
            return {HashKey::singleton(g->slot), g->type};
        }
        case Expr::Kind::field:
        {
            PathResult base = eval_storage_path(c, f, e->sub);
            TypePtr st = c.p.layout.resolve(base.ty);
            int ord = st->field_ordinal(e->name);
            const Type::Field* fld = st->find_field(e->name);
            if (ord < 0 || !fld)
                fail("UnknownIdent", "no field " + e->name + " in " + st->str());
            c.gas += gas::bound::hash_node + gas::bound::expr_node;
            return {HashKey::pair(std::move(base.key), ord), fld->type};
        }
        case Expr::Kind::index:
        {
            PathResult base = eval_storage_path(c, f, e->lhs);
            TypePtr bt = c.p.layout.resolve(base.ty);
            if (bt->kind != Type::Kind::array && bt->kind != Type::Kind::hashmap)
                fail("TypeMismatch", "indexing a non-indexable storage value");
            Word idx = as_word(eval_expr(c, f, e->rhs));
            c.gas += gas::bound::hash_node;
            return {HashKey::pair(std::move(base.key), std::move(idx)), bt->elem};
        }
        case Expr::Kind::deref:
        case Expr::Kind::addr:
            return eval_storage_path(c, f, e->sub);
        default:
            fail("TypeMismatch", "expression is not a storage path: " + e->str());
    }
}

bool is_storage_rooted(const ExprPtr& e)
{
    const Expr* cur = e.get();
    while (true)
    {
        switch (cur->kind)
        {
            case Expr::Kind::glob: return true;
            case Expr::Kind::field:
            case Expr::Kind::deref:
            case Expr::Kind::addr: cur = cur->sub.get(); break;
            case Expr::Kind::index: cur = cur->lhs.get(); break;
            default: return false;
        }
    }
}

Value read_storage(Ctx& c, Frame& f, const ExprPtr& e)
{
    PathResult pr = eval_storage_path(c, f, e);
    TypePtr ty = c.p.layout.resolve(pr.ty);
    if (!ty->is_word_sized())
        fail("TypeMismatch", "loading a whole aggregate from storage: " + e->str());
    c.gas += gas::bound::sload_node;
    return c.mem.sread(pr.key, ty);
}

Value eval_expr(Ctx& c, Frame& f, const ExprPtr& e)
{
    switch (e->kind)
    {
        case Expr::Kind::int_lit:
        case Expr::Kind::int256_lit:
            c.gas += gas::bound::expr_node;
            return Value::from_word(e->literal);
        case Expr::Kind::var:
        case Expr::Kind::temp:
        {
            c.gas += gas::bound::expr_node;
            auto it = f.locals.find(e->name);
            if (it == f.locals.end())
                fail("UnboundVariable", e->name);
            return it->second;
        }
        case Expr::Kind::glob:
        case Expr::Kind::field:
        case Expr::Kind::index:
        case Expr::Kind::deref:
            if (!is_storage_rooted(e))
                fail("UnsupportedFeature",
                     "in-memory aggregates are not executable: " + e->str());
            return read_storage(c, f, e);
        case Expr::Kind::addr:
            fail("UnsupportedFeature", "pointers are not first-class values");
        case Expr::Kind::unop:
        {
            c.gas += 2 * gas::bound::expr_node;
            Word x = as_word(eval_expr(c, f, e->sub));
            switch (e->un)
            {
                case UnOp::lnot: return Value::from_word(x == 0 ? 1 : 0);
                case UnOp::bnot: return Value::from_word(~x);
                case UnOp::neg: return Value::from_word(Word(0) - x);
            }
            throw InternalError("eval: bad unop");
        }
        case Expr::Kind::binop:
        {
            c.gas += 2 * gas::bound::expr_node;
            Word a = as_word(eval_expr(c, f, e->lhs));
            Word b = as_word(eval_expr(c, f, e->rhs));
            switch (e->bin)
            {
                case BinOp::add: return Value::from_word(a + b);
                case BinOp::sub: return Value::from_word(a - b);
                case BinOp::mul: return Value::from_word(a * b);
                case BinOp::div_: return Value::from_word(word_div(a, b));
                case BinOp::mod: return Value::from_word(word_mod(a, b));
                case BinOp::bit_and: return Value::from_word(a & b);
                case BinOp::bit_or: return Value::from_word(a | b);
                case BinOp::bit_xor: return Value::from_word(a ^ b);
                case BinOp::eq: return Value::from_word(a == b ? 1 : 0);
                case BinOp::ne: return Value::from_word(a != b ? 1 : 0);
                case BinOp::lt: return Value::from_word(a < b ? 1 : 0);
                case BinOp::gt: return Value::from_word(a > b ? 1 : 0);
                case BinOp::le: return Value::from_word(a <= b ? 1 : 0);
                case BinOp::ge: return Value::from_word(a >= b ? 1 : 0);
            }
            throw InternalError("eval: bad binop");
        }
        case Expr::Kind::call0:
            c.gas += gas::bound::expr_node;
            switch (e->b0)
            {
                case Builtin0::self_address:
                    return Value::from_word(c.env.self_address);
                case Builtin0::caller: return Value::from_word(c.env.caller);
                case Builtin0::callvalue: return Value::from_word(c.env.callvalue);
                case Builtin0::block_number:
                    return Value::from_word(c.env.block_number);
            }
            throw InternalError("eval: bad builtin");
        case Expr::Kind::call1:
        {
            c.gas += gas::bound::balance_node;
            Word addr = as_word(eval_expr(c, f, e->sub));
            return Value::from_word(c.env.balance_of(addr));
        }
    }
    throw InternalError("eval: bad expression kind");
}

Flow exec_stmt(Ctx& c, Frame& f, const StmtPtr& s);

Flow exec_call(Ctx& c, Frame& f, const Stmt& s)
{
    const Function* callee = c.p.find_function(s.callee);
    if (!callee)
        fail("UnknownIdent", "call to undefined function " + s.callee);
    if (callee->kind != FunctionKind::internal)
        fail("TypeMismatch", "call target is not an internal function: " + s.callee);
    if (s.args.size() != callee->params.size())
        fail("ArityMismatch", s.callee + " expects " +
                                  std::to_string(callee->params.size()) +
                                  " arguments, got " + std::to_string(s.args.size()));
    if (c.depth >= k_max_call_depth)
        throw InternalError("reference run: call depth limit exceeded");

    c.gas += gas::bound::call_fixed;
    Frame inner;
    for (size_t i = 0; i < s.args.size(); ++i)
        inner.locals[callee->params[i].name] = eval_expr(c, f, s.args[i]);

    ++c.depth;
    c.ret = Value::unit();
    Flow flow = exec_stmt(c, inner, callee->body);
    --c.depth;
    if (flow == Flow::reverted)
        return Flow::reverted;
    if (flow == Flow::brk)
        throw InternalError("reference run: break escaped a function body");
    // Falling off the end is an implicit return and is charged like one.
    if (flow == Flow::normal)
        c.gas += gas::bound::done;
    if (s.has_result())
        f.locals[s.temp] = c.ret;
    return Flow::normal;
}

Flow exec_stmt(Ctx& c, Frame& f, const StmtPtr& s)
{
    switch (s->kind)
    {
        case Stmt::Kind::skip:
            c.gas += gas::bound::stmt;
            return Flow::normal;
        case Stmt::Kind::assign:
        {
            if (is_local_name(*s->lhs))
            {
                c.gas += gas::bound::stmt;
                f.locals[s->lhs->name] = eval_expr(c, f, s->rhs);
                return Flow::normal;
            }
            if (!is_storage_rooted(s->lhs))
                fail("UnsupportedFeature",
                     "in-memory aggregates are not executable: " + s->lhs->str());
            c.gas += gas::bound::storage_write;
            Value v = eval_expr(c, f, s->rhs);
            PathResult pr = eval_storage_path(c, f, s->lhs);
            c.mem.swrite(pr.key, std::move(v));
            return Flow::normal;
        }
        case Stmt::Kind::set:
            c.gas += gas::bound::stmt;
            f.locals[s->temp] = eval_expr(c, f, s->rhs);
            return Flow::normal;
        case Stmt::Kind::call:
            return exec_call(c, f, *s);
        case Stmt::Kind::sequence:
        {
            Flow flow = exec_stmt(c, f, s->s1);
            if (flow != Flow::normal)
                return flow;
            return exec_stmt(c, f, s->s2);
        }
        case Stmt::Kind::ifte:
        {
            c.gas += gas::bound::stmt;
            Word cond = as_word(eval_expr(c, f, s->lhs));
            return exec_stmt(c, f, cond != 0 ? s->s1 : s->s2);
        }
        case Stmt::Kind::loop:
            while (true)
            {
                c.gas += gas::bound::stmt;
                Flow flow = exec_stmt(c, f, s->s1);
                if (flow == Flow::brk)
                    return Flow::normal;
                if (flow != Flow::normal)
                    return flow;
            }
        case Stmt::Kind::break_:
            c.gas += gas::bound::stmt;
            return Flow::brk;
        case Stmt::Kind::return_:
        {
            c.gas += gas::bound::done;
            if (s->value)
                c.ret = eval_expr(c, f, *s->value);
            else
                c.ret = Value::unit();
            return Flow::done;
        }
        case Stmt::Kind::transfer:
        {
            c.gas += gas::bound::transfer;
            Word to = as_word(eval_expr(c, f, s->lhs));
            Word amount = as_word(eval_expr(c, f, s->rhs));
            bool ok = c.env.transfer_hook ? c.env.transfer_hook(to, amount)
                                          : c.env.do_transfer(to, amount);
            return ok ? Flow::normal : Flow::reverted;
        }
        case Stmt::Kind::log:
        {
            c.gas += gas::bound::log(static_cast<int64_t>(s->topics.size()),
                                     static_cast<int64_t>(s->args.size()));
            LogRecord rec;
            for (const auto& t : s->topics)
                rec.topics.push_back(eval_expr(c, f, t));
            for (const auto& d : s->args)
                rec.data.push_back(eval_expr(c, f, d));
            c.events.push_back(std::move(rec));
            return Flow::normal;
        }
        case Stmt::Kind::revert:
            c.gas += gas::bound::revert;
            return Flow::reverted;
        case Stmt::Kind::callmethod:
            fail("UnsupportedFeature",
                 "cross-contract method calls are not executable");
    }
    throw InternalError("exec: bad statement kind");
}

ExecOutcome run_function(const Program& p, const Memory& pre, MachineEnv env,
                         const Function& fn, const std::vector<Value>& args,
                         int64_t entry_charge)
{
    if (args.size() != fn.params.size())
        fail("ArityMismatch", fn.name + " expects " +
                                  std::to_string(fn.params.size()) +
                                  " arguments, got " + std::to_string(args.size()));
    for (const auto& a : args)
        if (!a.is_int())
            fail("TypeMismatch", "method arguments must be integer values");

    std::map<Word, Word> pre_balances = env.balances;
    Ctx c{p, pre, std::move(env), {}, entry_charge, Value::unit(), 0};
    Frame f;
    for (size_t i = 0; i < args.size(); ++i)
        f.locals[fn.params[i].name] = args[i];

    Flow flow = exec_stmt(c, f, fn.body);
    if (flow == Flow::brk)
        throw InternalError("reference run: break escaped a function body");
    if (flow == Flow::normal)
        c.gas += gas::bound::done;

    ExecOutcome out;
    out.gas_bound = c.gas;
    if (flow == Flow::reverted)
    {
        out.reverted = true;
        out.state = pre;
        out.balances = std::move(pre_balances);
        return out;
    }
    out.ret = fn.returns_value() ? c.ret : Value::unit();
    out.state = std::move(c.mem);
    out.balances = std::move(c.env.balances);
    out.events = std::move(c.events);
    return out;
}
}  // namespace

ExecOutcome run_method(const Program& p, const Memory& pre, MachineEnv env,
                       const std::string& method, const std::vector<Value>& args)
{
    const Function* fn = p.find_function(method);
    if (!fn || fn->kind != FunctionKind::method)
        fail("UnknownIdent", "no method named " + method);
    int64_t entry = gas::bound::method_entry(
        static_cast<int64_t>(p.methods().size()), static_cast<int64_t>(args.size()));
    return run_function(p, pre, std::move(env), *fn, args, entry);
}

ExecOutcome run_constructor(const Program& p, const Memory& pre, MachineEnv env,
                            const std::vector<Value>& args)
{
    const Function* fn = p.constructor();
    if (!fn)
        fail("UnknownIdent", "program has no constructor");
    int64_t entry = gas::bound::deploy(program_node_count(p));
    return run_function(p, pre, std::move(env), *fn, args, entry);
}

namespace
{
int expr_nodes(const ExprPtr& e)
{
    if (!e)
        return 0;
    int n = 1;
    n += expr_nodes(e->sub);
    n += expr_nodes(e->lhs);
    n += expr_nodes(e->rhs);
    return n;
}

int stmt_nodes(const StmtPtr& s)
{
    if (!s)
        return 0;
    int n = 1;
    n += expr_nodes(s->lhs) + expr_nodes(s->rhs);
    for (const auto& a : s->args)
        n += expr_nodes(a);
    for (const auto& t : s->topics)
        n += expr_nodes(t);
    if (s->value)
        n += expr_nodes(*s->value);
    n += stmt_nodes(s->s1) + stmt_nodes(s->s2);
    return n;
}
}  // namespace

int program_node_count(const Program& p)
{
    int n = 0;
    for (const auto& fn : p.functions)
        n += stmt_nodes(fn.body);
    return n;
}

}  // namespace minicc
