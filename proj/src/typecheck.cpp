// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Elaboration of the surface AST into a typed program. Types every
// expression against the object signature, desugars assert / emit /
// for into core statements, and enforces the structural rules: one
// object per unit, immutable let bindings, internal-only calls with
// an acyclic call graph, and value results on every path of a
// value-returning method.
#include "minicc/frontend.hpp"

#include "minicc/errors.hpp"
#include "minicc/keccak.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace minicc
{
namespace
{
TypePtr t_int() { return Type::make_int(); }
TypePtr t_bool() { return Type::make_bool(); }
TypePtr t_addr() { return Type::make_address(); }

// Structural equality refined with the int/bool/address name tags the
// surface language distinguishes.
bool same_surface(const TypePtr& a, const TypePtr& b)
{
    if (!a || !b)
        return !a && !b;
    if (a->kind != b->kind)
        return false;
    switch (a->kind)
    {
        case Type::Kind::void_t:
            return true;
        case Type::Kind::int_t:
            return a->name == b->name;
        case Type::Kind::hashmap:
            return same_surface(a->key, b->key) && same_surface(a->elem, b->elem);
        default:
            return type_equal(a, b);
    }
}

bool is_plain_int(const TypePtr& t)
{
    return t && t->is_int() && t->name.empty();
}

bool is_bool_t(const TypePtr& t)
{
    return t && t->is_int() && t->name == "bool";
}

bool is_address_t(const TypePtr& t)
{
    return t && t->is_int() && t->name == "address";
}

bool is_word_scalar(const TypePtr& t)
{
    return t && t->is_int();
}

bool is_storable(const TypePtr& t)
{
    if (is_word_scalar(t))
        return true;
    if (t && t->kind == Type::Kind::hashmap)
        return is_word_scalar(t->key) && is_storable(t->elem);
    return false;
}

// Short ASCII text as one left-aligned storage word, the conventional
// encoding for fixed-size message constants.
Word string_word(const std::string& text)
{
    Word w = 0;
    for (char c : text)
        w = (w << 8) | Word(static_cast<unsigned char>(c));
    w <<= 8 * (32 - text.size());
    return w;
}

std::string event_signature(const std::string& name, const std::vector<TypePtr>& params)
{
    std::string sig = name + "(";
    for (size_t i = 0; i < params.size(); ++i)
    {
        if (i)
            sig += ",";
        if (is_address_t(params[i]))
            sig += "address";
        else if (is_bool_t(params[i]))
            sig += "bool";
        else
            sig += "uint256";
    }
    return sig + ")";
}

struct Binding
{
    bool is_param = false;
    std::string unique;  // temp name after disambiguation
    TypePtr type;
};

class Elaborator
{
public:
    Elaborator(const SourceUnit& unit, const SrcObject& obj)
        : unit_(unit), obj_(obj)
    {
        if (!obj.signature.empty())
        {
            for (const auto& s : unit.signatures)
                if (s.name == obj.signature)
                    sig_ = &s;
            if (!sig_)
                fail("UnknownIdent", "unknown object signature " + obj.signature);
        }
    }

    Program run()
    {
        Program p;
        p.name = obj_.name;
        declare_state();
        declare_events();
        declare_headers();
        for (auto& [name, fn] : headers_)
        {
            (void)name;
            elaborate_body(fn);
        }
        check_call_graph();

        // Constructor first, then the remaining functions in
        // declaration order.
        p.layout = layout_;
        p.events = events_;
        for (const std::string& name : order_)
            if (headers_.at(name).kind == FunctionKind::constructor)
                p.functions.push_back(std::move(headers_.at(name)));
        for (const std::string& name : order_)
            if (headers_.at(name).kind != FunctionKind::constructor)
                p.functions.push_back(std::move(headers_.at(name)));
        if (!p.constructor())
        {
            Function ctor;
            ctor.name = "constructor";
            ctor.kind = FunctionKind::constructor;
            ctor.ret = Type::make_void();
            ctor.body = Stmt::make_skip();
            p.functions.insert(p.functions.begin(), std::move(ctor));
        }
        return p;
    }

private:
    // --- declarations ---

    void declare_state()
    {
        for (const auto& sv : obj_.state)
        {
            if (layout_.find_global(sv.name))
                fail("DuplicateIdent", "state variable " + sv.name);
            if (!is_storable(sv.type))
                fail("TypeError", "state variable " + sv.name +
                                      " has a type that cannot live in storage");
            switch (sv.init)
            {
                case SrcStateVar::Init::mapping_init:
                    if (sv.type->kind != Type::Kind::hashmap)
                        fail("TypeError",
                             "mapping_init initializes mappings, not " + sv.type->str());
                    break;
                case SrcStateVar::Init::number:
                    if (!is_word_scalar(sv.type))
                        fail("TypeError", "numeric initializer for " + sv.name);
                    if (sv.init_number != 0)
                        fail("UnsupportedFeature",
                             "state variables start at zero; assign " + sv.name +
                                 " in the constructor");
                    break;
                case SrcStateVar::Init::boolean:
                    if (!is_bool_t(sv.type))
                        fail("TypeError", "boolean initializer for " + sv.name);
                    if (sv.init_bool)
                        fail("UnsupportedFeature",
                             "state variables start at false; assign " + sv.name +
                                 " in the constructor");
                    break;
            }
            layout_.globals.push_back(
                {sv.name, sv.type, Word(layout_.globals.size())});
        }
    }

    void declare_events()
    {
        for (const auto& ev : unit_.events)
        {
            if (events_.count(ev.name))
                fail("DuplicateIdent", "event " + ev.name);
            for (const auto& t : ev.params)
                if (!is_word_scalar(t))
                    fail("TypeError", "event " + ev.name + " parameter must be scalar");
            const std::string sig = event_signature(ev.name, ev.params);
            events_[ev.name] =
                Event{ev.name, keccak256_word(Bytes(sig.begin(), sig.end())), ev.params};
        }
    }

    void declare_headers()
    {
        std::set<std::string> implemented;
        for (const auto& m : obj_.methods)
        {
            if (headers_.count(m.name))
                fail("DuplicateIdent", "method " + m.name);
            if (layout_.find_global(m.name))
                fail("DuplicateIdent", m.name + " is already a state variable");
            implemented.insert(m.name);

            Function fn;
            fn.name = m.name;
            const SrcSigEntry* entry = sig_ ? sig_->find(m.name) : nullptr;
            if (m.name == "constructor")
            {
                fn.kind = FunctionKind::constructor;
                fn.ret = Type::make_void();
                if (entry && !entry->ret->is_void())
                    fail("TypeError", "constructor must return unit");
            }
            else if (entry)
            {
                fn.kind = FunctionKind::method;
                fn.ret = entry->ret;
            }
            else
            {
                fn.kind = FunctionKind::internal;
                fn.ret = m.ret ? m.ret : Type::make_void();
            }

            const std::vector<TypePtr>* sig_params = entry ? &entry->params : nullptr;
            if (sig_params && sig_params->size() != m.formals.size())
                fail("ArityMismatch", m.name + " takes " +
                                          std::to_string(m.formals.size()) +
                                          " parameters but its signature lists " +
                                          std::to_string(sig_params->size()));
            for (size_t i = 0; i < m.formals.size(); ++i)
            {
                const SrcFormal& f = m.formals[i];
                TypePtr ty = f.type;
                if (sig_params)
                {
                    if (ty && !same_surface(ty, (*sig_params)[i]))
                        fail("TypeError", "parameter " + f.name +
                                              " contradicts the signature type");
                    ty = (*sig_params)[i];
                }
                if (!ty)
                    fail("TypeError", "parameter " + f.name + " of " + m.name +
                                          " needs a type annotation");
                if (!is_word_scalar(ty))
                    fail("TypeError", "parameter " + f.name + " must be scalar");
                fn.params.push_back({f.name, ty});
            }
            if (entry && m.ret && !same_surface(m.ret, entry->ret))
                fail("TypeError", m.name + " return annotation contradicts signature");

            headers_.emplace(m.name, std::move(fn));
            order_.push_back(m.name);
            bodies_.emplace(m.name, &m);
        }
        if (sig_)
            for (const auto& e : sig_->entries)
                if (!implemented.count(e.name))
                    fail("TypeError", "signature method " + e.name + " not implemented");
    }

    // --- bodies ---

    void elaborate_body(Function& fn)
    {
        fn_ = &fn;
        scopes_.clear();
        scopes_.emplace_back();
        used_.clear();
        for (const auto& p : fn.params)
        {
            if (used_.count(p.name))
                fail("DuplicateIdent", "parameter " + p.name);
            used_.insert(p.name);
            scopes_.back()[p.name] = Binding{true, p.name, p.type};
        }
        const SrcCmd& body = *bodies_.at(fn.name)->body;
        fn.body = fn.returns_value() ? elab_tail(body) : elab_stmt(body);
    }

    // Effect position: the command's value, if any, is not consumed.
    StmtPtr elab_stmt(const SrcCmd& c)
    {
        switch (c.kind)
        {
            case SrcCmd::Kind::let_in:
                return elab_let(c, [&](const SrcCmd& body) { return elab_stmt(body); });
            case SrcCmd::Kind::seq:
                return Stmt::make_sequence(elab_stmt(*c.c1), elab_stmt(*c.c2));
            case SrcCmd::Kind::ifte:
            {
                ExprPtr cond = elab_bool(c.e1);
                StmtPtr t = scoped([&] { return elab_stmt(*c.c1); });
                StmtPtr e = c.c2 ? scoped([&] { return elab_stmt(*c.c2); })
                                 : Stmt::make_skip();
                return Stmt::make_ifte(std::move(cond), std::move(t), std::move(e));
            }
            case SrcCmd::Kind::for_to:
                return elab_for(c);
            case SrcCmd::Kind::assert_:
            {
                // assert(false) is the idiom for an unconditional
                // abort; fold the constant guard away.
                if (c.e1->kind == SrcExpr::Kind::boolean)
                    return c.e1->bvalue ? Stmt::make_skip() : Stmt::make_revert();
                return Stmt::make_ifte(elab_bool(c.e1), Stmt::make_skip(),
                                       Stmt::make_revert());
            }
            case SrcCmd::Kind::emit:
                return elab_emit(c);
            case SrcCmd::Kind::transfer:
            {
                ExprPtr to = elab_expr(*c.e1);
                ExprPtr amount = elab_expr(*c.e2);
                if (!is_address_t(to->type))
                    fail("TypeError", "transferEth target must be an address");
                if (!is_plain_int(amount->type))
                    fail("TypeError", "transferEth amount must be an int");
                return Stmt::make_transfer(std::move(to), std::move(amount));
            }
            case SrcCmd::Kind::assign:
                return elab_assign(c);
            case SrcCmd::Kind::value:
                if (c.e1->kind == SrcExpr::Kind::call)
                {
                    auto [callee, args] = elab_call(*c.e1);
                    if (!callee->ret->is_void())
                        fail("TypeError",
                             "result of " + callee->name + " is discarded");
                    return Stmt::make_call(std::nullopt, callee->name,
                                           std::move(args));
                }
                fail("TypeError", "expression result is discarded");
        }
        throw InternalError("unhandled command");
    }

    // Tail position of a value-returning function: every control path
    // must produce the return value.
    StmtPtr elab_tail(const SrcCmd& c)
    {
        switch (c.kind)
        {
            case SrcCmd::Kind::let_in:
                return elab_let(c, [&](const SrcCmd& body) { return elab_tail(body); });
            case SrcCmd::Kind::seq:
                return Stmt::make_sequence(elab_stmt(*c.c1), elab_tail(*c.c2));
            case SrcCmd::Kind::ifte:
            {
                if (!c.c2)
                    fail("TypeError",
                         fn_->name + ": if in tail position needs an else branch");
                ExprPtr cond = elab_bool(c.e1);
                StmtPtr t = scoped([&] { return elab_tail(*c.c1); });
                StmtPtr e = scoped([&] { return elab_tail(*c.c2); });
                return Stmt::make_ifte(std::move(cond), std::move(t), std::move(e));
            }
            case SrcCmd::Kind::value:
            {
                if (c.e1->kind == SrcExpr::Kind::call)
                {
                    std::string tmp = fresh_temp("$ret", fn_->ret);
                    StmtPtr call = elab_bound_call(*c.e1, tmp, fn_->ret);
                    return Stmt::make_sequence(
                        std::move(call),
                        Stmt::make_return(Expr::make_temp(tmp, fn_->ret)));
                }
                ExprPtr v = elab_expr(*c.e1);
                if (!same_surface(v->type, fn_->ret))
                    fail("TypeError", fn_->name + " returns " + fn_->ret->str() +
                                          ", tail value has type " + v->type->str());
                return Stmt::make_return(std::move(v));
            }
            default:
                fail("TypeError", fn_->name + " must end in a value on every path");
        }
    }

    template <class BodyFn>
    StmtPtr elab_let(const SrcCmd& c, BodyFn&& body_fn)
    {
        for (const auto& scope : scopes_)
            if (scope.count(c.name))
                fail("DuplicateIdent", c.name + " is already bound");
        auto [init, type, unique] = elab_bind_rhs(*c.c1, c.name);
        scopes_.emplace_back();
        scopes_.back()[c.name] = Binding{false, unique, type};
        StmtPtr body = body_fn(*c.c2);
        scopes_.pop_back();
        return Stmt::make_sequence(std::move(init), std::move(body));
    }

    // Right side of a let: an expression, a call, or branching
    // commands that produce the bound value on every path.
    struct BoundRhs
    {
        StmtPtr init;
        TypePtr type;
        std::string unique;
    };

    BoundRhs elab_bind_rhs(const SrcCmd& c, const std::string& name)
    {
        switch (c.kind)
        {
            case SrcCmd::Kind::value:
            {
                if (c.e1->kind == SrcExpr::Kind::call)
                {
                    auto [callee, args] = elab_call(*c.e1);
                    if (callee->ret->is_void())
                        fail("TypeError",
                             "cannot bind the unit result of " + callee->name);
                    std::string unique = fresh_temp(name, callee->ret);
                    return {Stmt::make_call(unique, callee->name, std::move(args)),
                            callee->ret, unique};
                }
                ExprPtr v = elab_expr(*c.e1);
                if (v->type->is_void())
                    fail("TypeError", "cannot bind a unit value");
                std::string unique = fresh_temp(name, v->type);
                TypePtr ty = v->type;
                return {Stmt::make_set(unique, std::move(v)), ty, unique};
            }
            case SrcCmd::Kind::ifte:
            {
                if (!c.c2)
                    fail("TypeError", "binding an if needs both branches");
                ExprPtr cond = elab_bool(c.e1);
                // Bind the temp first so both branches assign it.
                std::string unique;
                TypePtr type;
                StmtPtr t = scoped([&] {
                    auto r = elab_bind_rhs(*c.c1, name);
                    unique = r.unique;
                    type = r.type;
                    return r.init;
                });
                StmtPtr e = scoped([&] {
                    auto r = elab_bind_into(*c.c2, unique, type);
                    return r;
                });
                return {Stmt::make_ifte(std::move(cond), std::move(t), std::move(e)),
                        type, unique};
            }
            case SrcCmd::Kind::let_in:
            {
                for (const auto& scope : scopes_)
                    if (scope.count(c.name))
                        fail("DuplicateIdent", c.name + " is already bound");
                auto [init, type, unique] = elab_bind_rhs(*c.c1, c.name);
                scopes_.emplace_back();
                scopes_.back()[c.name] = Binding{false, unique, type};
                BoundRhs inner = elab_bind_rhs(*c.c2, name);
                scopes_.pop_back();
                return {Stmt::make_sequence(std::move(init), std::move(inner.init)),
                        inner.type, inner.unique};
            }
            case SrcCmd::Kind::seq:
            {
                StmtPtr a = elab_stmt(*c.c1);
                BoundRhs inner = elab_bind_rhs(*c.c2, name);
                return {Stmt::make_sequence(std::move(a), std::move(inner.init)),
                        inner.type, inner.unique};
            }
            default:
                fail("TypeError", "the right side of let " + name +
                                      " does not produce a value");
        }
    }

    // Like elab_bind_rhs, but the destination temp already exists
    // (else branch of a bound if).
    StmtPtr elab_bind_into(const SrcCmd& c, const std::string& unique,
                           const TypePtr& expect)
    {
        switch (c.kind)
        {
            case SrcCmd::Kind::value:
            {
                if (c.e1->kind == SrcExpr::Kind::call)
                    return elab_bound_call(*c.e1, unique, expect);
                ExprPtr v = elab_expr(*c.e1);
                if (!same_surface(v->type, expect))
                    fail("TypeError", "branches of a bound if disagree on type");
                return Stmt::make_set(unique, std::move(v));
            }
            case SrcCmd::Kind::ifte:
            {
                if (!c.c2)
                    fail("TypeError", "binding an if needs both branches");
                ExprPtr cond = elab_bool(c.e1);
                StmtPtr t =
                    scoped([&] { return elab_bind_into(*c.c1, unique, expect); });
                StmtPtr e =
                    scoped([&] { return elab_bind_into(*c.c2, unique, expect); });
                return Stmt::make_ifte(std::move(cond), std::move(t), std::move(e));
            }
            case SrcCmd::Kind::seq:
                return Stmt::make_sequence(
                    elab_stmt(*c.c1), elab_bind_into(*c.c2, unique, expect));
            default:
                fail("TypeError", "branch does not produce a value");
        }
    }

    StmtPtr elab_bound_call(const SrcExpr& call, const std::string& unique,
                            const TypePtr& expect)
    {
        auto [callee, args] = elab_call(call);
        if (!same_surface(callee->ret, expect))
            fail("TypeError", callee->name + " returns " + callee->ret->str() +
                                  " where " + expect->str() + " is expected");
        return Stmt::make_call(unique, callee->name, std::move(args));
    }

    StmtPtr elab_for(const SrcCmd& c)
    {
        ExprPtr lo = elab_expr(*c.e1);
        ExprPtr hi = elab_expr(*c.e2);
        if (!is_plain_int(lo->type) || !is_plain_int(hi->type))
            fail("TypeError", "for bounds must be ints");
        for (const auto& scope : scopes_)
            if (scope.count(c.name))
                fail("DuplicateIdent", c.name + " is already bound");

        std::string x = fresh_temp(c.name, t_int());
        std::string bound = fresh_temp(x + "$hi", t_int());
        scopes_.emplace_back();
        scopes_.back()[c.name] = Binding{false, x, t_int()};
        StmtPtr body = elab_stmt(*c.c1);
        scopes_.pop_back();

        auto xv = [&] { return Expr::make_temp(x, t_int()); };
        StmtPtr step = Stmt::make_set(
            x, Expr::make_binop(BinOp::add, xv(), Expr::make_int(1, t_int()), t_int()));
        ExprPtr keep_going = Expr::make_binop(
            BinOp::le, xv(), Expr::make_temp(bound, t_int()), t_bool());
        return Stmt::make_sequence(
            Stmt::make_set(x, std::move(lo)),
            Stmt::make_sequence(
                Stmt::make_set(bound, std::move(hi)),
                Stmt::make_loop(Stmt::make_ifte(
                    std::move(keep_going),
                    Stmt::make_sequence(std::move(body), std::move(step)),
                    Stmt::make_break()))));
    }

    StmtPtr elab_emit(const SrcCmd& c)
    {
        auto it = events_.find(c.name);
        if (it == events_.end())
            fail("UnknownIdent", "event " + c.name);
        const Event& ev = it->second;
        if (ev.params.size() != c.args.size())
            fail("ArityMismatch", "event " + c.name + " takes " +
                                      std::to_string(ev.params.size()) + " arguments");
        std::vector<ExprPtr> data;
        for (size_t i = 0; i < c.args.size(); ++i)
        {
            ExprPtr a = elab_expr(*c.args[i]);
            if (!same_surface(a->type, ev.params[i]))
                fail("TypeError", "event " + c.name + " argument " +
                                      std::to_string(i) + " has the wrong type");
            data.push_back(std::move(a));
        }
        std::vector<ExprPtr> topics = {Expr::make_int256(ev.id, t_int())};
        return Stmt::make_log(std::move(topics), std::move(data));
    }

    StmtPtr elab_assign(const SrcCmd& c)
    {
        ExprPtr lhs = elab_expr(*c.e1);
        const Expr* root = lhs.get();
        while (root->kind == Expr::Kind::index)
            root = root->lhs.get();
        if (root->kind != Expr::Kind::glob)
            fail("TypeError",
                 "only state variables can be assigned; let bindings are immutable");
        ExprPtr rhs = elab_expr(*c.e2);
        if (!same_surface(lhs->type, rhs->type))
            fail("TypeError", "assignment types differ: " + lhs->type->str() +
                                  " := " + rhs->type->str());
        if (!is_word_scalar(lhs->type))
            fail("TypeError", "only scalar storage cells can be assigned");
        return Stmt::make_assign(std::move(lhs), std::move(rhs));
    }

    // --- expressions ---

    ExprPtr elab_bool(const SrcExprPtr& e)
    {
        ExprPtr v = elab_expr(*e);
        if (!is_bool_t(v->type))
            fail("TypeError", "condition must be bool, got " + v->type->str());
        return v;
    }

    ExprPtr elab_expr(const SrcExpr& e)
    {
        switch (e.kind)
        {
            case SrcExpr::Kind::number:
                return Expr::make_int(e.number, t_int());
            case SrcExpr::Kind::boolean:
                return Expr::make_int(e.bvalue ? 1 : 0, t_bool());
            case SrcExpr::Kind::string_lit:
                return Expr::make_int256(string_word(e.text), t_int());
            case SrcExpr::Kind::ident:
            {
                for (auto scope = scopes_.rbegin(); scope != scopes_.rend(); ++scope)
                {
                    auto it = scope->find(e.text);
                    if (it == scope->end())
                        continue;
                    const Binding& b = it->second;
                    return b.is_param ? Expr::make_var(b.unique, b.type)
                                      : Expr::make_temp(b.unique, b.type);
                }
                if (const GlobalVar* g = layout_.find_global(e.text))
                    return Expr::make_glob(g->name, g->type);
                fail("UnknownIdent", e.text);
            }
            case SrcExpr::Kind::builtin0:
            {
                TypePtr t = e.b0 == Builtin0::caller || e.b0 == Builtin0::self_address
                                ? t_addr()
                                : t_int();
                return Expr::make_call0(e.b0, std::move(t));
            }
            case SrcExpr::Kind::balance:
            {
                ExprPtr a = elab_expr(*e.lhs);
                if (!is_address_t(a->type))
                    fail("TypeError", "balance takes an address");
                return Expr::make_call1(Builtin1::balance, std::move(a), t_int());
            }
            case SrcExpr::Kind::binop:
                return elab_binop(e);
            case SrcExpr::Kind::index:
            {
                ExprPtr base = elab_expr(*e.lhs);
                if (!base->type || base->type->kind != Type::Kind::hashmap)
                    fail("TypeError", "indexing a non-mapping value");
                ExprPtr key = elab_expr(*e.rhs);
                if (!same_surface(key->type, base->type->key))
                    fail("TypeError", "mapping key has type " + key->type->str() +
                                          ", expected " + base->type->key->str());
                TypePtr elem = base->type->elem;
                return Expr::make_index(std::move(base), std::move(key),
                                        std::move(elem));
            }
            case SrcExpr::Kind::call:
                fail("TypeError",
                     "calls may only appear as a whole let binding or statement");
        }
        throw InternalError("unhandled expression");
    }

    ExprPtr elab_binop(const SrcExpr& e)
    {
        ExprPtr a = elab_expr(*e.lhs);
        ExprPtr b = elab_expr(*e.rhs);
        switch (e.op)
        {
            case BinOp::add:
            case BinOp::sub:
            case BinOp::mul:
            case BinOp::div_:
            case BinOp::mod:
                if (!is_plain_int(a->type) || !is_plain_int(b->type))
                    fail("TypeError", "arithmetic needs int operands");
                return Expr::make_binop(e.op, std::move(a), std::move(b), t_int());
            case BinOp::bit_and:
            case BinOp::bit_or:
                if (!is_bool_t(a->type) || !is_bool_t(b->type))
                    fail("TypeError", "logical connectives need bool operands");
                return Expr::make_binop(e.op, std::move(a), std::move(b), t_bool());
            case BinOp::eq:
            case BinOp::ne:
                if (!same_surface(a->type, b->type) || !is_word_scalar(a->type))
                    fail("TypeError", "comparing values of different types");
                return Expr::make_binop(e.op, std::move(a), std::move(b), t_bool());
            default:  // ordering
                if (!same_surface(a->type, b->type) || !is_word_scalar(a->type) ||
                    is_bool_t(a->type))
                    fail("TypeError", "ordering needs matching numeric operands");
                return Expr::make_binop(e.op, std::move(a), std::move(b), t_bool());
        }
    }

    // --- calls ---

    std::pair<const Function*, std::vector<ExprPtr>> elab_call(const SrcExpr& e)
    {
        auto it = headers_.find(e.text);
        if (it == headers_.end())
            fail("UnknownIdent", "function " + e.text);
        const Function& callee = it->second;
        if (callee.kind != FunctionKind::internal)
            fail("TypeError", e.text + " is not an internal function; methods are "
                                       "only callable from outside");
        if (fn_->kind == FunctionKind::constructor)
            fail("CallInConstructor", "constructor calls " + e.text);
        if (callee.params.size() != e.args.size())
            fail("ArityMismatch", e.text + " takes " +
                                      std::to_string(callee.params.size()) +
                                      " arguments");
        std::vector<ExprPtr> args;
        for (size_t i = 0; i < e.args.size(); ++i)
        {
            ExprPtr a = elab_expr(*e.args[i]);
            if (!same_surface(a->type, callee.params[i].type))
                fail("TypeError", "argument " + std::to_string(i) + " of " + e.text +
                                      " has the wrong type");
            args.push_back(std::move(a));
        }
        call_edges_[fn_->name].insert(e.text);
        return {&callee, std::move(args)};
    }

    void check_call_graph()
    {
        std::set<std::string> done, on_path;
        for (const auto& [from, tos] : call_edges_)
        {
            (void)tos;
            visit_calls(from, done, on_path);
        }
    }

    void visit_calls(const std::string& fn, std::set<std::string>& done,
                     std::set<std::string>& on_path)
    {
        if (done.count(fn))
            return;
        if (!on_path.insert(fn).second)
            fail("UnsupportedFeature", "recursive call chain through " + fn);
        auto it = call_edges_.find(fn);
        if (it != call_edges_.end())
            for (const std::string& next : it->second)
                visit_calls(next, done, on_path);
        on_path.erase(fn);
        done.insert(fn);
    }

    // --- scope helpers ---

    template <class F>
    StmtPtr scoped(F&& f)
    {
        scopes_.emplace_back();
        StmtPtr s = f();
        scopes_.pop_back();
        return s;
    }

    // Registers a temp under a name unique within the function;
    // rebindings in disjoint scopes get a numeric suffix.
    std::string fresh_temp(const std::string& name, const TypePtr& type)
    {
        std::string unique = name;
        int k = 1;
        while (used_.count(unique))
            unique = name + "$" + std::to_string(k++);
        used_.insert(unique);
        fn_->temps.push_back({unique, type});
        return unique;
    }

    const SourceUnit& unit_;
    const SrcObject& obj_;
    const SrcSignature* sig_ = nullptr;
    Layout layout_;
    std::map<std::string, Event> events_;
    std::map<std::string, Function> headers_;
    std::vector<std::string> order_;
    std::map<std::string, const SrcMethod*> bodies_;
    std::map<std::string, std::set<std::string>> call_edges_;

    Function* fn_ = nullptr;
    std::vector<std::map<std::string, Binding>> scopes_;
    std::set<std::string> used_;
};
}  // namespace

Program typecheck(const SourceUnit& u)
{
    if (u.objects.empty())
        fail("TypeError", "source declares no object");
    if (u.objects.size() > 1)
        fail("UnsupportedFeature", "multiple objects per unit");
    if (u.layers.size() > 1)
        fail("UnsupportedFeature", "layer composition");
    if (!u.layers.empty())
    {
        const SrcLayer& l = u.layers.front();
        if (!l.underlay.empty())
            fail("UnsupportedFeature", "layer " + l.name + " declares an underlay");
        if (l.bindings.size() > 1)
            fail("UnsupportedFeature", "layer " + l.name + " binds several objects");
        for (const auto& [slot, obj] : l.bindings)
        {
            (void)slot;
            if (obj != u.objects.front().name)
                fail("UnknownIdent", "layer binds unknown object " + obj);
        }
    }
    return Elaborator(u, u.objects.front()).run();
}

}  // namespace minicc
