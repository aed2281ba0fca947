// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "minicc/pipeline.hpp"

#include "minicc/errors.hpp"
#include "minicc/keccak.hpp"
#include "minicc/refexec.hpp"

#include <map>

namespace minicc
{
namespace
{
/// ABI rendering of a parameter type for selector signatures.
std::string abi_type_name(const TypePtr& t)
{
    if (t->name == "address")
        return "address";
    if (t->name == "bool")
        return "bool";
    if (t->is_int())
        return "uint" + std::to_string(t->width);
    fail("TypeMismatch", "method parameters must be word-sized: " + t->str());
}

struct FnLowerer
{
    const Program& p;
    const Function& fn;
    std::map<std::string, int> temp_ids;

    FnLowerer(const Program& prog, const Function& f) : p(prog), fn(f)
    {
        int next = 0;
        for (const auto& param : f.params)
            temp_ids[param.name] = next++;
        for (const auto& local : f.temps)
            if (!temp_ids.emplace(local.name, next).second)
                fail("DuplicateIdent", "local shadows a parameter: " + local.name);
            else
                ++next;
    }

    int temp_of(const std::string& name) const
    {
        auto it = temp_ids.find(name);
        if (it == temp_ids.end())
            fail("UnboundVariable", name);
        return it->second;
    }

    /// Hash chain for a storage path plus the type it points at.
    struct Chain
    {
        CExprPtr key;
        TypePtr ty;
    };

    Chain lower_path(const ExprPtr& e)
    {
        switch (e->kind)
        {
            case Expr::Kind::glob:
            {
                const GlobalVar* g = p.layout.find_global(e->name);
                if (!g)
                    fail("UnknownGlobal", "no contract state variable " + e->name);
                return {CExpr::make_const(g->slot), g->type};
            }
            case Expr::Kind::field:
            {
                Chain base = lower_path(e->sub);
                TypePtr st = p.layout.resolve(base.ty);
                int ord = st->field_ordinal(e->name);
                const Type::Field* fld = st->find_field(e->name);
                if (ord < 0 || !fld)
                    fail("UnknownGlobal", "no field " + e->name + " in " + st->str());
                return {CExpr::make_hash2(base.key, CExpr::make_const(ord)), fld->type};
            }
            case Expr::Kind::index:
            {
                Chain base = lower_path(e->lhs);
                TypePtr bt = p.layout.resolve(base.ty);
                if (bt->kind != Type::Kind::array && bt->kind != Type::Kind::hashmap)
                    fail("TypeMismatch", "indexing a non-indexable storage value");
                return {CExpr::make_hash2(base.key, lower(e->rhs)), bt->elem};
            }
            case Expr::Kind::deref:
            case Expr::Kind::addr:
                return lower_path(e->sub);
            default:
                fail("TypeMismatch", "expression is not a storage path: " + e->str());
        }
    }

    bool storage_rooted(const ExprPtr& e) const
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

    CExprPtr storage_load(const ExprPtr& e)
    {
        Chain c = lower_path(e);
        TypePtr ty = p.layout.resolve(c.ty);
        if (!ty->is_word_sized())
            fail("TypeMismatch", "loading a whole aggregate from storage: " + e->str());
        return CExpr::make_sload(c.key);
    }

    CExprPtr lower(const ExprPtr& e)
    {
        switch (e->kind)
        {
            case Expr::Kind::int_lit:
            case Expr::Kind::int256_lit:
                return CExpr::make_const(e->literal);
            case Expr::Kind::var:
            case Expr::Kind::temp:
                return CExpr::make_temp(temp_of(e->name));
            case Expr::Kind::glob:
            case Expr::Kind::field:
            case Expr::Kind::index:
            case Expr::Kind::deref:
                if (!storage_rooted(e))
                    fail("UnsupportedFeature",
                         "in-memory aggregates are not compilable: " + e->str());
                return storage_load(e);
            case Expr::Kind::addr:
                fail("UnsupportedFeature", "pointers are not first-class values");
            case Expr::Kind::unop:
                switch (e->un)
                {
                    case UnOp::lnot:
                        return CExpr::make_unop(IrUnop::lnot, lower(e->sub));
                    case UnOp::bnot:
                        return CExpr::make_unop(IrUnop::bnot, lower(e->sub));
                    case UnOp::neg:
                        return CExpr::make_binop(IrBinop::sub, CExpr::make_const(0),
                                                 lower(e->sub));
                }
                throw InternalError("lower: bad unop");
            case Expr::Kind::binop:
            {
                CExprPtr a = lower(e->lhs);
                CExprPtr b = lower(e->rhs);
                switch (e->bin)
                {
                    case BinOp::add: return CExpr::make_binop(IrBinop::add, a, b);
                    case BinOp::sub: return CExpr::make_binop(IrBinop::sub, a, b);
                    case BinOp::mul: return CExpr::make_binop(IrBinop::mul, a, b);
                    case BinOp::div_: return CExpr::make_binop(IrBinop::div_, a, b);
                    case BinOp::mod: return CExpr::make_binop(IrBinop::mod, a, b);
                    case BinOp::bit_and: return CExpr::make_binop(IrBinop::bit_and, a, b);
                    case BinOp::bit_or: return CExpr::make_binop(IrBinop::bit_or, a, b);
                    case BinOp::bit_xor: return CExpr::make_binop(IrBinop::bit_xor, a, b);
                    case BinOp::eq: return CExpr::make_binop(IrBinop::eq, a, b);
                    case BinOp::lt: return CExpr::make_binop(IrBinop::lt, a, b);
                    case BinOp::gt: return CExpr::make_binop(IrBinop::gt, a, b);
                    case BinOp::ne:
                        return CExpr::make_unop(IrUnop::lnot,
                                                CExpr::make_binop(IrBinop::eq, a, b));
                    case BinOp::le:
                        return CExpr::make_unop(IrUnop::lnot,
                                                CExpr::make_binop(IrBinop::gt, a, b));
                    case BinOp::ge:
                        return CExpr::make_unop(IrUnop::lnot,
                                                CExpr::make_binop(IrBinop::lt, a, b));
                }
                throw InternalError("lower: bad binop");
            }
            case Expr::Kind::call0:
                return CExpr::make_call0(e->b0);
            case Expr::Kind::call1:
                return CExpr::make_call1(e->b1, lower(e->sub));
        }
        throw InternalError("lower: bad expression kind");
    }

    ClikeStmtPtr lower_stmt(const StmtPtr& s)
    {
        switch (s->kind)
        {
            case Stmt::Kind::skip:
                return ClikeStmt::make_skip();
            case Stmt::Kind::assign:
            {
                if (s->lhs->kind == Expr::Kind::var || s->lhs->kind == Expr::Kind::temp)
                    return ClikeStmt::make_set(temp_of(s->lhs->name), lower(s->rhs));
                if (!storage_rooted(s->lhs))
                    fail("UnsupportedFeature",
                         "in-memory aggregates are not compilable: " + s->lhs->str());
                Chain c = lower_path(s->lhs);
                TypePtr ty = p.layout.resolve(c.ty);
                if (!ty->is_word_sized())
                    fail("TypeMismatch", "storing a whole aggregate: " + s->lhs->str());
                return ClikeStmt::make_sstore(c.key, lower(s->rhs));
            }
            case Stmt::Kind::set:
                return ClikeStmt::make_set(temp_of(s->temp), lower(s->rhs));
            case Stmt::Kind::call:
            {
                std::vector<CExprPtr> args;
                for (const auto& a : s->args)
                    args.push_back(lower(a));
                int result = s->has_result() ? temp_of(s->temp) : -1;
                return ClikeStmt::make_call(result, s->callee, std::move(args));
            }
            case Stmt::Kind::sequence:
                return ClikeStmt::make_sequence(lower_stmt(s->s1), lower_stmt(s->s2));
            case Stmt::Kind::ifte:
                return ClikeStmt::make_ifte(lower(s->lhs), lower_stmt(s->s1),
                                            lower_stmt(s->s2));
            case Stmt::Kind::loop:
                return ClikeStmt::make_loop(lower_stmt(s->s1));
            case Stmt::Kind::break_:
                return ClikeStmt::make_break();
            case Stmt::Kind::return_:
                return ClikeStmt::make_done(s->value ? lower(*s->value) : nullptr);
            case Stmt::Kind::transfer:
                return ClikeStmt::make_transfer(lower(s->lhs), lower(s->rhs));
            case Stmt::Kind::callmethod:
            {
                std::vector<int> arg_ids;
                for (const auto& name : s->arg_temps)
                    arg_ids.push_back(temp_of(name));
                int result = s->has_result() ? temp_of(s->temp) : -1;
                return ClikeStmt::make_callmethod(lower(s->lhs), std::move(arg_ids), result);
            }
            case Stmt::Kind::log:
            {
                std::vector<CExprPtr> topics, data;
                for (const auto& t : s->topics)
                    topics.push_back(lower(t));
                for (const auto& d : s->args)
                    data.push_back(lower(d));
                return ClikeStmt::make_log(std::move(topics), std::move(data));
            }
            case Stmt::Kind::revert:
                return ClikeStmt::make_revert();
        }
        throw InternalError("lower: bad statement kind");
    }
};
}  // namespace

std::string method_signature(const Function& f)
{
    std::string sig = f.name + "(";
    for (size_t i = 0; i < f.params.size(); ++i)
    {
        if (i)
            sig += ",";
        sig += abi_type_name(f.params[i].type);
    }
    return sig + ")";
}

Word selector_of(const std::string& signature)
{
    return keccak256_word(Bytes(signature.begin(), signature.end())) >> 224;
}

ClikeProgram to_clike(const Program& p)
{
    ClikeProgram out;
    out.name = p.name;
    out.layout = p.layout;
    out.source_node_count = program_node_count(p);
    for (const auto& f : p.functions)
    {
        FnLowerer lo(p, f);
        ClikeFn cf;
        cf.name = f.name;
        cf.kind = f.kind;
        cf.n_args = static_cast<int>(f.params.size());
        cf.n_temps = static_cast<int>(f.params.size() + f.temps.size());
        cf.returns_value = f.returns_value();
        cf.body = lo.lower_stmt(f.body);
        if (!cf.returns_value)
            cf.body = ClikeStmt::make_sequence(cf.body, ClikeStmt::make_done(nullptr));
        if (f.kind == FunctionKind::method)
            cf.selector_signature = method_signature(f);
        out.functions.push_back(std::move(cf));
    }
    return out;
}
}  // namespace minicc
