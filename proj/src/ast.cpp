// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "minicc/ast.hpp"

#include "minicc/errors.hpp"

#include <sstream>

namespace minicc
{
const char* unop_name(UnOp op)
{
    switch (op)
    {
    case UnOp::lnot:
        return "!";
    case UnOp::bnot:
        return "~";
    case UnOp::neg:
        return "-";
    }
    return "?";
}

const char* binop_name(BinOp op)
{
    switch (op)
    {
    case BinOp::add:
        return "+";
    case BinOp::sub:
        return "-";
    case BinOp::mul:
        return "*";
    case BinOp::div_:
        return "/";
    case BinOp::mod:
        return "%";
    case BinOp::bit_and:
        return "&";
    case BinOp::bit_or:
        return "|";
    case BinOp::bit_xor:
        return "^";
    case BinOp::eq:
        return "==";
    case BinOp::ne:
        return "<>";
    case BinOp::lt:
        return "<";
    case BinOp::gt:
        return ">";
    case BinOp::le:
        return "<=";
    case BinOp::ge:
        return ">=";
    }
    return "?";
}

const char* builtin0_name(Builtin0 b)
{
    switch (b)
    {
    case Builtin0::self_address:
        return "this_address";
    case Builtin0::caller:
        return "msg_sender";
    case Builtin0::callvalue:
        return "msg_value";
    case Builtin0::block_number:
        return "block_number";
    }
    return "?";
}

const char* builtin1_name(Builtin1 b)
{
    switch (b)
    {
    case Builtin1::balance:
        return "balance";
    }
    return "?";
}

static ExprPtr mk(Expr e)
{
    return std::make_shared<Expr>(std::move(e));
}

ExprPtr Expr::make_int(Word v, TypePtr t)
{
    Expr e;
    e.kind = Kind::int_lit;
    e.literal = std::move(v);
    e.type = std::move(t);
    return mk(std::move(e));
}

ExprPtr Expr::make_int256(Word v, TypePtr t)
{
    Expr e;
    e.kind = Kind::int256_lit;
    e.literal = std::move(v);
    e.type = std::move(t);
    return mk(std::move(e));
}

ExprPtr Expr::make_var(std::string name, TypePtr t)
{
    Expr e;
    e.kind = Kind::var;
    e.name = std::move(name);
    e.type = std::move(t);
    return mk(std::move(e));
}

ExprPtr Expr::make_glob(std::string name, TypePtr t)
{
    Expr e;
    e.kind = Kind::glob;
    e.name = std::move(name);
    e.type = std::move(t);
    return mk(std::move(e));
}

ExprPtr Expr::make_temp(std::string name, TypePtr t)
{
    Expr e;
    e.kind = Kind::temp;
    e.name = std::move(name);
    e.type = std::move(t);
    return mk(std::move(e));
}

ExprPtr Expr::make_deref(ExprPtr sub, TypePtr t)
{
    Expr e;
    e.kind = Kind::deref;
    e.sub = std::move(sub);
    e.type = std::move(t);
    return mk(std::move(e));
}

ExprPtr Expr::make_addr(ExprPtr sub, TypePtr t)
{
    Expr e;
    e.kind = Kind::addr;
    e.sub = std::move(sub);
    e.type = std::move(t);
    return mk(std::move(e));
}

ExprPtr Expr::make_unop(UnOp op, ExprPtr sub, TypePtr t)
{
    Expr e;
    e.kind = Kind::unop;
    e.un = op;
    e.sub = std::move(sub);
    e.type = std::move(t);
    return mk(std::move(e));
}

ExprPtr Expr::make_binop(BinOp op, ExprPtr a, ExprPtr b, TypePtr t)
{
    Expr e;
    e.kind = Kind::binop;
    e.bin = op;
    e.lhs = std::move(a);
    e.rhs = std::move(b);
    e.type = std::move(t);
    return mk(std::move(e));
}

ExprPtr Expr::make_field(ExprPtr base, std::string member, TypePtr t)
{
    if (!base->type || (base->type->kind != Type::Kind::struct_t &&
                        base->type->kind != Type::Kind::union_t))
        fail("TypeError", "field access on non-struct expression");
    Expr e;
    e.kind = Kind::field;
    e.sub = std::move(base);
    e.name = std::move(member);
    e.type = std::move(t);
    return mk(std::move(e));
}

ExprPtr Expr::make_index(ExprPtr base, ExprPtr idx, TypePtr t)
{
    if (!base->type || (base->type->kind != Type::Kind::array &&
                        base->type->kind != Type::Kind::hashmap))
        fail("TypeError", "index access on non-array, non-mapping expression");
    Expr e;
    e.kind = Kind::index;
    e.lhs = std::move(base);
    e.rhs = std::move(idx);
    e.type = std::move(t);
    return mk(std::move(e));
}

ExprPtr Expr::make_call0(Builtin0 b, TypePtr t)
{
    Expr e;
    e.kind = Kind::call0;
    e.b0 = b;
    e.type = std::move(t);
    return mk(std::move(e));
}

ExprPtr Expr::make_call1(Builtin1 b, ExprPtr arg, TypePtr t)
{
    Expr e;
    e.kind = Kind::call1;
    e.b1 = b;
    e.sub = std::move(arg);
    e.type = std::move(t);
    return mk(std::move(e));
}

bool Expr::is_lvalue_expr() const
{
    switch (kind)
    {
    case Kind::var:
    case Kind::glob:
    case Kind::deref:
    case Kind::field:
    case Kind::index:
        return true;
    default:
        return false;
    }
}

std::string Expr::str() const
{
    std::ostringstream os;
    switch (kind)
    {
    case Kind::int_lit:
    case Kind::int256_lit:
        os << word_to_dec(literal);
        break;
    case Kind::var:
        os << name;
        break;
    case Kind::glob:
        os << name;
        break;
    case Kind::temp:
        os << name;
        break;
    case Kind::deref:
        os << "*" << sub->str();
        break;
    case Kind::addr:
        os << "&" << sub->str();
        break;
    case Kind::unop:
        os << unop_name(un) << "(" << sub->str() << ")";
        break;
    case Kind::binop:
        os << "(" << lhs->str() << " " << binop_name(bin) << " " << rhs->str() << ")";
        break;
    case Kind::field:
        os << sub->str() << "." << name;
        break;
    case Kind::index:
        os << lhs->str() << "[" << rhs->str() << "]";
        break;
    case Kind::call0:
        os << builtin0_name(b0) << "()";
        break;
    case Kind::call1:
        os << builtin1_name(b1) << "(" << sub->str() << ")";
        break;
    }
    return os.str();
}

static StmtPtr mks(Stmt s)
{
    return std::make_shared<Stmt>(std::move(s));
}

StmtPtr Stmt::make_skip()
{
    Stmt s;
    s.kind = Kind::skip;
    return mks(std::move(s));
}

StmtPtr Stmt::make_assign(ExprPtr lhs, ExprPtr rhs)
{
    if (!lhs->is_lvalue_expr())
        fail("TypeError", "assignment target is not an l-value: " + lhs->str());
    Stmt s;
    s.kind = Kind::assign;
    s.lhs = std::move(lhs);
    s.rhs = std::move(rhs);
    return mks(std::move(s));
}

StmtPtr Stmt::make_set(std::string temp, ExprPtr rhs)
{
    Stmt s;
    s.kind = Kind::set;
    s.temp = std::move(temp);
    s.rhs = std::move(rhs);
    return mks(std::move(s));
}

StmtPtr Stmt::make_call(std::optional<std::string> result, std::string callee,
                        std::vector<ExprPtr> args)
{
    Stmt s;
    s.kind = Kind::call;
    s.temp = result.value_or("");
    s.callee = std::move(callee);
    s.args = std::move(args);
    return mks(std::move(s));
}

StmtPtr Stmt::make_sequence(StmtPtr a, StmtPtr b)
{
    Stmt s;
    s.kind = Kind::sequence;
    s.s1 = std::move(a);
    s.s2 = std::move(b);
    return mks(std::move(s));
}

StmtPtr Stmt::make_ifte(ExprPtr cond, StmtPtr then_s, StmtPtr else_s)
{
    Stmt s;
    s.kind = Kind::ifte;
    s.lhs = std::move(cond);
    s.s1 = std::move(then_s);
    s.s2 = std::move(else_s);
    return mks(std::move(s));
}

StmtPtr Stmt::make_loop(StmtPtr body)
{
    Stmt s;
    s.kind = Kind::loop;
    s.s1 = std::move(body);
    return mks(std::move(s));
}

StmtPtr Stmt::make_break()
{
    Stmt s;
    s.kind = Kind::break_;
    return mks(std::move(s));
}

StmtPtr Stmt::make_return(std::optional<ExprPtr> v)
{
    Stmt s;
    s.kind = Kind::return_;
    s.value = std::move(v);
    return mks(std::move(s));
}

StmtPtr Stmt::make_transfer(ExprPtr to, ExprPtr amount)
{
    Stmt s;
    s.kind = Kind::transfer;
    s.lhs = std::move(to);
    s.rhs = std::move(amount);
    return mks(std::move(s));
}

StmtPtr Stmt::make_callmethod(ExprPtr target, std::vector<std::string> arg_temps,
                              std::string result)
{
    Stmt s;
    s.kind = Kind::callmethod;
    s.lhs = std::move(target);
    s.arg_temps = std::move(arg_temps);
    s.temp = std::move(result);
    return mks(std::move(s));
}

StmtPtr Stmt::make_log(std::vector<ExprPtr> topics, std::vector<ExprPtr> data)
{
    Stmt s;
    s.kind = Kind::log;
    s.topics = std::move(topics);
    s.args = std::move(data);
    return mks(std::move(s));
}

StmtPtr Stmt::make_revert()
{
    Stmt s;
    s.kind = Kind::revert;
    return mks(std::move(s));
}

std::string Stmt::str() const
{
    std::ostringstream os;
    switch (kind)
    {
    case Kind::skip:
        os << "skip";
        break;
    case Kind::assign:
        os << lhs->str() << " := " << rhs->str();
        break;
    case Kind::set:
        os << temp << " = " << rhs->str();
        break;
    case Kind::call:
        if (has_result())
            os << temp << " = ";
        os << callee << "(";
        for (size_t i = 0; i < args.size(); ++i)
            os << (i ? ", " : "") << args[i]->str();
        os << ")";
        break;
    case Kind::sequence:
        os << s1->str() << "; " << s2->str();
        break;
    case Kind::ifte:
        os << "if " << lhs->str() << " { " << s1->str() << " } else { " << s2->str() << " }";
        break;
    case Kind::loop:
        os << "loop { " << s1->str() << " }";
        break;
    case Kind::break_:
        os << "break";
        break;
    case Kind::return_:
        os << "return";
        if (value)
            os << " " << (*value)->str();
        break;
    case Kind::transfer:
        os << "transfer(" << lhs->str() << ", " << rhs->str() << ")";
        break;
    case Kind::callmethod:
        os << temp << " = callmethod " << lhs->str() << "(..)";
        break;
    case Kind::log:
    {
        os << "log([";
        for (size_t i = 0; i < topics.size(); ++i)
            os << (i ? ", " : "") << topics[i]->str();
        os << "], [";
        for (size_t i = 0; i < args.size(); ++i)
            os << (i ? ", " : "") << args[i]->str();
        os << "])";
        break;
    }
    case Kind::revert:
        os << "revert";
        break;
    }
    return os.str();
}

const GlobalVar* Layout::find_global(const std::string& name) const
{
    for (const auto& g : globals)
        if (g.name == name)
            return &g;
    return nullptr;
}

TypePtr Layout::resolve(const TypePtr& t) const
{
    if (t && t->kind == Type::Kind::comp_ptr)
    {
        auto it = composites.find(t->name);
        if (it == composites.end())
            fail("UnknownIdent", "unresolved composite type: " + t->name);
        return it->second;
    }
    return t;
}

const Function* Program::find_function(const std::string& name) const
{
    for (const auto& f : functions)
        if (f.name == name)
            return &f;
    return nullptr;
}

const Function* Program::constructor() const
{
    for (const auto& f : functions)
        if (f.kind == FunctionKind::constructor)
            return &f;
    return nullptr;
}

std::vector<const Function*> Program::methods() const
{
    std::vector<const Function*> out;
    for (const auto& f : functions)
        if (f.kind == FunctionKind::method)
            out.push_back(&f);
    return out;
}

namespace
{
/// Walks down to the root, then rebuilds the key outward while
/// tracking the static type to resolve field ordinals.
struct PathWalk
{
    HashKey key;
    TypePtr type;
};

TypePtr resolve(const Layout& layout, const TypePtr& t)
{
    return layout.resolve(t);
}

PathWalk walk(const ExtIdent& path, const Layout& layout)
{
    switch (path.kind())
    {
    case ExtIdent::Kind::global:
    {
        const GlobalVar* g = layout.find_global(path.name());
        if (g == nullptr)
            fail("UnknownIdent", "unknown state variable: " + path.name());
        return {HashKey::singleton(g->slot), resolve(layout, g->type)};
    }
    case ExtIdent::Kind::local:
        fail("LocalRoot", "path rooted at local " + path.name() + " has no storage key");
    case ExtIdent::Kind::index:
    {
        PathWalk base = walk(path.base(), layout);
        if (!base.type || (base.type->kind != Type::Kind::array &&
                           base.type->kind != Type::Kind::hashmap))
            fail("TypeMismatch", "index step into non-indexable type at " + path.str());
        if (base.type->kind == Type::Kind::array &&
            path.idx() >= Word{static_cast<unsigned long long>(base.type->length)})
            fail("TypeMismatch", "index out of bounds at " + path.str());
        return {HashKey::pair(std::move(base.key), path.idx()),
                resolve(layout, base.type->elem)};
    }
    case ExtIdent::Kind::field:
    {
        PathWalk base = walk(path.base(), layout);
        if (!base.type || (base.type->kind != Type::Kind::struct_t &&
                           base.type->kind != Type::Kind::union_t))
            fail("TypeMismatch", "field step into non-struct type at " + path.str());
        int ord = base.type->field_ordinal(path.name());
        if (ord < 0)
            fail("UnknownIdent", "no field " + path.name() + " in " + base.type->str());
        return {HashKey::pair(std::move(base.key), Word{static_cast<unsigned>(ord)}),
                resolve(layout, base.type->fields[static_cast<size_t>(ord)].type)};
    }
    }
    throw InternalError{"unreachable path kind"};
}

}  // namespace

HashKey eid_to_hashkey(const ExtIdent& path, const Layout& layout)
{
    return walk(path, layout).key;
}

TypePtr eid_type(const ExtIdent& path, const Layout& layout)
{
    return walk(path, layout).type;
}

}  // namespace minicc
