// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Canonical text form of the surface AST. Printing then reparsing
// yields the same AST: parentheses and begin/end blocks are inserted
// exactly where the grammar needs them.
#include "minicc/frontend.hpp"

#include "minicc/errors.hpp"

#include <sstream>
#include <string>

namespace minicc
{
namespace
{
std::string type_text(const TypePtr& t)
{
    if (!t || t->is_void())
        return "unit";
    switch (t->kind)
    {
        case Type::Kind::int_t:
            return t->name.empty() ? "int" : t->name;
        case Type::Kind::hashmap:
            return "mapping[" + type_text(t->key) + "] " + type_text(t->elem);
        default:
            throw InternalError("type has no surface spelling: " + t->str());
    }
}

// Binding strength, loosest to tightest; matches the parser's
// precedence ladder.
int prec_of(BinOp op)
{
    switch (op)
    {
        case BinOp::bit_or:
            return 1;
        case BinOp::bit_and:
            return 2;
        case BinOp::eq:
        case BinOp::ne:
        case BinOp::lt:
        case BinOp::gt:
        case BinOp::le:
        case BinOp::ge:
            return 3;
        case BinOp::add:
        case BinOp::sub:
            return 4;
        default:
            return 5;
    }
}

const char* op_text(BinOp op)
{
    switch (op)
    {
        case BinOp::bit_or:
            return "\\/";
        case BinOp::bit_and:
            return "/\\";
        case BinOp::eq:
            return "=";
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
        default:
            throw InternalError("operator has no surface spelling");
    }
}

void expr_text(std::ostream& os, const SrcExprPtr& e, int min_prec)
{
    switch (e->kind)
    {
        case SrcExpr::Kind::number:
            os << e->number.str();
            return;
        case SrcExpr::Kind::boolean:
            os << (e->bvalue ? "true" : "false");
            return;
        case SrcExpr::Kind::string_lit:
            os << '"' << e->text << '"';
            return;
        case SrcExpr::Kind::ident:
            os << e->text;
            return;
        case SrcExpr::Kind::builtin0:
            switch (e->b0)
            {
                case Builtin0::caller: os << "msg_sender"; return;
                case Builtin0::callvalue: os << "msg_value"; return;
                case Builtin0::self_address: os << "this_address"; return;
                case Builtin0::block_number: os << "block_number"; return;
                default: throw InternalError("builtin has no surface spelling");
            }
        case SrcExpr::Kind::balance:
            os << "balance(";
            expr_text(os, e->lhs, 0);
            os << ")";
            return;
        case SrcExpr::Kind::binop:
        {
            int p = prec_of(e->op);
            bool parens = p < min_prec;
            // Comparisons do not chain; both operands must bind
            // tighter. Other levels are left associative.
            int left_min = p == 3 ? p + 1 : p;
            if (parens)
                os << "(";
            expr_text(os, e->lhs, left_min);
            os << " " << op_text(e->op) << " ";
            expr_text(os, e->rhs, p + 1);
            if (parens)
                os << ")";
            return;
        }
        case SrcExpr::Kind::index:
            expr_text(os, e->lhs, 6);
            os << "[";
            expr_text(os, e->rhs, 0);
            os << "]";
            return;
        case SrcExpr::Kind::call:
        {
            os << e->text << "(";
            for (size_t i = 0; i < e->args.size(); ++i)
            {
                if (i)
                    os << ", ";
                expr_text(os, e->args[i], 0);
            }
            os << ")";
            return;
        }
    }
}

std::string expr_str(const SrcExprPtr& e)
{
    std::ostringstream os;
    expr_text(os, e, 0);
    return os.str();
}

void cmd_text(std::ostream& os, const SrcCmdPtr& c, int indent);

// Prints a command in a slot where the grammar takes a single command
// (if branch, for body, let right side): sequences get begin/end, and
// an else-less if inside an if-with-else is bracketed so the else
// keeps its place.
void cmd1_text(std::ostream& os, const SrcCmdPtr& c, int indent, bool guard_else)
{
    bool wrap = c->kind == SrcCmd::Kind::seq ||
                (guard_else && c->kind == SrcCmd::Kind::ifte && !c->c2);
    if (wrap)
    {
        os << "begin\n" << std::string(indent + 2, ' ');
        cmd_text(os, c, indent + 2);
        os << "\n" << std::string(indent, ' ') << "end";
    }
    else
        cmd_text(os, c, indent);
}

void cmd_text(std::ostream& os, const SrcCmdPtr& c, int indent)
{
    const std::string pad(indent, ' ');
    switch (c->kind)
    {
        case SrcCmd::Kind::let_in:
            os << "let " << c->name << " = ";
            cmd1_text(os, c->c1, indent, false);
            os << " in\n" << pad;
            cmd_text(os, c->c2, indent);
            return;
        case SrcCmd::Kind::seq:
            cmd_text(os, c->c1, indent);
            os << ";\n" << pad;
            cmd_text(os, c->c2, indent);
            return;
        case SrcCmd::Kind::ifte:
            os << "if " << expr_str(c->e1) << " then ";
            cmd1_text(os, c->c1, indent, c->c2 != nullptr);
            if (c->c2)
            {
                os << "\n" << pad << "else ";
                cmd1_text(os, c->c2, indent, false);
            }
            return;
        case SrcCmd::Kind::for_to:
            os << "for " << c->name << " = " << expr_str(c->e1) << " to "
               << expr_str(c->e2) << " do ";
            cmd1_text(os, c->c1, indent, false);
            return;
        case SrcCmd::Kind::assert_:
            os << "assert (" << expr_str(c->e1) << ")";
            return;
        case SrcCmd::Kind::emit:
        {
            os << "emit " << c->name << "(";
            for (size_t i = 0; i < c->args.size(); ++i)
            {
                if (i)
                    os << ", ";
                os << expr_str(c->args[i]);
            }
            os << ")";
            return;
        }
        case SrcCmd::Kind::transfer:
            os << "transferEth(" << expr_str(c->e1) << ", " << expr_str(c->e2) << ")";
            return;
        case SrcCmd::Kind::assign:
            os << expr_str(c->e1) << " := " << expr_str(c->e2);
            return;
        case SrcCmd::Kind::value:
            os << expr_str(c->e1);
            return;
    }
}
}  // namespace

std::string print(const SourceUnit& u)
{
    std::ostringstream os;
    bool first = true;
    auto gap = [&] {
        if (!first)
            os << "\n";
        first = false;
    };

    for (const auto& sig : u.signatures)
    {
        gap();
        os << "object signature " << sig.name << " = {\n";
        for (size_t i = 0; i < sig.entries.size(); ++i)
        {
            const auto& e = sig.entries[i];
            os << "  ";
            if (e.is_const)
                os << "const ";
            os << e.name << " : ";
            if (e.params.empty())
                os << "unit";
            else
                for (size_t j = 0; j < e.params.size(); ++j)
                    os << (j ? " * " : "") << type_text(e.params[j]);
            os << " -> " << type_text(e.ret);
            os << (i + 1 < sig.entries.size() ? ";" : "") << "\n";
        }
        os << "}\n";
    }

    for (const auto& ev : u.events)
    {
        gap();
        os << "event " << ev.name << "(";
        for (size_t i = 0; i < ev.params.size(); ++i)
            os << (i ? ", " : "") << type_text(ev.params[i]);
        os << ")\n";
    }

    for (const auto& o : u.objects)
    {
        gap();
        os << "object " << o.name;
        if (!o.signature.empty())
            os << " : " << o.signature;
        os << " {\n";
        for (const auto& sv : o.state)
        {
            os << "  let " << sv.name << " : " << type_text(sv.type) << " := ";
            switch (sv.init)
            {
                case SrcStateVar::Init::mapping_init:
                    os << "mapping_init";
                    break;
                case SrcStateVar::Init::number:
                    os << sv.init_number.str();
                    break;
                case SrcStateVar::Init::boolean:
                    os << (sv.init_bool ? "true" : "false");
                    break;
            }
            os << "\n";
        }
        for (const auto& m : o.methods)
        {
            os << "  let ";
            if (m.is_const)
                os << "const ";
            os << m.name << " (";
            for (size_t i = 0; i < m.formals.size(); ++i)
            {
                os << (i ? ", " : "") << m.formals[i].name;
                if (m.formals[i].type)
                    os << " : " << type_text(m.formals[i].type);
            }
            os << ")";
            if (m.ret)
                os << " : " << type_text(m.ret);
            os << " =\n    ";
            cmd_text(os, m.body, 4);
            os << "\n";
        }
        os << "}\n";
    }

    for (const auto& l : u.layers)
    {
        gap();
        os << "layer " << l.name;
        if (!l.ascription.empty())
            os << " : " << l.ascription;
        if (!l.underlay.empty())
            os << " under " << l.underlay;
        os << " = {";
        for (size_t i = 0; i < l.bindings.size(); ++i)
            os << (i ? "; " : " ") << l.bindings[i].first << " = "
               << l.bindings[i].second;
        os << " }\n";
    }
    return os.str();
}

}  // namespace minicc
