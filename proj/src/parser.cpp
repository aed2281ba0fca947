// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Lexer and recursive-descent parser for the contract surface syntax.
// The parser builds the surface AST only; name resolution and typing
// happen in typecheck.cpp.
#include "minicc/frontend.hpp"

#include "minicc/errors.hpp"

#include <cctype>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace minicc
{
// ---------------------------------------------------------------------------
// Surface AST constructors

SrcExprPtr SrcExpr::make_number(Word v)
{
    auto e = std::make_shared<SrcExpr>();
    e->kind = Kind::number;
    e->number = std::move(v);
    return e;
}

SrcExprPtr SrcExpr::make_boolean(bool b)
{
    auto e = std::make_shared<SrcExpr>();
    e->kind = Kind::boolean;
    e->bvalue = b;
    return e;
}

SrcExprPtr SrcExpr::make_string(std::string s)
{
    auto e = std::make_shared<SrcExpr>();
    e->kind = Kind::string_lit;
    e->text = std::move(s);
    return e;
}

SrcExprPtr SrcExpr::make_ident(std::string name)
{
    auto e = std::make_shared<SrcExpr>();
    e->kind = Kind::ident;
    e->text = std::move(name);
    return e;
}

SrcExprPtr SrcExpr::make_builtin0(Builtin0 b)
{
    auto e = std::make_shared<SrcExpr>();
    e->kind = Kind::builtin0;
    e->b0 = b;
    return e;
}

SrcExprPtr SrcExpr::make_balance(SrcExprPtr addr)
{
    auto e = std::make_shared<SrcExpr>();
    e->kind = Kind::balance;
    e->lhs = std::move(addr);
    return e;
}

SrcExprPtr SrcExpr::make_binop(BinOp op, SrcExprPtr a, SrcExprPtr b)
{
    auto e = std::make_shared<SrcExpr>();
    e->kind = Kind::binop;
    e->op = op;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

SrcExprPtr SrcExpr::make_index(SrcExprPtr base, SrcExprPtr key)
{
    auto e = std::make_shared<SrcExpr>();
    e->kind = Kind::index;
    e->lhs = std::move(base);
    e->rhs = std::move(key);
    return e;
}

SrcExprPtr SrcExpr::make_call(std::string name, std::vector<SrcExprPtr> args)
{
    auto e = std::make_shared<SrcExpr>();
    e->kind = Kind::call;
    e->text = std::move(name);
    e->args = std::move(args);
    return e;
}

SrcCmdPtr SrcCmd::make_let_in(std::string x, SrcCmdPtr rhs, SrcCmdPtr body)
{
    auto c = std::make_shared<SrcCmd>();
    c->kind = Kind::let_in;
    c->name = std::move(x);
    c->c1 = std::move(rhs);
    c->c2 = std::move(body);
    return c;
}

SrcCmdPtr SrcCmd::make_seq(SrcCmdPtr a, SrcCmdPtr b)
{
    auto c = std::make_shared<SrcCmd>();
    c->kind = Kind::seq;
    c->c1 = std::move(a);
    c->c2 = std::move(b);
    return c;
}

SrcCmdPtr SrcCmd::make_ifte(SrcExprPtr cond, SrcCmdPtr t, SrcCmdPtr e_or_null)
{
    auto c = std::make_shared<SrcCmd>();
    c->kind = Kind::ifte;
    c->e1 = std::move(cond);
    c->c1 = std::move(t);
    c->c2 = std::move(e_or_null);
    return c;
}

SrcCmdPtr SrcCmd::make_for(std::string x, SrcExprPtr lo, SrcExprPtr hi, SrcCmdPtr body)
{
    auto c = std::make_shared<SrcCmd>();
    c->kind = Kind::for_to;
    c->name = std::move(x);
    c->e1 = std::move(lo);
    c->e2 = std::move(hi);
    c->c1 = std::move(body);
    return c;
}

SrcCmdPtr SrcCmd::make_assert(SrcExprPtr e)
{
    auto c = std::make_shared<SrcCmd>();
    c->kind = Kind::assert_;
    c->e1 = std::move(e);
    return c;
}

SrcCmdPtr SrcCmd::make_emit(std::string event, std::vector<SrcExprPtr> args)
{
    auto c = std::make_shared<SrcCmd>();
    c->kind = Kind::emit;
    c->name = std::move(event);
    c->args = std::move(args);
    return c;
}

SrcCmdPtr SrcCmd::make_transfer(SrcExprPtr to, SrcExprPtr amount)
{
    auto c = std::make_shared<SrcCmd>();
    c->kind = Kind::transfer;
    c->e1 = std::move(to);
    c->e2 = std::move(amount);
    return c;
}

SrcCmdPtr SrcCmd::make_assign(SrcExprPtr path, SrcExprPtr rhs)
{
    auto c = std::make_shared<SrcCmd>();
    c->kind = Kind::assign;
    c->e1 = std::move(path);
    c->e2 = std::move(rhs);
    return c;
}

SrcCmdPtr SrcCmd::make_value(SrcExprPtr e)
{
    auto c = std::make_shared<SrcCmd>();
    c->kind = Kind::value;
    c->e1 = std::move(e);
    return c;
}

const SrcSigEntry* SrcSignature::find(const std::string& n) const
{
    for (const auto& e : entries)
        if (e.name == n)
            return &e;
    return nullptr;
}

// ---------------------------------------------------------------------------
// Lexer

namespace
{
enum class Tok
{
    eof,
    number,
    string,
    ident,  // includes keywords; the parser checks the spelling
    punct,
};

struct Token
{
    Tok kind = Tok::eof;
    std::string text;
    Word number;
    int line = 1, col = 1;
};

[[noreturn]] void syntax_error(int line, int col, const std::string& what)
{
    fail("SyntaxError", std::to_string(line) + ":" + std::to_string(col) + ": " + what);
}

class Lexer
{
public:
    explicit Lexer(const std::string& text) : src_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token take()
    {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance()
    {
        skip_space_and_comments();
        tok_ = Token{};
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size())
            return;  // eof
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)))
            lex_number();
        else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            lex_ident();
        else if (c == '"')
            lex_string();
        else
            lex_punct();
    }

    void skip_space_and_comments()
    {
        while (pos_ < src_.size())
        {
            char c = src_[pos_];
            if (c == '\n')
            {
                ++line_;
                col_ = 1;
                ++pos_;
            }
            else if (std::isspace(static_cast<unsigned char>(c)))
            {
                ++col_;
                ++pos_;
            }
            else if (c == '(' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*')
                skip_comment();
            else
                break;
        }
    }

    // (* ... *) comments nest.
    void skip_comment()
    {
        int start_line = line_, start_col = col_;
        int depth = 0;
        while (pos_ < src_.size())
        {
            if (src_[pos_] == '(' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*')
            {
                ++depth;
                pos_ += 2;
                col_ += 2;
            }
            else if (src_[pos_] == '*' && pos_ + 1 < src_.size() && src_[pos_ + 1] == ')')
            {
                --depth;
                pos_ += 2;
                col_ += 2;
                if (depth == 0)
                    return;
            }
            else if (src_[pos_] == '\n')
            {
                ++line_;
                col_ = 1;
                ++pos_;
            }
            else
            {
                ++col_;
                ++pos_;
            }
        }
        syntax_error(start_line, start_col, "unterminated comment");
    }

    void lex_number()
    {
        size_t start = pos_;
        bool hex = src_.compare(pos_, 2, "0x") == 0 || src_.compare(pos_, 2, "0X") == 0;
        if (hex)
            pos_ += 2;
        while (pos_ < src_.size() &&
               (std::isxdigit(static_cast<unsigned char>(src_[pos_])) ||
                (!hex && std::isdigit(static_cast<unsigned char>(src_[pos_])))))
        {
            if (!hex && !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                break;
            ++pos_;
        }
        std::string text = src_.substr(start, pos_ - start);
        if (hex && text.size() == 2)
            syntax_error(line_, col_, "hex literal needs digits");
        col_ += static_cast<int>(text.size());
        tok_.kind = Tok::number;
        tok_.text = text;
        tok_.number = Word(text);
    }

    void lex_ident()
    {
        size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                src_[pos_] == '_' || src_[pos_] == '\''))
            ++pos_;
        tok_.kind = Tok::ident;
        tok_.text = src_.substr(start, pos_ - start);
        col_ += static_cast<int>(tok_.text.size());
    }

    void lex_string()
    {
        int start_line = line_, start_col = col_;
        ++pos_;
        ++col_;
        std::string out;
        while (pos_ < src_.size() && src_[pos_] != '"')
        {
            if (src_[pos_] == '\n')
                syntax_error(start_line, start_col, "unterminated string");
            out.push_back(src_[pos_]);
            ++pos_;
            ++col_;
        }
        if (pos_ >= src_.size())
            syntax_error(start_line, start_col, "unterminated string");
        ++pos_;
        ++col_;
        if (out.size() > 32)
            syntax_error(start_line, start_col, "string longer than 32 bytes");
        tok_.kind = Tok::string;
        tok_.text = std::move(out);
    }

    void lex_punct()
    {
        static const char* two_char[] = {":=", "->", "<=", ">=", "<>", "/\\", "\\/"};
        for (const char* op : two_char)
            if (src_.compare(pos_, 2, op) == 0)
            {
                tok_.kind = Tok::punct;
                tok_.text = op;
                pos_ += 2;
                col_ += 2;
                return;
            }
        char c = src_[pos_];
        static const std::string single = "()[]{},;:=*+-/%<>";
        if (single.find(c) == std::string::npos)
            syntax_error(line_, col_, std::string("stray character '") + c + "'");
        tok_.kind = Tok::punct;
        tok_.text = std::string(1, c);
        ++pos_;
        ++col_;
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

// ---------------------------------------------------------------------------
// Parser

// Identifiers with grammatical meaning; rejected as user names.
bool is_reserved(const std::string& s)
{
    static const char* words[] = {
        "object",   "signature",    "event",        "layer",   "let",
        "in",       "if",           "then",         "else",    "for",
        "to",       "do",           "assert",       "emit",    "transferEth",
        "begin",    "end",          "true",         "false",   "mapping",
        "mapping_init", "int",      "bool",         "address", "unit",
        "const",    "msg_sender",   "msg_value",    "this_address",
        "block_number", "balance",
    };
    for (const char* w : words)
        if (s == w)
            return true;
    return false;
}

class Parser
{
public:
    explicit Parser(const std::string& text) : lx_(text) {}

    SourceUnit parse_unit()
    {
        SourceUnit u;
        while (!at_eof())
        {
            if (at_ident("object"))
            {
                take();
                if (at_ident("signature"))
                {
                    take();
                    u.signatures.push_back(parse_signature());
                }
                else
                    u.objects.push_back(parse_object());
            }
            else if (at_ident("event"))
            {
                take();
                u.events.push_back(parse_event());
            }
            else if (at_ident("layer"))
            {
                take();
                u.layers.push_back(parse_layer());
            }
            else
                error_here("expected object, event, or layer declaration");
        }
        return u;
    }

private:
    // --- token helpers ---

    bool at_eof() const { return lx_.peek().kind == Tok::eof; }
    bool at_punct(const std::string& p) const
    {
        return lx_.peek().kind == Tok::punct && lx_.peek().text == p;
    }
    bool at_ident(const std::string& w) const
    {
        return lx_.peek().kind == Tok::ident && lx_.peek().text == w;
    }
    Token take() { return lx_.take(); }

    [[noreturn]] void error_here(const std::string& what)
    {
        const Token& t = lx_.peek();
        std::string got = t.kind == Tok::eof ? "end of input" : "'" + t.text + "'";
        syntax_error(t.line, t.col, what + ", got " + got);
    }

    void expect_punct(const std::string& p)
    {
        if (!at_punct(p))
            error_here("expected '" + p + "'");
        take();
    }

    void expect_word(const std::string& w)
    {
        if (!at_ident(w))
            error_here("expected '" + w + "'");
        take();
    }

    std::string expect_name()
    {
        if (lx_.peek().kind != Tok::ident)
            error_here("expected an identifier");
        if (is_reserved(lx_.peek().text))
            error_here("reserved word used as a name");
        return take().text;
    }

    // --- declarations ---

    SrcSignature parse_signature()
    {
        SrcSignature sig;
        sig.name = expect_name();
        expect_punct("=");
        expect_punct("{");
        while (!at_punct("}"))
        {
            SrcSigEntry e;
            if (at_ident("const"))
            {
                take();
                e.is_const = true;
            }
            e.name = expect_name();
            expect_punct(":");
            if (at_ident("unit"))
                take();
            else
            {
                e.params.push_back(parse_type());
                while (at_punct("*"))
                {
                    take();
                    e.params.push_back(parse_type());
                }
            }
            expect_punct("->");
            e.ret = at_ident("unit") ? (take(), Type::make_void()) : parse_type();
            sig.entries.push_back(std::move(e));
            if (at_punct(";"))
                take();
            else
                break;
        }
        expect_punct("}");
        return sig;
    }

    SrcEvent parse_event()
    {
        SrcEvent ev;
        ev.name = expect_name();
        expect_punct("(");
        if (!at_punct(")"))
        {
            ev.params.push_back(parse_type());
            while (at_punct(","))
            {
                take();
                ev.params.push_back(parse_type());
            }
        }
        expect_punct(")");
        return ev;
    }

    SrcLayer parse_layer()
    {
        SrcLayer l;
        l.name = expect_name();
        if (at_punct(":"))
        {
            take();
            l.ascription = expect_name();
        }
        // "@ name" would select an underlay; the lexer has no '@', so
        // the clause is spelled "under name" instead.
        if (at_ident("under"))
        {
            take();
            l.underlay = expect_name();
        }
        expect_punct("=");
        expect_punct("{");
        while (!at_punct("}"))
        {
            std::string slot = expect_name();
            expect_punct("=");
            std::string obj = expect_name();
            l.bindings.emplace_back(std::move(slot), std::move(obj));
            if (at_punct(";"))
                take();
            else
                break;
        }
        expect_punct("}");
        return l;
    }

    SrcObject parse_object()
    {
        SrcObject o;
        o.name = expect_name();
        if (at_punct(":"))
        {
            take();
            o.signature = expect_name();
        }
        expect_punct("{");
        while (!at_punct("}"))
        {
            expect_word("let");
            parse_member(o);
        }
        expect_punct("}");
        return o;
    }

    // After "let": a state variable has ": type :=", a method has a
    // formal list.
    void parse_member(SrcObject& o)
    {
        bool is_const = false;
        if (at_ident("const"))
        {
            take();
            is_const = true;
        }
        std::string name = expect_name();
        if (at_punct(":") && !is_const)
        {
            take();
            SrcStateVar sv;
            sv.name = std::move(name);
            sv.type = parse_type();
            expect_punct(":=");
            if (at_ident("mapping_init"))
            {
                take();
                sv.init = SrcStateVar::Init::mapping_init;
            }
            else if (at_ident("true") || at_ident("false"))
            {
                sv.init = SrcStateVar::Init::boolean;
                sv.init_bool = take().text == "true";
            }
            else if (lx_.peek().kind == Tok::number)
            {
                sv.init = SrcStateVar::Init::number;
                sv.init_number = take().number;
            }
            else
                error_here("expected an initializer");
            o.state.push_back(std::move(sv));
            return;
        }

        SrcMethod m;
        m.name = std::move(name);
        m.is_const = is_const;
        if (at_punct("("))
        {
            take();
            if (!at_punct(")"))
            {
                m.formals.push_back(parse_formal());
                while (at_punct(","))
                {
                    take();
                    m.formals.push_back(parse_formal());
                }
            }
            expect_punct(")");
        }
        else
            m.formals.push_back(parse_formal());  // single bare formal
        if (at_punct(":"))
        {
            take();
            m.ret = at_ident("unit") ? (take(), Type::make_void()) : parse_type();
        }
        expect_punct("=");
        m.body = parse_cmd();
        o.methods.push_back(std::move(m));
    }

    SrcFormal parse_formal()
    {
        SrcFormal f;
        f.name = expect_name();
        if (at_punct(":"))
        {
            take();
            f.type = parse_type();
        }
        return f;
    }

    TypePtr parse_type()
    {
        if (at_ident("int"))
            return take(), Type::make_int();
        if (at_ident("bool"))
            return take(), Type::make_bool();
        if (at_ident("address"))
            return take(), Type::make_address();
        if (at_ident("unit"))
            return take(), Type::make_void();
        if (at_ident("mapping"))
        {
            take();
            expect_punct("[");
            TypePtr key = parse_type();
            expect_punct("]");
            TypePtr elem = parse_type();
            return Type::make_hashmap(std::move(key), std::move(elem));
        }
        error_here("expected a type");
    }

    // --- commands ---

    SrcCmdPtr parse_cmd()
    {
        SrcCmdPtr c = parse_cmd1();
        while (at_punct(";"))
        {
            take();
            c = SrcCmd::make_seq(std::move(c), parse_cmd1());
        }
        return c;
    }

    SrcCmdPtr parse_cmd1()
    {
        if (at_ident("let"))
        {
            take();
            std::string x = expect_name();
            expect_punct("=");
            SrcCmdPtr rhs = parse_cmd1();
            expect_word("in");
            SrcCmdPtr body = parse_cmd();
            return SrcCmd::make_let_in(std::move(x), std::move(rhs), std::move(body));
        }
        if (at_ident("if"))
        {
            take();
            SrcExprPtr cond = parse_expr();
            expect_word("then");
            SrcCmdPtr t = parse_cmd1();
            SrcCmdPtr e;
            if (at_ident("else"))
            {
                take();
                e = parse_cmd1();
            }
            return SrcCmd::make_ifte(std::move(cond), std::move(t), std::move(e));
        }
        if (at_ident("for"))
        {
            take();
            std::string x = expect_name();
            expect_punct("=");
            SrcExprPtr lo = parse_expr();
            expect_word("to");
            SrcExprPtr hi = parse_expr();
            expect_word("do");
            SrcCmdPtr body = parse_cmd1();
            return SrcCmd::make_for(std::move(x), std::move(lo), std::move(hi),
                                    std::move(body));
        }
        if (at_ident("assert"))
        {
            take();
            expect_punct("(");
            SrcExprPtr e = parse_expr();
            expect_punct(")");
            return SrcCmd::make_assert(std::move(e));
        }
        if (at_ident("emit"))
        {
            take();
            std::string ev = expect_name();
            expect_punct("(");
            std::vector<SrcExprPtr> args;
            if (!at_punct(")"))
            {
                args.push_back(parse_expr());
                while (at_punct(","))
                {
                    take();
                    args.push_back(parse_expr());
                }
            }
            expect_punct(")");
            return SrcCmd::make_emit(std::move(ev), std::move(args));
        }
        if (at_ident("transferEth"))
        {
            take();
            expect_punct("(");
            SrcExprPtr to = parse_expr();
            expect_punct(",");
            SrcExprPtr amount = parse_expr();
            expect_punct(")");
            return SrcCmd::make_transfer(std::move(to), std::move(amount));
        }
        if (at_ident("begin"))
        {
            take();
            SrcCmdPtr c = parse_cmd();
            expect_word("end");
            return c;
        }

        // Remaining forms start with an expression: an assignment
        // path, a call, or a plain value.
        SrcExprPtr e = parse_expr();
        if (at_punct(":="))
        {
            take();
            SrcExprPtr rhs = parse_expr();
            return SrcCmd::make_assign(std::move(e), std::move(rhs));
        }
        return SrcCmd::make_value(std::move(e));
    }

    // --- expressions ---

    SrcExprPtr parse_expr() { return parse_or(); }

    SrcExprPtr parse_or()
    {
        SrcExprPtr e = parse_and();
        while (at_punct("\\/"))
        {
            take();
            e = SrcExpr::make_binop(BinOp::bit_or, std::move(e), parse_and());
        }
        return e;
    }

    SrcExprPtr parse_and()
    {
        SrcExprPtr e = parse_cmp();
        while (at_punct("/\\"))
        {
            take();
            e = SrcExpr::make_binop(BinOp::bit_and, std::move(e), parse_cmp());
        }
        return e;
    }

    SrcExprPtr parse_cmp()
    {
        SrcExprPtr e = parse_add();
        BinOp op;
        if (at_punct("="))
            op = BinOp::eq;
        else if (at_punct("<>"))
            op = BinOp::ne;
        else if (at_punct("<"))
            op = BinOp::lt;
        else if (at_punct(">"))
            op = BinOp::gt;
        else if (at_punct("<="))
            op = BinOp::le;
        else if (at_punct(">="))
            op = BinOp::ge;
        else
            return e;
        take();
        return SrcExpr::make_binop(op, std::move(e), parse_add());
    }

    SrcExprPtr parse_add()
    {
        SrcExprPtr e = parse_mul();
        while (at_punct("+") || at_punct("-"))
        {
            BinOp op = take().text == "+" ? BinOp::add : BinOp::sub;
            e = SrcExpr::make_binop(op, std::move(e), parse_mul());
        }
        return e;
    }

    SrcExprPtr parse_mul()
    {
        SrcExprPtr e = parse_postfix();
        while (at_punct("*") || at_punct("/") || at_punct("%"))
        {
            std::string t = take().text;
            BinOp op = t == "*" ? BinOp::mul : t == "/" ? BinOp::div_ : BinOp::mod;
            e = SrcExpr::make_binop(op, std::move(e), parse_postfix());
        }
        return e;
    }

    SrcExprPtr parse_postfix()
    {
        SrcExprPtr e = parse_atom();
        while (at_punct("["))
        {
            take();
            SrcExprPtr key = parse_expr();
            expect_punct("]");
            e = SrcExpr::make_index(std::move(e), std::move(key));
        }
        return e;
    }

    SrcExprPtr parse_atom()
    {
        const Token& t = lx_.peek();
        if (t.kind == Tok::number)
            return SrcExpr::make_number(take().number);
        if (t.kind == Tok::string)
            return SrcExpr::make_string(take().text);
        if (at_ident("true"))
            return take(), SrcExpr::make_boolean(true);
        if (at_ident("false"))
            return take(), SrcExpr::make_boolean(false);
        if (at_ident("msg_sender"))
            return take(), SrcExpr::make_builtin0(Builtin0::caller);
        if (at_ident("msg_value"))
            return take(), SrcExpr::make_builtin0(Builtin0::callvalue);
        if (at_ident("this_address"))
            return take(), SrcExpr::make_builtin0(Builtin0::self_address);
        if (at_ident("block_number"))
            return take(), SrcExpr::make_builtin0(Builtin0::block_number);
        if (at_ident("balance"))
        {
            take();
            expect_punct("(");
            SrcExprPtr a = parse_expr();
            expect_punct(")");
            return SrcExpr::make_balance(std::move(a));
        }
        if (at_punct("("))
        {
            take();
            SrcExprPtr e = parse_expr();
            expect_punct(")");
            return e;
        }
        if (t.kind == Tok::ident)
        {
            std::string name = expect_name();
            if (at_punct("("))
            {
                take();
                std::vector<SrcExprPtr> args;
                if (!at_punct(")"))
                {
                    args.push_back(parse_expr());
                    while (at_punct(","))
                    {
                        take();
                        args.push_back(parse_expr());
                    }
                }
                expect_punct(")");
                return SrcExpr::make_call(std::move(name), std::move(args));
            }
            return SrcExpr::make_ident(std::move(name));
        }
        error_here("expected an expression");
    }

    Lexer lx_;
};
}  // namespace

SourceUnit parse(const std::string& text)
{
    return Parser(text).parse_unit();
}

}  // namespace minicc
