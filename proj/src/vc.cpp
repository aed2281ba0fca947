// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Verification side conditions. The pipeline compiles wrap-around
// word arithmetic; these conditions are what a prover would have to
// discharge for the source-level unbounded-integer reading to agree
// with it. They are reported, never checked at runtime.
#include "minicc/frontend.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace minicc
{
namespace
{
bool is_arith(BinOp op)
{
    switch (op)
    {
        case BinOp::add:
        case BinOp::sub:
        case BinOp::mul:
        case BinOp::div_:
        case BinOp::mod:
            return true;
        default:
            return false;
    }
}

bool contains_arith(const ExprPtr& e)
{
    if (!e)
        return false;
    if (e->kind == Expr::Kind::binop && is_arith(e->bin))
        return true;
    return contains_arith(e->sub) || contains_arith(e->lhs) || contains_arith(e->rhs);
}

struct Walker
{
    const std::string& function;
    std::vector<SideCondition>& out;
    int index = 0;

    void divisors(const ExprPtr& e)
    {
        if (!e)
            return;
        divisors(e->sub);
        divisors(e->lhs);
        divisors(e->rhs);
        if (e->kind == Expr::Kind::binop &&
            (e->bin == BinOp::div_ || e->bin == BinOp::mod))
            out.push_back({function, index, SideCondition::Kind::nonzero_divisor,
                           e->rhs->str() + " <> 0", e->rhs->str()});
    }

    void range_check(const ExprPtr& rhs)
    {
        if (rhs->type && rhs->type->is_int() && contains_arith(rhs))
            out.push_back({function, index, SideCondition::Kind::range_check,
                           "0 <= " + rhs->str() + " < 2^256", rhs->str()});
    }

    void stmt(const StmtPtr& s)
    {
        if (!s)
            return;
        switch (s->kind)
        {
            case Stmt::Kind::assign:
                range_check(s->rhs);
                divisors(s->lhs);
                divisors(s->rhs);
                break;
            case Stmt::Kind::set:
                range_check(s->rhs);
                divisors(s->rhs);
                break;
            case Stmt::Kind::call:
                for (const auto& a : s->args)
                    divisors(a);
                break;
            case Stmt::Kind::ifte:
                divisors(s->lhs);
                break;
            case Stmt::Kind::return_:
                if (s->value)
                {
                    range_check(*s->value);
                    divisors(*s->value);
                }
                break;
            case Stmt::Kind::transfer:
                divisors(s->lhs);
                divisors(s->rhs);
                break;
            case Stmt::Kind::log:
                for (const auto& t : s->topics)
                    divisors(t);
                for (const auto& a : s->args)
                    divisors(a);
                break;
            default:
                break;
        }
        ++index;
        switch (s->kind)
        {
            case Stmt::Kind::sequence:
            case Stmt::Kind::ifte:
                stmt(s->s1);
                stmt(s->s2);
                break;
            case Stmt::Kind::loop:
                stmt(s->s1);
                break;
            default:
                break;
        }
    }
};
}  // namespace

std::vector<SideCondition> emit_vcs(const Program& p)
{
    std::vector<SideCondition> out;
    for (const Function& f : p.functions)
    {
        Walker w{f.name, out};
        w.stmt(f.body);
    }
    return out;
}

std::string vcs_to_jsonl(const std::vector<SideCondition>& vcs)
{
    std::string out;
    for (const SideCondition& vc : vcs)
    {
        nlohmann::json j;
        j["function"] = vc.function;
        j["stmt"] = vc.stmt_index;
        j["kind"] = vc.kind == SideCondition::Kind::range_check ? "RangeCheck"
                                                                : "NonzeroDivisor";
        j["predicate"] = vc.predicate;
        j["expr"] = vc.expr;
        out += j.dump();
        out += "\n";
    }
    return out;
}

}  // namespace minicc
