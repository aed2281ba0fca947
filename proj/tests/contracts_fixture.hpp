// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Hand-assembled ASTs for the bundled example contracts, shared by the
// interpreter, pipeline, and end-to-end tests. The shapes follow the
// frontend's desugarings: a `let x = e in ...` binding becomes a set
// into a declared temp, `assert e` becomes `if e then skip else
// revert`, and boolean conjunction is bitwise-and over 0/1 comparison
// results.

#include "minicc/ast.hpp"
#include "minicc/keccak.hpp"

#include <string>
#include <vector>

namespace minicc::fixtures
{
inline TypePtr t_int() { return Type::make_int(); }
inline TypePtr t_bool() { return Type::make_bool(); }
inline TypePtr t_addr() { return Type::make_address(); }

inline ExprPtr num(long long v) { return Expr::make_int(Word(v), t_int()); }
inline ExprPtr bool_lit(bool b) { return Expr::make_int(Word(b ? 1 : 0), t_bool()); }
inline ExprPtr param(const std::string& n, TypePtr t) { return Expr::make_var(n, std::move(t)); }
inline ExprPtr local(const std::string& n, TypePtr t) { return Expr::make_temp(n, std::move(t)); }

inline ExprPtr caller_e() { return Expr::make_call0(Builtin0::caller, t_addr()); }
inline ExprPtr self_e() { return Expr::make_call0(Builtin0::self_address, t_addr()); }
inline ExprPtr callvalue_e() { return Expr::make_call0(Builtin0::callvalue, t_int()); }
inline ExprPtr blocknum_e() { return Expr::make_call0(Builtin0::block_number, t_int()); }
inline ExprPtr balance_e(ExprPtr addr)
{
    return Expr::make_call1(Builtin1::balance, std::move(addr), t_int());
}

inline ExprPtr add_e(ExprPtr a, ExprPtr b)
{
    return Expr::make_binop(BinOp::add, std::move(a), std::move(b), t_int());
}
inline ExprPtr sub_e(ExprPtr a, ExprPtr b)
{
    return Expr::make_binop(BinOp::sub, std::move(a), std::move(b), t_int());
}
inline ExprPtr cmp_e(BinOp op, ExprPtr a, ExprPtr b)
{
    return Expr::make_binop(op, std::move(a), std::move(b), t_bool());
}
inline ExprPtr and_e(ExprPtr a, ExprPtr b)
{
    return Expr::make_binop(BinOp::bit_and, std::move(a), std::move(b), t_bool());
}

/// Folds a statement list into nested sequences, left-associated.
inline StmtPtr seq(std::vector<StmtPtr> stmts)
{
    if (stmts.empty())
        return Stmt::make_skip();
    StmtPtr acc = stmts.front();
    for (size_t i = 1; i < stmts.size(); ++i)
        acc = Stmt::make_sequence(acc, stmts[i]);
    return acc;
}

inline StmtPtr assert_s(ExprPtr cond)
{
    return Stmt::make_ifte(std::move(cond), Stmt::make_skip(), Stmt::make_revert());
}

/// ASCII text packed left-aligned into a word, Solidity short-string
/// style: "ok" becomes 0x6f6b00...00.
inline Word msg_word(const std::string& text)
{
    Word w = 0;
    for (unsigned char c : text)
        w = (w << 8) | c;
    w <<= 8 * (32 - text.size());
    return w;
}

// ---------------------------------------------------------------------------
// Token: fixed supply of 100000 minted to the deployer, with transfer,
// approve, and transferFrom. balances lives in slot 0, allowances in
// slot 1 (a mapping of mappings, so allowances[a][b] hashes twice).

inline TypePtr balances_map_t() { return Type::make_hashmap(t_addr(), t_int()); }
inline TypePtr allowances_map_t() { return Type::make_hashmap(t_addr(), balances_map_t()); }

inline ExprPtr balances_at(ExprPtr owner)
{
    return Expr::make_index(Expr::make_glob("balances", balances_map_t()), std::move(owner),
                            t_int());
}

inline ExprPtr allowances_at(ExprPtr owner, ExprPtr spender)
{
    auto row = Expr::make_index(Expr::make_glob("allowances", allowances_map_t()),
                                std::move(owner), balances_map_t());
    return Expr::make_index(std::move(row), std::move(spender), t_int());
}

inline Program make_token_program()
{
    Program p;
    p.name = "Token";
    p.layout.globals.push_back({"balances", balances_map_t(), 0});
    p.layout.globals.push_back({"allowances", allowances_map_t(), 1});

    {
        Function ctor;
        ctor.name = "constructor";
        ctor.kind = FunctionKind::constructor;
        ctor.ret = Type::make_void();
        ctor.body = Stmt::make_assign(balances_at(caller_e()), num(100000));
        p.functions.push_back(std::move(ctor));
    }
    {
        Function f;
        f.name = "transfer";
        f.params = {{"toA", t_addr()}, {"tokens", t_int()}};
        f.temps = {{"fromA", t_addr()}, {"from_bal", t_int()}, {"to_bal", t_int()}};
        f.ret = t_bool();
        auto toA = param("toA", t_addr());
        auto tokens = param("tokens", t_int());
        auto fromA = local("fromA", t_addr());
        auto from_bal = local("from_bal", t_int());
        auto to_bal = local("to_bal", t_int());
        f.body = seq({
            Stmt::make_set("fromA", caller_e()),
            Stmt::make_set("from_bal", balances_at(fromA)),
            Stmt::make_set("to_bal", balances_at(toA)),
            assert_s(and_e(cmp_e(BinOp::ne, fromA, toA), cmp_e(BinOp::ge, from_bal, tokens))),
            Stmt::make_assign(balances_at(fromA), sub_e(from_bal, tokens)),
            Stmt::make_assign(balances_at(toA), add_e(to_bal, tokens)),
            Stmt::make_return(bool_lit(true)),
        });
        p.functions.push_back(std::move(f));
    }
    {
        Function f;
        f.name = "totalSupply";
        f.ret = t_int();
        f.body = Stmt::make_return(num(100000));
        p.functions.push_back(std::move(f));
    }
    {
        Function f;
        f.name = "balanceOf";
        f.params = {{"tokenOwner", t_addr()}};
        f.temps = {{"bal", t_int()}};
        f.ret = t_int();
        f.body = seq({
            Stmt::make_set("bal", balances_at(param("tokenOwner", t_addr()))),
            Stmt::make_return(local("bal", t_int())),
        });
        p.functions.push_back(std::move(f));
    }
    {
        Function f;
        f.name = "approve";
        f.params = {{"spender", t_addr()}, {"tokens", t_int()}};
        f.ret = t_bool();
        f.body = seq({
            Stmt::make_assign(allowances_at(caller_e(), param("spender", t_addr())),
                              param("tokens", t_int())),
            Stmt::make_return(bool_lit(true)),
        });
        p.functions.push_back(std::move(f));
    }
    {
        Function f;
        f.name = "transferFrom";
        f.params = {{"fromA", t_addr()}, {"toA", t_addr()}, {"tokens", t_int()}};
        f.temps = {{"allowed", t_int()}, {"from_bal", t_int()}, {"to_bal", t_int()}};
        f.ret = t_bool();
        auto fromA = param("fromA", t_addr());
        auto toA = param("toA", t_addr());
        auto tokens = param("tokens", t_int());
        auto allowed = local("allowed", t_int());
        auto from_bal = local("from_bal", t_int());
        auto to_bal = local("to_bal", t_int());
        f.body = seq({
            Stmt::make_set("allowed", allowances_at(fromA, caller_e())),
            Stmt::make_set("from_bal", balances_at(fromA)),
            Stmt::make_set("to_bal", balances_at(toA)),
            assert_s(and_e(and_e(cmp_e(BinOp::ne, fromA, toA),
                                 cmp_e(BinOp::ge, from_bal, tokens)),
                           cmp_e(BinOp::ge, allowed, tokens))),
            Stmt::make_assign(allowances_at(fromA, caller_e()), sub_e(allowed, tokens)),
            Stmt::make_assign(balances_at(fromA), sub_e(from_bal, tokens)),
            Stmt::make_assign(balances_at(toA), add_e(to_bal, tokens)),
            Stmt::make_return(bool_lit(true)),
        });
        p.functions.push_back(std::move(f));
    }
    return p;
}

// ---------------------------------------------------------------------------
// Crowdfunding: backers donate ether before a block-height deadline;
// the owner collects when the goal is met, backers reclaim otherwise.
// Rejected donations emit a Message event naming the reason and then
// revert (the event is discarded with the rest of the transaction).

inline Word message_event_id()
{
    const std::string sig = "Message(uint256)";
    return keccak256_word(Bytes(sig.begin(), sig.end()));
}

inline StmtPtr emit_message(Word text)
{
    std::vector<ExprPtr> topics = {Expr::make_int256(message_event_id(), t_int())};
    std::vector<ExprPtr> data = {Expr::make_int256(text, t_int())};
    return Stmt::make_log(std::move(topics), std::move(data));
}

inline ExprPtr backers_at(ExprPtr who)
{
    return Expr::make_index(Expr::make_glob("backers", balances_map_t()), std::move(who),
                            t_int());
}

inline Program make_crowdfunding_program()
{
    Program p;
    p.name = "Crowdfunding";
    p.layout.globals.push_back({"backers", balances_map_t(), 0});
    p.layout.globals.push_back({"owner", t_addr(), 1});
    p.layout.globals.push_back({"max_block", t_int(), 2});
    p.layout.globals.push_back({"goal", t_int(), 3});
    p.layout.globals.push_back({"funded", t_bool(), 4});
    p.events["Message"] = Event{"Message", message_event_id(), {t_int()}};

    auto owner_g = Expr::make_glob("owner", t_addr());
    auto max_block_g = Expr::make_glob("max_block", t_int());
    auto goal_g = Expr::make_glob("goal", t_int());
    auto funded_g = Expr::make_glob("funded", t_bool());

    {
        Function ctor;
        ctor.name = "constructor";
        ctor.kind = FunctionKind::constructor;
        ctor.params = {{"deadline", t_int()}, {"goal_amt", t_int()}};
        ctor.ret = Type::make_void();
        ctor.body = seq({
            Stmt::make_assign(owner_g, caller_e()),
            Stmt::make_assign(max_block_g, param("deadline", t_int())),
            Stmt::make_assign(goal_g, param("goal_amt", t_int())),
        });
        p.functions.push_back(std::move(ctor));
    }
    {
        Function f;
        f.name = "donate";
        f.temps = {{"blk", t_int()}, {"deadline", t_int()}, {"backed_amount", t_int()}};
        f.ret = Type::make_void();
        auto blk = local("blk", t_int());
        auto deadline = local("deadline", t_int());
        auto backed = local("backed_amount", t_int());
        f.body = seq({
            assert_s(cmp_e(BinOp::ne, caller_e(), self_e())),
            assert_s(cmp_e(BinOp::ge, callvalue_e(), num(0))),
            Stmt::make_set("blk", blocknum_e()),
            Stmt::make_set("deadline", max_block_g),
            Stmt::make_ifte(
                cmp_e(BinOp::gt, blk, deadline),
                seq({emit_message(msg_word("deadlinePassed")), Stmt::make_revert()}),
                seq({
                    Stmt::make_set("backed_amount", backers_at(caller_e())),
                    Stmt::make_ifte(
                        cmp_e(BinOp::eq, backed, num(0)),
                        Stmt::make_assign(backers_at(caller_e()), callvalue_e()),
                        seq({emit_message(msg_word("alreadyDonated")), Stmt::make_revert()})),
                })),
        });
        p.functions.push_back(std::move(f));
    }
    {
        Function f;
        f.name = "getFunds";
        f.temps = {{"bal", t_int()}};
        f.ret = Type::make_void();
        auto bal = local("bal", t_int());
        f.body = seq({
            assert_s(cmp_e(BinOp::eq, caller_e(), owner_g)),
            assert_s(cmp_e(BinOp::gt, blocknum_e(), max_block_g)),
            Stmt::make_set("bal", balance_e(self_e())),
            assert_s(cmp_e(BinOp::ge, bal, goal_g)),
            Stmt::make_assign(funded_g, bool_lit(true)),
            Stmt::make_transfer(owner_g, bal),
        });
        p.functions.push_back(std::move(f));
    }
    {
        Function f;
        f.name = "claim";
        f.temps = {{"bal", t_int()}, {"backed", t_int()}};
        f.ret = Type::make_void();
        auto bal = local("bal", t_int());
        auto backed = local("backed", t_int());
        f.body = seq({
            assert_s(cmp_e(BinOp::gt, blocknum_e(), max_block_g)),
            Stmt::make_set("bal", balance_e(self_e())),
            assert_s(cmp_e(BinOp::lt, bal, goal_g)),
            assert_s(cmp_e(BinOp::eq, funded_g, bool_lit(false))),
            Stmt::make_set("backed", backers_at(caller_e())),
            assert_s(cmp_e(BinOp::gt, backed, num(0))),
            Stmt::make_assign(backers_at(caller_e()), num(0)),
            Stmt::make_transfer(caller_e(), backed),
        });
        p.functions.push_back(std::move(f));
    }
    return p;
}

// ---------------------------------------------------------------------------
// Counter: the smallest program that exercises an internal call. bump
// routes through add_to, which owns the storage update.

inline Program make_counter_program()
{
    Program p;
    p.name = "Counter";
    p.layout.globals.push_back({"value", t_int(), 0});
    auto value_g = Expr::make_glob("value", t_int());

    {
        Function ctor;
        ctor.name = "constructor";
        ctor.kind = FunctionKind::constructor;
        ctor.ret = Type::make_void();
        ctor.body = Stmt::make_skip();
        p.functions.push_back(std::move(ctor));
    }
    {
        Function f;
        f.name = "bump";
        f.params = {{"n", t_int()}};
        f.temps = {{"r", t_int()}};
        f.ret = t_int();
        f.body = seq({
            Stmt::make_call("r", "add_to", {param("n", t_int())}),
            Stmt::make_return(local("r", t_int())),
        });
        p.functions.push_back(std::move(f));
    }
    {
        Function f;
        f.name = "add_to";
        f.kind = FunctionKind::internal;
        f.params = {{"n", t_int()}};
        f.temps = {{"v", t_int()}};
        f.ret = t_int();
        auto v = local("v", t_int());
        f.body = seq({
            Stmt::make_set("v", add_e(value_g, param("n", t_int()))),
            Stmt::make_assign(value_g, v),
            Stmt::make_return(v),
        });
        p.functions.push_back(std::move(f));
    }
    {
        Function f;
        f.name = "get";
        f.temps = {{"v", t_int()}};
        f.ret = t_int();
        f.body = seq({
            Stmt::make_set("v", value_g),
            Stmt::make_return(local("v", t_int())),
        });
        p.functions.push_back(std::move(f));
    }
    return p;
}

}  // namespace minicc::fixtures
