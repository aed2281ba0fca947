// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "contracts_fixture.hpp"
#include "minicc/errors.hpp"
#include "minicc/gas.hpp"
#include "minicc/refexec.hpp"

#include <random>

using namespace minicc;
using namespace minicc::fixtures;

namespace
{
const Word kA = 0xaaaa;
const Word kB = 0xbbbb;
const Word kC = 0xcccc;
const Word kD = 0xdddd;

MachineEnv env_of(Word self, Word caller, Word callvalue = 0, Word block = 0)
{
    MachineEnv e;
    e.self_address = std::move(self);
    e.caller = std::move(caller);
    e.callvalue = std::move(callvalue);
    e.block_number = std::move(block);
    return e;
}

Word map_entry(const Memory& m, Word slot, Word key)
{
    return m.sread(HashKey::pair(HashKey::singleton(std::move(slot)), std::move(key)),
                   Type::make_int())
        .word();
}

Word scalar_entry(const Memory& m, Word slot)
{
    return m.sread(HashKey::singleton(std::move(slot)), Type::make_int()).word();
}

/// Sum over the slot-0 mapping (balances / backers). Nested mappings
/// hash through an inner pair key, so they never match.
Word slot0_sum(const Memory& m)
{
    Word sum = 0;
    for (const auto& [k, v] : m.storage_entries())
        if (!k.is_singleton() && k.base().is_singleton() && k.base().head() == 0)
            sum += v.word();
    return sum;
}

/// Deploys the token as caller A and returns the resulting storage.
Memory token_genesis(const Program& p)
{
    auto out = run_constructor(p, Memory{}, env_of(0x70ce4, kA), {});
    REQUIRE(!out.reverted);
    return out.state;
}
}  // namespace

TEST_CASE("token: constructor mints the full supply to the deployer")
{
    auto p = make_token_program();
    auto out = run_constructor(p, Memory{}, env_of(0x70ce4, kA), {});
    CHECK(!out.reverted);
    CHECK(out.ret.is_unit());
    CHECK(map_entry(out.state, 0, kA) == 100000);
    CHECK(slot0_sum(out.state) == 100000);
    CHECK(out.state.storage_entries().size() == 1);
    // Entry charge scales with program size; the body adds its own.
    CHECK(out.gas_bound > gas::bound::deploy(program_node_count(p)));
}

TEST_CASE("token: transfer moves tokens and returns true")
{
    auto p = make_token_program();
    Memory pre = token_genesis(p);
    auto out = run_method(p, pre, env_of(0x70ce4, kA), "transfer",
                          {Value::from_word(kB), Value::from_word(400)});
    CHECK(!out.reverted);
    CHECK(out.ret == Value::from_word(1));
    CHECK(map_entry(out.state, 0, kA) == 99600);
    CHECK(map_entry(out.state, 0, kB) == 400);
    CHECK(slot0_sum(out.state) == 100000);
    CHECK(out.events.empty());
}

TEST_CASE("token: self transfer trips the assert and reverts cleanly")
{
    auto p = make_token_program();
    Memory pre = token_genesis(p);
    auto out = run_method(p, pre, env_of(0x70ce4, kA), "transfer",
                          {Value::from_word(kA), Value::from_word(1)});
    CHECK(out.reverted);
    CHECK(out.state == pre);
    CHECK(out.events.empty());
    CHECK(out.gas_bound > 0);
}

TEST_CASE("token: overdraw reverts without touching storage")
{
    auto p = make_token_program();
    Memory pre = token_genesis(p);
    auto out = run_method(p, pre, env_of(0x70ce4, kB), "transfer",
                          {Value::from_word(kA), Value::from_word(1)});
    CHECK(out.reverted);
    CHECK(out.state == pre);

    auto big = run_method(p, pre, env_of(0x70ce4, kA), "transfer",
                          {Value::from_word(kB), Value::from_word(100001)});
    CHECK(big.reverted);
    CHECK(big.state == pre);
}

TEST_CASE("token: balanceOf and totalSupply")
{
    auto p = make_token_program();
    Memory pre = token_genesis(p);
    auto bal = run_method(p, pre, env_of(0x70ce4, kC), "balanceOf", {Value::from_word(kA)});
    CHECK(!bal.reverted);
    CHECK(bal.ret == Value::from_word(100000));
    CHECK(bal.state == pre);

    auto none = run_method(p, pre, env_of(0x70ce4, kC), "balanceOf", {Value::from_word(kD)});
    CHECK(none.ret == Value::from_word(0));

    auto supply = run_method(p, pre, env_of(0x70ce4, kC), "totalSupply", {});
    CHECK(supply.ret == Value::from_word(100000));
}

TEST_CASE("token: approve writes the nested allowance entry")
{
    auto p = make_token_program();
    Memory pre = token_genesis(p);
    auto out = run_method(p, pre, env_of(0x70ce4, kA), "approve",
                          {Value::from_word(kB), Value::from_word(500)});
    CHECK(!out.reverted);
    CHECK(out.ret == Value::from_word(1));
    auto key = HashKey::pair(HashKey::pair(HashKey::singleton(1), kA), kB);
    CHECK(out.state.sread(key, Type::make_int()) == Value::from_word(500));
    CHECK(slot0_sum(out.state) == 100000);
}

TEST_CASE("token: transferFrom spends allowance and stops at its limit")
{
    auto p = make_token_program();
    Memory s = token_genesis(p);
    s = run_method(p, s, env_of(0x70ce4, kA), "approve",
                   {Value::from_word(kB), Value::from_word(500)})
            .state;

    auto first = run_method(p, s, env_of(0x70ce4, kB), "transferFrom",
                            {Value::from_word(kA), Value::from_word(kC), Value::from_word(300)});
    CHECK(!first.reverted);
    CHECK(first.ret == Value::from_word(1));
    CHECK(map_entry(first.state, 0, kA) == 99700);
    CHECK(map_entry(first.state, 0, kC) == 300);
    auto key = HashKey::pair(HashKey::pair(HashKey::singleton(1), kA), kB);
    CHECK(first.state.sread(key, Type::make_int()) == Value::from_word(200));

    auto second = run_method(p, first.state, env_of(0x70ce4, kB), "transferFrom",
                             {Value::from_word(kA), Value::from_word(kC), Value::from_word(300)});
    CHECK(second.reverted);
    CHECK(second.state == first.state);
}

TEST_CASE("token: balance sum is invariant over random call sequences")
{
    auto p = make_token_program();
    Memory s = token_genesis(p);
    const Word addrs[] = {kA, kB, kC, kD};
    std::mt19937_64 rng(0x70c0);
    auto pick_addr = [&] { return addrs[rng() % 4]; };

    int reverted = 0, completed = 0;
    for (int i = 0; i < 300; ++i)
    {
        Word caller = pick_addr();
        Word amount = Word(rng() % 60000);
        ExecOutcome out;
        switch (rng() % 3)
        {
            case 0:
                out = run_method(p, s, env_of(0x70ce4, caller), "transfer",
                                 {Value::from_word(pick_addr()), Value::from_word(amount)});
                break;
            case 1:
                out = run_method(p, s, env_of(0x70ce4, caller), "approve",
                                 {Value::from_word(pick_addr()), Value::from_word(amount)});
                break;
            default:
                out = run_method(p, s, env_of(0x70ce4, caller), "transferFrom",
                                 {Value::from_word(pick_addr()), Value::from_word(pick_addr()),
                                  Value::from_word(amount)});
                break;
        }
        if (out.reverted)
        {
            REQUIRE(out.state == s);
            ++reverted;
        }
        else
        {
            s = out.state;
            ++completed;
        }
        REQUIRE(slot0_sum(s) == 100000);
    }
    // The mix must exercise both outcomes to mean anything.
    CHECK(reverted > 20);
    CHECK(completed > 20);
}

TEST_CASE("token: repeated runs are deterministic")
{
    auto p = make_token_program();
    Memory pre = token_genesis(p);
    auto a = run_method(p, pre, env_of(0x70ce4, kA), "transfer",
                        {Value::from_word(kB), Value::from_word(777)});
    auto b = run_method(p, pre, env_of(0x70ce4, kA), "transfer",
                        {Value::from_word(kB), Value::from_word(777)});
    CHECK(a.reverted == b.reverted);
    CHECK(a.ret == b.ret);
    CHECK(a.state == b.state);
    CHECK(a.gas_bound == b.gas_bound);
}

TEST_CASE("token: method lookup and arity are checked")
{
    auto p = make_token_program();
    Memory pre = token_genesis(p);
    CHECK_THROWS_WITH_AS((void)run_method(p, pre, env_of(1, kA), "mint", {}),
                         doctest::Contains("UnknownIdent"), Error);
    CHECK_THROWS_WITH_AS((void)run_method(p, pre, env_of(1, kA), "transfer",
                                          {Value::from_word(kB)}),
                         doctest::Contains("ArityMismatch"), Error);
    // The constructor is not dispatchable as a method.
    CHECK_THROWS_WITH_AS((void)run_method(p, pre, env_of(1, kA), "constructor", {}),
                         doctest::Contains("UnknownIdent"), Error);
}

// ---------------------------------------------------------------------------

namespace
{
/// Deploys the crowdfunding contract: owner kD, deadline block 100,
/// goal 1000.
Memory crowdfunding_genesis(const Program& p)
{
    auto out = run_constructor(p, Memory{}, env_of(0x5e1f, kD, 0, 10),
                               {Value::from_word(100), Value::from_word(1000)});
    REQUIRE(!out.reverted);
    return out.state;
}
}  // namespace

TEST_CASE("crowdfunding: constructor records owner, deadline, and goal")
{
    auto p = make_crowdfunding_program();
    Memory s = crowdfunding_genesis(p);
    CHECK(scalar_entry(s, 1) == kD);
    CHECK(scalar_entry(s, 2) == 100);
    CHECK(scalar_entry(s, 3) == 1000);
    CHECK(scalar_entry(s, 4) == 0);
}

TEST_CASE("crowdfunding: donate before the deadline is recorded")
{
    auto p = make_crowdfunding_program();
    Memory s = crowdfunding_genesis(p);
    auto out = run_method(p, s, env_of(0x5e1f, kA, 200, 50), "donate", {});
    CHECK(!out.reverted);
    CHECK(map_entry(out.state, 0, kA) == 200);
    CHECK(out.events.empty());
}

TEST_CASE("crowdfunding: a second donation from the same backer reverts")
{
    auto p = make_crowdfunding_program();
    Memory s = crowdfunding_genesis(p);
    s = run_method(p, s, env_of(0x5e1f, kA, 200, 50), "donate", {}).state;
    auto out = run_method(p, s, env_of(0x5e1f, kA, 300, 60), "donate", {});
    CHECK(out.reverted);
    CHECK(out.state == s);
    // The alreadyDonated message is emitted on the doomed path and
    // discarded with the revert.
    CHECK(out.events.empty());
}

TEST_CASE("crowdfunding: donations after the deadline revert")
{
    auto p = make_crowdfunding_program();
    Memory s = crowdfunding_genesis(p);
    auto out = run_method(p, s, env_of(0x5e1f, kB, 200, 101), "donate", {});
    CHECK(out.reverted);
    CHECK(out.state == s);
}

TEST_CASE("crowdfunding: the contract cannot donate to itself")
{
    auto p = make_crowdfunding_program();
    Memory s = crowdfunding_genesis(p);
    auto out = run_method(p, s, env_of(0x5e1f, 0x5e1f, 5, 50), "donate", {});
    CHECK(out.reverted);
}

TEST_CASE("crowdfunding: getFunds pays the owner once the goal is met")
{
    auto p = make_crowdfunding_program();
    Memory s = crowdfunding_genesis(p);
    s = run_method(p, s, env_of(0x5e1f, kA, 800, 50), "donate", {}).state;
    s = run_method(p, s, env_of(0x5e1f, kB, 700, 60), "donate", {}).state;

    auto env = env_of(0x5e1f, kD, 0, 150);
    env.balances[0x5e1f] = 1500;

    SUBCASE("wrong caller")
    {
        auto out = run_method(p, s, env_of(0x5e1f, kA, 0, 150), "getFunds", {});
        CHECK(out.reverted);
    }
    SUBCASE("too early")
    {
        auto early = env;
        early.block_number = 90;
        auto out = run_method(p, s, early, "getFunds", {});
        CHECK(out.reverted);
    }
    SUBCASE("success")
    {
        auto out = run_method(p, s, env, "getFunds", {});
        CHECK(!out.reverted);
        CHECK(scalar_entry(out.state, 4) == 1);
        CHECK(out.balances.at(0x5e1f) == 0);
        CHECK(out.balances.at(kD) == 1500);
    }
    SUBCASE("vetoed transfer unwinds the whole call")
    {
        auto vetoed = env;
        vetoed.transfer_hook = [](const Word&, const Word&) { return false; };
        auto out = run_method(p, s, vetoed, "getFunds", {});
        CHECK(out.reverted);
        CHECK(out.state == s);
        CHECK(out.balances.at(0x5e1f) == 1500);
    }
}

TEST_CASE("crowdfunding: claim refunds a backer of a failed campaign")
{
    auto p = make_crowdfunding_program();
    Memory s = crowdfunding_genesis(p);
    s = run_method(p, s, env_of(0x5e1f, kA, 300, 50), "donate", {}).state;

    auto env = env_of(0x5e1f, kA, 0, 150);
    env.balances[0x5e1f] = 300;
    env.balances[kA] = 7;

    auto out = run_method(p, s, env, "claim", {});
    CHECK(!out.reverted);
    CHECK(map_entry(out.state, 0, kA) == 0);
    CHECK(out.balances.at(0x5e1f) == 0);
    CHECK(out.balances.at(kA) == 307);

    // A backer with nothing recorded has nothing to claim.
    auto other = run_method(p, s, env_of(0x5e1f, kB, 0, 150), "claim", {});
    CHECK(other.reverted);
}

// ---------------------------------------------------------------------------

TEST_CASE("counter: internal call carries the argument and the result")
{
    auto p = make_counter_program();
    auto genesis = run_constructor(p, Memory{}, env_of(1, kA), {});
    REQUIRE(!genesis.reverted);

    auto first = run_method(p, genesis.state, env_of(1, kA), "bump", {Value::from_word(5)});
    CHECK(!first.reverted);
    CHECK(first.ret == Value::from_word(5));
    CHECK(scalar_entry(first.state, 0) == 5);

    auto second = run_method(p, first.state, env_of(1, kA), "bump", {Value::from_word(7)});
    CHECK(second.ret == Value::from_word(12));

    auto got = run_method(p, second.state, env_of(1, kA), "get", {});
    CHECK(got.ret == Value::from_word(12));
    // An internal function is not dispatchable from outside.
    CHECK_THROWS_WITH_AS(
        (void)run_method(p, second.state, env_of(1, kA), "add_to", {Value::from_word(1)}),
        doctest::Contains("UnknownIdent"), Error);
}

TEST_CASE("counter: gas bound grows with the work done")
{
    auto p = make_counter_program();
    auto genesis = run_constructor(p, Memory{}, env_of(1, kA), {});
    auto bump = run_method(p, genesis.state, env_of(1, kA), "bump", {Value::from_word(5)});
    auto get = run_method(p, genesis.state, env_of(1, kA), "get", {});
    CHECK(bump.gas_bound > get.gas_bound);
    CHECK(get.gas_bound > 0);
}
