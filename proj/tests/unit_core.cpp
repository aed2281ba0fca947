// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minicc/ast.hpp"
#include "minicc/errors.hpp"
#include "minicc/keccak.hpp"
#include "minicc/memory.hpp"
#include "minicc/value.hpp"
#include "minicc/word.hpp"

#include <random>
#include <set>
#include <string>
#include <vector>

using namespace minicc;

TEST_CASE("word: bytes32 round trip")
{
    const Word samples[] = {
        Word{0}, Word{1}, Word{255}, Word{256},
        word_parse("0xdeadbeef"),
        word_parse("0xffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff"),
    };
    for (const auto& w : samples)
    {
        auto b = word_to_bytes32(w);
        CHECK(word_from_bytes32(b) == w);
    }
}

TEST_CASE("word: big endian layout")
{
    auto b = word_to_bytes32(Word{0x0102});
    CHECK(b[30] == 0x01);
    CHECK(b[31] == 0x02);
    for (int i = 0; i < 30; ++i)
        CHECK(b[i] == 0);
}

TEST_CASE("word: division and modulo by zero yield zero")
{
    CHECK(word_div(7, 0) == 0);
    CHECK(word_mod(7, 0) == 0);
    CHECK(word_div(7, 2) == 3);
    CHECK(word_mod(7, 2) == 1);
}

TEST_CASE("word: hex and decimal parsing")
{
    CHECK(word_parse("0x10") == 16);
    CHECK(word_parse("16") == 16);
    CHECK(word_parse("0") == 0);
    CHECK(word_to_hex(Word{0}) == "0x0");
    CHECK(word_to_hex(Word{0xabc}) == "0xabc");
    CHECK(word_to_dec(Word{1234}) == "1234");
    CHECK_THROWS_AS((void)word_parse("zz"), std::invalid_argument);
    CHECK_THROWS_AS((void)word_parse(""), std::invalid_argument);
}

TEST_CASE("word: wrap around arithmetic")
{
    Word max = word_parse("0xffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff");
    CHECK(Word{max + 1} == 0);
    CHECK(Word{Word{0} - 1} == max);
}

TEST_CASE("word: byte width")
{
    CHECK(word_byte_width(0) == 1);
    CHECK(word_byte_width(0xff) == 1);
    CHECK(word_byte_width(0x100) == 2);
    CHECK(word_byte_width(word_parse("0x10000")) == 3);
}

static std::string hex32(const Bytes32& d)
{
    return bytes_to_hex(Bytes(d.begin(), d.end())).substr(2);
}

static std::string hash_hex(const std::string& input)
{
    const auto* p = reinterpret_cast<const uint8_t*>(input.data());
    return hex32(keccak256(p, input.size()));
}

TEST_CASE("keccak256: known answers")
{
    CHECK(hash_hex("") == "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470");
    CHECK(hash_hex("abc") == "4e03657aea45a94fc7d47ba826c8d667c0d1e6e33a64a036ec44f58fa12d6c45");
    CHECK(hash_hex("The quick brown fox jumps over the lazy dog") ==
          "4d741b6f1eb29cb2a9b9911c82f56fa8d73b04959d3d9d222895df6c0b28aa15");
}

TEST_CASE("keccak256: block boundary inputs")
{
    // Rate is 136 bytes; cover one byte under, exactly at, one over,
    // and two full blocks.
    CHECK(hash_hex(std::string(135, 'a')) ==
          "34367dc248bbd832f4e3e69dfaac2f92638bd0bbd18f2912ba4ef454919cf446");
    CHECK(hash_hex(std::string(136, 'a')) ==
          "a6c4d403279fe3e0af03729caada8374b5ca54d8065329a3ebcaeb4b60aa386e");
    CHECK(hash_hex(std::string(137, 'a')) ==
          "d869f639c7046b4929fc92a4d988a8b22c55fbadb802c0c66ebcd484f1915f39");
    CHECK(hash_hex(std::string(272, 'a')) ==
          "cf7fcd4f705ee749930d19ca84561a9bf62516bd90a471545fa2f49fdc7e63c8");
}

TEST_CASE("keccak256: method signature hashes")
{
    CHECK(hash_hex("transfer(address,uint256)") ==
          "a9059cbb2ab09eb219583f4a59a5d0623ade346d962bcd4e46b11da047c9049b");
    CHECK(hash_hex("balanceOf(address)") ==
          "70a08231b98ef4ca268c9cc3f6b4590e4bfec28280db06bb5d45e689f2a360be");
    CHECK(hash_hex("totalSupply()") ==
          "18160ddd7f15c72528c2f94fd8dfe3c8d5aa26e2c50c7d81f4bc7bee8d4b7932");
}

TEST_CASE("keccak256: word pair hashing matches storage layout")
{
    Bytes b;
    auto append_word = [&b](const Word& w) {
        auto arr = word_to_bytes32(w);
        b.insert(b.end(), arr.begin(), arr.end());
    };
    append_word(0);
    append_word(0);
    CHECK(hex32(keccak256(b)) ==
          "ad3228b676f7d3cd4284a5443f17f1962b36e491b30a40b2405849e597ba5fb5");

    b.clear();
    append_word(5);
    append_word(0);
    CHECK(hex32(keccak256(b)) ==
          "2b232c97452f0950c94e2539fdc7e69d21166113cf7a9bcb99b220a3fe5d720a");

    auto seven = word_to_bytes32(Word{7});
    Word h = keccak256_word(Bytes(seven.begin(), seven.end()));
    CHECK(word_to_hex(h) == "0xa66cc928b5edb82af9bd49922954155ab7b0942694bea4ce44661d9a8736c688");
}

TEST_CASE("value: structural equality and injective constructors")
{
    auto u = Value::unit();
    auto one = Value::from_word(1);
    auto two = Value::from_word(2);
    CHECK(u == Value::unit());
    CHECK(one == Value::from_word(1));
    CHECK(one != two);
    CHECK(u != one);

    auto h1 = Value::hash1(one);
    auto h1b = Value::hash1(one);
    auto h2 = Value::hash2(one, two);
    CHECK(h1 == h1b);
    CHECK(h1 != Value::hash1(two));
    CHECK(h1 != h2);
    CHECK(h2 != Value::hash2(two, one));
    CHECK(Value::hash1(h1) != h1);
}

TEST_CASE("value: equality is an equivalence relation on random trees")
{
    std::mt19937_64 rng{7};
    auto gen = [&rng](auto&& self, int depth) -> Value {
        int pick = depth <= 0 ? static_cast<int>(rng() % 2) : static_cast<int>(rng() % 4);
        switch (pick)
        {
        case 0:
            return Value::unit();
        case 1:
            return Value::from_word(Word{rng() % 5});
        case 2:
            return Value::hash1(self(self, depth - 1));
        default:
            return Value::hash2(self(self, depth - 1), self(self, depth - 1));
        }
    };
    for (int i = 0; i < 300; ++i)
    {
        Value a = gen(gen, 3);
        Value b = gen(gen, 3);
        Value c = gen(gen, 3);
        CHECK(a == a);
        CHECK((a == b) == (b == a));
        if (a == b && b == c)
            CHECK(a == c);
        // The ordering must be consistent with equality.
        CHECK(((a <=> b) == std::strong_ordering::equal) == (a == b));
    }
}

TEST_CASE("hashkey: embedding into values")
{
    auto s0 = HashKey::singleton(0);
    auto s5 = HashKey::singleton(5);
    CHECK(s0.to_value() == Value::from_word(0));
    CHECK(s5.to_value() == Value::from_word(5));

    auto p = HashKey::pair(s5, 9);
    CHECK(p.to_value() == Value::hash2(Value::from_word(5), Value::from_word(9)));

    auto pp = HashKey::pair(p, 2);
    CHECK(pp.to_value() ==
          Value::hash2(Value::hash2(Value::from_word(5), Value::from_word(9)),
                       Value::from_word(2)));
}

TEST_CASE("hashkey: syntactic injectivity")
{
    std::mt19937_64 rng{11};
    auto gen = [&rng](auto&& self, int depth) -> HashKey {
        if (depth <= 0 || rng() % 3 == 0)
            return HashKey::singleton(Word{rng() % 4});
        return HashKey::pair(self(self, depth - 1), Word{rng() % 4});
    };
    for (int i = 0; i < 500; ++i)
    {
        HashKey a = gen(gen, 4);
        HashKey b = gen(gen, 4);
        CHECK((a == b) == (a.to_value() == b.to_value()));
    }
}

TEST_CASE("extended identifiers: roots and printing")
{
    auto g = ExtIdent::global("balances");
    auto l = ExtIdent::local("x");
    auto gi = ExtIdent::index(g, 3);
    auto gif = ExtIdent::field(gi, "owner");
    CHECK(g.is_root());
    CHECK(!gif.is_root());
    CHECK(gif.root() == g);
    CHECK(g.str() == "@balances");
    CHECK(l.str() == "%x");
    CHECK(gif.str() == "@balances[3].owner");
}

static Layout token_layout()
{
    Layout lo;
    auto entry = Type::make_struct(
        "entry", {{"owner", Type::make_address()}, {"count", Type::make_int()},
                  {"flag", Type::make_bool()}});
    lo.composites["entry"] = entry;
    lo.globals.push_back({"balances", Type::make_hashmap(Type::make_address(), Type::make_int()),
                          Word{0}});
    lo.globals.push_back({"total", Type::make_int(), Word{1}});
    lo.globals.push_back({"records", Type::make_array(Type::make_comp_ptr("entry"), 10),
                          Word{2}});
    return lo;
}

TEST_CASE("eid_to_hashkey: roots and index steps")
{
    Layout lo = token_layout();

    auto g = ExtIdent::global("balances");
    CHECK(eid_to_hashkey(g, lo) == HashKey::singleton(0));

    Word k = word_parse("0x1234");
    auto gk = ExtIdent::index(g, k);
    CHECK(eid_to_hashkey(gk, lo) == HashKey::pair(HashKey::singleton(0), k));

    CHECK(eid_to_hashkey(ExtIdent::global("total"), lo) == HashKey::singleton(1));
}

TEST_CASE("eid_to_hashkey: field steps use the field ordinal")
{
    Layout lo = token_layout();
    auto path = ExtIdent::field(ExtIdent::index(ExtIdent::global("records"), 0), "flag");
    // flag is the third field of entry, ordinal 2.
    CHECK(eid_to_hashkey(path, lo) ==
          HashKey::pair(HashKey::pair(HashKey::singleton(2), 0), 2));

    auto owner = ExtIdent::field(ExtIdent::index(ExtIdent::global("records"), 7), "owner");
    CHECK(eid_to_hashkey(owner, lo) ==
          HashKey::pair(HashKey::pair(HashKey::singleton(2), 7), 0));
}

TEST_CASE("eid_to_hashkey: error cases")
{
    Layout lo = token_layout();
    CHECK_THROWS_WITH_AS((void)eid_to_hashkey(ExtIdent::local("x"), lo),
                         doctest::Contains("LocalRoot"), Error);
    CHECK_THROWS_WITH_AS((void)eid_to_hashkey(ExtIdent::global("nope"), lo),
                         doctest::Contains("UnknownIdent"), Error);
    // records has length 10.
    CHECK_THROWS_WITH_AS(
        (void)eid_to_hashkey(ExtIdent::index(ExtIdent::global("records"), 10), lo),
        doctest::Contains("TypeMismatch"), Error);
    CHECK_THROWS_WITH_AS(
        (void)eid_to_hashkey(ExtIdent::field(ExtIdent::global("balances"), "owner"), lo),
        doctest::Contains("TypeMismatch"), Error);
}

namespace
{
// Recomputes the expected hash key by flattening the path into a
// root-first step list and folding, independently of the recursion
// in the implementation under test.
HashKey oracle_hashkey(const ExtIdent& path, const Layout& lo)
{
    std::vector<const ExtIdent*> steps;
    const ExtIdent* p = &path;
    while (!p->is_root())
    {
        steps.push_back(p);
        p = &p->base();
    }
    const GlobalVar* g = lo.find_global(p->name());
    REQUIRE(g != nullptr);
    HashKey key = HashKey::singleton(g->slot);
    TypePtr ty = g->type;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it)
    {
        if (ty->kind == Type::Kind::comp_ptr)
            ty = lo.composites.at(ty->name);
        if ((*it)->kind() == ExtIdent::Kind::index)
        {
            key = HashKey::pair(key, (*it)->idx());
            ty = ty->elem;
        }
        else
        {
            int ord = ty->field_ordinal((*it)->name());
            REQUIRE(ord >= 0);
            key = HashKey::pair(key, Word{static_cast<unsigned>(ord)});
            ty = ty->fields[static_cast<size_t>(ord)].type;
        }
    }
    return key;
}

ExtIdent random_path(std::mt19937_64& rng)
{
    // Pick a global and extend it with type-correct steps.
    switch (rng() % 3)
    {
    case 0:
    {
        auto g = ExtIdent::global("balances");
        if (rng() % 2)
            return ExtIdent::index(g, Word{rng() % 1000});
        return g;
    }
    case 1:
        return ExtIdent::global("total");
    default:
    {
        auto g = ExtIdent::global("records");
        if (rng() % 3 == 0)
            return g;
        auto gi = ExtIdent::index(g, Word{rng() % 10});
        if (rng() % 3 == 0)
            return gi;
        const char* fields[] = {"owner", "count", "flag"};
        return ExtIdent::field(gi, fields[rng() % 3]);
    }
    }
}
}  // namespace

TEST_CASE("eid_to_hashkey: agrees with fold oracle and is injective")
{
    Layout lo = token_layout();
    std::mt19937_64 rng{23};
    std::vector<std::pair<ExtIdent, HashKey>> seen;
    for (int i = 0; i < 400; ++i)
    {
        ExtIdent p = random_path(rng);
        HashKey k = eid_to_hashkey(p, lo);
        CHECK(k == oracle_hashkey(p, lo));
        for (const auto& [q, kq] : seen)
            if (!(q == p))
                CHECK(!(kq == k));
        if (seen.size() < 60)
            seen.emplace_back(p, k);
    }
}

TEST_CASE("memory: write read identity and zero defaults")
{
    Memory m;
    auto word_t = Type::make_int();
    auto l = LValue::eid(ExtIdent::local("x"));
    CHECK(m.read(l, word_t) == Value::from_word(0));
    m.write(l, Value::from_word(7));
    CHECK(m.read(l, word_t) == Value::from_word(7));
    m.write(l, Value::from_word(2));
    CHECK(m.read(l, word_t) == Value::from_word(2));

    auto k = HashKey::pair(HashKey::singleton(0), 4);
    CHECK(m.sread(k, word_t) == Value::from_word(0));
    m.swrite(k, Value::from_word(5));
    CHECK(m.sread(k, word_t) == Value::from_word(5));
}

TEST_CASE("memory: distinct keys are independent")
{
    Memory m;
    auto word_t = Type::make_int();
    auto a = LValue::eid(ExtIdent::global("a"));
    auto a0 = LValue::eid(ExtIdent::index(ExtIdent::global("a"), 0));
    m.write(a, Value::from_word(1));
    m.write(a0, Value::from_word(2));
    CHECK(m.read(a, word_t) == Value::from_word(1));
    CHECK(m.read(a0, word_t) == Value::from_word(2));

    m.swrite(HashKey::singleton(3), Value::from_word(9));
    CHECK(m.sread(HashKey::pair(HashKey::singleton(3), 0), word_t) == Value::from_word(0));
}

TEST_CASE("memory: shape mismatches are reported")
{
    Memory m;
    auto l = LValue::hash1(9);
    m.write(l, Value::unit());
    CHECK_THROWS_WITH_AS((void)m.read(l, Type::make_int()), doctest::Contains("TypeMismatch"),
                         Error);
    m.write(l, Value::from_word(1));
    CHECK_THROWS_WITH_AS((void)m.read(l, Type::make_void()), doctest::Contains("TypeMismatch"),
                         Error);
}

TEST_CASE("machine env: transfer moves balance atomically")
{
    MachineEnv env;
    env.self_address = 0xaa;
    env.balances[0xaa] = 100;
    env.balances[0xbb] = 5;

    CHECK(env.do_transfer(0xbb, 30));
    CHECK(env.balance_of(0xaa) == 70);
    CHECK(env.balance_of(0xbb) == 35);

    CHECK(!env.do_transfer(0xbb, 71));
    CHECK(env.balance_of(0xaa) == 70);
    CHECK(env.balance_of(0xbb) == 35);
}

TEST_CASE("types: structural equality and field lookup")
{
    auto s1 = Type::make_struct("s", {{"a", Type::make_int()}, {"b", Type::make_bool()}});
    auto s2 = Type::make_struct("s", {{"a", Type::make_int()}, {"b", Type::make_bool()}});
    CHECK(type_equal(s1, s2));
    CHECK(s1->field_ordinal("b") == 1);
    CHECK(s1->field_ordinal("z") == -1);
    CHECK_THROWS_AS((void)Type::make_struct("bad", {{"a", Type::make_int()},
                                                    {"a", Type::make_int()}}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)Type::make_array(Type::make_int(), -1), std::invalid_argument);
    CHECK(!type_equal(Type::make_int(), Type::make_void()));
    CHECK(type_equal(Type::make_hashmap(Type::make_int(), Type::make_int()),
                     Type::make_hashmap(Type::make_int(), Type::make_int())));
}
