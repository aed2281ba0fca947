// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minicc/errors.hpp"
#include "minicc/evm_assemble.hpp"
#include "minicc/evm_interp.hpp"
#include "minicc/evm_opcodes.hpp"
#include "minicc/gas.hpp"
#include "minicc/keccak.hpp"

#include <random>

using namespace minicc;

namespace
{
Bytes bytes_of(std::initializer_list<int> xs)
{
    Bytes b;
    for (int x : xs)
        b.push_back(static_cast<uint8_t>(x));
    return b;
}

ConstantCtx plain_ctx(Bytes code)
{
    return ConstantCtx::make(std::move(code), 0xc0ffee, 0xca11e4, 0, {}, 0);
}

VariableCtx fresh_ctx(int64_t gas)
{
    VariableCtx v;
    v.gas_remaining = gas;
    return v;
}

/// Runs bytecode from an empty machine and returns the terminal result.
InstructionResult run_code(const Bytes& code, int64_t gas,
                           std::vector<Word> stack = {})
{
    ConstantCtx c = plain_ctx(code);
    VariableCtx v = fresh_ctx(gas);
    v.stack = std::move(stack);
    return execute_code(c, std::move(v));
}

ExStmt st_push(Word v)
{
    ExStmt s;
    s.kind = ExStmt::Kind::push;
    s.push = PushArg::of_value(Value::from_word(std::move(v)));
    return s;
}

ExStmt st_push_label(const Label& l)
{
    ExStmt s;
    s.kind = ExStmt::Kind::push;
    s.push = PushArg::of_label(l);
    return s;
}

ExStmt st_kind(ExStmt::Kind k)
{
    ExStmt s;
    s.kind = k;
    return s;
}

ExStmt st_label(const Label& l)
{
    ExStmt s;
    s.kind = ExStmt::Kind::label;
    s.label = l;
    return s;
}

ExStmt st_done(FunctionKind fk, bool returns_value)
{
    ExStmt s;
    s.kind = ExStmt::Kind::done;
    s.fn_kind = fk;
    s.returns_value = returns_value;
    return s;
}

ExStmt st_cdl(int n)
{
    ExStmt s;
    s.kind = ExStmt::Kind::constructordataload;
    s.n = n;
    return s;
}
}  // namespace

TEST_CASE("opcodes: names round trip")
{
    for (int b = 0; b < 256; ++b)
    {
        auto byte = static_cast<uint8_t>(b);
        if (!op_known(byte))
            continue;
        auto back = op_from_name(op_name(byte));
        REQUIRE(back.has_value());
        CHECK(*back == byte);
    }
    CHECK(op_name(0x60) == "PUSH1");
    CHECK(op_name(0x7f) == "PUSH32");
    CHECK(op_name(0x8f) == "DUP16");
    CHECK(op_name(0x91) == "SWAP2");
    CHECK(op_name(0xa0) == "LOG0");
    CHECK(op_name(0xfe) == "INVALID");
    CHECK(!op_from_name("PUSH33").has_value());
    CHECK(!op_from_name("DUP0").has_value());
    CHECK(!op_from_name("NOPE").has_value());
}

TEST_CASE("opcodes: instruction sizes")
{
    CHECK(inst_size(static_cast<uint8_t>(Op::ADD)) == 1);
    CHECK(inst_size(0x60) == 2);
    CHECK(inst_size(0x7f) == 33);
    CHECK(inst_size(static_cast<uint8_t>(Op::JUMPDEST)) == 1);
}

TEST_CASE("disassemble: decodes pushes and positions")
{
    Bytes code = bytes_of({0x60, 0x05, 0x61, 0x01, 0x02, 0x01, 0x00});
    auto insts = disassemble(code);
    REQUIRE(insts.size() == 4);
    CHECK(insts[0].str() == "PUSH1 0x5");
    CHECK(insts[1].pos == 2);
    CHECK(insts[1].immediate_word() == 0x0102);
    CHECK(insts[2].str() == "ADD");
    CHECK(insts[3].str() == "STOP");
}

TEST_CASE("disassemble: truncated push keeps remaining bytes")
{
    Bytes code = bytes_of({0x61, 0xab});
    auto insts = disassemble(code);
    REQUIRE(insts.size() == 1);
    CHECK(insts[0].immediate.size() == 1);
    // The byte past the end of code reads as zero.
    CHECK(insts[0].immediate_word() == 0xab00);
    CHECK(reassemble(insts) == code);
}

TEST_CASE("disassemble then reassemble is the identity on arbitrary bytes")
{
    std::mt19937_64 rng(20260823);
    for (int trial = 0; trial < 200; ++trial)
    {
        Bytes code;
        auto len = static_cast<size_t>(rng() % 400);
        for (size_t i = 0; i < len; ++i)
            code.push_back(static_cast<uint8_t>(rng()));
        CHECK(reassemble(disassemble(code)) == code);
    }
}

TEST_CASE("code_from_counter: decodes at offsets, STOP past the end")
{
    ConstantCtx c = plain_ctx(bytes_of({0x60, 0x07, 0x01}));
    CHECK(code_from_counter(c, 0).str() == "PUSH1 0x7");
    CHECK(code_from_counter(c, 2).str() == "ADD");
    CHECK(code_from_counter(c, 3).op == static_cast<uint8_t>(Op::STOP));
    CHECK(code_from_counter(c, 999).op == static_cast<uint8_t>(Op::STOP));
}

TEST_CASE("meter_gas: fee table spot checks")
{
    VariableCtx v = fresh_ctx(1000);
    Inst add;
    add.op = static_cast<uint8_t>(Op::ADD);
    CHECK(meter_gas(add, v) == 3);

    Inst jd;
    jd.op = static_cast<uint8_t>(Op::JUMPDEST);
    CHECK(meter_gas(jd, v) == 1);

    Inst mul;
    mul.op = static_cast<uint8_t>(Op::MUL);
    CHECK(meter_gas(mul, v) == 5);

    Inst sstore;
    sstore.op = static_cast<uint8_t>(Op::SSTORE);
    v.stack = {Word(1), Word(0)};  // value 1 below key 0
    CHECK(meter_gas(sstore, v) == 20000);
    v.storage[0] = 9;
    CHECK(meter_gas(sstore, v) == 5000);
    v.stack = {Word(0), Word(0)};  // zeroing an occupied slot
    CHECK(meter_gas(sstore, v) == 5000);
}

TEST_CASE("meter_gas: memory expansion charged on first touch")
{
    VariableCtx v = fresh_ctx(1000);
    Inst mstore;
    mstore.op = static_cast<uint8_t>(Op::MSTORE);
    v.stack = {Word(5), Word(0)};  // value below offset
    CHECK(meter_gas(mstore, v) == 3 + 3);  // one fresh word
    v.memory.assign(32, 0);
    CHECK(meter_gas(mstore, v) == 3);  // already covered
    v.stack = {Word(5), Word(32)};
    CHECK(meter_gas(mstore, v) == 3 + 3);  // second word
}

TEST_CASE("instruction_sem: ADD consumes 3 gas and folds the stack")
{
    ConstantCtx c = plain_ctx(bytes_of({0x01}));
    VariableCtx v = fresh_ctx(100);
    v.stack = {Word(3), Word(2)};
    Inst add;
    add.op = static_cast<uint8_t>(Op::ADD);
    auto r = instruction_sem(c, std::move(v), add);
    REQUIRE(r.running());
    CHECK(r.ctx.stack == std::vector<Word>{Word(5)});
    CHECK(r.ctx.gas_remaining == 97);
    CHECK(r.ctx.pc == 1);
}

TEST_CASE("instruction_sem: insufficient gas becomes out-of-gas action")
{
    ConstantCtx c = plain_ctx(bytes_of({0x01}));
    VariableCtx v = fresh_ctx(2);
    v.stack = {Word(3), Word(2)};
    Inst add;
    add.op = static_cast<uint8_t>(Op::ADD);
    auto r = instruction_sem(c, std::move(v), add);
    REQUIRE(!r.running());
    CHECK(r.action == ContractAction::out_of_gas);
    CHECK(r.ctx.gas_remaining == 0);
}

TEST_CASE("instruction_sem: stack underflow and overflow are actions")
{
    ConstantCtx c = plain_ctx(bytes_of({0x01}));
    Inst add;
    add.op = static_cast<uint8_t>(Op::ADD);
    auto r = instruction_sem(c, fresh_ctx(100), add);
    CHECK(r.action == ContractAction::stack_underflow);

    VariableCtx v = fresh_ctx(100000);
    v.stack.assign(k_stack_limit, Word(1));
    Inst push;
    push.op = 0x60;
    push.immediate = {0x01};
    auto r2 = instruction_sem(c, std::move(v), push);
    CHECK(r2.action == ContractAction::stack_overflow);
}

TEST_CASE("instruction_sem: unknown opcode fails and drains gas")
{
    ConstantCtx c = plain_ctx(bytes_of({0xfe}));
    Inst bad;
    bad.op = 0xfe;
    auto r = instruction_sem(c, fresh_ctx(50), bad);
    CHECK(r.action == ContractAction::invalid_op);
    CHECK(r.ctx.gas_remaining == 0);
}

TEST_CASE("program_sem: fuel zero returns the input unchanged")
{
    ConstantCtx c = plain_ctx(bytes_of({0x60, 0x01, 0x00}));
    auto r0 = InstructionResult::cont(fresh_ctx(100));
    auto r = program_sem(c, 0, std::move(r0));
    CHECK(r.running());
    CHECK(r.ctx.pc == 0);
    CHECK(r.ctx.gas_remaining == 100);
}

TEST_CASE("program_sem: PUSH then STOP halts after two steps")
{
    ConstantCtx c = plain_ctx(bytes_of({0x60, 0x01, 0x00}));
    auto r = program_sem(c, 10, InstructionResult::cont(fresh_ctx(100)));
    REQUIRE(!r.running());
    CHECK(r.action == ContractAction::stop);
    CHECK(r.ctx.stack == std::vector<Word>{Word(1)});
    CHECK(r.ctx.gas_remaining == 97);
}

TEST_CASE("program_sem: a jump loop is bounded by fuel, then by gas")
{
    // 0: JUMPDEST, 1: PUSH1 0, 3: JUMP
    Bytes loop = bytes_of({0x5b, 0x60, 0x00, 0x56});
    ConstantCtx c = plain_ctx(loop);

    auto pending = program_sem(c, 30, InstructionResult::cont(fresh_ctx(1000000)));
    CHECK(pending.running());

    auto exhausted = execute_code(c, fresh_ctx(500));
    REQUIRE(!exhausted.running());
    CHECK(exhausted.action == ContractAction::out_of_gas);
    CHECK(exhausted.ctx.gas_remaining == 0);
}

TEST_CASE("gas never increases across steps")
{
    Bytes code = bytes_of({0x60, 0x2a, 0x60, 0x00, 0x52, 0x60, 0x20,
                           0x60, 0x00, 0x20, 0x50, 0x00});
    ConstantCtx c = plain_ctx(code);
    auto r = InstructionResult::cont(fresh_ctx(10000));
    int64_t last = 10000;
    while (r.running())
    {
        r = program_sem(c, 1, std::move(r));
        CHECK(r.ctx.gas_remaining <= last);
        last = r.ctx.gas_remaining;
    }
    CHECK(r.action == ContractAction::stop);
}

TEST_CASE("jump validation: only JUMPDEST targets are legal")
{
    // 0: PUSH1 4, 2: JUMP, 3: STOP, 4: JUMPDEST, 5: STOP
    Bytes ok = bytes_of({0x60, 0x04, 0x56, 0x00, 0x5b, 0x00});
    auto r = run_code(ok, 100);
    CHECK(r.action == ContractAction::stop);
    CHECK(r.ctx.gas_remaining == 100 - 3 - 8 - 1);

    // Jump into push payload: offset 1 is not a JUMPDEST.
    Bytes bad = bytes_of({0x60, 0x5b, 0x60, 0x01, 0x56});
    auto r2 = run_code(bad, 100);
    CHECK(r2.action == ContractAction::bad_jump);
    CHECK(r2.ctx.gas_remaining == 0);
}

TEST_CASE("jumpi: takes the branch only on a nonzero condition")
{
    // 0: PUSH1 1, 2: PUSH1 7, 4: JUMPI, 5: STOP, 6: INVALID, 7: JUMPDEST, 8: STOP
    Bytes taken = bytes_of({0x60, 0x01, 0x60, 0x07, 0x57, 0x00, 0xfe, 0x5b, 0x00});
    auto r = run_code(taken, 100);
    CHECK(r.action == ContractAction::stop);
    CHECK(r.ctx.pc == 8);

    Bytes skipped = bytes_of({0x60, 0x00, 0x60, 0x07, 0x57, 0x00, 0xfe, 0x5b, 0x00});
    auto r2 = run_code(skipped, 100);
    CHECK(r2.action == ContractAction::stop);
    CHECK(r2.ctx.pc == 5);
}

TEST_CASE("memory: MSTORE then MLOAD round-trips a word")
{
    // PUSH1 42; PUSH1 0; MSTORE; PUSH1 0; MLOAD; STOP
    Bytes code = bytes_of({0x60, 0x2a, 0x60, 0x00, 0x52, 0x60, 0x00, 0x51, 0x00});
    auto r = run_code(code, 1000);
    REQUIRE(r.action == ContractAction::stop);
    REQUIRE(r.ctx.stack.size() == 1);
    CHECK(r.ctx.stack[0] == 42);
    CHECK(r.ctx.memory.size() == 32);
    // 3+3 + (3 + 3 expansion) + 3 + 3 MLOAD (no growth) = 18
    CHECK(r.ctx.gas_remaining == 1000 - 18);
}

TEST_CASE("sha3: hashes the memory slice")
{
    // PUSH1 7; PUSH1 0; MSTORE; PUSH1 32; PUSH1 0; SHA3; STOP
    Bytes code = bytes_of({0x60, 0x07, 0x60, 0x00, 0x52, 0x60, 0x20,
                           0x60, 0x00, 0x20, 0x00});
    auto r = run_code(code, 1000);
    REQUIRE(r.action == ContractAction::stop);
    REQUIRE(r.ctx.stack.size() == 1);
    CHECK(word_to_hex(r.ctx.stack[0]) ==
          "0xa66cc928b5edb82af9bd49922954155ab7b0942694bea4ce44661d9a8736c688");
    // 3+3+(3+3) + 3+3 + (30+6) = 54
    CHECK(r.ctx.gas_remaining == 1000 - 54);
}

TEST_CASE("calldataload: right-pads past the end of calldata")
{
    Bytes calldata = bytes_of({0xa9, 0x05, 0x9c, 0xbb});
    ConstantCtx c = ConstantCtx::make(bytes_of({0x60, 0x00, 0x35, 0x00}), 1, 2, 0,
                                      calldata, 0);
    auto r = execute_code(c, fresh_ctx(100));
    REQUIRE(r.action == ContractAction::stop);
    REQUIRE(r.ctx.stack.size() == 1);
    CHECK(r.ctx.stack[0] == (Word(0xa9059cbb) << 224));
}

TEST_CASE("environment opcodes read the constant context")
{
    // ADDRESS; CALLER; CALLVALUE; NUMBER; CALLDATASIZE; STOP
    Bytes code = bytes_of({0x30, 0x33, 0x34, 0x43, 0x36, 0x00});
    ConstantCtx c = ConstantCtx::make(code, 0xaa, 0xbb, 7, bytes_of({1, 2, 3}), 99);
    auto r = execute_code(c, fresh_ctx(100));
    REQUIRE(r.action == ContractAction::stop);
    REQUIRE(r.ctx.stack.size() == 5);
    CHECK(r.ctx.stack[0] == 0xaa);
    CHECK(r.ctx.stack[1] == 0xbb);
    CHECK(r.ctx.stack[2] == 7);
    CHECK(r.ctx.stack[3] == 99);
    CHECK(r.ctx.stack[4] == 3);
}

TEST_CASE("storage: SSTORE normalizes zeros away, SLOAD defaults to zero")
{
    // PUSH1 5; PUSH1 1; SSTORE; PUSH1 1; SLOAD; PUSH1 0; PUSH1 1; SSTORE;
    // PUSH1 9; SLOAD; STOP
    Bytes code = bytes_of({0x60, 0x05, 0x60, 0x01, 0x55, 0x60, 0x01, 0x54,
                           0x60, 0x00, 0x60, 0x01, 0x55, 0x60, 0x09, 0x54, 0x00});
    auto r = run_code(code, 100000);
    REQUIRE(r.action == ContractAction::stop);
    REQUIRE(r.ctx.stack.size() == 2);
    CHECK(r.ctx.stack[0] == 5);
    CHECK(r.ctx.stack[1] == 0);
    CHECK(r.ctx.storage.empty());
    // 3+3+20000 + 3+200 + 3+3+5000 + 3+200 = 25418
    CHECK(r.ctx.gas_remaining == 100000 - 25418);
}

TEST_CASE("balance and call: value moves atomically inside the run")
{
    // Stack for CALL: push retLen, retOff, argsLen, argsOff, value, to, gas.
    Bytes code = bytes_of({0x60, 0x00, 0x60, 0x00, 0x60, 0x00, 0x60, 0x00,
                           0x60, 0x05, 0x60, 0x99, 0x61, 0x08, 0xfc, 0xf1,
                           0x60, 0x99, 0x31, 0x00});
    ConstantCtx c = plain_ctx(code);
    VariableCtx v = fresh_ctx(100000);
    v.balances[0xc0ffee] = 12;
    auto r = execute_code(c, std::move(v));
    REQUIRE(r.action == ContractAction::stop);
    REQUIRE(r.ctx.stack.size() == 2);
    CHECK(r.ctx.stack[0] == 1);  // call success flag
    CHECK(r.ctx.stack[1] == 5);  // BALANCE of the target
    CHECK(r.ctx.balances.at(0xc0ffee) == 7);
    // 6 pushes + PUSH2 = 21, CALL = 700+9000, PUSH1 3, BALANCE 400
    CHECK(r.ctx.gas_remaining == 100000 - (21 + 9700 + 3 + 400));
}

TEST_CASE("call: insufficient balance pushes zero but still charges")
{
    Bytes code = bytes_of({0x60, 0x00, 0x60, 0x00, 0x60, 0x00, 0x60, 0x00,
                           0x60, 0x05, 0x60, 0x99, 0x61, 0x08, 0xfc, 0xf1, 0x00});
    ConstantCtx c = plain_ctx(code);
    VariableCtx v = fresh_ctx(100000);
    v.balances[0xc0ffee] = 3;
    auto r = execute_code(c, std::move(v));
    REQUIRE(r.action == ContractAction::stop);
    CHECK(r.ctx.stack == std::vector<Word>{Word(0)});
    CHECK(r.ctx.balances.at(0xc0ffee) == 3);
    CHECK(r.ctx.balances.count(0x99) == 0);
    CHECK(r.ctx.gas_remaining == 100000 - (21 + 9700));
}

TEST_CASE("log: topics and data are captured in order")
{
    // PUSH1 7; PUSH1 0; MSTORE; PUSH1 11 (topic); PUSH1 32 (len);
    // PUSH1 0 (off); LOG1; STOP
    Bytes code = bytes_of({0x60, 0x07, 0x60, 0x00, 0x52, 0x60, 0x0b,
                           0x60, 0x20, 0x60, 0x00, 0xa1, 0x00});
    auto r = run_code(code, 10000);
    REQUIRE(r.action == ContractAction::stop);
    REQUIRE(r.ctx.logs.size() == 1);
    CHECK(r.ctx.logs[0].topics == std::vector<Word>{Word(11)});
    Bytes32 seven = word_to_bytes32(7);
    CHECK(r.ctx.logs[0].data == Bytes(seven.begin(), seven.end()));
    // 3+3+(3+3) + 3+3+3 + (375+375+8*32) = 1027
    CHECK(r.ctx.gas_remaining == 10000 - 1027);
}

TEST_CASE("codecopy: copies code with zero padding")
{
    // PUSH1 8 (len); PUSH1 2 (src); PUSH1 0 (dest); CODECOPY; PUSH1 0; MLOAD; STOP
    Bytes code = bytes_of({0x60, 0x08, 0x60, 0x02, 0x60, 0x00, 0x39,
                           0x60, 0x00, 0x51, 0x00});
    auto r = run_code(code, 1000);
    REQUIRE(r.action == ContractAction::stop);
    REQUIRE(r.ctx.stack.size() == 1);
    // Bytes 2..9 of the code are 60 02 60 00 39 60 00 51; placed at the
    // top of the loaded word.
    CHECK(word_to_hex(r.ctx.stack[0]) ==
          "0x6002600039600051000000000000000000000000000000000000000000000000");
}

TEST_CASE("revert: returns payload and marks the revert action")
{
    // PUSH1 5; PUSH1 0; MSTORE; PUSH1 32; PUSH1 0; REVERT
    Bytes code = bytes_of({0x60, 0x05, 0x60, 0x00, 0x52, 0x60, 0x20,
                           0x60, 0x00, 0xfd});
    auto r = run_code(code, 1000);
    REQUIRE(!r.running());
    CHECK(r.action == ContractAction::revert);
    CHECK(action_is_failure(r.action) == false);
    CHECK(r.output.size() == 32);
    CHECK(r.output[31] == 5);
    // 3+3 + (3+3 expansion) + 3+3 + 0 = 18
    CHECK(r.ctx.gas_remaining == 1000 - 18);
}

TEST_CASE("run_transaction: success commits storage and charges exactly")
{
    // Counter: PUSH1 0; SLOAD; PUSH1 1; ADD; PUSH1 0; SSTORE; STOP
    Bytes counter = bytes_of({0x60, 0x00, 0x54, 0x60, 0x01, 0x01,
                              0x60, 0x00, 0x55, 0x00});
    World w;
    w.account(0xabc).code = counter;
    w.account(0x11).balance = 1000;

    TxRequest tx;
    tx.from = 0x11;
    tx.to = Word(0xabc);
    tx.gas_limit = 50000;
    auto rc1 = run_transaction(w, tx);
    CHECK(rc1.success);
    CHECK(rc1.status == "success");
    CHECK(rc1.gas_used == 3 + 200 + 3 + 3 + 3 + 20000);
    CHECK(w.account(0xabc).storage.at(0) == 1);

    auto rc2 = run_transaction(w, tx);
    CHECK(rc2.success);
    CHECK(rc2.gas_used == 3 + 200 + 3 + 3 + 3 + 5000);
    CHECK(w.account(0xabc).storage.at(0) == 2);
}

TEST_CASE("run_transaction: revert leaves the world untouched")
{
    // PUSH1 5; PUSH1 0; SSTORE; PUSH1 0; PUSH1 0; REVERT
    Bytes code = bytes_of({0x60, 0x05, 0x60, 0x00, 0x55, 0x60, 0x00,
                           0x60, 0x00, 0xfd});
    World w;
    w.account(0xabc).code = code;
    w.account(0x11).balance = 50;

    TxRequest tx;
    tx.from = 0x11;
    tx.to = Word(0xabc);
    tx.value = 9;
    tx.gas_limit = 30000;
    auto rc = run_transaction(w, tx);
    CHECK(!rc.success);
    CHECK(rc.reverted);
    CHECK(rc.status == "revert");
    CHECK(rc.gas_used == 3 + 3 + 20000 + 3 + 3);
    CHECK(w.account(0xabc).storage.empty());
    CHECK(w.account(0x11).balance == 50);  // value transfer rolled back
    CHECK(w.account(0xabc).balance == 0);
    CHECK(rc.logs.empty());
}

TEST_CASE("run_transaction: out of gas consumes the whole limit")
{
    Bytes code = bytes_of({0x60, 0x05, 0x60, 0x00, 0x55, 0x00});
    World w;
    w.account(0xabc).code = code;

    TxRequest tx;
    tx.from = 0x11;
    tx.to = Word(0xabc);
    tx.gas_limit = 100;
    auto rc = run_transaction(w, tx);
    CHECK(!rc.success);
    CHECK(!rc.reverted);
    CHECK(rc.status == "out of gas");
    CHECK(rc.gas_used == 100);
    CHECK(w.account(0xabc).storage.empty());
}

TEST_CASE("run_transaction: unknown account and missing funds")
{
    World w;
    TxRequest tx;
    tx.from = 0x11;
    tx.to = Word(0x77);
    tx.gas_limit = 1000;
    CHECK_THROWS_WITH_AS((void)run_transaction(w, tx),
                         doctest::Contains("UnknownAccount"), Error);

    w.account(0x77).code = bytes_of({0x00});
    tx.value = 5;  // sender has nothing
    auto rc = run_transaction(w, tx);
    CHECK(!rc.success);
    CHECK(rc.status == "insufficient funds");
    CHECK(rc.gas_used == 0);
}

TEST_CASE("run_transaction: deployment installs the returned runtime")
{
    // Init: PUSH1 1 (len); PUSH1 12 (off); PUSH1 0; CODECOPY;
    //       PUSH1 1; PUSH1 0; RETURN; then 5 dead bytes; then runtime STOP.
    Bytes init = bytes_of({0x60, 0x01, 0x60, 0x0c, 0x60, 0x00, 0x39,
                           0x60, 0x01, 0x60, 0x00, 0xf3, 0x00});
    World w;
    w.account(0x42).balance = 100;

    TxRequest deploy;
    deploy.from = 0x42;
    deploy.gas_limit = 100000;
    deploy.data = init;
    auto rc = run_transaction(w, deploy);
    REQUIRE(rc.success);
    REQUIRE(rc.created.has_value());
    CHECK(*rc.created == contract_address(0x42, 0));
    CHECK(w.account(*rc.created).code == bytes_of({0x00}));

    // The deployed contract is callable; a second deploy lands elsewhere.
    TxRequest call;
    call.from = 0x42;
    call.to = rc.created;
    call.gas_limit = 100;
    auto rc2 = run_transaction(w, call);
    CHECK(rc2.success);
    CHECK(rc2.gas_used == 0);

    auto rc3 = run_transaction(w, deploy);
    REQUIRE(rc3.success);
    CHECK(*rc3.created == contract_address(0x42, 1));
    CHECK(*rc3.created != *rc.created);
}

TEST_CASE("run_transaction: call value lands in the target balance")
{
    Bytes code = bytes_of({0x00});
    World w;
    w.account(0xabc).code = code;
    w.account(0x11).balance = 30;

    TxRequest tx;
    tx.from = 0x11;
    tx.to = Word(0xabc);
    tx.value = 12;
    tx.gas_limit = 100;
    auto rc = run_transaction(w, tx);
    CHECK(rc.success);
    CHECK(w.account(0x11).balance == 18);
    CHECK(w.account(0xabc).balance == 12);
}

TEST_CASE("instruction_sem is total on random machine states")
{
    std::mt19937_64 rng(7);
    Bytes code = bytes_of({0x5b, 0x00});
    ConstantCtx c = plain_ctx(code);
    for (int trial = 0; trial < 3000; ++trial)
    {
        Inst inst;
        inst.op = static_cast<uint8_t>(rng());
        if (is_push(inst.op))
            for (int i = 0; i < push_size(inst.op); ++i)
                inst.immediate.push_back(static_cast<uint8_t>(rng()));
        VariableCtx v = fresh_ctx(static_cast<int64_t>(rng() % 1000));
        auto depth = static_cast<size_t>(rng() % 20);
        for (size_t i = 0; i < depth; ++i)
            v.stack.push_back(Word(rng() % 256));
        auto r = instruction_sem(c, std::move(v), inst);
        CHECK(r.ctx.gas_remaining >= 0);
        if (r.running())
            CHECK(r.ctx.stack.size() <= k_stack_limit);
    }
}

// ---------------------------------------------------------------------------
// Assembler

TEST_CASE("expand_stmt: push widths are minimal for values, fixed for labels")
{
    CodeLayout layout;
    auto img0 = expand_stmt(st_push(0), "x", layout);
    REQUIRE(img0.size() == 1);
    CHECK(img0[0].op == 0x60);
    CHECK(img0[0].imm == 0);

    auto img255 = expand_stmt(st_push(255), "x", layout);
    CHECK(img255[0].op == 0x60);
    auto img256 = expand_stmt(st_push(256), "x", layout);
    CHECK(img256[0].op == 0x61);
    auto img3 = expand_stmt(st_push(Word(1) << 16), "x", layout);
    CHECK(img3[0].op == 0x62);

    auto imgl = expand_stmt(st_push_label("somewhere"), "x", layout);
    REQUIRE(imgl.size() == 1);
    CHECK(imgl[0].op == 0x61);
    CHECK(imgl[0].label == "somewhere");
}

TEST_CASE("expand_stmt: single-instruction images")
{
    CodeLayout layout;
    auto check_single = [&](ExStmt s, Op expect) {
        auto img = expand_stmt(s, "x", layout);
        REQUIRE(img.size() == 1);
        CHECK(img[0].op == static_cast<uint8_t>(expect));
    };
    check_single(st_kind(ExStmt::Kind::sload), Op::SLOAD);
    check_single(st_kind(ExStmt::Kind::sstore), Op::SSTORE);
    check_single(st_kind(ExStmt::Kind::pop), Op::POP);
    check_single(st_kind(ExStmt::Kind::jump), Op::JUMP);
    check_single(st_kind(ExStmt::Kind::jumpi), Op::JUMPI);
    check_single(st_kind(ExStmt::Kind::calldataload), Op::CALLDATALOAD);

    ExStmt dup;
    dup.kind = ExStmt::Kind::dup;
    dup.n = 3;
    check_single(dup, static_cast<Op>(0x82));

    ExStmt swap;
    swap.kind = ExStmt::Kind::swap;
    swap.n = 1;
    check_single(swap, static_cast<Op>(0x90));

    CHECK(expand_stmt(st_kind(ExStmt::Kind::skip), "x", layout).empty());
}

TEST_CASE("expand_stmt: hash images stage operands through memory")
{
    CodeLayout layout;
    ExStmt h1;
    h1.kind = ExStmt::Kind::unop;
    h1.un = IrUnop::ohash1;
    auto img1 = expand_stmt(h1, "x", layout);
    REQUIRE(img1.size() == 5);
    CHECK(img1[1].op == static_cast<uint8_t>(Op::MSTORE));
    CHECK(img1[4].op == static_cast<uint8_t>(Op::SHA3));

    ExStmt h2;
    h2.kind = ExStmt::Kind::binop;
    h2.bin = IrBinop::ohash2;
    auto img2 = expand_stmt(h2, "x", layout);
    REQUIRE(img2.size() == 7);
    CHECK(img2[3].op == static_cast<uint8_t>(Op::MSTORE));
    CHECK(img2[6].op == static_cast<uint8_t>(Op::SHA3));
}

TEST_CASE("expand_stmt: done images per function kind")
{
    CodeLayout layout;
    layout.deploy_len = 10;
    layout.runtime_len = 20;
    layout.known = true;

    auto internal = expand_stmt(st_done(FunctionKind::internal, true), "x", layout);
    REQUIRE(internal.size() == 1);
    CHECK(internal[0].op == static_cast<uint8_t>(Op::JUMP));

    auto method_v = expand_stmt(st_done(FunctionKind::method, true), "x", layout);
    REQUIRE(method_v.size() == 5);
    CHECK(method_v[4].op == static_cast<uint8_t>(Op::RETURN));

    auto method_u = expand_stmt(st_done(FunctionKind::method, false), "x", layout);
    REQUIRE(method_u.size() == 1);
    CHECK(method_u[0].op == static_cast<uint8_t>(Op::STOP));

    auto ctor = expand_stmt(st_done(FunctionKind::constructor, false), "x", layout);
    REQUIRE(ctor.size() == 7);
    CHECK(ctor[0].imm == 20);
    CHECK(ctor[1].imm == 10);
    CHECK(ctor[3].op == static_cast<uint8_t>(Op::CODECOPY));
    CHECK(ctor[6].op == static_cast<uint8_t>(Op::RETURN));
}

TEST_CASE("expand_stmt: transfer image calls and branches to abort")
{
    CodeLayout layout;
    auto img = expand_stmt(st_kind(ExStmt::Kind::transfer), "abort_here", layout);
    REQUIRE(img.size() == 14);
    CHECK(img[7].op == static_cast<uint8_t>(Op::CALL));
    CHECK(img[12].label == "abort_here");
    CHECK(img[13].op == static_cast<uint8_t>(Op::JUMPI));
    int64_t total = 0;
    for (const auto& item : img)
        total += item.size();
    CHECK(total == 22);
}

TEST_CASE("expand_stmt: cross-contract calls are rejected")
{
    CodeLayout layout;
    CHECK_THROWS_WITH_AS(
        (void)expand_stmt(st_kind(ExStmt::Kind::callmethod), "x", layout),
        doctest::Contains("UnsupportedFeature"), Error);
}

TEST_CASE("assemble: jump program round-trips through the interpreter")
{
    MethodicalProgram prog;
    prog.name = "jumpy";
    prog.runtime_abort = "abort";
    prog.deploy_abort = "dabort";
    prog.runtime_code = {st_push_label("end"), st_kind(ExStmt::Kind::jump),
                         st_label("mid"), st_label("end"),
                         st_done(FunctionKind::method, false)};
    prog.deploy_code = {st_done(FunctionKind::constructor, false)};

    auto art = assemble(prog);
    CHECK(prog.code_layout.known);
    CHECK(prog.code_layout.runtime_len == 7);
    CHECK(prog.code_layout.deploy_len == 15);
    CHECK(art.runtime.code == bytes_of({0x61, 0x00, 0x05, 0x56, 0x5b, 0x5b, 0x00}));
    CHECK(art.runtime.label_offsets.at("mid") == 4);
    CHECK(art.runtime.label_offsets.at("end") == 5);
    CHECK(art.runtime.stmt_offsets ==
          std::vector<int64_t>{0, 3, 4, 5, 6, 7});
    CHECK(art.runtime.stmt_at(0) == 0);
    CHECK(art.runtime.stmt_at(2) == 0);
    CHECK(art.runtime.stmt_at(3) == 1);
    CHECK(art.runtime.stmt_at(6) == 4);
    CHECK(art.runtime.stmt_at(7) == -1);

    auto r = run_code(art.runtime.code, 100);
    CHECK(r.action == ContractAction::stop);
    CHECK(r.ctx.gas_remaining == 100 - (3 + 8 + 1 + 0));

    // Deploying the init image installs exactly the runtime bytes.
    World w;
    w.account(0x9).balance = 0;
    TxRequest deploy;
    deploy.from = 0x9;
    deploy.gas_limit = 100000;
    deploy.data = art.init_code();
    auto rc = run_transaction(w, deploy);
    REQUIRE(rc.success);
    CHECK(rc.gas_used == 24);
    CHECK(w.account(*rc.created).code == art.runtime.code);
}

TEST_CASE("assemble: constructor args come from the tail of the init code")
{
    MethodicalProgram prog;
    prog.name = "ctorarg";
    prog.runtime_abort = "abort";
    prog.deploy_abort = "dabort";
    prog.ctor_args = 1;
    prog.runtime_code = {st_label("e"), st_done(FunctionKind::method, false)};
    prog.deploy_code = {st_cdl(0), st_push(0), st_kind(ExStmt::Kind::sstore),
                        st_done(FunctionKind::constructor, false)};

    auto art = assemble(prog);
    CHECK(art.layout.deploy_len == 29);
    CHECK(art.layout.runtime_len == 2);

    World w;
    TxRequest deploy;
    deploy.from = 0x5;
    deploy.gas_limit = 200000;
    deploy.data = art.init_code();
    Bytes32 arg = word_to_bytes32(42);
    deploy.data.insert(deploy.data.end(), arg.begin(), arg.end());
    auto rc = run_transaction(w, deploy);
    REQUIRE(rc.success);
    CHECK(w.account(*rc.created).storage.at(0) == 42);
    CHECK(w.account(*rc.created).code == art.runtime.code);
}

TEST_CASE("assemble: duplicate and missing labels are rejected")
{
    MethodicalProgram dup;
    dup.runtime_abort = "a";
    dup.deploy_abort = "b";
    dup.runtime_code = {st_label("x"), st_label("x"),
                        st_done(FunctionKind::method, false)};
    dup.deploy_code = {st_done(FunctionKind::constructor, false)};
    CHECK_THROWS_WITH_AS((void)assemble(dup), doctest::Contains("DuplicateLabel"),
                         Error);

    MethodicalProgram missing;
    missing.runtime_abort = "a";
    missing.deploy_abort = "b";
    missing.runtime_code = {st_push_label("nowhere"), st_kind(ExStmt::Kind::jump)};
    missing.deploy_code = {st_done(FunctionKind::constructor, false)};
    CHECK_THROWS_WITH_AS((void)assemble(missing), doctest::Contains("UnknownLabel"),
                         Error);
}

TEST_CASE("assemble: images beyond PUSH2 addressing are rejected")
{
    MethodicalProgram prog;
    prog.runtime_abort = "a";
    prog.deploy_abort = "b";
    for (int i = 0; i < 23000; ++i)
        prog.runtime_code.push_back(st_push(Word(1) << 16));  // 4 bytes each
    prog.runtime_code.push_back(st_done(FunctionKind::method, false));
    prog.deploy_code = {st_done(FunctionKind::constructor, false)};
    CHECK_THROWS_WITH_AS((void)assemble(prog), doctest::Contains("ImmediateTooWide"),
                         Error);
}

TEST_CASE("format_listing: offsets and mnemonics")
{
    Bytes code = bytes_of({0x60, 0x2a, 0x00});
    auto listing = format_listing(disassemble(code));
    CHECK(listing == "0000: PUSH1 0x2a\n0002: STOP\n");
}
