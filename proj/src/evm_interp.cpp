// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "minicc/evm_interp.hpp"

#include "minicc/errors.hpp"
#include "minicc/gas.hpp"
#include "minicc/keccak.hpp"

#include <algorithm>

namespace minicc
{
namespace
{
constexpr int64_t k_mem_hard_cap = int64_t(1) << 40;  // bytes; beyond this, cost is infinite
constexpr int64_t k_infinite = INT64_MAX;

Word mask160()
{
    return (Word(1) << 160) - 1;
}

/// Memory words needed to cover [offset, offset+len), or k_infinite
/// when the range is unaffordably large. len 0 needs nothing.
int64_t words_needed(const Word& offset, const Word& len)
{
    if (len == 0)
        return 0;
    if (offset > k_mem_hard_cap || len > k_mem_hard_cap)
        return k_infinite;
    int64_t end = static_cast<int64_t>(offset) + static_cast<int64_t>(len);
    return gas::words_for_bytes(end);
}

struct StackShape
{
    int pops = 0;
    int pushes = 0;
};

StackShape stack_shape(uint8_t op)
{
    if (is_push(op))
        return {0, 1};
    if (is_dup(op))
        return {op - 0x7f, op - 0x7f + 1};
    if (is_swap(op))
        return {op - 0x8f + 1, op - 0x8f + 1};
    if (is_log(op))
        return {2 + (op - 0xa0), 0};
    switch (static_cast<Op>(op))
    {
        case Op::STOP: return {0, 0};
        case Op::ADD:
        case Op::MUL:
        case Op::SUB:
        case Op::DIV:
        case Op::MOD:
        case Op::LT:
        case Op::GT:
        case Op::EQ:
        case Op::AND:
        case Op::OR:
        case Op::XOR: return {2, 1};
        case Op::ISZERO:
        case Op::NOT:
        case Op::BALANCE:
        case Op::CALLDATALOAD:
        case Op::MLOAD: return {1, 1};
        case Op::SHA3: return {2, 1};
        case Op::ADDRESS:
        case Op::CALLER:
        case Op::CALLVALUE:
        case Op::CALLDATASIZE:
        case Op::NUMBER: return {0, 1};
        case Op::CODECOPY: return {3, 0};
        case Op::POP: return {1, 0};
        case Op::MSTORE:
        case Op::SSTORE: return {2, 0};
        case Op::JUMP: return {1, 0};
        case Op::JUMPI: return {2, 0};
        case Op::JUMPDEST: return {0, 0};
        case Op::CALL: return {7, 1};
        case Op::RETURN:
        case Op::REVERT: return {2, 0};
        default: return {0, 0};
    }
}

/// Stack peek helper: n-th entry from the top, 1-based; nullopt when
/// the stack is shallower than that.
std::optional<Word> peek(const VariableCtx& v, int n)
{
    if (static_cast<int>(v.stack.size()) < n)
        return std::nullopt;
    return v.stack[v.stack.size() - n];
}

int64_t saturating_add(int64_t a, int64_t b)
{
    if (a == k_infinite || b == k_infinite || a > k_infinite - b)
        return k_infinite;
    return a + b;
}

Bytes mem_slice(const VariableCtx& v, const Word& offset, const Word& len)
{
    if (len == 0)
        return {};
    auto off = static_cast<size_t>(offset);
    auto n = static_cast<size_t>(len);
    return Bytes(v.memory.begin() + off, v.memory.begin() + off + n);
}
}  // namespace

const EvmAccount* World::find_account(const Word& addr) const
{
    auto it = accounts.find(addr);
    return it == accounts.end() ? nullptr : &it->second;
}

Word World::balance_of(const Word& addr) const
{
    const EvmAccount* a = find_account(addr);
    return a ? a->balance : 0;
}

ConstantCtx ConstantCtx::make(Bytes code, Word self, Word caller, Word callvalue,
                              Bytes calldata, Word block_number)
{
    ConstantCtx c;
    c.code = std::move(code);
    c.self = std::move(self);
    c.caller = std::move(caller);
    c.callvalue = std::move(callvalue);
    c.calldata = std::move(calldata);
    c.block_number = std::move(block_number);
    int64_t pos = 0;
    const int64_t n = static_cast<int64_t>(c.code.size());
    while (pos < n)
    {
        uint8_t op = c.code[pos];
        if (op == static_cast<uint8_t>(Op::JUMPDEST))
            c.jumpdests.insert(pos);
        pos += inst_size(op);
    }
    return c;
}

const char* contract_action_name(ContractAction a)
{
    switch (a)
    {
        case ContractAction::none: return "none";
        case ContractAction::stop: return "stop";
        case ContractAction::return_: return "return";
        case ContractAction::revert: return "revert";
        case ContractAction::out_of_gas: return "out of gas";
        case ContractAction::stack_underflow: return "stack underflow";
        case ContractAction::stack_overflow: return "stack overflow";
        case ContractAction::bad_jump: return "bad jump";
        case ContractAction::invalid_op: return "invalid opcode";
    }
    return "none";
}

bool action_is_failure(ContractAction a)
{
    switch (a)
    {
        case ContractAction::stop:
        case ContractAction::return_:
        case ContractAction::revert:
        case ContractAction::none: return false;
        default: return true;
    }
}

InstructionResult InstructionResult::cont(VariableCtx v)
{
    InstructionResult r;
    r.kind = Kind::cont;
    r.ctx = std::move(v);
    return r;
}

InstructionResult InstructionResult::to_env(ContractAction a, VariableCtx v, Bytes output)
{
    InstructionResult r;
    r.kind = Kind::to_environment;
    r.action = a;
    r.ctx = std::move(v);
    r.output = std::move(output);
    return r;
}

Inst code_from_counter(const ConstantCtx& c, int64_t pc)
{
    Inst inst;
    inst.pos = pc;
    const int64_t n = static_cast<int64_t>(c.code.size());
    if (pc < 0 || pc >= n)
    {
        inst.op = static_cast<uint8_t>(Op::STOP);
        return inst;
    }
    inst.op = c.code[pc];
    if (is_push(inst.op))
    {
        int64_t take = std::min<int64_t>(push_size(inst.op), n - pc - 1);
        inst.immediate.assign(c.code.begin() + pc + 1, c.code.begin() + pc + 1 + take);
    }
    return inst;
}

int64_t meter_gas(const Inst& i, const VariableCtx& v)
{
    uint8_t op = i.op;
    if (is_push(op) || is_dup(op) || is_swap(op))
        return gas::verylow;
    if (is_log(op))
    {
        int n_topics = op - 0xa0;
        auto offset = peek(v, 1);
        auto len = peek(v, 2);
        if (!offset || !len)
            return gas::log_base;
        int64_t need = words_needed(*offset, *len);
        if (need == k_infinite || *len > k_mem_hard_cap)
            return k_infinite;
        return saturating_add(gas::log_cost(n_topics, static_cast<int64_t>(*len)),
                              gas::memory_expansion(v.mem_words(), need));
    }
    switch (static_cast<Op>(op))
    {
        case Op::STOP: return 0;
        case Op::ADD:
        case Op::SUB:
        case Op::LT:
        case Op::GT:
        case Op::EQ:
        case Op::ISZERO:
        case Op::AND:
        case Op::OR:
        case Op::XOR:
        case Op::NOT:
        case Op::CALLDATALOAD: return gas::verylow;
        case Op::MUL:
        case Op::DIV:
        case Op::MOD: return gas::low;
        case Op::ADDRESS:
        case Op::CALLER:
        case Op::CALLVALUE:
        case Op::CALLDATASIZE:
        case Op::NUMBER:
        case Op::POP: return gas::base;
        case Op::BALANCE: return gas::balance;
        case Op::SLOAD: return gas::sload;
        case Op::JUMP: return gas::mid;
        case Op::JUMPI: return gas::high;
        case Op::JUMPDEST: return gas::jumpdest;
        case Op::MLOAD:
        case Op::MSTORE:
        {
            auto offset = peek(v, 1);
            if (!offset)
                return gas::verylow;
            int64_t need = words_needed(*offset, 32);
            if (need == k_infinite)
                return k_infinite;
            return saturating_add(gas::verylow,
                                  gas::memory_expansion(v.mem_words(), need));
        }
        case Op::SHA3:
        {
            auto offset = peek(v, 1);
            auto len = peek(v, 2);
            if (!offset || !len)
                return gas::sha3_base;
            int64_t need = words_needed(*offset, *len);
            if (need == k_infinite || *len > k_mem_hard_cap)
                return k_infinite;
            return saturating_add(gas::sha3_cost(static_cast<int64_t>(*len)),
                                  gas::memory_expansion(v.mem_words(), need));
        }
        case Op::SSTORE:
        {
            auto key = peek(v, 1);
            auto val = peek(v, 2);
            if (!key || !val)
                return gas::sreset;
            auto it = v.storage.find(*key);
            bool current_zero = it == v.storage.end() || it->second == 0;
            return gas::sstore_cost(current_zero, *val == 0);
        }
        case Op::CODECOPY:
        {
            auto dest = peek(v, 1);
            auto len = peek(v, 3);
            if (!dest || !len)
                return gas::verylow;
            int64_t need = words_needed(*dest, *len);
            if (need == k_infinite || *len > k_mem_hard_cap)
                return k_infinite;
            return saturating_add(gas::codecopy_cost(static_cast<int64_t>(*len)),
                                  gas::memory_expansion(v.mem_words(), need));
        }
        case Op::CALL:
        {
            auto value = peek(v, 3);
            auto in_off = peek(v, 4);
            auto in_len = peek(v, 5);
            auto out_off = peek(v, 6);
            auto out_len = peek(v, 7);
            int64_t cost = gas::call_base;
            if (value && *value != 0)
                cost += gas::call_value;
            if (in_off && in_len && out_off && out_len)
            {
                int64_t need_in = words_needed(*in_off, *in_len);
                int64_t need_out = words_needed(*out_off, *out_len);
                if (need_in == k_infinite || need_out == k_infinite)
                    return k_infinite;
                cost = saturating_add(
                    cost, gas::memory_expansion(v.mem_words(),
                                                std::max(need_in, need_out)));
            }
            return cost;
        }
        case Op::RETURN:
        case Op::REVERT:
        {
            auto offset = peek(v, 1);
            auto len = peek(v, 2);
            if (!offset || !len)
                return 0;
            int64_t need = words_needed(*offset, *len);
            if (need == k_infinite)
                return k_infinite;
            return gas::memory_expansion(v.mem_words(), need);
        }
        default: return 0;
    }
}

namespace
{
void grow_memory(VariableCtx& v, int64_t words)
{
    if (words > v.mem_words())
        v.memory.resize(static_cast<size_t>(words) * 32, 0);
}

/// Ensures memory covers [offset, offset+len). Caller has already
/// charged for it via meter_gas.
void touch(VariableCtx& v, const Word& offset, const Word& len)
{
    int64_t need = words_needed(offset, len);
    if (need != k_infinite)
        grow_memory(v, need);
}
}  // namespace

InstructionResult instruction_sem(const ConstantCtx& c, VariableCtx v, const Inst& i)
{
    uint8_t op = i.op;
    if (!op_known(op))
    {
        v.gas_remaining = 0;
        return InstructionResult::to_env(ContractAction::invalid_op, std::move(v));
    }

    int64_t cost = meter_gas(i, v);
    if (cost > v.gas_remaining)
    {
        v.gas_remaining = 0;
        return InstructionResult::to_env(ContractAction::out_of_gas, std::move(v));
    }
    v.gas_remaining -= cost;

    StackShape shape = stack_shape(op);
    if (static_cast<int>(v.stack.size()) < shape.pops)
    {
        v.gas_remaining = 0;
        return InstructionResult::to_env(ContractAction::stack_underflow, std::move(v));
    }
    if (static_cast<int>(v.stack.size()) - shape.pops + shape.pushes > k_stack_limit)
    {
        v.gas_remaining = 0;
        return InstructionResult::to_env(ContractAction::stack_overflow, std::move(v));
    }

    auto pop = [&v]() {
        Word w = std::move(v.stack.back());
        v.stack.pop_back();
        return w;
    };
    auto push = [&v](Word w) { v.stack.push_back(std::move(w)); };
    int64_t next_pc = v.pc + i.size();

    if (is_push(op))
    {
        push(i.immediate_word());
    }
    else if (is_dup(op))
    {
        push(v.stack[v.stack.size() - (op - 0x7f)]);
    }
    else if (is_swap(op))
    {
        int n = op - 0x8f;
        std::swap(v.stack[v.stack.size() - 1], v.stack[v.stack.size() - 1 - n]);
    }
    else if (is_log(op))
    {
        int n_topics = op - 0xa0;
        Word offset = pop();
        Word len = pop();
        touch(v, offset, len);
        EvmLogEntry entry;
        for (int t = 0; t < n_topics; ++t)
            entry.topics.push_back(pop());
        entry.data = mem_slice(v, offset, len);
        v.logs.push_back(std::move(entry));
    }
    else
    {
        switch (static_cast<Op>(op))
        {
            case Op::STOP:
                return InstructionResult::to_env(ContractAction::stop, std::move(v));
            case Op::ADD:
            {
                Word a = pop(), b = pop();
                push(a + b);
                break;
            }
            case Op::MUL:
            {
                Word a = pop(), b = pop();
                push(a * b);
                break;
            }
            case Op::SUB:
            {
                Word a = pop(), b = pop();
                push(a - b);
                break;
            }
            case Op::DIV:
            {
                Word a = pop(), b = pop();
                push(word_div(a, b));
                break;
            }
            case Op::MOD:
            {
                Word a = pop(), b = pop();
                push(word_mod(a, b));
                break;
            }
            case Op::LT:
            {
                Word a = pop(), b = pop();
                push(a < b ? 1 : 0);
                break;
            }
            case Op::GT:
            {
                Word a = pop(), b = pop();
                push(a > b ? 1 : 0);
                break;
            }
            case Op::EQ:
            {
                Word a = pop(), b = pop();
                push(a == b ? 1 : 0);
                break;
            }
            case Op::ISZERO:
            {
                Word a = pop();
                push(a == 0 ? 1 : 0);
                break;
            }
            case Op::AND:
            {
                Word a = pop(), b = pop();
                push(a & b);
                break;
            }
            case Op::OR:
            {
                Word a = pop(), b = pop();
                push(a | b);
                break;
            }
            case Op::XOR:
            {
                Word a = pop(), b = pop();
                push(a ^ b);
                break;
            }
            case Op::NOT:
            {
                Word a = pop();
                push(~a);
                break;
            }
            case Op::SHA3:
            {
                Word offset = pop();
                Word len = pop();
                touch(v, offset, len);
                push(keccak256_word(mem_slice(v, offset, len)));
                break;
            }
            case Op::ADDRESS:
                push(c.self);
                break;
            case Op::CALLER:
                push(c.caller);
                break;
            case Op::CALLVALUE:
                push(c.callvalue);
                break;
            case Op::NUMBER:
                push(c.block_number);
                break;
            case Op::BALANCE:
            {
                Word addr = pop() & mask160();
                auto it = v.balances.find(addr);
                push(it == v.balances.end() ? Word(0) : it->second);
                break;
            }
            case Op::CALLDATALOAD:
            {
                Word offset = pop();
                Word w = 0;
                for (int b = 0; b < 32; ++b)
                {
                    w <<= 8;
                    Word idx = offset + b;
                    if (idx < c.calldata.size())
                        w |= c.calldata[static_cast<size_t>(idx)];
                }
                push(w);
                break;
            }
            case Op::CALLDATASIZE:
                push(c.calldata.size());
                break;
            case Op::CODECOPY:
            {
                Word dest = pop();
                Word src = pop();
                Word len = pop();
                touch(v, dest, len);
                for (Word b = 0; b < len; ++b)
                {
                    Word from = src + b;
                    uint8_t byte = from < c.code.size()
                                       ? c.code[static_cast<size_t>(from)]
                                       : 0;
                    v.memory[static_cast<size_t>(dest + b)] = byte;
                }
                break;
            }
            case Op::POP:
                pop();
                break;
            case Op::MLOAD:
            {
                Word offset = pop();
                touch(v, offset, 32);
                Word w = 0;
                for (int b = 0; b < 32; ++b)
                    w = (w << 8) | v.memory[static_cast<size_t>(offset) + b];
                push(w);
                break;
            }
            case Op::MSTORE:
            {
                Word offset = pop();
                Word value = pop();
                touch(v, offset, 32);
                Bytes32 bytes = word_to_bytes32(value);
                std::copy(bytes.begin(), bytes.end(),
                          v.memory.begin() + static_cast<size_t>(offset));
                break;
            }
            case Op::SLOAD:
            {
                Word key = pop();
                auto it = v.storage.find(key);
                push(it == v.storage.end() ? Word(0) : it->second);
                break;
            }
            case Op::SSTORE:
            {
                Word key = pop();
                Word value = pop();
                if (value == 0)
                    v.storage.erase(key);
                else
                    v.storage[key] = value;
                break;
            }
            case Op::JUMP:
            {
                Word dest = pop();
                if (dest > k_mem_hard_cap ||
                    !c.jumpdests.count(static_cast<int64_t>(dest)))
                {
                    v.gas_remaining = 0;
                    return InstructionResult::to_env(ContractAction::bad_jump,
                                                     std::move(v));
                }
                next_pc = static_cast<int64_t>(dest);
                break;
            }
            case Op::JUMPI:
            {
                Word dest = pop();
                Word cond = pop();
                if (cond != 0)
                {
                    if (dest > k_mem_hard_cap ||
                        !c.jumpdests.count(static_cast<int64_t>(dest)))
                    {
                        v.gas_remaining = 0;
                        return InstructionResult::to_env(ContractAction::bad_jump,
                                                         std::move(v));
                    }
                    next_pc = static_cast<int64_t>(dest);
                }
                break;
            }
            case Op::JUMPDEST:
                break;
            case Op::CALL:
            {
                pop();  // gas argument; no sub-execution in this model
                Word to = pop() & mask160();
                Word value = pop();
                Word in_off = pop();
                Word in_len = pop();
                Word out_off = pop();
                Word out_len = pop();
                touch(v, in_off, in_len);
                touch(v, out_off, out_len);
                Word self_balance = 0;
                auto it = v.balances.find(c.self);
                if (it != v.balances.end())
                    self_balance = it->second;
                if (self_balance >= value)
                {
                    v.balances[c.self] = self_balance - value;
                    v.balances[to] += value;
                    push(1);
                }
                else
                {
                    push(0);
                }
                break;
            }
            case Op::RETURN:
            {
                Word offset = pop();
                Word len = pop();
                touch(v, offset, len);
                Bytes out = mem_slice(v, offset, len);
                return InstructionResult::to_env(ContractAction::return_,
                                                 std::move(v), std::move(out));
            }
            case Op::REVERT:
            {
                Word offset = pop();
                Word len = pop();
                touch(v, offset, len);
                Bytes out = mem_slice(v, offset, len);
                return InstructionResult::to_env(ContractAction::revert,
                                                 std::move(v), std::move(out));
            }
            default:
                v.gas_remaining = 0;
                return InstructionResult::to_env(ContractAction::invalid_op,
                                                 std::move(v));
        }
    }

    v.pc = next_pc;
    return InstructionResult::cont(std::move(v));
}

InstructionResult program_sem(const ConstantCtx& c, int64_t fuel, InstructionResult r)
{
    while (fuel > 0 && r.running())
    {
        Inst inst = code_from_counter(c, r.ctx.pc);
        r = instruction_sem(c, std::move(r.ctx), inst);
        --fuel;
    }
    return r;
}

InstructionResult execute_code(const ConstantCtx& c, VariableCtx v)
{
    // Every non-terminal opcode costs at least 1 gas, so gas + slack
    // bounds the step count.
    int64_t fuel = v.gas_remaining + 64;
    return program_sem(c, fuel, InstructionResult::cont(std::move(v)));
}

Word contract_address(const Word& from, uint64_t nonce)
{
    Bytes buf;
    Bytes32 a = word_to_bytes32(from);
    Bytes32 b = word_to_bytes32(Word(nonce));
    buf.insert(buf.end(), a.begin(), a.end());
    buf.insert(buf.end(), b.begin(), b.end());
    return keccak256_word(buf) & mask160();
}

namespace
{
std::map<Word, Word> snapshot_balances(const World& w)
{
    std::map<Word, Word> out;
    for (const auto& [addr, acct] : w.accounts)
        out[addr] = acct.balance;
    return out;
}

void commit_balances(World& w, const std::map<Word, Word>& balances)
{
    for (const auto& [addr, bal] : balances)
        w.account(addr).balance = bal;
}
}  // namespace

TxReceipt run_transaction(World& world, const TxRequest& tx)
{
    TxReceipt receipt;
    if (world.balance_of(tx.from) < tx.value)
    {
        receipt.status = "insufficient funds";
        return receipt;
    }

    bool deploying = !tx.to.has_value();
    Word target;
    Bytes code;
    Bytes calldata;
    if (deploying)
    {
        uint64_t nonce = world.account(tx.from).nonce;
        world.account(tx.from).nonce = nonce + 1;
        target = contract_address(tx.from, nonce);
        code = tx.data;
        receipt.created = target;
    }
    else
    {
        target = *tx.to;
        const EvmAccount* acct = world.find_account(target);
        if (!acct || acct->code.empty())
            fail("UnknownAccount", "no code at " + word_to_hex(target));
        code = acct->code;
        calldata = tx.data;
    }

    World tmp = world;
    tmp.account(tx.from).balance -= tx.value;
    tmp.account(target).balance += tx.value;

    ConstantCtx c = ConstantCtx::make(std::move(code), target, tx.from, tx.value,
                                      std::move(calldata), world.block_number);
    VariableCtx v;
    v.gas_remaining = tx.gas_limit;
    v.storage = tmp.account(target).storage;
    v.balances = snapshot_balances(tmp);

    InstructionResult r = execute_code(c, std::move(v));
    if (r.running())
        throw InternalError("run_transaction: fuel exhausted before gas");

    if (r.action == ContractAction::stop || r.action == ContractAction::return_)
    {
        receipt.success = true;
        receipt.status = "success";
        receipt.output = r.output;
        receipt.gas_used = tx.gas_limit - r.ctx.gas_remaining;
        receipt.logs = r.ctx.logs;
        commit_balances(tmp, r.ctx.balances);
        tmp.account(target).storage = r.ctx.storage;
        if (deploying)
            tmp.account(target).code = receipt.output;
        world = std::move(tmp);
    }
    else if (r.action == ContractAction::revert)
    {
        receipt.reverted = true;
        receipt.status = "revert";
        receipt.output = r.output;
        receipt.gas_used = tx.gas_limit - r.ctx.gas_remaining;
    }
    else
    {
        receipt.status = contract_action_name(r.action);
        receipt.gas_used = tx.gas_limit;
    }
    return receipt;
}

}  // namespace minicc
