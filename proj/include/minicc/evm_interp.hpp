// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "minicc/evm_opcodes.hpp"
#include "minicc/word.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace minicc
{
inline constexpr int64_t k_stack_limit = 1024;

struct EvmLogEntry
{
    std::vector<Word> topics;
    Bytes data;

    bool operator==(const EvmLogEntry& o) const = default;
};

struct EvmAccount
{
    Word balance = 0;
    Bytes code;
    std::map<Word, Word> storage;  // normalized: no zero-valued entries
    uint64_t nonce = 0;
};

struct World
{
    std::map<Word, EvmAccount> accounts;
    Word block_number = 0;

    EvmAccount& account(const Word& addr) { return accounts[addr]; }
    const EvmAccount* find_account(const Word& addr) const;
    Word balance_of(const Word& addr) const;
};

/// Data fixed for the duration of one code run.
struct ConstantCtx
{
    Bytes code;
    std::set<int64_t> jumpdests;  // JUMPDEST offsets outside push payloads
    Word self = 0;
    Word caller = 0;
    Word callvalue = 0;
    Bytes calldata;
    Word block_number = 0;

    static ConstantCtx make(Bytes code, Word self, Word caller, Word callvalue,
                            Bytes calldata, Word block_number);
};

/// Data mutated by instruction steps. Storage and balances are working
/// copies; the transaction layer commits them on success.
struct VariableCtx
{
    std::vector<Word> stack;
    Bytes memory;  // multiple of 32 bytes
    std::map<Word, Word> storage;
    std::map<Word, Word> balances;
    int64_t pc = 0;
    int64_t gas_remaining = 0;
    std::vector<EvmLogEntry> logs;

    int64_t mem_words() const { return static_cast<int64_t>(memory.size()) / 32; }
};

/// How a run leaves the machine. `none` only appears inside Continue
/// results; everything else is terminal.
enum class ContractAction
{
    none,
    stop,
    return_,
    revert,
    out_of_gas,
    stack_underflow,
    stack_overflow,
    bad_jump,
    invalid_op,
};

const char* contract_action_name(ContractAction a);
bool action_is_failure(ContractAction a);  // neither stop/return nor revert

struct InstructionResult
{
    enum class Kind
    {
        cont,
        to_environment,
    };

    Kind kind = Kind::cont;
    ContractAction action = ContractAction::none;
    VariableCtx ctx;
    Bytes output;  // return/revert payload

    static InstructionResult cont(VariableCtx v);
    static InstructionResult to_env(ContractAction a, VariableCtx v, Bytes output = {});
    bool running() const { return kind == Kind::cont; }
};

/// Instruction at `pc`; past the end of code this is STOP.
Inst code_from_counter(const ConstantCtx& c, int64_t pc);

/// Fee for executing `i` in context `v`, including memory expansion
/// and SSTORE case analysis. Total: missing stack operands charge the
/// static part only (the step then fails on underflow anyway).
int64_t meter_gas(const Inst& i, const VariableCtx& v);

/// Executes one instruction. Gas is subtracted before any state
/// change; insufficient gas, stack misuse, bad jumps, and unknown
/// opcodes become environment actions, never exceptions.
InstructionResult instruction_sem(const ConstantCtx& c, VariableCtx v, const Inst& i);

/// Steps from `r` at most `fuel` times or until a terminal action;
/// fuel 0 returns the input unchanged.
InstructionResult program_sem(const ConstantCtx& c, int64_t fuel, InstructionResult r);

/// program_sem from a fresh pc=0 context with fuel ample for the gas
/// budget (every loop the assembler can emit burns gas).
InstructionResult execute_code(const ConstantCtx& c, VariableCtx v);

struct TxRequest
{
    Word from = 0;
    std::optional<Word> to;  // absent: deployment, data = init code ++ ctor args
    Word value = 0;
    Bytes data;
    int64_t gas_limit = 0;
};

struct TxReceipt
{
    bool success = false;
    bool reverted = false;  // distinguishes revert from gas/validity failures
    Bytes output;
    int64_t gas_used = 0;
    std::vector<EvmLogEntry> logs;
    std::optional<Word> created;
    std::string status;  // "success", "revert", or a failure reason
};

/// Runs one transaction against the world; commits storage, balance,
/// and code changes only on success. Calling an account without code
/// raises UnknownAccount.
TxReceipt run_transaction(World& world, const TxRequest& tx);

/// Address assigned to a contract deployed by `from` at `nonce`:
/// low 160 bits of keccak256(w(from) ++ w(nonce)).
Word contract_address(const Word& from, uint64_t nonce);

}  // namespace minicc
