// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "minicc/word.hpp"

#include <cstdint>

namespace minicc
{
/// Fee schedule, fixed to the Byzantium revision of the EVM
/// (constant-cost SLOAD, REVERT available, no net-metered SSTORE).
/// Storage refunds and the 21000 intrinsic transaction charge are not
/// modeled; both sides of every comparison use this same schedule.
namespace gas
{
inline constexpr int64_t verylow = 3;    // ADD, SUB, LT, GT, EQ, ISZERO, AND, OR,
                                         // XOR, NOT, CALLDATALOAD, MLOAD, MSTORE,
                                         // PUSH, DUP, SWAP
inline constexpr int64_t low = 5;        // MUL, DIV, MOD
inline constexpr int64_t base = 2;       // POP, CALLER, CALLVALUE, ADDRESS, NUMBER,
                                         // CALLDATASIZE
inline constexpr int64_t jumpdest = 1;
inline constexpr int64_t mid = 8;        // JUMP
inline constexpr int64_t high = 10;      // JUMPI
inline constexpr int64_t balance = 400;
inline constexpr int64_t sload = 200;
inline constexpr int64_t sset = 20000;   // SSTORE zero -> nonzero
inline constexpr int64_t sreset = 5000;  // SSTORE other cases
inline constexpr int64_t sha3_base = 30;
inline constexpr int64_t sha3_word = 6;
inline constexpr int64_t log_base = 375;
inline constexpr int64_t log_topic = 375;
inline constexpr int64_t log_byte = 8;
inline constexpr int64_t call_base = 700;
inline constexpr int64_t call_value = 9000;  // added when transferring nonzero wei
inline constexpr int64_t copy_word = 3;      // CODECOPY per word, on top of verylow
inline constexpr int64_t zero = 0;           // STOP, RETURN, REVERT
inline constexpr int64_t memory_word = 3;

/// Total cost of having expanded memory to `words` 32-byte words:
/// 3w + floor(w^2 / 512).
int64_t memory_total(int64_t words);

/// Charge for growing memory from old_words to new_words (0 when not
/// growing).
int64_t memory_expansion(int64_t old_words, int64_t new_words);

/// Words needed to cover `bytes` bytes.
int64_t words_for_bytes(int64_t bytes);

int64_t sha3_cost(int64_t data_bytes);
int64_t log_cost(int64_t n_topics, int64_t data_bytes);
int64_t sstore_cost(bool current_zero, bool new_zero);
int64_t codecopy_cost(int64_t size_bytes);

/// Upper-bound charges used by the source-side interpreters (MiniC
/// reference through Clinear). Each constant dominates the exact EVM
/// cost of the construct's compiled image, including amortized jumps
/// and labels around it. Only the >= relation to real gas matters.
namespace bound
{
inline constexpr int64_t expr_node = 50;       // const, temp read, unop, binop
inline constexpr int64_t sload_node = 250;
inline constexpr int64_t hash_node = 200;      // hash1/hash2 construction
inline constexpr int64_t balance_node = 450;   // balance builtin (BALANCE is 400)
inline constexpr int64_t stmt = 50;            // set, skip, ifte shell, loop step
inline constexpr int64_t storage_write = 21000;
inline constexpr int64_t transfer = 12000;
inline constexpr int64_t call_fixed = 300;     // internal call protocol
inline constexpr int64_t done = 100;
inline constexpr int64_t revert = 20;
inline constexpr int64_t log_fixed = 500;
inline constexpr int64_t log_topic = 400;
inline constexpr int64_t log_data = 300;
inline constexpr int64_t method_entry_fixed = 1000;
inline constexpr int64_t method_entry_per_method = 64;   // dispatcher comparisons
inline constexpr int64_t method_entry_per_arg = 32;
inline constexpr int64_t deploy_fixed = 50000;
inline constexpr int64_t deploy_per_node = 200;          // source AST nodes

int64_t method_entry(int64_t n_methods, int64_t n_args);
int64_t deploy(int64_t n_source_nodes);
int64_t log(int64_t n_topics, int64_t n_data);
}  // namespace bound

}  // namespace gas
}  // namespace minicc
