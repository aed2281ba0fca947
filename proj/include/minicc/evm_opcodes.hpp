// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "minicc/word.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace minicc
{
enum class Op : uint8_t
{
    STOP = 0x00,
    ADD = 0x01,
    MUL = 0x02,
    SUB = 0x03,
    DIV = 0x04,
    MOD = 0x06,
    LT = 0x10,
    GT = 0x11,
    EQ = 0x14,
    ISZERO = 0x15,
    AND = 0x16,
    OR = 0x17,
    XOR = 0x18,
    NOT = 0x19,
    SHA3 = 0x20,
    ADDRESS = 0x30,
    BALANCE = 0x31,
    CALLER = 0x33,
    CALLVALUE = 0x34,
    CALLDATALOAD = 0x35,
    CALLDATASIZE = 0x36,
    CODECOPY = 0x39,
    NUMBER = 0x43,
    POP = 0x50,
    MLOAD = 0x51,
    MSTORE = 0x52,
    SLOAD = 0x54,
    SSTORE = 0x55,
    JUMP = 0x56,
    JUMPI = 0x57,
    JUMPDEST = 0x5b,
    PUSH1 = 0x60,  // PUSH1..PUSH32 are 0x60..0x7f
    DUP1 = 0x80,   // DUP1..DUP16 are 0x80..0x8f
    SWAP1 = 0x90,  // SWAP1..SWAP16 are 0x90..0x9f
    LOG0 = 0xa0,   // LOG0..LOG4 are 0xa0..0xa4
    CALL = 0xf1,
    RETURN = 0xf3,
    REVERT = 0xfd,
    INVALID = 0xfe,
};

inline bool is_push(uint8_t byte)
{
    return byte >= 0x60 && byte <= 0x7f;
}
inline int push_size(uint8_t byte)
{
    return byte - 0x5f;  // PUSH1 -> 1 ... PUSH32 -> 32
}
inline bool is_dup(uint8_t byte)
{
    return byte >= 0x80 && byte <= 0x8f;
}
inline bool is_swap(uint8_t byte)
{
    return byte >= 0x90 && byte <= 0x9f;
}
inline bool is_log(uint8_t byte)
{
    return byte >= 0xa0 && byte <= 0xa4;
}

/// True for bytes our assembler can emit and the interpreter executes.
bool op_known(uint8_t byte);

/// Mnemonic, e.g. "PUSH2", "DUP3", "SSTORE"; "INVALID" for unknown.
std::string op_name(uint8_t byte);

/// Reverse of op_name for the known set.
std::optional<uint8_t> op_from_name(const std::string& name);

/// Byte length of the instruction starting with this opcode.
int inst_size(uint8_t byte);

/// One decoded instruction.
struct Inst
{
    int64_t pos = 0;
    uint8_t op = 0;
    Bytes immediate;  // push payload, big-endian

    Word immediate_word() const;
    int size() const { return inst_size(op); }
    std::string str() const;  // "PUSH1 0x02"

    bool operator==(const Inst& o) const { return op == o.op && immediate == o.immediate; }
};

/// Decodes bytecode into instructions from offset 0. Truncated push
/// payloads at the end take the remaining bytes (zero padded at use).
std::vector<Inst> disassemble(const Bytes& code);

}  // namespace minicc
