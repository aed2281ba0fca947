// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "minicc/evm_opcodes.hpp"

#include <map>

namespace minicc
{
namespace
{
const std::map<uint8_t, std::string>& base_names()
{
    static const std::map<uint8_t, std::string> names = {
        {0x00, "STOP"},         {0x01, "ADD"},          {0x02, "MUL"},
        {0x03, "SUB"},          {0x04, "DIV"},          {0x06, "MOD"},
        {0x10, "LT"},           {0x11, "GT"},           {0x14, "EQ"},
        {0x15, "ISZERO"},       {0x16, "AND"},          {0x17, "OR"},
        {0x18, "XOR"},          {0x19, "NOT"},          {0x20, "SHA3"},
        {0x30, "ADDRESS"},      {0x31, "BALANCE"},      {0x33, "CALLER"},
        {0x34, "CALLVALUE"},    {0x35, "CALLDATALOAD"}, {0x36, "CALLDATASIZE"},
        {0x39, "CODECOPY"},     {0x43, "NUMBER"},       {0x50, "POP"},
        {0x51, "MLOAD"},        {0x52, "MSTORE"},       {0x54, "SLOAD"},
        {0x55, "SSTORE"},       {0x56, "JUMP"},         {0x57, "JUMPI"},
        {0x5b, "JUMPDEST"},     {0xf1, "CALL"},         {0xf3, "RETURN"},
        {0xfd, "REVERT"},
    };
    return names;
}
}  // namespace

bool op_known(uint8_t byte)
{
    if (is_push(byte) || is_dup(byte) || is_swap(byte) || is_log(byte))
        return true;
    return base_names().count(byte) > 0;
}

std::string op_name(uint8_t byte)
{
    if (is_push(byte))
        return "PUSH" + std::to_string(push_size(byte));
    if (is_dup(byte))
        return "DUP" + std::to_string(byte - 0x7f);
    if (is_swap(byte))
        return "SWAP" + std::to_string(byte - 0x8f);
    if (is_log(byte))
        return "LOG" + std::to_string(byte - 0xa0);
    auto it = base_names().find(byte);
    if (it != base_names().end())
        return it->second;
    return "INVALID";
}

std::optional<uint8_t> op_from_name(const std::string& name)
{
    auto numbered = [&](const std::string& prefix, int lo, int hi,
                        int base) -> std::optional<uint8_t> {
        if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0)
            return std::nullopt;
        int n = 0;
        for (size_t i = prefix.size(); i < name.size(); ++i)
        {
            if (name[i] < '0' || name[i] > '9')
                return std::nullopt;
            n = n * 10 + (name[i] - '0');
        }
        if (n < lo || n > hi)
            return std::nullopt;
        return static_cast<uint8_t>(base + n);
    };
    if (auto p = numbered("PUSH", 1, 32, 0x5f))
        return p;
    if (auto d = numbered("DUP", 1, 16, 0x7f))
        return d;
    if (auto s = numbered("SWAP", 1, 16, 0x8f))
        return s;
    if (auto l = numbered("LOG", 0, 4, 0xa0))
        return l;
    for (const auto& [byte, nm] : base_names())
        if (nm == name)
            return byte;
    return std::nullopt;
}

int inst_size(uint8_t byte)
{
    return is_push(byte) ? 1 + push_size(byte) : 1;
}

Word Inst::immediate_word() const
{
    Word w = 0;
    for (uint8_t b : immediate)
        w = (w << 8) | b;
    // A push truncated by the end of code reads the missing low bytes
    // as zero.
    if (is_push(op))
    {
        for (int i = static_cast<int>(immediate.size()); i < push_size(op); ++i)
            w <<= 8;
    }
    return w;
}

std::string Inst::str() const
{
    std::string s = op_name(op);
    if (is_push(op))
        s += " " + word_to_hex(immediate_word());
    return s;
}

std::vector<Inst> disassemble(const Bytes& code)
{
    std::vector<Inst> out;
    int64_t pos = 0;
    const int64_t n = static_cast<int64_t>(code.size());
    while (pos < n)
    {
        Inst inst;
        inst.pos = pos;
        inst.op = code[pos];
        if (is_push(inst.op))
        {
            int64_t take = std::min<int64_t>(push_size(inst.op), n - pos - 1);
            inst.immediate.assign(code.begin() + pos + 1, code.begin() + pos + 1 + take);
        }
        pos += inst.size();
        out.push_back(std::move(inst));
    }
    return out;
}

}  // namespace minicc
