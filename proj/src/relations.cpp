// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "minicc/relations.hpp"

#include "minicc/errors.hpp"
#include "minicc/keccak.hpp"

namespace minicc
{
namespace
{
Bytes two_words(const Word& a, const Word& b)
{
    Bytes data(64);
    Bytes32 wa = word_to_bytes32(a);
    Bytes32 wb = word_to_bytes32(b);
    std::copy(wa.begin(), wa.end(), data.begin());
    std::copy(wb.begin(), wb.end(), data.begin() + 32);
    return data;
}

Word hash_one(const Word& x)
{
    Bytes data(32);
    Bytes32 wx = word_to_bytes32(x);
    std::copy(wx.begin(), wx.end(), data.begin());
    return keccak256_word(data);
}
}  // namespace

StackEntry StackEntry::of_value(Value v)
{
    StackEntry e;
    e.value = std::move(v);
    return e;
}

StackEntry StackEntry::of_label(Label l)
{
    StackEntry e;
    e.is_label = true;
    e.label = std::move(l);
    return e;
}

Word value_to_w256(const Value& v)
{
    switch (v.kind())
    {
        case Value::Kind::unit:
            return 0;
        case Value::Kind::integer:
            return v.word();
        case Value::Kind::hash1:
            return hash_one(value_to_w256(v.first()));
        case Value::Kind::hash2:
            return keccak256_word(
                two_words(value_to_w256(v.second()), value_to_w256(v.first())));
    }
    throw InternalError("value_to_w256: bad value kind");
}

Word key_to_w256(const HashKey& k)
{
    if (k.is_singleton())
        return k.head();
    return keccak256_word(two_words(k.head(), key_to_w256(k.base())));
}

Word entries_to_w256(const StackEntry& e, const LabelMap& lm)
{
    if (!e.is_label)
        return value_to_w256(e.value);
    auto it = lm.find(e.label);
    if (it == lm.end())
        fail("UnknownLabel", "label has no code offset: " + e.label);
    return Word(it->second);
}

bool rel_stk(const LabelMap& lm, const std::vector<StackEntry>& entries,
             const std::vector<Word>& evm_stack)
{
    if (entries.size() != evm_stack.size())
        return false;
    for (size_t i = 0; i < entries.size(); ++i)
        if (entries_to_w256(entries[i], lm) != evm_stack[i])
            return false;
    return true;
}

std::map<Word, Word> storage_image(const Memory& m)
{
    std::map<Word, Word> out;
    for (const auto& [key, val] : m.storage_entries())
    {
        Word image = value_to_w256(val);
        if (image == 0)
            continue;
        Word addr = key_to_w256(key);
        auto [it, fresh] = out.emplace(addr, image);
        if (!fresh && it->second != image)
            throw InternalError("storage_image: two keys collide at " +
                                word_to_hex(addr));
        (void)it;
    }
    return out;
}

bool rel_store(const Memory& m, const std::map<Word, Word>& evm_storage,
               std::string* why)
{
    std::map<Word, Word> image = storage_image(m);
    for (const auto& [addr, val] : image)
    {
        auto it = evm_storage.find(addr);
        Word evm_val = it == evm_storage.end() ? Word(0) : it->second;
        if (evm_val != val)
        {
            if (why)
                *why = "slot " + word_to_hex(addr) + ": source " + word_to_hex(val) +
                       ", evm " + word_to_hex(evm_val);
            return false;
        }
    }
    for (const auto& [addr, val] : evm_storage)
    {
        if (val == 0 || image.count(addr))
            continue;
        if (why)
            *why = "slot " + word_to_hex(addr) + ": source empty, evm " +
                   word_to_hex(val);
        return false;
    }
    return true;
}

bool rel_mem(const std::vector<std::pair<int64_t, Value>>& expected,
             const Bytes& evm_memory)
{
    for (const auto& [base, val] : expected)
    {
        if (base < 0)
            return false;
        Bytes32 image = word_to_bytes32(value_to_w256(val));
        for (int i = 0; i < 32; ++i)
        {
            size_t at = static_cast<size_t>(base) + static_cast<size_t>(i);
            uint8_t have = at < evm_memory.size() ? evm_memory[at] : 0;
            if (have != image[static_cast<size_t>(i)])
                return false;
        }
    }
    return true;
}

bool rel_code(const std::vector<ExStmt>& stmts, size_t stmt_index,
              const Label& abort_label, const CodeLayout& layout,
              const AssembledUnit& unit, int64_t pc)
{
    if (pc < 0 || pc > static_cast<int64_t>(unit.code.size()))
        return false;
    size_t at = static_cast<size_t>(pc);
    for (size_t i = stmt_index; i < stmts.size(); ++i)
    {
        for (const AsmItem& item : expand_stmt(stmts[i], abort_label, layout))
        {
            Word imm = item.imm;
            if (!item.label.empty())
            {
                auto it = unit.label_offsets.find(item.label);
                if (it == unit.label_offsets.end())
                    fail("UnknownLabel", "jump target not defined: " + item.label);
                imm = it->second;
            }
            if (at >= unit.code.size() || unit.code[at] != item.op)
                return false;
            ++at;
            if (item.has_imm)
            {
                int width = push_size(item.op);
                for (int b = width - 1; b >= 0; --b)
                {
                    uint8_t expect = static_cast<uint8_t>((imm >> (8 * b)) & 0xff);
                    if (at >= unit.code.size() || unit.code[at] != expect)
                        return false;
                    ++at;
                }
            }
        }
    }
    return at == unit.code.size();
}

bool gas_invariant(int64_t gas_used, int64_t evm_gas_remaining, int64_t gas_limit)
{
    return gas_used >= 0 && evm_gas_remaining >= 0 &&
           gas_used + evm_gas_remaining == gas_limit;
}

}  // namespace minicc
