// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "minicc/evm_assemble.hpp"
#include "minicc/ir.hpp"
#include "minicc/memory.hpp"
#include "minicc/value.hpp"
#include "minicc/word.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace minicc
{
/// State relations between the symbolic machines and the EVM. The IR
/// interpreters carry structured values (ints, hash chains, labels);
/// the EVM carries 256-bit words. These helpers realize the bridge:
/// ints map to themselves, hash chains to their keccak images, labels
/// to their code offsets.

using LabelMap = std::map<Label, int64_t>;

/// A symbolic machine-stack entry: a value or a code label.
struct StackEntry
{
    bool is_label = false;
    Value value = Value::from_word(0);
    Label label;

    static StackEntry of_value(Value v);
    static StackEntry of_label(Label l);
};

/// Word image of a value: Vint n -> n, unit -> 0, Vhash x ->
/// keccak(w(x)), Vhash2(base, key) -> keccak(w(key) ++ w(base)),
/// matching the scratch-memory hashing sequence the compiled code
/// runs.
Word value_to_w256(const Value& v);

/// Word image of a storage address. Mirrors how the compiled pointer
/// expression evaluates: a slot is its own address, one mapping level
/// hashes the key word followed by the base address.
Word key_to_w256(const HashKey& k);

/// Word image of a stack entry; labels resolve through `lm`.
/// Throws Error{UnknownLabel} for a label absent from the map.
Word entries_to_w256(const StackEntry& e, const LabelMap& lm);

/// Element-wise stack agreement: equal length and each entry's word
/// image equals the EVM word, top-to-top.
bool rel_stk(const LabelMap& lm, const std::vector<StackEntry>& entries,
             const std::vector<Word>& evm_stack);

/// Word image of the whole store, dropping zero-valued entries the
/// way the EVM normalizes cleared slots. Throws InternalError if two
/// distinct keys collide on the same image (the injectivity the
/// symbolic model assumes, checked at runtime).
std::map<Word, Word> storage_image(const Memory& m);

/// Storage agreement in both directions. On mismatch, `why` (when
/// non-null) receives a one-line description naming the offending
/// key.
bool rel_store(const Memory& m, const std::map<Word, Word>& evm_storage,
               std::string* why = nullptr);

/// Scratch-memory agreement: each (byte offset, value) expectation
/// reads back as the value's 32-byte image; bytes past the end of
/// `evm_memory` are zero.
bool rel_mem(const std::vector<std::pair<int64_t, Value>>& expected,
             const Bytes& evm_memory);

/// Code agreement: re-expanding statements [stmt_index..) of a code
/// unit and resolving label pushes against the unit's offsets
/// reproduces unit.code from byte offset `pc` to the end.
bool rel_code(const std::vector<ExStmt>& stmts, size_t stmt_index,
              const Label& abort_label, const CodeLayout& layout,
              const AssembledUnit& unit, int64_t pc);

/// Gas conservation at a sync point: used and remaining split the
/// limit exactly.
bool gas_invariant(int64_t gas_used, int64_t evm_gas_remaining, int64_t gas_limit);

}  // namespace minicc
