// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "minicc/types.hpp"
#include "minicc/value.hpp"

#include <functional>
#include <map>
#include <optional>

namespace minicc
{
/// Contract memory: a volatile region keyed by l-values and a
/// persistent storage region keyed by hash keys. Unwritten entries
/// read as the zero default of the requested type. A pointer to an
/// aggregate and a pointer to its first element are distinct keys.
class Memory
{
public:
    Value read(const LValue& l, const TypePtr& ty) const;
    void write(const LValue& l, Value v);

    Value sread(const HashKey& k, const TypePtr& ty) const;
    void swrite(const HashKey& k, Value v);

    /// Word view used by the storage relation checkers. Entries that
    /// were never written are absent.
    const std::map<HashKey, Value>& storage_entries() const { return m_storage; }
    const std::map<LValue, Value>& volatile_entries() const { return m_volatile; }

    void clear_volatile() { m_volatile.clear(); }

    bool operator==(const Memory& o) const = default;

private:
    std::map<LValue, Value> m_volatile;
    std::map<HashKey, Value> m_storage;
};

/// Zero default for a type: Vunit for void, Vint 0 otherwise.
Value zero_value(const TypePtr& ty);

/// Checks a stored value against the type it is being read at.
/// Word-typed reads must see Vint; void reads must see Vunit.
void check_value_shape(const Value& v, const TypePtr& ty);

/// Blockchain context visible to a contract invocation.
struct MachineEnv
{
    Word self_address = 0;
    Word caller = 0;
    Word callvalue = 0;
    Word block_number = 0;
    std::map<Word, Word> balances;

    /// Moves amount from self to the recipient; returns false and
    /// leaves balances untouched when self's balance is insufficient.
    /// Kept as a hook so harnesses can observe or veto transfers.
    std::function<bool(const Word& to, const Word& amount)> transfer_hook;

    Word balance_of(const Word& addr) const
    {
        auto it = balances.find(addr);
        return it == balances.end() ? Word{0} : it->second;
    }

    /// Default transfer action against the local balance map.
    bool do_transfer(const Word& to, const Word& amount);
};

}  // namespace minicc
