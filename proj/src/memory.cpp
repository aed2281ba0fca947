// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "minicc/memory.hpp"

#include "minicc/errors.hpp"

namespace minicc
{
Value zero_value(const TypePtr& ty)
{
    if (ty && ty->is_void())
        return Value::unit();
    return Value::from_word(0);
}

void check_value_shape(const Value& v, const TypePtr& ty)
{
    if (!ty)
        return;
    if (ty->is_void() && !v.is_unit())
        fail("TypeMismatch", "expected unit value, got " + v.str());
    if (ty->is_word_sized() && v.is_unit())
        fail("TypeMismatch", "expected word value, got unit");
}

Value Memory::read(const LValue& l, const TypePtr& ty) const
{
    auto it = m_volatile.find(l);
    if (it == m_volatile.end())
        return zero_value(ty);
    check_value_shape(it->second, ty);
    return it->second;
}

void Memory::write(const LValue& l, Value v)
{
    m_volatile[l] = std::move(v);
}

Value Memory::sread(const HashKey& k, const TypePtr& ty) const
{
    auto it = m_storage.find(k);
    if (it == m_storage.end())
        return zero_value(ty);
    check_value_shape(it->second, ty);
    return it->second;
}

void Memory::swrite(const HashKey& k, Value v)
{
    m_storage[k] = std::move(v);
}

bool MachineEnv::do_transfer(const Word& to, const Word& amount)
{
    if (transfer_hook)
        return transfer_hook(to, amount);
    Word& from_bal = balances[self_address];
    if (from_bal < amount)
        return false;
    from_bal -= amount;
    balances[to] += amount;
    return true;
}

}  // namespace minicc
