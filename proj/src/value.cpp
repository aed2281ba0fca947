// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "minicc/value.hpp"

namespace minicc
{
bool Value::operator==(const Value& o) const
{
    return (*this <=> o) == std::strong_ordering::equal;
}

std::strong_ordering Value::operator<=>(const Value& o) const
{
    if (auto c = kind_ <=> o.kind_; c != 0)
        return c;
    switch (kind_)
    {
    case Kind::unit:
        return std::strong_ordering::equal;
    case Kind::integer:
        return word_ < o.word_   ? std::strong_ordering::less :
               word_ == o.word_ ? std::strong_ordering::equal :
                                  std::strong_ordering::greater;
    case Kind::hash1:
        return *a_ <=> *o.a_;
    case Kind::hash2:
        if (auto c = *a_ <=> *o.a_; c != 0)
            return c;
        return *b_ <=> *o.b_;
    }
    return std::strong_ordering::equal;
}

std::string Value::str() const
{
    switch (kind_)
    {
    case Kind::unit:
        return "unit";
    case Kind::integer:
        return word_.str();
    case Kind::hash1:
        return "hash(" + a_->str() + ")";
    case Kind::hash2:
        return "hash2(" + a_->str() + "," + b_->str() + ")";
    }
    return "?";
}

bool HashKey::operator==(const HashKey& o) const
{
    return (*this <=> o) == std::strong_ordering::equal;
}

std::strong_ordering HashKey::operator<=>(const HashKey& o) const
{
    const bool s1 = is_singleton(), s2 = o.is_singleton();
    if (s1 != s2)
        return s1 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (!s1)
        if (auto c = *base_ <=> *o.base_; c != 0)
            return c;
    return slot_ < o.slot_   ? std::strong_ordering::less :
           slot_ == o.slot_ ? std::strong_ordering::equal :
                              std::strong_ordering::greater;
}

Value HashKey::to_value() const
{
    if (is_singleton())
        return Value::from_word(slot_);
    return Value::hash2(base_->to_value(), Value::from_word(slot_));
}

std::string HashKey::str() const
{
    if (is_singleton())
        return "slot(" + slot_.str() + ")";
    return "pair(" + base_->str() + "," + slot_.str() + ")";
}

const ExtIdent& ExtIdent::root() const
{
    const ExtIdent* p = this;
    while (!p->is_root())
        p = p->base_.get();
    return *p;
}

bool ExtIdent::operator==(const ExtIdent& o) const
{
    return (*this <=> o) == std::strong_ordering::equal;
}

std::strong_ordering ExtIdent::operator<=>(const ExtIdent& o) const
{
    if (auto c = kind_ <=> o.kind_; c != 0)
        return c;
    switch (kind_)
    {
    case Kind::global:
    case Kind::local:
        return name_ <=> o.name_;
    case Kind::field:
        if (auto c = *base_ <=> *o.base_; c != 0)
            return c;
        return name_ <=> o.name_;
    case Kind::index:
        if (auto c = *base_ <=> *o.base_; c != 0)
            return c;
        return index_ < o.index_   ? std::strong_ordering::less :
               index_ == o.index_ ? std::strong_ordering::equal :
                                    std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::string ExtIdent::str() const
{
    switch (kind_)
    {
    case Kind::global:
        return "@" + name_;
    case Kind::local:
        return "%" + name_;
    case Kind::field:
        return base_->str() + "." + name_;
    case Kind::index:
        return base_->str() + "[" + index_.str() + "]";
    }
    return "?";
}

bool LValue::operator==(const LValue& o) const
{
    return (*this <=> o) == std::strong_ordering::equal;
}

std::strong_ordering LValue::operator<=>(const LValue& o) const
{
    if (auto c = kind_ <=> o.kind_; c != 0)
        return c;
    switch (kind_)
    {
    case Kind::eid:
        return path_ <=> o.path_;
    case Kind::hash1:
        return word_ < o.word_   ? std::strong_ordering::less :
               word_ == o.word_ ? std::strong_ordering::equal :
                                  std::strong_ordering::greater;
    case Kind::hash2:
        if (auto c = *base_ <=> *o.base_; c != 0)
            return c;
        return word_ < o.word_   ? std::strong_ordering::less :
               word_ == o.word_ ? std::strong_ordering::equal :
                                  std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::string LValue::str() const
{
    switch (kind_)
    {
    case Kind::eid:
        return path_.str();
    case Kind::hash1:
        return "lhash(" + word_.str() + ")";
    case Kind::hash2:
        return "lhash2(" + base_->str() + "," + word_.str() + ")";
    }
    return "?";
}

}  // namespace minicc
