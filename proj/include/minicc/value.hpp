// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "minicc/word.hpp"

#include <compare>
#include <memory>
#include <string>
#include <vector>

namespace minicc
{
/// Symbolic runtime value. Hash values are kept as syntax trees, so hash
/// application is injective by construction; the concrete Keccak bridge
/// happens only at the EVM boundary (see value_to_word in evm/).
class Value
{
public:
    enum class Kind
    {
        unit,
        integer,
        hash1,
        hash2,
    };

    Value() : kind_(Kind::unit) {}
    static Value unit() { return Value(); }
    static Value from_word(Word w)
    {
        Value v;
        v.kind_ = Kind::integer;
        v.word_ = std::move(w);
        return v;
    }
    static Value hash1(Value inner)
    {
        Value v;
        v.kind_ = Kind::hash1;
        v.a_ = std::make_shared<Value>(std::move(inner));
        return v;
    }
    static Value hash2(Value base, Value key)
    {
        Value v;
        v.kind_ = Kind::hash2;
        v.a_ = std::make_shared<Value>(std::move(base));
        v.b_ = std::make_shared<Value>(std::move(key));
        return v;
    }

    Kind kind() const { return kind_; }
    bool is_unit() const { return kind_ == Kind::unit; }
    bool is_int() const { return kind_ == Kind::integer; }
    const Word& word() const { return word_; }
    const Value& first() const { return *a_; }
    const Value& second() const { return *b_; }

    bool operator==(const Value& o) const;
    std::strong_ordering operator<=>(const Value& o) const;

    std::string str() const;

private:
    Kind kind_;
    Word word_ = 0;
    std::shared_ptr<const Value> a_;
    std::shared_ptr<const Value> b_;
};

/// Storage-side counterpart of a Global extended identifier: a nest of
/// hash applications rooted at a slot number.
class HashKey
{
public:
    static HashKey singleton(Word slot)
    {
        HashKey k;
        k.slot_ = std::move(slot);
        return k;
    }
    static HashKey pair(HashKey base, Word index)
    {
        HashKey k;
        k.slot_ = std::move(index);
        k.base_ = std::make_shared<HashKey>(std::move(base));
        return k;
    }

    bool is_singleton() const { return base_ == nullptr; }
    /// Slot for singletons, index for pairs.
    const Word& head() const { return slot_; }
    const HashKey& base() const { return *base_; }

    bool operator==(const HashKey& o) const;
    std::strong_ordering operator<=>(const HashKey& o) const;

    /// The symbolic value this key denotes: singleton(s) -> Vint s,
    /// pair(k, i) -> Vhash2(value(k), Vint i).
    Value to_value() const;

    std::string str() const;

private:
    Word slot_ = 0;
    std::shared_ptr<const HashKey> base_;
};

/// Structured address: a path from a Global or Local root through
/// Field/Index steps.
class ExtIdent
{
public:
    enum class Kind
    {
        global,
        local,
        field,
        index,
    };

    static ExtIdent global(std::string name)
    {
        ExtIdent p;
        p.kind_ = Kind::global;
        p.name_ = std::move(name);
        return p;
    }
    static ExtIdent local(std::string name)
    {
        ExtIdent p;
        p.kind_ = Kind::local;
        p.name_ = std::move(name);
        return p;
    }
    static ExtIdent field(ExtIdent base, std::string field_name)
    {
        ExtIdent p;
        p.kind_ = Kind::field;
        p.name_ = std::move(field_name);
        p.base_ = std::make_shared<ExtIdent>(std::move(base));
        return p;
    }
    static ExtIdent index(ExtIdent base, Word idx)
    {
        ExtIdent p;
        p.kind_ = Kind::index;
        p.index_ = std::move(idx);
        p.base_ = std::make_shared<ExtIdent>(std::move(base));
        return p;
    }

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const Word& idx() const { return index_; }
    const ExtIdent& base() const { return *base_; }
    bool is_root() const { return kind_ == Kind::global || kind_ == Kind::local; }
    /// The Global/Local identifier at the bottom of the path.
    const ExtIdent& root() const;

    bool operator==(const ExtIdent& o) const;
    std::strong_ordering operator<=>(const ExtIdent& o) const;

    std::string str() const;

private:
    Kind kind_ = Kind::global;
    std::string name_;
    Word index_ = 0;
    std::shared_ptr<const ExtIdent> base_;
};

/// L-value: an extended identifier or a raw hash form.
class LValue
{
public:
    enum class Kind
    {
        eid,
        hash1,
        hash2,
    };

    static LValue eid(ExtIdent p)
    {
        LValue l;
        l.kind_ = Kind::eid;
        l.path_ = std::move(p);
        return l;
    }
    static LValue hash1(Word w)
    {
        LValue l;
        l.kind_ = Kind::hash1;
        l.word_ = std::move(w);
        return l;
    }
    static LValue hash2(LValue base, Word w)
    {
        LValue l;
        l.kind_ = Kind::hash2;
        l.word_ = std::move(w);
        l.base_ = std::make_shared<LValue>(std::move(base));
        return l;
    }

    Kind kind() const { return kind_; }
    const ExtIdent& path() const { return path_; }
    const Word& word() const { return word_; }
    const LValue& base() const { return *base_; }

    bool operator==(const LValue& o) const;
    std::strong_ordering operator<=>(const LValue& o) const;

    std::string str() const;

private:
    Kind kind_ = Kind::eid;
    ExtIdent path_;
    Word word_ = 0;
    std::shared_ptr<const LValue> base_;
};

}  // namespace minicc
