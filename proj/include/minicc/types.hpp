// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "minicc/word.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace minicc
{
class Type;
using TypePtr = std::shared_ptr<const Type>;

enum class Region
{
    memory,
    storage,
};

/// MiniC type. Word-sized scalars plus storage aggregates (arrays,
/// hashmaps, structs/unions) and restricted pointers.
class Type
{
public:
    enum class Kind
    {
        void_t,
        int_t,       // width bits, unsigned only
        pointer,     // region + element
        array,       // element + nonnegative length
        hashmap,     // key + element
        function,    // params + return
        struct_t,
        union_t,
        comp_ptr,    // pointer to a named composite
    };

    struct Field
    {
        std::string name;
        TypePtr type;
    };

    Kind kind = Kind::void_t;
    int width = 256;            // int_t
    Region region = Region::storage;  // pointer
    TypePtr elem;               // pointer/array/hashmap
    TypePtr key;                // hashmap
    long long length = 0;       // array, >= 0
    std::string name;           // struct/union/comp_ptr
    std::vector<Field> fields;  // struct/union, unique names, ordered
    std::vector<TypePtr> params;
    TypePtr ret;

    static TypePtr make_void();
    static TypePtr make_int(int width = 256);
    static TypePtr make_bool();     // alias for int, tracked by name
    static TypePtr make_address();  // alias for int
    static TypePtr make_unit() { return make_void(); }
    static TypePtr make_pointer(Region r, TypePtr elem);
    static TypePtr make_array(TypePtr elem, long long length);
    static TypePtr make_hashmap(TypePtr key, TypePtr elem);
    static TypePtr make_function(std::vector<TypePtr> params, TypePtr ret);
    static TypePtr make_struct(std::string name, std::vector<Field> fields);
    static TypePtr make_union(std::string name, std::vector<Field> fields);
    static TypePtr make_comp_ptr(std::string name);

    bool is_void() const { return kind == Kind::void_t; }
    bool is_int() const { return kind == Kind::int_t; }
    bool is_word_sized() const { return kind == Kind::int_t; }
    bool is_aggregate() const
    {
        return kind == Kind::array || kind == Kind::hashmap || kind == Kind::struct_t ||
               kind == Kind::union_t;
    }

    /// Ordinal of a field within a struct/union, or -1.
    int field_ordinal(const std::string& fname) const;
    const Field* find_field(const std::string& fname) const;

    bool equals(const Type& o) const;
    std::string str() const;
};

bool type_equal(const TypePtr& a, const TypePtr& b);

/// Named composite types declared in a program.
using CompositeTable = std::map<std::string, TypePtr>;

}  // namespace minicc
