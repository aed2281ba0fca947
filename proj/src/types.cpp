// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "minicc/types.hpp"

#include <set>
#include <sstream>

namespace minicc
{
TypePtr Type::make_void()
{
    auto t = std::make_shared<Type>();
    t->kind = Kind::void_t;
    return t;
}

TypePtr Type::make_int(int width)
{
    if (width <= 0 || width > 256)
        throw std::invalid_argument{"int width out of range"};
    auto t = std::make_shared<Type>();
    t->kind = Kind::int_t;
    t->width = width;
    return t;
}

TypePtr Type::make_bool()
{
    auto t = std::make_shared<Type>();
    t->kind = Kind::int_t;
    t->width = 256;
    t->name = "bool";
    return t;
}

TypePtr Type::make_address()
{
    auto t = std::make_shared<Type>();
    t->kind = Kind::int_t;
    t->width = 256;
    t->name = "address";
    return t;
}

TypePtr Type::make_pointer(Region r, TypePtr elem)
{
    auto t = std::make_shared<Type>();
    t->kind = Kind::pointer;
    t->region = r;
    t->elem = std::move(elem);
    return t;
}

TypePtr Type::make_array(TypePtr elem, long long length)
{
    if (length < 0)
        throw std::invalid_argument{"array length must be nonnegative"};
    auto t = std::make_shared<Type>();
    t->kind = Kind::array;
    t->elem = std::move(elem);
    t->length = length;
    return t;
}

TypePtr Type::make_hashmap(TypePtr key, TypePtr elem)
{
    if (!key || !key->is_word_sized())
        throw std::invalid_argument{"hashmap key must be word sized"};
    auto t = std::make_shared<Type>();
    t->kind = Kind::hashmap;
    t->key = std::move(key);
    t->elem = std::move(elem);
    return t;
}

TypePtr Type::make_function(std::vector<TypePtr> params, TypePtr ret)
{
    auto t = std::make_shared<Type>();
    t->kind = Kind::function;
    t->params = std::move(params);
    t->ret = std::move(ret);
    return t;
}

static void check_fields(const std::vector<Type::Field>& fields)
{
    std::set<std::string> seen;
    for (const auto& f : fields)
    {
        if (!seen.insert(f.name).second)
            throw std::invalid_argument{"duplicate field name: " + f.name};
    }
}

TypePtr Type::make_struct(std::string name, std::vector<Field> fields)
{
    check_fields(fields);
    auto t = std::make_shared<Type>();
    t->kind = Kind::struct_t;
    t->name = std::move(name);
    t->fields = std::move(fields);
    return t;
}

TypePtr Type::make_union(std::string name, std::vector<Field> fields)
{
    check_fields(fields);
    auto t = std::make_shared<Type>();
    t->kind = Kind::union_t;
    t->name = std::move(name);
    t->fields = std::move(fields);
    return t;
}

TypePtr Type::make_comp_ptr(std::string name)
{
    auto t = std::make_shared<Type>();
    t->kind = Kind::comp_ptr;
    t->name = std::move(name);
    return t;
}

int Type::field_ordinal(const std::string& fname) const
{
    for (size_t i = 0; i < fields.size(); ++i)
        if (fields[i].name == fname)
            return static_cast<int>(i);
    return -1;
}

const Type::Field* Type::find_field(const std::string& fname) const
{
    int i = field_ordinal(fname);
    return i < 0 ? nullptr : &fields[static_cast<size_t>(i)];
}

bool Type::equals(const Type& o) const
{
    if (kind != o.kind)
        return false;
    switch (kind)
    {
    case Kind::void_t:
        return true;
    case Kind::int_t:
        return width == o.width;
    case Kind::pointer:
        return region == o.region && type_equal(elem, o.elem);
    case Kind::array:
        return length == o.length && type_equal(elem, o.elem);
    case Kind::hashmap:
        return type_equal(key, o.key) && type_equal(elem, o.elem);
    case Kind::function:
    {
        if (params.size() != o.params.size() || !type_equal(ret, o.ret))
            return false;
        for (size_t i = 0; i < params.size(); ++i)
            if (!type_equal(params[i], o.params[i]))
                return false;
        return true;
    }
    case Kind::struct_t:
    case Kind::union_t:
    {
        if (name != o.name || fields.size() != o.fields.size())
            return false;
        for (size_t i = 0; i < fields.size(); ++i)
            if (fields[i].name != o.fields[i].name || !type_equal(fields[i].type, o.fields[i].type))
                return false;
        return true;
    }
    case Kind::comp_ptr:
        return name == o.name;
    }
    return false;
}

bool type_equal(const TypePtr& a, const TypePtr& b)
{
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    return a->equals(*b);
}

std::string Type::str() const
{
    std::ostringstream os;
    switch (kind)
    {
    case Kind::void_t:
        os << "void";
        break;
    case Kind::int_t:
        if (!name.empty())
            os << name;
        else if (width == 256)
            os << "int";
        else
            os << "int" << width;
        break;
    case Kind::pointer:
        os << (region == Region::memory ? "mem_ptr " : "stor_ptr ") << elem->str();
        break;
    case Kind::array:
        os << "array[" << length << "] " << elem->str();
        break;
    case Kind::hashmap:
        os << "mapping[" << key->str() << "] " << elem->str();
        break;
    case Kind::function:
    {
        os << "(";
        for (size_t i = 0; i < params.size(); ++i)
            os << (i ? ", " : "") << params[i]->str();
        os << ") -> " << (ret ? ret->str() : "void");
        break;
    }
    case Kind::struct_t:
        os << "struct " << name;
        break;
    case Kind::union_t:
        os << "union " << name;
        break;
    case Kind::comp_ptr:
        os << "ptr " << name;
        break;
    }
    return os.str();
}

}  // namespace minicc
