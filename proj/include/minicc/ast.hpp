// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "minicc/types.hpp"
#include "minicc/value.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace minicc
{
enum class UnOp
{
    lnot,  // logical not, 1 iff operand is 0
    bnot,  // bitwise complement
    neg,   // two's complement negation
};

enum class BinOp
{
    add,
    sub,
    mul,
    div_,
    mod,
    bit_and,
    bit_or,
    bit_xor,
    eq,
    ne,
    lt,
    gt,
    le,
    ge,
};

/// Environment queries with no argument.
enum class Builtin0
{
    self_address,
    caller,
    callvalue,
    block_number,
};

/// Environment queries with one argument.
enum class Builtin1
{
    balance,
};

const char* unop_name(UnOp op);
const char* binop_name(BinOp op);
const char* builtin0_name(Builtin0 b);
const char* builtin1_name(Builtin1 b);

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// MiniC expression. Every node carries its type annotation.
class Expr
{
public:
    enum class Kind
    {
        int_lit,    // small integer literal
        int256_lit, // full-width literal
        var,        // local state-like variable (l-value by name)
        glob,       // contract state variable
        temp,       // function-local temporary
        deref,      // pointer dereference
        addr,       // address-of, l-value to pointer rvalue
        unop,
        binop,
        field,      // struct member access
        index,      // array/hashmap element access
        call0,      // builtin, no argument
        call1,      // builtin, one argument
    };

    Kind kind;
    TypePtr type;

    Word literal;              // int_lit / int256_lit
    std::string name;          // var / glob / temp / field member
    ExprPtr sub;               // deref / addr / unop / field / call1
    ExprPtr lhs, rhs;          // binop / index
    UnOp un = UnOp::lnot;
    BinOp bin = BinOp::add;
    Builtin0 b0 = Builtin0::self_address;
    Builtin1 b1 = Builtin1::balance;

    static ExprPtr make_int(Word v, TypePtr t);
    static ExprPtr make_int256(Word v, TypePtr t);
    static ExprPtr make_var(std::string name, TypePtr t);
    static ExprPtr make_glob(std::string name, TypePtr t);
    static ExprPtr make_temp(std::string name, TypePtr t);
    static ExprPtr make_deref(ExprPtr e, TypePtr t);
    static ExprPtr make_addr(ExprPtr e, TypePtr t);
    static ExprPtr make_unop(UnOp op, ExprPtr e, TypePtr t);
    static ExprPtr make_binop(BinOp op, ExprPtr a, ExprPtr b, TypePtr t);
    static ExprPtr make_field(ExprPtr base, std::string member, TypePtr t);
    static ExprPtr make_index(ExprPtr base, ExprPtr idx, TypePtr t);
    static ExprPtr make_call0(Builtin0 b, TypePtr t);
    static ExprPtr make_call1(Builtin1 b, ExprPtr e, TypePtr t);

    /// True for expressions that denote a location (assignable).
    bool is_lvalue_expr() const;

    std::string str() const;
};

class Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

/// MiniC statement.
class Stmt
{
public:
    enum class Kind
    {
        skip,
        assign,     // lhs (l-value expr) := rhs
        set,        // temp := rhs
        call,       // optional result temp, callee name, args
        sequence,
        ifte,
        loop,       // infinite loop, exited by break
        break_,
        return_,    // optional value
        transfer,   // transfer(to, amount)
        callmethod, // external method call: target addr, arg temps, result temp
        log,        // log(topics, data)
        revert,
    };

    Kind kind;

    ExprPtr lhs, rhs;               // assign; ifte cond in lhs; transfer to/amount
    std::string temp;               // set target, call result, callmethod result
    std::string callee;             // call
    std::vector<ExprPtr> args;      // call; log data
    std::vector<ExprPtr> topics;    // log
    std::vector<std::string> arg_temps;  // callmethod
    StmtPtr s1, s2;                 // sequence; ifte branches; loop body in s1
    std::optional<ExprPtr> value;   // return

    static StmtPtr make_skip();
    static StmtPtr make_assign(ExprPtr lhs, ExprPtr rhs);
    static StmtPtr make_set(std::string temp, ExprPtr rhs);
    static StmtPtr make_call(std::optional<std::string> result, std::string callee,
                             std::vector<ExprPtr> args);
    static StmtPtr make_sequence(StmtPtr a, StmtPtr b);
    static StmtPtr make_ifte(ExprPtr cond, StmtPtr then_s, StmtPtr else_s);
    static StmtPtr make_loop(StmtPtr body);
    static StmtPtr make_break();
    static StmtPtr make_return(std::optional<ExprPtr> v);
    static StmtPtr make_transfer(ExprPtr to, ExprPtr amount);
    static StmtPtr make_callmethod(ExprPtr target, std::vector<std::string> arg_temps,
                                   std::string result);
    static StmtPtr make_log(std::vector<ExprPtr> topics, std::vector<ExprPtr> data);
    static StmtPtr make_revert();

    bool has_result() const { return !temp.empty(); }

    std::string str() const;
};

enum class FunctionKind
{
    constructor,
    method,    // externally callable, dispatched by selector
    internal,  // callable only from inside the contract
};

struct Param
{
    std::string name;
    TypePtr type;
};

struct Function
{
    std::string name;
    FunctionKind kind = FunctionKind::method;
    std::vector<Param> params;
    std::vector<Param> temps;  // locals introduced by let bindings
    TypePtr ret;               // void for unit-returning functions
    StmtPtr body;

    bool returns_value() const { return ret && !ret->is_void(); }
};

struct GlobalVar
{
    std::string name;
    TypePtr type;
    Word slot;  // storage slot, assigned in declaration order
};

struct Event
{
    std::string name;
    Word id = 0;  // first log topic
    std::vector<TypePtr> params;
};

/// Storage layout and name resolution context for a contract.
struct Layout
{
    std::vector<GlobalVar> globals;  // declaration order; slot = index
    CompositeTable composites;

    const GlobalVar* find_global(const std::string& name) const;

    /// Follows a comp_ptr to its named composite; identity on other
    /// types. Throws Error{UnknownIdent} for an undeclared name.
    TypePtr resolve(const TypePtr& t) const;
};

struct Program
{
    std::string name;
    Layout layout;
    std::vector<Function> functions;  // constructor first by convention
    std::map<std::string, Event> events;

    const Function* find_function(const std::string& name) const;
    const Function* constructor() const;
    std::vector<const Function*> methods() const;
};

/// Maps a Global-rooted access path to the storage hash key whose
/// nesting mirrors the path: the root becomes singleton(slot) and each
/// Index/Field step appends a pair(..) layer (index value, or field
/// ordinal within the struct).
/// Throws Error{LocalRoot} for Local-rooted paths and
/// Error{UnknownIdent} for globals missing from the layout.
HashKey eid_to_hashkey(const ExtIdent& path, const Layout& layout);

/// Static type of the location named by a Global-rooted path.
TypePtr eid_type(const ExtIdent& path, const Layout& layout);

}  // namespace minicc
