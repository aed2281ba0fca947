// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "minicc/ast.hpp"
#include "minicc/types.hpp"
#include "minicc/word.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace minicc
{
/// Surface syntax for contract sources (.ds files), kept apart from
/// the typed program: parse() produces this AST, print() renders it
/// back to canonical text, and typecheck() elaborates it into a
/// Program ready for the pipeline. The grammar is documented in
/// docs/grammar.md.

class SrcExpr;
using SrcExprPtr = std::shared_ptr<const SrcExpr>;

class SrcExpr
{
public:
    enum class Kind
    {
        number,      // decimal or hex literal
        boolean,     // true / false
        string_lit,  // short ASCII text, one left-aligned word
        ident,       // parameter, let binding, or state variable
        builtin0,    // msg_sender, msg_value, this_address, block_number
        balance,     // balance(addr)
        binop,
        index,       // base[key]
        call,        // f(args); only legal where a command allows it
    };

    Kind kind = Kind::number;
    Word number;
    bool bvalue = false;
    std::string text;  // string_lit payload, ident / call name
    Builtin0 b0 = Builtin0::caller;
    BinOp op = BinOp::add;
    SrcExprPtr lhs, rhs;            // binop; index base/key; balance arg in lhs
    std::vector<SrcExprPtr> args;   // call

    static SrcExprPtr make_number(Word v);
    static SrcExprPtr make_boolean(bool b);
    static SrcExprPtr make_string(std::string s);
    static SrcExprPtr make_ident(std::string name);
    static SrcExprPtr make_builtin0(Builtin0 b);
    static SrcExprPtr make_balance(SrcExprPtr addr);
    static SrcExprPtr make_binop(BinOp op, SrcExprPtr a, SrcExprPtr b);
    static SrcExprPtr make_index(SrcExprPtr base, SrcExprPtr key);
    static SrcExprPtr make_call(std::string name, std::vector<SrcExprPtr> args);
};

class SrcCmd;
using SrcCmdPtr = std::shared_ptr<const SrcCmd>;

class SrcCmd
{
public:
    enum class Kind
    {
        let_in,    // let x = rhs in body
        seq,       // a; b
        ifte,      // else branch optional
        for_to,    // for x = lo to hi do body (inclusive bounds)
        assert_,   // assert(e)
        emit,      // emit Event(args)
        transfer,  // transfer(to, amount)
        assign,    // path := e
        value,     // expression in tail position, or a bare call
    };

    Kind kind = Kind::value;
    std::string name;          // let_in / for_to binder; emit event name
    SrcExprPtr e1, e2;         // ifte cond in e1; for bounds; assign path/rhs;
                               // transfer to/amount; assert / value in e1
    SrcCmdPtr c1, c2, c3;      // let rhs/body; seq; ifte branches; loop body
    std::vector<SrcExprPtr> args;  // emit

    static SrcCmdPtr make_let_in(std::string x, SrcCmdPtr rhs, SrcCmdPtr body);
    static SrcCmdPtr make_seq(SrcCmdPtr a, SrcCmdPtr b);
    static SrcCmdPtr make_ifte(SrcExprPtr cond, SrcCmdPtr t, SrcCmdPtr e_or_null);
    static SrcCmdPtr make_for(std::string x, SrcExprPtr lo, SrcExprPtr hi,
                              SrcCmdPtr body);
    static SrcCmdPtr make_assert(SrcExprPtr e);
    static SrcCmdPtr make_emit(std::string event, std::vector<SrcExprPtr> args);
    static SrcCmdPtr make_transfer(SrcExprPtr to, SrcExprPtr amount);
    static SrcCmdPtr make_assign(SrcExprPtr path, SrcExprPtr rhs);
    static SrcCmdPtr make_value(SrcExprPtr e);
};

struct SrcFormal
{
    std::string name;
    TypePtr type;  // null when the object signature supplies it
};

struct SrcMethod
{
    std::string name;
    bool is_const = false;  // read-only marker, informational
    std::vector<SrcFormal> formals;
    TypePtr ret;  // null when the signature supplies it
    SrcCmdPtr body;
};

struct SrcStateVar
{
    std::string name;
    TypePtr type;
    enum class Init
    {
        mapping_init,
        number,
        boolean,
    } init = Init::number;
    Word init_number;
    bool init_bool = false;
};

struct SrcObject
{
    std::string name;
    std::string signature;  // empty: no ascription
    std::vector<SrcStateVar> state;
    std::vector<SrcMethod> methods;
};

struct SrcSigEntry
{
    std::string name;
    bool is_const = false;
    std::vector<TypePtr> params;  // empty for "unit ->"
    TypePtr ret;
};

struct SrcSignature
{
    std::string name;
    std::vector<SrcSigEntry> entries;

    const SrcSigEntry* find(const std::string& n) const;
};

struct SrcEvent
{
    std::string name;
    std::vector<TypePtr> params;
};

struct SrcLayer
{
    std::string name;
    std::string ascription;  // ": SIG" after the layer name, if any
    std::string underlay;    // "@ NAME" underlay clause, if any
    std::vector<std::pair<std::string, std::string>> bindings;  // slot = object
};

struct SourceUnit
{
    std::vector<SrcSignature> signatures;
    std::vector<SrcEvent> events;
    std::vector<SrcObject> objects;
    std::vector<SrcLayer> layers;
};

/// Parses source text. Throws Error{SyntaxError} with line:column on
/// malformed input.
SourceUnit parse(const std::string& text);

/// Canonical text form; parse(print(u)) reproduces u node for node.
std::string print(const SourceUnit& u);

/// Elaborates a parsed unit into a typed program: resolves the object
/// signature, types every expression, desugars assert / emit / for,
/// and checks the structural rules (single object, internal-only
/// calls, acyclic call graph, every path returns). Throws Error with
/// codes TypeError, UnknownIdent, DuplicateIdent, ArityMismatch,
/// UnsupportedFeature, CallInConstructor.
Program typecheck(const SourceUnit& u);

/// One verification side condition: proving it guarantees the
/// annotated operation stays in range at runtime.
struct SideCondition
{
    enum class Kind
    {
        range_check,      // integer assignment result fits a word
        nonzero_divisor,  // div / mod divisor is nonzero
    };

    std::string function;
    int stmt_index = 0;  // preorder statement position within the body
    Kind kind = Kind::range_check;
    std::string predicate;
    std::string expr;
};

/// Side conditions for a typed program, ordered by (function,
/// statement index). One range check per integer assignment whose
/// right side computes arithmetic; one divisor check per div/mod.
std::vector<SideCondition> emit_vcs(const Program& p);

/// JSON-lines rendering of a side-condition report.
std::string vcs_to_jsonl(const std::vector<SideCondition>& vcs);

}  // namespace minicc
