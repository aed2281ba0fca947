// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "minicc/ast.hpp"
#include "minicc/value.hpp"
#include "minicc/word.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace minicc
{
using Label = std::string;

/// Operators shared by the lowered IRs. le/ge/ne and negation are
/// gone by Clike; hash construction appears as ohash1/ohash2.
enum class IrUnop
{
    lnot,    // ISZERO
    bnot,    // NOT
    ohash1,  // one-cell hash: x -> Vhash(x)
};

enum class IrBinop
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
    lt,
    gt,
    ohash2,  // hash step: base, key -> Vhash2(base, key)
};

const char* ir_unop_name(IrUnop op);
const char* ir_binop_name(IrBinop op);
bool ir_binop_commutative(IrBinop op);

/// Expression tree used by Clike through Clinear. Temps are referred
/// to by slot index once allocated (Cgraph onward); before allocation
/// the index is a dense per-function temp id.
class CExpr;
using CExprPtr = std::shared_ptr<const CExpr>;

class CExpr
{
public:
    enum class Kind
    {
        cnst,    // word constant
        temp,    // temp read by id/slot
        sload,   // storage load at hash-valued sub
        unop,
        binop,
        hash1,   // Vhash(sub)
        hash2,   // Vhash2(lhs, rhs) = pair(base, key)
        call0,   // environment builtin
        call1,
    };

    Kind kind = Kind::cnst;
    Word literal;
    int temp_id = -1;
    CExprPtr sub;        // sload / unop / hash1 / call1
    CExprPtr lhs, rhs;   // binop / hash2
    IrUnop un = IrUnop::lnot;
    IrBinop bin = IrBinop::add;
    Builtin0 b0 = Builtin0::self_address;
    Builtin1 b1 = Builtin1::balance;

    static CExprPtr make_const(Word v);
    static CExprPtr make_temp(int id);
    static CExprPtr make_sload(CExprPtr ptr);
    static CExprPtr make_unop(IrUnop op, CExprPtr e);
    static CExprPtr make_binop(IrBinop op, CExprPtr a, CExprPtr b);
    static CExprPtr make_hash1(CExprPtr e);
    static CExprPtr make_hash2(CExprPtr base, CExprPtr key);
    static CExprPtr make_call0(Builtin0 b);
    static CExprPtr make_call1(Builtin1 b, CExprPtr e);

    /// Number of nodes in this tree.
    int node_count() const;
    /// Collects temp ids read by this expression.
    void collect_temps(std::vector<int>& out) const;

    std::string str() const;
};

// ---------------------------------------------------------------------------
// Clike: structured statements over CExpr; storage access is explicit.

class ClikeStmt;
using ClikeStmtPtr = std::shared_ptr<const ClikeStmt>;

class ClikeStmt
{
public:
    enum class Kind
    {
        skip,
        sstore,    // storage write: ptr expr, value expr
        set,       // temp := expr
        call,      // optional result temp, callee, args
        sequence,
        ifte,
        loop,
        break_,
        done,      // function return, optional value
        transfer,
        callmethod,
        log,
        revert,
    };

    Kind kind = Kind::skip;
    CExprPtr ptr, value;             // sstore; transfer to/amount; ifte cond in ptr
    int temp_id = -1;                // set target, call result (-1: none)
    std::string callee;
    std::vector<CExprPtr> args;      // call args; log data
    std::vector<CExprPtr> topics;    // log topics
    ClikeStmtPtr s1, s2;

    static ClikeStmtPtr make_skip();
    static ClikeStmtPtr make_sstore(CExprPtr ptr, CExprPtr value);
    static ClikeStmtPtr make_set(int temp, CExprPtr value);
    static ClikeStmtPtr make_call(int result, std::string callee, std::vector<CExprPtr> args);
    static ClikeStmtPtr make_sequence(ClikeStmtPtr a, ClikeStmtPtr b);
    static ClikeStmtPtr make_ifte(CExprPtr cond, ClikeStmtPtr t, ClikeStmtPtr e);
    static ClikeStmtPtr make_loop(ClikeStmtPtr body);
    static ClikeStmtPtr make_break();
    static ClikeStmtPtr make_done(CExprPtr value_or_null);
    static ClikeStmtPtr make_transfer(CExprPtr to, CExprPtr amount);
    static ClikeStmtPtr make_callmethod(CExprPtr target, std::vector<int> arg_temps, int result);
    static ClikeStmtPtr make_log(std::vector<CExprPtr> topics, std::vector<CExprPtr> data);
    static ClikeStmtPtr make_revert();

    std::vector<int> callmethod_args;  // callmethod arg temps

    std::string str() const;
};

struct ClikeFn
{
    std::string name;
    FunctionKind kind = FunctionKind::method;
    int n_args = 0;
    int n_temps = 0;  // args + locals, ids 0..n_temps-1; args first
    bool returns_value = false;
    ClikeStmtPtr body;
    std::string selector_signature;  // methods only, e.g. "transfer(address,uint256)"
};

struct ClikeProgram
{
    std::string name;
    Layout layout;
    std::vector<ClikeFn> functions;
    int source_node_count = 0;

    const ClikeFn* find(const std::string& fname) const;
};

// ---------------------------------------------------------------------------
// Cgraph: control-flow graph, one simple statement per node.

class CfgStmt
{
public:
    enum class Kind
    {
        skip,
        sstore,
        set,
        transfer,
        log,
        branch,     // condition in `cond`; two successors: true, false
        call,       // one successor: continuation
        done,       // terminal
        callmethod,
        revert,     // terminal
    };

    Kind kind = Kind::skip;
    CExprPtr ptr, value, cond;
    int temp_id = -1;
    std::string callee;
    std::vector<CExprPtr> args;
    std::vector<CExprPtr> topics;
    std::vector<int> callmethod_args;
    std::optional<CExprPtr> ret;  // done

    std::string str() const;
};

struct CfgNode
{
    CfgStmt stmt;
    std::vector<int> succ;  // branch: [on_true, on_false]; else 0..1 entries
};

struct CfgFn
{
    std::string name;
    FunctionKind kind = FunctionKind::method;
    int n_args = 0;
    int n_temps = 0;   // before allocation: dense temp ids; after: slot count
    bool returns_value = false;
    int entry = 0;
    std::vector<CfgNode> nodes;
    std::string selector_signature;

    /// Drops nodes unreachable from entry, remapping ids.
    void prune_unreachable();
};

struct CgraphProgram
{
    std::string name;
    Layout layout;
    std::vector<CfgFn> functions;
    int source_node_count = 0;

    const CfgFn* find(const std::string& fname) const;
};

// ---------------------------------------------------------------------------
// Cbasic: basic blocks with explicit terminators.

struct Terminator
{
    enum class Kind
    {
        jump,    // target
        branch,  // cond, on_true, on_false
        call,    // callee, args, result temp, continuation label
        done,    // optional return expr
        revert,
    };

    Kind kind = Kind::jump;
    Label target;          // jump; branch on_true
    Label target2;         // branch on_false
    Label cont;            // call continuation
    CExprPtr cond;
    std::string callee;
    std::vector<CExprPtr> args;
    int result_temp = -1;
    std::optional<CExprPtr> ret;

    std::string str() const;
};

struct BasicBlock
{
    Label label;
    std::vector<CfgStmt> body;  // simple statements only
    Terminator term;
};

struct CbasicFn
{
    std::string name;
    FunctionKind kind = FunctionKind::method;
    int n_args = 0;
    int n_slots = 0;
    bool returns_value = false;
    Label entry;
    std::vector<BasicBlock> blocks;  // stable order; labels unique
    std::string selector_signature;

    const BasicBlock* find_block(const Label& l) const;
};

struct CbasicProgram
{
    std::string name;
    Layout layout;
    std::vector<CbasicFn> functions;
    int source_node_count = 0;

    const CbasicFn* find(const std::string& fname) const;
};

// ---------------------------------------------------------------------------
// Clinear: flat statement list with labels and fall-through.

struct LinStmt
{
    enum class Kind
    {
        label,
        fetchargs,
        intro,     // reserve one zeroed temp slot
        skip,
        set,
        sstore,
        transfer,
        log,
        jump,
        jumpi,     // cond, target
        call,      // callee, args, result temp, return label
        done,
        callmethod,
        revert,
    };

    Kind kind = Kind::label;
    Label label;          // label/jump/jumpi target; call return label in `cont`
    Label cont;
    CExprPtr ptr, value, cond;
    int temp_id = -1;
    std::string callee;
    std::vector<CExprPtr> args;
    std::vector<CExprPtr> topics;
    std::vector<int> callmethod_args;
    std::optional<CExprPtr> ret;

    std::string str() const;
};

struct ClinearFn
{
    std::string name;
    FunctionKind kind = FunctionKind::method;
    int n_args = 0;
    int n_slots = 0;
    bool returns_value = false;
    Label entry;
    std::vector<LinStmt> code;
    std::string selector_signature;
};

struct ClinearProgram
{
    std::string name;
    Layout layout;
    std::vector<ClinearFn> functions;
    int source_node_count = 0;

    const ClinearFn* find(const std::string& fname) const;
};

// ---------------------------------------------------------------------------
// Stacked: flat stack operations; expressions are single-level.

struct StackedExpr
{
    enum class Kind
    {
        const256,
        global,   // pushes the global's slot number
        temp,     // slot read
        sload,
        unop,
        binop,
        call0,
        call1,
    };

    Kind kind = Kind::const256;
    Word literal;
    std::string global_name;
    int temp_index = -1;
    IrUnop un = IrUnop::lnot;
    IrBinop bin = IrBinop::add;
    bool swapped = false;  // binop operand order flag; never set by this compiler
    Builtin0 b0 = Builtin0::self_address;
    Builtin1 b1 = Builtin1::balance;

    std::string str() const;
};

struct StackedStmt
{
    enum class Kind
    {
        skip,
        rvalue,
        pushvoid,
        pop,
        assign,        // storage write; stack: [ptr, value, ...]
        set,           // write stack top to slot n
        done,          // frame size, returns value flag
        pushlabel,
        label,
        jump_call,     // pops callee label
        jump_internal, // pops target label
        jumpi,         // pops target label, then condition
        transfer,      // stack: [amount, to, ...]
        callmethod,
        log,           // pops n1 topics then n2 data words
        revert,
        fetchargs,
    };

    Kind kind = Kind::skip;
    StackedExpr expr;     // rvalue
    int n = 0;            // set slot; done frame size; dup-style counts
    bool returns_value = false;  // done
    Label label;          // pushlabel / label
    int log_topics = 0, log_data = 0;
    int cm_args = 0, cm_rets = 0;
    std::string cm_target;

    std::string str() const;
};

struct StackedFn
{
    std::string name;
    FunctionKind kind = FunctionKind::method;
    int n_args = 0;
    int n_slots = 0;
    bool returns_value = false;
    Label entry;
    std::vector<StackedStmt> code;
    /// Work-stack depth (entries above the frame slots) before each
    /// statement, tracked by the translator for dup/swap computation.
    std::vector<int> depth_before;
    std::string selector_signature;
};

struct StackedProgram
{
    std::string name;
    Layout layout;
    std::vector<StackedFn> functions;
    int source_node_count = 0;

    const StackedFn* find(const std::string& fname) const;
    /// Label -> (function index, statement index). Labels are
    /// program-unique; built on demand by interpreters.
    std::map<Label, std::pair<int, int>> label_index() const;
};

// ---------------------------------------------------------------------------
// Expressionless / Methodical: no expressions, push/dup/swap level.

/// Push payload: a value or a code label.
struct PushArg
{
    bool is_label = false;
    Value value = Value::from_word(0);
    Label label;

    static PushArg of_value(Value v);
    static PushArg of_label(Label l);
    bool operator==(const PushArg& o) const;
    std::string str() const;
};

struct ExStmt
{
    enum class Kind
    {
        push,
        dup,      // dup(n), 1-based
        sload,
        unop,
        binop,
        call0,
        call1,
        skip,
        pop,
        sstore,
        swap,     // swap(n), 1-based
        done,
        label,
        jump,
        jumpi,
        transfer,
        callmethod,
        log,
        revert,
        calldataload,          // pops offset, pushes calldata word
        constructordataload,   // n = constructor arg index
    };

    Kind kind = Kind::skip;
    PushArg push;
    int n = 0;  // dup/swap index; constructordataload arg index
    IrUnop un = IrUnop::lnot;
    IrBinop bin = IrBinop::add;
    bool swapped = false;
    Builtin0 b0 = Builtin0::self_address;
    Builtin1 b1 = Builtin1::balance;
    FunctionKind fn_kind = FunctionKind::method;  // done
    bool returns_value = false;                   // done
    Label label;
    int log_topics = 0, log_data = 0;
    int cm_args = 0, cm_rets = 0;

    bool operator==(const ExStmt& o) const;
    std::string str() const;
};

struct ExprlessFn
{
    std::string name;
    FunctionKind kind = FunctionKind::method;
    int n_args = 0;
    int n_slots = 0;
    bool returns_value = false;
    Label entry;
    std::vector<ExStmt> code;
    std::string selector_signature;
};

struct ExprlessProgram
{
    std::string name;
    Layout layout;
    std::vector<ExprlessFn> functions;
    int source_node_count = 0;

    const ExprlessFn* find(const std::string& fname) const;
    std::map<Label, std::pair<int, int>> label_index() const;
};

/// Byte sizes of the assembled code units, back-annotated by the
/// assembler; needed for constructor data loads and exact deployment
/// gas in the IR interpreters.
struct CodeLayout
{
    int64_t deploy_len = 0;
    int64_t runtime_len = 0;
    bool known = false;
};

struct MethodEntry
{
    Word selector;
    Label label;
    std::string name;
    int n_args = 0;
    bool returns_value = false;
};

struct MethodicalProgram
{
    std::string name;
    Layout layout;
    std::vector<ExStmt> runtime_code;  // dispatcher, then method/internal bodies
    std::vector<ExStmt> deploy_code;   // constructor body
    std::vector<MethodEntry> methods;  // dispatch order
    Label runtime_abort;               // dispatcher fallthrough revert
    Label deploy_abort;
    int ctor_args = 0;
    int source_node_count = 0;
    CodeLayout code_layout;

    std::map<Label, int> runtime_labels() const;
    std::map<Label, int> deploy_labels() const;
    const MethodEntry* find_method(const std::string& name) const;
};

}  // namespace minicc
