// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "minicc/ast.hpp"
#include "minicc/ir.hpp"

#include <set>
#include <vector>

namespace minicc
{
/// Lowers the typed AST to Clike: named locals become dense temp ids
/// (parameters first), storage accesses become explicit hash chains
/// with sload/sstore, le/ge/ne and negation are rewritten in terms of
/// gt/lt/eq and subtraction, and every void function body is closed
/// with an explicit done so all paths end in done or revert.
/// Throws Error{UnknownGlobal} for accesses to undeclared state.
ClikeProgram to_clike(const Program& p);

/// Builds the per-statement control-flow graph of one function. Every
/// reachable statement becomes one node; unreachable nodes are pruned.
CfgFn build_cfg(const ClikeFn& f);
CgraphProgram to_cgraph(const ClikeProgram& p);

/// Backward may-be-used-later analysis over temp ids, least fixpoint.
struct Liveness
{
    std::vector<std::set<int>> live_in;   // per node id
    std::vector<std::set<int>> live_out;
};
Liveness liveness(const CfgFn& f);

/// Temps read by a node's statement, and the temp it writes (-1 if
/// none).
std::set<int> cfg_stmt_uses(const CfgStmt& s);
int cfg_stmt_def(const CfgStmt& s);

/// Renames temps onto a compact slot set by greedy graph coloring in
/// maximum-cardinality-search order. Arguments keep slots 0..n_args-1.
/// Throws Error{StackTooDeep} when more than 15 slots are needed.
CfgFn allocate_temps(const CfgFn& f, const Liveness& live);
CgraphProgram allocate_program(const CgraphProgram& p);

/// One basic block per CFG node: the statement plus an explicit
/// terminator (jump/branch/call/done/revert).
CbasicFn to_cbasic_fn(const CfgFn& f);
CbasicProgram to_cbasic(const CgraphProgram& p);

/// Flattens blocks into one statement list by depth-first layout,
/// eliding the jump when a block's successor directly follows it.
/// Prepends the entry label, fetchargs, and one intro per local slot.
ClinearFn linearize_fn(const CbasicFn& f);
ClinearProgram linearize(const CbasicProgram& p);

/// Flattens expressions onto the work stack. Records the work-stack
/// depth before every statement for later dup/swap computation.
/// Throws Error{UnresolvedLabel} if a referenced label is not defined
/// exactly once in the program.
StackedProgram to_stacked(const ClinearProgram& p);

/// Replaces temp reads/writes by dup/swap at computed indices, expands
/// fetchargs per function kind, and inserts frame cleanup before the
/// done of internal functions. Throws Error{CallInConstructor} for
/// calls reached from the constructor and Error{StackTooDeep} when an
/// access needs a dup/swap index beyond 16.
ExprlessProgram to_expressionless(const StackedProgram& p);

/// Concatenates everything into one runtime unit behind a selector
/// dispatcher, plus a separate deployment unit for the constructor.
/// Throws Error{DuplicateLabel} / Error{DuplicateSelector}.
MethodicalProgram methodize(const ExprlessProgram& p);

/// ABI-style method signature, e.g. "transfer(address,uint256)".
std::string method_signature(const Function& f);

/// Dispatch selector: the first four bytes of keccak-256 of the
/// signature, as a small word.
Word selector_of(const std::string& signature);
}  // namespace minicc
