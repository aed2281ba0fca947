// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "minicc/ir.hpp"
#include "minicc/memory.hpp"
#include "minicc/refexec.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace minicc
{
/// Interpreters for every compilation phase, shaped like run_method /
/// run_constructor so one harness can compare them all.
///
/// Gas reporting differs by phase. Clike through Clinear charge the
/// same per-construct upper bounds as the reference executor, so
/// gas_bound is a bound that never increases across those phases.
/// Stacked and below charge the exact fee of each statement's compiled
/// image, so gas_bound equals the gas the assembled bytecode consumes.
///
/// Malformed machine states (a label where a word is expected, a jump
/// to nowhere, running off the end of a function) raise StuckState;
/// compiler output never triggers them.

ExecOutcome clike_run_method(const ClikeProgram& p, const Memory& pre,
                             MachineEnv env, const std::string& method,
                             const std::vector<Value>& args);
ExecOutcome clike_run_constructor(const ClikeProgram& p, const Memory& pre,
                                  MachineEnv env, const std::vector<Value>& args);

ExecOutcome cgraph_run_method(const CgraphProgram& p, const Memory& pre,
                              MachineEnv env, const std::string& method,
                              const std::vector<Value>& args);
ExecOutcome cgraph_run_constructor(const CgraphProgram& p, const Memory& pre,
                                   MachineEnv env, const std::vector<Value>& args);

ExecOutcome cbasic_run_method(const CbasicProgram& p, const Memory& pre,
                              MachineEnv env, const std::string& method,
                              const std::vector<Value>& args);
ExecOutcome cbasic_run_constructor(const CbasicProgram& p, const Memory& pre,
                                   MachineEnv env, const std::vector<Value>& args);

ExecOutcome clinear_run_method(const ClinearProgram& p, const Memory& pre,
                               MachineEnv env, const std::string& method,
                               const std::vector<Value>& args);
ExecOutcome clinear_run_constructor(const ClinearProgram& p, const Memory& pre,
                                    MachineEnv env, const std::vector<Value>& args);

/// Exact-gas phases. Method runs pre-charge the dispatcher path the
/// bytecode would take; the code layout prices the constructor's
/// CODECOPY/RETURN epilogue and may be defaulted when deployment gas
/// is not under test.
ExecOutcome stacked_run_method(const StackedProgram& p, const Memory& pre,
                               MachineEnv env, const std::string& method,
                               const std::vector<Value>& args,
                               const CodeLayout& layout = {});
ExecOutcome stacked_run_constructor(const StackedProgram& p, const Memory& pre,
                                    MachineEnv env, const std::vector<Value>& args,
                                    const CodeLayout& layout = {});

ExecOutcome exprless_run_method(const ExprlessProgram& p, const Memory& pre,
                                MachineEnv env, const std::string& method,
                                const std::vector<Value>& args,
                                const CodeLayout& layout = {});
ExecOutcome exprless_run_constructor(const ExprlessProgram& p, const Memory& pre,
                                     MachineEnv env, const std::vector<Value>& args,
                                     const CodeLayout& layout = {});

/// The last IR runs under a gas limit, like a real transaction: used
/// and remaining gas are tracked separately and out-of-gas aborts the
/// run with all gas consumed and no state change. sync_log, when
/// given, receives (gas_used, gas_remaining) after every statement.
struct MethodicalRun
{
    ExecOutcome outcome;
    bool out_of_gas = false;
};

MethodicalRun methodical_run_method(
    const MethodicalProgram& p, const Memory& pre, MachineEnv env,
    const std::string& method, const std::vector<Value>& args, int64_t gas_limit,
    std::vector<std::pair<int64_t, int64_t>>* sync_log = nullptr);
MethodicalRun methodical_run_constructor(
    const MethodicalProgram& p, const Memory& pre, MachineEnv env,
    const std::vector<Value>& args, int64_t gas_limit,
    std::vector<std::pair<int64_t, int64_t>>* sync_log = nullptr);

}  // namespace minicc
