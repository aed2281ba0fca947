// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "minicc/ast.hpp"
#include "minicc/memory.hpp"
#include "minicc/value.hpp"

#include <map>
#include <string>
#include <vector>

namespace minicc
{
/// One emitted event: evaluated topic and data words.
struct LogRecord
{
    std::vector<Value> topics;
    std::vector<Value> data;

    bool operator==(const LogRecord& o) const = default;
};

/// Result of one reference run. A reverted run carries the pre-state
/// (storage, balances) and no events; gas_bound is accounted either
/// way and is an upper bound on what the compiled code may consume.
struct ExecOutcome
{
    bool reverted = false;
    Value ret = Value::unit();
    Memory state;
    std::map<Word, Word> balances;
    std::vector<LogRecord> events;
    int64_t gas_bound = 0;
};

/// Executes a method against the given contract state. The environment
/// is taken by value: balance changes show up in the outcome only.
/// Raises ArityMismatch when args do not fit the signature and
/// UnknownIdent for a missing method.
ExecOutcome run_method(const Program& p, const Memory& pre, MachineEnv env,
                       const std::string& method, const std::vector<Value>& args);

/// Executes the constructor; the gas bound includes the deployment
/// charge, which grows with program size.
ExecOutcome run_constructor(const Program& p, const Memory& pre, MachineEnv env,
                            const std::vector<Value>& args);

/// Number of expression and statement nodes across all function
/// bodies; feeds the deployment gas bound.
int program_node_count(const Program& p);

}  // namespace minicc
