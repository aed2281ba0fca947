// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "minicc/ast.hpp"
#include "minicc/evm_assemble.hpp"
#include "minicc/evm_interp.hpp"
#include "minicc/ir.hpp"
#include "minicc/value.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace minicc
{
/// Every compilation is validated by running the same transactions
/// through the reference executor, each intermediate representation's
/// interpreter, and the assembled bytecode, then comparing what they
/// observe: status, return value, storage, balances, events, and gas.

/// One transaction against the contract under test. The first entry
/// of a run must deploy; later entries call methods.
struct TxSpec
{
    bool deploy = false;
    std::string method;  // ignored for deployments
    std::vector<Value> args;
    Word caller = 0;
    Word value = 0;  // wei passed along
    Word block_number = 0;
    int64_t gas_limit = 50'000'000;
};

/// All compilation phases of one contract, compiled once.
struct CompiledContract
{
    ClikeProgram clike;
    CgraphProgram cgraph;  // temps already allocated to slots
    CbasicProgram cbasic;
    ClinearProgram clinear;
    StackedProgram stacked;
    ExprlessProgram exprless;
    MethodicalProgram methodical;
    Artifact artifact;
};

CompiledContract compile_phases(const Program& p);

/// Agreement between two adjacent phases on one transaction.
struct PhaseVerdict
{
    std::string phases;  // e.g. "reference/clike"
    int tx_index = 0;
    bool pass = true;
    std::string divergence;  // first mismatched component
};

/// Gas bound check for one transaction: the bytecode may not consume
/// more than the source-level bound.
struct GasVerdict
{
    int tx_index = 0;
    int64_t source_bound = 0;
    int64_t evm_gas_used = 0;
    bool ok = true;
};

struct ValidationReport
{
    std::vector<PhaseVerdict> phases;
    std::vector<GasVerdict> gas;
    int64_t relation_checks = 0;
    bool pass = true;
    std::string first_failure;

    void add(PhaseVerdict v);
    void add(GasVerdict v);
    /// One line per failure plus a summary line.
    std::string str() const;
};

/// Compiles `p` through every phase and replays `txs` on all of them
/// plus the assembled bytecode. Out-of-gas bytecode runs pass when
/// they leave state untouched, even though the unmetered phases
/// complete. Compilation errors propagate as exceptions.
ValidationReport differential_run(const Program& p, const std::vector<TxSpec>& txs);

/// Word image of a deployment or method-call payload: the selector
/// word (methods only) followed by one 32-byte word per argument.
Bytes encode_calldata(const Word& selector, const std::vector<Value>& args);
Bytes encode_ctor_data(const Bytes& init_code, const std::vector<Value>& args);

}  // namespace minicc
