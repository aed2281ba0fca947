// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "minicc/evm_opcodes.hpp"
#include "minicc/ir.hpp"
#include "minicc/word.hpp"

#include <map>
#include <string>
#include <vector>

namespace minicc
{
/// One instruction before label resolution. Label pushes are always
/// PUSH2 so code layout is independent of final label addresses.
struct AsmItem
{
    uint8_t op = 0;
    bool has_imm = false;
    Word imm = 0;
    Label label;  // nonempty: PUSH2 resolved against the unit's label map

    int size() const { return inst_size(op); }

    static AsmItem plain(Op o);
    static AsmItem push_value(Word v);        // minimal-width PUSH
    static AsmItem push_wide(Word v);         // PUSH2 regardless of value
    static AsmItem push_label(const Label& l);
};

/// Expands one statement to its instruction image. The image is the
/// single source of truth for code layout; the interpreters mirror its
/// costs. `layout` feeds constructor data loads and the deploy
/// trailer; until the assembler has measured the units it may be
/// unknown, which only affects immediate values, never sizes.
std::vector<AsmItem> expand_stmt(const ExStmt& s, const Label& abort_label,
                                 const CodeLayout& layout);

/// One assembled code unit.
struct AssembledUnit
{
    Bytes code;
    std::map<Label, int64_t> label_offsets;
    /// stmt_offsets[i] is the byte offset of statement i's first
    /// instruction; one extra trailing entry holds code.size().
    std::vector<int64_t> stmt_offsets;

    /// Statement index covering byte offset `pos`, or -1.
    int stmt_at(int64_t pos) const;
};

struct Artifact
{
    AssembledUnit runtime;
    AssembledUnit deploy;
    CodeLayout layout;

    /// Code executed by a deployment transaction: deploy unit followed
    /// by the runtime image (constructor args are appended per call).
    Bytes init_code() const;
};

/// Assembles both code units and back-annotates prog.code_layout.
Artifact assemble(MethodicalProgram& prog);

/// Rebuilds bytes from decoded instructions (inverse of disassemble).
Bytes reassemble(const std::vector<Inst>& insts);

/// Renders a disassembly listing, one instruction per line:
/// "0004: PUSH2 0x0011".
std::string format_listing(const std::vector<Inst>& insts);

}  // namespace minicc
