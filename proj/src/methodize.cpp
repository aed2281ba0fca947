// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "minicc/pipeline.hpp"

#include "minicc/errors.hpp"

#include <map>

namespace minicc
{
namespace
{
ExStmt stmt_of(ExStmt::Kind k)
{
    ExStmt s;
    s.kind = k;
    return s;
}

ExStmt push_value(Value v)
{
    ExStmt s;
    s.kind = ExStmt::Kind::push;
    s.push = PushArg::of_value(std::move(v));
    return s;
}

ExStmt push_label(Label l)
{
    ExStmt s;
    s.kind = ExStmt::Kind::push;
    s.push = PushArg::of_label(std::move(l));
    return s;
}

ExStmt label_stmt(Label l)
{
    ExStmt s;
    s.kind = ExStmt::Kind::label;
    s.label = std::move(l);
    return s;
}

ExStmt dup1()
{
    ExStmt s;
    s.kind = ExStmt::Kind::dup;
    s.n = 1;
    return s;
}

ExStmt binop_eq()
{
    ExStmt s;
    s.kind = ExStmt::Kind::binop;
    s.bin = IrBinop::eq;
    return s;
}

ExStmt ctor_done()
{
    ExStmt s;
    s.kind = ExStmt::Kind::done;
    s.fn_kind = FunctionKind::constructor;
    return s;
}
}  // namespace

MethodicalProgram methodize(const ExprlessProgram& p)
{
    MethodicalProgram out;
    out.name = p.name;
    out.layout = p.layout;
    out.source_node_count = p.source_node_count;
    out.runtime_abort = "$abort$runtime";
    out.deploy_abort = "$abort$deploy";

    std::map<Word, std::string> by_selector;
    for (const auto& f : p.functions)
    {
        if (f.kind != FunctionKind::method)
            continue;
        MethodEntry m;
        m.selector = selector_of(f.selector_signature);
        m.label = f.entry;
        m.name = f.name;
        m.n_args = f.n_args;
        m.returns_value = f.returns_value;
        auto [it, fresh] = by_selector.emplace(m.selector, f.name);
        if (!fresh)
            fail("DuplicateSelector", f.name + " collides with " + it->second +
                                          " on selector " + word_to_hex(m.selector));
        out.methods.push_back(std::move(m));
    }

    // Dispatcher: load the selector word, try each method in program
    // order, fall through into the abort block.
    if (!out.methods.empty())
    {
        out.runtime_code.push_back(push_value(Value::from_word(0)));
        out.runtime_code.push_back(stmt_of(ExStmt::Kind::calldataload));
        for (const auto& m : out.methods)
        {
            out.runtime_code.push_back(dup1());
            out.runtime_code.push_back(push_value(Value::from_word(m.selector)));
            out.runtime_code.push_back(binop_eq());
            out.runtime_code.push_back(push_label(m.label));
            out.runtime_code.push_back(stmt_of(ExStmt::Kind::jumpi));
        }
    }
    out.runtime_code.push_back(label_stmt(out.runtime_abort));
    out.runtime_code.push_back(stmt_of(ExStmt::Kind::revert));

    const ExprlessFn* ctor = nullptr;
    for (const auto& f : p.functions)
    {
        if (f.kind == FunctionKind::constructor)
        {
            if (ctor)
                fail("DuplicateLabel", "two constructors: " + ctor->name + ", " + f.name);
            ctor = &f;
            continue;
        }
        out.runtime_code.insert(out.runtime_code.end(), f.code.begin(), f.code.end());
    }

    if (ctor)
    {
        out.ctor_args = ctor->n_args;
        out.deploy_code = ctor->code;
    }
    else
    {
        out.deploy_code.push_back(ctor_done());
    }
    out.deploy_code.push_back(label_stmt(out.deploy_abort));
    out.deploy_code.push_back(stmt_of(ExStmt::Kind::revert));

    // Labels must be unique across both code units; the runtime and
    // deploy images are assembled separately but share the name space.
    std::map<Label, int> seen;
    for (const auto& s : out.runtime_code)
        if (s.kind == ExStmt::Kind::label)
            ++seen[s.label];
    for (const auto& s : out.deploy_code)
        if (s.kind == ExStmt::Kind::label)
            ++seen[s.label];
    for (const auto& [l, n] : seen)
        if (n > 1)
            fail("DuplicateLabel", "label defined twice: " + l);

    return out;
}
}  // namespace minicc
