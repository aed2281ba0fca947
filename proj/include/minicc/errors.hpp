// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace minicc
{
/// Compiler-side failure with a stable machine-readable code.
/// Codes in use: SyntaxError, TypeError, UnknownIdent, UnknownGlobal,
/// DuplicateIdent, LocalRoot, TypeMismatch, ArityMismatch,
/// UnboundVariable, StackTooDeep, CallInConstructor, DuplicateLabel,
/// DuplicateSelector, UnresolvedLabel, ImmediateTooWide,
/// UnsupportedFeature, UnknownOpcode, UnknownLabel, UnknownAccount,
/// StuckState, RuleParseError, RuleUnsound, BadRule.
class Error : public std::runtime_error
{
public:
    Error(std::string code, const std::string& what)
      : std::runtime_error{code + ": " + what}, m_code{std::move(code)}
    {}

    const std::string& code() const noexcept { return m_code; }

private:
    std::string m_code;
};

[[noreturn]] inline void fail(std::string code, const std::string& what)
{
    throw Error{std::move(code), what};
}

/// Breach of an internal compiler invariant. Maps to exit code 2.
class InternalError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

}  // namespace minicc
