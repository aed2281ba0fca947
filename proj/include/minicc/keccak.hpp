// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "minicc/word.hpp"

namespace minicc
{
/// Keccak-256 (the original Keccak padding, as used by the EVM SHA3
/// opcode; not NIST SHA3-256).
Bytes32 keccak256(const uint8_t* data, size_t len);
Bytes32 keccak256(const Bytes& data);
Word keccak256_word(const Bytes& data);

}  // namespace minicc
