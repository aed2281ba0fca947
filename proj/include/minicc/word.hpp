// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace minicc
{
/// 256-bit machine word. All arithmetic wraps modulo 2^256.
using Word = boost::multiprecision::uint256_t;

using Bytes = std::vector<uint8_t>;
using Bytes32 = std::array<uint8_t, 32>;

/// Big-endian 32-byte encoding of a word.
Bytes32 word_to_bytes32(const Word& w);
Word word_from_bytes32(const Bytes32& b);

/// Big-endian decode of an arbitrary byte span, zero-padded on the right
/// to 32 bytes (EVM CALLDATALOAD convention).
Word word_from_bytes_padded(const uint8_t* data, size_t available);

/// Division and modulo with the EVM convention: x / 0 == 0, x % 0 == 0.
Word word_div(const Word& a, const Word& b);
Word word_mod(const Word& a, const Word& b);

/// "0x"-prefixed lowercase hex, no leading zeros (0 -> "0x0").
std::string word_to_hex(const Word& w);
std::string word_to_dec(const Word& w);

/// Accepts "0x..." hex or decimal digits. Throws std::invalid_argument.
Word word_parse(const std::string& text);

/// Minimal number of bytes needed to encode w (>= 1, so 0 takes one byte).
int word_byte_width(const Word& w);

std::string bytes_to_hex(const Bytes& data);     // 0x-prefixed lowercase
Bytes bytes_from_hex(const std::string& text);   // accepts optional 0x prefix

}  // namespace minicc
