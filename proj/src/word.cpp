// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "minicc/word.hpp"

#include <stdexcept>

namespace minicc
{
Bytes32 word_to_bytes32(const Word& w)
{
    Bytes32 out{};
    Word v = w;
    for (int i = 31; i >= 0; --i)
    {
        out[i] = static_cast<uint8_t>(v & 0xff);
        v >>= 8;
    }
    return out;
}

Word word_from_bytes32(const Bytes32& b)
{
    Word v = 0;
    for (auto byte : b)
    {
        v <<= 8;
        v |= byte;
    }
    return v;
}

Word word_from_bytes_padded(const uint8_t* data, size_t available)
{
    Word v = 0;
    for (size_t i = 0; i < 32; ++i)
    {
        v <<= 8;
        if (i < available)
            v |= data[i];
    }
    return v;
}

Word word_div(const Word& a, const Word& b)
{
    return b == 0 ? Word(0) : Word(a / b);
}

Word word_mod(const Word& a, const Word& b)
{
    return b == 0 ? Word(0) : Word(a % b);
}

std::string word_to_hex(const Word& w)
{
    static const char* digits = "0123456789abcdef";
    if (w == 0)
        return "0x0";
    std::string s;
    Word v = w;
    while (v != 0)
    {
        s.push_back(digits[static_cast<unsigned>(v & 0xf)]);
        v >>= 4;
    }
    s.append("x0");
    return std::string(s.rbegin(), s.rend());
}

std::string word_to_dec(const Word& w)
{
    return w.str();
}

Word word_parse(const std::string& text)
{
    if (text.empty())
        throw std::invalid_argument("empty word literal");
    try
    {
        if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X'))
            return Word(text);
        return Word(text);
    }
    catch (const std::exception&)
    {
        throw std::invalid_argument("bad word literal: " + text);
    }
}

int word_byte_width(const Word& w)
{
    int n = 1;
    Word v = w >> 8;
    while (v != 0)
    {
        ++n;
        v >>= 8;
    }
    return n;
}

std::string bytes_to_hex(const Bytes& data)
{
    static const char* digits = "0123456789abcdef";
    std::string s = "0x";
    for (auto b : data)
    {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    return s;
}

Bytes bytes_from_hex(const std::string& text)
{
    size_t start = 0;
    if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X'))
        start = 2;
    if ((text.size() - start) % 2 != 0)
        throw std::invalid_argument("odd-length hex string");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9')
            return c - '0';
        if (c >= 'a' && c <= 'f')
            return c - 'a' + 10;
        if (c >= 'A' && c <= 'F')
            return c - 'A' + 10;
        throw std::invalid_argument(std::string("bad hex digit: ") + c);
    };
    Bytes out;
    out.reserve((text.size() - start) / 2);
    for (size_t i = start; i < text.size(); i += 2)
        out.push_back(static_cast<uint8_t>(nibble(text[i]) * 16 + nibble(text[i + 1])));
    return out;
}

}  // namespace minicc
