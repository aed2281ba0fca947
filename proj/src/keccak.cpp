// minicc: a MiniC-style contract compiler targeting the EVM
// Copyright 2026 The minicc Authors.
// SPDX-License-Identifier: Apache-2.0
#include "minicc/keccak.hpp"

#include <cstring>

namespace minicc
{
namespace
{
constexpr uint64_t round_constants[24] = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL, 0x8000000080008000ULL,
    0x000000000000808bULL, 0x0000000080000001ULL, 0x8000000080008081ULL, 0x8000000000008009ULL,
    0x000000000000008aULL, 0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL, 0x8000000000008003ULL,
    0x8000000000008002ULL, 0x8000000000000080ULL, 0x000000000000800aULL, 0x800000008000000aULL,
    0x8000000080008081ULL, 0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL};

constexpr int rotation_offsets[25] = {0,  1,  62, 28, 27, 36, 44, 6,  55, 20, 3,  10, 43,
                                      25, 39, 41, 45, 15, 21, 8,  18, 2,  61, 56, 14};

inline uint64_t rotl64(uint64_t x, int n)
{
    return n == 0 ? x : (x << n) | (x >> (64 - n));
}

void keccak_f1600(uint64_t state[25])
{
    for (int round = 0; round < 24; ++round)
    {
        uint64_t c[5];
        for (int x = 0; x < 5; ++x)
            c[x] = state[x] ^ state[x + 5] ^ state[x + 10] ^ state[x + 15] ^ state[x + 20];
        uint64_t d[5];
        for (int x = 0; x < 5; ++x)
            d[x] = c[(x + 4) % 5] ^ rotl64(c[(x + 1) % 5], 1);
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                state[x + 5 * y] ^= d[x];

        uint64_t b[25];
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
            {
                int nx = y;
                int ny = (2 * x + 3 * y) % 5;
                b[nx + 5 * ny] = rotl64(state[x + 5 * y], rotation_offsets[x + 5 * y]);
            }

        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                state[x + 5 * y] = b[x + 5 * y] ^ (~b[(x + 1) % 5 + 5 * y] & b[(x + 2) % 5 + 5 * y]);

        state[0] ^= round_constants[round];
    }
}
}  // namespace

Bytes32 keccak256(const uint8_t* data, size_t len)
{
    constexpr size_t rate = 136;  // 1088-bit rate for the 256-bit variant
    uint64_t state[25] = {};
    uint8_t block[rate];

    while (len >= rate)
    {
        for (size_t i = 0; i < rate / 8; ++i)
        {
            uint64_t lane;
            std::memcpy(&lane, data + i * 8, 8);
            state[i] ^= lane;  // little-endian host assumed
        }
        keccak_f1600(state);
        data += rate;
        len -= rate;
    }

    std::memset(block, 0, rate);
    if (len > 0)
        std::memcpy(block, data, len);
    block[len] = 0x01;  // Keccak domain padding (0x06 would be NIST SHA-3)
    block[rate - 1] |= 0x80;
    for (size_t i = 0; i < rate / 8; ++i)
    {
        uint64_t lane;
        std::memcpy(&lane, block + i * 8, 8);
        state[i] ^= lane;
    }
    keccak_f1600(state);

    Bytes32 out;
    std::memcpy(out.data(), state, 32);
    return out;
}

Bytes32 keccak256(const Bytes& data)
{
    return keccak256(data.data(), data.size());
}

Word keccak256_word(const Bytes& data)
{
    return word_from_bytes32(keccak256(data));
}

}  // namespace minicc
