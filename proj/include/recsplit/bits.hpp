/*
   Copyright 2026 The recsplit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <array>
#include <bit>
#include <cassert>
#include <cstdint>

namespace recsplit::bits {

//! High 64 bits of the 128-bit product a*b. This is the fixed-point reduction
//! of a uniform 64-bit value into [0, b): a "multiplication and a shift".
inline uint64_t mulhi_u64(uint64_t a, uint64_t b) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) >> 64);
}

//! Index of the highest bit set (floor(lg x)). Undefined for x == 0.
inline unsigned floor_log2(uint64_t x) {
    assert(x > 0);
    return static_cast<unsigned>(std::bit_width(x) - 1);
}

namespace detail {

// table[(k << 8) | b] = position of the k-th one (0-based) in byte b
constexpr std::array<uint8_t, 2048> make_select_in_byte() {
    std::array<uint8_t, 2048> t{};
    for (unsigned k = 0; k < 8; ++k) {
        for (unsigned b = 0; b < 256; ++b) {
            unsigned seen = 0;
            uint8_t pos = 8;
            for (unsigned bit = 0; bit < 8; ++bit) {
                if (b & (1u << bit)) {
                    if (seen == k) {
                        pos = static_cast<uint8_t>(bit);
                        break;
                    }
                    ++seen;
                }
            }
            t[(k << 8) | b] = pos;
        }
    }
    return t;
}

inline constexpr std::array<uint8_t, 2048> kSelectInByte = make_select_in_byte();

}  // namespace detail

//! Position of the k-th one (0-based) in x, broadword style: byte-granular
//! prefix popcounts locate the byte, a table finishes inside it.
//! Precondition: k < popcount(x).
inline unsigned select_in_word(uint64_t x, unsigned k) {
    assert(k < static_cast<unsigned>(std::popcount(x)));
    constexpr uint64_t kOnesStep8 = 0x0101010101010101ULL;
    constexpr uint64_t kMsbsStep8 = 0x8080808080808080ULL;
    uint64_t s = x - ((x >> 1) & 0x5555555555555555ULL);
    s = (s & 0x3333333333333333ULL) + ((s >> 2) & 0x3333333333333333ULL);
    s = (s + (s >> 4)) & 0x0F0F0F0F0F0F0F0FULL;
    const uint64_t byte_sums = s * kOnesStep8;  // inclusive prefix popcount per byte
    const uint64_t k_step_8 = static_cast<uint64_t>(k) * kOnesStep8;
    // MSB set in byte i iff byte_sums[i] <= k; both operand bytes are < 128
    const uint64_t geq = ((k_step_8 | kMsbsStep8) - byte_sums) & kMsbsStep8;
    const unsigned place = static_cast<unsigned>(std::popcount(geq)) * 8;
    const unsigned byte_rank = k - static_cast<unsigned>((byte_sums << 8 >> place) & 0xFF);
    return place + detail::kSelectInByte[(byte_rank << 8) | ((x >> place) & 0xFF)];
}

//! Absolute position of the k-th one (0-based) at or after start_bit.
//! The caller guarantees that enough ones exist.
inline uint64_t select_in_words(const uint64_t* words, uint64_t start_bit, uint64_t k) {
    uint64_t word_idx = start_bit >> 6;
    uint64_t w = words[word_idx] & (~uint64_t(0) << (start_bit & 63));
    for (;;) {
        const uint64_t c = static_cast<uint64_t>(std::popcount(w));
        if (k < c) return word_idx * 64 + select_in_word(w, static_cast<unsigned>(k));
        k -= c;
        w = words[++word_idx];
    }
}

//! Read `width` (0..64) bits starting at bit `pos`, LSB-first within
//! little-endian 64-bit words. Requires one word of padding past the data.
inline uint64_t get_bits(const uint64_t* words, uint64_t pos, unsigned width) {
    if (width == 0) return 0;
    const uint64_t word = pos >> 6;
    const unsigned off = pos & 63;
    uint64_t v = words[word] >> off;
    if (off + width > 64) v |= words[word + 1] << (64 - off);
    const uint64_t mask = width == 64 ? ~uint64_t(0) : (uint64_t(1) << width) - 1;
    return v & mask;
}

//! Write the low `width` bits of v at bit `pos`; the target bits must be zero.
inline void set_bits(uint64_t* words, uint64_t pos, unsigned width, uint64_t v) {
    if (width == 0) return;
    assert(width == 64 || v < (uint64_t(1) << width));
    const uint64_t word = pos >> 6;
    const unsigned off = pos & 63;
    words[word] |= v << off;
    if (off + width > 64) words[word + 1] |= v >> (64 - off);
}

inline void set_bit(uint64_t* words, uint64_t pos) { words[pos >> 6] |= uint64_t(1) << (pos & 63); }

inline bool get_bit(const uint64_t* words, uint64_t pos) {
    return (words[pos >> 6] >> (pos & 63)) & 1;
}

inline uint64_t words_for_bits(uint64_t bits) { return (bits + 63) / 64; }

}  // namespace recsplit::bits
