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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string_view>

#include "recsplit/bits.hpp"

namespace recsplit {

//! 128-bit signature of a key. The upper half drives the bucket assignment,
//! the lower half drives every in-bucket splitting and bijection search.
//! All construction and lookup code operates on signatures only.
struct Signature {
    uint64_t hi{0};
    uint64_t lo{0};

    friend auto operator<=>(const Signature&, const Signature&) = default;
};

//! Hash a key to its signature.
//!
//! This is MurmurHash3 x64 128 (Austin Appleby, public domain) with one
//! deviation: both internal lanes are initialized with the full 64-bit seed
//! instead of a 32-bit one. The exact definition is part of the serialized
//! file contract, since stored structures embed the seed and are evaluated
//! by rehashing keys. Key bytes are consumed in little-endian 64-bit blocks.
Signature sign(const void* data, std::size_t len, uint64_t seed);

inline Signature sign(std::string_view key, uint64_t seed) {
    return sign(key.data(), key.size(), seed);
}

//! Bucket of a signature: fixed-point inversion of the upper half,
//! floor(hi * nbuckets / 2^64). Monotone in hi.
inline uint64_t bucket_of(const Signature& sig, uint64_t nbuckets) {
    assert(nbuckets >= 1);
    return bits::mulhi_u64(sig.hi, nbuckets);
}

//! Two xorshift-multiply rounds and a closing xorshift (the 64-bit finalizer
//! of MurmurHash3). One round is not enough here: consecutive function
//! indices shift every key's mixed value in lockstep, which correlates
//! successive trials of a search and inflates the observed trial counts by
//! a factor of ~3. The second multiply breaks the lockstep.
inline uint64_t mix64(uint64_t z) {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
}

//! The enumerated function family over signatures: phi^range_index(x).
//! The signature's lower half is combined with the function index, mixed,
//! and fixed-point reduced into [0, range).
inline uint64_t remap(uint64_t sig_lo, uint64_t func_index, uint64_t range) {
    assert(range >= 1);
    return bits::mulhi_u64(mix64(sig_lo + func_index), range);
}

//! First function index used by searches at the given tree depth. Each depth
//! draws its indices from its own 64-bit-offset range, so a search never
//! revisits functions already consumed by an ancestor; sibling subtrees may
//! share ranges because their signature sets are disjoint. The derivation
//! (splitmix64 of the depth) is part of the serialized file contract.
inline uint64_t search_start(unsigned depth) {
    uint64_t x = depth + 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace recsplit
