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

#include <cstdint>
#include <span>
#include <vector>

namespace recsplit {

//! Two-level select inventory over a pair of bit arrays with the same number
//! of ones. Absolute 64-bit positions are kept for every 2^14-th one and
//! 16-bit positions relative to those for every 2^8-th one; the remaining
//! distance is covered by a word-at-a-time scan. The inventories of the two
//! arrays are interleaved entry by entry, since a reader always queries both
//! arrays at the same index.
//!
//! The 16-bit entries rely on the gaps being regular. If a 2^14 block ever
//! spans 2^16 or more bits, the structure falls back to a dense inventory of
//! absolute positions for every 2^8-th one.
struct UpperSelect {
    static constexpr unsigned kLogBlock = 8;          // 2^8 ones per 16-bit entry
    static constexpr unsigned kLogSuperblock = 14;    // 2^14 ones per 64-bit entry

    std::vector<uint64_t> abs;
    std::vector<uint16_t> rel;
    bool dense = false;

    static UpperSelect build(std::span<const uint64_t> words_a,
                             std::span<const uint64_t> words_b, uint64_t ones_count);

    //! Position of the k-th one (0-based) in array `which` (0 = a, 1 = b).
    uint64_t select(std::span<const uint64_t> words, unsigned which, uint64_t k) const;
};

//! Interleaved compressed pair of monotone lists: per bucket, the cumulative
//! key count s_i and the bit offset o_i of the bucket's code region. The
//! offsets are stored as o_i - beta*s_i, and both lists are rescaled by their
//! minimum gap delta (subtracting i*delta keeps them monotone, with a
//! negative delta enlarging the offset list back into monotonicity). The
//! lower bits of the two lists are interleaved per entry, so one lookup
//! touches a single cache line of lower bits.
//!
//! beta is the tree cost in bits per key as an unsigned 16.16 fixed-point
//! value. An integer beta would be off the true cost by up to half a bit per
//! key, and that residue scales with the bucket's key count, widening the
//! offset-list gaps noticeably at small bucket sizes.
class DoubleEliasFano {
  public:
    //! floor(beta * s) in 16.16 fixed point.
    static uint64_t beta_times(uint32_t beta, uint64_t s) {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(beta) * s) >> 16);
    }

    //! Everything the serialized format stores for this structure.
    struct Layout {
        uint64_t num_entries = 0;  // n_buckets + 1
        int64_t delta_cum = 0;
        int64_t delta_off = 0;
        uint8_t low_width_cum = 0;
        uint8_t low_width_off = 0;
        uint32_t beta = 0;
        std::vector<uint64_t> low_words;
        std::vector<uint64_t> upper_cum;
        std::vector<uint64_t> upper_off;
        UpperSelect inventory;
    };

    DoubleEliasFano() = default;

    //! Both lists must have the same length >= 1, start at 0 and be monotone
    //! non-decreasing. beta is the per-key tree-bit estimate from the header.
    static DoubleEliasFano build(std::span<const uint64_t> cum_keys,
                                 std::span<const uint64_t> bit_offsets, uint32_t beta);

    static DoubleEliasFano from_layout(Layout layout) {
        DoubleEliasFano ef;
        ef.l_ = std::move(layout);
        return ef;
    }

    const Layout& layout() const { return l_; }

    uint64_t num_entries() const { return l_.num_entries; }
    uint32_t beta() const { return l_.beta; }

    //! Reconstruct (s_i, o_i) exactly.
    void get(uint64_t i, uint64_t& cum, uint64_t& offset) const;

    //! (s_i, s_{i+1}, o_i) — everything one lookup needs. i < n_buckets.
    void get_pair(uint64_t i, uint64_t& cum, uint64_t& cum_next, uint64_t& offset) const;

    //! Size of the stored arrays in bits (excluding the few header fields).
    uint64_t size_bits() const;

  private:
    uint64_t upper_value(unsigned which, uint64_t i) const;

    Layout l_;
};

}  // namespace recsplit
