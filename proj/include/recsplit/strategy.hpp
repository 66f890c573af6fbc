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

#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

namespace recsplit {

//! Maximum supported leaf size; beyond this the bijection search is
//! infeasible and the Rice parameter would not fit in five bits.
inline constexpr unsigned kMaxLeafSize = 24;

//! Shape of one internal node over m keys: every part has `unit` keys except
//! the last, which has m - (fanout-1)*unit.
struct NodeSpec {
    uint32_t fanout;
    uint64_t unit;

    uint64_t part_size(uint64_t m, uint32_t part) const {
        return part + 1 < fanout ? unit : m - uint64_t(fanout - 1) * unit;
    }
};

//! Aggregate data of the full splitting tree over m keys: total length of
//! the fixed code parts and the number of emitted codes. Both are the same
//! for every key set of that size, so they can be tabulated by size alone.
struct SubtreeInfo {
    uint64_t fixed_bits;
    uint64_t nodes;
};

//! The splitting strategy: a pure function of the leaf size. Decides the
//! fanout and part sizes of every node, the Golomb-Rice parameter of every
//! search index, and the skip tables used to jump over encoded subtrees.
//! Immutable after construction; safe for unrestricted concurrent reads.
class SplitStrategy {
  public:
    static constexpr std::size_t kDefaultTableLimit = 2000;

    explicit SplitStrategy(unsigned leaf_size, std::size_t table_limit = kDefaultTableLimit);

    unsigned leaf_size() const { return leaf_size_; }
    //! First aggregation unit s*l: nodes of at most this size split into leaves.
    unsigned lower_aggr() const { return lower_aggr_; }
    //! Second aggregation unit s*t*l: above this size nodes split in two.
    unsigned upper_aggr() const { return upper_aggr_; }
    std::size_t table_limit() const { return table_limit_; }

    //! Fanout and unit for a node over m keys (m > leaf_size).
    NodeSpec node_spec(uint64_t m) const {
        assert(m > leaf_size_);
        if (m <= lower_aggr_) return {uint32_t((m + leaf_size_ - 1) / leaf_size_), leaf_size_};
        if (m <= upper_aggr_) return {uint32_t((m + lower_aggr_ - 1) / lower_aggr_), lower_aggr_};
        // bisection: unit (and left part) is floor(m/2) rounded up to a
        // multiple of the second aggregation unit
        const uint64_t unit = (m / 2 + upper_aggr_ - 1) / upper_aggr_ * upper_aggr_;
        return {2, unit};
    }

    //! Part sizes of node_spec(m), in order.
    std::vector<uint64_t> part_sizes(uint64_t m) const;

    //! Golomb-Rice parameter of the index emitted by a node over m keys
    //! (bijection index if m <= leaf_size, splitting index otherwise).
    uint8_t rice_param_for(uint64_t m) const {
        assert(m >= 2);
        if (m < table_.size()) return table_[m].rice;
        return rice_param_for_slow(m);
    }

    //! Fixed-part bits and code count of the whole subtree over m keys.
    SubtreeInfo skip_info(uint64_t m) const {
        assert(m >= 1);
        if (m < table_.size()) {
            const Entry& e = table_[m];
            return {e.fixed_bits, e.nodes};
        }
        return skip_info_slow(m);
    }

    // -- the pure formulas behind the tables --

    //! Nearest-integer base-2 logarithm, floor(lg x + 1/2), computed as
    //! the position of the highest bit of x + (x >> 1).
    static unsigned ilog2_round(uint64_t x) {
        assert(x >= 1);
        uint64_t y = x + (x >> 1);
        unsigned r = 0;
        while (y >>= 1) ++r;
        return r;
    }

    //! Optimal Golomb-Rice parameter for a geometric source with success
    //! probability p: max{0, ceil(lg(-lg phi / lg(1-p)))}.
    static unsigned rice_param(double p);

    //! Integer approximation of the splitting Rice parameter, used only for
    //! node sizes beyond the precomputed table.
    static unsigned rice_param_approx(uint64_t m, std::span<const uint64_t> parts);

    //! Probability that a uniform function m -> m induces the given ordered
    //! partition sizes (log-domain evaluation, accurate for any node size).
    static double split_probability(uint64_t m, std::span<const uint64_t> parts);

    //! Probability m!/m^m that a uniform function m -> m is a bijection.
    static double bijection_probability(uint64_t m);

  private:
    struct Entry {
        uint8_t rice;
        uint32_t fixed_bits;
        uint32_t nodes;
    };

    uint8_t rice_param_for_slow(uint64_t m) const;
    SubtreeInfo skip_info_slow(uint64_t m) const;

    unsigned leaf_size_;
    unsigned lower_aggr_;
    unsigned upper_aggr_;
    std::size_t table_limit_;
    std::vector<Entry> table_;
};

}  // namespace recsplit
