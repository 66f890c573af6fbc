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
#include <string_view>

#include "recsplit/elias_fano.hpp"
#include "recsplit/rice_vector.hpp"
#include "recsplit/signatures.hpp"
#include "recsplit/strategy.hpp"

namespace recsplit {

struct MphfParams {
    unsigned leaf_size;
    unsigned bucket_size;
    uint64_t num_keys;
    uint64_t seed;
};

//! Strategy tables cover node sizes up to twice the target bucket size (at
//! least the default extent); larger nodes fall back to on-demand formulas.
inline std::size_t strategy_table_limit(unsigned bucket_size) {
    return std::max<std::size_t>(2 * std::size_t(bucket_size), SplitStrategy::kDefaultTableLimit);
}

//! The queryable minimal perfect hash function. Evaluating the n construction
//! keys yields a permutation of [0, n); any other key yields some arbitrary
//! value in [0, n) — there is no membership check of any kind.
//!
//! Immutable; lookups are read-only and may run concurrently without
//! restriction.
class RecSplitMphf {
  public:
    RecSplitMphf(const MphfParams& params, DoubleEliasFano ef, RiceBitVector codes)
        : leaf_size_(params.leaf_size),
          bucket_size_(params.bucket_size),
          n_(params.num_keys),
          seed_(params.seed),
          nbuckets_(n_ == 0 ? 0 : (n_ + bucket_size_ - 1) / bucket_size_),
          strategy_(params.leaf_size, strategy_table_limit(params.bucket_size)),
          ef_(std::move(ef)),
          codes_(std::move(codes)) {}

    //! Rank of a signature in [0, n). Requires n >= 1.
    uint64_t lookup(const Signature& sig) const;

    //! Rank of a key: hash with the stored seed, then look the signature up.
    uint64_t lookup(std::string_view key) const { return lookup(sign(key, seed_)); }
    uint64_t lookup(const void* data, std::size_t len) const {
        return lookup(sign(data, len, seed_));
    }

    uint64_t num_keys() const { return n_; }
    uint64_t num_buckets() const { return nbuckets_; }
    unsigned leaf_size() const { return leaf_size_; }
    unsigned bucket_size() const { return bucket_size_; }
    uint64_t seed() const { return seed_; }

    const SplitStrategy& strategy() const { return strategy_; }
    const DoubleEliasFano& ef() const { return ef_; }
    const RiceBitVector& codes() const { return codes_; }

    //! Bits of the two payload structures (trees + prefix sums/offsets).
    uint64_t structure_bits() const { return codes_.size_bits() + ef_.size_bits(); }

  private:
    unsigned leaf_size_;
    unsigned bucket_size_;
    uint64_t n_;
    uint64_t seed_;
    uint64_t nbuckets_;
    SplitStrategy strategy_;
    DoubleEliasFano ef_;
    RiceBitVector codes_;
};

}  // namespace recsplit
