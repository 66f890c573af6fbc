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

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "recsplit/mphf.hpp"

namespace recsplit {

struct BuildConfig {
    unsigned leaf_size = 8;
    unsigned bucket_size = 100;
    uint64_t seed = 0;
    //! Abort threshold for any single search. Hitting it is astronomically
    //! unlikely with a healthy hash; it signals broken randomness, not bad luck.
    uint64_t max_search_index = uint64_t(1) << 30;
    unsigned threads = 0;  // 0 = all hardware threads
};

//! Two identical 128-bit signatures: either the same key was fed twice or a
//! (never-observed-in-practice) full hash collision occurred.
class DuplicateKeyError : public std::runtime_error {
  public:
    DuplicateKeyError() : std::runtime_error("duplicate key (or 128-bit signature collision)") {}
};

class SearchOverflowError : public std::runtime_error {
  public:
    SearchOverflowError() : std::runtime_error("search index overflow: hash randomness is broken") {}
};

//! Ground-truth ranks recorded during construction (testing hook).
using Assignments = std::vector<std::pair<Signature, uint64_t>>;

//! Build from signatures, parallel over buckets (OpenMP when available).
//! The output is byte-identical for any thread count.
RecSplitMphf build_mphf(std::span<const Signature> signatures, const BuildConfig& config,
                        Assignments* assignments = nullptr);

//! Straightforward single-threaded reference build; produces bit-identical
//! structures to build_mphf and is kept as its test oracle.
RecSplitMphf build_mphf_serial(std::span<const Signature> signatures, const BuildConfig& config,
                               Assignments* assignments = nullptr);

//! Hash keys and build.
RecSplitMphf build_mphf(std::span<const std::string> keys, const BuildConfig& config);

// -- search primitives, exposed for tests and trial statistics --

//! Smallest index i such that function i at this depth maps the signatures
//! injectively into [0, m), m = sigs.size() <= leaf size.
uint64_t find_bijection(std::span<const Signature> sigs, unsigned depth, uint64_t max_index);

//! Smallest index i such that function i at this depth maps exactly
//! part_size(t) signatures into each part interval.
uint64_t find_split(std::span<const Signature> sigs, const NodeSpec& spec, unsigned depth,
                    uint64_t max_index);

//! Recursively search one bucket and append its codes in preorder. The
//! signature slice is partitioned in place; order within a part is
//! irrelevant since only set membership matters.
void build_bucket(std::span<Signature> sigs, const SplitStrategy& strategy, uint64_t max_index,
                  std::vector<RiceCode>& out, uint64_t base_rank = 0,
                  Assignments* assignments = nullptr);

}  // namespace recsplit
