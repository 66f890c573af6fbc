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

#include "recsplit/mphf.hpp"

#include <cassert>

namespace recsplit {

uint64_t RecSplitMphf::lookup(const Signature& sig) const {
    assert(n_ >= 1);
    const uint64_t bucket = bucket_of(sig, nbuckets_);
    uint64_t cum = 0, cum_next = 0, bit_offset = 0;
    ef_.get_pair(bucket, cum, cum_next, bit_offset);

    uint64_t m = cum_next - cum;
    if (m < 2) return cum;  // empty bucket (non-key) or a single size-one leaf

    RiceBitVector::Reader reader = codes_.reader_at(bit_offset, strategy_.skip_info(m).fixed_bits);
    unsigned depth = 0;
    const unsigned leaf_size = strategy_.leaf_size();

    while (m > leaf_size) {
        const NodeSpec spec = strategy_.node_spec(m);
        const uint64_t idx = reader.read_next(strategy_.rice_param_for(m));
        const uint64_t hmod = remap(sig.lo, search_start(depth) + idx, m);
        const uint64_t part = std::min<uint64_t>(hmod / spec.unit, spec.fanout - 1);
        if (part > 0) {
            // every skipped sibling covers exactly `unit` keys
            const SubtreeInfo sub = strategy_.skip_info(spec.unit);
            reader.skip_subtree(sub.fixed_bits * part, sub.nodes * part);
            cum += spec.unit * part;
        }
        m = spec.part_size(m, static_cast<uint32_t>(part));
        ++depth;
    }

    if (m < 2) return cum;  // a leaf of size one has no code
    const uint64_t idx = reader.read_next(strategy_.rice_param_for(m));
    return cum + remap(sig.lo, search_start(depth) + idx, m);
}

}  // namespace recsplit
