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

#include <random>
#include <span>
#include <vector>

#include "recsplit/builder.hpp"
#include "recsplit/mphf.hpp"

// Independent reference implementations the tests check against. These stay
// deliberately naive: bit-by-bit scans, full decodes, exhaustive enumeration.
namespace recsplit::testing {

inline std::vector<Signature> random_signatures(std::size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Signature> sigs(n);
    for (Signature& s : sigs) s = {rng(), rng()};
    return sigs;
}

//! Position of the k-th one (0-based), scanning bit by bit.
inline uint64_t naive_select(std::span<const uint64_t> words, uint64_t k) {
    uint64_t seen = 0;
    for (uint64_t pos = 0; pos < words.size() * 64; ++pos) {
        if ((words[pos >> 6] >> (pos & 63)) & 1) {
            if (seen == k) return pos;
            ++seen;
        }
    }
    return ~uint64_t(0);
}

//! Number of maps f: m -> m that induce the given ordered partition sizes,
//! by exhaustive enumeration over all m^m maps. Feasible for m <= 8 or so.
inline uint64_t count_splitting_maps(std::span<const uint64_t> parts) {
    uint64_t m = 0;
    for (uint64_t k : parts) m += k;
    std::vector<uint64_t> boundary(parts.size() + 1, 0);
    for (std::size_t t = 0; t < parts.size(); ++t) boundary[t + 1] = boundary[t] + parts[t];

    uint64_t total = 1;
    for (uint64_t i = 0; i < m; ++i) total *= m;

    uint64_t good = 0;
    std::vector<uint64_t> f(m, 0);
    for (uint64_t code = 0; code < total; ++code) {
        uint64_t c = code;
        for (uint64_t i = 0; i < m; ++i) {
            f[i] = c % m;
            c /= m;
        }
        std::vector<uint64_t> count(parts.size(), 0);
        for (uint64_t v : f)
            for (std::size_t t = 0; t < parts.size(); ++t)
                if (v >= boundary[t] && v < boundary[t + 1]) ++count[t];
        bool ok = true;
        for (std::size_t t = 0; ok && t < parts.size(); ++t) ok = count[t] == parts[t];
        if (ok) ++good;
    }
    return good;
}

//! Preorder walk over the splitting-tree shape of m keys, reading one code
//! per node sequentially (no skipping).
inline void decode_subtree(RiceBitVector::Reader& reader, const SplitStrategy& st, uint64_t m,
                           std::vector<RiceCode>& out) {
    if (m <= st.leaf_size()) {
        if (m >= 2) out.push_back({reader.read_next(st.rice_param_for(m)), st.rice_param_for(m)});
        return;
    }
    const NodeSpec spec = st.node_spec(m);
    out.push_back({reader.read_next(st.rice_param_for(m)), st.rice_param_for(m)});
    for (uint32_t t = 0; t < spec.fanout; ++t) decode_subtree(reader, st, spec.part_size(m, t), out);
}

namespace detail {

// consume the codes of a whole subtree from the cursor
inline void consume_subtree(const SplitStrategy& st, uint64_t m, std::size_t& cursor) {
    if (m <= st.leaf_size()) {
        if (m >= 2) ++cursor;
        return;
    }
    ++cursor;
    const NodeSpec spec = st.node_spec(m);
    for (uint32_t t = 0; t < spec.fanout; ++t) consume_subtree(st, spec.part_size(m, t), cursor);
}

}  // namespace detail

//! Reference lookup: fully decode the bucket's code list into a vector, then
//! walk it without any skip tables, consuming skipped siblings one by one.
//! When decodes != nullptr, receives the number of codes the walk visited on
//! the root-to-leaf path (the skipped siblings are not decoded by the real
//! evaluator).
inline uint64_t naive_lookup(const RecSplitMphf& f, const Signature& sig,
                             std::size_t* path_decodes = nullptr) {
    const SplitStrategy& st = f.strategy();
    const uint64_t bucket = bucket_of(sig, f.num_buckets());
    uint64_t cum = 0, cum_next = 0, bit_offset = 0;
    f.ef().get_pair(bucket, cum, cum_next, bit_offset);
    uint64_t m = cum_next - cum;
    if (path_decodes != nullptr) *path_decodes = 0;
    if (m < 2) return cum;

    RiceBitVector::Reader reader = f.codes().reader_at(bit_offset, st.skip_info(m).fixed_bits);
    std::vector<RiceCode> codes;
    decode_subtree(reader, st, m, codes);

    std::size_t cursor = 0;
    unsigned depth = 0;
    for (;;) {
        if (m <= st.leaf_size()) {
            if (m < 2) return cum;
            const uint64_t idx = codes[cursor++].value;
            if (path_decodes != nullptr) ++*path_decodes;
            return cum + remap(sig.lo, search_start(depth) + idx, m);
        }
        const NodeSpec spec = st.node_spec(m);
        const uint64_t idx = codes[cursor++].value;
        if (path_decodes != nullptr) ++*path_decodes;
        const uint64_t hmod = remap(sig.lo, search_start(depth) + idx, m);
        const uint64_t part = std::min<uint64_t>(hmod / spec.unit, spec.fanout - 1);
        for (uint64_t t = 0; t < part; ++t) detail::consume_subtree(st, spec.unit, cursor);
        cum += spec.unit * part;
        m = spec.part_size(m, static_cast<uint32_t>(part));
        ++depth;
    }
}

//! Levels a descent over m keys can visit, plus the leaf decode.
inline unsigned max_path_decodes(const SplitStrategy& st, uint64_t m) {
    unsigned levels = 0;
    while (m > st.leaf_size()) {
        const NodeSpec spec = st.node_spec(m);
        uint64_t widest = 0;
        for (uint32_t t = 0; t < spec.fanout; ++t)
            widest = std::max(widest, spec.part_size(m, t));
        m = widest;
        ++levels;
    }
    return levels + (m >= 2 ? 1 : 0);
}

}  // namespace recsplit::testing
