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

#include "recsplit/builder.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <thread>

namespace recsplit {

namespace {

constexpr unsigned kMaxFanout = 16;

// signatures grouped by bucket; starts doubles as the cumulative key counts
struct PreparedBuckets {
    std::vector<Signature> sigs;
    std::vector<uint64_t> starts;  // nbuckets + 1
};

PreparedBuckets bucket_signatures(std::span<const Signature> input, uint64_t nbuckets) {
    PreparedBuckets pb;
    pb.starts.assign(nbuckets + 1, 0);
    pb.sigs.resize(input.size());
    if (nbuckets == 0) return pb;
    for (const Signature& s : input) ++pb.starts[bucket_of(s, nbuckets) + 1];
    for (uint64_t i = 0; i < nbuckets; ++i) pb.starts[i + 1] += pb.starts[i];

    if (nbuckets <= 4096 || input.size() < (uint64_t(1) << 21)) {
        std::vector<uint64_t> cursor(pb.starts.begin(), pb.starts.end() - 1);
        for (const Signature& s : input) pb.sigs[cursor[bucket_of(s, nbuckets)]++] = s;
        return pb;
    }

    // Large instances: a direct scatter costs one cache miss per key. Group
    // by the top bits of hi first (which refines the bucket order, since the
    // bucket is monotone in hi); each group's final scatter then stays inside
    // a cache-sized window. Both passes preserve input order within a bucket,
    // so the result is identical to the direct scatter.
    constexpr unsigned kGroupBits = 10;
    constexpr uint64_t kGroups = uint64_t(1) << kGroupBits;
    std::vector<uint64_t> group_start(kGroups + 1, 0);
    for (const Signature& s : input) ++group_start[(s.hi >> (64 - kGroupBits)) + 1];
    for (uint64_t g = 0; g < kGroups; ++g) group_start[g + 1] += group_start[g];

    std::vector<Signature> grouped(input.size());
    {
        std::vector<uint64_t> cursor(group_start.begin(), group_start.end() - 1);
        for (const Signature& s : input) grouped[cursor[s.hi >> (64 - kGroupBits)]++] = s;
    }
    std::vector<uint64_t> cursor(pb.starts.begin(), pb.starts.end() - 1);
    for (uint64_t g = 0; g < kGroups; ++g) {
        for (uint64_t i = group_start[g]; i < group_start[g + 1]; ++i)
            pb.sigs[cursor[bucket_of(grouped[i], nbuckets)]++] = grouped[i];
    }
    return pb;
}

// sorts one bucket's slice and rejects identical signatures
void sort_and_check(std::span<Signature> bucket) {
    std::sort(bucket.begin(), bucket.end());
    for (std::size_t i = 1; i < bucket.size(); ++i)
        if (bucket[i] == bucket[i - 1]) throw DuplicateKeyError{};
}

void partition_by_part(std::span<Signature> sigs, const NodeSpec& spec, uint64_t func_index,
                       std::span<Signature> scratch) {
    const uint64_t m = sigs.size();
    std::array<uint64_t, kMaxFanout> next{};
    uint64_t acc = 0;
    for (uint32_t t = 0; t < spec.fanout; ++t) {
        next[t] = acc;
        acc += spec.part_size(m, t);
    }
    for (const Signature& s : sigs) {
        const uint64_t part = std::min<uint64_t>(remap(s.lo, func_index, m) / spec.unit,
                                                 spec.fanout - 1);
        scratch[next[part]++] = s;
    }
    std::copy(scratch.begin(), scratch.begin() + m, sigs.begin());
}

void build_node(std::span<Signature> sigs, const SplitStrategy& st, unsigned depth,
                uint64_t base_rank, uint64_t max_index, std::vector<RiceCode>& out,
                std::span<Signature> scratch, Assignments* assign) {
    const uint64_t m = sigs.size();
    if (m <= st.leaf_size()) {
        if (m >= 2) {
            const uint64_t idx = find_bijection(sigs, depth, max_index);
            out.push_back({idx, st.rice_param_for(m)});
            if (assign) {
                const uint64_t func = search_start(depth) + idx;
                for (const Signature& s : sigs)
                    assign->emplace_back(s, base_rank + remap(s.lo, func, m));
            }
        } else if (m == 1 && assign) {
            assign->emplace_back(sigs[0], base_rank);  // size-one leaf: rank is implied
        }
        return;
    }

    const NodeSpec spec = st.node_spec(m);
    const uint64_t idx = find_split(sigs, spec, depth, max_index);
    out.push_back({idx, st.rice_param_for(m)});
    partition_by_part(sigs, spec, search_start(depth) + idx, scratch);

    uint64_t pos = 0;
    for (uint32_t t = 0; t < spec.fanout; ++t) {
        const uint64_t size = spec.part_size(m, t);
        build_node(sigs.subspan(pos, size), st, depth + 1, base_rank + pos, max_index, out,
                   scratch, assign);
        pos += size;
    }
}

void validate(const BuildConfig& cfg) {
    if (cfg.leaf_size < 1 || cfg.leaf_size > kMaxLeafSize)
        throw std::invalid_argument("leaf size must be in [1, 24]");
    if (cfg.bucket_size < 1) throw std::invalid_argument("bucket size must be positive");
}

RecSplitMphf assemble(const BuildConfig& cfg, const PreparedBuckets& pb,
                      RiceBitVector::Builder&& rb, std::vector<uint64_t> offsets) {
    const uint64_t n = pb.sigs.size();
    offsets.back() = rb.size_bits();
    // tree bits per key, 16.16 fixed point
    const uint32_t beta =
        n == 0 ? 0
               : static_cast<uint32_t>((static_cast<unsigned __int128>(rb.size_bits()) << 16) / n);
    DoubleEliasFano ef = DoubleEliasFano::build(pb.starts, offsets, beta);
    return RecSplitMphf({cfg.leaf_size, cfg.bucket_size, n, cfg.seed}, std::move(ef),
                        std::move(rb).build());
}

}  // namespace

uint64_t find_bijection(std::span<const Signature> sigs, unsigned depth, uint64_t max_index) {
    const uint64_t m = sigs.size();
    assert(m >= 1 && m <= kMaxLeafSize);
    const uint64_t base = search_start(depth);
    for (uint64_t i = 0;; ++i) {
        if (i > max_index) throw SearchOverflowError{};
        uint32_t mask = 0;
        bool ok = true;
        for (const Signature& s : sigs) {
            const uint32_t bit = uint32_t(1) << remap(s.lo, base + i, m);
            if (mask & bit) {
                ok = false;
                break;
            }
            mask |= bit;
        }
        if (ok) return i;
    }
}

uint64_t find_split(std::span<const Signature> sigs, const NodeSpec& spec, unsigned depth,
                    uint64_t max_index) {
    const uint64_t m = sigs.size();
    assert(spec.fanout >= 1 && spec.fanout <= kMaxFanout);
    const uint64_t base = search_start(depth);
    std::array<uint32_t, kMaxFanout> count;
    for (uint64_t i = 0;; ++i) {
        if (i > max_index) throw SearchOverflowError{};
        count.fill(0);
        for (const Signature& s : sigs)
            ++count[std::min<uint64_t>(remap(s.lo, base + i, m) / spec.unit, spec.fanout - 1)];
        bool ok = true;
        for (uint32_t t = 0; ok && t + 1 < spec.fanout; ++t) ok = count[t] == spec.unit;
        if (ok) return i;
    }
}

void build_bucket(std::span<Signature> sigs, const SplitStrategy& strategy, uint64_t max_index,
                  std::vector<RiceCode>& out, uint64_t base_rank, Assignments* assignments) {
    if (sigs.empty()) return;
    std::vector<Signature> scratch(sigs.size());
    build_node(sigs, strategy, 0, base_rank, max_index, out, scratch, assignments);
}

RecSplitMphf build_mphf_serial(std::span<const Signature> signatures, const BuildConfig& cfg,
                               Assignments* assignments) {
    validate(cfg);
    const uint64_t n = signatures.size();
    const uint64_t nbuckets = n == 0 ? 0 : (n + cfg.bucket_size - 1) / cfg.bucket_size;
    const SplitStrategy strategy(cfg.leaf_size, strategy_table_limit(cfg.bucket_size));

    PreparedBuckets pb = bucket_signatures(signatures, nbuckets);
    RiceBitVector::Builder rb;
    std::vector<uint64_t> offsets(nbuckets + 1, 0);
    std::vector<RiceCode> codes;

    for (uint64_t b = 0; b < nbuckets; ++b) {
        std::span<Signature> bucket{pb.sigs.data() + pb.starts[b], pb.starts[b + 1] - pb.starts[b]};
        sort_and_check(bucket);
        codes.clear();
        build_bucket(bucket, strategy, cfg.max_search_index, codes, pb.starts[b], assignments);
        offsets[b] = rb.size_bits();
        rb.append_bucket(codes);
    }
    return assemble(cfg, pb, std::move(rb), std::move(offsets));
}

RecSplitMphf build_mphf(std::span<const Signature> signatures, const BuildConfig& cfg,
                        Assignments* assignments) {
    validate(cfg);
    const unsigned threads =
        cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    const uint64_t n = signatures.size();
    const uint64_t nbuckets = n == 0 ? 0 : (n + cfg.bucket_size - 1) / cfg.bucket_size;
#ifndef _OPENMP
    (void)threads;
    return build_mphf_serial(signatures, cfg, assignments);
#else
    if (threads <= 1 || nbuckets < 2) return build_mphf_serial(signatures, cfg, assignments);

    const SplitStrategy strategy(cfg.leaf_size, strategy_table_limit(cfg.bucket_size));
    PreparedBuckets pb = bucket_signatures(signatures, nbuckets);

    // Workers fill per-bucket slots in any order; assembly below concatenates
    // them in bucket order, so the output does not depend on the thread count.
    std::vector<std::vector<RiceCode>> bucket_codes(nbuckets);
    std::vector<Assignments> bucket_assign(assignments != nullptr ? nbuckets : 0);
    std::atomic<int> error{0};

#pragma omp parallel for schedule(dynamic, 4) num_threads(static_cast<int>(threads))
    for (int64_t b = 0; b < static_cast<int64_t>(nbuckets); ++b) {
        if (error.load(std::memory_order_relaxed) != 0) continue;
        try {
            std::span<Signature> bucket{pb.sigs.data() + pb.starts[b],
                                        pb.starts[b + 1] - pb.starts[b]};
            sort_and_check(bucket);
            build_bucket(bucket, strategy, cfg.max_search_index, bucket_codes[b], pb.starts[b],
                         assignments != nullptr ? &bucket_assign[b] : nullptr);
        } catch (const DuplicateKeyError&) {
            error.store(1, std::memory_order_relaxed);
        } catch (const SearchOverflowError&) {
            error.store(2, std::memory_order_relaxed);
        }
    }
    if (error.load() == 1) throw DuplicateKeyError{};
    if (error.load() == 2) throw SearchOverflowError{};

    RiceBitVector::Builder rb;
    std::vector<uint64_t> offsets(nbuckets + 1, 0);
    for (uint64_t b = 0; b < nbuckets; ++b) {
        offsets[b] = rb.size_bits();
        rb.append_bucket(bucket_codes[b]);
    }
    if (assignments != nullptr)
        for (Assignments& a : bucket_assign)
            assignments->insert(assignments->end(), a.begin(), a.end());

    return assemble(cfg, pb, std::move(rb), std::move(offsets));
#endif
}

RecSplitMphf build_mphf(std::span<const std::string> keys, const BuildConfig& cfg) {
    std::vector<Signature> sigs(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) sigs[i] = sign(keys[i], cfg.seed);
    return build_mphf(sigs, cfg);
}

}  // namespace recsplit
