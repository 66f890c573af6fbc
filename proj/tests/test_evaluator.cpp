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

#include <doctest.h>

#include <atomic>
#include <random>

#include "recsplit/builder.hpp"
#include "support.hpp"

using namespace recsplit;

TEST_CASE("lookups form a permutation of [0, n)") {
    struct Shape {
        unsigned leaf, bucket;
        std::size_t n;
    };
    for (const Shape& shape : {Shape{2, 5, 100}, Shape{8, 100, 10000}, Shape{5, 5, 3333},
                               Shape{12, 9, 2000}, Shape{1, 7, 500}}) {
        BuildConfig cfg;
        cfg.leaf_size = shape.leaf;
        cfg.bucket_size = shape.bucket;
        auto sigs = testing::random_signatures(shape.n, 1000 + shape.n);
        const RecSplitMphf f = build_mphf(sigs, cfg);
        std::vector<bool> seen(shape.n, false);
        for (const Signature& s : sigs) {
            const uint64_t rank = f.lookup(s);
            REQUIRE(rank < shape.n);
            REQUIRE_FALSE(seen[rank]);
            seen[rank] = true;
        }
    }
}

TEST_CASE("member lookups stay within their bucket's rank range") {
    BuildConfig cfg;
    cfg.leaf_size = 4;
    cfg.bucket_size = 30;
    auto sigs = testing::random_signatures(4000, 17);
    const RecSplitMphf f = build_mphf(sigs, cfg);
    for (const Signature& s : sigs) {
        uint64_t cum, cum_next, offset;
        f.ef().get_pair(bucket_of(s, f.num_buckets()), cum, cum_next, offset);
        const uint64_t rank = f.lookup(s);
        CHECK(rank >= cum);
        CHECK(rank < cum_next);
    }
}

TEST_CASE("skip-based descent equals the naive full-decode evaluator") {
    std::mt19937_64 rng(55);
    std::size_t instances = 0;
    for (int structure = 0; structure < 100; ++structure) {
        BuildConfig cfg;
        cfg.leaf_size = 1 + structure % 10;
        cfg.bucket_size = 5 + static_cast<unsigned>(rng() % 200);
        const std::size_t n = 1 + rng() % 2000;
        auto sigs = testing::random_signatures(n, 40000 + structure);
        const RecSplitMphf f = build_mphf(sigs, cfg);

        for (const Signature& s : sigs) {
            REQUIRE(f.lookup(s) == testing::naive_lookup(f, s));
            ++instances;
        }
        // non-member signatures agree too (both are arbitrary but identical)
        for (int probe = 0; probe < 50; ++probe) {
            const Signature s{rng(), rng()};
            REQUIRE(f.lookup(s) == testing::naive_lookup(f, s));
            ++instances;
        }
    }
    CHECK(instances > 10000);
}

TEST_CASE("concurrent lookups over the immutable structure agree") {
    BuildConfig cfg;
    cfg.leaf_size = 8;
    cfg.bucket_size = 100;
    auto sigs = testing::random_signatures(50000, 4242);
    const RecSplitMphf f = build_mphf(sigs, cfg);
    std::vector<uint64_t> expected(sigs.size());
    for (std::size_t i = 0; i < sigs.size(); ++i) expected[i] = f.lookup(sigs[i]);

    std::atomic<uint64_t> mismatches{0};
#pragma omp parallel for
    for (int64_t i = 0; i < int64_t(sigs.size()); ++i) {
        if (f.lookup(sigs[i]) != expected[i]) ++mismatches;
    }
    CHECK(mismatches == 0);
}

TEST_CASE("a descent decodes at most the strategy's depth-bound codes") {
    std::mt19937_64 rng(56);
    for (int structure = 0; structure < 20; ++structure) {
        BuildConfig cfg;
        cfg.leaf_size = 2 + structure % 8;
        cfg.bucket_size = 20 + static_cast<unsigned>(rng() % 500);
        auto sigs = testing::random_signatures(1 + rng() % 3000, 90000 + structure);
        const RecSplitMphf f = build_mphf(sigs, cfg);
        for (std::size_t i = 0; i < std::min<std::size_t>(sigs.size(), 200); ++i) {
            const Signature& s = sigs[i];
            uint64_t cum, cum_next, offset;
            f.ef().get_pair(bucket_of(s, f.num_buckets()), cum, cum_next, offset);
            std::size_t decodes = 0;
            (void)testing::naive_lookup(f, s, &decodes);
            CHECK(decodes <= testing::max_path_decodes(f.strategy(), cum_next - cum));
        }
    }
}
