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

#include <sstream>

#include "recsplit/builder.hpp"
#include "recsplit/serialize.hpp"
#include "support.hpp"

using namespace recsplit;

namespace {

std::string serialized(const RecSplitMphf& f) {
    std::ostringstream out;
    save_mphf(f, out);
    return std::move(out).str();
}

}  // namespace

TEST_CASE("serialize, deserialize, re-serialize is byte-identical") {
    for (std::size_t n : {std::size_t(0), std::size_t(1), std::size_t(5000)}) {
        BuildConfig cfg;
        cfg.leaf_size = 6;
        cfg.bucket_size = 64;
        cfg.seed = 0xfeedface;
        auto sigs = testing::random_signatures(n, 31 + n);
        const RecSplitMphf built = build_mphf(sigs, cfg);
        const std::string bytes = serialized(built);

        std::istringstream in(bytes);
        const RecSplitMphf loaded = load_mphf(in);
        CHECK(serialized(loaded) == bytes);

        CHECK(loaded.num_keys() == n);
        CHECK(loaded.leaf_size() == cfg.leaf_size);
        CHECK(loaded.bucket_size() == cfg.bucket_size);
        CHECK(loaded.seed() == cfg.seed);
        for (const Signature& s : sigs) CHECK(loaded.lookup(s) == built.lookup(s));
    }
}

TEST_CASE("header starts with magic and version") {
    const RecSplitMphf f = build_mphf(std::span<const Signature>{}, {});
    const std::string bytes = serialized(f);
    REQUIRE(bytes.size() >= kHeaderBytes);
    CHECK(bytes.substr(0, 8) == "RECSPLIT");
    CHECK(bytes[8] == 1);  // version 1, little-endian
    CHECK(bytes[9] == 0);
}

TEST_CASE("garbage input is rejected") {
    SUBCASE("wrong magic") {
        std::istringstream in("NOTMAGIC________________________________________");
        CHECK_THROWS_WITH_AS((void)load_mphf(in), "not a recsplit file", std::runtime_error);
    }
    SUBCASE("truncation") {
        auto sigs = testing::random_signatures(100, 3);
        const std::string bytes = serialized(build_mphf(sigs, {}));
        std::istringstream in(bytes.substr(0, bytes.size() / 2));
        CHECK_THROWS_AS((void)load_mphf(in), std::runtime_error);
    }
}
