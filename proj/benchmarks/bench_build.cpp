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

// Compares the OpenMP builder against the serial reference on the same key
// sets: per-key construction time, speedup, lookup time, and a byte-identity
// check of the serialized output.

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "recsplit/builder.hpp"
#include "recsplit/keygen.hpp"
#include "recsplit/serialize.hpp"

using namespace recsplit;
using Clock = std::chrono::steady_clock;

namespace {

std::vector<Signature> random_signatures(uint64_t n, uint64_t seed) {
    RandomKeyStream stream(seed);
    std::vector<Signature> sigs(n);
    for (Signature& s : sigs) {
        const auto key = stream.next();
        s = sign(key.data(), key.size(), 1);
    }
    return sigs;
}

std::string serialized(const RecSplitMphf& f) {
    std::ostringstream out;
    save_mphf(f, out);
    return std::move(out).str();
}

double run_ns_per_key(const std::vector<Signature>& sigs, const BuildConfig& cfg, bool serial,
                      std::string& bytes) {
    const auto start = Clock::now();
    const RecSplitMphf f = serial ? build_mphf_serial(sigs, cfg) : build_mphf(sigs, cfg);
    const double ns =
        std::chrono::duration<double, std::nano>(Clock::now() - start).count() / sigs.size();
    bytes = serialized(f);
    return ns;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs parallel construction benchmark"};
    uint64_t n = 2000000;
    uint64_t lookups = 2000000;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    app.add_option("--n", n, "keys per configuration")->default_val(n);
    app.add_option("--lookups", lookups)->default_val(lookups);
    app.add_option("--threads", threads)->default_val(threads);
    CLI11_PARSE(app, argc, argv);

    struct Shape {
        unsigned leaf, bucket;
    };
    std::cout << "leaf,bucket,n,threads,serial_ns_per_key,parallel_ns_per_key,speedup,"
                 "lookup_ns_per_key,bits_per_key,identical\n";

    bool all_identical = true;
    for (const Shape shape : {Shape{5, 5}, Shape{8, 100}, Shape{11, 500}}) {
        BuildConfig cfg;
        cfg.leaf_size = shape.leaf;
        cfg.bucket_size = shape.bucket;
        cfg.seed = 1;
        cfg.threads = threads;
        const std::vector<Signature> sigs = random_signatures(n, 99);

        std::string serial_bytes, parallel_bytes;
        const double serial_ns = run_ns_per_key(sigs, cfg, /*serial=*/true, serial_bytes);
        const double parallel_ns = run_ns_per_key(sigs, cfg, /*serial=*/false, parallel_bytes);
        const bool identical = serial_bytes == parallel_bytes;
        all_identical = all_identical && identical;

        std::istringstream in(parallel_bytes);
        const RecSplitMphf f = load_mphf(in);
        std::mt19937_64 rng(7);
        std::vector<const Signature*> probes(lookups);
        for (auto& p : probes) p = &sigs[rng() % n];
        uint64_t checksum = 0;
        const auto start = Clock::now();
        for (const Signature* p : probes) checksum += f.lookup(*p);
        double lookup_ns =
            std::chrono::duration<double, std::nano>(Clock::now() - start).count() / lookups;
        if (checksum == ~uint64_t(0)) lookup_ns = 0;  // defeat dead-code elimination

        std::cout << shape.leaf << "," << shape.bucket << "," << n << "," << threads << ","
                  << serial_ns << "," << parallel_ns << "," << serial_ns / parallel_ns << ","
                  << lookup_ns << ","
                  << 8.0 * double(parallel_bytes.size() - kHeaderBytes) / double(n) << ","
                  << (identical ? "yes" : "NO") << "\n";
    }
    return all_identical ? 0 : 1;
}
