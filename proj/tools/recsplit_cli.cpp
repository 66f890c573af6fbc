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

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "recsplit/builder.hpp"
#include "recsplit/keygen.hpp"
#include "recsplit/serialize.hpp"

namespace {

using namespace recsplit;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

//! Keys from a file: newline-delimited byte strings in text mode, or
//! 32-bit-LE-length-prefixed records in binary mode.
std::vector<std::string> read_keys(const std::string& path, bool binary) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::string> keys;
    if (binary) {
        for (;;) {
            unsigned char len_bytes[4];
            in.read(reinterpret_cast<char*>(len_bytes), 4);
            if (in.gcount() == 0 && in.eof()) break;
            if (in.gcount() != 4) throw std::runtime_error("truncated record in " + path);
            const uint32_t len = uint32_t(len_bytes[0]) | uint32_t(len_bytes[1]) << 8 |
                                 uint32_t(len_bytes[2]) << 16 | uint32_t(len_bytes[3]) << 24;
            std::string key(len, '\0');
            in.read(key.data(), len);
            if (static_cast<uint32_t>(in.gcount()) != len)
                throw std::runtime_error("truncated record in " + path);
            keys.push_back(std::move(key));
        }
    } else {
        std::string line;
        while (std::getline(in, line)) keys.push_back(line);
    }
    return keys;
}

std::vector<Signature> signatures_of(const std::vector<std::string>& keys, uint64_t seed) {
    std::vector<Signature> sigs(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) sigs[i] = sign(keys[i], seed);
    return sigs;
}

//! The 128-bit-random-keys experiment: 16-byte records from the internal
//! deterministic generator, hashed like any other key.
std::vector<Signature> random_signatures(uint64_t n, uint64_t key_seed, uint64_t hash_seed) {
    RandomKeyStream stream(key_seed);
    std::vector<Signature> sigs(n);
    for (Signature& s : sigs) {
        const auto key = stream.next();
        s = sign(key.data(), key.size(), hash_seed);
    }
    return sigs;
}

uint64_t serialized_bytes(const RecSplitMphf& f) {
    std::ostringstream out;
    save_mphf(f, out);
    return out.str().size();
}

unsigned default_threads() {
    if (const char* env = std::getenv("RECSPLIT_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 0;  // builder resolves 0 to the hardware thread count
}

bool check_permutation(const RecSplitMphf& f, const std::vector<Signature>& sigs) {
    if (sigs.size() != f.num_keys()) return false;
    std::vector<bool> seen(sigs.size(), false);
    for (const Signature& s : sigs) {
        const uint64_t rank = f.lookup(s);
        if (rank >= sigs.size() || seen[rank]) return false;
        seen[rank] = true;
    }
    return true;
}

struct KeySource {
    std::string input;
    bool binary = false;
    uint64_t random_n = 0;
    uint64_t key_seed = 1;
    bool use_random = false;

    void add_options(CLI::App* cmd, bool required) {
        auto* in = cmd->add_option("--input", input, "key file (one key per line)");
        auto* rnd = cmd->add_option("--random", random_n, "generate N random 16-byte keys");
        cmd->add_flag("--binary", binary, "input file holds length-prefixed records");
        cmd->add_option("--key-seed", key_seed, "seed of the random key generator")
            ->default_val(1);
        in->excludes(rnd);
        rnd->excludes(in);
        if (required) {
            // exactly one of the two sources
            cmd->callback([this, cmd]() {
                use_random = cmd->count("--random") > 0;
                if (!use_random && input.empty())
                    throw CLI::ValidationError("provide --input or --random");
            });
        }
    }

    std::vector<Signature> load(uint64_t hash_seed) const {
        if (use_random) return random_signatures(random_n, key_seed, hash_seed);
        return signatures_of(read_keys(input, binary), hash_seed);
    }
};

int cmd_build(const KeySource& source, const std::string& output, BuildConfig cfg,
              unsigned retries) {
    const auto start = Clock::now();
    for (unsigned attempt = 0;; ++attempt) {
        try {
            const std::vector<Signature> sigs = source.load(cfg.seed);
            const RecSplitMphf f = build_mphf(sigs, cfg);
            const double elapsed = seconds_since(start);
            save_mphf_file(f, output);

            const uint64_t bytes = serialized_bytes(f);
            const double n = static_cast<double>(f.num_keys());
            std::cout << "keys: " << f.num_keys() << "\n"
                      << "buckets: " << f.num_buckets() << "\n";
            if (f.num_keys() > 0) {
                std::cout << "bits/key (excluding header): " << 8.0 * (bytes - kHeaderBytes) / n
                          << "\n"
                          << "bits/key (total file): " << 8.0 * bytes / n << "\n"
                          << "build time: " << elapsed << " s (" << 1e9 * elapsed / n
                          << " ns/key)\n";
            }
            return 0;
        } catch (const DuplicateKeyError& e) {
            if (attempt >= retries) {
                std::cerr << "error: " << e.what() << "\n";
                return 1;
            }
        } catch (const SearchOverflowError& e) {
            if (attempt >= retries) {
                std::cerr << "error: " << e.what() << "\n";
                return 1;
            }
        }
        ++cfg.seed;
        std::cerr << "retrying with seed " << cfg.seed << "\n";
    }
}

int cmd_query(const std::string& mphf_path, const std::optional<std::string>& key,
              const std::optional<std::string>& keys_file, bool binary) {
    const RecSplitMphf f = load_mphf_file(mphf_path);
    if (f.num_keys() == 0) {
        std::cerr << "error: empty function has no valid lookups\n";
        return 1;
    }
    if (key) {
        std::cout << f.lookup(*key) << "\n";
        return 0;
    }
    for (const std::string& k : read_keys(*keys_file, binary)) std::cout << f.lookup(k) << "\n";
    return 0;
}

int cmd_verify(const std::string& mphf_path, const KeySource& source) {
    const RecSplitMphf f = load_mphf_file(mphf_path);
    const std::vector<Signature> sigs = source.load(f.seed());
    if (!check_permutation(f, sigs)) {
        std::cerr << "verification FAILED: lookups are not a permutation of [0, n)\n";
        return 1;
    }
    std::cout << "ok: " << sigs.size() << " keys map bijectively onto [0, " << sigs.size()
              << ")\n";
    return 0;
}

int cmd_info(const std::string& mphf_path) {
    const RecSplitMphf f = load_mphf_file(mphf_path);
    const uint64_t bytes = serialized_bytes(f);

    uint64_t fixed_bits = 0;
    for (uint64_t b = 0; b < f.num_buckets(); ++b) {
        uint64_t cum, cum_next, offset;
        f.ef().get_pair(b, cum, cum_next, offset);
        fixed_bits += f.strategy().skip_info(cum_next - cum).fixed_bits;
    }

    std::cout << "keys: " << f.num_keys() << "\n"
              << "leaf size: " << f.leaf_size() << "\n"
              << "bucket size: " << f.bucket_size() << "\n"
              << "buckets: " << f.num_buckets() << "\n"
              << "seed: " << f.seed() << "\n"
              << "beta (tree bits/key): " << f.ef().beta() / 65536.0 << "\n"
              << "code bits: " << f.codes().size_bits() << " (fixed " << fixed_bits << ", unary "
              << f.codes().size_bits() - fixed_bits << ")\n"
              << "prefix-sum/offset bits: " << f.ef().size_bits() << "\n"
              << "file bytes: " << bytes << "\n";
    if (f.num_keys() > 0) {
        const double n = static_cast<double>(f.num_keys());
        std::cout << "bits/key (excluding header): " << 8.0 * (bytes - kHeaderBytes) / n << "\n"
                  << "bits/key (total file): " << 8.0 * bytes / n << "\n";
    }
    return 0;
}

int cmd_bench(unsigned leaf, unsigned bucket, uint64_t n, uint64_t lookups, uint64_t seed,
              unsigned threads) {
    BuildConfig cfg;
    cfg.leaf_size = leaf;
    cfg.bucket_size = bucket;
    cfg.seed = seed;
    cfg.threads = threads;

    const auto t_build = Clock::now();
    const std::vector<Signature> sigs = random_signatures(n, 1, cfg.seed);
    const RecSplitMphf f = build_mphf(sigs, cfg);
    const double build_s = seconds_since(t_build);

    std::mt19937_64 rng(42);
    std::vector<const Signature*> probes(lookups);
    for (auto& p : probes) p = &sigs[rng() % n];
    uint64_t checksum = 0;
    const auto t_lookup = Clock::now();
    for (const Signature* p : probes) checksum += f.lookup(*p);
    const double lookup_s = seconds_since(t_lookup);

    const double bits_per_key = 8.0 * (serialized_bytes(f) - kHeaderBytes) / double(n);
    std::cout << "leaf,bucket,n,bits_per_key,build_ns_per_key,lookup_ns_per_key\n"
              << leaf << "," << bucket << "," << n << "," << bits_per_key << ","
              << 1e9 * build_s / double(n) << "," << 1e9 * lookup_s / double(lookups) << "\n";
    return checksum == ~uint64_t(0) ? 2 : 0;  // keep the loop observable
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RecSplit minimal perfect hash functions"};
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "construct an MPHF and write it to a file");
    KeySource build_source;
    build_source.add_options(build, /*required=*/true);
    std::string output;
    BuildConfig cfg;
    unsigned retries = 0;
    build->add_option("--output", output, "output file")->required();
    build->add_option("--leaf", cfg.leaf_size, "leaf size (1-24)")->default_val(8);
    build->add_option("--bucket", cfg.bucket_size, "average bucket size")->default_val(100);
    build->add_option("--seed", cfg.seed, "hash seed")->default_val(0);
    build->add_option("--threads", cfg.threads, "worker threads (0 = all)")
        ->default_val(default_threads());
    build->add_option("--retry", retries, "rebuild with seed+1 up to N times on failure")
        ->default_val(0);

    // query
    auto* query = app.add_subcommand("query", "look keys up in a stored MPHF");
    std::string query_mphf;
    std::optional<std::string> query_key, query_keys_file;
    bool query_binary = false;
    query->add_option("--mphf", query_mphf, "MPHF file")->required();
    auto* qk = query->add_option("--key", query_key, "single key");
    auto* qf = query->add_option("--keys", query_keys_file, "file of keys, one rank per line");
    query->add_flag("--binary", query_binary, "keys file holds length-prefixed records");
    qk->excludes(qf);
    qf->excludes(qk);

    // verify
    auto* verify = app.add_subcommand("verify", "check that lookups form a permutation");
    std::string verify_mphf;
    KeySource verify_source;
    verify->add_option("--mphf", verify_mphf, "MPHF file")->required();
    verify_source.add_options(verify, /*required=*/true);

    // bench
    auto* bench = app.add_subcommand("bench", "build/lookup timings as a CSV row");
    unsigned bench_leaf = 8, bench_bucket = 100, bench_threads = default_threads();
    uint64_t bench_n = 1000000, bench_lookups = 1000000, bench_seed = 0;
    bench->add_option("--leaf", bench_leaf)->default_val(8);
    bench->add_option("--bucket", bench_bucket)->default_val(100);
    bench->add_option("--n", bench_n, "number of random keys")
        ->default_val(1000000)
        ->check(CLI::PositiveNumber);
    bench->add_option("--lookups", bench_lookups)
        ->default_val(1000000)
        ->check(CLI::PositiveNumber);
    bench->add_option("--seed", bench_seed)->default_val(0);
    bench->add_option("--threads", bench_threads)->default_val(default_threads());

    // info
    auto* info = app.add_subcommand("info", "dump header fields and the space breakdown");
    std::string info_mphf;
    info->add_option("--mphf", info_mphf, "MPHF file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_build(build_source, output, cfg, retries);
        if (query->parsed()) {
            if (!query_key && !query_keys_file) {
                std::cerr << "error: provide --key or --keys\n";
                return 1;
            }
            return cmd_query(query_mphf, query_key, query_keys_file, query_binary);
        }
        if (verify->parsed()) return cmd_verify(verify_mphf, verify_source);
        if (bench->parsed())
            return cmd_bench(bench_leaf, bench_bucket, bench_n, bench_lookups, bench_seed,
                             bench_threads);
        if (info->parsed()) return cmd_info(info_mphf);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
