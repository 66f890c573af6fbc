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

#include "recsplit/analysis.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

namespace recsplit::analysis {

ExactInt factorial(uint64_t m) {
    ExactInt f = 1;
    for (uint64_t i = 2; i <= m; ++i) f *= i;
    return f;
}

ExactInt power(uint64_t base, uint64_t exp) {
    return boost::multiprecision::pow(ExactInt(base), static_cast<unsigned>(exp));
}

ExactRational split_probability(std::span<const uint64_t> parts) {
    uint64_t m = 0;
    for (uint64_t k : parts) {
        assert(k >= 1);
        m += k;
    }
    ExactInt num = factorial(m);
    ExactInt den = power(m, m);
    for (uint64_t k : parts) {
        num *= power(k, k);
        den *= factorial(k);
    }
    return ExactRational(num, den);
}

ExactRational bijection_probability(uint64_t m) {
    assert(m >= 1);
    return ExactRational(factorial(m), power(m, m));
}

ExactRational expected_split_trials(std::span<const uint64_t> parts) {
    const ExactRational p = split_probability(parts);
    return ExactRational(denominator(p), numerator(p));
}

ExactRational expected_bijection_trials(uint64_t m) {
    return ExactRational(power(m, m), factorial(m));
}

double split_trials_asymptotic(std::span<const uint64_t> parts) {
    uint64_t m = 0;
    double prod = 1;
    for (uint64_t k : parts) {
        m += k;
        prod *= static_cast<double>(k);
    }
    const double s = static_cast<double>(parts.size());
    return std::sqrt(std::pow(2 * std::numbers::pi, s - 1) * prod / static_cast<double>(m));
}

double bijection_trials_asymptotic(uint64_t m) {
    const double md = static_cast<double>(m);
    return std::exp(md) / std::sqrt(2 * std::numbers::pi * md);
}

ExactRational tree_probability(const SplitStrategy& strategy, uint64_t m) {
    if (m <= strategy.leaf_size()) return m == 1 ? ExactRational(1) : bijection_probability(m);
    const std::vector<uint64_t> parts = strategy.part_sizes(m);
    ExactRational p = split_probability(parts);
    for (uint64_t k : parts) p *= tree_probability(strategy, k);
    return p;
}

bool verify_invariance(const SplitStrategy& strategy, uint64_t m) {
    return tree_probability(strategy, m) == bijection_probability(m);
}

double expected_code_length(double p, unsigned r) {
    assert(p > 0 && p <= 1);
    // 1 - (1-p)^(2^r), evaluated without cancellation
    const double success_block = -std::expm1(std::ldexp(1.0, static_cast<int>(r)) * std::log1p(-p));
    return r + 1.0 / success_block;
}

double expected_code_length_bruteforce(double p, unsigned r) {
    assert(p > 0 && p <= 1);
    if (p == 1) return r + 1;
    const double q = 1 - p;
    double total = 0;
    double weight = p;  // (1-p)^k * p
    for (uint64_t k = 0;; ++k) {
        const double len = r + static_cast<double>(k >> r) + 1;
        total += weight * len;
        // tail after k: sum_{j>k} q^j p len(j) <= q^{k+1} (len(k) + 2 + 1/(p 2^r))
        const double tail_bound =
            weight * q / p * (len + 2.0 + 1.0 / (p * std::ldexp(1.0, static_cast<int>(r))));
        if (tail_bound < 1e-12) break;
        weight *= q;
    }
    return total;
}

unsigned optimal_rice_bruteforce(double p) {
    unsigned best_r = 0;
    double best = expected_code_length(p, 0);
    for (unsigned r = 1; r < 32; ++r) {
        const double len = expected_code_length(p, r);
        if (len < best) {
            best = len;
            best_r = r;
        }
    }
    return best_r;
}

}  // namespace recsplit::analysis
