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

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>

#include "recsplit/strategy.hpp"

// Exact-arithmetic oracles for the probability theory behind the searches.
// Everything here is exact rational arithmetic except the final comparisons;
// 64-bit integers overflow already at 8^8, so arbitrary precision is not
// optional.
namespace recsplit::analysis {

using ExactInt = boost::multiprecision::cpp_int;
using ExactRational = boost::multiprecision::cpp_rational;

ExactInt factorial(uint64_t m);
ExactInt power(uint64_t base, uint64_t exp);

//! Probability that a uniform function m -> m (m = sum of parts) maps exactly
//! parts[t] elements into the t-th part interval: m!/m^m * prod k^k/k!.
ExactRational split_probability(std::span<const uint64_t> parts);

//! Probability m!/m^m that a uniform function m -> m is a bijection.
ExactRational bijection_probability(uint64_t m);

//! Expected trials of a splitting search: 1 / split_probability.
ExactRational expected_split_trials(std::span<const uint64_t> parts);

//! Expected trials of a bijection search: m^m/m!.
ExactRational expected_bijection_trials(uint64_t m);

//! Stirling approximations of the two trial counts.
double split_trials_asymptotic(std::span<const uint64_t> parts);
double bijection_trials_asymptotic(uint64_t m);

//! Exact success probability of the whole splitting tree the strategy builds
//! over m keys: the product of the split probability at every internal node
//! and the bijection probability at every leaf.
ExactRational tree_probability(const SplitStrategy& strategy, uint64_t m);

//! The invariance property: tree_probability(m) must equal m!/m^m exactly,
//! no matter what the tree looks like.
bool verify_invariance(const SplitStrategy& strategy, uint64_t m);

//! Expected Golomb-Rice code length r + 1/(1-(1-p)^(2^r)), in closed form.
double expected_code_length(double p, unsigned r);

//! The same expectation summed term by term, sum (1-p)^k p * len(k) until the
//! remaining tail is below 10^-12. Kept independent as an oracle.
double expected_code_length_bruteforce(double p, unsigned r);

//! Parameter minimizing the expected code length, by brute force over r.
unsigned optimal_rice_bruteforce(double p);

}  // namespace recsplit::analysis
