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

#include "recsplit/strategy.hpp"

#include <cmath>
#include <stdexcept>

#include "recsplit/bits.hpp"

namespace recsplit {

namespace {

// ceil((num/100)) with exact integer arithmetic, so the aggregation formulas
// cannot drift across platforms through floating-point rounding
inline unsigned ceil_div_100(unsigned num) { return (num + 99) / 100; }

}  // namespace

SplitStrategy::SplitStrategy(unsigned leaf_size, std::size_t table_limit)
    : leaf_size_(leaf_size), table_limit_(table_limit) {
    if (leaf_size < 1 || leaf_size > kMaxLeafSize)
        throw std::invalid_argument("leaf size must be in [1, 24]");

    const unsigned s = std::max(2u, ceil_div_100(35 * leaf_size + 50));
    const unsigned t = leaf_size < 7 ? 2 : ceil_div_100(21 * leaf_size + 90);
    lower_aggr_ = s * leaf_size;
    upper_aggr_ = t * lower_aggr_;

    if (table_limit_ < upper_aggr_) table_limit_ = upper_aggr_;
    table_.resize(table_limit_ + 1);

    table_[0] = {0, 0, 0};
    if (table_.size() > 1) table_[1] = {0, 0, 0};  // a leaf of size one emits no code
    for (uint64_t m = 2; m < table_.size(); ++m) {
        Entry& e = table_[m];
        if (m <= leaf_size_) {
            e.rice = static_cast<uint8_t>(rice_param(bijection_probability(m)));
            e.fixed_bits = e.rice;
            e.nodes = 1;
        } else {
            const std::vector<uint64_t> parts = part_sizes(m);
            e.rice = static_cast<uint8_t>(rice_param(split_probability(m, parts)));
            uint64_t fixed = e.rice;
            uint64_t nodes = 1;
            for (uint64_t k : parts) {
                fixed += table_[k].fixed_bits;
                nodes += table_[k].nodes;
            }
            e.fixed_bits = static_cast<uint32_t>(fixed);
            e.nodes = static_cast<uint32_t>(nodes);
        }
        assert(e.rice < 32);
    }
}

std::vector<uint64_t> SplitStrategy::part_sizes(uint64_t m) const {
    const NodeSpec spec = node_spec(m);
    std::vector<uint64_t> parts(spec.fanout);
    for (uint32_t t = 0; t < spec.fanout; ++t) parts[t] = spec.part_size(m, t);
    return parts;
}

unsigned SplitStrategy::rice_param(double p) {
    assert(p > 0 && p <= 1);
    if (p >= 1) return 0;
    static const double kLogPhi = std::log((std::sqrt(5.0) + 1.0) / 2.0);
    const double ratio = -kLogPhi / std::log1p(-p);
    const double r = std::ceil(std::log2(ratio));
    return r <= 0 ? 0 : static_cast<unsigned>(r);
}

unsigned SplitStrategy::rice_param_approx(uint64_t m, std::span<const uint64_t> parts) {
    int64_t acc = static_cast<int64_t>((parts.size() - 1) * 5 >> 1);
    for (uint64_t k : parts) acc += ilog2_round(k);
    acc -= bits::floor_log2(m);
    assert(acc >= 0);
    return static_cast<unsigned>(acc >> 1);
}

double SplitStrategy::split_probability(uint64_t m, std::span<const uint64_t> parts) {
    long double ln_p = std::lgamma(static_cast<long double>(m) + 1) -
                       static_cast<long double>(m) * std::log(static_cast<long double>(m));
    for (uint64_t k : parts) {
        ln_p += static_cast<long double>(k) * std::log(static_cast<long double>(k)) -
                std::lgamma(static_cast<long double>(k) + 1);
    }
    return static_cast<double>(std::exp(ln_p));
}

double SplitStrategy::bijection_probability(uint64_t m) {
    const long double ln_p = std::lgamma(static_cast<long double>(m) + 1) -
                             static_cast<long double>(m) * std::log(static_cast<long double>(m));
    return static_cast<double>(std::exp(ln_p));
}

uint8_t SplitStrategy::rice_param_for_slow(uint64_t m) const {
    // beyond the table only split nodes can occur (leaves are tiny)
    const std::vector<uint64_t> parts = part_sizes(m);
    return static_cast<uint8_t>(rice_param_approx(m, parts));
}

SubtreeInfo SplitStrategy::skip_info_slow(uint64_t m) const {
    const NodeSpec spec = node_spec(m);
    SubtreeInfo info{rice_param_for(m), 1};
    for (uint32_t t = 0; t < spec.fanout; ++t) {
        const SubtreeInfo child = skip_info(spec.part_size(m, t));
        info.fixed_bits += child.fixed_bits;
        info.nodes += child.nodes;
    }
    return info;
}

}  // namespace recsplit
