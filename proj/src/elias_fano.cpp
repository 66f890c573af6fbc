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

#include "recsplit/elias_fano.hpp"

#include <cassert>
#include <limits>
#include <stdexcept>

#include "recsplit/bits.hpp"

namespace recsplit {

namespace {

// positions of every 2^step-th one, by sequential scan
std::vector<uint64_t> sample_ones(std::span<const uint64_t> words, uint64_t ones_count,
                                  unsigned log_step) {
    std::vector<uint64_t> samples;
    if (ones_count == 0) return samples;
    samples.reserve(((ones_count - 1) >> log_step) + 1);
    const uint64_t mask = (uint64_t(1) << log_step) - 1;
    uint64_t seen = 0;
    for (std::size_t w = 0; w < words.size() && seen < ones_count; ++w) {
        uint64_t word = words[w];
        while (word != 0) {
            const unsigned bit = static_cast<unsigned>(std::countr_zero(word));
            if ((seen & mask) == 0) samples.push_back(w * 64 + bit);
            word &= word - 1;
            if (++seen == ones_count) break;
        }
    }
    assert(seen == ones_count);
    return samples;
}

std::vector<uint64_t> interleave(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
    assert(a.size() == b.size());
    std::vector<uint64_t> out(a.size() * 2);
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[2 * i] = a[i];
        out[2 * i + 1] = b[i];
    }
    return out;
}

unsigned low_width(uint64_t universe, uint64_t n) {
    const uint64_t ratio = universe / n;
    return ratio == 0 ? 0 : bits::floor_log2(ratio);
}

}  // namespace

UpperSelect UpperSelect::build(std::span<const uint64_t> words_a,
                               std::span<const uint64_t> words_b, uint64_t ones_count) {
    UpperSelect s;
    if (ones_count == 0) return s;

    const std::vector<uint64_t> block_a = sample_ones(words_a, ones_count, kLogBlock);
    const std::vector<uint64_t> block_b = sample_ones(words_b, ones_count, kLogBlock);

    constexpr uint64_t kBlocksPerSuper = uint64_t(1) << (kLogSuperblock - kLogBlock);
    bool overflow = false;
    for (std::size_t j = 0; j < block_a.size() && !overflow; ++j) {
        const std::size_t super = j / kBlocksPerSuper;
        overflow = block_a[j] - block_a[super * kBlocksPerSuper] >= (uint64_t(1) << 16) ||
                   block_b[j] - block_b[super * kBlocksPerSuper] >= (uint64_t(1) << 16);
    }

    if (overflow) {
        s.dense = true;
        s.abs = interleave(block_a, block_b);
        return s;
    }

    std::vector<uint64_t> super_a, super_b;
    for (std::size_t j = 0; j < block_a.size(); j += kBlocksPerSuper) {
        super_a.push_back(block_a[j]);
        super_b.push_back(block_b[j]);
    }
    s.abs = interleave(super_a, super_b);
    s.rel.resize(block_a.size() * 2);
    for (std::size_t j = 0; j < block_a.size(); ++j) {
        const std::size_t super = j / kBlocksPerSuper;
        s.rel[2 * j] = static_cast<uint16_t>(block_a[j] - super_a[super]);
        s.rel[2 * j + 1] = static_cast<uint16_t>(block_b[j] - super_b[super]);
    }
    return s;
}

uint64_t UpperSelect::select(std::span<const uint64_t> words, unsigned which, uint64_t k) const {
    uint64_t base;
    if (dense) {
        base = abs[2 * (k >> kLogBlock) + which];
    } else {
        base = abs[2 * (k >> kLogSuperblock) + which] + rel[2 * (k >> kLogBlock) + which];
    }
    const uint64_t remaining = k & ((uint64_t(1) << kLogBlock) - 1);
    if (remaining == 0) return base;
    return bits::select_in_words(words.data(), base + 1, remaining - 1);
}

DoubleEliasFano DoubleEliasFano::build(std::span<const uint64_t> cum_keys,
                                       std::span<const uint64_t> bit_offsets, uint32_t beta) {
    if (cum_keys.size() != bit_offsets.size() || cum_keys.empty())
        throw std::invalid_argument("DoubleEliasFano: lists must have equal nonzero length");
    if (cum_keys.front() != 0 || bit_offsets.front() != 0)
        throw std::invalid_argument("DoubleEliasFano: lists must start at 0");

    Layout l;
    l.num_entries = cum_keys.size();
    l.beta = beta;
    const uint64_t n = l.num_entries;

    // offset list after removing the beta*keys trend
    std::vector<int64_t> off(n);
    for (uint64_t i = 0; i < n; ++i)
        off[i] = static_cast<int64_t>(bit_offsets[i]) -
                 static_cast<int64_t>(beta_times(beta, cum_keys[i]));

    // minimum gaps; rescaling by i*delta keeps both lists monotone from 0
    l.delta_cum = std::numeric_limits<int64_t>::max();
    l.delta_off = std::numeric_limits<int64_t>::max();
    for (uint64_t i = 1; i < n; ++i) {
        l.delta_cum = std::min(l.delta_cum,
                               static_cast<int64_t>(cum_keys[i]) - static_cast<int64_t>(cum_keys[i - 1]));
        l.delta_off = std::min(l.delta_off, off[i] - off[i - 1]);
    }
    if (n == 1) l.delta_cum = l.delta_off = 0;

    std::vector<uint64_t> cum_rescaled(n), off_rescaled(n);
    for (uint64_t i = 0; i < n; ++i) {
        const int64_t c = static_cast<int64_t>(cum_keys[i]) - static_cast<int64_t>(i) * l.delta_cum;
        const int64_t o = off[i] - static_cast<int64_t>(i) * l.delta_off;
        assert(c >= 0 && o >= 0);
        cum_rescaled[i] = static_cast<uint64_t>(c);
        off_rescaled[i] = static_cast<uint64_t>(o);
    }

    l.low_width_cum = static_cast<uint8_t>(low_width(cum_rescaled.back() + 1, n));
    l.low_width_off = static_cast<uint8_t>(low_width(off_rescaled.back() + 1, n));

    const unsigned stride = l.low_width_cum + l.low_width_off;
    l.low_words.assign(bits::words_for_bits(n * stride), 0);
    l.upper_cum.assign(bits::words_for_bits((cum_rescaled.back() >> l.low_width_cum) + n), 0);
    l.upper_off.assign(bits::words_for_bits((off_rescaled.back() >> l.low_width_off) + n), 0);

    const uint64_t low_mask_cum = (uint64_t(1) << l.low_width_cum) - 1;
    const uint64_t low_mask_off = (uint64_t(1) << l.low_width_off) - 1;
    for (uint64_t i = 0; i < n; ++i) {
        bits::set_bits(l.low_words.data(), i * stride, l.low_width_cum, cum_rescaled[i] & low_mask_cum);
        bits::set_bits(l.low_words.data(), i * stride + l.low_width_cum, l.low_width_off,
                       off_rescaled[i] & low_mask_off);
        bits::set_bit(l.upper_cum.data(), (cum_rescaled[i] >> l.low_width_cum) + i);
        bits::set_bit(l.upper_off.data(), (off_rescaled[i] >> l.low_width_off) + i);
    }

    l.inventory = UpperSelect::build(l.upper_cum, l.upper_off, n);
    return from_layout(std::move(l));
}

uint64_t DoubleEliasFano::upper_value(unsigned which, uint64_t i) const {
    const auto& words = which == 0 ? l_.upper_cum : l_.upper_off;
    return l_.inventory.select(words, which, i) - i;
}

void DoubleEliasFano::get(uint64_t i, uint64_t& cum, uint64_t& offset) const {
    assert(i < l_.num_entries);
    const unsigned stride = l_.low_width_cum + l_.low_width_off;
    const uint64_t low_cum = bits::get_bits(l_.low_words.data(), i * stride, l_.low_width_cum);
    const uint64_t low_off =
        bits::get_bits(l_.low_words.data(), i * stride + l_.low_width_cum, l_.low_width_off);

    const uint64_t cum_rescaled = (upper_value(0, i) << l_.low_width_cum) | low_cum;
    cum = static_cast<uint64_t>(static_cast<int64_t>(cum_rescaled) +
                                static_cast<int64_t>(i) * l_.delta_cum);

    const uint64_t off_rescaled = (upper_value(1, i) << l_.low_width_off) | low_off;
    offset = static_cast<uint64_t>(static_cast<int64_t>(off_rescaled) +
                                   static_cast<int64_t>(i) * l_.delta_off +
                                   static_cast<int64_t>(beta_times(l_.beta, cum)));
}

void DoubleEliasFano::get_pair(uint64_t i, uint64_t& cum, uint64_t& cum_next,
                               uint64_t& offset) const {
    assert(i + 1 < l_.num_entries);
    get(i, cum, offset);

    // the (i+1)-th one of the cumulative list sits right after the i-th
    const uint64_t pos = l_.inventory.select(l_.upper_cum, 0, i);
    const uint64_t pos_next = bits::select_in_words(l_.upper_cum.data(), pos + 1, 0);
    const unsigned stride = l_.low_width_cum + l_.low_width_off;
    const uint64_t low_next = bits::get_bits(l_.low_words.data(), (i + 1) * stride, l_.low_width_cum);
    const uint64_t rescaled = ((pos_next - (i + 1)) << l_.low_width_cum) | low_next;
    cum_next = static_cast<uint64_t>(static_cast<int64_t>(rescaled) +
                                     static_cast<int64_t>(i + 1) * l_.delta_cum);
}

uint64_t DoubleEliasFano::size_bits() const {
    return 64 * (l_.low_words.size() + l_.upper_cum.size() + l_.upper_off.size() +
                 l_.inventory.abs.size()) +
           16 * l_.inventory.rel.size();
}

}  // namespace recsplit
