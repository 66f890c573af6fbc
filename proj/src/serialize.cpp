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

#include "recsplit/serialize.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace recsplit {

namespace {

void put_bytes(std::ostream& out, const void* data, std::size_t len) {
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(len));
}

template <typename T>
void put_le(std::ostream& out, T value) {
    const auto v = static_cast<uint64_t>(value);
    char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    put_bytes(out, buf, sizeof(T));
}

void put_words(std::ostream& out, std::span<const uint64_t> words) {
    put_le<uint64_t>(out, words.size());
    for (uint64_t w : words) put_le<uint64_t>(out, w);
}

void put_u16_array(std::ostream& out, std::span<const uint16_t> values) {
    put_le<uint64_t>(out, values.size());
    for (uint16_t v : values) put_le<uint16_t>(out, v);
    for (std::size_t i = values.size() * 2; i % 8 != 0; ++i) put_le<uint8_t>(out, 0);
}

void get_bytes(std::istream& in, void* data, std::size_t len) {
    in.read(static_cast<char*>(data), static_cast<std::streamsize>(len));
    if (!in) throw std::runtime_error("truncated input");
}

template <typename T>
T get_le(std::istream& in) {
    unsigned char buf[sizeof(T)];
    get_bytes(in, buf, sizeof(T));
    uint64_t v = 0;
    for (std::size_t i = sizeof(T); i-- > 0;) v = (v << 8) | buf[i];
    return static_cast<T>(v);
}

std::vector<uint64_t> get_words(std::istream& in) {
    const uint64_t count = get_le<uint64_t>(in);
    std::vector<uint64_t> words(count);
    for (uint64_t& w : words) w = get_le<uint64_t>(in);
    return words;
}

std::vector<uint16_t> get_u16_array(std::istream& in) {
    const uint64_t count = get_le<uint64_t>(in);
    std::vector<uint16_t> values(count);
    for (uint16_t& v : values) v = get_le<uint16_t>(in);
    for (std::size_t i = count * 2; i % 8 != 0; ++i) get_le<uint8_t>(in);
    return values;
}

}  // namespace

void save_mphf(const RecSplitMphf& mphf, std::ostream& out) {
    put_bytes(out, kMagic, sizeof(kMagic));
    put_le<uint32_t>(out, kFormatVersion);
    put_le<uint16_t>(out, static_cast<uint16_t>(mphf.leaf_size()));
    put_le<uint32_t>(out, mphf.bucket_size());
    put_le<uint64_t>(out, mphf.num_keys());
    put_le<uint64_t>(out, mphf.seed());
    put_le<uint32_t>(out, mphf.ef().beta());
    put_le<uint64_t>(out, mphf.num_buckets());

    const DoubleEliasFano::Layout& l = mphf.ef().layout();
    put_le<uint64_t>(out, l.num_entries);
    put_le<int64_t>(out, l.delta_cum);
    put_le<int64_t>(out, l.delta_off);
    put_le<uint8_t>(out, l.low_width_cum);
    put_le<uint8_t>(out, l.low_width_off);
    put_le<uint8_t>(out, l.inventory.dense ? 1 : 0);
    for (int i = 0; i < 5; ++i) put_le<uint8_t>(out, 0);
    put_words(out, l.low_words);
    put_words(out, l.upper_cum);
    put_words(out, l.upper_off);
    put_words(out, l.inventory.abs);
    put_u16_array(out, l.inventory.rel);

    put_le<uint64_t>(out, mphf.codes().size_bits());
    put_words(out, mphf.codes().payload());
}

RecSplitMphf load_mphf(std::istream& in) {
    char magic[8];
    get_bytes(in, magic, sizeof(magic));
    if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("not a recsplit file");
    const uint32_t version = get_le<uint32_t>(in);
    if (version != kFormatVersion)
        throw std::runtime_error("unsupported format version " + std::to_string(version));

    MphfParams params{};
    params.leaf_size = get_le<uint16_t>(in);
    params.bucket_size = get_le<uint32_t>(in);
    params.num_keys = get_le<uint64_t>(in);
    params.seed = get_le<uint64_t>(in);
    const uint32_t beta = get_le<uint32_t>(in);
    const uint64_t n_buckets = get_le<uint64_t>(in);

    DoubleEliasFano::Layout l;
    l.beta = beta;
    l.num_entries = get_le<uint64_t>(in);
    l.delta_cum = get_le<int64_t>(in);
    l.delta_off = get_le<int64_t>(in);
    l.low_width_cum = get_le<uint8_t>(in);
    l.low_width_off = get_le<uint8_t>(in);
    l.inventory.dense = get_le<uint8_t>(in) != 0;
    for (int i = 0; i < 5; ++i) get_le<uint8_t>(in);
    l.low_words = get_words(in);
    l.upper_cum = get_words(in);
    l.upper_off = get_words(in);
    l.inventory.abs = get_words(in);
    l.inventory.rel = get_u16_array(in);

    const uint64_t derived_buckets =
        params.num_keys == 0 ? 0 : (params.num_keys + params.bucket_size - 1) / params.bucket_size;
    if (n_buckets != derived_buckets || l.num_entries != n_buckets + 1)
        throw std::runtime_error("corrupt file: bucket count");

    const uint64_t bit_count = get_le<uint64_t>(in);
    std::vector<uint64_t> code_words = get_words(in);
    if (code_words.size() != (bit_count + 63) / 64)
        throw std::runtime_error("corrupt file: code section length");

    return RecSplitMphf(params, DoubleEliasFano::from_layout(std::move(l)),
                        RiceBitVector::from_payload(std::move(code_words), bit_count));
}

void save_mphf_file(const RecSplitMphf& mphf, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    save_mphf(mphf, out);
    if (!out) throw std::runtime_error("write error on " + path);
}

RecSplitMphf load_mphf_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return load_mphf(in);
}

}  // namespace recsplit
