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

#include <iosfwd>
#include <string>

#include "recsplit/mphf.hpp"

namespace recsplit {

//! Serialized file layout (everything little-endian, bit arrays LSB-first in
//! 64-bit words):
//!
//!   header (46 bytes):
//!     magic "RECSPLIT" | u32 version | u16 leaf_size | u32 bucket_size
//!     | u64 n | u64 seed | u32 beta (tree bits/key, 16.16 fixed point)
//!     | u64 n_buckets
//!   prefix-sums/offsets section:
//!     u64 num_entries | i64 delta_cum | i64 delta_off
//!     | u8 low_width_cum | u8 low_width_off | u8 dense_inventory | 5 zero bytes
//!     | u64 count + words of: interleaved low bits, upper bits (cum),
//!       upper bits (off), interleaved 64-bit inventory
//!     | u64 count + 16-bit inventory entries, zero-padded to 8 bytes
//!   code section:
//!     u64 bit_count | u64 count + words
//!
//! The same inputs and flags produce byte-identical files on any platform:
//! the format pins the hash function, the per-depth search index derivation,
//! the unary code polarity (q zeros then a one) and the bit order.
inline constexpr char kMagic[8] = {'R', 'E', 'C', 'S', 'P', 'L', 'I', 'T'};
inline constexpr uint32_t kFormatVersion = 1;
inline constexpr std::size_t kHeaderBytes = 46;

void save_mphf(const RecSplitMphf& mphf, std::ostream& out);
RecSplitMphf load_mphf(std::istream& in);

void save_mphf_file(const RecSplitMphf& mphf, const std::string& path);
RecSplitMphf load_mphf_file(const std::string& path);

}  // namespace recsplit
