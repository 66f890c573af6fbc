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

#include <array>
#include <cstdint>

namespace recsplit {

//! Deterministic stream of random 16-byte records, used by the --random
//! build mode, the benchmarks and the tests. splitmix64 underneath, two
//! outputs per key, little-endian bytes; regenerating with the same seed
//! reproduces the exact key set.
class RandomKeyStream {
  public:
    explicit RandomKeyStream(uint64_t seed) : state_(seed) {}

    std::array<uint8_t, 16> next() {
        std::array<uint8_t, 16> key;
        write_le(key.data(), next_word());
        write_le(key.data() + 8, next_word());
        return key;
    }

  private:
    uint64_t next_word() {
        uint64_t x = (state_ += 0x9e3779b97f4a7c15ULL);
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    static void write_le(uint8_t* out, uint64_t v) {
        for (int i = 0; i < 8; ++i) out[i] = static_cast<uint8_t>((v >> (8 * i)) & 0xFF);
    }

    uint64_t state_;
};

}  // namespace recsplit
