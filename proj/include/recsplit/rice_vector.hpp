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

#include <bit>
#include <cassert>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "recsplit/bits.hpp"

namespace recsplit {

//! One Golomb-Rice code: a search index and its parameter.
struct RiceCode {
    uint64_t value;
    uint8_t param;

    friend bool operator==(const RiceCode&, const RiceCode&) = default;
};

//! Bit array holding the Golomb-Rice codes of all buckets' splitting trees.
//!
//! Layout, fixed by the serialized format:
//!   - bits are LSB-first within little-endian 64-bit words;
//!   - buckets are bit-aligned back to back (offsets live in the Elias-Fano
//!     structure);
//!   - within a bucket, the fixed parts of all codes come first in preorder,
//!     then all unary parts in preorder;
//!   - a value v with parameter r contributes its low r bits to the fixed
//!     section and floor(v/2^r) zeros followed by a one to the unary section.
//!
//! Because the unary terminator is a one, skipping unary codes is a selection
//! over ones. The bit store is immutable after build; every in-flight read
//! carries its own Reader, so concurrent lookups never share mutable state.
class RiceBitVector {
  public:
    class Builder {
      public:
        //! Append one bucket: all fixed parts, then all unary parts.
        void append_bucket(std::span<const RiceCode> codes) {
            for (const RiceCode& c : codes) append_fixed(c.value, c.param);
            for (const RiceCode& c : codes) append_unary(c.value >> c.param);
        }

        uint64_t size_bits() const { return bit_count_; }

        RiceBitVector build() && {
            words_.resize(bits::words_for_bits(bit_count_) + 1);  // one pad word for readers
            words_.shrink_to_fit();
            return RiceBitVector(std::move(words_), bit_count_);
        }

      private:
        void append_fixed(uint64_t v, unsigned r) {
            reserve(bit_count_ + r);
            bits::set_bits(words_.data(), bit_count_, r, v & ((uint64_t(1) << r) - 1));
            bit_count_ += r;
        }

        void append_unary(uint64_t q) {
            reserve(bit_count_ + q + 1);
            bits::set_bit(words_.data(), bit_count_ + q);
            bit_count_ += q + 1;
        }

        void reserve(uint64_t bit_end) {
            const uint64_t need = bits::words_for_bits(bit_end) + 1;
            if (words_.size() < need) words_.resize(std::max<uint64_t>(need, words_.size() * 2));
        }

        std::vector<uint64_t> words_;
        uint64_t bit_count_ = 0;
    };

    //! Sequential decoder over one bucket. Keeps two cursors: a bit position
    //! in the fixed section and a word-buffered position in the unary section.
    class Reader {
      public:
        Reader(const uint64_t* words, uint64_t fixed_start, uint64_t fixed_section_bits)
            : words_(words), fixed_pos_(fixed_start) {
            const uint64_t unary_start = fixed_start + fixed_section_bits;
            unary_ptr_ = words_ + (unary_start >> 6);
            window_ = *unary_ptr_++ >> (unary_start & 63);
            window_bits_ = 64 - (unary_start & 63);
        }

        uint64_t read_next(unsigned r) {
            uint64_t q = 0;
            while (window_ == 0) {
                q += window_bits_;
                window_ = *unary_ptr_++;
                window_bits_ = 64;
            }
            const unsigned t = static_cast<unsigned>(std::countr_zero(window_));
            q += t;
            window_ = window_ >> t >> 1;
            window_bits_ -= t + 1;

            const uint64_t v = (q << r) | bits::get_bits(words_, fixed_pos_, r);
            fixed_pos_ += r;
            return v;
        }

        //! Jump over a whole encoded subtree: advance the fixed cursor by its
        //! known length and the unary cursor past its node count of codes.
        void skip_subtree(uint64_t fixed_bits, uint64_t node_count) {
            fixed_pos_ += fixed_bits;
            if (node_count == 0) return;
            uint64_t missing = node_count;
            uint64_t c;
            while ((c = static_cast<uint64_t>(std::popcount(window_))) < missing) {
                missing -= c;
                window_ = *unary_ptr_++;
                window_bits_ = 64;
            }
            const unsigned t = bits::select_in_word(window_, static_cast<unsigned>(missing - 1));
            window_ = window_ >> t >> 1;
            window_bits_ -= t + 1;
        }

      private:
        const uint64_t* words_;
        uint64_t fixed_pos_;
        const uint64_t* unary_ptr_;
        uint64_t window_;
        unsigned window_bits_;
    };

    RiceBitVector() : words_(1, 0) {}

    //! Reader positioned at a bucket whose region starts at `bucket_start`
    //! and whose fixed section is `fixed_section_bits` long (from the skip
    //! tables; the unary section starts right after it).
    Reader reader_at(uint64_t bucket_start, uint64_t fixed_section_bits) const {
        return Reader(words_.data(), bucket_start, fixed_section_bits);
    }

    uint64_t size_bits() const { return bit_count_; }

    //! Payload words, excluding the runtime pad word.
    std::span<const uint64_t> payload() const {
        return {words_.data(), bits::words_for_bits(bit_count_)};
    }

    static RiceBitVector from_payload(std::vector<uint64_t> words, uint64_t bit_count) {
        assert(words.size() == bits::words_for_bits(bit_count));
        words.resize(bits::words_for_bits(bit_count) + 1);
        return RiceBitVector(std::move(words), bit_count);
    }

  private:
    RiceBitVector(std::vector<uint64_t> words, uint64_t bit_count)
        : words_(std::move(words)), bit_count_(bit_count) {}

    std::vector<uint64_t> words_;
    uint64_t bit_count_ = 0;
};

}  // namespace recsplit
