/*
Copyright 2026 The xprv Authors
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

#ifndef XPRV_KEYSTREAM_HPP
#define XPRV_KEYSTREAM_HPP

#include "xprv/aes.hpp"
#include "xprv/cipher.hpp"

#include <chrono>
#include <cstdint>
#include <optional>

namespace xprv {

// Bit-granular keystream cursor. Bits leave each keystream byte MSB first.
//
//   None      -> all zero
//   Exper     -> eff_key[p mod 16]
//   Xor       -> r_key1[p mod 16]
//   Aes128Ctr -> byte p of AES-128-CTR under r_key1 (zero nonce)
//
// Single owner; copy it to fork an independent cursor at the same position.
class Keystream {
public:
    Keystream() = default;
    Keystream(CipherId cipher, const RoundKeySet& keys);

    CipherId cipher() const { return cipher_; }

    int next_bit();
    // Up to 32 bits, first-consumed bit ends up most significant.
    std::uint32_t next_bits(int n);

    // Keystream byte at an absolute position; does not move the cursor.
    std::uint8_t byte_at(std::uint64_t position);

    std::uint64_t byte_position() const { return byte_pos_; }
    int bit_position() const { return bit_pos_; }
    std::uint64_t bits_consumed() const { return byte_pos_ * 8 + static_cast<std::uint64_t>(bit_pos_); }

    // Time spent producing keystream material (AES block refills).
    std::chrono::nanoseconds generation_time() const { return generation_time_; }

private:
    CipherId cipher_ = CipherId::None;
    Key128 pattern_{};
    std::optional<Aes128> aes_;
    std::uint64_t cached_index_ = 0;
    Block128 cached_block_{};
    bool cache_valid_ = false;

    std::uint64_t byte_pos_ = 0;
    int bit_pos_ = 0;
    std::chrono::nanoseconds generation_time_{0};
};

} // namespace xprv

#endif
