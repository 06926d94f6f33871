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

#ifndef XPRV_AES_HPP
#define XPRV_AES_HPP

#include "xprv/cipher.hpp"

#include <array>
#include <cstdint>
#include <span>

namespace xprv {

using Block128 = std::array<std::uint8_t, 16>;

// Portable AES-128 forward cipher. Byte-oriented S-box and xtime
// MixColumns; no lookup T-tables and no AES-NI, so benchmark numbers
// reflect a plain software implementation.
class Aes128 {
public:
    explicit Aes128(const Key128& key);

    Block128 encrypt_block(const Block128& in) const;

private:
    std::array<std::uint8_t, 176> round_keys_{};
};

Block128 aes128_encrypt_block(const Block128& block, const Key128& key);

// Counter block for index n: bytes 0..7 are a zero nonce, bytes 8..15 hold
// n as a little-endian 64-bit integer.
Block128 aes_ctr_counter_block(std::uint64_t index);

// CTR mode keystream / encryption. Keystream byte p comes from block p / 16.
class Aes128Ctr {
public:
    explicit Aes128Ctr(const Key128& key) : aes_(key) {}

    Block128 keystream_block(std::uint64_t index) const { return aes_.encrypt_block(aes_ctr_counter_block(index)); }

    void apply(std::span<const std::uint8_t> in, std::span<std::uint8_t> out, std::uint64_t position = 0) const;

private:
    Aes128 aes_;
};

} // namespace xprv

#endif
