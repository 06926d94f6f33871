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

#include "xprv/keystream.hpp"

#include <stdexcept>

namespace xprv {

Keystream::Keystream(CipherId cipher, const RoundKeySet& keys) : cipher_(cipher)
{
    switch (cipher) {
    case CipherId::None:
        break;
    case CipherId::Exper:
        pattern_ = keys.eff_key;
        break;
    case CipherId::Xor:
        pattern_ = keys.r_key1;
        break;
    case CipherId::Aes128Ctr: {
        const auto start = std::chrono::steady_clock::now();
        aes_.emplace(keys.r_key1);
        generation_time_ += std::chrono::steady_clock::now() - start;
        break;
    }
    }
}

std::uint8_t Keystream::byte_at(std::uint64_t position)
{
    switch (cipher_) {
    case CipherId::None:
        return 0;
    case CipherId::Exper:
    case CipherId::Xor:
        return pattern_[position & 15];
    case CipherId::Aes128Ctr: {
        const std::uint64_t index = position / 16;
        if (!cache_valid_ || cached_index_ != index) {
            const auto start = std::chrono::steady_clock::now();
            cached_block_ = aes_->encrypt_block(aes_ctr_counter_block(index));
            generation_time_ += std::chrono::steady_clock::now() - start;
            cached_index_ = index;
            cache_valid_ = true;
        }
        return cached_block_[position % 16];
    }
    }
    return 0;
}

int Keystream::next_bit()
{
    const int bit = cipher_ == CipherId::None ? 0 : (byte_at(byte_pos_) >> (7 - bit_pos_)) & 1;
    if (++bit_pos_ == 8) {
        bit_pos_ = 0;
        ++byte_pos_;
    }
    return bit;
}

std::uint32_t Keystream::next_bits(int n)
{
    if (n < 0 || n > 32)
        throw std::invalid_argument("next_bits: n must be in 0..32");
    std::uint32_t v = 0;
    while (n > 0) {
        const int avail = 8 - bit_pos_;
        const int take = n < avail ? n : avail;
        const std::uint32_t byte = cipher_ == CipherId::None ? 0u : byte_at(byte_pos_);
        v = (v << take) | ((byte >> (avail - take)) & ((1u << take) - 1u));
        n -= take;
        bit_pos_ += take;
        if (bit_pos_ == 8) {
            bit_pos_ = 0;
            ++byte_pos_;
        }
    }
    return v;
}

} // namespace xprv
