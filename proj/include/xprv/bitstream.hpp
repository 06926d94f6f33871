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

#ifndef XPRV_BITSTREAM_HPP
#define XPRV_BITSTREAM_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace xprv {

// MSB-first bit writer. The last byte is zero padded.
class BitWriter {
public:
    void write_bit(int bit);
    // 0 <= n <= 32, value < 2^n. throws std::invalid_argument.
    void write_bits(std::uint32_t value, int n);
    // Exp-Golomb: bit_length(v+1)-1 zeros, then v+1 in binary.
    void write_ue(std::uint32_t v);
    // 0 -> 0, v > 0 -> 2v-1, v < 0 -> -2v.
    void write_se(std::int32_t v);

    void write_byte_aligned(std::span<const std::uint8_t> bytes);

    std::size_t bit_count() const { return bytes_.size() * 8 - ((8 - bit_pos_) & 7); }
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }
    std::vector<std::uint8_t> take() { return std::move(bytes_); }

private:
    std::vector<std::uint8_t> bytes_;
    int bit_pos_ = 0; // bits used in the last byte, 0 means byte-aligned
};

// MSB-first reader over a borrowed buffer. Reading past the end or a
// malformed exp-Golomb prefix throws BitstreamError.
class BitReader {
public:
    explicit BitReader(std::span<const std::uint8_t> data) : data_(data) {}

    int read_bit();
    std::uint32_t read_bits(int n);
    std::uint32_t read_ue();
    std::int32_t read_se();

    std::size_t position() const { return pos_; }
    std::size_t bits_left() const { return data_.size() * 8 - pos_; }
    bool at_end() const { return pos_ >= data_.size() * 8; }

private:
    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

constexpr std::uint32_t se_to_ue(std::int32_t v)
{
    return v <= 0 ? static_cast<std::uint32_t>(-static_cast<std::int64_t>(v)) * 2u
                  : static_cast<std::uint32_t>(v) * 2u - 1u;
}

constexpr std::int32_t ue_to_se(std::uint32_t u)
{
    return (u & 1u) ? static_cast<std::int32_t>((u + 1u) / 2u) : -static_cast<std::int32_t>(u / 2u);
}

} // namespace xprv

#endif
