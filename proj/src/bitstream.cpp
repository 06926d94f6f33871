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

#include "xprv/bitstream.hpp"

#include "xprv/errors.hpp"

#include <bit>
#include <stdexcept>

namespace xprv {

void BitWriter::write_bit(int bit)
{
    if (bit_pos_ == 0)
        bytes_.push_back(0);
    if (bit)
        bytes_.back() |= static_cast<std::uint8_t>(0x80 >> bit_pos_);
    bit_pos_ = (bit_pos_ + 1) & 7;
}

void BitWriter::write_bits(std::uint32_t value, int n)
{
    if (n < 0 || n > 32)
        throw std::invalid_argument("write_bits: width must be in 0..32");
    if (n < 32 && (value >> n) != 0)
        throw std::invalid_argument("write_bits: value does not fit in field");
    while (n > 0) {
        if (bit_pos_ == 0)
            bytes_.push_back(0);
        const int room = 8 - bit_pos_;
        const int take = n < room ? n : room;
        const std::uint32_t chunk = (value >> (n - take)) & ((1u << take) - 1u);
        bytes_.back() |= static_cast<std::uint8_t>(chunk << (room - take));
        n -= take;
        bit_pos_ = (bit_pos_ + take) & 7;
    }
}

void BitWriter::write_ue(std::uint32_t v)
{
    if (v == 0xFFFFFFFFu)
        throw std::invalid_argument("write_ue: value out of range");
    const std::uint32_t code = v + 1;
    const int len = std::bit_width(code);
    write_bits(0, len - 1);
    write_bits(code, len);
}

void BitWriter::write_se(std::int32_t v)
{
    write_ue(se_to_ue(v));
}

void BitWriter::write_byte_aligned(std::span<const std::uint8_t> bytes)
{
    if (bit_pos_ != 0)
        throw std::logic_error("write_byte_aligned: writer is not byte aligned");
    bytes_.insert(bytes_.end(), bytes.begin(), bytes.end());
}

int BitReader::read_bit()
{
    if (pos_ >= data_.size() * 8)
        throw BitstreamError("truncated stream");
    const int bit = (data_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1;
    ++pos_;
    return bit;
}

std::uint32_t BitReader::read_bits(int n)
{
    if (n < 0 || n > 32)
        throw std::invalid_argument("read_bits: width must be in 0..32");
    if (static_cast<std::size_t>(n) > bits_left())
        throw BitstreamError("truncated stream");
    std::uint32_t v = 0;
    for (int i = 0; i < n; ++i)
        v = (v << 1) | static_cast<std::uint32_t>(read_bit());
    return v;
}

std::uint32_t BitReader::read_ue()
{
    int zeros = 0;
    while (read_bit() == 0) {
        if (++zeros > 31)
            throw BitstreamError("malformed exp-Golomb prefix");
    }
    std::uint64_t code = 1;
    for (int i = 0; i < zeros; ++i)
        code = (code << 1) | static_cast<std::uint64_t>(read_bit());
    return static_cast<std::uint32_t>(code - 1);
}

std::int32_t BitReader::read_se()
{
    const std::uint32_t u = read_ue();
    if (u > 0xFFFFFFFEu)
        throw BitstreamError("signed exp-Golomb value out of range");
    return ue_to_se(u);
}

} // namespace xprv
