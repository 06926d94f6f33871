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

#include "xprv/cipher.hpp"

#include "xprv/errors.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace xprv {

std::string_view cipher_name(CipherId id)
{
    switch (id) {
    case CipherId::None: return "none";
    case CipherId::Exper: return "exper";
    case CipherId::Xor: return "xor";
    case CipherId::Aes128Ctr: return "aes";
    }
    return "unknown";
}

CipherId parse_cipher_name(std::string_view name)
{
    if (name == "none") return CipherId::None;
    if (name == "exper") return CipherId::Exper;
    if (name == "xor") return CipherId::Xor;
    if (name == "aes") return CipherId::Aes128Ctr;
    throw ConfigError("unknown cipher '" + std::string(name) + "' (expected none|exper|xor|aes)");
}

void RotationOffsets::validate() const
{
    if (vi < 1 || vi > 8 || vj < 1 || vj > 8)
        throw std::invalid_argument("rotation offsets must be in 1..8");
}

std::uint8_t rotr_byte(std::uint8_t x, int n)
{
    if (n < 0 || n > 8)
        throw std::invalid_argument("rotation amount must be in 0..8");
    n &= 7;
    if (n == 0)
        return x;
    return static_cast<std::uint8_t>((x >> n) | (x << (8 - n)));
}

std::uint8_t rotl_byte(std::uint8_t x, int n)
{
    if (n < 0 || n > 8)
        throw std::invalid_argument("rotation amount must be in 0..8");
    return rotr_byte(x, (8 - n) & 7);
}

std::uint8_t exper_encrypt_byte(std::uint8_t p, std::uint8_t k1, std::uint8_t k2, std::uint8_t k3,
                                RotationOffsets offsets)
{
    offsets.validate();
    std::uint8_t s = p ^ k1;
    s = rotr_byte(s, offsets.vi);
    s ^= k2;
    s = rotr_byte(s, offsets.vj);
    return s ^ k3;
}

std::uint8_t exper_decrypt_byte(std::uint8_t c, std::uint8_t k1, std::uint8_t k2, std::uint8_t k3,
                                RotationOffsets offsets)
{
    offsets.validate();
    std::uint8_t s = c ^ k3;
    s = rotl_byte(s, offsets.vj);
    s ^= k2;
    s = rotl_byte(s, offsets.vi);
    return s ^ k1;
}

std::uint8_t effective_key_byte(std::uint8_t k1, std::uint8_t k2, std::uint8_t k3, RotationOffsets offsets)
{
    offsets.validate();
    return static_cast<std::uint8_t>(rotr_byte(rotr_byte(k1, offsets.vi) ^ k2, offsets.vj) ^ k3);
}

RoundKeySet make_round_keys(const Key128& k1, const Key128& k2, const Key128& k3, RotationOffsets offsets)
{
    offsets.validate();
    RoundKeySet keys{k1, k2, k3, {}, offsets};
    for (std::size_t i = 0; i < keys.eff_key.size(); ++i)
        keys.eff_key[i] = effective_key_byte(k1[i], k2[i], k3[i], offsets);
    return keys;
}

std::uint64_t SplitMix64::next()
{
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

RoundKeySet derive_round_keys(std::uint64_t seed, RotationOffsets offsets)
{
    SplitMix64 prf(seed);
    std::array<std::uint8_t, 48> bytes{};
    for (std::size_t word = 0; word < 6; ++word) {
        const std::uint64_t v = prf.next();
        for (std::size_t b = 0; b < 8; ++b)
            bytes[word * 8 + b] = static_cast<std::uint8_t>(v >> (8 * b));
    }
    Key128 k1, k2, k3;
    std::copy_n(bytes.begin(), 16, k1.begin());
    std::copy_n(bytes.begin() + 16, 16, k2.begin());
    std::copy_n(bytes.begin() + 32, 16, k3.begin());
    return make_round_keys(k1, k2, k3, offsets);
}

Key128 parse_key_hex(std::string_view hex)
{
    if (hex.size() != 32)
        throw ConfigError("round key must be 32 hex characters");
    Key128 key{};
    for (std::size_t i = 0; i < 16; ++i) {
        unsigned v = 0;
        const char* first = hex.data() + 2 * i;
        auto [ptr, ec] = std::from_chars(first, first + 2, v, 16);
        if (ec != std::errc{} || ptr != first + 2)
            throw ConfigError("round key contains non-hex characters");
        key[i] = static_cast<std::uint8_t>(v);
    }
    return key;
}

std::string key_to_hex(const Key128& key)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(32);
    for (std::uint8_t b : key) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 15]);
    }
    return out;
}

std::uint64_t parse_seed(std::string_view text)
{
    int base = 10;
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        text.remove_prefix(2);
        base = 16;
    }
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v, base);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw ConfigError("invalid seed '" + std::string(text) + "'");
    return v;
}

void exper_encrypt(std::span<const std::uint8_t> in, std::span<std::uint8_t> out,
                   const RoundKeySet& keys, std::uint64_t position)
{
    if (out.size() < in.size())
        throw std::invalid_argument("output buffer too small");
    keys.offsets.validate();
    const int vi = keys.offsets.vi & 7;
    const int vj = keys.offsets.vj & 7;
    auto rot = [](std::uint8_t x, int n) {
        return n == 0 ? x : static_cast<std::uint8_t>((x >> n) | (x << (8 - n)));
    };
    for (std::size_t i = 0; i < in.size(); ++i) {
        const std::size_t k = (position + i) & 15;
        std::uint8_t s = in[i] ^ keys.r_key1[k];
        s = rot(s, vi) ^ keys.r_key2[k];
        out[i] = rot(s, vj) ^ keys.r_key3[k];
    }
}

void exper_decrypt(std::span<const std::uint8_t> in, std::span<std::uint8_t> out,
                   const RoundKeySet& keys, std::uint64_t position)
{
    if (out.size() < in.size())
        throw std::invalid_argument("output buffer too small");
    for (std::size_t i = 0; i < in.size(); ++i) {
        const std::size_t k = (position + i) & 15;
        out[i] = exper_decrypt_byte(in[i], keys.r_key1[k], keys.r_key2[k], keys.r_key3[k], keys.offsets);
    }
}

void xor_encrypt(std::span<const std::uint8_t> in, std::span<std::uint8_t> out,
                 const Key128& key, std::uint64_t position)
{
    if (out.size() < in.size())
        throw std::invalid_argument("output buffer too small");
    for (std::size_t i = 0; i < in.size(); ++i)
        out[i] = xor_encrypt_byte(in[i], key[(position + i) & 15]);
}

} // namespace xprv
