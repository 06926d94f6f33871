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

#ifndef XPRV_CIPHER_HPP
#define XPRV_CIPHER_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace xprv {

using Key128 = std::array<std::uint8_t, 16>;

enum class CipherId : std::uint8_t { None = 0, Exper = 1, Xor = 2, Aes128Ctr = 3 };

std::string_view cipher_name(CipherId id);
CipherId parse_cipher_name(std::string_view name); // throws ConfigError

// Bit offsets of the two permutation stages. Rotations act within a byte,
// so each offset lives in 1..8; the defaults are 2 and 6.
struct RotationOffsets {
    int vi = 2;
    int vj = 6;

    void validate() const; // throws std::invalid_argument
    bool operator==(const RotationOffsets&) const = default;
};

// Cyclic right rotation inside 8 bits. n must be in 0..8.
std::uint8_t rotr_byte(std::uint8_t x, int n);
std::uint8_t rotl_byte(std::uint8_t x, int n);

// EXPer: XOR k1, rotate by vi, XOR k2, rotate by vj, XOR k3.
std::uint8_t exper_encrypt_byte(std::uint8_t p, std::uint8_t k1, std::uint8_t k2, std::uint8_t k3,
                                RotationOffsets offsets = {});
std::uint8_t exper_decrypt_byte(std::uint8_t c, std::uint8_t k1, std::uint8_t k2, std::uint8_t k3,
                                RotationOffsets offsets = {});

// Image of the zero byte under EXPer. When vi + vj == 8 the whole cipher
// collapses to p XOR effective_key_byte(k1, k2, k3).
std::uint8_t effective_key_byte(std::uint8_t k1, std::uint8_t k2, std::uint8_t k3,
                                RotationOffsets offsets = {});

constexpr std::uint8_t xor_encrypt_byte(std::uint8_t p, std::uint8_t key_byte) { return p ^ key_byte; }

struct RoundKeySet {
    Key128 r_key1{};
    Key128 r_key2{};
    Key128 r_key3{};
    Key128 eff_key{};
    RotationOffsets offsets{};

    bool operator==(const RoundKeySet&) const = default;
};

// Builds a key set from explicit round keys and fills eff_key.
RoundKeySet make_round_keys(const Key128& k1, const Key128& k2, const Key128& k3,
                            RotationOffsets offsets = {});

// SplitMix64 PRF: 48 bytes, little-endian per 64-bit output, split into
// r_key1 | r_key2 | r_key3.
RoundKeySet derive_round_keys(std::uint64_t seed, RotationOffsets offsets = {});

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();

private:
    std::uint64_t state_;
};

// 32 hex digits -> 16 bytes. throws ConfigError.
Key128 parse_key_hex(std::string_view hex);
std::string key_to_hex(const Key128& key);

// Accepts decimal or 0x-prefixed hex. throws ConfigError.
std::uint64_t parse_seed(std::string_view text);

// Whole-buffer forms used by the throughput benchmark. Byte i of the
// buffer uses round-key byte (position + i) mod 16.
void exper_encrypt(std::span<const std::uint8_t> in, std::span<std::uint8_t> out,
                   const RoundKeySet& keys, std::uint64_t position = 0);
void exper_decrypt(std::span<const std::uint8_t> in, std::span<std::uint8_t> out,
                   const RoundKeySet& keys, std::uint64_t position = 0);
void xor_encrypt(std::span<const std::uint8_t> in, std::span<std::uint8_t> out,
                 const Key128& key, std::uint64_t position = 0);

} // namespace xprv

#endif
