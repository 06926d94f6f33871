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

#ifndef XPRV_SELECTIVE_HPP
#define XPRV_SELECTIVE_HPP

#include "xprv/cipher.hpp"
#include "xprv/keystream.hpp"

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace xprv {

// se_flags byte of the container header.
inline constexpr std::uint8_t kSeMvSigns = 0x01;
inline constexpr std::uint8_t kSeCoeffSigns = 0x02;
inline constexpr std::uint8_t kSeDqp = 0x04;
inline constexpr std::uint8_t kSeFlagMask = 0x07;

struct SePolicy {
    bool encrypt_mv_signs = false;
    bool encrypt_coeff_signs = false;
    bool encrypt_dqp = false;
    CipherId cipher = CipherId::None;
    // AES only: mask the dQP code with a whole keystream byte instead of six
    // bits. Any result above 63 is a FieldOverflow.
    bool aes_range_unsafe = false;

    // Flags as they take effect: cipher None clears all of them.
    std::uint8_t se_flags() const;
    bool any() const { return se_flags() != 0; }

    // AES dQP encryption without aes_range_unsafe is rejected.
    void validate() const; // throws ConfigError

    static SePolicy from_flags(std::uint8_t flags, CipherId cipher, bool aes_range_unsafe = false);

    bool operator==(const SePolicy&) const = default;
};

enum class EncryptionRank { Without, Medium, High };

EncryptionRank parse_rank(std::string_view name); // throws ConfigError

struct ElementAvailability {
    bool motion_vectors = true;
    bool coefficients = true;
};

// Without: nothing. Medium: MV signs if MVs are present, else coefficient
// signs. High: MV and coefficient signs when both classes are present.
// dQP is never set here.
SePolicy rank_to_policy(EncryptionRank rank, ElementAvailability available, CipherId cipher = CipherId::Exper);

int encrypt_sign_bit(int sign, Keystream& ks);

// code is dqp + 32 in 0..63. Ciphers other than unsafe AES XOR it with six
// keystream bits. throws FieldOverflow (unsafe AES only).
unsigned encrypt_dqp_field(unsigned code, Keystream& ks, const SePolicy& policy, std::size_t macroblock = 0);
// throws DecodeError when an unsafe-AES field decrypts out of range.
unsigned decrypt_dqp_field(unsigned field, Keystream& ks, const SePolicy& policy, std::size_t macroblock = 0);

// Transformer installed into the serializer / parser. Keystream bits are
// drawn only for enabled element classes, in bitstream order.
class SeLayer {
public:
    SeLayer() = default;
    SeLayer(const SePolicy& policy, const RoundKeySet& keys);

    int mv_sign(int sign);
    int coeff_sign(int sign);
    unsigned dqp_encrypt(unsigned code, std::size_t macroblock);
    unsigned dqp_decrypt(unsigned field, std::size_t macroblock);

    const SePolicy& policy() const { return policy_; }
    const Keystream& keystream() const { return keystream_; }

private:
    SePolicy policy_{};
    std::uint8_t flags_ = 0;
    Keystream keystream_{};
};

SeLayer apply_policy(const SePolicy& policy, const RoundKeySet& keys);

} // namespace xprv

#endif
