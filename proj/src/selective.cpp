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

#include "xprv/selective.hpp"

#include "xprv/errors.hpp"

#include <stdexcept>
#include <string>

namespace xprv {

std::uint8_t SePolicy::se_flags() const
{
    if (cipher == CipherId::None)
        return 0;
    return static_cast<std::uint8_t>((encrypt_mv_signs ? kSeMvSigns : 0) | (encrypt_coeff_signs ? kSeCoeffSigns : 0) |
                                     (encrypt_dqp ? kSeDqp : 0));
}

void SePolicy::validate() const
{
    if (cipher == CipherId::Aes128Ctr && encrypt_dqp && !aes_range_unsafe)
        throw ConfigError("AES dQP encryption cannot preserve the 6-bit field; pass --aes-range-unsafe to attempt it");
}

SePolicy SePolicy::from_flags(std::uint8_t flags, CipherId cipher, bool aes_range_unsafe)
{
    SePolicy p;
    p.encrypt_mv_signs = flags & kSeMvSigns;
    p.encrypt_coeff_signs = flags & kSeCoeffSigns;
    p.encrypt_dqp = flags & kSeDqp;
    p.cipher = cipher;
    p.aes_range_unsafe = aes_range_unsafe;
    return p;
}

EncryptionRank parse_rank(std::string_view name)
{
    if (name == "without") return EncryptionRank::Without;
    if (name == "medium") return EncryptionRank::Medium;
    if (name == "high") return EncryptionRank::High;
    throw ConfigError("unknown rank '" + std::string(name) + "' (expected without|medium|high)");
}

SePolicy rank_to_policy(EncryptionRank rank, ElementAvailability available, CipherId cipher)
{
    SePolicy p;
    p.cipher = cipher;
    switch (rank) {
    case EncryptionRank::Without:
        break;
    case EncryptionRank::Medium:
        if (available.motion_vectors)
            p.encrypt_mv_signs = true;
        else if (available.coefficients)
            p.encrypt_coeff_signs = true;
        break;
    case EncryptionRank::High:
        if (available.motion_vectors && available.coefficients) {
            p.encrypt_mv_signs = true;
            p.encrypt_coeff_signs = true;
        }
        break;
    }
    return p;
}

int encrypt_sign_bit(int sign, Keystream& ks)
{
    return (sign & 1) ^ ks.next_bit();
}

unsigned encrypt_dqp_field(unsigned code, Keystream& ks, const SePolicy& policy, std::size_t macroblock)
{
    if (code > 63)
        throw std::invalid_argument("dqp code must be in 0..63");
    if (policy.cipher == CipherId::Aes128Ctr && policy.aes_range_unsafe) {
        const unsigned masked = code ^ ks.next_bits(8);
        if (masked > 63)
            throw FieldOverflow(macroblock, masked);
        return masked;
    }
    return code ^ ks.next_bits(6);
}

unsigned decrypt_dqp_field(unsigned field, Keystream& ks, const SePolicy& policy, std::size_t macroblock)
{
    if (field > 63)
        throw std::invalid_argument("dqp field must be in 0..63");
    if (policy.cipher == CipherId::Aes128Ctr && policy.aes_range_unsafe) {
        const unsigned plain = field ^ ks.next_bits(8);
        if (plain > 63)
            throw DecodeError("dQP at macroblock " + std::to_string(macroblock) + " decrypts out of range");
        return plain;
    }
    return field ^ ks.next_bits(6);
}

SeLayer::SeLayer(const SePolicy& policy, const RoundKeySet& keys) : policy_(policy)
{
    policy_.validate();
    flags_ = policy_.se_flags();
    if (flags_ != 0)
        keystream_ = Keystream(policy_.cipher, keys);
}

int SeLayer::mv_sign(int sign)
{
    if (!(flags_ & kSeMvSigns))
        return sign;
    return encrypt_sign_bit(sign, keystream_);
}

int SeLayer::coeff_sign(int sign)
{
    if (!(flags_ & kSeCoeffSigns))
        return sign;
    return encrypt_sign_bit(sign, keystream_);
}

unsigned SeLayer::dqp_encrypt(unsigned code, std::size_t macroblock)
{
    if (!(flags_ & kSeDqp))
        return code;
    return encrypt_dqp_field(code, keystream_, policy_, macroblock);
}

unsigned SeLayer::dqp_decrypt(unsigned field, std::size_t macroblock)
{
    if (!(flags_ & kSeDqp))
        return field;
    return decrypt_dqp_field(field, keystream_, policy_, macroblock);
}

SeLayer apply_policy(const SePolicy& policy, const RoundKeySet& keys)
{
    return SeLayer(policy, keys);
}

} // namespace xprv
