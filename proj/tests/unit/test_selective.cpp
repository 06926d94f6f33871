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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "xprv/container.hpp"
#include "xprv/errors.hpp"
#include "xprv/io.hpp"
#include "xprv/pipeline.hpp"

#include <algorithm>
#include <random>

using namespace xprv;

namespace {

constexpr std::uint8_t kAll = kSeMvSigns | kSeCoeffSigns | kSeDqp;

RoundKeySet uniform_keys(std::uint8_t k1, std::uint8_t k2, std::uint8_t k3)
{
    Key128 a{}, b{}, c{};
    a.fill(k1);
    b.fill(k2);
    c.fill(k3);
    return make_round_keys(a, b, c);
}

const std::vector<Frame>& clip()
{
    static const std::vector<Frame> frames = synth_sequence(SynthKind::MovingBox, 64, 48, 6, 1);
    return frames;
}

const EncodedSequence& encoded_clip()
{
    static const EncodedSequence e = encode_sequence(clip(), {24, 4, 7});
    return e;
}

std::vector<std::uint8_t> serialize(std::uint8_t flags, CipherId cipher, const RoundKeySet& keys,
                                    bool unsafe = false)
{
    return serialize_sequence(encoded_clip(), {24, 4, 7}, 30, SePolicy::from_flags(flags, cipher, unsafe), keys);
}

// Walks the plain elements in bitstream order, drawing keystream bits from
// eff_key MSB first, and predicts what a keyless reader sees.
std::vector<SyntaxElement> predict_keyless(const std::vector<SyntaxElement>& plain, const Key128& pattern,
                                           std::uint8_t flags)
{
    std::uint64_t bit = 0;
    auto next = [&] {
        const int b = (pattern[(bit / 8) % 16] >> (7 - bit % 8)) & 1;
        ++bit;
        return b;
    };
    std::vector<SyntaxElement> out;
    for (SyntaxElement e : plain) {
        switch (e.kind) {
        case ElementKind::Dqp:
            if (flags & kSeDqp) {
                unsigned mask = 0;
                for (int i = 0; i < 6; ++i)
                    mask = (mask << 1) | static_cast<unsigned>(next());
                e.value = static_cast<int>((static_cast<unsigned>(e.value + 32) ^ mask)) - 32;
            }
            break;
        case ElementKind::MvX:
        case ElementKind::MvY:
            if ((flags & kSeMvSigns) && e.value != 0 && next())
                e.value = -e.value;
            break;
        case ElementKind::Coeff:
            if ((flags & kSeCoeffSigns) && next())
                e.value = -e.value;
            break;
        default:
            break;
        }
        out.push_back(e);
    }
    return out;
}

} // namespace

TEST_CASE("header layout")
{
    ContainerHeader h;
    h.width = 352;
    h.height = 288;
    h.frame_count = 300;
    h.se_flags = kAll;
    h.cipher = CipherId::Exper;
    const auto bytes = h.encode();
    CHECK(bytes.size() == 18);
    CHECK(bytes[0] == 'X');
    CHECK(bytes[4] == 1);
    CHECK(bytes[5] == 0x60);
    CHECK(bytes[6] == 0x01);
    CHECK(bytes[9] == 0x2C);
    CHECK(bytes[10] == 0x01);
    CHECK(bytes[16] == kAll);
    CHECK(bytes[17] == 1);
    CHECK(ContainerHeader::decode(bytes) == h);

    auto bad = bytes;
    bad[0] = 'Y';
    CHECK_THROWS_AS(ContainerHeader::decode(bad), BitstreamError);
    bad = bytes;
    bad[16] = 0x08;
    CHECK_THROWS_AS(ContainerHeader::decode(bad), BitstreamError);
    bad = bytes;
    bad[17] = 9;
    CHECK_THROWS_AS(ContainerHeader::decode(bad), BitstreamError);
    CHECK_THROWS_AS(ContainerHeader::decode(std::span(bytes).first(10)), BitstreamError);
}

TEST_CASE("stream with no frames is just the header")
{
    ContainerHeader h;
    h.width = 32;
    h.height = 32;
    SeLayer se;
    const auto bytes = serialize_elements({}, h, se);
    CHECK(bytes.size() == kHeaderSize);
    const ParsedStream p = parse_elements(bytes);
    CHECK(p.elements.empty());
    CHECK(p.header == h);
}

TEST_CASE("plain round trip through the container")
{
    const auto bytes = serialize(0, CipherId::None, {});
    const ParsedStream p = parse_elements(bytes);
    CHECK(p.elements == encoded_clip().elements);
    CHECK(p.header.frame_count == 6);
}

TEST_CASE("encryption preserves length and parses without keys")
{
    const auto plain = serialize(0, CipherId::None, {});
    const RoundKeySet keys = derive_round_keys(7);
    for (CipherId c : {CipherId::Exper, CipherId::Xor, CipherId::Aes128Ctr})
        for (std::uint8_t flags : {kSeMvSigns, kSeCoeffSigns, std::uint8_t(kSeMvSigns | kSeCoeffSigns)}) {
            const auto enc = serialize(flags, c, keys);
            CHECK(enc.size() == plain.size());
            CHECK_NOTHROW(parse_elements(enc));
            const ParsedStream keyed = parse_elements(enc, {keys, false});
            CHECK(keyed.elements == encoded_clip().elements);
        }
    for (CipherId c : {CipherId::Exper, CipherId::Xor}) {
        const auto enc = serialize(kAll, c, keys);
        CHECK(enc.size() == plain.size());
        CHECK(parse_elements(enc, {keys, false}).elements == encoded_clip().elements);
    }
}

TEST_CASE("keyless view matches an independent keystream walk")
{
    const RoundKeySet keys = derive_round_keys(7);
    for (std::uint8_t flags : {kSeMvSigns, kSeCoeffSigns, kSeDqp, kAll}) {
        const auto enc = serialize(flags, CipherId::Exper, keys);
        CHECK(parse_elements(enc).elements == predict_keyless(encoded_clip().elements, keys.eff_key, flags));
        const auto xenc = serialize(flags, CipherId::Xor, keys);
        CHECK(parse_elements(xenc).elements == predict_keyless(encoded_clip().elements, keys.r_key1, flags));
    }
}

TEST_CASE("identity keystreams leave the payload untouched")
{
    const auto plain = serialize(0, CipherId::None, {});
    const auto zero = serialize(kAll, CipherId::Exper, uniform_keys(0, 0, 0));
    const auto off = serialize(0, CipherId::Exper, derive_round_keys(7));
    REQUIRE(zero.size() == plain.size());
    CHECK(std::equal(zero.begin() + kHeaderSize, zero.end(), plain.begin() + kHeaderSize));
    CHECK(std::equal(off.begin() + kHeaderSize, off.end(), plain.begin() + kHeaderSize));
    CHECK(serialize(kAll, CipherId::None, derive_round_keys(7)) == plain);
}

TEST_CASE("dqp field encryption")
{
    // eff_key 0x54 -> first six keystream bits 010101.
    const RoundKeySet keys = uniform_keys(0x54, 0, 0);
    REQUIRE(keys.eff_key[0] == 0x54);
    SePolicy exper;
    exper.cipher = CipherId::Exper;
    exper.encrypt_dqp = true;
    Keystream ks(CipherId::Exper, keys);
    CHECK(encrypt_dqp_field(32, ks, exper) == 53);
    Keystream ks2(CipherId::Exper, keys);
    CHECK(decrypt_dqp_field(53, ks2, exper) == 32);

    // Seed 0 AES keystream starts with 0x5A; 32 ^ 0x5A = 122.
    SePolicy aes;
    aes.cipher = CipherId::Aes128Ctr;
    aes.encrypt_dqp = true;
    aes.aes_range_unsafe = true;
    Keystream aks(CipherId::Aes128Ctr, derive_round_keys(0));
    try {
        encrypt_dqp_field(32, aks, aes, 17);
        FAIL("expected FieldOverflow");
    } catch (const FieldOverflow& e) {
        CHECK(e.macroblock() == 17);
        CHECK(e.value() == 122);
    }
    aes.aes_range_unsafe = false;
    CHECK_THROWS_AS(aes.validate(), ConfigError);
    CHECK_THROWS_AS(SeLayer(aes, derive_round_keys(0)), ConfigError);
}

TEST_CASE("aes dqp in unsafe mode overflows during serialization")
{
    CHECK_THROWS_AS(serialize(kAll, CipherId::Aes128Ctr, derive_round_keys(0), true), FieldOverflow);
}

TEST_CASE("ranks")
{
    const ElementAvailability both{true, true}, intra_only{false, true}, none{false, false};
    const SePolicy med = rank_to_policy(EncryptionRank::Medium, both);
    CHECK(med.encrypt_mv_signs);
    CHECK_FALSE(med.encrypt_coeff_signs);
    const SePolicy med_intra = rank_to_policy(EncryptionRank::Medium, intra_only);
    CHECK_FALSE(med_intra.encrypt_mv_signs);
    CHECK(med_intra.encrypt_coeff_signs);
    const SePolicy high = rank_to_policy(EncryptionRank::High, both);
    CHECK(high.encrypt_mv_signs);
    CHECK(high.encrypt_coeff_signs);
    CHECK(rank_to_policy(EncryptionRank::High, intra_only).se_flags() == 0);
    CHECK(rank_to_policy(EncryptionRank::Medium, none).se_flags() == 0);
    CHECK(rank_to_policy(EncryptionRank::Without, both).se_flags() == 0);
    for (auto r : {EncryptionRank::Without, EncryptionRank::Medium, EncryptionRank::High})
        CHECK_FALSE(rank_to_policy(r, both).encrypt_dqp);
    CHECK(parse_rank("high") == EncryptionRank::High);
    CHECK_THROWS_AS(parse_rank("max"), ConfigError);
    CHECK(availability_for(1, 8).motion_vectors == false);
    CHECK(availability_for(9, 8).motion_vectors == true);
}

TEST_CASE("only the selected element class changes")
{
    const auto& plain = encoded_clip().elements;
    const RoundKeySet keys = derive_round_keys(3);
    auto differs = [&](std::uint8_t flags, ElementKind kind) {
        const auto got = parse_elements(serialize(flags, CipherId::Exper, keys)).elements;
        REQUIRE(got.size() == plain.size());
        bool changed = false;
        for (std::size_t i = 0; i < got.size(); ++i) {
            if (got[i].kind != kind)
                REQUIRE(got[i] == plain[i]);
            else if (!(got[i] == plain[i]))
                changed = true;
        }
        return changed;
    };
    CHECK(differs(kSeCoeffSigns, ElementKind::Coeff));
    CHECK(differs(kSeDqp, ElementKind::Dqp));
    // MV sign flips touch both components.
    const auto got = parse_elements(serialize(kSeMvSigns, CipherId::Exper, keys)).elements;
    bool changed = false;
    for (std::size_t i = 0; i < got.size(); ++i) {
        if (got[i].kind == ElementKind::MvX || got[i].kind == ElementKind::MvY) {
            CHECK(std::abs(got[i].value) == std::abs(plain[i].value));
            changed = changed || !(got[i] == plain[i]);
        } else {
            CHECK(got[i] == plain[i]);
        }
    }
    CHECK(changed);
}

TEST_CASE("malformed payloads")
{
    auto bytes = serialize(0, CipherId::None, {});
    auto trailing = bytes;
    trailing.push_back(0x00);
    CHECK_THROWS_AS(parse_elements(trailing), BitstreamError);
    auto truncated = bytes;
    truncated.resize(truncated.size() - 4);
    CHECK_THROWS_AS(parse_elements(truncated), BitstreamError);

    SeLayer se;
    ContainerHeader h;
    h.width = 64;
    h.height = 48;
    h.frame_count = 2; // disagrees with the elements
    h.gop_length = 4;
    CHECK_THROWS_AS(serialize_elements(encoded_clip().elements, h, se), std::invalid_argument);
}
