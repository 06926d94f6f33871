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

#ifndef XPRV_CONTAINER_HPP
#define XPRV_CONTAINER_HPP

#include "xprv/cipher.hpp"
#include "xprv/codec.hpp"
#include "xprv/selective.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace xprv {

inline constexpr std::array<std::uint8_t, 4> kContainerMagic = {'X', 'P', 'R', 'V'};
inline constexpr std::uint8_t kContainerVersion = 1;
inline constexpr std::size_t kHeaderSize = 18;

// .xprv header, 18 bytes, multi-byte fields little endian:
//   0  magic "XPRV"      4  version (1)     5  width u16     7  height u16
//   9  frame_count u32  13  fps u8         14  qp u8        15  gop_length u8
//  16  se_flags u8      17  cipher_id u8
struct ContainerHeader {
    std::uint16_t width = 0;
    std::uint16_t height = 0;
    std::uint32_t frame_count = 0;
    std::uint8_t fps = 30;
    std::uint8_t qp = 24;
    std::uint8_t gop_length = 8;
    std::uint8_t se_flags = 0;
    CipherId cipher = CipherId::None;

    std::array<std::uint8_t, kHeaderSize> encode() const;
    // throws BitstreamError on bad magic, version, reserved flag bits or cipher id.
    static ContainerHeader decode(std::span<const std::uint8_t> bytes);

    int macroblocks_per_frame() const { return (width / 16) * (height / 16); }

    bool operator==(const ContainerHeader&) const = default;
};

// Payload grammar after the header, MSB first, zero padded to a byte:
//
//   frame      := macroblock{width/16 * height/16}     (type implied by gop)
//   macroblock := mb_type u(1)  dqp_code u(6)  [mv mv]  block{6}
//   mv         := ue(|v|)  [sign u(1) when v != 0]
//   block      := { ue(run + 1)  ue(|level| - 1)  sign u(1) }  ue(0)
//
// dqp_code is dqp + 32. Sign bits and dqp codes pass through `se`; the
// header's se_flags and cipher_id are taken from se.policy().
// throws std::invalid_argument when elements and header disagree,
// FieldOverflow from the SE layer.
std::vector<std::uint8_t> serialize_elements(std::span<const SyntaxElement> elements, ContainerHeader header,
                                             SeLayer& se);

struct ParseOptions {
    // Without keys the stream is read as-is: encrypted fields stay encrypted.
    std::optional<RoundKeySet> keys;
    bool aes_range_unsafe = false;
};

struct ParsedStream {
    ContainerHeader header;
    std::vector<SyntaxElement> elements;
};

ParsedStream parse_elements(std::span<const std::uint8_t> bytes, const ParseOptions& options = {});

} // namespace xprv

#endif
