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

#include "xprv/container.hpp"

#include "xprv/bitstream.hpp"
#include "xprv/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace xprv {

namespace {

constexpr std::uint32_t kMaxLevelCode = 1u << 20;

void put_u16(std::uint8_t* p, std::uint16_t v)
{
    p[0] = static_cast<std::uint8_t>(v);
    p[1] = static_cast<std::uint8_t>(v >> 8);
}

void put_u32(std::uint8_t* p, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i)
        p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::uint16_t get_u16(const std::uint8_t* p)
{
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const std::uint8_t* p)
{
    return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) | (std::uint32_t(p[3]) << 24);
}

void bad_elements(const std::string& what)
{
    throw std::invalid_argument("element list does not match container grammar: " + what);
}

class ElementWalker {
public:
    explicit ElementWalker(std::span<const SyntaxElement> e) : e_(e) {}

    const SyntaxElement& next(ElementKind kind, const char* what)
    {
        if (pos_ >= e_.size() || e_[pos_].kind != kind)
            bad_elements(std::string("expected ") + what + " at element " + std::to_string(pos_));
        return e_[pos_++];
    }

    bool at(ElementKind kind) const { return pos_ < e_.size() && e_[pos_].kind == kind; }
    bool done() const { return pos_ >= e_.size(); }

private:
    std::span<const SyntaxElement> e_;
    std::size_t pos_ = 0;
};

void write_mv(BitWriter& w, SeLayer& se, int v)
{
    if (v < -kMaxSearchRange || v > kMaxSearchRange)
        bad_elements("motion vector component out of range");
    w.write_ue(static_cast<std::uint32_t>(std::abs(v)));
    if (v != 0)
        w.write_bit(se.mv_sign(v < 0 ? 1 : 0));
}

int read_mv(BitReader& r, SeLayer& se)
{
    const std::uint32_t mag = r.read_ue();
    if (mag > static_cast<std::uint32_t>(kMaxSearchRange))
        throw BitstreamError("motion vector magnitude out of range");
    if (mag == 0)
        return 0;
    const int sign = se.mv_sign(r.read_bit());
    return sign ? -static_cast<int>(mag) : static_cast<int>(mag);
}

} // namespace

std::array<std::uint8_t, kHeaderSize> ContainerHeader::encode() const
{
    std::array<std::uint8_t, kHeaderSize> out{};
    std::copy(kContainerMagic.begin(), kContainerMagic.end(), out.begin());
    out[4] = kContainerVersion;
    put_u16(&out[5], width);
    put_u16(&out[7], height);
    put_u32(&out[9], frame_count);
    out[13] = fps;
    out[14] = qp;
    out[15] = gop_length;
    out[16] = se_flags;
    out[17] = static_cast<std::uint8_t>(cipher);
    return out;
}

ContainerHeader ContainerHeader::decode(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < kHeaderSize)
        throw BitstreamError("truncated container header");
    if (!std::equal(kContainerMagic.begin(), kContainerMagic.end(), bytes.begin()))
        throw BitstreamError("bad magic: not an XPRV stream");
    if (bytes[4] != kContainerVersion)
        throw BitstreamError("unsupported container version " + std::to_string(bytes[4]));
    ContainerHeader h;
    h.width = get_u16(&bytes[5]);
    h.height = get_u16(&bytes[7]);
    h.frame_count = get_u32(&bytes[9]);
    h.fps = bytes[13];
    h.qp = bytes[14];
    h.gop_length = bytes[15];
    h.se_flags = bytes[16];
    if (h.se_flags & ~kSeFlagMask)
        throw BitstreamError("reserved se_flags bits set");
    if (bytes[17] > static_cast<std::uint8_t>(CipherId::Aes128Ctr))
        throw BitstreamError("unknown cipher id " + std::to_string(bytes[17]));
    h.cipher = static_cast<CipherId>(bytes[17]);
    if (h.width == 0 || h.height == 0 || h.width % 16 != 0 || h.height % 16 != 0)
        throw BitstreamError("frame dimensions must be positive multiples of 16");
    if (h.gop_length == 0)
        throw BitstreamError("gop length must be positive");
    if (h.qp > 63)
        throw BitstreamError("slice qp out of range");
    return h;
}

std::vector<std::uint8_t> serialize_elements(std::span<const SyntaxElement> elements, ContainerHeader header,
                                             SeLayer& se)
{
    header.se_flags = se.policy().se_flags();
    header.cipher = se.policy().cipher;
    if (header.width == 0 || header.height == 0 || header.width % 16 != 0 || header.height % 16 != 0)
        throw std::invalid_argument("header dimensions must be positive multiples of 16");
    if (header.gop_length == 0)
        throw std::invalid_argument("header gop length must be positive");

    BitWriter w;
    const auto head = header.encode();
    w.write_byte_aligned(head);

    const int mbs = header.macroblocks_per_frame();
    ElementWalker walk(elements);
    std::size_t mb_index = 0;

    for (std::uint32_t f = 0; f < header.frame_count; ++f) {
        const bool intra = f % header.gop_length == 0;
        if (walk.next(ElementKind::FrameStart, "frame start").value != (intra ? 1 : 0))
            bad_elements("frame type disagrees with gop structure");
        for (int m = 0; m < mbs; ++m, ++mb_index) {
            const int type = walk.next(ElementKind::MbType, "macroblock type").value;
            if (type != 0 && type != 1)
                bad_elements("invalid macroblock type");
            w.write_bit(type);

            const int dqp = walk.next(ElementKind::Dqp, "dqp").value;
            if (dqp < kMinDqp || dqp > kMaxDqp)
                bad_elements("dqp out of range");
            w.write_bits(se.dqp_encrypt(static_cast<unsigned>(dqp - kMinDqp), mb_index), 6);

            if (type == static_cast<int>(MbType::Inter)) {
                write_mv(w, se, walk.next(ElementKind::MvX, "mv x").value);
                write_mv(w, se, walk.next(ElementKind::MvY, "mv y").value);
            }

            for (int b = 0; b < kBlocksPerMacroblock; ++b) {
                int pos = -1;
                while (walk.at(ElementKind::Coeff)) {
                    const SyntaxElement& c = walk.next(ElementKind::Coeff, "coefficient");
                    pos += c.run + 1;
                    if (c.run < 0 || pos > 63 || c.value == 0)
                        bad_elements("invalid coefficient");
                    const std::uint32_t mag = static_cast<std::uint32_t>(std::abs(c.value));
                    if (mag - 1 > kMaxLevelCode)
                        bad_elements("coefficient level too large");
                    w.write_ue(static_cast<std::uint32_t>(c.run) + 1);
                    w.write_ue(mag - 1);
                    w.write_bit(se.coeff_sign(c.value < 0 ? 1 : 0));
                }
                walk.next(ElementKind::EndOfBlock, "end of block");
                w.write_ue(0);
            }
        }
    }
    if (!walk.done())
        bad_elements("more elements than header frame_count");
    return w.take();
}

ParsedStream parse_elements(std::span<const std::uint8_t> bytes, const ParseOptions& options)
{
    ParsedStream out;
    out.header = ContainerHeader::decode(bytes);
    const ContainerHeader& h = out.header;

    SeLayer se;
    if (options.keys)
        se = SeLayer(SePolicy::from_flags(h.se_flags, h.cipher, options.aes_range_unsafe), *options.keys);

    BitReader r(bytes.subspan(kHeaderSize));
    const int mbs = h.macroblocks_per_frame();
    std::size_t mb_index = 0;

    for (std::uint32_t f = 0; f < h.frame_count; ++f) {
        out.elements.push_back(SyntaxElement::frame_start(f % h.gop_length == 0));
        for (int m = 0; m < mbs; ++m, ++mb_index) {
            const int type = r.read_bit();
            out.elements.push_back(SyntaxElement::mb_type(static_cast<MbType>(type)));
            const unsigned code = se.dqp_decrypt(r.read_bits(6), mb_index);
            out.elements.push_back(SyntaxElement::dqp(static_cast<int>(code) + kMinDqp));
            if (type == static_cast<int>(MbType::Inter)) {
                const int dx = read_mv(r, se);
                const int dy = read_mv(r, se);
                out.elements.push_back(SyntaxElement::mv_x(dx));
                out.elements.push_back(SyntaxElement::mv_y(dy));
            }
            for (int b = 0; b < kBlocksPerMacroblock; ++b) {
                int pos = -1;
                for (;;) {
                    const std::uint32_t run_code = r.read_ue();
                    if (run_code == 0)
                        break;
                    pos += static_cast<int>(run_code);
                    if (run_code > 64 || pos > 63)
                        throw BitstreamError("coefficient run past end of block");
                    const std::uint32_t mag_code = r.read_ue();
                    if (mag_code > kMaxLevelCode)
                        throw BitstreamError("coefficient level too large");
                    const int sign = se.coeff_sign(r.read_bit());
                    const int mag = static_cast<int>(mag_code) + 1;
                    out.elements.push_back(SyntaxElement::coeff(static_cast<int>(run_code) - 1, sign ? -mag : mag));
                }
                out.elements.push_back(SyntaxElement::end_of_block());
            }
        }
    }

    if (r.bits_left() >= 8)
        throw BitstreamError("trailing data after last frame");
    while (!r.at_end())
        if (r.read_bit() != 0)
            throw BitstreamError("nonzero padding bits");
    return out;
}

} // namespace xprv
