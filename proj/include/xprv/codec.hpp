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

#ifndef XPRV_CODEC_HPP
#define XPRV_CODEC_HPP

#include "xprv/frame.hpp"
#include "xprv/motion.hpp"
#include "xprv/transform.hpp"

#include <chrono>
#include <cstdint>
#include <span>
#include <vector>

namespace xprv {

inline constexpr int kMinDqp = -32;
inline constexpr int kMaxDqp = 31;
inline constexpr int kBlocksPerMacroblock = 6; // 4 luma, U, V

enum class MbType : int { Intra = 0, Inter = 1 };

enum class ElementKind : std::uint8_t {
    FrameStart, // value: 1 for an intra frame, 0 for a predicted one
    MbType,     // value: MbType
    Dqp,        // value: QP delta against the previous macroblock of the frame
    MvX,        // value: signed horizontal component
    MvY,        // value: signed vertical component
    Coeff,      // run: zeros skipped in scan order, value: nonzero signed level
    EndOfBlock,
};

struct SyntaxElement {
    ElementKind kind = ElementKind::EndOfBlock;
    int value = 0;
    int run = 0;

    static SyntaxElement frame_start(bool intra) { return {ElementKind::FrameStart, intra ? 1 : 0, 0}; }
    static SyntaxElement mb_type(MbType t) { return {ElementKind::MbType, static_cast<int>(t), 0}; }
    static SyntaxElement dqp(int delta) { return {ElementKind::Dqp, delta, 0}; }
    static SyntaxElement mv_x(int v) { return {ElementKind::MvX, v, 0}; }
    static SyntaxElement mv_y(int v) { return {ElementKind::MvY, v, 0}; }
    static SyntaxElement coeff(int run, int level) { return {ElementKind::Coeff, level, run}; }
    static SyntaxElement end_of_block() { return {ElementKind::EndOfBlock, 0, 0}; }

    bool operator==(const SyntaxElement&) const = default;
};

struct EncoderConfig {
    int qp = 24;
    int gop_length = 8;
    int search_range = kMaxSearchRange;

    void validate() const; // throws ConfigError
};

struct DecoderConfig {
    int width = 0;
    int height = 0;
    int qp = 24;
    // Strict decoding rejects an effective QP outside 0..63; permissive
    // decoding wraps it modulo 64.
    bool strict = false;
};

struct CodecTimes {
    std::chrono::nanoseconds transform{0};
    std::chrono::nanoseconds search{0};
};

struct EncodedSequence {
    int width = 0;
    int height = 0;
    std::vector<SyntaxElement> elements;
    std::vector<Frame> reconstruction; // encoder-side closed-loop output
    CodecTimes times;
};

// Activity rule: +2 when the 256-sample variance is below 100, -2 above
// 2000, otherwise 0; clamped so slice_qp + dqp stays in 0..63.
int choose_dqp(std::span<const std::uint8_t> mb_luma, int slice_qp);
double sample_variance(std::span<const std::uint8_t> samples);

// Frame 0 and every gop_length-th frame are intra coded against a flat 128
// prediction; the rest are inter predicted from the previous
// reconstruction. throws ConfigError on bad dimensions.
EncodedSequence encode_sequence(std::span<const Frame> frames, const EncoderConfig& config);

// throws DecodeError on truncated input, malformed element order or, in
// strict mode, an out-of-range effective QP.
std::vector<Frame> decode_sequence(std::span<const SyntaxElement> elements, const DecoderConfig& config);

} // namespace xprv

#endif
