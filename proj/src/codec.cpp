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

#include "xprv/codec.hpp"

#include "xprv/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace xprv {

namespace {

using Clock = std::chrono::steady_clock;

struct BlockPos {
    int plane; // 0 Y, 1 U, 2 V
    int x;
    int y;
};

BlockPos block_position(int block, int mb_x, int mb_y)
{
    if (block < 4)
        return {0, mb_x + 8 * (block % 2), mb_y + 8 * (block / 2)};
    return {block - 3, mb_x / 2, mb_y / 2};
}

const Plane& plane_of(const Frame& f, int plane)
{
    return plane == 0 ? f.y : (plane == 1 ? f.u : f.v);
}

Plane& plane_of(Frame& f, int plane)
{
    return plane == 0 ? f.y : (plane == 1 ? f.u : f.v);
}

// Chroma uses the luma vector halved toward zero.
MotionVector plane_mv(MotionVector mv, int plane)
{
    if (plane == 0)
        return mv;
    return {mv.dx / 2, mv.dy / 2};
}

Block8x8 predict_block(const Frame* reference, const BlockPos& pos, MotionVector mv)
{
    Block8x8 pred;
    if (reference == nullptr) {
        pred.fill(128.0);
        return pred;
    }
    const Plane& ref = plane_of(*reference, pos.plane);
    const MotionVector v = plane_mv(mv, pos.plane);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
            pred[r * 8 + c] = ref.clamped(pos.x + c + v.dx, pos.y + r + v.dy);
    return pred;
}

void reconstruct_block(Plane& dst, const BlockPos& pos, const Block8x8& pred, const QuantizedBlock& q)
{
    const Block8x8 residual = idct8x8(dequantize(q));
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) {
            const double s = std::round(pred[r * 8 + c] + residual[r * 8 + c]);
            dst.at(pos.x + c, pos.y + r) = static_cast<std::uint8_t>(std::clamp(s, 0.0, 255.0));
        }
}

void check_dimensions(int width, int height)
{
    if (width <= 0 || height <= 0 || width % kMacroblockSize != 0 || height % kMacroblockSize != 0)
        throw ConfigError("frame dimensions must be positive multiples of 16 (got " + std::to_string(width) +
                          "x" + std::to_string(height) + ")");
}

} // namespace

void EncoderConfig::validate() const
{
    if (qp < kMinQp || qp > kMaxQp)
        throw ConfigError("qp must be in 0..63");
    if (gop_length < 1 || gop_length > 255)
        throw ConfigError("gop length must be in 1..255");
    if (search_range < 0 || search_range > kMaxSearchRange)
        throw ConfigError("search range must be in 0..7");
}

double sample_variance(std::span<const std::uint8_t> samples)
{
    if (samples.empty())
        return 0.0;
    double sum = 0, sum_sq = 0;
    for (std::uint8_t s : samples) {
        sum += s;
        sum_sq += double(s) * s;
    }
    const double n = static_cast<double>(samples.size());
    const double mean = sum / n;
    return std::max(0.0, sum_sq / n - mean * mean);
}

int choose_dqp(std::span<const std::uint8_t> mb_luma, int slice_qp)
{
    if (mb_luma.size() != kMacroblockSize * kMacroblockSize)
        throw std::invalid_argument("choose_dqp expects 256 luma samples");
    const double var = sample_variance(mb_luma);
    int dqp = 0;
    if (var < 100.0)
        dqp = 2;
    else if (var > 2000.0)
        dqp = -2;
    return std::clamp(slice_qp + dqp, kMinQp, kMaxQp) - slice_qp;
}

EncodedSequence encode_sequence(std::span<const Frame> frames, const EncoderConfig& config)
{
    config.validate();
    if (frames.empty())
        throw ConfigError("encode_sequence needs at least one frame");
    const int width = frames.front().width();
    const int height = frames.front().height();
    check_dimensions(width, height);

    EncodedSequence out;
    out.width = width;
    out.height = height;
    out.reconstruction.reserve(frames.size());

    std::array<std::uint8_t, kMacroblockSize * kMacroblockSize> mb_luma{};

    for (std::size_t index = 0; index < frames.size(); ++index) {
        const Frame& src = frames[index];
        if (src.width() != width || src.height() != height)
            throw ConfigError("all frames must share the same dimensions");
        const bool intra = index % static_cast<std::size_t>(config.gop_length) == 0;
        const Frame* reference = intra ? nullptr : &out.reconstruction.back();
        Frame recon(width, height);

        out.elements.push_back(SyntaxElement::frame_start(intra));
        int prev_qp = config.qp;

        for (int mb_y = 0; mb_y < height; mb_y += kMacroblockSize) {
            for (int mb_x = 0; mb_x < width; mb_x += kMacroblockSize) {
                for (int r = 0; r < kMacroblockSize; ++r)
                    for (int c = 0; c < kMacroblockSize; ++c)
                        mb_luma[r * kMacroblockSize + c] = src.y.at(mb_x + c, mb_y + r);
                const int mb_qp = config.qp + choose_dqp(mb_luma, config.qp);

                MotionVector mv{};
                if (!intra) {
                    const auto t0 = Clock::now();
                    mv = motion_search(src.y, reference->y, mb_x, mb_y, config.search_range);
                    out.times.search += Clock::now() - t0;
                }

                out.elements.push_back(SyntaxElement::mb_type(intra ? MbType::Intra : MbType::Inter));
                out.elements.push_back(SyntaxElement::dqp(mb_qp - prev_qp));
                prev_qp = mb_qp;
                if (!intra) {
                    out.elements.push_back(SyntaxElement::mv_x(mv.dx));
                    out.elements.push_back(SyntaxElement::mv_y(mv.dy));
                }

                const auto t0 = Clock::now();
                for (int b = 0; b < kBlocksPerMacroblock; ++b) {
                    const BlockPos pos = block_position(b, mb_x, mb_y);
                    const Block8x8 pred = predict_block(reference, pos, mv);
                    const Plane& sp = plane_of(src, pos.plane);
                    Block8x8 residual;
                    for (int r = 0; r < 8; ++r)
                        for (int c = 0; c < 8; ++c)
                            residual[r * 8 + c] = sp.at(pos.x + c, pos.y + r) - pred[r * 8 + c];
                    const QuantizedBlock q = quantize(dct8x8(residual), mb_qp);

                    int run = 0;
                    for (int k = 0; k < 64; ++k) {
                        if (q.levels[k] == 0) {
                            ++run;
                            continue;
                        }
                        out.elements.push_back(SyntaxElement::coeff(run, q.levels[k]));
                        run = 0;
                    }
                    out.elements.push_back(SyntaxElement::end_of_block());

                    reconstruct_block(plane_of(recon, pos.plane), pos, pred, q);
                }
                out.times.transform += Clock::now() - t0;
            }
        }
        out.reconstruction.push_back(std::move(recon));
    }
    return out;
}

namespace {

class ElementCursor {
public:
    explicit ElementCursor(std::span<const SyntaxElement> elements) : elements_(elements) {}

    bool done() const { return pos_ >= elements_.size(); }

    const SyntaxElement& peek() const
    {
        if (done())
            throw DecodeError("truncated element list");
        return elements_[pos_];
    }

    const SyntaxElement& expect(ElementKind kind, const char* what)
    {
        const SyntaxElement& e = peek();
        if (e.kind != kind)
            throw DecodeError(std::string("malformed element order: expected ") + what + " at element " +
                              std::to_string(pos_));
        ++pos_;
        return e;
    }

    void advance() { ++pos_; }
    std::size_t position() const { return pos_; }

private:
    std::span<const SyntaxElement> elements_;
    std::size_t pos_ = 0;
};

} // namespace

std::vector<Frame> decode_sequence(std::span<const SyntaxElement> elements, const DecoderConfig& config)
{
    check_dimensions(config.width, config.height);
    if (config.qp < kMinQp || config.qp > kMaxQp)
        throw ConfigError("qp must be in 0..63");
    if (elements.empty())
        throw DecodeError("truncated stream: no elements");

    std::vector<Frame> frames;
    ElementCursor cur(elements);

    while (!cur.done()) {
        const bool intra = cur.expect(ElementKind::FrameStart, "frame start").value != 0;
        if (!intra && frames.empty())
            throw DecodeError("first frame must be intra coded");
        const Frame* reference = intra ? nullptr : &frames.back();
        Frame recon(config.width, config.height);
        int qp = config.qp;

        for (int mb_y = 0; mb_y < config.height; mb_y += kMacroblockSize) {
            for (int mb_x = 0; mb_x < config.width; mb_x += kMacroblockSize) {
                const int type = cur.expect(ElementKind::MbType, "macroblock type").value;
                if (type != static_cast<int>(MbType::Intra) && type != static_cast<int>(MbType::Inter))
                    throw DecodeError("invalid macroblock type");
                const bool inter = type == static_cast<int>(MbType::Inter);
                if (inter && intra)
                    throw DecodeError("inter macroblock inside an intra frame");

                qp += cur.expect(ElementKind::Dqp, "dqp").value;
                if (qp < kMinQp || qp > kMaxQp) {
                    if (config.strict)
                        throw DecodeError("effective QP " + std::to_string(qp) + " out of range 0..63");
                    qp = ((qp % 64) + 64) % 64;
                }

                MotionVector mv{};
                if (inter) {
                    mv.dx = cur.expect(ElementKind::MvX, "mv x").value;
                    mv.dy = cur.expect(ElementKind::MvY, "mv y").value;
                }

                for (int b = 0; b < kBlocksPerMacroblock; ++b) {
                    QuantizedBlock q;
                    q.qp = qp;
                    int pos = -1;
                    while (cur.peek().kind == ElementKind::Coeff) {
                        const SyntaxElement& e = cur.peek();
                        if (e.run < 0 || e.value == 0)
                            throw DecodeError("invalid coefficient element");
                        pos += e.run + 1;
                        if (pos > 63)
                            throw DecodeError("coefficient run past end of block");
                        q.levels[pos] = e.value;
                        cur.advance();
                    }
                    cur.expect(ElementKind::EndOfBlock, "end of block");

                    const BlockPos bp = block_position(b, mb_x, mb_y);
                    reconstruct_block(plane_of(recon, bp.plane), bp, predict_block(reference, bp, mv), q);
                }
            }
        }
        frames.push_back(std::move(recon));
    }
    return frames;
}

} // namespace xprv
