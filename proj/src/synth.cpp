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
#include "xprv/io.hpp"

#include <algorithm>
#include <string>

namespace xprv {

namespace {

void fill_gradient(Frame& f)
{
    const int w = f.width(), h = f.height();
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            f.y.at(x, y) = static_cast<std::uint8_t>(16 + 160 * x / std::max(1, w - 1) + 64 * y / std::max(1, h - 1));
    const int cw = f.u.width, ch = f.u.height;
    for (int y = 0; y < ch; ++y)
        for (int x = 0; x < cw; ++x) {
            f.u.at(x, y) = static_cast<std::uint8_t>(64 + 128 * x / cw);
            f.v.at(x, y) = static_cast<std::uint8_t>(192 - 128 * y / ch);
        }
}

void draw_box(Frame& f, const BoxOrigin& box)
{
    for (int y = 0; y < box.size; ++y)
        for (int x = 0; x < box.size; ++x) {
            const bool light = ((x / 8) + (y / 8)) % 2 == 0;
            f.y.at(box.x + x, box.y + y) = light ? 240 : 16;
        }
    for (int y = 0; y < box.size / 2; ++y)
        for (int x = 0; x < box.size / 2; ++x) {
            f.u.at(box.x / 2 + x, box.y / 2 + y) = 220;
            f.v.at(box.x / 2 + x, box.y / 2 + y) = 40;
        }
}

} // namespace

SynthKind parse_synth_kind(std::string_view name)
{
    if (name == "gradient") return SynthKind::Gradient;
    if (name == "moving_box") return SynthKind::MovingBox;
    if (name == "noise") return SynthKind::Noise;
    throw ConfigError("unknown synthetic sequence '" + std::string(name) + "' (expected gradient|moving_box|noise)");
}

std::string_view synth_kind_name(SynthKind kind)
{
    switch (kind) {
    case SynthKind::Gradient: return "gradient";
    case SynthKind::MovingBox: return "moving_box";
    case SynthKind::Noise: return "noise";
    }
    return "unknown";
}

BoxOrigin moving_box_origin(int index, int width, int height)
{
    BoxOrigin box;
    box.size = std::max(8, (std::min(width, height) / 4) & ~1);
    const int start_x = (width / 8) & ~1;
    const int span = width - box.size - start_x;
    const int travel = 2 * index;
    box.x = start_x + (span > 0 ? (travel % (span + 1)) & ~1 : 0);
    box.y = ((height - box.size) / 2) & ~1;
    return box;
}

std::vector<Frame> synth_sequence(SynthKind kind, int width, int height, int count, std::uint64_t seed)
{
    if (width <= 0 || height <= 0 || width % 16 != 0 || height % 16 != 0)
        throw ConfigError("synthetic dimensions must be positive multiples of 16");
    if (count < 0)
        throw ConfigError("frame count must be non-negative");

    std::vector<Frame> frames;
    frames.reserve(static_cast<std::size_t>(count));
    SplitMix64 rng(seed);
    for (int i = 0; i < count; ++i) {
        Frame f(width, height);
        switch (kind) {
        case SynthKind::Gradient:
            fill_gradient(f);
            break;
        case SynthKind::MovingBox:
            fill_gradient(f);
            draw_box(f, moving_box_origin(i, width, height));
            break;
        case SynthKind::Noise:
            for (Plane* p : {&f.y, &f.u, &f.v}) {
                for (std::size_t s = 0; s < p->samples.size(); s += 8) {
                    const std::uint64_t v = rng.next();
                    for (std::size_t b = 0; b < 8 && s + b < p->samples.size(); ++b)
                        p->samples[s + b] = static_cast<std::uint8_t>(v >> (8 * b));
                }
            }
            break;
        }
        frames.push_back(std::move(f));
    }
    return frames;
}

} // namespace xprv
