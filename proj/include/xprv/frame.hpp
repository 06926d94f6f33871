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

#ifndef XPRV_FRAME_HPP
#define XPRV_FRAME_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace xprv {

struct Plane {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> samples;

    Plane() = default;
    Plane(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), samples(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

    std::uint8_t at(int x, int y) const { return samples[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return samples[static_cast<std::size_t>(y) * width + x]; }

    // Edge-extended fetch; coordinates outside the plane clamp to the border.
    std::uint8_t clamped(int x, int y) const
    {
        x = x < 0 ? 0 : (x >= width ? width - 1 : x);
        y = y < 0 ? 0 : (y >= height ? height - 1 : y);
        return at(x, y);
    }

    bool operator==(const Plane&) const = default;
};

// Planar 4:2:0 picture; chroma planes are half size in each direction.
struct Frame {
    Plane y, u, v;

    Frame() = default;
    Frame(int width, int height, std::uint8_t luma = 128, std::uint8_t chroma = 128)
        : y(width, height, luma), u(width / 2, height / 2, chroma), v(width / 2, height / 2, chroma)
    {
        if (width <= 0 || height <= 0 || width % 2 != 0 || height % 2 != 0)
            throw std::invalid_argument("frame dimensions must be positive and even");
    }

    int width() const { return y.width; }
    int height() const { return y.height; }

    static std::size_t byte_size(int width, int height)
    {
        return static_cast<std::size_t>(width) * height * 3 / 2;
    }

    bool operator==(const Frame&) const = default;
};

} // namespace xprv

#endif
