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

#include "xprv/motion.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <tuple>

namespace xprv {

namespace {

std::uint32_t sad_inside(const Plane& cur, const Plane& ref, int x, int y, int rx, int ry)
{
    std::uint32_t sum = 0;
    for (int row = 0; row < kMacroblockSize; ++row) {
        const std::uint8_t* a = cur.samples.data() + static_cast<std::size_t>(y + row) * cur.width + x;
        const std::uint8_t* b = ref.samples.data() + static_cast<std::size_t>(ry + row) * ref.width + rx;
        std::uint32_t line = 0;
        for (int col = 0; col < kMacroblockSize; ++col)
            line += static_cast<std::uint32_t>(std::abs(int(a[col]) - int(b[col])));
        sum += line;
    }
    return sum;
}

} // namespace

std::uint32_t block_sad(const Plane& current, const Plane& reference, int x, int y, MotionVector mv)
{
    std::uint32_t sum = 0;
    for (int row = 0; row < kMacroblockSize; ++row)
        for (int col = 0; col < kMacroblockSize; ++col)
            sum += static_cast<std::uint32_t>(
                std::abs(int(current.at(x + col, y + row)) - int(reference.clamped(x + col + mv.dx, y + row + mv.dy))));
    return sum;
}

MotionVector motion_search(const Plane& current, const Plane& reference, int x, int y, int range)
{
    if (range < 0 || range > kMaxSearchRange)
        throw std::invalid_argument("search range must be in 0..7");
    if (x < 0 || y < 0 || x + kMacroblockSize > current.width || y + kMacroblockSize > current.height)
        throw std::invalid_argument("macroblock origin outside the frame");
    if (current.width != reference.width || current.height != reference.height)
        throw std::invalid_argument("reference dimensions differ from current frame");

    const int min_dx = std::max(-range, -x);
    const int max_dx = std::min(range, reference.width - kMacroblockSize - x);
    const int min_dy = std::max(-range, -y);
    const int max_dy = std::min(range, reference.height - kMacroblockSize - y);

    MotionVector best{};
    auto best_key = std::make_tuple(~0u, 0, 0, 0);
    for (int dy = min_dy; dy <= max_dy; ++dy) {
        for (int dx = min_dx; dx <= max_dx; ++dx) {
            const std::uint32_t sad = sad_inside(current, reference, x, y, x + dx, y + dy);
            const auto key = std::make_tuple(sad, std::abs(dx) + std::abs(dy), dy, dx);
            if (key < best_key) {
                best_key = key;
                best = {dx, dy};
            }
        }
    }
    return best;
}

} // namespace xprv
