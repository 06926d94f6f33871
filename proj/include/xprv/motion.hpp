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

#ifndef XPRV_MOTION_HPP
#define XPRV_MOTION_HPP

#include "xprv/frame.hpp"

#include <cstdint>

namespace xprv {

inline constexpr int kMaxSearchRange = 7;
inline constexpr int kMacroblockSize = 16;

// Prediction for a block at (x, y) is reference(x + dx, y + dy).
struct MotionVector {
    int dx = 0;
    int dy = 0;

    bool operator==(const MotionVector&) const = default;
};

// SAD of the 16x16 block at (x, y) against the edge-extended reference
// displaced by mv.
std::uint32_t block_sad(const Plane& current, const Plane& reference, int x, int y, MotionVector mv);

// Full search over dx, dy in [-range, range], restricted to displacements
// that keep the block inside the reference. Minimises SAD; ties go to the
// smaller |dx| + |dy|, then smaller dy, then smaller dx.
MotionVector motion_search(const Plane& current, const Plane& reference, int x, int y,
                           int range = kMaxSearchRange);

} // namespace xprv

#endif
