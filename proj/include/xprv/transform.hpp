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

#ifndef XPRV_TRANSFORM_HPP
#define XPRV_TRANSFORM_HPP

#include <array>

namespace xprv {

inline constexpr int kMinQp = 0;
inline constexpr int kMaxQp = 63;

// Row-major 8x8 block.
using Block8x8 = std::array<double, 64>;

// Orthonormal 2-D DCT-II and its inverse.
Block8x8 dct8x8(const Block8x8& spatial);
Block8x8 idct8x8(const Block8x8& coeffs);

// zigzag_order()[k] is the raster index of the k-th coefficient in scan order.
const std::array<int, 64>& zigzag_order();

// 2^((qp - 4) / 6). throws std::out_of_range for qp outside 0..63.
double qstep(int qp);

struct QuantizedBlock {
    std::array<int, 64> levels{}; // scan (zigzag) order
    int qp = 0;

    bool operator==(const QuantizedBlock&) const = default;
};

// Uniform quantizer, round half away from zero.
QuantizedBlock quantize(const Block8x8& coeffs, int qp);
Block8x8 dequantize(const QuantizedBlock& q);

} // namespace xprv

#endif
