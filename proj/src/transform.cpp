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

#include "xprv/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace xprv {

namespace {

// basis[k][n] = a(k) * cos((2n + 1) k pi / 16)
struct DctBasis {
    double m[8][8];

    DctBasis()
    {
        for (int k = 0; k < 8; ++k) {
            const double a = k == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
            for (int n = 0; n < 8; ++n)
                m[k][n] = a * std::cos((2 * n + 1) * k * std::numbers::pi / 16.0);
        }
    }
};

const DctBasis& basis()
{
    static const DctBasis b;
    return b;
}

std::array<int, 64> make_zigzag()
{
    std::array<int, 64> order{};
    int idx = 0;
    for (int s = 0; s < 15; ++s) {
        if (s % 2 == 0) {
            for (int y = std::min(s, 7); y >= 0 && s - y < 8; --y)
                order[idx++] = y * 8 + (s - y);
        } else {
            for (int x = std::min(s, 7); x >= 0 && s - x < 8; --x)
                order[idx++] = (s - x) * 8 + x;
        }
    }
    return order;
}

void check_qp(int qp)
{
    if (qp < kMinQp || qp > kMaxQp)
        throw std::out_of_range("qp must be in 0..63");
}

} // namespace

Block8x8 dct8x8(const Block8x8& spatial)
{
    const auto& c = basis().m;
    Block8x8 tmp{}, out{};
    // rows
    for (int y = 0; y < 8; ++y)
        for (int k = 0; k < 8; ++k) {
            double s = 0;
            for (int n = 0; n < 8; ++n)
                s += c[k][n] * spatial[y * 8 + n];
            tmp[y * 8 + k] = s;
        }
    // columns
    for (int x = 0; x < 8; ++x)
        for (int k = 0; k < 8; ++k) {
            double s = 0;
            for (int n = 0; n < 8; ++n)
                s += c[k][n] * tmp[n * 8 + x];
            out[k * 8 + x] = s;
        }
    return out;
}

Block8x8 idct8x8(const Block8x8& coeffs)
{
    const auto& c = basis().m;
    Block8x8 tmp{}, out{};
    for (int x = 0; x < 8; ++x)
        for (int n = 0; n < 8; ++n) {
            double s = 0;
            for (int k = 0; k < 8; ++k)
                s += c[k][n] * coeffs[k * 8 + x];
            tmp[n * 8 + x] = s;
        }
    for (int y = 0; y < 8; ++y)
        for (int n = 0; n < 8; ++n) {
            double s = 0;
            for (int k = 0; k < 8; ++k)
                s += c[k][n] * tmp[y * 8 + k];
            out[y * 8 + n] = s;
        }
    return out;
}

const std::array<int, 64>& zigzag_order()
{
    static const std::array<int, 64> order = make_zigzag();
    return order;
}

double qstep(int qp)
{
    check_qp(qp);
    return std::exp2((qp - 4) / 6.0);
}

QuantizedBlock quantize(const Block8x8& coeffs, int qp)
{
    const double step = qstep(qp);
    QuantizedBlock q;
    q.qp = qp;
    const auto& zz = zigzag_order();
    for (int k = 0; k < 64; ++k)
        q.levels[k] = static_cast<int>(std::round(coeffs[zz[k]] / step));
    return q;
}

Block8x8 dequantize(const QuantizedBlock& q)
{
    const double step = qstep(q.qp);
    Block8x8 out{};
    const auto& zz = zigzag_order();
    for (int k = 0; k < 64; ++k)
        out[zz[k]] = q.levels[k] * step;
    return out;
}

} // namespace xprv
