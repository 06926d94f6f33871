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

#ifndef XPRV_METRICS_HPP
#define XPRV_METRICS_HPP

#include "xprv/cipher.hpp"
#include "xprv/frame.hpp"

#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace xprv {

// PSNR of identical planes.
inline constexpr double kPsnrInfinity = std::numeric_limits<double>::infinity();

double mse_plane(const Plane& a, const Plane& b); // throws std::invalid_argument on size mismatch
double psnr_from_mse(double mse);
double psnr_plane(const Plane& a, const Plane& b);

struct QualityReport {
    double psnr_y = kPsnrInfinity;
    double psnr_u = kPsnrInfinity;
    double psnr_v = kPsnrInfinity;
    double mse_y = 0;
    double mse_u = 0;
    double mse_v = 0;
    double bitrate = 0; // bits per second
    std::size_t stream_bytes = 0;
};

// Per-plane MSE pooled over all frames, then converted to dB.
// bitrate = stream_bytes * 8 * fps / frame_count.
QualityReport sequence_report(std::span<const Frame> original, std::span<const Frame> decoded,
                              std::size_t stream_bytes, double fps);

struct PhaseBreakdown {
    double transform = 0; // seconds
    double search = 0;
    double entropy = 0;
    double cipher = 0;
};

struct TimingReport {
    std::size_t workload_bytes = 0;
    int repetitions = 0;
    // Median bytes/second of whole-buffer encryption per cipher.
    std::map<std::string, double> keystream_throughput;
    // Median wall seconds of a full encode per cipher.
    std::map<std::string, double> encode_wall_time;
    std::map<std::string, PhaseBreakdown> phases;
};

inline constexpr std::size_t kMinBenchWorkload = 1u << 20;

// Median-of-`repetitions` throughput of encrypting the same workload with
// each cipher (EXPer runs all five stages per byte; AES is the portable
// implementation in CTR mode). throws std::invalid_argument for a
// workload under 1 MiB.
TimingReport bench_ciphers(std::size_t workload_bytes, std::span<const CipherId> ciphers,
                           const RoundKeySet& keys, int repetitions = 3);

double median(std::vector<double> values);

// Reporting: one key=value per line, and a JSON object.
std::string to_key_values(const QualityReport& r, const std::string& prefix = "");
std::string to_key_values(const TimingReport& r);
nlohmann::json to_json(const QualityReport& r);
nlohmann::json to_json(const TimingReport& r);
// Infinite PSNR is written as the string "inf" in JSON.
nlohmann::json psnr_json(double db);

} // namespace xprv

#endif
