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

#include "xprv/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace xprv {

namespace {

void check_same_size(const Plane& a, const Plane& b)
{
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument("plane dimensions differ");
}

double squared_error_sum(const Plane& a, const Plane& b)
{
    check_same_size(a, b);
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        const int d = int(a.samples[i]) - int(b.samples[i]);
        sum += static_cast<std::uint64_t>(d * d);
    }
    return static_cast<double>(sum);
}

std::string format_db(double db)
{
    if (std::isinf(db))
        return "inf";
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(4);
    os << db;
    return os.str();
}

} // namespace

double mse_plane(const Plane& a, const Plane& b)
{
    const double sum = squared_error_sum(a, b);
    if (a.samples.empty())
        return 0.0;
    return sum / static_cast<double>(a.samples.size());
}

double psnr_from_mse(double mse)
{
    if (mse <= 0.0)
        return kPsnrInfinity;
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double psnr_plane(const Plane& a, const Plane& b)
{
    return psnr_from_mse(mse_plane(a, b));
}

QualityReport sequence_report(std::span<const Frame> original, std::span<const Frame> decoded,
                              std::size_t stream_bytes, double fps)
{
    if (original.size() != decoded.size())
        throw std::invalid_argument("frame counts differ");
    if (original.empty())
        throw std::invalid_argument("sequence_report needs at least one frame");

    double sum[3] = {0, 0, 0};
    double count[3] = {0, 0, 0};
    for (std::size_t i = 0; i < original.size(); ++i) {
        const Plane* a[3] = {&original[i].y, &original[i].u, &original[i].v};
        const Plane* b[3] = {&decoded[i].y, &decoded[i].u, &decoded[i].v};
        for (int p = 0; p < 3; ++p) {
            sum[p] += squared_error_sum(*a[p], *b[p]);
            count[p] += static_cast<double>(a[p]->samples.size());
        }
    }

    QualityReport r;
    r.mse_y = count[0] > 0 ? sum[0] / count[0] : 0.0;
    r.mse_u = count[1] > 0 ? sum[1] / count[1] : 0.0;
    r.mse_v = count[2] > 0 ? sum[2] / count[2] : 0.0;
    r.psnr_y = psnr_from_mse(r.mse_y);
    r.psnr_u = psnr_from_mse(r.mse_u);
    r.psnr_v = psnr_from_mse(r.mse_v);
    r.stream_bytes = stream_bytes;
    r.bitrate = static_cast<double>(stream_bytes) * 8.0 * fps / static_cast<double>(original.size());
    return r;
}

double median(std::vector<double> values)
{
    if (values.empty())
        throw std::invalid_argument("median of empty set");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::string to_key_values(const QualityReport& r, const std::string& prefix)
{
    std::ostringstream os;
    os << prefix << "psnr_y=" << format_db(r.psnr_y) << '\n'
       << prefix << "psnr_u=" << format_db(r.psnr_u) << '\n'
       << prefix << "psnr_v=" << format_db(r.psnr_v) << '\n'
       << prefix << "mse_y=" << r.mse_y << '\n'
       << prefix << "mse_u=" << r.mse_u << '\n'
       << prefix << "mse_v=" << r.mse_v << '\n'
       << prefix << "bitrate=" << r.bitrate << '\n'
       << prefix << "stream_bytes=" << r.stream_bytes << '\n';
    return os.str();
}

std::string to_key_values(const TimingReport& r)
{
    std::ostringstream os;
    os << "workload_bytes=" << r.workload_bytes << '\n' << "repetitions=" << r.repetitions << '\n';
    for (const auto& [name, bps] : r.keystream_throughput)
        os << "throughput." << name << "=" << bps << '\n';
    for (const auto& [name, sec] : r.encode_wall_time)
        os << "encode_time." << name << "=" << sec << '\n';
    for (const auto& [name, p] : r.phases) {
        os << "phase." << name << ".transform=" << p.transform << '\n'
           << "phase." << name << ".search=" << p.search << '\n'
           << "phase." << name << ".entropy=" << p.entropy << '\n'
           << "phase." << name << ".cipher=" << p.cipher << '\n';
    }
    return os.str();
}

nlohmann::json psnr_json(double db)
{
    if (std::isinf(db))
        return "inf";
    return db;
}

nlohmann::json to_json(const QualityReport& r)
{
    return {
        {"psnr_y", psnr_json(r.psnr_y)}, {"psnr_u", psnr_json(r.psnr_u)}, {"psnr_v", psnr_json(r.psnr_v)},
        {"mse_y", r.mse_y},              {"mse_u", r.mse_u},              {"mse_v", r.mse_v},
        {"bitrate", r.bitrate},          {"stream_bytes", r.stream_bytes},
    };
}

nlohmann::json to_json(const TimingReport& r)
{
    nlohmann::json j;
    j["workload_bytes"] = r.workload_bytes;
    j["repetitions"] = r.repetitions;
    j["keystream_throughput"] = r.keystream_throughput;
    j["encode_wall_time"] = r.encode_wall_time;
    nlohmann::json phases = nlohmann::json::object();
    for (const auto& [name, p] : r.phases)
        phases[name] = {{"transform", p.transform}, {"search", p.search}, {"entropy", p.entropy}, {"cipher", p.cipher}};
    j["phases"] = phases;
    return j;
}

} // namespace xprv
