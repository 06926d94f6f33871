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

#include "xprv/aes.hpp"
#include "xprv/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <stdexcept>

namespace xprv {

namespace {

// Keeps the optimiser from discarding benchmark output.
volatile std::uint8_t g_sink;

void encrypt_once(CipherId cipher, std::span<const std::uint8_t> in, std::span<std::uint8_t> out,
                  const RoundKeySet& keys, const Aes128Ctr& aes)
{
    switch (cipher) {
    case CipherId::None:
        std::memcpy(out.data(), in.data(), in.size());
        break;
    case CipherId::Exper:
        exper_encrypt(in, out, keys);
        break;
    case CipherId::Xor:
        xor_encrypt(in, out, keys.r_key1);
        break;
    case CipherId::Aes128Ctr:
        aes.apply(in, out);
        break;
    }
}

} // namespace

TimingReport bench_ciphers(std::size_t workload_bytes, std::span<const CipherId> ciphers,
                           const RoundKeySet& keys, int repetitions)
{
    if (workload_bytes < kMinBenchWorkload)
        throw std::invalid_argument("benchmark workload must be at least 1 MiB");
    if (repetitions < 1)
        throw std::invalid_argument("repetitions must be positive");

    std::vector<std::uint8_t> input(workload_bytes);
    SplitMix64 fill(0x5eed);
    for (std::size_t i = 0; i < input.size(); i += 8) {
        const std::uint64_t v = fill.next();
        for (std::size_t b = 0; b < 8 && i + b < input.size(); ++b)
            input[i + b] = static_cast<std::uint8_t>(v >> (8 * b));
    }
    std::vector<std::uint8_t> output(workload_bytes);
    const Aes128Ctr aes(keys.r_key1);

    TimingReport report;
    report.workload_bytes = workload_bytes;
    report.repetitions = repetitions;

    for (CipherId cipher : ciphers) {
        std::vector<double> rates;
        for (int r = 0; r < repetitions; ++r) {
            const auto start = std::chrono::steady_clock::now();
            encrypt_once(cipher, input, output, keys, aes);
            const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
            g_sink = output[output.size() / 2];
            const double sec = std::max(elapsed.count(), 1e-9);
            rates.push_back(static_cast<double>(workload_bytes) / sec);
        }
        report.keystream_throughput[std::string(cipher_name(cipher))] = median(rates);
    }
    return report;
}

} // namespace xprv
