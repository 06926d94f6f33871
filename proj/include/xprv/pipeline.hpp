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

#ifndef XPRV_PIPELINE_HPP
#define XPRV_PIPELINE_HPP

#include "xprv/codec.hpp"
#include "xprv/container.hpp"
#include "xprv/metrics.hpp"
#include "xprv/selective.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace xprv {

struct EncodeOutcome {
    std::vector<std::uint8_t> stream;
    EncodedSequence encoded;
    PhaseBreakdown phases;       // seconds
    double wall_seconds = 0;     // codec + serialization
    std::uint64_t keystream_bits = 0;
};

ContainerHeader make_header(const EncodedSequence& encoded, const EncoderConfig& config, int fps);

// Serializes an already encoded sequence under `policy`.
std::vector<std::uint8_t> serialize_sequence(const EncodedSequence& encoded, const EncoderConfig& config, int fps,
                                             const SePolicy& policy, const RoundKeySet& keys,
                                             PhaseBreakdown* phases = nullptr, std::uint64_t* keystream_bits = nullptr);

// Full encode: codec, then serialization with selective encryption.
EncodeOutcome encode_to_stream(std::span<const Frame> frames, const EncoderConfig& config, int fps,
                               const SePolicy& policy, const RoundKeySet& keys);

struct DecodeOptions {
    std::optional<RoundKeySet> keys; // empty: keyless decode
    bool strict = false;
    bool aes_range_unsafe = false;
};

struct DecodedStream {
    ContainerHeader header;
    std::vector<Frame> frames;
};

DecodedStream decode_stream(std::span<const std::uint8_t> stream, const DecodeOptions& options);

// Element classes MV/coefficient present in a sequence of `frame_count`
// frames coded with `gop_length`.
ElementAvailability availability_for(std::size_t frame_count, int gop_length);

struct CompareCell {
    CipherId cipher = CipherId::None;
    std::uint8_t se_flags = 0;
    int qp = 24;
    bool field_overflow = false;
    std::size_t overflow_macroblock = 0;
    std::size_t stream_bytes = 0;
    long long size_delta = 0;   // against the plain stream at the same qp
    QualityReport keyless;      // decoded without keys, against the source
    QualityReport plain;        // cipher-none decode, against the source
};

struct CompareConfig {
    std::vector<int> qps{24, 36, 48};
    std::vector<CipherId> ciphers{CipherId::Exper, CipherId::Xor, CipherId::Aes128Ctr};
    std::vector<std::uint8_t> subsets{kSeMvSigns, kSeCoeffSigns, kSeDqp, kSeMvSigns | kSeCoeffSigns,
                                      kSeMvSigns | kSeCoeffSigns | kSeDqp};
    int gop_length = 8;
    int fps = 30;
};

// Runs every (qp, cipher, subset) cell. AES cells that include dQP run in
// range-unsafe mode and report the overflow instead of a PSNR.
std::vector<CompareCell> run_compare(std::span<const Frame> frames, const CompareConfig& config,
                                     const RoundKeySet& keys);

std::string se_flags_name(std::uint8_t flags);
std::uint8_t parse_se_flags(std::string_view list); // "mv,coeff,dqp"; throws ConfigError

// Encode-time comparison across ciphers. Each repetition runs the codec
// once and serializes the same elements under every cipher; a cipher's
// encode time is codec time plus its own serialization time. Every cipher
// encrypts mv+coeff signs (AES cannot keep dQP in range), none encrypts
// nothing; EXPer and XOR also get an extra "<name>+dqp" row with dQP added.
// Medians over repetitions.
TimingReport bench_encode(std::span<const Frame> frames, const EncoderConfig& config, const RoundKeySet& keys,
                          std::span<const CipherId> ciphers, int repetitions = 3);

SePolicy full_policy(CipherId cipher);
SePolicy timing_policy(CipherId cipher); // full_policy without dQP

} // namespace xprv

#endif
