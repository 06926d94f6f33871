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

// Acceptance gate: one [PASS]/[FAIL] line per criterion, exit status 1 if
// any criterion fails.

#include "xprv/aes.hpp"
#include "xprv/cipher.hpp"
#include "xprv/errors.hpp"
#include "xprv/io.hpp"
#include "xprv/metrics.hpp"
#include "xprv/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace xprv;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body)
{
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (!o.pass)
        ++failures;
    std::printf("[%s] AC%d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
    std::fflush(stdout);
}

template <typename... Args>
std::string fmt(const char* f, Args... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome cipher_correctness()
{
    const auto t0 = Clock::now();
    std::mt19937 rng(1);
    long bad = 0;
    for (int t = 0; t < 1000; ++t) {
        const auto k1 = static_cast<std::uint8_t>(rng()), k2 = static_cast<std::uint8_t>(rng()),
                   k3 = static_cast<std::uint8_t>(rng());
        for (int p = 0; p < 256; ++p)
            if (exper_decrypt_byte(exper_encrypt_byte(static_cast<std::uint8_t>(p), k1, k2, k3), k1, k2, k3) != p)
                ++bad;
    }
    const unsigned vec = exper_encrypt_byte(0xB2, 0x3C, 0xA5, 0x0F);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    return {bad == 0 && vec == 0x17 && secs < 1.0,
            fmt("%ld round-trip failures of 256000, EXPer(0xB2)=0x%02X, %.3f s", bad, vec, secs)};
}

Outcome affine_collapse()
{
    std::mt19937 rng(2);
    long bad = 0;
    for (int t = 0; t < 100000; ++t) {
        const auto p = static_cast<std::uint8_t>(rng()), k1 = static_cast<std::uint8_t>(rng()),
                   k2 = static_cast<std::uint8_t>(rng()), k3 = static_cast<std::uint8_t>(rng());
        if (exper_encrypt_byte(p, k1, k2, k3) != (p ^ effective_key_byte(k1, k2, k3)))
            ++bad;
    }
    const RotationOffsets off{2, 5};
    bool found = false;
    int cp = -1, ck1 = -1;
    for (int k1 = 0; k1 < 256 && !found; ++k1)
        for (int p = 0; p < 256 && !found; ++p) {
            const auto a = static_cast<std::uint8_t>(k1);
            if (exper_encrypt_byte(static_cast<std::uint8_t>(p), a, 0xA5, 0x0F, off) !=
                (p ^ effective_key_byte(a, 0xA5, 0x0F, off))) {
                found = true;
                cp = p;
                ck1 = k1;
            }
        }
    return {bad == 0 && found,
            fmt("%ld identity failures of 100000 at (2,6); counterexample at (2,5): p=%d k1=%d", bad, cp, ck1)};
}

Outcome aes_known_answer()
{
    Block128 pt{};
    Key128 key{};
    for (int i = 0; i < 16; ++i) {
        pt[i] = static_cast<std::uint8_t>(i * 0x11);
        key[i] = static_cast<std::uint8_t>(i);
    }
    const Block128 ct = aes128_encrypt_block(pt, key);
    Key128 as_key{};
    std::copy(ct.begin(), ct.end(), as_key.begin());
    const std::string hex = key_to_hex(as_key);
    return {hex == "69c4e0d86a7b0430d8cdb78070b4c55a", "ciphertext " + hex};
}

struct Matrix {
    int streams = 0;
    int length_mismatches = 0;
    int keyless_failures = 0;
    int keyed_mismatches = 0;
};

const Matrix& matrix()
{
    static const Matrix m = [] {
        Matrix m;
        const EncoderConfig ec{24, 8, 7};
        const RoundKeySet keys = derive_round_keys(7);
        for (SynthKind kind : {SynthKind::Gradient, SynthKind::MovingBox, SynthKind::Noise}) {
            const auto frames = synth_sequence(kind, 64, 64, 10, 5);
            const EncodedSequence enc = encode_sequence(frames, ec);
            const auto plain = serialize_sequence(enc, ec, 30, SePolicy{}, keys);
            const auto plain_frames = decode_stream(plain, {}).frames;
            for (CipherId c : {CipherId::Exper, CipherId::Xor})
                for (std::uint8_t flags = 1; flags <= kSeFlagMask; ++flags) {
                    const auto stream = serialize_sequence(enc, ec, 30, SePolicy::from_flags(flags, c), keys);
                    ++m.streams;
                    if (stream.size() != plain.size())
                        ++m.length_mismatches;
                    if (c != CipherId::Exper)
                        continue;
                    try {
                        decode_stream(stream, {});
                    } catch (const std::exception&) {
                        ++m.keyless_failures;
                    }
                    DecodeOptions opts;
                    opts.keys = keys;
                    const auto keyed = decode_stream(stream, opts).frames;
                    if (keyed != plain_frames || keyed != enc.reconstruction)
                        ++m.keyed_mismatches;
                }
        }
        return m;
    }();
    return m;
}

Outcome zero_overhead()
{
    const Matrix& m = matrix();
    return {m.length_mismatches == 0 && m.streams == 42,
            fmt("%d of %d encrypted streams differ in length from the plain stream", m.length_mismatches, m.streams)};
}

Outcome format_compliance()
{
    const Matrix& m = matrix();
    return {m.keyless_failures == 0 && m.keyed_mismatches == 0,
            fmt("%d keyless decode failures, %d keyed decodes differ from the plain reconstruction (21 EXPer streams)",
                m.keyless_failures, m.keyed_mismatches)};
}

Outcome security_distortion()
{
    const auto frames = synth_sequence(SynthKind::MovingBox, 352, 288, 30);
    const EncoderConfig ec{24, 8, 7};
    SePolicy policy = SePolicy::from_flags(kSeFlagMask, CipherId::Exper);
    const RoundKeySet keys = derive_round_keys(7);
    const EncodeOutcome enc = encode_to_stream(frames, ec, 30, policy, keys);

    DecodeOptions keyed, wrong, keyless;
    keyed.keys = keys;
    wrong.keys = derive_round_keys(8);
    const double y_keyed =
        sequence_report(frames, decode_stream(enc.stream, keyed).frames, enc.stream.size(), 30).psnr_y;
    const double y_keyless =
        sequence_report(frames, decode_stream(enc.stream, keyless).frames, enc.stream.size(), 30).psnr_y;
    const double y_wrong =
        sequence_report(frames, decode_stream(enc.stream, wrong).frames, enc.stream.size(), 30).psnr_y;
    const bool pass = y_keyless <= 15.0 && y_keyless <= y_keyed - 10.0 && std::abs(y_wrong - y_keyless) <= 3.0;
    return {pass, fmt("Y-PSNR keyless %.2f dB, keyed %.2f dB, wrong key %.2f dB", y_keyless, y_keyed, y_wrong)};
}

Outcome aes_dqp_failure()
{
    // 128x128 holds 64 macroblocks per frame.
    const auto frames = synth_sequence(SynthKind::Noise, 128, 128, 1, 5);
    const EncoderConfig ec{24, 8, 7};
    const EncodedSequence enc = encode_sequence(frames, ec);
    const SePolicy policy = SePolicy::from_flags(kSeDqp, CipherId::Aes128Ctr, true);
    int early = 0;
    std::size_t worst = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        try {
            serialize_sequence(enc, ec, 30, policy, derive_round_keys(seed));
        } catch (const FieldOverflow& e) {
            if (e.macroblock() < 64) {
                ++early;
                worst = std::max(worst, e.macroblock());
            }
        }
    }
    return {early >= 99, fmt("FieldOverflow within the first 64 macroblocks for %d of 100 key seeds "
                             "(latest at macroblock %zu)",
                             early, worst)};
}

Outcome timing_ordering()
{
    const auto frames = synth_sequence(SynthKind::MovingBox, 352, 288, 100);
    const std::vector<CipherId> ciphers{CipherId::None, CipherId::Exper, CipherId::Xor, CipherId::Aes128Ctr};
    const RoundKeySet keys = derive_round_keys(0);
    const TimingReport ks = bench_ciphers(4u << 20, ciphers, keys, 3);
    const TimingReport enc = bench_encode(frames, {24, 8, 7}, keys, ciphers, 3);
    const double t_exper = enc.encode_wall_time.at("exper"), t_aes = enc.encode_wall_time.at("aes");
    const double r_exper = ks.keystream_throughput.at("exper"), r_aes = ks.keystream_throughput.at("aes");
    return {t_exper <= t_aes && r_exper > r_aes,
            fmt("median encode EXPer %.4f s vs AES %.4f s (EXPer+dQP %.4f s, none %.4f s); "
                "keystream EXPer %.1f MB/s vs AES %.1f MB/s",
                t_exper, t_aes, enc.encode_wall_time.at("exper+dqp"), enc.encode_wall_time.at("none"), r_exper / 1e6,
                r_aes / 1e6)};
}

Outcome metrics_oracle()
{
    const Plane a(16, 16, 0), b(16, 16, 255), c(16, 16, 16);
    const bool cases = psnr_plane(a, a) == kPsnrInfinity && std::abs(psnr_plane(a, b)) < 1e-12 &&
                       std::abs(psnr_plane(a, c) - 24.0486) <= 0.001;
    std::mt19937 rng(9);
    int bad = 0;
    for (int t = 0; t < 1000; ++t) {
        Frame f(16, 16), g(16, 16), h(16, 16);
        for (Plane* p : {&f.y, &g.y, &h.y})
            for (auto& s : p->samples)
                s = static_cast<std::uint8_t>(rng());
        if (psnr_plane(f.y, g.y) != psnr_plane(g.y, f.y))
            ++bad;
        const std::vector<Frame> orig{f, h}, dec{g, h};
        const double pooled = mse_plane(f.y, g.y) / 2;
        const QualityReport r = sequence_report(orig, dec, 0, 30);
        if (std::abs(r.mse_y - pooled) > 1e-9 || std::abs(r.psnr_y - psnr_from_mse(pooled)) > 1e-9)
            ++bad;
    }
    return {cases && bad == 0, fmt("reference cases %s, %d property failures over 1000 pairs",
                                   cases ? "ok" : "wrong", bad)};
}

Outcome codec_sanity()
{
    int recon_bad = 0;
    for (SynthKind kind : {SynthKind::MovingBox, SynthKind::Noise, SynthKind::Gradient}) {
        const auto frames = synth_sequence(kind, 96, 64, 12, 2);
        const EncodedSequence e = encode_sequence(frames, {24, 8, 7});
        if (decode_sequence(e.elements, {96, 64, 24, true}) != e.reconstruction)
            ++recon_bad;
    }

    std::mt19937 rng(50);
    int me_bad = 0;
    for (int t = 0; t < 50; ++t) {
        Plane ref(64, 64), cur(64, 64);
        for (auto& s : ref.samples)
            s = static_cast<std::uint8_t>(rng() % 4 * 20);
        for (auto& s : cur.samples)
            s = static_cast<std::uint8_t>(rng() % 4 * 20);
        // Half the pairs are a shifted copy so the minimum is meaningful.
        if (t % 2 == 0)
            for (int y = 0; y < 64; ++y)
                for (int x = 0; x < 64; ++x)
                    cur.at(x, y) = ref.clamped(x + t % 7 - 3, y - t % 5 + 2);
        for (int y = 0; y < 64; y += 16)
            for (int x = 0; x < 64; x += 16) {
                MotionVector best{};
                long best_sad = -1;
                int best_len = 0;
                for (int dy = -7; dy <= 7; ++dy)
                    for (int dx = -7; dx <= 7; ++dx) {
                        if (x + dx < 0 || y + dy < 0 || x + dx + 16 > 64 || y + dy + 16 > 64)
                            continue;
                        long sad = 0;
                        for (int r = 0; r < 16; ++r)
                            for (int cc = 0; cc < 16; ++cc)
                                sad += std::abs(int(cur.at(x + cc, y + r)) - int(ref.at(x + dx + cc, y + dy + r)));
                        const int len = std::abs(dx) + std::abs(dy);
                        if (best_sad < 0 || sad < best_sad || (sad == best_sad && len < best_len)) {
                            best_sad = sad;
                            best_len = len;
                            best = {dx, dy};
                        }
                    }
                if (!(motion_search(cur, ref, x, y) == best))
                    ++me_bad;
            }
    }

    std::uniform_real_distribution<double> d(-2040.0, 2040.0);
    int q_bad = 0;
    for (int t = 0; t < 10000; ++t) {
        Block8x8 blk{};
        const int pos = t % 64, qp = t % 64;
        blk[pos] = d(rng);
        if (std::abs(dequantize(quantize(blk, qp))[pos] - blk[pos]) > qstep(qp) / 2 + 1e-9)
            ++q_bad;
    }
    return {recon_bad == 0 && me_bad == 0 && q_bad == 0,
            fmt("%d reconstruction mismatches, %d of 800 motion searches disagree with brute force, "
                "%d of 10000 quantizer bound violations",
                recon_bad, me_bad, q_bad)};
}

} // namespace

int main()
{
    report(1, "cipher correctness", cipher_correctness);
    report(2, "affine collapse", affine_collapse);
    report(3, "AES known answer", aes_known_answer);
    report(4, "zero bitrate overhead", zero_overhead);
    report(5, "format compliance", format_compliance);
    report(6, "security distortion", security_distortion);
    report(7, "AES dQP failure", aes_dqp_failure);
    report(8, "timing ordering", timing_ordering);
    report(9, "metrics oracle", metrics_oracle);
    report(10, "codec sanity", codec_sanity);
    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
