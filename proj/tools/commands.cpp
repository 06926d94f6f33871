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

#include "commands.hpp"

#include "xprv/errors.hpp"
#include "xprv/io.hpp"
#include "xprv/pipeline.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace xprv::cli {

namespace {

namespace fs = std::filesystem;

std::pair<int, int> parse_size(const std::string& text)
{
    const auto x = text.find('x');
    int w = 0, h = 0;
    if (x != std::string::npos) {
        auto r1 = std::from_chars(text.data(), text.data() + x, w);
        auto r2 = std::from_chars(text.data() + x + 1, text.data() + text.size(), h);
        if (r1.ec == std::errc{} && r2.ec == std::errc{} && r1.ptr == text.data() + x &&
            r2.ptr == text.data() + text.size() && w > 0 && h > 0)
            return {w, h};
    }
    throw ConfigError("invalid --size '" + text + "' (expected WxH)");
}

bool is_y4m(const std::string& path)
{
    return fs::path(path).extension() == ".y4m";
}

Video load_video(const std::string& path, const std::string& size, int fps)
{
    if (is_y4m(path))
        return read_y4m(path);
    const auto [w, h] = parse_size(size);
    Video v;
    v.info = {w, h, fps, 1};
    v.frames = read_raw_420(path, w, h);
    return v;
}

void save_video(const std::string& path, const VideoInfo& info, std::span<const Frame> frames)
{
    if (is_y4m(path))
        write_y4m(path, info, frames);
    else
        write_raw_420(path, frames);
}

Video input_video(const CommandConfig& c)
{
    if (!c.synth.empty() && !c.input.empty())
        throw ConfigError("--input and --synth are mutually exclusive");
    if (!c.synth.empty()) {
        const auto [w, h] = parse_size(c.size);
        Video v;
        v.info = {w, h, c.fps, 1};
        v.frames = synth_sequence(parse_synth_kind(c.synth), w, h, c.frames, c.synth_seed);
        return v;
    }
    if (c.input.empty())
        throw ConfigError("an --input file or --synth sequence is required");
    return load_video(c.input, c.size, c.fps);
}

RotationOffsets offsets_of(const CommandConfig& c)
{
    RotationOffsets o{c.vi, c.vj};
    try {
        o.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return o;
}

struct ResolvedKeys {
    RoundKeySet keys;
    std::string origin; // "seed=<n>" or "explicit"
};

std::optional<ResolvedKeys> resolve_keys(const CommandConfig& c, bool default_seed)
{
    const RotationOffsets offsets = offsets_of(c);
    const int explicit_count = !c.key1.empty() + !c.key2.empty() + !c.key3.empty();
    if (explicit_count != 0) {
        if (explicit_count != 3)
            throw ConfigError("--key1, --key2 and --key3 must be given together");
        return ResolvedKeys{make_round_keys(parse_key_hex(c.key1), parse_key_hex(c.key2), parse_key_hex(c.key3), offsets),
                            "explicit"};
    }
    if (!c.seed.empty()) {
        const std::uint64_t seed = parse_seed(c.seed);
        return ResolvedKeys{derive_round_keys(seed, offsets), "seed=" + std::to_string(seed)};
    }
    if (default_seed)
        return ResolvedKeys{derive_round_keys(0, offsets), "seed=0"};
    return std::nullopt;
}

SePolicy policy_of(const CommandConfig& c, std::size_t frame_count)
{
    SePolicy policy;
    policy.cipher = parse_cipher_name(c.cipher);
    policy.aes_range_unsafe = c.aes_range_unsafe;
    if (!c.rank.empty() && !c.se.empty())
        throw ConfigError("--rank and --se are mutually exclusive");
    std::uint8_t flags = 0;
    if (!c.rank.empty()) {
        const EncryptionRank rank = parse_rank(c.rank);
        flags = rank_to_policy(rank, availability_for(frame_count, c.gop), policy.cipher).se_flags();
        if (policy.cipher == CipherId::None && rank != EncryptionRank::Without)
            throw ConfigError("--rank requires a cipher other than none");
    } else if (!c.se.empty()) {
        flags = parse_se_flags(c.se);
    }
    if (policy.cipher == CipherId::None && flags != 0)
        throw ConfigError("--cipher none cannot encrypt syntax elements");
    if (c.aes_range_unsafe && policy.cipher != CipherId::Aes128Ctr)
        throw ConfigError("--aes-range-unsafe only applies to --cipher aes");
    policy.encrypt_mv_signs = flags & kSeMvSigns;
    policy.encrypt_coeff_signs = flags & kSeCoeffSigns;
    policy.encrypt_dqp = flags & kSeDqp;
    policy.validate();
    return policy;
}

void write_report(const std::string& path, const nlohmann::json& j)
{
    if (path.empty())
        return;
    const std::string text = j.dump(2) + "\n";
    write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

int cmd_encode(const CommandConfig& c, std::ostream& out)
{
    if (c.output.empty())
        throw ConfigError("encode needs --output");
    const Video video = input_video(c);
    const SePolicy policy = policy_of(c, video.frames.size());
    const auto keys = resolve_keys(c, true);

    EncoderConfig ec;
    ec.qp = c.qp;
    ec.gop_length = c.gop;
    const int fps = static_cast<int>(std::lround(video.info.fps()));
    const EncodeOutcome result = encode_to_stream(video.frames, ec, fps, policy, keys->keys);
    write_file(c.output, result.stream);

    out << "output=" << c.output << '\n'
        << "frames=" << video.frames.size() << '\n'
        << "width=" << video.info.width << '\n'
        << "height=" << video.info.height << '\n'
        << "qp=" << ec.qp << '\n'
        << "gop=" << ec.gop_length << '\n'
        << "cipher=" << cipher_name(policy.cipher) << '\n'
        << "se=" << se_flags_name(policy.se_flags()) << '\n'
        << "keys=" << keys->origin << '\n'
        << "stream_bytes=" << result.stream.size() << '\n'
        << "keystream_bits=" << result.keystream_bits << '\n'
        << "time.wall=" << result.wall_seconds << '\n'
        << "time.transform=" << result.phases.transform << '\n'
        << "time.search=" << result.phases.search << '\n'
        << "time.entropy=" << result.phases.entropy << '\n'
        << "time.cipher=" << result.phases.cipher << '\n';

    write_report(c.report, {
                               {"command", "encode"},
                               {"frames", video.frames.size()},
                               {"qp", ec.qp},
                               {"gop", ec.gop_length},
                               {"cipher", cipher_name(policy.cipher)},
                               {"se", se_flags_name(policy.se_flags())},
                               {"keys", keys->origin},
                               {"stream_bytes", result.stream.size()},
                               {"keystream_bits", result.keystream_bits},
                               {"time", {{"wall", result.wall_seconds},
                                         {"transform", result.phases.transform},
                                         {"search", result.phases.search},
                                         {"entropy", result.phases.entropy},
                                         {"cipher", result.phases.cipher}}},
                           });
    return kExitOk;
}

int cmd_decode(const CommandConfig& c, std::ostream& out)
{
    if (c.input.empty() || c.output.empty())
        throw ConfigError("decode needs --input and --output");
    const auto stream = read_file(c.input);
    const auto keys = resolve_keys(c, false);

    DecodeOptions opts;
    if (keys)
        opts.keys = keys->keys;
    opts.strict = c.strict;
    opts.aes_range_unsafe = c.aes_range_unsafe;
    const DecodedStream decoded = decode_stream(stream, opts);

    const VideoInfo info{decoded.header.width, decoded.header.height, decoded.header.fps, 1};
    save_video(c.output, info, decoded.frames);

    out << "output=" << c.output << '\n'
        << "frames=" << decoded.frames.size() << '\n'
        << "width=" << info.width << '\n'
        << "height=" << info.height << '\n'
        << "cipher=" << cipher_name(decoded.header.cipher) << '\n'
        << "se=" << se_flags_name(decoded.header.se_flags) << '\n'
        << "keys=" << (keys ? keys->origin : std::string("none")) << '\n'
        << "mode=" << (c.strict ? "strict" : "permissive") << '\n';
    write_report(c.report, {{"command", "decode"},
                            {"frames", decoded.frames.size()},
                            {"cipher", cipher_name(decoded.header.cipher)},
                            {"se", se_flags_name(decoded.header.se_flags)},
                            {"keys", keys ? keys->origin : std::string("none")}});
    return kExitOk;
}

int cmd_psnr(const CommandConfig& c, std::ostream& out)
{
    if (c.ref_path.empty() || c.test_path.empty())
        throw ConfigError("psnr needs --ref and --test");
    const Video ref = load_video(c.ref_path, c.size, c.fps);
    const Video test = load_video(c.test_path, c.size, c.fps);
    if (ref.frames.size() != test.frames.size() || ref.info.width != test.info.width ||
        ref.info.height != test.info.height)
        throw ConfigError("reference and test videos differ in size or frame count");
    if (ref.frames.empty())
        throw ConfigError("videos contain no frames");
    std::size_t bytes = 0;
    if (!c.input.empty())
        bytes = read_file(c.input).size();
    const QualityReport r = sequence_report(ref.frames, test.frames, bytes, ref.info.fps());
    out << "frames=" << ref.frames.size() << '\n' << to_key_values(r);
    nlohmann::json j = to_json(r);
    j["command"] = "psnr";
    j["frames"] = ref.frames.size();
    write_report(c.report, j);
    return kExitOk;
}

int cmd_bench(const CommandConfig& c, std::ostream& out)
{
    const Video video = input_video(c);
    const auto keys = resolve_keys(c, true);
    EncoderConfig ec;
    ec.qp = c.qp;
    ec.gop_length = c.gop;

    const std::vector<CipherId> ciphers{CipherId::None, CipherId::Exper, CipherId::Xor, CipherId::Aes128Ctr};
    TimingReport ks = bench_ciphers(static_cast<std::size_t>(c.workload_mib) << 20, ciphers, keys->keys, c.repetitions);
    TimingReport enc = bench_encode(video.frames, ec, keys->keys, ciphers, c.repetitions);
    ks.encode_wall_time = enc.encode_wall_time;
    ks.phases = enc.phases;

    out << "frames=" << video.frames.size() << '\n' << to_key_values(ks);
    out << "\n" << std::left << std::setw(8) << "cipher" << std::right << std::setw(16) << "MB/s" << std::setw(14)
        << "encode s" << '\n';
    for (CipherId id : ciphers) {
        const std::string name(cipher_name(id));
        out << std::left << std::setw(8) << name << std::right << std::setw(16) << std::fixed << std::setprecision(1)
            << ks.keystream_throughput[name] / 1e6 << std::setw(14) << std::setprecision(4)
            << ks.encode_wall_time[name] << '\n';
    }
    out.unsetf(std::ios::floatfield);
    nlohmann::json j = to_json(ks);
    j["command"] = "bench";
    j["frames"] = video.frames.size();
    write_report(c.report, j);
    return kExitOk;
}

int cmd_compare(const CommandConfig& c, std::ostream& out)
{
    const Video video = input_video(c);
    const auto keys = resolve_keys(c, true);
    CompareConfig cc;
    cc.qps = c.qps;
    cc.gop_length = c.gop;
    cc.fps = static_cast<int>(std::lround(video.info.fps()));
    for (int qp : cc.qps)
        if (qp < 0 || qp > 63)
            throw ConfigError("qp must be in 0..63");
    const auto cells = run_compare(video.frames, cc, keys->keys);

    auto db = [](double v) {
        std::ostringstream os;
        if (std::isinf(v))
            os << "inf";
        else
            os << std::fixed << std::setprecision(2) << v;
        return os.str();
    };

    out << "keys=" << keys->origin << '\n';
    out << std::left << std::setw(7) << "cipher" << std::setw(16) << "elements" << std::right << std::setw(4) << "qp"
        << std::setw(9) << "Y" << std::setw(9) << "U" << std::setw(9) << "V" << std::setw(10) << "bytes"
        << std::setw(8) << "delta" << '\n';
    nlohmann::json rows = nlohmann::json::array();
    for (const CompareCell& cell : cells) {
        out << std::left << std::setw(7) << cipher_name(cell.cipher) << std::setw(16) << se_flags_name(cell.se_flags)
            << std::right << std::setw(4) << cell.qp;
        nlohmann::json row{{"cipher", cipher_name(cell.cipher)},
                           {"elements", se_flags_name(cell.se_flags)},
                           {"qp", cell.qp},
                           {"plain", to_json(cell.plain)}};
        if (cell.field_overflow) {
            out << "   FieldOverflow at macroblock " << cell.overflow_macroblock << '\n';
            row["outcome"] = "field_overflow";
            row["overflow_macroblock"] = cell.overflow_macroblock;
        } else {
            out << std::setw(9) << db(cell.keyless.psnr_y) << std::setw(9) << db(cell.keyless.psnr_u) << std::setw(9)
                << db(cell.keyless.psnr_v) << std::setw(10) << cell.stream_bytes << std::setw(8) << cell.size_delta
                << '\n';
            row["outcome"] = "ok";
            row["keyless"] = to_json(cell.keyless);
            row["stream_bytes"] = cell.stream_bytes;
            row["size_delta"] = cell.size_delta;
        }
        rows.push_back(row);
    }
    write_report(c.report, {{"command", "compare"}, {"keys", keys->origin}, {"cells", rows}});
    return kExitOk;
}

int cmd_synth(const CommandConfig& c, std::ostream& out)
{
    if (c.synth.empty() || c.output.empty())
        throw ConfigError("synth needs --synth and --output");
    const Video video = input_video(c);
    save_video(c.output, video.info, video.frames);
    out << "output=" << c.output << '\n' << "frames=" << video.frames.size() << '\n';
    return kExitOk;
}

} // namespace

int run_command(const CommandConfig& config, std::ostream& out, std::ostream& err)
{
    try {
        if (config.subcommand == "encode")
            return cmd_encode(config, out);
        if (config.subcommand == "decode")
            return cmd_decode(config, out);
        if (config.subcommand == "psnr")
            return cmd_psnr(config, out);
        if (config.subcommand == "bench")
            return cmd_bench(config, out);
        if (config.subcommand == "compare")
            return cmd_compare(config, out);
        if (config.subcommand == "synth")
            return cmd_synth(config, out);
        err << "error: unknown command '" << config.subcommand << "'\n";
        return kExitConfig;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const FieldOverflow& e) {
        err << "field overflow: " << e.what() << '\n';
        return kExitFieldOverflow;
    } catch (const DecodeError& e) {
        err << "decode error: " << e.what() << '\n';
        return kExitDecode;
    } catch (const FormatError& e) {
        err << "format error: " << e.what() << '\n';
        return kExitFormat;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CommandConfig c;
    CLI::App app{"xprv: selective video encryption with EXPer, XOR and AES-128-CTR"};
    app.require_subcommand(1);

    std::string seed_help = "key seed (decimal or 0x hex), expanded with SplitMix64";

    auto add_input = [&c](CLI::App* sub) {
        sub->add_option("-i,--input", c.input, "input video (.y4m or raw I420)");
        sub->add_option("--synth", c.synth, "synthetic input: gradient|moving_box|noise");
        sub->add_option("--frames", c.frames, "synthetic frame count")->check(CLI::NonNegativeNumber);
        sub->add_option("--size", c.size, "WxH for raw or synthetic input");
        sub->add_option("--synth-seed", c.synth_seed, "seed of the noise sequence");
        sub->add_option("--fps", c.fps, "frame rate for raw or synthetic input")->check(CLI::Range(1, 255));
    };
    auto add_keys = [&](CLI::App* sub) {
        sub->add_option("--seed", c.seed, seed_help);
        sub->add_option("--key1", c.key1, "round key 1, 32 hex digits");
        sub->add_option("--key2", c.key2, "round key 2, 32 hex digits");
        sub->add_option("--key3", c.key3, "round key 3, 32 hex digits");
        sub->add_option("--vi", c.vi, "first rotation offset (1..8)");
        sub->add_option("--vj", c.vj, "second rotation offset (1..8)");
    };
    auto add_codec = [&c](CLI::App* sub) {
        sub->add_option("--qp", c.qp, "slice QP (0..63)");
        sub->add_option("--gop", c.gop, "GOP length (1..255)");
    };

    CLI::App* encode = app.add_subcommand("encode", "encode a video to .xprv with selective encryption");
    add_input(encode);
    add_keys(encode);
    add_codec(encode);
    encode->add_option("-o,--output", c.output, "output .xprv file");
    encode->add_option("--se", c.se, "encrypted elements, e.g. mv,coeff,dqp");
    encode->add_option("--rank", c.rank, "encryption rank: without|medium|high");
    encode->add_option("--cipher", c.cipher, "none|exper|xor|aes");
    encode->add_flag("--aes-range-unsafe", c.aes_range_unsafe, "allow AES dQP encryption with full keystream bytes");
    encode->add_option("--report", c.report, "write a JSON report");

    CLI::App* decode = app.add_subcommand("decode", "decode .xprv, with or without keys");
    add_keys(decode);
    decode->add_option("-i,--input", c.input, "input .xprv file");
    decode->add_option("-o,--output", c.output, "output video (.y4m or raw I420)");
    decode->add_flag("--strict", c.strict, "reject out-of-range effective QP");
    decode->add_flag("--aes-range-unsafe", c.aes_range_unsafe, "stream was encoded with --aes-range-unsafe");
    decode->add_option("--report", c.report, "write a JSON report");

    CLI::App* psnr = app.add_subcommand("psnr", "per-plane PSNR between two videos");
    psnr->add_option("--ref", c.ref_path, "reference video")->required();
    psnr->add_option("--test", c.test_path, "test video")->required();
    psnr->add_option("--size", c.size, "WxH for raw input");
    psnr->add_option("--fps", c.fps, "frame rate for raw input");
    psnr->add_option("--stream", c.input, "coded stream, used for the bitrate");
    psnr->add_option("--report", c.report, "write a JSON report");

    CLI::App* bench = app.add_subcommand("bench", "cipher throughput and encode timing");
    add_input(bench);
    add_keys(bench);
    add_codec(bench);
    bench->add_option("--workload-mib", c.workload_mib, "keystream benchmark size in MiB")->check(CLI::Range(1, 1024));
    bench->add_option("--repetitions", c.repetitions, "timed repetitions (median reported)")->check(CLI::Range(1, 100));
    bench->add_option("--report", c.report, "write a JSON report");

    CLI::App* compare = app.add_subcommand("compare", "keyless-decode PSNR over ciphers, element sets and QPs");
    add_input(compare);
    add_keys(compare);
    compare->add_option("--gop", c.gop, "GOP length (1..255)");
    compare->add_option("--qps", c.qps, "QP sweep")->delimiter(',');
    compare->add_option("--report", c.report, "write a JSON report");

    CLI::App* synth = app.add_subcommand("synth", "write a synthetic test sequence");
    add_input(synth);
    synth->add_option("-o,--output", c.output, "output video (.y4m or raw I420)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    for (CLI::App* sub : app.get_subcommands())
        c.subcommand = sub->get_name();
    return run_command(c, out, err);
}

} // namespace xprv::cli
