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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "commands.hpp"

#include "xprv/io.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace xprv;
using namespace xprv::cli;

namespace {

namespace fs = std::filesystem;

fs::path work_dir()
{
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / "xprv_test_cli";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string at(const std::string& name) { return (work_dir() / name).string(); }

struct Result {
    int code;
    std::map<std::string, std::string> values;
    std::string text;
    std::string err;
};

Result run(const CommandConfig& c)
{
    std::ostringstream out, err;
    Result r{run_command(c, out, err), {}, out.str(), err.str()};
    std::istringstream lines(r.text);
    for (std::string line; std::getline(lines, line);) {
        const auto eq = line.find('=');
        if (eq != std::string::npos)
            r.values[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return r;
}

CommandConfig encode_cfg(const std::string& output, const std::string& cipher, const std::string& se)
{
    CommandConfig c;
    c.subcommand = "encode";
    c.synth = "moving_box";
    c.size = "96x64";
    c.frames = 10;
    c.output = at(output);
    c.cipher = cipher;
    c.se = se;
    c.seed = "7";
    return c;
}

CommandConfig decode_cfg(const std::string& input, const std::string& output, const std::string& seed)
{
    CommandConfig c;
    c.subcommand = "decode";
    c.input = at(input);
    c.output = at(output);
    c.seed = seed;
    return c;
}

double psnr_y(const std::string& ref, const std::string& test)
{
    CommandConfig c;
    c.subcommand = "psnr";
    c.ref_path = at(ref);
    c.test_path = at(test);
    const Result r = run(c);
    REQUIRE(r.code == kExitOk);
    return r.values.at("psnr_y") == "inf" ? 1e9 : std::stod(r.values.at("psnr_y"));
}

std::vector<std::uint8_t> file(const std::string& name) { return read_file(at(name)); }

} // namespace

TEST_CASE("encode, decode and psnr")
{
    CommandConfig s;
    s.subcommand = "synth";
    s.synth = "moving_box";
    s.size = "96x64";
    s.frames = 10;
    s.output = at("src.y4m");
    REQUIRE(run(s).code == kExitOk);

    const Result plain = run(encode_cfg("plain.xprv", "none", ""));
    REQUIRE(plain.code == kExitOk);
    CHECK(plain.values.at("frames") == "10");
    const Result enc = run(encode_cfg("enc.xprv", "exper", "mv,coeff,dqp"));
    REQUIRE(enc.code == kExitOk);
    CHECK(enc.values.at("se") == "mv+coeff+dqp");
    const Result again = run(encode_cfg("enc2.xprv", "exper", "mv,coeff,dqp"));
    REQUIRE(again.code == kExitOk);

    CHECK(file("enc.xprv") == file("enc2.xprv"));
    CHECK(file("enc.xprv").size() == file("plain.xprv").size());
    CHECK(file("enc.xprv") != file("plain.xprv"));

    REQUIRE(run(decode_cfg("plain.xprv", "plain.y4m", "")).code == kExitOk);
    REQUIRE(run(decode_cfg("enc.xprv", "keyed.y4m", "7")).code == kExitOk);
    const Result keyless = run(decode_cfg("enc.xprv", "keyless.y4m", ""));
    REQUIRE(keyless.code == kExitOk);
    CHECK(keyless.values.at("keys") == "none");
    REQUIRE(run(decode_cfg("enc.xprv", "wrong.y4m", "8")).code == kExitOk);

    CHECK(file("keyed.y4m") == file("plain.y4m"));
    const double good = psnr_y("src.y4m", "keyed.y4m");
    const double bad = psnr_y("src.y4m", "keyless.y4m");
    CHECK(good > 35.0);
    CHECK(bad < good - 10.0);
    CHECK(std::abs(psnr_y("src.y4m", "wrong.y4m") - bad) < 6.0);
    CHECK(psnr_y("src.y4m", "src.y4m") == 1e9);
}

TEST_CASE("encode report is valid json")
{
    CommandConfig c = encode_cfg("rep.xprv", "xor", "coeff");
    c.report = at("rep.json");
    REQUIRE(run(c).code == kExitOk);
    std::ifstream in(c.report);
    const auto j = nlohmann::json::parse(in);
    CHECK(j["command"] == "encode");
    CHECK(j["cipher"] == "xor");
    CHECK(j["stream_bytes"].get<std::size_t>() == file("rep.xprv").size());
}

TEST_CASE("exit codes")
{
    CommandConfig aes_dqp = encode_cfg("x.xprv", "aes", "dqp");
    CHECK(run(aes_dqp).code == kExitConfig);

    CommandConfig unsafe = encode_cfg("x.xprv", "aes", "dqp");
    unsafe.seed = "0";
    unsafe.aes_range_unsafe = true;
    unsafe.synth = "noise";
    CHECK(run(unsafe).code == kExitFieldOverflow);

    CHECK(run(encode_cfg("x.xprv", "none", "mv")).code == kExitConfig);
    CHECK(run(encode_cfg("x.xprv", "rot13", "")).code == kExitConfig);

    CHECK(run(decode_cfg("missing.xprv", "out.y4m", "")).code == kExitIo);

    write_file(at("junk.xprv"), std::vector<std::uint8_t>(40, 0x55));
    CHECK(run(decode_cfg("junk.xprv", "out.y4m", "")).code == kExitDecode);

    const std::string bad = "YUV4MPEG2 W16 H16 C444\n";
    write_file(at("bad.y4m"), std::vector<std::uint8_t>(bad.begin(), bad.end()));
    CommandConfig fmt;
    fmt.subcommand = "encode";
    fmt.input = at("bad.y4m");
    fmt.output = at("x.xprv");
    CHECK(run(fmt).code == kExitFormat);

    CommandConfig unknown;
    unknown.subcommand = "transcode";
    CHECK(run(unknown).code != kExitOk);
}

TEST_CASE("strict decoding of a wrapped qp")
{
    // One noise macroblock: variance above 2000 gives dqp -2, code 30.
    CommandConfig c = encode_cfg("strict.xprv", "exper", "dqp");
    c.synth = "noise";
    c.size = "16x16";
    c.frames = 1;
    c.qp = 60;
    c.key1 = "00000000000000000000000000000000";
    c.key2 = "00000000000000000000000000000000";
    c.key3 = "80000000000000000000000000000000"; // eff byte 0x80: mask 100000
    c.seed.clear();
    REQUIRE(run(c).code == kExitOk);
    CommandConfig d = decode_cfg("strict.xprv", "strict.y4m", "");
    d.strict = true;
    // Keyless reading sees code 30 ^ 32 = 62, i.e. dqp +30: QP 90.
    CHECK(run(d).code == kExitDecode);
    d.strict = false;
    CHECK(run(d).code == kExitOk);
}

TEST_CASE("compare table")
{
    CommandConfig c;
    c.subcommand = "compare";
    c.synth = "moving_box";
    c.size = "64x48";
    c.frames = 4;
    c.qps = {24};
    c.report = at("compare.json");
    const Result r = run(c);
    REQUIRE(r.code == kExitOk);
    CHECK(r.text.find("FieldOverflow") != std::string::npos);
    std::ifstream in(c.report);
    const auto j = nlohmann::json::parse(in);
    int overflow_rows = 0;
    for (const auto& row : j["cells"]) {
        if (row["outcome"] == "field_overflow") {
            CHECK(row["cipher"] == "aes");
            ++overflow_rows;
            continue;
        }
        if (row["cipher"] != "aes")
            CHECK(row["size_delta"] == 0);
    }
    CHECK(overflow_rows == 2);
    CHECK(j["cells"].size() == 15);
}

TEST_CASE("argv front end")
{
    std::ostringstream out, err;
    const char* help[] = {"xprv", "--help"};
    CHECK(main_entry(2, help, out, err) == kExitOk);
    const char* bad[] = {"xprv", "encode", "--qp", "abc"};
    CHECK(main_entry(4, bad, out, err) == kExitConfig);
}
