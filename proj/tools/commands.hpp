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

#ifndef XPRV_TOOLS_COMMANDS_HPP
#define XPRV_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace xprv::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitConfig = 2,
    kExitIo = 3,
    kExitDecode = 4,
    kExitFieldOverflow = 5,
    kExitFormat = 6,
};

struct CommandConfig {
    std::string subcommand;

    std::string input;
    std::string output;
    std::string report;
    std::string ref_path;
    std::string test_path;

    // Synthetic input instead of a file.
    std::string synth;
    int frames = 30;
    std::string size = "352x288";
    std::uint64_t synth_seed = 5;
    int fps = 30;

    int qp = 24;
    int gop = 8;
    std::string se;   // "mv,coeff,dqp"
    std::string rank; // without|medium|high
    std::string cipher = "none";
    std::string seed;
    std::string key1, key2, key3;
    bool strict = false;
    bool aes_range_unsafe = false;
    int vi = 2;
    int vj = 6;

    std::vector<int> qps{24, 36, 48};
    int workload_mib = 4;
    int repetitions = 3;
};

// Each command prints key=value lines to `out` and returns an ExitCode.
// Errors are reported on `err`.
int run_command(const CommandConfig& config, std::ostream& out, std::ostream& err);

// Full argv entry point (CLI11 parsing + run_command).
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace xprv::cli

#endif
