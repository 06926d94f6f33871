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

#ifndef XPRV_IO_HPP
#define XPRV_IO_HPP

#include "xprv/frame.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xprv {

// 4:2:0 only.
struct VideoInfo {
    int width = 0;
    int height = 0;
    int fps_num = 30;
    int fps_den = 1;

    double fps() const { return fps_den > 0 ? static_cast<double>(fps_num) / fps_den : 0.0; }
};

struct Video {
    VideoInfo info;
    std::vector<Frame> frames;
    std::vector<std::string> warnings; // ignored header parameters
};

// YUV4MPEG2 subset: W, H, F, C420 variants. Interlacing, aspect and
// extension tokens are ignored with a warning. throws FormatError.
Video parse_y4m(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> format_y4m(const VideoInfo& info, std::span<const Frame> frames);

Video read_y4m(const std::filesystem::path& path);
void write_y4m(const std::filesystem::path& path, const VideoInfo& info, std::span<const Frame> frames);

// Headerless planar I420. The file size must be a whole number of frames.
std::vector<Frame> parse_raw_420(std::span<const std::uint8_t> bytes, int width, int height);
std::vector<Frame> read_raw_420(const std::filesystem::path& path, int width, int height);
void write_raw_420(const std::filesystem::path& path, std::span<const Frame> frames);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path); // throws IoError
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

enum class SynthKind { Gradient, MovingBox, Noise };

SynthKind parse_synth_kind(std::string_view name); // throws ConfigError
std::string_view synth_kind_name(SynthKind kind);

struct BoxOrigin {
    int x = 0;
    int y = 0;
    int size = 0;
};

// Top-left corner of the moving_box square in frame `index`: it moves two
// pixels right per frame and wraps before leaving the picture.
BoxOrigin moving_box_origin(int index, int width, int height);

// Deterministic test content. gradient is static, moving_box is a
// checkered square translating over the gradient, noise is seeded uniform
// per frame. Dimensions must be multiples of 16 (throws ConfigError).
std::vector<Frame> synth_sequence(SynthKind kind, int width, int height, int count, std::uint64_t seed = 0);

} // namespace xprv

#endif
