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

#include "xprv/io.hpp"

#include "xprv/errors.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>

namespace xprv {

namespace {

int parse_int(std::string_view s, const char* what)
{
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw FormatError(std::string("Y4M: malformed ") + what + " '" + std::string(s) + "'");
    return v;
}

void copy_plane_in(Plane& plane, const std::uint8_t* src)
{
    std::memcpy(plane.samples.data(), src, plane.samples.size());
}

void append_plane(std::vector<std::uint8_t>& out, const Plane& plane)
{
    out.insert(out.end(), plane.samples.begin(), plane.samples.end());
}

Frame frame_from_bytes(const std::uint8_t* p, int width, int height)
{
    Frame f(width, height);
    copy_plane_in(f.y, p);
    p += f.y.samples.size();
    copy_plane_in(f.u, p);
    p += f.u.samples.size();
    copy_plane_in(f.v, p);
    return f;
}

} // namespace

Video parse_y4m(std::span<const std::uint8_t> bytes)
{
    const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
    const std::size_t eol = text.find('\n');
    if (eol == std::string_view::npos)
        throw FormatError("Y4M: missing header line");
    const std::string_view header = text.substr(0, eol);

    Video video;
    bool have_w = false, have_h = false, first = true;
    std::size_t pos = 0;
    while (pos <= header.size()) {
        std::size_t end = header.find(' ', pos);
        if (end == std::string_view::npos)
            end = header.size();
        const std::string_view tok = header.substr(pos, end - pos);
        pos = end + 1;
        if (tok.empty())
            continue;
        if (first) {
            if (tok != "YUV4MPEG2")
                throw FormatError("Y4M: bad signature");
            first = false;
            continue;
        }
        const char key = tok[0];
        const std::string_view val = tok.substr(1);
        switch (key) {
        case 'W':
            video.info.width = parse_int(val, "width");
            have_w = true;
            break;
        case 'H':
            video.info.height = parse_int(val, "height");
            have_h = true;
            break;
        case 'F': {
            const std::size_t colon = val.find(':');
            if (colon == std::string_view::npos)
                throw FormatError("Y4M: malformed frame rate");
            video.info.fps_num = parse_int(val.substr(0, colon), "frame rate");
            video.info.fps_den = parse_int(val.substr(colon + 1), "frame rate");
            if (video.info.fps_num <= 0 || video.info.fps_den <= 0)
                throw FormatError("Y4M: frame rate must be positive");
            break;
        }
        case 'C':
            if (val != "420" && val != "420jpeg" && val != "420paldv" && val != "420mpeg2")
                throw FormatError("Y4M: unsupported colour format C" + std::string(val) + " (4:2:0 only)");
            break;
        case 'I':
            if (val != "p" && val != "?")
                video.warnings.push_back("interlacing mode I" + std::string(val) + " ignored");
            break;
        default:
            video.warnings.push_back("header parameter " + std::string(tok) + " ignored");
            break;
        }
    }
    if (first)
        throw FormatError("Y4M: bad signature");
    if (!have_w || !have_h)
        throw FormatError("Y4M: header lacks width or height");
    const int w = video.info.width, h = video.info.height;
    if (w <= 0 || h <= 0 || w % 2 != 0 || h % 2 != 0)
        throw FormatError("Y4M: dimensions must be positive and even for 4:2:0");

    const std::size_t frame_bytes = Frame::byte_size(w, h);
    std::size_t off = eol + 1;
    while (off < bytes.size()) {
        const std::size_t line_end = text.find('\n', off);
        if (line_end == std::string_view::npos)
            throw FormatError("Y4M: truncated frame header");
        const std::string_view line = text.substr(off, line_end - off);
        if (line.substr(0, 5) != "FRAME")
            throw FormatError("Y4M: expected FRAME marker");
        off = line_end + 1;
        if (bytes.size() - off < frame_bytes)
            throw FormatError("Y4M: truncated frame " + std::to_string(video.frames.size()));
        video.frames.push_back(frame_from_bytes(bytes.data() + off, w, h));
        off += frame_bytes;
    }
    return video;
}

std::vector<std::uint8_t> format_y4m(const VideoInfo& info, std::span<const Frame> frames)
{
    const std::string header = "YUV4MPEG2 W" + std::to_string(info.width) + " H" + std::to_string(info.height) +
                               " F" + std::to_string(info.fps_num) + ":" + std::to_string(info.fps_den) +
                               " Ip A1:1 C420jpeg\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + frames.size() * (6 + Frame::byte_size(info.width, info.height)));
    static constexpr std::string_view marker = "FRAME\n";
    for (const Frame& f : frames) {
        if (f.width() != info.width || f.height() != info.height)
            throw std::invalid_argument("frame size does not match Y4M header");
        out.insert(out.end(), marker.begin(), marker.end());
        append_plane(out, f.y);
        append_plane(out, f.u);
        append_plane(out, f.v);
    }
    return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path.string() + "' for reading");
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
        throw IoError("error reading '" + path.string() + "'");
    return data;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError("error writing '" + path.string() + "'");
}

Video read_y4m(const std::filesystem::path& path)
{
    return parse_y4m(read_file(path));
}

void write_y4m(const std::filesystem::path& path, const VideoInfo& info, std::span<const Frame> frames)
{
    write_file(path, format_y4m(info, frames));
}

std::vector<Frame> parse_raw_420(std::span<const std::uint8_t> bytes, int width, int height)
{
    if (width <= 0 || height <= 0 || width % 2 != 0 || height % 2 != 0)
        throw FormatError("raw 4:2:0 dimensions must be positive and even");
    const std::size_t frame_bytes = Frame::byte_size(width, height);
    if (bytes.size() % frame_bytes != 0)
        throw FormatError("raw file size " + std::to_string(bytes.size()) + " is not a multiple of the frame size " +
                          std::to_string(frame_bytes));
    std::vector<Frame> frames;
    frames.reserve(bytes.size() / frame_bytes);
    for (std::size_t off = 0; off < bytes.size(); off += frame_bytes)
        frames.push_back(frame_from_bytes(bytes.data() + off, width, height));
    return frames;
}

std::vector<Frame> read_raw_420(const std::filesystem::path& path, int width, int height)
{
    return parse_raw_420(read_file(path), width, height);
}

void write_raw_420(const std::filesystem::path& path, std::span<const Frame> frames)
{
    std::vector<std::uint8_t> out;
    for (const Frame& f : frames) {
        append_plane(out, f.y);
        append_plane(out, f.u);
        append_plane(out, f.v);
    }
    write_file(path, out);
}

} // namespace xprv
