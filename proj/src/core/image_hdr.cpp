// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include "matbench/core/error.hpp"
#include "matbench/core/image.hpp"

namespace matbench {

namespace {

void rgbe_to_float(const uint8_t *rgbe, float *out) {
    if (rgbe[3] == 0) {
        out[0] = out[1] = out[2] = 0.0f;
        return;
    }
    const float f = std::ldexp(1.0f, static_cast<int>(rgbe[3]) - (128 + 8));
    out[0] = (rgbe[0] + 0.5f) * f;
    out[1] = (rgbe[1] + 0.5f) * f;
    out[2] = (rgbe[2] + 0.5f) * f;
}

void float_to_rgbe(const float *in, uint8_t *rgbe) {
    const float v = std::max(in[0], std::max(in[1], in[2]));
    if (v < 1e-32f) {
        rgbe[0] = rgbe[1] = rgbe[2] = rgbe[3] = 0;
        return;
    }
    int e = 0;
    const float scale = std::frexp(v, &e) * 256.0f / v;
    for (int c = 0; c < 3; ++c) rgbe[c] = static_cast<uint8_t>(std::max(0.0f, in[c]) * scale);
    rgbe[3] = static_cast<uint8_t>(e + 128);
}

// Reads one scanline in either flat or new-style RLE encoding.
void read_scanline(std::istream &in, int width, std::vector<uint8_t> &line) {
    line.assign(static_cast<std::size_t>(width) * 4, 0);
    uint8_t head[4];
    if (!in.read(reinterpret_cast<char *>(head), 4)) throw ValidationError("truncated HDR scanline");
    const bool rle = width >= 8 && width < 0x8000 && head[0] == 2 && head[1] == 2 && (head[2] & 0x80) == 0;
    if (!rle) {
        std::copy(head, head + 4, line.begin());
        if (width > 1 && !in.read(reinterpret_cast<char *>(line.data() + 4), (width - 1) * 4))
            throw ValidationError("truncated HDR scanline");
        return;
    }
    if (((head[2] << 8) | head[3]) != width) throw ValidationError("HDR scanline width mismatch");
    for (int c = 0; c < 4; ++c) {
        int x = 0;
        while (x < width) {
            int count = in.get();
            if (count == EOF) throw ValidationError("truncated HDR RLE data");
            if (count > 128) {
                count -= 128;
                const int value = in.get();
                if (value == EOF || x + count > width) throw ValidationError("bad HDR RLE run");
                for (int i = 0; i < count; ++i) line[(x++) * 4 + c] = static_cast<uint8_t>(value);
            } else {
                if (count == 0 || x + count > width) throw ValidationError("bad HDR RLE dump");
                for (int i = 0; i < count; ++i) {
                    const int value = in.get();
                    if (value == EOF) throw ValidationError("truncated HDR RLE data");
                    line[(x++) * 4 + c] = static_cast<uint8_t>(value);
                }
            }
        }
    }
}

}  // namespace

Image read_hdr(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw RuntimeError("cannot open " + path.string());
    std::string line;
    std::getline(in, line);
    if (line.rfind("#?", 0) != 0) throw ValidationError("not a Radiance HDR file: " + path.string());
    bool rgbe = false;
    while (std::getline(in, line) && !line.empty()) {
        if (line == "FORMAT=32-bit_rle_rgbe") rgbe = true;
        if (line.rfind("FORMAT=", 0) == 0 && !rgbe) throw ValidationError("unsupported HDR format " + line);
    }
    std::getline(in, line);
    std::istringstream res(line);
    std::string ya, xa;
    int height = 0, width = 0;
    res >> ya >> height >> xa >> width;
    if (ya != "-Y" || xa != "+X" || width <= 0 || height <= 0)
        throw ValidationError("unsupported HDR orientation line: " + line);

    Image img(width, height, 3);
    std::vector<uint8_t> scan;
    for (int y = 0; y < height; ++y) {
        read_scanline(in, width, scan);
        for (int x = 0; x < width; ++x) rgbe_to_float(&scan[x * 4], &img.pixels[(static_cast<std::size_t>(y) * width + x) * 3]);
    }
    return img;
}

void write_hdr(const std::filesystem::path &path, const Image &img) {
    if (img.channels != 3) throw ValidationError("write_hdr expects an RGB image");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RuntimeError("cannot write " + path.string());
    out << "#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n-Y " << img.height << " +X " << img.width << "\n";
    std::vector<uint8_t> row(static_cast<std::size_t>(img.width) * 4);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x)
            float_to_rgbe(&img.pixels[(static_cast<std::size_t>(y) * img.width + x) * 3], &row[x * 4]);
        out.write(reinterpret_cast<const char *>(row.data()), static_cast<std::streamsize>(row.size()));
    }
}

Image read_image(const std::filesystem::path &path) {
    auto ext = path.extension().string();
    for (auto &c : ext) c = static_cast<char>(std::tolower(c));
    if (ext == ".png") return read_png(path);
    if (ext == ".exr") return read_exr(path);
    if (ext == ".hdr") return read_hdr(path);
    throw ValidationError("unsupported image format: " + path.string());
}

}  // namespace matbench
