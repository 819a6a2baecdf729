// SPDX-License-Identifier: Apache-2.0

#include <png.h>

#include <cmath>
#include <cstdio>
#include <memory>

#include "matbench/core/error.hpp"
#include "matbench/core/image.hpp"

namespace matbench {

namespace {

struct FileCloser {
    void operator()(std::FILE *f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path &path, const char *mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) throw RuntimeError("cannot open " + path.string());
    return f;
}

void write_png(const std::filesystem::path &path, int width, int height, int color_type, int bit_depth,
               const std::vector<png_byte> &data, std::size_t row_bytes) {
    auto file = open_file(path, "wb");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (!png || !info) throw RuntimeError("libpng initialization failed");
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw RuntimeError("libpng write failed for " + path.string());
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, width, height, bit_depth, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    // Fixed compression settings so identical pixels give identical bytes.
    png_set_compression_level(png, 6);
    png_write_info(png, info);
    for (int y = 0; y < height; ++y)
        png_write_row(png, const_cast<png_bytep>(data.data() + static_cast<std::size_t>(y) * row_bytes));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace

void write_png16_gamma(const std::filesystem::path &path, const Image &img) {
    if (img.channels != 3) throw ValidationError("write_png16_gamma expects an RGB image");
    const std::size_t row_bytes = static_cast<std::size_t>(img.width) * 3 * 2;
    std::vector<png_byte> data(row_bytes * img.height);
    std::size_t o = 0;
    for (float v : img.pixels) {
        const double c = std::clamp(static_cast<double>(v), 0.0, 1.0);
        const auto q = static_cast<uint16_t>(std::lround(std::pow(c, 1.0 / 2.2) * 65535.0));
        data[o++] = static_cast<png_byte>(q >> 8);
        data[o++] = static_cast<png_byte>(q & 0xff);
    }
    write_png(path, img.width, img.height, PNG_COLOR_TYPE_RGB, 16, data, row_bytes);
}

void write_png8(const std::filesystem::path &path, const Image &img) {
    if (img.channels != 1) throw ValidationError("write_png8 expects a single-channel image");
    std::vector<png_byte> data(img.pixels.size());
    for (std::size_t i = 0; i < data.size(); ++i)
        data[i] = static_cast<png_byte>(std::lround(std::clamp(static_cast<double>(img.pixels[i]), 0.0, 1.0) * 255.0));
    write_png(path, img.width, img.height, PNG_COLOR_TYPE_GRAY, 8, data, static_cast<std::size_t>(img.width));
}

Image read_png(const std::filesystem::path &path) {
    auto file = open_file(path, "rb");
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (!png || !info) throw RuntimeError("libpng initialization failed");
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw ValidationError("malformed PNG " + path.string());
    }
    png_init_io(png, file.get());
    png_read_info(png, info);
    const int width = static_cast<int>(png_get_image_width(png, info));
    const int height = static_cast<int>(png_get_image_height(png, info));
    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);
    const int channels = png_get_channels(png, info);
    const int depth = png_get_bit_depth(png, info);
    const std::size_t row_bytes = png_get_rowbytes(png, info);
    std::vector<png_byte> data(row_bytes * height);
    std::vector<png_bytep> rows(height);
    for (int y = 0; y < height; ++y) rows[y] = data.data() + static_cast<std::size_t>(y) * row_bytes;
    png_read_image(png, rows.data());
    png_destroy_read_struct(&png, &info, nullptr);

    Image img(width, height, channels);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        if (depth == 16)
            img.pixels[i] = static_cast<float>(((data[2 * i] << 8) | data[2 * i + 1]) / 65535.0);
        else
            img.pixels[i] = static_cast<float>(data[i] / 255.0);
    }
    return img;
}

}  // namespace matbench
