// SPDX-License-Identifier: Apache-2.0

#include <ImfChannelList.h>
#include <ImfFrameBuffer.h>
#include <ImfHeader.h>
#include <ImfInputFile.h>
#include <ImfOutputFile.h>

#include <string>

#include "matbench/core/error.hpp"
#include "matbench/core/image.hpp"

namespace matbench {

void write_exr(const std::filesystem::path &path, const Image &img) {
    if (img.channels != 1 && img.channels != 3) throw ValidationError("EXR output needs 1 or 3 channels");
    try {
        Imf::Header header(img.width, img.height);
        header.compression() = Imf::NO_COMPRESSION;
        const char *names1[] = {"Y"};
        const char *names3[] = {"R", "G", "B"};
        const char **names = img.channels == 1 ? names1 : names3;
        Imf::FrameBuffer fb;
        const std::size_t xs = sizeof(float) * img.channels;
        const std::size_t ys = xs * img.width;
        for (int c = 0; c < img.channels; ++c) {
            header.channels().insert(names[c], Imf::Channel(Imf::FLOAT));
            fb.insert(names[c], Imf::Slice(Imf::FLOAT, (char *)(img.pixels.data() + c), xs, ys));
        }
        Imf::OutputFile file(path.c_str(), header);
        file.setFrameBuffer(fb);
        file.writePixels(img.height);
    } catch (const std::exception &e) {
        throw RuntimeError("cannot write EXR " + path.string() + ": " + e.what());
    }
}

Image read_exr(const std::filesystem::path &path) {
    if (!std::filesystem::exists(path)) throw RuntimeError("cannot open " + path.string());
    try {
        Imf::InputFile file(path.c_str());
        const Imath::Box2i dw = file.header().dataWindow();
        const int width = dw.max.x - dw.min.x + 1;
        const int height = dw.max.y - dw.min.y + 1;
        const Imf::ChannelList &chans = file.header().channels();
        std::vector<std::string> names;
        if (chans.findChannel("R") && chans.findChannel("G") && chans.findChannel("B")) {
            names = {"R", "G", "B"};
        } else {
            for (const char *n : {"Y", "Z", "R", "depth"})
                if (chans.findChannel(n)) {
                    names = {n};
                    break;
                }
        }
        if (names.empty()) throw ValidationError("EXR has no usable channels: " + path.string());

        Image img(width, height, static_cast<int>(names.size()));
        Imf::FrameBuffer fb;
        const std::size_t xs = sizeof(float) * img.channels;
        const std::size_t ys = xs * width;
        char *base = reinterpret_cast<char *>(img.pixels.data()) -
                     (static_cast<std::ptrdiff_t>(dw.min.x) * xs + static_cast<std::ptrdiff_t>(dw.min.y) * ys);
        for (std::size_t c = 0; c < names.size(); ++c)
            fb.insert(names[c], Imf::Slice(Imf::FLOAT, base + c * sizeof(float), xs, ys, 1, 1, 0.0));
        file.setFrameBuffer(fb);
        file.readPixels(dw.min.y, dw.max.y);
        return img;
    } catch (const ValidationError &) {
        throw;
    } catch (const std::exception &e) {
        throw ValidationError("cannot read EXR " + path.string() + ": " + e.what());
    }
}

}  // namespace matbench
