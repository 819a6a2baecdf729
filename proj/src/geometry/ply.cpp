// SPDX-License-Identifier: Apache-2.0

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "matbench/core/error.hpp"
#include "matbench/geometry/mesh.hpp"

namespace matbench {

namespace {

enum class Format { ascii, binary_le, binary_be };

enum class Scalar { i8, u8, i16, u16, i32, u32, f32, f64 };

Scalar parse_scalar(const std::string &name) {
    if (name == "char" || name == "int8") return Scalar::i8;
    if (name == "uchar" || name == "uint8") return Scalar::u8;
    if (name == "short" || name == "int16") return Scalar::i16;
    if (name == "ushort" || name == "uint16") return Scalar::u16;
    if (name == "int" || name == "int32") return Scalar::i32;
    if (name == "uint" || name == "uint32") return Scalar::u32;
    if (name == "float" || name == "float32") return Scalar::f32;
    if (name == "double" || name == "float64") return Scalar::f64;
    throw ValidationError("unknown PLY scalar type '" + name + "'");
}

std::size_t scalar_size(Scalar s) {
    switch (s) {
        case Scalar::i8:
        case Scalar::u8: return 1;
        case Scalar::i16:
        case Scalar::u16: return 2;
        case Scalar::i32:
        case Scalar::u32:
        case Scalar::f32: return 4;
        case Scalar::f64: return 8;
    }
    return 0;
}

struct Property {
    std::string name;
    Scalar type = Scalar::f32;
    bool is_list = false;
    Scalar count_type = Scalar::u8;
};

struct Element {
    std::string name;
    std::size_t count = 0;
    std::vector<Property> properties;
};

class Reader {
  public:
    Reader(std::istream &in, Format format) : in_(in), format_(format) {}

    double read(Scalar type) {
        if (format_ == Format::ascii) {
            double v;
            if (!(in_ >> v)) throw ValidationError("truncated ASCII PLY body");
            return v;
        }
        unsigned char buf[8];
        const std::size_t n = scalar_size(type);
        if (!in_.read(reinterpret_cast<char *>(buf), static_cast<std::streamsize>(n)))
            throw ValidationError("truncated binary PLY body");
        const bool file_le = format_ == Format::binary_le;
        if (file_le != (std::endian::native == std::endian::little))
            for (std::size_t i = 0; i < n / 2; ++i) std::swap(buf[i], buf[n - 1 - i]);
        switch (type) {
            case Scalar::i8: return static_cast<int8_t>(buf[0]);
            case Scalar::u8: return buf[0];
            case Scalar::i16: return load<int16_t>(buf);
            case Scalar::u16: return load<uint16_t>(buf);
            case Scalar::i32: return load<int32_t>(buf);
            case Scalar::u32: return load<uint32_t>(buf);
            case Scalar::f32: return load<float>(buf);
            case Scalar::f64: return load<double>(buf);
        }
        return 0;
    }

  private:
    template <typename T>
    static double load(const unsigned char *buf) {
        T v;
        std::memcpy(&v, buf, sizeof(T));
        return static_cast<double>(v);
    }

    std::istream &in_;
    Format format_;
};

}  // namespace

TriangleMesh load_ply(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw RuntimeError("cannot open " + path.string());
    std::string line;
    std::getline(in, line);
    if (line.rfind("ply", 0) != 0) throw ValidationError("not a PLY file: " + path.string());

    Format format = Format::ascii;
    std::vector<Element> elements;
    for (;;) {
        if (!std::getline(in, line)) throw ValidationError("PLY header not terminated: " + path.string());
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "end_header") break;
        if (tag == "format") {
            std::string f;
            ls >> f;
            if (f == "ascii") format = Format::ascii;
            else if (f == "binary_little_endian") format = Format::binary_le;
            else if (f == "binary_big_endian") format = Format::binary_be;
            else throw ValidationError("unknown PLY format " + f);
        } else if (tag == "element") {
            Element e;
            ls >> e.name >> e.count;
            elements.push_back(e);
        } else if (tag == "property") {
            if (elements.empty()) throw ValidationError("PLY property before element");
            Property p;
            std::string type;
            ls >> type;
            if (type == "list") {
                std::string ct, it;
                ls >> ct >> it;
                p.is_list = true;
                p.count_type = parse_scalar(ct);
                p.type = parse_scalar(it);
            } else {
                p.type = parse_scalar(type);
            }
            ls >> p.name;
            elements.back().properties.push_back(p);
        }
    }

    TriangleMesh mesh;
    Reader reader(in, format);
    bool has_normals = false;
    for (const auto &e : elements) {
        if (e.name == "vertex") {
            int ix = -1, iy = -1, iz = -1, inx = -1, iny = -1, inz = -1;
            for (int i = 0; i < static_cast<int>(e.properties.size()); ++i) {
                const auto &n = e.properties[i].name;
                if (n == "x") ix = i;
                if (n == "y") iy = i;
                if (n == "z") iz = i;
                if (n == "nx") inx = i;
                if (n == "ny") iny = i;
                if (n == "nz") inz = i;
            }
            if (ix < 0 || iy < 0 || iz < 0) throw ValidationError("PLY vertex element lacks x/y/z");
            has_normals = inx >= 0 && iny >= 0 && inz >= 0;
            std::vector<double> values(e.properties.size());
            for (std::size_t v = 0; v < e.count; ++v) {
                for (std::size_t i = 0; i < e.properties.size(); ++i) {
                    const auto &p = e.properties[i];
                    if (p.is_list) {
                        const auto n = static_cast<std::size_t>(reader.read(p.count_type));
                        for (std::size_t k = 0; k < n; ++k) reader.read(p.type);
                    } else {
                        values[i] = reader.read(p.type);
                    }
                }
                mesh.vertices.push_back({values[ix], values[iy], values[iz]});
                if (has_normals) mesh.normals.push_back({values[inx], values[iny], values[inz]});
            }
        } else if (e.name == "face") {
            for (std::size_t f = 0; f < e.count; ++f) {
                for (const auto &p : e.properties) {
                    if (!p.is_list) {
                        reader.read(p.type);
                        continue;
                    }
                    const auto n = static_cast<std::size_t>(reader.read(p.count_type));
                    std::vector<uint32_t> poly(n);
                    for (auto &idx : poly) idx = static_cast<uint32_t>(reader.read(p.type));
                    if (p.name != "vertex_indices" && p.name != "vertex_index") continue;
                    if (n < 3) throw ValidationError("PLY face with fewer than 3 vertices");
                    for (std::size_t k = 1; k + 1 < n; ++k) mesh.faces.push_back({poly[0], poly[k], poly[k + 1]});
                }
            }
        } else {
            for (std::size_t i = 0; i < e.count; ++i)
                for (const auto &p : e.properties) {
                    if (p.is_list) {
                        const auto n = static_cast<std::size_t>(reader.read(p.count_type));
                        for (std::size_t k = 0; k < n; ++k) reader.read(p.type);
                    } else {
                        reader.read(p.type);
                    }
                }
        }
    }
    return mesh;
}

}  // namespace matbench
