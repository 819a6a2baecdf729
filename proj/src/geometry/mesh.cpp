// SPDX-License-Identifier: Apache-2.0

#include "matbench/geometry/mesh.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "matbench/core/error.hpp"
#include "matbench/core/log.hpp"

namespace matbench {

double TriangleMesh::face_area(std::size_t f) const {
    const auto &[a, b, c] = faces[f];
    return 0.5 * length(cross(vertices[b] - vertices[a], vertices[c] - vertices[a]));
}

Vec3 TriangleMesh::face_normal(std::size_t f) const {
    const auto &[a, b, c] = faces[f];
    return normalize(cross(vertices[b] - vertices[a], vertices[c] - vertices[a]));
}

void TriangleMesh::validate() const {
    for (const auto &f : faces)
        for (uint32_t i : f)
            if (i >= vertices.size()) throw ValidationError("face index out of range");
    if (!normals.empty() && normals.size() != vertices.size())
        throw ValidationError("normal count does not match vertex count");
}

std::vector<Vec3> compute_vertex_normals(const TriangleMesh &mesh) {
    std::vector<Vec3> n(mesh.vertices.size());
    for (const auto &[a, b, c] : mesh.faces) {
        // Unnormalized cross product is twice the area times the unit normal.
        const Vec3 fn = cross(mesh.vertices[b] - mesh.vertices[a], mesh.vertices[c] - mesh.vertices[a]);
        n[a] += fn;
        n[b] += fn;
        n[c] += fn;
    }
    for (auto &v : n) {
        const double len = length(v);
        v = len > 0 ? v / len : Vec3{0, 0, 1};
    }
    return n;
}

Mat4 Similarity::matrix() const {
    Mat4 m;
    for (int i = 0; i < 3; ++i) m(i, i) = scale;
    m.set_column(3, translation * scale);
    return m;
}

NormalizedMesh normalize_to_unit_sphere(const TriangleMesh &mesh) {
    if (mesh.vertices.empty()) throw ValidationError("cannot normalize an empty mesh");
    Vec3 lo = mesh.vertices.front(), hi = lo;
    for (const auto &v : mesh.vertices) {
        lo = vmin(lo, v);
        hi = vmax(hi, v);
    }
    const Vec3 center = (lo + hi) * 0.5;
    double radius = 0;
    for (const auto &v : mesh.vertices) radius = std::max(radius, length(v - center));
    if (!(radius > 0)) throw ValidationError("all mesh vertices coincide");

    NormalizedMesh out{mesh, {1.0 / radius, -center}};
    double max_norm = 0;
    for (auto &v : out.mesh.vertices) {
        v = out.transform.apply(v);
        max_norm = std::max(max_norm, length(v));
    }
    // Rounding can leave the farthest vertex a few ulps off unit length.
    if (max_norm != 1.0)
        for (auto &v : out.mesh.vertices)
            if (length(v) == max_norm) v = v / max_norm;
    return out;
}

// ---------------------------------------------------------------------------
// Loading

namespace {

void finish_mesh(TriangleMesh &mesh, const std::filesystem::path &path) {
    mesh.validate();
    std::vector<Face> kept;
    kept.reserve(mesh.faces.size());
    double diag2 = 0;
    if (!mesh.vertices.empty()) {
        Vec3 lo = mesh.vertices.front(), hi = lo;
        for (const auto &v : mesh.vertices) {
            lo = vmin(lo, v);
            hi = vmax(hi, v);
        }
        diag2 = length_squared(hi - lo);
    }
    for (std::size_t f = 0; f < mesh.faces.size(); ++f)
        if (mesh.face_area(f) > 1e-12 * diag2) kept.push_back(mesh.faces[f]);
    if (kept.size() != mesh.faces.size())
        log::warn("{}: dropped {} zero-area faces", path.string(), mesh.faces.size() - kept.size());
    mesh.faces = std::move(kept);
    if (mesh.faces.empty()) throw ValidationError("mesh has no usable faces: " + path.string());

    std::map<std::pair<uint32_t, uint32_t>, int> edge_use;
    for (const auto &f : mesh.faces)
        for (int e = 0; e < 3; ++e) {
            const uint32_t a = f[e], b = f[(e + 1) % 3];
            ++edge_use[{std::min(a, b), std::max(a, b)}];
        }
    std::size_t non_manifold = 0;
    for (const auto &[edge, count] : edge_use)
        if (count > 2) ++non_manifold;
    if (non_manifold > 0) log::warn("{}: {} non-manifold edges", path.string(), non_manifold);

    if (mesh.normals.empty()) {
        mesh.normals = compute_vertex_normals(mesh);
    } else {
        for (auto &n : mesh.normals) {
            const double len = length(n);
            n = len > 0 ? n / len : Vec3{0, 0, 1};
        }
    }
}

long parse_obj_index(const std::string &token, std::size_t count, const std::filesystem::path &path) {
    if (token.empty()) return -1;
    long i = 0;
    try {
        i = std::stol(token);
    } catch (const std::exception &) {
        throw ValidationError("bad OBJ index '" + token + "' in " + path.string());
    }
    if (i < 0) i += static_cast<long>(count);
    else i -= 1;
    if (i < 0 || static_cast<std::size_t>(i) >= count)
        throw ValidationError("OBJ index out of range in " + path.string());
    return i;
}

TriangleMesh load_obj(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw RuntimeError("cannot open " + path.string());
    std::vector<Vec3> positions, normals;
    TriangleMesh mesh;
    std::map<std::pair<long, long>, uint32_t> corner_index;
    bool any_normals = false;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            Vec3 p;
            if (!(ls >> p.x >> p.y >> p.z)) throw ValidationError("bad OBJ vertex in " + path.string());
            positions.push_back(p);
        } else if (tag == "vn") {
            Vec3 n;
            if (!(ls >> n.x >> n.y >> n.z)) throw ValidationError("bad OBJ normal in " + path.string());
            normals.push_back(n);
        } else if (tag == "f") {
            std::vector<uint32_t> poly;
            std::string corner;
            while (ls >> corner) {
                const auto s1 = corner.find('/');
                const std::string vs = corner.substr(0, s1);
                std::string ns;
                if (s1 != std::string::npos) {
                    const auto s2 = corner.find('/', s1 + 1);
                    if (s2 != std::string::npos) ns = corner.substr(s2 + 1);
                }
                const long vi = parse_obj_index(vs, positions.size(), path);
                const long ni = parse_obj_index(ns, normals.size(), path);
                any_normals = any_normals || ni >= 0;
                const auto key = std::make_pair(vi, ni);
                auto it = corner_index.find(key);
                if (it == corner_index.end()) {
                    it = corner_index.emplace(key, static_cast<uint32_t>(mesh.vertices.size())).first;
                    mesh.vertices.push_back(positions[vi]);
                    mesh.normals.push_back(ni >= 0 ? normals[ni] : Vec3{});
                }
                poly.push_back(it->second);
            }
            if (poly.size() < 3) throw ValidationError("OBJ face with fewer than 3 vertices in " + path.string());
            for (std::size_t k = 1; k + 1 < poly.size(); ++k) mesh.faces.push_back({poly[0], poly[k], poly[k + 1]});
        }
    }
    if (!any_normals) {
        mesh.normals.clear();
    } else {
        // Corners without an explicit normal get the geometric average.
        const auto computed = compute_vertex_normals(mesh);
        for (std::size_t i = 0; i < mesh.normals.size(); ++i)
            if (length_squared(mesh.normals[i]) == 0) mesh.normals[i] = computed[i];
    }
    return mesh;
}

}  // namespace

TriangleMesh load_ply(const std::filesystem::path &path);

TriangleMesh load_mesh(const std::filesystem::path &path) {
    if (!std::filesystem::exists(path)) throw RuntimeError("mesh not found: " + path.string());
    auto ext = path.extension().string();
    for (auto &c : ext) c = static_cast<char>(std::tolower(c));
    TriangleMesh mesh;
    if (ext == ".obj")
        mesh = load_obj(path);
    else if (ext == ".ply")
        mesh = load_ply(path);
    else
        throw ValidationError("unsupported mesh format: " + path.string());
    finish_mesh(mesh, path);
    return mesh;
}

void write_obj(const std::filesystem::path &path, const TriangleMesh &mesh) {
    std::ofstream out(path);
    if (!out) throw RuntimeError("cannot write " + path.string());
    out << std::setprecision(17);
    for (const auto &v : mesh.vertices) out << "v " << v.x << ' ' << v.y << ' ' << v.z << '\n';
    for (const auto &n : mesh.normals) out << "vn " << n.x << ' ' << n.y << ' ' << n.z << '\n';
    const bool with_normals = !mesh.normals.empty();
    for (const auto &f : mesh.faces) {
        out << 'f';
        for (uint32_t i : f) {
            out << ' ' << i + 1;
            if (with_normals) out << "//" << i + 1;
        }
        out << '\n';
    }
}

}  // namespace matbench
