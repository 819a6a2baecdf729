// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "matbench/core/math.hpp"

namespace matbench {

using Face = std::array<uint32_t, 3>;

/// Indexed triangle mesh. `normals` is either empty or one unit normal per vertex.
struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<Vec3> normals;
    std::vector<Face> faces;

    bool empty() const { return faces.empty(); }
    double face_area(std::size_t f) const;
    Vec3 face_normal(std::size_t f) const;
    /// Throws ValidationError on out-of-range indices or bad normal count.
    void validate() const;
};

/// Loads an OBJ or PLY (ASCII or binary) mesh. Polygons are fan-triangulated;
/// missing normals are computed by area-weighted averaging of face normals.
/// Zero-area faces are dropped and non-manifold edges are reported as warnings.
TriangleMesh load_mesh(const std::filesystem::path &path);

/// Writes positions, normals (when present) and faces as OBJ.
void write_obj(const std::filesystem::path &path, const TriangleMesh &mesh);

/// Area-weighted vertex normals from face geometry.
std::vector<Vec3> compute_vertex_normals(const TriangleMesh &mesh);

/// p' = scale * (p + translation).
struct Similarity {
    double scale = 1.0;
    Vec3 translation;

    Vec3 apply(const Vec3 &p) const { return (p + translation) * scale; }
    Mat4 matrix() const;
};

struct NormalizedMesh {
    TriangleMesh mesh;
    Similarity transform;
};

/// Centers the vertex bounding box at the origin and scales uniformly so the
/// farthest vertex lies at distance exactly 1.
NormalizedMesh normalize_to_unit_sphere(const TriangleMesh &mesh);

}  // namespace matbench
