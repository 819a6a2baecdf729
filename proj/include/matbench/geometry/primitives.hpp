// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "matbench/geometry/mesh.hpp"

namespace matbench {

/// Subdivided icosahedron with vertices projected onto the sphere and radial
/// normals. 20 * 4^subdivisions faces.
TriangleMesh make_icosphere(int subdivisions, double radius = 1.0);

/// Axis-aligned box with outward flat normals (4 vertices per side).
TriangleMesh make_box(const Vec3 &lo, const Vec3 &hi);

/// Builtin shape by name: "sphere", "cube". Throws ValidationError otherwise.
TriangleMesh make_builtin_shape(std::string_view name);

}  // namespace matbench
