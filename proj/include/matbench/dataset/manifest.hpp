// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "matbench/materials/bsdf.hpp"
#include "matbench/spectra/ior.hpp"

namespace matbench {

inline constexpr double kMinAlpha = 0.1;
inline constexpr double kMaxAlpha = 0.5;
inline constexpr double kMinPigment = 0.2;
inline constexpr double kMaxPigment = 0.8;

/// One scene of a generated set.
struct SceneAssignment {
    int index = 0;
    std::string name;  // scene_<index>, zero padded to 4 digits
    MaterialFamily family = MaterialFamily::diffuse;
    std::string material_id;  // empty for diffuse
    std::optional<double> alpha;
    std::optional<double> reflectance;
    std::optional<Rgb> pigment;
    std::string shape;
    std::string envmap;
    uint64_t seed = 0;
};

struct DatasetManifest {
    uint64_t seed = 0;
    std::vector<SceneAssignment> scenes;
    std::map<MaterialFamily, int> family_counts;
};

/// Assigns a family, material, shape and environment to each of `total`
/// scenes. Families are balanced per block of seven consecutive scenes, and
/// every draw is keyed by (seed, scene index), so growing `total` leaves
/// earlier scenes unchanged. Shapes are used round-robin.
DatasetManifest generate_scene_set(const std::vector<std::string> &shapes, const MaterialDatabase &db,
                                   const std::vector<std::string> &envmaps, int total, uint64_t seed);

/// Material for an assignment, looked up in `db`.
MaterialSpec material_for(const SceneAssignment &scene, const MaterialDatabase &db);

std::string scene_name(int index);

}  // namespace matbench
