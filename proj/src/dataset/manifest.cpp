// SPDX-License-Identifier: Apache-2.0

#include "matbench/dataset/manifest.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <numeric>

#include "matbench/core/error.hpp"
#include "matbench/core/rng.hpp"

namespace matbench {

std::string scene_name(int index) { return fmt::format("scene_{:04d}", index); }

DatasetManifest generate_scene_set(const std::vector<std::string> &shapes, const MaterialDatabase &db,
                                   const std::vector<std::string> &envmaps, int total, uint64_t seed) {
    if (shapes.empty()) throw ValidationError("scene generation needs at least one shape");
    if (envmaps.empty()) throw ValidationError("scene generation needs at least one environment map");
    if (total < 1) throw ValidationError("scene generation needs total >= 1");
    for (auto f : {IorFamily::conductor, IorFamily::dielectric, IorFamily::plastic})
        if (db.family(f).empty())
            throw ValidationError("material database has no " + std::string(to_string(f)) + " tables");

    constexpr int kFamilies = static_cast<int>(kAllFamilies.size());
    DatasetManifest manifest;
    manifest.seed = seed;
    for (auto f : kAllFamilies) manifest.family_counts[f] = 0;

    std::array<int, kFamilies> order{};
    int block = -1;
    for (int i = 0; i < total; ++i) {
        if (i / kFamilies != block) {
            block = i / kFamilies;
            const auto pattern = static_cast<uint32_t>(derive_seed(seed, "family-block", block));
            for (int k = 0; k < kFamilies; ++k)
                order[k] = static_cast<int>(permute_index(static_cast<uint32_t>(k), kFamilies, pattern));
        }
        SceneAssignment s;
        s.index = i;
        s.name = scene_name(i);
        s.family = kAllFamilies[order[i % kFamilies]];
        s.seed = derive_seed(seed, "scene", i);
        s.shape = shapes[i % shapes.size()];

        Rng rng(seed, "scene-assignment", i);
        s.envmap = envmaps[rng.uniform_index(envmaps.size())];
        if (const auto ior_family = ior_family_for(s.family)) {
            const auto &tables = db.family(*ior_family);
            s.material_id = tables[rng.uniform_index(tables.size())]->material_id();
        } else {
            s.reflectance = kMinDiffuseReflectance + (kMaxDiffuseReflectance - kMinDiffuseReflectance) * rng.uniform();
        }
        if (is_rough(s.family)) s.alpha = kMinAlpha + (kMaxAlpha - kMinAlpha) * rng.uniform();
        if (s.family == MaterialFamily::plastic || s.family == MaterialFamily::rough_plastic) {
            Rgb p;
            for (int c = 0; c < 3; ++c) p[c] = kMinPigment + (kMaxPigment - kMinPigment) * rng.uniform();
            s.pigment = p;
        }
        ++manifest.family_counts[s.family];
        manifest.scenes.push_back(std::move(s));
    }
    return manifest;
}

MaterialSpec material_for(const SceneAssignment &s, const MaterialDatabase &db) {
    std::shared_ptr<const IorTable> ior;
    if (!s.material_id.empty()) {
        ior = db.find(s.material_id);
        if (!ior) throw ValidationError("material '" + s.material_id + "' is not in the database");
    }
    switch (s.family) {
        case MaterialFamily::diffuse: return MaterialSpec::diffuse(s.reflectance.value_or(-1));
        case MaterialFamily::conductor: return MaterialSpec::conductor(ior);
        case MaterialFamily::dielectric: return MaterialSpec::dielectric(ior);
        case MaterialFamily::plastic: return MaterialSpec::plastic(ior, s.pigment.value_or(Rgb(-1)));
        case MaterialFamily::rough_conductor: return MaterialSpec::rough_conductor(ior, s.alpha.value_or(-1));
        case MaterialFamily::rough_dielectric: return MaterialSpec::rough_dielectric(ior, s.alpha.value_or(-1));
        case MaterialFamily::rough_plastic:
            return MaterialSpec::rough_plastic(ior, s.alpha.value_or(-1), s.pigment.value_or(Rgb(-1)));
    }
    throw ValidationError("unknown material family");
}

}  // namespace matbench
