// SPDX-License-Identifier: Apache-2.0

#include "matbench/scene/scene.hpp"

#include "matbench/core/error.hpp"
#include "matbench/geometry/primitives.hpp"

namespace matbench {

namespace {

constexpr std::string_view kBuiltinPrefix = "builtin:";

Rgb to_rgb(const std::vector<double> &v, std::string_view key) {
    if (v.size() == 1) return Rgb(v[0]);
    if (v.size() != 3) throw ValidationError("'" + std::string(key) + "' needs 1 or 3 values");
    return {v[0], v[1], v[2]};
}

}  // namespace

std::filesystem::path resolve_path(const std::string &path, const std::filesystem::path &base_dir) {
    if (path.rfind(kBuiltinPrefix, 0) == 0 || path == "constant") return path;
    const std::filesystem::path p(path);
    return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
}

std::shared_ptr<const IorTable> load_ior_for(MaterialFamily family, const std::filesystem::path &path) {
    IorTable table = load_ior_table(path);
    const auto want = ior_family_for(family);
    if (want && *want != table.family() && *want != IorFamily::conductor && table.family() != IorFamily::conductor)
        table = IorTable(table.material_id(), *want, table.samples());
    return std::make_shared<const IorTable>(std::move(table));
}

SceneDesc parse_scene_desc(const Config &cfg, const std::filesystem::path &base_dir) {
    cfg.check_keys("", {"seed", "mesh", "envmap", "envmap_radiance"});
    cfg.check_keys("material", {"family", "ior", "alpha", "reflectance", "pigment"});
    cfg.check_keys("cameras", {"train", "test", "radius", "fov_x", "width", "height"});

    SceneDesc d;
    d.seed = cfg.get_uint64("seed", 0);
    d.mesh = cfg.get_string("mesh", d.mesh);
    d.envmap = cfg.get_string("envmap", d.envmap);
    if (cfg.has("envmap_radiance")) d.envmap_radiance = to_rgb(cfg.get_array("envmap_radiance"), "envmap_radiance");

    const auto family_name = cfg.get_string("material.family");
    const auto family = material_family_from_string(family_name);
    if (!family) throw ValidationError("unknown material family '" + family_name + "'");
    std::shared_ptr<const IorTable> ior;
    if (cfg.has("material.ior")) {
        d.ior_path = cfg.get_string("material.ior");
        ior = load_ior_for(*family, resolve_path(d.ior_path, base_dir));
    }
    MaterialSpec m;
    m.family = *family;
    m.ior = ior;
    if (cfg.has("material.alpha")) m.alpha = cfg.get_double("material.alpha");
    if (cfg.has("material.reflectance")) m.diffuse_reflectance = cfg.get_double("material.reflectance");
    if (cfg.has("material.pigment")) m.pigment_albedo = to_rgb(cfg.get_array("material.pigment"), "material.pigment");
    switch (m.family) {
        case MaterialFamily::diffuse: d.material = MaterialSpec::diffuse(m.diffuse_reflectance.value_or(-1)); break;
        default:
            m.validate();
            if (m.family == MaterialFamily::conductor) d.material = MaterialSpec::conductor(m.ior);
            if (m.family == MaterialFamily::rough_conductor) d.material = MaterialSpec::rough_conductor(m.ior, *m.alpha);
            if (m.family == MaterialFamily::dielectric) d.material = MaterialSpec::dielectric(m.ior);
            if (m.family == MaterialFamily::rough_dielectric) d.material = MaterialSpec::rough_dielectric(m.ior, *m.alpha);
            if (m.family == MaterialFamily::plastic) d.material = MaterialSpec::plastic(m.ior, *m.pigment_albedo);
            if (m.family == MaterialFamily::rough_plastic)
                d.material = MaterialSpec::rough_plastic(m.ior, *m.alpha, *m.pigment_albedo);
    }
    if (m.family == MaterialFamily::diffuse) m.validate();

    d.cameras.n_train = static_cast<int>(cfg.get_int("cameras.train", d.cameras.n_train));
    d.cameras.n_test = static_cast<int>(cfg.get_int("cameras.test", d.cameras.n_test));
    d.cameras.radius = cfg.get_double("cameras.radius", d.cameras.radius);
    d.cameras.fov_x = cfg.get_double("cameras.fov_x", d.cameras.fov_x);
    d.cameras.width = static_cast<int>(cfg.get_int("cameras.width", d.cameras.width));
    d.cameras.height = static_cast<int>(cfg.get_int("cameras.height", d.cameras.height));
    d.cameras.build();  // validates
    return d;
}

SceneDesc load_scene_desc(const std::filesystem::path &path) {
    return parse_scene_desc(load_config(path), path.parent_path());
}

Config to_config(const SceneDesc &d) {
    Config c;
    c.set_number("seed", std::to_string(d.seed));
    c.set_string("mesh", d.mesh);
    c.set_string("envmap", d.envmap);
    if (d.envmap == "constant") c.set_array("envmap_radiance", {d.envmap_radiance.r, d.envmap_radiance.g, d.envmap_radiance.b});
    const auto &m = d.material;
    c.set_string("material.family", std::string(to_string(m.family)));
    if (m.ior) c.set_string("material.ior", d.ior_path);
    if (m.alpha) c.set_number("material.alpha", *m.alpha);
    if (m.diffuse_reflectance) c.set_number("material.reflectance", *m.diffuse_reflectance);
    if (m.pigment_albedo) c.set_array("material.pigment", {m.pigment_albedo->r, m.pigment_albedo->g, m.pigment_albedo->b});
    c.set_int("cameras.train", d.cameras.n_train);
    c.set_int("cameras.test", d.cameras.n_test);
    c.set_number("cameras.radius", d.cameras.radius);
    c.set_number("cameras.fov_x", d.cameras.fov_x);
    c.set_int("cameras.width", d.cameras.width);
    c.set_int("cameras.height", d.cameras.height);
    return c;
}

TriangleMesh load_shape(const std::string &mesh, const std::filesystem::path &base_dir) {
    if (mesh.rfind(kBuiltinPrefix, 0) == 0) return make_builtin_shape(std::string_view(mesh).substr(kBuiltinPrefix.size()));
    return load_mesh(resolve_path(mesh, base_dir));
}

Scene make_scene(TriangleMesh mesh, MaterialSpec material, EnvMap env) {
    material.validate();
    mesh.validate();
    Scene s;
    auto shared = std::make_shared<const TriangleMesh>(std::move(mesh));
    s.mesh = shared;
    s.bvh = std::make_shared<const Bvh>(shared);
    s.env = std::make_shared<const EnvMap>(std::move(env));
    s.material = std::move(material);
    return s;
}

Scene load_scene(const SceneDesc &desc, const std::filesystem::path &base_dir) {
    auto normalized = normalize_to_unit_sphere(load_shape(desc.mesh, base_dir));
    EnvMap env = desc.envmap == "constant" ? EnvMap::constant(desc.envmap_radiance)
                                           : load_envmap(resolve_path(desc.envmap, base_dir));
    Scene s = make_scene(std::move(normalized.mesh), desc.material, std::move(env));
    s.normalization = normalized.transform;
    return s;
}

}  // namespace matbench
