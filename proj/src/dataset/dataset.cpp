// SPDX-License-Identifier: Apache-2.0

#include "matbench/dataset/dataset.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>

#include "json.hpp"
#include "matbench/core/error.hpp"
#include "matbench/core/log.hpp"
#include "matbench/dataset/transforms.hpp"

namespace matbench {

using nlohmann::json;

namespace {

std::vector<std::string> list_files(const std::filesystem::path &dir, const std::vector<std::string> &exts) {
    if (!std::filesystem::is_directory(dir)) throw ValidationError("not a directory: " + dir.string());
    std::vector<std::string> out;
    for (const auto &entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        auto ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        if (std::find(exts.begin(), exts.end(), ext) != exts.end()) out.push_back(entry.path().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RuntimeError("cannot write " + path.string());
    out << text;
}

json rgb_json(const Rgb &c) { return json::array({c.r, c.g, c.b}); }

}  // namespace

DatasetConfig parse_dataset_config(const Config &cfg, const std::filesystem::path &base_dir) {
    cfg.check_keys("", {"shapes", "ior", "envmaps", "total", "seed", "linear_exr"});
    cfg.check_keys("cameras", {"train", "test", "radius", "fov_x", "width", "height"});
    DatasetConfig d;
    d.base_dir = base_dir;
    d.shapes = cfg.get_string("shapes", d.shapes);
    d.ior = cfg.get_string("ior", d.ior);
    d.envmaps = cfg.get_string("envmaps", d.envmaps);
    d.total = static_cast<int>(cfg.get_int("total", d.total));
    d.seed = cfg.get_uint64("seed", d.seed);
    d.linear_exr = cfg.get_bool("linear_exr", d.linear_exr);
    d.cameras.n_train = static_cast<int>(cfg.get_int("cameras.train", d.cameras.n_train));
    d.cameras.n_test = static_cast<int>(cfg.get_int("cameras.test", d.cameras.n_test));
    d.cameras.radius = cfg.get_double("cameras.radius", d.cameras.radius);
    d.cameras.fov_x = cfg.get_double("cameras.fov_x", d.cameras.fov_x);
    d.cameras.width = static_cast<int>(cfg.get_int("cameras.width", d.cameras.width));
    d.cameras.height = static_cast<int>(cfg.get_int("cameras.height", d.cameras.height));
    d.cameras.build();
    d.render = parse_render_settings(cfg, d.render);
    if (d.total < 1) throw ValidationError("total must be >= 1");
    return d;
}

Config to_config(const DatasetConfig &d) {
    Config c;
    c.set_string("shapes", d.shapes);
    c.set_string("ior", d.ior);
    c.set_string("envmaps", d.envmaps);
    c.set_int("total", d.total);
    c.set_number("seed", std::to_string(d.seed));
    c.set_bool("linear_exr", d.linear_exr);
    c.set_int("cameras.train", d.cameras.n_train);
    c.set_int("cameras.test", d.cameras.n_test);
    c.set_number("cameras.radius", d.cameras.radius);
    c.set_number("cameras.fov_x", d.cameras.fov_x);
    c.set_int("cameras.width", d.cameras.width);
    c.set_int("cameras.height", d.cameras.height);
    write_render_settings(c, d.render);
    return c;
}

std::vector<std::string> list_shapes(const DatasetConfig &cfg) {
    if (cfg.shapes == "builtin") return {"builtin:sphere", "builtin:cube"};
    auto files = list_files(resolve_path(cfg.shapes, cfg.base_dir), {".obj", ".ply"});
    if (files.empty()) throw ValidationError("no .obj/.ply shapes in " + cfg.shapes);
    return files;
}

std::vector<std::string> list_envmaps(const DatasetConfig &cfg) {
    if (cfg.envmaps == "constant") return {"constant"};
    auto files = list_files(resolve_path(cfg.envmaps, cfg.base_dir), {".hdr", ".exr"});
    if (files.empty()) throw ValidationError("no .hdr/.exr environment maps in " + cfg.envmaps);
    return files;
}

std::string manifest_json(const DatasetManifest &m, const DatasetConfig &cfg) {
    json j;
    j["seed"] = std::to_string(m.seed);
    j["total"] = m.scenes.size();
    json counts = json::object();
    for (const auto &[family, n] : m.family_counts) counts[std::string(to_string(family))] = n;
    j["family_counts"] = counts;
    j["conventions"] = {
        {"normalization", "bounding-box center, farthest vertex at radius 1"},
        {"depth", "ray length from the camera center"},
        {"camera_radius", cfg.cameras.radius},
        {"camera_angle_x", cfg.cameras.fov_x},
        {"resolution", {cfg.cameras.width, cfg.cameras.height}},
        {"split", {{"train", cfg.cameras.n_train}, {"test", cfg.cameras.n_test}}},
        {"tonemap", "clamp to [0,1], gamma 2.2, 16-bit PNG"},
        {"alpha_range", {kMinAlpha, kMaxAlpha}},
        {"pigment_range", {kMinPigment, kMaxPigment}},
        {"diffuse_reflectance_range", {kMinDiffuseReflectance, kMaxDiffuseReflectance}},
    };
    j["render"] = {{"spp", cfg.render.spp},
                   {"max_depth", cfg.render.max_depth},
                   {"rr_start_depth", cfg.render.rr_start_depth},
                   {"wavelengths_per_path", cfg.render.wavelengths_per_path}};
    json scenes = json::array();
    for (const auto &s : m.scenes) {
        json e{{"index", s.index},
               {"name", s.name},
               {"family", std::string(to_string(s.family))},
               {"shape", s.shape},
               {"envmap", s.envmap},
               {"seed", std::to_string(s.seed)}};
        if (!s.material_id.empty()) e["material_id"] = s.material_id;
        if (s.alpha) e["alpha"] = *s.alpha;
        if (s.reflectance) e["reflectance"] = *s.reflectance;
        if (s.pigment) e["pigment"] = rgb_json(*s.pigment);
        scenes.push_back(e);
    }
    j["scenes"] = scenes;
    return j.dump(2) + "\n";
}

void render_scene(const SceneAssignment &a, const MaterialDatabase &db, const DatasetConfig &cfg,
                  const std::filesystem::path &dir) {
    for (const char *sub : {"train", "test", "depth", "mask"}) std::filesystem::create_directories(dir / sub);

    SceneDesc desc;
    desc.mesh = a.shape;
    desc.material = material_for(a, db);
    if (!a.material_id.empty()) desc.ior_path = std::filesystem::absolute(db.paths.at(a.material_id)).string();
    desc.envmap = a.envmap;
    desc.cameras = cfg.cameras;
    desc.seed = a.seed;
    const Scene scene = load_scene(desc, cfg.base_dir);

    write_obj(dir / "mesh.obj", *scene.mesh);
    Config scene_cfg = to_config(desc);
    write_render_settings(scene_cfg, cfg.render);
    write_text(dir / "scene.toml", scene_cfg.to_string());

    const auto &m = desc.material;
    json mat{{"family", std::string(to_string(m.family))}, {"camera_angle_x", cfg.cameras.fov_x}};
    if (m.ior) {
        mat["material_id"] = m.ior->material_id();
        mat["ior_family"] = std::string(to_string(m.ior->family()));
        const auto rep = representative_ior(*m.ior);
        mat["ior_589nm"] = {{"eta", rep.eta}, {"k", rep.k}};
        mat["spectral"] = m.is_spectral();
    }
    if (m.alpha) mat["alpha"] = *m.alpha;
    if (m.diffuse_reflectance) mat["reflectance"] = *m.diffuse_reflectance;
    if (m.pigment_albedo) mat["pigment"] = rgb_json(*m.pigment_albedo);
    mat["normalization"] = {{"scale", scene.normalization.scale},
                            {"translation", {scene.normalization.translation.x, scene.normalization.translation.y,
                                             scene.normalization.translation.z}}};
    mat["envmap"] = a.envmap;
    write_text(dir / "material.json", mat.dump(2) + "\n");

    const CameraSet cams = cfg.cameras.build();
    write_transforms(cams, dir);
    RenderSettings rs = cfg.render;
    rs.seed = a.seed;
    for (const auto &cam : cams.cameras) {
        const auto out = render_image(scene, cam, rs);
        const auto stem = fmt::format("r_{}", cam.index);
        write_radiance(dir / to_string(cam.tag) / (stem + ".png"), out, cfg.linear_exr);
        write_depth(dir / "depth" / (stem + ".exr"), out);
        write_mask(dir / "mask" / (stem + ".png"), out);
        log::debug("{}: camera {} done", a.name, cam.index);
    }
}

DatasetManifest generate_dataset(const DatasetConfig &cfg, const std::filesystem::path &out_dir, bool dry_run) {
    const MaterialDatabase db = load_material_database(resolve_path(cfg.ior, cfg.base_dir));
    const DatasetManifest manifest = generate_scene_set(list_shapes(cfg), db, list_envmaps(cfg), cfg.total, cfg.seed);
    std::filesystem::create_directories(out_dir);
    if (!dry_run) {
        for (const auto &s : manifest.scenes) {
            log::info("rendering {} ({}, {})", s.name, to_string(s.family), s.material_id);
            render_scene(s, db, cfg, out_dir / s.name);
        }
    }
    write_text(out_dir / "manifest.json", manifest_json(manifest, cfg));
    return manifest;
}

}  // namespace matbench
