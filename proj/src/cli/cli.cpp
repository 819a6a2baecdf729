// SPDX-License-Identifier: Apache-2.0

#include "matbench/cli/cli.hpp"

#include <fmt/format.h>

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "matbench/core/error.hpp"
#include "matbench/core/log.hpp"
#include "matbench/core/parallel.hpp"
#include "matbench/dataset/dataset.hpp"
#include "matbench/dataset/transforms.hpp"
#include "matbench/evaluate/protocol.hpp"
#include "matbench/render/render.hpp"
#include "matbench/spectra/ior.hpp"

namespace matbench::cli {

namespace {

struct Shared {
    uint64_t seed = 0;
    bool seed_given = false;
    int threads = 0;
    std::string output_dir = "out";
    int verbosity = 0;
};

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RuntimeError("cannot write " + path.string());
    out << text;
}

// Every run records its resolved configuration next to its outputs.
void echo_config(const Shared &shared, const std::string &command, Config cfg) {
    std::filesystem::create_directories(shared.output_dir);
    cfg.set_string("command", command);
    cfg.set_number("cli.seed", std::to_string(shared.seed));
    cfg.set_int("cli.threads", default_thread_count());
    cfg.set_string("cli.output_dir", shared.output_dir);
    write_text(std::filesystem::path(shared.output_dir) / "resolved_config.toml", cfg.to_string());
}

void cmd_render(const Shared &sh, const std::string &scene_path, std::optional<int> spp, std::optional<int> max_depth,
                const std::vector<int> &camera_ids, bool exr) {
    const SceneDesc desc = load_scene_desc(scene_path);
    const Config file_cfg = load_config(scene_path);
    RenderSettings rs = parse_render_settings(file_cfg);
    if (spp) rs.spp = *spp;
    if (max_depth) rs.max_depth = *max_depth;
    rs.seed = derive_seed(sh.seed, "scene", desc.seed);
    rs.threads = default_thread_count();
    rs.validate();

    Config echo = to_config(desc);
    write_render_settings(echo, rs);
    echo.set_string("render.scene", scene_path);
    echo.set_bool("render.linear_exr", exr);
    echo_config(sh, "render", echo);

    const Scene scene = load_scene(desc, std::filesystem::path(scene_path).parent_path());
    const CameraSet cams = desc.cameras.build();
    std::vector<int> ids = camera_ids;
    if (ids.empty())
        for (const auto &c : cams.cameras) ids.push_back(c.index);
    const std::filesystem::path out(sh.output_dir);
    for (const char *sub : {"train", "test", "depth", "mask"}) std::filesystem::create_directories(out / sub);
    write_transforms(cams, out);
    write_obj(out / "mesh.obj", *scene.mesh);
    for (int id : ids) {
        if (id < 0 || id >= static_cast<int>(cams.size()))
            throw ValidationError(fmt::format("camera index {} out of range [0, {})", id, cams.size()));
        const Camera &cam = cams.cameras[id];
        const auto result = render_image(scene, cam, rs);
        const auto stem = fmt::format("r_{}", cam.index);
        write_radiance(out / to_string(cam.tag) / (stem + ".png"), result, exr);
        write_depth(out / "depth" / (stem + ".exr"), result);
        write_mask(out / "mask" / (stem + ".png"), result);
        log::info("camera {} rendered", cam.index);
    }
}

void cmd_generate(const Shared &sh, const std::string &config_path, std::optional<int> total, std::optional<int> spp,
                  bool dry_run) {
    Config cfg = config_path.empty() ? Config{} : load_config(config_path);
    const auto base = config_path.empty() ? std::filesystem::current_path() : std::filesystem::path(config_path).parent_path();
    DatasetConfig dc = parse_dataset_config(cfg, base);
    if (sh.seed_given) dc.seed = sh.seed;
    if (total) dc.total = *total;
    if (spp) dc.render.spp = *spp;
    dc.render.threads = default_thread_count();
    dc.render.validate();
    if (dc.total < 1) throw ValidationError("total must be >= 1");
    Config echo = to_config(dc);
    echo.set_bool("generate.dry_run", dry_run);
    echo_config(sh, "generate", echo);
    const auto manifest = generate_dataset(dc, sh.output_dir, dry_run);
    for (const auto &[family, n] : manifest.family_counts) fmt::print("{:<17} {}\n", to_string(family), n);
}

void cmd_eval_mesh(const Shared &sh, const std::string &gt_path, const std::string &scene_dir,
                   const std::string &pred_path, MeshEvalParams p) {
    p.seed = sh.seed;
    Config echo;
    echo.set_string("eval.gt", gt_path);
    echo.set_string("eval.scene_dir", scene_dir);
    echo.set_string("eval.pred", pred_path);
    echo.set_int("eval.stride", p.stride);
    echo.set_number("eval.tau", p.tau);
    echo.set_int("eval.samples", static_cast<int64_t>(p.samples));
    echo.set_number("eval.outlier_threshold", p.outlier_threshold);
    echo.set_bool("eval.filter_prediction", p.filter_prediction);
    echo_config(sh, "eval-mesh", echo);

    std::vector<Camera> cameras;
    std::vector<Image> depths;
    load_scene_views(scene_dir, cameras, depths);
    const auto result = evaluate_mesh(load_mesh(gt_path), cameras, depths, load_mesh(pred_path), p);
    const auto report = mesh_report_json(result, p);
    write_text(std::filesystem::path(sh.output_dir) / "mesh_eval.json", report);
    fmt::print("chamfer {:.6g} (pred->gt {:.6g}, gt->pred {:.6g}, excluded {})\n", result.chamfer.chamfer,
               result.chamfer.mean_a_to_b, result.chamfer.mean_b_to_a, result.chamfer.excluded_count);
}

void cmd_eval_views(const Shared &sh, const std::string &gt_dir, const std::string &pred_dir) {
    Config echo;
    echo.set_string("eval.gt_dir", gt_dir);
    echo.set_string("eval.pred_dir", pred_dir);
    echo_config(sh, "eval-views", echo);
    const auto scores = evaluate_views(pred_dir, gt_dir);
    write_text(std::filesystem::path(sh.output_dir) / "view_eval.json", views_report_json(scores));
    double p = 0, s = 0;
    for (const auto &v : scores) {
        p += v.psnr;
        s += v.ssim;
    }
    fmt::print("{} images, mean PSNR {:.4f} dB, mean SSIM {:.6f}\n", scores.size(), p / scores.size(), s / scores.size());
}

void cmd_convert_colmap(const Shared &sh, const std::string &scene_dir, int width, int height) {
    Config echo;
    echo.set_string("colmap.scene_dir", scene_dir);
    echo.set_int("colmap.width", width);
    echo.set_int("colmap.height", height);
    echo_config(sh, "convert-colmap", echo);
    const auto model = transforms_to_colmap(scene_dir, width, height);
    const auto out = std::filesystem::path(sh.output_dir) / "sparse" / "0";
    write_colmap(model, out);
    fmt::print("{} images written to {}\n", model.images.size(), out.string());
}

void cmd_validate_ior(const Shared &sh, const std::vector<std::string> &paths) {
    Config echo;
    for (std::size_t i = 0; i < paths.size(); ++i) echo.set_string(fmt::format("validate.path{}", i), paths[i]);
    echo_config(sh, "validate-ior", echo);
    std::size_t count = 0;
    for (const auto &p : paths) {
        if (std::filesystem::is_directory(p)) {
            const auto db = load_material_database(p);
            for (const auto &[family, tables] : db.tables)
                for (const auto &t : tables) {
                    const auto rep = representative_ior(*t);
                    fmt::print("{:<12} {:<16} {:>3} samples  eta(589.29) {:.4f}  k {:.4f}\n", to_string(family),
                               t->material_id(), t->samples().size(), rep.eta, rep.k);
                    ++count;
                }
        } else {
            const auto t = load_ior_table(p);
            const auto rep = representative_ior(t);
            fmt::print("{:<12} {:<16} {:>3} samples  eta(589.29) {:.4f}  k {:.4f}\n", to_string(t.family()),
                       t.material_id(), t.samples().size(), rep.eta, rep.k);
            ++count;
        }
    }
    fmt::print("{} tables valid\n", count);
}

}  // namespace

int run(const std::vector<std::string> &args) {
    CLI::App app{"matbench: spectral material benchmark rendering and evaluation"};
    app.require_subcommand(1);
    app.fallthrough();
    Shared sh;
    int threads = 0;
    auto *seed_opt = app.add_option("--seed", sh.seed, "Root random seed")->capture_default_str();
    app.add_option("--threads", threads, "Worker threads (default: MATBENCH_THREADS or all cores)");
    app.add_option("--output-dir", sh.output_dir, "Directory for all outputs")->capture_default_str();
    app.add_flag("-v,--verbose", sh.verbosity, "Increase log verbosity (repeatable)");

    auto *render = app.add_subcommand("render", "Render the cameras of a scene description");
    std::string scene_path;
    std::optional<int> spp, max_depth, total;
    std::vector<int> camera_ids;
    bool exr = false;
    render->add_option("--scene", scene_path, "Scene description file")->required()->check(CLI::ExistingFile);
    render->add_option("--spp", spp, "Samples per pixel");
    render->add_option("--max-depth", max_depth, "Maximum scattering events");
    render->add_option("--camera", camera_ids, "Camera indices to render (default: all)");
    render->add_flag("--exr", exr, "Also write linear EXR radiance");

    auto *generate = app.add_subcommand("generate", "Generate and render a balanced scene set");
    std::string gen_config;
    bool dry_run = false;
    generate->add_option("--config", gen_config, "Generation config file")->check(CLI::ExistingFile);
    generate->add_option("--total", total, "Number of scenes");
    generate->add_option("--spp", spp, "Samples per pixel");
    generate->add_flag("--dry-run", dry_run, "Write the manifest only");

    auto *eval_mesh = app.add_subcommand("eval-mesh", "Visible-mesh Chamfer evaluation");
    std::string gt_path, scene_dir, pred_path;
    MeshEvalParams mp;
    bool no_filter = false;
    eval_mesh->add_option("--gt", gt_path, "Ground-truth mesh (scene frame)")->required()->check(CLI::ExistingFile);
    eval_mesh->add_option("--scene-dir", scene_dir, "Scene directory with transforms and depth")
        ->required()
        ->check(CLI::ExistingDirectory);
    eval_mesh->add_option("--pred", pred_path, "Reconstructed mesh")->required()->check(CLI::ExistingFile);
    eval_mesh->add_option("--stride", mp.stride, "Depth pixel stride")->capture_default_str();
    eval_mesh->add_option("--tau", mp.tau, "Visible-facet distance threshold")->capture_default_str();
    eval_mesh->add_option("--samples", mp.samples, "Surface samples per mesh")->capture_default_str();
    eval_mesh->add_option("--outlier", mp.outlier_threshold, "Chamfer outlier threshold")->capture_default_str();
    eval_mesh->add_flag("--no-filter-pred", no_filter, "Do not filter the predicted mesh by visibility");

    auto *eval_views = app.add_subcommand("eval-views", "PSNR/SSIM between two image directories");
    std::string gt_dir, pred_dir;
    eval_views->add_option("--gt-dir", gt_dir, "Reference images")->required();
    eval_views->add_option("--pred-dir", pred_dir, "Images to score")->required();

    auto *colmap = app.add_subcommand("convert-colmap", "Convert transforms files to a COLMAP text model");
    int width = 0, height = 0;
    colmap->add_option("--scene-dir", scene_dir, "Scene directory")->required()->check(CLI::ExistingDirectory);
    colmap->add_option("--width", width, "Image width (default: read from the first image)");
    colmap->add_option("--height", height, "Image height (default: read from the first image)");

    auto *validate = app.add_subcommand("validate-ior", "Validate IOR CSV files or a database directory");
    std::vector<std::string> ior_paths;
    validate->add_option("paths", ior_paths, "Files or directories")->required()->check(CLI::ExistingPath);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitValidation;
    }

    sh.seed_given = seed_opt->count() > 0;
    log::set_level(static_cast<log::Level>(std::min(3, 1 + sh.verbosity)));
    if (threads < 0) {
        log::error("--threads must be >= 0");
        return kExitValidation;
    }
    set_default_thread_count(threads);

    try {
        if (*render) cmd_render(sh, scene_path, spp, max_depth, camera_ids, exr);
        if (*generate) cmd_generate(sh, gen_config, total, spp, dry_run);
        if (*eval_mesh) {
            mp.filter_prediction = !no_filter;
            cmd_eval_mesh(sh, gt_path, scene_dir, pred_path, mp);
        }
        if (*eval_views) cmd_eval_views(sh, gt_dir, pred_dir);
        if (*colmap) cmd_convert_colmap(sh, scene_dir, width, height);
        if (*validate) cmd_validate_ior(sh, ior_paths);
    } catch (const ValidationError &e) {
        log::error("{}", e.what());
        return kExitValidation;
    } catch (const RuntimeError &e) {
        log::error("{}", e.what());
        return kExitRuntime;
    } catch (const std::filesystem::filesystem_error &e) {
        log::error("{}", e.what());
        return kExitRuntime;
    } catch (const std::exception &e) {
        log::error("{}", e.what());
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace matbench::cli
