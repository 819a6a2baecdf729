// SPDX-License-Identifier: Apache-2.0

#include "matbench/render/render.hpp"

#include <algorithm>
#include <cmath>

#include "matbench/core/error.hpp"
#include "matbench/core/log.hpp"
#include "matbench/core/parallel.hpp"
#include "matbench/spectra/spectrum.hpp"

namespace matbench {

namespace {

constexpr double kRayEpsilon = 1e-4;
constexpr int kTileSize = 16;

Vec3 hit_point(const TriangleMesh &mesh, const Hit &h) {
    const auto &[a, b, c] = mesh.faces[h.face_index];
    return mesh.vertices[a] * (1.0 - h.u - h.v) + mesh.vertices[b] * h.u + mesh.vertices[c] * h.v;
}

Ray spawn(const Vec3 &p, const Vec3 &ng, const Vec3 &dir) {
    const Vec3 offset = ng * (dot(dir, ng) > 0 ? kRayEpsilon : -kRayEpsilon);
    return {p + offset, dir, 0.0};
}

}  // namespace

void RenderSettings::validate() const {
    if (spp < 1) throw ValidationError("spp must be >= 1");
    if (max_depth < 0) throw ValidationError("max_depth must be >= 0");
    if (rr_start_depth < 0) throw ValidationError("rr_start_depth must be >= 0");
    if (wavelengths_per_path < 1) throw ValidationError("wavelengths_per_path must be >= 1");
    if (threads < 0) throw ValidationError("threads must be >= 0");
}

RenderSettings parse_render_settings(const Config &cfg, RenderSettings s) {
    cfg.check_keys("render", {"spp", "max_depth", "rr_start_depth", "wavelengths_per_path"});
    s.spp = static_cast<int>(cfg.get_int("render.spp", s.spp));
    s.max_depth = static_cast<int>(cfg.get_int("render.max_depth", s.max_depth));
    s.rr_start_depth = static_cast<int>(cfg.get_int("render.rr_start_depth", s.rr_start_depth));
    s.wavelengths_per_path = static_cast<int>(cfg.get_int("render.wavelengths_per_path", s.wavelengths_per_path));
    s.validate();
    return s;
}

void write_render_settings(Config &cfg, const RenderSettings &s) {
    cfg.set_int("render.spp", s.spp);
    cfg.set_int("render.max_depth", s.max_depth);
    cfg.set_int("render.rr_start_depth", s.rr_start_depth);
    cfg.set_int("render.wavelengths_per_path", s.wavelengths_per_path);
}

Rgb trace_path(const Scene &scene, const Ray &primary, StratifiedSampler &sampler, const RenderSettings &settings,
               double wavelength_nm) {
    const TriangleMesh &mesh = *scene.mesh;
    const EnvMap &env = *scene.env;
    const MaterialSpec &mat = scene.material;
    const bool opaque = !mat.has_transmission();

    Rgb L(0.0), beta(1.0);
    Ray ray = primary;
    bool spectral = false;
    bool prev_delta = true;
    double prev_pdf = 0;

    for (int depth = 0;; ++depth) {
        const auto hit = scene.bvh->intersect(ray);
        if (!hit) {
            // Bilinear where no MIS pairing is needed, point lookup otherwise.
            const Rgb Le = prev_delta ? env.eval(ray.direction) : env.eval_point(ray.direction);
            double w = 1.0;
            if (!prev_delta) {
                const double lp = env.pdf(ray.direction);
                w = prev_pdf / (prev_pdf + lp);
            }
            L += beta * Le * w;
            break;
        }
        if (depth >= settings.max_depth) break;

        // Local frame: shading normal unless it disagrees with the geometric
        // side of the incoming direction.
        const Vec3 wi_world = -ray.direction;
        Vec3 ng = hit->geometric_normal;
        Vec3 ns = hit->shading_normal;
        if ((dot(wi_world, ns) > 0) != (dot(wi_world, ng) > 0)) ns = ng;
        if (dot(ns, ng) < 0) ns = -ns;
        if (opaque && dot(wi_world, ng) < 0) {
            ng = -ng;
            ns = -ns;
        }
        const Frame frame = Frame::from_normal(ns);
        const Vec3 wi = normalize(frame.to_local(wi_world));
        const Vec3 p = hit_point(mesh, *hit);
        if (mat.is_spectral()) spectral = true;

        const Vec2 u_light = sampler.get_2d();
        const double u_lobe = sampler.get_1d();
        const Vec2 u_bsdf = sampler.get_2d();
        const double u_rr = sampler.get_1d();

        // Environment sampling with the balance heuristic.
        const bool delta_only = mat.family == MaterialFamily::conductor || mat.family == MaterialFamily::dielectric;
        if (!delta_only && !env.is_black()) {
            const EnvSample ls = env.sample(u_light);
            const Vec3 wo = frame.to_local(ls.direction);
            if (ls.pdf > 0 && (dot(ls.direction, ng) > 0) == (wo.z > 0) && wo.z != 0) {
                const Rgb f = bsdf_eval(mat, wi, normalize(wo), wavelength_nm);
                if (!f.is_black() && !scene.bvh->occluded(spawn(p, ng, ls.direction))) {
                    const double bp = bsdf_pdf(mat, wi, normalize(wo), wavelength_nm);
                    const double w = ls.pdf / (ls.pdf + bp);
                    L += beta * f * ls.radiance * (std::abs(wo.z) * w / ls.pdf);
                }
            }
        }

        const BsdfSample bs = bsdf_sample(mat, wi, u_lobe, u_bsdf, wavelength_nm);
        if (bs.weight.is_black() || !(bs.pdf > 0)) break;
        const Vec3 wo_world = normalize(frame.to_world(bs.wo));
        // Sampled side must agree with the geometric surface.
        if ((dot(wo_world, ng) > 0) != (bs.wo.z > 0)) break;
        beta *= bs.weight;
        prev_delta = bs.is_delta;
        prev_pdf = bs.pdf;
        ray = spawn(p, ng, wo_world);

        if (depth + 1 >= settings.rr_start_depth) {
            const double q = std::min(1.0, beta.max_component());
            if (u_rr >= q) break;
            beta = beta / q;
        }
    }
    if (spectral) L *= wavelength_rgb_weight(wavelength_nm);
    return L;
}

RenderOutput render_image(const Scene &scene, const Camera &camera, const RenderSettings &settings) {
    settings.validate();
    const int w = camera.width, h = camera.height;
    RenderOutput out;
    out.radiance = Image(w, h, 3);
    out.depth = Image(w, h, 1);
    out.mask = Image(w, h, 1);

    const int tiles_x = (w + kTileSize - 1) / kTileSize;
    const int tiles_y = (h + kTileSize - 1) / kTileSize;
    const uint64_t image_key = derive_seed(settings.seed, "render", static_cast<uint64_t>(camera.index));
    const int m = settings.wavelengths_per_path;
    std::atomic<uint64_t> nonfinite{0};
    const int threads = settings.threads > 0 ? settings.threads : default_thread_count();

    parallel_for(static_cast<std::size_t>(tiles_x) * tiles_y, threads, [&](std::size_t tile) {
        const int x0 = static_cast<int>(tile % tiles_x) * kTileSize;
        const int y0 = static_cast<int>(tile / tiles_x) * kTileSize;
        uint64_t local_nonfinite = 0;
        for (int y = y0; y < std::min(h, y0 + kTileSize); ++y)
            for (int x = x0; x < std::min(w, x0 + kTileSize); ++x) {
                const auto center = scene.bvh->intersect(camera.center_ray(x, y));
                if (center) {
                    out.depth.at(x, y) = static_cast<float>(center->t);
                    out.mask.at(x, y) = 1.0f;
                }
                StratifiedSampler sampler(hash_combine(image_key, static_cast<uint64_t>(y) * w + x),
                                          static_cast<uint32_t>(settings.spp));
                Rgb sum(0.0);
                for (int s = 0; s < settings.spp; ++s) {
                    sampler.start_sample(static_cast<uint32_t>(s));
                    const double u_lambda = sampler.get_1d();
                    const Vec2 jitter = sampler.get_2d();
                    const Ray ray = camera.ray(x + jitter.x, y + jitter.y);
                    for (int j = 0; j < m; ++j) {
                        const double lambda = kLambdaMin + (kLambdaMax - kLambdaMin) * (j + u_lambda) / m;
                        const Rgb v = trace_path(scene, ray, sampler, settings, lambda);
                        if (!v.is_finite()) {
                            ++local_nonfinite;
                            continue;
                        }
                        sum += v / m;
                    }
                }
                const Rgb mean = sum / settings.spp;
                out.radiance.set_rgb(x, y, {std::max(0.0, mean.r), std::max(0.0, mean.g), std::max(0.0, mean.b)});
            }
        nonfinite += local_nonfinite;
    });
    out.nonfinite_samples = nonfinite.load();
    if (out.nonfinite_samples > 0)
        log::warn("camera {}: {} non-finite path samples set to zero", camera.index, out.nonfinite_samples);
    return out;
}

void write_radiance(const std::filesystem::path &png_path, const RenderOutput &out, bool linear_exr) {
    write_png16_gamma(png_path, out.radiance);
    if (linear_exr) {
        auto exr = png_path;
        exr.replace_extension(".exr");
        write_exr(exr, out.radiance);
    }
}

void write_depth(const std::filesystem::path &exr_path, const RenderOutput &out) { write_exr(exr_path, out.depth); }

void write_mask(const std::filesystem::path &png_path, const RenderOutput &out) { write_png8(png_path, out.mask); }

}  // namespace matbench
