// SPDX-License-Identifier: Apache-2.0

#include "matbench/dataset/transforms.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "matbench/core/error.hpp"
#include "matbench/core/image.hpp"

namespace matbench {

using nlohmann::json;

namespace {

// diag(1, -1, -1, 1): flips camera y and z between the two conventions.
Mat4 flip_yz(const Mat4 &m) {
    Mat4 out = m;
    for (int r = 0; r < 4; ++r) {
        out(r, 1) = -m(r, 1);
        out(r, 2) = -m(r, 2);
    }
    return out;
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RuntimeError("cannot write " + path.string());
    out << text;
    if (!out) throw RuntimeError("failed writing " + path.string());
}

std::string frame_stem(const Camera &c) { return fmt::format("r_{}", c.index); }

}  // namespace

TransformFrame make_frame(const Camera &camera) {
    const auto stem = frame_stem(camera);
    return {fmt::format("./{}/{}", to_string(camera.tag), stem), camera.pose, "./depth/" + stem, "./mask/" + stem};
}

void write_transforms_file(const std::filesystem::path &path, const TransformsFile &file) {
    json j;
    j["camera_angle_x"] = file.camera_angle_x;
    j["frames"] = json::array();
    for (const auto &f : file.frames) {
        json rows = json::array();
        for (int r = 0; r < 4; ++r) rows.push_back({f.transform(r, 0), f.transform(r, 1), f.transform(r, 2), f.transform(r, 3)});
        json frame{{"file_path", f.file_path}, {"transform_matrix", rows}};
        if (!f.depth_file_path.empty()) frame["depth_file_path"] = f.depth_file_path;
        if (!f.mask_file_path.empty()) frame["mask_file_path"] = f.mask_file_path;
        j["frames"].push_back(frame);
    }
    write_text(path, j.dump(2) + "\n");
}

void write_transforms(const CameraSet &cameras, const std::filesystem::path &scene_dir) {
    if (cameras.cameras.empty()) throw ValidationError("no cameras to write");
    std::error_code ec;
    std::filesystem::create_directories(scene_dir, ec);
    if (ec) throw RuntimeError("cannot create " + scene_dir.string() + ": " + ec.message());
    for (auto tag : {CameraTag::train, CameraTag::test}) {
        TransformsFile file;
        file.camera_angle_x = cameras.cameras.front().fov_x;
        for (const auto &c : cameras.with_tag(tag)) file.frames.push_back(make_frame(c));
        write_transforms_file(scene_dir / fmt::format("transforms_{}.json", to_string(tag)), file);
    }
}

TransformsFile read_transforms(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw RuntimeError("cannot open " + path.string());
    json j;
    try {
        in >> j;
        TransformsFile file;
        file.camera_angle_x = j.at("camera_angle_x").get<double>();
        for (const auto &f : j.at("frames")) {
            TransformFrame frame;
            frame.file_path = f.at("file_path").get<std::string>();
            const auto &rows = f.at("transform_matrix");
            if (rows.size() != 4) throw ValidationError("transform_matrix must be 4x4");
            for (int r = 0; r < 4; ++r) {
                if (rows[r].size() != 4) throw ValidationError("transform_matrix must be 4x4");
                for (int c = 0; c < 4; ++c) frame.transform(r, c) = rows[r][c].get<double>();
            }
            frame.depth_file_path = f.value("depth_file_path", "");
            frame.mask_file_path = f.value("mask_file_path", "");
            file.frames.push_back(std::move(frame));
        }
        return file;
    } catch (const json::exception &e) {
        throw ValidationError("malformed transforms file " + path.string() + ": " + e.what());
    }
}

Mat4 blender_to_colmap_w2c(const Mat4 &c2w) { return flip_yz(c2w).rigid_inverse(); }

Mat4 colmap_w2c_to_blender(const Mat4 &w2c) { return flip_yz(w2c.rigid_inverse()); }

ColmapModel transforms_to_colmap(const std::filesystem::path &scene_dir, int width, int height) {
    ColmapModel model;
    double angle = -1;
    int id = 1;
    for (const char *split : {"train", "test"}) {
        const auto path = scene_dir / fmt::format("transforms_{}.json", split);
        if (!std::filesystem::exists(path)) throw ValidationError("missing " + path.string());
        const auto file = read_transforms(path);
        if (angle >= 0 && file.camera_angle_x != angle)
            throw ValidationError("train and test transforms disagree on camera_angle_x");
        angle = file.camera_angle_x;
        for (const auto &f : file.frames) {
            std::string name = f.file_path;
            if (name.rfind("./", 0) == 0) name = name.substr(2);
            name += ".png";
            if (width <= 0 || height <= 0) {
                const Image img = read_png(scene_dir / name);
                width = img.width;
                height = img.height;
            }
            const Mat4 w2c = blender_to_colmap_w2c(f.transform);
            model.images.push_back({id++, quat_from_rotation(w2c), w2c.column(3), name});
        }
    }
    model.width = width;
    model.height = height;
    model.fx = model.fy = 0.5 * width / std::tan(0.5 * angle);
    model.cx = 0.5 * width;
    model.cy = 0.5 * height;
    return model;
}

void write_colmap(const ColmapModel &m, const std::filesystem::path &out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw RuntimeError("cannot create " + out_dir.string() + ": " + ec.message());
    std::string cams =
        "# Camera list with one line of data per camera:\n"
        "#   CAMERA_ID, MODEL, WIDTH, HEIGHT, PARAMS[]\n"
        "# Number of cameras: 1\n";
    cams += fmt::format("1 PINHOLE {} {} {:.17g} {:.17g} {:.17g} {:.17g}\n", m.width, m.height, m.fx, m.fy, m.cx, m.cy);
    write_text(out_dir / "cameras.txt", cams);

    std::string images = fmt::format(
        "# Image list with two lines of data per image:\n"
        "#   IMAGE_ID, QW, QX, QY, QZ, TX, TY, TZ, CAMERA_ID, NAME\n"
        "#   POINTS2D[] as (X, Y, POINT3D_ID)\n"
        "# Number of images: {}, mean observations per image: 0\n",
        m.images.size());
    for (const auto &im : m.images) {
        const auto &q = im.rotation;
        const auto &t = im.translation;
        images += fmt::format("{} {:.17g} {:.17g} {:.17g} {:.17g} {:.17g} {:.17g} {:.17g} 1 {}\n\n", im.id, q.w, q.x,
                              q.y, q.z, t.x, t.y, t.z, im.name);
    }
    write_text(out_dir / "images.txt", images);
    write_text(out_dir / "points3D.txt",
               "# 3D point list with one line of data per point:\n"
               "#   POINT3D_ID, X, Y, Z, R, G, B, ERROR, TRACK[] as (IMAGE_ID, POINT2D_IDX)\n"
               "# Number of points: 0, mean track length: 0\n");
}

ColmapModel read_colmap(const std::filesystem::path &dir) {
    ColmapModel m;
    auto data_lines = [](const std::filesystem::path &p) {
        std::ifstream in(p);
        if (!in) throw RuntimeError("cannot open " + p.string());
        std::vector<std::string> lines;
        std::string line;
        while (std::getline(in, line)) lines.push_back(line);
        return lines;
    };
    bool have_camera = false;
    for (const auto &line : data_lines(dir / "cameras.txt")) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        int id;
        std::string model;
        ss >> id >> model >> m.width >> m.height >> m.fx >> m.fy >> m.cx >> m.cy;
        if (!ss || model != "PINHOLE") throw ValidationError("expected a PINHOLE camera in cameras.txt");
        have_camera = true;
        break;
    }
    if (!have_camera) throw ValidationError("cameras.txt has no camera");
    const auto lines = data_lines(dir / "images.txt");
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto &line = lines[i];
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        ColmapImage im;
        int camera_id;
        ss >> im.id >> im.rotation.w >> im.rotation.x >> im.rotation.y >> im.rotation.z >> im.translation.x >>
            im.translation.y >> im.translation.z >> camera_id >> im.name;
        if (!ss) throw ValidationError("malformed images.txt line: " + line);
        m.images.push_back(im);
        ++i;  // skip the 2D point line
    }
    return m;
}

TransformsFile colmap_to_transforms(const ColmapModel &model, std::string_view split) {
    TransformsFile file;
    file.camera_angle_x = 2.0 * std::atan(0.5 * model.width / model.fx);
    const std::string prefix = std::string(split) + "/";
    for (const auto &im : model.images) {
        if (im.name.rfind(prefix, 0) != 0) continue;
        Mat4 w2c = rotation_from_quat(im.rotation);
        w2c.set_column(3, im.translation);
        std::string stem = im.name.substr(prefix.size());
        if (const auto dot = stem.rfind('.'); dot != std::string::npos) stem = stem.substr(0, dot);
        file.frames.push_back({"./" + prefix + stem, colmap_w2c_to_blender(w2c), "./depth/" + stem, "./mask/" + stem});
    }
    return file;
}

std::filesystem::path convert_to_colmap(const std::filesystem::path &scene_dir, int width, int height) {
    const auto out = scene_dir / "colmap" / "sparse" / "0";
    write_colmap(transforms_to_colmap(scene_dir, width, height), out);
    return out;
}

}  // namespace matbench
