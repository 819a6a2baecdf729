// SPDX-License-Identifier: Apache-2.0

#include "matbench/spectra/ior.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "matbench/core/error.hpp"

namespace matbench {

std::string_view to_string(IorFamily family) {
    switch (family) {
        case IorFamily::conductor: return "conductor";
        case IorFamily::dielectric: return "dielectric";
        case IorFamily::plastic: return "plastic";
    }
    return "unknown";
}

std::optional<IorFamily> ior_family_from_string(std::string_view name) {
    if (name == "conductor") return IorFamily::conductor;
    if (name == "dielectric") return IorFamily::dielectric;
    if (name == "plastic") return IorFamily::plastic;
    return std::nullopt;
}

IorTable::IorTable(std::string material_id, IorFamily family, std::vector<IorSample> samples)
    : material_id_(std::move(material_id)), family_(family), samples_(std::move(samples)) {
    const std::string where = "IOR table '" + material_id_ + "': ";
    if (samples_.empty()) throw ValidationError(where + "no samples");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const auto &s = samples_[i];
        if (!std::isfinite(s.wavelength_nm) || s.wavelength_nm < kLambdaMin || s.wavelength_nm > kLambdaMax)
            throw ValidationError(where + "wavelength out of range [380, 780] nm");
        if (!std::isfinite(s.ior.eta) || !std::isfinite(s.ior.k)) throw ValidationError(where + "non-finite index");
        if (s.ior.eta <= 0 || s.ior.k < 0) throw ValidationError(where + "negative eta or k");
        if (i > 0 && !(samples_[i - 1].wavelength_nm < s.wavelength_nm))
            throw ValidationError(where + "unsorted wavelengths");
    }
}

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(std::string_view field, std::size_t line_no) {
    field = trim(field);
    double v = 0;
    const auto *end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (ec != std::errc() || ptr != end || field.empty())
        throw ValidationError("IOR CSV line " + std::to_string(line_no) + ": cannot parse '" + std::string(field) + "'");
    return v;
}

}  // namespace

IorTable parse_ior_csv(std::string_view text, std::string material_id, std::optional<IorFamily> family) {
    std::vector<IorSample> samples;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        std::vector<std::string_view> fields;
        std::size_t start = 0;
        for (;;) {
            const auto comma = line.find(',', start);
            fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 3)
            throw ValidationError("IOR CSV line " + std::to_string(line_no) + ": expected 3 columns");
        samples.push_back({parse_number(fields[0], line_no),
                           {parse_number(fields[1], line_no), parse_number(fields[2], line_no)}});
    }
    if (!family) {
        const bool absorbing = std::any_of(samples.begin(), samples.end(), [](const IorSample &s) { return s.ior.k > 0; });
        family = absorbing ? IorFamily::conductor : IorFamily::dielectric;
    }
    return IorTable(std::move(material_id), *family, std::move(samples));
}

IorTable load_ior_table(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw RuntimeError("cannot open IOR table " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    const auto family = ior_family_from_string(path.parent_path().filename().string());
    return parse_ior_csv(ss.str(), path.stem().string(), family);
}

ComplexIor ior_at(const IorTable &table, double wavelength_nm) {
    if (!(wavelength_nm >= kLambdaMin && wavelength_nm <= kLambdaMax))
        throw ValidationError("wavelength " + std::to_string(wavelength_nm) + " nm outside [380, 780]");
    const auto &s = table.samples();
    if (wavelength_nm <= s.front().wavelength_nm) return s.front().ior;
    if (wavelength_nm >= s.back().wavelength_nm) return s.back().ior;
    const auto hi = std::upper_bound(s.begin(), s.end(), wavelength_nm,
                                     [](double w, const IorSample &x) { return w < x.wavelength_nm; });
    const auto lo = hi - 1;
    if (lo->wavelength_nm == wavelength_nm) return lo->ior;
    const double t = (wavelength_nm - lo->wavelength_nm) / (hi->wavelength_nm - lo->wavelength_nm);
    return {lo->ior.eta + t * (hi->ior.eta - lo->ior.eta), lo->ior.k + t * (hi->ior.k - lo->ior.k)};
}

const std::vector<std::shared_ptr<const IorTable>> &MaterialDatabase::family(IorFamily f) const {
    static const std::vector<std::shared_ptr<const IorTable>> empty;
    const auto it = tables.find(f);
    return it == tables.end() ? empty : it->second;
}

std::shared_ptr<const IorTable> MaterialDatabase::find(std::string_view material_id) const {
    for (const auto &[fam, list] : tables)
        for (const auto &t : list)
            if (t->material_id() == material_id) return t;
    return nullptr;
}

MaterialDatabase load_material_database(const std::filesystem::path &root) {
    if (!std::filesystem::is_directory(root)) throw RuntimeError("material database not found: " + root.string());
    MaterialDatabase db;
    for (IorFamily fam : {IorFamily::conductor, IorFamily::dielectric, IorFamily::plastic}) {
        const auto dir = root / std::string(to_string(fam));
        if (!std::filesystem::is_directory(dir)) continue;
        std::vector<std::filesystem::path> files;
        for (const auto &entry : std::filesystem::directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto &f : files) {
            auto table = std::make_shared<const IorTable>(load_ior_table(f));
            db.paths[table->material_id()] = f;
            db.tables[fam].push_back(std::move(table));
        }
    }
    return db;
}

}  // namespace matbench
