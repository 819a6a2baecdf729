// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace matbench {

inline constexpr double kLambdaMin = 380.0;
inline constexpr double kLambdaMax = 780.0;
/// Sodium D line; dielectrics and plastics are rendered with their index here.
inline constexpr double kRepresentativeWavelength = 589.29;

/// Complex index of refraction eta + i k. k == 0 is a non-absorbing medium.
struct ComplexIor {
    double eta = 1.0;
    double k = 0.0;

    friend bool operator==(const ComplexIor &, const ComplexIor &) = default;
};

enum class IorFamily { conductor, dielectric, plastic };

std::string_view to_string(IorFamily family);
std::optional<IorFamily> ior_family_from_string(std::string_view name);

struct IorSample {
    double wavelength_nm;
    ComplexIor ior;
};

/// Wavelength-sorted measured index data for one material. Immutable once built.
class IorTable {
  public:
    /// Validates and takes ownership of the samples; throws ValidationError.
    IorTable(std::string material_id, IorFamily family, std::vector<IorSample> samples);

    const std::string &material_id() const { return material_id_; }
    IorFamily family() const { return family_; }
    const std::vector<IorSample> &samples() const { return samples_; }

  private:
    std::string material_id_;
    IorFamily family_;
    std::vector<IorSample> samples_;
};

/// Parses `wavelength_nm, eta, k` rows with `#` comments. When `family` is
/// absent it is inferred: any k > 0 makes a conductor, otherwise a dielectric.
IorTable parse_ior_csv(std::string_view text, std::string material_id, std::optional<IorFamily> family = {});

/// Loads one CSV file. The family comes from the parent directory when it is
/// named conductor/dielectric/plastic, otherwise from the k column.
IorTable load_ior_table(const std::filesystem::path &path);

/// Piecewise-linear interpolation of eta and k; exact at sample points.
/// Outside the sampled span (but inside 380-780 nm) the end sample is held.
ComplexIor ior_at(const IorTable &table, double wavelength_nm);

/// Index used for wavelength-flat families (dielectrics, plastics).
inline ComplexIor representative_ior(const IorTable &table) {
    return ior_at(table, kRepresentativeWavelength);
}

/// Material database laid out as `<root>/<family>/<material_id>.csv`.
struct MaterialDatabase {
    std::map<IorFamily, std::vector<std::shared_ptr<const IorTable>>> tables;
    std::map<std::string, std::filesystem::path> paths;  // material_id -> file

    const std::vector<std::shared_ptr<const IorTable>> &family(IorFamily f) const;
    std::shared_ptr<const IorTable> find(std::string_view material_id) const;
};

/// Loads every table under root; entries are sorted by material id.
MaterialDatabase load_material_database(const std::filesystem::path &root);

}  // namespace matbench
