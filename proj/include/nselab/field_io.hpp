#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "nselab/field.hpp"

namespace nselab {

inline constexpr int snapshot_format_version = 1;

// Snapshot record: {format_version, L, kappa0, K, M, symmetry, modes} where
// modes lists [k1, k2, re_u1, im_u1, re_u2, im_u2] for every stored mode. With
// a sidecar the modes array is replaced by {"sidecar": {"file", "layout"}} and
// the coefficients go to a little-endian float64 file, row-major over
// (k1, k2) in [-K, K]^2 with four values per mode.
nlohmann::json field_to_json(const SpectralField& u);
SpectralField field_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

void save_field(const SpectralField& u, const std::filesystem::path& path, bool sidecar = false);
SpectralField load_field(const std::filesystem::path& path);

}  // namespace nselab
