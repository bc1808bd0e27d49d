#include "nselab/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace nselab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json header(const SpectralField& u) {
  return json{{"format_version", snapshot_format_version},
              {"L", u.grid.L},
              {"kappa0", u.grid.kappa0},
              {"K", u.grid.K},
              {"M", u.grid.M},
              {"symmetry", to_string(u.symmetry)}};
}

void put_le(std::ostream& os, double v) {
  std::uint64_t b = std::bit_cast<std::uint64_t>(v);
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(b >> (8 * i));
  os.write(reinterpret_cast<const char*>(buf), 8);
}

double get_le(std::istream& is) {
  unsigned char buf[8];
  if (!is.read(reinterpret_cast<char*>(buf), 8)) throw std::runtime_error("sidecar file truncated");
  std::uint64_t b = 0;
  for (int i = 0; i < 8; ++i) b |= std::uint64_t(buf[i]) << (8 * i);
  return std::bit_cast<double>(b);
}

}  // namespace

json field_to_json(const SpectralField& u) {
  json j = header(u);
  json modes = json::array();
  for_each_mode(u.grid, [&](int k1, int k2, int i) {
    const Vec2c& c = u.coeffs[i];
    if (c[0] == 0.0 && c[1] == 0.0) return;
    modes.push_back({k1, k2, c[0].real(), c[0].imag(), c[1].real(), c[1].imag()});
  });
  j["modes"] = std::move(modes);
  return j;
}

SpectralField field_from_json(const json& j, const fs::path& base_dir) {
  if (j.value("format_version", 0) != snapshot_format_version)
    throw std::invalid_argument("unsupported snapshot format_version");
  GridSpec g = make_grid(j.at("K").get<int>(), j.at("L").get<double>(), j.value("M", 0));
  std::string sym = j.at("symmetry").get<std::string>();
  if (sym != "real" && sym != "complex") throw std::invalid_argument("snapshot symmetry must be real or complex");
  SpectralField u = SpectralField::zeros(g, sym == "real" ? Symmetry::real : Symmetry::complex);
  if (j.contains("sidecar")) {
    fs::path p = base_dir / j["sidecar"].at("file").get<std::string>();
    std::ifstream is(p, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open sidecar " + p.string());
    for (auto& c : u.coeffs) {
      double a = get_le(is), b = get_le(is), d = get_le(is), e = get_le(is);
      c = Vec2c{cplx(a, b), cplx(d, e)};
    }
  } else {
    for (const auto& m : j.at("modes")) {
      int k1 = m.at(0).get<int>(), k2 = m.at(1).get<int>();
      if (std::abs(k1) > g.K || std::abs(k2) > g.K) throw std::invalid_argument("snapshot mode outside truncation");
      u.at(k1, k2) = Vec2c{cplx(m.at(2).get<double>(), m.at(3).get<double>()),
                           cplx(m.at(4).get<double>(), m.at(5).get<double>())};
    }
  }
  require_invariants(u, 1e-12);
  return u;
}

void save_field(const SpectralField& u, const fs::path& path, bool sidecar) {
  json j;
  if (sidecar) {
    j = header(u);
    fs::path bin = path;
    bin.replace_extension(".bin");
    j["sidecar"] = {{"file", bin.filename().string()}, {"layout", "le_float64_rowmajor_k1_k2_re_u1_im_u1_re_u2_im_u2"}};
    std::ofstream os(bin, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + bin.string());
    for (const auto& c : u.coeffs) {
      put_le(os, c[0].real());
      put_le(os, c[0].imag());
      put_le(os, c[1].real());
      put_le(os, c[1].imag());
    }
  } else {
    j = field_to_json(u);
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << j.dump(1) << '\n';
}

SpectralField load_field(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  json j = json::parse(is);
  return field_from_json(j, path.parent_path());
}

}  // namespace nselab
