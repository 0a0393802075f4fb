#include "sse/jsonio.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sse {

using nlohmann::json;

namespace {

double need_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ConfigError(std::string("missing numeric field '") + key + "'");
  return j[key].get<double>();
}

std::vector<double> need_array(const json& j, const char* key, size_t n) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != n)
    throw ConfigError(std::string("field '") + key + "' must be an array of " +
                      std::to_string(n) + " numbers");
  std::vector<double> v;
  v.reserve(n);
  for (const auto& e : j[key]) {
    if (!e.is_number())
      throw ConfigError(std::string("field '") + key + "' has a non-number");
    v.push_back(e.get<double>());
  }
  return v;
}

}  // namespace

json family_to_json(const PotentialFamily& f) {
  json j;
  j["kind"] = f.kind_name();
  switch (f.kind) {
    case FamilyKind::Semicircle:
      j["A_max"] = f.A_max;
      j["X_minus"] = f.X_minus;
      j["X_plus"] = f.X_plus;
      break;
    case FamilyKind::Hirota:
      j["A_max"] = f.A_max;
      j["X_minus"] = f.X_minus;
      j["X_plus"] = f.X_plus;
      j["xi"] = f.xi;
      break;
    case FamilyKind::Lpd:
      j["A_max"] = f.A_max;
      j["X_minus"] = f.X_minus;
      j["X_plus"] = f.X_plus;
      j["gamma"] = f.gamma;
      break;
    case FamilyKind::Interpolation:
      j["delta"] = f.delta;
      break;
    case FamilyKind::Polynomial:
      j["Phi0"] = f.Phi0;
      j["A_max"] = f.A_max;
      j["B"] = f.B;
      j["Xi1"] = f.Xi1;
      j["Xi_higher"] = f.XiH;
      break;
  }
  return j;
}

PotentialFamily family_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ConfigError("family: need an object with a 'kind' string");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "semicircle")
    return semicircle_family(need_number(j, "A_max"), need_number(j, "X_minus"),
                             need_number(j, "X_plus"));
  if (kind == "hirota")
    return hirota_family(need_number(j, "A_max"), need_number(j, "X_minus"),
                         need_number(j, "X_plus"), need_number(j, "xi"));
  if (kind == "lpd")
    return lpd_family(need_number(j, "A_max"), need_number(j, "X_minus"),
                      need_number(j, "X_plus"), need_number(j, "gamma"));
  if (kind == "interpolation")
    return interpolation_family(need_number(j, "delta"));
  if (kind == "polynomial") {
    if (!j.contains("B") || !j["B"].is_array())
      throw ConfigError("polynomial family: 'B' must be an array");
    if (!j.contains("Xi_higher") || !j["Xi_higher"].is_array())
      throw ConfigError("polynomial family: 'Xi_higher' must be an array");
    std::vector<double> B = j["B"].get<std::vector<double>>();
    std::vector<double> XiH = j["Xi_higher"].get<std::vector<double>>();
    return polynomial_family(need_number(j, "Phi0"), need_number(j, "A_max"),
                             std::move(B), need_number(j, "Xi1"),
                             std::move(XiH));
  }
  throw ConfigError("family: unknown kind '" + kind + "'");
}

json spectrum_to_json(const SpectralData& sd) {
  json j;
  j["N"] = sd.N;
  j["epsilon"] = sd.epsilon;
  j["s_tilde"] = sd.s;
  j["log_tau"] = sd.log_tau;
  j["tau_sign"] = sd.tau_sign;
  j["log_c0_magnitude"] = sd.log_c0;
  j["c0_phase"] = sd.c0_phase;
  return j;
}

SpectralData spectrum_from_json(const json& j) {
  SpectralData sd;
  const double Nd = need_number(j, "N");
  if (Nd < 0 || Nd != std::floor(Nd))
    throw ConfigError("spectrum: N must be a nonnegative integer");
  sd.N = static_cast<int>(Nd);
  sd.epsilon = need_number(j, "epsilon");
  if (!(sd.epsilon > 0)) throw ConfigError("spectrum: epsilon must be positive");
  const size_t n = static_cast<size_t>(sd.N);
  sd.s = need_array(j, "s_tilde", n);
  sd.log_tau = need_array(j, "log_tau", n);
  sd.log_c0 = need_array(j, "log_c0_magnitude", n);
  sd.c0_phase = need_array(j, "c0_phase", n);
  for (double v : need_array(j, "tau_sign", n)) {
    if (v != 1 && v != -1)
      throw ConfigError("spectrum: tau_sign entries must be +-1");
    sd.tau_sign.push_back(static_cast<int>(v));
  }
  return sd;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

json report_header(const json& config) {
  char hex[19];
  std::snprintf(hex, sizeof hex, "0x%016llx",
                static_cast<unsigned long long>(fnv1a64(config.dump())));
  json j;
  j["tool_version"] = kToolVersion;
  j["config_hash"] = hex;
  return j;
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string field_header(size_t arity) {
  std::string h = "x";
  for (size_t m = 0; m < arity; ++m) h += ", t" + std::to_string(m + 2);
  h += ", re_psi, im_psi, abs_psi, formulation, precision_bits, residual\n";
  return h;
}

void field_row(std::string& out, const FieldSample& p, size_t arity) {
  if (p.times.size() != arity)
    throw std::runtime_error("field csv: ragged time tuples");
  out += csv_number(p.x);
  for (double t : p.times) out += ", " + csv_number(t);
  // failed samples keep the schema but carry nan field values; the report
  // counts them and the driver exits nonzero
  const double re = p.ok ? p.psi.real() : std::nan("");
  const double im = p.ok ? p.psi.imag() : std::nan("");
  out += ", " + csv_number(re);
  out += ", " + csv_number(im);
  out += ", " + csv_number(p.ok ? std::abs(p.psi) : std::nan(""));
  out += ", ";
  out += formulation_name(p.used);
  out += ", " + std::to_string(p.bits);
  out += ", " + csv_number(p.residual) + "\n";
}

}  // namespace

std::string field_grid_csv(const FieldGrid& g) {
  const size_t arity = g.pts.empty() ? 0 : g.pts.front().times.size();
  std::string out = field_header(arity);
  for (const auto& p : g.pts) field_row(out, p, arity);
  return out;
}

std::string window_grid_csv(const FieldGrid& g, const std::vector<double>& X,
                            const std::vector<double>& T) {
  if (g.nx != X.size() || g.nt != T.size() || g.pts.size() != g.nx * g.nt)
    throw std::runtime_error("window csv: axis sizes do not match the grid");
  const size_t arity = g.pts.empty() ? 0 : g.pts.front().times.size();
  std::string out = "X, T, " + field_header(arity);
  for (size_t i = 0; i < g.nx; ++i)
    for (size_t j = 0; j < g.nt; ++j) {
      out += csv_number(X[i]) + ", " + csv_number(T[j]) + ", ";
      field_row(out, g.pts[i * g.nt + j], arity);
    }
  return out;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
    f << content;
    f.flush();
    if (!f.good()) throw std::runtime_error("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " onto " + path);
}

}  // namespace sse
