#include "bicgrate/export.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>

#include <openssl/sha.h>

namespace bicgrate {

using nlohmann::json;

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);  // no "-0"
  return buf;
}

namespace {

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
json opt(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }
json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

}  // namespace

json to_json(const ArrayConfig& cfg) {
  return {{"R", cfg.R}, {"eps_c", cfg.eps_c}, {"a", cfg.a}, {"h", cfg.h}};
}

json to_json(const BoundStateRecord& r) {
  json res = json::object();
  for (const auto& [k, v] : r.residuals) res[k] = v;
  return {{"region", region_name(r.region)},
          {"n", opt(r.n)},
          {"l", opt(r.l)},
          {"family", to_string(r.family)},
          {"kx", r.kx},
          {"k", r.k},
          {"h", r.h},
          {"a", r.a},
          {"R", r.R},
          {"eps_c", r.eps_c},
          {"residual_delta", r.residual_delta},
          {"symmetry", to_string(r.symmetry)},
          {"approx_k", opt(r.approx_k)},
          {"approx_h", opt(r.approx_h)},
          {"field_ratio", cjson(r.field_ratio)},
          {"residuals", res}};
}

json to_json(const ScatteringSolution& s) {
  json refl = json::object(), trans = json::object();
  for (const auto& [m, v] : s.refl) refl[std::to_string(m)] = cjson(v);
  for (const auto& [m, v] : s.trans) trans[std::to_string(m)] = cjson(v);
  return {{"config", to_json(s.cfg)},
          {"k", s.k},
          {"kx", s.kx},
          {"direction", s.direction == Incidence::FromBelow ? "from-below" : "from-above"},
          {"e_left", cjson(s.e_left)},
          {"e_right", cjson(s.e_right)},
          {"refl", refl},
          {"trans", trans},
          {"flux_error", s.flux_error},
          {"terms", s.terms}};
}

json to_json(const DiophantineTuple& t) {
  return {{"n", t.n},           {"kx", t.kx},          {"h", t.h},
          {"k", t.k},           {"open_count", t.open_count},
          {"a", t.a},           {"C_curve", t.C_curve}, {"C_imag", t.C_imag},
          {"parity_ok", t.parity_ok}};
}

void write_field_csv(const FieldGrid& g, std::ostream& out) {
  out << "x,z,re,im,abs\n";
  for (std::size_t i = 0; i < g.xs.size(); ++i) {
    for (std::size_t j = 0; j < g.zs.size(); ++j) {
      out << fmt(g.xs[i]) << ',' << fmt(g.zs[j]) << ',';
      if (g.is_inside(int(i), int(j))) {
        out << "nan,nan,nan\n";
      } else {
        cplx v = g.at(int(i), int(j));
        out << fmt(v.real()) << ',' << fmt(v.imag()) << ',' << fmt(std::abs(v)) << '\n';
      }
    }
  }
}

std::string sha1_hex(const std::string& data) {
  unsigned char md[SHA_DIGEST_LENGTH];
  SHA1(reinterpret_cast<const unsigned char*>(data.data()), data.size(), md);
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned char c : md) {
    s += hex[c >> 4];
    s += hex[c & 15];
  }
  return s;
}

RunManifest make_manifest(const std::string& command, const json& config,
                          const json& tolerances) {
  RunManifest m;
  m.command = command;
  m.config = config;
  m.tolerances = tolerances;
  json canon = {{"command", command}, {"config", config}, {"tolerances", tolerances}};
  m.input_hash = sha1_hex(canon.dump());
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  m.timestamp = buf;
  return m;
}

json to_json(const RunManifest& m) {
  return {{"schema", m.schema},       {"command", m.command},     {"config", m.config},
          {"tolerances", m.tolerances}, {"input_hash", m.input_hash},
          {"timestamp", m.timestamp}, {"outputs", m.outputs}};
}

void write_manifest(const RunManifest& m, const std::string& output_path) {
  RunManifest copy = m;
  copy.outputs = {output_path};
  std::ofstream f(output_path + ".manifest.json");
  if (!f) throw std::runtime_error("cannot write manifest for " + output_path);
  f << to_json(copy).dump(2) << '\n';
}

}  // namespace bicgrate
