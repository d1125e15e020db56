// Command-line front end: threshold tables, bound-state searches, reflection
// sweeps, field maps and the integer families with three or four open
// channels.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bicgrate/export.hpp"
#include "bicgrate/numerics.hpp"

using namespace bicgrate;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitGate = 3;
constexpr int kExitNoResult = 4;

struct Physics {
  double R = 0.1, eps = 1.5, a = 0.0, h = 1.0, kx = 0.0;
  ArrayConfig cfg() const { return {R, eps, a, h}; }
};

void add_physics(CLI::App* app, Physics& p, bool with_h = true) {
  app->add_option("--R", p.R, "cylinder radius (period units)")->capture_default_str();
  app->add_option("--eps", p.eps, "dielectric constant of the cylinders")->capture_default_str();
  app->add_option("--a", p.a, "lateral shift of the upper array")->capture_default_str();
  if (with_h) app->add_option("--h", p.h, "half distance between the arrays")->capture_default_str();
  app->add_option("--kx", p.kx, "Bloch wavenumber")->capture_default_str();
}

// Writes `body` to `path` (with a manifest) or to stdout when path is empty.
void emit(const std::string& path, const std::string& body, const RunManifest& m) {
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << body;
  write_manifest(m, path);
}

int cmd_thresholds(double kx, int nmax, const std::string& out) {
  std::ostringstream s;
  s << "order,energy\n";
  for (const auto& t : thresholds(kx, nmax)) s << t.order << ',' << fmt(t.energy) << '\n';
  emit(out, s.str(), make_manifest("thresholds", {{"kx", kx}, {"nmax", nmax}}, json::object()));
  return 0;
}

int cmd_bound_search(const std::string& region, const Physics& p, int nmax, int lmax,
                     const std::string& out) {
  ArrayConfig cfg = p.cfg();
  std::vector<BoundStateRecord> recs;
  if (region == "below") {
    recs = find_below(cfg, p.kx);
  } else if (region == "c1") {
    recs = find_continuum_I(cfg, p.a, p.kx, nmax);
  } else {
    recs = find_continuum_II(cfg, p.a, nmax, lmax);
  }
  json config = to_json(cfg);
  config["region"] = region;
  config["kx"] = p.kx;
  config["nmax"] = nmax;
  config["lmax"] = lmax;
  RunManifest m = make_manifest("bound-search", config, {{"bisection_xtol", 1e-15}, {"sum_tol", 1e-12}});
  json doc = {{"manifest_hash", m.input_hash}, {"records", json::array()}};
  for (const auto& r : recs) doc["records"].push_back(to_json(r));
  emit(out, doc.dump(2) + "\n", m);
  return recs.empty() ? kExitNoResult : 0;
}

int cmd_scatter_sweep(const Physics& p, std::vector<double> hr, std::vector<double> kr,
                      std::vector<int> grid, const std::string& out) {
  if (grid.size() == 1) grid.push_back(grid[0]);
  int nh = grid[0], nk = grid[1];
  if (nh < 1 || nk < 1) throw std::invalid_argument("grid must be positive");
  auto node = [](const std::vector<double>& r, int i, int n) {
    return n == 1 ? r[0] : r[0] + (r[1] - r[0]) * i / (n - 1);
  };
  std::vector<std::string> rows(std::size_t(nh) * nk);
  std::size_t singular = 0;
  parallel_for(rows.size(), [&](std::size_t idx) {
    int i = int(idx / nk), j = int(idx % nk);
    double h = node(hr, i, nh), k = node(kr, j, nk);
    ArrayConfig cfg = p.cfg();
    cfg.h = h;
    std::string r0 = "nan", fe = "nan";
    try {
      ScatteringSolution s = solve(cfg, BlochPoint(k, p.kx));
      r0 = fmt(std::norm(s.refl.at(0)));
      fe = fmt(s.flux_error);
    } catch (const SingularSystem&) {
    } catch (const ThresholdSingularity&) {
    }
    rows[idx] = fmt(h) + ',' + fmt(k) + ',' + r0 + ',' + fe + '\n';
  });
  std::ostringstream s;
  s << "h,k,R0sq,flux_error\n";
  for (const auto& r : rows) {
    if (r.find("nan") != std::string::npos) ++singular;
    s << r;
  }
  json config = to_json(p.cfg());
  config["kx"] = p.kx;
  config["h_range"] = hr;
  config["k_range"] = kr;
  config["grid"] = {nh, nk};
  emit(out, s.str(), make_manifest("scatter-sweep", config, {{"det_guard", 1e-8}}));
  return singular == rows.size() ? kExitNoResult : 0;
}

BoundStateRecord record_from_json(const json& j) {
  BoundStateRecord r;
  r.kx = j.at("kx");
  r.k = j.at("k");
  r.h = j.at("h");
  r.a = j.at("a");
  r.R = j.at("R");
  r.eps_c = j.at("eps_c");
  r.field_ratio = cplx(j.at("field_ratio")[0], j.at("field_ratio")[1]);
  if (!j.value("n", json()).is_null()) r.n = j.at("n").get<int>();
  return r;
}

int cmd_field_map(const std::string& record_file, int index, std::vector<double> scatter_at,
                  const Physics& p, GridSpec spec, std::vector<double> xr, std::vector<double> zr,
                  const std::string& out) {
  if (!xr.empty()) {
    spec.x0 = xr[0];
    spec.x1 = xr[1];
  }
  if (!zr.empty()) {
    spec.z0 = zr[0];
    spec.z1 = zr[1];
  }
  FieldGrid g;
  json config;
  if (!record_file.empty()) {
    std::ifstream f(record_file);
    if (!f) throw std::invalid_argument("cannot read " + record_file);
    json doc = json::parse(f);
    const json& rj = doc.contains("records") ? doc.at("records").at(index) : doc;
    BoundStateRecord rec = record_from_json(rj);
    g = bound_field(rec, spec);
    config = {{"record", rj}};
  } else {
    ArrayConfig cfg = p.cfg();
    cfg.h = scatter_at[0];
    ScatteringSolution sol = solve(cfg, BlochPoint(scatter_at[1], p.kx));
    g = scattering_field(sol, spec);
    config = {{"solution", to_json(sol)}};
  }
  config["grid"] = {{"x", {g.spec.x0, g.spec.x1}}, {"z", {g.spec.z0, g.spec.z1}},
                    {"nx", g.spec.nx}, {"nz", g.spec.nz}};
  std::ostringstream s;
  write_field_csv(g, s);
  RunManifest m = make_manifest("field-map", config, {{"line_sum_tol", 1e-13}});
  emit(out, s.str(), m);
  std::cerr << "inside=" << g.inside_count() << " max_abs=" << fmt(g.max_abs())
            << " bloch_residual=" << fmt(bloch_residual(g)) << '\n';
  return 0;
}

int cmd_diophantine(int channels, int bound, double R, double eps, const std::string& out) {
  auto tuples = diophantine_N(channels, bound);
  std::ostringstream s;
  s << "n,kx,h,k,open_count,a,C_curve,C_imag,parity_ok,eps_on_curve\n";
  for (const auto& t : tuples) {
    std::string n;
    for (std::size_t i = 0; i < t.n.size(); ++i) n += (i ? " " : "") + std::to_string(t.n[i]);
    auto e = eps_on_curve(t.C_curve, t.k, R);
    s << n << ',' << fmt(t.kx) << ',' << fmt(t.h) << ',' << fmt(t.k) << ',' << t.open_count << ','
      << fmt(t.a) << ',' << fmt(t.C_curve) << ',' << fmt(t.C_imag) << ','
      << (t.parity_ok ? 1 : 0) << ',' << (e ? fmt(*e) : "nan") << '\n';
  }
  emit(out, s.str(),
       make_manifest("diophantine", {{"channels", channels}, {"bound", bound}, {"R", R}, {"eps", eps}},
                     json::object()));
  return tuples.empty() ? kExitNoResult : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound states of a double array of thin dielectric cylinders"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  std::string out;

  auto* th = app.add_subcommand("thresholds", "diffraction thresholds at fixed kx");
  double th_kx = 0.0;
  int th_n = 2;
  th->add_option("--kx", th_kx)->required();
  th->add_option("--nmax", th_n)->capture_default_str();
  th->add_option("--out", out);

  auto* bs = app.add_subcommand("bound-search", "search for bound states");
  Physics bp;
  std::string region = "c1";
  int nmax = 4, lmax = 8;
  bs->add_option("--region", region)->check(CLI::IsMember({"below", "c1", "c2"}))->required();
  add_physics(bs, bp);
  bs->add_option("--nmax", nmax)->capture_default_str();
  bs->add_option("--lmax", lmax)->capture_default_str();
  bs->add_option("--out", out);

  auto* sw = app.add_subcommand("scatter-sweep", "specular reflection over an (h, k) grid");
  Physics sp;
  std::vector<double> hr, kr;
  std::vector<int> grid{64};
  add_physics(sw, sp, false);
  sw->add_option("--h-range", hr)->delimiter(',')->expected(2)->required();
  sw->add_option("--k-range", kr)->delimiter(',')->expected(2)->required();
  sw->add_option("--grid", grid)->delimiter(',')->expected(1, 2);
  sw->add_option("--out", out);

  auto* fm = app.add_subcommand("field-map", "field of a bound state or scattering solution");
  Physics fp;
  std::string record_file;
  int record_index = 0;
  std::vector<double> scatter_at, xr, zr;
  GridSpec spec;
  auto* rf = fm->add_option("--record-file", record_file);
  fm->add_option("--record-index", record_index);
  auto* sa = fm->add_option("--scatter-at", scatter_at, "h,k")->delimiter(',')->expected(2);
  rf->excludes(sa);
  add_physics(fm, fp, false);
  fm->add_option("--x-range", xr)->delimiter(',')->expected(2);
  fm->add_option("--z-range", zr)->delimiter(',')->expected(2);
  fm->add_option("--nx", spec.nx)->capture_default_str();
  fm->add_option("--nz", spec.nz)->capture_default_str();
  fm->add_option("--out", out);

  auto* di = app.add_subcommand("diophantine", "standing-wave families with 3 or 4 open channels");
  int channels = 3, bound = 3;
  double dR = 0.1, deps = 1.5;
  di->add_option("--channels", channels)->check(CLI::IsMember({3, 4}))->required();
  di->add_option("--bound", bound)->capture_default_str();
  di->add_option("--R", dR)->capture_default_str();
  di->add_option("--eps", deps)->capture_default_str();
  di->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (th->parsed()) return cmd_thresholds(th_kx, th_n, out);
    if (bs->parsed()) return cmd_bound_search(region, bp, nmax, lmax, out);
    if (sw->parsed()) return cmd_scatter_sweep(sp, hr, kr, grid, out);
    if (fm->parsed()) {
      if (record_file.empty() && scatter_at.empty()) {
        std::cerr << "field-map needs --record-file or --scatter-at\n";
        return kExitUsage;
      }
      return cmd_field_map(record_file, record_index, scatter_at, fp, spec, xr, zr, out);
    }
    if (di->parsed()) return cmd_diophantine(channels, bound, dR, deps, out);
  } catch (const GateFailed& e) {
    std::cerr << "gate failed: " << e.what() << '\n';
    return kExitGate;
  } catch (const NoRoot& e) {
    std::cerr << e.what() << '\n';
    return kExitNoResult;
  } catch (const NoBracket& e) {
    std::cerr << e.what() << '\n';
    return kExitNoResult;
  } catch (const SingularSystem& e) {
    std::cerr << e.what() << '\n';
    return kExitNoResult;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}
