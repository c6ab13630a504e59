#include "gpdo/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpdo/bounds.hpp"
#include "gpdo/errors.hpp"
#include "gpdo/parallel.hpp"
#include "gpdo/quantize.hpp"
#include "gpdo/symbol.hpp"

namespace gpdo::cli {

namespace {

using Json = nlohmann::json;
constexpr double kPi = std::numbers::pi;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// Typed access to the resolved configuration.
class Params {
 public:
  explicit Params(std::map<std::string, std::string> values) : values_(std::move(values)) {}
  const std::map<std::string, std::string>& all() const { return values_; }

  const std::string& str(const std::string& key) const { return values_.at(key); }

  double num(const std::string& key) const {
    const std::string& v = str(key);
    if (v == "inf") return std::numeric_limits<double>::infinity();
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || *end != '\0') throw ArgumentError("key '" + key + "' expects a number, got '" + v + "'");
    return d;
  }

  long integer(const std::string& key) const {
    const std::string& v = str(key);
    char* end = nullptr;
    const long d = std::strtol(v.c_str(), &end, 10);
    if (v.empty() || *end != '\0') throw ArgumentError("key '" + key + "' expects an integer, got '" + v + "'");
    return d;
  }

  std::vector<double> list(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(str(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      char* end = nullptr;
      const double d = std::strtod(item.c_str(), &end);
      if (item.empty() || *end != '\0') throw ArgumentError("key '" + key + "' expects a comma-separated list");
      out.push_back(d);
    }
    return out;
  }

  std::vector<int> int_list(const std::string& key) const {
    std::vector<int> out;
    for (double d : list(key)) {
      if (d != std::floor(d)) throw ArgumentError("key '" + key + "' expects integers");
      out.push_back(static_cast<int>(d));
    }
    return out;
  }

 private:
  std::map<std::string, std::string> values_;
};

using Cell = std::variant<double, long long, std::string>;

struct Report {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  Json summary = Json::object();
  Json tolerances = Json::object();
  std::string verdict;
  int code = kOk;
};

std::string cell_csv(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return fmt17(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

Json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? Json(*d) : Json(fmt17(*d));
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

void write_report(const Report& r, const Params& params, std::ostream& err) {
  const std::filesystem::path dir(params.str("out"));
  std::filesystem::create_directories(dir);
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(r.name, params.all())));
  const auto stem = dir / (r.name + "-" + hash);

  std::ofstream csv(stem.string() + ".csv", std::ios::binary);
  csv << "# experiment=" << r.name << "\n";
  for (const auto& [k, v] : params.all()) csv << "# " << k << "=" << v << "\n";
  csv << "# verdict=" << r.verdict << "\n";
  for (std::size_t c = 0; c < r.columns.size(); ++c) csv << (c ? "," : "") << r.columns[c];
  csv << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) csv << (c ? "," : "") << cell_csv(row[c]);
    csv << "\n";
  }

  Json series = Json::array();
  for (const auto& row : r.rows) {
    Json obj = Json::object();
    for (std::size_t c = 0; c < row.size() && c < r.columns.size(); ++c) obj[r.columns[c]] = cell_json(row[c]);
    series.push_back(obj);
  }
  const Json j{{"name", r.name},       {"params", params.all()}, {"series", series},
               {"summary", r.summary}, {"verdict", r.verdict},   {"tolerances", r.tolerances},
               {"exit_code", r.code}};
  std::ofstream js(stem.string() + ".json", std::ios::binary);
  js << j.dump(2) << "\n";
  err << "wrote " << stem.string() << ".csv and .json\n";
}

// ---------------------------------------------------------------------------------------
// Configuration helpers shared by the subcommands.

GroupId group_of(const Params& p) { return GroupId::parse(p.str("group")); }

// Torus: |k| <= band. SU(2): spin l <= band, a multiple of 1/2.
Band band_of(const Params& p, const GroupId& g) {
  const double b = p.num("band");
  if (!(b >= 0.0)) throw ArgumentError("band must be nonnegative");
  if (g.is_torus()) return Band::torus_radius(b);
  const double twice = 2.0 * b;
  if (twice != std::floor(twice)) throw ArgumentError("SU(2) band must be a multiple of 1/2");
  return Band::su2_twice_spin(static_cast<int>(twice));
}

GridPtr grid_of(const Params& p, const GroupId& g, const Band& band) {
  const long res = p.integer("resolution");
  if (res < 0) throw ArgumentError("resolution must be nonnegative");
  if (res == 0) return haar_grid_for(g, band);
  auto grid = haar_grid(g, static_cast<int>(res));
  grid->require_band(band, "band <= grid exactness (raise resolution or lower band)");
  return grid;
}

std::uint64_t seed_of(const Params& p) { return static_cast<std::uint64_t>(p.integer("seed")); }

double first_angle(const GroupPoint& x) { return std::get<TorusPoint>(x).angles[0]; }

GridFunction named_function(const Params& p, const std::string& name, const GroupId& g, const GridPtr& grid,
                            const Band& band) {
  if (name == "constant") return GridFunction(grid, CVector::Ones(static_cast<Eigen::Index>(grid->size())));
  if (name == "coefficient") {
    const DualIndex xi = g.is_su2() ? su2_index(1) : torus_index([&] {
      std::vector<int> k(static_cast<std::size_t>(g.dim()), 0);
      k[0] = 1;
      return k;
    }());
    if (!band.contains(xi.casimir)) throw ArgumentError("function 'coefficient' needs band >= 1 (torus) or 1/2 (SU(2))");
    return GridFunction::sample(grid, [&](const GroupPoint& x) { return rep_matrix(g, xi, x)(0, 0); });
  }
  if (name == "random") {
    std::mt19937_64 rng(seed_of(p));
    return random_band_limited(grid, band, rng);
  }
  if (name == "dirichlet") {
    const auto id = identity_symbol(g, band);
    return inverse(id.at(0), grid);
  }
  if (name == "log" || name == "step") {
    if (!(g.is_torus() && g.dim() == 1)) throw ArgumentError("function '" + name + "' is defined on T1 only");
    const double h = kPi / static_cast<double>(grid->size());
    if (name == "log")
      return GridFunction::sample(grid, [&](const GroupPoint& x) {
        return cplx(std::log(std::abs(2.0 * std::sin((first_angle(x) + h) / 2.0))));
      });
    return GridFunction::sample(grid, [](const GroupPoint& x) { return cplx(std::tanh(8.0 * std::sin(first_angle(x)))); });
  }
  throw UsageError("unknown function '" + name + "' (constant, coefficient, random, dirichlet, log, step)");
}

Symbol build_symbol(const Params& p, const GroupId& g, const Band& band) {
  const std::string& name = p.str("symbol");
  if (name == "identity") return identity_symbol(g, band);
  if (name == "power") return build_multiplier_power(g, band, p.num("s"));
  if (name == "hlhw") {
    if (!(g.is_torus() && g.dim() == 1)) throw ArgumentError("symbol 'hlhw' is defined on T1 only");
    return build_hlhw(band, p.num("rho"), p.num("nu"));
  }
  if (name == "zc-inverse") {
    if (!g.is_su2()) throw ArgumentError("symbol 'zc-inverse' is defined on SU2 only");
    return build_z_plus_c_inverse(band, cplx(p.num("c_re"), p.num("c_im")));
  }
  if (name == "schrodinger" || name == "multiplication") {
    const auto grid = grid_of(p, g, band);
    const auto f = named_function(p, p.str("function"), g, grid, band);
    if (name == "multiplication") return multiplication_symbol(f, band);
    return build_schrodinger(band, p.num("t"), GridFunction(grid, f.values().real().cast<cplx>()), p.num("delta"));
  }
  if (name == "random-invariant" || name == "random-gridded") {
    std::mt19937_64 rng(seed_of(p));
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    auto s = name == "random-invariant" ? Symbol::invariant(make_dual(g, band), name)
                                        : Symbol::gridded(make_dual(g, band), grid_of(p, g, band), name);
    for (Eigen::Index i = 0; i < s.data().size(); ++i) s.data()(i) = cplx(nd(rng), nd(rng));
    return s;
  }
  throw UsageError("unknown symbol builder '" + name +
                   "' (identity, power, hlhw, zc-inverse, schrodinger, multiplication, random-invariant, random-gridded)");
}

ClassParams class_params(const Params& p) {
  return {p.num("class_m"), p.num("class_rho"), p.num("class_delta"), static_cast<int>(p.integer("class_l"))};
}

std::pair<double, double> window_of(const Params& p, const Symbol& s, int l) {
  const double lo = p.num("window_lo");
  const double hi = p.str("window_hi") == "auto" ? shrink_band(s.group(), s.band(), l).lambda() : p.num("window_hi");
  return {lo, hi};
}

std::vector<FourierCoefficients> random_samples(const Params& p, const GroupId& g, const Band& band) {
  std::mt19937_64 rng(seed_of(p));
  const auto grid = haar_grid_for(g, band);
  std::vector<FourierCoefficients> out;
  for (long k = 0; k < p.integer("samples"); ++k) out.push_back(forward(random_band_limited(grid, band, rng), band));
  return out;
}

// ---------------------------------------------------------------------------------------
// Subcommands.

void cmd_transform(const Params& p, Report& r) {
  const auto g = group_of(p);
  const auto band = band_of(p, g);
  const auto grid = grid_of(p, g, band);
  std::mt19937_64 rng(seed_of(p));
  r.columns = {"sample", "roundtrip_error", "parseval_relative"};
  double worst = 0.0;
  for (long k = 0; k < p.integer("samples"); ++k) {
    const auto f = random_band_limited(grid, band, rng);
    const auto a = forward(f, band);
    const double rt = (inverse(a, grid).values() - f.values()).cwiseAbs().maxCoeff();
    const double l2 = f.lp_norm(2.0);
    const double pr = std::abs(l2_norm(a) - l2) / l2;
    worst = std::max({worst, rt, pr});
    r.rows.push_back({static_cast<long long>(k), rt, pr});
  }
  r.tolerances = {{"roundtrip", 1e-10}, {"parseval", 1e-10}};
  r.summary = {{"worst", worst}, {"grid_nodes", grid->size()}, {"dual_size", make_dual(g, band)->size()}};
  r.code = worst <= 1e-10 ? kOk : kViolation;
  r.verdict = std::string(r.code == kOk ? "ok" : "violation") + " max_error=" + fmt17(worst);
}

SeminormReport run_seminorm(const Params& p, Symbol& s) {
  const auto g = group_of(p);
  const auto band = band_of(p, g);
  s = build_symbol(p, g, band);
  const auto cp = class_params(p);
  const auto [lo, hi] = window_of(p, s, cp.l);
  return seminorm(s, cp, lo, hi);
}

void seminorm_rows(const SeminormReport& rep, Report& r) {
  r.columns = {"entry", "lambda", "partial_sup"};
  for (const auto& e : rep.entries) {
    for (const auto& [lambda, sup] : e.sweep) r.rows.push_back({e.label(), lambda, sup});
  }
}

void cmd_seminorm(const Params& p, Report& r) {
  Symbol s = identity_symbol(GroupId::torus(1), Band(1.0));
  const auto rep = run_seminorm(p, s);
  seminorm_rows(rep, r);
  r.summary = to_json(rep);
  r.verdict = "overall=" + fmt17(rep.overall) + " entries=" + std::to_string(rep.entries.size());
}

void cmd_classcheck(const Params& p, Report& r) {
  Symbol s = identity_symbol(GroupId::torus(1), Band(1.0));
  const auto rep = run_seminorm(p, s);
  const auto v = class_membership(rep);
  r.columns = {"entry", "slope"};
  for (const auto& [name, slope] : v.slopes) r.rows.push_back({name, slope});
  r.summary = {{"consistent", v.consistent}, {"entry", v.entry}, {"slope", v.slope}, {"overall", rep.overall}};
  r.tolerances = {{"slope_threshold", kSlopeThreshold}};
  r.verdict = v.consistent ? "consistent" : "growth-detected entry=" + v.entry + " slope=" + fmt17(v.slope);
}

void cmd_quantize(const Params& p, Report& r) {
  const auto g = group_of(p);
  const auto band = band_of(p, g);
  const auto s = build_symbol(p, g, band);
  const auto grid = s.is_invariant() ? grid_of(p, g, band) : s.grid();
  const auto f = named_function(p, p.str("function"), g, grid, band);
  const auto af = apply(s, f);
  r.columns = {"node", "f_re", "f_im", "af_re", "af_im"};
  for (std::size_t i = 0; i < grid->size(); ++i)
    r.rows.push_back({static_cast<long long>(i), f[i].real(), f[i].imag(), af[i].real(), af[i].imag()});
  r.summary = {{"sup_f", f.sup_norm()}, {"sup_af", af.sup_norm()}, {"l2_af", af.lp_norm(2.0)}};
  r.verdict = "sup|Af|=" + fmt17(af.sup_norm());
}

void cmd_hsnorm(const Params& p, Report& r) {
  const auto g = group_of(p);
  const auto s = build_symbol(p, g, band_of(p, g));
  const double hs = hs_norm_symbol(s), hk = hs_norm_kernel(s);
  const double rel = hs > 0 ? std::abs(hk - hs) / hs : hk;
  r.columns = {"route", "value"};
  r.rows = {{std::string("symbol"), hs}, {std::string("kernel"), hk}};
  r.summary = {{"hs_symbol", hs}, {"hs_kernel", hk}, {"relative", rel}};
  r.tolerances = {{"relative", 1e-8}};
  r.code = rel <= 1e-8 ? kOk : kViolation;
  r.verdict = "hs=" + fmt17(hs) + " relative_mismatch=" + fmt17(rel);
}

void cmd_linf(const Params& p, Report& r) {
  const auto g = group_of(p);
  const auto band = band_of(p, g);
  const auto s = build_symbol(p, g, band);
  const auto audit = bound_audit(s, random_samples(p, g, band));
  r.columns = {"sample", "lhs", "rhs", "ok"};
  for (std::size_t k = 0; k < audit.samples.size(); ++k)
    r.rows.push_back({static_cast<long long>(k), audit.samples[k].lhs, audit.samples[k].rhs,
                      static_cast<long long>(audit.samples[k].ok)});
  const auto violations = std::count_if(audit.samples.begin(), audit.samples.end(), [](const auto& a) { return !a.ok; });
  r.summary = {{"linf_constant", audit.linf_constant}, {"violations", violations}};
  r.tolerances = {{"factor", 1.0 + 1e-8}};
  r.code = violations == 0 ? kOk : kViolation;
  r.verdict = "constant=" + fmt17(audit.linf_constant) + " violations=" + std::to_string(violations);
}

void cmd_sharpness(const Params& p, Report& r, std::ostream& err) {
  const auto series = sharpness_experiment(p.num("rho"), p.num("nu"), p.num("p"), p.int_list("lambdas"),
                                           static_cast<int>(p.integer("iterations")), seed_of(p));
  r.columns = {"lambda", "lower_bound"};
  bool ok = true;
  for (const auto& [l, v] : series.points) {
    r.rows.push_back({static_cast<long long>(l), v});
    ok = ok && v >= 0.0;
  }
  r.summary = to_json(series);
  r.summary.erase("seconds");
  r.tolerances = {{"growth_threshold", kGrowthThreshold}};
  r.code = ok ? kOk : kViolation;
  r.verdict = std::string(to_string(series.verdict)) + " slope=" + fmt17(series.slope) +
              " expected_rate=" + fmt17(series.expected_rate);
  err << "lp-sharpness took " << series.seconds << " s\n";
}

void cmd_interval(const Params& p, Report& r) {
  const auto t = fefferman_interval(static_cast<int>(p.integer("n")), p.num("rho"), p.num("nu"));
  r.columns = {"quantity", "value"};
  r.rows = {{std::string("half_width"), t.half_width}, {std::string("p_minus"), t.p_minus},
            {std::string("p_plus"), t.p_plus}};
  r.summary = to_json(t);
  r.code = t.inv_p_minus + t.inv_p_plus == 1.0 && t.p_minus <= 2.0 && t.p_plus >= 2.0 ? kOk : kViolation;
  r.verdict = t.full_range ? "p in (1, inf) full range"
                           : "p in [" + fmt17(t.p_minus) + ", " + fmt17(t.p_plus) + "]";
}

void cmd_threshold(const Params& p, Report& r) {
  const auto t = finite_regularity_threshold(static_cast<int>(p.integer("n")), p.num("p"), p.num("rho"), p.num("delta"));
  r.columns = {"quantity", "value"};
  r.rows = {{std::string("kappa"), static_cast<long long>(t.kappa)},
            {std::string("ell"), static_cast<long long>(t.ell)},
            {std::string("m0"), t.m0},
            {std::string("m0_first_order"), t.m0_first_order}};
  r.summary = to_json(t);
  r.code = t.kappa % 2 == 0 && t.kappa > t.n / 2.0 && t.kappa - 2 <= t.n / 2.0 ? kOk : kViolation;
  r.verdict = "kappa=" + std::to_string(t.kappa) + " ell=" + std::to_string(t.ell) + " m0=" + fmt17(t.m0);
}

void cmd_weyl(const Params& p, Report& r) {
  const auto g = group_of(p);
  const auto rows = weyl_count(g, p.list("lambdas"), p.num("alpha"));
  r.columns = {"lambda", "sum", "ratio"};
  for (const auto& w : rows) r.rows.push_back({w.lambda, w.sum, w.ratio});
  const auto series = weyl_series(g, p.num("s"), static_cast<int>(p.integer("levels")));
  r.summary = {{"series", to_json(series)}};
  r.verdict = "last_ratio=" + (rows.empty() ? std::string("none") : fmt17(rows.back().ratio)) + " s=" + fmt17(series.s) +
              (series.converges ? " converges" : " diverges") + " last_fraction=" + fmt17(series.last_fraction);
}

void cmd_bmo(const Params& p, Report& r) {
  const auto g = group_of(p);
  const auto band = band_of(p, g);
  const auto grid = grid_of(p, g, band);
  const auto f = named_function(p, p.str("function"), g, grid, band);
  const auto res = bmo_seminorm(f, p.list("radii"));
  r.columns = {"quantity", "value"};
  r.rows = {{std::string("bmo"), res.value}, {std::string("sup"), f.sup_norm()}, {std::string("radius"), res.radius}};
  r.summary = to_json(res);
  r.code = res.value <= 2.0 * f.sup_norm() * (1 + 1e-12) ? kOk : kViolation;
  r.verdict = "bmo=" + fmt17(res.value) + " sup=" + fmt17(f.sup_norm());
}

void cmd_audit(const Params& p, Report& r) {
  const auto g = group_of(p);
  const auto band = band_of(p, g);
  const auto s = build_symbol(p, g, band);
  const auto audit = bound_audit(s, random_samples(p, g, band));
  r.columns = {"lambda", "hs_band_sum"};
  for (const auto& [l, v] : audit.hs_tails) r.rows.push_back({l, v});
  r.summary = to_json(audit);
  r.tolerances = {{"linf_factor", 1.0 + 1e-8}, {"hs_relative", 1e-8}};
  r.code = audit.violations.empty() ? kOk : kViolation;
  r.verdict = "violations=" + std::to_string(audit.violations.size()) + " linf=" + fmt17(audit.linf_constant) +
              " hs_relative=" + fmt17(audit.hs_relative);
}

// Quick versions of the invariant checks; each returns (passed, measured value).
std::vector<std::pair<std::string, std::function<std::pair<bool, double>()>>> selftest_checks() {
  using Result = std::pair<bool, double>;
  auto random_inv = [](const GroupId& g, const Band& b, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    auto s = Symbol::invariant(make_dual(g, b), "random");
    for (Eigen::Index i = 0; i < s.data().size(); ++i) s.data()(i) = cplx(nd(rng), nd(rng));
    return s;
  };
  auto random_grid = [](const Band& b, const GridPtr& grid, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    auto s = Symbol::gridded(make_dual(grid->group(), b), grid, "random");
    for (Eigen::Index i = 0; i < s.data().size(); ++i) s.data()(i) = cplx(nd(rng), nd(rng));
    return s;
  };
  auto roundtrip = [](const GroupId& g, const Band& b) -> Result {
    std::mt19937_64 rng(1);
    const auto grid = haar_grid_for(g, b);
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
      const auto f = random_band_limited(grid, b, rng);
      const auto a = forward(f, b);
      worst = std::max(worst, (inverse(a, grid).values() - f.values()).cwiseAbs().maxCoeff());
      worst = std::max(worst, std::abs(l2_norm(a) - f.lp_norm(2.0)) / f.lp_norm(2.0));
    }
    return {worst <= 1e-10, worst};
  };
  return {
      {"fourier-roundtrip-T1", [=] { return roundtrip(GroupId::torus(1), Band::torus_radius(128)); }},
      {"fourier-roundtrip-SU2", [=] { return roundtrip(GroupId::su2(), Band::su2_twice_spin(12)); }},
      {"quantization-roundtrip",
       [=]() -> Result {
         std::mt19937_64 rng(2);
         double worst = 0.0;
         for (const auto& g : {GroupId::torus(1), GroupId::su2()}) {
           const Band b = g.is_su2() ? Band::su2_twice_spin(4) : Band::torus_radius(8);
           const auto grid = haar_grid_for(g, b);
           for (const Symbol& s : {random_inv(g, b, rng), random_grid(b, grid, rng)}) {
             const auto back = extract_symbol([&](const GridFunction& f) { return apply(s, f); }, b, grid);
             worst = std::max(worst, max_abs_difference(back, to_gridded(s, grid)));
           }
         }
         return {worst <= 1e-9, worst};
       }},
      {"hs-identity",
       [=]() -> Result {
         std::mt19937_64 rng(3);
         double worst = 0.0;
         for (const auto& g : {GroupId::torus(1), GroupId::su2()}) {
           const Band b = g.is_su2() ? Band::su2_twice_spin(4) : Band::torus_radius(16);
           const auto s = random_grid(b, haar_grid_for(g, b), rng);
           worst = std::max(worst, std::abs(hs_norm_kernel(s) - hs_norm_symbol(s)) / hs_norm_symbol(s));
         }
         return {worst <= 1e-8, worst};
       }},
      {"linf-bound",
       []() -> Result {
         std::mt19937_64 rng(4);
         const auto g = GroupId::torus(1);
         const Band b = Band::torus_radius(16);
         std::vector<FourierCoefficients> samples;
         for (int k = 0; k < 5; ++k) samples.push_back(forward(random_band_limited(haar_grid_for(g, b), b, rng), b));
         std::size_t violations = 0;
         for (const auto& s : {identity_symbol(g, b), build_multiplier_power(g, b, -1.0), build_hlhw(b, 0.5, 0.25)})
           violations += bound_audit(s, samples).violations.size();
         return {violations == 0, static_cast<double>(violations)};
       }},
      {"l2-anchor",
       [=]() -> Result {
         std::mt19937_64 rng(5);
         const auto s = random_inv(GroupId::torus(1), Band::torus_radius(8), rng);
         const double v = lp_lower_bound(realize(s), 2.0, 400, 1).value;
         const double rel = std::abs(v - l2_multiplier_norm(s)) / l2_multiplier_norm(s);
         return {rel <= 1e-6, rel};
       }},
      {"interval-symmetry",
       []() -> Result {
         std::mt19937_64 rng(6);
         std::uniform_real_distribution<double> u(0.0, 1.0);
         int bad = 0;
         for (int k = 0; k < 200; ++k) {
           const auto t = fefferman_interval(1 + k % 7, 0.01 + 0.98 * u(rng), 3.0 * u(rng));
           bad += t.inv_p_minus + t.inv_p_plus != 1.0;
         }
         return {bad == 0, static_cast<double>(bad)};
       }},
      {"kappa-parity",
       []() -> Result {
         int bad = 0;
         for (int n = 1; n <= 64; ++n) {
           const auto t = finite_regularity_threshold(n, 2.5, 0.5, 0.5);
           bad += !(t.kappa % 2 == 0 && t.kappa > n / 2.0 && t.kappa - 2 <= n / 2.0);
         }
         return {bad == 0, static_cast<double>(bad)};
       }},
      {"weyl-su2",
       []() -> Result {
         double worst = 0.0;
         for (const auto& w : weyl_count(GroupId::su2(), {12.0, 20.0, 40.0, 80.0}, 0.0))
           worst = std::max(worst, std::abs(w.ratio - 8.0 / 3.0) / (8.0 / 3.0));
         return {worst <= 0.1, worst};
       }},
      {"zc-inverse",
       []() -> Result {
         const auto g = GroupId::su2();
         const Band b = Band::su2_twice_spin(8);
         double worst = 0.0;
         for (cplx c : {cplx(1.0), cplx(0.3)}) {
           auto zc = vector_field_operator(g, b, 2);
           for (std::size_t i = 0; i < zc.dual().size(); ++i)
             zc.block(0, i) += c * CMatrix::Identity(zc.dual()[i].dim, zc.dual()[i].dim);
           worst = std::max(worst, max_abs_difference(symbol_product(build_z_plus_c_inverse(b, c), zc), identity_symbol(g, b)));
         }
         bool rejected = false;
         try {
           build_z_plus_c_inverse(b, cplx(0.0, -0.5));
         } catch (const SingularSymbolError& e) {
           rejected = e.mode_twice() == 1;
         }
         return {worst <= 1e-9 && rejected, worst};
       }},
      {"difference-routes",
       [=]() -> Result {
         std::mt19937_64 rng(7);
         const auto s = random_inv(GroupId::torus(1), Band::torus_radius(32), rng);
         double worst = 0.0;
         for (const auto& q : admissible_collection(GroupId::torus(1)))
           worst = std::max(worst, max_abs_difference(difference(q, s, DifferenceRoute::Kernel),
                                                      difference(q, s, DifferenceRoute::Shift)));
         return {worst <= 1e-11, worst};
       }},
  };
}

void cmd_selftest(const Params&, Report& r, std::ostream& out) {
  r.columns = {"check", "passed", "value"};
  int passed = 0, total = 0;
  for (const auto& [name, fn] : selftest_checks()) {
    bool ok = false;
    double value = 0.0;
    try {
      std::tie(ok, value) = fn();
    } catch (const std::exception& e) {
      out << "  " << name << ": exception " << e.what() << "\n";
    }
    ++total;
    passed += ok;
    out << (ok ? "PASS " : "FAIL ") << name << " " << fmt17(value) << "\n";
    r.rows.push_back({name, static_cast<long long>(ok), value});
  }
  r.summary = {{"passed", passed}, {"total", total}};
  r.code = passed == total ? kOk : kViolation;
  r.verdict = "selftest " + std::to_string(passed) + "/" + std::to_string(total) + " passed";
}

const std::vector<std::pair<std::string, std::string>>& subcommands() {
  static const std::vector<std::pair<std::string, std::string>> list = {
      {"transform", "forward/inverse round-trip and Parseval report"},
      {"seminorm", "seminorm entries and Lambda-sweeps of a symbol"},
      {"classcheck", "class membership verdict from the seminorm sweeps"},
      {"quantize", "apply a symbol to a named test function"},
      {"hsnorm", "Hilbert-Schmidt norm by symbol and kernel routes"},
      {"linf", "L-infinity bound constant and sample check"},
      {"lp-sharpness", "Lp lower bounds of truncated hlhw operators"},
      {"interval", "Fefferman interval arithmetic"},
      {"threshold", "finite regularity threshold arithmetic"},
      {"weyl", "Weyl counts and dyadic partial sums"},
      {"bmo", "BMO seminorm lower bound of a named function"},
      {"audit", "bound audit of a symbol"},
      {"selftest", "quick run of the invariant suite"},
  };
  return list;
}

}  // namespace

const std::map<std::string, std::string>& default_config() {
  static const std::map<std::string, std::string> d = {
      {"group", "T1"},
      {"band", "16"},
      {"resolution", "0"},
      {"symbol", "identity"},
      {"function", "coefficient"},
      {"s", "-1"},
      {"rho", "0.5"},
      {"nu", "0.25"},
      {"t", "1"},
      {"delta", "0"},
      {"c_re", "1"},
      {"c_im", "0"},
      {"class_m", "0"},
      {"class_rho", "1"},
      {"class_delta", "0"},
      {"class_l", "2"},
      {"window_lo", "1"},
      {"window_hi", "auto"},
      {"p", "2"},
      {"n", "1"},
      {"lambdas", "64,128,256,512,1024,2048,4096"},
      {"iterations", "20"},
      {"alpha", "0"},
      {"levels", "12"},
      {"radii", "0.19634954084936207,0.39269908169872414,0.78539816339744828,1.5707963267948966"},
      {"samples", "10"},
      {"seed", "1"},
      {"out", "."},
      {"threads", "0"},
  };
  return d;
}

std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ArgumentError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (!default_config().count(key)) throw ArgumentError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> resolve_config(const std::map<std::string, std::string>& file,
                                                  const std::map<std::string, std::string>& flags,
                                                  const char* env_out) {
  auto cfg = default_config();
  for (const auto& [k, v] : file) cfg[k] = v;
  if (env_out && *env_out) cfg["out"] = env_out;
  for (const auto& [k, v] : flags) cfg[k] = v;
  return cfg;
}

std::uint64_t config_hash(const std::string& experiment, const std::map<std::string, std::string>& config) {
  std::uint64_t h = 14695981039346656037ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  feed(experiment);
  feed("\n");
  for (const auto& [k, v] : config) {
    if (k == "out" || k == "threads") continue;
    feed(k + "=" + v + "\n");
  }
  return h;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matrix-symbol pseudo-differential operators on T^n and SU(2)", "gpdo"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "flat key = value configuration file");
  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option*> flag_options;
  for (const auto& [key, def] : default_config()) {
    flag_options[key] = app.add_option("--" + key, flag_values[key], "default: " + def);
  }
  for (const auto& [name, help] : subcommands()) app.add_subcommand(name, help)->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    std::map<std::string, std::string> file;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw UsageError("cannot read config file '" + config_path + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      file = parse_config(ss.str());
    }
    std::map<std::string, std::string> flags;
    for (const auto& [key, opt] : flag_options) {
      if (opt->count() > 0) flags[key] = flag_values[key];
    }
    const Params params(resolve_config(file, flags, std::getenv("GROUP_PDO_OUT")));
    const long threads = params.integer("threads");
    if (threads < 0) throw ArgumentError("threads must be nonnegative");
    if (threads > 0) set_max_threads(static_cast<unsigned>(threads));

    Report report;
    report.name = command;
    if (command == "transform") cmd_transform(params, report);
    else if (command == "seminorm") cmd_seminorm(params, report);
    else if (command == "classcheck") cmd_classcheck(params, report);
    else if (command == "quantize") cmd_quantize(params, report);
    else if (command == "hsnorm") cmd_hsnorm(params, report);
    else if (command == "linf") cmd_linf(params, report);
    else if (command == "lp-sharpness") cmd_sharpness(params, report, err);
    else if (command == "interval") cmd_interval(params, report);
    else if (command == "threshold") cmd_threshold(params, report);
    else if (command == "weyl") cmd_weyl(params, report);
    else if (command == "bmo") cmd_bmo(params, report);
    else if (command == "audit") cmd_audit(params, report);
    else if (command == "selftest") cmd_selftest(params, report, out);
    else throw UsageError("unknown subcommand '" + command + "'");

    out << report.verdict << "\n";
    write_report(report, params, err);
    return report.code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ArgumentError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const SingularSymbolError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const PrecisionError& e) {
    err << "precision error: " << e.what() << "\n";
    return kPrecision;
  } catch (const BandExhaustedError& e) {
    err << "band error: " << e.what() << "\n";
    return kPrecision;
  }
}

}  // namespace gpdo::cli
