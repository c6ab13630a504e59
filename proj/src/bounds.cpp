#include "gpdo/bounds.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "gpdo/errors.hpp"
#include "gpdo/parallel.hpp"

namespace gpdo {

namespace {

constexpr double kPi = std::numbers::pi;

// Rows of B hold d xi(x_i) sigma(x_i, xi), so K(x_i, y) = sum B_i . conj(xi(y)) entrywise.
CMatrix kernel_left_factor(const Symbol& s, const std::vector<GroupPoint>& xs) {
  const Dual& dual = s.dual();
  CMatrix b(static_cast<Eigen::Index>(dual.total_entries()), static_cast<Eigen::Index>(xs.size()));
  parallel_for(0, xs.size(), [&](std::size_t k) {
    const CVector reps = rep_blocks(dual, xs[k]);
    const auto col = static_cast<Eigen::Index>(k);
    for (std::size_t i = 0; i < dual.size(); ++i) {
      const int d = dual[i].dim;
      Eigen::Map<const CMatrix> xi(reps.data() + dual.offset(i), d, d);
      // Tr(xi(y)^* xi(x) sigma) = sum_ab conj(xi(y)_ab) (xi(x) sigma)_ab
      Eigen::Map<CMatrix>(b.col(col).data() + dual.offset(i), d, d) =
          static_cast<double>(d) * xi * s.block(s.column(k), i);
    }
  });
  return b;
}

double weighted_l1(const GridFunction& f) {
  const auto& w = f.grid()->weights();
  double acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) acc += w[j] * std::abs(f[j]);
  return acc;
}

double lp_norm_plain(const CVector& v, double p) {
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return scale * std::pow((v.cwiseAbs() / scale).array().pow(p).sum(), 1.0 / p);
}

// |v|^{r-1} v / |v|, with v rescaled by its largest entry first.
CVector duality_map(const CVector& v, double r) {
  const double scale = v.cwiseAbs().maxCoeff();
  CVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    out(i) = a == 0.0 ? cplx(0.0) : v(i) / a * std::pow(a / scale, r - 1.0);
  }
  return out;
}

void require_finite_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw ArgumentError("p must lie in (1, inf)");
}

}  // namespace

double hs_norm_symbol(const Symbol& s) {
  const Dual& dual = s.dual();
  double total = 0.0;
  for (std::size_t x = 0; x < s.x_count(); ++x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < dual.size(); ++i) acc += dual[i].dim * s.block(x, i).squaredNorm();
    total += (s.is_invariant() ? 1.0 : s.grid()->weights()[x]) * acc;
  }
  return std::sqrt(total);
}

double hs_norm_kernel(const Symbol& s) {
  const Dual& dual = s.dual();
  const GridPtr ygrid = haar_grid_for(s.group(), s.band());
  std::vector<GroupPoint> xs;
  std::vector<double> xw;
  if (s.is_invariant()) {
    // K(x, y) = k(y^{-1} x): every row has the same L2 norm, take x = e.
    xs.push_back(identity_point(s.group()));
    xw.push_back(1.0);
  } else {
    xs = s.grid()->nodes();
    xw = s.grid()->weights();
  }
  const CMatrix b = kernel_left_factor(s, xs);
  const auto total = static_cast<Eigen::Index>(dual.total_entries());
  const std::size_t chunk = std::max<std::size_t>(64, (std::size_t{1} << 24) / std::max<Eigen::Index>(1, total));
  const auto& yw = ygrid->weights();
  double acc = 0.0;
  for (std::size_t j0 = 0; j0 < ygrid->size(); j0 += chunk) {
    const std::size_t j1 = std::min(ygrid->size(), j0 + chunk);
    CMatrix r(total, static_cast<Eigen::Index>(j1 - j0));
    parallel_for(j0, j1, [&](std::size_t j) {
      r.col(static_cast<Eigen::Index>(j - j0)) = rep_blocks(dual, ygrid->node(j)).conjugate();
    });
    const CMatrix k = b.transpose() * r;  // K(x_i, y_j)
    for (Eigen::Index jj = 0; jj < k.cols(); ++jj) {
      double col = 0.0;
      for (Eigen::Index i = 0; i < k.rows(); ++i) col += xw[static_cast<std::size_t>(i)] * std::norm(k(i, jj));
      acc += yw[j0 + static_cast<std::size_t>(jj)] * col;
    }
  }
  return std::sqrt(acc);
}

GridPtr linf_quadrature_grid(const Symbol& s) {
  // |K| has kinks at the zeros of the kernel, so the torus uses a 64-fold refinement,
  // capped at about 2^22 nodes in total.
  const auto base = haar_grid_for(s.group(), s.band());
  if (s.group().is_torus()) {
    const int dim = s.group().dim();
    const int per = base->torus_points_per_dim();
    const auto cap = static_cast<int>(std::pow(4194304.0, 1.0 / dim));
    return haar_grid(s.group(), std::max(2 * per, std::min(64 * per, cap)));
  }
  return haar_grid(s.group(), 2 * std::max(1, base->resolution()));
}

double linf_bound_constant(const Symbol& s, GridPtr quadrature) {
  if (!quadrature) quadrature = linf_quadrature_grid(s);
  if (!(quadrature->group() == s.group())) throw ArgumentError("quadrature grid uses a different group");
  double best = 0.0;
  for (std::size_t x = 0; x < s.x_count(); ++x) best = std::max(best, weighted_l1(inverse(s.at(x), quadrature)));
  return best;
}

double l2_multiplier_norm(const Symbol& s) {
  if (!s.is_invariant()) throw ArgumentError("l2_multiplier_norm requires an invariant symbol");
  double best = 0.0;
  for (std::size_t i = 0; i < s.dual().size(); ++i) best = std::max(best, op_norm(s.block(0, i)));
  return best;
}

double lp_quotient(const DenseOperator& m, const GridFunction& f, double p) {
  require_finite_p(p);
  const double den = f.lp_norm(p);
  if (den == 0.0) throw ArgumentError("lp_quotient of the zero function");
  return GridFunction(m.grid, m.matrix * f.values()).lp_norm(p) / den;
}

LpBound lp_lower_bound(const DenseOperator& m, double p, int iterations, std::uint64_t seed) {
  require_finite_p(p);
  if (iterations < 1) throw ArgumentError("iterations must be at least 1");
  const auto n = m.matrix.rows();
  const double q = p / (p - 1.0);
  // In g = W^{1/p} f the weighted problem becomes the plain l^p problem for B = W^{1/p} M W^{-1/p}.
  Eigen::VectorXd wp(n);
  for (Eigen::Index i = 0; i < n; ++i) wp(i) = std::pow(m.grid->weights()[static_cast<std::size_t>(i)], 1.0 / p);
  const auto apply_b = [&](const CVector& g) -> CVector { return wp.asDiagonal() * (m.matrix * wp.cwiseInverse().asDiagonal() * g); };
  const auto apply_bh = [&](const CVector& z) -> CVector {
    return wp.cwiseInverse().asDiagonal() * (m.matrix.adjoint() * (wp.asDiagonal() * z));
  };

  struct Start {
    std::string name;
    CVector g;
  };
  std::vector<Start> starts;
  for (int k = 0; k < 5; ++k) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(k));
    std::normal_distribution<double> nd;
    CVector g(n);
    for (Eigen::Index i = 0; i < n; ++i) g(i) = cplx(nd(rng), nd(rng));
    starts.push_back({"random-" + std::to_string(k), g});
  }
  // The grid Dirichlet kernel at node 0 is e_0 / w_0; its image under W^{1/p} is parallel to e_0.
  CVector delta = CVector::Zero(n);
  delta(0) = 1.0;
  starts.push_back({"dirichlet", delta});
  starts.push_back({"adjoint-dirichlet", apply_bh(delta)});

  struct Outcome {
    double value = 0.0;
    CVector g;
    std::vector<double> history;
    int restarts = 0;
    std::vector<std::string> warnings;
  };
  std::vector<Outcome> out(starts.size());
  parallel_for(0, starts.size(), [&](std::size_t k) {
    Outcome& o = out[k];
    CVector g = starts[k].g;
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (k + 1)));
    std::normal_distribution<double> nd;
    double prev = -1.0;
    int stalls = 0;
    for (int it = 0; it < iterations; ++it) {
      double norm = lp_norm_plain(g, p);
      CVector y = norm > 0.0 ? apply_b(g / norm) : CVector::Zero(n);
      if (norm == 0.0 || y.cwiseAbs().maxCoeff() == 0.0) {
        if (o.restarts >= 3) {
          o.warnings.push_back(starts[k].name + ": zero iterate after 3 restarts");
          break;
        }
        ++o.restarts;
        o.warnings.push_back(starts[k].name + ": zero iterate, restarted with perturbed seed");
        const double scale = norm > 0.0 ? g.cwiseAbs().maxCoeff() : 1.0;
        for (Eigen::Index i = 0; i < n; ++i) g(i) += 1e-3 * scale * cplx(nd(rng), nd(rng));
        continue;
      }
      g /= norm;
      const double value = lp_norm_plain(y, p);
      o.history.push_back(value);
      if (value > o.value) {
        o.value = value;
        o.g = g;
      }
      const CVector z = apply_bh(duality_map(y, p));
      if (z.cwiseAbs().maxCoeff() == 0.0) break;
      g = duality_map(z, q);
      stalls = (value <= prev * (1.0 + 1e-13)) ? stalls + 1 : 0;
      if (stalls >= 2) break;
      prev = value;
    }
  });

  LpBound r;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    r.history.push_back(out[k].history);
    r.restarts += out[k].restarts;
    r.warnings.insert(r.warnings.end(), out[k].warnings.begin(), out[k].warnings.end());
    if (out[k].value > r.value || !r.witness) {
      if (out[k].g.size() == 0) continue;
      r.value = out[k].value;
      r.witness_start = starts[k].name;
      CVector f = wp.cwiseInverse().asDiagonal() * out[k].g;
      r.witness = GridFunction(m.grid, std::move(f));
    }
  }
  return r;
}

double group_diameter(const GroupId& group) {
  return group.is_torus() ? kPi * std::sqrt(static_cast<double>(group.dim())) : 2.0 * kPi;
}

BmoResult bmo_seminorm(const GridFunction& g, const std::vector<double>& radii) {
  const auto& grid = g.grid();
  const double half = group_diameter(grid->group()) / 2.0;
  for (double r : radii) {
    if (!(r > 0.0) || r > half * (1.0 + 1e-12)) throw ArgumentError("ball radius outside (0, diameter/2]");
  }
  const auto& w = grid->weights();
  const std::size_t n = grid->size();
  struct Best {
    double value = 0.0;
    std::size_t center = 0;
    double radius = 0.0;
    std::size_t empty = 0;
  };
  std::vector<Best> per_center(n);
  parallel_for(0, n, [&](std::size_t c) {
    std::vector<double> dist(n);
    for (std::size_t j = 0; j < n; ++j) dist[j] = geodesic_distance(grid->group(), grid->node(j), grid->node(c));
    Best& b = per_center[c];
    b.center = c;
    for (double r : radii) {
      double mu = 0.0;
      cplx mean = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (dist[j] <= r) {
          mu += w[j];
          mean += w[j] * g[j];
        }
      }
      if (mu == 0.0) {
        ++b.empty;
        continue;
      }
      mean /= mu;
      double osc = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (dist[j] <= r) osc += w[j] * std::abs(g[j] - mean);
      }
      osc /= mu;
      if (osc > b.value) {
        b.value = osc;
        b.radius = r;
      }
    }
  });
  BmoResult res;
  std::size_t empty = 0;
  for (const auto& b : per_center) {
    empty += b.empty;
    if (b.value > res.value) {
      res.value = b.value;
      res.center = b.center;
      res.radius = b.radius;
    }
  }
  if (empty > 0) res.warnings.push_back(std::to_string(empty) + " empty balls skipped");
  return res;
}

IntervalReport fefferman_interval(int n, double rho, double nu) {
  if (n < 1) throw ArgumentError("dimension must be positive");
  if (!(rho > 0.0 && rho < 1.0)) throw ArgumentError("rho must lie in (0, 1)");
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw ArgumentError("nu must be a finite nonnegative number");
  IntervalReport r;
  r.n = n;
  r.rho = rho;
  r.nu = nu;
  r.ratio = nu / (n * (1.0 - rho));
  r.half_width = std::min(r.ratio, 0.5);
  r.full_range = nu >= n * (1.0 - rho) / 2.0;
  r.inv_p_minus = 0.5 + r.half_width;
  r.inv_p_plus = 1.0 - r.inv_p_minus;
  r.p_minus = 1.0 / r.inv_p_minus;
  r.p_plus = r.inv_p_plus == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / r.inv_p_plus;
  return r;
}

ThresholdReport finite_regularity_threshold(int n, double p, double rho, double delta) {
  if (n < 1) throw ArgumentError("dimension must be positive");
  require_finite_p(p);
  ThresholdReport r;
  r.n = n;
  r.p = p;
  r.rho = rho;
  r.delta = delta;
  r.kappa = 2 * (n / 4 + 1);
  r.ell = static_cast<int>(std::floor(n / p)) + 1;
  const double base = r.kappa * (1.0 - rho) * std::abs(1.0 / p - 0.5);
  r.m0 = base + delta * r.ell;
  r.first_order = p > n;
  r.m0_first_order = base + delta;
  return r;
}

const char* to_string(Verdict v) { return v == Verdict::Growth ? "growth" : "plateau"; }

double final_decade_slope(const std::vector<std::pair<int, double>>& points) {
  if (points.empty()) return 0.0;
  const double top = points.back().first;
  std::vector<std::pair<double, double>> fit;
  for (const auto& [l, v] : points) {
    if (l >= top / 10.0 && v > 0.0) fit.emplace_back(l, v);
  }
  return loglog_slope(fit);
}

Verdict classify_slope(double slope) { return slope > kGrowthThreshold ? Verdict::Growth : Verdict::Plateau; }

SharpnessSeries sharpness_experiment(double rho, double nu, double p, const std::vector<int>& lambdas, int iterations,
                                     std::uint64_t seed) {
  if (!(rho > 0.0 && rho < 1.0)) throw ArgumentError("rho must lie in (0, 1)");
  if (!(nu >= 0.0 && nu < (1.0 - rho) / 2.0)) throw ArgumentError("nu must lie in [0, (1 - rho)/2)");
  require_finite_p(p);
  if (lambdas.empty()) throw ArgumentError("empty Lambda list");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (lambdas[i] < 1 || (i > 0 && lambdas[i] <= lambdas[i - 1]))
      throw ArgumentError("Lambda list must be positive and strictly increasing");
  }
  const auto t0 = std::chrono::steady_clock::now();
  SharpnessSeries r;
  r.rho = rho;
  r.nu = nu;
  r.p = p;
  r.iterations = iterations;
  r.seed = seed;
  const auto t1 = GroupId::torus(1);
  for (int lambda : lambdas) {
    const Band band = Band::torus_radius(lambda);
    const auto grid = haar_grid(t1, 2 * lambda + 1);
    grid->require_band(band, "sharpness_experiment");
    const auto m = realize(build_hlhw(band, rho, nu), grid);
    r.points.emplace_back(lambda, lp_lower_bound(m, p, iterations, seed).value);
  }
  r.slope = final_decade_slope(r.points);
  r.verdict = classify_slope(r.slope);
  r.expected_rate = std::max(0.0, (1.0 - rho) * std::abs(0.5 - 1.0 / p) - nu);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<WeylRow> weyl_count(const GroupId& group, const std::vector<double>& lambdas, double alpha) {
  std::vector<WeylRow> rows;
  if (lambdas.empty()) return rows;
  const double top = *std::max_element(lambdas.begin(), lambdas.end());
  auto idx = dual_enumerate(group, top);
  std::sort(idx.begin(), idx.end(), [](const DualIndex& a, const DualIndex& b) { return a.weight() < b.weight(); });
  const double n = group.dim();
  for (double lambda : lambdas) {
    WeylRow row;
    row.lambda = lambda;
    const Band band(lambda);
    for (const auto& xi : idx) {
      if (!band.contains(xi.casimir)) break;
      row.sum += static_cast<double>(xi.dim) * xi.dim * std::pow(xi.weight(), alpha * n);
    }
    row.ratio = row.sum / std::pow(lambda, (alpha + 1.0) * n);
    rows.push_back(row);
  }
  return rows;
}

WeylSeries weyl_series(const GroupId& group, double s, int levels) {
  if (levels < 1) throw ArgumentError("levels must be at least 1");
  std::vector<double> marks;
  for (int j = 0; j <= levels; ++j) marks.push_back(std::ldexp(1.0, j));
  const auto rows = weyl_count(group, marks, -s / group.dim());
  WeylSeries w;
  w.s = s;
  for (const auto& r : rows) {
    w.lambdas.push_back(r.lambda);
    w.partial.push_back(r.sum);
  }
  std::vector<std::pair<int, double>> inc;
  for (std::size_t j = 1; j < w.partial.size(); ++j) {
    w.increments.push_back(w.partial[j] - w.partial[j - 1]);
    inc.emplace_back(static_cast<int>(w.lambdas[j]), w.increments.back());
  }
  w.increment_slope = final_decade_slope(inc);
  w.last_fraction = w.increments.back() / w.partial.back();
  w.converges = w.increment_slope < 0.0 && w.last_fraction < 0.1;
  return w;
}

AuditReport bound_audit(const Symbol& s, const std::vector<FourierCoefficients>& f_samples) {
  AuditReport r;
  const GridPtr q = linf_quadrature_grid(s);
  r.linf_constant = linf_bound_constant(s, q);
  for (std::size_t k = 0; k < f_samples.size(); ++k) {
    const auto& f = f_samples[k];
    if (!(f.group() == s.group())) throw ArgumentError("sample and symbol use different groups");
    AuditSample a;
    const GridFunction fq = inverse(f, q);
    if (s.is_invariant()) {
      a.lhs = apply(s, fq).sup_norm();
      a.rhs = r.linf_constant * fq.sup_norm();
    } else {
      const GridFunction fs = inverse(f, s.grid());
      a.lhs = apply(s, fs).sup_norm();
      a.rhs = r.linf_constant * std::max(fs.sup_norm(), fq.sup_norm());
    }
    a.ok = a.lhs <= (1.0 + 1e-8) * a.rhs;
    if (!a.ok) r.violations.push_back("linf bound violated on sample " + std::to_string(k));
    r.samples.push_back(a);
  }

  r.hs_symbol = hs_norm_symbol(s);
  r.hs_kernel = hs_norm_kernel(s);
  r.hs_relative = r.hs_symbol > 0.0 ? std::abs(r.hs_kernel - r.hs_symbol) / r.hs_symbol : r.hs_kernel;
  r.hs_ok = r.hs_relative <= 1e-8;
  if (!r.hs_ok) r.violations.push_back("HS identity mismatch");

  // Order from sup_x ||sigma(x, xi)||_op against <xi>, and x-averaged HS mass per xi.
  const Dual& dual = s.dual();
  std::vector<std::pair<double, double>> decay;
  std::vector<double> mass(dual.size(), 0.0);
  for (std::size_t i = 0; i < dual.size(); ++i) {
    double sup = 0.0;
    for (std::size_t x = 0; x < s.x_count(); ++x) {
      sup = std::max(sup, op_norm(s.block(x, i)));
      mass[i] += (s.is_invariant() ? 1.0 : s.grid()->weights()[x]) * dual[i].dim * s.block(x, i).squaredNorm();
    }
    if (dual[i].weight() >= 2.0 && sup > 0.0) decay.emplace_back(dual[i].weight(), sup);
  }
  r.measured_order = decay.size() >= 2 ? -loglog_slope(decay) : 0.0;
  r.hs_decay_applies = r.measured_order > s.group().dim() / 2.0;

  const double lambda = s.band().lambda();
  std::vector<std::pair<double, double>> tails;
  for (double lo = 1.0; 2.0 * lo <= lambda * (1.0 + 1e-12); lo *= 2.0) {
    double sum = 0.0;
    for (std::size_t i = 0; i < dual.size(); ++i) {
      const double wgt = dual[i].weight();
      if (wgt > lo && wgt <= 2.0 * lo) sum += mass[i];
    }
    r.hs_tails.emplace_back(lo, sum);
    if (lo >= 2.0 && sum > 0.0) tails.emplace_back(lo, sum);
  }
  r.hs_tail_slope = tails.size() >= 2 ? loglog_slope(tails) : 0.0;
  if (r.hs_decay_applies) {
    r.hs_cauchy_ok = tails.size() < 2 || r.hs_tail_slope < 0.0;
    if (!r.hs_cauchy_ok) r.violations.push_back("HS dyadic tails do not decay");
  }
  return r;
}

nlohmann::json to_json(const LpBound& r) {
  nlohmann::json j{{"value", r.value}, {"witness_start", r.witness_start}, {"restarts", r.restarts},
                   {"warnings", r.warnings}, {"history", r.history}};
  return j;
}

nlohmann::json to_json(const BmoResult& r) {
  return {{"value", r.value}, {"center", r.center}, {"radius", r.radius}, {"warnings", r.warnings}};
}

nlohmann::json to_json(const IntervalReport& r) {
  nlohmann::json j{{"n", r.n},
                   {"rho", r.rho},
                   {"nu", r.nu},
                   {"ratio", r.ratio},
                   {"half_width", r.half_width},
                   {"inv_p_minus", r.inv_p_minus},
                   {"inv_p_plus", r.inv_p_plus},
                   {"p_minus", r.p_minus},
                   {"full_range", r.full_range}};
  if (std::isinf(r.p_plus))
    j["p_plus"] = "inf";
  else
    j["p_plus"] = r.p_plus;
  return j;
}

nlohmann::json to_json(const ThresholdReport& r) {
  return {{"n", r.n},         {"p", r.p},   {"rho", r.rho},
          {"delta", r.delta}, {"kappa", r.kappa}, {"ell", r.ell},
          {"m0", r.m0},       {"first_order", r.first_order}, {"m0_first_order", r.m0_first_order}};
}

nlohmann::json to_json(const SharpnessSeries& r) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& [l, v] : r.points) pts.push_back({{"lambda", l}, {"bound", v}});
  return {{"rho", r.rho},
          {"nu", r.nu},
          {"p", r.p},
          {"iterations", r.iterations},
          {"seed", r.seed},
          {"series", pts},
          {"slope", r.slope},
          {"verdict", to_string(r.verdict)},
          {"expected_rate", r.expected_rate},
          {"seconds", r.seconds}};
}

nlohmann::json to_json(const WeylSeries& r) {
  return {{"s", r.s},
          {"lambdas", r.lambdas},
          {"partial", r.partial},
          {"increments", r.increments},
          {"increment_slope", r.increment_slope},
          {"last_fraction", r.last_fraction},
          {"converges", r.converges}};
}

nlohmann::json to_json(const AuditReport& r) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& a : r.samples) samples.push_back({{"lhs", a.lhs}, {"rhs", a.rhs}, {"ok", a.ok}});
  nlohmann::json tails = nlohmann::json::array();
  for (const auto& [l, v] : r.hs_tails) tails.push_back({{"lambda", l}, {"band_sum", v}});
  return {{"linf_constant", r.linf_constant},
          {"samples", samples},
          {"hs_symbol", r.hs_symbol},
          {"hs_kernel", r.hs_kernel},
          {"hs_relative", r.hs_relative},
          {"hs_ok", r.hs_ok},
          {"measured_order", r.measured_order},
          {"hs_decay_applies", r.hs_decay_applies},
          {"hs_tails", tails},
          {"hs_tail_slope", r.hs_tail_slope},
          {"hs_cauchy_ok", r.hs_cauchy_ok},
          {"violations", r.violations}};
}

}  // namespace gpdo
