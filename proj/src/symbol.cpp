#include "gpdo/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "gpdo/errors.hpp"
#include "gpdo/parallel.hpp"

namespace gpdo {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_compatible(const Symbol& a, const Symbol& b) {
  if (!(a.group() == b.group())) throw ArgumentError("symbols live on different groups");
  if (!(a.dual() == b.dual())) throw ArgumentError("symbols have different bands");
  if (!a.is_invariant() && !b.is_invariant() && a.grid() != b.grid())
    throw ArgumentError("gridded symbols use different grids");
}

Symbol like(const Symbol& s, DualPtr dual, std::string provenance) {
  return s.is_invariant() ? Symbol::invariant(std::move(dual), std::move(provenance))
                          : Symbol::gridded(std::move(dual), s.grid(), std::move(provenance));
}

// Nondecreasing sequences of length `len` over {0..k-1}.
void multisets(int k, int len, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == len) {
    out.push_back(cur);
    return;
  }
  for (int v = cur.empty() ? 0 : cur.back(); v < k; ++v) {
    cur.push_back(v);
    multisets(k, len, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> multisets(int k, int len) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  multisets(k, len, cur, out);
  return out;
}

}  // namespace

Symbol::Symbol(DualPtr dual, GridPtr grid, std::string provenance)
    : dual_(std::move(dual)), grid_(std::move(grid)), provenance_(std::move(provenance)) {
  const auto cols = grid_ ? static_cast<Eigen::Index>(grid_->size()) : 1;
  if (grid_ && !(grid_->group() == dual_->group())) throw ArgumentError("symbol grid and band use different groups");
  data_ = CMatrix::Zero(static_cast<Eigen::Index>(dual_->total_entries()), cols);
}

Symbol Symbol::invariant(DualPtr dual, std::string provenance) {
  return Symbol(std::move(dual), nullptr, std::move(provenance));
}

Symbol Symbol::gridded(DualPtr dual, GridPtr grid, std::string provenance) {
  if (!grid) throw ArgumentError("gridded symbol needs a grid");
  return Symbol(std::move(dual), std::move(grid), std::move(provenance));
}

Eigen::Map<CMatrix> Symbol::block(std::size_t x, std::size_t i) {
  const int d = (*dual_)[i].dim;
  return Eigen::Map<CMatrix>(data_.col(static_cast<Eigen::Index>(x)).data() + dual_->offset(i), d, d);
}

Eigen::Map<const CMatrix> Symbol::block(std::size_t x, std::size_t i) const {
  const int d = (*dual_)[i].dim;
  return Eigen::Map<const CMatrix>(data_.col(static_cast<Eigen::Index>(x)).data() + dual_->offset(i), d, d);
}

FourierCoefficients Symbol::at(std::size_t x) const {
  return FourierCoefficients(dual_, data_.col(static_cast<Eigen::Index>(x)));
}

void Symbol::set(std::size_t x, const FourierCoefficients& a) {
  if (!(a.dual() == *dual_)) throw ArgumentError("coefficients do not match the symbol band");
  data_.col(static_cast<Eigen::Index>(x)) = a.data();
}

double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.size() == 1) return std::abs(m(0, 0));
  return Eigen::JacobiSVD<CMatrix>(m).singularValues()(0);
}

Symbol identity_symbol(const GroupId& group, const Band& band) {
  return build_multiplier_power(group, band, 0.0);
}

Symbol build_multiplier_power(const GroupId& group, const Band& band, double s) {
  auto out = Symbol::invariant(make_dual(group, band), "multiplier_power(s=" + fmt(s) + ")");
  for (std::size_t i = 0; i < out.dual().size(); ++i) {
    const auto& xi = out.dual()[i];
    out.block(0, i) = std::pow(xi.weight(), s) * CMatrix::Identity(xi.dim, xi.dim);
  }
  return out;
}

Symbol build_hlhw(const Band& band, double rho, double nu) {
  if (!(rho > 0.0 && rho < 1.0)) throw ArgumentError("hlhw needs 0 < rho < 1");
  auto out = Symbol::invariant(make_dual(GroupId::torus(1), band), "hlhw(rho=" + fmt(rho) + ",nu=" + fmt(nu) + ")");
  for (std::size_t i = 0; i < out.dual().size(); ++i) {
    const double w = out.dual()[i].weight();
    out.block(0, i)(0, 0) = std::polar(std::pow(w, -nu), std::pow(w, 1.0 - rho));
  }
  return out;
}

Symbol build_schrodinger(const Band& band, double t, const GridFunction& f, double delta) {
  if (f.values().imag().cwiseAbs().maxCoeff() > 1e-12) throw ArgumentError("schrodinger phase function must be real");
  const auto& grid = f.grid();
  auto out = Symbol::gridded(make_dual(grid->group(), band), grid,
                             "schrodinger(t=" + fmt(t) + ",delta=" + fmt(delta) + ")");
  for (std::size_t n = 0; n < grid->size(); ++n) {
    for (std::size_t i = 0; i < out.dual().size(); ++i) {
      const auto& xi = out.dual()[i];
      out.block(n, i) = std::polar(1.0, t * f[n].real() * std::pow(xi.weight(), delta)) * CMatrix::Identity(xi.dim, xi.dim);
    }
  }
  return out;
}

Symbol build_z_plus_c_inverse(const Band& band, cplx c) {
  // i m + c = 0 exactly when m = i c.
  const cplx ic = cplx(0.0, 1.0) * c;
  const double twice = 2.0 * ic.real();
  if (std::abs(ic.imag()) <= 1e-12 && std::abs(twice - std::round(twice)) <= 2e-12) {
    const int m2 = static_cast<int>(std::lround(twice));
    const std::string m = (m2 % 2 == 0) ? std::to_string(m2 / 2) : std::to_string(m2) + "/2";
    throw SingularSymbolError("Z + c is not invertible: resonance at m=" + m, m2);
  }
  auto out = Symbol::invariant(make_dual(GroupId::su2(), band),
                               "z_plus_c_inverse(c=" + fmt(c.real()) + (c.imag() < 0 ? "" : "+") + fmt(c.imag()) + "i)");
  for (std::size_t i = 0; i < out.dual().size(); ++i) {
    const int j2 = out.dual()[i].twice_spin();
    auto blk = out.block(0, i);
    for (int a = 0; a <= j2; ++a) blk(a, a) = 1.0 / (cplx(0.0, 0.5 * (2 * a - j2)) + c);
  }
  return out;
}

Symbol multiplication_symbol(const GridFunction& a, const Band& band) {
  auto out = Symbol::gridded(make_dual(a.grid()->group(), band), a.grid(), "multiplication");
  for (std::size_t n = 0; n < a.size(); ++n) {
    for (std::size_t i = 0; i < out.dual().size(); ++i) {
      const int d = out.dual()[i].dim;
      out.block(n, i) = a[n] * CMatrix::Identity(d, d);
    }
  }
  return out;
}

Symbol vector_field_operator(const GroupId& group, const Band& band, int field) {
  auto out = Symbol::invariant(make_dual(group, band), "vector_field(" + std::to_string(field) + ")");
  for (std::size_t i = 0; i < out.dual().size(); ++i) out.block(0, i) = vector_field_symbol(group, field, out.dual()[i]);
  return out;
}

Symbol symbol_product(const Symbol& a, const Symbol& b) {
  require_compatible(a, b);
  const Symbol& base = a.is_invariant() ? b : a;
  auto out = like(base, a.dual_ptr(), a.provenance() + "*" + b.provenance());
  for (std::size_t x = 0; x < out.x_count(); ++x) {
    for (std::size_t i = 0; i < out.dual().size(); ++i)
      out.block(x, i) = a.block(a.is_invariant() ? 0 : x, i) * b.block(b.is_invariant() ? 0 : x, i);
  }
  return out;
}

Symbol symbol_adjoint(const Symbol& a) {
  auto out = like(a, a.dual_ptr(), "adjoint(" + a.provenance() + ")");
  for (std::size_t x = 0; x < out.x_count(); ++x) {
    for (std::size_t i = 0; i < out.dual().size(); ++i) out.block(x, i) = a.block(x, i).adjoint();
  }
  return out;
}

Symbol restrict_band(const Symbol& s, const Band& band) {
  auto dual = make_dual(s.group(), band);
  auto out = like(s, dual, s.provenance());
  for (std::size_t i = 0; i < dual->size(); ++i) {
    const auto j = s.dual().find((*dual)[i].label);
    if (!j) throw ArgumentError("restriction band exceeds the symbol band");
    for (std::size_t x = 0; x < out.x_count(); ++x) out.block(x, i) = s.block(x, *j);
  }
  return out;
}

Symbol to_gridded(const Symbol& s, GridPtr grid) {
  if (!s.is_invariant()) return s;
  auto out = Symbol::gridded(s.dual_ptr(), std::move(grid), s.provenance());
  out.data() = s.data().replicate(1, out.data().cols());
  return out;
}

double max_abs_difference(const Symbol& a, const Symbol& b) {
  if (!(a.group() == b.group())) throw ArgumentError("symbols live on different groups");
  const std::size_t cols = std::max(a.x_count(), b.x_count());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dual().size(); ++i) {
    const auto j = b.dual().find(a.dual()[i].label);
    if (!j) throw ArgumentError("second symbol does not cover the first symbol's band");
    for (std::size_t x = 0; x < cols; ++x) {
      const auto pa = a.block(a.is_invariant() ? 0 : x, i);
      const auto pb = b.block(b.is_invariant() ? 0 : x, *j);
      worst = std::max(worst, (pa - pb).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

Symbol extract_symbol(const GridOperator& op, const Band& band, GridPtr grid) {
  auto dual = make_dual(grid->group(), band);
  const std::size_t nodes = grid->size();
  const auto total = static_cast<Eigen::Index>(dual->total_entries());
  CMatrix reps(total, static_cast<Eigen::Index>(nodes));
  for (std::size_t n = 0; n < nodes; ++n) reps.col(static_cast<Eigen::Index>(n)) = rep_blocks(*dual, grid->node(n));
  // (A xi_e)(x_n) for every flat entry e.
  CMatrix applied(total, static_cast<Eigen::Index>(nodes));
  for (Eigen::Index e = 0; e < total; ++e) {
    const GridFunction g(grid, reps.row(e).transpose());
    applied.row(e) = op(g).values().transpose();
  }
  auto out = Symbol::gridded(dual, grid, "extracted");
  parallel_for(0, nodes, [&](std::size_t n) {
    const auto col = static_cast<Eigen::Index>(n);
    for (std::size_t i = 0; i < dual->size(); ++i) {
      const int d = (*dual)[i].dim;
      Eigen::Map<const CMatrix> xi(reps.col(col).data() + dual->offset(i), d, d);
      Eigen::Map<const CMatrix> axi(applied.col(col).data() + dual->offset(i), d, d);
      out.block(n, i) = xi.adjoint() * axi;
    }
  });
  return out;
}

std::vector<DifferenceOp> admissible_collection(const GroupId& group) {
  std::vector<DifferenceOp> ops;
  if (group.is_torus()) {
    for (int j = 0; j < group.dim(); ++j) {
      for (int sign : {1, -1}) {
        DifferenceOp q{sign > 0 ? "e^{ix" + std::to_string(j + 1) + "}-1" : "e^{-ix" + std::to_string(j + 1) + "}-1",
                       group,
                       [j, sign](const GroupPoint& y) {
                         return std::polar(1.0, sign * std::get<TorusPoint>(y).angles[j]) - 1.0;
                       },
                       1,
                       1,
                       std::nullopt};
        std::vector<int> s(group.dim(), 0);
        s[j] = sign;
        q.shift_rule = std::vector<std::pair<std::vector<int>, cplx>>{{s, 1.0}, {std::vector<int>(group.dim(), 0), -1.0}};
        ops.push_back(std::move(q));
      }
    }
    return ops;
  }
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      ops.push_back(DifferenceOp{"D^{1/2}_" + std::to_string(r + 1) + std::to_string(c + 1) + (r == c ? "-1" : ""),
                                 group,
                                 [r, c](const GroupPoint& y) {
                                   return su2_matrix(std::get<Quaternion>(y))(r, c) - (r == c ? 1.0 : 0.0);
                                 },
                                 1,
                                 1,
                                 std::nullopt});
    }
  }
  return ops;
}

DifferenceOp product_difference(const DifferenceOp& a, const DifferenceOp& b) {
  if (!(a.group == b.group)) throw ArgumentError("difference operators on different groups");
  DifferenceOp out{"(" + a.name + ")(" + b.name + ")", a.group,
                   [qa = a.q, qb = b.q](const GroupPoint& y) { return qa(y) * qb(y); },
                   a.band_units + b.band_units, a.order + b.order, std::nullopt};
  if (a.shift_rule && b.shift_rule) {
    std::map<std::vector<int>, cplx> terms;
    for (const auto& [sa, ca] : *a.shift_rule) {
      for (const auto& [sb, cb] : *b.shift_rule) {
        std::vector<int> s(sa.size());
        for (std::size_t k = 0; k < s.size(); ++k) s[k] = sa[k] + sb[k];
        terms[s] += ca * cb;
      }
    }
    out.shift_rule = std::vector<std::pair<std::vector<int>, cplx>>(terms.begin(), terms.end());
  }
  return out;
}

DifferenceOp rho_squared(const GroupId& group) {
  if (group.is_su2()) {
    return DifferenceOp{"rho^2", group,
                        [](const GroupPoint& y) { return cplx(2.0 - 2.0 * std::get<Quaternion>(y).w); }, 1, 2,
                        std::nullopt};
  }
  const int n = group.dim();
  DifferenceOp q{"rho^2", group,
                 [n](const GroupPoint& y) {
                   double s = 0.0;
                   for (int j = 0; j < n; ++j) s += 2.0 - 2.0 * std::cos(std::get<TorusPoint>(y).angles[j]);
                   return cplx(s);
                 },
                 1, 2, std::nullopt};
  std::vector<std::pair<std::vector<int>, cplx>> rule{{std::vector<int>(n, 0), cplx(2.0 * n)}};
  for (int j = 0; j < n; ++j) {
    for (int sign : {1, -1}) {
      std::vector<int> s(n, 0);
      s[j] = sign;
      rule.emplace_back(s, -1.0);
    }
  }
  q.shift_rule = std::move(rule);
  return q;
}

Symbol difference(const DifferenceOp& q, const Symbol& s, DifferenceRoute route) {
  if (!(q.group == s.group())) throw ArgumentError("difference operator and symbol use different groups");
  const Band inner = shrink_band(s.group(), s.band(), q.band_units);
  auto dual = make_dual(s.group(), inner);
  auto out = like(s, dual, "Delta[" + q.name + "](" + s.provenance() + ")");

  const bool use_shift = route == DifferenceRoute::Shift || (route == DifferenceRoute::Automatic && q.shift_rule);
  if (use_shift) {
    if (!q.shift_rule) throw ArgumentError("difference operator " + q.name + " has no shift rule");
    // Precompute source positions.
    std::vector<std::vector<std::pair<std::size_t, cplx>>> sources(dual->size());
    for (std::size_t i = 0; i < dual->size(); ++i) {
      const auto& k = (*dual)[i].label;
      for (const auto& [shift, c] : *q.shift_rule) {
        std::vector<int> src(k.size());
        for (std::size_t t = 0; t < k.size(); ++t) src[t] = k[t] - shift[t];
        const auto j = s.dual().find(src);
        if (!j) throw BandExhaustedError("shift rule of " + q.name + " reaches outside the band");
        sources[i].emplace_back(*j, c);
      }
    }
    parallel_for(0, out.x_count(), [&](std::size_t x) {
      for (std::size_t i = 0; i < dual->size(); ++i) {
        cplx acc = 0.0;
        for (const auto& [j, c] : sources[i]) acc += c * s.data()(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(x));
        out.data()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(x)) = acc;
      }
    });
    return out;
  }

  const auto grid = haar_grid_for(s.group(), s.band());
  grid->require_band(s.band(), "difference operator");
  CVector qv(static_cast<Eigen::Index>(grid->size()));
  for (std::size_t n = 0; n < grid->size(); ++n) qv(static_cast<Eigen::Index>(n)) = q.q(grid->node(n));
  parallel_for(0, out.x_count(), [&](std::size_t x) {
    GridFunction k = inverse(s.at(x), grid);
    k.values().array() *= qv.array();
    out.set(x, forward(k, inner));
  });
  return out;
}

Symbol laplace_difference(const Symbol& s) { return difference(rho_squared(s.group()), s); }

Symbol invariant_derivative(const std::vector<int>& beta, const Symbol& s) {
  std::string name = "d[";
  for (std::size_t k = 0; k < beta.size(); ++k) {
    if (beta[k] < 0 || beta[k] >= s.group().dim()) throw ArgumentError("vector field index out of range");
    name += (k ? "," : "") + std::to_string(beta[k]);
  }
  name += "](" + s.provenance() + ")";
  if (beta.empty()) {
    Symbol out = s;
    return out;
  }
  if (s.is_invariant()) return Symbol::invariant(s.dual_ptr(), name);

  const auto& grid = s.grid();
  const Band xband = grid->exactness_band();
  auto xdual = make_dual(s.group(), xband);
  // S(eta) = sigma_{beta[0]}(eta) ... sigma_{beta[k]}(eta)
  FourierCoefficients mult(xdual);
  for (std::size_t i = 0; i < xdual->size(); ++i) {
    const auto& eta = (*xdual)[i];
    CMatrix m = CMatrix::Identity(eta.dim, eta.dim);
    for (int f : beta) m = m * vector_field_symbol(s.group(), f, eta);
    mult.block(i) = m;
  }
  auto out = Symbol::gridded(s.dual_ptr(), grid, name);
  const auto rows = static_cast<std::size_t>(s.data().rows());
  parallel_for(0, rows, [&](std::size_t e) {
    const GridFunction g(grid, s.data().row(static_cast<Eigen::Index>(e)).transpose());
    FourierCoefficients gh = forward(g, xband);
    const double scale = std::max(1.0, g.sup_norm());
    if ((inverse(gh, grid).values() - g.values()).cwiseAbs().maxCoeff() > 1e-8 * scale)
      throw PrecisionError("invariant derivative: x-dependence of the symbol exceeds the exactness band lambda=" +
                           fmt(xband.lambda()) + " of the grid");
    for (std::size_t i = 0; i < xdual->size(); ++i) gh.block(i) = mult.block(i) * gh.block(i);
    out.data().row(static_cast<Eigen::Index>(e)) = inverse(gh, grid).values().transpose();
  });
  return out;
}

std::string SeminormEntry::label() const {
  std::string s = "a=(";
  for (std::size_t k = 0; k < alpha.size(); ++k) s += (k ? "," : "") + std::to_string(alpha[k]);
  s += ") b=(";
  for (std::size_t k = 0; k < beta.size(); ++k) s += (k ? "," : "") + std::to_string(beta[k]);
  return s + ")";
}

SeminormReport seminorm(const Symbol& s, const ClassParams& params, double window_lo, double window_hi) {
  if (params.l < 0) throw ArgumentError("seminorm order must be nonnegative");
  if (!(params.rho >= 0 && params.rho <= 1 && params.delta >= 0 && params.delta <= 1))
    throw ArgumentError("class parameters need 0 <= rho, delta <= 1");
  if (!(window_lo >= 1.0 && window_hi >= window_lo)) throw ArgumentError("seminorm window must satisfy 1 <= lo <= hi");
  const auto coll = admissible_collection(s.group());
  const GroupId group = s.group();
  int units = 0;
  for (int k = 0; k < params.l; ++k) units += coll.front().band_units;
  const Band inner = shrink_band(group, s.band(), units);
  if (Dual(group, inner).band().lambda() < window_hi * (1.0 - 1e-12))
    throw BandExhaustedError("seminorm window hi=" + fmt(window_hi) + " needs a band margin of " +
                             std::to_string(units) + " levels beyond it");

  SeminormReport report;
  report.params = params;
  report.window_lo = window_lo;
  report.window_hi = window_hi;
  report.collection_relative = params.delta >= params.rho;
  report.collection = group.name() + " canonical collection (";
  for (std::size_t k = 0; k < coll.size(); ++k) report.collection += (k ? ", " : "") + coll[k].name;
  report.collection += ")";
  if (report.collection_relative) report.collection += "; delta >= rho, so values are collection-relative";

  std::vector<double> marks;
  for (double v = window_lo; v < window_hi * (1.0 - 1e-12); v *= 2.0) marks.push_back(v);
  marks.push_back(window_hi);

  std::map<std::vector<int>, Symbol> derivs;
  std::map<std::pair<std::vector<int>, std::vector<int>>, Symbol> diffs;
  for (int total = 0; total <= params.l; ++total) {
    for (int b = 0; b <= total; ++b) {
      const int a = total - b;
      for (const auto& beta : multisets(group.dim(), b)) {
        if (!derivs.count(beta)) derivs.emplace(beta, invariant_derivative(beta, s));
        for (const auto& alpha : multisets(static_cast<int>(coll.size()), a)) {
          // Differences applied in listed order, reusing the shorter prefix.
          std::vector<int> prefix;
          const Symbol* cur = &derivs.at(beta);
          for (int op : alpha) {
            prefix.push_back(op);
            auto key = std::make_pair(beta, prefix);
            auto it = diffs.find(key);
            if (it == diffs.end()) it = diffs.emplace(key, difference(coll[op], *cur)).first;
            cur = &it->second;
          }
          const Symbol& sym = *cur;
          const double order = params.m - params.rho * a + params.delta * b;
          // Per-index max over x.
          std::vector<std::size_t> in_window;
          for (std::size_t i = 0; i < sym.dual().size(); ++i) {
            const double w = sym.dual()[i].weight();
            if (w >= window_lo * (1.0 - 1e-12) && w <= window_hi * (1.0 + 1e-12)) in_window.push_back(i);
          }
          std::vector<std::pair<double, double>> per_index(in_window.size());
          parallel_for(0, in_window.size(), [&](std::size_t k) {
            const std::size_t i = in_window[k];
            double best = 0.0;
            for (std::size_t x = 0; x < sym.x_count(); ++x) best = std::max(best, op_norm(sym.block(x, i)));
            const double w = sym.dual()[i].weight();
            per_index[k] = {w, best / std::pow(w, order)};
          });
          SeminormEntry entry;
          entry.alpha = alpha;
          entry.beta = beta;
          for (double mark : marks) {
            double sup = 0.0;
            for (const auto& [w, v] : per_index) {
              if (w <= mark * (1.0 + 1e-12)) sup = std::max(sup, v);
            }
            entry.sweep.emplace_back(mark, sup);
          }
          entry.sup = entry.sweep.back().second;
          report.overall = std::max(report.overall, entry.sup);
          report.entries.push_back(std::move(entry));
        }
      }
    }
  }
  return report;
}

double loglog_slope(const std::vector<std::pair<double, double>>& points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& [x, y] : points) {
    if (!(x > 0 && y > 0)) continue;
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return 0.0;
  const double den = n * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
}

ClassVerdict class_membership(const SeminormReport& report, double threshold) {
  ClassVerdict v;
  const double floor = 1e-10 * std::max(1.0, report.overall);
  for (const auto& e : report.entries) {
    if (e.sup <= floor) continue;
    std::vector<std::pair<double, double>> pts;
    for (const auto& pt : e.sweep) {
      if (pt.second > floor) pts.push_back(pt);
    }
    const double slope = loglog_slope(pts);
    v.slopes.emplace_back(e.label(), slope);
    if (v.consistent && slope > threshold) {
      v.consistent = false;
      v.entry = e.label();
      v.slope = slope;
    }
  }
  return v;
}

nlohmann::json to_json(const Symbol& s) {
  nlohmann::json j;
  j["group"] = s.group().name();
  j["band"] = s.band().lambda();
  j["provenance"] = s.provenance();
  j["x_dependence"] = s.is_invariant() ? "invariant" : "gridded";
  auto entries_at = [&](std::size_t x) {
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t i = 0; i < s.dual().size(); ++i) {
      const CMatrix m = s.block(x, i);
      entries.push_back({{"label", s.dual()[i].label}, {"re", matrix_to_json(m, "re")}, {"im", matrix_to_json(m, "im")}});
    }
    return entries;
  };
  if (s.is_invariant()) {
    j["entries"] = entries_at(0);
  } else {
    j["grid_resolution"] = s.grid()->resolution();
    nlohmann::json nodes = nlohmann::json::array();
    for (std::size_t n = 0; n < s.x_count(); ++n) nodes.push_back({{"node", n}, {"entries", entries_at(n)}});
    j["nodes"] = std::move(nodes);
  }
  return j;
}

nlohmann::json to_json(const SeminormReport& r) {
  nlohmann::json j;
  j["params"] = {{"m", r.params.m}, {"rho", r.params.rho}, {"delta", r.params.delta}, {"l", r.params.l}};
  j["window"] = {r.window_lo, r.window_hi};
  j["overall"] = r.overall;
  j["collection"] = r.collection;
  j["collection_relative"] = r.collection_relative;
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.entries) {
    nlohmann::json sweep = nlohmann::json::array();
    for (const auto& [lam, v] : e.sweep) sweep.push_back({lam, v});
    entries.push_back({{"alpha", e.alpha}, {"beta", e.beta}, {"sup", e.sup}, {"sweep", sweep}});
  }
  j["entries"] = std::move(entries);
  return j;
}

}  // namespace gpdo
