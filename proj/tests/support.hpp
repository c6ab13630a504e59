#pragma once

#include <random>

#include "gpdo/quantize.hpp"
#include "gpdo/symbol.hpp"

namespace gpdo::testing {

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& v) {
  return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

inline cplx gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  return {n(rng), n(rng)};
}

inline Symbol random_invariant(const GroupId& g, const Band& band, std::mt19937_64& rng) {
  auto s = Symbol::invariant(make_dual(g, band), "random");
  for (Eigen::Index i = 0; i < s.data().size(); ++i) s.data()(i) = gaussian(rng);
  return s;
}

inline Symbol random_gridded(const Band& band, const GridPtr& grid, std::mt19937_64& rng) {
  auto s = Symbol::gridded(make_dual(grid->group(), band), grid, "random");
  for (Eigen::Index i = 0; i < s.data().size(); ++i) s.data()(i) = gaussian(rng);
  return s;
}

// Gridded symbol whose x-dependence is band-limited within `xband`.
inline Symbol smooth_gridded(const Band& band, const GridPtr& grid, const Band& xband, std::mt19937_64& rng) {
  auto s = Symbol::gridded(make_dual(grid->group(), band), grid, "smooth");
  for (Eigen::Index e = 0; e < s.data().rows(); ++e) s.data().row(e) = random_band_limited(grid, xband, rng).values().transpose();
  return s;
}

// Operator norm on L^2(grid, w): ||W^{1/2} M W^{-1/2}||_2.
inline double weighted_l2_norm(const DenseOperator& m) {
  const auto n = m.matrix.rows();
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) w(i) = m.grid->weights()[i];
  const CMatrix b = w.cwiseSqrt().asDiagonal() * m.matrix * w.cwiseSqrt().cwiseInverse().asDiagonal();
  return Eigen::JacobiSVD<CMatrix>(b).singularValues()(0);
}

// Every builder on its group, at the given band.
inline std::vector<Symbol> builtin_symbols(const GroupId& g, const Band& band) {
  std::vector<Symbol> out{identity_symbol(g, band), build_multiplier_power(g, band, -1.0),
                          build_multiplier_power(g, band, 0.5)};
  const auto grid = haar_grid_for(g, band);
  const auto f = GridFunction::sample(grid, [&](const GroupPoint& x) {
    return cplx(std::real(rep_matrix(g, g.is_su2() ? su2_index(2) : torus_index(std::vector<int>(g.dim(), 1)), x)(0, 0)));
  });
  out.push_back(build_schrodinger(band, 0.7, f, 0.5));
  out.push_back(multiplication_symbol(f, band));
  if (g.is_su2()) {
    out.push_back(build_z_plus_c_inverse(band, 1.0));
    out.push_back(build_z_plus_c_inverse(band, 0.3));
  }
  if (g.is_torus() && g.dim() == 1) out.push_back(build_hlhw(band, 0.5, 0.25));
  return out;
}

}  // namespace gpdo::testing
