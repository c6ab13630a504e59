#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "gpdo/errors.hpp"
#include "support.hpp"

using namespace gpdo;
using namespace gpdo::testing;

namespace {

double torus_x(const GroupPoint& p) { return std::get<TorusPoint>(p).angles[0]; }

CVector apply_matrix(const DenseOperator& m, const GridFunction& f) { return m.matrix * f.values(); }

}  // namespace

TEST_CASE("apply on simple symbols") {
  const auto t1 = GroupId::torus(1);
  const auto grid = haar_grid(t1, 33);
  const auto sinx = GridFunction::sample(grid, [](const GroupPoint& p) { return cplx(std::sin(torus_x(p))); });
  const Band band = Band::torus_radius(4);
  CHECK(max_abs(apply(identity_symbol(t1, band), sinx).values() - sinx.values()) < 1e-14);

  // sigma(k) = ik is d/dx.
  auto dx = Symbol::invariant(make_dual(t1, band), "ik");
  for (std::size_t i = 0; i < dx.dual().size(); ++i) dx.block(0, i)(0, 0) = cplx(0, dx.dual()[i].label[0]);
  const auto d = apply(dx, sinx);
  for (std::size_t n = 0; n < grid->size(); ++n) CHECK(std::abs(d[n] - std::cos(torus_x(grid->node(n)))) < 1e-13);
  CHECK(max_abs(apply(vector_field_operator(t1, band, 0), sinx).values() - d.values()) < 1e-13);

  // Multiplication symbol a(x) I multiplies pointwise.
  std::mt19937_64 rng(2);
  for (const auto& g : {t1, GroupId::su2()}) {
    const Band b = g.is_su2() ? Band::su2_twice_spin(4) : Band::torus_radius(6);
    const auto gr = haar_grid_for(g, b);
    const auto a = random_band_limited(gr, Band(2.0), rng);
    const auto f = random_band_limited(gr, b, rng);
    const auto af = apply(multiplication_symbol(a, b), f);
    CHECK(max_abs(af.values() - (a.values().array() * f.values().array()).matrix()) < 1e-12);
  }

  CHECK_THROWS_AS(apply(identity_symbol(t1, Band::torus_radius(20)), sinx), PrecisionError);
  CHECK_THROWS_AS(apply(identity_symbol(GroupId::su2(), band), sinx), ArgumentError);
}

TEST_CASE("inverse of Z + c inverts Z + c") {
  const auto su2 = GroupId::su2();
  std::mt19937_64 rng(4);
  const Band band = Band::su2_twice_spin(16);
  const auto grid = haar_grid_for(su2, band);
  for (cplx c : {cplx(1.0), cplx(0.3)}) {
    const auto inv = build_z_plus_c_inverse(band, c);
    auto zc = vector_field_operator(su2, band, 2);
    for (std::size_t i = 0; i < zc.dual().size(); ++i) {
      const int d = zc.dual()[i].dim;
      zc.block(0, i) += c * CMatrix::Identity(d, d);
    }
    CHECK(max_abs_difference(symbol_product(inv, zc), identity_symbol(su2, band)) < 1e-12);
    for (int t = 0; t < 3; ++t) {
      const auto f = random_band_limited(grid, band, rng);
      CHECK(max_abs(apply(inv, apply(zc, f)).values() - f.values()) < 1e-10);
    }
  }
}

TEST_CASE("kernel of the identity is the Dirichlet kernel") {
  const auto t1 = GroupId::torus(1);
  const int n = 8;
  const auto k = kernel(identity_symbol(t1, Band::torus_radius(n)));
  REQUIRE(k.grid->size() == 2 * n + 1);
  for (std::size_t i = 0; i < k.grid->size(); ++i) {
    for (std::size_t j = 0; j < k.grid->size(); ++j) {
      const double z = torus_x(k.grid->node(i)) - torus_x(k.grid->node(j));
      double dn = 0.0;
      for (int m = -n; m <= n; ++m) dn += std::cos(m * z);
      CHECK(std::abs(k.values(i, j) - dn) < 1e-12);
    }
  }
  CHECK(std::abs(k.values(0, 0) - (2.0 * n + 1)) < 1e-12);

  // SU(2): K(x, y) = sum d Tr D(y^{-1} x) for the identity symbol, so K(x, x) = sum d^2.
  const auto ks = kernel(identity_symbol(GroupId::su2(), Band::su2_twice_spin(4)));
  for (std::size_t i = 0; i < ks.grid->size(); i += 11) CHECK(std::abs(ks.values(i, i) - 55.0) < 1e-11);
}

TEST_CASE("kernel against direct trace summation") {
  std::mt19937_64 rng(6);
  const auto su2 = GroupId::su2();
  const Band band = Band::su2_twice_spin(3);
  const auto grid = haar_grid(su2, 4);
  const auto s = random_gridded(band, grid, rng);
  const auto k = kernel(s);
  for (std::size_t i = 0; i < grid->size(); i += 13) {
    for (std::size_t j = 0; j < grid->size(); j += 17) {
      const auto z = multiply(su2, inverse(su2, grid->node(j)), grid->node(i));
      cplx sum = 0.0;
      for (std::size_t e = 0; e < s.dual().size(); ++e) {
        const auto& xi = s.dual()[e];
        sum += static_cast<double>(xi.dim) * (rep_matrix(su2, xi, z) * s.block(i, e)).trace();
      }
      CHECK(std::abs(k.values(i, j) - sum) < 1e-12);
    }
  }
  const auto t2 = GroupId::torus(2);
  const Band b2 = Band::torus_radius(3);
  const auto g2 = haar_grid_for(t2, b2);
  const auto s2 = random_gridded(b2, g2, rng);
  const auto k2 = kernel(s2);
  for (std::size_t i = 0; i < g2->size(); i += 5) {
    for (std::size_t j = 0; j < g2->size(); j += 3) {
      const auto z = multiply(t2, inverse(t2, g2->node(j)), g2->node(i));
      cplx sum = 0.0;
      for (std::size_t e = 0; e < s2.dual().size(); ++e) sum += rep_matrix(t2, s2.dual()[e], z)(0, 0) * s2.block(i, e)(0, 0);
      CHECK(std::abs(k2.values(i, j) - sum) < 1e-12);
    }
  }
}

TEST_CASE("dense realization agrees with apply") {
  std::mt19937_64 rng(8);
  for (const auto& g : {GroupId::torus(1), GroupId::torus(2), GroupId::su2()}) {
    const Band band = g.is_su2() ? Band::su2_twice_spin(5) : Band::torus_radius(g.dim() == 1 ? 10 : 4);
    const auto grid = haar_grid_for(g, band);
    for (const Symbol& s : {random_invariant(g, band, rng), random_gridded(band, grid, rng)}) {
      const auto m = realize(s, grid);
      for (int t = 0; t < 3; ++t) {
        const auto f = random_band_limited(grid, band, rng);
        CHECK(max_abs(apply_matrix(m, f) - apply(s, f).values()) < 1e-10);
      }
    }
  }
}

TEST_CASE("band projection is idempotent with row sums one") {
  for (const auto& g : {GroupId::torus(1), GroupId::su2()}) {
    const Band band = g.is_su2() ? Band::su2_twice_spin(4) : Band::torus_radius(7);
    const auto m = realize(identity_symbol(g, band), haar_grid_for(g, band));
    CHECK(max_abs(m.matrix * m.matrix - m.matrix) < 1e-11);
    CHECK(max_abs(m.matrix.rowwise().sum() - CVector::Ones(m.matrix.rows())) < 1e-11);
  }
  // On a finer grid the projection onto a smaller band is still idempotent.
  const auto m = realize(identity_symbol(GroupId::torus(1), Band::torus_radius(3)), haar_grid(GroupId::torus(1), 21));
  CHECK(max_abs(m.matrix * m.matrix - m.matrix) < 1e-12);
}

TEST_CASE("L2 norm of invariant operators") {
  std::mt19937_64 rng(10);
  for (const auto& g : {GroupId::torus(1), GroupId::su2()}) {
    const Band band = g.is_su2() ? Band::su2_twice_spin(6) : Band::torus_radius(12);
    const auto s = random_invariant(g, band, rng);
    double sup = 0.0;
    for (std::size_t i = 0; i < s.dual().size(); ++i) sup = std::max(sup, op_norm(s.block(0, i)));
    CHECK(weighted_l2_norm(realize(s)) == doctest::Approx(sup).epsilon(1e-10));
  }
}

TEST_CASE("adjoint and composition") {
  std::mt19937_64 rng(12);
  for (const auto& g : {GroupId::torus(1), GroupId::su2()}) {
    const Band band = g.is_su2() ? Band::su2_twice_spin(4) : Band::torus_radius(9);
    const auto grid = haar_grid_for(g, band);
    Eigen::VectorXd w(static_cast<Eigen::Index>(grid->size()));
    for (std::size_t i = 0; i < grid->size(); ++i) w(static_cast<Eigen::Index>(i)) = grid->weights()[i];

    // Invariant symbols: adjoint in L^2(grid, w) is W^{-1} M^H W, and Op(a)Op(b) = Op(ab).
    const auto a = random_invariant(g, band, rng);
    const auto b = random_invariant(g, band, rng);
    const auto ma = realize(a, grid);
    const auto adj = realize(symbol_adjoint(a), grid);
    const CMatrix expected = w.cwiseInverse().asDiagonal() * ma.matrix.adjoint() * w.asDiagonal();
    CHECK(max_abs(adj.matrix - expected) < 1e-10);
    const auto mab = realize(symbol_product(a, b), grid);
    CHECK(max_abs(ma.matrix * realize(b, grid).matrix - mab.matrix) < 1e-10);

    // Left multiplication by a(x) composes with any operator.
    const auto f = random_band_limited(grid, Band(2.0), rng);
    const auto s = random_invariant(g, band, rng);
    const auto left = symbol_product(multiplication_symbol(f, band), s);
    const auto u = random_band_limited(grid, band, rng);
    const CVector lhs = f.values().cwiseProduct(apply(s, u).values());
    CHECK(max_abs(apply(left, u).values() - lhs) < 1e-10);
  }
}

TEST_CASE("hs norm identity on realizations") {
  std::mt19937_64 rng(14);
  for (const auto& g : {GroupId::torus(1), GroupId::su2()}) {
    const Band band = g.is_su2() ? Band::su2_twice_spin(4) : Band::torus_radius(8);
    const auto grid = haar_grid_for(g, band);
    const auto s = random_gridded(band, grid, rng);
    const auto k = kernel(s);
    double kernel_sum = 0.0, symbol_sum = 0.0;
    for (std::size_t i = 0; i < grid->size(); ++i) {
      for (std::size_t j = 0; j < grid->size(); ++j)
        kernel_sum += grid->weights()[i] * grid->weights()[j] * std::norm(k.values(i, j));
      for (std::size_t e = 0; e < s.dual().size(); ++e)
        symbol_sum += grid->weights()[i] * s.dual()[e].dim * s.block(i, e).squaredNorm();
    }
    CHECK(kernel_sum == doctest::Approx(symbol_sum).epsilon(1e-10));
  }
}

TEST_CASE("csv output") {
  const auto k = kernel(identity_symbol(GroupId::torus(1), Band::torus_radius(1)));
  std::ostringstream os;
  write_csv(os, k);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "# kernel group=T1 resolution=3 nodes=3");
  std::getline(is, line);
  CHECK(line == "row,col,re,im");
  std::getline(is, line);
  CHECK(line == "0,0,3,0");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 8);
  std::ostringstream om;
  write_csv(om, realize(identity_symbol(GroupId::torus(1), Band::torus_radius(1))));
  CHECK(om.str().rfind("# dense_operator", 0) == 0);
}
