#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "gpdo/errors.hpp"
#include "gpdo/group.hpp"
#include "gpdo/wigner.hpp"

using namespace gpdo;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent oracle: d^j(theta) = exp(-i theta J_y) from the ladder matrices.
CMatrix wigner_expm(int j2, double theta) {
  const int d = j2 + 1;
  const double j = 0.5 * j2;
  CMatrix jp = CMatrix::Zero(d, d);
  for (int k = 0; k + 1 < d; ++k) {
    const double m = k - j;
    jp(k + 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  const CMatrix jy = (jp - jp.adjoint()) * cplx(0, -0.5);
  const CMatrix a = cplx(0, -theta) * jy;
  return a.exp();
}

std::vector<DualIndex> su2_upto(int j2max) {
  std::vector<DualIndex> v;
  for (int j2 = 0; j2 <= j2max; ++j2) v.push_back(su2_index(j2));
  return v;
}

}  // namespace

TEST_CASE("group ids") {
  CHECK(GroupId::parse("SU2") == GroupId::su2());
  CHECK(GroupId::parse("t3").dim() == 3);
  CHECK(GroupId::parse("torus") == GroupId::torus(1));
  CHECK(GroupId::su2().dim() == 3);
  CHECK_THROWS_AS(GroupId::parse("SO3"), ArgumentError);
  CHECK_THROWS_AS(GroupId::torus(0), ArgumentError);
}

TEST_CASE("dual enumeration") {
  auto t1 = dual_enumerate(GroupId::torus(1), 1.0);
  REQUIRE(t1.size() == 1);
  CHECK(t1[0].label == std::vector<int>{0});

  auto t2 = dual_enumerate(GroupId::torus(1), 2.5);
  REQUIRE(t2.size() == 5);
  std::vector<std::vector<int>> want{{0}, {-1}, {1}, {-2}, {2}};
  for (std::size_t i = 0; i < 5; ++i) CHECK(t2[i].label == want[i]);

  auto s = dual_enumerate(GroupId::su2(), 2.0);
  REQUIRE(s.size() == 3);
  CHECK(s[2].twice_spin() == 2);
  CHECK(s[2].dim == 3);

  for (const auto& xi : dual_enumerate(GroupId::torus(2), 5.0)) {
    CHECK(xi.weight() <= 5.0 + 1e-12);
    CHECK(xi.weight() * xi.weight() - 1.0 == doctest::Approx(xi.casimir).epsilon(1e-14));
  }
  CHECK(dual_enumerate(GroupId::torus(2), 5.0).size() == 69);  // |k|^2 <= 24

  CHECK_THROWS_AS(dual_enumerate(GroupId::torus(1), 0.5), ArgumentError);
}

TEST_CASE("dual layout and band snapping") {
  Dual d(GroupId::su2(), Band::su2_twice_spin(4));
  CHECK(d.size() == 5);
  CHECK(d.total_entries() == 1 + 4 + 9 + 16 + 25);
  CHECK(d.offset(3) == 14);
  CHECK(d.max_level() == 4);
  CHECK(d.find({3}).value() == 3);
  CHECK_FALSE(d.find({5}).has_value());

  Dual t(GroupId::torus(1), Band(3.0));  // |k| <= 2
  CHECK(t.band().lambda() == doctest::Approx(std::sqrt(5.0)));
  CHECK(band_level(GroupId::torus(1), t.band()) == 2);
}

TEST_CASE("shrink band") {
  const auto su2 = GroupId::su2();
  CHECK(band_level(su2, shrink_band(su2, Band::su2_twice_spin(5), 2)) == 3);
  CHECK_THROWS_AS(shrink_band(su2, Band::su2_twice_spin(1), 2), BandExhaustedError);
  const auto t1 = GroupId::torus(1);
  CHECK(band_level(t1, shrink_band(t1, Band::torus_radius(4), 1)) == 3);
  CHECK_NOTHROW(shrink_band(t1, Band::torus_radius(1), 1));
  CHECK_THROWS_AS(shrink_band(t1, Band::torus_radius(0), 1), BandExhaustedError);
}

TEST_CASE("wigner d: recursion vs explicit sum and matrix exponential") {
  for (double theta : {0.0, 0.3, 1.1, kPi / 2, 2.7, kPi}) {
    const auto all = wigner_d_all(40, theta);
    for (int j2 = 0; j2 <= 10; ++j2) {
      for (int a = 0; a <= j2; ++a) {
        for (int b = 0; b <= j2; ++b) {
          CHECK(all[j2](a, b) ==
                doctest::Approx(wigner_d_explicit(j2, 2 * a - j2, 2 * b - j2, theta)).epsilon(1e-12).scale(1.0));
        }
      }
    }
    for (int j2 : {1, 7, 20, 33, 40}) {
      const CMatrix e = wigner_expm(j2, theta);
      CHECK((e.real() - all[j2]).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(e.imag().cwiseAbs().maxCoeff() < 1e-10);
    }
  }
  // d^{3/2}_{1/2,1/2} = (3 cos t - 1) cos(t/2) / 2
  const double t = 0.8;
  CHECK(wigner_d_explicit(3, 1, 1, t) == doctest::Approx(0.5 * (3 * std::cos(t) - 1) * std::cos(t / 2)));
}

TEST_CASE("euler and quaternion conversions") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto q = std::get<Quaternion>(random_point(GroupId::su2(), rng));
    const auto e = to_euler(q);
    CHECK(e.phi >= 0.0);
    CHECK(e.phi < 2 * kPi);
    CHECK(e.psi >= 0.0);
    CHECK(e.psi < 4 * kPi);
    const auto r = from_euler(e);
    CHECK(std::abs(r.w - q.w) + std::abs(r.x - q.x) + std::abs(r.y - q.y) + std::abs(r.z - q.z) < 1e-12);
    CHECK(std::abs(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z - 1.0) < 1e-12);
  }
  // g = exp(phi Z) exp(theta Y) exp(psi Z)
  const EulerAngles e{0.4, 1.3, 2.9};
  const auto su2 = GroupId::su2();
  const auto g = multiply(su2, multiply(su2, exp_field(su2, 2, e.phi), exp_field(su2, 1, e.theta)),
                          exp_field(su2, 2, e.psi));
  const auto q = std::get<Quaternion>(g);
  const auto r = from_euler(e);
  CHECK(std::abs(r.w - q.w) + std::abs(r.x - q.x) + std::abs(r.y - q.y) + std::abs(r.z - q.z) < 1e-12);
}

TEST_CASE("rep_matrix examples") {
  const auto t1 = GroupId::torus(1);
  const CMatrix m = rep_matrix(t1, torus_index({3}), TorusPoint{{kPi / 2}});
  CHECK(std::abs(m(0, 0) - cplx(0, -1)) < 1e-15);

  const auto su2 = GroupId::su2();
  for (int j2 = 0; j2 <= 8; ++j2) {
    const CMatrix id = rep_matrix(su2, su2_index(j2), identity_point(su2));
    CHECK((id - CMatrix::Identity(j2 + 1, j2 + 1)).norm() < 1e-14);
  }

  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_point(su2, rng);
    const CMatrix d = rep_matrix(su2, su2_index(1), x);
    const auto q = std::get<Quaternion>(x);
    CHECK(std::abs(d.trace() - cplx(2 * q.w, 0)) < 1e-12);
    CHECK((d - su2_matrix(q)).norm() < 1e-12);
  }

  CHECK_THROWS_AS(rep_matrix(t1, torus_index({1, 2}), TorusPoint{{0.0}}), ArgumentError);
  CHECK_THROWS_AS(rep_matrix(su2, torus_index({1}), identity_point(su2)), ArgumentError);
  CHECK_THROWS_AS(rep_matrix(su2, su2_index(1), TorusPoint{{0.0}}), ArgumentError);
}

TEST_CASE("unitarity and homomorphism") {
  std::mt19937_64 rng(3);
  const auto su2 = GroupId::su2();
  const auto t3 = GroupId::torus(3);
  const auto idx = su2_upto(16);
  const auto tidx = dual_enumerate(t3, 4.0);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_point(su2, rng), y = random_point(su2, rng);
    const auto xy = multiply(su2, x, y);
    for (const auto& xi : idx) {
      const CMatrix a = rep_matrix(su2, xi, x), b = rep_matrix(su2, xi, y);
      CHECK((a * a.adjoint() - CMatrix::Identity(xi.dim, xi.dim)).norm() < 1e-10);
      CHECK((rep_matrix(su2, xi, xy) - a * b).norm() < 1e-9);
    }
    const auto u = random_point(t3, rng), v = random_point(t3, rng);
    for (const auto& xi : tidx) {
      const cplx a = rep_matrix(t3, xi, u)(0, 0), b = rep_matrix(t3, xi, v)(0, 0);
      CHECK(std::abs(std::abs(a) - 1.0) < 1e-12);
      CHECK(std::abs(rep_matrix(t3, xi, multiply(t3, u, v))(0, 0) - a * b) < 1e-9);
    }
  }
}

TEST_CASE("rep_blocks layout matches rep_matrix") {
  std::mt19937_64 rng(5);
  for (const auto& g : {GroupId::su2(), GroupId::torus(2)}) {
    const Dual dual(g, Band(4.0));
    const auto x = random_point(g, rng);
    const CVector flat = rep_blocks(dual, x);
    for (std::size_t i = 0; i < dual.size(); ++i) {
      const int d = dual[i].dim;
      Eigen::Map<const CMatrix> block(flat.data() + dual.offset(i), d, d);
      CHECK((block - rep_matrix(g, dual[i], x)).norm() < 1e-13);
    }
  }
}

TEST_CASE("haar grids") {
  const auto g8 = haar_grid(GroupId::torus(1), 8);
  REQUIRE(g8->size() == 8);
  for (std::size_t j = 0; j < 8; ++j) {
    CHECK(std::get<TorusPoint>(g8->node(j)).angles[0] == doctest::Approx(2 * kPi * j / 8));
    CHECK(g8->weights()[j] == doctest::Approx(0.125));
  }
  CHECK(band_level(GroupId::torus(1), g8->exactness_band()) == 3);
  CHECK_THROWS_AS(haar_grid(GroupId::su2(), 0), ArgumentError);

  for (int r = 1; r <= 9; ++r) {
    for (const auto& g : {GroupId::torus(1), GroupId::torus(2), GroupId::su2()}) {
      double s = 0.0;
      const auto grid = haar_grid(g, r);
      for (double w : grid->weights()) {
        CHECK(w >= 0.0);
        s += w;
      }
      CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
    }
  }

  // Every D^J with 0 < J <= r integrates to zero.
  const auto su2 = GroupId::su2();
  for (int r : {1, 2, 5, 8}) {
    const auto grid = haar_grid(su2, r);
    for (int j2 = 1; j2 <= 2 * r; ++j2) {
      CMatrix acc = CMatrix::Zero(j2 + 1, j2 + 1);
      for (std::size_t n = 0; n < grid->size(); ++n) acc += grid->weights()[n] * rep_matrix(su2, su2_index(j2), grid->node(n));
      CHECK(acc.cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("schur orthogonality under quadrature") {
  const auto su2 = GroupId::su2();
  const int r = 6;
  const auto grid = haar_grid(su2, r);
  const Dual dual(su2, grid->exactness_band());
  CHECK(dual.max_level() == r);
  const std::size_t n = grid->size();
  std::vector<CVector> vals(n);
  for (std::size_t k = 0; k < n; ++k) vals[k] = rep_blocks(dual, grid->node(k));
  const auto total = static_cast<Eigen::Index>(dual.total_entries());
  CMatrix gram = CMatrix::Zero(total, total);
  for (std::size_t k = 0; k < n; ++k) gram.noalias() += grid->weights()[k] * vals[k] * vals[k].adjoint();
  CMatrix want = CMatrix::Zero(total, total);
  for (std::size_t i = 0; i < dual.size(); ++i) {
    for (int e = 0; e < dual[i].dim * dual[i].dim; ++e) {
      const auto p = static_cast<Eigen::Index>(dual.offset(i)) + e;
      want(p, p) = 1.0 / dual[i].dim;
    }
  }
  CHECK((gram - want).cwiseAbs().maxCoeff() <= 1e-9);

  const auto t2 = GroupId::torus(2);
  const auto tg = haar_grid(t2, 9);
  const Dual td(t2, tg->exactness_band());
  for (const auto& a : td) {
    for (const auto& b : td) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < tg->size(); ++k)
        s += tg->weights()[k] * rep_matrix(t2, a, tg->node(k))(0, 0) * std::conj(rep_matrix(t2, b, tg->node(k))(0, 0));
      CHECK(std::abs(s - (a == b ? 1.0 : 0.0)) <= 1e-9);
    }
  }
}

TEST_CASE("vector field symbols") {
  const auto su2 = GroupId::su2();
  std::mt19937_64 rng(9);
  const double h = 1e-5;
  for (int j2 = 0; j2 <= 8; ++j2) {
    const auto xi = su2_index(j2);
    CMatrix lap = CMatrix::Zero(xi.dim, xi.dim);
    for (int f = 0; f < 3; ++f) {
      const CMatrix s = vector_field_symbol(su2, f, xi);
      CHECK((s + s.adjoint()).norm() <= 1e-10);
      lap += s * s;
      const auto x = random_point(su2, rng);
      const CMatrix fd = (rep_matrix(su2, xi, multiply(su2, x, exp_field(su2, f, h))) -
                          rep_matrix(su2, xi, multiply(su2, x, exp_field(su2, f, -h)))) /
                         (2 * h);
      CHECK((fd - rep_matrix(su2, xi, x) * s).cwiseAbs().maxCoeff() <= 1e-7 * (1 + j2));
    }
    CHECK((lap + xi.casimir * CMatrix::Identity(xi.dim, xi.dim)).norm() <= 1e-10);
  }
  const CMatrix z = vector_field_symbol(su2, 2, su2_index(2));
  CHECK(std::abs(z(0, 0) - cplx(0, -1)) < 1e-15);
  CHECK(std::abs(z(2, 2) - cplx(0, 1)) < 1e-15);

  const auto t2 = GroupId::torus(2);
  const CMatrix s = vector_field_symbol(t2, 1, torus_index({2, -3}));
  CHECK(std::abs(s(0, 0) - cplx(0, -3)) < 1e-15);
  CHECK_THROWS_AS(vector_field_symbol(t2, 2, torus_index({0, 0})), ArgumentError);
}

TEST_CASE("geodesic distance") {
  const auto su2 = GroupId::su2();
  const auto t1 = GroupId::torus(1);
  CHECK(geodesic_distance(t1, TorusPoint{{0.0}}, TorusPoint{{kPi}}) == doctest::Approx(kPi));
  CHECK(geodesic_distance(t1, TorusPoint{{0.1}}, TorusPoint{{2 * kPi - 0.1}}) == doctest::Approx(0.2));
  CHECK(geodesic_distance(su2, identity_point(su2), Quaternion{-1, 0, 0, 0}) == doctest::Approx(2 * kPi));
  CHECK(geodesic_distance(su2, identity_point(su2), exp_field(su2, 0, 1.2)) == doctest::Approx(1.2));

  std::mt19937_64 rng(21);
  for (const auto& g : {su2, GroupId::torus(3)}) {
    for (int i = 0; i < 1000; ++i) {
      const auto x = random_point(g, rng), y = random_point(g, rng), z = random_point(g, rng);
      const double dxy = geodesic_distance(g, x, y);
      CHECK(geodesic_distance(g, x, x) <= 1e-7);
      CHECK(dxy == doctest::Approx(geodesic_distance(g, y, x)).epsilon(1e-10));
      CHECK(dxy <= geodesic_distance(g, x, z) + geodesic_distance(g, z, y) + 1e-12);
      // Bi-invariance.
      CHECK(geodesic_distance(g, multiply(g, z, x), multiply(g, z, y)) == doctest::Approx(dxy).epsilon(1e-9));
      CHECK(geodesic_distance(g, multiply(g, x, z), multiply(g, y, z)) == doctest::Approx(dxy).epsilon(1e-9));
    }
  }
}
