#include "gpdo/fourier.hpp"

#include <algorithm>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "gpdo/errors.hpp"
#include "gpdo/parallel.hpp"
#include "gpdo/wigner.hpp"

namespace gpdo {

namespace {

std::mutex g_fftw_planner;  // planner calls are not thread-safe

// In-place n-dimensional FFT of a cubic array with `n` points per axis.
void torus_fft(CVector& v, int dim, int n, int sign) {
  std::vector<int> dims(dim, n);
  auto* buf = reinterpret_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * v.size()));
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(g_fftw_planner);
    plan = fftw_plan_dft(dim, dims.data(), buf, buf, sign, FFTW_ESTIMATE);
  }
  std::copy(v.data(), v.data() + v.size(), reinterpret_cast<cplx*>(buf));
  fftw_execute(plan);
  std::copy(reinterpret_cast<cplx*>(buf), reinterpret_cast<cplx*>(buf) + v.size(), v.data());
  {
    std::lock_guard<std::mutex> lock(g_fftw_planner);
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
}

// Flat index of frequency k in the FFT array (row-major, k_j mod n).
std::size_t fft_slot(const std::vector<int>& k, int n) {
  std::size_t idx = 0;
  for (int v : k) idx = idx * n + static_cast<std::size_t>(((v % n) + n) % n);
  return idx;
}

void require_same_group(const GroupId& a, const GroupId& b) {
  if (!(a == b)) throw ArgumentError("group mismatch: " + a.name() + " vs " + b.name());
}

FourierCoefficients forward_torus(const GridFunction& f, DualPtr dual) {
  const auto& grid = *f.grid();
  const int n = grid.torus_points_per_dim();
  CVector buf = f.values();
  torus_fft(buf, grid.group().dim(), n, FFTW_FORWARD);
  FourierCoefficients out(dual);
  const double w = grid.weights().front();
  for (std::size_t i = 0; i < dual->size(); ++i)
    out.data()(static_cast<Eigen::Index>(i)) = w * buf(static_cast<Eigen::Index>(fft_slot((*dual)[i].label, n)));
  return out;
}

GridFunction inverse_torus(const FourierCoefficients& a, GridPtr grid) {
  const int n = grid->torus_points_per_dim();
  CVector buf = CVector::Zero(static_cast<Eigen::Index>(grid->size()));
  const Dual& dual = a.dual();
  for (std::size_t i = 0; i < dual.size(); ++i)
    buf(static_cast<Eigen::Index>(fft_slot(dual[i].label, n))) += a.data()(static_cast<Eigen::Index>(i));
  torus_fft(buf, grid->group().dim(), n, FFTW_BACKWARD);
  return GridFunction(std::move(grid), std::move(buf));
}

// Separable SU(2) transforms on the (theta, phi, psi) tensor grid. Weights m are doubled;
// arrays over weights use index m2 + L2.
struct Su2Phases {
  int l2, width;
  std::vector<cplx> phi, psi;  // e^{i m phi_p}, e^{i m psi_s}
};

Su2Phases su2_phases(const QuadratureGrid& grid, int l2) {
  Su2Phases ph{l2, 2 * l2 + 1, {}, {}};
  const double two_pi = 2.0 * std::numbers::pi;
  ph.phi.resize(static_cast<std::size_t>(grid.n_phi()) * ph.width);
  ph.psi.resize(static_cast<std::size_t>(grid.n_psi()) * ph.width);
  for (int p = 0; p < grid.n_phi(); ++p) {
    for (int m2 = -l2; m2 <= l2; ++m2)
      ph.phi[static_cast<std::size_t>(p) * ph.width + m2 + l2] = std::polar(1.0, 0.5 * m2 * two_pi * p / grid.n_phi());
  }
  for (int s = 0; s < grid.n_psi(); ++s) {
    for (int m2 = -l2; m2 <= l2; ++m2)
      ph.psi[static_cast<std::size_t>(s) * ph.width + m2 + l2] =
          std::polar(1.0, 0.5 * m2 * 2.0 * two_pi * s / grid.n_psi());
  }
  return ph;
}

FourierCoefficients forward_su2(const GridFunction& f, DualPtr dual) {
  const auto& grid = *f.grid();
  const int l2 = dual->max_level();
  const auto ph = su2_phases(grid, l2);
  const int W = ph.width, nt = grid.n_theta(), np = grid.n_phi(), ns = grid.n_psi();
  // G(t, m', m) = sum_{p,s} w f e^{-i m' phi_p} e^{-i m psi_s}
  std::vector<cplx> G(static_cast<std::size_t>(nt) * W * W, 0.0);
  parallel_for(0, static_cast<std::size_t>(nt), [&](std::size_t tt) {
    const int t = static_cast<int>(tt);
    std::vector<cplx> H(static_cast<std::size_t>(np) * W, 0.0);
    for (int p = 0; p < np; ++p) {
      for (int s = 0; s < ns; ++s) {
        const std::size_t node = grid.su2_node(t, p, s);
        const cplx v = f[node] * grid.weights()[node];
        const cplx* e = &ph.psi[static_cast<std::size_t>(s) * W];
        cplx* h = &H[static_cast<std::size_t>(p) * W];
        for (int k = 0; k < W; ++k) h[k] += v * std::conj(e[k]);
      }
    }
    for (int mp = 0; mp < W; ++mp) {
      for (int m = 0; m < W; ++m) {
        if ((mp + m) % 2 != 0) continue;
        cplx acc = 0.0;
        for (int p = 0; p < np; ++p)
          acc += H[static_cast<std::size_t>(p) * W + m] * std::conj(ph.phi[static_cast<std::size_t>(p) * W + mp]);
        G[(static_cast<std::size_t>(t) * W + mp) * W + m] = acc;
      }
    }
  });
  std::vector<std::vector<Eigen::MatrixXd>> d(nt);
  for (int t = 0; t < nt; ++t) d[t] = wigner_d_all(l2, grid.theta()[t]);
  FourierCoefficients out(dual);
  parallel_for(0, dual->size(), [&](std::size_t i) {
    const int j2 = (*dual)[i].twice_spin();
    auto blk = out.block(i);
    for (int t = 0; t < nt; ++t) {
      // f^_{ab} = sum_t d_{m'_b m_a}(theta_t) G(t, m'_b, m_a)
      for (int a = 0; a <= j2; ++a) {
        for (int b = 0; b <= j2; ++b) {
          const int mp = 2 * b - j2 + l2, m = 2 * a - j2 + l2;
          blk(a, b) += d[t][j2](b, a) * G[(static_cast<std::size_t>(t) * W + mp) * W + m];
        }
      }
    }
  });
  return out;
}

GridFunction inverse_su2(const FourierCoefficients& a, GridPtr gridp) {
  const auto& grid = *gridp;
  const Dual& dual = a.dual();
  const int l2 = dual.max_level();
  const auto ph = su2_phases(grid, l2);
  const int W = ph.width, nt = grid.n_theta(), np = grid.n_phi(), ns = grid.n_psi();
  CVector values = CVector::Zero(static_cast<Eigen::Index>(grid.size()));
  parallel_for(0, static_cast<std::size_t>(nt), [&](std::size_t tt) {
    const int t = static_cast<int>(tt);
    const auto d = wigner_d_all(l2, grid.theta()[t]);
    // H(m', m) = sum_l d_l d^l_{m'm}(theta_t) a^l(m, m')
    std::vector<cplx> H(static_cast<std::size_t>(W) * W, 0.0);
    std::vector<cplx> K(static_cast<std::size_t>(np) * W, 0.0);
    for (std::size_t i = 0; i < dual.size(); ++i) {
      const int j2 = dual[i].twice_spin();
      const auto blk = a.block(i);
      for (int b = 0; b <= j2; ++b) {
        for (int c = 0; c <= j2; ++c) {
          const int mp = 2 * b - j2 + l2, m = 2 * c - j2 + l2;
          H[static_cast<std::size_t>(mp) * W + m] += static_cast<double>(j2 + 1) * d[j2](b, c) * blk(c, b);
        }
      }
    }
    // K(p, m) = sum_{m'} e^{i m' phi_p} H(m', m)
    for (int p = 0; p < np; ++p) {
      for (int mp = 0; mp < W; ++mp) {
        const cplx e = ph.phi[static_cast<std::size_t>(p) * W + mp];
        for (int m = (mp % 2); m < W; m += 2) K[static_cast<std::size_t>(p) * W + m] += e * H[static_cast<std::size_t>(mp) * W + m];
      }
    }
    for (int p = 0; p < np; ++p) {
      for (int s = 0; s < ns; ++s) {
        cplx acc = 0.0;
        const cplx* e = &ph.psi[static_cast<std::size_t>(s) * W];
        const cplx* k = &K[static_cast<std::size_t>(p) * W];
        for (int m = 0; m < W; ++m) acc += e[m] * k[m];
        values(static_cast<Eigen::Index>(grid.su2_node(t, p, s))) = acc;
      }
    }
  });
  return GridFunction(std::move(gridp), std::move(values));
}

// d_xi * a(xi)^T flattened, so that f(x) = rep_blocks(x) . v (no conjugation).
CVector trace_weights(const FourierCoefficients& a) {
  const Dual& dual = a.dual();
  CVector v(a.data().size());
  for (std::size_t i = 0; i < dual.size(); ++i) {
    const int d = dual[i].dim;
    Eigen::Map<CMatrix>(v.data() + dual.offset(i), d, d) = static_cast<double>(d) * a.block(i).transpose();
  }
  return v;
}

}  // namespace

DualPtr make_dual(const GroupId& group, const Band& band) { return std::make_shared<const Dual>(group, band); }

GridFunction::GridFunction(GridPtr grid)
    : grid_(std::move(grid)), values_(CVector::Zero(static_cast<Eigen::Index>(grid_->size()))) {}

GridFunction::GridFunction(GridPtr grid, CVector values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.size()) != grid_->size())
    throw ArgumentError("grid function length does not match the node count");
}

GridFunction GridFunction::sample(GridPtr grid, const std::function<cplx(const GroupPoint&)>& fn) {
  GridFunction g(std::move(grid));
  for (std::size_t i = 0; i < g.size(); ++i) g.values_(static_cast<Eigen::Index>(i)) = fn(g.grid_->node(i));
  return g;
}

double GridFunction::sup_norm() const { return values_.size() ? values_.cwiseAbs().maxCoeff() : 0.0; }

double GridFunction::lp_norm(double p) const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < values_.size(); ++i) s += grid_->weights()[i] * std::pow(std::abs(values_(i)), p);
  return std::pow(s, 1.0 / p);
}

FourierCoefficients::FourierCoefficients(DualPtr dual)
    : dual_(std::move(dual)), data_(CVector::Zero(static_cast<Eigen::Index>(dual_->total_entries()))) {}

FourierCoefficients::FourierCoefficients(DualPtr dual, CVector data) : dual_(std::move(dual)), data_(std::move(data)) {
  if (static_cast<std::size_t>(data_.size()) != dual_->total_entries())
    throw ArgumentError("coefficient storage does not match the dual layout");
}

Eigen::Map<CMatrix> FourierCoefficients::block(std::size_t i) {
  const int d = (*dual_)[i].dim;
  return Eigen::Map<CMatrix>(data_.data() + dual_->offset(i), d, d);
}

Eigen::Map<const CMatrix> FourierCoefficients::block(std::size_t i) const {
  const int d = (*dual_)[i].dim;
  return Eigen::Map<const CMatrix>(data_.data() + dual_->offset(i), d, d);
}

FourierCoefficients forward(const GridFunction& f, const Band& band) {
  const auto& grid = *f.grid();
  grid.require_band(band, "forward transform");
  auto dual = make_dual(grid.group(), band);
  return grid.group().is_torus() ? forward_torus(f, dual) : forward_su2(f, dual);
}

FourierCoefficients forward_direct(const GridFunction& f, const Band& band) {
  const auto& grid = *f.grid();
  grid.require_band(band, "forward transform");
  auto dual = make_dual(grid.group(), band);
  CVector acc = CVector::Zero(static_cast<Eigen::Index>(dual->total_entries()));
  for (std::size_t n = 0; n < grid.size(); ++n) acc += (grid.weights()[n] * f[n]) * rep_blocks(*dual, grid.node(n)).conjugate();
  FourierCoefficients out(dual);
  for (std::size_t i = 0; i < dual->size(); ++i) {
    const int d = (*dual)[i].dim;
    out.block(i) = Eigen::Map<const CMatrix>(acc.data() + dual->offset(i), d, d).transpose();
  }
  return out;
}

GridFunction inverse(const FourierCoefficients& a, GridPtr grid) {
  require_same_group(a.group(), grid->group());
  return grid->group().is_torus() ? inverse_torus(a, std::move(grid)) : inverse_su2(a, std::move(grid));
}

GridFunction inverse(const FourierCoefficients& a) { return inverse(a, haar_grid_for(a.group(), a.band())); }

GridFunction inverse_direct(const FourierCoefficients& a, GridPtr grid) {
  require_same_group(a.group(), grid->group());
  const CVector v = trace_weights(a);
  GridFunction out(grid);
  for (std::size_t n = 0; n < grid->size(); ++n)
    out.values()(static_cast<Eigen::Index>(n)) = rep_blocks(a.dual(), grid->node(n)).transpose() * v;
  return out;
}

cplx evaluate(const FourierCoefficients& a, const GroupPoint& x) {
  return rep_blocks(a.dual(), x).transpose() * trace_weights(a);
}

double l2_norm(const FourierCoefficients& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dual().size(); ++i) s += a.dual()[i].dim * a.block(i).squaredNorm();
  return std::sqrt(s);
}

GridFunction random_band_limited(GridPtr grid, const Band& band, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  FourierCoefficients a(make_dual(grid->group(), band));
  for (Eigen::Index i = 0; i < a.data().size(); ++i) a.data()(i) = cplx(n(rng), n(rng));
  return inverse(a, std::move(grid));
}

nlohmann::json matrix_to_json(const CMatrix& m, const char* part) {
  const bool re = std::string_view(part) == "re";
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(re ? m(r, c).real() : m(r, c).imag());
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const nlohmann::json& re, const nlohmann::json& im) {
  const auto n = static_cast<Eigen::Index>(re.size());
  CMatrix m(n, n);
  if (static_cast<Eigen::Index>(im.size()) != n) throw ArgumentError("re/im matrices differ in size");
  for (Eigen::Index r = 0; r < n; ++r) {
    if (static_cast<Eigen::Index>(re[r].size()) != n || static_cast<Eigen::Index>(im[r].size()) != n)
      throw ArgumentError("coefficient matrix is not square");
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = cplx(re[r][c].get<double>(), im[r][c].get<double>());
  }
  return m;
}

nlohmann::json to_json(const FourierCoefficients& a) {
  nlohmann::json j;
  j["group"] = a.group().name();
  j["band"] = a.band().lambda();
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t i = 0; i < a.dual().size(); ++i) {
    const CMatrix m = a.block(i);
    entries.push_back({{"label", a.dual()[i].label}, {"re", matrix_to_json(m, "re")}, {"im", matrix_to_json(m, "im")}});
  }
  j["entries"] = std::move(entries);
  return j;
}

FourierCoefficients coefficients_from_json(const nlohmann::json& j) {
  const auto group = GroupId::parse(j.at("group").get<std::string>());
  auto dual = make_dual(group, Band(j.at("band").get<double>()));
  FourierCoefficients out(dual);
  for (const auto& e : j.at("entries")) {
    const auto label = e.at("label").get<std::vector<int>>();
    const auto idx = dual->find(label);
    if (!idx) throw ArgumentError("coefficient label outside the band");
    const CMatrix m = matrix_from_json(e.at("re"), e.at("im"));
    if (m.rows() != (*dual)[*idx].dim) throw ArgumentError("coefficient matrix has the wrong dimension");
    out.block(*idx) = m;
  }
  return out;
}

}  // namespace gpdo
