#include "gpdo/group.hpp"

#include <algorithm>
#include <cctype>
#include <numbers>
#include <sstream>

#include <gsl/gsl_integration.h>

#include "gpdo/errors.hpp"
#include "gpdo/wigner.hpp"

namespace gpdo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;

const TorusPoint& as_torus(const GroupPoint& x) {
  const auto* p = std::get_if<TorusPoint>(&x);
  if (!p) throw ArgumentError("expected a torus point");
  return *p;
}

const Quaternion& as_quat(const GroupPoint& x) {
  const auto* p = std::get_if<Quaternion>(&x);
  if (!p) throw ArgumentError("expected an SU(2) point");
  return *p;
}

double wrap(double a, double period) {
  double r = std::fmod(a, period);
  if (r < 0) r += period;
  if (r >= period) r -= period;
  return r;
}

Quaternion normalized(Quaternion q) {
  const double n = std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
  return {q.w / n, q.x / n, q.y / n, q.z / n};
}

void check_index(const GroupId& group, const DualIndex& xi) {
  if (group.is_torus()) {
    if (static_cast<int>(xi.label.size()) != group.dim() || xi.dim != 1)
      throw ArgumentError("dual index " + to_string(group, xi) + " does not belong to " + group.name());
  } else {
    if (xi.label.size() != 1 || xi.label[0] < 0 || xi.dim != xi.label[0] + 1)
      throw ArgumentError("dual index does not belong to SU2");
  }
}

// Angular momentum matrices in the weight basis m = -j..j.
struct SpinMatrices {
  CMatrix jx, jy, jz;
};

SpinMatrices spin_matrices(int j2) {
  const int d = j2 + 1;
  const double j = 0.5 * j2;
  CMatrix jplus = CMatrix::Zero(d, d);
  CMatrix jz = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const double m = k - j;
    jz(k, k) = m;
    if (k + 1 < d) jplus(k + 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  const CMatrix jminus = jplus.adjoint();
  return {(jplus + jminus) * 0.5, (jplus - jminus) * cplx(0.0, -0.5), jz};
}

}  // namespace

GroupId GroupId::torus(int n) {
  if (n < 1) throw ArgumentError("torus dimension must be positive");
  return GroupId(GroupKind::Torus, n);
}

GroupId GroupId::parse(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "su2" || s == "su(2)") return su2();
  if (s == "torus") return torus(1);
  if (s.size() >= 2 && s[0] == 't' && std::all_of(s.begin() + 1, s.end(), ::isdigit))
    return torus(std::stoi(s.substr(1)));
  throw ArgumentError("unknown group '" + std::string(name) + "'");
}

std::string GroupId::name() const { return is_su2() ? "SU2" : "T" + std::to_string(dim_); }

DualIndex torus_index(std::vector<int> k) {
  DualIndex xi;
  double c = 0.0;
  for (int v : k) c += static_cast<double>(v) * v;
  xi.label = std::move(k);
  xi.dim = 1;
  xi.casimir = c;
  return xi;
}

DualIndex su2_index(int twice_spin) {
  if (twice_spin < 0) throw ArgumentError("spin must be nonnegative");
  DualIndex xi;
  xi.label = {twice_spin};
  xi.dim = twice_spin + 1;
  const double l = 0.5 * twice_spin;
  xi.casimir = l * (l + 1.0);
  return xi;
}

std::string to_string(const GroupId& group, const DualIndex& xi) {
  std::ostringstream os;
  if (group.is_su2()) {
    const int j2 = xi.twice_spin();
    os << "l=" << (j2 % 2 == 0 ? std::to_string(j2 / 2) : std::to_string(j2) + "/2");
  } else {
    os << "k=(";
    for (std::size_t i = 0; i < xi.label.size(); ++i) os << (i ? "," : "") << xi.label[i];
    os << ")";
  }
  return os.str();
}

EulerAngles to_euler(const Quaternion& q) {
  // alpha = q0 - i q3 = e^{-i(phi+psi)/2} cos(theta/2), beta = q2 + i q1 = e^{i(psi-phi)/2} sin(theta/2)
  const double ca = std::hypot(q.w, q.z);
  const double sb = std::hypot(q.y, q.x);
  const double arg_a = std::atan2(-q.z, q.w);
  const double arg_b = std::atan2(q.x, q.y);
  EulerAngles e;
  e.theta = 2.0 * std::atan2(sb, ca);
  double phi = -arg_a - arg_b;
  double psi = arg_b - arg_a;
  // (phi, psi) and (phi + 2pi, psi + 2pi) name the same element; shift both together.
  const double turns = std::floor(phi / kTwoPi);
  phi -= turns * kTwoPi;
  psi -= turns * kTwoPi;
  if (phi >= kTwoPi) {
    phi -= kTwoPi;
    psi -= kTwoPi;
  } else if (phi < 0.0) {
    phi += kTwoPi;
    psi += kTwoPi;
  }
  e.phi = phi;
  e.psi = wrap(psi, kFourPi);
  return e;
}

Quaternion from_euler(const EulerAngles& e) {
  const double c = std::cos(0.5 * e.theta), s = std::sin(0.5 * e.theta);
  const double sum = 0.5 * (e.phi + e.psi), diff = 0.5 * (e.psi - e.phi);
  return {c * std::cos(sum), s * std::sin(diff), s * std::cos(diff), c * std::sin(sum)};
}

Eigen::Matrix2cd su2_matrix(const Quaternion& q) {
  Eigen::Matrix2cd u;
  u << cplx(q.w, -q.z), cplx(q.y, q.x), cplx(-q.y, q.x), cplx(q.w, q.z);
  return u;
}

Quaternion from_su2_matrix(const Eigen::Matrix2cd& u) {
  return normalized({u(0, 0).real(), u(0, 1).imag(), u(0, 1).real(), -u(0, 0).imag()});
}

GroupPoint identity_point(const GroupId& group) {
  if (group.is_torus()) return TorusPoint{std::vector<double>(group.dim(), 0.0)};
  return Quaternion{};
}

GroupPoint multiply(const GroupId& group, const GroupPoint& a, const GroupPoint& b) {
  if (group.is_torus()) {
    const auto& pa = as_torus(a);
    const auto& pb = as_torus(b);
    TorusPoint r;
    r.angles.resize(pa.angles.size());
    for (std::size_t i = 0; i < r.angles.size(); ++i) r.angles[i] = wrap(pa.angles[i] + pb.angles[i], kTwoPi);
    return r;
  }
  return from_su2_matrix(su2_matrix(as_quat(a)) * su2_matrix(as_quat(b)));
}

GroupPoint inverse(const GroupId& group, const GroupPoint& a) {
  if (group.is_torus()) {
    TorusPoint r = as_torus(a);
    for (double& v : r.angles) v = wrap(-v, kTwoPi);
    return r;
  }
  const auto& q = as_quat(a);
  return Quaternion{q.w, -q.x, -q.y, -q.z};
}

GroupPoint random_point(const GroupId& group, std::mt19937_64& rng) {
  if (group.is_torus()) {
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    TorusPoint p;
    for (int i = 0; i < group.dim(); ++i) p.angles.push_back(u(rng));
    return p;
  }
  std::normal_distribution<double> n(0.0, 1.0);
  Quaternion q{n(rng), n(rng), n(rng), n(rng)};
  return normalized(q);
}

GroupPoint exp_field(const GroupId& group, int field, double t) {
  if (field < 0 || field >= group.dim()) throw ArgumentError("vector field index out of range");
  if (group.is_torus()) {
    TorusPoint p{std::vector<double>(group.dim(), 0.0)};
    p.angles[field] = wrap(t, kTwoPi);
    return p;
  }
  const double c = std::cos(0.5 * t), s = std::sin(0.5 * t);
  switch (field) {
    case 0: return Quaternion{c, s, 0.0, 0.0};
    case 1: return Quaternion{c, 0.0, s, 0.0};
    default: return Quaternion{c, 0.0, 0.0, s};
  }
}

Band::Band(double lambda) : lambda_(lambda) {
  if (!(lambda >= 1.0 - 1e-12)) throw ArgumentError("band must satisfy lambda >= 1");
  if (lambda_ < 1.0) lambda_ = 1.0;
}

Band Band::su2_twice_spin(int j2) { return Band(su2_index(j2).weight()); }

std::vector<DualIndex> dual_enumerate(const GroupId& group, double lambda) {
  const Band band(lambda);
  std::vector<DualIndex> out;
  if (group.is_su2()) {
    for (int j2 = 0;; ++j2) {
      DualIndex xi = su2_index(j2);
      if (!band.contains(xi.casimir)) break;
      out.push_back(std::move(xi));
    }
    return out;
  }
  const int n = group.dim();
  const int kmax = static_cast<int>(std::floor(std::sqrt(std::max(0.0, band.casimir_cap())) + 1e-9));
  std::vector<int> k(n, -kmax);
  while (true) {
    DualIndex xi = torus_index(k);
    if (band.contains(xi.casimir)) out.push_back(std::move(xi));
    int i = n - 1;
    while (i >= 0 && k[i] == kmax) k[i--] = -kmax;
    if (i < 0) break;
    ++k[i];
  }
  std::sort(out.begin(), out.end(), [](const DualIndex& a, const DualIndex& b) {
    if (a.casimir != b.casimir) return a.casimir < b.casimir;
    return a.label < b.label;
  });
  return out;
}

Dual::Dual(GroupId group, Band band) : group_(group), band_(band) {
  indices_ = dual_enumerate(group, band.lambda());
  band_ = Band(indices_.back().weight());
  offsets_.reserve(indices_.size());
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    const auto& xi = indices_[i];
    offsets_.push_back(total_);
    total_ += static_cast<std::size_t>(xi.dim) * xi.dim;
    lookup_.emplace(xi.label, i);
    if (group.is_su2()) {
      max_level_ = std::max(max_level_, xi.twice_spin());
    } else {
      for (int v : xi.label) max_level_ = std::max(max_level_, std::abs(v));
    }
  }
}

std::optional<std::size_t> Dual::find(const std::vector<int>& label) const {
  auto it = lookup_.find(label);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

int band_level(const GroupId& group, const Band& band) {
  if (group.is_su2()) {
    int j2 = 0;
    while (band.contains(su2_index(j2 + 1).casimir)) ++j2;
    return j2;
  }
  return static_cast<int>(std::floor(std::sqrt(std::max(0.0, band.casimir_cap())) + 1e-9));
}

Band shrink_band(const GroupId& group, const Band& band, int units) {
  if (group.is_su2()) {
    const int j2 = band_level(group, band) - units;
    if (j2 < 0) throw BandExhaustedError("difference operators exhausted the SU2 band");
    return Band::su2_twice_spin(j2);
  }
  const Dual dual(group, band);
  const double r = std::sqrt(dual.band().casimir_cap()) - units;
  if (r < -1e-12) throw BandExhaustedError("difference operators exhausted the torus band");
  return Band::torus_radius(std::max(0.0, r));
}

CMatrix rep_matrix(const GroupId& group, const DualIndex& xi, const GroupPoint& x) {
  check_index(group, xi);
  if (group.is_torus()) {
    const auto& p = as_torus(x);
    double phase = 0.0;
    for (int i = 0; i < group.dim(); ++i) phase += xi.label[i] * p.angles[i];
    CMatrix m(1, 1);
    m(0, 0) = std::polar(1.0, phase);
    return m;
  }
  const int j2 = xi.twice_spin();
  const EulerAngles e = to_euler(as_quat(x));
  const auto d = wigner_d_all(j2, e.theta);
  CMatrix m(j2 + 1, j2 + 1);
  for (int a = 0; a <= j2; ++a) {
    for (int b = 0; b <= j2; ++b) {
      const double mp = 0.5 * (2 * a - j2), mm = 0.5 * (2 * b - j2);
      m(a, b) = std::polar(d[j2](a, b), mp * e.phi + mm * e.psi);
    }
  }
  return m;
}

CVector rep_blocks(const Dual& dual, const GroupPoint& x) {
  const GroupId& group = dual.group();
  CVector out(static_cast<Eigen::Index>(dual.total_entries()));
  if (group.is_torus()) {
    const auto& p = as_torus(x);
    for (std::size_t i = 0; i < dual.size(); ++i) {
      double phase = 0.0;
      for (int c = 0; c < group.dim(); ++c) phase += dual[i].label[c] * p.angles[c];
      out(static_cast<Eigen::Index>(dual.offset(i))) = std::polar(1.0, phase);
    }
    return out;
  }
  const EulerAngles e = to_euler(as_quat(x));
  const auto d = wigner_d_all(dual.max_level(), e.theta);
  for (std::size_t i = 0; i < dual.size(); ++i) {
    const int j2 = dual[i].twice_spin();
    const std::size_t off = dual.offset(i);
    for (int b = 0; b <= j2; ++b) {
      for (int a = 0; a <= j2; ++a) {
        const double mp = 0.5 * (2 * a - j2), mm = 0.5 * (2 * b - j2);
        out(static_cast<Eigen::Index>(off + static_cast<std::size_t>(b) * (j2 + 1) + a)) =
            std::polar(d[j2](a, b), mp * e.phi + mm * e.psi);
      }
    }
  }
  return out;
}

double geodesic_distance(const GroupId& group, const GroupPoint& x, const GroupPoint& y) {
  if (group.is_torus()) {
    const auto& a = as_torus(x);
    const auto& b = as_torus(y);
    double s = 0.0;
    for (std::size_t i = 0; i < a.angles.size(); ++i) {
      double d = wrap(a.angles[i] - b.angles[i], kTwoPi);
      d = std::min(d, kTwoPi - d);
      s += d * d;
    }
    return std::sqrt(s);
  }
  // Sphere convention: d(e, -e) = 2 pi; d(e, exp(tZ)) = t for t in [0, 2 pi].
  const auto& z = as_quat(multiply(group, inverse(group, y), x));
  return 2.0 * std::atan2(std::sqrt(z.x * z.x + z.y * z.y + z.z * z.z), z.w);
}

CMatrix vector_field_symbol(const GroupId& group, int field, const DualIndex& xi) {
  check_index(group, xi);
  if (field < 0 || field >= group.dim()) throw ArgumentError("vector field index out of range");
  if (group.is_torus()) {
    CMatrix m(1, 1);
    m(0, 0) = cplx(0.0, xi.label[field]);
    return m;
  }
  const auto s = spin_matrices(xi.twice_spin());
  const cplx i(0.0, 1.0);
  switch (field) {
    case 0: return i * s.jx;
    case 1: return -i * s.jy;
    default: return i * s.jz;
  }
}

void QuadratureGrid::require_band(const Band& band, std::string_view what) const {
  if (!integrates_exactly(2 * band_level(group_, band))) {
    std::ostringstream os;
    os << what << ": band lambda=" << band.lambda() << " exceeds the exactness band lambda="
       << exactness_band_.lambda() << " of the " << group_.name() << " grid (resolution " << resolution_ << ")";
    throw PrecisionError(os.str());
  }
}

GridPtr haar_grid(const GroupId& group, int resolution) {
  if (resolution < 1) throw ArgumentError("grid resolution must be >= 1");
  std::shared_ptr<QuadratureGrid> g(new QuadratureGrid(group));
  g->resolution_ = resolution;
  if (group.is_torus()) {
    const int n = group.dim();
    const int N = resolution;
    g->n_per_dim_ = N;
    std::size_t count = 1;
    for (int i = 0; i < n; ++i) count *= static_cast<std::size_t>(N);
    g->nodes_.reserve(count);
    g->weights_.assign(count, 1.0 / static_cast<double>(count));
    std::vector<int> idx(n, 0);
    for (std::size_t c = 0; c < count; ++c) {
      TorusPoint p;
      for (int i = 0; i < n; ++i) p.angles.push_back(kTwoPi * idx[i] / N);
      g->nodes_.push_back(std::move(p));
      int i = n - 1;
      while (i >= 0 && ++idx[i] == N) idx[i--] = 0;
    }
    g->max_exact_level_ = N - 1;
    g->exactness_band_ = Band::torus_radius((N - 1) / 2);
    return g;
  }
  // Exact for every D^J with J <= r: |m| <= r < n_phi, |2n| <= 2r < n_psi, and
  // Gauss-Legendre in cos(theta) exact to degree 2 n_theta - 1 >= r.
  const int r = resolution;
  g->n_phi_ = r + 1;
  g->n_psi_ = 2 * r + 1;
  g->n_theta_ = r / 2 + 1;
  gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(g->n_theta_);
  g->theta_.resize(g->n_theta_);
  g->theta_weights_.resize(g->n_theta_);
  for (int t = 0; t < g->n_theta_; ++t) {
    double xi = 0.0, wi = 0.0;
    gsl_integration_glfixed_point(-1.0, 1.0, static_cast<std::size_t>(t), &xi, &wi, table);
    g->theta_[t] = std::acos(xi);
    g->theta_weights_[t] = 0.5 * wi;
  }
  gsl_integration_glfixed_table_free(table);
  const std::size_t count = static_cast<std::size_t>(g->n_theta_) * g->n_phi_ * g->n_psi_;
  g->nodes_.reserve(count);
  g->weights_.reserve(count);
  const double wpp = 1.0 / (static_cast<double>(g->n_phi_) * g->n_psi_);
  for (int t = 0; t < g->n_theta_; ++t) {
    for (int p = 0; p < g->n_phi_; ++p) {
      for (int s = 0; s < g->n_psi_; ++s) {
        const EulerAngles e{kTwoPi * p / g->n_phi_, g->theta_[t], kFourPi * s / g->n_psi_};
        g->nodes_.push_back(from_euler(e));
        g->weights_.push_back(g->theta_weights_[t] * wpp);
      }
    }
  }
  g->max_exact_level_ = 2 * r;
  g->exactness_band_ = Band::su2_twice_spin(r);
  return g;
}

GridPtr haar_grid_for(const GroupId& group, const Band& band) {
  const int level = band_level(group, band);
  return haar_grid(group, group.is_su2() ? std::max(1, level) : 2 * level + 1);
}

}  // namespace gpdo
