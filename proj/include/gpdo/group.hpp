#pragma once

// Concrete compact groups: the n-torus and SU(2).
//
// Conventions used throughout the library:
//  * Torus: characters e^{i k.x} on [0, 2pi)^n, Haar measure dx / (2pi)^n.
//  * SU(2): unit quaternion q <-> U = [[q0 - i q3, q2 + i q1], [-q2 + i q1, q0 + i q3]].
//    Euler angles g = exp(phi Z) exp(theta Y) exp(psi Z), phi in [0,2pi), theta in [0,pi],
//    psi in [0,4pi), Haar density sin(theta) / (16 pi^2).
//    Representation of spin l in the weight basis m = -l..l (row index m + l):
//      D^l_{m'm}(phi, theta, psi) = e^{i m' phi} d^l_{m'm}(theta) e^{i m psi},
//    so that D^{1/2}(U) = U and the left-invariant field Z has symbol diag(i m).
//    Spins are stored doubled (j2 = 2l) to keep half-integers exact.

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace gpdo {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

enum class GroupKind { Torus, SU2 };

class GroupId {
 public:
  static GroupId torus(int n);
  static GroupId su2() { return GroupId(GroupKind::SU2, 3); }
  // Accepts "T1", "T3", "torus", "SU2", "su2".
  static GroupId parse(std::string_view name);

  GroupKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  bool is_torus() const noexcept { return kind_ == GroupKind::Torus; }
  bool is_su2() const noexcept { return kind_ == GroupKind::SU2; }
  std::string name() const;

  bool operator==(const GroupId&) const = default;

 private:
  GroupId(GroupKind kind, int dim) : kind_(kind), dim_(dim) {}
  GroupKind kind_;
  int dim_;
};

// Label of an irreducible unitary representation.
struct DualIndex {
  std::vector<int> label;  // torus: k in Z^n; SU(2): {2l}
  int dim = 1;
  double casimir = 0.0;  // lambda^2: |k|^2 or l(l+1)

  double weight() const { return std::sqrt(1.0 + casimir); }
  int twice_spin() const { return label.front(); }
  bool operator==(const DualIndex& o) const { return label == o.label; }
};

DualIndex torus_index(std::vector<int> k);
DualIndex su2_index(int twice_spin);
std::string to_string(const GroupId& group, const DualIndex& xi);

struct Quaternion {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;
};
struct TorusPoint {
  std::vector<double> angles;
};
using GroupPoint = std::variant<TorusPoint, Quaternion>;

struct EulerAngles {
  double phi = 0.0, theta = 0.0, psi = 0.0;
};

EulerAngles to_euler(const Quaternion& q);
Quaternion from_euler(const EulerAngles& e);
Eigen::Matrix2cd su2_matrix(const Quaternion& q);
Quaternion from_su2_matrix(const Eigen::Matrix2cd& u);

GroupPoint identity_point(const GroupId& group);
GroupPoint multiply(const GroupId& group, const GroupPoint& a, const GroupPoint& b);
GroupPoint inverse(const GroupId& group, const GroupPoint& a);
GroupPoint random_point(const GroupId& group, std::mt19937_64& rng);
// exp(t X_j) for the j-th (0-based) left-invariant basis field.
GroupPoint exp_field(const GroupId& group, int field, double t);

// Truncation of the dual: all [xi] with <xi> <= lambda.
class Band {
 public:
  explicit Band(double lambda);
  double lambda() const noexcept { return lambda_; }
  double casimir_cap() const noexcept { return lambda_ * lambda_ - 1.0; }
  bool contains(double casimir) const noexcept {
    return casimir <= casimir_cap() + 1e-9 * (1.0 + casimir_cap());
  }
  // Band whose largest member is the torus radius |k| <= r.
  static Band torus_radius(double r) { return Band(std::sqrt(1.0 + r * r)); }
  // Band whose largest member is spin j2/2.
  static Band su2_twice_spin(int j2);

 private:
  double lambda_;
};

// Enumerated truncated dual together with the flat block layout used to store one
// d_xi x d_xi matrix per index (column-major blocks, concatenated in dual order).
class Dual {
 public:
  Dual(GroupId group, Band band);

  const GroupId& group() const noexcept { return group_; }
  // Band snapped to the largest enumerated weight.
  const Band& band() const noexcept { return band_; }
  std::size_t size() const noexcept { return indices_.size(); }
  const DualIndex& operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<DualIndex>& indices() const noexcept { return indices_; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  std::size_t offset(std::size_t i) const { return offsets_[i]; }
  std::size_t total_entries() const noexcept { return total_; }
  std::optional<std::size_t> find(const std::vector<int>& label) const;

  // Torus: largest |k_j|; SU(2): largest 2l.
  int max_level() const noexcept { return max_level_; }

  bool operator==(const Dual& o) const { return group_ == o.group_ && indices_ == o.indices_; }

 private:
  GroupId group_;
  Band band_;
  std::vector<DualIndex> indices_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
  int max_level_ = 0;
  std::map<std::vector<int>, std::size_t> lookup_;
};

// Exactly the [xi] with <xi> <= lambda, sorted by (<xi>, label).
std::vector<DualIndex> dual_enumerate(const GroupId& group, double lambda);

// Level units: torus 1 per unit frequency, SU(2) 1 per half spin.
// Shrinks a band by `units` levels; throws BandExhaustedError below the trivial rep.
Band shrink_band(const GroupId& group, const Band& band, int units);

CMatrix rep_matrix(const GroupId& group, const DualIndex& xi, const GroupPoint& x);
// All blocks of the dual evaluated at x, in Dual's flat layout.
CVector rep_blocks(const Dual& dual, const GroupPoint& x);

double geodesic_distance(const GroupId& group, const GroupPoint& x, const GroupPoint& y);

// sigma_X(xi) with (X xi)(x) = xi(x) sigma_X(xi). Field index is 0-based:
// torus d/dx_j; SU(2) 0 = X, 1 = Y, 2 = Z.
CMatrix vector_field_symbol(const GroupId& group, int field, const DualIndex& xi);

class QuadratureGrid {
 public:
  const GroupId& group() const noexcept { return group_; }
  int resolution() const noexcept { return resolution_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<GroupPoint>& nodes() const noexcept { return nodes_; }
  const GroupPoint& node(std::size_t i) const { return nodes_[i]; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  // Largest band whose matrix-coefficient products integrate exactly.
  const Band& exactness_band() const noexcept { return exactness_band_; }
  // Largest total level (sum of the levels of all factors) integrated exactly.
  int max_exact_level() const noexcept { return max_exact_level_; }
  bool integrates_exactly(int total_level) const noexcept { return total_level <= max_exact_level_; }
  // Throws PrecisionError unless forward transforms at this band are exact.
  void require_band(const Band& band, std::string_view what) const;

  // Tensor structure.
  int torus_points_per_dim() const noexcept { return n_per_dim_; }
  int n_phi() const noexcept { return n_phi_; }
  int n_theta() const noexcept { return n_theta_; }
  int n_psi() const noexcept { return n_psi_; }
  const std::vector<double>& theta() const noexcept { return theta_; }
  const std::vector<double>& theta_weights() const noexcept { return theta_weights_; }
  std::size_t su2_node(int t, int p, int s) const {
    return (static_cast<std::size_t>(t) * n_phi_ + p) * n_psi_ + s;
  }

  friend std::shared_ptr<const QuadratureGrid> haar_grid(const GroupId& group, int resolution);

 private:
  explicit QuadratureGrid(GroupId group) : group_(group), exactness_band_(1.0) {}

  GroupId group_;
  int resolution_ = 0;
  std::vector<GroupPoint> nodes_;
  std::vector<double> weights_;
  Band exactness_band_;
  int max_exact_level_ = 0;
  int n_per_dim_ = 0;
  int n_phi_ = 0, n_theta_ = 0, n_psi_ = 0;
  std::vector<double> theta_, theta_weights_;
};

using GridPtr = std::shared_ptr<const QuadratureGrid>;

// Torus: `resolution` points per coordinate, exact for |k_j| <= (resolution - 1) / 2.
// SU(2): exact for every D^J with J <= resolution, hence band 2l <= resolution.
GridPtr haar_grid(const GroupId& group, int resolution);
// Smallest grid whose exactness band covers `band`.
GridPtr haar_grid_for(const GroupId& group, const Band& band);

// Level of a band in level units (see shrink_band).
int band_level(const GroupId& group, const Band& band);

}  // namespace gpdo
