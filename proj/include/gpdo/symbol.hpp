#pragma once

// Matrix symbols sigma(x, xi), difference operators in xi, invariant derivatives in x,
// and S^m_{rho,delta} seminorms.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gpdo/fourier.hpp"

namespace gpdo {

class Symbol {
 public:
  // Zero-filled storage; one column per node (gridded) or a single column (invariant).
  static Symbol invariant(DualPtr dual, std::string provenance);
  static Symbol gridded(DualPtr dual, GridPtr grid, std::string provenance);

  bool is_invariant() const noexcept { return !grid_; }
  const GridPtr& grid() const noexcept { return grid_; }
  const Dual& dual() const noexcept { return *dual_; }
  const DualPtr& dual_ptr() const noexcept { return dual_; }
  const GroupId& group() const noexcept { return dual_->group(); }
  const Band& band() const noexcept { return dual_->band(); }
  const std::string& provenance() const noexcept { return provenance_; }
  void set_provenance(std::string p) { provenance_ = std::move(p); }

  // Number of stored x-columns (1 when invariant).
  std::size_t x_count() const noexcept { return static_cast<std::size_t>(data_.cols()); }
  // Column holding the values at grid node `node`.
  std::size_t column(std::size_t node) const noexcept { return is_invariant() ? 0 : node; }

  Eigen::Map<CMatrix> block(std::size_t x, std::size_t i);
  Eigen::Map<const CMatrix> block(std::size_t x, std::size_t i) const;
  FourierCoefficients at(std::size_t x) const;
  void set(std::size_t x, const FourierCoefficients& a);

  // total_entries x x_count, column-major blocks per column.
  const CMatrix& data() const noexcept { return data_; }
  CMatrix& data() noexcept { return data_; }

 private:
  Symbol(DualPtr dual, GridPtr grid, std::string provenance);
  DualPtr dual_;
  GridPtr grid_;
  std::string provenance_;
  CMatrix data_;
};

// Largest singular value.
double op_norm(const CMatrix& m);

Symbol identity_symbol(const GroupId& group, const Band& band);
// <xi>^s I
Symbol build_multiplier_power(const GroupId& group, const Band& band, double s);
// Torus(1): e^{i <k>^{1-rho}} <k>^{-nu}; the phase uses <k> rather than |k| to avoid the kink at 0.
Symbol build_hlhw(const Band& band, double rho, double nu);
// e^{i t f(x) <xi>^delta} I on the grid of f; f must be real.
Symbol build_schrodinger(const Band& band, double t, const GridFunction& f, double delta);
// SU(2): diag(1 / (i m + c)); throws SingularSymbolError when i c is a half-integer.
Symbol build_z_plus_c_inverse(const Band& band, cplx c);
// a(x) I on the grid of a.
Symbol multiplication_symbol(const GridFunction& a, const Band& band);
// sigma_X(xi) as an invariant symbol (the operator X itself).
Symbol vector_field_operator(const GroupId& group, const Band& band, int field);

// Pointwise products and adjoints in xi; gridded inputs must share a grid.
Symbol symbol_product(const Symbol& a, const Symbol& b);
Symbol symbol_adjoint(const Symbol& a);
// Restriction to a smaller band (entries outside are dropped).
Symbol restrict_band(const Symbol& s, const Band& band);
// Gridded copy of an invariant symbol (gridded input is returned unchanged).
Symbol to_gridded(const Symbol& s, GridPtr grid);
// max |a - b| over the common x-columns and the indices of a's band.
double max_abs_difference(const Symbol& a, const Symbol& b);

// sigma(x, xi) = xi(x)^* (A xi)(x), with A applied to every matrix coefficient on `grid`.
using GridOperator = std::function<GridFunction(const GridFunction&)>;
Symbol extract_symbol(const GridOperator& op, const Band& band, GridPtr grid);

struct DifferenceOp {
  std::string name;
  GroupId group;
  std::function<cplx(const GroupPoint&)> q;
  int band_units = 1;  // levels q occupies in the dual (see shrink_band)
  int order = 1;       // vanishing order at e
  // Torus only: q(y) = sum c_s e^{i s.y}, so (Delta_q sigma)(k) = sum c_s sigma(k - s).
  std::optional<std::vector<std::pair<std::vector<int>, cplx>>> shift_rule;
};

enum class DifferenceRoute { Automatic, Kernel, Shift };

// Torus: e^{i x_j} - 1, e^{-i x_j} - 1 for j = 1..n. SU(2): D^{1/2}_{ij} - delta_ij in row-major order.
std::vector<DifferenceOp> admissible_collection(const GroupId& group);
// Product of two torus differences (composed shift rule); used for Leibniz checks.
DifferenceOp product_difference(const DifferenceOp& a, const DifferenceOp& b);
// rho^2: SU(2) 2 - tr D^{1/2}; torus sum_j (2 - 2 cos x_j).
DifferenceOp rho_squared(const GroupId& group);

// Delta_q sigma on the band shrunk by q.band_units. The kernel route multiplies the kernel
// F^{-1} sigma(x, .) by q and transforms back; the shift route applies the torus shift rule.
Symbol difference(const DifferenceOp& q, const Symbol& s, DifferenceRoute route = DifferenceRoute::Automatic);
Symbol laplace_difference(const Symbol& s);

// d^beta sigma = d_{beta[0]} d_{beta[1]} ... sigma (fields 0-based). Fields are composed as operators,
// so the last listed field acts first; on SU(2) the order matters.
Symbol invariant_derivative(const std::vector<int>& beta, const Symbol& s);

struct ClassParams {
  double m = 0.0, rho = 1.0, delta = 0.0;
  int l = 0;
};

struct SeminormEntry {
  std::vector<int> alpha;  // indices into admissible_collection, nondecreasing
  std::vector<int> beta;   // field indices, nondecreasing
  double sup = 0.0;
  // (Lambda_j, sup over lo <= <xi> <= Lambda_j) for Lambda_j = lo 2^j, ending at hi.
  std::vector<std::pair<double, double>> sweep;
  std::string label() const;
};

struct SeminormReport {
  ClassParams params;
  double window_lo = 1.0, window_hi = 1.0;
  std::vector<SeminormEntry> entries;  // by |alpha| + |beta|, then |beta|, then lexicographic
  double overall = 0.0;
  std::string collection;  // e.g. "T1 canonical", flagged as collection-relative when delta >= rho
  bool collection_relative = false;
};

// Differences act after derivatives; each alpha is applied in collection order.
SeminormReport seminorm(const Symbol& s, const ClassParams& params, double window_lo, double window_hi);

struct ClassVerdict {
  bool consistent = true;
  std::string entry;  // first entry (report order) whose slope exceeds the threshold
  double slope = 0.0;
  std::vector<std::pair<std::string, double>> slopes;  // per nonzero entry
};

inline constexpr double kSlopeThreshold = 0.05;
// Least-squares slope of log(partial sup) against log(Lambda) per entry.
ClassVerdict class_membership(const SeminormReport& report, double threshold = kSlopeThreshold);
double loglog_slope(const std::vector<std::pair<double, double>>& points);

nlohmann::json to_json(const Symbol& s);
nlohmann::json to_json(const SeminormReport& r);

}  // namespace gpdo
