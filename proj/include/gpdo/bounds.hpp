#pragma once

// Numerical checks of the quantitative bounds: Hilbert-Schmidt identity, L-infinity
// bound, L2 multiplier norm, Lp lower bounds, BMO seminorm, interval and threshold
// arithmetic, Weyl counts and the sharpness experiment.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpdo/quantize.hpp"
#include "gpdo/symbol.hpp"

namespace gpdo {

// sqrt(int sum_xi d ||sigma(x, xi)||_HS^2 dx) by quadrature over the symbol's x-nodes.
double hs_norm_symbol(const Symbol& s);
// sqrt(double quadrature of |K(x, y)|^2), with y on the smallest grid exact for |K|^2.
double hs_norm_kernel(const Symbol& s);

// Grid used for the y-quadrature of kernel L1 norms when none is given.
GridPtr linf_quadrature_grid(const Symbol& s);
// max_x ||F^{-1} sigma(x, .)||_{L1}, the quadrature taken on `quadrature`.
double linf_bound_constant(const Symbol& s, GridPtr quadrature = nullptr);

// sup_xi ||sigma(xi)||_op; invariant symbols only.
double l2_multiplier_norm(const Symbol& s);

struct LpBound {
  double value = 0.0;
  std::optional<GridFunction> witness;       // achieves value, normalized in L^p(grid)
  std::string witness_start;                 // "random-k", "dirichlet" or "adjoint-dirichlet"
  std::vector<std::vector<double>> history;  // quotients per start
  int restarts = 0;
  std::vector<std::string> warnings;
};

// Lower bound for ||M||_{L^p(grid) -> L^p(grid)} by the dual-exponent power iteration
// from 5 random starts, the Dirichlet start and the adjoint Dirichlet start.
LpBound lp_lower_bound(const DenseOperator& m, double p, int iterations, std::uint64_t seed);
// Quotient ||M f||_p / ||f||_p in L^p(grid).
double lp_quotient(const DenseOperator& m, const GridFunction& f, double p);

struct BmoResult {
  double value = 0.0;
  std::size_t center = 0;
  double radius = 0.0;
  std::vector<std::string> warnings;
};
inline const std::vector<double> kBmoRadii = {0.19634954084936207, 0.39269908169872414, 0.78539816339744828,
                                              1.5707963267948966};
double group_diameter(const GroupId& group);
BmoResult bmo_seminorm(const GridFunction& g, const std::vector<double>& radii = kBmoRadii);

struct IntervalReport {
  int n = 0;
  double rho = 0.0, nu = 0.0;
  double ratio = 0.0;       // nu / (n (1 - rho))
  double half_width = 0.0;  // min(ratio, 1/2)
  double inv_p_minus = 0.5, inv_p_plus = 0.5;
  double p_minus = 2.0, p_plus = 2.0;  // p_plus is +inf on the full range
  bool full_range = false;             // nu >= n (1 - rho) / 2
};
IntervalReport fefferman_interval(int n, double rho, double nu);

struct ThresholdReport {
  int n = 0;
  double p = 2.0, rho = 0.0, delta = 0.0;
  int kappa = 0;            // smallest even integer > n/2
  int ell = 0;              // smallest integer > n/p, equal to [n/p] + 1
  double m0 = 0.0;          // kappa (1 - rho) |1/p - 1/2| + delta ([n/p] + 1)
  bool first_order = false;  // p > n: only |beta| <= 1 is required
  double m0_first_order = 0.0;  // kappa (1 - rho) |1/p - 1/2| + delta, meaningful when first_order
};
ThresholdReport finite_regularity_threshold(int n, double p, double rho, double delta);

enum class Verdict { Plateau, Growth };
const char* to_string(Verdict v);
inline constexpr double kGrowthThreshold = 0.05;

struct SharpnessSeries {
  double rho = 0.0, nu = 0.0, p = 2.0;
  int iterations = 0;
  std::uint64_t seed = 0;
  std::vector<std::pair<int, double>> points;  // (Lambda, lower bound)
  double slope = 0.0;                          // over Lambda >= Lambda_max / 10
  Verdict verdict = Verdict::Plateau;
  double expected_rate = 0.0;  // max(0, (1 - rho)|1/2 - 1/p| - nu)
  double seconds = 0.0;
};
// Slope of log y against log x over the points with x >= x_max / 10.
double final_decade_slope(const std::vector<std::pair<int, double>>& points);
Verdict classify_slope(double slope);
SharpnessSeries sharpness_experiment(double rho, double nu, double p, const std::vector<int>& lambdas, int iterations,
                                     std::uint64_t seed);

struct WeylRow {
  double lambda = 0.0;
  double sum = 0.0;    // sum_{<xi> <= lambda} d^2 <xi>^{alpha n}
  double ratio = 0.0;  // sum / lambda^{(alpha + 1) n}
};
std::vector<WeylRow> weyl_count(const GroupId& group, const std::vector<double>& lambdas, double alpha);

// Partial sums of d^2 <xi>^{-s} at the dyadic marks lambda = 2^j, j = 0..levels.
struct WeylSeries {
  double s = 0.0;
  std::vector<double> lambdas, partial, increments;
  double increment_slope = 0.0;  // log-log slope of the band increments over the final decade
  double last_fraction = 0.0;    // last increment / final partial sum
  bool converges = false;        // increments decay and last_fraction < 10%
};
WeylSeries weyl_series(const GroupId& group, double s, int levels);

struct AuditSample {
  double lhs = 0.0, rhs = 0.0;  // ||A f||_inf and C ||f||_inf
  bool ok = true;
};
struct AuditReport {
  double linf_constant = 0.0;
  std::vector<AuditSample> samples;
  double hs_symbol = 0.0, hs_kernel = 0.0, hs_relative = 0.0;
  bool hs_ok = true;
  double measured_order = 0.0;  // m in sup_x ||sigma(x, xi)||_op <= C <xi>^{-m}
  bool hs_decay_applies = false;  // measured_order > dim / 2
  std::vector<std::pair<double, double>> hs_tails;  // (Lambda, dyadic band sum of d ||sigma||_HS^2)
  double hs_tail_slope = 0.0;
  bool hs_cauchy_ok = true;
  std::vector<std::string> violations;
};
// f_samples must be band-limited within the symbol band.
AuditReport bound_audit(const Symbol& s, const std::vector<FourierCoefficients>& f_samples);

nlohmann::json to_json(const LpBound& r);
nlohmann::json to_json(const BmoResult& r);
nlohmann::json to_json(const IntervalReport& r);
nlohmann::json to_json(const ThresholdReport& r);
nlohmann::json to_json(const SharpnessSeries& r);
nlohmann::json to_json(const WeylSeries& r);
nlohmann::json to_json(const AuditReport& r);

}  // namespace gpdo
