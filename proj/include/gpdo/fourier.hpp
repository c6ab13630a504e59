#pragma once

// Group Fourier transform on a finite band:
//   f^(xi) = int f(x) xi(x)^* dx,   f(x) = sum_xi d_xi Tr(xi(x) f^(xi)).

#include <functional>
#include <memory>
#include <random>

#include <json.hpp>

#include "gpdo/group.hpp"

namespace gpdo {

using DualPtr = std::shared_ptr<const Dual>;
DualPtr make_dual(const GroupId& group, const Band& band);

class GridFunction {
 public:
  explicit GridFunction(GridPtr grid);
  GridFunction(GridPtr grid, CVector values);
  static GridFunction sample(GridPtr grid, const std::function<cplx(const GroupPoint&)>& fn);

  const GridPtr& grid() const noexcept { return grid_; }
  const CVector& values() const noexcept { return values_; }
  CVector& values() noexcept { return values_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }
  cplx operator[](std::size_t i) const { return values_(static_cast<Eigen::Index>(i)); }

  double sup_norm() const;
  // (sum_j w_j |f(x_j)|^p)^{1/p}
  double lp_norm(double p) const;

 private:
  GridPtr grid_;
  CVector values_;
};

// One d_xi x d_xi matrix per index of the dual, in Dual's flat layout.
class FourierCoefficients {
 public:
  explicit FourierCoefficients(DualPtr dual);
  FourierCoefficients(DualPtr dual, CVector data);

  const Dual& dual() const noexcept { return *dual_; }
  const DualPtr& dual_ptr() const noexcept { return dual_; }
  const GroupId& group() const noexcept { return dual_->group(); }
  const Band& band() const noexcept { return dual_->band(); }

  Eigen::Map<CMatrix> block(std::size_t i);
  Eigen::Map<const CMatrix> block(std::size_t i) const;
  const CVector& data() const noexcept { return data_; }
  CVector& data() noexcept { return data_; }

 private:
  DualPtr dual_;
  CVector data_;
};

// Throws PrecisionError if the band exceeds the grid's exactness band.
FourierCoefficients forward(const GridFunction& f, const Band& band);
// Plain quadrature sum over nodes; reference path for the fast transforms.
FourierCoefficients forward_direct(const GridFunction& f, const Band& band);

GridFunction inverse(const FourierCoefficients& a, GridPtr grid);
// Uses the smallest grid that transforms the band exactly.
GridFunction inverse(const FourierCoefficients& a);
GridFunction inverse_direct(const FourierCoefficients& a, GridPtr grid);
// sum_xi d_xi Tr(xi(x) a(xi)) at an arbitrary point.
cplx evaluate(const FourierCoefficients& a, const GroupPoint& x);

// Parseval: (sum_xi d_xi ||a(xi)||_HS^2)^{1/2}
double l2_norm(const FourierCoefficients& a);

// Random coefficients with unit-variance complex Gaussian entries, inverted on `grid`.
GridFunction random_band_limited(GridPtr grid, const Band& band, std::mt19937_64& rng);

// {group, band, entries: [{label, re: [[..]], im: [[..]]}]}; rows of each matrix listed in order.
nlohmann::json to_json(const FourierCoefficients& a);
FourierCoefficients coefficients_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const CMatrix& m, const char* part);
CMatrix matrix_from_json(const nlohmann::json& re, const nlohmann::json& im);

}  // namespace gpdo
