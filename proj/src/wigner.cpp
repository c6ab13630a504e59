#include "gpdo/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace gpdo {

namespace {

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace

double wigner_d_explicit(int j2, int mp2, int m2, double theta) {
  // Integer quantities j+m', j-m', j+m, j-m.
  const int jpmp = (j2 + mp2) / 2, jmmp = (j2 - mp2) / 2;
  const int jpm = (j2 + m2) / 2, jmm = (j2 - m2) / 2;
  const int mpmm = (mp2 - m2) / 2;
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  const double log_pref = 0.5 * (log_factorial(jpmp) + log_factorial(jmmp) + log_factorial(jpm) +
                                 log_factorial(jmm));
  const int s_lo = std::max(0, -mpmm);
  const int s_hi = std::min(jpm, jmmp);
  double sum = 0.0;
  for (int k = s_lo; k <= s_hi; ++k) {
    const int cpow = j2 - mpmm - 2 * k;  // 2j + m - m' - 2k
    const int spow = mpmm + 2 * k;
    const double log_den =
        log_factorial(jpm - k) + log_factorial(k) + log_factorial(mpmm + k) + log_factorial(jmmp - k);
    double term = std::exp(log_pref - log_den);
    term *= std::pow(c, cpow) * std::pow(s, spow);
    sum += ((mpmm + k) % 2 == 0) ? term : -term;
  }
  return sum;
}

std::vector<Eigen::MatrixXd> wigner_d_all(int j2_max, double theta) {
  std::vector<Eigen::MatrixXd> d(static_cast<std::size_t>(j2_max) + 1);
  for (int j2 = 0; j2 <= j2_max; ++j2) d[j2] = Eigen::MatrixXd::Zero(j2 + 1, j2 + 1);
  const double ct = std::cos(theta);

  for (int mp2 = -j2_max; mp2 <= j2_max; ++mp2) {
    for (int m2 = -j2_max; m2 <= j2_max; ++m2) {
      if (((mp2 - m2) % 2) != 0) continue;
      const int j2_0 = std::max(std::abs(mp2), std::abs(m2));
      const double mp = 0.5 * mp2, m = 0.5 * m2;
      // cos(theta) d^j = a_j d^j + b_j d^{j-1} + c_j d^{j+1}
      double prev = 0.0;
      double cur = wigner_d_explicit(j2_0, mp2, m2, theta);
      for (int j2 = j2_0; j2 <= j2_max; j2 += 2) {
        d[j2]((mp2 + j2) / 2, (m2 + j2) / 2) = cur;
        if (j2 + 2 > j2_max) break;
        const double j = 0.5 * j2;
        const double a = (j2 == 0) ? 0.0 : mp * m / (j * (j + 1.0));
        const double b = (j2 == 0) ? 0.0
                                   : std::sqrt((j * j - mp * mp) * (j * j - m * m)) / (j * (2.0 * j + 1.0));
        const double c = std::sqrt(((j + 1.0) * (j + 1.0) - mp * mp) * ((j + 1.0) * (j + 1.0) - m * m)) /
                         ((j + 1.0) * (2.0 * j + 1.0));
        const double next = ((ct - a) * cur - b * prev) / c;
        prev = cur;
        cur = next;
      }
    }
  }
  return d;
}

}  // namespace gpdo
