#pragma once

#include <vector>

#include <Eigen/Dense>

namespace gpdo {

// Wigner small-d matrix element d^j_{m'm}(theta) = <j m'| exp(-i theta J_y) |j m>
// from the closed-form sum. Arguments are doubled (j2 = 2j, ...). Accurate for small
// j only; used for recursion seeds and as a cross-check.
double wigner_d_explicit(int j2, int mp2, int m2, double theta);

// d^j(theta) for every 2j = 0..j2_max via the three-term recursion in j.
// Entry [j2](i, k) is d^j_{m'm} with m' = i - j, m = k - j.
std::vector<Eigen::MatrixXd> wigner_d_all(int j2_max, double theta);

}  // namespace gpdo
