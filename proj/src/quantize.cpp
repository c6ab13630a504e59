#include "gpdo/quantize.hpp"

#include <cstdio>

#include "gpdo/errors.hpp"
#include "gpdo/parallel.hpp"

namespace gpdo {

namespace {

bool same_grid(const GridPtr& a, const GridPtr& b) {
  return a == b || (a->group() == b->group() && a->resolution() == b->resolution());
}

GridPtr resolve_grid(const Symbol& s, GridPtr grid) {
  if (!s.is_invariant()) {
    if (grid && !same_grid(grid, s.grid())) throw ArgumentError("gridded symbol is tied to its own grid");
    return s.grid();
  }
  if (!grid) return haar_grid_for(s.group(), s.band());
  if (!(grid->group() == s.group())) throw ArgumentError("grid and symbol use different groups");
  return grid;
}

// d_xi (A(xi))^T flattened so that sum_xi d_xi Tr(xi(x) A(xi)) = rep_blocks(x) . v.
CVector trace_vector(const Dual& dual, const CVector& flat) {
  CVector v(flat.size());
  for (std::size_t i = 0; i < dual.size(); ++i) {
    const int d = dual[i].dim;
    Eigen::Map<CMatrix>(v.data() + dual.offset(i), d, d) =
        static_cast<double>(d) * Eigen::Map<const CMatrix>(flat.data() + dual.offset(i), d, d).transpose();
  }
  return v;
}

// Row-major flat index of x_i - y_j on a translation-closed torus grid.
std::size_t torus_difference_index(std::size_t i, std::size_t j, int n, int dim) {
  std::size_t idx = 0, stride = 1;
  for (int c = 0; c < dim; ++c) {
    const auto ni = static_cast<long>(i % n), nj = static_cast<long>(j % n);
    i /= n;
    j /= n;
    idx += static_cast<std::size_t>(((ni - nj) % n + n) % n) * stride;
    stride *= static_cast<std::size_t>(n);
  }
  return idx;
}

// Fills out(i, j) = K(x_i, y_j) * scale_j.
void fill_kernel(const Symbol& s, const GridPtr& grid, const std::vector<double>& scale, CMatrix& out) {
  const std::size_t n = grid->size();
  out.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  if (s.group().is_torus()) {
    const int per = grid->torus_points_per_dim(), dim = s.group().dim();
    std::vector<CVector> rows(s.x_count());
    parallel_for(0, s.x_count(), [&](std::size_t x) { rows[x] = inverse(s.at(x), grid).values(); });
    parallel_for(0, n, [&](std::size_t i) {
      const CVector& k = rows[s.column(i)];
      for (std::size_t j = 0; j < n; ++j)
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            k(static_cast<Eigen::Index>(torus_difference_index(i, j, per, dim))) * scale[j];
    });
    return;
  }
  // xi(y^{-1} x) = xi(y)^* xi(x), so K = B^T conj(R) with B = d xi(x) sigma(x, xi), R = xi(y).
  const Dual& dual = s.dual();
  const auto total = static_cast<Eigen::Index>(dual.total_entries());
  CMatrix reps(total, static_cast<Eigen::Index>(n));
  parallel_for(0, n, [&](std::size_t k) { reps.col(static_cast<Eigen::Index>(k)) = rep_blocks(dual, grid->node(k)); });
  CMatrix b(total, static_cast<Eigen::Index>(n));
  parallel_for(0, n, [&](std::size_t k) {
    const auto col = static_cast<Eigen::Index>(k);
    for (std::size_t i = 0; i < dual.size(); ++i) {
      const int d = dual[i].dim;
      Eigen::Map<const CMatrix> xi(reps.col(col).data() + dual.offset(i), d, d);
      Eigen::Map<CMatrix>(b.col(col).data() + dual.offset(i), d, d) =
          static_cast<double>(d) * xi * s.block(s.column(k), i);
    }
  });
  for (std::size_t j = 0; j < n; ++j) reps.col(static_cast<Eigen::Index>(j)) = reps.col(static_cast<Eigen::Index>(j)).conjugate() * scale[j];
  out.noalias() = b.transpose() * reps;
}

void write_matrix_csv(std::ostream& os, const GridPtr& grid, const CMatrix& m, const char* what) {
  os << "# " << what << " group=" << grid->group().name() << " resolution=" << grid->resolution()
     << " nodes=" << grid->size() << "\n";
  os << "row,col,re,im\n";
  char buf[96];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%ld,%ld,%.17g,%.17g\n", static_cast<long>(i), static_cast<long>(j),
                    m(i, j).real(), m(i, j).imag());
      os << buf;
    }
  }
}

}  // namespace

GridFunction apply(const Symbol& s, const GridFunction& f) {
  const auto& grid = f.grid();
  if (!(grid->group() == s.group())) throw ArgumentError("symbol and function use different groups");
  if (!s.is_invariant() && !same_grid(grid, s.grid())) throw ArgumentError("gridded symbol and function use different grids");
  grid->require_band(s.band(), "apply");
  const FourierCoefficients a = forward(f, s.band());
  const Dual& dual = s.dual();
  if (s.is_invariant()) {
    FourierCoefficients b(a.dual_ptr());
    for (std::size_t i = 0; i < dual.size(); ++i) b.block(i) = s.block(0, i) * a.block(i);
    return inverse(b, grid);
  }
  GridFunction out(grid);
  parallel_for(0, grid->size(), [&](std::size_t n) {
    CVector prod(a.data().size());
    for (std::size_t i = 0; i < dual.size(); ++i) {
      const int d = dual[i].dim;
      Eigen::Map<CMatrix>(prod.data() + dual.offset(i), d, d) = s.block(n, i) * a.block(i);
    }
    out.values()(static_cast<Eigen::Index>(n)) = rep_blocks(dual, grid->node(n)).transpose() * trace_vector(dual, prod);
  });
  return out;
}

KernelTable kernel(const Symbol& s, GridPtr grid) {
  KernelTable k;
  k.grid = resolve_grid(s, std::move(grid));
  fill_kernel(s, k.grid, std::vector<double>(k.grid->size(), 1.0), k.values);
  return k;
}

DenseOperator realize(const Symbol& s, GridPtr grid) {
  DenseOperator m;
  m.grid = resolve_grid(s, std::move(grid));
  fill_kernel(s, m.grid, m.grid->weights(), m.matrix);
  return m;
}

void write_csv(std::ostream& os, const KernelTable& k) { write_matrix_csv(os, k.grid, k.values, "kernel"); }
void write_csv(std::ostream& os, const DenseOperator& m) { write_matrix_csv(os, m.grid, m.matrix, "dense_operator"); }

}  // namespace gpdo
