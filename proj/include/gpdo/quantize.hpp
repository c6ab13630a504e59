#pragma once

// Op(sigma) f(x) = sum_xi d_xi Tr(xi(x) sigma(x, xi) f^(xi)), its Schwartz kernel
// K(x, y) = sum_xi d_xi Tr(xi(y^{-1} x) sigma(x, xi)), and dense grid realizations.

#include <ostream>

#include "gpdo/symbol.hpp"

namespace gpdo {

// f must be band-limited within the symbol band; a gridded symbol must share f's grid.
GridFunction apply(const Symbol& s, const GridFunction& f);

struct KernelTable {
  GridPtr grid;
  CMatrix values;  // values(i, j) = K(x_i, y_j)
};

struct DenseOperator {
  GridPtr grid;
  CMatrix matrix;  // K(x_i, y_j) w_j
};

// Gridded symbols use their own grid; invariant symbols use `grid`, or the smallest exact
// grid for their band when none is given.
KernelTable kernel(const Symbol& s, GridPtr grid = nullptr);
DenseOperator realize(const Symbol& s, GridPtr grid = nullptr);

// Row-major "row,col,re,im" with a commented metadata header; 17 significant digits.
void write_csv(std::ostream& os, const KernelTable& k);
void write_csv(std::ostream& os, const DenseOperator& m);

}  // namespace gpdo
