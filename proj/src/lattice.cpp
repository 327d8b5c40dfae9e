#include "aklv/lattice.hpp"

#include <cstdlib>
#include <numeric>

namespace aklv {

namespace {

void check_magnitude(const IntMat& m) {
  // Desk-scale guard: the normal-form pivoting below keeps entries tame for
  // the tiny lattices we handle; a blowup means the input is out of scope.
  constexpr Int kLimit = Int(1) << 40;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > kLimit) throw AklvError("integer overflow risk in lattice op");
}

Int floor_div(Int a, Int b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Snf smith_normal_form(const IntMat& A) {
  const Eigen::Index m = A.rows(), n = A.cols();
  IntMat D = A;
  IntMat U = IntMat::Identity(m, m);
  IntMat V = IntMat::Identity(n, n);

  Eigen::Index t = 0;
  while (t < m && t < n) {
    // find a pivot
    Eigen::Index pi = -1, pj = -1;
    Int best = 0;
    for (Eigen::Index i = t; i < m; ++i)
      for (Eigen::Index j = t; j < n; ++j)
        if (D(i, j) != 0 && (best == 0 || std::abs(D(i, j)) < best)) {
          best = std::abs(D(i, j));
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    if (pi != t) {
      D.row(pi).swap(D.row(t));
      U.row(pi).swap(U.row(t));
    }
    if (pj != t) {
      D.col(pj).swap(D.col(t));
      V.col(pj).swap(V.col(t));
    }
    bool clean = true;
    for (Eigen::Index i = t + 1; i < m; ++i) {
      Int q = floor_div(D(i, t), D(t, t));
      if (q != 0) {
        D.row(i) -= q * D.row(t);
        U.row(i) -= q * U.row(t);
      }
      if (D(i, t) != 0) clean = false;
    }
    for (Eigen::Index j = t + 1; j < n; ++j) {
      Int q = floor_div(D(t, j), D(t, t));
      if (q != 0) {
        D.col(j) -= q * D.col(t);
        V.col(j) -= q * V.col(t);
      }
      if (D(t, j) != 0) clean = false;
    }
    check_magnitude(D);
    if (!clean) continue;  // re-pivot on the smaller remainders
    // divisibility fix-up: D(t,t) must divide everything below-right
    bool divides = true;
    for (Eigen::Index i = t + 1; i < m && divides; ++i)
      for (Eigen::Index j = t + 1; j < n && divides; ++j)
        if (D(i, j) % D(t, t) != 0) {
          D.row(t) += D.row(i);
          U.row(t) += U.row(i);
          divides = false;
        }
    if (!divides) continue;
    if (D(t, t) < 0) {
      D.row(t) = -D.row(t);
      U.row(t) = -U.row(t);
    }
    ++t;
  }
  return {U, D, V};
}

IntMat column_hnf_basis(const IntMat& A) {
  const Eigen::Index n = A.rows();
  IntMat W = A;
  Eigen::Index piv_col = 0;
  std::vector<Eigen::Index> pivots;
  for (Eigen::Index row = 0; row < n && piv_col < W.cols(); ++row) {
    // gcd out row `row` across columns piv_col..end
    while (true) {
      Eigen::Index jmin = -1;
      Int best = 0;
      for (Eigen::Index j = piv_col; j < W.cols(); ++j)
        if (W(row, j) != 0 && (best == 0 || std::abs(W(row, j)) < best)) {
          best = std::abs(W(row, j));
          jmin = j;
        }
      if (jmin < 0) break;
      if (jmin != piv_col) W.col(jmin).swap(W.col(piv_col));
      bool done = true;
      for (Eigen::Index j = piv_col + 1; j < W.cols(); ++j) {
        Int q = floor_div(W(row, j), W(row, piv_col));
        if (q != 0) W.col(j) -= q * W.col(piv_col);
        if (W(row, j) != 0) done = false;
      }
      check_magnitude(W);
      if (done) break;
    }
    if (W(row, piv_col) != 0) {
      if (W(row, piv_col) < 0) W.col(piv_col) = -W.col(piv_col);
      pivots.push_back(row);
      ++piv_col;
    }
  }
  IntMat H(n, static_cast<Eigen::Index>(pivots.size()));
  for (Eigen::Index j = 0; j < H.cols(); ++j) H.col(j) = W.col(j);
  return H;
}

IntVec hnf_reduce(const IntMat& H, IntVec x) {
  for (Eigen::Index j = 0; j < H.cols(); ++j) {
    // pivot row of column j = first nonzero entry
    Eigen::Index p = -1;
    for (Eigen::Index i = 0; i < H.rows(); ++i)
      if (H(i, j) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    Int q = floor_div(x(p), H(p, j));
    if (q != 0) x -= q * H.col(j);
  }
  return x;
}

IntMat unimodular_inverse(const IntMat& U) {
  const Eigen::Index n = U.rows();
  if (U.cols() != n) throw AklvError("unimodular_inverse: not square");
  std::vector<std::vector<BigRat>> M(n, std::vector<BigRat>(2 * n, 0));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) M[i][j] = BigRat(U(i, j));
    M[i][n + i] = 1;
  }
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = -1;
    for (Eigen::Index i = c; i < n; ++i)
      if (M[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) throw AklvError("unimodular_inverse: singular matrix");
    std::swap(M[c], M[p]);
    BigRat d = M[c][c];
    for (Eigen::Index j = 0; j < 2 * n; ++j) M[c][j] /= d;
    for (Eigen::Index i = 0; i < n; ++i)
      if (i != c && M[i][c] != 0) {
        BigRat f = M[i][c];
        for (Eigen::Index j = 0; j < 2 * n; ++j) M[i][j] -= f * M[c][j];
      }
  }
  IntMat inv(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      BigRat v = M[i][n + j];
      if (boost::multiprecision::denominator(v) != 1)
        throw AklvError("unimodular_inverse: inverse not integral");
      inv(i, j) = static_cast<Int>(boost::multiprecision::numerator(v));
    }
  return inv;
}

IntMat saturation_basis(const IntMat& A) {
  Snf s = smith_normal_form(A);
  const Eigen::Index n = A.rows();
  // colspan(A) = U^{-1} * diag(d) * Z^r; saturation replaces d_i by 1.
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < std::min(s.D.rows(), s.D.cols()); ++i)
    if (s.D(i, i) != 0) ++r;
  IntMat Uinv = unimodular_inverse(s.U);
  IntMat S(n, r);
  for (Eigen::Index j = 0; j < r; ++j) S.col(j) = Uinv.col(j);
  return column_hnf_basis(S);
}

std::optional<std::vector<BigRat>> solve_rational(const IntMat& A, const IntVec& b) {
  const Eigen::Index m = A.rows(), n = A.cols();
  std::vector<std::vector<BigRat>> M(m, std::vector<BigRat>(n + 1, 0));
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) M[i][j] = BigRat(A(i, j));
    M[i][n] = BigRat(b(i));
  }
  std::vector<Eigen::Index> pivot_of_col(n, -1);
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < n && row < m; ++col) {
    Eigen::Index p = -1;
    for (Eigen::Index i = row; i < m; ++i)
      if (M[i][col] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(M[row], M[p]);
    BigRat d = M[row][col];
    for (Eigen::Index j = col; j <= n; ++j) M[row][j] /= d;
    for (Eigen::Index i = 0; i < m; ++i)
      if (i != row && M[i][col] != 0) {
        BigRat f = M[i][col];
        for (Eigen::Index j = col; j <= n; ++j) M[i][j] -= f * M[row][j];
      }
    pivot_of_col[col] = row;
    ++row;
  }
  for (Eigen::Index i = row; i < m; ++i)
    if (M[i][n] != 0) return std::nullopt;  // inconsistent
  std::vector<BigRat> x(n, 0);
  for (Eigen::Index col = 0; col < n; ++col)
    if (pivot_of_col[col] >= 0) x[col] = M[pivot_of_col[col]][n];
  // verify (free variables set to zero may fail when the system is consistent
  // only with nonzero free part; our uses have full column rank)
  for (Eigen::Index i = 0; i < m; ++i) {
    BigRat acc = 0;
    for (Eigen::Index j = 0; j < n; ++j) acc += BigRat(A(i, j)) * x[j];
    if (acc != BigRat(b(i))) return std::nullopt;
  }
  return x;
}

IntMat f2_column_basis(const IntMat& A) {
  IntMat W = mod2(A);
  const Eigen::Index n = W.rows();
  Eigen::Index piv = 0;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index row = 0; row < n && piv < W.cols(); ++row) {
    Eigen::Index j0 = -1;
    for (Eigen::Index j = piv; j < W.cols(); ++j)
      if (W(row, j) != 0) {
        j0 = j;
        break;
      }
    if (j0 < 0) continue;
    if (j0 != piv) W.col(j0).swap(W.col(piv));
    for (Eigen::Index j = 0; j < W.cols(); ++j)
      if (j != piv && W(row, j) != 0) W.col(j) = mod2(IntVec(W.col(j) + W.col(piv)));
    keep.push_back(row);
    ++piv;
  }
  IntMat B(n, static_cast<Eigen::Index>(keep.size()));
  for (Eigen::Index j = 0; j < B.cols(); ++j) B.col(j) = W.col(j);
  return B;
}

IntVec f2_reduce(const IntMat& basis, IntVec x) {
  x = mod2(x);
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    Eigen::Index p = -1;
    for (Eigen::Index i = 0; i < basis.rows(); ++i)
      if (basis(i, j) != 0) {
        p = i;
        break;
      }
    if (p >= 0 && x(p) != 0) x = mod2(IntVec(x + basis.col(j)));
  }
  return x;
}

IntMat f2_kernel(const IntMat& A) {
  IntMat W = mod2(A);
  const Eigen::Index m = W.rows(), n = W.cols();
  IntMat T = IntMat::Identity(n, n);  // track column ops
  Eigen::Index piv = 0;
  for (Eigen::Index row = 0; row < m && piv < n; ++row) {
    Eigen::Index j0 = -1;
    for (Eigen::Index j = piv; j < n; ++j)
      if (W(row, j) != 0) {
        j0 = j;
        break;
      }
    if (j0 < 0) continue;
    if (j0 != piv) {
      W.col(j0).swap(W.col(piv));
      T.col(j0).swap(T.col(piv));
    }
    for (Eigen::Index j = piv + 1; j < n; ++j)
      if (W(row, j) != 0) {
        W.col(j) = mod2(IntVec(W.col(j) + W.col(piv)));
        T.col(j) = mod2(IntVec(T.col(j) + T.col(piv)));
      }
    ++piv;
  }
  std::vector<Eigen::Index> null_cols;
  for (Eigen::Index j = 0; j < n; ++j)
    if (W.col(j).isZero()) null_cols.push_back(j);
  IntMat K(n, static_cast<Eigen::Index>(null_cols.size()));
  for (Eigen::Index j = 0; j < K.cols(); ++j) K.col(j) = T.col(null_cols[j]);
  return K;
}

}  // namespace aklv
