#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "relaxflux/core/error.hpp"
#include "relaxflux/core/linalg.hpp"

namespace relaxflux {

// Real eigenpairs of a small block, eigenvalues ascending, unit-norm columns.
template <int n>
struct RealEigen {
  Vec<n> values;
  Mat<n> vectors;
};

// Dense eigen-decomposition bundle M = R diag(lambda) Rinv.
template <int N>
struct WaveDecomposition {
  Mat<N> R;
  Mat<N> Rinv;
  Vec<N> lambda;

  Mat<N> lambda_plus() const { return lambda.cwiseMax(0.0).asDiagonal(); }
  Mat<N> lambda_minus() const { return lambda.cwiseMin(0.0).asDiagonal(); }
  Mat<N> i_plus() const {
    Vec<N> d;
    for (int k = 0; k < N; ++k) d[k] = 0.5 * (1.0 + sgn(lambda[k]));
    return d.asDiagonal();
  }
  Mat<N> i_minus() const {
    Vec<N> d;
    for (int k = 0; k < N; ++k) d[k] = 0.5 * (1.0 - sgn(lambda[k]));
    return d.asDiagonal();
  }
  Mat<N> reconstruct() const { return R * lambda.asDiagonal() * Rinv; }
  double spectral_radius() const { return lambda.cwiseAbs().maxCoeff(); }

  static double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }
};

namespace detail {

inline double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Basis of the null space of A with the given dimension, via full-pivot
// elimination. Throws DefectiveMatrix when A is not rank n - dim within tol.
template <int n>
Mat<n> null_space(Mat<n> A, int dim, double tol, int& found) {
  std::array<int, n> col;
  std::iota(col.begin(), col.end(), 0);
  const int steps = n - dim;
  for (int k = 0; k < steps; ++k) {
    int pr = k, pc = k;
    double best = -1.0;
    for (int r = k; r < n; ++r)
      for (int c = k; c < n; ++c)
        if (std::abs(A(r, c)) > best) {
          best = std::abs(A(r, c));
          pr = r;
          pc = c;
        }
    if (best <= tol) {
      throw SolverError(ErrorKind::DefectiveMatrix, "eigenvector solve lost rank early");
    }
    A.row(k).swap(A.row(pr));
    A.col(k).swap(A.col(pc));
    std::swap(col[k], col[pc]);
    for (int r = k + 1; r < n; ++r) {
      double f = A(r, k) / A(k, k);
      if (f != 0.0) A.row(r) -= f * A.row(k);
    }
  }
  double rest = 0.0;
  for (int r = steps; r < n; ++r)
    for (int c = steps; c < n; ++c) rest = std::max(rest, std::abs(A(r, c)));
  if (rest > tol) {
    throw SolverError(ErrorKind::DefectiveMatrix,
                      "eigenvalue cluster has fewer independent eigenvectors than its multiplicity");
  }
  Mat<n> out = Mat<n>::Zero();
  for (int f = 0; f < dim; ++f) {
    Vec<n> y = Vec<n>::Zero();
    y[steps + f] = 1.0;
    for (int r = steps - 1; r >= 0; --r) {
      double s = 0.0;
      for (int c = r + 1; c < n; ++c) s += A(r, c) * y[c];
      y[r] = -s / A(r, r);
    }
    Vec<n> x;
    for (int c = 0; c < n; ++c) x[col[c]] = y[c];
    out.col(f) = x.normalized();
  }
  found = dim;
  return out;
}

// Groups sorted eigenvalues into clusters and fills eigenvectors.
template <int n>
RealEigen<n> vectors_for(const Mat<n>& K, Vec<n> values) {
  std::sort(values.data(), values.data() + n);
  const double scale = std::max(K.cwiseAbs().maxCoeff(), 1e-300);
  const double cluster_tol = 1e-6 * scale;
  RealEigen<n> out;
  out.values = values;
  int k = 0;
  while (k < n) {
    int m = 1;
    while (k + m < n && values[k + m] - values[k] <= cluster_tol) ++m;
    double mean = 0.0;
    for (int q = 0; q < m; ++q) mean += values[k + q];
    mean /= m;
    for (int q = 0; q < m; ++q) out.values[k + q] = mean;
    Mat<n> A = K - mean * Mat<n>::Identity();
    int found = 0;
    Mat<n> basis = null_space<n>(A, m, 1e-6 * scale, found);
    for (int q = 0; q < m; ++q) out.vectors.col(k + q) = basis.col(q);
    k += m;
  }
  return out;
}

template <int n>
bool strictly_upper_zero(const Mat<n>& K) {
  for (int r = 0; r < n; ++r)
    for (int c = r + 1; c < n; ++c)
      if (K(r, c) != 0.0) return false;
  return true;
}

}  // namespace detail

// Real roots of l^3 + b l^2 + c l + d, ascending. Throws NonRealSpectrum.
std::array<double, 3> cubic_real_roots(double b, double c, double d);

RealEigen<3> eig_real_3x3(const Mat3& K);

// 4x4 block whose first row is (k00, 0, 0, 0): spectrum is k00 plus that of
// the trailing 3x3 block.
RealEigen<4> eig_real_4x4_reducible(const Mat4& K);

// Eigenpairs of a lower-triangular matrix: the diagonal, with eigenvectors by
// forward substitution. Columns are unit norm, eigenvalues ascending with
// ties kept in index order.
template <int n>
RealEigen<n> eig_lower_triangular(const Mat<n>& K) {
  std::array<int, n> order;
  std::iota(order.begin(), order.end(), 0);
  // Stable insertion sort on the diagonal.
  for (int a = 1; a < n; ++a) {
    const int key = order[a];
    int b = a - 1;
    for (; b >= 0 && K(order[b], order[b]) > K(key, key); --b) order[b + 1] = order[b];
    order[b + 1] = key;
  }
  const double scale = std::max(K.cwiseAbs().maxCoeff(), 1e-300);
  const double tie = 1e-12 * scale;
  RealEigen<n> out;
  for (int s = 0; s < n; ++s) {
    const int k = order[s];
    const double lam = K(k, k);
    Vec<n> r = Vec<n>::Zero();
    r[k] = 1.0;
    for (int i = k + 1; i < n; ++i) {
      double num = 0.0;
      for (int j = k; j < i; ++j) num += K(i, j) * r[j];
      const double den = lam - K(i, i);
      if (std::abs(den) <= tie) {
        if (std::abs(num) > 1e-9 * scale) {
          throw SolverError(ErrorKind::DefectiveMatrix, "repeated diagonal entry with coupling");
        }
        r[i] = 0.0;
      } else {
        r[i] = num / den;
      }
    }
    out.values[s] = lam;
    out.vectors.col(s) = r.normalized();
  }
  return out;
}

// Dispatches on structure: triangular blocks are read off directly, general
// 3x3 and first-row-reducible 4x4 blocks go through the cubic.
template <int n>
RealEigen<n> eig_real(const Mat<n>& K) {
  if (detail::strictly_upper_zero<n>(K)) return eig_lower_triangular<n>(K);
  if constexpr (n == 1) {
    return {K, Mat<1>::Identity()};
  } else if constexpr (n == 2) {
    const double tr = K.trace(), det = K.determinant();
    const double disc = 0.25 * tr * tr - det;
    if (disc < -1e-9 * std::max(1.0, tr * tr)) {
      throw SolverError(ErrorKind::NonRealSpectrum, "2x2 block has complex eigenvalues");
    }
    const double s = std::sqrt(std::max(disc, 0.0));
    Vec<2> v(0.5 * tr - s, 0.5 * tr + s);
    return detail::vectors_for<2>(K, v);
  } else if constexpr (n == 3) {
    return eig_real_3x3(K);
  } else if constexpr (n == 4) {
    return eig_real_4x4_reducible(K);
  } else {
    static_assert(n <= 4, "only blocks up to 4x4 are supported");
  }
}

// Decomposition of M = [[0, I], [K, 0]] with K = V diag(sigma^2) V^-1.
// Modes are stored by K-eigenvalue; the dense ordering is
// (-sigma_n, ..., -sigma_1, sigma_1, ..., sigma_n).
template <int n>
struct BlockWaves {
  using Half = Vec<n>;
  using Full = Vec<2 * n>;

  Mat<n> V;
  Mat<n> Vinv;
  Vec<n> sigma;

  double spectral_radius() const { return sigma.maxCoeff(); }

  // Characteristic coefficients (c+, c-) of x, i.e. R^-1 x split by sign.
  void split(const Full& x, Half& cp, Half& cm) const {
    const Half y = Vinv * x.template head<n>();
    const Half z = (Vinv * x.template tail<n>()).cwiseQuotient(sigma);
    cp = 0.5 * (y + z);
    cm = 0.5 * (y - z);
  }
  // R applied to coefficients (a+, a-).
  Full combine(const Half& ap, const Half& am) const {
    Full out;
    out.template head<n>() = V * (ap + am);
    out.template tail<n>() = V * sigma.cwiseProduct(ap - am);
    return out;
  }

  Full apply_lambda_plus(const Full& x) const {
    Half cp, cm;
    split(x, cp, cm);
    return combine(sigma.cwiseProduct(cp), Half::Zero());
  }
  Full apply_lambda_minus(const Full& x) const {
    Half cp, cm;
    split(x, cp, cm);
    return combine(Half::Zero(), -sigma.cwiseProduct(cm));
  }
  Full apply_i_plus(const Full& x) const {
    Half cp, cm;
    split(x, cp, cm);
    return combine(cp, Half::Zero());
  }
  Full apply_i_minus(const Full& x) const {
    Half cp, cm;
    split(x, cp, cm);
    return combine(Half::Zero(), cm);
  }
  // R sign(Lambda) R^-1 x = (K^{-1/2} x_v, K^{1/2} x_w).
  Full apply_sign(const Full& x) const {
    Full out;
    out.template head<n>() = V * (Vinv * x.template tail<n>()).cwiseQuotient(sigma);
    out.template tail<n>() = V * sigma.cwiseProduct(Vinv * x.template head<n>());
    return out;
  }

  WaveDecomposition<2 * n> dense() const {
    WaveDecomposition<2 * n> d;
    for (int m = 0; m < n; ++m) {
      const int neg = n - 1 - m, pos = n + m;
      d.lambda[neg] = -sigma[m];
      d.lambda[pos] = sigma[m];
      d.R.col(pos).template head<n>() = V.col(m);
      d.R.col(pos).template tail<n>() = sigma[m] * V.col(m);
      d.R.col(neg).template head<n>() = V.col(m);
      d.R.col(neg).template tail<n>() = -sigma[m] * V.col(m);
      d.Rinv.row(pos).template head<n>() = 0.5 * Vinv.row(m);
      d.Rinv.row(pos).template tail<n>() = 0.5 * Vinv.row(m) / sigma[m];
      d.Rinv.row(neg).template head<n>() = 0.5 * Vinv.row(m);
      d.Rinv.row(neg).template tail<n>() = -0.5 * Vinv.row(m) / sigma[m];
    }
    return d;
  }
};

template <int n>
BlockWaves<n> assemble_block_decomposition(const RealEigen<n>& eig) {
  BlockWaves<n> w;
  for (int m = 0; m < n; ++m) {
    if (!(eig.values[m] > 0.0)) {
      throw SolverError(ErrorKind::NonPositiveBlock,
                        "block eigenvalue " + std::to_string(eig.values[m]) + " is not positive");
    }
    w.sigma[m] = std::sqrt(eig.values[m]);
  }
  w.V = eig.vectors;
  bool invertible = false;
  double det = 0.0;
  if constexpr (n <= 4) {
    w.V.computeInverseAndDetWithCheck(w.Vinv, det, invertible, 0.0);
  }
  if (!invertible || !std::isfinite(det) || std::abs(det) < 1e-12) {
    throw SolverError(ErrorKind::DefectiveMatrix, "eigenvector matrix is singular");
  }
  return w;
}

// Lower-triangular K: unit lower-triangular eigenvectors and their inverse
// by substitution, columns ordered by ascending eigenvalue.
template <int n>
BlockWaves<n> triangular_block_waves(const Mat<n>& K) {
  const double scale = std::max(K.cwiseAbs().maxCoeff(), 1e-300);
  const double tie = 1e-12 * scale;
  Mat<n> L = Mat<n>::Identity();
  for (int k = 0; k < n; ++k) {
    for (int i = k + 1; i < n; ++i) {
      double num = 0.0;
      for (int j = k; j < i; ++j) num += K(i, j) * L(j, k);
      const double den = K(k, k) - K(i, i);
      if (std::abs(den) <= tie) {
        if (std::abs(num) > 1e-9 * scale) {
          throw SolverError(ErrorKind::DefectiveMatrix, "repeated diagonal entry with coupling");
        }
      } else {
        L(i, k) = num / den;
      }
    }
  }
  Mat<n> Linv = Mat<n>::Identity();
  for (int c = 0; c < n; ++c)
    for (int i = c + 1; i < n; ++i) {
      double acc = 0.0;
      for (int j = c; j < i; ++j) acc += L(i, j) * Linv(j, c);
      Linv(i, c) = -acc;
    }
  std::array<int, n> order;
  std::iota(order.begin(), order.end(), 0);
  for (int a = 1; a < n; ++a) {
    const int key = order[a];
    int b = a - 1;
    for (; b >= 0 && K(order[b], order[b]) > K(key, key); --b) order[b + 1] = order[b];
    order[b + 1] = key;
  }
  BlockWaves<n> w;
  for (int m = 0; m < n; ++m) {
    const double lam = K(order[m], order[m]);
    if (!(lam > 0.0)) {
      throw SolverError(ErrorKind::NonPositiveBlock, "block eigenvalue " + std::to_string(lam) + " is not positive");
    }
    w.sigma[m] = std::sqrt(lam);
    w.V.col(m) = L.col(order[m]);
    w.Vinv.row(m) = Linv.row(order[m]);
  }
  return w;
}

template <int n>
BlockWaves<n> block_waves(const Mat<n>& K) {
  if (detail::strictly_upper_zero<n>(K)) return triangular_block_waves<n>(K);
  return assemble_block_decomposition<n>(eig_real<n>(K));
}

}  // namespace relaxflux
