#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "omegafract/graph.hpp"

namespace omegafract {

/// Dense square matrix, row-major.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}
  SquareMatrix(std::initializer_list<std::initializer_list<T>> rows) : n_(rows.size()) {
    for (const auto& row : rows) {
      if (row.size() != n_) throw std::invalid_argument("matrix must be square");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t size() const noexcept { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  bool operator==(const SquareMatrix&) const = default;

  template <class U>
  SquareMatrix<U> cast() const {
    SquareMatrix<U> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out(i, j) = static_cast<U>((*this)(i, j));
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

/// Transition counts c_ij.
using CountMatrix = SquareMatrix<std::uint64_t>;
/// Real nonnegative matrix, e.g. entries (c_ij / k)^s.
using WeightedMatrix = SquareMatrix<double>;

namespace detail {

inline Adjacency support_graph(const WeightedMatrix& m) {
  Adjacency adj(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m(i, j) > 0) adj[i].push_back(j);
  return adj;
}

/// True iff x > rho(b): x*I - b is then a nonsingular M-matrix, which holds
/// iff every pivot of Gaussian elimination without pivoting is positive.
inline bool exceeds_radius(const WeightedMatrix& b, double x) {
  const std::size_t n = b.size();
  std::vector<double> w(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w[i * n + j] = (i == j ? x : 0.0) - b(i, j);
  for (std::size_t p = 0; p < n; ++p) {
    const double pivot = w[p * n + p];
    if (!(pivot > 0)) return false;
    for (std::size_t i = p + 1; i < n; ++i) {
      const double f = w[i * n + p] / pivot;
      if (f == 0) continue;
      for (std::size_t j = p; j < n; ++j) w[i * n + j] -= f * w[p * n + j];
    }
  }
  return true;
}

/// Perron root of an irreducible block with at least one edge.
inline double irreducible_radius(const WeightedMatrix& b, double tol) {
  const std::size_t n = b.size();
  if (n == 1) return b(0, 0);
  // Power iteration on b + I: primitive, same Perron vector, root shifted by 1.
  std::vector<double> x(n, 1.0), y(n);
  double lo = 0, hi = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 20000; ++iter) {
    double norm = 0;
    lo = std::numeric_limits<double>::infinity();
    hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = x[i];
      for (std::size_t j = 0; j < n; ++j) s += b(i, j) * x[j];
      y[i] = s;
      const double ratio = s / x[i];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      norm = std::max(norm, s);
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
    // Collatz-Wielandt: lo - 1 <= rho <= hi - 1.
    if (hi - lo <= tol * std::max(1.0, hi - 1)) return std::max(0.0, (lo + hi) / 2 - 1);
  }
  // Slow convergence: bisect inside the last certified bracket.
  double a = std::max(0.0, lo - 1), c = hi - 1;
  while (!exceeds_radius(b, c)) c = 2 * c + 1;
  for (int iter = 0; iter < 200 && c - a > tol * std::max(1.0, c); ++iter) {
    const double mid = (a + c) / 2;
    if (exceeds_radius(b, mid))
      c = mid;
    else
      a = mid;
  }
  return (a + c) / 2;
}

inline WeightedMatrix principal_block(const WeightedMatrix& m, const std::vector<std::size_t>& idx) {
  WeightedMatrix b(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) b(i, j) = m(idx[i], idx[j]);
  return b;
}

}  // namespace detail

/// Perron root of a nonnegative square matrix: the maximum over the
/// irreducible diagonal blocks of the Frobenius normal form. Matrices
/// without cycles in their support are nilpotent and give exactly 0.
inline double spectral_radius(const WeightedMatrix& m, double tol = 1e-13) {
  const Adjacency adj = detail::support_graph(m);
  const Components comps = strongly_connected(adj);
  std::vector<std::vector<std::size_t>> blocks(comps.count);
  for (std::size_t v = 0; v < m.size(); ++v) blocks[comps.component_of[v]].push_back(v);
  double rho = 0;
  for (const auto& block : blocks) {
    bool cyclic = false;
    for (std::size_t v : block)
      for (std::size_t w : adj[v])
        if (comps.component_of[w] == comps.component_of[v]) cyclic = true;
    if (cyclic) rho = std::max(rho, detail::irreducible_radius(detail::principal_block(m, block), tol));
  }
  return rho;
}

inline double spectral_radius(const CountMatrix& m, double tol = 1e-13) {
  return spectral_radius(m.cast<double>(), tol);
}

/// Nonnegative right eigenvector for the Perron root of an irreducible
/// matrix, scaled so that its largest entry is 1.
inline std::vector<double> perron_vector(const WeightedMatrix& m, double rho) {
  const auto n = static_cast<Eigen::Index>(m.size());
  const double shift = rho + 1e-9 * std::max(1.0, rho);
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = (i == j ? shift : 0.0) - m(i, j);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
  for (int iter = 0; iter < 100; ++iter) {
    Eigen::VectorXd y = lu.solve(x);
    y /= y.cwiseAbs().maxCoeff();
    const double change = (y - x).cwiseAbs().maxCoeff();
    x = std::move(y);
    if (change < 1e-15) break;
  }
  std::vector<double> out(m.size());
  for (Eigen::Index i = 0; i < n; ++i) out[i] = std::max(0.0, std::abs(x(i)));
  return out;
}

}  // namespace omegafract
