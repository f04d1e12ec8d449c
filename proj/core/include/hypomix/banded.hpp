/// @file banded.hpp
/// @brief Direct solvers for the banded linear systems of the scheme: a general
///        complex banded LU (LAPACK zgbtrf/zgbtrs) for the Crank-Nicolson
///        matrices, and a symmetric positive-definite real tridiagonal
///        factorization for the elliptic weight solve.
#pragma once

#include <complex>
#include <vector>

namespace hypomix {

/// General complex banded matrix with kl sub- and ku super-diagonals,
/// factored once with partial pivoting and solved repeatedly.
class BandedLU {
 public:
  BandedLU(int n, int kl, int ku);

  /// Set A(i, j); only |i - j| <= max(kl, ku) entries are addressable.
  void set(int i, int j, std::complex<double> v);
  void add(int i, int j, std::complex<double> v);

  void factor();
  /// Solve A x = b in place. Requires factor() first.
  void solve(std::vector<std::complex<double>>& b) const;

  int size() const { return n_; }

 private:
  int n_, kl_, ku_, ldab_;
  bool factored_ = false;
  std::vector<std::complex<double>> ab_;  // LAPACK band storage, col-major
  std::vector<int> ipiv_;
};

/// L D L^T factorization of a real symmetric positive-definite tridiagonal
/// matrix (diagonal d, off-diagonal e), solving complex right-hand sides
/// without pivoting. Used for (k^2 - d^2/dy^2) with Dirichlet ends, which is
/// strictly positive definite.
class SpdTridiag {
 public:
  /// d has n entries, e has n-1 entries.
  SpdTridiag(std::vector<double> d, std::vector<double> e);

  void solve(std::vector<std::complex<double>>& b) const;

  int size() const { return static_cast<int>(d_.size()); }

 private:
  std::vector<double> d_;  // pivots after factorization
  std::vector<double> l_;  // subdiagonal multipliers
};

}  // namespace hypomix
