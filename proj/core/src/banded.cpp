#include "hypomix/banded.hpp"

#include <sstream>

#include "hypomix/errors.hpp"

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

namespace hypomix {

BandedLU::BandedLU(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1) {
  if (n < 1 || kl < 0 || ku < 0) throw SolveFailure("BandedLU: bad dimensions");
  ab_.assign(static_cast<std::size_t>(ldab_) * n_, {0.0, 0.0});
  ipiv_.assign(n_, 0);
}

void BandedLU::set(int i, int j, std::complex<double> v) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || j - i > ku_ || i - j > kl_) {
    std::ostringstream os;
    os << "BandedLU::set out of band: (" << i << ", " << j << ") with kl="
       << kl_ << " ku=" << ku_;
    throw SolveFailure(os.str());
  }
  // zgbtrf band storage: A(i,j) -> ab[kl + ku + i - j, j] (0-based, col-major).
  ab_[static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j)] = v;
}

void BandedLU::add(int i, int j, std::complex<double> v) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || j - i > ku_ || i - j > kl_)
    throw SolveFailure("BandedLU::add out of band");
  ab_[static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j)] += v;
}

void BandedLU::factor() {
  const lapack_int info = LAPACKE_zgbtrf(
      LAPACK_COL_MAJOR, n_, n_, kl_, ku_,
      reinterpret_cast<lapack_complex_double*>(ab_.data()), ldab_,
      ipiv_.data());
  if (info != 0) {
    std::ostringstream os;
    os << "BandedLU::factor: zgbtrf failed with info = " << info;
    throw SolveFailure(os.str());
  }
  factored_ = true;
}

void BandedLU::solve(std::vector<std::complex<double>>& b) const {
  if (!factored_) throw SolveFailure("BandedLU::solve before factor");
  if (static_cast<int>(b.size()) != n_)
    throw SolveFailure("BandedLU::solve: right-hand side length mismatch");
  const lapack_int info = LAPACKE_zgbtrs(
      LAPACK_COL_MAJOR, 'N', n_, kl_, ku_, 1,
      reinterpret_cast<const lapack_complex_double*>(ab_.data()), ldab_,
      ipiv_.data(), reinterpret_cast<lapack_complex_double*>(b.data()), n_);
  if (info != 0) {
    std::ostringstream os;
    os << "BandedLU::solve: zgbtrs failed with info = " << info;
    throw SolveFailure(os.str());
  }
}

SpdTridiag::SpdTridiag(std::vector<double> d, std::vector<double> e)
    : d_(std::move(d)), l_(std::move(e)) {
  const std::size_t n = d_.size();
  if (n < 1 || l_.size() + 1 != n)
    throw SolveFailure("SpdTridiag: inconsistent band sizes");
  // In-place L D L^T: pivot_i = d_i - e_{i-1}^2 / pivot_{i-1}.
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) d_[i] -= l_[i - 1] * l_[i - 1] * d_[i - 1];
    if (!(d_[i] > 0.0))
      throw SolveFailure("SpdTridiag: matrix is not positive definite");
    if (i + 1 < n) l_[i] /= d_[i];
  }
}

void SpdTridiag::solve(std::vector<std::complex<double>>& b) const {
  const std::size_t n = d_.size();
  if (b.size() != n)
    throw SolveFailure("SpdTridiag::solve: right-hand side length mismatch");
  for (std::size_t i = 1; i < n; ++i) b[i] -= l_[i - 1] * b[i - 1];
  for (std::size_t i = 0; i < n; ++i) b[i] /= d_[i];
  for (std::size_t i = n - 1; i > 0; --i) b[i - 1] -= l_[i - 1] * b[i];
}

}  // namespace hypomix
