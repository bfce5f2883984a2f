#pragma once

// Complex scalar/vector/matrix arithmetic on C^n.
//
// Inner product convention: <x, y> = sum_j x_j * conj(y_j), i.e. linear in
// the FIRST argument and conjugate-linear in the second. Every formula in the
// library (notably A_j = <df/dz_j, f>) depends on this choice.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace modgrad {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

// Dense row-major complex matrix. Jacobians are m x n with column j holding
// df/dz_j.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);

  static CMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const Complex> data() const noexcept { return data_; }

  CVector column(std::size_t j) const;
  CMatrix adjoint() const;

  CVector operator*(std::span<const Complex> v) const;
  CMatrix operator*(const CMatrix& rhs) const;
  CMatrix& operator*=(Complex s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator*(Complex s, CMatrix m);

Complex herm_inner(std::span<const Complex> x, std::span<const Complex> y);
double norm(std::span<const Complex> x);
double norm_squared(std::span<const Complex> x);

CVector operator+(std::span<const Complex> a, std::span<const Complex> b);
CVector operator-(std::span<const Complex> a, std::span<const Complex> b);
CVector operator*(Complex s, std::span<const Complex> v);
inline CVector operator+(const CVector& a, const CVector& b) {
  return std::span<const Complex>(a) + std::span<const Complex>(b);
}
inline CVector operator-(const CVector& a, const CVector& b) {
  return std::span<const Complex>(a) - std::span<const Complex>(b);
}
inline CVector operator*(Complex s, const CVector& v) {
  return s * std::span<const Complex>(v);
}

CVector conj(std::span<const Complex> v);

// Throws InputError unless every component is finite.
void require_finite(std::span<const Complex> v, const char* what);

struct SpectralOptions {
  double tol = 1e-12;
  int max_iter = 10'000;
  std::uint64_t restart_seed = 0x5eed;
};

struct SpectralResult {
  double sigma = 0.0;
  CVector direction;  // unit right-singular vector attaining sigma
  int iterations = 0;
  bool restarted = false;
};

// Largest singular value of m by power iteration on M^H M.
SpectralResult spectral_norm(const CMatrix& m, const SpectralOptions& opts = {});

// `count` points uniform on the unit sphere of C^n (= S^{2n-1}), deterministic
// in `seed`.
std::vector<CVector> sample_unit_sphere(int n, int count, std::uint64_t seed);

}  // namespace modgrad
