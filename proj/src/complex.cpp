#include "modgrad/complex.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "modgrad/errors.hpp"

namespace modgrad {

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw InputError("CMatrix: " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                     " needs " + std::to_string(rows_ * cols_) + " entries, got " +
                     std::to_string(data_.size()));
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CVector CMatrix::column(std::size_t j) const {
  CVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

CMatrix CMatrix::adjoint() const {
  CMatrix a(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) a(j, i) = std::conj((*this)(i, j));
  return a;
}

CVector CMatrix::operator*(std::span<const Complex> v) const {
  if (v.size() != cols_) {
    throw InputError("matrix-vector product: expected length " + std::to_string(cols_) +
                     ", got " + std::to_string(v.size()));
  }
  CVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
  if (rhs.rows_ != cols_) {
    throw InputError("matrix product: inner dimensions " + std::to_string(cols_) + " and " +
                     std::to_string(rhs.rows_) + " differ");
  }
  CMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Complex a = (*this)(i, k);
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

CMatrix& CMatrix::operator*=(Complex s) {
  for (auto& x : data_) x *= s;
  return *this;
}

CMatrix operator*(Complex s, CMatrix m) {
  m *= s;
  return m;
}

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw InputError(std::string(op) + ": dimension mismatch (" + std::to_string(a) +
                     " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

Complex herm_inner(std::span<const Complex> x, std::span<const Complex> y) {
  require_same_dim(x.size(), y.size(), "herm_inner");
  Complex acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) acc += x[j] * std::conj(y[j]);
  return acc;
}

double norm_squared(std::span<const Complex> x) {
  double acc = 0.0;
  for (const auto& v : x) acc += std::norm(v);
  return acc;
}

double norm(std::span<const Complex> x) {
  // Scaled accumulation; the vectors are short so a two-pass hypot is cheap.
  double scale = 0.0;
  for (const auto& v : x) scale = std::max({scale, std::abs(v.real()), std::abs(v.imag())});
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double acc = 0.0;
  for (const auto& v : x) acc += std::norm(v / scale);
  return scale * std::sqrt(acc);
}

CVector operator+(std::span<const Complex> a, std::span<const Complex> b) {
  require_same_dim(a.size(), b.size(), "vector add");
  CVector out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] + b[j];
  return out;
}

CVector operator-(std::span<const Complex> a, std::span<const Complex> b) {
  require_same_dim(a.size(), b.size(), "vector subtract");
  CVector out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] - b[j];
  return out;
}

CVector operator*(Complex s, std::span<const Complex> v) {
  CVector out(v.begin(), v.end());
  for (auto& x : out) x *= s;
  return out;
}

CVector conj(std::span<const Complex> v) {
  CVector out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = std::conj(v[j]);
  return out;
}

void require_finite(std::span<const Complex> v, const char* what) {
  for (const auto& x : v) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
      throw InputError(std::string(what) + ": non-finite component");
    }
  }
}

namespace {

double frobenius(const CMatrix& m) { return norm(m.data()); }

// Power iteration on the Gram matrix. The iterated operator is squared after
// every step, so step k applies (M^H M)^(2^k) to the start vector; this keeps
// the iteration count small even when the top two singular values are close.
SpectralResult power_iterate(const CMatrix& m, const CMatrix& gram, CVector v,
                             const SpectralOptions& opts) {
  SpectralResult res;
  const double gram_scale = frobenius(gram);
  CMatrix op = gram;
  op *= 1.0 / gram_scale;

  double prev = -1.0;
  double sigma = 0.0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    CVector w = op * v;
    const double nw = norm(w);
    if (!(nw > 1e-300)) {
      // v sits in the numerical kernel of the current operator.
      res.sigma = sigma;
      res.direction = std::move(v);
      res.iterations = it;
      return res;
    }
    for (auto& x : w) x /= nw;
    v = std::move(w);
    sigma = norm(m * v);
    res.iterations = it;
    if (prev >= 0.0 && std::abs(sigma - prev) <= opts.tol * std::max(1.0, sigma)) {
      res.sigma = sigma;
      res.direction = std::move(v);
      return res;
    }
    prev = sigma;
    CMatrix sq = op * op;
    const double s = frobenius(sq);
    if (s > 0.0) {
      sq *= 1.0 / s;
      op = std::move(sq);
    }
  }
  throw NumericalError("spectral_norm: no convergence after " +
                           std::to_string(opts.max_iter) + " iterations",
                       sigma);
}

}  // namespace

SpectralResult spectral_norm(const CMatrix& m, const SpectralOptions& opts) {
  if (m.empty()) throw InputError("spectral_norm: empty matrix");
  if (!(opts.tol > 0.0)) throw InputError("spectral_norm: tol must be positive");
  if (opts.max_iter < 1) throw InputError("spectral_norm: max_iter must be >= 1");
  require_finite(m.data(), "spectral_norm");

  const std::size_t n = m.cols();
  if (frobenius(m) == 0.0) {
    SpectralResult zero;
    zero.direction.assign(n, Complex(1.0 / std::sqrt(double(n)), 0.0));
    return zero;
  }

  const CMatrix gram = m.adjoint() * m;
  CVector ones(n, Complex(1.0 / std::sqrt(double(n)), 0.0));
  SpectralResult best = power_iterate(m, gram, std::move(ones), opts);

  // The all-ones start can be orthogonal to the top singular space (then the
  // iteration settles on a smaller singular value, or collapses to zero), so a
  // seeded random start always gets a second run.
  if (n > 1) {
    CVector start = sample_unit_sphere(int(n), 1, opts.restart_seed).front();
    SpectralResult other = power_iterate(m, gram, std::move(start), opts);
    other.restarted = true;
    other.iterations += best.iterations;
    if (other.sigma > best.sigma * (1.0 + 1e-14)) {
      best = std::move(other);
    } else {
      best.iterations = other.iterations;
    }
  }
  return best;
}

std::vector<CVector> sample_unit_sphere(int n, int count, std::uint64_t seed) {
  if (n < 1) throw InputError("sample_unit_sphere: n must be >= 1");
  if (count < 1) throw InputError("sample_unit_sphere: count must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<CVector> out;
  out.reserve(count);
  while (int(out.size()) < count) {
    CVector v(n);
    for (auto& x : v) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      x = Complex(re, im);
    }
    const double r = norm(v);
    if (r < 1e-150) continue;
    for (auto& x : v) x /= r;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace modgrad
