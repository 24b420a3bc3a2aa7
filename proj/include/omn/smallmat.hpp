#pragma once
// Minimal dense real matrices sized for 6-mode covariance work: up to 36x36.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace omn {

class Mat {
 public:
  static constexpr std::size_t kMaxDim = 36;

  /// Zero-filled rows x cols matrix; both dimensions must lie in [1, kMaxDim].
  Mat(std::size_t rows, std::size_t cols);
  /// Row-major data; throws std::invalid_argument on size mismatch or non-finite entries.
  Mat(std::size_t rows, std::size_t cols, std::vector<double> data);
  Mat(std::initializer_list<std::initializer_list<double>> rows);

  static Mat identity(std::size_t n);
  static Mat diagonal(std::span<const double> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> data() const noexcept { return data_; }

  Mat transpose() const;
  /// Copy of the nr x nc block starting at (r0, c0).
  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  Mat& operator*=(double s);

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(Mat a, double s) { return a *= s; }
  friend Mat operator*(double s, Mat a) { return a *= s; }
  friend bool operator==(const Mat& a, const Mat& b) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

Mat matmul(const Mat& a, const Mat& b);

/// All eigenvalues of a real square matrix (balancing, Hessenberg reduction,
/// Francis double-shift QR). Complex values come in conjugate pairs.
/// Throws PhysicsError(eigen_failure) after 100*n QR iterations.
std::vector<std::complex<double>> eigenvalues(const Mat& a);

/// Solves a x = b by Gaussian elimination with partial pivoting.
/// Throws PhysicsError(singular_solve) when a pivot falls below 1e-14 * ||a||_inf.
std::vector<double> solve(const Mat& a, std::span<const double> b);

double det(const Mat& a);
Mat kron(const Mat& a, const Mat& b);
double frob_norm(const Mat& a);
double inf_norm(const Mat& a);
/// Largest singular value, from the eigenvalues of a^T a.
double spectral_norm(const Mat& a);

}  // namespace omn
