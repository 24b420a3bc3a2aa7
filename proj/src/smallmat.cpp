#include "omn/smallmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "omn/errors.hpp"
#include "omn/kernels.hpp"

namespace omn {
namespace {

void check_dims(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0 || rows > Mat::kMaxDim || cols > Mat::kMaxDim) {
    throw std::invalid_argument("matrix dimensions out of range: " + std::to_string(rows) + "x" +
                                std::to_string(cols));
  }
}

void require_square(const Mat& a, const char* op) {
  if (!a.square()) throw std::invalid_argument(std::string(op) + " requires a square matrix");
}

}  // namespace

Mat::Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  check_dims(rows, cols);
  data_.assign(rows * cols, 0.0);
}

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  check_dims(rows, cols);
  if (data_.size() != rows * cols) throw std::invalid_argument("matrix data size mismatch");
  if (!std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); })) {
    throw std::invalid_argument("matrix entries must be finite");
  }
}

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  check_dims(rows_, cols_);
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (double v : r) {
      if (!std::isfinite(v)) throw std::invalid_argument("matrix entries must be finite");
      data_.push_back(v);
    }
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::diagonal(std::span<const double> entries) {
  Mat m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block outside matrix");
  Mat b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

Mat& Mat::operator+=(const Mat& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw std::invalid_argument("shape mismatch in +");
  kernels::axpy(1.0, o.data_, data_);
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw std::invalid_argument("shape mismatch in -");
  kernels::axpy(-1.0, o.data_, data_);
  return *this;
}

Mat& Mat::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Mat matmul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("shape mismatch in matmul");
  std::vector<double> out(a.rows() * b.cols());
  kernels::active().matmul(a.data().data(), b.data().data(), out.data(), a.rows(), a.cols(),
                           b.cols());
  return Mat(a.rows(), b.cols(), std::move(out));
}

namespace {

// Similarity scaling by powers of two; eigenvalues unchanged, norms equalized.
void balance(std::vector<double>& a, int n) {
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 0; i < n; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a[j * n + i]);
        r += std::abs(a[i * n + j]);
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        g = 1.0 / f;
        for (int j = 0; j < n; ++j) a[i * n + j] *= g;
        for (int j = 0; j < n; ++j) a[j * n + i] *= f;
      }
    }
  }
}

// Upper Hessenberg form by stabilized elementary similarity transforms.
void hessenberg(std::vector<double>& a, int n) {
  auto at = [&](int i, int j) -> double& { return a[i * n + j]; };
  for (int m = 1; m < n - 1; ++m) {
    double x = 0.0;
    int piv = m;
    for (int j = m; j < n; ++j) {
      if (std::abs(at(j, m - 1)) > std::abs(x)) {
        x = at(j, m - 1);
        piv = j;
      }
    }
    if (piv != m) {
      for (int j = m - 1; j < n; ++j) std::swap(at(piv, j), at(m, j));
      for (int j = 0; j < n; ++j) std::swap(at(j, piv), at(j, m));
    }
    if (x == 0.0) continue;
    for (int i = m + 1; i < n; ++i) {
      double y = at(i, m - 1);
      if (y == 0.0) continue;
      y /= x;
      at(i, m - 1) = y;
      for (int j = m; j < n; ++j) at(i, j) -= y * at(m, j);
      for (int j = 0; j < n; ++j) at(j, m) += y * at(j, i);
    }
  }
  for (int i = 2; i < n; ++i)
    for (int j = 0; j < i - 1; ++j) at(i, j) = 0.0;
}

double sign_of(double magnitude, double s) { return s >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude); }

}  // namespace

std::vector<std::complex<double>> eigenvalues(const Mat& input) {
  require_square(input, "eigenvalues");
  const int n = static_cast<int>(input.rows());
  std::vector<double> a(input.data().begin(), input.data().end());
  balance(a, n);
  hessenberg(a, n);
  auto at = [&](int i, int j) -> double& { return a[i * n + j]; };

  std::vector<std::complex<double>> w(n);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const int max_iterations = 100 * n;
  int total_iterations = 0;

  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(at(i, j));

  int nn = n - 1;
  double t = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l > 0; --l) {
        double s = std::abs(at(l - 1, l - 1)) + std::abs(at(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(at(l, l - 1)) <= eps * s) {
          at(l, l - 1) = 0.0;
          break;
        }
      }
      double x = at(nn, nn);
      if (l == nn) {
        w[nn--] = x + t;
      } else {
        double y = at(nn - 1, nn - 1);
        double wprod = at(nn, nn - 1) * at(nn - 1, nn);
        if (l == nn - 1) {
          const double p = 0.5 * (y - x);
          const double q = p * p + wprod;
          double z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + sign_of(z, p);
            w[nn - 1] = w[nn] = x + z;
            if (z != 0.0) w[nn] = x - wprod / z;
          } else {
            w[nn] = {x + p, -z};
            w[nn - 1] = std::conj(w[nn]);
          }
          nn -= 2;
        } else {
          if (++total_iterations > max_iterations) {
            throw PhysicsError(ErrorCode::eigen_failure, "QR iteration did not converge");
          }
          if (its > 0 && its % 10 == 0) {
            // exceptional shift
            t += x;
            for (int i = 0; i <= nn; ++i) at(i, i) -= x;
            const double s = std::abs(at(nn, nn - 1)) + std::abs(at(nn - 1, nn - 2));
            y = x = 0.75 * s;
            wprod = -0.4375 * s * s;
          }
          ++its;
          int m = nn - 2;
          double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
          for (; m >= l; --m) {
            z = at(m, m);
            r = x - z;
            double s = y - z;
            p = (r * s - wprod) / at(m + 1, m) + at(m, m + 1);
            q = at(m + 1, m + 1) - z - r - s;
            r = at(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::abs(at(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double v = std::abs(p) * (std::abs(at(m - 1, m - 1)) + std::abs(z) +
                                            std::abs(at(m + 1, m + 1)));
            if (u <= eps * v) break;
          }
          for (int i = m; i < nn - 1; ++i) {
            at(i + 2, i) = 0.0;
            if (i != m) at(i + 2, i - 1) = 0.0;
          }
          for (int k = m; k < nn; ++k) {
            if (k != m) {
              p = at(k, k - 1);
              q = at(k + 1, k - 1);
              r = 0.0;
              if (k + 1 != nn) r = at(k + 2, k - 1);
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) at(k, k - 1) = -at(k, k - 1);
            } else {
              at(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
              p = at(k, j) + q * at(k + 1, j);
              if (k + 1 != nn) {
                p += r * at(k + 2, j);
                at(k + 2, j) -= p * z;
              }
              at(k + 1, j) -= p * y;
              at(k, j) -= p * x;
            }
            const int mmin = nn < k + 3 ? nn : k + 3;
            for (int i = l; i <= mmin; ++i) {
              p = x * at(i, k) + y * at(i, k + 1);
              if (k + 1 != nn) {
                p += z * at(i, k + 2);
                at(i, k + 2) -= p * r;
              }
              at(i, k + 1) -= p * q;
              at(i, k) -= p;
            }
          }
        }
      }
    } while (l < nn - 1);
  }
  return w;
}

std::vector<double> solve(const Mat& a, std::span<const double> b) {
  require_square(a, "solve");
  const std::size_t n = a.rows();
  if (b.size() != n) throw std::invalid_argument("solve: right-hand side size mismatch");

  const double tiny = 1e-14 * inf_norm(a);
  // Augmented [A | b] so a single axpy per row updates both.
  const std::size_t w = n + 1;
  std::vector<double> m(n * w);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(a.row(i).begin(), a.row(i).end(), m.begin() + i * w);
    m[i * w + n] = b[i];
  }
  const auto& k = kernels::active();

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::abs(m[i * w + col]) > std::abs(m[piv * w + col])) piv = i;
    const double pivot = m[piv * w + col];
    if (!(std::abs(pivot) >= tiny) || pivot == 0.0) {
      throw PhysicsError(ErrorCode::singular_solve,
                         "singular linear system at column " + std::to_string(col));
    }
    if (piv != col) {
      std::swap_ranges(m.begin() + piv * w, m.begin() + (piv + 1) * w, m.begin() + col * w);
    }
    const double* prow = m.data() + col * w;
    for (std::size_t i = col + 1; i < n; ++i) {
      double* row = m.data() + i * w;
      const double f = row[col] / pivot;
      if (f == 0.0) continue;
      row[col] = 0.0;
      k.axpy(-f, prow + col + 1, row + col + 1, w - col - 1);
    }
  }

  std::vector<double> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    const double* row = m.data() + ii * w;
    const double tail = k.dot(row + ii + 1, x.data() + ii + 1, n - ii - 1);
    x[ii] = (row[n] - tail) / row[ii];
  }
  return x;
}

double det(const Mat& a) {
  require_square(a, "det");
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  std::vector<double> m(a.data().begin(), a.data().end());
  double d = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::abs(m[i * n + col]) > std::abs(m[piv * n + col])) piv = i;
    const double pivot = m[piv * n + col];
    if (pivot == 0.0) return 0.0;
    if (piv != col) {
      std::swap_ranges(m.begin() + piv * n, m.begin() + (piv + 1) * n, m.begin() + col * n);
      d = -d;
    }
    d *= pivot;
    for (std::size_t i = col + 1; i < n; ++i) {
      const double f = m[i * n + col] / pivot;
      for (std::size_t j = col + 1; j < n; ++j) m[i * n + j] -= f * m[col * n + j];
    }
  }
  return d;
}

Mat kron(const Mat& a, const Mat& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > Mat::kMaxDim || cols > Mat::kMaxDim) throw std::invalid_argument("kron result too large");
  Mat out(rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          out(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
  return out;
}

double frob_norm(const Mat& a) { return std::sqrt(kernels::dot(a.data(), a.data())); }

double inf_norm(const Mat& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (double v : a.row(i)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

double spectral_norm(const Mat& a) {
  double best = 0.0;
  for (const auto& ev : eigenvalues(matmul(a.transpose(), a))) best = std::max(best, ev.real());
  return std::sqrt(best);
}

}  // namespace omn
