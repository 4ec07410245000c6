#pragma once

// Small dense matrices over double or Dual scalars. Dimensions here are at
// most 2n+1 = 7, so storage is a flat row-major vector and nothing is blocked.

#include <acsphere/core/dual.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace acsphere {

template <typename T>
using Vec = std::vector<T>;

template <typename T = double>
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0.0)) {}
    Mat(std::initializer_list<std::initializer_list<double>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("Mat: ragged initializer");
            for (double x : row) data_.push_back(T(x));
        }
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1.0);
        return m;
    }

    /// Columns given as vectors.
    static Mat from_columns(const std::vector<Vec<T>>& cols) {
        if (cols.empty()) return {};
        Mat m(cols.front().size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec<T> col(std::size_t j) const {
        Vec<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    void set_col(std::size_t j, const Vec<T>& c) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat& operator+=(const Mat& o) {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    template <typename S>
    Mat& operator*=(const S& s) {
        for (auto& x : data_) x = x * s;
        return *this;
    }

    const std::vector<T>& data() const { return data_; }

private:
    void check_same(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat: shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <typename T> Mat<T> operator+(Mat<T> a, const Mat<T>& b) { return a += b; }
template <typename T> Mat<T> operator-(Mat<T> a, const Mat<T>& b) { return a -= b; }
template <typename T> Mat<T> operator-(Mat<T> a) { return a *= -1.0; }
template <typename T> Mat<T> operator*(Mat<T> a, double s) { return a *= s; }
template <typename T> Mat<T> operator*(double s, Mat<T> a) { return a *= s; }
template <typename T> Mat<T> scaled(Mat<T> a, const T& s) { return a *= s; }

template <typename T>
Mat<T> operator*(const Mat<T>& a, const Mat<T>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("Mat: inner dimension mismatch");
    Mat<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T& aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

template <typename T>
Vec<T> operator*(const Mat<T>& a, const Vec<T>& v) {
    if (a.cols() != v.size()) throw std::invalid_argument("Mat: vector length mismatch");
    Vec<T> r(a.rows(), T(0.0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) r[i] += a(i, k) * v[k];
    return r;
}

/// Convert a double matrix to any scalar type (constants, zero derivative).
template <typename T>
Mat<T> lift(const Mat<double>& m) {
    Mat<T> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = T(m(i, j));
    return r;
}

template <typename T>
Vec<T> lift(const Vec<double>& v) {
    Vec<T> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = T(v[i]);
    return r;
}

template <typename T>
Mat<double> values(const Mat<T>& m) {
    Mat<double> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = value_of(m(i, j));
    return r;
}

template <typename T>
Vec<double> values(const Vec<T>& v) {
    Vec<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = value_of(v[i]);
    return r;
}

// ---------------------------------------------------------------------------
// vector helpers

template <typename T>
T dot(const Vec<T>& a, const Vec<T>& b) {
    T s(0.0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Bilinear form a^T G b.
template <typename T>
T inner(const Mat<T>& g, const Vec<T>& a, const Vec<T>& b) {
    return dot(a, g * b);
}

template <typename T> Vec<T> operator+(Vec<T> a, const Vec<T>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}
template <typename T> Vec<T> operator-(Vec<T> a, const Vec<T>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}
template <typename T> Vec<T> operator*(double s, Vec<T> a) {
    for (auto& x : a) x = s * x;
    return a;
}
template <typename T> Vec<T> scaled(Vec<T> a, const T& s) {
    for (auto& x : a) x = x * s;
    return a;
}

inline double norm(const Vec<double>& v) { return std::sqrt(dot(v, v)); }

inline double max_abs(const Mat<double>& m) {
    double r = 0.0;
    for (double x : m.data()) r = std::max(r, std::abs(x));
    return r;
}
inline double max_abs(const Vec<double>& v) {
    double r = 0.0;
    for (double x : v) r = std::max(r, std::abs(x));
    return r;
}
inline double frobenius(const Mat<double>& m) {
    double s = 0.0;
    for (double x : m.data()) s += x * x;
    return std::sqrt(s);
}

template <typename T>
T trace(const Mat<T>& m) {
    T s(0.0);
    for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) s += m(i, i);
    return s;
}

// ---------------------------------------------------------------------------
// solves

/// Inverse by Gauss-Jordan with partial pivoting. Pivot selection reads only
/// the value part, so the branch is identical for every derivative level.
template <typename T>
Mat<T> inverse(const Mat<T>& m) {
    if (!m.is_square()) throw std::invalid_argument("inverse: matrix not square");
    const std::size_t n = m.rows();
    Mat<T> a = m;
    Mat<T> inv = Mat<T>::identity(n);
    double scale = 0.0;
    for (const auto& x : m.data()) scale = std::max(scale, std::abs(value_of(x)));
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(value_of(a(r, c))) > std::abs(value_of(a(piv, c)))) piv = r;
        if (std::abs(value_of(a(piv, c))) <= 1e-14 * std::max(scale, 1e-300))
            throw std::domain_error("inverse: matrix is singular");
        if (piv != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(c, j), a(piv, j));
                std::swap(inv(c, j), inv(piv, j));
            }
        T d = T(1.0) / a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) = a(c, j) * d;
            inv(c, j) = inv(c, j) * d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            T f = a(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

/// Lower Cholesky factor of a symmetric positive-definite matrix.
template <typename T>
Mat<T> cholesky(const Mat<T>& m) {
    if (!m.is_square()) throw std::invalid_argument("cholesky: matrix not square");
    const std::size_t n = m.rows();
    Mat<T> l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        T s = m(j, j);
        for (std::size_t k = 0; k < j; ++k) s -= l(j, k) * l(j, k);
        if (!(value_of(s) > 0.0)) throw std::domain_error("cholesky: matrix not positive definite");
        using std::sqrt;
        l(j, j) = sqrt(s);
        for (std::size_t i = j + 1; i < n; ++i) {
            T t = m(i, j);
            for (std::size_t k = 0; k < j; ++k) t -= l(i, k) * l(j, k);
            l(i, j) = t / l(j, j);
        }
    }
    return l;
}

// ---------------------------------------------------------------------------
// symmetric eigenproblems (double only)

struct SymmetricEigen {
    Vec<double> values;   // ascending
    Mat<double> vectors;  // columns, orthonormal
};

/// Cyclic Jacobi rotations. Converges quadratically; at n <= 8 a handful of
/// sweeps reach machine precision.
inline SymmetricEigen jacobi_eigh(const Mat<double>& m, double sym_tol = 1e-12) {
    if (!m.is_square()) throw std::invalid_argument("jacobi_eigh: matrix not square");
    const std::size_t n = m.rows();
    const double scale = std::max(max_abs(m), 1e-300);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(m(i, j) - m(j, i)) > sym_tol * scale)
                throw std::invalid_argument("jacobi_eigh: matrix not symmetric");

    Mat<double> a = m;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (m(i, j) + m(j, i));
    Mat<double> v = Mat<double>::identity(n);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (std::sqrt(off) <= 1e-17 * scale) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
    SymmetricEigen out{Vec<double>(n), Mat<double>(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

/// Unique symmetric positive-definite square root. Eigenvalues below 1e-14
/// (relative to the largest) are rejected rather than clipped.
inline Mat<double> spd_sqrt(const Mat<double>& m) {
    auto eig = jacobi_eigh(m);
    const std::size_t n = m.rows();
    const double top = n ? std::max(eig.values.back(), 0.0) : 0.0;
    for (double lam : eig.values)
        if (!(lam > 1e-14 * std::max(top, 1.0)))
            throw std::domain_error("spd_sqrt: matrix not positive definite (eigenvalue " + std::to_string(lam) + ")");
    Mat<double> p(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double r = std::sqrt(eig.values[k]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) p(i, j) += eig.vectors(i, k) * r * eig.vectors(j, k);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) p(i, j) = p(j, i) = 0.5 * (p(i, j) + p(j, i));
    return p;
}

/// Pfaffian of an antisymmetric matrix by skew Gaussian elimination with
/// pivoting. Odd dimension gives 0.
inline double pfaffian(const Mat<double>& m) {
    if (!m.is_square()) throw std::invalid_argument("pfaffian: matrix not square");
    const std::size_t n = m.rows();
    if (n % 2 == 1) return 0.0;
    Mat<double> a = m;
    double pf = 1.0;
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        std::size_t piv = k + 1;
        for (std::size_t j = k + 2; j < n; ++j)
            if (std::abs(a(k, j)) > std::abs(a(k, piv))) piv = j;
        if (piv != k + 1) {
            // simultaneous row/column swap flips the sign
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k + 1, j), a(piv, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k + 1), a(i, piv));
            pf = -pf;
        }
        const double akk1 = a(k, k + 1);
        if (akk1 == 0.0) return 0.0;
        pf *= akk1;
        for (std::size_t i = k + 2; i < n; ++i) {
            const double f = a(k, i) / akk1;
            // row_i -= f * row_{k+1}; col_i -= f * col_{k+1}
            for (std::size_t j = 0; j < n; ++j) a(i, j) -= f * a(k + 1, j);
            for (std::size_t j = 0; j < n; ++j) a(j, i) -= f * a(j, k + 1);
        }
    }
    return pf;
}

}  // namespace acsphere
