#pragma once

// Differential forms at a point, stored as fully antisymmetric coefficient
// arrays over frame directions: a p-form in dimension m keeps m^p entries,
// entry (i1..ip) = form(e_i1, ..., e_ip).
//
// Conventions (used everywhere in the library):
//   (a ^ b)(X, Y)  = a(X) b(Y) - a(Y) b(X)                       (no 1/2)
//   general wedge  = sum over (p,q)-shuffles of sign * a(..) b(..)
//   (d a)(X, Y)    = X a(Y) - Y a(X) - a([X, Y])

#include <acsphere/core/matrix.hpp>

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace acsphere {

inline constexpr int kMaxFormDegree = 3;

template <typename T = double>
class FormCoeffs {
public:
    FormCoeffs() = default;
    FormCoeffs(int degree, std::size_t dim) : degree_(degree), dim_(dim) {
        if (degree < 0 || degree > kMaxFormDegree)
            throw std::invalid_argument("FormCoeffs: degree " + std::to_string(degree) + " outside 0..3");
        std::size_t n = 1;
        for (int k = 0; k < degree; ++k) n *= dim;
        data_.assign(n, T(0.0));
    }

    static FormCoeffs scalar(std::size_t dim, const T& v) {
        FormCoeffs f(0, dim);
        f.data_[0] = v;
        return f;
    }
    static FormCoeffs one_form(const Vec<T>& coeffs) {
        FormCoeffs f(1, coeffs.size());
        f.data_ = coeffs;
        return f;
    }
    /// Coframe element omega^k: value 1 on e_k.
    static FormCoeffs coframe(std::size_t dim, std::size_t k) {
        FormCoeffs f(1, dim);
        f.data_[k] = T(1.0);
        return f;
    }
    /// From an antisymmetric matrix of values on pairs. Only the strict upper
    /// triangle is read; the lower is filled by antisymmetry.
    static FormCoeffs two_form(const Mat<T>& m) {
        FormCoeffs f(2, m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = i + 1; j < m.rows(); ++j) f.set(i, j, m(i, j));
        return f;
    }

    int degree() const { return degree_; }
    std::size_t dim() const { return dim_; }
    const std::vector<T>& data() const { return data_; }
    /// Raw storage; callers writing here must keep it antisymmetric.
    std::vector<T>& raw() { return data_; }

    const T& operator()() const { return data_[0]; }
    const T& operator()(std::size_t i) const { return data_[i]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
    const T& operator()(std::size_t i, std::size_t j, std::size_t k) const { return data_[(i * dim_ + j) * dim_ + k]; }

    /// Set one independent component; all permutations follow by sign.
    void set(std::size_t i, const T& v) { data_[i] = v; }
    void set(std::size_t i, std::size_t j, const T& v) {
        if (i == j) return;
        data_[i * dim_ + j] = v;
        data_[j * dim_ + i] = -v;
    }
    void set(std::size_t i, std::size_t j, std::size_t k, const T& v) {
        if (i == j || j == k || i == k) return;
        const std::size_t idx[3] = {i, j, k};
        static constexpr int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
        for (int p = 0; p < 6; ++p) {
            const T s = p < 3 ? v : -v;
            data_[(idx[perms[p][0]] * dim_ + idx[perms[p][1]]) * dim_ + idx[perms[p][2]]] = s;
        }
    }

    /// Evaluate a 2-form on arbitrary vectors given in frame components.
    T on(const Vec<T>& x, const Vec<T>& y) const {
        require_degree(2);
        T s(0.0);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) s += (*this)(i, j) * x[i] * y[j];
        return s;
    }
    /// Evaluate a 1-form on a vector in frame components.
    T on(const Vec<T>& x) const {
        require_degree(1);
        return dot(data_, x);
    }

    /// 2-form coefficient matrix.
    Mat<T> as_matrix() const {
        require_degree(2);
        Mat<T> m(dim_, dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
        return m;
    }

    FormCoeffs& operator+=(const FormCoeffs& o) {
        check_compatible(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    FormCoeffs& operator-=(const FormCoeffs& o) {
        check_compatible(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    template <typename S>
    FormCoeffs& operator*=(const S& s) {
        for (auto& x : data_) x = x * s;
        return *this;
    }

    void require_degree(int d) const {
        if (degree_ != d)
            throw std::invalid_argument("FormCoeffs: expected degree " + std::to_string(d) + ", got " +
                                        std::to_string(degree_));
    }

private:
    void check_compatible(const FormCoeffs& o) const {
        if (degree_ != o.degree_ || dim_ != o.dim_) throw std::invalid_argument("FormCoeffs: degree/dimension mismatch");
    }

    int degree_ = 0;
    std::size_t dim_ = 0;
    std::vector<T> data_{T(0.0)};
};

template <typename T> FormCoeffs<T> operator+(FormCoeffs<T> a, const FormCoeffs<T>& b) { return a += b; }
template <typename T> FormCoeffs<T> operator-(FormCoeffs<T> a, const FormCoeffs<T>& b) { return a -= b; }
template <typename T> FormCoeffs<T> operator*(double s, FormCoeffs<T> a) { return a *= s; }
template <typename T> FormCoeffs<T> operator*(FormCoeffs<T> a, double s) { return a *= s; }

template <typename T>
double max_abs(const FormCoeffs<T>& f) {
    double r = 0.0;
    for (const auto& x : f.data()) r = std::max(r, std::abs(value_of(x)));
    return r;
}

/// Exterior product. Graded-anticommutative; total degree above 3 is rejected.
template <typename T>
FormCoeffs<T> wedge(const FormCoeffs<T>& a, const FormCoeffs<T>& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dimension mismatch");
    const int p = a.degree(), q = b.degree();
    if (p + q > kMaxFormDegree)
        throw std::invalid_argument("wedge: degree " + std::to_string(p + q) + " exceeds the supported maximum 3");
    const std::size_t m = a.dim();
    FormCoeffs<T> r(p + q, m);
    if (p == 0) {
        r += b;
        r *= a();
        return r;
    }
    if (q == 0) {
        r += a;
        r *= b();
        return r;
    }
    if (p == 1 && q == 1) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) r.set(i, j, a(i) * b(j) - a(j) * b(i));
        return r;
    }
    if (p == 1 && q == 2) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                for (std::size_t k = j + 1; k < m; ++k)
                    r.set(i, j, k, a(i) * b(j, k) - a(j) * b(i, k) + a(k) * b(i, j));
        return r;
    }
    // p == 2, q == 1
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k)
                r.set(i, j, k, a(i, j) * b(k) - a(i, k) * b(j) + a(j, k) * b(i));
    return r;
}

// ---------------------------------------------------------------------------
// matrices of forms

template <typename T = double>
class MatrixForm {
public:
    MatrixForm() = default;
    MatrixForm(std::size_t rows, std::size_t cols, int degree, std::size_t dim)
        : rows_(rows), cols_(cols), degree_(degree), dim_(dim), entries_(rows * cols, FormCoeffs<T>(degree, dim)) {}

    /// Degree-0 matrix form from a constant matrix (e.g. J0).
    static MatrixForm constant(const Mat<double>& m, std::size_t dim) {
        MatrixForm r(m.rows(), m.cols(), 0, dim);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = FormCoeffs<T>::scalar(dim, T(m(i, j)));
        return r;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    int degree() const { return degree_; }
    std::size_t dim() const { return dim_; }

    FormCoeffs<T>& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const FormCoeffs<T>& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    MatrixForm transpose() const {
        MatrixForm t(cols_, rows_, degree_, dim_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Sub-block [r0, r0+nr) x [c0, c0+nc).
    MatrixForm block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        MatrixForm b(nr, nc, degree_, dim_);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    MatrixForm& operator+=(const MatrixForm& o) {
        check_compatible(o);
        for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
        return *this;
    }
    MatrixForm& operator-=(const MatrixForm& o) {
        check_compatible(o);
        for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
        return *this;
    }
    template <typename S>
    MatrixForm& operator*=(const S& s) {
        for (auto& e : entries_) e *= s;
        return *this;
    }

private:
    void check_compatible(const MatrixForm& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_ || degree_ != o.degree_ || dim_ != o.dim_)
            throw std::invalid_argument("MatrixForm: shape/degree mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    int degree_ = 0;
    std::size_t dim_ = 0;
    std::vector<FormCoeffs<T>> entries_;
};

template <typename T> MatrixForm<T> operator+(MatrixForm<T> a, const MatrixForm<T>& b) { return a += b; }
template <typename T> MatrixForm<T> operator-(MatrixForm<T> a, const MatrixForm<T>& b) { return a -= b; }
template <typename T> MatrixForm<T> operator*(double s, MatrixForm<T> a) { return a *= s; }

/// (M N)_{ij} = sum_k M_{ik} ^ N_{kj}.
template <typename T>
MatrixForm<T> matrix_form_product(const MatrixForm<T>& m, const MatrixForm<T>& n) {
    if (m.cols() != n.rows())
        throw std::invalid_argument("matrix_form_product: inner dimensions " + std::to_string(m.cols()) + " and " +
                                    std::to_string(n.rows()) + " differ");
    if (m.dim() != n.dim()) throw std::invalid_argument("matrix_form_product: form dimension mismatch");
    MatrixForm<T> r(m.rows(), n.cols(), m.degree() + n.degree(), m.dim());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < n.cols(); ++j)
            for (std::size_t k = 0; k < m.cols(); ++k) r(i, j) += wedge(m(i, k), n(k, j));
    return r;
}

template <typename T>
FormCoeffs<T> trace(const MatrixForm<T>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("trace: matrix form not square");
    FormCoeffs<T> s(m.degree(), m.dim());
    for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, i);
    return s;
}

template <typename T>
double max_abs(const MatrixForm<T>& m) {
    double r = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r = std::max(r, max_abs(m(i, j)));
    return r;
}

}  // namespace acsphere
