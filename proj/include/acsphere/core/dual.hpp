#pragma once

// Forward-mode dual numbers. Nesting Dual<Dual<double>> yields mixed second
// derivatives along two directions, Dual<Dual<Dual<double>>> third ones.

#include <cmath>
#include <concepts>
#include <type_traits>

namespace acsphere {

template <typename T>
struct Dual {
    T val{};
    T eps{};

    constexpr Dual() = default;
    // Constants (double or any shallower Dual) lift with zero derivative.
    template <typename S>
        requires std::convertible_to<S, T>
    constexpr Dual(const S& v) : val(v), eps(0.0) {}  // NOLINT(google-explicit-constructor)
    constexpr Dual(T v, T e) : val(std::move(v)), eps(std::move(e)) {}

    Dual& operator+=(const Dual& o) { val += o.val; eps += o.eps; return *this; }
    Dual& operator-=(const Dual& o) { val -= o.val; eps -= o.eps; return *this; }
    Dual& operator*=(const Dual& o) { *this = *this * o; return *this; }
    Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }
};

template <typename T> struct is_dual : std::false_type {};
template <typename T> struct is_dual<Dual<T>> : std::true_type {};
template <typename T> inline constexpr bool is_dual_v = is_dual<T>::value;

/// A scalar the library can differentiate through: double or a (nested) Dual.
template <typename T>
concept Scalar = std::same_as<T, double> || is_dual_v<T>;

template <typename T> constexpr Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.val + b.val, a.eps + b.eps}; }
template <typename T> constexpr Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.val - b.val, a.eps - b.eps}; }
template <typename T> constexpr Dual<T> operator-(const Dual<T>& a) { return {-a.val, -a.eps}; }
template <typename T> constexpr Dual<T> operator+(const Dual<T>& a) { return a; }
template <typename T> constexpr Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
    return {a.val * b.val, a.eps * b.val + a.val * b.eps};
}
template <typename T> constexpr Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
    T inv = 1.0 / b.val;
    T q = a.val * inv;
    return {q, (a.eps - q * b.eps) * inv};
}

// Mixed arithmetic with plain doubles at any nesting depth.
template <typename T> constexpr Dual<T> operator+(const Dual<T>& a, double s) { return {a.val + s, a.eps}; }
template <typename T> constexpr Dual<T> operator+(double s, const Dual<T>& a) { return {s + a.val, a.eps}; }
template <typename T> constexpr Dual<T> operator-(const Dual<T>& a, double s) { return {a.val - s, a.eps}; }
template <typename T> constexpr Dual<T> operator-(double s, const Dual<T>& a) { return {s - a.val, -a.eps}; }
template <typename T> constexpr Dual<T> operator*(const Dual<T>& a, double s) { return {a.val * s, a.eps * s}; }
template <typename T> constexpr Dual<T> operator*(double s, const Dual<T>& a) { return {s * a.val, s * a.eps}; }
template <typename T> constexpr Dual<T> operator/(const Dual<T>& a, double s) { return {a.val / s, a.eps / s}; }
template <typename T> constexpr Dual<T> operator/(double s, const Dual<T>& a) { return Dual<T>(s) / a; }

template <typename T> Dual<T> sqrt(const Dual<T>& a) {
    using std::sqrt;
    T r = sqrt(a.val);
    return {r, a.eps / (2.0 * r)};
}
template <typename T> Dual<T> sin(const Dual<T>& a) {
    using std::sin; using std::cos;
    return {sin(a.val), a.eps * cos(a.val)};
}
template <typename T> Dual<T> cos(const Dual<T>& a) {
    using std::sin; using std::cos;
    return {cos(a.val), -(a.eps * sin(a.val))};
}

/// Innermost double value (the evaluation point at every nesting depth).
constexpr double value_of(double x) { return x; }
template <typename T> constexpr double value_of(const Dual<T>& x) { return value_of(x.val); }

/// First derivative part of a single-level dual.
inline double derivative_of(const Dual<double>& x) { return x.eps; }

/// Lift a plain value into an inner-seeded dual: value v, derivative d.
template <typename T> Dual<T> make_dual(const T& v, const T& d) { return Dual<T>{v, d}; }

template <typename T> bool operator<(const Dual<T>& a, const Dual<T>& b) { return value_of(a) < value_of(b); }
template <typename T> bool operator>(const Dual<T>& a, const Dual<T>& b) { return value_of(a) > value_of(b); }

}  // namespace acsphere
