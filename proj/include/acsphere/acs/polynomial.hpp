#pragma once

// Multivariate polynomials in chart coordinates u1..um, used for the
// deformation parameters lambda_i(u) and for user-supplied structure files.
//
// Expression grammar (whitespace ignored):
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := power ('*' power)*
//   power  := atom ['^' integer]
//   atom   := number | 'u' integer | '(' expr ')'

#include <acsphere/core/dual.hpp>
#include <acsphere/core/matrix.hpp>

#include <cctype>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace acsphere::acs {

class PolynomialError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class Polynomial {
public:
    using Exponents = std::vector<int>;

    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, double c) {
        Polynomial p(nvars);
        p.add_term(c, Exponents(nvars, 0));
        return p;
    }
    static Polynomial variable(std::size_t nvars, std::size_t k) {
        Polynomial p(nvars);
        Exponents e(nvars, 0);
        e.at(k) = 1;
        p.add_term(1.0, e);
        return p;
    }

    void add_term(double coeff, const Exponents& exps) {
        if (exps.size() != nvars_) throw PolynomialError("polynomial term has wrong number of exponents");
        for (int e : exps)
            if (e < 0) throw PolynomialError("polynomial exponent must be non-negative");
        terms_[exps] += coeff;
    }

    std::size_t nvars() const { return nvars_; }
    const std::map<Exponents, double>& terms() const { return terms_; }

    int degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) {
            if (c == 0.0) continue;
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    template <typename T>
    T operator()(const Vec<T>& u) const {
        if (u.size() != nvars_) throw std::invalid_argument("polynomial evaluated with wrong number of variables");
        T sum(0.0);
        for (const auto& [e, c] : terms_) {
            if (c == 0.0) continue;
            T t(c);
            for (std::size_t k = 0; k < nvars_; ++k)
                for (int r = 0; r < e[k]; ++r) t = t * u[k];
            sum += t;
        }
        return sum;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        Polynomial r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(c, e);
        return r;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.nvars_ != b.nvars_) throw PolynomialError("polynomial variable count mismatch");
        Polynomial r(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(a.nvars_);
                for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
                r.add_term(ca * cb, e);
            }
        return r;
    }
    friend Polynomial operator*(double s, Polynomial p) {
        for (auto& [e, c] : p.terms_) c *= s;
        return p;
    }

private:
    std::size_t nvars_ = 0;
    std::map<Exponents, double> terms_;
};

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, std::size_t nvars) : s_(text), nvars_(nvars) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw PolynomialError("polynomial '" + std::string(s_) + "': " + why + " at offset " + std::to_string(pos_));
    }

    Polynomial expr() {
        double sign = 1.0;
        if (eat('-')) sign = -1.0;
        else eat('+');
        Polynomial acc = sign * term();
        while (true) {
            if (eat('+')) acc = acc + term();
            else if (eat('-')) acc = acc + (-1.0) * term();
            else break;
        }
        return acc;
    }
    Polynomial term() {
        Polynomial acc = power();
        while (eat('*')) acc = acc * power();
        return acc;
    }
    Polynomial power() {
        Polynomial base = atom();
        if (eat('^')) {
            const int e = integer();
            if (e > 8) fail("exponent too large");
            Polynomial r = Polynomial::constant(nvars_, 1.0);
            for (int k = 0; k < e; ++k) r = r * base;
            return r;
        }
        return base;
    }
    Polynomial atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (!eat(')')) fail("missing ')'");
            return p;
        }
        if (c == 'u') {
            ++pos_;
            const int k = integer();
            if (k < 1 || static_cast<std::size_t>(k) > nvars_)
                fail("variable u" + std::to_string(k) + " outside u1..u" + std::to_string(nvars_));
            return Polynomial::variable(nvars_, static_cast<std::size_t>(k - 1));
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Polynomial::constant(nvars_, number());
        fail("unexpected '" + std::string(1, c) + "'");
    }
    int integer() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::stoi(std::string(s_.substr(start, pos_ - start)));
    }
    double number() {
        const std::string rest(s_.substr(pos_));
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(rest, &used);
        } catch (const std::exception&) {
            fail("malformed number");
        }
        pos_ += used;
        return v;
    }

    std::string_view s_;
    std::size_t nvars_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline constexpr int kMaxLambdaDegree = 4;

inline Polynomial parse_polynomial(std::string_view text, std::size_t nvars) {
    return detail::PolyParser(text, nvars).parse();
}

/// Comma-separated lambda expressions, each of degree <= 4.
inline std::vector<Polynomial> parse_lambda_spec(std::string_view spec, std::size_t nvars) {
    std::vector<Polynomial> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = spec.find(',', start);
        const auto piece = spec.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        Polynomial p = parse_polynomial(piece, nvars);
        if (p.degree() > kMaxLambdaDegree)
            throw PolynomialError("lambda expression '" + std::string(piece) + "' has degree " +
                                  std::to_string(p.degree()) + " > 4");
        out.push_back(std::move(p));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace acsphere::acs
