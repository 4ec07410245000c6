#pragma once

// Random complex structures with a known normal form: J = Q T(lambda) Q^T for
// a random orthogonal Q and random lambda_i >= 0.

#include <acsphere/acs/fields.hpp>
#include <acsphere/core/matrix.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace acsphere::acs {

struct KnownNormalForm {
    Mat<double> j;
    Mat<double> q;       // the ebar frame used to build j
    Vec<double> lambda;  // descending
};

/// Haar-ish orthogonal matrix: Gram-Schmidt on Gaussian columns.
inline Mat<double> random_orthogonal(std::size_t m, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Vec<double>> cols;
    while (cols.size() < m) {
        Vec<double> v(m);
        for (auto& x : v) x = gauss(rng);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& c : cols) {
                const double d = dot(v, c);
                for (std::size_t i = 0; i < m; ++i) v[i] -= d * c[i];
            }
        const double nv = norm(v);
        if (nv < 1e-6) continue;
        for (auto& x : v) x /= nv;
        cols.push_back(std::move(v));
    }
    return Mat<double>::from_columns(cols);
}

/// lambda_i uniform in [0, max_lambda), sorted descending.
inline KnownNormalForm random_admissible_j(std::size_t m, std::mt19937_64& rng, double max_lambda = 2.0) {
    std::uniform_real_distribution<double> unif(0.0, max_lambda);
    Vec<double> lambda(m / 2);
    for (auto& l : lambda) l = unif(rng);
    std::sort(lambda.begin(), lambda.end(), [](double a, double b) { return a > b; });
    const Mat<double> q = random_orthogonal(m, rng);
    return {q * normal_form_template(lambda) * q.transpose(), q, lambda};
}

}  // namespace acsphere::acs
