#pragma once

// Test-only oracle: integrates exp(-Q(x)) over R^m by nesting the 1-d
// adaptive quadrature, one coordinate per level. Q must be a positive
// definite quadratic form (diagonal coefficients probed numerically to
// size each level's truncation). Practical for m <= 3.

#include <absq/asymptotics.hpp>

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace absq_test {

using QuadraticForm = std::function<double(std::span<const double>)>;

namespace detail {

inline double nested_level(const QuadraticForm& form, std::vector<double>& x, std::size_t level,
                           double tol) {
    const std::size_t m = x.size();
    if (level == m) return std::exp(-form(x));

    // probe the quadratic in x[level] (deeper coordinates pinned at 0)
    const auto probe = [&](double t) {
        x[level] = t;
        for (std::size_t i = level + 1; i < m; ++i) x[i] = 0.0;
        return form(x);
    };
    const double c = probe(0.0);
    const double a = 0.5 * (probe(1.0) + probe(-1.0)) - c;
    const double b = 0.5 * (probe(1.0) - probe(-1.0));
    // inner integrals only shrink the amplitude by bounded factors; pad it
    const absq::asym::GaussianTail tail{a, -b / (2.0 * a),
                                        10.0 * std::exp(b * b / (4.0 * a) - c)};

    // inner levels run much tighter than the current one, otherwise their
    // noise stalls this level's adaptive refinement
    const auto integrand = [&, level](double t) {
        std::vector<double> inner = x;
        inner[level] = t;
        return nested_level(form, inner, level + 1, tol * 1e-3);
    };
    return absq::asym::quadrature_1d(integrand, tol, tail);
}

}  // namespace detail

inline double nested_gaussian_quad(int m, const QuadraticForm& form, double tol) {
    std::vector<double> x(static_cast<std::size_t>(m), 0.0);
    if (m == 0) return std::exp(-form(x));
    return detail::nested_level(form, x, 0, tol);
}

}  // namespace absq_test
