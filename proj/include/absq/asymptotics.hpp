#pragma once

// Log-space evaluation of the asymptotic estimate
// f_k(n) ~ k^(2n + k/2) (4 pi n)^((1-k)/2) and of the corresponding
// probability f_k(n)/k^(2n), plus the Gaussian-integral machinery used
// to derive it: the 1-d integral with a linear term, the S_{m,l}
// quadratic forms, and the telescoped multi-dimensional integral.

#include <absq/bigint.hpp>
#include <absq/counting.hpp>
#include <absq/errors.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace absq::asym {

/// A positive real carried as its natural log, so estimates like
/// f_3(100000) stay finite. value() overflows past exp(709) or so.
struct LogValue {
    double log = 0.0;

    double value() const { return std::exp(log); }
};

/// Log of the Stirling main term: n ln n - n + (1/2) ln(2 pi n).
/// exp of this equals n! up to a 1 + O(1/n) factor.
inline double log_stirling(double n) {
    if (!(n > 0)) throw std::invalid_argument("log_stirling: n must be > 0");
    return n * std::log(n) - n + 0.5 * std::log(2.0 * std::numbers::pi * n);
}

/// Log of k^(2n + k/2) (4 pi n)^((1-k)/2), the asymptotic estimate of
/// f_k(n). The theorem assumes k >= 2.
inline LogValue log_asymptotic(int k, std::int64_t n) {
    if (k < 2) throw std::invalid_argument("log_asymptotic: k must be >= 2");
    if (n < 1) throw std::invalid_argument("log_asymptotic: n must be >= 1");
    const double kd = k;
    const double nd = static_cast<double>(n);
    return {(2.0 * nd + kd / 2.0) * std::log(kd) +
            0.5 * (1.0 - kd) * std::log(4.0 * std::numbers::pi * nd)};
}

/// Log of k^(k/2) (4 pi n)^((1-k)/2), the asymptotic probability that a
/// uniform string of length 2n is an abelian square. Equals
/// log_asymptotic(k, n) - 2n ln k.
inline LogValue log_probability(int k, std::int64_t n) {
    if (k < 2) throw std::invalid_argument("log_probability: k must be >= 2");
    if (n < 1) throw std::invalid_argument("log_probability: n must be >= 1");
    const double kd = k;
    const double nd = static_cast<double>(n);
    return {(kd / 2.0) * std::log(kd) +
            0.5 * (1.0 - kd) * std::log(4.0 * std::numbers::pi * nd)};
}

/// Closed form of the integral over R of exp(-(a x^2 + b x + c)):
/// exp(b^2/(4a) - c) sqrt(pi/a). Requires a > 0.
inline double gaussian_1d(double a, double b, double c) {
    if (!(a > 0)) throw std::invalid_argument("gaussian_1d: a must be > 0");
    return std::exp(b * b / (4.0 * a) - c) * std::sqrt(std::numbers::pi / a);
}

/// Decay profile of a Gaussian-type integrand: |f(x)| <= amplitude *
/// exp(-decay * (x - center)^2). Used to truncate the infinite range.
struct GaussianTail {
    double decay = 0.1;
    double center = 0.0;
    double amplitude = 1.0;
};

namespace detail {

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double eps,
                               long& budget) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    budget -= 2;
    if (budget < 0)
        throw QuadratureError("quadrature_1d: evaluation budget exhausted before convergence");
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (std::abs(left + right - whole) <= 15.0 * eps)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, eps / 2.0, budget) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, eps / 2.0, budget);
}

}  // namespace detail

/// Integral over all of R of a rapidly decaying f, to absolute error
/// ~tol. The range is truncated to [center - L, center + L] with L from
/// the analytic tail bound of `tail`, then integrated by adaptive
/// Simpson with a 10^6-evaluation budget.
inline double quadrature_1d(const std::function<double(double)>& f, double tol,
                            GaussianTail tail = {}) {
    if (!(tol > 0)) throw std::invalid_argument("quadrature_1d: tol must be > 0");
    if (!(tail.decay > 0)) throw std::invalid_argument("quadrature_1d: decay must be > 0");

    // amplitude * sqrt(pi/decay) * erfc-style tail below tol/10
    const double safe_amp = std::max(tail.amplitude, 1.0);
    const double target = std::log(10.0 * safe_amp * std::sqrt(std::numbers::pi / tail.decay) / tol);
    const double half_width = std::sqrt((std::max(target, 1.0) + 5.0) / tail.decay);
    const double a = tail.center - half_width;
    const double b = tail.center + half_width;

    long budget = 1'000'000;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    budget -= 3;
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, tol / 10.0, budget);
}

/// The quadratic form S_{m,l} evaluated at x = (x_{l+1}, ..., x_m).
/// S_{m,0} = sum x_i^2 + (sum x_i)^2; for l >= 1 the closed form is
/// ((l+2)/(l+1)) sum_j x_j^2 + (2/(l+1)) sum_{i<j} x_i x_j.
inline double s_ml(int m, int l, std::span<const double> x) {
    if (l < 0 || l > m) throw std::invalid_argument("s_ml: need 0 <= l <= m");
    if (x.size() != static_cast<std::size_t>(m - l))
        throw std::invalid_argument("s_ml: x must have length m - l");

    double sum = 0.0;
    double sum_sq = 0.0;
    for (double v : x) {
        sum += v;
        sum_sq += v * v;
    }
    if (l == 0) return sum_sq + sum * sum;
    const double cross = 0.5 * (sum * sum - sum_sq);  // sum over i < j of x_i x_j
    const double ld = l;
    return (ld + 2.0) / (ld + 1.0) * sum_sq + 2.0 / (ld + 1.0) * cross;
}

/// Verifies one reduction step of the S_{m,l} family: integrating
/// exp(-S_{m,l-1}) over x_l must equal
/// sqrt(pi l / (l+1)) exp(-S_{m,l}(x_rest)). Quadrature vs closed form.
inline bool s_ml_reduction_check(int m, int l, std::span<const double> x_rest, double tol) {
    if (l < 1 || l > m) throw std::invalid_argument("s_ml_reduction_check: need 1 <= l <= m");
    if (x_rest.size() != static_cast<std::size_t>(m - l))
        throw std::invalid_argument("s_ml_reduction_check: x_rest must have length m - l");

    const auto form = [&](double xl) {
        std::vector<double> x(x_rest.size() + 1);
        x[0] = xl;
        std::copy(x_rest.begin(), x_rest.end(), x.begin() + 1);
        return s_ml(m, l - 1, x);
    };
    // S_{m,l-1} is quadratic in x_l; probe it at -1, 0, 1 to size the tail
    const double c = form(0.0);
    const double a = 0.5 * (form(1.0) + form(-1.0)) - c;
    const double b = 0.5 * (form(1.0) - form(-1.0));
    const GaussianTail tail{a, -b / (2.0 * a), std::exp(b * b / (4.0 * a) - c)};

    const double numeric =
        quadrature_1d([&](double xl) { return std::exp(-form(xl)); }, tol / 10.0, tail);
    const double ld = l;
    const double closed =
        std::sqrt(std::numbers::pi * ld / (ld + 1.0)) * std::exp(-s_ml(m, l, x_rest));
    return std::abs(numeric - closed) <= tol;
}

/// Closed form of the m-fold integral of exp(-S_{m,0}): pi^(m/2) / sqrt(m+1).
inline double gaussian_multi(int m) {
    if (m < 0) throw std::invalid_argument("gaussian_multi: m must be >= 0");
    return std::pow(std::numbers::pi, 0.5 * m) / std::sqrt(m + 1.0);
}

/// Closed form of the (k-1)-fold integral of exp(-k S_{k-1,0}):
/// pi^((k-1)/2) k^(-k/2). Substituting x -> x / sqrt(k) in each variable
/// shows this equals k^(-(k-1)/2) gaussian_multi(k-1).
inline double scaled_gaussian_multi(int k) {
    if (k < 2) throw std::invalid_argument("scaled_gaussian_multi: k must be >= 2");
    return std::pow(std::numbers::pi, 0.5 * (k - 1)) * std::pow(static_cast<double>(k), -0.5 * k);
}

struct RatioRow {
    std::int64_t n = 0;
    BigCount exact;
    LogValue estimate;
    double ratio = 0.0;  // exact / exp(estimate.log), formed in log-space
};

/// Exact counts vs the asymptotic estimate, for convergence diagnostics.
inline std::vector<RatioRow> ratio_report(int k, std::span<const std::int64_t> n_list,
                                          counting::CountTable& table) {
    if (k < 2) throw std::invalid_argument("ratio_report: k must be >= 2");
    std::vector<RatioRow> rows;
    rows.reserve(n_list.size());
    for (std::int64_t n : n_list) {
        if (n < 1) throw std::invalid_argument("ratio_report: each n must be >= 1");
        BigCount exact = counting::count_recurrence(k, n, table);
        const LogValue est = log_asymptotic(k, n);
        const double ratio = std::exp(log_big(exact) - est.log);
        rows.push_back({n, std::move(exact), est, ratio});
    }
    return rows;
}

}  // namespace absq::asym
