#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "arithmos/chebyshev.hpp"
#include "arithmos/divisor.hpp"
#include "arithmos/errors.hpp"
#include "arithmos/kahan.hpp"
#include "arithmos/report.hpp"
#include "arithmos/sieve.hpp"

namespace arithmos {

// Witness pair (c, A) for eventual boundedness: every recorded sample with
// x >= c has |f(x)| <= A.
struct EventualBound {
    double c = 0.0;
    double A = 0.0;
    std::vector<std::pair<double, double>> samples; // (x, |f(x)|)
};

inline EventualBound eventual_bound(const std::function<double(double)>& fn,
                                    const std::vector<double>& grid, double c) {
    if (grid.empty()) throw std::domain_error("eventual_bound: empty grid");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw std::domain_error("eventual_bound: grid must be sorted ascending");
    EventualBound b;
    b.c = c;
    for (double x : grid) {
        if (x < c) continue;
        const double v = std::abs(fn(x));
        b.samples.emplace_back(x, v);
        b.A = std::max(b.A, v);
    }
    if (b.samples.empty())
        throw std::domain_error("eventual_bound: no grid point >= c");
    return b;
}

// Normalized Selberg residual (selberg_lhs(x) - 2x log x) / x; its eventual
// boundedness is the symmetry formula's O(x).
inline double selberg_residual(const ChebyshevTables& t, const SieveTables& s,
                               double x) {
    if (!(x >= 2.0) || x > static_cast<double>(t.limit))
        throw std::domain_error("selberg_residual: x outside [2, limit]");
    return (selberg_lhs(t, s, x) - 2.0 * x * std::log(x)) / x;
}

// Both sides of |R(x)| log^2 x <= 2 sum_{n<=x} |R(x/n)| log n + O(x log x).
struct PntrSides {
    double lhs = 0.0;
    double rhs_sum = 0.0;
};

inline PntrSides pntrlog2bnd_sides(const ChebyshevTables& t, double x) {
    if (!(x >= 2.0) || x > static_cast<double>(t.limit))
        throw std::domain_error("pntrlog2bnd_sides: x outside [2, limit]");
    const double log_x = std::log(x);
    PntrSides sides;
    sides.lhs = std::abs(residual(t, x).value) * log_x * log_x;
    const auto xf = static_cast<std::uint64_t>(std::floor(x));
    KahanSum sum;
    for (std::uint64_t n = 2; n <= xf; ++n) {
        const double y = x / static_cast<double>(n);
        const double r = t.psi_cum[static_cast<std::uint64_t>(y)] - y;
        sum.add(std::abs(r) * std::log(static_cast<double>(n)));
    }
    sides.rhs_sum = 2.0 * sum.value();
    return sides;
}

// Empirical implied constant at one sample point: how much of the inequality
// is not covered by the explicit sum, normalized by x log x.
inline double pntr_implied_constant(const PntrSides& sides, double x) {
    return std::max(0.0, sides.lhs - sides.rhs_sum) / (x * std::log(x));
}

// --- finite sum vs antiderivative estimator ----------------------------------

// A catalog entry: f positive and decreasing to zero on [n0, infinity),
// F an antiderivative of f. Head terms n < n0 are absorbed into the limit
// because L is estimated from g(x_max) itself.
struct DvfsumEntry {
    std::string name;
    std::function<double(double)> f;
    std::function<double(double)> F;
    double n0 = 1.0;
};

inline std::vector<DvfsumEntry> dvfsum_catalog() {
    return {
        {"one_over_n", [](double x) { return 1.0 / x; },
         [](double x) { return std::log(x); }, 1.0},
        {"one_over_n_squared", [](double x) { return 1.0 / (x * x); },
         [](double x) { return -1.0 / x; }, 1.0},
        {"log_over_n", [](double x) { return std::log(x) / x; },
         [](double x) { return 0.5 * std::log(x) * std::log(x); }, 3.0},
    };
}

struct DvfsumResult {
    double L = 0.0;            // g(x_max), the limit estimate
    double max_violation = 0.0; // max over grid of |g(x)-L| - f(x) - slack
    double slack = 0.0;        // 2 f(x_max), covering |g(x_max) - L| <= f(x_max)
    std::vector<double> grid;
    std::vector<double> g_values;
};

// g(x) = sum_{n<=x} f(n) - F(x), evaluated at every grid point in one
// streaming pass up to x_max. The guarantee under test is |g(x) - L| <= f(x);
// with L replaced by g(x_max) the check carries slack 2 f(x_max).
inline DvfsumResult dvfsum_estimate(const DvfsumEntry& entry, double x_max,
                                    const std::vector<double>& grid) {
    if (!(x_max > entry.n0))
        throw std::domain_error("dvfsum_estimate: x_max must exceed n0");
    for (double x : grid)
        if (!(x > entry.n0) || x > x_max)
            throw std::domain_error("dvfsum_estimate: grid point outside (n0, x_max]");
    std::vector<double> xs = grid;
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (entry.f(xs[i]) > entry.f(xs[i - 1]) * (1.0 + 1e-12))
            throw std::domain_error("dvfsum_estimate: f not decreasing on grid");

    DvfsumResult res;
    res.grid = xs;
    res.g_values.resize(xs.size());
    KahanSum sum;
    std::size_t gi = 0;
    const auto nf = static_cast<std::uint64_t>(std::floor(x_max));
    for (std::uint64_t n = 1; n <= nf; ++n) {
        sum.add(entry.f(static_cast<double>(n)));
        while (gi < xs.size() && xs[gi] < static_cast<double>(n) + 1.0) {
            res.g_values[gi] = sum.value() - entry.F(xs[gi]);
            ++gi;
        }
    }
    res.L = sum.value() - entry.F(x_max);
    res.slack = 2.0 * entry.f(x_max);
    res.max_violation = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double v = std::abs(res.g_values[i] - res.L) - entry.f(xs[i]) - res.slack;
        res.max_violation = std::max(res.max_violation, v);
    }
    return res;
}

// --- PNT ratio chain ----------------------------------------------------------

struct ChebyshevRatios {
    double psi_over_x = 0.0;
    double theta_over_x = 0.0;
    double pi_logx_over_x = 0.0;
};

// The three ratios whose common limit 1 is the prime number theorem.
// Requires log x >= 1 so the pi ratio is well-conditioned.
inline ChebyshevRatios chebyshev_ratios(const ChebyshevTables& t, double x) {
    if (!(x >= std::exp(1.0)) || x > static_cast<double>(t.limit))
        throw std::domain_error("chebyshev_ratios: x outside [e, limit]");
    ChebyshevRatios r;
    r.psi_over_x = psi(t, x) / x;
    r.theta_over_x = theta(t, x) / x;
    r.pi_logx_over_x = static_cast<double>(pi(t, x)) * std::log(x) / x;
    return r;
}

// --- bootstrap iteration ------------------------------------------------------

inline double bootstrap_step(double a, double c) { return a - c * a * a * a; }

inline void bootstrap_check_args(double a0, double c) {
    if (!(a0 > 0.0) || !(c > 0.0) || !(c * a0 * a0 < 1.0))
        throw std::domain_error("bootstrap: need a0 > 0, c > 0, c*a0^2 < 1");
}

// a_{i+1} = a_i - c a_i^3: strictly decreasing, positive, tending to zero
// (asymptotically like 1/sqrt(2ck)). Streaming visitor for large k.
template <typename Visit>
void bootstrap_scan(double a0, double c, std::uint64_t k, Visit&& visit) {
    bootstrap_check_args(a0, c);
    double a = a0;
    visit(std::uint64_t{0}, a);
    for (std::uint64_t i = 1; i <= k; ++i) {
        a = bootstrap_step(a, c);
        visit(i, a);
    }
}

inline std::vector<double> bootstrap_sequence(double a0, double c, std::uint64_t k) {
    std::vector<double> seq;
    seq.reserve(k + 1);
    bootstrap_scan(a0, c, k, [&](std::uint64_t, double a) { seq.push_back(a); });
    return seq;
}

// --- closure of the bootstrap hypothesis --------------------------------------

// Under the hypothesis |R(y)| <= a*y on the table, evaluates the normalized
// right-hand side (2/log^2 x) * sum_{n<=x} a*(x/n)*log n / x, which tends to a.
// a == 0 short-circuits to 0 (the sum is identically zero); for a > 0 the
// hypothesis is verified at every integer y <= x first.
inline double empirical_bound_refinement(const ChebyshevTables& t, double a,
                                         double x) {
    if (!(x >= 2.0) || x > static_cast<double>(t.limit))
        throw std::domain_error("empirical_bound_refinement: x outside [2, limit]");
    if (a < 0.0) throw std::domain_error("empirical_bound_refinement: a must be >= 0");
    if (a == 0.0) return 0.0;
    const auto xf = static_cast<std::uint64_t>(std::floor(x));
    for (std::uint64_t y = 1; y <= xf; ++y)
        if (std::abs(t.psi_cum[y] - static_cast<double>(y)) >
            a * static_cast<double>(y))
            throw precondition_error(
                "empirical_bound_refinement: |R(y)| <= a*y fails at y=" +
                    std::to_string(y),
                y);
    const double log_x = std::log(x);
    KahanSum sum;
    for (std::uint64_t n = 2; n <= xf; ++n)
        sum.add(a * (x / static_cast<double>(n)) * std::log(static_cast<double>(n)));
    return 2.0 * sum.value() / (log_x * log_x) / x;
}

// --- envelope helpers ---------------------------------------------------------

inline ResidualReport make_residual_report(std::string label,
                                           const std::vector<double>& grid,
                                           const std::function<double(double)>& fn,
                                           std::string normalizer) {
    ResidualReport r;
    r.label = std::move(label);
    r.normalizer = std::move(normalizer);
    r.grid = grid;
    for (double x : grid) {
        const double v = fn(x);
        r.values.push_back(v);
        r.envelope = std::max(r.envelope, std::abs(v));
    }
    return r;
}

// Max of |values| per decade [10^k, 10^(k+1)], endpoints inclusive on both
// sides (a sample on a decade boundary counts toward both decades).
inline std::map<int, double> decade_maxima(const std::vector<double>& grid,
                                           const std::vector<double>& values) {
    std::map<int, double> maxima;
    auto feed = [&](int k, double v) {
        auto [it, inserted] = maxima.emplace(k, v);
        if (!inserted) it->second = std::max(it->second, v);
    };
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double d = std::log10(grid[i]);
        const double v = std::abs(values[i]);
        const auto nearest = std::round(d);
        if (std::abs(d - nearest) < 1e-9) {
            feed(static_cast<int>(nearest) - 1, v);
            feed(static_cast<int>(nearest), v);
        } else {
            feed(static_cast<int>(std::floor(d)), v);
        }
    }
    return maxima;
}

} // namespace arithmos
