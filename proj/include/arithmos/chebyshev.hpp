#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "arithmos/kahan.hpp"
#include "arithmos/report.hpp"
#include "arithmos/sieve.hpp"

namespace arithmos {

// Cumulative pi, theta, psi and Mertens, queryable at real x via floor
// indexing. theta and psi prefixes are accumulated with compensation so the
// stored values stay within an ulp of the exact sum of the lambda table.
// Immutable after construction.
struct ChebyshevTables {
    std::uint64_t limit = 0;
    std::vector<std::uint32_t> pi_cum;
    std::vector<double> theta_cum;
    std::vector<double> psi_cum;
    std::vector<std::int32_t> mertens_cum;
};

// PNT residual R(x) = psi(x) - x at a real sample point.
struct Residual {
    double x = 0.0;
    double value = 0.0;
};

inline ChebyshevTables build_tables(const SieveTables& s) {
    ChebyshevTables t;
    t.limit = s.limit;
    t.pi_cum.assign(s.limit + 1, 0);
    t.theta_cum.assign(s.limit + 1, 0.0);
    t.psi_cum.assign(s.limit + 1, 0.0);
    t.mertens_cum.assign(s.limit + 1, 0);
    KahanSum theta, psi;
    std::uint32_t pi = 0;
    std::int32_t mertens = 0;
    for (std::uint64_t n = 1; n <= s.limit; ++n) {
        // For prime n, lambda[n] is exactly log n, so theta reuses it and
        // theta_cum <= psi_cum holds bitwise.
        if (s.is_prime[n]) {
            ++pi;
            theta.add(s.lambda[n]);
        }
        psi.add(s.lambda[n]);
        mertens += s.mu[n];
        t.pi_cum[n] = pi;
        t.theta_cum[n] = theta.value();
        t.psi_cum[n] = psi.value();
        t.mertens_cum[n] = mertens;
    }
    return t;
}

// 0 < x <= limit; sums over n <= x make non-integer x equivalent to floor(x).
inline std::uint64_t floor_index(const ChebyshevTables& t, double x) {
    if (!(x > 0.0) || x > static_cast<double>(t.limit))
        throw std::domain_error("query x outside (0, limit]");
    return static_cast<std::uint64_t>(std::floor(x));
}

inline std::int64_t pi(const ChebyshevTables& t, double x) {
    return t.pi_cum[floor_index(t, x)];
}

inline double theta(const ChebyshevTables& t, double x) {
    return t.theta_cum[floor_index(t, x)];
}

inline double psi(const ChebyshevTables& t, double x) {
    return t.psi_cum[floor_index(t, x)];
}

inline std::int64_t mertens(const ChebyshevTables& t, double x) {
    return t.mertens_cum[floor_index(t, x)];
}

inline Residual residual(const ChebyshevTables& t, double x) {
    return {x, psi(t, x) - x};
}

// CSV/JSON export rows at a caller-supplied grid: x,pi,theta,psi,R.
inline ReportTable chebyshev_table(const ChebyshevTables& t,
                                   const std::vector<double>& grid) {
    ReportTable table;
    table.columns = {"x", "pi", "theta", "psi", "R"};
    table.is_text = {0, 0, 0, 0, 0};
    for (double x : grid)
        table.add_row({g12(x), std::to_string(pi(t, x)), g12(theta(t, x)),
                       g12(psi(t, x)), g12(residual(t, x).value)});
    return table;
}

} // namespace arithmos
