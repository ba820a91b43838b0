#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "arithmos/chebyshev.hpp"
#include "arithmos/kahan.hpp"
#include "arithmos/sieve.hpp"

namespace arithmos {

// Pointwise arithmetic function on [1, limit]; evaluation must be pure.
struct ArithmeticFunction {
    std::string name;
    std::function<double(std::uint64_t)> eval;
};

// Two-argument callback for the divisor-sum commutation identities. Supplied
// by the caller rather than materialized: the identities hold for arbitrary
// A and property tests draw random instances.
using PairFunction = std::function<double(std::uint64_t, std::uint64_t)>;

// Sum of f over the divisors of n.
inline double divisor_sum(const SieveTables& s, const ArithmeticFunction& f,
                          std::uint64_t n) {
    if (n < 1 || n > s.limit) throw std::domain_error("divisor_sum: n out of range");
    double sum = 0.0;
    for (std::uint64_t d : divisors(s, n)) sum += f.eval(d);
    return sum;
}

// Sum of mu(d) * f(n/d) over d | n. If f(m) = sum of g over divisors of m for
// all m, this recovers g(n).
inline double mobius_invert(const SieveTables& s, const ArithmeticFunction& f,
                            std::uint64_t n) {
    if (n < 1 || n > s.limit) throw std::domain_error("mobius_invert: n out of range");
    double sum = 0.0;
    for (std::uint64_t d : divisors(s, n))
        if (s.mu[d] != 0) sum += s.mu[d] * f.eval(n / d);
    return sum;
}

// sum_{k|n} sum_{d|k} A(k,d)  ==  sum_{d|n} sum_{m|(n/d)} A(dm,d),
// checked within 1e-9 per term.
inline bool check_divisor_commutation_nested(const SieveTables& s,
                                             const PairFunction& A,
                                             std::uint64_t n) {
    if (n < 1 || n > s.limit)
        throw std::domain_error("check_divisor_commutation_nested: n out of range");
    double lhs = 0.0;
    std::uint64_t terms = 0;
    for (std::uint64_t k : divisors(s, n))
        for (std::uint64_t d : divisors(s, k)) {
            lhs += A(k, d);
            ++terms;
        }
    double rhs = 0.0;
    for (std::uint64_t d : divisors(s, n))
        for (std::uint64_t m : divisors(s, n / d)) rhs += A(d * m, d);
    return std::abs(lhs - rhs) <= 1e-9 * static_cast<double>(terms);
}

// sum_{n<=x} sum_{d|n} A(n,d)  ==  sum_{d<=x} sum_{m<=x/d} A(dm,d),
// checked within 1e-9 per term. x is real; both sides range over integer
// pairs with d*m <= x.
inline bool check_divisor_commutation_hyperbola(const SieveTables& s,
                                                const PairFunction& A, double x) {
    if (!(x >= 1.0) || x > static_cast<double>(s.limit))
        throw std::domain_error("check_divisor_commutation_hyperbola: x out of range");
    const auto xf = static_cast<std::uint64_t>(std::floor(x));
    double lhs = 0.0;
    std::uint64_t terms = 0;
    for (std::uint64_t n = 1; n <= xf; ++n)
        for (std::uint64_t d : divisors(s, n)) {
            lhs += A(n, d);
            ++terms;
        }
    double rhs = 0.0;
    for (std::uint64_t d = 1; d <= xf; ++d) {
        const std::uint64_t m_max = static_cast<std::uint64_t>(std::floor(x / d));
        for (std::uint64_t m = 1; m <= m_max; ++m) rhs += A(d * m, d);
    }
    return std::abs(lhs - rhs) <= 1e-9 * static_cast<double>(terms);
}

// Checks the hyperbola commutation at every integer x in [1, x_max] in one
// sweep: the left side accumulates n-major, the right side keeps per-d
// partial sums (m-major within d) and re-totals them d-major at each x.
// O(x_max^2) adds instead of one O(x log x) pass per x.
inline bool hyperbola_commutation_sweep(const SieveTables& s, const PairFunction& A,
                                        std::uint64_t x_max) {
    if (x_max < 1 || x_max > s.limit)
        throw std::domain_error("hyperbola_commutation_sweep: x_max out of range");
    std::vector<double> per_d(x_max + 1, 0.0);
    double lhs = 0.0;
    std::uint64_t terms = 0;
    for (std::uint64_t x = 1; x <= x_max; ++x) {
        for (std::uint64_t d : divisors(s, x)) {
            lhs += A(x, d);
            per_d[d] += A(x, d); // the new m = x/d term of column d
            ++terms;
        }
        double rhs = 0.0;
        for (std::uint64_t d = 1; d <= x; ++d) rhs += per_d[d];
        if (std::abs(lhs - rhs) > 1e-9 * static_cast<double>(terms)) return false;
    }
    return true;
}

// Left side of the Selberg symmetry formula,
//   sum_{n<=x} Lambda(n) log n + sum_{uv<=x} Lambda(u) Lambda(v),
// with the double sum folded to sum_{u<=x} Lambda(u) psi(x/u). One O(x) scan;
// only prime powers contribute.
inline double selberg_lhs(const ChebyshevTables& t, const SieveTables& s, double x) {
    if (!(x >= 1.0) || x > static_cast<double>(t.limit))
        throw std::domain_error("selberg_lhs: x out of range");
    const auto xf = static_cast<std::uint64_t>(std::floor(x));
    KahanSum acc;
    for (std::uint64_t n = 2; n <= xf; ++n) {
        const double l = s.lambda[n];
        if (l == 0.0) continue;
        acc.add(l * std::log(static_cast<double>(n)));
        acc.add(l * psi(t, x / static_cast<double>(n)));
    }
    return acc.value();
}

} // namespace arithmos
