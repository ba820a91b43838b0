#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "arithmos/chebyshev.hpp"
#include "arithmos/report.hpp"
#include "arithmos/sieve.hpp"

namespace arithmos {

// A root of unity stored as an exact rational fraction of a full turn,
// or the value 0. Multiplication is exact rational arithmetic; the complex
// double is a derived view, so floating point only enters final summations.
inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;

struct RootOfUnity {
    bool zero = false;
    std::int64_t num = 0; // reduced, 0 <= num < den
    std::int64_t den = 1;

    static RootOfUnity zero_value() { return {true, 0, 1}; }

    static RootOfUnity turn_fraction(std::int64_t num, std::int64_t den) {
        num %= den;
        if (num < 0) num += den;
        const std::int64_t g = std::gcd(num, den);
        return {false, num / g, den / g};
    }

    static RootOfUnity one() { return {false, 0, 1}; }

    std::complex<double> value() const {
        if (zero) return {0.0, 0.0};
        return std::polar(1.0, kTwoPi * static_cast<double>(num) /
                                   static_cast<double>(den));
    }

    friend RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b) {
        if (a.zero || b.zero) return zero_value();
        return turn_fraction(a.num * b.den + b.num * a.den, a.den * b.den);
    }

    friend bool operator==(const RootOfUnity& a, const RootOfUnity& b) = default;
};

// (Z/NZ)* with an internal direct-product decomposition into cyclic factors,
// found by brute-force maximal-order search; every unit carries its exponent
// tuple with respect to the generators.
struct UnitGroup {
    std::uint64_t modulus = 1;
    std::vector<std::uint32_t> units;        // ascending residues in [0, N)
    std::vector<std::uint32_t> generators;   // one residue per cyclic factor
    std::vector<std::uint32_t> orders;       // factor orders, non-increasing
    std::vector<std::int32_t> unit_index;    // per residue; -1 for non-units
    std::vector<std::vector<std::uint32_t>> dlog; // exponent tuple per unit

    std::uint64_t phi() const { return units.size(); }
    bool is_unit(std::uint64_t n) const { return unit_index[n % modulus] >= 0; }
};

inline UnitGroup unit_group(std::uint64_t N) {
    if (N < 1) throw std::domain_error("unit_group: N must be >= 1");
    UnitGroup g;
    g.modulus = N;
    g.unit_index.assign(N, -1);
    for (std::uint64_t r = 0; r < N; ++r)
        if (std::gcd(r, N) == 1) {
            g.unit_index[r] = static_cast<std::int32_t>(g.units.size());
            g.units.push_back(static_cast<std::uint32_t>(r));
        }
    const std::uint64_t phi = g.units.size();
    const std::uint64_t one = 1 % N;

    auto mul = [N](std::uint64_t a, std::uint64_t b) { return (a * b) % N; };

    // span: residue -> exponent tuple for the subgroup generated so far.
    std::vector<std::vector<std::uint32_t>> tuple_of(N);
    std::vector<std::uint8_t> in_span(N, 0);
    in_span[one] = 1;
    std::uint64_t span_size = 1;

    while (span_size < phi) {
        // Quotient order of u: least j >= 1 with u^j in the span. The chosen
        // generator must also satisfy u^j = 1 so the product stays direct; an
        // element of maximal quotient order with that property always exists.
        std::uint32_t best_u = 0, best_m = 0;
        std::uint32_t reachable_m = 0;
        for (std::uint32_t u : g.units) {
            if (in_span[u]) continue;
            std::uint64_t p = u;
            std::uint32_t j = 1;
            while (!in_span[p]) {
                p = mul(p, u);
                ++j;
            }
            reachable_m = std::max(reachable_m, j);
            if (p == one && j > best_m) {
                best_m = j;
                best_u = u;
            }
        }
        if (best_m < reachable_m)
            throw std::logic_error("unit_group: decomposition search failed");
        g.generators.push_back(best_u);
        g.orders.push_back(best_m);

        std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> snapshot;
        snapshot.reserve(span_size);
        for (std::uint32_t r : g.units)
            if (in_span[r]) snapshot.emplace_back(r, tuple_of[r]);
        for (auto& [r, tup] : snapshot) {
            std::uint64_t p = r;
            for (std::uint32_t e = 0; e < best_m; ++e) {
                auto t = tup;
                t.push_back(e);
                tuple_of[p] = std::move(t);
                in_span[p] = 1;
                p = mul(p, best_u);
            }
        }
        span_size *= best_m;
    }

    g.dlog.resize(phi);
    const auto factors = g.generators.size();
    for (std::uint64_t i = 0; i < phi; ++i) {
        auto t = tuple_of[g.units[i]];
        t.resize(factors, 0); // residues placed before later factors existed
        g.dlog[i] = std::move(t);
    }
    return g;
}

// A Dirichlet character mod N: an exponent tuple against the unit-group
// generators, with the value table over all residues (0 at non-units).
struct Character {
    std::uint64_t modulus = 1;
    std::vector<std::uint32_t> exponents;
    std::vector<RootOfUnity> values; // per residue 0..N-1

    const RootOfUnity& value(std::uint64_t n) const { return values[n % modulus]; }
    std::complex<double> operator()(std::uint64_t n) const { return value(n).value(); }
    bool is_principal() const {
        for (auto e : exponents)
            if (e) return false;
        return true;
    }
};

// All phi(N) characters, principal first (all exponents zero).
inline std::vector<Character> all_characters(const UnitGroup& g) {
    const std::size_t factors = g.generators.size();
    std::int64_t lcm = 1;
    for (auto d : g.orders) lcm = std::lcm<std::int64_t>(lcm, d);

    std::vector<Character> chars;
    chars.reserve(g.phi());
    std::vector<std::uint32_t> e(factors, 0);
    while (true) {
        Character chi;
        chi.modulus = g.modulus;
        chi.exponents = e;
        chi.values.assign(g.modulus, RootOfUnity::zero_value());
        for (std::size_t i = 0; i < g.units.size(); ++i) {
            std::int64_t num = 0;
            for (std::size_t j = 0; j < factors; ++j)
                num += static_cast<std::int64_t>(e[j]) * g.dlog[i][j] *
                       (lcm / g.orders[j]);
            chi.values[g.units[i]] = RootOfUnity::turn_fraction(num, lcm);
        }
        chars.push_back(std::move(chi));

        std::size_t j = 0;
        for (; j < factors; ++j) {
            if (++e[j] < g.orders[j]) break;
            e[j] = 0;
        }
        if (j == factors) break;
    }
    return chars;
}

// Row orthogonality: sum over residues of chi * conj(chi') is phi(N) when
// chi == chi' and 0 otherwise, within 1e-9 per pair.
inline bool orthogonality_check(const std::vector<Character>& chars) {
    if (chars.empty()) throw std::domain_error("orthogonality_check: empty list");
    const std::uint64_t N = chars[0].modulus;
    const auto g = unit_group(N);
    if (chars.size() != g.phi())
        throw std::domain_error("orthogonality_check: character list incomplete");
    for (const auto& c : chars)
        if (c.modulus != N)
            throw std::domain_error("orthogonality_check: mixed moduli");
    for (std::size_t a = 0; a < chars.size(); ++a)
        for (std::size_t b = 0; b < chars.size(); ++b) {
            std::complex<double> sum = 0.0;
            for (std::uint64_t n = 0; n < N; ++n)
                sum += chars[a](n) * std::conj(chars[b](n));
            const double expect = (a == b) ? static_cast<double>(g.phi()) : 0.0;
            if (std::abs(sum - expect) > 1e-9) return false;
        }
    return true;
}

// Column orthogonality: sum over characters of chi(n) * conj(chi(m)) is
// phi(N) when n == m on units and 0 otherwise.
inline bool dual_orthogonality_check(const std::vector<Character>& chars) {
    if (chars.empty()) throw std::domain_error("dual_orthogonality_check: empty list");
    const std::uint64_t N = chars[0].modulus;
    const auto g = unit_group(N);
    if (chars.size() != g.phi())
        throw std::domain_error("dual_orthogonality_check: character list incomplete");
    for (std::uint64_t n = 0; n < N; ++n)
        for (std::uint64_t m = 0; m < N; ++m) {
            std::complex<double> sum = 0.0;
            for (const auto& chi : chars) sum += chi(n) * std::conj(chi(m));
            const bool both_units = g.is_unit(n) && g.is_unit(m);
            const double expect =
                (both_units && n == m) ? static_cast<double>(g.phi()) : 0.0;
            if (std::abs(sum - expect) > 1e-9) return false;
        }
    return true;
}

// Number of primes p <= x with p = A (mod N). A is normalized mod N on entry
// and must be coprime to N.
inline std::int64_t pi_progression(const ChebyshevTables& t, const SieveTables& s,
                                   double x, std::uint64_t N, std::int64_t A) {
    if (N < 1) throw std::domain_error("pi_progression: N must be >= 1");
    const std::uint64_t r =
        static_cast<std::uint64_t>(((A % static_cast<std::int64_t>(N)) +
                                    static_cast<std::int64_t>(N)) %
                                   static_cast<std::int64_t>(N));
    if (std::gcd(r, N) != 1)
        throw std::domain_error("pi_progression: gcd(A, N) must be 1");
    const std::uint64_t xf = floor_index(t, x);
    if (N == 1) return pi(t, x);
    std::int64_t count = 0;
    for (std::uint64_t n = r; n <= xf; n += N)
        if (n >= 2 && s.is_prime[n]) ++count;
    return count;
}

// Relative deviation of each progression count from perfect equidistribution:
// d(A) = pi(x;N,A) * phi(N) / pi(x) - 1, reported per coprime A with the max
// absolute deviation as the envelope.
inline ResidualReport equidistribution_report(const ChebyshevTables& t,
                                              const SieveTables& s, double x,
                                              std::uint64_t N) {
    const auto g = unit_group(N);
    const double pix = static_cast<double>(pi(t, x));
    if (pix == 0.0)
        throw std::domain_error("equidistribution_report: no primes below x");
    ResidualReport r;
    r.label = "equidistribution_mod_" + std::to_string(N);
    r.normalizer = "count*phi(N)/pi(x)-1";
    for (std::uint32_t a : g.units) {
        const double count = static_cast<double>(pi_progression(t, s, x, N, a));
        const double d = count * static_cast<double>(g.phi()) / pix - 1.0;
        r.grid.push_back(a);
        r.values.push_back(d);
        r.envelope = std::max(r.envelope, std::abs(d));
    }
    return r;
}

// CSV export rows: N,char_index,n,re,im,angle_num,angle_den. Zero values
// carry the sentinel angle 0/0.
inline ReportTable character_table(const std::vector<Character>& chars) {
    ReportTable t;
    t.columns = {"N", "char_index", "n", "re", "im", "angle_num", "angle_den"};
    t.is_text = {0, 0, 0, 0, 0, 0, 0};
    for (std::size_t i = 0; i < chars.size(); ++i) {
        const auto& chi = chars[i];
        for (std::uint64_t n = 0; n < chi.modulus; ++n) {
            const auto& v = chi.value(n);
            const auto z = v.value();
            t.add_row({std::to_string(chi.modulus), std::to_string(i),
                       std::to_string(n), g12(z.real()), g12(z.imag()),
                       v.zero ? "0" : std::to_string(v.num),
                       v.zero ? "0" : std::to_string(v.den)});
        }
    }
    return t;
}

} // namespace arithmos
