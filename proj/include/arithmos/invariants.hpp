#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "arithmos/asymptotics.hpp"
#include "arithmos/characters.hpp"
#include "arithmos/chebyshev.hpp"
#include "arithmos/divisor.hpp"
#include "arithmos/prng.hpp"
#include "arithmos/sieve.hpp"

namespace arithmos {

// Runs every module's property checks at the given sieve limit, printing one
// line per invariant. Returns the name of the first failing invariant, or an
// empty string when everything holds. Randomized checks derive all draws
// from `seed`.
inline std::string run_invariants(const SieveTables& s, const ChebyshevTables& t,
                                  std::uint64_t seed, std::ostream& os) {
    const std::uint64_t limit = s.limit;
    std::string failed;
    auto report = [&](const std::string& name, bool ok) {
        os << (ok ? "ok   " : "FAIL ") << name << '\n';
        if (!ok && failed.empty()) failed = name;
    };

    {
        bool ok = true;
        const std::uint64_t n_max = std::min<std::uint64_t>(limit, 10000);
        for (std::uint64_t n = 1; n <= n_max && ok; ++n) {
            std::int64_t sum = 0;
            for (std::uint64_t d : divisors(s, n)) sum += s.mu[d];
            ok = (sum == (n == 1 ? 1 : 0));
        }
        report("mobius_divisor_sum_exact", ok);
    }
    {
        bool ok = true;
        const std::uint64_t n_max = std::min<std::uint64_t>(limit, 10000);
        for (std::uint64_t n = 1; n <= n_max && ok; ++n)
            ok = mangoldt_divisor_identity_check(s, n);
        report("mangoldt_divisor_identity", ok);
    }
    {
        const std::uint64_t small = std::min<std::uint64_t>(limit, 20000);
        const auto a = build_sieve(small, 64);
        const auto b = build_sieve(small, 4096);
        bool ok = a.is_prime == b.is_prime && a.mu == b.mu && a.spf == b.spf &&
                  a.lambda == b.lambda;
        report("sieve_segment_size_determinism", ok);
    }
    {
        bool ok = true;
        for (std::uint64_t m = 2; m <= 200 && ok; ++m)
            for (std::uint64_t n = m + 1; m * n <= limit && ok; n += 7)
                if (std::gcd(m, n) == 1)
                    ok = (s.mu[m * n] == s.mu[m] * s.mu[n]);
        report("mobius_multiplicative_on_coprime", ok);
    }
    {
        bool ok = true;
        for (std::uint64_t n = 2; n <= limit && ok; ++n) {
            ok = t.pi_cum[n] >= t.pi_cum[n - 1] && t.theta_cum[n] >= t.theta_cum[n - 1] &&
                 t.psi_cum[n] >= t.psi_cum[n - 1];
            if (ok)
                ok = t.theta_cum[n] <= t.psi_cum[n] &&
                     t.psi_cum[n] <= t.theta_cum[n] +
                                         2.0 * std::sqrt(static_cast<double>(n)) *
                                             std::log(static_cast<double>(n));
        }
        report("chebyshev_monotone_and_theta_psi_gap", ok);
    }
    {
        // psi(x) telescopes into theta at floor(x^(1/k)), k <= log2 x.
        bool ok = true;
        for (double x = 4; x <= static_cast<double>(limit) && ok; x *= 3.7) {
            const auto xf = static_cast<std::uint64_t>(x);
            double fold = 0.0;
            for (int k = 1;; ++k) {
                const std::uint64_t root = integer_kth_root(xf, k);
                if (root < 2) break;
                fold += theta(t, static_cast<double>(root));
            }
            ok = std::abs(psi(t, x) - fold) <= 1e-9 * std::max(1.0, psi(t, x));
        }
        report("psi_theta_prime_power_fold", ok);
    }
    {
        bool ok = true;
        for (std::uint64_t n = 1; n + 1 <= limit && ok; n += std::max<std::uint64_t>(1, limit / 97))
            ok = pi(t, static_cast<double>(n) + 0.5) == pi(t, static_cast<double>(n)) &&
                 psi(t, static_cast<double>(n) + 0.9) == psi(t, static_cast<double>(n));
        report("query_floor_semantics", ok);
    }
    {
        bool ok = true;
        const std::uint64_t n_max = std::min<std::uint64_t>(limit, 10000);
        const std::vector<ArithmeticFunction> catalog = {
            {"one", [](std::uint64_t) { return 1.0; }},
            {"log", [](std::uint64_t n) { return std::log(static_cast<double>(n)); }},
            {"mu", [&s](std::uint64_t n) { return static_cast<double>(s.mu[n]); }},
            {"lambda", [&s](std::uint64_t n) { return s.lambda[n]; }},
        };
        for (const auto& g : catalog) {
            if (!ok) break;
            ArithmeticFunction f{
                "sum_" + g.name,
                [&s, &g](std::uint64_t m) { return divisor_sum(s, g, m); }};
            for (std::uint64_t n = 1; n <= n_max && ok; ++n) {
                const double back = mobius_invert(s, f, n);
                const double want = g.eval(n);
                ok = std::abs(back - want) <=
                     1e-9 * static_cast<double>(divisors(s, n).size());
            }
        }
        report("mobius_inversion_round_trip", ok);
    }
    {
        bool ok = true;
        const std::uint64_t n_max = std::min<std::uint64_t>(limit, 2000);
        for (std::uint64_t i = 0; i < 200 && ok; ++i) {
            PairFunction A = [seed, i](std::uint64_t k, std::uint64_t d) {
                return hash_to_unit(splitmix64(seed) + i, k, d);
            };
            for (std::uint64_t n = 1; n <= n_max && ok; ++n)
                ok = check_divisor_commutation_nested(s, A, n);
        }
        report("divisor_commutation_nested_random", ok);
    }
    {
        bool ok = true;
        const std::uint64_t x_max = std::min<std::uint64_t>(limit, 2000);
        for (std::uint64_t i = 0; i < 200 && ok; ++i) {
            PairFunction A = [seed, i](std::uint64_t k, std::uint64_t d) {
                return hash_to_unit(splitmix64(seed ^ 0xABCD) + i, k, d);
            };
            ok = hyperbola_commutation_sweep(s, A, x_max);
        }
        report("divisor_commutation_hyperbola_random", ok);
    }
    {
        bool ok = true;
        for (double x : {100.0, 1000.0, 10000.0}) {
            if (x > static_cast<double>(limit)) break;
            KahanSum brute;
            const auto xf = static_cast<std::uint64_t>(x);
            for (std::uint64_t u = 2; u <= xf; ++u) {
                if (s.lambda[u] == 0.0) continue;
                brute.add(s.lambda[u] * std::log(static_cast<double>(u)));
                for (std::uint64_t v = 2; u * v <= xf; ++v)
                    brute.add(s.lambda[u] * s.lambda[v]);
            }
            ok = std::abs(selberg_lhs(t, s, x) - brute.value()) <= 1e-9 * x;
            if (!ok) break;
        }
        report("selberg_hyperbola_equals_double_loop", ok);
    }
    {
        bool ok = true;
        for (std::uint64_t N = 1; N <= 50 && ok; ++N) {
            const auto g = unit_group(N);
            std::uint64_t phi = 0;
            for (std::uint64_t r = 0; r < N; ++r)
                if (std::gcd(r, N) == 1) ++phi;
            ok = g.phi() == phi;
            if (!ok) break;
            // every unit is reproduced by its exponent tuple
            for (std::size_t i = 0; i < g.units.size() && ok; ++i) {
                std::uint64_t p = 1 % N;
                for (std::size_t j = 0; j < g.generators.size(); ++j)
                    for (std::uint32_t e = 0; e < g.dlog[i][j]; ++e)
                        p = (p * g.generators[j]) % N;
                ok = (p == g.units[i]);
            }
            if (!ok) break;
            const auto chars = all_characters(g);
            ok = chars.size() == phi && chars.front().is_principal();
            for (std::size_t a = 0; a < chars.size() && ok; ++a)
                for (std::uint64_t m = 0; m < N && ok; ++m)
                    for (std::uint64_t n = 0; n < N && ok; ++n)
                        ok = chars[a].value((m * n) % N) ==
                             chars[a].value(m) * chars[a].value(n);
            if (ok) ok = orthogonality_check(chars) && dual_orthogonality_check(chars);
        }
        report("character_algebra_exact", ok);
    }
    {
        bool ok = true;
        for (std::uint64_t N = 1; N <= 50 && ok; ++N)
            for (double x : {static_cast<double>(std::min<std::uint64_t>(limit, 997)),
                             static_cast<double>(limit)}) {
                std::int64_t total = 0;
                const auto g = unit_group(N);
                for (std::uint32_t a : g.units) total += pi_progression(t, s, x, N, a);
                std::int64_t shared = 0;
                for (std::uint64_t p = 2; p <= static_cast<std::uint64_t>(x) && p <= N; ++p)
                    if (s.is_prime[p] && N % p == 0) ++shared;
                ok = (total + shared == pi(t, x));
                if (!ok) break;
            }
        report("progression_partition_of_pi", ok);
    }
    {
        bool ok = true;
        for (std::uint64_t N = 1; N <= 30 && ok; ++N) {
            const auto g = unit_group(N);
            for (std::uint32_t a : g.units) {
                std::int64_t prev = -1;
                for (std::uint32_t k = 10; k <= 19; ++k) {
                    const double x = static_cast<double>(std::uint64_t{1} << k);
                    if (x > static_cast<double>(limit)) break;
                    const std::int64_t c = pi_progression(t, s, x, N, a);
                    if (prev >= 0 && c <= prev) {
                        ok = false;
                        break;
                    }
                    prev = c;
                }
                if (!ok) break;
            }
        }
        report("progression_counts_strictly_increase", ok);
    }
    if (limit >= 10000) {
        const double hi = std::min(static_cast<double>(limit), 1e6);
        const auto grid = log_grid({1000.0, hi, 40});
        const auto rep = make_residual_report(
            "selberg", grid,
            [&](double x) { return selberg_residual(t, s, x); }, "per_x");
        const auto maxima = decade_maxima(rep.grid, rep.values);
        bool ok = true;
        double prev = -1.0;
        for (const auto& [k, v] : maxima) {
            if (prev >= 0.0 && v > prev + 0.1) ok = false;
            prev = v;
        }
        report("selberg_residual_envelope_non_increasing", ok);
    }
    if (limit >= 10000) {
        const double hi = std::min(static_cast<double>(limit), 1e6);
        const auto grid = log_grid({100.0, hi, 40});
        std::vector<double> cs;
        for (double x : grid) cs.push_back(pntr_implied_constant(pntrlog2bnd_sides(t, x), x));
        const auto maxima = decade_maxima(grid, cs);
        bool ok = true;
        double prev = -1.0;
        for (const auto& [k, v] : maxima) {
            if (prev >= 0.0 && v > prev + 0.1) ok = false;
            prev = v;
        }
        report("pntr_implied_constant_envelope_non_increasing", ok);
    }
    {
        bool ok = true;
        for (const auto& entry : dvfsum_catalog()) {
            const double x_max = entry.name == "one_over_n" ? 1e6 : 1e5;
            const auto grid = log_grid({entry.n0 + 1.0, x_max, 10});
            ok = dvfsum_estimate(entry, x_max, grid).max_violation <= 0.0;
            if (!ok) break;
        }
        report("dvfsum_within_first_term_bound", ok);
    }
    if (limit >= 10000) {
        bool ok = true;
        const double hi = std::min(static_cast<double>(limit), 1e6);
        double prev_gap_pt = 1e300, prev_gap_pp = 1e300, prev_gap_tp = 1e300;
        for (double x = 1000.0; x <= hi * 1.000001; x *= 10.0) {
            const auto r = chebyshev_ratios(t, x);
            const double gap_pt = std::abs(r.psi_over_x - r.theta_over_x);
            const double gap_pp = std::abs(r.psi_over_x - r.pi_logx_over_x);
            const double gap_tp = std::abs(r.theta_over_x - r.pi_logx_over_x);
            ok = gap_pt < prev_gap_pt && gap_pp < prev_gap_pp && gap_tp < prev_gap_tp;
            if (!ok) break;
            prev_gap_pt = gap_pt;
            prev_gap_pp = gap_pp;
            prev_gap_tp = gap_tp;
            // the quantified psi-theta gap bound
            ok = gap_pt <= 2.0 * std::log(x) * std::log(x) / std::sqrt(x);
            if (!ok) break;
        }
        report("ratio_gaps_shrink_across_decades", ok);
    }
    {
        bool ok = true;
        double prev = 1.0;
        std::uint64_t below_milli = 0;
        bootstrap_scan(1.0, 0.1, 10000000, [&](std::uint64_t k, double a) {
            if (k == 0) return;
            if (!(a > 0.0 && a < prev)) ok = false;
            prev = a;
            if (a < 1e-3 && below_milli == 0) below_milli = k;
        });
        ok = ok && below_milli > 0;
        // tracks 1/sqrt(2ck) within factor 2 by k = 1e4
        const double a4 = bootstrap_sequence(1.0, 0.1, 10000).back();
        const double ref = 1.0 / std::sqrt(2.0 * 0.1 * 10000.0);
        ok = ok && a4 / ref < 2.0 && a4 / ref > 0.5;
        report("bootstrap_decreasing_to_zero", ok);
    }
    if (limit >= 10000) {
        bool ok = true;
        double a = 0.0;
        for (std::uint64_t y = 1; y <= limit; ++y)
            a = std::max(a, std::abs(t.psi_cum[y] - static_cast<double>(y)) /
                                static_cast<double>(y));
        double prev = 0.0;
        const double hi = std::min(static_cast<double>(limit), 1e6);
        for (double x = 1000.0; x <= hi * 1.000001; x *= 10.0) {
            const double back = empirical_bound_refinement(t, a, x);
            ok = back > prev && back >= 0.8 * a && back <= 1.2 * a;
            if (!ok) break;
            prev = back;
        }
        report("refinement_ratio_approaches_hypothesis", ok);
    }
    if (limit >= 10000) {
        const double x = static_cast<double>(limit);
        report("residual_within_percent_of_x",
               std::abs(residual(t, x).value) / x <= 0.01);
    }
    return failed;
}

} // namespace arithmos
