#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "arithmos/errors.hpp"

namespace arithmos {

// Primality, Mobius mu, von Mangoldt Lambda (natural-log units) and smallest
// prime factor for every n in [1, limit]. Immutable after construction; safe
// to share across concurrent readers.
struct SieveTables {
    std::uint64_t limit = 0;
    std::vector<std::uint8_t> is_prime; // index 0 unused, is_prime[1] = 0
    std::vector<std::int8_t> mu;        // mu[1] = 1, 0 iff some p^2 | n
    std::vector<double> lambda;         // log p if n = p^k, else 0
    std::vector<std::uint32_t> spf;     // smallest prime factor, spf[1] = 0
};

// Relative tolerance for identities that accumulate sums of logs.
inline double tol_identity(double log_n) { return 1e-9 * std::max(1.0, log_n); }

inline constexpr std::uint64_t kDefaultSegmentSize = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kDefaultMemoryBudget = std::uint64_t{6} << 30;

inline std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// True iff base^k > n, with early exit so nothing overflows.
inline bool ipow_exceeds(std::uint64_t base, int k, std::uint64_t n) {
    std::uint64_t acc = 1;
    for (int i = 0; i < k; ++i) {
        if (acc > n / base) return true;
        acc *= base;
    }
    return acc > n;
}

// Largest r with r^k <= n (exact; floating point only seeds the guess).
inline std::uint64_t integer_kth_root(std::uint64_t n, int k) {
    if (n == 0 || k <= 0) return 0;
    if (k == 1) return n;
    auto r = static_cast<std::uint64_t>(
        std::pow(static_cast<double>(n), 1.0 / k));
    while (r > 0 && ipow_exceeds(r, k, n)) --r;
    while (!ipow_exceeds(r + 1, k, n)) ++r;
    return r;
}

// Primes up to limit by a plain monolithic sieve; used for the base-prime
// list (up to sqrt of the main limit), which is read-only afterwards.
inline std::vector<std::uint32_t> small_primes(std::uint64_t limit) {
    std::vector<std::uint8_t> composite(limit + 1, 0);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    return primes;
}

// Sieves [1, limit] in segments. Each segment is factored locally against the
// base-prime list, so segments have no cross dependency and the result does
// not depend on segment_size. Estimated memory above memory_budget is a
// resource_error before any large allocation happens.
inline SieveTables build_sieve(std::uint64_t limit,
                               std::uint64_t segment_size = kDefaultSegmentSize,
                               std::uint64_t memory_budget = kDefaultMemoryBudget) {
    if (limit < 1) throw std::domain_error("build_sieve: limit must be >= 1");
    if (segment_size < 1) throw std::domain_error("build_sieve: segment_size must be >= 1");
    if (limit > 0xFFFFFFFFull)
        throw resource_error("build_sieve: limit exceeds 32-bit factor range");

    const std::uint64_t bytes_per_n = 1 + 1 + 8 + 4;
    const std::uint64_t working = std::min(segment_size, limit) * 10;
    if ((limit + 1) * bytes_per_n + working > memory_budget)
        throw resource_error("build_sieve: limit " + std::to_string(limit) +
                             " exceeds memory budget");

    SieveTables t;
    t.limit = limit;
    try {
        t.is_prime.assign(limit + 1, 0);
        t.mu.assign(limit + 1, 0);
        t.lambda.assign(limit + 1, 0.0);
        t.spf.assign(limit + 1, 0);
    } catch (const std::bad_alloc&) {
        throw resource_error("build_sieve: allocation failed for limit " +
                             std::to_string(limit));
    }

    const auto base = small_primes(isqrt(limit));

    const std::uint64_t seg = std::min(segment_size, limit);
    std::vector<std::uint64_t> rem(seg);
    std::vector<std::uint8_t> distinct(seg);
    std::vector<std::uint8_t> has_square(seg);

    for (std::uint64_t lo = 1; lo <= limit; lo += seg) {
        const std::uint64_t hi = std::min(lo + seg - 1, limit);
        const std::uint64_t len = hi - lo + 1;
        for (std::uint64_t i = 0; i < len; ++i) rem[i] = lo + i;
        std::memset(distinct.data(), 0, len);
        std::memset(has_square.data(), 0, len);

        for (std::uint32_t p : base) {
            const std::uint64_t p64 = p;
            if (p64 * p64 > hi) break;
            std::uint64_t start = std::max(2 * p64, ((lo + p64 - 1) / p64) * p64);
            for (std::uint64_t j = start; j <= hi; j += p64) {
                const std::uint64_t i = j - lo;
                if (t.spf[j] == 0) t.spf[j] = p;
                std::uint32_t e = 0;
                while (rem[i] % p64 == 0) {
                    rem[i] /= p64;
                    ++e;
                }
                ++distinct[i];
                if (e >= 2) has_square[i] = 1;
            }
        }

        for (std::uint64_t n = lo; n <= hi; ++n) {
            if (n == 1) {
                t.mu[1] = 1;
                continue;
            }
            const std::uint64_t i = n - lo;
            // Leftover cofactor is a single prime > sqrt(hi); in particular
            // rem == n means no base prime divides n, so n itself is prime.
            if (rem[i] > 1) {
                ++distinct[i];
                if (t.spf[n] == 0) t.spf[n] = static_cast<std::uint32_t>(rem[i]);
            }
            t.is_prime[n] = (t.spf[n] == n) ? 1 : 0;
            t.mu[n] = has_square[i] ? 0 : ((distinct[i] & 1) ? -1 : 1);
            t.lambda[n] =
                (distinct[i] == 1) ? std::log(static_cast<double>(t.spf[n])) : 0.0;
        }
    }
    return t;
}

struct PrimePower {
    std::uint64_t p;
    std::uint32_t e;
};

inline std::vector<PrimePower> factorize(const SieveTables& t, std::uint64_t n) {
    if (n < 1 || n > t.limit) throw std::domain_error("factorize: n out of range");
    std::vector<PrimePower> fs;
    while (n > 1) {
        const std::uint64_t p = t.spf[n];
        std::uint32_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        fs.push_back({p, e});
    }
    return fs;
}

// All divisors of n, by expanding the spf factorization. Unsorted.
inline std::vector<std::uint64_t> divisors(const SieveTables& t, std::uint64_t n) {
    const auto fs = factorize(t, n);
    std::vector<std::uint64_t> ds{1};
    for (const auto& [p, e] : fs) {
        const std::size_t old = ds.size();
        std::uint64_t pk = 1;
        for (std::uint32_t k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < old; ++i) ds.push_back(ds[i] * pk);
        }
    }
    return ds;
}

// True iff sum of Lambda over the divisors of n equals log n within
// tol_identity. Used as a cheap global oracle for the lambda table.
inline bool mangoldt_divisor_identity_check(const SieveTables& t, std::uint64_t n) {
    if (n < 1 || n > t.limit)
        throw std::domain_error("mangoldt_divisor_identity_check: n out of range");
    double sum = 0.0;
    for (std::uint64_t d : divisors(t, n)) sum += t.lambda[d];
    const double log_n = std::log(static_cast<double>(n));
    return std::abs(sum - log_n) <= tol_identity(log_n);
}

// --- binary cache -----------------------------------------------------------
//
// Little-endian layout, fields in declaration order:
//   bytes 0..3   magic "SLSV"
//   bytes 4..7   version (u32, currently 1)
//   bytes 8..15  limit (u64)
//   then, each covering n = 1..limit inclusive:
//   is_prime  u8[limit]
//   mu        i8[limit]
//   lambda    f64[limit]   (IEEE-754 binary64)
//   spf       u32[limit]

inline constexpr char kCacheMagic[4] = {'S', 'L', 'S', 'V'};
inline constexpr std::uint32_t kCacheVersion = 1;

namespace detail {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

} // namespace detail

inline void write_cache(const SieveTables& t, const std::string& path) {
    detail::FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw io_error("write_cache: cannot open " + path);
    auto put = [&](const void* data, std::size_t size, std::size_t count) {
        if (std::fwrite(data, size, count, f.get()) != count)
            throw io_error("write_cache: short write to " + path);
    };
    put(kCacheMagic, 1, 4);
    put(&kCacheVersion, sizeof kCacheVersion, 1);
    put(&t.limit, sizeof t.limit, 1);
    put(t.is_prime.data() + 1, 1, t.limit);
    put(t.mu.data() + 1, 1, t.limit);
    put(t.lambda.data() + 1, sizeof(double), t.limit);
    put(t.spf.data() + 1, sizeof(std::uint32_t), t.limit);
}

inline SieveTables read_cache(const std::string& path) {
    detail::FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw io_error("read_cache: cannot open " + path);
    auto get = [&](void* data, std::size_t size, std::size_t count) {
        if (std::fread(data, size, count, f.get()) != count)
            throw io_error("read_cache: short read from " + path);
    };
    char magic[4];
    get(magic, 1, 4);
    if (std::memcmp(magic, kCacheMagic, 4) != 0)
        throw io_error("read_cache: bad magic in " + path);
    std::uint32_t version = 0;
    get(&version, sizeof version, 1);
    if (version != kCacheVersion)
        throw io_error("read_cache: unsupported version in " + path);
    SieveTables t;
    get(&t.limit, sizeof t.limit, 1);
    if (t.limit < 1 || t.limit > 0xFFFFFFFFull)
        throw io_error("read_cache: implausible limit in " + path);
    t.is_prime.assign(t.limit + 1, 0);
    t.mu.assign(t.limit + 1, 0);
    t.lambda.assign(t.limit + 1, 0.0);
    t.spf.assign(t.limit + 1, 0);
    get(t.is_prime.data() + 1, 1, t.limit);
    get(t.mu.data() + 1, 1, t.limit);
    get(t.lambda.data() + 1, sizeof(double), t.limit);
    get(t.spf.data() + 1, sizeof(std::uint32_t), t.limit);
    return t;
}

} // namespace arithmos
