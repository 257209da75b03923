#ifndef FORMPRIME_ARITH_HPP
#define FORMPRIME_ARITH_HPP

#include <utility>
#include <vector>

#include "formprime/ints.hpp"

namespace formprime {

/* Sieves larger than this are refused rather than silently thrashing. */
constexpr i64 kMaxSieveLimit = 400'000'000;

/* Eratosthenes table, immutable after construction and safe to share
 * across threads. */
class PrimeTable {
  public:
    explicit PrimeTable(i64 limit);

    i64 limit() const noexcept { return limit_; }

    bool is_prime(i64 n) const noexcept
    {
        return n >= 0 && n <= limit_ && bits_[static_cast<std::size_t>(n)];
    }

    const std::vector<i64>& primes() const noexcept { return primes_; }

    /* pi(n) for n <= limit. */
    i64 count_leq(i64 n) const;

  private:
    i64 limit_;
    std::vector<bool> bits_;
    std::vector<i64> primes_;
};

/* Full Kronecker symbol (a|n).  Conventions: (a|2) is 0 for even a and
 * (-1)^((a^2-1)/8) otherwise; (a|-1) is +1 for a >= 0 and -1 for a < 0;
 * (a|0) is 1 iff a = +-1. */
int kronecker(i64 a, i64 n) noexcept;

/* Trial-division primality; inputs in this project are modest. */
bool is_prime(i64 n);

/* p if p = 1 mod 4, -p if p = 3 mod 4.  Requires p an odd prime. */
i64 p_star(i64 p);

struct Factorization {
    i64 n = 1;
    std::vector<std::pair<i64, int>> factors; // (prime, exponent), primes ascending

    /* Exponent of p, 0 if absent. */
    int exponent_of(i64 p) const;
    /* Number of distinct prime factors. */
    int omega() const { return static_cast<int>(factors.size()); }
    bool squarefree() const;
    /* All positive divisors, ascending. */
    std::vector<i64> divisors() const;
};

Factorization factorize(i64 n);
Factorization factorize(i64 n, const PrimeTable& pt);

struct Decomposition {
    i64 d; // fundamental discriminant (< 0)
    i64 f; // conductor (>= 1),  D = d * f^2
};

/* Splits a negative discriminant D = 0,1 mod 4 into fundamental part and
 * conductor. */
Decomposition fundamental_decomposition(i64 D);

bool is_discriminant(i64 D);
bool is_fundamental(i64 d);

} // namespace formprime

#endif
