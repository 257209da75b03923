#include "formprime/arith.hpp"

#include <algorithm>
#include <cmath>

namespace formprime {

PrimeTable::PrimeTable(i64 limit) : limit_(limit)
{
    if (limit < 2)
        throw domain_error("sieve limit must be at least 2");
    if (limit > kMaxSieveLimit)
        throw resource_error("sieve limit exceeds memory budget");

    bits_.assign(static_cast<std::size_t>(limit) + 1, true);
    bits_[0] = bits_[1] = false;
    for (i64 p = 2; p * p <= limit; ++p) {
        if (!bits_[static_cast<std::size_t>(p)])
            continue;
        for (i64 m = p * p; m <= limit; m += p)
            bits_[static_cast<std::size_t>(m)] = false;
    }
    primes_.reserve(limit > 100 ? static_cast<std::size_t>(
                        1.2 * static_cast<double>(limit) / std::log(static_cast<double>(limit)))
                                : 32);
    for (i64 n = 2; n <= limit; ++n)
        if (bits_[static_cast<std::size_t>(n)])
            primes_.push_back(n);
}

i64 PrimeTable::count_leq(i64 n) const
{
    auto it = std::upper_bound(primes_.begin(), primes_.end(), n);
    return static_cast<i64>(it - primes_.begin());
}

int kronecker(i64 a, i64 n) noexcept
{
    if (n == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    if (a % 2 == 0 && n % 2 == 0)
        return 0;

    int k = 1;
    int twos = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++twos;
    }
    if (twos % 2 == 1) {
        i64 am8 = mod_floor(a, 8);
        if (am8 == 3 || am8 == 5)
            k = -k;
    }
    if (n < 0) {
        n = -n;
        if (a < 0)
            k = -k;
    }
    // n odd and positive from here on; standard Jacobi recursion
    a = mod_floor(a, n);
    while (a != 0) {
        twos = 0;
        while (a % 2 == 0) {
            a /= 2;
            ++twos;
        }
        if (twos % 2 == 1) {
            i64 nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5)
                k = -k;
        }
        if (a % 4 == 3 && n % 4 == 3)
            k = -k;
        i64 t = n % a;
        n = a;
        a = t;
    }
    return n == 1 ? k : 0;
}

bool is_prime(i64 n)
{
    if (n < 2)
        return false;
    if (n % 2 == 0)
        return n == 2;
    if (n % 3 == 0)
        return n == 3;
    for (i64 p = 5; p * p <= n; p += 6) {
        if (n % p == 0 || n % (p + 2) == 0)
            return false;
    }
    return true;
}

i64 p_star(i64 p)
{
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw domain_error("p_star requires an odd prime");
    return p % 4 == 1 ? p : -p;
}

int Factorization::exponent_of(i64 p) const
{
    for (const auto& [q, e] : factors)
        if (q == p)
            return e;
    return 0;
}

bool Factorization::squarefree() const
{
    for (const auto& [q, e] : factors)
        if (e > 1)
            return false;
    return true;
}

std::vector<i64> Factorization::divisors() const
{
    std::vector<i64> divs{1};
    for (const auto& [p, e] : factors) {
        std::size_t base = divs.size();
        i64 pe = 1;
        for (int i = 0; i < e; ++i) {
            pe = mul_checked(pe, p);
            for (std::size_t j = 0; j < base; ++j)
                divs.push_back(mul_checked(divs[j], pe));
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

namespace {

Factorization factorize_with(i64 n, const std::vector<i64>* primes)
{
    if (n < 1)
        throw domain_error("factorize requires a positive integer");
    Factorization fact;
    fact.n = n;
    i64 m = n;
    auto strip = [&](i64 p) {
        if (m % p != 0)
            return;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        fact.factors.emplace_back(p, e);
    };
    if (primes) {
        for (i64 p : *primes) {
            if (p * p > m)
                break;
            strip(p);
        }
        // Fall through to trial division if the table was too short.
    }
    i64 p = fact.factors.empty() ? 2 : fact.factors.back().first + 1;
    if (p < 2)
        p = 2;
    for (; p * p <= m; ++p)
        strip(p);
    if (m > 1)
        fact.factors.emplace_back(m, 1);
    return fact;
}

} // namespace

Factorization factorize(i64 n)
{
    return factorize_with(n, nullptr);
}

Factorization factorize(i64 n, const PrimeTable& pt)
{
    return factorize_with(n, &pt.primes());
}

bool is_discriminant(i64 D)
{
    return D < 0 && (mod_floor(D, 4) == 0 || mod_floor(D, 4) == 1);
}

Decomposition fundamental_decomposition(i64 D)
{
    if (!is_discriminant(D))
        throw domain_error("discriminant must be negative and 0 or 1 mod 4");
    Factorization fact = factorize(-D);
    i64 m = -1; // squarefree part of D, with sign
    i64 s = 1;  // D = m * s^2
    for (const auto& [p, e] : fact.factors) {
        if (e % 2 == 1)
            m = mul_checked(m, p);
        for (int i = 0; i < e / 2; ++i)
            s = mul_checked(s, p);
    }
    if (mod_floor(m, 4) == 1)
        return { m, s };
    // m = 2,3 mod 4: fundamental discriminant is 4m, and s must be even.
    return { mul_checked(4, m), s / 2 };
}

bool is_fundamental(i64 d)
{
    if (!is_discriminant(d))
        return false;
    if (mod_floor(d, 4) == 1)
        return factorize(-d).squarefree();
    i64 m = d / 4;
    i64 mm4 = mod_floor(m, 4);
    return (mm4 == 2 || mm4 == 3) && factorize(-m).squarefree();
}

} // namespace formprime
