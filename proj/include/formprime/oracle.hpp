#ifndef FORMPRIME_ORACLE_HPP
#define FORMPRIME_ORACLE_HPP

#include <vector>

#include "formprime/equiv.hpp"

namespace formprime {

/* Empirical verification by pure sieving; nothing here consults class
 * groups or genus data, so it independently checks the algebraic path. */

struct MemberVerification {
    ReducedForm form;
    i64 D = 0;
    i64 represented_count = 0;  // primes <= limit represented
    std::vector<i64> differing; // primes where this member disagrees with another
};

struct ClassVerification {
    i64 limit = 0;
    std::vector<MemberVerification> members;
    std::vector<i64> observed_exceptional; // union of pairwise differences
    bool pass = false;                     // differences lie inside the class's E
};

ClassVerification verify_class(const EquivClass& c, i64 limit, const PrimeTable& pt,
                               int workers = 1);

struct DensityResult {
    i64 represented = 0;
    i64 primes_total = 0;
    double observed = 0.0;
    double expected = 0.0; // 1/(2h) for order <= 2, 1/h otherwise
};

DensityResult density_check(const ReducedForm& q, i64 limit, const PrimeTable& pt);

/* First distinguishing primes <= limit represented by exactly one of the
 * two forms; empty means indistinguishable at this limit. */
std::vector<i64> falsify_pair(const Form& q1, const Form& q2, i64 limit,
                              const PrimeTable& pt, std::size_t max_count = 10);

} // namespace formprime

#endif
