#ifndef FORMPRIME_SEARCH_HPP
#define FORMPRIME_SEARCH_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "formprime/classgroup.hpp"

namespace formprime {

/* Everything at or below this bound on |d| has been enumerated; one
 * analytic exception beyond it cannot be ruled out at any finite bound. */
constexpr i64 kFullSearchBound = 80604484; // = 4 * 67^4

struct SearchConfig {
    i64 bound_d = 100000; // max |d|
    i64 f_max = 100;
    bool full_B = false; // raise bound_d to kFullSearchBound
    int workers = 1;
    std::string checkpoint; // append-only resume file, empty = none

    i64 effective_bound() const { return full_B ? kFullSearchBound : bound_d; }
};

struct Hit {
    i64 d = 0; // fundamental discriminant
    i64 f = 1;
    i64 D = 0; // = d f^2
    GroupType type;

    friend bool operator==(const Hit&, const Hit&) = default;
};

/* Sound rejection test: false only if some prime p with p^c <= |d|/4
 * splits, which no order of exponent dividing c can tolerate. */
bool expc_prefilter(i64 d, int c);

/* All fundamental |d| <= bound with class group of type dividing
 * (2,...,2,4), ascending by |d|.  Deterministic for any worker count. */
std::vector<Hit> enumerate_fundamental_hits(const SearchConfig& cfg);

/* The nonmaximal orders over the fundamental hits: every (d, f) with
 * 2 <= f <= f_max whose class group is of type dividing (2,...,2,4). */
std::vector<Hit> enumerate_order_hits(const SearchConfig& cfg,
                                      const std::vector<Hit>& fundamentals);

/* Largest f in (f_max, scan_to] not excluded by the class number lower
 * bound h(d f^2) >= h(d) phi(f) / 3 against the 2-rank ceiling; expected
 * empty.  Logged by the search to certify the conductor cap. */
std::vector<i64> feasible_conductors_beyond(i64 d, i64 h_d, i64 f_max, i64 scan_to);

/* TSV "d<TAB>f<TAB>D<TAB>type" rows. */
void write_hits_tsv(std::ostream& out, const std::vector<Hit>& hits);
std::vector<Hit> read_hits_tsv(std::istream& in);

} // namespace formprime

#endif
