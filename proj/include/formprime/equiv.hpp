#ifndef FORMPRIME_EQUIV_HPP
#define FORMPRIME_EQUIV_HPP

#include <optional>
#include <vector>

#include "formprime/classgroup.hpp"
#include "formprime/genus.hpp"

namespace formprime {

struct ClassMember {
    ReducedForm form; // GL2-reduced
    i64 D = 0;
    i64 d = 0;
    i64 f = 0;
    GroupType cl_type;
    std::vector<i64> exceptional; // primes this member represents but some other member misses
};

/* A set of forms that represent the same primes outside a finite set,
 * together with its shared genus field and exceptional primes. */
struct EquivClass {
    std::vector<ClassMember> members; // sorted by (|D|, a, b, c)
    GenusBasis genus;
    std::vector<i64> exceptional; // union of the members' exceptional primes

    std::vector<i64> delta() const;          // distinct fundamental discriminants, |d| ascending
    std::vector<i64> discriminants() const;  // distinct discriminants, |D| ascending
};

/* Image of a class under the restriction map between class groups of the
 * same fundamental discriminant, computed through a represented prime. */
ReducedForm restrict_form(const ReducedForm& q, i64 target_D, const PrimeTable& pt);

/* A form of discriminant 4D restricting to q.  Constructive when q has
 * b = 0, b = a or a = c; otherwise found by fiber search. */
std::optional<ReducedForm> two_lift(const ReducedForm& q);

/* All forms with the same fundamental discriminant and different
 * discriminant representing almost the same primes as q. */
std::vector<ReducedForm> same_d_partners(const ReducedForm& q);

struct CrossPair {
    ReducedForm q1;
    i64 D1;
    ReducedForm q2;
    i64 D2;
};

/* All unordered pairs with different fundamental discriminants drawn from
 * the given orders (all of which must have class group of type dividing
 * (2,...,2,4)) that represent almost the same primes.  Order analysis runs
 * on the worker pool; output order does not depend on the worker count. */
std::vector<CrossPair> cross_d_pairs(const std::vector<Decomposition>& discs,
                                     const PrimeTable& pt, int workers = 1);

/* Transitive closure of the pair relation: the classes with at least two
 * fundamental discriminants, annotated with genus span and exceptional
 * primes. */
std::vector<EquivClass> build_classes(const std::vector<Decomposition>& discs,
                                      const PrimeTable& pt, int workers = 1);

/* The two exceptional single-discriminant chains (d = -3 and d = -4). */
std::vector<EquivClass> special_single_discriminant_classes(const PrimeTable& pt);

/* Primes dividing some member's discriminant that are represented by some
 * members and missed by others.  Also the union of members' exceptional
 * lists. */
std::vector<i64> exceptional_set(const EquivClass& c);

/* Fills per-member and class-level exceptional primes. */
void annotate_exceptional(EquivClass& c);

/* GL2 class representatives (indices into g.elements() with b >= 0). */
std::vector<int> gl2_class_indices(const ClassGroup& g);

} // namespace formprime

#endif
