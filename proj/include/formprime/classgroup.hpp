#ifndef FORMPRIME_CLASSGROUP_HPP
#define FORMPRIME_CLASSGROUP_HPP

#include <memory>
#include <string>
#include <vector>

#include "formprime/qform.hpp"

namespace formprime {

/* Isomorphism type of a finite abelian group: invariant factors in
 * ascending order, each dividing the next; empty for the trivial group. */
struct GroupType {
    std::vector<i64> invariant_factors;

    i64 order() const;
    i64 exponent() const { return invariant_factors.empty() ? 1 : invariant_factors.back(); }
    bool divides_two_dots_two_four() const;
    std::string str() const; // "(2,2,4)", trivial prints "(1)"

    friend bool operator==(const GroupType&, const GroupType&) = default;
};

/* Canonical invariant factors of a direct sum of cyclic groups of the
 * given orders. */
GroupType invariant_factors_from_cyclic(const std::vector<i64>& cyclic_orders);

GroupType parse_group_type(std::string_view text);

/* Gauss composition of primitive forms of discriminant D; the group law
 * on SL2-reduced classes. */
ReducedForm compose(const Form& q1, const Form& q2, i64 D);

/* The form class group of the order of discriminant D, with elements the
 * primitive SL2-reduced forms.  Immutable after construction. */
class ClassGroup {
  public:
    ClassGroup(i64 D, const PrimeTable& pt);
    explicit ClassGroup(i64 D);

    i64 discriminant() const noexcept { return D_; }
    i64 h() const noexcept { return static_cast<i64>(elements_.size()); }
    const std::vector<ReducedForm>& elements() const noexcept { return elements_; }
    const ReducedForm& element(int i) const { return elements_.at(static_cast<std::size_t>(i)); }

    int identity() const noexcept { return identity_; }
    int index_of(const ReducedForm& q) const; // throws domain_error if absent
    int compose(int i, int j) const;
    int inverse(int i) const;
    int power(int i, i64 e) const;
    int order_of_index(int i) const;

  private:
    void verify_axioms() const;

    i64 D_;
    std::vector<ReducedForm> elements_; // sorted by (a,b,c)
    int identity_ = -1;
};

/* Shared, cached construction; pairing re-queries the same discriminants
 * repeatedly.  Insert-once under an internal lock. */
std::shared_ptr<const ClassGroup> class_group(i64 D);

/* h(D) by direct enumeration, without building the group. */
i64 class_number(i64 D, const PrimeTable& pt);

GroupType group_type(const ClassGroup& g);

/* Exponent divides 4 and the set of squares has at most 2 elements. */
bool is_type_dividing_224(const ClassGroup& g);

/* h(d f^2) from h(d) by the conductor formula
 *   h(D) = h(d) f prod_{p | f} (1 - (d|p)/p) / [unit index],
 * unit index 3 for d = -3, f > 1 and 2 for d = -4, f > 1. */
i64 h_formula(i64 d, i64 f);
i64 h_formula(i64 d, i64 f, i64 h_d);

/* Structure of (A/p^e A)* / (Z/p^e Z)* for A the maximal order of
 * discriminant d. */
GroupType local_unit_quotient(i64 d, i64 p, int e);

int order_of(const ReducedForm& q, const ClassGroup& g);

} // namespace formprime

#endif
