#ifndef FORMPRIME_QFORM_HPP
#define FORMPRIME_QFORM_HPP

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "formprime/arith.hpp"

namespace formprime {

/* Integral binary quadratic form a x^2 + b xy + c y^2, written "a,b,c".
 * Classification entry points require positive definite primitive forms;
 * the plain struct itself does not enforce that. */
struct Form {
    i64 a = 0;
    i64 b = 0;
    i64 c = 0;

    friend auto operator<=>(const Form&, const Form&) = default;
};

i64 discriminant(const Form& q);
bool is_positive_definite(const Form& q);
bool is_primitive(const Form& q);

enum class Reduction { SL2, GL2 };

/* A form in canonical position.
 *   SL2: -a < b <= a <= c, and b >= 0 when a = c.
 *        (Equivalently |b| <= a <= c with b >= 0 at either boundary.)
 *   GL2: 0 <= b <= a <= c.
 * Instances come out of reduce_sl2 / reduce_gl2 / enumerate_reduced. */
class ReducedForm {
  public:
    ReducedForm() = default; // the unit form <1,0,1>

    i64 a() const noexcept { return q_.a; }
    i64 b() const noexcept { return q_.b; }
    i64 c() const noexcept { return q_.c; }
    Reduction flavor() const noexcept { return flavor_; }
    const Form& form() const noexcept { return q_; }
    i64 disc() const noexcept { return q_.b * q_.b - 4 * q_.a * q_.c; }

    friend bool operator==(const ReducedForm& x, const ReducedForm& y)
    {
        return x.q_ == y.q_;
    }
    friend auto operator<=>(const ReducedForm& x, const ReducedForm& y)
    {
        return x.q_ <=> y.q_;
    }

    /* For callers that already hold a reduced triple (table loaders,
     * bindings); verifies the canonical position. */
    static ReducedForm checked(const Form& q, Reduction flavor);

  private:
    ReducedForm(const Form& q, Reduction flavor) : q_(q), flavor_(flavor) {}

    Form q_{1, 0, 1};
    Reduction flavor_ = Reduction::GL2;

    friend ReducedForm reduce_sl2(const Form&);
    friend ReducedForm reduce_gl2(const Form&);
    friend ReducedForm gl2_of(const ReducedForm&);
    friend ReducedForm sl2_of(const ReducedForm&);
};

bool is_reduced(const Form& q, Reduction flavor);

/* Canonical representative properly equivalent to q; idempotent. */
ReducedForm reduce_sl2(const Form& q);

/* GL2 representative: the SL2 one with |b|. */
ReducedForm reduce_gl2(const Form& q);

ReducedForm gl2_of(const ReducedForm& q);
ReducedForm sl2_of(const ReducedForm& q);

/* All SL2-reduced forms of discriminant D, sorted by (a, b, c).
 * primitive_only = false also lists imprimitive forms (for class-number
 * cross-checks only). */
std::vector<ReducedForm> enumerate_reduced(i64 D, bool primitive_only,
                                           const PrimeTable& pt);
std::vector<ReducedForm> enumerate_reduced(i64 D, bool primitive_only);

/* Does q represent n (over all integer pairs)?  n >= 1. */
bool represents(const Form& q, i64 n);

/* Bit p set iff p is a prime <= limit represented by q.  Walks the values
 * of q over the ellipse q(x,y) <= limit rather than testing per prime. */
std::vector<bool> represented_primes(const Form& q, i64 limit, const PrimeTable& pt);

/* Primes <= limit represented by q, ascending. */
std::vector<i64> represented_prime_list(const Form& q, i64 limit, const PrimeTable& pt);

/* Text syntax "a,b,c", optionally wrapped in <...>. */
Form parse_form(std::string_view text);
std::string to_string(const Form& q);

} // namespace formprime

#endif
