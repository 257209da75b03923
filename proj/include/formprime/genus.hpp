#ifndef FORMPRIME_GENUS_HPP
#define FORMPRIME_GENUS_HPP

#include <string>
#include <vector>

#include "formprime/qform.hpp"

namespace formprime {

/* The genus class field of the order of discriminant D = d f^2, encoded
 * as a span of squarefree radicands inside the square-class group of Q.
 * Field equality and subfield tests become linear algebra over F2; the
 * canonical basis is the reduced echelon form over the coordinate order
 * (-1, 2, 3, 5, 7, ...). */
class GenusBasis {
  public:
    GenusBasis() = default; // empty, invalid; assigned from genus_basis()

    i64 d() const noexcept { return d_; }
    i64 f() const noexcept { return f_; }
    i64 D() const noexcept { return D_; }

    /* Raw generating radicands: the field generator itself, p* for each
     * odd prime p | D, and the 2-part extras dictated by (d mod 8, f). */
    const std::vector<i64>& generators() const noexcept { return generators_; }

    /* Unique echelonized basis, as radicands sorted by pivot coordinate. */
    const std::vector<i64>& canonical() const noexcept { return canonical_; }

    std::size_t dimension() const noexcept { return canonical_.size(); }

    /* Is the squarefree radicand m in the span? */
    bool contains(i64 m) const;

    /* Generators in table notation: -1 if present, one of +-2, then p*
     * for each odd prime p | D ascending.  Spans the same subgroup as
     * canonical(). */
    std::vector<i64> display_generators() const;

    /* "Q[-1, 2, -3, -11]" */
    std::string str() const;

    friend bool operator==(const GenusBasis& x, const GenusBasis& y)
    {
        return x.canonical_ == y.canonical_;
    }

  private:
    friend GenusBasis genus_basis(i64 d, i64 f);

    i64 d_ = 0, f_ = 0, D_ = 0;
    std::vector<i64> generators_;
    std::vector<i64> canonical_;
    std::vector<i64> odd_primes_; // odd primes dividing D, ascending
};

GenusBasis genus_basis(i64 d, i64 f);

bool genus_field_equal(const GenusBasis& b1, const GenusBasis& b2);

/* Genus character values of a form at its witness prime: the vector of
 * Kronecker symbols of the canonical generators at the smallest prime
 * coprime to 2D represented by the form.  Constant on a genus. */
struct Signature {
    std::vector<i64> basis;  // canonical radicands the values align to
    std::vector<int> values; // +1 / -1
    i64 witness_prime = 0;

    /* Radicands of the subspan on which the character is trivial (the
     * fixed field of the corresponding involution), echelonized. */
    std::vector<i64> fixed_field() const;

    friend bool operator==(const Signature& x, const Signature& y)
    {
        return x.basis == y.basis && x.values == y.values;
    }
};

Signature signature(const ReducedForm& q, const GenusBasis& basis, const PrimeTable& pt);

/* Number of genus characters of discriminant D: the number of genera is
 * 2^(mu-1), and the genus span has dimension mu. */
int genus_character_count(i64 D);

/* Squarefree radicand of the product m1 m2 modulo squares. */
i64 radicand_product(i64 m1, i64 m2);

/* Squarefree radicand of a discriminant (d itself for d = 1 mod 4,
 * d/4 otherwise). */
i64 radicand_of_discriminant(i64 d);

std::string genus_span_string(const std::vector<i64>& radicands);

} // namespace formprime

#endif
