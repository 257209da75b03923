#include "formprime/genus.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace formprime {

namespace {

/* Coordinates of the square-class group that can appear here: -1, 2, and
 * the odd primes dividing D.  A square class is a bitmask over them. */
struct CoordSystem {
    std::vector<i64> coords; // -1, 2, then odd primes ascending

    explicit CoordSystem(const std::vector<i64>& odd_primes)
    {
        coords = { -1, 2 };
        coords.insert(coords.end(), odd_primes.begin(), odd_primes.end());
        if (coords.size() > 63)
            throw resource_error("too many prime coordinates in genus span");
    }

    std::uint64_t mask_of(i64 m) const
    {
        std::uint64_t mask = 0;
        if (m < 0) {
            mask |= 1;
            m = -m;
        }
        if (m % 2 == 0) {
            mask |= 2;
            m /= 2;
        }
        for (std::size_t i = 2; i < coords.size() && m > 1; ++i) {
            if (m % coords[i] == 0) {
                mask |= std::uint64_t(1) << i;
                m /= coords[i];
            }
        }
        if (m != 1)
            throw domain_error("radicand has a prime outside the coordinate system");
        return mask;
    }

    i64 radicand_of(std::uint64_t mask) const
    {
        i64 m = 1;
        if (mask & 1)
            m = -1;
        if (mask & 2)
            m *= 2;
        for (std::size_t i = 2; i < coords.size(); ++i)
            if (mask & (std::uint64_t(1) << i))
                m = mul_checked(m, coords[i]);
        return m;
    }
};

/* Reduced row echelon over F2; rows sorted by pivot position. */
std::vector<std::uint64_t> rref(std::vector<std::uint64_t> rows)
{
    std::vector<std::uint64_t> basis;
    for (std::uint64_t row : rows) {
        for (std::uint64_t b : basis)
            row = std::min(row, row ^ b);
        if (row)
            basis.push_back(row);
    }
    // Back-substitute so each pivot appears in exactly one row.
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (i != j && (basis[j] ^ basis[i]) < basis[j])
                basis[j] ^= basis[i];
    std::sort(basis.begin(), basis.end(), [](std::uint64_t x, std::uint64_t y) {
        return (x & -x) < (y & -y); // by pivot = lowest set bit
    });
    return basis;
}

bool in_span(const std::vector<std::uint64_t>& basis, std::uint64_t v)
{
    for (std::uint64_t b : basis)
        v = std::min(v, v ^ b);
    return v == 0;
}

} // namespace

int genus_character_count(i64 D)
{
    if (!is_discriminant(D))
        throw domain_error("genus character count requires a discriminant");
    int r = 0;
    for (const auto& [p, e] : factorize(-D).factors)
        if (p != 2)
            ++r;
    if (mod_floor(D, 4) == 1)
        return r;
    i64 n = -D / 4;
    i64 nm8 = mod_floor(n, 8);
    if (nm8 == 3 || nm8 == 7)
        return r; // n = 3 mod 4
    if (nm8 == 0)
        return r + 2;
    return r + 1; // n = 1, 2 mod 4 or n = 4 mod 8
}

i64 radicand_product(i64 m1, i64 m2)
{
    i64 g = std::gcd(m1 < 0 ? -m1 : m1, m2 < 0 ? -m2 : m2);
    return mul_checked(m1 / g, m2 / g);
}

i64 radicand_of_discriminant(i64 d)
{
    if (!is_discriminant(d))
        throw domain_error("radicand requires a discriminant");
    return mod_floor(d, 4) == 1 ? d : d / 4;
}

GenusBasis genus_basis(i64 d, i64 f)
{
    if (!is_fundamental(d))
        throw domain_error("genus basis requires a fundamental discriminant");
    if (f < 1)
        throw domain_error("conductor must be positive");

    GenusBasis basis;
    basis.d_ = d;
    basis.f_ = f;
    basis.D_ = mul_checked(d, mul_checked(f, f));

    for (const auto& [p, e] : factorize(-basis.D_).factors)
        if (p != 2)
            basis.odd_primes_.push_back(p);

    basis.generators_.push_back(radicand_of_discriminant(d));
    for (i64 p : basis.odd_primes_)
        basis.generators_.push_back(p_star(p));
    switch (mod_floor(d, 8)) {
    case 1:
    case 5:
        if (mod_floor(f, 8) == 4) {
            basis.generators_.push_back(-1);
        } else if (f % 8 == 0) {
            basis.generators_.push_back(-1);
            basis.generators_.push_back(2);
        }
        break;
    case 4:
        if (f % 4 == 0)
            basis.generators_.push_back(2);
        break;
    case 0:
        if (f % 2 == 0)
            basis.generators_.push_back(-1);
        break;
    default:
        throw domain_error("impossible residue of a fundamental discriminant mod 8");
    }

    CoordSystem cs(basis.odd_primes_);
    std::vector<std::uint64_t> rows;
    for (i64 m : basis.generators_)
        rows.push_back(cs.mask_of(m));
    for (std::uint64_t row : rref(rows))
        basis.canonical_.push_back(cs.radicand_of(row));
    return basis;
}

bool GenusBasis::contains(i64 m) const
{
    CoordSystem cs(odd_primes_);
    std::vector<std::uint64_t> basis;
    for (i64 g : canonical_)
        basis.push_back(cs.mask_of(g));
    std::uint64_t v;
    try {
        v = cs.mask_of(m);
    } catch (const domain_error&) {
        return false; // support outside D's primes
    }
    return in_span(basis, v);
}

std::vector<i64> GenusBasis::display_generators() const
{
    std::vector<i64> out;
    if (contains(-1))
        out.push_back(-1);
    if (contains(2))
        out.push_back(2);
    else if (contains(-2))
        out.push_back(-2);
    for (i64 p : odd_primes_) {
        i64 ps = p_star(p);
        if (!contains(ps))
            throw domain_error("genus span is missing an odd ramified prime");
        out.push_back(ps);
    }
    if (out.size() != canonical_.size())
        throw domain_error("display generators do not span the genus field");
    return out;
}

std::string genus_span_string(const std::vector<i64>& radicands)
{
    std::string out = "Q[";
    for (std::size_t i = 0; i < radicands.size(); ++i) {
        if (i)
            out += ", ";
        out += std::to_string(radicands[i]);
    }
    return out + "]";
}

std::string GenusBasis::str() const
{
    return genus_span_string(display_generators());
}

bool genus_field_equal(const GenusBasis& b1, const GenusBasis& b2)
{
    return b1 == b2;
}

std::vector<i64> Signature::fixed_field() const
{
    // Subspan on which all values multiply to +1: kernel of the character.
    // Gather products of basis pairs with value -1 plus the +1 generators.
    std::vector<i64> gens;
    i64 pending = 0; // one unmatched -1 generator
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (values[i] == 1) {
            gens.push_back(basis[i]);
        } else if (pending == 0) {
            pending = basis[i];
        } else {
            gens.push_back(radicand_product(pending, basis[i]));
            pending = basis[i];
        }
    }
    // Echelonize for a canonical answer.
    std::vector<i64> odd;
    for (i64 m : gens)
        for (const auto& [p, e] : factorize(m < 0 ? -m : m).factors)
            if (p != 2)
                odd.push_back(p);
    std::sort(odd.begin(), odd.end());
    odd.erase(std::unique(odd.begin(), odd.end()), odd.end());
    CoordSystem cs(odd);
    std::vector<std::uint64_t> rows;
    for (i64 m : gens)
        rows.push_back(cs.mask_of(m));
    std::vector<i64> out;
    for (std::uint64_t row : rref(rows))
        out.push_back(cs.radicand_of(row));
    return out;
}

Signature signature(const ReducedForm& q, const GenusBasis& basis, const PrimeTable& pt)
{
    if (!is_primitive(q.form()))
        throw domain_error("signature requires a primitive form");
    i64 D = discriminant(q.form());
    if (D != basis.D())
        throw domain_error("form discriminant does not match the genus basis");

    Signature sig;
    sig.basis = basis.canonical();
    for (i64 p : pt.primes()) {
        if ((2 * D) % p == 0)
            continue;
        if (represents(q.form(), p)) {
            sig.witness_prime = p;
            break;
        }
    }
    if (sig.witness_prime == 0)
        throw resource_error("no witness prime below the table limit; enlarge the table");
    for (i64 m : sig.basis) {
        int v = kronecker(m, sig.witness_prime);
        if (v == 0)
            throw domain_error("witness prime shares a factor with a genus generator");
        sig.values.push_back(v);
    }
    return sig;
}

} // namespace formprime
