#include "formprime/classgroup.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <unordered_map>

namespace formprime {

i64 GroupType::order() const
{
    i64 n = 1;
    for (i64 m : invariant_factors)
        n = mul_checked(n, m);
    return n;
}

bool GroupType::divides_two_dots_two_four() const
{
    int fours = 0;
    for (i64 m : invariant_factors) {
        if (m == 2)
            continue;
        if (m == 4)
            ++fours;
        else
            return false;
    }
    return fours <= 1;
}

std::string GroupType::str() const
{
    if (invariant_factors.empty())
        return "(1)";
    std::string out = "(";
    for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(invariant_factors[i]);
    }
    return out + ")";
}

GroupType invariant_factors_from_cyclic(const std::vector<i64>& cyclic_orders)
{
    // Collect prime-power components, then zip the largest together.
    std::map<i64, std::vector<i64>> by_prime; // prime -> exponents, descending
    for (i64 n : cyclic_orders) {
        if (n < 1)
            throw domain_error("cyclic order must be positive");
        for (const auto& [p, e] : factorize(n).factors)
            by_prime[p].push_back(e);
    }
    std::size_t slots = 0;
    for (auto& [p, exps] : by_prime) {
        std::sort(exps.rbegin(), exps.rend());
        slots = std::max(slots, exps.size());
    }
    std::vector<i64> factors(slots, 1);
    for (const auto& [p, exps] : by_prime) {
        for (std::size_t i = 0; i < exps.size(); ++i) {
            i64 pe = 1;
            for (i64 k = 0; k < exps[i]; ++k)
                pe = mul_checked(pe, p);
            factors[i] = mul_checked(factors[i], pe);
        }
    }
    std::reverse(factors.begin(), factors.end()); // ascending
    GroupType t;
    for (i64 m : factors)
        if (m > 1)
            t.invariant_factors.push_back(m);
    return t;
}

GroupType parse_group_type(std::string_view text)
{
    GroupType t;
    std::string buf;
    for (char ch : text) {
        if (ch >= '0' && ch <= '9') {
            buf += ch;
        } else if (!buf.empty()) {
            t.invariant_factors.push_back(std::stoll(buf));
            buf.clear();
        }
    }
    if (!buf.empty())
        t.invariant_factors.push_back(std::stoll(buf));
    if (t.invariant_factors.size() == 1 && t.invariant_factors[0] == 1)
        t.invariant_factors.clear();
    return t;
}

ReducedForm compose(const Form& q1in, const Form& q2in, i64 D)
{
    if (!is_discriminant(D))
        throw domain_error("composition requires a negative discriminant");
    if (discriminant(q1in) != D || discriminant(q2in) != D)
        throw domain_error("composition requires forms of the given discriminant");
    if (!is_primitive(q1in) || !is_primitive(q2in))
        throw domain_error("composition requires primitive forms");

    Form q1 = reduce_sl2(q1in).form();
    Form q2 = reduce_sl2(q2in).form();

    i64 s = narrow((i128(q1.b) + q2.b) / 2);
    ExtGcd g01 = ext_gcd(q1.a, q2.a);
    ExtGcd g2 = ext_gcd(g01.g, s); // g2.g = gcd(a1, a2, s)
    i64 e = g2.g;
    i128 v = i128(g01.y) * g2.x; // coefficient of a2 in a1*u + a2*v + s*w = e
    i128 w = g2.y;

    i64 a2e = q2.a / e;
    i64 A = mul_checked(q1.a / e, a2e);
    // Only B mod 2A matters; shrink the inner factor mod A first.
    i128 inner = ((i128(s) - q2.b) * v - w * q2.c) % i128(A);
    i128 B = q2.b + 2 * inner * a2e;
    i128 twoA = 2 * i128(A);
    B %= twoA;
    if (B < 0)
        B += twoA;
    i128 C = (B * B - D) / (4 * i128(A));
    return reduce_sl2(Form{A, narrow(B), narrow(C)});
}

namespace {

i64 principal_c(i64 D)
{
    return mod_floor(D, 2) == 0 ? -D / 4 : (1 - D) / 4;
}

Form principal_form(i64 D)
{
    i64 parity = mod_floor(D, 2);
    return Form{1, parity, principal_c(D)};
}

} // namespace

ClassGroup::ClassGroup(i64 D, const PrimeTable& pt) : D_(D)
{
    elements_ = enumerate_reduced(D, true, pt);
    if (elements_.empty())
        throw domain_error("no primitive reduced forms of discriminant " + std::to_string(D));
    identity_ = index_of(ReducedForm::checked(principal_form(D), Reduction::SL2));
#ifndef NDEBUG
    verify_axioms();
#endif
}

ClassGroup::ClassGroup(i64 D)
    : ClassGroup(D, PrimeTable(std::max<i64>(isqrt(-D) + 2, 16)))
{
}

int ClassGroup::index_of(const ReducedForm& q) const
{
    ReducedForm key = sl2_of(q);
    auto it = std::lower_bound(elements_.begin(), elements_.end(), key);
    if (it == elements_.end() || !(*it == key))
        throw domain_error("form " + to_string(q.form()) + " is not a class of discriminant " +
                           std::to_string(D_));
    return static_cast<int>(it - elements_.begin());
}

int ClassGroup::compose(int i, int j) const
{
    ReducedForm r = formprime::compose(element(i).form(), element(j).form(), D_);
    return index_of(r);
}

int ClassGroup::inverse(int i) const
{
    const Form& q = element(i).form();
    return index_of(reduce_sl2(Form{q.a, -q.b, q.c}));
}

int ClassGroup::power(int i, i64 e) const
{
    if (e < 0)
        return power(inverse(i), -e);
    int acc = identity_;
    int base = i;
    while (e > 0) {
        if (e & 1)
            acc = compose(acc, base);
        base = compose(base, base);
        e >>= 1;
    }
    return acc;
}

int ClassGroup::order_of_index(int i) const
{
    int ord = 1;
    int cur = i;
    while (cur != identity_) {
        cur = compose(cur, i);
        ++ord;
        if (ord > h())
            throw domain_error("order computation exceeded group size; composition is broken");
    }
    return ord;
}

void ClassGroup::verify_axioms() const
{
    int n = static_cast<int>(h());
    for (int i = 0; i < n; ++i) {
        if (compose(identity_, i) != i)
            throw domain_error("identity law failed in Cl(" + std::to_string(D_) + ")");
        if (compose(i, inverse(i)) != identity_)
            throw domain_error("inverse law failed in Cl(" + std::to_string(D_) + ")");
    }
    std::mt19937_64 rng(static_cast<std::uint64_t>(-D_));
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int trial = 0; trial < 32; ++trial) {
        int x = pick(rng), y = pick(rng), z = pick(rng);
        if (compose(compose(x, y), z) != compose(x, compose(y, z)))
            throw domain_error("associativity failed in Cl(" + std::to_string(D_) + ")");
        if (compose(x, y) != compose(y, x))
            throw domain_error("commutativity failed in Cl(" + std::to_string(D_) + ")");
    }
}

std::shared_ptr<const ClassGroup> class_group(i64 D)
{
    static std::mutex lock;
    static std::unordered_map<i64, std::shared_ptr<const ClassGroup>> cache;
    {
        std::lock_guard<std::mutex> guard(lock);
        auto it = cache.find(D);
        if (it != cache.end())
            return it->second;
    }
    auto built = std::make_shared<const ClassGroup>(D);
    std::lock_guard<std::mutex> guard(lock);
    auto [it, inserted] = cache.emplace(D, std::move(built));
    return it->second; // first insertion wins
}

i64 class_number(i64 D, const PrimeTable& pt)
{
    return static_cast<i64>(enumerate_reduced(D, true, pt).size());
}

GroupType group_type(const ClassGroup& g)
{
    int n = static_cast<int>(g.h());
    if (n == 1)
        return {};

    // Work down a chain of quotients.  coset[x] identifies the image of
    // element x; reps holds one preimage per coset.
    std::vector<int> coset(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        coset[static_cast<std::size_t>(i)] = i;
    std::vector<int> reps(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        reps[static_cast<std::size_t>(i)] = i;

    std::vector<i64> factors; // descending
    while (reps.size() > 1) {
        auto quotient_compose = [&](int ci, int cj) {
            return coset[static_cast<std::size_t>(
                g.compose(reps[static_cast<std::size_t>(ci)], reps[static_cast<std::size_t>(cj)]))];
        };
        int id = coset[static_cast<std::size_t>(g.identity())];
        auto quotient_order = [&](int ci) {
            int ord = 1;
            int cur = ci;
            while (cur != id) {
                cur = quotient_compose(cur, ci);
                ++ord;
            }
            return ord;
        };

        int best = id;
        i64 best_ord = 1;
        for (int ci = 0; ci < static_cast<int>(reps.size()); ++ci) {
            i64 o = quotient_order(ci);
            if (o > best_ord) {
                best_ord = o;
                best = ci;
            }
        }
        factors.push_back(best_ord);

        // Merge cosets along the cyclic subgroup generated by `best`.
        std::vector<int> shift(reps.size());
        for (int ci = 0; ci < static_cast<int>(reps.size()); ++ci)
            shift[static_cast<std::size_t>(ci)] = quotient_compose(ci, best);
        std::vector<int> canon(reps.size());
        for (int ci = 0; ci < static_cast<int>(reps.size()); ++ci) {
            int min_label = ci;
            int cur = ci;
            for (i64 k = 1; k < best_ord; ++k) {
                cur = shift[static_cast<std::size_t>(cur)];
                min_label = std::min(min_label, cur);
            }
            canon[static_cast<std::size_t>(ci)] = min_label;
        }
        // Relabel consecutively and rebuild reps.
        std::vector<int> relabel(reps.size(), -1);
        std::vector<int> new_reps;
        for (int ci = 0; ci < static_cast<int>(reps.size()); ++ci) {
            int m = canon[static_cast<std::size_t>(ci)];
            if (relabel[static_cast<std::size_t>(m)] == -1) {
                relabel[static_cast<std::size_t>(m)] = static_cast<int>(new_reps.size());
                new_reps.push_back(reps[static_cast<std::size_t>(m)]);
            }
        }
        for (int x = 0; x < n; ++x) {
            int c = coset[static_cast<std::size_t>(x)];
            coset[static_cast<std::size_t>(x)] =
                relabel[static_cast<std::size_t>(canon[static_cast<std::size_t>(c)])];
        }
        reps = std::move(new_reps);
    }

    i64 product = 1;
    for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
        if (factors[i] % factors[i + 1] != 0)
            throw domain_error("invariant factor chain broken; group structure is inconsistent");
    }
    for (i64 m : factors)
        product *= m;
    if (product != g.h())
        throw domain_error("invariant factors do not multiply to the group order");

    GroupType t;
    t.invariant_factors.assign(factors.rbegin(), factors.rend());
    return t;
}

bool is_type_dividing_224(const ClassGroup& g)
{
    int n = static_cast<int>(g.h());
    int id = g.identity();
    std::vector<int> squares;
    for (int i = 0; i < n; ++i) {
        int sq = g.compose(i, i);
        if (g.compose(sq, sq) != id)
            return false; // exponent does not divide 4
        squares.push_back(sq);
    }
    std::sort(squares.begin(), squares.end());
    squares.erase(std::unique(squares.begin(), squares.end()), squares.end());
    return squares.size() <= 2;
}

i64 h_formula(i64 d, i64 f, i64 h_d)
{
    if (!is_fundamental(d))
        throw domain_error("h_formula requires a fundamental discriminant");
    if (f < 1)
        throw domain_error("conductor must be positive");
    i64 value = h_d;
    for (const auto& [p, e] : factorize(f).factors) {
        value = mul_checked(value, p - kronecker(d, p));
        for (int i = 0; i + 1 < e; ++i)
            value = mul_checked(value, p);
    }
    i64 unit_index = 1;
    if (f > 1 && d == -3)
        unit_index = 3;
    else if (f > 1 && d == -4)
        unit_index = 2;
    if (value % unit_index != 0)
        throw domain_error("class number formula produced a non-integer");
    return value / unit_index;
}

i64 h_formula(i64 d, i64 f)
{
    PrimeTable pt(std::max<i64>(isqrt(-d) + 2, 16));
    return h_formula(d, f, class_number(d, pt));
}

GroupType local_unit_quotient(i64 d, i64 p, int e)
{
    if (!is_fundamental(d))
        throw domain_error("local unit quotient requires a fundamental discriminant");
    if (e < 1 || !is_prime(p))
        throw domain_error("local unit quotient requires a prime p and e >= 1");

    auto pow_i64 = [](i64 base, int exp) {
        i64 r = 1;
        for (int i = 0; i < exp; ++i)
            r = mul_checked(r, base);
        return r;
    };

    std::vector<i64> cyclic;
    if (p == 2) {
        switch (mod_floor(d, 8)) {
        case 1:
            if (e >= 2) {
                cyclic = { 2, pow_i64(2, e - 2) };
            }
            break;
        case 5:
            cyclic = { 3 };
            if (e >= 2) {
                cyclic.push_back(2);
                cyclic.push_back(pow_i64(2, e - 2));
            }
            break;
        case 4:
            cyclic = { 2, pow_i64(2, e - 1) };
            break;
        case 0:
            cyclic = { pow_i64(2, e) };
            break;
        default:
            throw domain_error("impossible residue of a fundamental discriminant mod 8");
        }
    } else if (p == 3) {
        switch (mod_floor(d, 3)) {
        case 1:
            cyclic = { 2, pow_i64(3, e - 1) };
            break;
        case 2:
            cyclic = { 4, pow_i64(3, e - 1) };
            break;
        default:
            if (mod_floor(d, 9) == 3)
                cyclic = { pow_i64(3, e) };
            else if (mod_floor(d, 9) == 6)
                cyclic = { 3, pow_i64(3, e - 1) };
            else
                throw domain_error("fundamental discriminant cannot be 0 mod 9");
        }
    } else {
        switch (kronecker(d, p)) {
        case 1:
            cyclic = { p - 1, pow_i64(p, e - 1) };
            break;
        case -1:
            cyclic = { p + 1, pow_i64(p, e - 1) };
            break;
        default:
            cyclic = { pow_i64(p, e) };
        }
    }
    return invariant_factors_from_cyclic(cyclic);
}

int order_of(const ReducedForm& q, const ClassGroup& g)
{
    return g.order_of_index(g.index_of(q));
}

} // namespace formprime
