#include "formprime/qform.hpp"

#include <algorithm>
#include <charconv>

namespace formprime {

i64 discriminant(const Form& q)
{
    i128 d = i128(q.b) * q.b - i128(4) * q.a * q.c;
    return narrow(d);
}

bool is_positive_definite(const Form& q)
{
    return q.a > 0 && discriminant(q) < 0;
}

bool is_primitive(const Form& q)
{
    return gcd3(q.a, q.b, q.c) == 1;
}

bool is_reduced(const Form& q, Reduction flavor)
{
    if (!is_positive_definite(q))
        return false;
    if (flavor == Reduction::GL2)
        return 0 <= q.b && q.b <= q.a && q.a <= q.c;
    if (!(-q.a < q.b && q.b <= q.a && q.a <= q.c))
        return false;
    return q.a != q.c || q.b >= 0;
}

ReducedForm ReducedForm::checked(const Form& q, Reduction flavor)
{
    if (!is_reduced(q, flavor))
        throw domain_error("form " + to_string(q) + " is not in canonical position");
    return ReducedForm(q, flavor);
}

namespace {

/* Shift b into (-a, a] and fix c accordingly. */
void normalize(i64& a, i64& b, i64& c)
{
    if (-a < b && b <= a)
        return;
    i128 twoa = i128(2) * a;
    i128 r = i128(b) % twoa;
    if (r > a)
        r -= twoa;
    else if (r <= -i128(a))
        r += twoa;
    i128 q = (i128(b) - r) / twoa; // b = 2a q + r
    // c' = c - q (b + r) / 2
    i128 cc = i128(c) - q * ((i128(b) + r) / 2);
    b = narrow(r);
    c = narrow(cc);
}

} // namespace

ReducedForm reduce_sl2(const Form& qin)
{
    if (!is_positive_definite(qin))
        throw domain_error("reduction requires a positive definite form (got " +
                           to_string(qin) + ")");
    i64 a = qin.a, b = qin.b, c = qin.c;
    normalize(a, b, c);
    while (a > c) {
        std::swap(a, c);
        b = -b;
        normalize(a, b, c);
    }
    if (a == c && b < 0)
        b = -b;
    return ReducedForm(Form{a, b, c}, Reduction::SL2);
}

ReducedForm reduce_gl2(const Form& qin)
{
    ReducedForm r = reduce_sl2(qin);
    Form q = r.form();
    if (q.b < 0)
        q.b = -q.b;
    return ReducedForm(q, Reduction::GL2);
}

ReducedForm gl2_of(const ReducedForm& q)
{
    Form f = q.form();
    if (f.b < 0)
        f.b = -f.b;
    return ReducedForm(f, Reduction::GL2);
}

ReducedForm sl2_of(const ReducedForm& q)
{
    return reduce_sl2(q.form());
}

std::vector<ReducedForm> enumerate_reduced(i64 D, bool primitive_only,
                                           const PrimeTable& pt)
{
    if (!is_discriminant(D))
        throw domain_error("enumeration requires a negative discriminant = 0,1 mod 4");
    std::vector<ReducedForm> out;
    for (i64 b = mod_floor(D, 2); b * b * 3 <= -D; b += 2) {
        i64 n = narrow((i128(b) * b - D) / 4); // = a*c
        for (i64 a : factorize(n, pt).divisors()) {
            if (a < b)
                continue;
            if (a * a > n)
                break;
            i64 c = n / a;
            if (a == 0 || c < a)
                continue;
            if (primitive_only && gcd3(a, b, c) != 1)
                continue;
            out.push_back(ReducedForm::checked(Form{a, b, c}, Reduction::SL2));
            bool boundary = (b == 0 || b == a || a == c);
            if (!boundary)
                out.push_back(ReducedForm::checked(Form{a, -b, c}, Reduction::SL2));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ReducedForm> enumerate_reduced(i64 D, bool primitive_only)
{
    i64 cap = std::max<i64>(isqrt(-D) + 2, 16);
    PrimeTable pt(cap);
    return enumerate_reduced(D, primitive_only, pt);
}

bool represents(const Form& q, i64 n)
{
    if (!is_positive_definite(q))
        throw domain_error("representation test requires a positive definite form");
    if (n < 1)
        return false;
    i64 D = discriminant(q);
    // q(x,y) = n  =>  (2a x + b y)^2 = D y^2 + 4 a n, so |y| <= sqrt(4an/|D|)
    i64 ymax = isqrt(narrow(i128(4) * q.a * n / (-D)));
    for (i64 y = 0; y <= ymax; ++y) {
        i128 disc_x = i128(D) * y * y + i128(4) * q.a * n;
        if (disc_x < 0)
            continue;
        i64 t = isqrt(narrow(disc_x));
        if (i128(t) * t != disc_x)
            continue;
        for (int sign = 0; sign < (t == 0 ? 1 : 2); ++sign) {
            i64 tt = sign == 0 ? t : -t;
            i64 num = tt - q.b * y;
            if (num % (2 * q.a) == 0)
                return true;
        }
    }
    return false;
}

std::vector<bool> represented_primes(const Form& q, i64 limit, const PrimeTable& pt)
{
    if (!is_positive_definite(q))
        throw domain_error("prime sieve requires a positive definite form");
    if (limit < 2)
        throw domain_error("limit must be at least 2");
    if (limit > pt.limit())
        throw resource_error("prime table smaller than requested limit");

    std::vector<bool> hit(static_cast<std::size_t>(limit) + 1, false);
    i64 D = discriminant(q);
    i64 ymax = isqrt(narrow(i128(4) * q.a * limit / (-D)));
    for (i64 y = 0; y <= ymax; ++y) {
        i128 disc_x = i128(D) * y * y + i128(4) * q.a * limit;
        if (disc_x < 0)
            continue;
        i64 t = isqrt(narrow(disc_x));
        // x in [(-by - t)/(2a), (-by + t)/(2a)]
        i64 xlo = narrow((-i128(q.b) * y - t) / (2 * q.a) - 1);
        i64 xhi = narrow((-i128(q.b) * y + t) / (2 * q.a) + 1);
        if (y == 0)
            xlo = std::max<i64>(xlo, 1);
        for (i64 x = xlo; x <= xhi; ++x) {
            i128 v = i128(q.a) * x * x + i128(q.b) * x * y + i128(q.c) * y * y;
            if (v < 2 || v > limit)
                continue;
            i64 vv = static_cast<i64>(v);
            if (pt.is_prime(vv))
                hit[static_cast<std::size_t>(vv)] = true;
        }
    }
    return hit;
}

std::vector<i64> represented_prime_list(const Form& q, i64 limit, const PrimeTable& pt)
{
    std::vector<bool> hit = represented_primes(q, limit, pt);
    std::vector<i64> out;
    for (i64 p : pt.primes()) {
        if (p > limit)
            break;
        if (hit[static_cast<std::size_t>(p)])
            out.push_back(p);
    }
    return out;
}

Form parse_form(std::string_view text)
{
    std::string_view s = text;
    auto strip = [&](char open, char close) {
        if (s.size() >= 2 && s.front() == open && s.back() == close) {
            s.remove_prefix(1);
            s.remove_suffix(1);
        }
    };
    strip('<', '>');
    strip('(', ')');
    i64 vals[3];
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
        while (pos < s.size() && s[pos] == ' ')
            ++pos;
        std::size_t end = i < 2 ? s.find(',', pos) : s.size();
        if (end == std::string_view::npos)
            throw domain_error("form syntax is a,b,c (got '" + std::string(text) + "')");
        std::string_view tok = s.substr(pos, end - pos);
        while (!tok.empty() && tok.back() == ' ')
            tok.remove_suffix(1);
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), vals[i]);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
            throw domain_error("form syntax is a,b,c (got '" + std::string(text) + "')");
        pos = end + 1;
    }
    return Form{vals[0], vals[1], vals[2]};
}

std::string to_string(const Form& q)
{
    return std::to_string(q.a) + "," + std::to_string(q.b) + "," + std::to_string(q.c);
}

} // namespace formprime
