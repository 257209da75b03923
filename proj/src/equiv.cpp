#include "formprime/equiv.hpp"

#include <algorithm>
#include <functional>

#include "formprime/parallel.hpp"
#include <map>
#include <set>

namespace formprime {

std::vector<i64> EquivClass::delta() const
{
    std::vector<i64> out;
    for (const auto& m : members)
        out.push_back(m.d);
    std::sort(out.begin(), out.end(), [](i64 x, i64 y) { return -x < -y; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<i64> EquivClass::discriminants() const
{
    std::vector<i64> out;
    for (const auto& m : members)
        out.push_back(m.D);
    std::sort(out.begin(), out.end(), [](i64 x, i64 y) { return -x < -y; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<int> gl2_class_indices(const ClassGroup& g)
{
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(g.h()); ++i)
        if (g.element(i).b() >= 0)
            out.push_back(i);
    return out;
}

namespace {

i64 smallest_witness_prime(const Form& q, i64 D, const PrimeTable& pt)
{
    for (i64 p : pt.primes()) {
        if ((2 * D) % p == 0)
            continue;
        if (represents(q, p))
            return p;
    }
    throw resource_error("no witness prime below the table limit; enlarge the table");
}

} // namespace

ReducedForm restrict_form(const ReducedForm& q, i64 target_D, const PrimeTable& pt)
{
    i64 D = discriminant(q.form());
    if (!is_discriminant(target_D) || D % target_D != 0 || !is_square(D / target_D))
        throw domain_error("restriction target must divide the discriminant by a square");
    if (!is_primitive(q.form()))
        throw domain_error("restriction requires a primitive form");

    // A prime represented by q pins the image class: the restriction has
    // the same Frobenius data, so the image is the unique GL2 class of the
    // target discriminant representing that prime.
    i64 p = smallest_witness_prime(q.form(), D, pt);
    auto g = class_group(target_D);
    std::optional<ReducedForm> image;
    for (int i : gl2_class_indices(*g)) {
        ReducedForm cand = gl2_of(g->element(i));
        if (represents(cand.form(), p)) {
            if (image)
                throw domain_error("two classes of one discriminant represent the same prime");
            image = cand;
        }
    }
    if (!image)
        throw domain_error("no class of the target discriminant represents the witness prime");
    return *image;
}

std::optional<ReducedForm> two_lift(const ReducedForm& qin)
{
    if (!is_primitive(qin.form()))
        throw domain_error("lifting requires a primitive form");
    ReducedForm q = sl2_of(qin);
    i64 a = q.a(), b = q.b(), c = q.c();
    i64 D = q.disc();

    if (mod_floor(D, 2) == 0) {
        // Even discriminant: the boundary cases have explicit lifts.
        if (b == 0) {
            if (a % 2 == 1)
                return reduce_gl2(Form{a, 0, mul_checked(4, c)});
            return reduce_gl2(Form{mul_checked(4, a), 0, c}); // c odd by primitivity
        }
        if (b == a)
            return reduce_gl2(Form{mul_checked(4, a), mul_checked(2, a), c});
        if (a == c)
            return reduce_gl2(Form{a, mul_checked(2, b), mul_checked(4, a)});
    }

    // General case: search the fiber of the restriction map over q.
    i64 lifted_D = mul_checked(4, D);
    PrimeTable pt(std::max<i64>(-16 * D, 100000));
    ReducedForm target = gl2_of(q);
    std::optional<ReducedForm> best;
    auto g = class_group(lifted_D);
    for (int i : gl2_class_indices(*g)) {
        ReducedForm cand = gl2_of(g->element(i));
        if (restrict_form(cand, D, pt) == target) {
            if (!best || cand < *best)
                best = cand;
        }
    }
    return best;
}

namespace {

/* The unique partner of q one conductor step up (f -> 2f), when the pair
 * represents almost the same primes; nullopt otherwise. */
std::optional<ReducedForm> partner_up(const ReducedForm& q, const PrimeTable& pt)
{
    ReducedForm s = sl2_of(q);
    i64 D = s.disc();
    Decomposition dec = fundamental_decomposition(D);

    if (mod_floor(D, 2) == 1 && mod_floor(dec.d, 8) == 1) {
        // Restriction from 4D is an isomorphism; the fiber is one class.
        i64 up = mul_checked(4, D);
        auto g = class_group(up);
        std::optional<ReducedForm> found;
        for (int i : gl2_class_indices(*g)) {
            ReducedForm cand = gl2_of(g->element(i));
            if (restrict_form(cand, D, pt) == gl2_of(s)) {
                if (found)
                    throw domain_error("restriction fiber not a singleton where it must be");
                found = cand;
            }
        }
        if (!found)
            throw domain_error("restriction map failed to be surjective");
        return found;
    }

    if (mod_floor(D, 2) == 0 && s.b() != 0 && (s.b() == s.a() || s.a() == s.c())) {
        // Boundary forms of even discriminant lift to an order-4 class
        // generating the kernel; the lift is the unique partner.
        if (s.b() == s.a())
            return reduce_gl2(Form{mul_checked(4, s.a()), mul_checked(2, s.a()), s.c()});
        return reduce_gl2(Form{s.a(), mul_checked(2, s.b()), mul_checked(4, s.a())});
    }
    return std::nullopt;
}

/* Partner one step down (f -> f/2), when it exists. */
std::optional<ReducedForm> partner_down(const ReducedForm& q, const PrimeTable& pt)
{
    ReducedForm s = sl2_of(q);
    i64 D = s.disc();
    Decomposition dec = fundamental_decomposition(D);
    if (dec.f % 2 != 0)
        return std::nullopt;
    i64 down_D = D / 4;

    ReducedForm parent = restrict_form(gl2_of(s), down_D, pt);
    ReducedForm ps = sl2_of(parent);
    if (mod_floor(down_D, 2) == 1 && mod_floor(dec.d, 8) == 1)
        return parent;
    if (mod_floor(down_D, 2) == 0 && ps.b() != 0 && (ps.b() == ps.a() || ps.a() == ps.c())) {
        auto g = class_group(D);
        if (order_of(s, *g) == 4)
            return parent;
    }
    return std::nullopt;
}

const std::vector<std::vector<Form>>& special_chains()
{
    static const std::vector<std::vector<Form>> chains = [] {
        std::vector<std::vector<Form>> data = {
            { Form{1, 1, 1}, Form{1, 0, 3}, Form{1, 1, 7} }, // d = -3, f = 1, 2, 3
            { Form{1, 0, 1}, Form{1, 0, 4} },                // d = -4, f = 1, 2
        };
        for (const auto& chain : data) {
            i64 d = fundamental_decomposition(discriminant(chain.front())).d;
            i64 expected_f = 0;
            for (const Form& q : chain) {
                if (!is_primitive(q) || !is_reduced(q, Reduction::GL2))
                    throw domain_error("special chain entry not reduced primitive");
                Decomposition dec = fundamental_decomposition(discriminant(q));
                if (dec.d != d || dec.f <= expected_f)
                    throw domain_error("special chain entry out of order");
                expected_f = dec.f;
            }
        }
        return data;
    }();
    return chains;
}

} // namespace

std::vector<ReducedForm> same_d_partners(const ReducedForm& qin)
{
    if (!is_primitive(qin.form()))
        throw domain_error("partner search requires a primitive form");
    ReducedForm q = gl2_of(sl2_of(qin));
    i64 D = q.disc();

    std::vector<ReducedForm> out;
    // Steps that change the number of roots of unity (d = -3, -4 at
    // conductor 1) follow the finite special chains; all other steps are
    // the general conductor-doubling walk, which never fires across the
    // maximal order for these two fields (the forms there have b = 0 or
    // odd discriminant of the wrong residue).
    for (const auto& chain : special_chains()) {
        std::vector<ReducedForm> reduced;
        bool hit = false;
        for (const Form& m : chain) {
            ReducedForm r = reduce_gl2(m);
            if (r == q)
                hit = true;
            reduced.push_back(r);
        }
        if (hit) {
            std::erase(reduced, q);
            out = reduced;
            break;
        }
    }

    PrimeTable pt(std::max<i64>(-D * 4, 1000));
    ReducedForm cur = q;
    while (auto down = partner_down(cur, pt)) {
        out.push_back(*down);
        cur = *down;
    }
    cur = q;
    while (auto up = partner_up(cur, pt)) {
        out.push_back(*up);
        cur = *up;
    }
    std::sort(out.begin(), out.end(), [](const ReducedForm& x, const ReducedForm& y) {
        return std::make_tuple(-x.disc(), x.form()) < std::make_tuple(-y.disc(), y.form());
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

struct Participant {
    i64 D;
    ReducedForm form; // GL2
    Signature sig;
};

struct OrderData {
    Decomposition dec;
    i64 D;
    GenusBasis basis;
    GroupType type;
    std::vector<Participant> participants;
};

OrderData analyze_order(const Decomposition& dec, const PrimeTable& pt)
{
    OrderData data;
    data.dec = dec;
    data.D = mul_checked(dec.d, mul_checked(dec.f, dec.f));
    data.basis = genus_basis(dec.d, dec.f);

    auto g = class_group(data.D);
    if (!is_type_dividing_224(*g))
        throw domain_error("order " + std::to_string(data.D) +
                           " has class group not of type dividing (2,..,2,4)");
    data.type = group_type(*g);

    bool has_four = data.type.exponent() == 4;
    for (int i : gl2_class_indices(*g)) {
        if (has_four && g->order_of_index(i) != 4)
            continue;
        Participant part;
        part.D = data.D;
        part.form = gl2_of(g->element(i));
        part.sig = signature(part.form, data.basis, pt);
        data.participants.push_back(part);
    }
    // Within one order, a genus holds at most one participant.
    std::set<std::vector<int>> seen;
    for (const auto& p : data.participants)
        if (!seen.insert(p.sig.values).second)
            throw domain_error("two participants of one discriminant share a signature");
    return data;
}

} // namespace

std::vector<CrossPair> cross_d_pairs(const std::vector<Decomposition>& discs,
                                     const PrimeTable& pt, int workers)
{
    std::vector<OrderData> orders(discs.size());
    run_chunks(static_cast<int>(discs.size()), workers, [&](int i) {
        orders[static_cast<std::size_t>(i)] = analyze_order(discs[static_cast<std::size_t>(i)], pt);
    });

    std::map<std::vector<i64>, std::vector<std::size_t>> buckets; // canonical span -> orders
    for (std::size_t i = 0; i < orders.size(); ++i)
        buckets[orders[i].basis.canonical()].push_back(i);

    std::vector<CrossPair> pairs;
    for (const auto& [span, idxs] : buckets) {
        for (std::size_t x = 0; x < idxs.size(); ++x) {
            for (std::size_t y = x + 1; y < idxs.size(); ++y) {
                const OrderData& o1 = orders[idxs[x]];
                const OrderData& o2 = orders[idxs[y]];
                if (o1.dec.d == o2.dec.d)
                    continue;
                for (const auto& p1 : o1.participants) {
                    for (const auto& p2 : o2.participants) {
                        if (p1.sig.values == p2.sig.values)
                            pairs.push_back(CrossPair{p1.form, p1.D, p2.form, p2.D});
                    }
                }
            }
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const CrossPair& a, const CrossPair& b) {
        return std::make_tuple(-a.D1, a.q1.form(), -a.D2, a.q2.form()) <
               std::make_tuple(-b.D1, b.q1.form(), -b.D2, b.q2.form());
    });
    return pairs;
}

void annotate_exceptional(EquivClass& c)
{
    std::set<i64> candidates;
    for (const auto& m : c.members)
        for (const auto& [p, e] : factorize(-m.D).factors)
            candidates.insert(p);

    c.exceptional.clear();
    for (auto& m : c.members)
        m.exceptional.clear();
    for (i64 p : candidates) {
        std::vector<bool> reps;
        bool all = true, none = true;
        for (const auto& m : c.members) {
            bool r = represents(m.form.form(), p);
            reps.push_back(r);
            all = all && r;
            none = none && !r;
        }
        if (all || none)
            continue;
        c.exceptional.push_back(p);
        for (std::size_t i = 0; i < c.members.size(); ++i)
            if (reps[i])
                c.members[i].exceptional.push_back(p);
    }
}

std::vector<i64> exceptional_set(const EquivClass& c)
{
    EquivClass copy = c;
    annotate_exceptional(copy);
    return copy.exceptional;
}

namespace {

ClassMember make_member(const ReducedForm& form, const GroupType& type)
{
    ClassMember m;
    m.form = gl2_of(form);
    m.D = discriminant(form.form());
    Decomposition dec = fundamental_decomposition(m.D);
    m.d = dec.d;
    m.f = dec.f;
    m.cl_type = type;
    return m;
}

} // namespace

std::vector<EquivClass> build_classes(const std::vector<Decomposition>& discs,
                                      const PrimeTable& pt, int workers)
{
    std::vector<CrossPair> pairs = cross_d_pairs(discs, pt, workers);

    std::map<std::pair<i64, Form>, int> id_of;
    std::vector<std::pair<i64, Form>> nodes;
    auto node_id = [&](i64 D, const ReducedForm& q) {
        auto key = std::make_pair(D, q.form());
        auto it = id_of.find(key);
        if (it != id_of.end())
            return it->second;
        int id = static_cast<int>(nodes.size());
        id_of.emplace(key, id);
        nodes.push_back(key);
        return id;
    };

    std::vector<int> parent;
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int x, int y) {
        x = find(x);
        y = find(y);
        if (x != y)
            parent[static_cast<std::size_t>(std::max(x, y))] = std::min(x, y);
    };
    auto ensure = [&](i64 D, const ReducedForm& q) {
        int id = node_id(D, q);
        while (static_cast<int>(parent.size()) <= id)
            parent.push_back(static_cast<int>(parent.size()));
        return id;
    };

    for (const auto& pr : pairs) {
        int i = ensure(pr.D1, pr.q1);
        int j = ensure(pr.D2, pr.q2);
        unite(i, j);
    }
    // Same-fundamental-discriminant partners of every paired form; these
    // may lie at conductors beyond the searched range and still belong to
    // the class.
    std::size_t snapshot = nodes.size();
    for (std::size_t n = 0; n < snapshot; ++n) {
        auto [D, form] = nodes[n];
        for (const ReducedForm& partner :
             same_d_partners(ReducedForm::checked(form, Reduction::GL2))) {
            i64 pd = discriminant(partner.form());
            int i = ensure(D, ReducedForm::checked(form, Reduction::GL2));
            int j = ensure(pd, partner);
            unite(i, j);
        }
    }

    std::map<int, std::vector<std::size_t>> components;
    for (std::size_t n = 0; n < nodes.size(); ++n)
        components[find(static_cast<int>(n))].push_back(n);

    // Group types per discriminant for annotation.
    std::map<i64, GroupType> type_of;
    auto type_for = [&](i64 D) {
        auto it = type_of.find(D);
        if (it == type_of.end())
            it = type_of.emplace(D, group_type(*class_group(D))).first;
        return it->second;
    };

    std::vector<EquivClass> classes;
    for (const auto& [root, idxs] : components) {
        EquivClass cls;
        for (std::size_t n : idxs) {
            auto [D, form] = nodes[n];
            cls.members.push_back(
                make_member(ReducedForm::checked(form, Reduction::GL2), type_for(D)));
        }
        std::sort(cls.members.begin(), cls.members.end(),
                  [](const ClassMember& x, const ClassMember& y) {
                      return std::make_tuple(-x.D, x.form.form()) <
                             std::make_tuple(-y.D, y.form.form());
                  });
        if (cls.delta().size() < 2)
            continue;
        cls.genus = genus_basis(cls.members.front().d, cls.members.front().f);
        for (const auto& m : cls.members) {
            GenusBasis b = genus_basis(m.d, m.f);
            if (!(b == cls.genus))
                throw domain_error("class members disagree on the genus field");
        }
        annotate_exceptional(cls);
        classes.push_back(std::move(cls));
    }
    std::sort(classes.begin(), classes.end(), [](const EquivClass& a, const EquivClass& b) {
        return std::make_tuple(-a.members.front().D, a.members.front().form.form()) <
               std::make_tuple(-b.members.front().D, b.members.front().form.form());
    });
    return classes;
}

std::vector<EquivClass> special_single_discriminant_classes(const PrimeTable& pt)
{
    (void)pt;
    std::vector<EquivClass> out;
    for (const auto& chain : special_chains()) {
        EquivClass cls;
        for (const Form& q : chain) {
            ReducedForm r = reduce_gl2(q);
            i64 D = discriminant(q);
            cls.members.push_back(make_member(r, group_type(*class_group(D))));
        }
        std::sort(cls.members.begin(), cls.members.end(),
                  [](const ClassMember& x, const ClassMember& y) {
                      return std::make_tuple(-x.D, x.form.form()) <
                             std::make_tuple(-y.D, y.form.form());
                  });
        cls.genus = genus_basis(cls.members.front().d, cls.members.front().f);
        annotate_exceptional(cls);
        out.push_back(std::move(cls));
    }
    return out;
}

} // namespace formprime
