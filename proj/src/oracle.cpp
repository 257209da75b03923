#include "formprime/oracle.hpp"

#include <algorithm>
#include <set>

#include "formprime/parallel.hpp"

namespace formprime {

ClassVerification verify_class(const EquivClass& c, i64 limit, const PrimeTable& pt,
                               int workers)
{
    if (limit < 1000)
        throw domain_error("verification limit must be at least 1000");
    if (limit > pt.limit())
        throw resource_error("prime table smaller than the verification limit");

    int n = static_cast<int>(c.members.size());
    std::vector<std::vector<bool>> sieves(static_cast<std::size_t>(n));
    run_chunks(n, workers, [&](int i) {
        sieves[static_cast<std::size_t>(i)] =
            represented_primes(c.members[static_cast<std::size_t>(i)].form.form(), limit, pt);
    });

    ClassVerification report;
    report.limit = limit;
    report.members.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto& m = report.members[static_cast<std::size_t>(i)];
        m.form = c.members[static_cast<std::size_t>(i)].form;
        m.D = c.members[static_cast<std::size_t>(i)].D;
    }

    std::set<i64> all_diffs;
    for (i64 p : pt.primes()) {
        if (p > limit)
            break;
        bool first = sieves[0][static_cast<std::size_t>(p)];
        bool mixed = false;
        for (int i = 0; i < n; ++i) {
            if (sieves[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)]) {
                ++report.members[static_cast<std::size_t>(i)].represented_count;
                if (!first)
                    mixed = true;
            } else if (first) {
                mixed = true;
            }
        }
        if (mixed) {
            all_diffs.insert(p);
            for (int i = 0; i < n; ++i)
                report.members[static_cast<std::size_t>(i)].differing.push_back(p);
        }
    }
    report.observed_exceptional.assign(all_diffs.begin(), all_diffs.end());
    report.pass = std::includes(c.exceptional.begin(), c.exceptional.end(),
                                report.observed_exceptional.begin(),
                                report.observed_exceptional.end());
    return report;
}

DensityResult density_check(const ReducedForm& q, i64 limit, const PrimeTable& pt)
{
    if (limit < 100000)
        throw domain_error("density check needs limit >= 100000");
    DensityResult res;
    res.primes_total = pt.count_leq(limit);
    std::vector<bool> hit = represented_primes(q.form(), limit, pt);
    for (i64 p : pt.primes()) {
        if (p > limit)
            break;
        if (hit[static_cast<std::size_t>(p)])
            ++res.represented;
    }
    res.observed = static_cast<double>(res.represented) / static_cast<double>(res.primes_total);

    i64 D = discriminant(q.form());
    auto g = class_group(D);
    int ord = order_of(sl2_of(q), *g);
    double h = static_cast<double>(g->h());
    res.expected = ord <= 2 ? 1.0 / (2.0 * h) : 1.0 / h;
    return res;
}

std::vector<i64> falsify_pair(const Form& q1, const Form& q2, i64 limit,
                              const PrimeTable& pt, std::size_t max_count)
{
    if (!is_primitive(q1) || !is_primitive(q2))
        throw domain_error("falsification requires primitive forms");
    std::vector<bool> h1 = represented_primes(q1, limit, pt);
    std::vector<bool> h2 = represented_primes(q2, limit, pt);
    std::vector<i64> out;
    for (i64 p : pt.primes()) {
        if (p > limit || out.size() >= max_count)
            break;
        if (h1[static_cast<std::size_t>(p)] != h2[static_cast<std::size_t>(p)])
            out.push_back(p);
    }
    return out;
}

} // namespace formprime
