#include "formprime/search.hpp"

#include "formprime/genus.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>

#include "formprime/parallel.hpp"

namespace formprime {

int default_worker_count()
{
    if (const char* env = std::getenv("FORMPRIME_JOBS")) {
        int n = std::atoi(env);
        if (n >= 1)
            return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

bool expc_prefilter(i64 d, int c)
{
    if (c != 2 && c != 4)
        throw domain_error("exponent filter supports c = 2 or 4");
    if (!is_discriminant(d))
        throw domain_error("exponent filter requires a negative discriminant");
    i64 quarter = (-d) / 4;
    for (i64 p = 2;; p = p == 2 ? 3 : p + 2) {
        if (!is_prime(p))
            continue;
        i64 pc = p * p;
        if (c == 4)
            pc = pc * pc;
        if (pc > quarter)
            return true;
        if (kronecker(d, p) == 1)
            return false;
    }
}

namespace {

bool is_power_of_two(i64 n)
{
    return n >= 1 && (n & (n - 1)) == 0;
}

bool prefilter_with_table(i64 d, const std::vector<i64>& primes)
{
    i64 quarter = (-d) / 4;
    for (i64 p : primes) {
        i64 p2 = p * p;
        if (p2 > quarter / p2) // p^4 > quarter, overflow-safe
            return true;
        if (kronecker(d, p) == 1)
            return false;
    }
    return true;
}

/* Fundamental test driven by a prime table (trial division). */
bool is_fundamental_fast(i64 d, const PrimeTable& pt)
{
    i64 n = -d;
    i64 m4 = mod_floor(d, 4);
    if (m4 == 0) {
        n /= 4;
        i64 nm4 = mod_floor(-n, 4);
        if (nm4 != 2 && nm4 != 3)
            return false;
    } else if (m4 != 1) {
        return false;
    }
    // squarefree check of n
    for (i64 p : pt.primes()) {
        if (p * p > n)
            break;
        if (n % p == 0) {
            n /= p;
            if (n % p == 0)
                return false;
        }
    }
    return true;
}

/* [p]^4 = 1 must hold for every split prime in an exponent-4 group; test
 * it directly on a form of norm p before paying for full enumeration. */
bool fourth_powers_principal(i64 d, const PrimeTable& pt)
{
    i64 quarter = (-d) / 4;
    i64 lo = 1;
    while (lo * lo * lo * lo <= quarter)
        ++lo; // first p with p^4 > quarter
    i64 hi = isqrt(quarter);
    for (i64 p : pt.primes()) {
        if (p < lo)
            continue;
        if (p > hi)
            break;
        if (kronecker(d, p) != 1)
            continue;
        // Form of norm p: b^2 = d (mod 4p), |b| minimal.
        i64 b = -1;
        for (i64 t = mod_floor(d, 2); t <= 2 * p; t += 2) {
            if (mod_floor(t * t - d, 4 * p) == 0) {
                b = t;
                break;
            }
        }
        if (b < 0)
            throw domain_error("split prime has no form of its norm");
        Form prime_form{p, b, narrow((i128(b) * b - d) / (4 * p))};
        ReducedForm sq = compose(prime_form, prime_form, d);
        ReducedForm fourth = compose(sq.form(), sq.form(), d);
        if (fourth.a() != 1)
            return false;
    }
    return true;
}

struct ChunkResult {
    std::vector<Hit> hits;
};

constexpr i64 kChunkSpan = 1 << 16;

struct Checkpoint {
    std::set<i64> done_chunks;
    std::vector<Hit> hits;
};

Checkpoint load_checkpoint(const std::string& path)
{
    Checkpoint ck;
    if (path.empty())
        return ck;
    std::ifstream in(path);
    if (!in)
        return ck;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("#done\t", 0) == 0) {
            ck.done_chunks.insert(std::stoll(line.substr(6)));
        } else if (!line.empty() && line[0] != '#') {
            std::istringstream row(line);
            Hit h;
            std::string type;
            if (row >> h.d >> h.f >> h.D >> type) {
                h.type = parse_group_type(type);
                ck.hits.push_back(h);
            }
        }
    }
    return ck;
}

} // namespace

std::vector<Hit> enumerate_fundamental_hits(const SearchConfig& cfg)
{
    i64 bound = cfg.effective_bound();
    if (bound < 3)
        throw domain_error("search bound must be at least 3");

    // Primes enough for the prefilter, the norm-form test and the
    // enumeration factorizations at this bound.
    PrimeTable pt(std::max<i64>(isqrt(bound) + 2, 64));

    i64 n_chunks64 = (bound + kChunkSpan) / kChunkSpan;
    int n_chunks = static_cast<int>(n_chunks64);

    Checkpoint ck = load_checkpoint(cfg.checkpoint);
    std::vector<ChunkResult> results(static_cast<std::size_t>(n_chunks));
    for (const Hit& h : ck.hits) {
        int chunk = static_cast<int>((-h.d) / kChunkSpan);
        if (ck.done_chunks.count(chunk))
            results[static_cast<std::size_t>(chunk)].hits.push_back(h);
    }

    std::mutex io_lock;
    std::ofstream ck_out;
    if (!cfg.checkpoint.empty())
        ck_out.open(cfg.checkpoint, std::ios::app);

    run_chunks(n_chunks, cfg.workers, [&](int chunk) {
        if (ck.done_chunks.count(chunk))
            return;
        ChunkResult& res = results[static_cast<std::size_t>(chunk)];
        i64 lo = std::max<i64>(3, i64(chunk) * kChunkSpan);
        i64 hi = std::min<i64>(bound, (i64(chunk) + 1) * kChunkSpan - 1);
        for (i64 n = lo; n <= hi; ++n) {
            i64 m4 = n % 4;
            if (m4 != 0 && m4 != 3)
                continue;
            i64 d = -n;
            if (!prefilter_with_table(d, pt.primes()))
                continue;
            if (!is_fundamental_fast(d, pt))
                continue;
            if (n > 4 * 4096 && !fourth_powers_principal(d, pt))
                continue;
            i64 h = class_number(d, pt);
            if (!is_power_of_two(h))
                continue;
            ClassGroup g(d, pt);
            if (!is_type_dividing_224(g))
                continue;
            res.hits.push_back(Hit{d, 1, d, group_type(g)});
        }
        if (ck_out.is_open()) {
            std::lock_guard<std::mutex> guard(io_lock);
            for (const Hit& h : res.hits)
                ck_out << h.d << '\t' << h.f << '\t' << h.D << '\t' << h.type.str() << '\n';
            ck_out << "#done\t" << chunk << '\n';
            ck_out.flush();
        }
    });

    std::vector<Hit> hits;
    for (const auto& res : results)
        for (const Hit& h : res.hits)
            hits.push_back(h);
    std::sort(hits.begin(), hits.end(),
              [](const Hit& a, const Hit& b) { return -a.d < -b.d; });
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
    return hits;
}

std::vector<Hit> enumerate_order_hits(const SearchConfig& cfg,
                                      const std::vector<Hit>& fundamentals)
{
    if (cfg.f_max < 1)
        throw domain_error("f_max must be positive");
    int n = static_cast<int>(fundamentals.size());
    std::vector<std::vector<Hit>> results(static_cast<std::size_t>(n));

    run_chunks(n, cfg.workers, [&](int i) {
        const Hit& base = fundamentals[static_cast<std::size_t>(i)];
        i64 h_d = base.type.order();
        PrimeTable pt(std::max<i64>(isqrt(-base.d) * cfg.f_max + 2, 64));
        for (i64 f = 2; f <= cfg.f_max; ++f) {
            i64 h = h_formula(base.d, f, h_d);
            if (!is_power_of_two(h))
                continue;
            i64 D = mul_checked(base.d, mul_checked(f, f));
            ClassGroup g(D, pt);
            if (g.h() != h)
                throw domain_error("conductor formula disagrees with enumeration at D = " +
                                   std::to_string(D));
            if (!is_type_dividing_224(g))
                continue;
            results[static_cast<std::size_t>(i)].push_back(Hit{base.d, f, D, group_type(g)});
        }
        std::vector<i64> stray = feasible_conductors_beyond(base.d, h_d, cfg.f_max, 20 * cfg.f_max);
        if (!stray.empty()) {
            static std::mutex warn_lock;
            std::lock_guard<std::mutex> guard(warn_lock);
            std::cerr << "warning: conductor cap " << cfg.f_max << " unverified for d = "
                      << base.d << " (candidate f = " << stray.front() << ")\n";
        }
    });

    std::vector<Hit> hits;
    for (const auto& res : results)
        for (const Hit& h : res)
            hits.push_back(h);
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        return std::make_tuple(-a.d, -a.D) < std::make_tuple(-b.d, -b.D);
    });
    return hits;
}

std::vector<i64> feasible_conductors_beyond(i64 d, i64 h_d, i64 f_max, i64 scan_to)
{
    std::vector<i64> out;
    for (i64 f = f_max + 1; f <= scan_to; ++f) {
        i64 h = h_formula(d, f, h_d);
        // A group of type dividing (2,...,2,4) has order 2^(mu-1) or 2^mu,
        // where 2^(mu-1) is the genus count of the discriminant.
        if (!is_power_of_two(h))
            continue;
        int mu = genus_character_count(mul_checked(d, mul_checked(f, f)));
        if (h == (i64(1) << (mu - 1)) || h == (i64(1) << mu))
            out.push_back(f);
    }
    return out;
}

void write_hits_tsv(std::ostream& out, const std::vector<Hit>& hits)
{
    for (const Hit& h : hits)
        out << h.d << '\t' << h.f << '\t' << h.D << '\t' << h.type.str() << '\n';
}

std::vector<Hit> read_hits_tsv(std::istream& in)
{
    std::vector<Hit> hits;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream row(line);
        Hit h;
        std::string type;
        if (!(row >> h.d >> h.f >> h.D >> type))
            throw domain_error("bad hits row: " + line);
        h.type = parse_group_type(type);
        hits.push_back(h);
    }
    return hits;
}

} // namespace formprime
