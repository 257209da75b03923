#include "formprime/tables.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace formprime {

std::vector<Decomposition> TableSet::all_orders() const
{
    std::vector<Decomposition> out;
    for (const Hit& h : fundamental)
        out.push_back(Decomposition{h.d, h.f});
    for (const Hit& h : orders)
        out.push_back(Decomposition{h.d, h.f});
    return out;
}

std::vector<EquivClass> TableSet::all_classes() const
{
    std::vector<EquivClass> out = classes;
    out.insert(out.end(), special.begin(), special.end());
    return out;
}

TableSet compute_tables(const SearchConfig& cfg, const PrimeTable& pt)
{
    TableSet set;
    set.fundamental = enumerate_fundamental_hits(cfg);
    set.orders = enumerate_order_hits(cfg, set.fundamental);
    set.classes = build_classes(set.all_orders(), pt, cfg.workers);
    set.special = special_single_discriminant_classes(pt);
    return set;
}

int class_table_number(const EquivClass& c)
{
    std::size_t nd = c.delta().size();
    std::size_t nm = c.members.size();
    if (nd == 1)
        return 6;
    if (nd == 2 && nm == 2)
        return 1;
    if (nd == 2 && nm == 3)
        return 2;
    if (nd == 2 && nm == 4)
        return 3;
    if (nd == 3 && nm == 3)
        return 4;
    if (nd == 3 && nm == 4)
        return 5;
    return -1;
}

int order_table_number(const GroupType& t)
{
    static const std::vector<std::string> order = {
        "(1)",       "(2)",       "(4)",        "(2,2)",      "(2,4)",
        "(2,2,2)",   "(2,2,4)",   "(2,2,2,2)",  "(2,2,2,4)",  "(2,2,2,2,4)",
    };
    for (std::size_t i = 0; i < order.size(); ++i)
        if (t.str() == order[i])
            return static_cast<int>(i) + 7;
    return -1;
}

namespace {

std::string prime_set_string(const std::vector<i64>& primes)
{
    std::string out = "{";
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(primes[i]);
    }
    return out + "}";
}

} // namespace

std::string render_class_table(const std::vector<EquivClass>& classes)
{
    std::ostringstream out;
    int index = 0;
    for (const EquivClass& c : classes) {
        ++index;
        for (const ClassMember& m : c.members) {
            out << index << '\t' << to_string(m.form.form()) << '\t' << -m.D << '\t' << -m.d
                << '\t' << m.f << '\t' << c.genus.str() << '\t' << m.cl_type.str() << '\t'
                << prime_set_string(m.exceptional) << '\n';
        }
    }
    return out.str();
}

std::string render_order_table(const std::vector<Hit>& hits)
{
    std::ostringstream out;
    for (const Hit& h : hits)
        out << -h.d << '\t' << h.f << '\t' << -h.D << '\n';
    return out.str();
}

std::map<int, std::string> render_tables(const TableSet& set)
{
    std::map<int, std::vector<EquivClass>> class_groups;
    for (const EquivClass& c : set.all_classes()) {
        int t = class_table_number(c);
        if (t < 0)
            throw domain_error("class shape outside the tabulated layouts");
        class_groups[t].push_back(c);
    }

    std::map<int, std::vector<Hit>> hit_groups;
    std::vector<Hit> all_hits = set.fundamental;
    all_hits.insert(all_hits.end(), set.orders.begin(), set.orders.end());
    std::sort(all_hits.begin(), all_hits.end(), [](const Hit& a, const Hit& b) {
        return std::make_tuple(-a.d, -a.D) < std::make_tuple(-b.d, -b.D);
    });
    for (const Hit& h : all_hits) {
        int t = order_table_number(h.type);
        if (t < 0)
            throw domain_error("group type " + h.type.str() + " outside the tabulated layouts");
        hit_groups[t].push_back(h);
    }

    std::map<int, std::string> files;
    for (int t = 1; t <= 6; ++t)
        files[t] = render_class_table(class_groups[t]);
    for (int t = 7; t <= 16; ++t)
        files[t] = render_order_table(hit_groups[t]);
    return files;
}

void write_tables(const TableSet& set, const std::string& out_dir)
{
    std::filesystem::create_directories(out_dir);
    for (const auto& [num, content] : render_tables(set)) {
        std::ofstream out(std::filesystem::path(out_dir) /
                          ("table" + std::to_string(num) + ".tsv"));
        if (!out)
            throw resource_error("cannot write table files under " + out_dir);
        out << content;
    }
}

std::string pretty_class_report(const EquivClass& c)
{
    std::ostringstream out;
    out << "genus field " << c.genus.str() << ", exceptional "
        << prime_set_string(c.exceptional) << "\n";
    for (const ClassMember& m : c.members) {
        out << "  <" << m.form.a() << "," << m.form.b() << "," << m.form.c() << ">"
            << "  |D|=" << -m.D << "  |d|=" << -m.d << "  f=" << m.f << "  Cl=" << m.cl_type.str()
            << "  E=" << prime_set_string(m.exceptional) << "\n";
    }
    return out.str();
}

} // namespace formprime
