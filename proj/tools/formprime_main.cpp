#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "formprime/oracle.hpp"
#include "formprime/parallel.hpp"
#include "formprime/tables.hpp"

using namespace formprime;

namespace {

i64 parse_discriminant(i64 value)
{
    // Discriminants may be passed as |D| or, after --, as the real
    // negative value.
    i64 D = value > 0 ? -value : value;
    if (!is_discriminant(D))
        throw domain_error(std::to_string(value) + " is not a negative discriminant (= 0,1 mod 4)");
    return D;
}

void print_form_line(std::ostream& out, const ReducedForm& q)
{
    i64 D = discriminant(q.form());
    Decomposition dec = fundamental_decomposition(D);
    out << to_string(q.form()) << "\tD=" << D << "\td=" << dec.d << "\tf=" << dec.f << "\n";
}

std::vector<Form> forms_from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw domain_error("cannot open class file " + path);
    std::vector<Form> forms;
    std::string line;
    while (std::getline(in, line)) {
        std::string trimmed;
        for (char ch : line)
            if (ch != ' ' && ch != '\t')
                trimmed += ch;
        if (trimmed.empty() || trimmed[0] == '#')
            continue;
        forms.push_back(parse_form(trimmed));
    }
    if (forms.empty())
        throw domain_error("class file " + path + " lists no forms");
    return forms;
}

EquivClass class_from_forms(const std::vector<Form>& forms)
{
    EquivClass c;
    for (const Form& f : forms) {
        ClassMember m;
        m.form = reduce_gl2(f);
        m.D = discriminant(f);
        Decomposition dec = fundamental_decomposition(m.D);
        m.d = dec.d;
        m.f = dec.f;
        c.members.push_back(m);
    }
    annotate_exceptional(c);
    return c;
}

int run(int argc, char** argv)
{
    CLI::App app{"positive definite binary quadratic forms: reduction, class groups, "
                 "genus fields, and the classification of forms representing almost "
                 "the same primes"};
    app.require_subcommand(1);
    app.fallthrough(true);
    int jobs = default_worker_count();
    app.add_option("--jobs", jobs, "worker threads (default FORMPRIME_JOBS or hardware)")
        ->capture_default_str();

    std::string form_text, form2_text;
    i64 disc_in = 0;
    i64 bound = 100000, f_max = 100, limit = 1000000;
    bool full_B = false, pretty = false, list_elements = false;
    std::string checkpoint, out_dir = "tables_out", class_spec;
    std::vector<i64> disc_list;

    CLI::App* reduce = app.add_subcommand("reduce", "reduce a form to canonical position");
    reduce->add_option("form", form_text, "a,b,c")->required();

    CLI::App* classgroup = app.add_subcommand("classgroup", "class group of a discriminant");
    classgroup->add_option("D", disc_in, "|D| (or negative D after --)")->required();
    classgroup->add_flag("--list", list_elements, "print every reduced form");

    CLI::App* genus = app.add_subcommand("genus", "genus field of a discriminant");
    genus->add_option("D", disc_in, "|D| (or negative D after --)")->required();

    CLI::App* lift = app.add_subcommand("lift", "conductor-doubling lift of a form");
    lift->add_option("form", form_text, "a,b,c")->required();

    CLI::App* search = app.add_subcommand(
        "search", "orders with class group of type dividing (2,...,2,4); TSV d f D type");
    search->add_option("--bound", bound, "max |d|")->capture_default_str();
    search->add_flag("--full-B", full_B, "search the full bound 80604484");
    search->add_option("--f-max", f_max, "max conductor")->capture_default_str();
    search->add_option("--checkpoint", checkpoint, "append-only resume file");

    CLI::App* pairs = app.add_subcommand("pairs", "equivalence classes over given discriminants");
    pairs->add_option("D", disc_list, "discriminants as |D| (or negative after --)")->required();
    pairs->add_flag("--pretty", pretty, "aligned text instead of TSV");

    CLI::App* tables = app.add_subcommand(
        "tables", "full classification: search, pair, and emit all table files");
    tables->add_option("--bound", bound, "max |d|")->capture_default_str();
    tables->add_option("--f-max", f_max, "max conductor")->capture_default_str();
    tables->add_option("--out", out_dir, "output directory")->capture_default_str();
    tables->add_flag("--pretty", pretty, "also print classes as aligned text");

    std::vector<std::string> verify_forms;
    CLI::App* verify = app.add_subcommand("verify", "sieve a class and compare represented primes");
    verify->add_option("--class", class_spec, "class id (from tables order) or file of forms");
    verify->add_option("forms", verify_forms, "members a,b,c ...");
    verify->add_option("--limit", limit, "sieve limit")->capture_default_str();
    verify->add_option("--bound", bound, "search bound when --class is an id")
        ->capture_default_str();
    verify->add_option("--f-max", f_max, "conductor cap when --class is an id")
        ->capture_default_str();

    CLI::App* falsify = app.add_subcommand("falsify", "first primes telling two forms apart");
    falsify->add_option("form1", form_text, "a,b,c")->required();
    falsify->add_option("form2", form2_text, "a,b,c")->required();
    falsify->add_option("--limit", limit, "sieve limit")->capture_default_str();

    CLI::App* density = app.add_subcommand("density", "observed vs expected prime density");
    density->add_option("form", form_text, "a,b,c")->required();
    density->add_option("--limit", limit, "sieve limit")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    if (reduce->parsed()) {
        Form f = parse_form(form_text);
        std::cout << "sl2\t";
        print_form_line(std::cout, reduce_sl2(f));
        std::cout << "gl2\t";
        print_form_line(std::cout, reduce_gl2(f));
        return 0;
    }

    if (classgroup->parsed()) {
        i64 D = parse_discriminant(disc_in);
        auto g = class_group(D);
        GroupType t = group_type(*g);
        std::cout << "D=" << D << "\th=" << g->h() << "\ttype=" << t.str()
                  << "\ttype_dividing_2..24=" << (is_type_dividing_224(*g) ? "yes" : "no")
                  << "\n";
        if (list_elements)
            for (const auto& q : g->elements())
                std::cout << to_string(q.form()) << "\torder=" << order_of(q, *g) << "\n";
        return 0;
    }

    if (genus->parsed()) {
        i64 D = parse_discriminant(disc_in);
        Decomposition dec = fundamental_decomposition(D);
        GenusBasis b = genus_basis(dec.d, dec.f);
        std::cout << "D=" << D << "\td=" << dec.d << "\tf=" << dec.f << "\tP=" << b.str()
                  << "\tcanonical=" << genus_span_string(b.canonical()) << "\n";
        return 0;
    }

    if (lift->parsed()) {
        Form f = parse_form(form_text);
        auto lifted = two_lift(reduce_sl2(f));
        if (!lifted) {
            std::cout << "no lift\n";
            return 0;
        }
        print_form_line(std::cout, *lifted);
        return 0;
    }

    if (search->parsed()) {
        SearchConfig cfg;
        cfg.bound_d = bound;
        cfg.f_max = f_max;
        cfg.full_B = full_B;
        cfg.workers = jobs;
        cfg.checkpoint = checkpoint;
        std::vector<Hit> fund = enumerate_fundamental_hits(cfg);
        std::vector<Hit> ord = enumerate_order_hits(cfg, fund);
        std::vector<Hit> all = fund;
        all.insert(all.end(), ord.begin(), ord.end());
        std::sort(all.begin(), all.end(), [](const Hit& a, const Hit& b) {
            return std::make_tuple(-a.d, -a.D) < std::make_tuple(-b.d, -b.D);
        });
        write_hits_tsv(std::cout, all);
        std::cerr << fund.size() << " fundamental, " << ord.size() << " nonmaximal\n";
        return 0;
    }

    if (pairs->parsed()) {
        std::vector<Decomposition> decs;
        for (i64 v : disc_list)
            decs.push_back(fundamental_decomposition(parse_discriminant(v)));
        PrimeTable pt(1000000);
        std::vector<EquivClass> classes = build_classes(decs, pt, jobs);
        if (pretty) {
            int i = 0;
            for (const EquivClass& c : classes)
                std::cout << "class " << ++i << ": " << pretty_class_report(c);
        } else {
            std::cout << render_class_table(classes);
        }
        std::cerr << classes.size() << " classes with two or more fundamental discriminants\n";
        return 0;
    }

    if (tables->parsed()) {
        SearchConfig cfg;
        cfg.bound_d = bound;
        cfg.f_max = f_max;
        cfg.workers = jobs;
        PrimeTable pt(1000000);
        TableSet set = compute_tables(cfg, pt);
        write_tables(set, out_dir);
        std::size_t three = 0;
        for (const auto& c : set.classes)
            if (c.delta().size() == 3)
                ++three;
        std::cout << "fundamental discriminants: " << set.fundamental.size() << "\n"
                  << "nonmaximal orders: " << set.orders.size() << "\n"
                  << "classes with >= 2 fundamental discriminants: " << set.classes.size() << "\n"
                  << "classes with 3 fundamental discriminants: " << three << "\n"
                  << "tables written to " << out_dir << "\n";
        if (pretty) {
            int i = 0;
            for (const EquivClass& c : set.all_classes())
                std::cout << "class " << ++i << ": " << pretty_class_report(c);
        }
        return 0;
    }

    if (verify->parsed()) {
        EquivClass cls;
        if (!class_spec.empty() && class_spec.find_first_not_of("0123456789") == std::string::npos) {
            SearchConfig cfg;
            cfg.bound_d = bound;
            cfg.f_max = f_max;
            cfg.workers = jobs;
            PrimeTable pt(1000000);
            TableSet set = compute_tables(cfg, pt);
            // Ids follow the emitted table order: table 1 through table 6.
            std::vector<EquivClass> all;
            for (int t = 1; t <= 6; ++t)
                for (const EquivClass& c : set.all_classes())
                    if (class_table_number(c) == t)
                        all.push_back(c);
            std::size_t id = std::stoull(class_spec);
            if (id < 1 || id > all.size())
                throw domain_error("class id out of range 1.." + std::to_string(all.size()));
            cls = all[id - 1];
        } else if (!class_spec.empty()) {
            cls = class_from_forms(forms_from_file(class_spec));
        } else if (!verify_forms.empty()) {
            std::vector<Form> forms;
            for (const auto& s : verify_forms)
                forms.push_back(parse_form(s));
            cls = class_from_forms(forms);
        } else {
            throw domain_error("verify needs --class or a list of forms");
        }

        PrimeTable pt(std::max<i64>(limit, 1000));
        ClassVerification rep = verify_class(cls, limit, pt, jobs);
        for (const auto& m : rep.members) {
            std::cout << to_string(m.form.form()) << "\t|D|=" << -m.D
                      << "\trepresented=" << m.represented_count << "\n";
        }
        std::cout << "differences: ";
        if (rep.observed_exceptional.empty())
            std::cout << "none";
        for (i64 p : rep.observed_exceptional)
            std::cout << p << " ";
        std::cout << "\n" << (rep.pass ? "PASS" : "FAIL")
                  << ": symmetric differences within the exceptional set\n";
        return rep.pass ? 0 : 1;
    }

    if (falsify->parsed()) {
        PrimeTable pt(std::max<i64>(limit, 1000));
        auto primes = falsify_pair(parse_form(form_text), parse_form(form2_text), limit, pt);
        if (primes.empty()) {
            std::cout << "indistinguishable up to " << limit << "\n";
        } else {
            for (i64 p : primes)
                std::cout << p << "\n";
        }
        return 0;
    }

    if (density->parsed()) {
        PrimeTable pt(std::max<i64>(limit, 100000));
        DensityResult r = density_check(reduce_sl2(parse_form(form_text)), limit, pt);
        std::cout << "represented=" << r.represented << "/" << r.primes_total
                  << "\tobserved=" << r.observed << "\texpected=" << r.expected << "\n";
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
