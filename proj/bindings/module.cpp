#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "formprime/oracle.hpp"
#include "formprime/parallel.hpp"
#include "formprime/tables.hpp"

namespace py = pybind11;
using namespace formprime;

namespace {

using Triple = std::tuple<i64, i64, i64>;

Form form_of(const Triple& t)
{
    return Form{std::get<0>(t), std::get<1>(t), std::get<2>(t)};
}

Triple triple_of(const Form& q)
{
    return {q.a, q.b, q.c};
}

std::vector<i64> type_of(const GroupType& t)
{
    return t.invariant_factors;
}

py::dict class_dict(const EquivClass& c)
{
    py::dict out;
    py::list members;
    for (const ClassMember& m : c.members) {
        py::dict row;
        row["form"] = triple_of(m.form.form());
        row["D"] = m.D;
        row["d"] = m.d;
        row["f"] = m.f;
        row["cl_type"] = type_of(m.cl_type);
        row["exceptional"] = m.exceptional;
        members.append(row);
    }
    out["members"] = members;
    out["genus"] = c.genus.str();
    out["exceptional"] = c.exceptional;
    out["delta"] = c.delta();
    return out;
}

} // namespace

PYBIND11_MODULE(formprime, m)
{
    m.doc() = "positive definite binary quadratic forms: reduction, class groups, "
              "genus fields, and forms representing almost the same primes";

    py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);
    py::register_exception<resource_error>(m, "ResourceError", PyExc_RuntimeError);

    m.def("discriminant", [](const Triple& q) { return discriminant(form_of(q)); });
    m.def("is_primitive", [](const Triple& q) { return is_primitive(form_of(q)); });
    m.def(
        "reduce_sl2", [](const Triple& q) { return triple_of(reduce_sl2(form_of(q)).form()); },
        "canonical SL2-reduced representative");
    m.def(
        "reduce_gl2", [](const Triple& q) { return triple_of(reduce_gl2(form_of(q)).form()); },
        "canonical GL2-reduced representative");
    m.def("kronecker", &kronecker, py::arg("a"), py::arg("n"));
    m.def("p_star", &p_star);
    m.def("fundamental_decomposition", [](i64 D) {
        Decomposition dec = fundamental_decomposition(D);
        return std::make_pair(dec.d, dec.f);
    });
    m.def(
        "enumerate_reduced",
        [](i64 D, bool primitive_only) {
            std::vector<Triple> out;
            for (const auto& q : enumerate_reduced(D, primitive_only))
                out.push_back(triple_of(q.form()));
            return out;
        },
        py::arg("D"), py::arg("primitive_only") = true);
    m.def("represents",
          [](const Triple& q, i64 n) { return represents(form_of(q), n); });
    m.def(
        "represented_primes",
        [](const Triple& q, i64 limit) {
            PrimeTable pt(std::max<i64>(limit, 16));
            return represented_prime_list(form_of(q), limit, pt);
        },
        py::arg("form"), py::arg("limit"));

    m.def("compose", [](const Triple& q1, const Triple& q2, i64 D) {
        return triple_of(compose(form_of(q1), form_of(q2), D).form());
    });
    m.def("class_number", [](i64 D) { return class_group(D)->h(); });
    m.def("group_type", [](i64 D) { return type_of(group_type(*class_group(D))); });
    m.def("is_type_dividing_224", [](i64 D) { return is_type_dividing_224(*class_group(D)); });
    m.def("order_of", [](const Triple& q, i64 D) {
        return order_of(reduce_sl2(form_of(q)), *class_group(D));
    });
    m.def("h_formula", [](i64 d, i64 f) { return h_formula(d, f); });
    m.def("local_unit_quotient", [](i64 d, i64 p, int e) {
        return type_of(local_unit_quotient(d, p, e));
    });

    m.def("genus_span", [](i64 d, i64 f) { return genus_basis(d, f).str(); });
    m.def("genus_canonical", [](i64 d, i64 f) { return genus_basis(d, f).canonical(); });
    m.def(
        "signature",
        [](const Triple& q, i64 witness_limit) {
            i64 D = discriminant(form_of(q));
            Decomposition dec = fundamental_decomposition(D);
            PrimeTable pt(witness_limit);
            Signature s = signature(reduce_gl2(form_of(q)), genus_basis(dec.d, dec.f), pt);
            return py::make_tuple(s.witness_prime, s.basis, s.values);
        },
        py::arg("form"), py::arg("witness_limit") = 100000);

    m.def("two_lift", [](const Triple& q) -> py::object {
        auto lifted = two_lift(reduce_sl2(form_of(q)));
        if (!lifted)
            return py::none();
        return py::cast(triple_of(lifted->form()));
    });
    m.def("same_d_partners", [](const Triple& q) {
        std::vector<Triple> out;
        for (const auto& partner : same_d_partners(reduce_gl2(form_of(q))))
            out.push_back(triple_of(partner.form()));
        return out;
    });
    m.def(
        "cross_d_pairs",
        [](const std::vector<std::pair<i64, i64>>& discs) {
            std::vector<Decomposition> decs;
            for (auto [d, f] : discs)
                decs.push_back(Decomposition{d, f});
            PrimeTable pt(1000000);
            std::vector<std::pair<Triple, Triple>> out;
            for (const auto& pr : cross_d_pairs(decs, pt))
                out.emplace_back(triple_of(pr.q1.form()), triple_of(pr.q2.form()));
            return out;
        },
        "all pairs with different fundamental discriminants representing almost the same primes");
    m.def("build_classes", [](const std::vector<std::pair<i64, i64>>& discs) {
        std::vector<Decomposition> decs;
        for (auto [d, f] : discs)
            decs.push_back(Decomposition{d, f});
        PrimeTable pt(1000000);
        py::list out;
        for (const EquivClass& c : build_classes(decs, pt))
            out.append(class_dict(c));
        return out;
    });

    m.def(
        "search_hits",
        [](i64 bound, i64 f_max, bool full_B) {
            SearchConfig cfg;
            cfg.bound_d = bound;
            cfg.f_max = f_max;
            cfg.full_B = full_B;
            cfg.workers = default_worker_count();
            auto fund = enumerate_fundamental_hits(cfg);
            auto ord = enumerate_order_hits(cfg, fund);
            auto pack = [](const std::vector<Hit>& hits) {
                py::list rows;
                for (const Hit& h : hits)
                    rows.append(py::make_tuple(h.d, h.f, h.D, type_of(h.type)));
                return rows;
            };
            return py::make_tuple(pack(fund), pack(ord));
        },
        py::arg("bound") = 100000, py::arg("f_max") = 100, py::arg("full_B") = false);

    m.def(
        "verify_forms",
        [](const std::vector<Triple>& forms, i64 limit) {
            EquivClass c;
            for (const Triple& t : forms) {
                ClassMember mem;
                mem.form = reduce_gl2(form_of(t));
                mem.D = discriminant(form_of(t));
                Decomposition dec = fundamental_decomposition(mem.D);
                mem.d = dec.d;
                mem.f = dec.f;
                c.members.push_back(mem);
            }
            annotate_exceptional(c);
            PrimeTable pt(std::max<i64>(limit, 1000));
            ClassVerification v = verify_class(c, limit, pt, default_worker_count());
            py::dict out;
            out["pass"] = v.pass;
            out["differences"] = v.observed_exceptional;
            out["exceptional"] = c.exceptional;
            py::list counts;
            for (const auto& mv : v.members)
                counts.append(mv.represented_count);
            out["represented_counts"] = counts;
            return out;
        },
        py::arg("forms"), py::arg("limit") = 1000000);
    m.def(
        "falsify_pair",
        [](const Triple& q1, const Triple& q2, i64 limit) {
            PrimeTable pt(std::max<i64>(limit, 16));
            return falsify_pair(form_of(q1), form_of(q2), limit, pt);
        },
        py::arg("form1"), py::arg("form2"), py::arg("limit") = 100000);
    m.def(
        "density_check",
        [](const Triple& q, i64 limit) {
            PrimeTable pt(std::max<i64>(limit, 16));
            DensityResult r = density_check(reduce_sl2(form_of(q)), limit, pt);
            return py::make_tuple(r.observed, r.expected);
        },
        py::arg("form"), py::arg("limit") = 1000000);
}
