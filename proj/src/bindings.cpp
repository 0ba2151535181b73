#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "unitsig/abelian2.hpp"
#include "unitsig/scan.hpp"
#include "unitsig/selfcheck.hpp"

namespace py = pybind11;
using namespace unitsig;

namespace {

// arbitrary-precision integers cross the boundary as decimal strings
py::int_ big(const mpz_class& z) { return py::int_(py::str(z.get_str())); }

py::object frac(const mpq_class& q) {
    py::object Fraction = py::module_::import("fractions").attr("Fraction");
    return Fraction(big(q.get_num()), big(q.get_den()));
}

py::dict quadint_dict(const QuadInt& a) {
    py::dict d;
    d["x"] = big(a.x());
    d["y"] = big(a.y());
    d["str"] = a.str();
    return d;
}

py::dict unit_dict(const UnitRecord& u) {
    py::dict d;
    d["eps"] = quadint_dict(u.epsilon);
    d["norm"] = u.norm;
    d["rho_infinity"] = u.rho_infinity;
    return d;
}

py::dict classification_dict(const ClassificationReport& rep) {
    py::dict d;
    d["d"] = rep.d;
    d["D"] = rep.D;
    d["eps"] = quadint_dict(rep.epsilon);
    d["unit_norm"] = rep.unit_norm;
    d["case"] = to_string(rep.case_label);
    if (rep.m) d["m"] = big(*rep.m);
    d["is_square_mod4"] = rep.is_square_mod4;
    d["is_sum_two_squares"] = rep.is_sum_two_squares;
    d["global_mult_square_mod4"] = rep.global_mult_square_mod4;
    if (rep.square_mod4_witness) {
        py::dict w;
        w["alpha"] = quadint_dict(rep.square_mod4_witness->alpha);
        w["beta"] = quadint_dict(rep.square_mod4_witness->beta);
        d["square_mod4_witness"] = w;
    }
    if (rep.two_squares) {
        py::dict w;
        w["x"] = rep.two_squares->x.str();
        w["y"] = rep.two_squares->y.str();
        d["two_squares_witness"] = w;
    }
    if (rep.hilbert90) {
        py::dict w;
        w["alpha"] = quadint_dict(rep.hilbert90->alpha);
        w["A"] = frac(rep.hilbert90->A);
        w["B"] = frac(rep.hilbert90->B);
        w["m"] = big(rep.hilbert90->m);
        d["hilbert90"] = w;
    }
    return d;
}

py::dict rank_dict(const RankReport& r) {
    py::dict d;
    d["d"] = r.d;
    d["D"] = r.D;
    d["rho"] = r.rho;
    d["rho_plus"] = r.rho_plus;
    d["rho_inf"] = r.rho_inf;
    d["four_rank_plus"] = r.four_rank_plus;
    d["h"] = r.h;
    d["h_plus"] = r.h_plus;
    d["splits"] = r.splits;
    d["omega_exists"] = r.omega_exists;
    d["unit_norm"] = r.unit_norm;
    d["narrow"] = r.narrow.invariant_factors;
    d["wide"] = r.wide.invariant_factors;
    return d;
}

py::dict row_dict(const ScanRow& r) {
    py::dict d;
    d["d"] = r.d;
    d["D"] = r.D;
    d["eps_x"] = big(r.eps_x);
    d["eps_y"] = big(r.eps_y);
    d["unit_norm"] = r.unit_norm;
    d["m"] = big(r.m);
    d["case"] = to_string(r.case_label);
    d["is_square_mod4"] = r.is_square_mod4;
    d["is_sum_two_squares"] = r.is_sum_two_squares;
    d["rho"] = r.rho;
    d["rho_plus"] = r.rho_plus;
    d["rho_inf"] = r.rho_inf;
    d["four_rank_plus"] = r.four_rank_plus;
    d["splits"] = r.splits;
    d["omega_exists"] = r.omega_exists;
    return d;
}

mpz_class to_mpz(py::object v) { return mpz_class(py::str(v).cast<std::string>()); }

Place place_from(py::object v) {
    if (py::isinstance<py::str>(v)) {
        std::string s = v.cast<std::string>();
        if (s == "real" || s == "inf") return Place::real();
        throw py::value_error("place must be 'real' or a prime");
    }
    return Place::finite(to_mpz(v));
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact arithmetic for unit signatures and 2-parts of class groups of real "
              "quadratic fields";

    py::register_exception<InternalInconsistency>(m, "InternalInconsistency");
    py::register_exception<Error>(m, "DomainError");

    m.def(
        "squarefree_part",
        [](py::object n) {
            auto r = squarefree_part(to_mpz(n));
            return py::make_tuple(big(r.m), big(r.s));
        },
        py::arg("n"), "Return (m, s) with n = m*s^2 and m squarefree.");

    m.def(
        "kronecker_symbol",
        [](py::object a, py::object n) { return kronecker_symbol(to_mpz(a), to_mpz(n)); },
        py::arg("a"), py::arg("n"));

    m.def(
        "hilbert_symbol",
        [](py::object a, py::object b, py::object place) {
            mpq_class qa(py::str(a).cast<std::string>()), qb(py::str(b).cast<std::string>());
            qa.canonicalize();
            qb.canonicalize();
            return hilbert_symbol_q(qa, qb, place_from(place));
        },
        py::arg("a"), py::arg("b"), py::arg("place"),
        "Quadratic Hilbert symbol of two rationals at 'real' or a finite prime.");

    m.def(
        "sqrt_mod_2k", [](py::object d, unsigned k) { return big(sqrt_mod_2k(to_mpz(d), k)); },
        py::arg("d"), py::arg("k"));

    m.def(
        "fundamental_unit", [](long d) { return unit_dict(fundamental_unit(make_field(d))); },
        py::arg("d"),
        "Fundamental unit of Q(sqrt(d)) as (x + y*sqrt(d))/2 with exact coordinates.");

    m.def(
        "classify",
        [](long d, long witness_bound) {
            return classification_dict(classify(make_field(d), witness_bound));
        },
        py::arg("d"), py::arg("witness_bound") = 8,
        "Unit-type classification of the fundamental unit of Q(sqrt(d)).");

    m.def(
        "ranks", [](long d) { return rank_dict(rank_report(make_field(d))); }, py::arg("d"),
        "Narrow/wide class group rank report via binary quadratic forms.");

    m.def(
        "scan",
        [](long lo, long hi, int jobs) {
            py::list out;
            for (const auto& r : scan_range(lo, hi, jobs)) out.append(row_dict(r));
            return out;
        },
        py::arg("lo"), py::arg("hi"), py::arg("jobs") = 1,
        "One classification/rank row per squarefree d in [lo, hi].");

    m.def(
        "analyze_extension",
        [](std::vector<long long> invariants, std::vector<std::vector<long long>> generators) {
            auto [B, gens] = normalize_chain(std::move(invariants), std::move(generators));
            ExtensionReport rep = analyze_extension(B, Subgroup(B, gens));
            py::dict d;
            d["rank_A"] = rep.rank_A;
            d["rank_B"] = rep.rank_B;
            d["rank_C"] = rep.rank_C;
            d["rank_A1"] = rep.rank_A1;
            d["four_rank_bound"] = rep.four_rank_bound;
            d["a_elementary"] = rep.a_elementary;
            if (rep.max_summand_rank) d["max_summand_rank"] = *rep.max_summand_rank;
            if (rep.splits) d["splits"] = *rep.splits;
            return d;
        },
        py::arg("invariants"), py::arg("generators"),
        "Rank analysis of 0 -> A -> B -> C -> 0 for a finite abelian 2-group B.");

    m.def(
        "brute_force_splits",
        [](std::vector<long long> invariants, std::vector<std::vector<long long>> generators) {
            auto [B, gens] = normalize_chain(std::move(invariants), std::move(generators));
            return brute_force_splits(B, Subgroup(B, gens));
        },
        py::arg("invariants"), py::arg("generators"),
        "Exhaustive splitting decision for |B| <= 2^10.");

    m.def(
        "selftest", [](long max_d) { return run_selftest(max_d, nullptr); },
        py::arg("max_d") = 500,
        "Run the full invariant suite up to the given ceiling; True when all pass.");
}
