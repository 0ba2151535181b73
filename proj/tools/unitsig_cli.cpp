#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "unitsig/abelian2.hpp"
#include "unitsig/scan.hpp"
#include "unitsig/selfcheck.hpp"

using namespace unitsig;

namespace {

std::string minpoly_str(const QuadInt& alpha, const QuadInt& beta) {
    std::ostringstream os;
    os << "x^2 - (" << alpha.str() << ")*x ";
    if (beta.is_zero())
        os << "+ 0";
    else if (beta.sign() < 0)
        os << "+ (" << (-beta).str() << ")";
    else
        os << "- (" << beta.str() << ")";
    return os.str();
}

int cmd_classify(long long d, bool as_json, long long witness_bound) {
    QuadraticField K = make_field(d);
    UnitRecord unit = fundamental_unit(K);
    ClassificationReport rep = classify_with_unit(K, unit, witness_bound);

    if (as_json) {
        nlohmann::ordered_json j;
        j["d"] = rep.d;
        j["D"] = rep.D;
        j["eps_x"] = rep.epsilon.x().get_str();
        j["eps_y"] = rep.epsilon.y().get_str();
        j["eps"] = rep.epsilon.str();
        j["unit_norm"] = rep.unit_norm;
        j["case"] = to_string(rep.case_label);
        j["m"] = rep.m ? rep.m->get_si() : 0;
        j["is_square_mod4"] = rep.is_square_mod4;
        j["is_sum_two_squares"] = rep.is_sum_two_squares;
        j["global_mult_square_mod4"] = rep.global_mult_square_mod4;
        if (rep.square_mod4_witness) {
            j["square_mod4_witness"]["alpha"] = rep.square_mod4_witness->alpha.str();
            j["square_mod4_witness"]["beta"] = rep.square_mod4_witness->beta.str();
        }
        if (rep.two_squares) {
            j["two_squares_witness"]["x"] = rep.two_squares->x.str();
            j["two_squares_witness"]["y"] = rep.two_squares->y.str();
        }
        if (rep.hilbert90) {
            j["hilbert90"]["alpha"] = rep.hilbert90->alpha.str();
            j["hilbert90"]["A"] = rep.hilbert90->A.get_str();
            j["hilbert90"]["B"] = rep.hilbert90->B.get_str();
            j["hilbert90"]["m"] = rep.hilbert90->m.get_si();
        }
        std::cout << j.dump() << "\n";
        return 0;
    }

    std::cout << "d = " << rep.d << "  D = " << rep.D << "\n";
    std::cout << "eps = " << rep.epsilon.str() << "   N(eps) = " << rep.unit_norm << "\n";
    if (rep.unit_norm == -1) {
        std::cout << "case: norm_minus_one (E+ = E^2; the unit chain collapses)\n";
        return 0;
    }
    const QuadInt one = QuadInt::from_int(K.d, 1);
    std::cout << "N(eps+1) = " << (unit.epsilon + one).norm().get_str() << "  m = "
              << rep.m->get_str() << "\n";
    std::cout << "case: " << to_string(rep.case_label) << "\n";
    std::cout << "square mod 4: " << (rep.is_square_mod4 ? "yes" : "no");
    if (rep.square_mod4_witness)
        std::cout << "   eps = (" << rep.square_mod4_witness->alpha.str() << ")^2 + 4*("
                  << rep.square_mod4_witness->beta.str() << ")";
    std::cout << "\n";
    std::cout << "sum of two squares: " << (rep.is_sum_two_squares ? "yes" : "no");
    if (rep.two_squares)
        std::cout << "   eps = (" << rep.two_squares->x.str() << ")^2 + ("
                  << rep.two_squares->y.str() << ")^2";
    std::cout << "\n";
    if (rep.is_square_mod4)
        std::cout << "globally a multiplicative square mod 4: "
                  << (rep.global_mult_square_mod4 ? "yes" : "no") << "\n";
    if (rep.hilbert90)
        std::cout << "hilbert90: alpha = " << rep.hilbert90->alpha.str() << ", N(alpha) = m = "
                  << rep.hilbert90->m.get_str() << ", conj(alpha)/alpha = eps\n";
    if (rep.is_square_mod4) {
        RelativeIntegralBasis basis = relative_integral_basis(K, unit.epsilon);
        std::cout << "integral basis of K(sqrt(eps)): {1, (alpha + sqrt(eps))/2} with minpoly "
                  << minpoly_str(basis.alpha, basis.beta) << "\n";
        if (basis.trivial_extension) std::cout << "  (trivial extension: eps is a square in K)\n";
    }
    return 0;
}

int cmd_ranks(long long d) {
    QuadraticField K = make_field(d);
    RankReport r = rank_report(K);
    std::cout << "d = " << r.d << "  D = " << r.D << "\n";
    std::cout << "h+ = " << r.h_plus << "  C+ = " << r.narrow.str() << "\n";
    std::cout << "h  = " << r.h << "  C  = " << r.wide.str() << "\n";
    std::cout << "rho = " << r.rho << "  rho+ = " << r.rho_plus << "  rho_inf = " << r.rho_inf
              << "  4-rank(C+) = " << r.four_rank_plus << "\n";
    std::cout << "sequence splits: " << (r.splits ? "yes" : "no")
              << "   omega with N(omega) = -1 exists: " << (r.omega_exists ? "yes" : "no")
              << "   unit norm: " << (r.unit_norm > 0 ? "+1" : "-1") << "\n";
    return 0;
}

int cmd_scan(long long lo, long long hi, const std::string& format, int jobs,
             const std::string& out_path, long long ceiling) {
    if (lo <= 1 || hi < lo) throw OutOfRange("need 1 < min <= max");
    if (hi > ceiling) throw OutOfRange("max exceeds the configured ceiling");
    std::vector<ScanRow> rows = scan_range(lo, hi, jobs);
    std::ostringstream os;
    if (format == "csv") {
        os << kScanCsvHeader << "\n";
        for (const auto& r : rows) os << to_csv(r) << "\n";
        os << csv_footer(rows) << "\n";
    } else {
        for (const auto& r : rows) os << to_json_line(r) << "\n";
        os << json_footer(rows) << "\n";
    }
    if (out_path.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw OutOfRange("cannot open output file " + out_path);
        f << os.str();
    }
    return 0;
}

std::vector<long long> parse_ll_list(const std::string& s, char sep) {
    std::vector<long long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) {
        if (tok.empty()) throw OutOfRange("empty entry in list");
        out.push_back(std::stoll(tok));
    }
    if (out.empty()) throw OutOfRange("empty list");
    return out;
}

int cmd_abelian2(const std::string& invariants, const std::string& subgroup) {
    std::vector<std::vector<long long>> raw_gens;
    if (!subgroup.empty()) {
        std::stringstream ss(subgroup);
        std::string tok;
        while (std::getline(ss, tok, ';')) raw_gens.push_back(parse_ll_list(tok, ','));
    }
    auto [B, gens] = normalize_chain(parse_ll_list(invariants, ','), raw_gens);
    Subgroup A(B, gens);

    ExtensionReport rep = analyze_extension(B, A);
    std::cout << "B: invariant factors " << invariants << " (|B| = " << B.order() << ")\n";
    std::cout << "rank A = " << rep.rank_A << "  rank B = " << rep.rank_B << "  rank C = "
              << rep.rank_C << "  rank A1 = " << rep.rank_A1 << "\n";
    std::cout << "4-rank bound (rank A + rank C - rank B) = " << rep.four_rank_bound
              << "; 4-rank(B) = " << four_rank(B) << "\n";
    if (rep.a_elementary) {
        std::cout << "A elementary: splits = " << (*rep.splits ? "yes" : "no")
                  << ", max summand rank = " << *rep.max_summand_rank << "\n";
    } else {
        std::cout << "(b) not applicable: A not elementary\n";
    }
    return 0;
}

int cmd_selftest(long long max_d) {
    std::string out;
    bool ok = run_selftest(max_d, &out);
    std::cout << out;
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic for unit signatures and 2-parts of class groups of real "
                 "quadratic fields"};
    app.require_subcommand(1);

    long long d = 0, lo = 0, hi = 0, ceiling = 5000, max_d = 500, witness_bound = 10;
    bool as_json = false;
    int jobs = 1;
    std::string format = "csv", out_path, invariants, subgroup;

    auto* classify_cmd = app.add_subcommand("classify", "classify the fundamental unit of Q(sqrt d)");
    classify_cmd->add_option("--d", d, "squarefree d > 1")->required();
    classify_cmd->add_flag("--json", as_json, "emit JSON");
    classify_cmd->add_option("--witness-bound", witness_bound,
                             "denominator bound for the two-squares witness search");

    auto* scan_cmd = app.add_subcommand("scan", "classification and rank table over a range of d");
    scan_cmd->add_option("--min", lo)->required();
    scan_cmd->add_option("--max", hi)->required();
    scan_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    scan_cmd->add_option("--jobs", jobs);
    scan_cmd->add_option("--out", out_path);
    scan_cmd->add_option("--ceiling", ceiling, "largest allowed --max");

    auto* ranks_cmd = app.add_subcommand("ranks", "narrow/wide class group rank report");
    ranks_cmd->add_option("--d", d)->required();

    auto* ab_cmd = app.add_subcommand("abelian2", "finite abelian 2-group extension analysis");
    ab_cmd->add_option("--invariants", invariants, "comma list of powers of 2")->required();
    ab_cmd->add_option("--subgroup", subgroup, "semicolon-separated generator vectors");

    auto* self_cmd = app.add_subcommand("selftest", "run the full invariant suite");
    self_cmd->add_option("--max", max_d, "d ceiling for the field scans");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*classify_cmd) return cmd_classify(d, as_json, witness_bound);
        if (*scan_cmd) return cmd_scan(lo, hi, format, jobs, out_path, ceiling);
        if (*ranks_cmd) return cmd_ranks(d);
        if (*ab_cmd) return cmd_abelian2(invariants, subgroup);
        if (*self_cmd) return cmd_selftest(max_d);
    } catch (const InternalInconsistency& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
