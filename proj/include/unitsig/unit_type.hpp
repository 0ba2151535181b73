#pragma once

#include <optional>
#include <utility>

#include "unitsig/core_arith.hpp"
#include "unitsig/quadfield.hpp"

namespace unitsig {

// e = alpha^2 + 4*beta with alpha, beta integral.
struct SquareMod4Witness {
    QuadInt alpha;
    QuadInt beta;
};

// epsilon = conj(alpha)/alpha with alpha = A + B*sqrt(d), N(alpha) = m.
struct Hilbert90Witness {
    QuadInt alpha;
    mpq_class A, B;
    mpz_class m;
};

struct TwoSquaresWitness {
    QuadRat x, y;  // x^2 + y^2 = e
};

enum class CaseLabel { norm_minus_one, a_i, a_ii, a_iii, a_iv, a_v, b, c };

const char* to_string(CaseLabel c);
std::optional<CaseLabel> case_label_from_string(const std::string& s);

struct ClassificationReport {
    long d = 0;
    long D = 0;
    QuadInt epsilon;
    int unit_norm = 0;
    std::optional<mpz_class> m;  // absent when the unit has norm -1
    CaseLabel case_label = CaseLabel::c;
    // Chain data for the fundamental unit; both false when norm is -1
    // (the chain collapses to E^2 and epsilon is not totally positive).
    bool is_square_mod4 = false;
    bool is_sum_two_squares = false;
    bool global_mult_square_mod4 = false;
    std::optional<SquareMod4Witness> square_mod4_witness;
    std::optional<TwoSquaresWitness> two_squares;
    std::optional<Hilbert90Witness> hilbert90;
};

// Residue-class test over the four classes of O_K/2O_K (Lemma-1 style:
// finite, exact, no p-adic machinery).
std::pair<bool, std::optional<SquareMod4Witness>> is_square_mod4(const QuadraticField& K,
                                                                 const QuadInt& e);

// m = squarefree part of N(eps+1), located among the squarefree divisors of D
// rather than by factoring the (potentially astronomical) norm.
mpz_class compute_m(const QuadraticField& K);
mpz_class compute_m(const QuadraticField& K, const UnitRecord& unit);

// Squarefree part of D/m; checked against the squarefree part of -N(eps-1).
mpz_class complement_m(const QuadraticField& K);
mpz_class complement_m(const QuadraticField& K, const UnitRecord& unit);

Hilbert90Witness hilbert90_alpha(const QuadraticField& K);
Hilbert90Witness hilbert90_alpha(const QuadraticField& K, const UnitRecord& unit);

// Local decision: totally positive units are sums of two squares unless 2
// splits, in which case the 2-adic image must be 1 mod 4.
bool is_sum_two_squares(const QuadraticField& K, const QuadInt& e);
bool is_sum_two_squares(const QuadraticField& K, const QuadInt& e, const UnitRecord& unit);

// Best-effort bounded search over denominators t <= search_bound; absence is
// not a negative decision.
std::optional<TwoSquaresWitness> two_squares_witness(const QuadraticField& K, const QuadInt& e,
                                                     long search_bound);

bool global_mult_square_mod4(const QuadraticField& K, const QuadInt& e);

struct RelativeIntegralBasis {
    QuadInt alpha;
    QuadInt beta;           // minimal polynomial is x^2 - alpha*x - beta
    bool trivial_extension; // e is already a square in K
};

RelativeIntegralBasis relative_integral_basis(const QuadraticField& K, const QuadInt& e);

// Full classification of the fundamental unit.  The congruence case label is
// cross-checked against the independent residue and local-symbol decisions;
// disagreement is an InternalInconsistency.  A two-squares witness search is
// attempted when witness_bound > 0 (skipped for very large units).
ClassificationReport classify(const QuadraticField& K, long witness_bound = 0);
ClassificationReport classify_with_unit(const QuadraticField& K, const UnitRecord& unit,
                                        long witness_bound);

// Square root in K of an exact field element, when one exists.
std::optional<QuadRat> sqrt_in_field(const QuadRat& z);

} // namespace unitsig
