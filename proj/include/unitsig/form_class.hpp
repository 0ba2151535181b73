#pragma once

#include <compare>
#include <vector>

#include "unitsig/quadfield.hpp"

namespace unitsig {

// (a, b, c) with b^2 - 4ac = D > 0, D not a square.
struct BinaryQuadraticForm {
    long long a = 0, b = 0, c = 0;

    long long disc() const;
    auto operator<=>(const BinaryQuadraticForm&) const = default;
};

struct AbelianGroupStructure {
    std::vector<long long> invariant_factors;  // each >= 2, dividing the next

    long long order() const;
    int rank2() const;      // factors divisible by 2
    int four_rank() const;  // factors divisible by 4
    bool operator==(const AbelianGroupStructure&) const = default;
    std::string str() const;  // e.g. "Z/2 x Z/4", "trivial"
};

bool is_reduced(const BinaryQuadraticForm& f);

// One step of the reduction operator for indefinite forms.
BinaryQuadraticForm rho_step(const BinaryQuadraticForm& f);

BinaryQuadraticForm reduce(const BinaryQuadraticForm& f);

// The narrow class group of discriminant D as cycles of reduced forms.
class ClassGroup {
  public:
    explicit ClassGroup(long long D);

    long long D() const { return D_; }
    long long class_number() const { return (long long)cycles_.size(); }
    const std::vector<std::vector<BinaryQuadraticForm>>& cycles() const { return cycles_; }
    const BinaryQuadraticForm& representative(int cls) const { return reps_[cls]; }

    int class_of(const BinaryQuadraticForm& f) const;  // reduces, then looks up
    int identity() const { return identity_; }
    int compose(int i, int j) const;
    int inverse(int i) const;

  private:
    long long D_;
    std::vector<std::vector<BinaryQuadraticForm>> cycles_;
    std::vector<BinaryQuadraticForm> reps_;
    std::vector<std::pair<BinaryQuadraticForm, int>> index_;  // sorted reduced form -> cycle
    std::vector<int> table_;  // Cayley table
    int identity_ = 0;
};

// Form-level composition (Dirichlet composition via concordant forms),
// reduced output.  Class arithmetic should go through ClassGroup::compose.
BinaryQuadraticForm compose_forms(const BinaryQuadraticForm& f, const BinaryQuadraticForm& g);

std::vector<std::vector<BinaryQuadraticForm>> enumerate_classes(long long D);

AbelianGroupStructure group_structure(const ClassGroup& G);

AbelianGroupStructure wide_class_group(const QuadraticField& K);

// -1 a norm from K, decided by Hilbert symbols (d,-1)_p over p | 2D.
bool norm_minus_one_solvable(const QuadraticField& K);

struct RankReport {
    long long d = 0, D = 0;
    int rho = 0;        // rank2 C_K
    int rho_plus = 0;   // rank2 C_K+
    int rho_inf = 0;
    int four_rank_plus = 0;
    long long h = 0, h_plus = 0;
    bool splits = false;
    bool omega_exists = false;
    int unit_norm = 0;
    AbelianGroupStructure narrow, wide;
};

RankReport rank_report(const QuadraticField& K);
RankReport rank_report(const QuadraticField& K, const UnitRecord& unit);

} // namespace unitsig
