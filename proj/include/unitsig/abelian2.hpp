#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "unitsig/errors.hpp"

namespace unitsig {

// Finite abelian 2-group as an ascending chain of invariant factors (powers
// of 2, each dividing the next).  Elements are integer vectors mod factors.
struct Group2 {
    std::vector<long long> factors;

    Group2() = default;
    explicit Group2(std::vector<long long> f);
    Group2(std::initializer_list<long long> f) : Group2(std::vector<long long>(f)) {}

    long long order() const;
    int n() const { return (int)factors.size(); }
    bool operator==(const Group2&) const = default;
};

struct Subgroup {
    Group2 ambient;
    std::vector<std::vector<long long>> generators;  // reduced mod ambient factors

    Subgroup(Group2 amb, std::vector<std::vector<long long>> gens);
};

int rank2(const Group2& G);
int four_rank(const Group2& G);

// Abstract invariant factors of the span of the generators, via normal-form
// reduction of the generator lattice.
std::vector<long long> subgroup_structure(const Subgroup& A);
int rank2(const Subgroup& A);
int four_rank(const Subgroup& A);

struct ExtensionReport {
    int rank_A = 0, rank_B = 0, rank_C = 0, rank_A1 = 0;
    int four_rank_bound = 0;  // rank_A + rank_C - rank_B
    bool a_elementary = false;
    std::optional<int> max_summand_rank;  // present iff a_elementary
    std::optional<bool> splits;           // present iff a_elementary
};

// Analysis of 0 -> A -> B -> C -> 0 with A1 = A n 2B computed by lattice
// normal forms; applies the elementary-only conclusions only after checking
// the hypothesis.
ExtensionReport analyze_extension(const Group2& B, const Subgroup& A);

// Accepts an invariant factor list in either divisibility orientation
// (ascending or descending) with positionally aligned generator vectors, and
// normalizes to the ascending chain.
std::pair<Group2, std::vector<std::vector<long long>>> normalize_chain(
    std::vector<long long> factors, std::vector<std::vector<long long>> generators);

// Ground-truth splitting decision for |B| <= 2^10: searches for a complement
// subgroup B' with A n B' = 0 and A + B' = B.
bool brute_force_splits(const Group2& B, const Subgroup& A);

// Explicit small abelian group utilities (shared by the oracle and tests).
struct SmallGroup {
    int n = 0;
    std::function<int(int, int)> op;
    int id = 0;
};

long long element_order(const SmallGroup& G, int g);

// Decomposition basis: pairs (element, order) with G = direct sum of the
// cyclic subgroups generated by the elements; verified before returning.
std::vector<std::pair<int, long long>> small_abelian_basis(const SmallGroup& G);

// Explicit element table of B with vector encoding helpers.
struct ExplicitGroup2 {
    explicit ExplicitGroup2(const Group2& B);

    const Group2& B() const { return B_; }
    int size() const { return size_; }
    int encode(const std::vector<long long>& v) const;
    std::vector<long long> decode(int idx) const;
    int add(int i, int j) const;
    int scalar(long long k, int i) const;  // k * element
    std::vector<int> span(const std::vector<std::vector<long long>>& gens) const;
    SmallGroup group() const;

  private:
    Group2 B_;
    int size_;
    std::vector<long long> stride_;
};

} // namespace unitsig
