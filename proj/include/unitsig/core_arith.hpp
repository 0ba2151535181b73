#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "unitsig/errors.hpp"

namespace unitsig {

// n = m * s^2 with m squarefree and sign(m) = sign(n).
struct SquarefreeDecomposition {
    mpz_class m;
    mpz_class s;
};

// A place of Q: the real place or a finite prime.
class Place {
  public:
    static Place real() { return Place(true, 0); }
    static Place finite(const mpz_class& p);

    bool is_real() const { return real_; }
    const mpz_class& prime() const { return p_; }

    bool operator==(const Place& o) const { return real_ == o.real_ && p_ == o.p_; }

  private:
    Place(bool real, mpz_class p) : real_(real), p_(std::move(p)) {}
    bool real_;
    mpz_class p_;
};

struct FactorBudget {
    unsigned long trial_limit = 1000000;  // trial division bound
    unsigned long rho_iterations = 2000000;  // per-factor Brent-rho budget
};

// Full factorization of |n| as (prime, exponent) pairs, primes ascending.
std::vector<std::pair<mpz_class, unsigned>> factorize(const mpz_class& n,
                                                      const FactorBudget& budget = {});

SquarefreeDecomposition squarefree_part(const mpz_class& n, const FactorBudget& budget = {});

// Kronecker symbol (a|n).
int kronecker_symbol(const mpz_class& a, const mpz_class& n);

// Quadratic Hilbert symbol (a,b)_v over the completion of Q at v:
// +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution there.
int hilbert_symbol_q(const mpq_class& a, const mpq_class& b, const Place& v);

// Square root of d mod 2^k for d = 1 mod 8, on the branch x = 1 mod 4.
mpz_class sqrt_mod_2k(const mpz_class& d, unsigned k);

std::optional<mpz_class> is_perfect_square(const mpz_class& n);

// Squarefree sieve over [2, limit].
std::vector<long long> squarefree_range(long long lo, long long hi);

} // namespace unitsig
