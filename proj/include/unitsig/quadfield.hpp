#pragma once

#include <string>

#include <gmpxx.h>

#include "unitsig/errors.hpp"

namespace unitsig {

enum class TwoSplitting { split, inert, ramified };

// Real quadratic field Q(sqrt(d)), d squarefree > 1.
struct QuadraticField {
    long d = 0;
    long D = 0;  // field discriminant: d if d = 1 mod 4, else 4d
    TwoSplitting two_splitting = TwoSplitting::ramified;
    int g = 1;  // number of primes over 2
    static constexpr int r1 = 2;
    static constexpr int r2 = 0;
};

QuadraticField make_field(long d);

// Element (x + y*sqrt(d))/2 of the maximal order.  The raw pair is the
// canonical representation; no hidden gcd reduction.
class QuadInt {
  public:
    QuadInt() = default;
    QuadInt(long d, mpz_class x, mpz_class y);

    static QuadInt from_int(long d, const mpz_class& n) { return QuadInt(d, 2 * n, 0); }
    static QuadInt omega(long d);  // sqrt(d), or (1+sqrt(d))/2 when d = 1 mod 4

    long d() const { return d_; }
    const mpz_class& x() const { return x_; }
    const mpz_class& y() const { return y_; }

    QuadInt operator+(const QuadInt& o) const;
    QuadInt operator-(const QuadInt& o) const;
    QuadInt operator*(const QuadInt& o) const;
    QuadInt operator-() const { return QuadInt(d_, -x_, -y_); }
    bool operator==(const QuadInt& o) const;

    QuadInt conjugate() const { return QuadInt(d_, x_, -y_); }
    mpz_class norm() const;
    mpz_class trace() const { return x_; }

    bool is_zero() const { return x_ == 0 && y_ == 0; }
    bool is_one() const { return x_ == 2 && y_ == 0; }
    bool is_unit() const;
    bool is_integer(mpz_class* value = nullptr) const;

    // Exact sign in the embedding with sqrt(d) > 0 (resp. the conjugate one).
    int sign() const { return sign_of(x_, y_); }
    int conj_sign() const { return sign_of(x_, -y_); }
    bool is_totally_positive() const { return sign() > 0 && conj_sign() > 0; }

    // Exact comparison of this element with the rational p/q (q > 0).
    int compare_rational(const mpz_class& p, const mpz_class& q) const;

    std::string str() const;

  private:
    int sign_of(const mpz_class& x, const mpz_class& y) const;

    long d_ = 0;
    mpz_class x_, y_;
};

// Element r + i*sqrt(d) of the field, exact rational coordinates.
struct QuadRat {
    long d = 0;
    mpq_class r, i;

    QuadRat() = default;
    QuadRat(long d, mpq_class r, mpq_class i) : d(d), r(std::move(r)), i(std::move(i)) {}
    explicit QuadRat(const QuadInt& a)
        : d(a.d()), r(mpq_class(a.x()) / 2), i(mpq_class(a.y()) / 2) {}

    QuadRat operator+(const QuadRat& o) const { return {d, r + o.r, i + o.i}; }
    QuadRat operator-(const QuadRat& o) const { return {d, r - o.r, i - o.i}; }
    QuadRat operator*(const QuadRat& o) const {
        return {d, r * o.r + i * o.i * d, r * o.i + i * o.r};
    }
    bool operator==(const QuadRat& o) const { return d == o.d && r == o.r && i == o.i; }
    QuadRat conjugate() const { return {d, r, -i}; }
    mpq_class norm() const { return r * r - i * i * d; }
    bool is_zero() const { return r == 0 && i == 0; }

    int sign() const;
    int conj_sign() const { return conjugate().sign(); }

    std::string str() const;
};

struct UnitRecord {
    QuadInt epsilon;   // fundamental unit, normalized > 1 where sqrt(d) > 0
    int norm = 0;      // +1 or -1
    int rho_infinity = 0;  // 0 iff norm = -1
};

// Fundamental unit of the maximal order, by the continued fraction of
// sqrt(d) (resp. (1+sqrt(d))/2), period detected by (P,Q) state recurrence.
UnitRecord fundamental_unit(const QuadraticField& K);

struct UnitChainRanks {
    int rank_units_mod_squares = 2;   // E/E^2
    int rank_units_mod_totpos = 0;    // E/E+
    int rank_totpos_mod_squares = 0;  // E+/E^2
};

UnitChainRanks unit_chain_ranks(const QuadraticField& K);

} // namespace unitsig
