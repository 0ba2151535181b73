#include "unitsig/quadfield.hpp"

#include <map>
#include <sstream>
#include <vector>

#include "unitsig/core_arith.hpp"

namespace unitsig {

QuadraticField make_field(long d) {
    if (d <= 1) throw OutOfRange("d must be > 1");
    for (const auto& [p, e] : factorize(mpz_class(d)))
        if (e > 1) throw NotSquarefree("d must be squarefree");
    QuadraticField K;
    K.d = d;
    K.D = (d % 4 == 1) ? d : 4 * d;
    if (d % 8 == 1)
        K.two_splitting = TwoSplitting::split;
    else if (d % 4 == 1)
        K.two_splitting = TwoSplitting::inert;
    else
        K.two_splitting = TwoSplitting::ramified;
    K.g = (K.two_splitting == TwoSplitting::split) ? 2 : 1;
    return K;
}

QuadInt::QuadInt(long d, mpz_class x, mpz_class y) : d_(d), x_(std::move(x)), y_(std::move(y)) {
    if (d_ % 4 == 1) {
        if ((x_ - y_) % 2 != 0) throw PreconditionViolated("(x + y sqrt d)/2 not integral");
    } else {
        if (x_ % 2 != 0 || y_ % 2 != 0) throw PreconditionViolated("(x + y sqrt d)/2 not integral");
    }
}

QuadInt QuadInt::omega(long d) {
    return (d % 4 == 1) ? QuadInt(d, 1, 1) : QuadInt(d, 0, 2);
}

QuadInt QuadInt::operator+(const QuadInt& o) const {
    if (d_ != o.d_) throw MixedFields("elements of different fields");
    return QuadInt(d_, x_ + o.x_, y_ + o.y_);
}

QuadInt QuadInt::operator-(const QuadInt& o) const {
    if (d_ != o.d_) throw MixedFields("elements of different fields");
    return QuadInt(d_, x_ - o.x_, y_ - o.y_);
}

QuadInt QuadInt::operator*(const QuadInt& o) const {
    if (d_ != o.d_) throw MixedFields("elements of different fields");
    mpz_class nx = x_ * o.x_ + y_ * o.y_ * d_;
    mpz_class ny = x_ * o.y_ + y_ * o.x_;
    if (nx % 2 != 0 || ny % 2 != 0) throw InternalInconsistency("non-integral product");
    return QuadInt(d_, nx / 2, ny / 2);
}

bool QuadInt::operator==(const QuadInt& o) const {
    return d_ == o.d_ && x_ == o.x_ && y_ == o.y_;
}

mpz_class QuadInt::norm() const {
    mpz_class n = x_ * x_ - y_ * y_ * d_;
    if (n % 4 != 0) throw InternalInconsistency("non-integral norm");
    return n / 4;
}

bool QuadInt::is_unit() const {
    mpz_class n = norm();
    return n == 1 || n == -1;
}

bool QuadInt::is_integer(mpz_class* value) const {
    if (y_ != 0 || x_ % 2 != 0) return false;
    if (value) *value = x_ / 2;
    return true;
}

int QuadInt::sign_of(const mpz_class& x, const mpz_class& y) const {
    if (x >= 0 && y >= 0) return (x == 0 && y == 0) ? 0 : 1;
    if (x <= 0 && y <= 0) return -1;
    int c = cmp(x * x, y * y * d_);
    if (c == 0) throw InternalInconsistency("x^2 = d y^2 with d squarefree");
    if (x > 0) return c > 0 ? 1 : -1;  // y < 0
    return c > 0 ? -1 : 1;             // x < 0, y > 0
}

int QuadInt::compare_rational(const mpz_class& p, const mpz_class& q) const {
    // (x + y sqrt d)/2 - p/q has the sign of (qx - 2p) + qy sqrt(d)
    return sign_of(q * x_ - 2 * p, q * y_);
}

namespace {

std::string render_pair(const mpz_class& a, const mpz_class& b, long d,
                        const mpz_class& den) {
    // (a + b sqrt d) / den with den = 1 or 2
    std::ostringstream os;
    bool half = den != 1;
    if (half) os << "(";
    if (b == 0) {
        os << a;
    } else {
        if (a != 0) os << a << (b > 0 ? " + " : " - ");
        else if (b < 0) os << "-";
        mpz_class ab = abs(b);
        if (ab != 1) os << ab << "*";
        os << "sqrt(" << d << ")";
    }
    if (half) os << ")/2";
    return os.str();
}

} // namespace

std::string QuadInt::str() const {
    if (x_ % 2 == 0 && y_ % 2 == 0) return render_pair(x_ / 2, y_ / 2, d_, 1);
    return render_pair(x_, y_, d_, 2);
}

int QuadRat::sign() const {
    if (i == 0) return sgn(r);
    if (r == 0) return sgn(i);
    if (r > 0 && i > 0) return 1;
    if (r < 0 && i < 0) return -1;
    int c = cmp(r * r, i * i * d);
    if (c == 0) throw InternalInconsistency("rational point on sqrt(d)");
    if (r > 0) return c > 0 ? 1 : -1;
    return c > 0 ? -1 : 1;
}

std::string QuadRat::str() const {
    std::ostringstream os;
    if (i == 0) {
        os << r;
    } else {
        if (r != 0) os << r << (i > 0 ? " + " : " - ");
        else if (i < 0) os << "-";
        mpq_class ai = abs(i);
        if (ai != 1) os << ai << "*";
        os << "sqrt(" << d << ")";
    }
    return os.str();
}

UnitRecord fundamental_unit(const QuadraticField& K) {
    const long d = K.d;
    mpz_class sd;
    mpz_sqrt(sd.get_mpz_t(), mpz_class(d).get_mpz_t());
    const long s = sd.get_si();

    long P = (d % 4 == 1) ? 1 : 0;
    long Q = (d % 4 == 1) ? 2 : 1;

    std::map<std::pair<long, long>, int> seen;
    std::vector<long> Ps, Qs, as;
    int start = -1;
    for (int n = 0;; ++n) {
        auto [it, fresh] = seen.try_emplace({P, Q}, n);
        if (!fresh) {
            start = it->second;
            break;
        }
        Ps.push_back(P);
        Qs.push_back(Q);
        if (Q <= 0) throw InternalInconsistency("continued fraction state left Q > 0");
        long a = (P + s) / Q;
        as.push_back(a);
        long Pn = a * Q - P;
        if ((d - Pn * Pn) % Q != 0) throw InternalInconsistency("continued fraction invariant");
        Q = (d - Pn * Pn) / Q;
        P = Pn;
    }

    // Product of the period's step matrices; the unit is the fixed point
    // of the resulting Moebius map at alpha_start.
    mpz_class m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    for (size_t i = start; i < as.size(); ++i) {
        mpz_class a = as[i];
        mpz_class n00 = m00 * a + m01, n10 = m10 * a + m11;
        m01 = m00;
        m11 = m10;
        m00 = n00;
        m10 = n10;
    }
    const mpz_class Pj = Ps[start], Qj = Qs[start];
    mpz_class xn = 2 * (m10 * Pj + m11 * Qj), yn = 2 * m10;
    if (xn % Qj != 0 || yn % Qj != 0) throw InternalInconsistency("unit not in the maximal order");
    QuadInt eps(d, xn / Qj, yn / Qj);

    mpz_class nrm = eps.norm();
    if (nrm != 1 && nrm != -1) throw InternalInconsistency("continued fraction output not a unit");
    if (eps.compare_rational(1, 1) <= 0) throw InternalInconsistency("unit not normalized > 1");

    UnitRecord r;
    r.epsilon = eps;
    r.norm = (nrm == 1) ? 1 : -1;
    r.rho_infinity = (r.norm == 1) ? 1 : 0;
    return r;
}

UnitChainRanks unit_chain_ranks(const QuadraticField& K) {
    UnitRecord u = fundamental_unit(K);
    UnitChainRanks r;
    r.rank_units_mod_squares = 2;
    r.rank_totpos_mod_squares = u.rho_infinity;
    r.rank_units_mod_totpos = 2 - u.rho_infinity;
    return r;
}

} // namespace unitsig
