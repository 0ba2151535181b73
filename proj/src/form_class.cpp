#include "unitsig/form_class.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "unitsig/core_arith.hpp"

namespace unitsig {

using i128 = __int128;

namespace {

constexpr long long kMaxDisc = 1 << 20;  // keeps all intermediates inside __int128

long long ll_isqrt(long long n) {
    long long r = (long long)std::sqrt((double)n);
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square_ll(long long n) {
    if (n < 0) return false;
    long long r = ll_isqrt(n);
    return r * r == n;
}

void check_disc(long long D) {
    if (D <= 0 || (D % 4 != 0 && D % 4 != 1)) throw OutOfRange("not a positive discriminant");
    if (is_square_ll(D)) throw SquareDiscriminant("square discriminant");
    if (D > kMaxDisc) throw OutOfRange("discriminant beyond the supported ceiling");
}

long long floordiv(long long a, long long b) {
    long long q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

long long mod_pos(long long a, long long b) { return a - b * floordiv(a, b); }

// extended gcd: g = ax + by
long long ext_gcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) {
        x = (a >= 0) ? 1 : -1;
        y = 0;
        return std::abs(a);
    }
    long long x1, y1;
    long long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

} // namespace

long long BinaryQuadraticForm::disc() const {
    i128 d = (i128)b * b - 4 * (i128)a * c;
    return (long long)d;
}

long long AbelianGroupStructure::order() const {
    long long n = 1;
    for (long long f : invariant_factors) n *= f;
    return n;
}

int AbelianGroupStructure::rank2() const {
    int r = 0;
    for (long long f : invariant_factors) r += (f % 2 == 0);
    return r;
}

int AbelianGroupStructure::four_rank() const {
    int r = 0;
    for (long long f : invariant_factors) r += (f % 4 == 0);
    return r;
}

std::string AbelianGroupStructure::str() const {
    if (invariant_factors.empty()) return "trivial";
    std::ostringstream os;
    for (size_t i = 0; i < invariant_factors.size(); ++i)
        os << (i ? " x " : "") << "Z/" << invariant_factors[i];
    return os.str();
}

bool is_reduced(const BinaryQuadraticForm& f) {
    long long D = f.disc();
    if (D <= 0 || is_square_ll(D)) throw SquareDiscriminant("square discriminant");
    if (f.b <= 0) return false;
    i128 b2 = (i128)f.b * f.b;
    if (b2 >= D) return false;
    long long t = 2 * std::abs(f.a);
    if ((i128)(t + f.b) * (t + f.b) <= D) return false;
    if (t > f.b && (i128)(t - f.b) * (t - f.b) >= D) return false;
    return true;
}

BinaryQuadraticForm rho_step(const BinaryQuadraticForm& f) {
    long long D = f.disc();
    long long s = ll_isqrt(D);
    long long ac = std::abs(f.c);
    if (ac == 0) throw SquareDiscriminant("degenerate form");
    // r = -b mod 2|c|, normalized into (|c|-2|c|, |c|] or (s-2|c|, s]
    long long window = (ac > s) ? ac : s;
    long long r = window - mod_pos(window + f.b, 2 * ac);
    i128 c2 = ((i128)r * r - D) / (4 * (i128)f.c);
    return BinaryQuadraticForm{f.c, r, (long long)c2};
}

BinaryQuadraticForm reduce(const BinaryQuadraticForm& f) {
    check_disc(f.disc());
    BinaryQuadraticForm g = f;
    for (int i = 0; i < 100000; ++i) {
        if (is_reduced(g)) return g;
        g = rho_step(g);
    }
    throw InternalInconsistency("reduction failed to terminate");
}

std::vector<std::vector<BinaryQuadraticForm>> enumerate_classes(long long D) {
    check_disc(D);
    std::vector<BinaryQuadraticForm> all;
    for (long long b = (D % 2 == 0) ? 2 : 1; b * b < D; b += 2) {
        long long M = (D - b * b) / 4;
        for (long long u = 1; u * u <= M; ++u) {
            if (M % u != 0) continue;
            for (long long av : {u, M / u}) {
                long long cv = -(M / av);
                for (int sign : {1, -1}) {
                    BinaryQuadraticForm f{sign * av, b, sign * cv};
                    if (is_reduced(f)) all.push_back(f);
                }
                if (u * u == M) break;  // av == M/u, avoid the duplicate
            }
        }
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    std::vector<std::vector<BinaryQuadraticForm>> cycles;
    std::map<BinaryQuadraticForm, bool> used;
    for (const auto& f : all) {
        if (used[f]) continue;
        std::vector<BinaryQuadraticForm> cyc;
        BinaryQuadraticForm g = f;
        do {
            cyc.push_back(g);
            used[g] = true;
            g = rho_step(g);
            if (cyc.size() > 100000) throw InternalInconsistency("unterminated cycle");
        } while (!(g == f));
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

BinaryQuadraticForm compose_forms(const BinaryQuadraticForm& f1, const BinaryQuadraticForm& f2) {
    long long D = f1.disc();
    if (D != f2.disc()) throw MixedDiscriminants("composition needs equal discriminants");
    check_disc(D);

    // replace f1 by an equivalent form whose leading coefficient is coprime
    // to f2's
    auto value = [&](long long x, long long y) {
        return (long long)((i128)f1.a * x * x + (i128)f1.b * x * y + (i128)f1.c * y * y);
    };
    long long x = 0, y = 0;
    bool found = false;
    for (long long k = 1; k <= 64 && !found; ++k) {
        for (long long xx = -k; xx <= k && !found; ++xx) {
            for (long long yy = -k; yy <= k && !found; ++yy) {
                if (std::max(std::abs(xx), std::abs(yy)) != k) continue;
                if (std::gcd(xx, yy) != 1) continue;
                long long v = value(xx, yy);
                if (v != 0 && std::gcd(v, f2.a) == 1) {
                    x = xx;
                    y = yy;
                    found = true;
                }
            }
        }
    }
    if (!found) throw InternalInconsistency("no representation coprime to the cofactor");

    long long w, z;
    ext_gcd(x, y, w, z);  // x*w + y*z = 1
    z = -z;               // now x*w - y*z = 1, matrix [[x, z], [y, w]]
    long long a1 = value(x, y);
    long long b1 =
        (long long)(2 * ((i128)f1.a * x * z + (i128)f1.c * y * w) + (i128)f1.b * (x * w + y * z));
    long long c1 = (long long)(((i128)b1 * b1 - D) / (4 * (i128)a1));
    if (BinaryQuadraticForm{a1, b1, c1}.disc() != D)
        throw InternalInconsistency("equivalence transform broke the discriminant");

    // concordant pair: B = b1 mod 2a1, B = f2.b mod 2a2
    long long m1 = 2 * std::abs(a1), m2 = 2 * std::abs(f2.a);
    long long g = std::gcd(m1, m2);
    if ((f2.b - b1) % g != 0) throw InternalInconsistency("incompatible congruences");
    long long u, v;
    ext_gcd(m1 / g, m2 / g, u, v);
    long long lcm = m1 / g * m2;
    i128 step = (i128)(m1) * (( (f2.b - b1) / g) % (m2 / g)) % lcm * u % lcm;
    long long B = (long long)((((i128)b1 + step) % lcm + lcm) % lcm);

    i128 a3 = (i128)a1 * f2.a;
    i128 c3 = (((i128)B * B - D) / 4) / a3;
    if ((((i128)B * B - D) / 4) % a3 != 0) throw InternalInconsistency("composition not integral");
    return reduce(BinaryQuadraticForm{(long long)a3, B, (long long)c3});
}

ClassGroup::ClassGroup(long long D) : D_(D) {
    cycles_ = enumerate_classes(D);
    int n = (int)cycles_.size();
    reps_.reserve(n);
    for (int i = 0; i < n; ++i) {
        reps_.push_back(*std::min_element(cycles_[i].begin(), cycles_[i].end()));
        for (const auto& f : cycles_[i]) index_.push_back({f, i});
    }
    std::sort(index_.begin(), index_.end());

    long long b0 = (D % 2 == 0) ? 0 : 1;
    identity_ = class_of(BinaryQuadraticForm{1, b0, (long long)(((i128)b0 * b0 - D) / 4)});

    table_.assign((size_t)n * n, -1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            int k = class_of(compose_forms(reps_[i], reps_[j]));
            table_[(size_t)i * n + j] = table_[(size_t)j * n + i] = k;
        }
}

int ClassGroup::class_of(const BinaryQuadraticForm& f) const {
    if (f.disc() != D_) throw MixedDiscriminants("form of another discriminant");
    BinaryQuadraticForm r = reduce(f);
    auto it = std::lower_bound(index_.begin(), index_.end(), std::make_pair(r, -1));
    if (it == index_.end() || !(it->first == r))
        throw InternalInconsistency("reduced form missing from the enumeration");
    return it->second;
}

int ClassGroup::compose(int i, int j) const {
    return table_[(size_t)i * cycles_.size() + j];
}

int ClassGroup::inverse(int i) const {
    const auto& f = reps_[i];
    return class_of(BinaryQuadraticForm{f.a, -f.b, f.c});
}

namespace {

// Invariant factors of a finite abelian group given by a multiplication
// callback: split off a maximal-order cyclic summand and recurse on the
// quotient.
std::vector<long long> census_factors(int n, const std::function<int(int, int)>& op, int id) {
    if (n <= 1) return {};
    std::vector<long long> order(n, 0);
    long long maxord = 1;
    int gen = id;
    for (int g = 0; g < n; ++g) {
        int x = g;
        long long o = 1;
        while (x != id) {
            x = op(x, g);
            ++o;
        }
        order[g] = o;
        if (o > maxord) {
            maxord = o;
            gen = g;
        }
    }
    if (maxord == n) return {(long long)n};

    // cosets of <gen>
    std::vector<int> span;
    {
        int x = id;
        do {
            span.push_back(x);
            x = op(x, gen);
        } while (x != id);
    }
    std::vector<int> coset_of(n, -1);
    std::vector<int> rep;
    for (int g = 0; g < n; ++g) {
        if (coset_of[g] != -1) continue;
        int cid = (int)rep.size();
        int canon = g;
        for (int s : span) canon = std::min(canon, op(g, s));
        for (int s : span) coset_of[op(g, s)] = cid;
        rep.push_back(canon);
    }
    auto opq = [&](int i, int j) { return coset_of[op(rep[i], rep[j])]; };
    std::vector<long long> rest = census_factors((int)rep.size(), opq, coset_of[id]);
    rest.push_back(maxord);
    for (size_t i = 0; i + 1 < rest.size(); ++i)
        if (rest[i + 1] % rest[i] != 0)
            throw InternalInconsistency("invariant factor chain broken");
    return rest;
}

} // namespace

AbelianGroupStructure group_structure(const ClassGroup& G) {
    int n = (int)G.class_number();
    auto op = [&](int i, int j) { return G.compose(i, j); };
    AbelianGroupStructure s{census_factors(n, op, G.identity())};
    if (s.order() != n) throw InternalInconsistency("invariant factors do not multiply to h+");
    return s;
}

namespace {

// Class of the principal ideal (sqrt d): the form attached to its oriented
// Z-basis, N(alpha x + beta y)/N(ideal).
int sqrt_d_class(const ClassGroup& G, long long d) {
    BinaryQuadraticForm f = (d % 4 == 1) ? BinaryQuadraticForm{(d - 1) / 4, -1, -1}
                                         : BinaryQuadraticForm{d, 0, -1};
    return G.class_of(f);
}

AbelianGroupStructure quotient_structure(const ClassGroup& G, int g0) {
    int n = (int)G.class_number();
    int inv = G.compose(g0, g0);
    if (inv != G.identity()) throw InternalInconsistency("(sqrt d) class has order > 2");
    std::vector<int> coset_of(n, -1), rep;
    for (int i = 0; i < n; ++i) {
        if (coset_of[i] != -1) continue;
        int j = G.compose(i, g0);
        int cid = (int)rep.size();
        coset_of[i] = coset_of[j] = cid;
        rep.push_back(std::min(i, j));
    }
    auto op = [&](int i, int j) { return coset_of[G.compose(rep[i], rep[j])]; };
    AbelianGroupStructure s{census_factors((int)rep.size(), op, coset_of[G.identity()])};
    if (s.order() != (long long)rep.size())
        throw InternalInconsistency("quotient census inconsistent");
    return s;
}

} // namespace

AbelianGroupStructure wide_class_group(const QuadraticField& K) {
    ClassGroup G(K.D);
    UnitRecord unit = fundamental_unit(K);
    if (unit.norm == -1) return group_structure(G);
    int g0 = sqrt_d_class(G, K.d);
    if (g0 == G.identity())
        throw InternalInconsistency("(sqrt d) narrowly principal despite unit norm +1");
    return quotient_structure(G, g0);
}

bool norm_minus_one_solvable(const QuadraticField& K) {
    mpq_class dq(K.d), minus_one(-1);
    bool by_symbols = true;
    if (hilbert_symbol_q(dq, minus_one, Place::finite(2)) != 1) by_symbols = false;
    for (const auto& [p, e] : factorize(mpz_class(K.D)))
        if (p != 2 && hilbert_symbol_q(dq, minus_one, Place::finite(p)) != 1) by_symbols = false;

    bool by_congruence = true;
    for (const auto& [p, e] : factorize(mpz_class(K.d)))
        if (p != 2 && p % 4 != 1) by_congruence = false;
    if (by_symbols != by_congruence)
        throw InternalInconsistency("Hilbert symbol and congruence routes disagree");
    return by_symbols;
}

RankReport rank_report(const QuadraticField& K, const UnitRecord& unit) {
    RankReport r;
    r.d = K.d;
    r.D = K.D;
    r.unit_norm = unit.norm;
    r.rho_inf = unit.rho_infinity;

    ClassGroup G(K.D);
    r.narrow = group_structure(G);
    r.h_plus = G.class_number();
    r.rho_plus = r.narrow.rank2();
    r.four_rank_plus = r.narrow.four_rank();

    if (unit.norm == -1) {
        r.wide = r.narrow;
    } else {
        int g0 = sqrt_d_class(G, K.d);
        if (g0 == G.identity())
            throw InternalInconsistency("(sqrt d) narrowly principal despite unit norm +1");
        r.wide = quotient_structure(G, g0);
    }
    r.h = r.wide.order();
    r.rho = r.wide.rank2();
    r.omega_exists = norm_minus_one_solvable(K);
    r.splits = (r.rho_plus == r.rho_inf + r.rho);

    // paper-backed inequalities and the splitting trichotomy; violations are
    // hard errors
    if (r.four_rank_plus < r.rho_inf + r.rho - r.rho_plus)
        throw InternalInconsistency("4-rank bound violated at d=" + std::to_string(K.d));
    if (r.rho_plus - r.rho > 1)
        throw InternalInconsistency("Armitage-Frohlich violated at d=" + std::to_string(K.d));
    if (r.h_plus != r.h << r.rho_inf)
        throw InternalInconsistency("|C+| != |C| 2^rho_inf at d=" + std::to_string(K.d));
    if (r.four_rank_plus < r.rho_inf - 1)
        throw InternalInconsistency("degree-n 4-rank bound violated at d=" + std::to_string(K.d));
    if (unit.norm == -1) {
        if (!(r.h_plus == r.h && r.narrow == r.wide))
            throw InternalInconsistency("trichotomy (norm -1) violated at d=" + std::to_string(K.d));
    } else if (!r.omega_exists) {
        if (!(r.rho_plus == r.rho + 1 && r.splits))
            throw InternalInconsistency("trichotomy (no omega) violated at d=" + std::to_string(K.d));
    } else {
        if (!(r.h_plus == 2 * r.h && r.rho_plus == r.rho))
            throw InternalInconsistency("trichotomy (omega, unit norm +1) violated at d=" +
                                        std::to_string(K.d));
    }
    int t = (int)factorize(mpz_class(K.D)).size();
    if (r.rho_plus != t - 1)
        throw InternalInconsistency("genus rank mismatch at d=" + std::to_string(K.d));
    return r;
}

RankReport rank_report(const QuadraticField& K) { return rank_report(K, fundamental_unit(K)); }

} // namespace unitsig
