#include "unitsig/core_arith.hpp"

#include <algorithm>
#include <map>

namespace unitsig {

Place Place::finite(const mpz_class& p) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
        throw PreconditionViolated("finite place must be a prime");
    return Place(false, p);
}

namespace {

// Pollard rho with Floyd cycle detection and batched gcds.  The iteration
// budget is shared across the whole schedule of polynomial constants.
mpz_class pollard_rho(const mpz_class& n, unsigned long budget) {
    unsigned long spent = 0;
    for (unsigned long c = 1; c < 64; ++c) {
        mpz_class x = 2, y = 2, g = 1, q = 1, xs, ys;
        while (g == 1) {
            if (spent >= budget)
                throw FactorizationBudgetExceeded("rho fallback exhausted its budget");
            xs = x;
            ys = y;
            for (int i = 0; i < 64 && spent < budget; ++i, ++spent) {
                x = (x * x + c) % n;
                y = (y * y + c) % n;
                y = (y * y + c) % n;
                q = q * abs(x - y) % n;
            }
            g = gcd(q, n);
        }
        if (g == n) {
            // redo the offending batch step by step
            x = xs;
            y = ys;
            g = 1;
            for (int i = 0; i < 130 && g == 1; ++i) {
                x = (x * x + c) % n;
                y = (y * y + c) % n;
                y = (y * y + c) % n;
                g = gcd(abs(x - y), n);
            }
        }
        if (g != n && g > 1) return g;
    }
    throw FactorizationBudgetExceeded("rho fallback exhausted its constant schedule");
}

void factor_into(mpz_class n, std::map<mpz_class, unsigned>& out, const FactorBudget& budget) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
        out[n]++;
        return;
    }
    mpz_class d = pollard_rho(n, budget.rho_iterations);
    factor_into(d, out, budget);
    factor_into(n / d, out, budget);
}

} // namespace

std::vector<std::pair<mpz_class, unsigned>> factorize(const mpz_class& n, const FactorBudget& budget) {
    if (n == 0) throw PreconditionViolated("factorize(0)");
    std::map<mpz_class, unsigned> acc;
    mpz_class m = abs(n);
    for (unsigned long p = 2; p <= budget.trial_limit; p += (p == 2 ? 1 : 2)) {
        if (mpz_cmp_ui(m.get_mpz_t(), p * p) < 0) break;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            acc[mpz_class(p)]++;
        }
    }
    if (m > 1) factor_into(m, acc, budget);
    return {acc.begin(), acc.end()};
}

SquarefreeDecomposition squarefree_part(const mpz_class& n, const FactorBudget& budget) {
    if (n == 0) throw PreconditionViolated("squarefree_part(0)");
    SquarefreeDecomposition r{n < 0 ? mpz_class(-1) : mpz_class(1), 1};
    for (const auto& [p, e] : factorize(n, budget)) {
        if (e % 2) r.m *= p;
        mpz_class half;
        mpz_pow_ui(half.get_mpz_t(), p.get_mpz_t(), e / 2);
        r.s *= half;
    }
    return r;
}

int kronecker_symbol(const mpz_class& a, const mpz_class& n) {
    if (n == 0) throw PreconditionViolated("kronecker symbol with n = 0");
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

namespace {

// p-adic valuation of a nonzero rational.
long val_p(const mpq_class& x, const mpz_class& p) {
    long v = 0;
    mpz_class t = x.get_num();
    while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
        t /= p;
        ++v;
    }
    t = x.get_den();
    while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
        t /= p;
        --v;
    }
    return v;
}

// x / p^v as a rational unit at p.
mpq_class unit_part(const mpq_class& x, const mpz_class& p, long v) {
    mpz_class pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), std::abs(v));
    mpq_class u = x;
    if (v >= 0)
        u /= pk;
    else
        u *= pk;
    return u;
}

// Residue mod m of an odd rational: num * den is valid mod 8 since den^2 = 1 mod 8.
long odd_residue(const mpq_class& u, long m) {
    mpz_class r = u.get_num() * u.get_den() % m;
    if (r < 0) r += m;
    return r.get_si();
}

} // namespace

int hilbert_symbol_q(const mpq_class& a_in, const mpq_class& b_in, const Place& v) {
    if (a_in == 0 || b_in == 0) throw PreconditionViolated("hilbert symbol of zero");
    if (v.is_real()) return (a_in < 0 && b_in < 0) ? -1 : 1;

    mpq_class a = a_in, b = b_in;
    a.canonicalize();
    b.canonicalize();
    const mpz_class& p = v.prime();
    long alpha = val_p(a, p), beta = val_p(b, p);
    mpq_class u = unit_part(a, p, alpha), w = unit_part(b, p, beta);

    if (p == 2) {
        long u8 = odd_residue(u, 8), w8 = odd_residue(w, 8);
        long e = (u8 % 4 == 3) * (w8 % 4 == 3) + alpha * (w8 == 3 || w8 == 5) +
                 beta * (u8 == 3 || u8 == 5);
        return (e % 2) ? -1 : 1;
    }

    // odd p: (-1)^(alpha beta eps(p)) (u|p)^beta (w|p)^alpha
    int lu = kronecker_symbol(u.get_num(), p) * kronecker_symbol(u.get_den(), p);
    int lw = kronecker_symbol(w.get_num(), p) * kronecker_symbol(w.get_den(), p);
    int r = 1;
    if ((alpha & 1) && (beta & 1) && mpz_class(p % 4) == 3) r = -r;
    if ((beta & 1) && lu < 0) r = -r;
    if ((alpha & 1) && lw < 0) r = -r;
    return r;
}

mpz_class sqrt_mod_2k(const mpz_class& d, unsigned k) {
    if (k < 3) throw PreconditionViolated("sqrt_mod_2k needs k >= 3");
    mpz_class d8 = d % 8;
    if (d8 < 0) d8 += 8;
    if (d8 != 1) throw PreconditionViolated("sqrt_mod_2k needs d = 1 mod 8");
    mpz_class x = 1;  // x^2 = d mod 8, x = 1 mod 4
    for (unsigned j = 3; j < k; ++j) {
        mpz_class mod = mpz_class(1) << (j + 1);
        if ((x * x - d) % mod != 0) x += mpz_class(1) << (j - 1);
    }
    mpz_class mod = mpz_class(1) << k;
    mpz_class r = x % mod;
    if (r < 0) r += mod;
    return r;
}

std::optional<mpz_class> is_perfect_square(const mpz_class& n) {
    if (n < 0) return std::nullopt;
    if (!mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::vector<long long> squarefree_range(long long lo, long long hi) {
    std::vector<long long> out;
    if (hi < lo) return out;
    std::vector<char> ok(hi - lo + 1, 1);
    for (long long p = 2; p * p <= hi; ++p) {
        long long q = p * p;
        long long start = ((lo + q - 1) / q) * q;
        for (long long x = start; x <= hi; x += q) ok[x - lo] = 0;
    }
    for (long long x = std::max(lo, 1LL); x <= hi; ++x)
        if (ok[x - lo]) out.push_back(x);
    return out;
}

} // namespace unitsig
