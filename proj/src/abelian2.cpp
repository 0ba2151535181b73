#include "unitsig/abelian2.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace unitsig {

namespace {

bool is_power_of_two(long long x) { return x >= 1 && (x & (x - 1)) == 0; }

using Mat = std::vector<std::vector<long long>>;

// Row-style Hermite normal form (upper triangular, positive pivots) of a
// full-column-rank lattice given by stacked row generators.
Mat hnf(Mat M, int n) {
    int rows = (int)M.size();
    int r = 0;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (M[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv == -1) throw InternalInconsistency("lattice not of full rank");
        std::swap(M[r], M[piv]);
        for (int i = r + 1; i < rows; ++i) {
            while (M[i][col] != 0) {
                long long q = M[r][col] / M[i][col];
                for (int j = 0; j < n; ++j) M[r][j] -= q * M[i][j];
                std::swap(M[r], M[i]);
            }
        }
        if (M[r][col] < 0)
            for (int j = 0; j < n; ++j) M[r][j] = -M[r][j];
        for (int i = 0; i < r; ++i) {
            long long q = M[i][col] / M[r][col];
            if (M[i][col] % M[r][col] < 0) q -= 1;  // floor
            if (q != 0)
                for (int j = 0; j < n; ++j) M[i][j] -= q * M[r][j];
        }
        ++r;
    }
    M.resize(n);
    return M;
}

// Smith normal form diagonal of a square integer matrix.
std::vector<long long> snf_diagonal(Mat M) {
    int n = (int)M.size();
    std::vector<long long> diag;
    for (int s = 0; s < n; ++s) {
        while (true) {
            int pi = -1, pj = -1;
            long long best = 0;
            for (int i = s; i < n; ++i)
                for (int j = s; j < n; ++j)
                    if (M[i][j] != 0 && (best == 0 || std::abs(M[i][j]) < best)) {
                        best = std::abs(M[i][j]);
                        pi = i;
                        pj = j;
                    }
            if (pi == -1) throw InternalInconsistency("singular matrix in SNF");
            std::swap(M[s], M[pi]);
            for (int i = s; i < n; ++i) std::swap(M[i][s], M[i][pj]);
            bool clean = true;
            for (int i = s + 1; i < n; ++i)
                if (M[i][s] % M[s][s] != 0 || M[s][i] % M[s][s] != 0) clean = false;
            if (clean) {
                for (int i = s + 1; i < n; ++i) {
                    long long q = M[i][s] / M[s][s];
                    for (int j = s; j < n; ++j) M[i][j] -= q * M[s][j];
                }
                for (int j = s + 1; j < n; ++j) {
                    long long q = M[s][j] / M[s][s];
                    for (int i = s; i < n; ++i) M[i][j] -= q * M[i][s];
                }
                bool divides_all = true;
                for (int i = s + 1; i < n && divides_all; ++i)
                    for (int j = s + 1; j < n && divides_all; ++j)
                        if (M[i][j] % M[s][s] != 0) divides_all = false;
                if (divides_all) break;
                // fold an offending row in and continue
                for (int i = s + 1; i < n; ++i) {
                    bool bad = false;
                    for (int j = s + 1; j < n; ++j)
                        if (M[i][j] % M[s][s] != 0) bad = true;
                    if (bad) {
                        for (int j = s; j < n; ++j) M[s][j] += M[i][j];
                        break;
                    }
                }
            } else {
                for (int i = s + 1; i < n; ++i) {
                    long long q = M[i][s] / M[s][s];
                    for (int j = s; j < n; ++j) M[i][j] -= q * M[s][j];
                }
                for (int j = s + 1; j < n; ++j) {
                    long long q = M[s][j] / M[s][s];
                    for (int i = s; i < n; ++i) M[i][j] -= q * M[i][s];
                }
            }
        }
        diag.push_back(std::abs(M[s][s]));
    }
    return diag;
}

// Invariant factors (> 1, ascending divisibility) of L_out / L_in for full
// lattices L_in <= L_out, both given as row HNF bases or generator stacks.
std::vector<long long> quotient_factors(const Mat& outer_gens, const Mat& inner_gens, int n) {
    Mat H = hnf(outer_gens, n);
    // express inner basis in terms of H: solve X * H = inner (row by row)
    Mat inner = hnf(inner_gens, n);
    Mat X(n, std::vector<long long>(n, 0));
    for (int r = 0; r < n; ++r) {
        for (int j = 0; j < n; ++j) {
            long long acc = inner[r][j];
            for (int i = 0; i < j; ++i) acc -= X[r][i] * H[i][j];
            if (acc % H[j][j] != 0)
                throw InternalInconsistency("inner lattice not contained in outer");
            X[r][j] = acc / H[j][j];
        }
    }
    std::vector<long long> d = snf_diagonal(X);
    std::vector<long long> out;
    for (long long v : d)
        if (v > 1) out.push_back(v);
    std::sort(out.begin(), out.end());
    for (size_t i = 0; i + 1 < out.size(); ++i)
        if (out[i + 1] % out[i] != 0) throw InternalInconsistency("SNF chain broken");
    return out;
}

Mat lambda_rows(const Group2& B) {
    int n = B.n();
    Mat L(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) L[i][i] = B.factors[i];
    return L;
}

Mat stacked(const Subgroup& A) {
    Mat M = A.generators;
    for (auto& row : lambda_rows(A.ambient)) M.push_back(row);
    return M;
}

// Sublattice of vectors in L that are 0 mod 2, as generator rows.
Mat intersect_with_two(const Mat& Hrows, int n) {
    Mat H = Hrows;
    // F2 kernel of c -> c*H mod 2
    Mat work(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) work[i][j] = ((H[i][j] % 2) + 2) % 2;
    // Gaussian elimination on rows over F2, tracking combinations
    Mat comb(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) comb[i][i] = 1;
    int r = 0;
    for (int col = 0; col < n && r < n; ++col) {
        int piv = -1;
        for (int i = r; i < n; ++i)
            if (work[i][col]) {
                piv = i;
                break;
            }
        if (piv == -1) continue;
        std::swap(work[r], work[piv]);
        std::swap(comb[r], comb[piv]);
        for (int i = 0; i < n; ++i) {
            if (i == r || !work[i][col]) continue;
            for (int j = 0; j < n; ++j) {
                work[i][j] ^= work[r][j];
                comb[i][j] ^= comb[r][j];
            }
        }
        ++r;
    }
    Mat gens;
    for (int i = r; i < n; ++i) {  // kernel combinations
        std::vector<long long> v(n, 0);
        for (int k = 0; k < n; ++k)
            if (comb[i][k])
                for (int j = 0; j < n; ++j) v[j] += H[k][j];
        gens.push_back(v);
    }
    for (const auto& row : H) {  // 2 * L
        std::vector<long long> v(n);
        for (int j = 0; j < n; ++j) v[j] = 2 * row[j];
        gens.push_back(v);
    }
    return gens;
}

long long det_of_hnf(const Mat& H) {
    long long d = 1;
    for (size_t i = 0; i < H.size(); ++i) d *= H[i][i];
    return d;
}

} // namespace

Group2::Group2(std::vector<long long> f) : factors(std::move(f)) {
    for (size_t i = 0; i < factors.size(); ++i) {
        if (factors[i] < 2 || !is_power_of_two(factors[i]))
            throw PreconditionViolated("invariant factors must be powers of 2, each >= 2");
        if (i && factors[i] % factors[i - 1] != 0)
            throw PreconditionViolated("invariant factors must form a divisibility chain");
    }
}

long long Group2::order() const {
    long long o = 1;
    for (long long f : factors) o *= f;
    return o;
}

Subgroup::Subgroup(Group2 amb, std::vector<std::vector<long long>> gens)
    : ambient(std::move(amb)), generators(std::move(gens)) {
    for (auto& g : generators) {
        if ((int)g.size() != ambient.n())
            throw NotASubgroup("generator dimension does not match the ambient group");
        for (int i = 0; i < ambient.n(); ++i) {
            g[i] %= ambient.factors[i];
            if (g[i] < 0) g[i] += ambient.factors[i];
        }
    }
}

int rank2(const Group2& G) { return (int)G.factors.size(); }

int four_rank(const Group2& G) {
    int r = 0;
    for (long long f : G.factors) r += (f >= 4);
    return r;
}

std::vector<long long> subgroup_structure(const Subgroup& A) {
    int n = A.ambient.n();
    if (n == 0) return {};
    return quotient_factors(stacked(A), lambda_rows(A.ambient), n);
}

int rank2(const Subgroup& A) { return (int)subgroup_structure(A).size(); }

int four_rank(const Subgroup& A) {
    int r = 0;
    for (long long f : subgroup_structure(A)) r += (f >= 4);
    return r;
}

ExtensionReport analyze_extension(const Group2& B, const Subgroup& A) {
    if (!(A.ambient == B)) throw NotASubgroup("subgroup of a different ambient group");
    ExtensionReport rep;
    int n = B.n();
    rep.rank_B = rank2(B);

    if (n == 0) {
        rep.a_elementary = true;
        rep.max_summand_rank = 0;
        rep.splits = true;
        return rep;
    }

    Mat gprime = hnf(stacked(A), n);
    Mat lambda = lambda_rows(B);

    std::vector<long long> a_factors = quotient_factors(gprime, lambda, n);
    rep.rank_A = (int)a_factors.size();

    // C = Z^n / G'
    Mat idm(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) idm[i][i] = 1;
    std::vector<long long> c_factors = quotient_factors(idm, gprime, n);
    for (long long f : c_factors)
        if (!is_power_of_two(f)) throw InternalInconsistency("quotient is not a 2-group");
    rep.rank_C = (int)c_factors.size();

    Mat h1 = hnf(intersect_with_two(gprime, n), n);
    std::vector<long long> a1_factors = quotient_factors(h1, lambda, n);
    rep.rank_A1 = (int)a1_factors.size();

    rep.four_rank_bound = rep.rank_A + rep.rank_C - rep.rank_B;

    // exactness of the mod-2 sequence: rank B = rank(A/A1) + rank C, where
    // [A:A1] is a power of 2
    long long index = det_of_hnf(h1) / det_of_hnf(gprime);
    if (!is_power_of_two(index)) throw InternalInconsistency("[A:A1] not a power of 2");
    int rank_a_mod_a1 = 0;
    for (long long t = index; t > 1; t /= 2) ++rank_a_mod_a1;
    if (rep.rank_B != rank_a_mod_a1 + rep.rank_C)
        throw InternalInconsistency("rank B != rank(A/A1) + rank C");

    if (four_rank(B) < rep.four_rank_bound)
        throw InternalInconsistency("4-rank lower bound violated");
    if (four_rank(B) < rep.rank_A1 || rep.rank_A1 < rep.four_rank_bound)
        throw InternalInconsistency("rank A1 chain violated");

    rep.a_elementary = true;
    for (const auto& g : A.generators)
        for (int i = 0; i < n; ++i)
            if ((2 * g[i]) % B.factors[i] != 0) rep.a_elementary = false;

    if (rep.a_elementary) {
        rep.max_summand_rank = rep.rank_B - rep.rank_C;
        rep.splits = (rep.rank_B == rep.rank_A + rep.rank_C);
    }
    return rep;
}

std::pair<Group2, std::vector<std::vector<long long>>> normalize_chain(
    std::vector<long long> factors, std::vector<std::vector<long long>> generators) {
    bool ascending = true, descending = true;
    for (size_t i = 0; i + 1 < factors.size(); ++i) {
        if (factors[i] == 0 || factors[i + 1] % factors[i] != 0) ascending = false;
        if (factors[i + 1] == 0 || factors[i] % factors[i + 1] != 0) descending = false;
    }
    if (!ascending && !descending)
        throw PreconditionViolated("invariant factors must form a divisibility chain");
    if (!ascending) {
        std::reverse(factors.begin(), factors.end());
        for (auto& g : generators) std::reverse(g.begin(), g.end());
    }
    Group2 B(factors);
    for (const auto& g : generators)
        if ((int)g.size() != B.n())
            throw NotASubgroup("generator length does not match the invariant factors");
    return {B, generators};
}

ExplicitGroup2::ExplicitGroup2(const Group2& B) : B_(B) {
    long long o = B.order();
    if (o > 1024) throw TooLarge("explicit enumeration is limited to |B| <= 2^10");
    size_ = (int)o;
    stride_.resize(B.n());
    long long s = 1;
    for (int i = 0; i < B.n(); ++i) {
        stride_[i] = s;
        s *= B.factors[i];
    }
}

int ExplicitGroup2::encode(const std::vector<long long>& v) const {
    long long idx = 0;
    for (int i = 0; i < B_.n(); ++i) {
        long long c = v[i] % B_.factors[i];
        if (c < 0) c += B_.factors[i];
        idx += c * stride_[i];
    }
    return (int)idx;
}

std::vector<long long> ExplicitGroup2::decode(int idx) const {
    std::vector<long long> v(B_.n());
    for (int i = 0; i < B_.n(); ++i) {
        v[i] = (idx / stride_[i]) % B_.factors[i];
    }
    return v;
}

int ExplicitGroup2::add(int i, int j) const {
    auto a = decode(i), b = decode(j);
    for (int k = 0; k < B_.n(); ++k) a[k] = (a[k] + b[k]) % B_.factors[k];
    return encode(a);
}

int ExplicitGroup2::scalar(long long k, int i) const {
    auto a = decode(i);
    for (int t = 0; t < B_.n(); ++t) a[t] = (a[t] * k) % B_.factors[t];
    return encode(a);
}

std::vector<int> ExplicitGroup2::span(const std::vector<std::vector<long long>>& gens) const {
    std::vector<char> in(size_, 0);
    std::vector<int> frontier{0}, out{0};
    in[0] = 1;
    while (!frontier.empty()) {
        int e = frontier.back();
        frontier.pop_back();
        for (const auto& g : gens) {
            int t = add(e, encode(g));
            if (!in[t]) {
                in[t] = 1;
                out.push_back(t);
                frontier.push_back(t);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

SmallGroup ExplicitGroup2::group() const {
    return SmallGroup{size_, [this](int i, int j) { return add(i, j); }, 0};
}

long long element_order(const SmallGroup& G, int g) {
    long long o = 1;
    int x = g;
    while (x != G.id) {
        x = G.op(x, g);
        ++o;
        if (o > G.n) throw InternalInconsistency("order exceeds group size");
    }
    return o;
}

std::vector<std::pair<int, long long>> small_abelian_basis(const SmallGroup& G) {
    std::function<std::vector<std::pair<int, long long>>(const SmallGroup&)> rec =
        [&](const SmallGroup& H) -> std::vector<std::pair<int, long long>> {
        if (H.n <= 1) return {};
        long long maxord = 1;
        int gen = H.id;
        for (int g = 0; g < H.n; ++g) {
            long long o = element_order(H, g);
            if (o > maxord) {
                maxord = o;
                gen = g;
            }
        }
        if (maxord == H.n) return {{gen, maxord}};

        std::vector<int> span;
        {
            int x = H.id;
            do {
                span.push_back(x);
                x = H.op(x, gen);
            } while (x != H.id);
        }
        std::vector<int> coset_of(H.n, -1), reps;
        for (int g = 0; g < H.n; ++g) {
            if (coset_of[g] != -1) continue;
            int canon = g;
            for (int s : span) canon = std::min(canon, H.op(g, s));
            int cid = (int)reps.size();
            for (int s : span) coset_of[H.op(g, s)] = cid;
            reps.push_back(canon);
        }
        SmallGroup Q{(int)reps.size(),
                     [&H, coset_of, reps](int i, int j) { return coset_of[H.op(reps[i], reps[j])]; },
                     coset_of[H.id]};
        auto qb = rec(Q);

        std::vector<std::pair<int, long long>> out{{gen, maxord}};
        auto power = [&H](int e, long long k) {
            int acc = H.id;
            for (long long i = 0; i < k; ++i) acc = H.op(acc, e);
            return acc;
        };
        for (auto [qi, mi] : qb) {
            int h = reps[qi];
            int w = power(h, mi);
            long long t = -1;
            int x = H.id;
            for (long long k = 0; k < maxord; ++k) {
                if (x == w) {
                    t = k;
                    break;
                }
                x = H.op(x, gen);
            }
            if (t < 0) throw InternalInconsistency("h^m escaped the cyclic summand");
            if (t % mi != 0) throw InternalInconsistency("discrete log not divisible");
            long long shift = (maxord - (t / mi) % maxord) % maxord;
            int hprime = H.op(h, power(gen, shift));
            if (element_order(H, hprime) != mi)
                throw InternalInconsistency("adjusted basis element has wrong order");
            out.push_back({hprime, mi});
        }
        return out;
    };

    auto basis = rec(G);
    // verify the direct-sum property by incremental span sizes
    std::set<int> span{G.id};
    for (auto [e, o] : basis) {
        std::set<int> next;
        for (int s : span) {
            int x = s;
            for (long long k = 0; k < o; ++k) {
                next.insert(x);
                x = G.op(x, e);
            }
        }
        if ((long long)next.size() != (long long)span.size() * o)
            throw InternalInconsistency("basis elements not independent");
        span = std::move(next);
    }
    if ((int)span.size() != G.n) throw InternalInconsistency("basis does not span");
    return basis;
}

bool brute_force_splits(const Group2& B, const Subgroup& A) {
    if (!(A.ambient == B)) throw NotASubgroup("subgroup of a different ambient group");
    if (B.order() > 1024) throw TooLarge("brute force limited to |B| <= 2^10");
    ExplicitGroup2 E(B);
    std::vector<int> sa = E.span(A.generators);
    if ((int)sa.size() == E.size()) {
        // A = B: complement is trivial; splits iff C is trivial, always true
        return true;
    }

    std::vector<char> in_a(E.size(), 0);
    for (int e : sa) in_a[e] = 1;
    std::vector<int> coset_of(E.size(), -1), reps;
    for (int g = 0; g < E.size(); ++g) {
        if (coset_of[g] != -1) continue;
        int canon = g;
        for (int s : sa) canon = std::min(canon, E.add(g, s));
        int cid = (int)reps.size();
        for (int s : sa) coset_of[E.add(g, s)] = cid;
        reps.push_back(canon);
    }
    SmallGroup Q{(int)reps.size(),
                 [&](int i, int j) { return coset_of[E.add(reps[i], reps[j])]; }, coset_of[0]};
    auto qbasis = small_abelian_basis(Q);

    // a splitting exists iff each quotient basis coset contains a lift of
    // matching order; the searches over the cosets are independent
    std::vector<std::vector<long long>> lifts;
    for (auto [qi, mi] : qbasis) {
        int found = -1;
        for (int e = 0; e < E.size() && found < 0; ++e) {
            if (coset_of[e] != qi) continue;
            if (E.scalar(mi, e) == 0) found = e;
        }
        if (found < 0) return false;
        lifts.push_back(E.decode(found));
    }

    // certify: span of the lifts is a complement
    std::vector<int> sb = E.span(lifts);
    long long expect = 1;
    for (auto& [qi, mi] : qbasis) expect *= mi;
    if ((long long)sb.size() != expect) throw InternalInconsistency("complement has wrong size");
    for (int e : sb)
        if (in_a[e] && e != 0) throw InternalInconsistency("complement meets A");
    if ((long long)sa.size() * sb.size() != E.size())
        throw InternalInconsistency("complement does not span with A");
    return true;
}

} // namespace unitsig
