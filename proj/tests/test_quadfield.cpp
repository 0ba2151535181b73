#include <doctest.h>

#include <random>

#include "unitsig/core_arith.hpp"
#include "unitsig/quadfield.hpp"

using namespace unitsig;

TEST_CASE("make_field") {
    QuadraticField K = make_field(30);
    CHECK(K.D == 120);
    CHECK(K.two_splitting == TwoSplitting::ramified);
    CHECK(K.g == 1);

    K = make_field(33);
    CHECK(K.D == 33);
    CHECK(K.two_splitting == TwoSplitting::split);
    CHECK(K.g == 2);

    K = make_field(5);
    CHECK(K.two_splitting == TwoSplitting::inert);
    CHECK(K.g == 1);

    CHECK_THROWS_AS(make_field(12), NotSquarefree);
    CHECK_THROWS_AS(make_field(1), OutOfRange);
    CHECK_THROWS_AS(make_field(-3), OutOfRange);

    // splitting type matches the Kronecker symbol (D|2)
    for (long d : squarefree_range(2, 200)) {
        QuadraticField F = make_field(d);
        int k = kronecker_symbol(F.D, 2);
        if (F.two_splitting == TwoSplitting::split) CHECK(k == 1);
        if (F.two_splitting == TwoSplitting::inert) CHECK(k == -1);
        if (F.two_splitting == TwoSplitting::ramified) CHECK(k == 0);
    }
}

TEST_CASE("maximal order arithmetic") {
    QuadInt eps(30, 22, 4);  // 11 + 2 sqrt(30)
    CHECK(eps.norm() == 1);
    CHECK(eps.trace() == 22);
    CHECK(QuadInt(5, 1, 1).norm() == -1);  // (1+sqrt5)/2
    QuadInt a(30, 6, 2), b(30, 10, 4);
    CHECK(a.conjugate().conjugate() == a);
    CHECK((a * b).norm() == a.norm() * b.norm());
    CHECK((a + b) - b == a);
    CHECK_THROWS_AS(a * QuadInt(33, 2, 2), MixedFields);
    CHECK_THROWS_AS(QuadInt(30, 1, 2), PreconditionViolated);  // not integral
    CHECK_THROWS_AS(QuadInt(5, 1, 2), PreconditionViolated);

    SUBCASE("exact sign and comparisons") {
        CHECK(QuadInt(30, 22, 4).sign() == 1);
        CHECK(QuadInt(30, 22, -4).conj_sign() == 1);
        CHECK(QuadInt(30, 12, -2).sign() > 0);   // 6 - sqrt(30) > 0
        CHECK(QuadInt(30, 10, -2).sign() < 0);   // 5 - sqrt(30) < 0
        CHECK(QuadInt(2, 2, 2).compare_rational(1, 1) > 0);
        CHECK(QuadInt(2, 2, -2).compare_rational(1, 1) < 0);
        CHECK(QuadInt(2, 2, -2).compare_rational(-1, 1) > 0);
        CHECK(QuadInt(3, 4, 2).is_totally_positive());
        CHECK(!QuadInt(2, 2, 2).is_totally_positive());
    }

    SUBCASE("rendering") {
        CHECK(QuadInt(30, 22, 4).str() == "11 + 2*sqrt(30)");
        CHECK(QuadInt(5, 1, 1).str() == "(1 + sqrt(5))/2");
        CHECK(QuadInt(30, 12, -2).str() == "6 - sqrt(30)");
        CHECK(QuadInt(30, -10, 0).str() == "-5");
    }
}

TEST_CASE("fundamental units match the classical table") {
    struct Row {
        long d, x, y;
        int norm;
    };
    // eps = (x + y sqrt d)/2
    for (const Row& r : {Row{2, 2, 2, -1}, Row{3, 4, 2, 1}, Row{5, 1, 1, -1}, Row{6, 10, 4, 1},
                         Row{7, 16, 6, 1}, Row{10, 6, 2, -1}, Row{13, 3, 1, -1},
                         Row{30, 22, 4, 1}, Row{33, 46, 8, 1}, Row{34, 70, 12, 1},
                         Row{39, 50, 8, 1}, Row{205, 43, 3, 1}}) {
        UnitRecord u = fundamental_unit(make_field(r.d));
        CHECK(u.epsilon == QuadInt(r.d, r.x, r.y));
        CHECK(u.norm == r.norm);
        CHECK(u.rho_infinity == (r.norm == 1 ? 1 : 0));
    }
}

TEST_CASE("fundamental unit minimality by direct Pell search") {
    for (long d : squarefree_range(2, 60)) {
        UnitRecord u = fundamental_unit(make_field(d));
        // smallest (x, y) with x^2 - d y^2 = +-4 and the integrality parity
        QuadInt smallest(d, 0, 0);
        bool found = false;
        for (mpz_class y = 1; !found; ++y) {
            for (long n4 : {-4L, 4L}) {
                mpz_class t = y * y * d + n4;
                auto x = is_perfect_square(t);
                if (!x) continue;
                if (d % 4 != 1 && (*x % 2 != 0 || y % 2 != 0)) continue;
                if (d % 4 == 1 && (*x - y) % 2 != 0) continue;
                smallest = QuadInt(d, *x, y);
                found = true;
                break;
            }
        }
        CHECK(smallest == u.epsilon);
    }
}

TEST_CASE("unit normalization is exact") {
    for (long d : squarefree_range(2, 300)) {
        UnitRecord u = fundamental_unit(make_field(d));
        CHECK(u.epsilon.compare_rational(1, 1) > 0);
        CHECK(u.epsilon.conjugate().compare_rational(1, 1) < 0);
        CHECK(u.epsilon.conjugate().compare_rational(-1, 1) > 0);
        mpz_class n = u.epsilon.norm();
        CHECK((n == 1 || n == -1));
    }
}

TEST_CASE("unit chain ranks") {
    auto r = unit_chain_ranks(make_field(2));
    CHECK(r.rank_units_mod_squares == 2);
    CHECK(r.rank_units_mod_totpos == 2);
    CHECK(r.rank_totpos_mod_squares == 0);

    r = unit_chain_ranks(make_field(3));
    CHECK(r.rank_units_mod_totpos == 1);
    CHECK(r.rank_totpos_mod_squares == 1);

    r = unit_chain_ranks(make_field(30));
    CHECK(r.rank_units_mod_totpos == 1);
    CHECK(r.rank_totpos_mod_squares == 1);

    for (long d : squarefree_range(2, 150)) {
        auto cr = unit_chain_ranks(make_field(d));
        CHECK(cr.rank_units_mod_squares == 2);
        CHECK(cr.rank_units_mod_totpos + cr.rank_totpos_mod_squares == 2);
        UnitRecord u = fundamental_unit(make_field(d));
        CHECK(cr.rank_totpos_mod_squares == u.rho_infinity);
        // the fundamental unit is totally positive exactly when its norm is +1
        CHECK(u.epsilon.is_totally_positive() == (u.norm == 1));
    }
}

TEST_CASE("QuadRat arithmetic and square roots live in the right field") {
    QuadRat x(30, 1, mpq_class(1, 5));
    QuadRat y(30, 2, mpq_class(2, 5));
    QuadRat eps(QuadInt(30, 22, 4));
    CHECK(x * x + y * y == eps);
    CHECK(x.norm() == mpq_class(-1, 5));
    CHECK(x.str() == "1 + 1/5*sqrt(30)");
}
