#include "support.hpp"

#include <doctest.h>

using namespace btexp;
using namespace testsupport;

namespace {

const Bidegree kExact{kUnbounded, kUnbounded};

Jet zz(int n = 1) { return jet_mul(Jet::z(n, 0), Jet::zbar(n, 0)); }
Jet one(int n = 1) { return Jet::constant(n, PiScalar(1L)); }
Jet no_constant(const Jet& a) { return a - Jet::constant(a.n(), a.constant_term()); }

} // namespace

TEST_SUITE("jets")
{
    TEST_CASE("piscalar canonical form and arithmetic")
    {
        PiScalar a = PiScalar::ratio(1, 2) * PiScalar::pi(-2);
        CHECK(a.str() == "1/2 * pi^-2");
        CHECK(a.decimal(30) == "0.0506605918211688857219397316049");
        CHECK(PiScalar::pi().decimal(30) == "3.14159265358979323846264338328");
        PiScalar b = PiScalar::ratio(3, 4) * PiScalar::pi(-1) - PiScalar(2L) * PiScalar::pi();
        CHECK(b.decimal(30) == "-6.0444528925417434732719611215");
        CHECK((b - b).is_zero());
        CHECK((b - b).str() == "0");
        CHECK(PiScalar::ratio(2, 4) == PiScalar::ratio(1, 2));
        CHECK(a * a.inverse() == PiScalar(1L));
        CHECK_THROWS_AS(b.inverse(), DomainError);
        PiScalar i = PiScalar::imag_unit();
        CHECK(i * i == PiScalar(-1L));
        CHECK((i * PiScalar::pi()).conj() == -(i * PiScalar::pi()));
        CHECK(rational_str(Rational(3)) == "3/1");
        CHECK(parse_rational("-6/4") == Rational(-3, 2));
        CHECK_THROWS_AS(parse_rational("1.5"), SchemaError);
    }

    TEST_CASE("piscalar ring laws on random values")
    {
        Rng rng(11);
        for (int t = 0; t < 1000; ++t) {
            PiScalar x = random_scalar(rng, true, -2, 2) + random_scalar(rng, true, -2, 2);
            PiScalar y = random_scalar(rng, true, -2, 2);
            PiScalar z = random_scalar(rng, true, -2, 2) + random_scalar(rng, true, -2, 2);
            CHECK((x * y) * z == x * (y * z));
            CHECK(x * (y + z) == x * y + x * z);
            CHECK(x * y == y * x);
            CHECK((x * y).conj() == x.conj() * y.conj());
            PiScalar acc = x;
            acc.addmul(y, z);
            CHECK(acc == x + y * z);
        }
    }

    TEST_CASE("jet_mul examples")
    {
        Jet a = one() + zz();
        Jet expect = one() + jet_scale(zz(), PiScalar(2L)) + jet_mul(zz(), zz());
        CHECK(a * a == expect);
        CHECK(a * one() == a);
        Jet z = jet_truncate(Jet::z(1, 0), {1, 1});
        Jet zb = jet_truncate(Jet::zbar(1, 0), {1, 1});
        CHECK(z * zb == jet_truncate(zz(), {1, 1}));
        CHECK_THROWS_AS(Jet::z(1, 0) * Jet::z(2, 0), DomainError);
    }

    TEST_CASE("jet_diff examples")
    {
        Jet z2zb = mono(1, {2}, {1});
        CHECK(jet_diff(z2zb, Var::Z, 0) == jet_scale(zz(), PiScalar(2L)));
        CHECK(jet_diff(mono(1, {2}, {0}), Var::Zbar, 0).has_no_terms());
        Rng rng(3);
        Jet a = random_jet(rng, 2, {3, 3}, 60);
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                CHECK(jet_diff(jet_diff(a, Var::Z, j), Var::Zbar, k) == jet_diff(jet_diff(a, Var::Zbar, k), Var::Z, j));
        CHECK(jet_diff(a, Var::Z, 0).trunc() == Bidegree{2, 3});
    }

    TEST_CASE("jet_conj examples")
    {
        CHECK(jet_conj(Jet::z(1, 0)) == Jet::zbar(1, 0));
        Rng rng(5);
        Jet a = random_jet(rng, 2, {3, 2});
        CHECK(jet_conj(jet_conj(a)) == a);
        CHECK(jet_conj(a).trunc() == Bidegree{2, 3});
        Jet r = random_real_jet(rng, 2, 3);
        CHECK(is_real(r));
        CHECK(jet_conj(r) == r);
        CHECK_FALSE(is_real(Jet::z(1, 0)));
    }

    TEST_CASE("jet_log examples")
    {
        CHECK(jet_log(one()).has_no_terms());
        Jet a = jet_truncate(one() + zz(), {2, 2});
        Jet expect = jet_truncate(zz() - jet_scale(jet_mul(zz(), zz()), PiScalar::ratio(1, 2)), {2, 2});
        CHECK(jet_log(a) == expect);
        Jet b = jet_truncate(one() + Jet::z(1, 0) + Jet::zbar(1, 0), {3, 3});
        CHECK(jet_exp(jet_log(b)) == b);
        CHECK_THROWS_AS(jet_log(jet_truncate(zz(), {2, 2})), DomainError);
        // log drops the constant: exp(log a) = a / a(0)
        Jet c = jet_truncate(Jet::constant(1, PiScalar::pi(2)) + zz(), {2, 2});
        CHECK(jet_exp(jet_log(c)) == jet_scale(c, PiScalar::pi(-2)));
    }

    TEST_CASE("jet_det examples")
    {
        CHECK(jet_det(JetMatrix::identity(3, 2)) == one(2));
        JetMatrix d(2, 2, 2);
        d(0, 0) = Jet::constant(2, PiScalar(3L));
        d(1, 1) = Jet::constant(2, PiScalar::ratio(1, 5));
        CHECK(jet_det(d) == Jet::constant(2, PiScalar::ratio(3, 5)));
        JetMatrix m(1, 1, 1);
        m(0, 0) = one() + zz();
        CHECK(jet_det(m) == m(0, 0));
        CHECK_THROWS_AS(jet_det(JetMatrix(2, 3, 1)), DomainError);
    }

    TEST_CASE("jet_matrix_inverse examples")
    {
        CHECK(jet_matrix_inverse(JetMatrix::identity(2, 2)) == JetMatrix::identity(2, 2));
        JetMatrix d(1, 1, 1);
        d(0, 0) = Jet::constant(1, PiScalar(2L));
        CHECK(jet_matrix_inverse(d)(0, 0) == Jet::constant(1, PiScalar::ratio(1, 2)));
        JetMatrix m(1, 1, 1);
        m(0, 0) = jet_truncate(one() + zz(), {3, 3});
        Jet geo = jet_truncate(one() - zz() + jet_pow(zz(), 2) - jet_pow(zz(), 3), {3, 3});
        CHECK(jet_matrix_inverse(m)(0, 0) == geo);
        JetMatrix s(2, 2, 1);
        s(0, 0) = Jet::z(1, 0);
        s(1, 1) = one();
        CHECK_THROWS_AS(jet_matrix_inverse(s), DomainError);
    }

    TEST_CASE("jet_substitute examples")
    {
        Jet z = Jet::z(1, 0);
        CHECK(jet_substitute(zz(), {jet_scale(z, PiScalar(2L))}) == jet_scale(zz(), PiScalar(4L)));
        Rng rng(7);
        Jet a = random_jet(rng, 2, {3, 3});
        CHECK(jet_substitute(a, {Jet::z(2, 0), Jet::z(2, 1)}) == a);
        Jet z2 = jet_truncate(mono(1, {2}, {0}), {3, 0});
        Jet expect = jet_truncate(mono(1, {2}, {0}) + jet_scale(mono(1, {3}, {0}), PiScalar(2L)), {3, 0});
        CHECK(jet_substitute(z2, {z + mono(1, {2}, {0})}) == expect);
        CHECK_THROWS_AS(jet_substitute(zz(), {z + one()}), DomainError);
        CHECK_THROWS_AS(jet_substitute(zz(), {Jet::zbar(1, 0)}), DomainError);
    }

    TEST_CASE("ring laws on random jets")
    {
        Rng rng(2024);
        for (int t = 0; t < 1000; ++t) {
            const int n = uniform(rng, 1, 3);
            auto tr = [&] { return Bidegree{uniform(rng, 0, 3), uniform(rng, 0, 3)}; };
            Jet a = random_jet(rng, n, tr(), 30);
            Jet b = random_jet(rng, n, tr(), 30);
            Jet c = random_jet(rng, n, tr(), 30);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            CHECK((a + b) + c == a + (b + c));
            CHECK(jet_conj(a * b) == jet_conj(a) * jet_conj(b));
        }
    }

    TEST_CASE("Leibniz rule in every variable")
    {
        Rng rng(99);
        for (int t = 0; t < 200; ++t) {
            const int n = uniform(rng, 1, 3);
            Jet a = random_jet(rng, n, {uniform(rng, 0, 3), uniform(rng, 0, 3)}, 40);
            Jet b = random_jet(rng, n, {uniform(rng, 0, 3), uniform(rng, 0, 3)}, 40);
            for (int j = 0; j < n; ++j)
                for (Var v : {Var::Z, Var::Zbar}) {
                    Jet lhs = jet_diff(a * b, v, j);
                    Jet rhs = jet_diff(a, v, j) * b + a * jet_diff(b, v, j);
                    Bidegree t2 = min_bidegree(lhs.trunc(), rhs.trunc());
                    CHECK(jet_truncate(lhs, t2) == jet_truncate(rhs, t2));
                }
        }
    }

    TEST_CASE("conj commutes with derivatives and truncation")
    {
        Rng rng(17);
        for (int t = 0; t < 200; ++t) {
            const int n = uniform(rng, 1, 3);
            Jet a = random_jet(rng, n, {uniform(rng, 0, 3), uniform(rng, 0, 3)}, 40);
            for (int j = 0; j < n; ++j) {
                CHECK(jet_conj(jet_diff(a, Var::Z, j)) == jet_diff(jet_conj(a), Var::Zbar, j));
                CHECK(jet_conj(jet_diff(a, Var::Zbar, j)) == jet_diff(jet_conj(a), Var::Z, j));
            }
            Bidegree cut{uniform(rng, 0, 2), uniform(rng, 0, 2)};
            CHECK(jet_conj(jet_truncate(a, cut)) == jet_truncate(jet_conj(a), {cut.anti, cut.hol}));
        }
    }

    TEST_CASE("truncation stability")
    {
        Rng rng(31);
        for (int t = 0; t < 100; ++t) {
            const int n = uniform(rng, 1, 2);
            Bidegree hi{3, 3};
            Bidegree lo{uniform(rng, 0, 2), uniform(rng, 0, 2)};
            Jet a = random_jet(rng, n, hi, 40) + Jet::constant(n, PiScalar(7L));
            Jet b = random_jet(rng, n, hi, 40);
            Jet al = jet_truncate(a, lo);
            Jet bl = jet_truncate(b, lo);
            auto same = [&](const Jet& high, const Jet& low) { CHECK(jet_truncate(high, low.trunc()) == low); };
            same(a * b, al * bl);
            same(a + b, al + bl);
            same(jet_conj(a), jet_conj(al));
            same(jet_diff(a, Var::Z, 0), jet_diff(al, Var::Z, 0));
            same(jet_inverse(a), jet_inverse(al));
            same(jet_log(a), jet_log(al));
            Jet a0 = a - Jet::constant(n, a.constant_term());
            same(jet_exp(a0), jet_exp(jet_truncate(a0, lo)));
            std::vector<Jet> map;
            for (int j = 0; j < n; ++j) map.push_back(Jet::z(n, j) + random_holomorphic(rng, n, 3, 30));
            same(jet_substitute(a, map), jet_substitute(al, map));
            JetMatrix m(2, 2, n);
            JetMatrix ml(2, 2, n);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) {
                    m(r, c) = no_constant(random_jet(rng, n, hi, 30)) + (r == c ? one(n) : Jet::zero(n));
                    ml(r, c) = jet_truncate(m(r, c), lo);
                }
            same(jet_det(m), jet_det(ml));
            JetMatrix inv = jet_matrix_inverse(m);
            JetMatrix invl = jet_matrix_inverse(ml);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) same(inv(r, c), invl(r, c));
        }
    }

    TEST_CASE("inverse, exp and log identities")
    {
        Rng rng(41);
        for (int t = 0; t < 100; ++t) {
            const int n = uniform(rng, 1, 3);
            Bidegree tr{uniform(rng, 0, 3), uniform(rng, 0, 3)};
            Jet a = random_jet(rng, n, tr, 40) + Jet::constant(n, random_scalar(rng, true, -1, 1) + PiScalar(7L));
            if (!a.constant_term().is_monomial()) continue;
            CHECK(a * jet_inverse(a) == jet_truncate(one(n), tr));
            Jet l = jet_log(a);
            CHECK(jet_exp(l) == jet_scale(a, a.constant_term().inverse()));
            Jet b = no_constant(random_jet(rng, n, tr, 40)) + one(n);
            CHECK(jet_log(a * b) == jet_log(a) + jet_log(b));
        }
    }

    TEST_CASE("matrix inverse and determinant")
    {
        Rng rng(43);
        for (int t = 0; t < 30; ++t) {
            const int n = uniform(rng, 1, 3);
            const int size = uniform(rng, 1, 3);
            JetMatrix m(size, size, n);
            for (int r = 0; r < size; ++r)
                for (int c = 0; c < size; ++c)
                    m(r, c) = no_constant(random_jet(rng, n, {2, 2}, 30))
                              + (r == c ? Jet::constant(n, PiScalar::pi()) : Jet::zero(n));
            JetMatrix inv = jet_matrix_inverse(m);
            JetMatrix prod = jet_matmul(m, inv);
            JetMatrix prod2 = jet_matmul(inv, m);
            CHECK(prod == jet_truncate(JetMatrix::identity(size, n), {2, 2}));
            CHECK(prod2 == jet_truncate(JetMatrix::identity(size, n), {2, 2}));
            CHECK(jet_det(m) * jet_det(inv) == jet_truncate(one(n), {2, 2}));
        }
    }

    TEST_CASE("substitution is functorial")
    {
        Rng rng(53);
        for (int t = 0; t < 60; ++t) {
            const int n = uniform(rng, 1, 2);
            Jet a = random_jet(rng, n, {3, 3}, 40);
            std::vector<Jet> m1;
            std::vector<Jet> m2;
            for (int j = 0; j < n; ++j) {
                m1.push_back(jet_scale(Jet::z(n, j), random_scalar(rng) + PiScalar(9L)) + random_holomorphic(rng, n, 3));
                m2.push_back(Jet::z(n, j) + random_holomorphic(rng, n, 3));
            }
            std::vector<Jet> comp;
            for (const Jet& c : m1) comp.push_back(jet_substitute(c, m2));
            CHECK(jet_substitute(jet_substitute(a, m1), m2) == jet_substitute(a, comp));
        }
    }

    TEST_CASE("declared valuation extends product truncation")
    {
        Rng rng(61);
        for (int t = 0; t < 50; ++t) {
            const int n = uniform(rng, 1, 2);
            std::vector<Jet::Term> terms;
            for (const auto& a : multi_indices_upto(n, 4))
                for (const auto& b : multi_indices_upto(n, 4)) {
                    int da = 0;
                    int db = 0;
                    for (int e : a) da += e;
                    for (int e : b) db += e;
                    if (da >= 2 && db >= 2 && uniform(rng, 1, 100) <= 30)
                        terms.emplace_back(make_key(a, b), random_scalar(rng));
                }
            Jet p = Jet::from_terms(n, kExact, terms);
            Jet cut = jet_truncate(p, {3, 3});
            cut.declare_valuation({2, 2});
            Jet sq = cut * cut;
            CHECK(sq.trunc().hol >= 5);
            CHECK(sq.trunc().anti >= 5);
            CHECK(sq == jet_truncate(p * p, sq.trunc()));
            if (!cut.has_no_terms()) {
                int low = kUnbounded;
                for (const auto& [k, c] : cut.terms()) low = std::min(low, key_hol_degree(k));
                CHECK_THROWS_AS(Jet(cut).declare_valuation({low + 1, 0}), DomainError);
            }
        }
    }

    TEST_CASE("coefficient access beyond truncation throws")
    {
        Jet a = jet_truncate(one() + zz(), {1, 1});
        CHECK(a.coeff({1}, {1}) == PiScalar(1L));
        CHECK_THROWS_AS(a.coeff({2}, {0}), TruncationError);
        CHECK(deriv0(jet_truncate(mono(1, {2}, {1}, PiScalar(3L)), {3, 3}), {0, 0}, {0}) == PiScalar(6L));
        try {
            (void)a.coeff({2}, {2});
            FAIL("expected TruncationError");
        } catch (const TruncationError& e) {
            CHECK(e.required() == Bidegree{2, 2});
            CHECK(e.available() == Bidegree{1, 1});
        }
    }
}
