#include <doctest.h>

#include "telsig/biseries.hpp"
#include "telsig/series.hpp"

using namespace telsig;

namespace {

Series unit_from(const VarTablePtr& v, std::vector<Rational> cs, int trunc) {
    std::vector<GradedPoly> w;
    for (auto& c : cs) w.push_back(GradedPoly::constant(v, std::move(c)));
    return Series::from_coeffs(v, 0, std::move(w), trunc);
}

} // namespace

TEST_CASE("root of 1 + 2z + O(z^2)") {
    auto v = empty_vartable();
    Series s = unit_from(v, {Rational(1), Rational(2)}, 2);
    Series t = series_root(s, 2);
    CHECK(t.truncation() == 2);
    CHECK(t.coeff(0).constant_value() == Rational(1));
    CHECK(t.coeff(1).constant_value() == Rational(1));
}

TEST_CASE("root identity case 1 + O(z^N)") {
    auto v = empty_vartable();
    for (int N : {1, 5, 17}) {
        Series s = unit_from(v, {Rational(1)}, N);
        for (long r : {2L, 3L, 7L}) {
            Series t = series_root(s, r);
            CHECK(t.truncation() == N);
            CHECK(t.coeff(0).constant_value() == Rational(1));
            for (int k = 1; k < N; ++k) CHECK(t.coeff(k).is_zero());
        }
    }
}

TEST_CASE("symbolic square root squared back") {
    // (1 + k z + O(z^3))^{1/2} = 1 + (k/2) z - (k^2/8) z^2 + O(z^3)
    auto kv = make_vartable({{"k", 1}});
    GradedPoly k = GradedPoly::variable(kv, 0, Rational(1));
    Series s = Series::from_coeffs(kv, 0,
                                   {GradedPoly::constant(kv, Rational(1)), k, GradedPoly(kv)}, 3);
    Series t = series_root(s, 2);
    CHECK(t.coeff(1) == k.scaled(Rational(1, 2)));
    CHECK(t.coeff(2) == (k * k).scaled(Rational(-1, 8)));
    // oracle: square the result with the polynomial engine and compare
    Series sq = Series::mul(t, t);
    CHECK(sq.truncation() == 3);
    CHECK(Series::agree(sq, s));
}

TEST_CASE("root preconditions") {
    auto v = empty_vartable();
    Series bad = unit_from(v, {Rational(2), Rational(1)}, 3);
    CHECK_THROWS_WITH_AS(series_root(bad, 2), "root of non-monic unit", error);
    Series shifted = unit_from(v, {Rational(1)}, 4).shifted(3);
    CHECK_THROWS_AS(series_root(shifted, 2), error);  // valuation 3 not divisible by 2
    CHECK_NOTHROW(series_root(shifted, 3));
}

TEST_CASE("random unit series root^r == identity") {
    auto v = empty_vartable();
    uint64_t seed = 99;
    auto next = [&] { seed = seed * 6364136223846793005ULL + 1; return static_cast<long>((seed >> 40) % 7) - 3; };
    for (long r : {2L, 3L, 5L}) {
        std::vector<Rational> cs{Rational(1)};
        for (int i = 0; i < 9; ++i) cs.emplace_back(next(), 1 + (i % 3));
        Series s = unit_from(v, cs, 10);
        Series t = series_root(s, r);
        CHECK(Series::agree(t.pow(r), s));
        CHECK(t.pow(r).truncation() == 10);
    }
}

TEST_CASE("division then multiplication round-trips") {
    auto v = empty_vartable();
    Series a = unit_from(v, {Rational(2), Rational(-3), Rational(5), Rational(7)}, 4).shifted(-2);
    Series b = unit_from(v, {Rational(4), Rational(1), Rational(1, 3)}, 3).shifted(1);
    Series q = a / b;
    CHECK(q.valuation() == -3);
    Series back = Series::mul(q, b);
    CHECK(Series::agree(back, a));
    // soundness of the reported order: q trunc = min(ta - vb, tb + va - 2vb)
    // with a: val -2 trunc 2, b: val 1 trunc 4
    CHECK(q.truncation() == std::min(2 - 1, 4 + (-2) - 2 * 1));
}

TEST_CASE("multiplication truncation is the tightest sound window") {
    auto v = empty_vartable();
    Series a = unit_from(v, {Rational(1), Rational(1)}, 5).shifted(2);   // val 2, trunc 7
    Series b = unit_from(v, {Rational(3)}, 2).shifted(-1);               // val -1, trunc 1
    Series p = Series::mul(a, b);
    CHECK(p.valuation() == 1);
    CHECK(p.truncation() == std::min(7 + (-1), 1 + 2));
    CHECK(p.coeff(1).constant_value() == Rational(3));
}

TEST_CASE("parallel series multiply matches serial reference") {
    auto kv = make_vartable({{"k1", 1}, {"k2", 2}});
    GradedPoly k1 = GradedPoly::variable(kv, 0, Rational(1));
    GradedPoly k2 = GradedPoly::variable(kv, 1, Rational(1));
    std::vector<GradedPoly> cs;
    for (int i = 0; i < 12; ++i) cs.push_back((k1 + k2).pow(i % 4).scaled(Rational(i - 5, 3)));
    Series a = Series::from_coeffs(kv, -3, cs, 9);
    Series b = a.shifted(2).scaled(k1 + GradedPoly::constant(kv, Rational(2)));
    CHECK(Series::mul_parallel(a, b) == Series::mul_serial(a, b));
}

TEST_CASE("log/exp inverses on units") {
    auto v = empty_vartable();
    Series s = unit_from(v, {Rational(1), Rational(3), Rational(-2), Rational(1, 2)}, 6);
    Series l = s.log_unit();
    Series back = l.exp_positive();
    CHECK(Series::agree(back, s));
    CHECK(back.truncation() == 6);
}

TEST_CASE("exact monomials survive arithmetic exactly") {
    auto v = empty_vartable();
    Series x1 = Series::monomial(v, -4, Rational(1));
    Series p = x1.pow(3);
    CHECK(p.is_exact());
    CHECK(p.valuation() == -12);
    CHECK(series_root(p, 3).valuation() == -4);
    CHECK(x1.inverse().valuation() == 4);
}

TEST_CASE("coefficient reads beyond the truncation are refused") {
    auto v = empty_vartable();
    Series s = unit_from(v, {Rational(1)}, 3);
    CHECK_NOTHROW(s.coeff(2));
    CHECK_THROWS_AS(s.coeff(3), error);
}

TEST_CASE("inverse difference square expansion") {
    auto v = empty_vartable();
    // N=2: z2^{-2} + 2 z1 z2^{-3} + O(z1^2)
    BiSeries b2 = bi_inverse_diff_square(v, 2);
    CHECK(b2.z1_truncation() == 2);
    CHECK(b2.coeff(0, -2).constant_value() == Rational(1));
    CHECK(b2.coeff(1, -3).constant_value() == Rational(2));
    // N=1: z2^{-2} + O(z1)
    BiSeries b1 = bi_inverse_diff_square(v, 1);
    CHECK(b1.z1_truncation() == 1);
    CHECK(b1.coeff(0, -2).constant_value() == Rational(1));
    // coefficient of z1^3 is 4 z2^{-5}
    BiSeries b5 = bi_inverse_diff_square(v, 5);
    CHECK(b5.coeff(3, -5).constant_value() == Rational(4));
    CHECK(b5.coeff(3, -4).is_zero());
}

TEST_CASE("inverse difference square against the differentiation oracle") {
    // 1/(z1-z2) = -sum_k z1^k z2^{-k-1}; differentiating by z2 termwise
    // gives 1/(z1-z2)^2.
    auto v = empty_vartable();
    const int N = 8;
    std::vector<Series> rows;
    for (int k = 0; k < N; ++k) rows.push_back(Series::monomial(v, -k - 1, Rational(-1)));
    BiSeries inv_diff = BiSeries::from_rows(v, 0, std::move(rows), N);
    BiSeries oracle = inv_diff.d_z2();
    BiSeries direct = bi_inverse_diff_square(v, N);
    BiSeries diff = oracle - direct;
    for (int k = 0; k < N; ++k) {
        Series row = diff.row(k);
        CHECK(row.is_zero_window());
    }
}

TEST_CASE("x1 pole difference inverse") {
    auto v = empty_vartable();
    // a1 = 2: 1/(z1^{-2} - z2^{-2}) = z1^2 + z1^4 z2^{-2} + z1^6 z2^{-4} + ...
    BiSeries b = bi_inverse_x1_diff(v, 2, 9);
    CHECK(b.coeff(2, 0).constant_value() == Rational(1));
    CHECK(b.coeff(4, -2).constant_value() == Rational(1));
    CHECK(b.coeff(6, -4).constant_value() == Rational(1));
    CHECK(b.coeff(3, 0).is_zero());
    CHECK(b.row(5).is_zero_window());
}
