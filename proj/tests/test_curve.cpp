#include <doctest.h>

#include "telsig/curve.hpp"

using namespace telsig;

namespace {

std::vector<long> weights_of(const SemigroupData& sg, const std::vector<std::vector<long>>& sup) {
    std::vector<long> w;
    for (const auto& v : sup) {
        long s = 0;
        for (size_t t = 0; t < v.size(); ++t) s += sg.generators()[t] * v[t];
        w.push_back(s);
    }
    return w;
}

} // namespace

TEST_CASE("kappa support sets") {
    auto sg465 = SemigroupData::analyze({4, 6, 5});
    auto s3 = kappa_support(sg465, 3);
    CHECK(weights_of(sg465, s3) == std::vector<long>{0, 4, 5, 6, 8, 9});
    auto s2 = kappa_support(sg465, 2);
    CHECK(weights_of(sg465, s2) == std::vector<long>{0, 4, 5, 6, 8, 9, 10, 11});

    auto sg23 = SemigroupData::analyze({2, 3});
    auto s = kappa_support(sg23, 2);
    CHECK(weights_of(sg23, s) == std::vector<long>{0, 2, 3, 4, 5});
    // oracle: j2 in {0,1}, weight < 6
    std::vector<std::vector<long>> expect;
    for (long j1 = 0; j1 <= 3; ++j1)
        for (long j2 = 0; j2 <= 1; ++j2)
            if (2 * j1 + 3 * j2 < 6) expect.push_back({j1, j2});
    CHECK(s.size() == expect.size());
}

TEST_CASE("monomial curves at kappa zero") {
    auto c = CurveModel::build(SemigroupData::analyze({4, 6, 5}), KappaSpec::zero());
    REQUIRE(c.equations().size() == 2);
    // F2 = x2^2 - x1^3, F3 = x3^2 - x1 x2
    const auto& xv = c.x_vars();
    auto mono = [&](std::vector<uint32_t> e, long q) {
        return XPoly::monomial(xv, Exp(e.begin(), e.end()),
                               GradedPoly::constant(c.kappa_vars(), Rational(q)));
    };
    CHECK(c.equations()[0] == mono({0, 2, 0}, 1) - mono({3, 0, 0}, 1));
    CHECK(c.equations()[1] == mono({0, 0, 2}, 1) - mono({1, 1, 0}, 1));

    auto c695 = CurveModel::build(SemigroupData::analyze({6, 9, 5}), KappaSpec::zero());
    const auto& yv = c695.x_vars();
    auto mono2 = [&](std::vector<uint32_t> e, long q) {
        return XPoly::monomial(yv, Exp(e.begin(), e.end()),
                               GradedPoly::constant(c695.kappa_vars(), Rational(q)));
    };
    CHECK(c695.equations()[0] == mono2({0, 2, 0}, 1) - mono2({3, 0, 0}, 1));
    CHECK(c695.equations()[1] == mono2({0, 0, 3}, 1) - mono2({1, 1, 0}, 1));
}

TEST_CASE("symbolic (2,3) curve has the five kappa terms") {
    auto c = CurveModel::build(SemigroupData::analyze({2, 3}), KappaSpec::symbolic());
    CHECK(c.kappa_vars()->size() == 5);
    // names sorted lexicographically by (i, exponent vector)
    CHECK(c.kappa_vars()->name(0) == "k2_0.0");
    CHECK(c.kappa_vars()->index_of("k2_1.1") >= 0);
    // F2 = x2^2 - x1^3 - k_{1,1} x1 x2 - k_{2,0} x1^2 - k_{0,1} x2 - k_{1,0} x1 - k_{0,0}
    const XPoly& f = c.equations()[0];
    CHECK(f.terms().size() == 7);
    // weighted homogeneity: every term weighs a_2 d_1/d_2 = 6
    CHECK(f.homogeneous_weight() == 6);
    // kappa weights match their defect
    CHECK(c.kappa_vars()->weight(c.kappa_vars()->index_of("k2_1.1")) == 1);
    CHECK(c.kappa_vars()->weight(c.kappa_vars()->index_of("k2_0.0")) == 6);
}

TEST_CASE("every defining polynomial is weighted homogeneous") {
    for (auto a : {std::vector<long>{2, 3}, {2, 7}, {3, 4}, {4, 6, 5}, {6, 9, 5}}) {
        auto sg = SemigroupData::analyze(a);
        auto c = CurveModel::build(sg, KappaSpec::symbolic());
        for (size_t i = 2; i <= sg.arity(); ++i) {
            long expect = sg.generators()[i - 1] * (sg.gcd_chain()[i - 2] / sg.gcd_chain()[i - 1]);
            CHECK(c.equations()[i - 2].homogeneous_weight() == expect);
        }
    }
}

TEST_CASE("explicit kappa assignment") {
    KappaSpec spec;
    spec.mode = KappaMode::explicit_values;
    spec.values["k2_1.1"] = Rational(3, 2);
    auto c = CurveModel::build(SemigroupData::analyze({2, 3}), spec);
    CHECK(c.equations()[0].terms().size() == 3);  // head, binomial, one kappa term

    KappaSpec bad;
    bad.mode = KappaMode::explicit_values;
    bad.values["k2_9.9"] = Rational(1);
    CHECK_THROWS_WITH_AS(CurveModel::build(SemigroupData::analyze({2, 3}), bad),
                         "unsupported kappa index k2_9.9", error);
}

TEST_CASE("jacobian matrices") {
    auto c = CurveModel::build(SemigroupData::analyze({4, 6, 5}), KappaSpec::zero());
    auto g = c.jacobian();
    const auto& xv = c.x_vars();
    auto var = [&](size_t i, long q) {
        return XPoly::variable(xv, i, GradedPoly::constant(c.kappa_vars(), Rational(q)));
    };
    CHECK(g[0][0] == var(1, 2));   // 2 x2
    CHECK(g[0][1] == XPoly(xv));   // 0
    CHECK(g[1][0] == -var(0, 1));  // -x1
    CHECK(g[1][1] == var(2, 2));   // 2 x3
    CHECK(c.jacobian_det() == XPoly::mul(var(1, 2), var(2, 2)) - XPoly(xv));

    auto c23 = CurveModel::build(SemigroupData::analyze({2, 3}), KappaSpec::zero());
    auto g23 = c23.jacobian();
    CHECK(g23[0][0] == XPoly::variable(c23.x_vars(), 1,
                                       GradedPoly::constant(c23.kappa_vars(), Rational(2))));

    // symbolic (2,3): dF2/dx2 = 2 x2 - k_{1,1} x1 - k_{0,1}
    auto cs = CurveModel::build(SemigroupData::analyze({2, 3}), KappaSpec::symbolic());
    auto gs = cs.jacobian();
    CHECK(gs[0][0].terms().size() == 3);
    CHECK(gs[0][0].homogeneous_weight() == 3);
}

TEST_CASE("phi basis ordering") {
    auto sg = SemigroupData::analyze({4, 6, 5});
    auto b = phi_basis(sg, 5);
    CHECK(b.pole_orders == std::vector<long>{0, 4, 5, 6, 8});
    CHECK(b.monomials[0] == Exp{0, 0, 0});  // 1
    CHECK(b.monomials[1] == Exp{1, 0, 0});  // x1
    CHECK(b.monomials[2] == Exp{0, 0, 1});  // x3
    CHECK(b.monomials[3] == Exp{0, 1, 0});  // x2
    CHECK(b.monomials[4] == Exp{2, 0, 0});  // x1^2

    auto b23 = phi_basis(SemigroupData::analyze({2, 3}), 3);
    CHECK(b23.pole_orders == std::vector<long>{0, 2, 3});

    // pole orders enumerate exactly the complement of the gaps
    auto bb = phi_basis(sg, 12);
    std::vector<long> gapless;
    for (long n = 0; gapless.size() < 12; ++n)
        if (std::find(sg.gaps().begin(), sg.gaps().end(), n) == sg.gaps().end()) gapless.push_back(n);
    CHECK(bb.pole_orders == gapless);
}
