#include "telsig/degenerate.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace telsig {

namespace {

GradedPoly z_power(const VarTablePtr& zv, size_t var, long e, Rational c = Rational(1)) {
    Exp exp(zv->size(), 0);
    exp.at(var) = static_cast<uint32_t>(e);
    return GradedPoly::monomial(zv, std::move(exp), std::move(c));
}

void check_weight(const GradedPoly& p, long expected, const char* what) {
    if (p.is_zero()) return;
    auto w = p.homogeneous_weight();
    if (!w || *w != expected)
        fail(errc::internal, std::string(what) + ": weight ledger violated");
}

} // namespace

DegenerateSigma::DegenerateSigma(SemigroupData sg)
    : sg_(std::move(sg)), s_(schur_t(sg_.partition())), lc_(lambda_constants(sg_.partition())) {
    // The substitution below is defined only if the Schur polynomial touches
    // gap-indexed variables alone; checked here once per curve.
    const auto& gaps = sg_.gaps();
    for (size_t j = 1; j <= s_.tvars->size(); ++j) {
        bool is_gap = std::find(gaps.begin(), gaps.end(), static_cast<long>(j)) != gaps.end();
        if (!is_gap && s_.poly.depends_on(j - 1))
            fail(errc::internal, "Schur polynomial depends on a non-gap variable");
    }
    dt_.push_back(s_.poly);
}

const GradedPoly& DegenerateSigma::derivative_pow(long n) const {
    while (static_cast<long>(dt_.size()) <= n) dt_.push_back(dt_.back().derivative(0));
    return dt_[static_cast<size_t>(n)];
}

GradedPoly DegenerateSigma::abel(long w, const std::vector<FormalPoint>& pts,
                                 const VarTablePtr& zv) const {
    GradedPoly u(zv);
    for (const auto& p : pts) u += z_power(zv, p.var, w, Rational(p.sign, w));
    return u;
}

GradedPoly DegenerateSigma::sigma_eval(long n, const std::vector<FormalPoint>& pts,
                                       const VarTablePtr& zv) const {
    const GradedPoly& d = derivative_pow(n);
    std::vector<GradedPoly> images;
    for (size_t j = 1; j <= s_.tvars->size(); ++j) images.push_back(abel(static_cast<long>(j), pts, zv));
    GradedPoly out = substitute_vars(d, images, zv);
    check_weight(out, s_.lambda.sum() - n, "sigma derivative");
    return out;
}

GradedPoly DegenerateSigma::prime(const FormalPoint& p, const FormalPoint& q,
                                  const VarTablePtr& zv) const {
    const long g = sg_.genus();
    Rational sign = (g - 1) % 2 == 0 ? Rational(1) : Rational(-1);
    GradedPoly d = sigma_eval(lc_.Nprime1, {{p.var, +1}, {q.var, -1}}, zv);
    return d.scaled(sign / lc_.ctilde);
}

GradedPoly DegenerateSigma::prime_at_infinity(const FormalPoint& p, const VarTablePtr& zv) const {
    GradedPoly d = sigma_eval(lc_.N[1], {{p.var, +1}}, zv);
    return d.scaled(Rational(1) / lc_.cprime[1]);
}

VerifyResult verify_th51(const DegenerateSigma& ds, long k) {
    const long g = ds.semigroup().genus();
    if (k < 1 || k > g) fail(errc::input, "stratum index must lie in 1..g");
    VerifyResult r;
    r.label = "th5.1 k=" + std::to_string(k);
    auto zv = z_vars(static_cast<size_t>(k));
    const auto& lc = ds.constants();
    r.lhs = ds.sigma_eval(lc.N[static_cast<size_t>(k)], plus_points(static_cast<size_t>(k)), zv);
    Partition prefix;
    prefix.parts.assign(ds.schur().lambda.parts.begin(), ds.schur().lambda.parts.begin() + k);
    r.rhs = schur_z(prefix, static_cast<size_t>(k), zv).scaled(lc.cprime[static_cast<size_t>(k)]);
    r.residual = r.lhs - r.rhs;
    r.ok = r.residual.is_zero();
    return r;
}

Th52Result verify_th52(const DegenerateSigma& ds) {
    Th52Result out;
    const long g = ds.semigroup().genus();
    const auto& lc = ds.constants();
    auto zv = z_vars(2);
    std::vector<FormalPoint> diff = {{0, +1}, {1, -1}};
    for (long n = 0; n < lc.Nprime1; ++n) {
        VerifyResult v;
        v.label = "th5.2(i) n=" + std::to_string(n);
        v.lhs = ds.sigma_eval(n, diff, zv);
        v.rhs = GradedPoly(zv);
        v.residual = v.lhs;
        v.ok = v.residual.is_zero();
        out.vanishing.push_back(std::move(v));
    }
    VerifyResult lead;
    lead.label = "th5.2(ii)";
    lead.lhs = ds.sigma_eval(lc.Nprime1, diff, zv);
    Rational sign = (g - 1) % 2 == 0 ? Rational(1) : Rational(-1);
    GradedPoly zz = GradedPoly::mul(z_power(zv, 0, g - 1), z_power(zv, 1, g - 1));
    GradedPoly difflin = z_power(zv, 0, 1) - z_power(zv, 1, 1);
    lead.rhs = GradedPoly::mul(zz, difflin).scaled(sign * lc.ctilde);
    lead.residual = lead.lhs - lead.rhs;
    lead.ok = lead.residual.is_zero();
    out.leading = std::move(lead);
    out.ok = out.leading.ok;
    for (const auto& v : out.vanishing) out.ok = out.ok && v.ok;
    return out;
}

VerifyResult verify_chain(const DegenerateSigma& ds, long k) {
    const long g = ds.semigroup().genus();
    if (k < 1 || k > g) fail(errc::input, "stratum index must lie in 1..g");
    const auto& lc = ds.constants();
    const long lam_k = ds.schur().lambda.parts[static_cast<size_t>(k - 1)];
    auto zv = z_vars(static_cast<size_t>(k));
    VerifyResult r;
    r.label = "th5.1(ii) k=" + std::to_string(k);

    GradedPoly big = ds.sigma_eval(lc.N[static_cast<size_t>(k)], plus_points(static_cast<size_t>(k)), zv);
    // Orders below lambda_k in z_k must vanish.
    bool low_ok = true;
    for (long j = 0; j < lam_k; ++j)
        low_ok = low_ok && big.coeff_of(static_cast<size_t>(k - 1), static_cast<uint32_t>(j)).is_zero();
    r.lhs = big.coeff_of(static_cast<size_t>(k - 1), static_cast<uint32_t>(lam_k));
    GradedPoly small = ds.sigma_eval(lc.N[static_cast<size_t>(k - 1)],
                                     plus_points(static_cast<size_t>(k - 1)), zv);
    r.rhs = small.scaled(lc.cprime[static_cast<size_t>(k)] / lc.cprime[static_cast<size_t>(k - 1)]);
    r.residual = r.lhs - r.rhs;
    r.ok = low_ok && r.residual.is_zero();
    return r;
}

namespace {

struct AdditionParts {
    GradedPoly sigma_part;   // sigma (or its derivative) at the divisor sum
    GradedPoly pair_prod;    // product over i<j of the difference factors
    GradedPoly dpow_prod;    // product over i of the one-point derivative^n
    GradedPoly det;          // det(z_b^{w*_n - w*_a}) after clearing columns
    GradedPoly clear;        // prod_b z_b^{w*_n}
};

AdditionParts addition_parts(const DegenerateSigma& ds, size_t n,
                             const std::vector<size_t>& pv, const VarTablePtr& zv,
                             bool via_prime) {
    const auto& lc = ds.constants();
    const long g = ds.semigroup().genus();
    AdditionParts out;

    std::vector<FormalPoint> pts;
    for (size_t i = 0; i < n; ++i) pts.push_back({pv[i], +1});
    long order = n >= static_cast<size_t>(g) ? 0 : lc.N[n];
    out.sigma_part = ds.sigma_eval(order, pts, zv);

    out.pair_prod = GradedPoly::constant(zv, Rational(1));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            GradedPoly f;
            if (via_prime)
                f = ds.prime({pv[i], +1}, {pv[j], +1}, zv);
            else
                f = ds.sigma_eval(lc.Nprime1, {{pv[j], +1}, {pv[i], -1}}, zv);
            out.pair_prod = GradedPoly::mul(out.pair_prod, f);
        }

    out.dpow_prod = GradedPoly::constant(zv, Rational(1));
    for (size_t i = 0; i < n; ++i) {
        GradedPoly d = via_prime ? ds.prime_at_infinity({pv[i], +1}, zv)
                                 : ds.sigma_eval(lc.N[1], {{pv[i], +1}}, zv);
        out.dpow_prod = GradedPoly::mul(out.dpow_prod, d.pow(static_cast<long>(n)));
    }

    auto wstar = ds.semigroup().nongaps(n);
    out.clear = GradedPoly::constant(zv, Rational(1));
    for (size_t b = 0; b < n; ++b)
        out.clear = GradedPoly::mul(out.clear, z_power(zv, pv[b], wstar[n - 1]));

    // phi_a(p_b) = z_b^{-w*_a}; clearing each column by z_b^{w*_n} leaves
    // monomial entries z_b^{w*_n - w*_a}.
    std::vector<std::vector<GradedPoly>> mat;
    for (size_t a = 0; a < n; ++a) {
        std::vector<GradedPoly> row;
        for (size_t b = 0; b < n; ++b) row.push_back(z_power(zv, pv[b], wstar[n - 1] - wstar[a]));
        mat.push_back(std::move(row));
    }
    // Leibniz det via memoized cofactors (entries are monomials, n <= ~8).
    std::function<GradedPoly(size_t, uint32_t)> rec;
    std::map<std::pair<size_t, uint32_t>, GradedPoly> memo;
    rec = [&](size_t row, uint32_t mask) -> GradedPoly {
        if (row == n) return GradedPoly::constant(zv, Rational(1));
        auto it = memo.find({row, mask});
        if (it != memo.end()) return it->second;
        GradedPoly acc(zv);
        int parity = 0;
        for (size_t c = 0; c < n; ++c) {
            if (!(mask & (1u << c))) continue;
            GradedPoly prod = GradedPoly::mul(mat[row][c], rec(row + 1, mask & ~(1u << c)));
            if (parity % 2 == 0)
                acc += prod;
            else
                acc -= prod;
            ++parity;
        }
        memo.emplace(std::make_pair(row, mask), acc);
        return acc;
    };
    out.det = rec(0, (1u << n) - 1);
    return out;
}

} // namespace

VerifyResult verify_addition(const DegenerateSigma& ds, size_t n, std::vector<size_t> point_vars) {
    if (n < 1) fail(errc::input, "need at least one point");
    const auto& lc = ds.constants();
    const long g = ds.semigroup().genus();
    if (point_vars.empty())
        for (size_t i = 0; i < n; ++i) point_vars.push_back(i);
    if (point_vars.size() != n) fail(errc::input, "point variable list arity mismatch");
    size_t nvars = *std::max_element(point_vars.begin(), point_vars.end()) + 1;
    auto zv = z_vars(nvars);

    auto parts = addition_parts(ds, n, point_vars, zv, /*via_prime=*/false);
    VerifyResult r;
    r.label = "th5.4 n=" + std::to_string(n);
    Rational cst = n >= static_cast<size_t>(g) ? lc.btilde(static_cast<long>(n))
                                               : lc.bprime(static_cast<long>(n));
    r.lhs = GradedPoly::mul(GradedPoly::mul(parts.sigma_part, parts.pair_prod), parts.clear);
    r.rhs = GradedPoly::mul(parts.det, parts.dpow_prod).scaled(cst);
    r.residual = r.lhs - r.rhs;
    r.ok = r.residual.is_zero();
    return r;
}

VerifyResult verify_th61(const DegenerateSigma& ds, size_t n, std::vector<size_t> point_vars) {
    if (n < 1) fail(errc::input, "need at least one point");
    const auto& lc = ds.constants();
    const long g = ds.semigroup().genus();
    if (point_vars.empty())
        for (size_t i = 0; i < n; ++i) point_vars.push_back(i);
    if (point_vars.size() != n) fail(errc::input, "point variable list arity mismatch");
    size_t nvars = *std::max_element(point_vars.begin(), point_vars.end()) + 1;
    auto zv = z_vars(nvars);

    auto parts = addition_parts(ds, n, point_vars, zv, /*via_prime=*/true);
    VerifyResult r;
    r.label = (n >= static_cast<size_t>(g) ? "th6.1 n=" : "cor6.2 n=") + std::to_string(n);
    r.lhs = GradedPoly::mul(GradedPoly::mul(parts.sigma_part, parts.pair_prod), parts.clear);
    r.rhs = GradedPoly::mul(parts.det, parts.dpow_prod);
    if (n < static_cast<size_t>(g)) r.rhs = r.rhs.scaled(lc.cprime[n]);
    r.residual = r.lhs - r.rhs;
    r.ok = r.residual.is_zero();
    return r;
}

} // namespace telsig
