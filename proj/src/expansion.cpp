#include "telsig/expansion.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace telsig {

const Series& MonomialCache::power(size_t var, uint32_t e) {
    auto& cache = powers_[var];
    if (cache.empty()) {
        cache.push_back(Series::monomial(kvars_, 0, Rational(1)));
        cache.push_back(x_[var]);
    }
    while (cache.size() <= e) cache.push_back(Series::mul(cache.back(), x_[var]));
    return cache[e];
}

const Series& MonomialCache::eval(const Exp& alpha) {
    auto it = products_.find(alpha);
    if (it != products_.end()) return it->second;
    Series r = Series::monomial(kvars_, 0, Rational(1));
    for (size_t s = 0; s < alpha.size(); ++s)
        if (alpha[s]) r = Series::mul(r, power(s, alpha[s]));
    return products_.emplace(alpha, std::move(r)).first->second;
}

Series substitute_x(const XPoly& f, MonomialCache& cache, const VarTablePtr& kvars) {
    Series acc = Series::exact_zero(kvars);
    for (const auto& [alpha, coeff] : f.terms()) acc += cache.eval(alpha).scaled(coeff);
    return acc;
}

namespace {

// Incremental convolution node over shared coefficient streams: out[l] is
// computed once per order and extended as the solve advances.  redo(l)
// recomputes a slot after a late coefficient lands.
struct Conv {
    const std::vector<GradedPoly>* a = nullptr;
    const std::vector<GradedPoly>* b = nullptr;
    Conv* ca = nullptr;  // producing nodes of a/b, when not raw unit streams
    Conv* cb = nullptr;
    std::vector<GradedPoly> out;
    int done = 0;  // orders 0..done are computed
    VarTablePtr kv;

    void init(const std::vector<GradedPoly>* A, Conv* CA, const std::vector<GradedPoly>* B, Conv* CB,
              size_t len, const VarTablePtr& vars) {
        a = A;
        b = B;
        ca = CA;
        cb = CB;
        kv = vars;
        out.assign(len, GradedPoly(vars));
        out[0] = GradedPoly::mul((*a)[0], (*b)[0]);
    }

    GradedPoly convolve(int l) const {
        std::vector<std::pair<const GradedPoly*, const GradedPoly*>> pairs;
        pairs.reserve(static_cast<size_t>(l) + 1);
        for (int i = 0; i <= l; ++i)
            pairs.emplace_back(&(*a)[static_cast<size_t>(i)], &(*b)[static_cast<size_t>(l - i)]);
        GradedPoly acc = GradedPoly::dot(pairs);
        return acc.is_zero() ? GradedPoly(kv) : acc;
    }

    void ensure(int l) {
        if (ca) ca->ensure(l);
        if (cb) cb->ensure(l);
        while (done < l) {
            ++done;
            out[static_cast<size_t>(done)] = convolve(done);
        }
    }

    // Applies a late correction to an already-computed slot.
    void add_at(int l, const GradedPoly& delta) {
        if (l <= done) out[static_cast<size_t>(l)] += delta;
    }
};

} // namespace

LocalExpansion LocalExpansion::solve(CurveModel curve, int order) {
    if (order < 1) fail(errc::input, "expansion order must be positive");
    LocalExpansion le;
    le.curve_ = std::move(curve);
    le.order_ = order;

    const auto& sg = le.curve_.semigroup();
    const auto& a = sg.generators();
    const auto& d = sg.gcd_chain();
    const size_t m = a.size();
    const VarTablePtr& kv = le.curve_.kappa_vars();
    const int N = order;
    const size_t len = static_cast<size_t>(N) + 1;

    // Unit-part coefficient streams e[s-2][l] for s = 2..m, with e[s][0] = 1.
    std::vector<std::vector<GradedPoly>> unit(m - 1, std::vector<GradedPoly>(len, GradedPoly(kv)));
    for (auto& row : unit) row[0] = GradedPoly::constant(kv, Rational(1));
    std::vector<GradedPoly> one_stream(len, GradedPoly(kv));
    one_stream[0] = GradedPoly::constant(kv, Rational(1));

    // Product DAG: power chains per unit plus folded products shared across
    // the leading binomials and every kappa monomial.
    std::deque<Conv> pool;
    struct StreamT {
        const std::vector<GradedPoly>* s;
        Conv* node;  // null for raw streams
    };
    auto make_conv = [&](StreamT x, StreamT y) {
        pool.emplace_back();
        pool.back().init(x.s, x.node, y.s, y.node, len, kv);
        return StreamT{&pool.back().out, &pool.back()};
    };
    std::map<std::pair<const void*, const void*>, StreamT> conv_memo;
    auto mul_streams = [&](StreamT x, StreamT y) {
        if (x.s == &one_stream) return y;
        if (y.s == &one_stream) return x;
        auto key = std::minmax(static_cast<const void*>(x.s), static_cast<const void*>(y.s));
        auto it = conv_memo.find(key);
        if (it != conv_memo.end()) return it->second;
        StreamT r = make_conv(x, y);
        conv_memo.emplace(key, r);
        return r;
    };

    // pow_chain[s-2][p] = stream of the p-th power of unit s.
    std::vector<std::vector<StreamT>> pow_chain(m - 1);
    std::vector<uint32_t> pmax(m - 1, 1);
    for (size_t k = 2; k <= m; ++k) {
        pmax[k - 2] = std::max<uint32_t>(pmax[k - 2], static_cast<uint32_t>(d[k - 2] / d[k - 1]));
        for (const auto& [alpha, coeff] : le.curve_.equations()[k - 2].terms())
            for (size_t s = 1; s < m; ++s) pmax[s - 1] = std::max(pmax[s - 1], alpha[s]);
    }
    for (size_t s = 0; s < m - 1; ++s) {
        pow_chain[s].push_back({&one_stream, nullptr});
        pow_chain[s].push_back({&unit[s], nullptr});
        for (uint32_t p = 2; p <= pmax[s]; ++p)
            pow_chain[s].push_back(make_conv(pow_chain[s][p - 1], {&unit[s], nullptr}));
    }

    // Folded product for a monomial's unit part (x1 contributes nothing).
    auto unit_product = [&](const Exp& alpha) {
        StreamT acc{&one_stream, nullptr};
        for (size_t s = 1; s < m; ++s)
            if (alpha[s]) acc = mul_streams(acc, pow_chain[s - 1][alpha[s]]);
        return acc;
    };

    struct TermRef {
        long shift;    // z-power of the term after scaling, = kappa degree
        GradedPoly coeff;
        StreamT prod;
    };
    struct EquationPlan {
        long r;
        StreamT lhs;
        std::vector<Conv*> chain;  // k's power chain nodes for redo
        std::vector<TermRef> rhs;  // leading binomial (shift 0) and kappa terms
    };
    std::vector<EquationPlan> plan;
    for (size_t k = 2; k <= m; ++k) {
        EquationPlan p;
        p.r = d[k - 2] / d[k - 1];
        const long head_weight = a[k - 1] * p.r;
        p.lhs = pow_chain[k - 2][static_cast<uint32_t>(p.r)];
        for (uint32_t q = 2; q <= pmax[k - 2]; ++q) p.chain.push_back(pow_chain[k - 2][q].node);
        for (const auto& [alpha, coeff] : le.curve_.equations()[k - 2].terms()) {
            long w = head_weight;
            for (size_t s = 0; s < m; ++s) w -= a[s] * static_cast<long>(alpha[s]);
            if (w == 0 && alpha[k - 1] == static_cast<uint32_t>(p.r)) continue;  // head
            p.rhs.push_back({w, -coeff, unit_product(alpha)});
        }
        plan.push_back(std::move(p));
    }

    // One z-order per sweep; within a sweep ascending k.  The left side
    // contributes (d_{k-1}/d_k) e_{kl} plus known lower terms (the unknown
    // slot still holds zero when the chain is advanced); kappa terms sit
    // behind a positive shift so they read only settled orders.
    for (int l = 1; l <= N; ++l) {
        for (size_t k = 2; k <= m; ++k) {
            EquationPlan& p = plan[k - 2];
            if (p.lhs.node) p.lhs.node->ensure(l);
            GradedPoly lhs0 = (*p.lhs.s)[static_cast<size_t>(l)];
            GradedPoly rhs(kv);
            for (auto& t : p.rhs) {
                long at = l - t.shift;
                if (at < 0) continue;
                if (t.shift == 0) {
                    // leading binomial: only units with smaller k, settled this sweep
                    if (t.prod.node) t.prod.node->ensure(l);
                } else if (t.prod.node) {
                    t.prod.node->ensure(l - 1);
                }
                const GradedPoly& pc = (*t.prod.s)[static_cast<size_t>(at)];
                if (!pc.is_zero()) rhs += GradedPoly::mul(t.coeff, pc);
            }
            GradedPoly fresh = (rhs - lhs0).scaled(Rational(1, p.r));
            unit[k - 2][static_cast<size_t>(l)] = fresh;
            if (!fresh.is_zero()) {
                // Slot l of u^q was computed while e_{kl} held zero; with the
                // unit constant term 1 the correction is q * e_{kl}.
                long q = 2;
                for (Conv* c : p.chain) {
                    c->add_at(l, fresh.scaled(Rational(q)));
                    ++q;
                }
            }
        }
    }

    // A curve without kappa terms is the monomial curve: every correction is
    // homogeneous of positive degree in an empty symbol set, hence zero at
    // all orders, and the solution is exact.
    bool monomial_curve = true;
    for (const auto& f : le.curve_.equations()) monomial_curve &= f.num_terms() <= 2;
    if (monomial_curve)
        for (size_t k = 2; k <= m; ++k)
            for (int l = 1; l <= N; ++l)
                if (!unit[k - 2][static_cast<size_t>(l)].is_zero())
                    fail(errc::internal, "monomial curve produced a nonzero correction");

    le.x_.push_back(Series::monomial(kv, -static_cast<int>(a[0]), Rational(1)));
    for (size_t k = 2; k <= m; ++k) {
        if (monomial_curve) {
            le.x_.push_back(Series::monomial(kv, -static_cast<int>(a[k - 1]), Rational(1)));
            continue;
        }
        Series u = Series::from_coeffs(kv, 0, unit[k - 2], N + 1);
        le.x_.push_back(u.shifted(-static_cast<int>(a[k - 1])));
    }
    return le;
}

MonomialCache LocalExpansion::make_cache() const {
    return MonomialCache(curve_.kappa_vars(), x_);
}

std::vector<Series> LocalExpansion::residuals() const {
    MonomialCache cache = make_cache();
    std::vector<Series> out;
    for (const auto& f : curve_.equations())
        out.push_back(substitute_x(f, cache, curve_.kappa_vars()));
    return out;
}

DuData LocalExpansion::du_series() const {
    const auto& sg = curve_.semigroup();
    const long g = sg.genus();
    const long a1 = sg.generators()[0];
    DuData out;
    MonomialCache cache = make_cache();
    out.det_g = substitute_x(curve_.jacobian_det(), cache, curve_.kappa_vars());

    // det G = a1 z^{-(2g-1+a1)} (1 + O(z)); the leading coefficient is pinned
    // by the weight count, so a deviation is a solver bug.
    if (out.det_g.valuation() != -(2 * g - 1 + a1) ||
        !(out.det_g.leading() == GradedPoly::constant(curve_.kappa_vars(), Rational(a1))))
        fail(errc::internal, "det G leading behavior violated");

    PhiBasis phi = phi_basis(sg, static_cast<size_t>(g));
    Series dg_inv = out.det_g.inverse();
    int cols = 0;
    for (long i = 1; i <= g; ++i) {
        const long w = sg.gaps()[static_cast<size_t>(i - 1)];
        Series num = cache.eval(phi.monomials[static_cast<size_t>(g - i)]);
        Series du = Series::mul(num, dg_inv)
                        .scaled(Rational(a1))
                        .shifted(-static_cast<int>(a1) - 1);
        if (du.valuation() != w - 1 ||
            !(du.leading() == GradedPoly::constant(curve_.kappa_vars(), Rational(1))))
            fail(errc::internal, "du leading coefficient is not 1");
        cols = cols == 0 ? du.truncation() : std::min(cols, du.truncation());
        out.du.push_back(std::move(du));
    }
    out.b_cols = std::min(cols, order_ + 1);
    cols = out.b_cols;
    for (const auto& du : out.du) {
        std::vector<GradedPoly> row;
        for (int j = 1; j <= cols; ++j) row.push_back(du.coeff(j - 1));
        out.b.push_back(std::move(row));
    }
    return out;
}

CSeries LocalExpansion::c_series(const DuData& du, int count) const {
    const auto& sg = curve_.semigroup();
    const long g = sg.genus();
    CSeries out;
    out.requested = count;
    const Series& last = du.du.back();  // du_{2g-1}/dz = z^{2g-2} (1 + ...)
    Series unit = last.shifted(-static_cast<int>(2 * g - 2));
    Series half_log = unit.log_unit().scaled(Rational(1, 2));
    int avail = half_log.truncation() - 1;
    out.delivered = std::min(count, avail);
    for (int i = 1; i <= out.delivered; ++i) out.c.push_back(half_log.coeff(i).scaled(Rational(i)));
    return out;
}

namespace {

// Leibniz determinant over an arbitrary small ring with +, * and zero.
template <class R>
R ring_det(const std::vector<std::vector<R>>& mat, const R& zero,
           const std::function<R(const R&, const R&)>& mul) {
    const size_t n = mat.size();
    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = i;
    R acc = zero;
    bool first = true;
    do {
        // permutation sign
        int sign = 1;
        std::vector<bool> seen(n, false);
        for (size_t i = 0; i < n; ++i) {
            if (seen[i]) continue;
            size_t len = 0, j = i;
            while (!seen[j]) {
                seen[j] = true;
                j = perm[j];
                ++len;
            }
            if (len % 2 == 0) sign = -sign;
        }
        R prod = mat[0][perm[0]];
        for (size_t i = 1; i < n; ++i) prod = mul(prod, mat[i][perm[i]]);
        if (sign < 0) prod = zero - prod;
        acc = first ? std::move(prod) : acc + prod;
        first = false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

} // namespace

HMatrix h_matrix(const CurveModel& curve) {
    const auto& sg = curve.semigroup();
    const auto& a = sg.generators();
    const size_t m = a.size();
    HMatrix out;
    {
        std::vector<VarTable::Var> hv;
        for (size_t t = 0; t < m; ++t) hv.push_back({"x" + std::to_string(t + 1), a[t]});
        for (size_t t = 0; t < m; ++t) hv.push_back({"y" + std::to_string(t + 1), a[t]});
        out.hvars = make_vartable(std::move(hv));
    }
    const VarTablePtr& hv = out.hvars;
    const VarTablePtr& kv = curve.kappa_vars();

    // Per-monomial divided difference: for c x^alpha the slot-j quotient is
    // c * prod_{s<j} y_s^{a_s} * (sum_u x_j^u y_j^{a_j-1-u}) * prod_{s>j} x_s^{a_s};
    // the numerator is divisible monomial by monomial, so no general division
    // is needed.
    auto h_entry = [&](const XPoly& f, size_t j) {
        XPoly acc(hv);
        for (const auto& [alpha, coeff] : f.terms()) {
            uint32_t ej = alpha[j - 1];
            if (ej == 0) continue;
            Exp base(2 * m, 0);
            for (size_t s = 0; s < j - 1; ++s) base[m + s] = alpha[s];
            for (size_t s = j; s < m; ++s) base[s] = alpha[s];
            for (uint32_t u = 0; u < ej; ++u) {
                Exp t = base;
                t[j - 1] += u;
                t[m + j - 1] += ej - 1 - u;
                acc += XPoly::monomial(hv, std::move(t), coeff);
            }
        }
        return acc;
    };

    // F_i with the first `upto` slots replaced by y's.
    auto swap_prefix = [&](const XPoly& f, size_t upto) {
        XPoly acc(hv);
        for (const auto& [alpha, coeff] : f.terms()) {
            Exp t(2 * m, 0);
            for (size_t s = 0; s < m; ++s) {
                if (s < upto)
                    t[m + s] = alpha[s];
                else
                    t[s] = alpha[s];
            }
            acc += XPoly::monomial(hv, std::move(t), coeff);
        }
        return acc;
    };

    for (size_t i = 2; i <= m; ++i) {
        const XPoly& f = curve.equations()[i - 2];
        std::vector<XPoly> row;
        for (size_t j = 2; j <= m; ++j) row.push_back(h_entry(f, j));
        out.h.push_back(std::move(row));

        XPoly lhs(hv);
        for (size_t j = 2; j <= m; ++j) {
            XPoly diff = XPoly::variable(hv, j - 1, GradedPoly::constant(kv, Rational(1))) -
                         XPoly::variable(hv, m + j - 1, GradedPoly::constant(kv, Rational(1)));
            lhs += XPoly::mul(out.h.back()[j - 2], diff);
        }
        out.telescoped_lhs.push_back(std::move(lhs));
        out.telescoped_rhs.push_back(swap_prefix(f, 1) - swap_prefix(f, m));
    }
    return out;
}

OmegaData LocalExpansion::omega_expansion(int z1_orders) const {
    if (z1_orders < 1) fail(errc::input, "need at least one z1 order");
    const auto& sg = curve_.semigroup();
    const long a1 = sg.generators()[0];
    const size_t m = sg.arity();
    const VarTablePtr& kv = curve_.kappa_vars();

    MonomialCache cache = make_cache();
    HMatrix H = h_matrix(curve_);

    // Substitute x -> x(z1), y -> x(z2) into each h entry.
    auto to_bi = [&](const XPoly& p) {
        BiSeries acc = BiSeries::zero(kv, Series::kExactOrder);
        for (const auto& [exp, coeff] : p.terms()) {
            Exp xpart(m, 0), ypart(m, 0);
            for (size_t s = 0; s < m; ++s) {
                xpart[s] = exp[s];
                ypart[s] = exp[m + s];
            }
            Series sx = cache.eval(xpart);
            Series sy = cache.eval(ypart).scaled(coeff);
            acc += BiSeries::from_z1(sx) * BiSeries::from_z2(sy);
        }
        return acc;
    };

    std::vector<std::vector<BiSeries>> hbi;
    for (const auto& row : H.h) {
        std::vector<BiSeries> r;
        for (const auto& entry : row) r.push_back(to_bi(entry));
        hbi.push_back(std::move(r));
    }
    BiSeries det_h = ring_det<BiSeries>(
        hbi, BiSeries::zero(kv, Series::kExactOrder),
        [](const BiSeries& x, const BiSeries& y) { return x * y; });

    DuData dud = du_series();
    // dx1/dz1 = -a1 z1^{-a1-1}; the 1/(x1(z1)-x1(z2)) factor carries the
    // z1-truncation request.
    Series z1fac = dud.det_g.inverse().scaled(Rational(-a1)).shifted(-static_cast<int>(a1) - 1);
    BiSeries f = det_h * BiSeries::from_z1(z1fac) *
                 bi_inverse_x1_diff(kv, a1, z1_orders + static_cast<int>(a1) + 1);

    OmegaData out;
    out.dy = f.d_z2();
    int avail = std::min(out.dy.z1_truncation(), z1_orders);
    out.remainder = out.dy - bi_inverse_diff_square(kv, avail);

    for (int k = 0; k < avail; ++k) {
        Series row = out.remainder.row(k);
        if (row.is_zero_window())
            out.z2_floor.emplace_back(k, row.truncation());
        else
            out.z2_floor.emplace_back(k, row.valuation());
    }
    for (long w : sg.gaps()) {
        int k = static_cast<int>(w) - 1;
        if (k < avail)
            out.dr_tails.push_back(singular_part(-out.remainder.row(k)));
        else
            out.dr_tails.push_back(Series::exact_zero(kv));
    }
    return out;
}

std::vector<std::vector<GradedPoly>> assemble_qhat(const OmegaData& omega,
                                                   const std::vector<Series>& du,
                                                   const std::vector<Series>& dr, size_t rows,
                                                   size_t cols) {
    if (du.size() != dr.size()) fail(errc::input, "du/dr arity mismatch");
    BiSeries total = omega.remainder;
    for (size_t t = 0; t < du.size(); ++t)
        total += BiSeries::from_z1(du[t]) * BiSeries::from_z2(dr[t]);
    std::vector<std::vector<GradedPoly>> q;
    for (size_t i = 1; i <= rows; ++i) {
        std::vector<GradedPoly> row;
        for (size_t j = 1; j <= cols; ++j)
            row.push_back(total.coeff(static_cast<int>(i) - 1, static_cast<int>(j) - 1));
        q.push_back(std::move(row));
    }
    return q;
}

Series singular_part(const Series& s) {
    Series out = Series::exact_zero(s.vars());
    int hi = std::min(0, s.truncation());
    for (int k = s.valuation(); k < hi; ++k) {
        GradedPoly c = s.coeff(k);
        if (!c.is_zero()) out += Series::monomial(s.vars(), k, std::move(c));
    }
    return out;
}

} // namespace telsig
