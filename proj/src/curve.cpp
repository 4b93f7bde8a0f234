#include "telsig/curve.hpp"

#include <algorithm>
#include <sstream>

namespace telsig {

std::string kappa_name(size_t i, const std::vector<long>& j) {
    std::ostringstream os;
    os << "k" << i << "_";
    for (size_t t = 0; t < j.size(); ++t) {
        if (t) os << ".";
        os << j[t];
    }
    return os.str();
}

std::vector<std::vector<long>> kappa_support(const SemigroupData& sg, size_t i) {
    const auto& a = sg.generators();
    const auto& d = sg.gcd_chain();
    const size_t m = a.size();
    if (i < 2 || i > m) fail(errc::input, "equation index out of range");
    const long bound = a[i - 1] * (d[i - 2] / d[i - 1]);

    std::vector<std::vector<long>> out;
    std::vector<long> j(m, 0);
    // Box ranges: j_1 bounded only by the weight, j_k < d_{k-1}/d_k for k>=2.
    auto weight = [&](const std::vector<long>& v) {
        long w = 0;
        for (size_t t = 0; t < m; ++t) w += a[t] * v[t];
        return w;
    };
    std::vector<long> lim(m);
    lim[0] = (bound - 1) / a[0];
    for (size_t t = 1; t < m; ++t) lim[t] = d[t - 1] / d[t] - 1;

    while (true) {
        if (weight(j) < bound) out.push_back(j);
        size_t t = 0;
        while (t < m) {
            if (j[t] < lim[t]) {
                ++j[t];
                std::fill(j.begin(), j.begin() + static_cast<long>(t), 0);
                break;
            }
            ++t;
        }
        if (t == m) break;
    }
    std::sort(out.begin(), out.end(), [&](const auto& u, const auto& v) { return weight(u) < weight(v); });
    return out;
}

CurveModel CurveModel::build(SemigroupData sg, const KappaSpec& kappa) {
    CurveModel c;
    c.sg_ = std::move(sg);
    const auto& a = c.sg_.generators();
    const auto& d = c.sg_.gcd_chain();
    const size_t m = a.size();
    c.symbolic_ = kappa.mode == KappaMode::symbolic;
    c.lrows_ = c.sg_.l_rows();

    {
        std::vector<VarTable::Var> xv;
        for (size_t t = 0; t < m; ++t) xv.push_back({"x" + std::to_string(t + 1), a[t]});
        c.xvars_ = make_vartable(std::move(xv));
    }

    // Kappa table: lexicographic by (i, exponent vector); each symbol's
    // weight is the defect a_i d_{i-1}/d_i - sum a_k j_k > 0.
    std::vector<std::vector<std::vector<long>>> support(m + 1);
    std::map<std::string, size_t> kindex;
    if (c.symbolic_) {
        std::vector<VarTable::Var> kv;
        for (size_t i = 2; i <= m; ++i) {
            support[i] = kappa_support(c.sg_, i);
            std::sort(support[i].begin(), support[i].end());
            const long bound = a[i - 1] * (d[i - 2] / d[i - 1]);
            for (const auto& j : support[i]) {
                long w = bound;
                for (size_t t = 0; t < m; ++t) w -= a[t] * j[t];
                kindex[kappa_name(i, j)] = kv.size();
                kv.push_back({kappa_name(i, j), w});
            }
        }
        c.kvars_ = make_vartable(std::move(kv));
    } else {
        for (size_t i = 2; i <= m; ++i) support[i] = kappa_support(c.sg_, i);
        c.kvars_ = empty_vartable();
        if (kappa.mode == KappaMode::explicit_values) {
            for (const auto& [name, value] : kappa.values) {
                bool known = false;
                for (size_t i = 2; i <= m && !known; ++i)
                    for (const auto& j : support[i])
                        if (kappa_name(i, j) == name) {
                            known = true;
                            break;
                        }
                if (!known) fail(errc::input, "unsupported kappa index " + name);
                (void)value;
            }
        }
    }

    auto xexp = [&](const std::vector<long>& j) {
        Exp e(m, 0);
        for (size_t t = 0; t < m; ++t) e[t] = static_cast<uint32_t>(j[t]);
        return e;
    };
    auto kone = [&](Rational r) { return GradedPoly::constant(c.kvars_, std::move(r)); };

    for (size_t i = 2; i <= m; ++i) {
        XPoly f(c.xvars_);
        Exp head(m, 0);
        head[i - 1] = static_cast<uint32_t>(d[i - 2] / d[i - 1]);
        f += XPoly::monomial(c.xvars_, head, kone(Rational(1)));
        f -= XPoly::monomial(c.xvars_, xexp(c.lrows_[i - 2]), kone(Rational(1)));
        for (const auto& j : support[i]) {
            GradedPoly coeff(c.kvars_);
            if (c.symbolic_) {
                coeff = GradedPoly::variable(c.kvars_, kindex.at(kappa_name(i, j)), Rational(1));
            } else if (kappa.mode == KappaMode::explicit_values) {
                auto it = kappa.values.find(kappa_name(i, j));
                if (it != kappa.values.end()) coeff = kone(it->second);
            }
            if (!coeff.is_zero()) f -= XPoly::monomial(c.xvars_, xexp(j), std::move(coeff));
        }
        c.F_.push_back(std::move(f));
    }
    return c;
}

std::vector<std::vector<XPoly>> CurveModel::jacobian() const {
    const size_t m = sg_.arity();
    std::vector<std::vector<XPoly>> g;
    for (size_t i = 0; i < m - 1; ++i) {
        std::vector<XPoly> row;
        for (size_t j = 0; j < m - 1; ++j) row.push_back(F_[i].derivative(j + 1));
        g.push_back(std::move(row));
    }
    return g;
}

namespace {

XPoly det_rec(const std::vector<std::vector<XPoly>>& mat, std::vector<size_t> cols, size_t row,
              const VarTablePtr& xvars) {
    if (cols.empty()) {
        GradedPoly one = GradedPoly::constant(empty_vartable(), Rational(1));
        return XPoly::constant(xvars, std::move(one));
    }
    XPoly acc(xvars);
    for (size_t t = 0; t < cols.size(); ++t) {
        const XPoly& entry = mat[row][cols[t]];
        if (entry.is_zero()) continue;
        std::vector<size_t> rest;
        for (size_t u = 0; u < cols.size(); ++u)
            if (u != t) rest.push_back(cols[u]);
        XPoly minor = det_rec(mat, std::move(rest), row + 1, xvars);
        XPoly prod = XPoly::mul(entry, minor);
        if (t % 2 == 0)
            acc += prod;
        else
            acc -= prod;
    }
    return acc;
}

} // namespace

XPoly CurveModel::jacobian_det() const {
    auto g = jacobian();
    std::vector<size_t> cols(g.size());
    for (size_t i = 0; i < cols.size(); ++i) cols[i] = i;
    return det_rec(g, cols, 0, xvars_);
}

PhiBasis phi_basis(const SemigroupData& sg, size_t count) {
    if (count < 1) fail(errc::input, "need at least one basis element");
    PhiBasis b;
    const size_t m = sg.arity();
    {
        std::vector<VarTable::Var> xv;
        for (size_t t = 0; t < m; ++t) xv.push_back({"x" + std::to_string(t + 1), sg.generators()[t]});
        b.xvars = make_vartable(std::move(xv));
    }
    for (long w : sg.nongaps(count)) {
        auto rep = sg.represent(w);
        if (!rep) fail(errc::internal, "nongap not representable");
        Exp e(m, 0);
        for (size_t t = 0; t < m; ++t) e[t] = static_cast<uint32_t>((*rep)[t]);
        b.monomials.push_back(std::move(e));
        b.pole_orders.push_back(w);
    }
    return b;
}

Rational phi_eval(const PhiBasis& basis, size_t idx, const std::vector<Rational>& x) {
    const Exp& e = basis.monomials.at(idx);
    if (x.size() != e.size()) fail(errc::input, "point arity mismatch");
    Rational r(1);
    for (size_t t = 0; t < e.size(); ++t)
        if (e[t]) r *= x[t].pow(e[t]);
    return r;
}

} // namespace telsig
