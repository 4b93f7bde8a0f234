#include "telsig/schur.hpp"

#include <functional>
#include <map>

namespace telsig {

VarTablePtr t_vars(size_t n) {
    std::vector<VarTable::Var> v;
    for (size_t k = 1; k <= n; ++k) v.push_back({"t" + std::to_string(k), static_cast<long>(k)});
    return make_vartable(std::move(v));
}

VarTablePtr z_vars(size_t n) {
    std::vector<VarTable::Var> v;
    for (size_t k = 1; k <= n; ++k) v.push_back({"z" + std::to_string(k), 1});
    return make_vartable(std::move(v));
}

namespace {

void check_partition(const Partition& p) {
    for (size_t i = 0; i < p.parts.size(); ++i) {
        if (p.parts[i] <= 0) fail(errc::input, "partition parts must be positive");
        if (i && p.parts[i] > p.parts[i - 1]) fail(errc::input, "partition must be weakly decreasing");
    }
}

// One-row generating polynomials p_0..p_max via n p_n = sum k t_k p_{n-k}.
std::vector<GradedPoly> one_row_polys(const VarTablePtr& tv, long max) {
    std::vector<GradedPoly> p;
    p.push_back(GradedPoly::constant(tv, Rational(1)));
    for (long n = 1; n <= max; ++n) {
        GradedPoly acc(tv);
        for (long k = 1; k <= n && k <= static_cast<long>(tv->size()); ++k) {
            GradedPoly tk = GradedPoly::variable(tv, static_cast<size_t>(k - 1), Rational(k));
            acc += GradedPoly::mul(tk, p[static_cast<size_t>(n - k)]);
        }
        p.push_back(acc.scaled(Rational(1, n)));
    }
    return p;
}

// Memoized first-row cofactor expansion; entry(row, col) supplies the
// matrix elements, size is the dimension.
GradedPoly det_memo(size_t size, const VarTablePtr& vars,
                    const std::function<GradedPoly(size_t, size_t)>& entry) {
    std::map<std::pair<size_t, uint32_t>, GradedPoly> memo;
    std::function<GradedPoly(size_t, uint32_t)> rec = [&](size_t row, uint32_t colmask) -> GradedPoly {
        if (row == size) return GradedPoly::constant(vars, Rational(1));
        auto key = std::make_pair(row, colmask);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        GradedPoly acc(vars);
        int parity = 0;
        for (size_t c = 0; c < size; ++c) {
            if (!(colmask & (1u << c))) continue;
            GradedPoly e = entry(row, c);
            if (!e.is_zero()) {
                GradedPoly sub = rec(row + 1, colmask & ~(1u << c));
                GradedPoly prod = GradedPoly::mul(e, sub);
                if (parity % 2 == 0)
                    acc += prod;
                else
                    acc -= prod;
            }
            ++parity;
        }
        memo.emplace(key, acc);
        return acc;
    };
    return rec(0, (1u << size) - 1);
}

} // namespace

SchurT schur_t(const Partition& lambda) {
    check_partition(lambda);
    if (lambda.parts.empty()) fail(errc::input, "empty partition");
    const long weight = lambda.sum();
    const size_t l = lambda.parts.size();
    SchurT out;
    out.lambda = lambda;
    out.tvars = t_vars(static_cast<size_t>(weight));
    auto p = one_row_polys(out.tvars, weight);
    auto entry = [&](size_t i, size_t j) -> GradedPoly {
        long idx = lambda.parts[i] - static_cast<long>(i) + static_cast<long>(j);
        if (idx < 0) return GradedPoly(out.tvars);
        if (idx > weight) fail(errc::internal, "one-row index beyond table");
        return p[static_cast<size_t>(idx)];
    };
    out.poly = det_memo(l, out.tvars, entry);
    if (auto w = out.poly.homogeneous_weight(); !w || *w != weight)
        fail(errc::internal, "Schur polynomial is not weight-homogeneous");
    return out;
}

GradedPoly complete_homogeneous(long d, const VarTablePtr& zvars) {
    if (d < 0) return GradedPoly(zvars);
    // All monomials of total degree d, coefficient 1.
    GradedPoly acc(zvars);
    const size_t n = zvars->size();
    Exp e(n, 0);
    std::function<void(size_t, long)> walk = [&](size_t var, long left) {
        if (var + 1 == n) {
            e[var] = static_cast<uint32_t>(left);
            acc += GradedPoly::monomial(zvars, e, Rational(1));
            e[var] = 0;
            return;
        }
        for (long u = 0; u <= left; ++u) {
            e[var] = static_cast<uint32_t>(u);
            walk(var + 1, left - u);
        }
        e[var] = 0;
    };
    if (n == 0) {
        if (d == 0) return GradedPoly::constant(zvars, Rational(1));
        return acc;
    }
    walk(0, d);
    return acc;
}

GradedPoly schur_z(const Partition& mu, size_t n, const VarTablePtr& zvars) {
    check_partition(mu);
    if (mu.parts.size() > n) fail(errc::input, "more parts than variables");
    if (zvars->size() != n) fail(errc::input, "variable table size mismatch");
    const size_t r = mu.parts.size();
    if (r == 0) return GradedPoly::constant(zvars, Rational(1));
    std::map<long, GradedPoly> hs;
    auto h = [&](long d) -> GradedPoly {
        auto it = hs.find(d);
        if (it == hs.end()) it = hs.emplace(d, complete_homogeneous(d, zvars)).first;
        return it->second;
    };
    auto entry = [&](size_t i, size_t j) {
        return h(mu.parts[i] - static_cast<long>(i) + static_cast<long>(j));
    };
    return det_memo(r, zvars, entry);
}

LambdaConstants lambda_constants(const Partition& lambda) {
    check_partition(lambda);
    if (lambda.parts.empty()) fail(errc::input, "empty partition");
    const long l = lambda.size();
    LambdaConstants out;
    out.length = l;

    // Ladder (w_l,...,w_1) = (lambda_1+l-1, ..., lambda_l): w[i] below is w_{i+1}.
    std::vector<long> w(static_cast<size_t>(l));
    for (long i = 1; i <= l; ++i)
        w[static_cast<size_t>(l - i)] = lambda.parts[static_cast<size_t>(i - 1)] + l - i;

    out.N.resize(static_cast<size_t>(l) + 1, 0);
    for (long k = l - 1; k >= 0; --k)
        out.N[static_cast<size_t>(k)] = out.N[static_cast<size_t>(k) + 1] + lambda.parts[static_cast<size_t>(k)];
    out.Nprime1 = out.N[1] - l + 1;

    out.cprime.resize(static_cast<size_t>(l) + 1, Rational(1));
    for (long k = 0; k <= l; ++k) {
        if (k == l) {
            out.cprime[static_cast<size_t>(k)] = Rational(1);
            continue;
        }
        Rational c = factorial(out.N[static_cast<size_t>(k)]);
        for (long i = 1; i <= l - k; ++i) c /= factorial(w[static_cast<size_t>(i - 1)]);
        for (long i = 1; i <= l - k; ++i)
            for (long j = i + 1; j <= l - k; ++j)
                c *= Rational(w[static_cast<size_t>(j - 1)] - w[static_cast<size_t>(i - 1)]);
        out.cprime[static_cast<size_t>(k)] = c;
    }

    {
        Rational c = factorial(out.Nprime1);
        for (long i = 1; i <= l - 1; ++i) c /= factorial(w[static_cast<size_t>(i - 1)] - 1);
        for (long i = 1; i <= l - 1; ++i)
            for (long j = i + 1; j <= l - 1; ++j)
                c *= Rational(w[static_cast<size_t>(j - 1)] - w[static_cast<size_t>(i - 1)]);
        out.ctilde = c;
    }
    return out;
}

Rational LambdaConstants::btilde(long n) const {
    const long g = length;
    Rational sign = (g * n * (n - 1) / 2) % 2 == 0 ? Rational(1) : Rational(-1);
    return sign * ctilde.pow(n * (n - 1) / 2) * cprime[1].pow(-n * n);
}

Rational LambdaConstants::bprime(long n) const { return btilde(n) * cprime[static_cast<size_t>(n)]; }

GradedPoly miwa_substitute(const SchurT& s, size_t n, const VarTablePtr& zvars) {
    std::vector<GradedPoly> images;
    for (size_t k = 1; k <= s.tvars->size(); ++k) {
        GradedPoly u(zvars);
        for (size_t i = 0; i < n; ++i) {
            Exp e(zvars->size(), 0);
            e[i] = static_cast<uint32_t>(k);
            u += GradedPoly::monomial(zvars, e, Rational(1, static_cast<long>(k)));
        }
        images.push_back(std::move(u));
    }
    return substitute_vars(s.poly, images, zvars);
}

} // namespace telsig
