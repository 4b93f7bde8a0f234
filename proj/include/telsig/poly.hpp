#ifndef TELSIG_POLY_HPP
#define TELSIG_POLY_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "telsig/rational.hpp"
#include "telsig/vartable.hpp"

namespace telsig {

using Exp = std::vector<uint32_t>;

struct ExpHash {
    size_t operator()(const Exp& e) const {
        size_t h = 1469598103934665603ULL;
        for (uint32_t v : e) {
            h ^= v;
            h *= 1099511628211ULL;
        }
        return h;
    }
};

struct KeyHash {
    size_t operator()(uint64_t x) const {
        x ^= x >> 33;
        x *= 0xff51afd7ed558ccdULL;
        x ^= x >> 33;
        x *= 0xc4ceb9fe1a85ec53ULL;
        x ^= x >> 33;
        return static_cast<size_t>(x);
    }
};

// Coefficient-ring hooks.  Rational is the base ring; SparsePoly<Rational>
// itself satisfies the same interface (overloads further down), which is how
// the two-level x-monomial -> kappa-polynomial representation works.
inline bool coeff_is_zero(const Rational& c) { return c.is_zero(); }
inline std::optional<long> coeff_weight(const Rational&) { return 0; }
inline Rational coeff_one_like(const Rational&) { return Rational(1); }
inline Rational coeff_scaled_int(const Rational& c, long n) { return c * Rational(n); }
inline Rational scale_coeff(const Rational& c, const Rational& m) { return c * m; }
inline Rational coeff_product(const Rational& a, const Rational& b) { return Rational::product(a, b); }
inline void coeff_add_prod(Rational& acc, const Rational& a, const Rational& b) {
    Rational::add_prod(acc, a, b);
}

// Sparse multivariate polynomial over an exact coefficient ring C, with a
// shared weighted variable table.  Terms are kept sorted (lex ascending on
// the exponent vector) with no zero coefficients; that ordering is the
// canonical serialization order.
template <class C>
class SparsePoly {
public:
    using Term = std::pair<Exp, C>;

    SparsePoly() : vars_(empty_vartable()) {}
    explicit SparsePoly(VarTablePtr vars) : vars_(std::move(vars)) {}

    static SparsePoly zero(VarTablePtr vars) { return SparsePoly(std::move(vars)); }

    static SparsePoly constant(VarTablePtr vars, C c) {
        SparsePoly p(std::move(vars));
        if (!coeff_is_zero(c)) p.terms_.emplace_back(Exp(p.vars_->size(), 0), std::move(c));
        return p;
    }

    static SparsePoly monomial(VarTablePtr vars, Exp e, C c) {
        SparsePoly p(std::move(vars));
        if (e.size() != p.vars_->size()) fail(errc::internal, "exponent vector length mismatch");
        if (!coeff_is_zero(c)) p.terms_.emplace_back(std::move(e), std::move(c));
        return p;
    }

    static SparsePoly variable(VarTablePtr vars, size_t idx, C c) {
        Exp e(vars->size(), 0);
        e.at(idx) = 1;
        return monomial(std::move(vars), std::move(e), std::move(c));
    }

    const VarTablePtr& vars() const { return vars_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t num_terms() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && exp_is_zero(terms_[0].first));
    }
    // Zero polynomial reads as C{}; precondition otherwise: is_constant().
    C constant_value() const {
        if (terms_.empty()) return C{};
        if (!exp_is_zero(terms_[0].first) || terms_.size() > 1)
            fail(errc::internal, "constant_value on non-constant polynomial");
        return terms_[0].second;
    }

    const C* coeff(const Exp& e) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const Term& t, const Exp& k) { return t.first < k; });
        if (it != terms_.end() && it->first == e) return &it->second;
        return nullptr;
    }

    // Weight d such that every stored term has weight d (variable weights
    // plus the coefficient's own weight); nullopt when mixed or when a
    // coefficient is itself inhomogeneous.  Zero polynomial reports 0.
    std::optional<long> homogeneous_weight() const {
        std::optional<long> w;
        for (const auto& t : terms_) {
            auto cw = coeff_weight(t.second);
            if (!cw) return std::nullopt;
            long tw = *cw;
            for (size_t i = 0; i < t.first.size(); ++i)
                tw += static_cast<long>(t.first[i]) * vars_->weight(i);
            if (!w)
                w = tw;
            else if (*w != tw)
                return std::nullopt;
        }
        return terms_.empty() ? std::optional<long>(0) : w;
    }

    friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
        if (a.vars_->same_as(*b.vars_)) return a.terms_ == b.terms_;
        return (a - b).is_zero();
    }
    friend bool operator!=(const SparsePoly& a, const SparsePoly& b) { return !(a == b); }

    SparsePoly operator-() const {
        SparsePoly r(*this);
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
        return combine(a, b, false);
    }
    friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
        return combine(a, b, true);
    }
    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) { return mul(a, b); }

    SparsePoly& operator+=(const SparsePoly& o) { return *this = *this + o; }
    SparsePoly& operator-=(const SparsePoly& o) { return *this = *this - o; }
    SparsePoly& operator*=(const SparsePoly& o) { return *this = mul(*this, o); }

    // Reference kernel: ordered-map accumulation, single thread.
    static SparsePoly mul_serial(const SparsePoly& a, const SparsePoly& b) {
        SparsePoly store;
        auto [pa, pb] = aligned_store(a, b, store);
        std::map<Exp, C> acc;
        Exp e;
        for (const auto& ta : pa->terms_) {
            for (const auto& tb : pb->terms_) {
                add_exps(e, ta.first, tb.first);
                auto [it, fresh] = acc.try_emplace(e, C{});
                if (fresh)
                    it->second = ta.second * tb.second;
                else
                    it->second += ta.second * tb.second;
            }
        }
        SparsePoly r(pa->vars_);
        r.terms_.reserve(acc.size());
        for (auto& [exp, c] : acc)
            if (!coeff_is_zero(c)) r.terms_.emplace_back(exp, std::move(c));
        return r;
    }

    // Parallel kernel: the term-pair loop is flat and every pair product is
    // independent, so a's terms are split across threads, each folding into a
    // private hash map; the maps are merged and the result canonicalized.
    // Exact arithmetic makes the result identical for any split.
    static SparsePoly mul_parallel(const SparsePoly& a, const SparsePoly& b) {
        SparsePoly store;
        auto [pa, pb] = aligned_store(a, b, store);
        using Acc = std::unordered_map<Exp, C, ExpHash>;
        int nt = 1;
#ifdef _OPENMP
        nt = omp_get_max_threads();
#endif
        std::vector<Acc> partial(static_cast<size_t>(nt));
#ifdef _OPENMP
#pragma omp parallel num_threads(nt)
#endif
        {
            int tid = 0;
#ifdef _OPENMP
            tid = omp_get_thread_num();
#endif
            Acc& acc = partial[static_cast<size_t>(tid)];
            acc.reserve(pb->terms_.size() * 2);
            Exp e;
            const long na = static_cast<long>(pa->terms_.size());
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
            for (long ia = 0; ia < na; ++ia) {
                const auto& ta = pa->terms_[static_cast<size_t>(ia)];
                for (const auto& tb : pb->terms_) {
                    add_exps(e, ta.first, tb.first);
                    auto [it, fresh] = acc.try_emplace(e, C{});
                    if (fresh)
                        it->second = ta.second * tb.second;
                    else
                        it->second += ta.second * tb.second;
                }
            }
        }
        Acc& total = partial[0];
        for (size_t i = 1; i < partial.size(); ++i) {
            for (auto& [exp, c] : partial[i]) {
                auto [it, fresh] = total.try_emplace(exp, C{});
                if (fresh)
                    it->second = std::move(c);
                else
                    it->second += c;
            }
        }
        SparsePoly r(pa->vars_);
        r.terms_.reserve(total.size());
        for (auto& [exp, c] : total)
            if (!coeff_is_zero(c)) r.terms_.emplace_back(exp, std::move(c));
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [](const Term& x, const Term& y) { return x.first < y.first; });
        return r;
    }

    static SparsePoly mul(const SparsePoly& a, const SparsePoly& b) {
        const size_t pairs = a.terms_.size() * b.terms_.size();
        bool inside_parallel = false;
#ifdef _OPENMP
        inside_parallel = omp_in_parallel() != 0;
#endif
        bool parallel = pairs >= kParallelPairThreshold && !inside_parallel;
        if (pairs >= 64) {
            SparsePoly store;
            auto [pa, pb] = aligned_store(a, b, store);
            PackPlan plan = pack_plan(*pa, *pb);
            if (plan.ok) return mul_packed(*pa, *pb, plan, parallel);
        }
        if (parallel) return mul_parallel(a, b);
        return mul_serial(a, b);
    }

    // Exponent vectors of both operands packed into one 64-bit key when the
    // per-variable bit budgets fit; monomial products then become a single
    // integer addition.  Used for the hot multiplications; the plain kernels
    // above stay as the reference.
    struct PackPlan {
        bool ok = false;
        std::vector<int> shift;
        std::vector<uint64_t> mask;
    };

    static PackPlan pack_plan(const SparsePoly& a, const SparsePoly& b) {
        PackPlan plan;
        const size_t n = a.vars_->size();
        std::vector<uint32_t> mxa(n, 0), mxb(n, 0);
        for (const auto& t : a.terms_)
            for (size_t i = 0; i < n; ++i) mxa[i] = std::max(mxa[i], t.first[i]);
        for (const auto& t : b.terms_)
            for (size_t i = 0; i < n; ++i) mxb[i] = std::max(mxb[i], t.first[i]);
        plan.shift.resize(n);
        plan.mask.resize(n);
        int at = 0;
        for (size_t i = 0; i < n; ++i) {
            uint64_t top = static_cast<uint64_t>(mxa[i]) + mxb[i];
            int bits = std::max(1, static_cast<int>(std::bit_width(top)));
            plan.shift[i] = at;
            plan.mask[i] = (bits >= 64) ? ~0ULL : ((1ULL << bits) - 1);
            at += bits;
            if (at > 64) return plan;  // ok stays false
        }
        plan.ok = true;
        return plan;
    }

    static SparsePoly mul_packed(const SparsePoly& a, const SparsePoly& b, const PackPlan& plan,
                                 bool parallel) {
        const size_t n = a.vars_->size();
        auto pack = [&](const std::vector<Term>& ts) {
            std::vector<uint64_t> keys(ts.size());
            for (size_t t = 0; t < ts.size(); ++t) {
                uint64_t k = 0;
                for (size_t i = 0; i < n; ++i)
                    k |= static_cast<uint64_t>(ts[t].first[i]) << plan.shift[i];
                keys[t] = k;
            }
            return keys;
        };
        std::vector<uint64_t> ka = pack(a.terms_), kb = pack(b.terms_);
        using Acc = std::unordered_map<uint64_t, C, KeyHash>;
        int nt = 1;
#ifdef _OPENMP
        if (parallel) nt = omp_get_max_threads();
#endif
        std::vector<Acc> partial(static_cast<size_t>(nt));
        auto body = [&](Acc& acc, long ia) {
            const C& ca = a.terms_[static_cast<size_t>(ia)].second;
            const uint64_t base = ka[static_cast<size_t>(ia)];
            for (size_t jb = 0; jb < kb.size(); ++jb) {
                uint64_t key = base + kb[jb];
                auto it = acc.find(key);
                if (it == acc.end())
                    acc.emplace(key, coeff_product(ca, b.terms_[jb].second));
                else
                    coeff_add_prod(it->second, ca, b.terms_[jb].second);
            }
        };
        if (nt > 1) {
#ifdef _OPENMP
#pragma omp parallel num_threads(nt)
            {
                Acc& acc = partial[static_cast<size_t>(omp_get_thread_num())];
                acc.reserve(kb.size() * 2);
#pragma omp for schedule(static)
                for (long ia = 0; ia < static_cast<long>(ka.size()); ++ia) body(acc, ia);
            }
#endif
        } else {
            partial[0].reserve(kb.size() * 2);
            for (long ia = 0; ia < static_cast<long>(ka.size()); ++ia) body(partial[0], ia);
        }
        Acc& total = partial[0];
        for (size_t i = 1; i < partial.size(); ++i)
            for (auto& [key, c] : partial[i]) {
                auto it = total.find(key);
                if (it == total.end())
                    total.emplace(key, std::move(c));
                else
                    it->second += c;
            }
        SparsePoly r(a.vars_);
        r.terms_.reserve(total.size());
        Exp e(n);
        for (auto& [key, c] : total) {
            if (coeff_is_zero(c)) continue;
            for (size_t i = 0; i < n; ++i)
                e[i] = static_cast<uint32_t>((key >> plan.shift[i]) & plan.mask[i]);
            r.terms_.emplace_back(e, std::move(c));
        }
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [](const Term& x, const Term& y) { return x.first < y.first; });
        return r;
    }

    // Fused multiply-accumulate over coefficient pairs: one hash pass for
    // sum_t A_t * B_t instead of repeated merge-adds.  This is the hot kernel
    // of every series convolution.
    static SparsePoly dot(const std::vector<std::pair<const SparsePoly*, const SparsePoly*>>& pairs) {
        const SparsePoly* any = nullptr;
        for (auto& [pa, pb] : pairs)
            if (!pa->is_zero() && !pb->is_zero()) {
                any = pa;
                break;
            }
        if (!any) return pairs.empty() ? SparsePoly() : SparsePoly(pairs.front().first->vars_);
        const VarTablePtr& vars = any->vars_;
        const size_t n = vars->size();
        // One shared pack plan across every operand pair.
        std::vector<uint32_t> mxa(n, 0), mxb(n, 0);
        bool mixable = true;
        for (auto& [pa, pb] : pairs) {
            if (pa->is_zero() || pb->is_zero()) continue;
            if (!pa->vars_->same_as(*vars) || !pb->vars_->same_as(*vars)) mixable = false;
            for (const auto& t : pa->terms_)
                for (size_t i = 0; i < n; ++i) mxa[i] = std::max(mxa[i], t.first[i]);
            for (const auto& t : pb->terms_)
                for (size_t i = 0; i < n; ++i) mxb[i] = std::max(mxb[i], t.first[i]);
        }
        std::vector<int> shift(n);
        std::vector<uint64_t> mask(n);
        int at = 0;
        bool packok = mixable;
        for (size_t i = 0; i < n && packok; ++i) {
            uint64_t top = static_cast<uint64_t>(mxa[i]) + mxb[i];
            int bits = std::max(1, static_cast<int>(std::bit_width(top)));
            shift[i] = at;
            mask[i] = (1ULL << bits) - 1;
            at += bits;
            if (at > 64) packok = false;
        }
        if (!packok) {
            SparsePoly acc(vars);
            for (auto& [pa, pb] : pairs) acc += mul(*pa, *pb);
            return acc;
        }
        std::unordered_map<uint64_t, C, KeyHash> accm;
        std::vector<uint64_t> kb;
        for (auto& [pa, pb] : pairs) {
            if (pa->is_zero() || pb->is_zero()) continue;
            kb.resize(pb->terms_.size());
            for (size_t t = 0; t < kb.size(); ++t) {
                uint64_t k = 0;
                for (size_t i = 0; i < n; ++i)
                    k |= static_cast<uint64_t>(pb->terms_[t].first[i]) << shift[i];
                kb[t] = k;
            }
            for (const auto& ta : pa->terms_) {
                uint64_t base = 0;
                for (size_t i = 0; i < n; ++i)
                    base |= static_cast<uint64_t>(ta.first[i]) << shift[i];
                const C& ca = ta.second;
                for (size_t jb = 0; jb < kb.size(); ++jb) {
                    uint64_t key = base + kb[jb];
                    auto it = accm.find(key);
                    if (it == accm.end())
                        accm.emplace(key, coeff_product(ca, pb->terms_[jb].second));
                    else
                        coeff_add_prod(it->second, ca, pb->terms_[jb].second);
                }
            }
        }
        SparsePoly r(vars);
        r.terms_.reserve(accm.size());
        Exp e(n);
        for (auto& [key, c] : accm) {
            if (coeff_is_zero(c)) continue;
            for (size_t i = 0; i < n; ++i)
                e[i] = static_cast<uint32_t>((key >> shift[i]) & mask[i]);
            r.terms_.emplace_back(e, std::move(c));
        }
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [](const Term& x, const Term& y) { return x.first < y.first; });
        return r;
    }

    SparsePoly scaled(const C& c) const {
        if (coeff_is_zero(c)) return SparsePoly(vars_);
        SparsePoly r(vars_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            C v = t.second * c;
            if (!coeff_is_zero(v)) r.terms_.emplace_back(t.first, std::move(v));
        }
        return r;
    }

    SparsePoly pow(long e) const {
        if (e < 0) fail(errc::input, "negative polynomial power");
        C one = terms_.empty() ? coeff_one_like(C{}) : coeff_one_like(terms_[0].second);
        SparsePoly r = constant(vars_, std::move(one));
        SparsePoly base = *this;
        while (e > 0) {
            if (e & 1) r = mul(r, base);
            e >>= 1;
            if (e) base = mul(base, base);
        }
        return r;
    }

    SparsePoly derivative(size_t var) const {
        SparsePoly r(vars_);
        for (const auto& t : terms_) {
            uint32_t e = t.first.at(var);
            if (e == 0) continue;
            Exp ne = t.first;
            ne[var] = e - 1;
            C c = coeff_scaled_int(t.second, static_cast<long>(e));
            if (!coeff_is_zero(c)) r.terms_.emplace_back(std::move(ne), std::move(c));
        }
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [](const Term& x, const Term& y) { return x.first < y.first; });
        return r;
    }

    bool depends_on(size_t var) const {
        for (const auto& t : terms_)
            if (t.first.at(var) != 0) return true;
        return false;
    }

    // Coefficient of var^e as a polynomial with that variable's slot zeroed.
    SparsePoly coeff_of(size_t var, uint32_t e) const {
        SparsePoly r(vars_);
        for (const auto& t : terms_) {
            if (t.first.at(var) != e) continue;
            Exp ne = t.first;
            ne[var] = 0;
            r.terms_.emplace_back(std::move(ne), t.second);
        }
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [](const Term& x, const Term& y) { return x.first < y.first; });
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& t : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << t.second << ")";
            for (size_t i = 0; i < t.first.size(); ++i) {
                if (t.first[i] == 0) continue;
                os << "*" << vars_->name(i);
                if (t.first[i] > 1) os << "^" << t.first[i];
            }
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const SparsePoly& p) { return os << p.str(); }

    // Appends a term; caller guarantees ascending exponent order.
    void push_term_sorted(Exp e, C c) {
        if (coeff_is_zero(c)) return;
        if (!terms_.empty() && !(terms_.back().first < e))
            fail(errc::internal, "push_term_sorted out of order");
        terms_.emplace_back(std::move(e), std::move(c));
    }

    static constexpr size_t kParallelPairThreshold = 1 << 15;

private:
    static bool exp_is_zero(const Exp& e) {
        for (uint32_t v : e)
            if (v) return false;
        return true;
    }
    static void add_exps(Exp& out, const Exp& a, const Exp& b) {
        out.resize(a.size());
        for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    }

    // A constant over the empty table acts as a universal scalar and may be
    // promoted into any ring; anything else must match tables exactly.
    static bool promotable(const SparsePoly& p) { return p.vars_->size() == 0 && p.is_constant(); }
    static SparsePoly promoted(const SparsePoly& p, const VarTablePtr& to) {
        SparsePoly r(to);
        if (!p.terms_.empty()) r.terms_.emplace_back(Exp(to->size(), 0), p.terms_[0].second);
        return r;
    }
    // Returns operand pointers over a common ring, materializing promotions
    // into `store` when needed.
    static std::pair<const SparsePoly*, const SparsePoly*> aligned_store(const SparsePoly& a,
                                                                         const SparsePoly& b,
                                                                         SparsePoly& store) {
        if (a.vars_->same_as(*b.vars_)) return {&a, &b};
        if (promotable(a)) {
            store = promoted(a, b.vars_);
            return {&store, &b};
        }
        if (promotable(b)) {
            store = promoted(b, a.vars_);
            return {&a, &store};
        }
        fail(errc::internal, "mixing polynomials from different rings");
    }
    static SparsePoly combine(const SparsePoly& a0, const SparsePoly& b0, bool subtract) {
        SparsePoly store;
        auto [a, b] = aligned_store(a0, b0, store);
        SparsePoly r(a->vars_);
        r.terms_.reserve(a->terms_.size() + b->terms_.size());
        auto ia = a->terms_.begin(), ea = a->terms_.end();
        auto ib = b->terms_.begin(), eb = b->terms_.end();
        while (ia != ea || ib != eb) {
            if (ib == eb || (ia != ea && ia->first < ib->first)) {
                r.terms_.push_back(*ia++);
            } else if (ia == ea || ib->first < ia->first) {
                r.terms_.emplace_back(ib->first, subtract ? -ib->second : ib->second);
                ++ib;
            } else {
                C c = subtract ? ia->second - ib->second : ia->second + ib->second;
                if (!coeff_is_zero(c)) r.terms_.emplace_back(ia->first, std::move(c));
                ++ia;
                ++ib;
            }
        }
        return r;
    }

    VarTablePtr vars_;
    std::vector<Term> terms_;
};

using GradedPoly = SparsePoly<Rational>;

// Hooks letting GradedPoly act as the coefficient ring of another SparsePoly.
inline bool coeff_is_zero(const GradedPoly& p) { return p.is_zero(); }
inline std::optional<long> coeff_weight(const GradedPoly& p) { return p.homogeneous_weight(); }
inline GradedPoly coeff_one_like(const GradedPoly& c) {
    return GradedPoly::constant(c.vars(), Rational(1));
}
inline GradedPoly coeff_scaled_int(const GradedPoly& c, long n) { return c.scaled(Rational(n)); }
inline GradedPoly scale_coeff(const GradedPoly& c, const Rational& m) { return c.scaled(m); }
inline GradedPoly coeff_product(const GradedPoly& a, const GradedPoly& b) {
    return GradedPoly::mul(a, b);
}
inline void coeff_add_prod(GradedPoly& acc, const GradedPoly& a, const GradedPoly& b) {
    acc += GradedPoly::mul(a, b);
}

// Substitutes images[i] for variable i over a target ring; powers are
// memoized per variable since exponent patterns repeat heavily across terms.
inline GradedPoly substitute_vars(const GradedPoly& p, const std::vector<GradedPoly>& images,
                                  const VarTablePtr& target) {
    std::vector<std::vector<GradedPoly>> powers(images.size());
    auto power = [&](size_t var, uint32_t e) -> const GradedPoly& {
        auto& cache = powers[var];
        if (cache.empty()) cache.push_back(GradedPoly::constant(target, Rational(1)));
        while (cache.size() <= e) cache.push_back(GradedPoly::mul(cache.back(), images[var]));
        return cache[e];
    };
    GradedPoly acc(target);
    for (const auto& t : p.terms()) {
        GradedPoly term = GradedPoly::constant(target, t.second);
        for (size_t i = 0; i < t.first.size(); ++i) {
            if (t.first[i] == 0) continue;
            if (i >= images.size()) fail(errc::internal, "substitute_vars: missing image");
            term = GradedPoly::mul(term, power(i, t.first[i]));
        }
        acc += term;
    }
    return acc;
}

// Full evaluation at a rational point.
template <class C>
C eval_at(const SparsePoly<C>& p, const std::vector<Rational>& point) {
    if (point.size() != p.vars()->size()) fail(errc::input, "evaluation point arity mismatch");
    C acc{};
    bool first = true;
    for (const auto& t : p.terms()) {
        Rational m(1);
        for (size_t i = 0; i < t.first.size(); ++i)
            if (t.first[i]) m *= point[i].pow(t.first[i]);
        C v = scale_coeff(t.second, m);
        if (first) {
            acc = std::move(v);
            first = false;
        } else {
            acc += v;
        }
    }
    return acc;
}

} // namespace telsig

#endif
