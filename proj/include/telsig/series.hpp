#ifndef TELSIG_SERIES_HPP
#define TELSIG_SERIES_HPP

#include <algorithm>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "telsig/poly.hpp"

namespace telsig {

// Truncated Laurent series in one local variable z with GradedPoly
// coefficients.  `val` is the exponent of the first stored coefficient,
// `trunc` the first unknown exponent: coefficients with exponent >= trunc
// are not claimed.  trunc == kExactOrder marks a series known exactly
// (all coefficients beyond the stored window are zero), e.g. z^{-a}.
//
// Every operation computes the tightest sound truncation from its inputs;
// narrowing silently is forbidden and tests assert the reported orders.
class Series {
public:
    static constexpr int kExactOrder = 1 << 28;

    Series() : vars_(empty_vartable()), val_(0), trunc_(kExactOrder) {}

    // Unknown-beyond-trunc zero window.
    static Series zero(VarTablePtr vars, int trunc) {
        Series s;
        s.vars_ = std::move(vars);
        s.val_ = trunc;
        s.trunc_ = trunc;
        return s;
    }

    // Exactly zero.
    static Series exact_zero(VarTablePtr vars) {
        Series s;
        s.vars_ = std::move(vars);
        return s;
    }

    static Series monomial(VarTablePtr vars, int exponent, GradedPoly c) {
        Series s;
        s.vars_ = std::move(vars);
        s.val_ = exponent;
        if (!c.is_zero()) s.coeff_.push_back(std::move(c));
        s.trim();
        return s;
    }

    static Series monomial(VarTablePtr vars, int exponent, Rational c) {
        auto vv = vars;
        return monomial(std::move(vars), exponent, GradedPoly::constant(vv, std::move(c)));
    }

    // Builds from a dense coefficient window starting at `val`; a window
    // shorter than [val, trunc) claims the remaining coefficients are zero.
    static Series from_coeffs(VarTablePtr vars, int val, std::vector<GradedPoly> coeffs, int trunc) {
        Series s;
        s.vars_ = std::move(vars);
        s.val_ = val;
        s.coeff_ = std::move(coeffs);
        s.trunc_ = trunc;
        if (trunc != kExactOrder) {
            long want = static_cast<long>(trunc) - val;
            if (static_cast<long>(s.coeff_.size()) > want)
                fail(errc::internal, "series window exceeds truncation");
            s.coeff_.resize(static_cast<size_t>(want), GradedPoly(s.vars_));
        }
        s.trim();
        return s;
    }

    const VarTablePtr& vars() const { return vars_; }
    int valuation() const { return val_; }
    int truncation() const { return trunc_; }
    bool is_exact() const { return trunc_ == kExactOrder; }
    bool is_zero_window() const { return coeff_.empty(); }
    // One past the last stored coefficient (== truncation unless exact).
    int window_end() const { return val_ + static_cast<int>(coeff_.size()); }

    // Coefficient of z^k; k must be below the truncation to be a claim.
    GradedPoly coeff(int k) const {
        if (k >= trunc_) fail(errc::truncation, "coefficient beyond truncation");
        long idx = static_cast<long>(k) - val_;
        if (idx < 0 || idx >= static_cast<long>(coeff_.size())) return GradedPoly(vars_);
        return coeff_[static_cast<size_t>(idx)];
    }

    const GradedPoly& leading() const {
        if (coeff_.empty()) fail(errc::internal, "leading coefficient of zero series");
        return coeff_.front();
    }

    friend Series operator+(const Series& a, const Series& b) { return combine(a, b, false); }
    friend Series operator-(const Series& a, const Series& b) { return combine(a, b, true); }
    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }

    Series operator-() const {
        Series r(*this);
        for (auto& c : r.coeff_) c = -c;
        return r;
    }

    friend Series operator*(const Series& a, const Series& b) { return mul(a, b); }
    Series& operator*=(const Series& o) { return *this = mul(*this, o); }

    // Reference kernel: plain convolution, everything single-threaded.
    static Series mul_serial(const Series& a, const Series& b) {
        return mul_impl(a, b, Mode::serial_ref);
    }

    // Output coefficients are independent convolutions; the loop over them
    // is data-parallel.  Inner polynomial products stay serial to avoid
    // nesting.
    static Series mul_parallel(const Series& a, const Series& b) {
        return mul_impl(a, b, Mode::parallel_outer);
    }

    static Series mul(const Series& a, const Series& b) {
        size_t terms_a = 0, terms_b = 0;
        for (const auto& c : a.coeff_) terms_a += c.num_terms();
        for (const auto& c : b.coeff_) terms_b += c.num_terms();
        bool inside_parallel = false;
#ifdef _OPENMP
        inside_parallel = omp_in_parallel() != 0;
#endif
        size_t outer = std::max(a.coeff_.size(), b.coeff_.size());
        if (!inside_parallel && outer >= 4 && terms_a * terms_b >= kParallelWorkThreshold)
            return mul_parallel(a, b);
        return mul_impl(a, b, Mode::serial_dispatch);
    }

    Series scaled(const Rational& c) const {
        Series r(*this);
        for (auto& p : r.coeff_) p = p.scaled(c);
        r.trim();
        return r;
    }

    Series scaled(const GradedPoly& c) const {
        Series r(*this);
        for (auto& p : r.coeff_) p = GradedPoly::mul(p, c);
        r.trim();
        return r;
    }

    // Multiplication by z^k.
    Series shifted(int k) const {
        Series r(*this);
        r.val_ += k;
        if (!r.is_exact()) r.trunc_ = sat(static_cast<long>(r.trunc_) + k);
        return r;
    }

    Series truncated(int t) const {
        if (t >= trunc_) return *this;
        Series r(*this);
        r.trunc_ = t;
        if (t <= r.val_) {
            r.coeff_.clear();
            r.val_ = t;
        } else {
            r.coeff_.resize(static_cast<size_t>(t - r.val_), GradedPoly(vars_));
        }
        r.trim();
        return r;
    }

    Series pow(long e) const {
        if (e < 0) fail(errc::input, "negative series power; divide instead");
        Series r = monomial(vars_, 0, Rational(1));
        Series base = *this;
        while (e > 0) {
            if (e & 1) r = mul(r, base);
            e >>= 1;
            if (e) base = mul(base, base);
        }
        return r;
    }

    // d/dz.
    Series derivative() const {
        Series r;
        r.vars_ = vars_;
        r.val_ = val_ - 1;
        r.trunc_ = is_exact() ? kExactOrder : trunc_ - 1;
        r.coeff_.resize(coeff_.size(), GradedPoly(vars_));
        for (size_t i = 0; i < coeff_.size(); ++i)
            r.coeff_[i] = coeff_[i].scaled(Rational(val_ + static_cast<long>(i)));
        r.trim();
        return r;
    }

    // 1/s.  The leading coefficient must be an invertible constant.
    Series inverse() const {
        if (coeff_.empty()) fail(errc::input, "inverse of zero series window");
        if (!leading().is_constant() || leading().is_zero())
            fail(errc::input, "inverse requires a constant invertible leading coefficient");
        Rational lead = leading().constant_value();
        // The reciprocal of an exact monomial is again exact; any other
        // exact input has an infinite reciprocal, so the caller must pick a
        // truncation first.
        if (is_exact()) {
            if (coeff_.size() == 1) return monomial(vars_, -val_, Rational(1) / lead);
            fail(errc::truncation, "inverse of exact non-monomial series: truncate first");
        }
        // Relative order the reciprocal of the unit part is sound to.
        int rel = trunc_ - val_;
        std::vector<GradedPoly> inv(static_cast<size_t>(rel), GradedPoly(vars_));
        inv[0] = GradedPoly::constant(vars_, Rational(1) / lead);
        std::vector<std::pair<const GradedPoly*, const GradedPoly*>> pairs;
        for (int k = 1; k < rel; ++k) {
            // lead * inv_k = - sum_{j=1..k} u_j inv_{k-j}, u_j = coeff at val_+j
            pairs.clear();
            for (int j = 1; j <= k && static_cast<size_t>(j) < coeff_.size(); ++j)
                pairs.emplace_back(&coeff_[static_cast<size_t>(j)], &inv[static_cast<size_t>(k - j)]);
            inv[static_cast<size_t>(k)] = GradedPoly::dot(pairs).scaled(Rational(-1) / lead);
        }
        return from_coeffs(vars_, -val_, std::move(inv), -val_ + rel);
    }

    friend Series operator/(const Series& a, const Series& b) { return mul(a, b.inverse()); }

    // log(1+u) through the derivative relation (1+u) L' = u': one triangular
    // convolution instead of repeated powers.
    Series log_unit() const {
        require_unit_leading("log");
        if (is_exact()) {
            if (coeff_.size() == 1) return exact_zero(vars_);
            fail(errc::truncation, "log of exact non-constant series: truncate first");
        }
        const int rel = trunc_;
        // dense tail u_1..u_{rel-1}
        std::vector<GradedPoly> u(static_cast<size_t>(rel), GradedPoly(vars_));
        for (int k = 1; k < rel; ++k) u[static_cast<size_t>(k)] = coeff(k);
        // M_k = k * L_k; M_k = k u_k - sum_{i=1..k-1} u_i M_{k-i}
        std::vector<GradedPoly> M(static_cast<size_t>(rel), GradedPoly(vars_));
        std::vector<GradedPoly> L(static_cast<size_t>(rel), GradedPoly(vars_));
        std::vector<std::pair<const GradedPoly*, const GradedPoly*>> pairs;
        for (int k = 1; k < rel; ++k) {
            pairs.clear();
            for (int i = 1; i < k; ++i)
                pairs.emplace_back(&u[static_cast<size_t>(i)], &M[static_cast<size_t>(k - i)]);
            GradedPoly s = GradedPoly::dot(pairs);
            M[static_cast<size_t>(k)] = u[static_cast<size_t>(k)].scaled(Rational(k)) - s;
            L[static_cast<size_t>(k)] = M[static_cast<size_t>(k)].scaled(Rational(1, k));
        }
        return from_coeffs(vars_, 0, std::move(L), rel);
    }

    // exp(u) for u of positive order, through E' = u' E.
    Series exp_positive() const {
        if (!coeff_.empty() && val_ <= 0) fail(errc::input, "exp needs strictly positive order");
        if (is_exact()) {
            if (coeff_.empty()) return monomial(vars_, 0, Rational(1));
            fail(errc::truncation, "exp of exact series: truncate first");
        }
        const int rel = trunc_;
        if (rel <= 0) return zero(vars_, rel);
        std::vector<GradedPoly> D(static_cast<size_t>(rel), GradedPoly(vars_));  // D_i = i u_i
        for (int i = 1; i < rel; ++i) D[static_cast<size_t>(i)] = coeff(i).scaled(Rational(i));
        std::vector<GradedPoly> E(static_cast<size_t>(rel), GradedPoly(vars_));
        E[0] = GradedPoly::constant(vars_, Rational(1));
        std::vector<std::pair<const GradedPoly*, const GradedPoly*>> pairs;
        for (int k = 1; k < rel; ++k) {
            pairs.clear();
            for (int i = 1; i <= k; ++i)
                pairs.emplace_back(&D[static_cast<size_t>(i)], &E[static_cast<size_t>(k - i)]);
            E[static_cast<size_t>(k)] = GradedPoly::dot(pairs).scaled(Rational(1, k));
        }
        return from_coeffs(vars_, 0, std::move(E), rel);
    }

    // r-th root of a unit-with-leading-1 series; valuation must divide r.
    friend Series series_root(const Series& s, long r);

    friend bool operator==(const Series& a, const Series& b) {
        return a.val_ == b.val_ && a.trunc_ == b.trunc_ && a.coeff_ == b.coeff_ &&
               a.vars_->same_as(*b.vars_);
    }
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

    // True when all shared-window coefficients agree; disagreements beyond
    // either truncation are not claims.
    static bool agree(const Series& a, const Series& b) {
        int hi = std::min(a.trunc_, b.trunc_);
        int lo = std::min(a.val_, b.val_);
        for (int k = lo; k < hi; ++k)
            if (!(a.coeff(k) == b.coeff(k))) return false;
        return true;
    }

    std::string str(const std::string& var = "z") const {
        std::ostringstream os;
        bool any = false;
        for (size_t i = 0; i < coeff_.size(); ++i) {
            if (coeff_[i].is_zero()) continue;
            if (any) os << " + ";
            os << "(" << coeff_[i].str() << ")";
            int e = val_ + static_cast<int>(i);
            if (e != 0) os << "*" << var << "^" << e;
            any = true;
        }
        if (!any) os << "0";
        if (!is_exact()) os << " + O(" << var << "^" << trunc_ << ")";
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Series& s) { return os << s.str(); }

    static constexpr size_t kParallelWorkThreshold = 1 << 15;

private:
    static int sat(long v) { return v >= kExactOrder ? kExactOrder : static_cast<int>(v); }

    void require_unit_leading(const char* what) const {
        if (coeff_.empty() || val_ != 0 || !leading().is_constant() ||
            !(leading().constant_value() == Rational(1)))
            fail(errc::input, std::string(what) + " requires a unit series with leading coefficient 1");
    }

    void trim() {
        while (!coeff_.empty() && coeff_.front().is_zero()) {
            coeff_.erase(coeff_.begin());
            ++val_;
        }
        if (is_exact())
            while (!coeff_.empty() && coeff_.back().is_zero()) coeff_.pop_back();
        if (coeff_.empty()) val_ = is_exact() ? 0 : trunc_;
    }

    static Series combine(const Series& a, const Series& b, bool subtract) {
        VarTablePtr vars = a.vars_->size() ? a.vars_ : b.vars_;
        int trunc = std::min(a.trunc_, b.trunc_);
        if (a.coeff_.empty() && b.coeff_.empty())
            return trunc == kExactOrder ? exact_zero(vars) : zero(vars, trunc);
        int lo = std::min(a.coeff_.empty() ? trunc : a.val_, b.coeff_.empty() ? trunc : b.val_);
        lo = std::min(lo, trunc);
        Series r;
        r.vars_ = vars;
        r.val_ = lo;
        r.trunc_ = trunc;
        size_t n = trunc == kExactOrder
                       ? static_cast<size_t>(std::max(win_end(a), win_end(b)) - lo)
                       : static_cast<size_t>(trunc - lo);
        r.coeff_.assign(n, GradedPoly(vars));
        for (size_t i = 0; i < n; ++i) {
            int k = lo + static_cast<int>(i);
            GradedPoly x = a.window_coeff(k);
            GradedPoly y = b.window_coeff(k);
            r.coeff_[i] = subtract ? x - y : x + y;
        }
        r.trim();
        return r;
    }

    static long win_end(const Series& s) {
        return s.coeff_.empty() ? 0 : s.val_ + static_cast<long>(s.coeff_.size());
    }

    GradedPoly window_coeff(int k) const {
        long idx = static_cast<long>(k) - val_;
        if (idx < 0 || idx >= static_cast<long>(coeff_.size())) return GradedPoly(vars_);
        return coeff_[static_cast<size_t>(idx)];
    }

    enum class Mode { serial_ref, serial_dispatch, parallel_outer };

    static Series mul_impl(const Series& a, const Series& b, Mode mode) {
        VarTablePtr vars = a.vars_->size() ? a.vars_ : b.vars_;
        if (a.coeff_.empty() || b.coeff_.empty()) {
            // A zero window still bounds what the product can claim.
            if (a.is_exact() && a.coeff_.empty()) return exact_zero(vars);
            if (b.is_exact() && b.coeff_.empty()) return exact_zero(vars);
            int trunc = sat(std::min(static_cast<long>(a.trunc_) + b.val_,
                                     static_cast<long>(b.trunc_) + a.val_));
            return zero(vars, trunc);
        }
        int val = a.val_ + b.val_;
        int trunc;
        if (a.is_exact() && b.is_exact())
            trunc = kExactOrder;
        else
            trunc = sat(std::min(static_cast<long>(a.trunc_) + b.val_,
                                 static_cast<long>(b.trunc_) + a.val_));
        long hi = trunc == kExactOrder ? win_end(a) + win_end(b) - 1 : trunc;
        size_t n = static_cast<size_t>(hi - val);
        std::vector<GradedPoly> out(n, GradedPoly(vars));
        const long na = static_cast<long>(a.coeff_.size());
        const long nb = static_cast<long>(b.coeff_.size());
        auto compute_one = [&](long k) {
            long ilo = std::max<long>(0, k - (nb - 1));
            long ihi = std::min<long>(na - 1, k);
            if (mode == Mode::serial_ref) {
                GradedPoly acc(vars);
                for (long i = ilo; i <= ihi; ++i) {
                    const auto& ca = a.coeff_[static_cast<size_t>(i)];
                    const auto& cb = b.coeff_[static_cast<size_t>(k - i)];
                    if (ca.is_zero() || cb.is_zero()) continue;
                    acc += GradedPoly::mul_serial(ca, cb);
                }
                out[static_cast<size_t>(k)] = std::move(acc);
                return;
            }
            std::vector<std::pair<const GradedPoly*, const GradedPoly*>> pairs;
            pairs.reserve(static_cast<size_t>(ihi - ilo + 1));
            for (long i = ilo; i <= ihi; ++i)
                pairs.emplace_back(&a.coeff_[static_cast<size_t>(i)],
                                   &b.coeff_[static_cast<size_t>(k - i)]);
            GradedPoly acc = GradedPoly::dot(pairs);
            out[static_cast<size_t>(k)] = acc.is_zero() ? GradedPoly(vars) : std::move(acc);
        };
        if (mode == Mode::parallel_outer) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
            for (long k = 0; k < static_cast<long>(n); ++k) compute_one(k);
        } else {
            for (long k = 0; k < static_cast<long>(n); ++k) compute_one(k);
        }
        return from_coeffs(vars, val, std::move(out), trunc);
    }

    VarTablePtr vars_;
    int val_;
    int trunc_;
    std::vector<GradedPoly> coeff_;
};

inline Series series_root(const Series& s, long r) {
    if (r <= 0) fail(errc::input, "root index must be positive");
    if (s.coeff_.empty()) fail(errc::input, "root of zero series window");
    if (!s.leading().is_constant() || !(s.leading().constant_value() == Rational(1)))
        fail(errc::input, "root of non-monic unit");
    if (s.val_ % r != 0) fail(errc::input, "valuation not divisible by root index");
    Series unit = s.shifted(-s.val_);
    Series t = unit.log_unit().scaled(Rational(1, r)).exp_positive();
    return t.shifted(s.val_ / static_cast<int>(r));
}

} // namespace telsig

#endif
