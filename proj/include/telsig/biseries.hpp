#ifndef TELSIG_BISERIES_HPP
#define TELSIG_BISERIES_HPP

#include <vector>

#include "telsig/series.hpp"

namespace telsig {

// Bivariate truncated series in the fixed region |z1| < |z2|: a power/
// Laurent window in z1 whose rows are Laurent series in z2.  Rows below
// `v1` are exactly zero; rows at or above `t1` are unknown.  Each row
// carries its own z2 truncation.
class BiSeries {
public:
    BiSeries() : vars_(empty_vartable()), v1_(0), t1_(Series::kExactOrder) {}

    static BiSeries zero(VarTablePtr vars, int t1) {
        BiSeries b;
        b.vars_ = std::move(vars);
        b.v1_ = t1;
        b.t1_ = t1;
        return b;
    }

    // Rows indexed from v1 upward; t1 as in the class contract.
    static BiSeries from_rows(VarTablePtr vars, int v1, std::vector<Series> rows, int t1) {
        BiSeries b;
        b.vars_ = std::move(vars);
        b.v1_ = v1;
        b.t1_ = t1;
        b.rows_ = std::move(rows);
        if (t1 != Series::kExactOrder && v1 + static_cast<long>(b.rows_.size()) != t1)
            fail(errc::internal, "biseries window does not match truncation");
        return b;
    }

    // Embeds a series in z1: each coefficient becomes a z2-constant row.
    static BiSeries from_z1(const Series& s) {
        BiSeries b;
        b.vars_ = s.vars();
        b.v1_ = s.valuation();
        b.t1_ = s.truncation();
        int hi = s.is_exact() ? s.window_end() : s.truncation();
        for (int k = s.valuation(); k < hi; ++k) {
            GradedPoly c = s.coeff(k);
            b.rows_.push_back(c.is_zero() ? Series::exact_zero(s.vars())
                                          : Series::monomial(s.vars(), 0, std::move(c)));
        }
        return b;
    }

    // Embeds a series in z2 as the single z1^0 row.
    static BiSeries from_z2(const Series& s) {
        BiSeries b;
        b.vars_ = s.vars();
        b.v1_ = 0;
        b.t1_ = Series::kExactOrder;
        b.rows_.push_back(s);
        return b;
    }

    const VarTablePtr& vars() const { return vars_; }
    int z1_valuation() const { return v1_; }
    int z1_truncation() const { return t1_; }
    bool z1_exact() const { return t1_ == Series::kExactOrder; }
    int rows() const { return static_cast<int>(rows_.size()); }

    // Row of z1^k.  Rows below the window are exactly zero; asking at or
    // beyond the truncation is a bug in the caller.
    Series row(int k) const {
        if (k >= t1_) fail(errc::truncation, "z1 coefficient beyond truncation");
        long idx = static_cast<long>(k) - v1_;
        if (idx < 0 || idx >= static_cast<long>(rows_.size())) return Series::exact_zero(vars_);
        return rows_[static_cast<size_t>(idx)];
    }

    GradedPoly coeff(int i, int j) const { return row(i).coeff(j); }

    friend BiSeries operator+(const BiSeries& a, const BiSeries& b) { return combine(a, b, false); }
    friend BiSeries operator-(const BiSeries& a, const BiSeries& b) { return combine(a, b, true); }
    BiSeries& operator+=(const BiSeries& o) { return *this = *this + o; }
    BiSeries& operator-=(const BiSeries& o) { return *this = *this - o; }

    friend BiSeries operator*(const BiSeries& a, const BiSeries& b) {
        VarTablePtr vars = a.vars_->size() ? a.vars_ : b.vars_;
        int t1;
        if (a.z1_exact() && b.z1_exact())
            t1 = Series::kExactOrder;
        else
            t1 = sat(std::min(static_cast<long>(a.t1_) + b.v1_, static_cast<long>(b.t1_) + a.v1_));
        if (a.rows_.empty() || b.rows_.empty()) return zero(vars, t1);
        BiSeries r;
        r.vars_ = vars;
        r.v1_ = a.v1_ + b.v1_;
        r.t1_ = t1;
        long hi = (t1 == Series::kExactOrder)
                      ? static_cast<long>(a.v1_) + a.rows() + b.v1_ + b.rows() - 1
                      : t1;
        size_t n = static_cast<size_t>(hi - r.v1_);
        r.rows_.assign(n, Series::exact_zero(vars));
        for (size_t i = 0; i < a.rows_.size(); ++i) {
            for (size_t j = 0; j < b.rows_.size(); ++j) {
                size_t k = i + j;
                if (k >= n) continue;
                r.rows_[k] += Series::mul(a.rows_[i], b.rows_[j]);
            }
        }
        return r;
    }

    BiSeries scaled(const Rational& c) const {
        BiSeries r(*this);
        for (auto& s : r.rows_) s = s.scaled(c);
        return r;
    }

    // Termwise d/dz2.
    BiSeries d_z2() const {
        BiSeries r(*this);
        for (auto& s : r.rows_) s = s.derivative();
        return r;
    }

    std::string str() const {
        std::ostringstream os;
        for (size_t i = 0; i < rows_.size(); ++i) {
            os << "z1^" << (v1_ + static_cast<int>(i)) << " * [" << rows_[i].str("z2") << "]\n";
        }
        if (!z1_exact()) os << "+ O(z1^" << t1_ << ")";
        return os.str();
    }

private:
    static int sat(long v) {
        return v >= Series::kExactOrder ? Series::kExactOrder : static_cast<int>(v);
    }

    static BiSeries combine(const BiSeries& a, const BiSeries& b, bool subtract) {
        VarTablePtr vars = a.vars_->size() ? a.vars_ : b.vars_;
        int t1 = std::min(a.t1_, b.t1_);
        if (a.rows_.empty() && b.rows_.empty()) return zero(vars, t1);
        int lo = std::min(a.rows_.empty() ? t1 : a.v1_, b.rows_.empty() ? t1 : b.v1_);
        lo = std::min(lo, t1);
        long hi;
        if (t1 == Series::kExactOrder)
            hi = std::max(a.rows_.empty() ? lo : a.v1_ + a.rows(),
                          b.rows_.empty() ? lo : b.v1_ + b.rows());
        else
            hi = t1;
        BiSeries r;
        r.vars_ = vars;
        r.v1_ = lo;
        r.t1_ = t1;
        r.rows_.reserve(static_cast<size_t>(hi - lo));
        for (long k = lo; k < hi; ++k) {
            Series x = a.window_row(static_cast<int>(k));
            Series y = b.window_row(static_cast<int>(k));
            r.rows_.push_back(subtract ? x - y : x + y);
        }
        return r;
    }

    Series window_row(int k) const {
        long idx = static_cast<long>(k) - v1_;
        if (idx < 0 || idx >= static_cast<long>(rows_.size())) return Series::exact_zero(vars_);
        return rows_[static_cast<size_t>(idx)];
    }

    VarTablePtr vars_;
    int v1_;
    int t1_;
    std::vector<Series> rows_;
};

// Expansion of 1/(z1 - z2)^2 in |z1| < |z2|: sum_{k>=0} (k+1) z1^k z2^{-k-2},
// with z1-orders below N computed.
inline BiSeries bi_inverse_diff_square(const VarTablePtr& vars, int N) {
    if (N < 1) fail(errc::input, "need at least one z1 order");
    std::vector<Series> rows;
    rows.reserve(static_cast<size_t>(N));
    for (int k = 0; k < N; ++k) rows.push_back(Series::monomial(vars, -k - 2, Rational(k + 1)));
    return BiSeries::from_rows(vars, 0, std::move(rows), N);
}

// Expansion of 1/(x1(z1) - x1(z2)) with x1 = z^{-a1}:
// sum_{n>=0} z1^{a1(n+1)} z2^{-a1 n}, z1-truncated at order N.
inline BiSeries bi_inverse_x1_diff(const VarTablePtr& vars, long a1, int N) {
    if (a1 <= 0) fail(errc::input, "pole order must be positive");
    if (N <= a1) return BiSeries::zero(vars, N);
    std::vector<Series> rows;
    for (long k = a1; k < N; ++k) {
        if (k % a1 == 0)
            rows.push_back(Series::monomial(vars, static_cast<int>(-(k - a1)), Rational(1)));
        else
            rows.push_back(Series::exact_zero(vars));
    }
    return BiSeries::from_rows(vars, static_cast<int>(a1), std::move(rows), N);
}

} // namespace telsig

#endif
