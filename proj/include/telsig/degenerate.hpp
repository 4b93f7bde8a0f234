#ifndef TELSIG_DEGENERATE_HPP
#define TELSIG_DEGENERATE_HPP

#include <string>
#include <vector>

#include "telsig/schur.hpp"
#include "telsig/semigroup.hpp"

namespace telsig {

// A point entering a divisor through its local coordinate: z-variable index
// (coincident indices are allowed) and orientation sign.
struct FormalPoint {
    size_t var = 0;
    int sign = 1;
};

inline std::vector<FormalPoint> plus_points(size_t n) {
    std::vector<FormalPoint> p;
    for (size_t i = 0; i < n; ++i) p.push_back({i, +1});
    return p;
}

struct VerifyResult {
    std::string label;
    bool ok = false;
    GradedPoly lhs;       // cleared-denominator left side
    GradedPoly rhs;       // cleared-denominator right side
    GradedPoly residual;  // lhs - rhs; zero on success
};

// The all-kappa-zero sigma: the Schur polynomial of the gap partition in the
// gap-indexed variables, evaluated through power sums of the local
// coordinates.  Every identity here is an exact polynomial statement.
class DegenerateSigma {
public:
    explicit DegenerateSigma(SemigroupData sg);

    const SemigroupData& semigroup() const { return sg_; }
    const SchurT& schur() const { return s_; }
    const LambdaConstants& constants() const { return lc_; }

    // u_w at the divisor: sum of sign * z_i^w / w.
    GradedPoly abel(long w, const std::vector<FormalPoint>& pts, const VarTablePtr& zv) const;

    // d^n/du_1^n sigma evaluated on the divisor, as a polynomial in the z_i.
    GradedPoly sigma_eval(long n, const std::vector<FormalPoint>& pts, const VarTablePtr& zv) const;

    // Modified prime function at kappa = 0 (antisymmetric).
    GradedPoly prime(const FormalPoint& p, const FormalPoint& q, const VarTablePtr& zv) const;
    // Value against the base point: c'_1^{-1} d^{N_1} sigma(p).
    GradedPoly prime_at_infinity(const FormalPoint& p, const VarTablePtr& zv) const;

private:
    SemigroupData sg_;
    SchurT s_;
    LambdaConstants lc_;
    mutable std::vector<GradedPoly> dt_;  // t1-derivatives of s, dt_[n]
    const GradedPoly& derivative_pow(long n) const;
};

// sigma-derivative stratum identities: d^{N_k} sigma(p_1+..+p_k) equals
// c'_k S_{(lambda_1..lambda_k)}(z) exactly at kappa = 0.
VerifyResult verify_th51(const DegenerateSigma& ds, long k);

struct Th52Result {
    std::vector<VerifyResult> vanishing;  // orders n < N'_1
    VerifyResult leading;                 // (-1)^{g-1} ctilde (z1 z2)^{g-1} (z1 - z2)
    bool ok = false;
};
Th52Result verify_th52(const DegenerateSigma& ds);

// Restriction chain: the z_k expansion of the k-point identity reproduces
// the (k-1)-point identity with factor c'_k / c'_{k-1}.
VerifyResult verify_chain(const DegenerateSigma& ds, long k);

// n-point addition formula with cleared denominators; point_vars may repeat
// variable indices (degenerate divisors), default distinct.
VerifyResult verify_addition(const DegenerateSigma& ds, size_t n,
                             std::vector<size_t> point_vars = {});

// Same identity through the prime-function product form; an independent
// code path for cross-validation.
VerifyResult verify_th61(const DegenerateSigma& ds, size_t n,
                         std::vector<size_t> point_vars = {});

} // namespace telsig

#endif
