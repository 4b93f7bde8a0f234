#ifndef TELSIG_EXPANSION_HPP
#define TELSIG_EXPANSION_HPP

#include <map>
#include <utility>
#include <vector>

#include "telsig/biseries.hpp"
#include "telsig/curve.hpp"
#include "telsig/series.hpp"

namespace telsig {

// Shared memo for series of x-monomials x^alpha at a given local expansion.
class MonomialCache {
public:
    MonomialCache(VarTablePtr kvars, std::vector<Series> x)
        : kvars_(std::move(kvars)), x_(std::move(x)), powers_(x_.size()) {}

    // Product over all variables of x_s^{alpha_s}.
    const Series& eval(const Exp& alpha);

private:
    const Series& power(size_t var, uint32_t e);

    VarTablePtr kvars_;
    std::vector<Series> x_;
    std::vector<std::vector<Series>> powers_;
    std::map<Exp, Series> products_;
};

// Substitutes the local expansions into a curve polynomial.
Series substitute_x(const XPoly& f, MonomialCache& cache, const VarTablePtr& kvars);

struct DuData {
    std::vector<Series> du;  // du[i] = du_{w_{i+1}}/dz, unit leading coefficient
    Series det_g;            // det G(x(z)) as a function series
    std::vector<std::vector<GradedPoly>> b;  // b[i][j-1] = coefficient of z^{j-1} in du[i]
    int b_cols = 0;                          // sound common column count
};

struct CSeries {
    std::vector<GradedPoly> c;  // c[i-1] = c_i, homogeneous of degree i or zero
    int delivered = 0;          // may be below the request; never padded
    int requested = 0;
};

struct OmegaData {
    BiSeries dy;         // rows of d_y Omega (coefficient of dz1 dz2)
    BiSeries remainder;  // dy minus the expansion of 1/(z1-z2)^2
    // Pairs (z1 order k, most negative z2 exponent of the remainder row k);
    // rows with an empty window report truncation instead.
    std::vector<std::pair<int, int>> z2_floor;
    // Singular parts of -remainder at rows z1^{w_i-1}: candidate dr_i tails.
    std::vector<Series> dr_tails;
};

// Local expansion data at infinity: x_k(z) solved order by order from the
// defining equations, with x_1 = z^{-a_1} exactly and each unit correction
// coefficient homogeneous in kappa of degree equal to its z-offset.
class LocalExpansion {
public:
    // Solves the unit parts of x_2..x_m through z-order `order`.
    static LocalExpansion solve(CurveModel curve, int order);

    const CurveModel& curve() const { return curve_; }
    int order() const { return order_; }
    // x_series()[k-1] is the expansion of x_k.
    const std::vector<Series>& x_series() const { return x_; }
    MonomialCache make_cache() const;

    // F_i(x(z)) for each i; every computed coefficient must vanish.
    std::vector<Series> residuals() const;

    // Holomorphic differentials du_{w_i}/dz plus det G and the B matrix.
    DuData du_series() const;

    // c_i from log(z^{1-g} sqrt(du_{2g-1}/dz)) = sum c_i z^i / i.
    CSeries c_series(const DuData& du, int count) const;

    // d_y Omega minus its principal part, z1-orders below `z1_orders`.
    OmegaData omega_expansion(int z1_orders) const;

private:
    LocalExpansion() = default;

    CurveModel curve_;
    int order_ = 0;
    std::vector<Series> x_;
};

// Divided-difference matrix H = (h_ij), i,j = 2..m, over the doubled
// variable table x_1..x_m, y_1..y_m.  h_ij multiplied by (x_j - y_j)
// telescopes to F_i(y_1, x_2..x_m) - F_i(y_1..y_m).
struct HMatrix {
    VarTablePtr hvars;                      // x1..xm then y1..ym
    std::vector<std::vector<XPoly>> h;      // (m-1) x (m-1)
    std::vector<XPoly> telescoped_lhs;      // sum_j h_ij (x_j - y_j)
    std::vector<XPoly> telescoped_rhs;      // F_i(y1, x..) - F_i(y..)
};

HMatrix h_matrix(const CurveModel& curve);

// Assembles qhat_{ij} = [z1^{i-1} z2^{j-1}] (remainder + sum du_t(z1) dr_t(z2))
// from externally supplied second-kind tails/differentials dr_t.  Purely
// mechanical; no correctness claim about the inputs.
std::vector<std::vector<GradedPoly>> assemble_qhat(const OmegaData& omega,
                                                   const std::vector<Series>& du,
                                                   const std::vector<Series>& dr, size_t rows,
                                                   size_t cols);

// Exact singular part (exponents <= -1) of a series window.
Series singular_part(const Series& s);

} // namespace telsig

#endif
