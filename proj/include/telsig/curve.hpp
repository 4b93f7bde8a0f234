#ifndef TELSIG_CURVE_HPP
#define TELSIG_CURVE_HPP

#include <map>
#include <string>
#include <vector>

#include "telsig/poly.hpp"
#include "telsig/semigroup.hpp"

namespace telsig {

// Two-level representation: polynomials in x_1..x_m whose coefficients are
// polynomials in the kappa symbols.  Series substitution walks x-monomials.
using XPoly = SparsePoly<GradedPoly>;

enum class KappaMode { zero, symbolic, explicit_values };

struct KappaSpec {
    KappaMode mode = KappaMode::zero;
    std::map<std::string, Rational> values;  // canonical name -> value (explicit mode)

    static KappaSpec zero() { return {}; }
    static KappaSpec symbolic() { return {KappaMode::symbolic, {}}; }
};

struct PhiBasis {
    VarTablePtr xvars;
    std::vector<Exp> monomials;     // exponent vectors in the box set
    std::vector<long> pole_orders;  // strictly increasing nongaps
};

// Canonical kappa symbol name for the coefficient of x^{j} in F_i.
std::string kappa_name(size_t i, const std::vector<long>& j);

// All box vectors with weight below a_i d_{i-1}/d_i, sorted by weight
// (weights are distinct by unique representation).  i is 1-based, 2..m.
std::vector<std::vector<long>> kappa_support(const SemigroupData& sg, size_t i);

class CurveModel {
public:
    static CurveModel build(SemigroupData sg, const KappaSpec& kappa);

    const SemigroupData& semigroup() const { return sg_; }
    const VarTablePtr& kappa_vars() const { return kvars_; }
    const VarTablePtr& x_vars() const { return xvars_; }
    bool symbolic() const { return symbolic_; }
    // F_i for i = 2..m is equations()[i-2].
    const std::vector<XPoly>& equations() const { return F_; }
    const std::vector<std::vector<long>>& l_rows() const { return lrows_; }

    // (m-1)x(m-1) matrix with entry [i][j] = dF_{i+2}/dx_{j+2}.
    std::vector<std::vector<XPoly>> jacobian() const;

    // det of the Jacobian as a polynomial (cofactor expansion; m is small).
    XPoly jacobian_det() const;

private:
    SemigroupData sg_;
    VarTablePtr kvars_;
    VarTablePtr xvars_;
    bool symbolic_ = false;
    std::vector<XPoly> F_;
    std::vector<std::vector<long>> lrows_;
};

PhiBasis phi_basis(const SemigroupData& sg, size_t count);

// Evaluates a basis monomial at a point given as x-values.
Rational phi_eval(const PhiBasis& basis, size_t idx, const std::vector<Rational>& x);

} // namespace telsig

#endif
