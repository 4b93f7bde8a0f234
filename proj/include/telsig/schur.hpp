#ifndef TELSIG_SCHUR_HPP
#define TELSIG_SCHUR_HPP

#include <vector>

#include "telsig/poly.hpp"
#include "telsig/semigroup.hpp"

namespace telsig {

// Variable table t_1..t_n with weight(t_k) = k.
VarTablePtr t_vars(size_t n);
// Variable table z_1..z_n, all weight 1.
VarTablePtr z_vars(size_t n);

struct SchurT {
    Partition lambda;
    VarTablePtr tvars;  // t_1..t_{|lambda|}
    GradedPoly poly;    // weight-homogeneous of degree |lambda|
};

// Schur function in the t variables: determinant of the one-row generating
// polynomials p_{lambda_i - i + j}, where exp(sum t_k zeta^k) = sum p_n zeta^n.
SchurT schur_t(const Partition& lambda);

// Schur polynomial in z_1..z_n by Jacobi-Trudi over complete homogeneous
// polynomials (division-free).
GradedPoly schur_z(const Partition& mu, size_t n, const VarTablePtr& zvars);

// Complete homogeneous polynomial of degree d in the given variables.
GradedPoly complete_homogeneous(long d, const VarTablePtr& zvars);

// Combinatorial constants attached to a partition via its ladder
// (w_l,...,w_1) = (lambda_1+l-1, ..., lambda_l).
struct LambdaConstants {
    std::vector<long> N;        // N[k] = lambda_{k+1}+...+lambda_l, k = 0..l
    long Nprime1 = 0;           // lambda_2+...+lambda_l - l + 1
    std::vector<Rational> cprime;  // cprime[k] for k = 0..l, cprime[l] = 1
    Rational ctilde;

    // Constant of the n-point product formula; g is the partition length for
    // gap partitions.
    Rational btilde(long n) const;
    Rational bprime(long n) const;

    long length = 0;
};

LambdaConstants lambda_constants(const Partition& lambda);

// Miwa substitution t_k -> (sum_i z_i^k)/k applied to a t-polynomial.
GradedPoly miwa_substitute(const SchurT& s, size_t n, const VarTablePtr& zvars);

} // namespace telsig

#endif
