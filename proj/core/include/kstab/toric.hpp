#pragma once

#include <string>
#include <vector>

#include "kstab/invariants.hpp"
#include "kstab/pl_function.hpp"
#include "kstab/polynomial.hpp"
#include "kstab/polytope.hpp"

namespace kstab {

/// Exact integration of piecewise-linear data over a polytope: the base fan
/// is refined until every function is affine on every cell, then per-simplex
/// barycentric moment formulas apply. Construction throws CreaseMismatch if
/// a cell still straddles a crease (affinity is verified at each centroid).
class ToricIntegrator {
  public:
    ToricIntegrator(const LatticePolytope& p, const std::vector<PLConvexFunction>& functions);

    const LatticePolytope& polytope() const { return *p_; }
    std::size_t function_count() const { return values_.size(); }
    const std::vector<Simplex>& cells() const { return cells_; }

    Rat integral(std::size_t i) const;                               // int_P f_i
    Rat boundary_integral(std::size_t i) const;                      // int_dP f_i dsigma
    Rat product_integral(std::size_t i, std::size_t j) const;        // int_P f_i f_j

  private:
    const LatticePolytope* p_;
    std::vector<Simplex> cells_;
    std::vector<std::vector<RatVec>> values_;  // [function][cell][vertex]
    // boundary faces: cell-local (n-1)-simplices lying in dP with their sigma
    struct BoundaryFace {
        std::size_t cell;
        std::vector<std::size_t> local;  // vertex indices within the cell
        Rat sigma;
    };
    std::vector<BoundaryFace> boundary_;
};

Rat integrate_pl(const LatticePolytope& p, const PLConvexFunction& f);
Rat integrate_boundary(const LatticePolytope& p, const PLConvexFunction& f);
Rat integrate_product(const LatticePolytope& p, const PLConvexFunction& f, const PLConvexFunction& g);

/// Weight rule of the toric realization: the k-th action generator acts on
/// the section at lattice point u of k*P with eigenvalue k*(R - f(u/k)).
/// All eigenvalues are nonnegative once R >= max_P f.
struct WeightAssignment {
    Rat shift;

    Rat eigenvalue(const PLConvexFunction& f, const std::vector<BigInt>& u, long k) const;
};

/// Assemble the equivariant model of a polytope with one action per convex
/// function: a0 = vol(P), a1 = sigma(dP)/2, b0 = R*a0 - int f,
/// b1 = R*a1 - (1/2) int_dP f, d0_ij = int (R_i - f_i)(R_j - f_j).
/// Shifts default to max_P f when not supplied. Throws ShiftTooSmall.
EquivariantModel build_model(const LatticePolytope& p, const std::vector<PLConvexFunction>& functions,
                             const std::vector<Rat>& shifts = {}, const std::vector<std::string>& labels = {});

struct OracleFit {
    Rat a0, a1;      // from lattice counts
    Rat b0, b1;      // from exact weight sums
    Rat d0_diag;     // from exact weight-square sums
    long stride = 1; // dilations used are stride * k_sample
    std::vector<long> dilations;
    RationalPolynomial hilbert_fit, weight_fit, pairing_fit;
};

/// Independent discrete route to the model coefficients: exact lattice-point
/// sums at dilations stride*k for k in k_samples, polynomial interpolation,
/// leading coefficients. The stride is the smallest dilation making the
/// crease-refined triangulation integral, so the restricted counts are honest
/// polynomials; spare samples cross-validate the fit (NonPolynomialData).
OracleFit discrete_weight_oracle(const LatticePolytope& p, const PLConvexFunction& f, const Rat& shift,
                                 const std::vector<long>& k_samples);

/// Interpolate through the first degree+1 samples and verify the remaining
/// ones reproduce exactly; throws NonPolynomialData otherwise.
RationalPolynomial fit_polynomial_with_check(const std::vector<std::pair<Rat, Rat>>& samples, int degree);

}  // namespace kstab
