#pragma once

#include <string>
#include <vector>

#include "kstab/linalg.hpp"
#include "kstab/rational.hpp"

namespace kstab {

/// Which reading of the inner-product and relative-DF formulas to use.
/// TraceFree is the default: <v,w> = d0(v,w) - b0(v)b0(w)/a0, which makes
/// constant twists null directions, and the relative correction projects
/// along the background action (<beta,beta> denominator). PaperLiteral keeps
/// the literal forms, (d0 - b0^2)/a0 and the <alpha,alpha> denominator, for
/// auditing.
enum class Convention { TraceFree, PaperLiteral };

/// Leading Hilbert coefficients of the polarized scheme:
/// h(k) = a0 k^n + a1 k^(n-1) + lower order.
struct HilbertData {
    int n = 0;   // dimension
    Rat a0;      // > 0
    Rat a1;
};

/// Leading total-weight coefficients of one action:
/// w(k) = b0 k^(n+1) + b1 k^n + lower order.
struct WeightData {
    Rat b0;
    Rat b1;
};

struct ActionData {
    std::string label;
    WeightData weight;
};

/// Coefficient vector over a model's actions.
using LieAlgebraPoint = RatVec;

/// Numerical data of a finite family of commuting actions on one central
/// fibre: Hilbert coefficients, per-action weight coefficients, and the
/// pairing matrix d0 with d(k) = d0 k^(n+2) + lower order.
///
/// Weight data is stored pre-divided by the test-configuration exponent, so
/// r = 1 internally; exponent_r records provenance only.
class EquivariantModel {
  public:
    EquivariantModel(HilbertData hilbert, std::vector<ActionData> actions, RatMatrix d0, int exponent_r = 1);

    const HilbertData& hilbert() const { return hilbert_; }
    int exponent_r() const { return exponent_r_; }
    const std::vector<ActionData>& actions() const { return actions_; }
    const RatMatrix& d0() const { return d0_; }
    std::size_t size() const { return actions_.size(); }

    // linear / bilinear contractions over a coefficient vector
    Rat b0(const LieAlgebraPoint& v) const;
    Rat b1(const LieAlgebraPoint& v) const;
    Rat d0_pair(const LieAlgebraPoint& v, const LieAlgebraPoint& w) const;

    void check_point(const LieAlgebraPoint& v) const;

  private:
    HilbertData hilbert_;
    int exponent_r_;
    std::vector<ActionData> actions_;
    RatMatrix d0_;
};

/// DF = (b0 a1 - b1 a0)/a0, with (b0,b1) contracted along v.
Rat donaldson_futaki(const EquivariantModel& model, const LieAlgebraPoint& v);

Rat inner_product(const EquivariantModel& model, const LieAlgebraPoint& v, const LieAlgebraPoint& w,
                  Convention convention = Convention::TraceFree);

Rat norm_squared(const EquivariantModel& model, const LieAlgebraPoint& v,
                 Convention convention = Convention::TraceFree);

/// Certified rational approximation of sqrt(norm_squared); exact on perfect
/// squares. Throws NegativeNormSquare when the selected convention yields a
/// negative square.
Rat l2_norm(const EquivariantModel& model, const LieAlgebraPoint& v, const Rat& precision,
            Convention convention = Convention::TraceFree);

/// m*v + w. DF is additive and the norm expands quadratically, exactly.
LieAlgebraPoint compose(const EquivariantModel& model, const LieAlgebraPoint& v, const LieAlgebraPoint& w,
                        const Rat& m);

/// DF(alpha) corrected by the projection of alpha on the background action
/// beta. With <alpha,beta> = 0 the correction vanishes and the value is
/// DF(alpha) in both conventions.
Rat relative_df(const EquivariantModel& model, const LieAlgebraPoint& alpha, const LieAlgebraPoint& beta,
                Convention convention = Convention::TraceFree);

struct ExtremalScaling {
    LieAlgebraPoint scaled;
    Rat scale;
    bool semistable_branch = false;  // DF(v) = 0: returned unscaled
};

/// Rescale v by c = -DF(v)/|v|^2 so that DF(c v) = -|c v|^2 exactly.
/// Requires |v|^2 > 0 and DF(v) <= 0 (PositiveDF otherwise).
ExtremalScaling extremal_scaling(const EquivariantModel& model, const LieAlgebraPoint& v);

struct NormalizedDF {
    Rat value_squared_signed;  // sign(DF) * DF^2 / |v|^2; ordering agrees with DF/|v|
    Rat approx;                // certified approximation of DF/|v|
};

/// Root-free representation of DF/|v|, scale invariant in v.
NormalizedDF normalized_df(const EquivariantModel& model, const LieAlgebraPoint& v,
                           const Rat& precision);

/// Default approximation precision used by reports: 10^-9.
Rat default_precision();

}  // namespace kstab
