#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kstab/polytope.hpp"
#include "kstab/rational.hpp"

namespace kstab {

/// One affine piece x -> grad . x + constant.
struct AffinePiece {
    RatVec grad;
    Rat constant;

    Rat eval(const RatVec& x) const;
};

/// Simplicial complex given by rational nodes and vertex-index simplices.
struct TriangulationData {
    std::vector<RatVec> nodes;
    std::vector<std::vector<int>> simplices;
};

/// Rational piecewise-linear convex function on a polytope, in one of two
/// forms: max of finitely many affine pieces, or node values on a fixed
/// triangulation (convexity checked through exact second differences).
class PLConvexFunction {
  public:
    static PLConvexFunction max_affine(std::vector<AffinePiece> pieces);

    /// Node-value form; throws ConvexityViolation when an interior
    /// codimension-1 face has a negative second difference.
    static PLConvexFunction node_values(TriangulationData triangulation, RatVec values);

    bool is_max_affine() const { return pieces_.has_value(); }
    const std::vector<AffinePiece>& pieces() const;
    const TriangulationData& triangulation() const;
    const RatVec& values() const;

    int dimension() const { return dim_; }

    Rat eval(const RatVec& x) const;

    /// Exact maximum over the polytope (attained at polytope vertices for the
    /// max-affine form, at triangulation nodes for the node-value form).
    Rat max_over(const LatticePolytope& p) const;

    /// Hyperplanes across which the function may bend; any triangulation
    /// refined by these has the function affine on every cell.
    std::vector<Hyperplane> crease_hyperplanes() const;

  private:
    int dim_ = 0;
    std::optional<std::vector<AffinePiece>> pieces_;
    std::optional<TriangulationData> tri_;
    std::optional<RatVec> values_;
};

/// Second-difference functional across an interior face: coefficients c with
/// sum_i c_i f(node_i) >= 0 expressing convexity across the face, scaled to a
/// primitive integer vector.
struct SecondDifference {
    std::vector<int> node_indices;
    std::vector<BigInt> coefficients;
};

/// All distinct interior-face second differences of a complex.
std::vector<SecondDifference> second_differences(const TriangulationData& tri);

/// Exact volume of the complex (sum over simplices).
Rat complex_volume(const TriangulationData& tri);

}  // namespace kstab
