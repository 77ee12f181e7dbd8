#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kstab/linalg.hpp"
#include "kstab/pl_function.hpp"
#include "kstab/polytope.hpp"
#include "kstab/rational.hpp"

namespace kstab {

/// Finite-dimensional search domain: PL functions on a fixed triangulation
/// of the polytope, with the DF objective as a linear form on node values,
/// the trace-free norm as a quadratic form, and convexity as second
/// difference constraints. Nodes are stored in canonical lex order; `anchors`
/// are the first n+1 affinely independent nodes, and the searched complement
/// of the affine functions is the coordinate subspace vanishing on them.
struct SearchSpace {
    LatticePolytope polytope;
    TriangulationData tri;
    RatVec objective;                       // L, DF of a node-value vector
    RatMatrix norm_form;                    // Q, trace-free Gram of the nodal basis
    RatMatrix convexity;                    // A, feasible iff A x >= 0 (primitive integer rows)
    std::vector<RatVec> affine_kernel;      // node vectors of 1, x_1, ..., x_n
    std::vector<std::size_t> anchors;       // n+1 node indices
    std::vector<std::size_t> free_nodes;    // complement; the searched coordinates
};

/// Assemble L, Q, A from exact integration of the nodal (hat) basis.
/// Throws NoNontrivialDirections when every PL function on the triangulation
/// is affine, TriangulationMismatch when the complex does not tile the
/// polytope, and DegenerateQ when Q fails to be definite on the complement.
SearchSpace build_search_space(const LatticePolytope& p, TriangulationData tri);

enum class SearchStatus { Destabilizer, Stable, BoundaryDegenerate };

struct SearchResult {
    RatVec minimizer;                 // node values, scaled so the first nonzero entry is +-1
    Rat value_squared_signed;         // sign(DF) * DF^2 / |.|^2 at the minimizer
    Rat value_approx;                 // certified approximation of DF/|.|
    SearchStatus status = SearchStatus::Stable;
    bool certified = true;            // false when the iteration budget ran out
    std::vector<std::size_t> active_set;
    RatVec stationarity_residual;     // exact, in working-subspace coordinates
    std::string stage;                // "affine", "cone", "trivial"
    long iterations = 0;
};

/// Minimize DF over the normalized search directions: exact active-set sweep
/// over working sets of the convexity cone in the anchored complement, plus a
/// closed-form pass over the affine directions (product configurations) when
/// their DF form is nonzero. All comparisons are root-free; deterministic for
/// a fixed seed (the seed only permutes the enumeration order).
SearchResult minimize_normalized_df(const SearchSpace& space, long max_iterations = 100000,
                                    std::uint64_t seed = 0);

/// Independent oracle: enumerate primitive integer directions on a grid of
/// the given resolution (in the same anchored coordinates and over the same
/// affine stage), keep the feasible minimum. Never better than the exact
/// sweep; the gap shrinks as the resolution grows. The signed-square value
/// representation is strictly monotone in DF/|.|, so results compare as
/// plain rationals, no roots involved.
SearchResult brute_force_search(const SearchSpace& space, int resolution);

}  // namespace kstab
