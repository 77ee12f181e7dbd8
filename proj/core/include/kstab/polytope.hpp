#pragma once

#include <vector>

#include "kstab/rational.hpp"

namespace kstab {

/// Supporting hyperplane {x : normal . x = offset} with primitive integer
/// inward normal, so the polytope satisfies normal . x >= offset.
struct Facet {
    std::vector<BigInt> normal;
    Rat offset;
};

/// Oriented rational hyperplane normal . x = offset (normal primitive integer).
struct Hyperplane {
    std::vector<BigInt> normal;
    Rat offset;

    Rat eval(const RatVec& x) const;
    bool operator==(const Hyperplane& other) const { return normal == other.normal && offset == other.offset; }
};

/// Simplex given by its n+1 vertices (rational coordinates).
struct Simplex {
    std::vector<RatVec> v;

    Rat volume() const;           // Lebesgue measure, exact
    RatVec centroid() const;
};

/// Lattice-normalized measure of an (n-1)-simplex lying in the hyperplane
/// with primitive integer normal g: the facet lattice has covolume 1.
Rat facet_lattice_measure(const std::vector<RatVec>& simplex_vertices, const std::vector<BigInt>& normal);

/// Reduce an integer vector by the gcd of its entries (zero vector unchanged).
std::vector<BigInt> make_primitive(std::vector<BigInt> v);

/// Clear denominators of a rational normal/offset pair into a primitive
/// integer normal with matching offset.
Hyperplane canonical_hyperplane(const RatVec& normal, const Rat& offset);

/// Full-dimensional lattice polytope in dimension 1..3, built as a convex
/// hull with exact rational arithmetic. Holds the facet description and a
/// base triangulation (vertex fan).
class LatticePolytope {
  public:
    static LatticePolytope from_vertices(std::vector<RatVec> points);

    int dimension() const { return dim_; }
    const std::vector<RatVec>& vertices() const { return vertices_; }   // canonical lex order
    const std::vector<Facet>& facets() const { return facets_; }
    const std::vector<Simplex>& fan_triangulation() const { return fan_; }

    Rat volume() const;
    Rat boundary_volume() const;  // sigma-measure of the boundary

    bool contains(const RatVec& x) const;

    /// Exactly the points of k*P intersected with Z^n, in lexicographic order.
    std::vector<std::vector<BigInt>> lattice_points(long k) const;

    /// Maximum of a convex function known through its values at vertices is
    /// not provided here; use the PL layer. This evaluates facet membership.
    bool on_boundary(const RatVec& x) const;

  private:
    int dim_ = 0;
    std::vector<RatVec> vertices_;
    std::vector<Facet> facets_;
    std::vector<Simplex> fan_;
};

/// Split a simplex by a hyperplane; returns pieces covering the simplex,
/// none of which strictly straddles the plane. Zero-volume pieces are dropped.
std::vector<Simplex> split_simplex(const Simplex& s, const Hyperplane& h);

/// Refine triangulation cells until no cell strictly straddles any of the
/// given hyperplanes. Exact; preserves total volume.
std::vector<Simplex> refine_by_hyperplanes(std::vector<Simplex> cells, const std::vector<Hyperplane>& planes);

/// Triangulate a small convex point set (vertices of a clipped simplex).
std::vector<Simplex> triangulate_convex_points(const std::vector<RatVec>& points, int dim);

}  // namespace kstab
