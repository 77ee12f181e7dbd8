#include <doctest.h>

#include "kstab/errors.hpp"
#include "kstab/toric.hpp"
#include "support/fixtures.hpp"

using namespace kstab;
using namespace kstab::testing;

TEST_CASE("integral of 1 is the volume on every fixture") {
    for (const LatticePolytope& p : {segment(), unit_square(), trapezoid(), simplex2(), unit_cube(), simplex3()}) {
        PLConvexFunction one = constant_fn(p.dimension(), Rat(1));
        CHECK(integrate_pl(p, one) == p.volume());
        CHECK(integrate_boundary(p, one) == p.boundary_volume());
    }
}

TEST_CASE("[0,1] ramp: interior integral 1/4, boundary integral 1") {
    LatticePolytope p = segment();
    CHECK(integrate_pl(p, ramp()) == Rat(1, 4));
    CHECK(integrate_boundary(p, ramp()) == 1);
}

TEST_CASE("barycentric product moments: int xy over the 2-simplex, int x^2 over [0,1]") {
    CHECK(integrate_product(simplex2(), linear({Rat(1), Rat(0)}), linear({Rat(0), Rat(1)})) == Rat(1, 24));
    CHECK(integrate_product(segment(), linear({Rat(1)}), linear({Rat(1)})) == Rat(1, 3));
}

TEST_CASE("crease integration agrees with closed forms on the square") {
    // f = max(0, x + y - 1) over the unit square: pyramid over half the square
    PLConvexFunction f = PLConvexFunction::max_affine(
        {AffinePiece{{Rat(1), Rat(1)}, Rat(-1)}, AffinePiece{{Rat(0), Rat(0)}, Rat(0)}});
    CHECK(integrate_pl(unit_square(), f) == Rat(1, 6));
    // boundary: nonzero on the two far edges, each contributing 1/2
    CHECK(integrate_boundary(unit_square(), f) == 1);
    // int f^2 = 2 * int over triangle of (x+y-1)^2 restricted; closed form 1/12
    CHECK(integrate_product(unit_square(), f, f) == Rat(1, 12));
}

TEST_CASE("triangulation independence: two different vertex orders, same integrals") {
    // same square, vertices permuted so the fan apex differs
    LatticePolytope p1 = unit_square();
    LatticePolytope p2 = LatticePolytope::from_vertices(
        {{Rat(1), Rat(1)}, {Rat(0), Rat(1)}, {Rat(1), Rat(0)}, {Rat(0), Rat(0)}});
    PLConvexFunction f = PLConvexFunction::max_affine(
        {AffinePiece{{Rat(2), Rat(-1)}, Rat(0)}, AffinePiece{{Rat(0), Rat(1)}, Rat(-1, 2)}});
    CHECK(integrate_pl(p1, f) == integrate_pl(p2, f));
    CHECK(integrate_boundary(p1, f) == integrate_boundary(p2, f));
    CHECK(integrate_product(p1, f, f) == integrate_product(p2, f, f));
}

TEST_CASE("node-value form integrates like its max-affine counterpart") {
    // crease at 1/2 on [0,1] in both representations
    TriangulationData tri;
    tri.nodes = {{Rat(0)}, {Rat(1, 2)}, {Rat(1)}};
    tri.simplices = {{0, 1}, {1, 2}};
    PLConvexFunction nv = PLConvexFunction::node_values(tri, {Rat(0), Rat(0), Rat(1, 2)});
    LatticePolytope p = segment();
    CHECK(integrate_pl(p, nv) == integrate_pl(p, crease_half()));
    CHECK(integrate_boundary(p, nv) == integrate_boundary(p, crease_half()));
    CHECK(integrate_product(p, nv, nv) == integrate_product(p, crease_half(), crease_half()));
}

TEST_CASE("convexity check rejects concave node values") {
    TriangulationData tri;
    tri.nodes = {{Rat(0)}, {Rat(1, 2)}, {Rat(1)}};
    tri.simplices = {{0, 1}, {1, 2}};
    CHECK_THROWS_AS(PLConvexFunction::node_values(tri, {Rat(0), Rat(1), Rat(0)}), ConvexityViolation);
    CHECK_NOTHROW(PLConvexFunction::node_values(tri, {Rat(0), Rat(0), Rat(1)}));
}

TEST_CASE("convex node-value functions equal the max of their induced pieces at nodes") {
    TinyRng rng(131);
    TriangulationData tri;
    tri.nodes = {{Rat(0)}, {Rat(1, 3)}, {Rat(2, 3)}, {Rat(1)}};
    tri.simplices = {{0, 1}, {1, 2}, {2, 3}};
    for (int trial = 0; trial < 30; ++trial) {
        // generate convex values: prescribe nonnegative second differences
        Rat f0 = rng.rational(), slope = rng.rational();
        RatVec values{f0, f0 + slope / 3};
        Rat s = slope;
        for (int seg = 1; seg < 3; ++seg) {
            s += rat_abs(rng.rational());  // slopes nondecreasing
            values.push_back(values.back() + s / 3);
        }
        PLConvexFunction f = PLConvexFunction::node_values(tri, values);
        // induced affine pieces: one per simplex; their max at every node is f
        for (std::size_t node = 0; node < tri.nodes.size(); ++node) {
            Rat best;
            bool first = true;
            for (const auto& simplex : tri.simplices) {
                const Rat x0 = tri.nodes[simplex[0]][0], x1 = tri.nodes[simplex[1]][0];
                const Rat v0 = values[simplex[0]], v1 = values[simplex[1]];
                const Rat grad = (v1 - v0) / (x1 - x0);
                const Rat val = v0 + grad * (tri.nodes[node][0] - x0);
                if (first || val > best) best = val;
                first = false;
            }
            CHECK(best == values[node]);
        }
        (void)f;
    }
}

TEST_CASE("build_model anchors: segment ramp and simplex affine") {
    EquivariantModel ramp_model = build_model(segment(), {ramp()}, {Rat(1)});
    CHECK(ramp_model.hilbert().a0 == 1);
    CHECK(ramp_model.hilbert().a1 == 1);
    CHECK(ramp_model.actions()[0].weight.b0 == Rat(3, 4));
    CHECK(ramp_model.actions()[0].weight.b1 == Rat(1, 2));
    CHECK(ramp_model.d0().at(0, 0) == Rat(2, 3));

    TinyRng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        RatVec grad{rng.rational(), rng.rational()};
        Rat c = rng.rational();
        PLConvexFunction f = linear(grad, c);
        EquivariantModel m = build_model(simplex2(), {f});
        LieAlgebraPoint e1{Rat(1)};
        CHECK(donaldson_futaki(m, e1) == 0);  // vanishing Futaki character of the plane
    }
}

TEST_CASE("shift invariance: trace-free pairings do not depend on the shifts") {
    PLConvexFunction f = linear({Rat(1)});
    EquivariantModel m1 = build_model(segment(), {f}, {Rat(1)});
    EquivariantModel m5 = build_model(segment(), {f}, {Rat(5)});
    LieAlgebraPoint e1{Rat(1)};
    CHECK(inner_product(m1, e1, e1) == Rat(1, 12));
    CHECK(inner_product(m5, e1, e1) == Rat(1, 12));
    CHECK(donaldson_futaki(m1, e1) == donaldson_futaki(m5, e1));
}

TEST_CASE("build_model validates shifts") {
    CHECK_THROWS_AS(build_model(segment(), {ramp()}, {Rat(1, 2)}), ShiftTooSmall);
    CHECK_NOTHROW(build_model(segment(), {ramp()}, {Rat(1)}));
    CHECK_NOTHROW(build_model(segment(), {ramp()}));  // defaults to max f
}

TEST_CASE("weight rule: every nonaffine convex function destabilizes nothing on [0,1]") {
    // the line is K-stable: DF > 0 for every convex PL function with a genuine crease
    TinyRng rng(37);
    for (int trial = 0; trial < 25; ++trial) {
        const Rat knot(rng.integer(1, 9), 10);
        const Rat slope_left = rng.rational(-4, 4, 3);
        const Rat bend = rat_abs(rng.nonzero_rational(1, 4, 2));
        // pieces meeting at x = knot with a strict upward bend
        const Rat c_left = rng.rational();
        AffinePiece left{{slope_left}, c_left};
        AffinePiece right{{slope_left + bend}, c_left - bend * knot};
        EquivariantModel m = build_model(segment(), {PLConvexFunction::max_affine({left, right})});
        CHECK(donaldson_futaki(m, LieAlgebraPoint{Rat(1)}) > 0);
    }
}

TEST_CASE("weight assignment eigenvalues are nonnegative under a valid shift") {
    WeightAssignment wa{Rat(1)};
    LatticePolytope p = segment();
    for (long k = 1; k <= 6; ++k)
        for (const auto& u : p.lattice_points(k)) CHECK(wa.eigenvalue(ramp(), u, k) >= 0);
}

TEST_CASE("discrete oracle: Ehrhart fits for square and cube") {
    OracleFit sq = discrete_weight_oracle(unit_square(), constant_fn(2, Rat(0)), Rat(0), {1, 2, 3, 4, 5, 6});
    CHECK(sq.a0 == 1);
    CHECK(sq.a1 == 2);
    OracleFit cube = discrete_weight_oracle(unit_cube(), constant_fn(3, Rat(0)), Rat(0), {1, 2, 3, 4, 5, 6, 7});
    CHECK(cube.a0 == 1);
    CHECK(cube.a1 == 3);
}

TEST_CASE("discrete oracle matches build_model on the ramp, stride 2") {
    OracleFit fit = discrete_weight_oracle(segment(), ramp(), Rat(1), {1, 2, 3, 4, 5});
    CHECK(fit.stride == 2);
    CHECK(fit.b0 == Rat(3, 4));
    CHECK(fit.b1 == Rat(1, 2));
    CHECK(fit.d0_diag == Rat(2, 3));
    CHECK(fit.a0 == 1);
    CHECK(fit.a1 == 1);
}

TEST_CASE("fit consistency guard rejects quasi-polynomial samples") {
    // w(k) = 3/4 k^2 + 1/2 k - [k odd]/4 sampled across parities is not a
    // degree-2 polynomial; the spare-sample check must catch it
    std::vector<std::pair<Rat, Rat>> samples = {
        {Rat(1), Rat(1)}, {Rat(2), Rat(4)}, {Rat(3), Rat(8)}, {Rat(4), Rat(14)}, {Rat(5), Rat(21)}};
    CHECK_THROWS_AS(fit_polynomial_with_check(samples, 2), NonPolynomialData);
    // restricted to one parity it is a polynomial
    std::vector<std::pair<Rat, Rat>> evens = {{Rat(2), Rat(4)}, {Rat(4), Rat(14)}, {Rat(6), Rat(30)},
                                              {Rat(8), Rat(52)}, {Rat(10), Rat(80)}};
    RationalPolynomial p = fit_polynomial_with_check(evens, 2);
    CHECK(p.coefficient(2) == Rat(3, 4));
    CHECK(p.coefficient(1) == Rat(1, 2));
}

TEST_CASE("oracle preconditions") {
    CHECK_THROWS_AS(discrete_weight_oracle(segment(), ramp(), Rat(0), {1, 2, 3, 4}), ShiftTooSmall);
    CHECK_THROWS_AS(discrete_weight_oracle(segment(), ramp(), Rat(1), {1, 2, 3}), Error);  // too few samples
}

TEST_CASE("functions defined on a smaller complex than the polytope are rejected") {
    TriangulationData tri;
    tri.nodes = {{Rat(0)}, {Rat(1, 2)}};
    tri.simplices = {{0, 1}};
    PLConvexFunction partial = PLConvexFunction::node_values(tri, {Rat(0), Rat(1)});
    CHECK_THROWS_AS(integrate_pl(segment(), partial), TriangulationMismatch);
}

TEST_CASE("trace-free norm squares of toric models are nonnegative") {
    // Cauchy-Schwarz on exact moments: every direction in a toric model has
    // nonnegative trace-free self-pairing
    TinyRng rng(211);
    for (const LatticePolytope& p : {segment(), unit_square(), trapezoid(), simplex2()}) {
        std::vector<PLConvexFunction> fns;
        const int dim = p.dimension();
        RatVec grad(dim);
        for (auto& g : grad) g = rng.rational(-3, 3, 2);
        fns.push_back(linear(grad, rng.rational()));
        fns.push_back(constant_fn(dim, rng.rational()));
        if (dim == 1)
            fns.push_back(crease_half());
        else
            fns.push_back(PLConvexFunction::max_affine(
                {AffinePiece{RatVec(dim, Rat(1)), Rat(-1)}, AffinePiece{RatVec(dim, Rat(0)), Rat(0)}}));
        EquivariantModel m = build_model(p, fns);
        for (int trial = 0; trial < 20; ++trial) {
            LieAlgebraPoint v = random_point(rng, fns.size());
            CHECK(norm_squared(m, v) >= 0);
        }
    }
}

TEST_CASE("Ehrhart consistency across the fixture corpus") {
    for (const LatticePolytope& p : {segment(), unit_square(), unit_cube(), simplex2(), simplex3(), trapezoid()}) {
        const int n = p.dimension();
        std::vector<std::pair<Rat, Rat>> samples;
        for (long k = 1; k <= n + 2; ++k)
            samples.emplace_back(Rat(k), Rat(static_cast<long>(p.lattice_points(k).size())));
        RationalPolynomial fit = interpolate(samples);
        CHECK(fit.coefficient(n) == p.volume());
        CHECK(fit.coefficient(n - 1) == p.boundary_volume() / 2);
    }
}
