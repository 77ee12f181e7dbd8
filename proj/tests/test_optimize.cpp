#include <doctest.h>

#include "kstab/errors.hpp"
#include "kstab/optimize.hpp"
#include "support/fixtures.hpp"

using namespace kstab;
using namespace kstab::testing;

namespace {

SearchSpace segment_space() {
    TriangulationData tri;
    tri.nodes = {{Rat(0)}, {Rat(1, 2)}, {Rat(1)}};
    tri.simplices = {{0, 1}, {1, 2}};
    return build_search_space(segment(), tri);
}

SearchSpace segment_space_4() {
    TriangulationData tri;
    tri.nodes = {{Rat(0)}, {Rat(1, 3)}, {Rat(2, 3)}, {Rat(1)}};
    tri.simplices = {{0, 1}, {1, 2}, {2, 3}};
    return build_search_space(segment(), tri);
}

SearchSpace square_space() {
    TriangulationData tri;
    tri.nodes = {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}, {Rat(1, 2), Rat(1, 2)}};
    tri.simplices = {{0, 1, 4}, {1, 3, 4}, {3, 2, 4}, {2, 0, 4}};
    return build_search_space(unit_square(), tri);
}

SearchSpace trapezoid_space() {
    TriangulationData tri;
    tri.nodes = {{Rat(0), Rat(0)}, {Rat(2), Rat(0)}, {Rat(1), Rat(1)}, {Rat(0), Rat(1)}};
    tri.simplices = {{0, 1, 2}, {0, 2, 3}};
    return build_search_space(trapezoid(), tri);
}

Rat df_of(const SearchSpace& space, const RatVec& x) { return dot(space.objective, x); }

}  // namespace

TEST_CASE("[0,1] space: one nontrivial direction, the single second difference") {
    SearchSpace s = segment_space();
    CHECK(s.free_nodes.size() == 1);
    CHECK(s.convexity.rows() == 1);
    // f(0) - 2 f(1/2) + f(1) >= 0 up to positive scaling
    CHECK(s.convexity.at(0, 0) == 1);
    CHECK(s.convexity.at(0, 1) == -2);
    CHECK(s.convexity.at(0, 2) == 1);
    CHECK(s.anchors == std::vector<std::size_t>{0, 1});
}

TEST_CASE("square with center node: exactly two distinct diagonal constraints") {
    SearchSpace s = square_space();
    CHECK(s.convexity.rows() == 2);
    CHECK(s.free_nodes.size() == 2);
}

TEST_CASE("triangulation without interior degrees of freedom is rejected") {
    TriangulationData tri;
    tri.nodes = {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
    tri.simplices = {{0, 1, 2}};
    CHECK_THROWS_AS(build_search_space(simplex2(), tri), NoNontrivialDirections);
}

TEST_CASE("mismatched triangulations are rejected") {
    TriangulationData tri;
    tri.nodes = {{Rat(0)}, {Rat(1, 2)}};
    tri.simplices = {{0, 1}};
    CHECK_THROWS_AS(build_search_space(segment(), tri), TriangulationMismatch);
}

TEST_CASE("[0,1] minimization: unique crease ray, value square 3/5, Stable") {
    SearchSpace s = segment_space();
    SearchResult r = minimize_normalized_df(s);
    CHECK(r.status == SearchStatus::Stable);
    CHECK(r.value_squared_signed == Rat(3, 5));
    CHECK(r.certified);
    CHECK(r.minimizer == RatVec{Rat(0), Rat(0), Rat(1)});
    CHECK(r.active_set.empty());
    for (const auto& c : r.stationarity_residual) CHECK(c == 0);

    SearchResult bf = brute_force_search(s, 4);
    CHECK(bf.value_squared_signed == r.value_squared_signed);
    CHECK(bf.minimizer == r.minimizer);
}

TEST_CASE("zero objective yields value 0 and Stable") {
    SearchSpace s = segment_space();
    for (auto& c : s.objective) c = 0;
    SearchResult r = minimize_normalized_df(s);
    CHECK(r.value_squared_signed == 0);
    CHECK(r.status == SearchStatus::Stable);
}

TEST_CASE("trapezoid family: affine destabilizer with exact value -4/39") {
    SearchSpace s = trapezoid_space();
    SearchResult r = minimize_normalized_df(s);
    CHECK(r.status == SearchStatus::Destabilizer);
    CHECK(r.value_squared_signed == Rat(-4, 39));
    CHECK(r.stage == "affine");
    // minimizer is the y coordinate direction: values (0, 1, 1, 0) on lex nodes
    CHECK(r.minimizer == RatVec{Rat(0), Rat(1), Rat(1), Rat(0)});
    CHECK(df_of(s, r.minimizer) < 0);
    // feasibility: affine functions satisfy every convexity row with equality
    RatVec image = s.convexity * r.minimizer;
    for (const auto& c : image) CHECK(c == 0);
}

TEST_CASE("optimizer value is invariant under positive rescaling of the minimizer") {
    SearchSpace s = trapezoid_space();
    SearchResult r = minimize_normalized_df(s);
    const RatVec doubled = scaled(r.minimizer, Rat(7, 2));
    const Rat df = df_of(s, doubled);
    Rat nsq = 0;
    for (std::size_t i = 0; i < doubled.size(); ++i)
        for (std::size_t j = 0; j < doubled.size(); ++j) nsq += doubled[i] * s.norm_form.at(i, j) * doubled[j];
    CHECK(Rat(sign_of(df)) * df * df / nsq == r.value_squared_signed);
}

TEST_CASE("destabilizer soundness: negative DF and exact feasibility") {
    for (const SearchSpace& s : {trapezoid_space(), segment_space(), square_space(), segment_space_4()}) {
        SearchResult r = minimize_normalized_df(s);
        if (r.status == SearchStatus::Destabilizer) {
            CHECK(df_of(s, r.minimizer) < 0);
            RatVec image = s.convexity * r.minimizer;
            for (const auto& c : image) CHECK(c >= 0);
        }
    }
}

TEST_CASE("constants leave DF and the norm unchanged; affine shifts preserve DF on Futaki-zero spaces") {
    SearchSpace seg = segment_space();
    SearchResult r = minimize_normalized_df(seg);
    RatVec shifted = r.minimizer;
    for (auto& c : shifted) c += Rat(5, 3);
    CHECK(df_of(seg, shifted) == df_of(seg, r.minimizer));
    Rat nsq_shifted = 0, nsq = 0;
    for (std::size_t i = 0; i < shifted.size(); ++i)
        for (std::size_t j = 0; j < shifted.size(); ++j) {
            nsq_shifted += shifted[i] * seg.norm_form.at(i, j) * shifted[j];
            nsq += r.minimizer[i] * seg.norm_form.at(i, j) * r.minimizer[j];
        }
    CHECK(nsq_shifted == nsq);
    // the segment has zero Futaki character: adding any affine function
    // leaves DF untouched (the norm genuinely changes, DF does not)
    RatVec affine_shift = axpy(Rat(2), seg.affine_kernel[1], r.minimizer);
    CHECK(df_of(seg, affine_shift) == df_of(seg, r.minimizer));
}

TEST_CASE("oracle dominance and shrinking gap on the corpus") {
    for (const SearchSpace& s : {segment_space(), segment_space_4(), square_space(), trapezoid_space()}) {
        SearchResult exact = minimize_normalized_df(s);
        Rat previous_gap;
        bool first = true;
        for (int res : {4, 8, 16}) {
            SearchResult bf = brute_force_search(s, res);
            CHECK(exact.value_squared_signed <= bf.value_squared_signed);
            const Rat gap = bf.value_squared_signed - exact.value_squared_signed;
            if (!first) CHECK(gap <= previous_gap);
            previous_gap = gap;
            first = false;
        }
    }
}

TEST_CASE("random 2-dimensional spaces: dominance holds and the gap shrinks") {
    TinyRng rng(207);
    int built = 0;
    while (built < 12) {
        // random convex quadrilateral around the unit square frame
        std::vector<RatVec> pts = {{Rat(0), Rat(0)},
                                   {Rat(rng.integer(1, 3)), Rat(0)},
                                   {Rat(0), Rat(rng.integer(1, 3))},
                                   {Rat(rng.integer(1, 3)), Rat(rng.integer(1, 3))}};
        LatticePolytope p;
        try {
            p = LatticePolytope::from_vertices(pts);
        } catch (const DegeneratePolytope&) {
            continue;
        }
        if (p.vertices().size() != 4) continue;
        // center node at the average keeps the fan triangulation valid
        RatVec center(2, Rat(0));
        for (const auto& v : p.vertices()) center = add(center, v);
        center = scaled(center, Rat(1, 4));
        TriangulationData tri;
        tri.nodes = p.vertices();
        tri.nodes.push_back(center);
        // fan around the center using the facet edges
        for (const auto& f : p.facets()) {
            std::vector<int> edge;
            for (std::size_t i = 0; i < tri.nodes.size() - 1; ++i) {
                Rat val = 0;
                for (std::size_t c = 0; c < 2; ++c) val += Rat(f.normal[c], 1) * tri.nodes[i][c];
                if (val == f.offset) edge.push_back(static_cast<int>(i));
            }
            if (edge.size() == 2) tri.simplices.push_back({edge[0], edge[1], static_cast<int>(tri.nodes.size() - 1)});
        }
        SearchSpace s;
        try {
            s = build_search_space(p, tri);
        } catch (const Error&) {
            continue;
        }
        if (s.free_nodes.size() > 2) continue;
        SearchResult exact = minimize_normalized_df(s);
        Rat prev;
        bool first = true;
        for (int res : {4, 8}) {
            SearchResult bf = brute_force_search(s, res);
            CHECK(exact.value_squared_signed <= bf.value_squared_signed);
            const Rat gap = bf.value_squared_signed - exact.value_squared_signed;
            if (!first) CHECK(gap <= prev);
            prev = gap;
            first = false;
        }
        ++built;
    }
}

TEST_CASE("iteration budget produces an uncertified best-so-far result") {
    SearchSpace s = square_space();
    SearchResult full = minimize_normalized_df(s);
    CHECK(full.certified);
    // budget of 1: only the free working set is visited, nothing feasible yet
    SearchResult starved = minimize_normalized_df(s, 1);
    CHECK_FALSE(starved.certified);
    // budget of 2: one boundary ray found, still uncertified
    SearchResult partial = minimize_normalized_df(s, 2);
    CHECK_FALSE(partial.certified);
    CHECK(full.value_squared_signed <= partial.value_squared_signed);
}

TEST_CASE("seed permutes the enumeration without changing the certified result") {
    SearchSpace s = square_space();
    SearchResult a = minimize_normalized_df(s, 100000, 0);
    SearchResult b = minimize_normalized_df(s, 100000, 12345);
    CHECK(a.value_squared_signed == b.value_squared_signed);
    CHECK(a.minimizer == b.minimizer);
    CHECK(a.status == b.status);
}

TEST_CASE("brute force dimension cap") {
    SearchSpace s = segment_space();
    // fake a wide space by checking the guard directly on a 5-free-node complex
    TriangulationData tri;
    tri.nodes = {{Rat(0)}, {Rat(1, 6)}, {Rat(2, 6)}, {Rat(3, 6)}, {Rat(4, 6)}, {Rat(5, 6)}, {Rat(1)}};
    tri.simplices = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}};
    SearchSpace wide = build_search_space(segment(), tri);
    CHECK(wide.free_nodes.size() == 5);
    CHECK_THROWS_AS(brute_force_search(wide, 2), DimensionTooLarge);
    CHECK_THROWS_AS(brute_force_search(s, 0), Error);
}

TEST_CASE("resolution 1 on a 2-dimensional space enumerates the 8 unit-box rays") {
    SearchSpace s = square_space();
    REQUIRE(s.free_nodes.size() == 2);
    SearchResult r = brute_force_search(s, 1);
    // primitive nonzero points of {-1,0,1}^2: the +-basis and the diagonals
    CHECK(r.iterations == 8);
}

TEST_CASE("square space is stable: no toric destabilizer of the plane product") {
    SearchResult r = minimize_normalized_df(square_space());
    CHECK(r.status == SearchStatus::Stable);
    CHECK(r.value_squared_signed > 0);
}
