#include "kstab/optimize.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <random>

#include "kstab/errors.hpp"
#include "kstab/invariants.hpp"

namespace kstab {

namespace {

bool lex_less(const RatVec& a, const RatVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

Rat dot_int(const std::vector<BigInt>& g, const RatVec& x) {
    Rat s = 0;
    for (std::size_t i = 0; i < g.size(); ++i) s += Rat(g[i], 1) * x[i];
    return s;
}

RatVec canonical_scale(RatVec x) {
    for (const auto& c : x)
        if (c != 0) {
            const Rat f = Rat(1) / rat_abs(c);
            for (auto& e : x) e *= f;
            break;
        }
    return x;
}

struct Candidate {
    RatVec node_vector;       // full node-value vector
    Rat df;
    Rat norm_sq;              // > 0
    Rat ssq;                  // sign(df) df^2 / norm_sq
    std::string stage;
    std::vector<std::size_t> active_set;
    RatVec residual;
};

// winner selection: smaller signed-square value, ties broken by the
// lexicographically smaller canonically scaled minimizer
bool better(const Candidate& a, const Candidate& b) {
    if (a.ssq != b.ssq) return a.ssq < b.ssq;
    return lex_less(canonical_scale(a.node_vector), canonical_scale(b.node_vector));
}

}  // namespace

SearchSpace build_search_space(const LatticePolytope& p, TriangulationData tri) {
    const std::size_t n = static_cast<std::size_t>(p.dimension());
    for (const auto& node : tri.nodes)
        if (node.size() != n) throw DimensionMismatch("build_search_space: node dimension mismatch");

    // canonical node order: lex-sorted, simplices remapped
    std::vector<std::size_t> perm(tri.nodes.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(),
              [&](std::size_t a, std::size_t b) { return lex_less(tri.nodes[a], tri.nodes[b]); });
    for (std::size_t i = 0; i + 1 < perm.size(); ++i)
        if (tri.nodes[perm[i]] == tri.nodes[perm[i + 1]])
            throw TriangulationMismatch("build_search_space: duplicate node");
    std::vector<std::size_t> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
    TriangulationData canon;
    canon.nodes.reserve(tri.nodes.size());
    for (std::size_t i = 0; i < perm.size(); ++i) canon.nodes.push_back(tri.nodes[perm[i]]);
    for (const auto& s : tri.simplices) {
        std::vector<int> mapped;
        mapped.reserve(s.size());
        for (int idx : s) {
            if (idx < 0 || idx >= static_cast<int>(inv.size()))
                throw TriangulationMismatch("build_search_space: simplex refers to a missing node");
            mapped.push_back(static_cast<int>(inv[static_cast<std::size_t>(idx)]));
        }
        canon.simplices.push_back(std::move(mapped));
    }

    for (const auto& node : canon.nodes)
        if (!p.contains(node)) throw TriangulationMismatch("build_search_space: node outside the polytope");
    if (complex_volume(canon) != p.volume())
        throw TriangulationMismatch("build_search_space: triangulation does not tile the polytope");

    const std::size_t count = canon.nodes.size();
    const Rat a0 = p.volume();
    const Rat a1 = p.boundary_volume() / 2;

    // nodal basis integrals: hats are affine on each simplex by construction
    RatVec hat_integral(count, Rat(0));
    RatMatrix hat_product(count, count);
    for (const auto& s : canon.simplices) {
        Simplex geo;
        for (int idx : s) geo.v.push_back(canon.nodes[idx]);
        const Rat vol = geo.volume();
        if (vol == 0) throw TriangulationMismatch("build_search_space: degenerate simplex");
        const int verts = static_cast<int>(s.size());
        for (int idx : s) hat_integral[idx] += vol / verts;
        for (int a : s)
            for (int b : s)
                hat_product.at(a, b) += vol * Rat(a == b ? 2 : 1) / Rat(verts * (verts + 1));
    }

    // boundary faces (owned by exactly one simplex) must lie in dP
    RatVec hat_boundary(count, Rat(0));
    std::map<std::vector<int>, int> face_owners;
    for (const auto& s : canon.simplices)
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            std::vector<int> face;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (i != drop) face.push_back(s[i]);
            std::sort(face.begin(), face.end());
            ++face_owners[face];
        }
    for (const auto& [face, owners] : face_owners) {
        if (owners > 2) throw TriangulationMismatch("build_search_space: face shared by more than two simplices");
        if (owners != 1) continue;
        std::vector<RatVec> pts;
        for (int idx : face) pts.push_back(canon.nodes[idx]);
        const Facet* host = nullptr;
        for (const auto& fac : p.facets()) {
            bool on = true;
            for (const auto& q : pts)
                if (dot_int(fac.normal, q) != fac.offset) {
                    on = false;
                    break;
                }
            if (on) {
                host = &fac;
                break;
            }
        }
        if (!host) throw TriangulationMismatch("build_search_space: boundary face not on the polytope boundary");
        const Rat sigma = n == 1 ? Rat(1) : facet_lattice_measure(pts, host->normal);
        for (int idx : face) hat_boundary[idx] += sigma / Rat(static_cast<int>(face.size()));
    }

    SearchSpace space;
    space.polytope = p;
    space.tri = std::move(canon);

    space.objective.resize(count);
    for (std::size_t j = 0; j < count; ++j)
        space.objective[j] = hat_boundary[j] / 2 - a1 / a0 * hat_integral[j];

    space.norm_form = RatMatrix(count, count);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j)
            space.norm_form.at(i, j) = hat_product.at(i, j) - hat_integral[i] * hat_integral[j] / a0;

    for (const auto& sd : second_differences(space.tri)) {
        RatVec row(count, Rat(0));
        for (std::size_t i = 0; i < sd.node_indices.size(); ++i)
            row[sd.node_indices[i]] = Rat(sd.coefficients[i], 1);
        bool duplicate = false;
        for (std::size_t r = 0; r < space.convexity.rows(); ++r) {
            bool same = true;
            for (std::size_t j = 0; j < count; ++j)
                if (space.convexity.at(r, j) != row[j]) {
                    same = false;
                    break;
                }
            if (same) {
                duplicate = true;
                break;
            }
        }
        if (duplicate) continue;
        RatMatrix grown(space.convexity.rows() + 1, count);
        for (std::size_t r = 0; r < space.convexity.rows(); ++r)
            for (std::size_t j = 0; j < count; ++j) grown.at(r, j) = space.convexity.at(r, j);
        for (std::size_t j = 0; j < count; ++j) grown.at(space.convexity.rows(), j) = row[j];
        space.convexity = std::move(grown);
    }

    space.affine_kernel.assign(n + 1, RatVec(count, Rat(0)));
    for (std::size_t j = 0; j < count; ++j) {
        space.affine_kernel[0][j] = 1;
        for (std::size_t i = 0; i < n; ++i) space.affine_kernel[i + 1][j] = space.tri.nodes[j][i];
    }

    // anchors: first n+1 affinely independent nodes in canonical order
    for (std::size_t j = 0; j < count && space.anchors.size() < n + 1; ++j) {
        std::vector<std::size_t> trial = space.anchors;
        trial.push_back(j);
        RatMatrix m(trial.size(), n + 1);
        for (std::size_t r = 0; r < trial.size(); ++r) {
            m.at(r, 0) = 1;
            for (std::size_t i = 0; i < n; ++i) m.at(r, i + 1) = space.tri.nodes[trial[r]][i];
        }
        if (rank(m) == trial.size()) space.anchors = std::move(trial);
    }
    if (space.anchors.size() != n + 1)
        throw TriangulationMismatch("build_search_space: nodes do not span affine functions");
    for (std::size_t j = 0; j < count; ++j)
        if (std::find(space.anchors.begin(), space.anchors.end(), j) == space.anchors.end())
            space.free_nodes.push_back(j);
    if (space.free_nodes.empty())
        throw NoNontrivialDirections("build_search_space: every feasible function is affine");

    // invariant checks: constants are Q-null and L-null; Q definite on the complement
    for (std::size_t i = 0; i < count; ++i) {
        Rat row_sum = 0;
        for (std::size_t j = 0; j < count; ++j) row_sum += space.norm_form.at(i, j);
        if (row_sum != 0) throw DegenerateQ("build_search_space: constants are not Q-null");
    }
    Rat l_const = 0;
    for (std::size_t j = 0; j < count; ++j) l_const += space.objective[j];
    if (l_const != 0) throw DegenerateQ("build_search_space: constants are not L-null");
    RatMatrix qfree(space.free_nodes.size(), space.free_nodes.size());
    for (std::size_t i = 0; i < space.free_nodes.size(); ++i)
        for (std::size_t j = 0; j < space.free_nodes.size(); ++j)
            qfree.at(i, j) = space.norm_form.at(space.free_nodes[i], space.free_nodes[j]);
    if (!is_positive_definite(qfree))
        throw DegenerateQ("build_search_space: Q is not positive definite on the anchored complement");

    return space;
}

namespace {

RatVec embed(const SearchSpace& space, const RatVec& free_coords) {
    RatVec full(space.tri.nodes.size(), Rat(0));
    for (std::size_t i = 0; i < space.free_nodes.size(); ++i) full[space.free_nodes[i]] = free_coords[i];
    return full;
}

bool feasible(const SearchSpace& space, const RatVec& full) {
    for (std::size_t r = 0; r < space.convexity.rows(); ++r) {
        Rat s = 0;
        for (std::size_t j = 0; j < full.size(); ++j) s += space.convexity.at(r, j) * full[j];
        if (s < 0) return false;
    }
    return true;
}

std::vector<std::size_t> active_constraints(const SearchSpace& space, const RatVec& full) {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < space.convexity.rows(); ++r) {
        Rat s = 0;
        for (std::size_t j = 0; j < full.size(); ++j) s += space.convexity.at(r, j) * full[j];
        if (s == 0) out.push_back(r);
    }
    return out;
}

Rat quad_form(const RatMatrix& q, const RatVec& x) {
    Rat s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < x.size(); ++j) s += x[i] * q.at(i, j) * x[j];
    }
    return s;
}

// stationarity residual in the coordinates of the basis `vs`:
// r_i = vs_i . (L + kappa Q x) with the Rayleigh multiplier kappa
RatVec stationarity_residual(const RatVec& l, const RatMatrix& q, const std::vector<RatVec>& vs,
                             const RatVec& x) {
    const Rat nsq = quad_form(q, x);
    const Rat kappa = nsq == 0 ? Rat(0) : -dot(l, x) / nsq;
    RatVec grad = add(l, scaled(q * x, kappa));
    RatVec out(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) out[i] = dot(vs[i], grad);
    return out;
}

Candidate make_candidate(const SearchSpace& space, const RatVec& full, const std::string& stage,
                         const std::vector<RatVec>& basis) {
    Candidate c;
    c.node_vector = canonical_scale(full);
    c.df = dot(space.objective, c.node_vector);
    c.norm_sq = quad_form(space.norm_form, c.node_vector);
    c.ssq = Rat(sign_of(c.df)) * c.df * c.df / c.norm_sq;
    c.stage = stage;
    c.active_set = active_constraints(space, c.node_vector);
    c.residual = stationarity_residual(space.objective, space.norm_form, basis, c.node_vector);
    return c;
}

SearchResult result_from(const Candidate& c, bool certified, long iterations) {
    SearchResult r;
    r.minimizer = c.node_vector;
    r.value_squared_signed = c.ssq;
    r.value_approx = Rat(sign_of(c.df)) * sqrt_approx(c.ssq == 0 ? Rat(0) : rat_abs(c.ssq), default_precision());
    if (c.ssq < 0)
        r.status = SearchStatus::Destabilizer;
    else if (c.ssq == 0 && !c.active_set.empty() && c.norm_sq > 0)
        r.status = SearchStatus::BoundaryDegenerate;
    else
        r.status = SearchStatus::Stable;
    r.certified = certified;
    r.active_set = c.active_set;
    r.stationarity_residual = c.residual;
    r.stage = c.stage;
    r.iterations = iterations;
    return r;
}

SearchResult trivial_result(const SearchSpace& space, long iterations, bool certified) {
    SearchResult r;
    r.minimizer.assign(space.tri.nodes.size(), Rat(0));
    r.value_squared_signed = 0;
    r.value_approx = 0;
    r.status = SearchStatus::Stable;
    r.certified = certified;
    r.stage = "trivial";
    r.iterations = iterations;
    return r;
}

// affine directions mod constants: coordinate-function node vectors
std::optional<Candidate> affine_stage(const SearchSpace& space) {
    const std::size_t n = space.affine_kernel.size() - 1;
    std::vector<RatVec> basis(space.affine_kernel.begin() + 1, space.affine_kernel.end());
    RatVec l_aff(n);
    RatMatrix q_aff(n, n);
    bool zero = true;
    for (std::size_t i = 0; i < n; ++i) {
        l_aff[i] = dot(space.objective, basis[i]);
        zero &= l_aff[i] == 0;
        for (std::size_t j = 0; j < n; ++j) {
            Rat s = 0;
            for (std::size_t a = 0; a < basis[i].size(); ++a) {
                if (basis[i][a] == 0) continue;
                for (std::size_t b = 0; b < basis[j].size(); ++b)
                    s += basis[i][a] * space.norm_form.at(a, b) * basis[j][b];
            }
            q_aff.at(i, j) = s;
        }
    }
    // a vanishing DF form on the affine family means only trivial product
    // directions: nothing to report from this stage
    if (zero) return std::nullopt;
    RatVec coeff = solve_linear(q_aff, l_aff);
    for (auto& c : coeff) c = -c;
    RatVec full(space.tri.nodes.size(), Rat(0));
    for (std::size_t i = 0; i < n; ++i) full = axpy(coeff[i], basis[i], full);
    Candidate c = make_candidate(space, full, "affine", basis);
    return c;
}

}  // namespace

SearchResult minimize_normalized_df(const SearchSpace& space, long max_iterations, std::uint64_t seed) {
    const std::size_t d = space.free_nodes.size();
    const std::size_t m = space.convexity.rows();

    // restrictions to the anchored complement
    RatVec l_w(d);
    RatMatrix q_w(d, d), a_w(m, d);
    for (std::size_t i = 0; i < d; ++i) {
        l_w[i] = space.objective[space.free_nodes[i]];
        for (std::size_t j = 0; j < d; ++j) q_w.at(i, j) = space.norm_form.at(space.free_nodes[i], space.free_nodes[j]);
        for (std::size_t r = 0; r < m; ++r) a_w.at(r, i) = space.convexity.at(r, space.free_nodes[i]);
    }

    // working sets: subsets of constraints of size <= d, by (size, lex)
    std::vector<std::vector<std::size_t>> working_sets;
    working_sets.push_back({});
    for (std::size_t size = 1; size <= std::min(m, d); ++size) {
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            working_sets.push_back(idx);
            std::size_t i = size;
            while (i > 0 && idx[i - 1] == m - size + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        for (std::size_t i = working_sets.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(rng() % i);
            std::swap(working_sets[i - 1], working_sets[j]);
        }
    }

    std::optional<Candidate> best;
    long iterations = 0;
    bool truncated = false;
    for (const auto& ws : working_sets) {
        if (iterations >= max_iterations) {
            truncated = true;
            break;
        }
        ++iterations;
        // null space of the working constraints inside the complement
        RatMatrix rows(ws.size(), d);
        for (std::size_t r = 0; r < ws.size(); ++r)
            for (std::size_t j = 0; j < d; ++j) rows.at(r, j) = a_w.at(ws[r], j);
        std::vector<RatVec> v_basis = ws.empty() ? std::vector<RatVec>() : null_space(rows);
        if (ws.empty()) {
            v_basis.assign(d, RatVec(d, Rat(0)));
            for (std::size_t i = 0; i < d; ++i) v_basis[i][i] = 1;
        }
        if (v_basis.empty()) continue;

        const std::size_t vd = v_basis.size();
        RatVec l_v(vd);
        RatMatrix q_v(vd, vd);
        bool l_zero = true;
        for (std::size_t i = 0; i < vd; ++i) {
            l_v[i] = dot(v_basis[i], l_w);
            l_zero &= l_v[i] == 0;
            for (std::size_t j = 0; j < vd; ++j) {
                Rat s = 0;
                for (std::size_t a = 0; a < d; ++a) {
                    if (v_basis[i][a] == 0) continue;
                    for (std::size_t b = 0; b < d; ++b) s += v_basis[i][a] * q_w.at(a, b) * v_basis[j][b];
                }
                q_v.at(i, j) = s;
            }
        }
        if (!is_positive_definite(q_v))
            throw DegenerateQ("minimize_normalized_df: Q degenerate on a working set");

        std::vector<RatVec> candidates;
        if (vd == 1) {
            candidates.push_back(v_basis[0]);
            candidates.push_back(scaled(v_basis[0], Rat(-1)));
        } else if (!l_zero) {
            RatVec y = solve_linear(q_v, l_v);
            RatVec x(d, Rat(0));
            for (std::size_t i = 0; i < vd; ++i) x = axpy(-y[i], v_basis[i], x);
            candidates.push_back(std::move(x));
        } else {
            // zero objective plateau: probe the basis rays for a feasible witness
            for (const auto& v : v_basis) {
                candidates.push_back(v);
                candidates.push_back(scaled(v, Rat(-1)));
            }
        }

        std::vector<RatVec> embedded_basis;
        embedded_basis.reserve(v_basis.size());
        for (const auto& v : v_basis) embedded_basis.push_back(embed(space, v));
        for (const auto& x : candidates) {
            bool zero = true;
            for (const auto& c : x) zero &= c == 0;
            if (zero) continue;
            RatVec full = embed(space, x);
            if (!feasible(space, full)) continue;
            Candidate cand = make_candidate(space, full, "cone", embedded_basis);
            if (cand.norm_sq <= 0) continue;
            if (!best || better(cand, *best)) best = std::move(cand);
        }
    }

    std::optional<Candidate> affine = affine_stage(space);
    if (affine && (!best || better(*affine, *best))) best = affine;

    if (!best) return trivial_result(space, iterations, !truncated);
    return result_from(*best, !truncated, iterations);
}

namespace {

struct GridSlice {
    std::optional<Candidate> best;
    long iterations = 0;
};

// scan cone-grid points whose slowest coordinate lies in [lo, hi]
GridSlice scan_cone_slice(const SearchSpace& space, int resolution, long lo, long hi,
                          const std::vector<RatVec>& basis) {
    GridSlice out;
    if (lo > hi) return out;
    const std::size_t d = space.free_nodes.size();
    std::vector<long> point(d, -resolution);
    point[d - 1] = lo;
    while (true) {
        BigInt g = 0;
        for (long c : point) g = gcd(g, BigInt(c));
        if (g == 1) {  // primitive directions only; both signs enumerated
            ++out.iterations;
            RatVec x(d);
            for (std::size_t i = 0; i < d; ++i) x[i] = point[i];
            RatVec full = embed(space, x);
            if (feasible(space, full)) {
                Candidate cand = make_candidate(space, full, "cone", basis);
                if (cand.norm_sq > 0 && (!out.best || better(cand, *out.best))) out.best = std::move(cand);
            }
        }
        std::size_t i = 0;
        while (i + 1 < d && point[i] == resolution) {
            point[i] = -resolution;
            ++i;
        }
        if (i + 1 < d) {
            ++point[i];
            continue;
        }
        if (point[d - 1] == hi) break;
        ++point[d - 1];
    }
    return out;
}

}  // namespace

SearchResult brute_force_search(const SearchSpace& space, int resolution) {
    const std::size_t d = space.free_nodes.size();
    if (d > 4) throw DimensionTooLarge("brute_force_search: nontrivial dimension exceeds 4");
    if (resolution < 1) throw Error("brute_force_search: resolution must be >= 1");

    std::optional<Candidate> best;
    long iterations = 0;

    // cone stage: primitive integer directions in the anchored complement,
    // partitioned along the slowest coordinate across concurrent tasks; the
    // merge order is fixed, so the result does not depend on scheduling
    std::vector<RatVec> basis;
    basis.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        RatVec e(d, Rat(0));
        e[i] = 1;
        basis.push_back(embed(space, e));
    }
    const long span = 2L * resolution + 1;
    const long chunks = (d >= 2 && resolution >= 4) ? std::min<long>(4, span) : 1;
    std::vector<std::future<GridSlice>> tasks;
    for (long c = 0; c < chunks; ++c) {
        const long lo = -resolution + c * span / chunks;
        const long hi = -resolution + (c + 1) * span / chunks - 1;
        tasks.push_back(std::async(chunks > 1 ? std::launch::async : std::launch::deferred,
                                   [&space, resolution, lo, hi, &basis] {
                                       return scan_cone_slice(space, resolution, lo, hi, basis);
                                   }));
    }
    for (auto& task : tasks) {
        GridSlice slice = task.get();
        iterations += slice.iterations;
        if (slice.best && (!best || better(*slice.best, *best))) best = std::move(slice.best);
    }

    // affine stage mirrors the exact search: only engaged when the DF form
    // is nonzero on affine directions
    const std::size_t n = space.affine_kernel.size() - 1;
    std::vector<RatVec> aff_basis(space.affine_kernel.begin() + 1, space.affine_kernel.end());
    bool l_aff_zero = true;
    for (const auto& b : aff_basis) l_aff_zero &= dot(space.objective, b) == 0;
    if (!l_aff_zero) {
        std::vector<long> c(n, -resolution);
        while (true) {
            BigInt g = 0;
            for (long e : c) g = gcd(g, BigInt(e));
            if (g == 1) {
                ++iterations;
                RatVec full(space.tri.nodes.size(), Rat(0));
                for (std::size_t i = 0; i < n; ++i) full = axpy(Rat(c[i]), aff_basis[i], full);
                Candidate cand = make_candidate(space, full, "affine", aff_basis);
                if (cand.norm_sq > 0 && (!best || better(cand, *best))) best = std::move(cand);
            }
            std::size_t i = 0;
            while (i < n && c[i] == resolution) {
                c[i] = -resolution;
                ++i;
            }
            if (i == n) break;
            ++c[i];
        }
    }

    if (!best) return trivial_result(space, iterations, true);
    SearchResult r = result_from(*best, true, iterations);
    r.stage = best->stage + "-grid";
    return r;
}

}  // namespace kstab
