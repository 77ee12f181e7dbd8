#include "kstab/pl_function.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "kstab/errors.hpp"
#include "kstab/linalg.hpp"

namespace kstab {

Rat AffinePiece::eval(const RatVec& x) const {
    if (x.size() != grad.size()) throw DimensionMismatch("AffinePiece: coordinate count mismatch");
    return dot(grad, x) + constant;
}

namespace {

// affine coordinates of q with respect to the vertices of a simplex:
// q = sum mu_i v_i with sum mu_i = 1
RatVec affine_coordinates(const std::vector<RatVec>& verts, const RatVec& q) {
    const std::size_t n = q.size();
    RatMatrix m(n + 1, verts.size());
    RatVec rhs(n + 1);
    for (std::size_t j = 0; j < verts.size(); ++j) {
        for (std::size_t i = 0; i < n; ++i) m.at(i, j) = verts[j][i];
        m.at(n, j) = 1;
    }
    for (std::size_t i = 0; i < n; ++i) rhs[i] = q[i];
    rhs[n] = 1;
    if (verts.size() != n + 1) throw DimensionMismatch("affine_coordinates: need n+1 vertices");
    return solve_linear(m, rhs);
}

struct FaceKey {
    std::vector<int> nodes;  // sorted
    bool operator<(const FaceKey& other) const { return nodes < other.nodes; }
};

std::map<FaceKey, std::vector<int>> face_incidence(const TriangulationData& tri) {
    std::map<FaceKey, std::vector<int>> faces;
    for (std::size_t s = 0; s < tri.simplices.size(); ++s) {
        const auto& simplex = tri.simplices[s];
        for (std::size_t drop = 0; drop < simplex.size(); ++drop) {
            FaceKey key;
            for (std::size_t i = 0; i < simplex.size(); ++i)
                if (i != drop) key.nodes.push_back(simplex[i]);
            std::sort(key.nodes.begin(), key.nodes.end());
            faces[key].push_back(static_cast<int>(s));
        }
    }
    return faces;
}

void validate_complex(const TriangulationData& tri) {
    if (tri.nodes.empty()) throw TriangulationMismatch("triangulation has no nodes");
    const std::size_t n = tri.nodes[0].size();
    for (const auto& node : tri.nodes)
        if (node.size() != n) throw TriangulationMismatch("triangulation nodes have mixed dimensions");
    if (tri.simplices.empty()) throw TriangulationMismatch("triangulation has no simplices");
    for (const auto& s : tri.simplices) {
        if (s.size() != n + 1) throw TriangulationMismatch("simplex vertex count must be dimension+1");
        for (int idx : s)
            if (idx < 0 || idx >= static_cast<int>(tri.nodes.size()))
                throw TriangulationMismatch("simplex refers to a missing node");
        Simplex geo;
        for (int idx : s) geo.v.push_back(tri.nodes[idx]);
        if (geo.volume() == 0) throw TriangulationMismatch("degenerate simplex in triangulation");
    }
    for (const auto& [face, owners] : face_incidence(tri))
        if (owners.size() > 2) throw TriangulationMismatch("face shared by more than two simplices");
}

}  // namespace

PLConvexFunction PLConvexFunction::max_affine(std::vector<AffinePiece> pieces) {
    if (pieces.empty()) throw Error("max_affine: need at least one piece");
    const std::size_t n = pieces[0].grad.size();
    for (const auto& p : pieces)
        if (p.grad.size() != n) throw DimensionMismatch("max_affine: pieces have mixed dimensions");
    // drop exact duplicates and pieces dominated by an identical-gradient piece
    std::vector<AffinePiece> kept;
    for (const auto& p : pieces) {
        bool dominated = false;
        for (auto& q : kept)
            if (q.grad == p.grad) {
                q.constant = std::max(q.constant, p.constant);
                dominated = true;
                break;
            }
        if (!dominated) kept.push_back(p);
    }
    PLConvexFunction f;
    f.dim_ = static_cast<int>(n);
    f.pieces_ = std::move(kept);
    return f;
}

PLConvexFunction PLConvexFunction::node_values(TriangulationData triangulation, RatVec values) {
    validate_complex(triangulation);
    if (values.size() != triangulation.nodes.size())
        throw DimensionMismatch("node_values: one value per node required");
    for (const auto& sd : second_differences(triangulation)) {
        Rat acc = 0;
        for (std::size_t i = 0; i < sd.node_indices.size(); ++i)
            acc += Rat(sd.coefficients[i], 1) * values[sd.node_indices[i]];
        if (acc < 0)
            throw ConvexityViolation("node_values: negative second difference " + rat_to_string(acc) +
                                     " across an interior face");
    }
    PLConvexFunction f;
    f.dim_ = static_cast<int>(triangulation.nodes[0].size());
    f.tri_ = std::move(triangulation);
    f.values_ = std::move(values);
    return f;
}

const std::vector<AffinePiece>& PLConvexFunction::pieces() const {
    if (!pieces_) throw Error("PLConvexFunction: not in max-affine form");
    return *pieces_;
}

const TriangulationData& PLConvexFunction::triangulation() const {
    if (!tri_) throw Error("PLConvexFunction: not in node-value form");
    return *tri_;
}

const RatVec& PLConvexFunction::values() const {
    if (!values_) throw Error("PLConvexFunction: not in node-value form");
    return *values_;
}

Rat PLConvexFunction::eval(const RatVec& x) const {
    if (pieces_) {
        Rat best = (*pieces_)[0].eval(x);
        for (std::size_t i = 1; i < pieces_->size(); ++i) best = std::max(best, (*pieces_)[i].eval(x));
        return best;
    }
    for (const auto& simplex : tri_->simplices) {
        std::vector<RatVec> verts;
        for (int idx : simplex) verts.push_back(tri_->nodes[idx]);
        RatVec mu;
        try {
            mu = affine_coordinates(verts, x);
        } catch (const SingularMatrix&) {
            continue;
        }
        bool inside = true;
        for (const auto& c : mu)
            if (c < 0) {
                inside = false;
                break;
            }
        if (!inside) continue;
        Rat value = 0;
        for (std::size_t i = 0; i < simplex.size(); ++i) value += mu[i] * (*values_)[simplex[i]];
        return value;
    }
    throw TriangulationMismatch("eval: point lies outside the function's triangulation");
}

Rat PLConvexFunction::max_over(const LatticePolytope& p) const {
    if (p.dimension() != dim_) throw DimensionMismatch("max_over: dimension mismatch");
    Rat best;
    bool first = true;
    if (pieces_) {
        for (const auto& v : p.vertices()) {
            const Rat val = eval(v);
            if (first || val > best) best = val;
            first = false;
        }
    } else {
        // PL functions attain their maximum at nodes of their own complex
        for (const auto& val : *values_) {
            if (first || val > best) best = val;
            first = false;
        }
    }
    return best;
}

std::vector<Hyperplane> PLConvexFunction::crease_hyperplanes() const {
    std::vector<Hyperplane> planes;
    auto push_unique = [&](Hyperplane h) {
        // orientation-free canonical form for dedupe
        bool flip = false;
        for (const auto& c : h.normal) {
            if (c != 0) {
                flip = c < 0;
                break;
            }
        }
        if (flip) {
            for (auto& c : h.normal) c = -c;
            h.offset = -h.offset;
        }
        if (std::find(planes.begin(), planes.end(), h) == planes.end()) planes.push_back(std::move(h));
    };

    if (pieces_) {
        for (std::size_t i = 0; i < pieces_->size(); ++i)
            for (std::size_t j = i + 1; j < pieces_->size(); ++j) {
                RatVec diff((*pieces_)[i].grad.size());
                bool zero = true;
                for (std::size_t k = 0; k < diff.size(); ++k) {
                    diff[k] = (*pieces_)[i].grad[k] - (*pieces_)[j].grad[k];
                    zero &= diff[k] == 0;
                }
                if (zero) continue;  // parallel pieces never cross
                push_unique(canonical_hyperplane(diff, (*pieces_)[j].constant - (*pieces_)[i].constant));
            }
        return planes;
    }

    // node-value form: affine hulls of interior faces
    const std::size_t n = tri_->nodes[0].size();
    if (n == 1) {
        for (const auto& [face, owners] : face_incidence(*tri_))
            if (owners.size() == 2) push_unique(Hyperplane{{BigInt(1)}, tri_->nodes[face.nodes[0]][0]});
        return planes;
    }
    for (const auto& [face, owners] : face_incidence(*tri_)) {
        if (owners.size() != 2) continue;
        RatMatrix m(face.nodes.size() - 1, n);
        for (std::size_t i = 1; i < face.nodes.size(); ++i)
            for (std::size_t j = 0; j < n; ++j)
                m.at(i - 1, j) = tri_->nodes[face.nodes[i]][j] - tri_->nodes[face.nodes[0]][j];
        std::vector<RatVec> normals = null_space(m);
        if (normals.size() != 1) throw TriangulationMismatch("crease_hyperplanes: degenerate interior face");
        push_unique(canonical_hyperplane(normals[0], dot(normals[0], tri_->nodes[face.nodes[0]])));
    }
    return planes;
}

std::vector<SecondDifference> second_differences(const TriangulationData& tri) {
    std::vector<SecondDifference> out;
    auto faces = face_incidence(tri);
    std::set<std::pair<std::vector<int>, std::vector<BigInt>>> seen;
    for (const auto& [face, owners] : faces) {
        if (owners.size() != 2) continue;
        const auto& s1 = tri.simplices[owners[0]];
        const auto& s2 = tri.simplices[owners[1]];
        int q = -1;
        for (int idx : s2)
            if (std::find(face.nodes.begin(), face.nodes.end(), idx) == face.nodes.end()) q = idx;
        std::vector<RatVec> verts;
        for (int idx : s1) verts.push_back(tri.nodes[idx]);
        RatVec mu = affine_coordinates(verts, tri.nodes[q]);

        // f(q) - sum mu_i f(v_i) >= 0, assembled sparsely over node indices
        std::map<int, Rat> coeff;
        coeff[q] += 1;
        for (std::size_t i = 0; i < s1.size(); ++i) coeff[s1[i]] -= mu[i];

        SecondDifference sd;
        BigInt l = 1;
        for (const auto& [idx, c] : coeff)
            if (c != 0) l = lcm(l, den(c));
        BigInt g = 0;
        std::vector<std::pair<int, BigInt>> entries;
        for (const auto& [idx, c] : coeff) {
            if (c == 0) continue;
            BigInt e = num(c) * (l / den(c));
            g = gcd(g, e);
            entries.emplace_back(idx, e);
        }
        if (entries.empty()) continue;  // coplanar pair: no constraint
        for (auto& [idx, e] : entries) {
            e /= g;
            sd.node_indices.push_back(idx);
            sd.coefficients.push_back(e);
        }
        if (seen.insert({sd.node_indices, sd.coefficients}).second) out.push_back(std::move(sd));
    }
    return out;
}

Rat complex_volume(const TriangulationData& tri) {
    Rat total = 0;
    for (const auto& s : tri.simplices) {
        Simplex geo;
        for (int idx : s) geo.v.push_back(tri.nodes[idx]);
        total += geo.volume();
    }
    return total;
}

}  // namespace kstab
