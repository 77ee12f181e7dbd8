#include "kstab/polytope.hpp"

#include <algorithm>

#include "kstab/errors.hpp"
#include "kstab/linalg.hpp"

namespace kstab {

namespace {

bool lex_less(const RatVec& a, const RatVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

RatVec sub(const RatVec& a, const RatVec& b) {
    RatVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

RatVec cross3(const RatVec& a, const RatVec& b) {
    return RatVec{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Rat det3(const RatVec& a, const RatVec& b, const RatVec& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

std::size_t affine_rank(const std::vector<RatVec>& points) {
    if (points.size() <= 1) return 0;
    RatMatrix m(points.size() - 1, points[0].size());
    for (std::size_t i = 1; i < points.size(); ++i)
        for (std::size_t j = 0; j < points[0].size(); ++j) m.at(i - 1, j) = points[i][j] - points[0][j];
    return rank(m);
}

std::vector<RatVec> dedupe_points(std::vector<RatVec> pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

Rat dot_int(const std::vector<BigInt>& g, const RatVec& x) {
    Rat s = 0;
    for (std::size_t i = 0; i < g.size(); ++i) s += Rat(g[i], 1) * x[i];
    return s;
}

// Order coplanar points counterclockwise around their centroid, using the
// in-plane axes u1 = p0 - c and u2 = normal x u1 (orthogonal, so circular
// order is exact under the induced coordinates).
std::vector<RatVec> order_facet_ring(std::vector<RatVec> ring, const std::vector<BigInt>& normal) {
    RatVec c(3, Rat(0));
    for (const auto& p : ring) c = add(c, p);
    c = scaled(c, Rat(1, static_cast<int>(ring.size())));
    RatVec u1 = sub(ring[0], c);
    RatVec nrat{Rat(normal[0], 1), Rat(normal[1], 1), Rat(normal[2], 1)};
    RatVec u2 = cross3(nrat, u1);
    std::sort(ring.begin(), ring.end(), [&](const RatVec& a, const RatVec& b) {
        RatVec wa = sub(a, c), wb = sub(b, c);
        const Rat pa = dot(wa, u1), qa = dot(wa, u2), pb = dot(wb, u1), qb = dot(wb, u2);
        const bool ha = qa < 0 || (qa == 0 && pa < 0);
        const bool hb = qb < 0 || (qb == 0 && pb < 0);
        if (ha != hb) return hb;
        const Rat cr = pa * qb - pb * qa;
        if (cr != 0) return cr > 0;
        return lex_less(a, b);
    });
    return ring;
}

// sigma-measure of one whole facet, given the hull vertices lying on it.
Rat facet_sigma(const Facet& fac, const std::vector<RatVec>& vertices, int dim) {
    std::vector<RatVec> on_facet;
    for (const auto& v : vertices)
        if (dot_int(fac.normal, v) == fac.offset) on_facet.push_back(v);
    if (dim == 1) return 1;
    if (dim == 2) {
        if (on_facet.size() != 2) throw DegeneratePolytope("facet_sigma: edge without two endpoints");
        return facet_lattice_measure({on_facet.front(), on_facet.back()}, fac.normal);
    }
    std::vector<RatVec> ring = order_facet_ring(std::move(on_facet), fac.normal);
    Rat sigma = 0;
    for (std::size_t i = 1; i + 1 < ring.size(); ++i)
        sigma += facet_lattice_measure({ring[0], ring[i], ring[i + 1]}, fac.normal);
    return sigma;
}

}  // namespace

Rat Hyperplane::eval(const RatVec& x) const { return dot_int(normal, x) - offset; }

Rat Simplex::volume() const {
    const std::size_t n = v.size() - 1;
    if (n == 0) return 0;
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = v[i + 1][j] - v[0][j];
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m.at(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(c, j));
            det = -det;
        }
        det *= m.at(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            Rat f = m.at(i, c) / m.at(c, c);
            for (std::size_t j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
        }
    }
    Rat fact = 1;
    for (std::size_t i = 2; i <= n; ++i) fact *= Rat(static_cast<int>(i));
    return rat_abs(det) / fact;
}

RatVec Simplex::centroid() const {
    RatVec c(v[0].size(), Rat(0));
    for (const auto& p : v) c = add(c, p);
    return scaled(c, Rat(1, static_cast<int>(v.size())));
}

std::vector<BigInt> make_primitive(std::vector<BigInt> v) {
    BigInt g = 0;
    for (const auto& x : v) g = gcd(g, x);
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

Hyperplane canonical_hyperplane(const RatVec& normal, const Rat& offset) {
    BigInt l = 1;
    for (const auto& x : normal) l = lcm(l, den(x));
    std::vector<BigInt> g(normal.size());
    BigInt common = 0;
    for (std::size_t i = 0; i < normal.size(); ++i) {
        g[i] = num(normal[i]) * (l / den(normal[i]));
        common = gcd(common, g[i]);
    }
    if (common == 0) throw DegeneratePolytope("canonical_hyperplane: zero normal");
    for (auto& x : g) x /= common;
    return Hyperplane{std::move(g), offset * Rat(l, 1) / Rat(common, 1)};
}

Rat facet_lattice_measure(const std::vector<RatVec>& simplex_vertices, const std::vector<BigInt>& normal) {
    const std::size_t n = normal.size();
    if (n == 1) return 1;  // boundary points carry measure 1
    if (simplex_vertices.size() != n) throw DimensionMismatch("facet_lattice_measure: need n vertices");
    // |det(edge vectors, normal)| = (n-1)! * vol_euclidean(F) * |normal|,
    // and the facet lattice covolume is |normal|, so sigma = |det| / ((n-1)! |normal|^2).
    RatMatrix m(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = simplex_vertices[i + 1][j] - simplex_vertices[0][j];
    for (std::size_t j = 0; j < n; ++j) m.at(n - 1, j) = Rat(normal[j], 1);
    Rat det;
    if (n == 2)
        det = m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
    else
        det = det3(RatVec{m.at(0, 0), m.at(0, 1), m.at(0, 2)}, RatVec{m.at(1, 0), m.at(1, 1), m.at(1, 2)},
                   RatVec{m.at(2, 0), m.at(2, 1), m.at(2, 2)});
    Rat g2 = 0;
    for (const auto& x : normal) g2 += Rat(x * x, 1);
    Rat fact = 1;
    for (std::size_t i = 2; i <= n - 1; ++i) fact *= Rat(static_cast<int>(i));
    return rat_abs(det) / (fact * g2);
}

// ---------------------------------------------------------------------------
// convex hull construction
// ---------------------------------------------------------------------------

namespace {

// Andrew monotone chain; returns strictly convex hull vertices in CCW order.
std::vector<RatVec> hull_chain_2d(const std::vector<RatVec>& pts) {
    auto cross = [](const RatVec& o, const RatVec& a, const RatVec& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<RatVec> h;
    for (const auto& p : pts) {  // lower chain
        while (h.size() >= 2 && cross(h[h.size() - 2], h.back(), p) <= 0) h.pop_back();
        h.push_back(p);
    }
    const std::size_t lower = h.size() + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {  // upper chain
        while (h.size() >= lower && cross(h[h.size() - 2], h.back(), *it) <= 0) h.pop_back();
        h.push_back(*it);
    }
    h.pop_back();
    return h;
}

struct Hull3 {
    std::vector<RatVec> vertices;
    std::vector<Facet> facets;
    std::vector<std::vector<RatVec>> facet_rings;  // ordered vertex rings
};

// Brute-force supporting-plane enumeration; fine at the supported scale.
Hull3 hull_3d(const std::vector<RatVec>& pts) {
    Hull3 out;
    std::vector<Hyperplane> planes;
    const std::size_t m = pts.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k) {
                RatVec n = cross3(sub(pts[j], pts[i]), sub(pts[k], pts[i]));
                if (n[0] == 0 && n[1] == 0 && n[2] == 0) continue;
                Hyperplane h = canonical_hyperplane(n, dot(n, pts[i]));
                bool above = false, below = false;
                for (const auto& p : pts) {
                    const int s = sign_of(h.eval(p));
                    if (s > 0) above = true;
                    if (s < 0) below = true;
                    if (above && below) break;
                }
                if (above && below) continue;
                if (below) {  // flip so the polytope satisfies normal.x >= offset
                    for (auto& c : h.normal) c = -c;
                    h.offset = -h.offset;
                }
                if (std::find(planes.begin(), planes.end(), h) == planes.end()) planes.push_back(h);
            }

    // hull vertices: incident facet normals span R^3
    for (const auto& p : pts) {
        std::vector<RatVec> normals;
        for (const auto& h : planes)
            if (h.eval(p) == 0)
                normals.push_back(RatVec{Rat(h.normal[0], 1), Rat(h.normal[1], 1), Rat(h.normal[2], 1)});
        if (normals.size() < 3) continue;
        RatMatrix nm(normals.size(), 3);
        for (std::size_t i = 0; i < normals.size(); ++i)
            for (int j = 0; j < 3; ++j) nm.at(i, j) = normals[i][j];
        if (rank(nm) == 3) out.vertices.push_back(p);
    }

    for (const auto& h : planes) {
        std::vector<RatVec> ring;
        for (const auto& p : out.vertices)
            if (h.eval(p) == 0) ring.push_back(p);
        if (ring.size() < 3) throw DegeneratePolytope("hull_3d: degenerate facet");
        out.facets.push_back(Facet{h.normal, h.offset});
        out.facet_rings.push_back(order_facet_ring(std::move(ring), h.normal));
    }
    return out;
}

}  // namespace

LatticePolytope LatticePolytope::from_vertices(std::vector<RatVec> points) {
    if (points.empty()) throw DegeneratePolytope("from_vertices: no points");
    const std::size_t n = points[0].size();
    if (n < 1 || n > 3)
        throw UnsupportedDimension("from_vertices: dimension " + std::to_string(n) + " not supported (1..3)");
    for (const auto& p : points)
        if (p.size() != n) throw DimensionMismatch("from_vertices: inconsistent coordinate count");
    points = dedupe_points(std::move(points));
    if (points.size() < n + 1 || affine_rank(points) < n)
        throw DegeneratePolytope("from_vertices: points do not span the ambient space");

    LatticePolytope poly;
    poly.dim_ = static_cast<int>(n);

    if (n == 1) {
        poly.vertices_ = {points.front(), points.back()};
        poly.facets_ = {Facet{{BigInt(1)}, points.front()[0]}, Facet{{BigInt(-1)}, -points.back()[0]}};
        poly.fan_ = {Simplex{{points.front(), points.back()}}};
    } else if (n == 2) {
        std::vector<RatVec> ring = hull_chain_2d(points);
        poly.vertices_ = ring;
        std::sort(poly.vertices_.begin(), poly.vertices_.end(), lex_less);
        for (std::size_t i = 0; i < ring.size(); ++i) {
            const RatVec& a = ring[i];
            const RatVec& b = ring[(i + 1) % ring.size()];
            // CCW ring: left normal (-dy, dx) points inward
            RatVec normal{a[1] - b[1], b[0] - a[0]};
            Hyperplane h = canonical_hyperplane(normal, normal[0] * a[0] + normal[1] * a[1]);
            poly.facets_.push_back(Facet{h.normal, h.offset});
        }
        for (std::size_t i = 1; i + 1 < ring.size(); ++i) {
            Simplex s{{ring[0], ring[i], ring[i + 1]}};
            if (s.volume() > 0) poly.fan_.push_back(std::move(s));
        }
    } else {
        Hull3 h = hull_3d(points);
        poly.vertices_ = h.vertices;
        std::sort(poly.vertices_.begin(), poly.vertices_.end(), lex_less);
        poly.facets_ = h.facets;
        const RatVec apex = poly.vertices_.front();
        for (std::size_t f = 0; f < h.facets.size(); ++f) {
            const Facet& fac = h.facets[f];
            if (dot_int(fac.normal, apex) == fac.offset) continue;  // facet contains the apex
            const auto& ring = h.facet_rings[f];
            for (std::size_t i = 1; i + 1 < ring.size(); ++i) {
                Simplex s{{apex, ring[0], ring[i], ring[i + 1]}};
                if (s.volume() > 0) poly.fan_.push_back(std::move(s));
            }
        }
    }

    std::sort(poly.facets_.begin(), poly.facets_.end(), [](const Facet& a, const Facet& b) {
        if (a.normal != b.normal) return a.normal < b.normal;
        return a.offset < b.offset;
    });

    // triangulation soundness: fan volume must equal the divergence-formula
    // volume (1/n) * sum_F (-offset_F) * sigma(F), computed facet-wise
    Rat fan_vol = 0;
    for (const auto& s : poly.fan_) fan_vol += s.volume();
    Rat div_vol = 0;
    for (const auto& fac : poly.facets_) div_vol += -fac.offset * facet_sigma(fac, poly.vertices_, poly.dim_);
    div_vol /= Rat(static_cast<int>(n));
    if (fan_vol != div_vol || fan_vol <= 0)
        throw DegeneratePolytope("from_vertices: triangulation volume check failed");

    return poly;
}

Rat LatticePolytope::volume() const {
    Rat v = 0;
    for (const auto& s : fan_) v += s.volume();
    return v;
}

Rat LatticePolytope::boundary_volume() const {
    Rat total = 0;
    for (const auto& fac : facets_) total += facet_sigma(fac, vertices_, dim_);
    return total;
}

bool LatticePolytope::contains(const RatVec& x) const {
    for (const auto& fac : facets_)
        if (dot_int(fac.normal, x) < fac.offset) return false;
    return true;
}

bool LatticePolytope::on_boundary(const RatVec& x) const {
    if (!contains(x)) return false;
    for (const auto& fac : facets_)
        if (dot_int(fac.normal, x) == fac.offset) return true;
    return false;
}

std::vector<std::vector<BigInt>> LatticePolytope::lattice_points(long k) const {
    if (k < 1) throw Error("lattice_points: dilation factor must be >= 1");
    const std::size_t n = static_cast<std::size_t>(dim_);
    std::vector<BigInt> lo(n), hi(n);
    for (std::size_t j = 0; j < n; ++j) {
        Rat mn = vertices_[0][j], mx = vertices_[0][j];
        for (const auto& v : vertices_) {
            mn = std::min(mn, v[j]);
            mx = std::max(mx, v[j]);
        }
        lo[j] = ceil_rat(mn * k);
        hi[j] = floor_rat(mx * k);
    }
    auto inside = [&](const std::vector<BigInt>& u) {
        for (const auto& fac : facets_) {
            BigInt s = 0;
            for (std::size_t j = 0; j < n; ++j) s += fac.normal[j] * u[j];
            if (Rat(s, 1) < fac.offset * k) return false;
        }
        return true;
    };
    std::vector<std::vector<BigInt>> out;
    std::vector<BigInt> u(n);
    for (BigInt x0 = lo[0]; x0 <= hi[0]; ++x0) {
        u[0] = x0;
        if (n == 1) {
            if (inside(u)) out.push_back(u);
            continue;
        }
        for (BigInt x1 = lo[1]; x1 <= hi[1]; ++x1) {
            u[1] = x1;
            if (n == 2) {
                if (inside(u)) out.push_back(u);
                continue;
            }
            for (BigInt x2 = lo[2]; x2 <= hi[2]; ++x2) {
                u[2] = x2;
                if (inside(u)) out.push_back(u);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// simplex splitting
// ---------------------------------------------------------------------------

std::vector<Simplex> triangulate_convex_points(const std::vector<RatVec>& points, int dim) {
    std::vector<RatVec> pts = dedupe_points(points);
    if (pts.size() < static_cast<std::size_t>(dim) + 1) return {};
    if (affine_rank(pts) < static_cast<std::size_t>(dim)) return {};
    if (pts.size() == static_cast<std::size_t>(dim) + 1) {
        Simplex s{pts};
        if (s.volume() > 0) return {std::move(s)};
        return {};
    }
    return LatticePolytope::from_vertices(pts).fan_triangulation();
}

std::vector<Simplex> split_simplex(const Simplex& s, const Hyperplane& h) {
    std::vector<int> sgn(s.v.size());
    bool pos = false, neg = false;
    for (std::size_t i = 0; i < s.v.size(); ++i) {
        sgn[i] = sign_of(h.eval(s.v[i]));
        pos |= sgn[i] > 0;
        neg |= sgn[i] < 0;
    }
    if (!pos || !neg) return {s};

    std::vector<RatVec> side_pos, side_neg;
    for (std::size_t i = 0; i < s.v.size(); ++i) {
        if (sgn[i] >= 0) side_pos.push_back(s.v[i]);
        if (sgn[i] <= 0) side_neg.push_back(s.v[i]);
    }
    for (std::size_t i = 0; i < s.v.size(); ++i)
        for (std::size_t j = i + 1; j < s.v.size(); ++j) {
            if (sgn[i] * sgn[j] >= 0) continue;
            const Rat a = h.eval(s.v[i]);
            const Rat b = h.eval(s.v[j]);
            const Rat t = a / (a - b);
            RatVec p = axpy(t, sub(s.v[j], s.v[i]), s.v[i]);
            side_pos.push_back(p);
            side_neg.push_back(p);
        }

    const int dim = static_cast<int>(s.v.size()) - 1;
    std::vector<Simplex> out = triangulate_convex_points(side_pos, dim);
    std::vector<Simplex> lower = triangulate_convex_points(side_neg, dim);
    out.insert(out.end(), lower.begin(), lower.end());

    Rat total = 0;
    for (const auto& piece : out) total += piece.volume();
    if (total != s.volume()) throw CreaseMismatch("split_simplex: split pieces do not cover the simplex");
    return out;
}

std::vector<Simplex> refine_by_hyperplanes(std::vector<Simplex> cells, const std::vector<Hyperplane>& planes) {
    // One pass per plane: pieces of a split never straddle earlier planes again.
    for (const auto& h : planes) {
        std::vector<Simplex> next;
        for (const auto& cell : cells) {
            std::vector<Simplex> pieces = split_simplex(cell, h);
            next.insert(next.end(), pieces.begin(), pieces.end());
        }
        cells = std::move(next);
    }
    return cells;
}

}  // namespace kstab
