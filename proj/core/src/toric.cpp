#include "kstab/toric.hpp"

#include <algorithm>
#include <map>

#include "kstab/errors.hpp"
#include "kstab/linalg.hpp"

namespace kstab {

namespace {

Rat dot_int(const std::vector<BigInt>& g, const RatVec& x) {
    Rat s = 0;
    for (std::size_t i = 0; i < g.size(); ++i) s += Rat(g[i], 1) * x[i];
    return s;
}

Rat simplex_mean_integral(const Simplex& s, const RatVec& vertex_values) {
    // affine integrand: volume times the vertex mean
    Rat mean = 0;
    for (const auto& v : vertex_values) mean += v;
    mean /= Rat(static_cast<int>(vertex_values.size()));
    return s.volume() * mean;
}

Rat simplex_product_integral(const Simplex& s, const RatVec& u, const RatVec& v) {
    // degree-2 barycentric moments: int lam_i lam_j = vol (1+delta_ij)/((n+1)(n+2))
    const int n = static_cast<int>(s.v.size()) - 1;
    Rat sum_u = 0, sum_v = 0, sum_uv = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        sum_u += u[i];
        sum_v += v[i];
        sum_uv += u[i] * v[i];
    }
    return s.volume() * (sum_u * sum_v + sum_uv) / Rat((n + 1) * (n + 2));
}

}  // namespace

ToricIntegrator::ToricIntegrator(const LatticePolytope& p, const std::vector<PLConvexFunction>& functions)
    : p_(&p) {
    for (const auto& f : functions)
        if (f.dimension() != p.dimension())
            throw DimensionMismatch("ToricIntegrator: function dimension differs from polytope dimension");

    std::vector<Hyperplane> planes;
    for (const auto& f : functions)
        for (auto& h : f.crease_hyperplanes())
            if (std::find(planes.begin(), planes.end(), h) == planes.end()) planes.push_back(h);

    cells_ = refine_by_hyperplanes(p.fan_triangulation(), planes);

    Rat covered = 0;
    for (const auto& c : cells_) covered += c.volume();
    if (covered != p.volume()) throw TriangulationMismatch("ToricIntegrator: refined cells do not tile the polytope");

    values_.resize(functions.size());
    for (std::size_t fi = 0; fi < functions.size(); ++fi) {
        values_[fi].reserve(cells_.size());
        for (const auto& cell : cells_) {
            RatVec vals;
            vals.reserve(cell.v.size());
            Rat mean = 0;
            for (const auto& vert : cell.v) {
                vals.push_back(functions[fi].eval(vert));
                mean += vals.back();
            }
            mean /= Rat(static_cast<int>(cell.v.size()));
            // Jensen equality at the centroid certifies affinity on the cell
            if (functions[fi].eval(cell.centroid()) != mean)
                throw CreaseMismatch("ToricIntegrator: cell straddles a crease of function " + std::to_string(fi));
            values_[fi].push_back(std::move(vals));
        }
    }

    // boundary faces: cell facets whose vertices all lie on one polytope facet
    const std::size_t n = static_cast<std::size_t>(p.dimension());
    for (std::size_t ci = 0; ci < cells_.size(); ++ci) {
        const auto& cell = cells_[ci];
        for (std::size_t drop = 0; drop < cell.v.size(); ++drop) {
            std::vector<std::size_t> local;
            std::vector<RatVec> pts;
            for (std::size_t i = 0; i < cell.v.size(); ++i)
                if (i != drop) {
                    local.push_back(i);
                    pts.push_back(cell.v[i]);
                }
            for (const auto& fac : p.facets()) {
                bool on = true;
                for (const auto& q : pts)
                    if (dot_int(fac.normal, q) != fac.offset) {
                        on = false;
                        break;
                    }
                if (!on) continue;
                Rat sigma = n == 1 ? Rat(1) : facet_lattice_measure(pts, fac.normal);
                if (sigma > 0 || n == 1) boundary_.push_back(BoundaryFace{ci, local, sigma});
                break;  // an (n-1)-face lies in at most one facet hyperplane
            }
        }
    }
}

Rat ToricIntegrator::integral(std::size_t i) const {
    Rat total = 0;
    for (std::size_t c = 0; c < cells_.size(); ++c) total += simplex_mean_integral(cells_[c], values_[i][c]);
    return total;
}

Rat ToricIntegrator::boundary_integral(std::size_t i) const {
    Rat total = 0;
    for (const auto& bf : boundary_) {
        Rat mean = 0;
        for (std::size_t local : bf.local) mean += values_[i][bf.cell][local];
        mean /= Rat(static_cast<int>(bf.local.size()));
        total += bf.sigma * mean;
    }
    return total;
}

Rat ToricIntegrator::product_integral(std::size_t i, std::size_t j) const {
    Rat total = 0;
    for (std::size_t c = 0; c < cells_.size(); ++c)
        total += simplex_product_integral(cells_[c], values_[i][c], values_[j][c]);
    return total;
}

Rat integrate_pl(const LatticePolytope& p, const PLConvexFunction& f) {
    return ToricIntegrator(p, {f}).integral(0);
}

Rat integrate_boundary(const LatticePolytope& p, const PLConvexFunction& f) {
    return ToricIntegrator(p, {f}).boundary_integral(0);
}

Rat integrate_product(const LatticePolytope& p, const PLConvexFunction& f, const PLConvexFunction& g) {
    return ToricIntegrator(p, {f, g}).product_integral(0, 1);
}

Rat WeightAssignment::eigenvalue(const PLConvexFunction& f, const std::vector<BigInt>& u, long k) const {
    RatVec x(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) x[i] = Rat(u[i], k);
    return Rat(k) * (shift - f.eval(x));
}

EquivariantModel build_model(const LatticePolytope& p, const std::vector<PLConvexFunction>& functions,
                             const std::vector<Rat>& shifts, const std::vector<std::string>& labels) {
    if (!shifts.empty() && shifts.size() != functions.size())
        throw DimensionMismatch("build_model: one shift per function required");
    if (!labels.empty() && labels.size() != functions.size())
        throw DimensionMismatch("build_model: one label per function required");

    std::vector<Rat> r(functions.size());
    for (std::size_t i = 0; i < functions.size(); ++i) {
        const Rat fmax = functions[i].max_over(p);
        r[i] = shifts.empty() ? fmax : shifts[i];
        if (r[i] < fmax)
            throw ShiftTooSmall("build_model: shift " + rat_to_string(r[i]) + " is below max f = " +
                                rat_to_string(fmax) + " for function " + std::to_string(i));
    }

    ToricIntegrator integ(p, functions);
    const Rat a0 = p.volume();
    const Rat a1 = p.boundary_volume() / 2;

    std::vector<ActionData> actions;
    for (std::size_t i = 0; i < functions.size(); ++i) {
        WeightData w;
        w.b0 = r[i] * a0 - integ.integral(i);
        w.b1 = r[i] * a1 - integ.boundary_integral(i) / 2;
        actions.push_back(ActionData{labels.empty() ? "f" + std::to_string(i) : labels[i], w});
    }

    RatMatrix d0(functions.size(), functions.size());
    for (std::size_t i = 0; i < functions.size(); ++i)
        for (std::size_t j = i; j < functions.size(); ++j) {
            const Rat v = r[i] * r[j] * a0 - r[i] * integ.integral(j) - r[j] * integ.integral(i) +
                          integ.product_integral(i, j);
            d0.at(i, j) = v;
            d0.at(j, i) = v;
        }

    return EquivariantModel(HilbertData{p.dimension(), a0, a1}, std::move(actions), std::move(d0), 1);
}

RationalPolynomial fit_polynomial_with_check(const std::vector<std::pair<Rat, Rat>>& samples, int degree) {
    if (static_cast<int>(samples.size()) < degree + 1)
        throw Error("fit_polynomial_with_check: need at least degree+1 samples");
    std::vector<std::pair<Rat, Rat>> head(samples.begin(), samples.begin() + degree + 1);
    RationalPolynomial fit = interpolate(head);
    for (std::size_t i = degree + 1; i < samples.size(); ++i)
        if (fit.evaluate(samples[i].first) != samples[i].second)
            throw NonPolynomialData("fit_polynomial_with_check: sample at k = " + rat_to_string(samples[i].first) +
                                    " is inconsistent with a degree-" + std::to_string(degree) + " fit");
    return fit;
}

OracleFit discrete_weight_oracle(const LatticePolytope& p, const PLConvexFunction& f, const Rat& shift,
                                 const std::vector<long>& k_samples) {
    const int n = p.dimension();
    if (shift < f.max_over(p))
        throw ShiftTooSmall("discrete_weight_oracle: shift below max f");
    std::vector<long> samples = k_samples;
    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
    if (!samples.empty() && samples.front() < 1) throw Error("discrete_weight_oracle: k samples must be >= 1");
    if (static_cast<int>(samples.size()) < n + 3)
        throw Error("discrete_weight_oracle: need at least n+3 distinct k samples");

    // stride: smallest dilation making every refined cell vertex integral,
    // so the restricted sums are honest polynomials on stride * Z
    ToricIntegrator integ(p, {f});
    BigInt stride_big = 1;
    for (const auto& cell : integ.cells())
        for (const auto& vert : cell.v)
            for (const auto& coord : vert) stride_big = lcm(stride_big, den(coord));
    const long stride = static_cast<long>(stride_big);

    WeightAssignment wa{shift};
    OracleFit out;
    out.stride = stride;

    std::vector<std::pair<Rat, Rat>> h_samples, w_samples, d_samples;
    for (long s : samples) {
        const long k = stride * s;
        out.dilations.push_back(k);
        Rat w_sum = 0, d_sum = 0;
        const auto points = p.lattice_points(k);
        for (const auto& u : points) {
            const Rat ev = wa.eigenvalue(f, u, k);
            if (ev < 0) throw Error("discrete_weight_oracle: negative eigenvalue; shift invariant violated");
            w_sum += ev;
            d_sum += ev * ev;
        }
        h_samples.emplace_back(Rat(k), Rat(static_cast<long>(points.size())));
        w_samples.emplace_back(Rat(k), w_sum);
        d_samples.emplace_back(Rat(k), d_sum);
    }

    out.hilbert_fit = fit_polynomial_with_check(h_samples, n);
    out.weight_fit = fit_polynomial_with_check(w_samples, n + 1);
    out.pairing_fit = fit_polynomial_with_check(d_samples, n + 2);
    out.a0 = out.hilbert_fit.coefficient(n);
    out.a1 = n >= 1 ? out.hilbert_fit.coefficient(n - 1) : Rat(0);
    out.b0 = out.weight_fit.coefficient(n + 1);
    out.b1 = out.weight_fit.coefficient(n);
    out.d0_diag = out.pairing_fit.coefficient(n + 2);
    return out;
}

}  // namespace kstab
