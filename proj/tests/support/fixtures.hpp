#pragma once

#include <cstdint>
#include <vector>

#include "kstab/invariants.hpp"
#include "kstab/pl_function.hpp"
#include "kstab/polytope.hpp"

namespace kstab::testing {

// deterministic xorshift64* generator for reproducible fixtures
struct TinyRng {
    std::uint64_t state;

    explicit TinyRng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next() {
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        return state * 0x2545f4914f6cdd1dull;
    }

    long integer(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }

    Rat rational(long lo = -9, long hi = 9, long max_den = 9) {
        return Rat(integer(lo, hi), integer(1, max_den));
    }

    Rat nonzero_rational(long lo = -9, long hi = 9, long max_den = 9) {
        Rat r = rational(lo, hi, max_den);
        while (r == 0) r = rational(lo, hi, max_den);
        return r;
    }
};

inline LatticePolytope segment() { return LatticePolytope::from_vertices({{Rat(0)}, {Rat(1)}}); }

inline LatticePolytope unit_square() {
    return LatticePolytope::from_vertices({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}});
}

inline LatticePolytope unit_cube() {
    std::vector<RatVec> v;
    for (int x = 0; x <= 1; ++x)
        for (int y = 0; y <= 1; ++y)
            for (int z = 0; z <= 1; ++z) v.push_back({Rat(x), Rat(y), Rat(z)});
    return LatticePolytope::from_vertices(v);
}

inline LatticePolytope simplex2() {
    return LatticePolytope::from_vertices({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
}

inline LatticePolytope simplex3() {
    return LatticePolytope::from_vertices(
        {{Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}});
}

inline LatticePolytope trapezoid() {
    return LatticePolytope::from_vertices({{Rat(0), Rat(0)}, {Rat(2), Rat(0)}, {Rat(1), Rat(1)}, {Rat(0), Rat(1)}});
}

/// max(0, 2x - 1) on the line
inline PLConvexFunction ramp() {
    return PLConvexFunction::max_affine({AffinePiece{{Rat(2)}, Rat(-1)}, AffinePiece{{Rat(0)}, Rat(0)}});
}

/// max(0, x - 1/2) on the line
inline PLConvexFunction crease_half() {
    return PLConvexFunction::max_affine({AffinePiece{{Rat(1)}, Rat(-1, 2)}, AffinePiece{{Rat(0)}, Rat(0)}});
}

inline PLConvexFunction linear(const RatVec& grad, const Rat& constant = Rat(0)) {
    return PLConvexFunction::max_affine({AffinePiece{grad, constant}});
}

inline PLConvexFunction constant_fn(int dim, const Rat& c) {
    return PLConvexFunction::max_affine({AffinePiece{RatVec(dim, Rat(0)), c}});
}

/// Synthetic model with prescribed Futaki vector and trace-free Gram:
/// DF(e_i) = futaki[i] and <e_i, e_j> = gram(i,j) exactly.
inline EquivariantModel synthetic_model(const RatVec& futaki, const RatMatrix& gram, const Rat& a0 = Rat(1),
                                        const Rat& a1 = Rat(1), const RatVec& b0 = {}) {
    const std::size_t n = futaki.size();
    RatVec b0v = b0.empty() ? RatVec(n, Rat(0)) : b0;
    std::vector<ActionData> actions;
    for (std::size_t i = 0; i < n; ++i) {
        WeightData w;
        w.b0 = b0v[i];
        w.b1 = (b0v[i] * a1 - futaki[i] * a0) / a0;
        actions.push_back(ActionData{"a" + std::to_string(i), w});
    }
    RatMatrix d0(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d0.at(i, j) = gram.at(i, j) + b0v[i] * b0v[j] / a0;
    return EquivariantModel(HilbertData{2, a0, a1}, std::move(actions), std::move(d0), 1);
}

/// Random positive-definite Gram: M^T M + I over small integers.
inline RatMatrix random_gram(TinyRng& rng, std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = Rat(rng.integer(-3, 3));
    RatMatrix g = m.transposed() * m;
    for (std::size_t i = 0; i < n; ++i) g.at(i, i) += 1;
    return g;
}

inline EquivariantModel random_model(TinyRng& rng, std::size_t n) {
    RatVec futaki(n);
    for (auto& f : futaki) f = rng.rational(-5, 5, 5);
    RatVec b0(n);
    for (auto& b : b0) b = rng.rational(-3, 3, 3);
    const Rat a0 = Rat(rng.integer(1, 4), rng.integer(1, 3));
    const Rat a1 = rng.rational(-4, 4, 3);
    return synthetic_model(futaki, random_gram(rng, n), a0, a1, b0);
}

inline LieAlgebraPoint random_point(TinyRng& rng, std::size_t n) {
    LieAlgebraPoint v(n);
    for (auto& c : v) c = rng.rational(-6, 6, 6);
    return v;
}

}  // namespace kstab::testing
