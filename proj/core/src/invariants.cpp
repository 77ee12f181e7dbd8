#include "kstab/invariants.hpp"

#include "kstab/errors.hpp"

namespace kstab {

EquivariantModel::EquivariantModel(HilbertData hilbert, std::vector<ActionData> actions, RatMatrix d0,
                                   int exponent_r)
    : hilbert_(std::move(hilbert)), exponent_r_(exponent_r), actions_(std::move(actions)), d0_(std::move(d0)) {
    if (hilbert_.a0 <= 0) throw InvalidModel("EquivariantModel: a0 must be positive");
    if (hilbert_.n < 0) throw InvalidModel("EquivariantModel: negative dimension");
    if (exponent_r_ < 1) throw InvalidModel("EquivariantModel: exponent must be a positive integer");
    const std::size_t n = actions_.size();
    if (d0_.rows() != n || d0_.cols() != n)
        throw InvalidModel("EquivariantModel: d0 must be indexed by action pairs");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j)
            if (d0_.at(i, j) != d0_.at(j, i)) throw InvalidModel("EquivariantModel: d0 not symmetric");
        // diagonal trace-free norms must be nonnegative
        if (d0_.at(i, i) - actions_[i].weight.b0 * actions_[i].weight.b0 / hilbert_.a0 < 0)
            throw InvalidModel("EquivariantModel: negative trace-free norm on action '" + actions_[i].label + "'");
    }
}

void EquivariantModel::check_point(const LieAlgebraPoint& v) const {
    if (v.size() != actions_.size())
        throw DimensionMismatch("LieAlgebraPoint has " + std::to_string(v.size()) + " coefficients, model has " +
                                std::to_string(actions_.size()) + " actions");
}

Rat EquivariantModel::b0(const LieAlgebraPoint& v) const {
    check_point(v);
    Rat s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * actions_[i].weight.b0;
    return s;
}

Rat EquivariantModel::b1(const LieAlgebraPoint& v) const {
    check_point(v);
    Rat s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * actions_[i].weight.b1;
    return s;
}

Rat EquivariantModel::d0_pair(const LieAlgebraPoint& v, const LieAlgebraPoint& w) const {
    check_point(v);
    check_point(w);
    Rat s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < w.size(); ++j) s += v[i] * d0_.at(i, j) * w[j];
    }
    return s;
}

Rat donaldson_futaki(const EquivariantModel& model, const LieAlgebraPoint& v) {
    const Rat b0 = model.b0(v);
    const Rat b1 = model.b1(v);
    return (b0 * model.hilbert().a1 - b1 * model.hilbert().a0) / model.hilbert().a0;
}

Rat inner_product(const EquivariantModel& model, const LieAlgebraPoint& v, const LieAlgebraPoint& w,
                  Convention convention) {
    const Rat d = model.d0_pair(v, w);
    const Rat b0v = model.b0(v);
    const Rat b0w = model.b0(w);
    if (convention == Convention::TraceFree) return d - b0v * b0w / model.hilbert().a0;
    return (d - b0v * b0w) / model.hilbert().a0;
}

Rat norm_squared(const EquivariantModel& model, const LieAlgebraPoint& v, Convention convention) {
    return inner_product(model, v, v, convention);
}

Rat l2_norm(const EquivariantModel& model, const LieAlgebraPoint& v, const Rat& precision,
            Convention convention) {
    const Rat sq = norm_squared(model, v, convention);
    if (sq < 0)
        throw NegativeNormSquare("l2_norm: norm square " + rat_to_string(sq) +
                                 " is negative under the selected convention");
    return sqrt_approx(sq, precision);
}

LieAlgebraPoint compose(const EquivariantModel& model, const LieAlgebraPoint& v, const LieAlgebraPoint& w,
                        const Rat& m) {
    model.check_point(v);
    model.check_point(w);
    return axpy(m, v, w);
}

Rat relative_df(const EquivariantModel& model, const LieAlgebraPoint& alpha, const LieAlgebraPoint& beta,
                Convention convention) {
    const Rat df = donaldson_futaki(model, alpha);
    const Rat pairing = inner_product(model, alpha, beta, convention);
    if (pairing == 0) return df;
    const Rat denom = convention == Convention::TraceFree ? inner_product(model, beta, beta, convention)
                                                          : inner_product(model, alpha, alpha, convention);
    if (denom == 0)
        throw ZeroDenominator("relative_df: denominator pairing vanishes while <alpha,beta> = " +
                              rat_to_string(pairing));
    // r = 1 internally: weight data is stored pre-divided by the exponent.
    return df - pairing / denom * donaldson_futaki(model, beta);
}

ExtremalScaling extremal_scaling(const EquivariantModel& model, const LieAlgebraPoint& v) {
    const Rat sq = norm_squared(model, v);
    if (sq <= 0) throw DegenerateNorm("extremal_scaling: |v|^2 = " + rat_to_string(sq) + " is not positive");
    const Rat df = donaldson_futaki(model, v);
    if (df > 0) throw PositiveDF("extremal_scaling: DF(v) = " + rat_to_string(df) + " is positive");
    if (df == 0) return ExtremalScaling{v, Rat(1), true};
    const Rat c = -df / sq;
    return ExtremalScaling{scaled(v, c), c, false};
}

NormalizedDF normalized_df(const EquivariantModel& model, const LieAlgebraPoint& v, const Rat& precision) {
    const Rat sq = norm_squared(model, v);
    if (sq <= 0) throw DegenerateNorm("normalized_df: |v|^2 = " + rat_to_string(sq) + " is not positive");
    const Rat df = donaldson_futaki(model, v);
    NormalizedDF out;
    out.value_squared_signed = Rat(sign_of(df)) * df * df / sq;
    out.approx = Rat(sign_of(df)) * sqrt_approx(df * df / sq, precision);
    return out;
}

Rat default_precision() { return Rat(1, 1000000000); }

}  // namespace kstab
