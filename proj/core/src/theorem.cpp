#include "kstab/theorem.hpp"

#include "kstab/errors.hpp"

namespace kstab {

LieAlgebraPoint orthogonalize(const EquivariantModel& model, const LieAlgebraPoint& w,
                              const LieAlgebraPoint& v) {
    const Rat vv = norm_squared(model, v);
    if (vv <= 0) throw DegenerateNorm("orthogonalize: |v|^2 = " + rat_to_string(vv) + " is not positive");
    const Rat wv = inner_product(model, w, v);
    return axpy(-wv / vv, v, w);
}

ComposedDegeneration compose_degenerations(const EquivariantModel& model, const LieAlgebraPoint& v,
                                           const LieAlgebraPoint& v_y, long m) {
    model.check_point(v);
    model.check_point(v_y);
    ComposedDegeneration out;
    out.point = compose(model, v, v_y, Rat(m));
    out.df = donaldson_futaki(model, out.point);
    out.norm_squared = norm_squared(model, out.point);
    return out;
}

namespace {

// eps^2/|v_Y| variant of the final display, decided root-free:
// T <= 2 m eps sqrt(S) + eps^2/sqrt(T) with S = |v|^2, T = |v_Y|^2 > 0.
bool vy_variant_contradicts(const Rat& s, const Rat& t, const Rat& eps, long m) {
    // multiply by sqrt(T):  T^(3/2) - eps^2 <= 2 m eps sqrt(S T)
    if (t * t * t <= eps * eps * eps * eps) return true;  // left side nonpositive
    const Rat u = t * t * t + eps * eps * eps * eps - Rat(4 * m) * Rat(m) * eps * eps * s * t;
    if (u <= 0) return true;
    return u * u <= 4 * eps * eps * eps * eps * t * t * t;
}

InequalityTrace trace_at(const Rat& s, const Rat& t, const Rat& eps, long m) {
    InequalityTrace e;
    e.m = m;
    e.lhs = t;
    e.rhs = Rat(2 * m) * eps + eps * eps / s;
    e.proof_inequality_holds = e.lhs >= e.rhs;

    e.paper_lhs_squared = s * t * t;
    const Rat paper_rhs = Rat(2 * m) * eps * s + eps * eps;
    e.paper_rhs_squared = paper_rhs * paper_rhs;
    e.paper_variant_contradicts = e.paper_lhs_squared <= e.paper_rhs_squared;

    e.vy_variant_defined = t > 0;
    e.vy_variant_contradicts = e.vy_variant_defined && vy_variant_contradicts(s, t, eps, m);

    e.presquare_lhs_squared = s * (Rat(m) * Rat(m) * s + t);
    e.presquare_rhs = -(Rat(m) * s + eps);
    e.squaring_precondition_ok = e.presquare_lhs_squared > 0 && e.presquare_rhs < 0;
    return e;
}

}  // namespace

ContradictionCertificate contradiction_threshold(const Rat& norm_v_sq, const Rat& norm_w_sq,
                                                 const Rat& epsilon) {
    if (epsilon <= 0) throw InvalidEpsilon("contradiction_threshold: eps must be positive");
    if (norm_v_sq <= 0) throw DegenerateNorm("contradiction_threshold: |v|^2 must be positive");
    if (norm_w_sq < 0) throw NegativeNormSquare("contradiction_threshold: |v_Y|^2 must be nonnegative");

    ContradictionCertificate cert;
    cert.epsilon = epsilon;
    cert.norm_v_sq = norm_v_sq;
    cert.norm_w_sq = norm_w_sq;
    cert.pairing = 0;

    // least integer m with T < 2 m eps + eps^2/S: m > (T - eps^2/S)/(2 eps)
    const Rat threshold = (norm_w_sq - epsilon * epsilon / norm_v_sq) / (2 * epsilon);
    if (threshold < 0)
        cert.m0 = 0;
    else
        cert.m0 = static_cast<long>(floor_rat(threshold)) + 1;

    if (cert.m0 > 0) cert.trace.push_back(trace_at(norm_v_sq, norm_w_sq, epsilon, cert.m0 - 1));
    cert.trace.push_back(trace_at(norm_v_sq, norm_w_sq, epsilon, cert.m0));
    return cert;
}

VerificationReport verify_relative_semistability(const EquivariantModel& model, const LieAlgebraPoint& v,
                                                 const std::vector<LieAlgebraPoint>& directions) {
    model.check_point(v);
    const Rat vv = norm_squared(model, v);
    if (vv <= 0)
        throw DegenerateNorm("verify_relative_semistability: |v|^2 = " + rat_to_string(vv) +
                             " is not positive");
    const Rat df_v = donaldson_futaki(model, v);
    if (df_v > 0)
        throw NotACandidate("verify_relative_semistability: DF(v) = " + rat_to_string(df_v) +
                            " is positive, not an optimal-degeneration candidate");

    VerificationReport report;
    report.candidate = v;
    ExtremalScaling scaling = extremal_scaling(model, v);
    report.scaled_candidate = scaling.scaled;
    report.scale = scaling.scale;
    report.branch = scaling.semistable_branch ? Branch::Semistable : Branch::Extremal;

    const Rat s = norm_squared(model, report.scaled_candidate);
    report.pass = true;
    for (std::size_t i = 0; i < directions.size(); ++i) {
        DirectionRecord rec;
        rec.index = i;
        rec.direction = directions[i];
        rec.pairing_before = inner_product(model, directions[i], report.scaled_candidate);
        rec.orthogonalized = orthogonalize(model, directions[i], report.scaled_candidate);
        rec.pairing_after = inner_product(model, rec.orthogonalized, report.scaled_candidate);
        rec.relative_df = relative_df(model, rec.orthogonalized, report.scaled_candidate);
        rec.pass = rec.relative_df >= 0;
        if (!rec.pass) {
            // constructive refutation: eps = -DF(w~); past m0 the composed
            // degeneration strictly beats the candidate's normalized DF
            const Rat eps = -rec.relative_df;
            const Rat t = norm_squared(model, rec.orthogonalized);
            rec.certificate = contradiction_threshold(s, t, eps);
            report.pass = false;
        }
        report.directions.push_back(std::move(rec));
    }
    return report;
}

Rat calabi_lower_bound(const SearchResult& result) {
    if (result.value_squared_signed < 0) return -result.value_squared_signed;
    return 0;
}

}  // namespace kstab
