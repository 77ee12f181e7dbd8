#pragma once

#include <optional>
#include <vector>

#include "kstab/invariants.hpp"
#include "kstab/optimize.hpp"

namespace kstab {

/// One traced value of the refutation's inequality chain at a fixed m. The
/// normative inequality is the exact rearrangement |v_Y|^2 >= 2 m eps +
/// eps^2/|v|^2; two variant normalizations (eps^2/|v| with a 2 m eps |v|
/// term, and the eps^2/|v_Y| denominator) are recorded through root-free
/// squared transports without deciding between them.
struct InequalityTrace {
    long m = 0;
    Rat lhs;                             // |v_Y|^2
    Rat rhs;                             // 2 m eps + eps^2/|v|^2
    bool proof_inequality_holds = false; // lhs >= rhs

    Rat paper_lhs_squared;               // |v|^2 |v_Y|^4
    Rat paper_rhs_squared;               // (2 m eps |v|^2 + eps^2)^2
    bool paper_variant_contradicts = false;

    bool vy_variant_defined = false;     // needs |v_Y|^2 > 0
    bool vy_variant_contradicts = false;

    Rat presquare_lhs_squared;           // |v|^2 |v_Y + m v|^2, positive iff lhs side negative
    Rat presquare_rhs;                   // -(m |v|^2 + eps), negative for m >= 0
    bool squaring_precondition_ok = false;
};

struct ContradictionCertificate {
    Rat epsilon;
    Rat norm_v_sq;
    Rat norm_w_sq;
    Rat pairing;   // orthogonality is assumed; recorded as 0
    long m0 = 0;
    std::vector<InequalityTrace> trace;  // at m0-1 (when >= 0) and m0
};

/// w - (<w,v>/|v|^2) v; pairs to zero with v exactly. Requires |v|^2 > 0.
LieAlgebraPoint orthogonalize(const EquivariantModel& model, const LieAlgebraPoint& w,
                              const LieAlgebraPoint& v);

struct ComposedDegeneration {
    LieAlgebraPoint point;  // m v + v_Y
    Rat df;                 // m DF(v) + DF(v_Y), exactly
    Rat norm_squared;       // m^2|v|^2 + 2m<v,v_Y> + |v_Y|^2, exactly
};

ComposedDegeneration compose_degenerations(const EquivariantModel& model, const LieAlgebraPoint& v,
                                           const LieAlgebraPoint& v_y, long m);

/// Least integer m0 >= 0 at which the proof's inequality fails, i.e.
/// |v_Y|^2 < 2 m eps + eps^2/|v|^2, assuming the extremal normalization
/// DF(v) = -|v|^2 and <v, v_Y> = 0. At that m0 the composed degeneration's
/// normalized DF strictly beats v's (root-free); at m0 - 1 it does not.
ContradictionCertificate contradiction_threshold(const Rat& norm_v_sq, const Rat& norm_w_sq,
                                                 const Rat& epsilon);

enum class Branch { Extremal, Semistable };

struct DirectionRecord {
    std::size_t index = 0;
    LieAlgebraPoint direction;
    LieAlgebraPoint orthogonalized;
    Rat pairing_before;
    Rat pairing_after;  // exactly 0
    Rat relative_df;
    bool pass = false;
    std::optional<ContradictionCertificate> certificate;  // present on failures
};

struct VerificationReport {
    LieAlgebraPoint candidate;
    LieAlgebraPoint scaled_candidate;
    Rat scale;
    Branch branch = Branch::Extremal;
    std::vector<DirectionRecord> directions;
    bool pass = false;
};

/// Executable verdict for the candidate optimal direction v: scale so that
/// DF(v) = -|v|^2 (or take the easier DF(v) = 0 branch), orthogonalize each
/// supplied direction, and test relative DF >= 0 exactly. Failing directions
/// come with the constructive refutation threshold. Throws NotACandidate when
/// DF(v) > 0 and DegenerateNorm when |v|^2 <= 0.
VerificationReport verify_relative_semistability(const EquivariantModel& model, const LieAlgebraPoint& v,
                                                 const std::vector<LieAlgebraPoint>& directions);

/// Nonnegative square of the Calabi-functional lower bound read off a search
/// result: the negative of the found minimum when that minimum is negative,
/// else zero. A bound relative to the searched family only.
Rat calabi_lower_bound(const SearchResult& result);

}  // namespace kstab
