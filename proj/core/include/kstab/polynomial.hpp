#pragma once

#include <utility>
#include <vector>

#include "kstab/rational.hpp"

namespace kstab {

/// Dense polynomial in one variable with exact rational coefficients.
/// Canonical form: trailing zero coefficients stripped; the zero polynomial
/// has an empty coefficient sequence.
class RationalPolynomial {
  public:
    RationalPolynomial() = default;
    explicit RationalPolynomial(RatVec coefficients);

    static RationalPolynomial constant(const Rat& c);

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const RatVec& coefficients() const { return coeffs_; }

    /// Coefficient of k^i (zero beyond the stored degree).
    Rat coefficient(std::size_t i) const;

    Rat evaluate(const Rat& k) const;

    RationalPolynomial operator+(const RationalPolynomial& other) const;
    RationalPolynomial operator-(const RationalPolynomial& other) const;
    RationalPolynomial operator*(const RationalPolynomial& other) const;
    RationalPolynomial scaled(const Rat& c) const;

    bool operator==(const RationalPolynomial& other) const { return coeffs_ == other.coeffs_; }

  private:
    RatVec coeffs_;
};

/// Unique polynomial of degree < samples.size() through the given points.
/// Throws DuplicateAbscissa when two samples share an abscissa.
RationalPolynomial interpolate(const std::vector<std::pair<Rat, Rat>>& samples);

}  // namespace kstab
