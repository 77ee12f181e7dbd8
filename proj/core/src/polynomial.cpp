#include "kstab/polynomial.hpp"

#include <algorithm>

#include "kstab/errors.hpp"

namespace kstab {

namespace {

void strip_trailing_zeros(RatVec& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

}  // namespace

RationalPolynomial::RationalPolynomial(RatVec coefficients) : coeffs_(std::move(coefficients)) {
    strip_trailing_zeros(coeffs_);
}

RationalPolynomial RationalPolynomial::constant(const Rat& c) {
    return RationalPolynomial(RatVec{c});
}

Rat RationalPolynomial::coefficient(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : Rat(0);
}

Rat RationalPolynomial::evaluate(const Rat& k) const {
    Rat acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * k + *it;
    return acc;
}

RationalPolynomial RationalPolynomial::operator+(const RationalPolynomial& other) const {
    RatVec out(std::max(coeffs_.size(), other.coeffs_.size()), Rat(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) out[i] += other.coeffs_[i];
    return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::operator-(const RationalPolynomial& other) const {
    return *this + other.scaled(Rat(-1));
}

RationalPolynomial RationalPolynomial::operator*(const RationalPolynomial& other) const {
    if (coeffs_.empty() || other.coeffs_.empty()) return RationalPolynomial();
    RatVec out(coeffs_.size() + other.coeffs_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
    return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::scaled(const Rat& c) const {
    RatVec out = coeffs_;
    for (auto& x : out) x *= c;
    return RationalPolynomial(std::move(out));
}

RationalPolynomial interpolate(const std::vector<std::pair<Rat, Rat>>& samples) {
    if (samples.empty()) throw DuplicateAbscissa("interpolate: need at least one sample");
    const std::size_t n = samples.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (samples[i].first == samples[j].first)
                throw DuplicateAbscissa("interpolate: duplicate abscissa " + rat_to_string(samples[i].first));

    // Newton divided differences, then expansion to the monomial basis.
    RatVec dd(n);
    for (std::size_t i = 0; i < n; ++i) dd[i] = samples[i].second;
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (samples[i].first - samples[i - level].first);

    RationalPolynomial result;
    RationalPolynomial basis = RationalPolynomial::constant(Rat(1));
    for (std::size_t i = 0; i < n; ++i) {
        result = result + basis.scaled(dd[i]);
        basis = basis * RationalPolynomial(RatVec{-samples[i].first, Rat(1)});
    }
    return result;
}

}  // namespace kstab
