#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "kstab/rational.hpp"

namespace kstab {

/// Dense rational matrix; all operations are exact.
class RatMatrix {
  public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}
    RatMatrix(std::initializer_list<std::initializer_list<Rat>> rows);

    static RatMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    RatMatrix transposed() const;
    RatMatrix operator*(const RatMatrix& other) const;
    RatVec operator*(const RatVec& v) const;

    bool operator==(const RatMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && a_ == other.a_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    RatVec a_;
};

Rat dot(const RatVec& a, const RatVec& b);
RatVec scaled(const RatVec& v, const Rat& c);
RatVec add(const RatVec& a, const RatVec& b);
RatVec axpy(const Rat& m, const RatVec& v, const RatVec& w);  // m*v + w

/// Exact solution of A x = b for square nonsingular A (rational Gaussian
/// elimination, first-nonzero pivoting). Throws SingularMatrix with the
/// deficient column index otherwise.
RatVec solve_linear(const RatMatrix& a, const RatVec& b);

/// Multi right-hand-side variant: solves A X = B column by column.
RatMatrix solve_linear(const RatMatrix& a, const RatMatrix& b);

RatMatrix inverse(const RatMatrix& a);

std::size_t rank(const RatMatrix& a);

/// Basis of the null space {x : A x = 0}.
std::vector<RatVec> null_space(const RatMatrix& a);

/// Symmetric positive-definiteness via exact elimination (all pivots positive).
bool is_positive_definite(const RatMatrix& a);

}  // namespace kstab
