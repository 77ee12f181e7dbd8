#include "kstab/linalg.hpp"

#include "kstab/errors.hpp"

namespace kstab {

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rat>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionMismatch("RatMatrix: ragged initializer");
        for (const auto& x : r) a_.push_back(x);
    }
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::transposed() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

RatMatrix RatMatrix::operator*(const RatMatrix& other) const {
    if (cols_ != other.rows_) throw DimensionMismatch("RatMatrix multiply: inner dimensions differ");
    RatMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& aik = at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) out.at(i, j) += aik * other.at(k, j);
        }
    return out;
}

RatVec RatMatrix::operator*(const RatVec& v) const {
    if (cols_ != v.size()) throw DimensionMismatch("RatMatrix apply: size mismatch");
    RatVec out(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
    return out;
}

Rat dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: size mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

RatVec scaled(const RatVec& v, const Rat& c) {
    RatVec out = v;
    for (auto& x : out) x *= c;
    return out;
}

RatVec add(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("add: size mismatch");
    RatVec out = a;
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

RatVec axpy(const Rat& m, const RatVec& v, const RatVec& w) {
    if (v.size() != w.size()) throw DimensionMismatch("axpy: size mismatch");
    RatVec out = w;
    for (std::size_t i = 0; i < v.size(); ++i) out[i] += m * v[i];
    return out;
}

namespace {

struct Elimination {
    RatMatrix m;                    // row echelon form
    std::vector<std::size_t> pivot_cols;
    std::vector<std::size_t> row_order;
};

// Plain rational Gaussian elimination; pivots are exact nonzero tests
// (first nonzero entry in the column), no thresholds anywhere.
Elimination eliminate(RatMatrix m) {
    Elimination e{std::move(m), {}, {}};
    const std::size_t rows = e.m.rows(), cols = e.m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && e.m.at(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(e.m.at(p, j), e.m.at(r, j));
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (e.m.at(i, c) == 0) continue;
            Rat f = e.m.at(i, c) / e.m.at(r, c);
            e.m.at(i, c) = 0;
            for (std::size_t j = c + 1; j < cols; ++j) e.m.at(i, j) -= f * e.m.at(r, j);
        }
        e.pivot_cols.push_back(c);
        ++r;
    }
    return e;
}

}  // namespace

RatMatrix solve_linear(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != a.cols()) throw DimensionMismatch("solve_linear: matrix not square");
    if (a.rows() != b.rows()) throw DimensionMismatch("solve_linear: rhs size mismatch");
    const std::size_t n = a.rows(), m = b.cols();
    // augmented elimination
    RatMatrix aug(n, n + m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < m; ++j) aug.at(i, n + j) = b.at(i, j);
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = r;
        while (p < n && aug.at(p, c) == 0) ++p;
        if (p == n) throw SingularMatrix(c, "solve_linear: singular matrix, no pivot in column " + std::to_string(c));
        if (p != r)
            for (std::size_t j = 0; j < n + m; ++j) std::swap(aug.at(p, j), aug.at(r, j));
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r || aug.at(i, c) == 0) continue;
            Rat f = aug.at(i, c) / aug.at(r, c);
            for (std::size_t j = c; j < n + m; ++j) aug.at(i, j) -= f * aug.at(r, j);
        }
        ++r;
    }
    RatMatrix x(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) x.at(i, j) = aug.at(i, n + j) / aug.at(i, i);
    return x;
}

RatVec solve_linear(const RatMatrix& a, const RatVec& b) {
    RatMatrix rhs(b.size(), 1);
    for (std::size_t i = 0; i < b.size(); ++i) rhs.at(i, 0) = b[i];
    RatMatrix x = solve_linear(a, rhs);
    RatVec out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = x.at(i, 0);
    return out;
}

RatMatrix inverse(const RatMatrix& a) { return solve_linear(a, RatMatrix::identity(a.rows())); }

std::size_t rank(const RatMatrix& a) { return eliminate(a).pivot_cols.size(); }

std::vector<RatVec> null_space(const RatMatrix& a) {
    Elimination e = eliminate(a);
    const std::size_t cols = a.cols();
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        RatVec v(cols, Rat(0));
        v[free_col] = 1;
        // back substitution over the echelon rows
        for (std::size_t ri = e.pivot_cols.size(); ri-- > 0;) {
            const std::size_t pc = e.pivot_cols[ri];
            Rat s = 0;
            for (std::size_t j = pc + 1; j < cols; ++j) s += e.m.at(ri, j) * v[j];
            v[pc] = -s / e.m.at(ri, pc);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

bool is_positive_definite(const RatMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("is_positive_definite: matrix not square");
    const std::size_t n = a.rows();
    RatMatrix m = a;
    for (std::size_t k = 0; k < n; ++k) {
        if (m.at(k, k) <= 0) return false;
        for (std::size_t i = k + 1; i < n; ++i) {
            Rat f = m.at(i, k) / m.at(k, k);
            for (std::size_t j = k; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
        }
    }
    return true;
}

}  // namespace kstab
