#include "paramod/matrix.hpp"

#include "paramod/error.hpp"

#include <utility>

namespace paramod {

Mat::Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Scalar(0)) {}

Mat::Mat(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
        if (r.size() != cols_) fail_precondition("ragged matrix literal");
        a_.insert(a_.end(), r.begin(), r.end());
    }
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    Mat m(0, cols);
    for (const auto& r : rows) m.append_row(r);
    return m;
}

Vec Mat::row(std::size_t r) const {
    return Vec(a_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
               a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void Mat::append_row(const Vec& row) {
    if (row.size() != cols_) fail_precondition("row length mismatch");
    a_.insert(a_.end(), row.begin(), row.end());
    ++rows_;
}

Mat Mat::transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Mat Mat::select_rows(const std::vector<std::size_t>& idx) const {
    Mat m(0, cols_);
    for (auto r : idx) m.append_row(row(r));
    return m;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) fail_precondition("matrix product shape mismatch");
    Mat m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += x * b(k, j);
        }
    return m;
}

Mat operator+(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail_precondition("matrix sum shape mismatch");
    Mat m = a;
    for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] += b.a_[k];
    return m;
}

Mat operator-(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail_precondition("matrix difference shape mismatch");
    Mat m = a;
    for (std::size_t k = 0; k < m.a_.size(); ++k) m.a_[k] -= b.a_[k];
    return m;
}

Vec Mat::operator*(const Vec& v) const {
    if (v.size() != cols_) fail_precondition("matrix-vector shape mismatch");
    Vec out(rows_, Scalar(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
    return out;
}

Scalar Mat::trace() const {
    Scalar t(0);
    for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
    return t;
}

bool Mat::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

namespace {

// Bareiss elimination on a copy; returns (rank, sign-adjusted last pivot) for square input.
std::pair<std::size_t, Scalar> bareiss(Mat m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    Scalar prev(1);
    int sign = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m(p, c).is_zero()) ++p;
        if (p == rows) continue;
        if (p != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
            sign = -sign;
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
            m(i, c) = Scalar(0);
        }
        prev = m(r, c);
        ++r;
    }
    Scalar d = (rows == cols && r == rows) ? (sign > 0 ? prev : -prev) : Scalar(0);
    return {r, d};
}

} // namespace

Scalar det(const Mat& m) {
    if (m.rows() != m.cols()) fail_precondition("determinant of a non-square matrix");
    if (m.rows() == 0) return Scalar(1);
    return bareiss(m).second;
}

std::size_t rank(const Mat& m) {
    return bareiss(m).first;
}

std::vector<std::size_t> rref(Mat& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Scalar inv = Scalar(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Scalar f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<Vec> nullspace(const Mat& m) {
    Mat a = m;
    auto pivots = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v(a.cols(), Scalar(0));
        v[f] = Scalar(1);
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -a(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<AffineSpace> solve_affine(const Mat& m, const Vec& b) {
    if (b.size() != m.rows()) fail_precondition("right-hand side length mismatch");
    const std::size_t n = m.cols();
    Mat aug(m.rows(), n + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n) = b[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == n) return std::nullopt;
    AffineSpace sol;
    sol.particular.assign(n, Scalar(0));
    for (std::size_t k = 0; k < pivots.size(); ++k) sol.particular[pivots[k]] = aug(k, n);
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        Vec v(n, Scalar(0));
        v[f] = Scalar(1);
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -aug(k, f);
        sol.basis.push_back(std::move(v));
    }
    return sol;
}

Scalar dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) fail_precondition("dot product length mismatch");
    Scalar s(0);
    for (std::size_t k = 0; k < a.size(); ++k)
        if (!a[k].is_zero() && !b[k].is_zero()) s += a[k] * b[k];
    return s;
}

} // namespace paramod
