#pragma once

#include "paramod/scalar.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

namespace paramod {

using Vec = std::vector<Scalar>;

/// Dense row-major matrix of exact scalars.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols);
    Mat(std::initializer_list<std::initializer_list<Scalar>> rows);

    static Mat identity(std::size_t n);
    static Mat from_rows(const std::vector<Vec>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    Vec row(std::size_t r) const;
    void append_row(const Vec& row);
    Mat transpose() const;
    Mat select_rows(const std::vector<std::size_t>& idx) const;

    friend Mat operator*(const Mat& a, const Mat& b);
    friend Mat operator+(const Mat& a, const Mat& b);
    friend Mat operator-(const Mat& a, const Mat& b);
    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    Vec operator*(const Vec& v) const;

    Scalar trace() const;
    bool is_zero() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> a_;
};

/// Fraction-free (Bareiss) determinant; throws on non-square input.
Scalar det(const Mat& m);

/// Rank by fraction-free elimination.
std::size_t rank(const Mat& m);

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Mat& m);

/// Basis of the right kernel {x : m x = 0}.
std::vector<Vec> nullspace(const Mat& m);

/// Solution set {x0 + span(basis)} of m x = b.
struct AffineSpace {
    Vec particular;
    std::vector<Vec> basis;
    std::size_t dimension() const { return basis.size(); }
};

/// nullopt when the system is inconsistent.
std::optional<AffineSpace> solve_affine(const Mat& m, const Vec& b);

Scalar dot(const Vec& a, const Vec& b);

} // namespace paramod
