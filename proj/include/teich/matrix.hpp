#pragma once

#include "errors.hpp"
#include "rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace teich {

/// Small row-major dense matrix. Sizes here are a handful of cylinders,
/// so nothing is blocked or sparse.
template <Scalar S>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, S fill = S(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    DenseMatrix(std::initializer_list<std::initializer_list<S>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw InvalidInput("ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    DenseMatrix transposed() const {
        DenseMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    template <Scalar T>
    DenseMatrix<T> cast() const {
        DenseMatrix<T> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out(i, j) = scalar_cast<T>((*this)(i, j));
        return out;
    }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<S> data_;
};

template <Scalar S>
DenseMatrix<S> operator*(const DenseMatrix<S>& a, const DenseMatrix<S>& b) {
    if (a.cols() != b.rows())
        throw InvalidInput("matrix product dimension mismatch");
    DenseMatrix<S> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

template <Scalar S>
DenseMatrix<S> operator*(S s, DenseMatrix<S> m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            m(i, j) *= s;
    return m;
}

template <Scalar S>
std::vector<S> operator*(const DenseMatrix<S>& a, const std::vector<S>& x) {
    if (a.cols() != x.size())
        throw InvalidInput("matrix-vector dimension mismatch");
    std::vector<S> y(a.rows(), S(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            y[i] += a(i, j) * x[j];
    return y;
}

enum class Side { Horizontal, Vertical };

inline Side opposite(Side s) noexcept { return s == Side::Horizontal ? Side::Vertical : Side::Horizontal; }

inline const char* to_string(Side s) noexcept { return s == Side::Horizontal ? "horizontal" : "vertical"; }

inline Side parse_side(const std::string& s) {
    if (s == "horizontal")
        return Side::Horizontal;
    if (s == "vertical")
        return Side::Vertical;
    throw InvalidInput("unknown side \"" + s + "\"");
}

/// Geometric intersection counts n_ij = i(row_i, col_j) between two families
/// of pairwise disjoint curves. Rows belong to `row_side`.
class IntersectionMatrix {
public:
    IntersectionMatrix(DenseMatrix<Rational> entries, Side row_side = Side::Horizontal,
                       std::vector<std::string> row_ids = {}, std::vector<std::string> col_ids = {})
        : entries_(std::move(entries)), row_side_(row_side), row_ids_(std::move(row_ids)),
          col_ids_(std::move(col_ids)) {
        if (entries_.rows() < 1 || entries_.cols() < 1)
            throw InvalidInput("intersection matrix needs at least one row and one column");
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols(); ++j)
                if (entries_(i, j) < 0)
                    throw InvalidInput("intersection matrix entries must be nonnegative");
        if (row_ids_.empty())
            for (std::size_t i = 0; i < rows(); ++i)
                row_ids_.push_back("r" + std::to_string(i + 1));
        if (col_ids_.empty())
            for (std::size_t j = 0; j < cols(); ++j)
                col_ids_.push_back("c" + std::to_string(j + 1));
        if (row_ids_.size() != rows() || col_ids_.size() != cols())
            throw InvalidInput("intersection matrix label count mismatch");
    }

    IntersectionMatrix(std::initializer_list<std::initializer_list<Rational>> init)
        : IntersectionMatrix(DenseMatrix<Rational>(init)) {}

    std::size_t rows() const noexcept { return entries_.rows(); }
    std::size_t cols() const noexcept { return entries_.cols(); }
    const Rational& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
    const DenseMatrix<Rational>& entries() const noexcept { return entries_; }
    Side row_side() const noexcept { return row_side_; }
    Side col_side() const noexcept { return opposite(row_side_); }
    const std::vector<std::string>& row_ids() const noexcept { return row_ids_; }
    const std::vector<std::string>& col_ids() const noexcept { return col_ids_; }

    DenseMatrix<double> real() const { return entries_.cast<double>(); }

    IntersectionMatrix transposed() const {
        return IntersectionMatrix(entries_.transposed(), opposite(row_side_), col_ids_, row_ids_);
    }

    /// Restriction to the given row and column indices, in the given order.
    IntersectionMatrix submatrix(const std::vector<std::size_t>& rows_keep,
                                 const std::vector<std::size_t>& cols_keep) const {
        DenseMatrix<Rational> sub(rows_keep.size(), cols_keep.size());
        std::vector<std::string> r, c;
        for (std::size_t a = 0; a < rows_keep.size(); ++a) {
            r.push_back(row_ids_.at(rows_keep[a]));
            for (std::size_t b = 0; b < cols_keep.size(); ++b)
                sub(a, b) = entries_(rows_keep[a], cols_keep.at(b));
        }
        for (auto j : cols_keep)
            c.push_back(col_ids_.at(j));
        return IntersectionMatrix(std::move(sub), row_side_, std::move(r), std::move(c));
    }

    friend bool operator==(const IntersectionMatrix& a, const IntersectionMatrix& b) {
        return a.entries_ == b.entries_ && a.row_side_ == b.row_side_;
    }

private:
    DenseMatrix<Rational> entries_;
    Side row_side_;
    std::vector<std::string> row_ids_;
    std::vector<std::string> col_ids_;
};

} // namespace teich
