#pragma once

#include "tdual/ring.hpp"

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace tdual {

namespace detail {

// y += a * x, skipping the work when a is zero.
inline void add_product(Integer& y, const Integer& a, const Integer& x)
{
    mpz_addmul(y.get_mpz_t(), a.get_mpz_t(), x.get_mpz_t());
}

inline void add_product(Rational& y, const Rational& a, const Rational& x)
{
    y += a * x;
}

inline void sub_product(Integer& y, const Integer& a, const Integer& x)
{
    mpz_submul(y.get_mpz_t(), a.get_mpz_t(), x.get_mpz_t());
}

inline void sub_product(Rational& y, const Rational& a, const Rational& x)
{
    y -= a * x;
}

} // namespace detail

/// Dense row-major matrix over Integer or Rational. No ring reduction is
/// applied here; that is ExactMatrix's job.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<long>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            assert(r.size() == cols_);
            for (long v : r)
                data_.emplace_back(v);
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::vector<T> column(std::size_t j) const
    {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    void set_column(std::size_t j, const std::vector<T>& values)
    {
        assert(values.size() == rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, j) = values[i];
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t k = 0; k < cols_; ++k)
            std::swap((*this)(a, k), (*this)(b, k));
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t k = 0; k < rows_; ++k)
            std::swap((*this)(k, a), (*this)(k, b));
    }

    /// row[target] += c * row[source]
    void add_row_multiple(std::size_t target, std::size_t source, const T& c)
    {
        if (sgn(c) == 0)
            return;
        T* t = data_.data() + target * cols_;
        const T* s = data_.data() + source * cols_;
        for (std::size_t k = 0; k < cols_; ++k)
            if (sgn(s[k]) != 0)
                detail::add_product(t[k], c, s[k]);
    }

    /// col[target] += c * col[source]
    void add_col_multiple(std::size_t target, std::size_t source, const T& c)
    {
        if (sgn(c) == 0)
            return;
        for (std::size_t k = 0; k < rows_; ++k) {
            const T& s = (*this)(k, source);
            if (sgn(s) != 0)
                detail::add_product((*this)(k, target), c, s);
        }
    }

    void scale_row(std::size_t i, const T& c)
    {
        for (auto& x : row(i))
            x *= c;
    }

    void scale_col(std::size_t j, const T& c)
    {
        for (std::size_t k = 0; k < rows_; ++k)
            (*this)(k, j) *= c;
    }

    Matrix transposed() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    /// Columns [first, first + count).
    Matrix column_block(std::size_t first, std::size_t count) const
    {
        Matrix b(rows_, count);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < count; ++j)
                b(i, j) = (*this)(i, first + j);
        return b;
    }

    Matrix row_block(std::size_t first, std::size_t count) const
    {
        Matrix b(count, cols_);
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                b(i, j) = (*this)(first + i, j);
        return b;
    }

    /// [this | other]
    Matrix hconcat(const Matrix& other) const
    {
        assert(other.rows_ == rows_);
        Matrix r(rows_, cols_ + other.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j)
                r(i, j) = (*this)(i, j);
            for (std::size_t j = 0; j < other.cols_; ++j)
                r(i, cols_ + j) = other(i, j);
        }
        return r;
    }

    bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(), [](const T& x) { return sgn(x) == 0; });
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        assert(a.cols_ == b.rows_);
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (sgn(aik) == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (sgn(b(k, j)) != 0)
                        detail::add_product(c(i, j), aik, b(k, j));
            }
        return c;
    }

    friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& x)
    {
        assert(a.cols_ == x.size());
        std::vector<T> y(a.rows_);
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (sgn(x[k]) == 0)
                continue;
            for (std::size_t i = 0; i < a.rows_; ++i)
                if (sgn(a(i, k)) != 0)
                    detail::add_product(y[i], a(i, k), x[k]);
        }
        return y;
    }

    friend Matrix operator+(Matrix a, const Matrix& b)
    {
        assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            a.data_[k] += b.data_[k];
        return a;
    }

    friend Matrix operator-(Matrix a, const Matrix& b)
    {
        assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            a.data_[k] -= b.data_[k];
        return a;
    }

    const std::vector<T>& data() const noexcept { return data_; }
    std::vector<T>& data() noexcept { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

template <class T>
bool is_zero_vector(const std::vector<T>& v)
{
    return std::all_of(v.begin(), v.end(), [](const T& x) { return sgn(x) == 0; });
}

} // namespace tdual
