#pragma once

// Smith normal form over Z (Euclidean pivoting) and over Q (Gauss-Jordan),
// with optional tracking of the transforms and their inverses.

#include "tdual/matrix.hpp"

#include <type_traits>

namespace tdual {

enum SmithTrack : unsigned {
    TrackNone = 0,
    TrackU = 1,
    TrackUinv = 2,
    TrackV = 4,
    TrackVinv = 8,
    TrackAll = 15,
};

template <class T>
struct Smith {
    Matrix<T> D;
    Matrix<T> U, Uinv, V, Vinv; // empty unless tracked
    std::size_t rank = 0;

    const T& diagonal(std::size_t i) const { return D(i, i); }
};

namespace detail {

template <class T>
class SmithReducer {
public:
    SmithReducer(Matrix<T> a, unsigned track) : track_(track)
    {
        s_.D = std::move(a);
        if (track & TrackU)
            s_.U = Matrix<T>::identity(s_.D.rows());
        if (track & TrackUinv)
            s_.Uinv = Matrix<T>::identity(s_.D.rows());
        if (track & TrackV)
            s_.V = Matrix<T>::identity(s_.D.cols());
        if (track & TrackVinv)
            s_.Vinv = Matrix<T>::identity(s_.D.cols());
    }

    Smith<T> run()
    {
        if constexpr (std::is_same_v<T, Integer>)
            run_integer();
        else
            run_field();
        return std::move(s_);
    }

private:
    Matrix<T>& A() { return s_.D; }

    void row_add(std::size_t t, std::size_t s, const T& q)
    {
        A().add_row_multiple(t, s, q);
        if (track_ & TrackU)
            s_.U.add_row_multiple(t, s, q);
        if (track_ & TrackUinv)
            s_.Uinv.add_col_multiple(s, t, -q);
    }

    void col_add(std::size_t t, std::size_t s, const T& q)
    {
        A().add_col_multiple(t, s, q);
        if (track_ & TrackV)
            s_.V.add_col_multiple(t, s, q);
        if (track_ & TrackVinv)
            s_.Vinv.add_row_multiple(s, t, -q);
    }

    void row_swap(std::size_t a, std::size_t b)
    {
        A().swap_rows(a, b);
        if (track_ & TrackU)
            s_.U.swap_rows(a, b);
        if (track_ & TrackUinv)
            s_.Uinv.swap_cols(a, b);
    }

    void col_swap(std::size_t a, std::size_t b)
    {
        A().swap_cols(a, b);
        if (track_ & TrackV)
            s_.V.swap_cols(a, b);
        if (track_ & TrackVinv)
            s_.Vinv.swap_rows(a, b);
    }

    void row_scale(std::size_t i, const T& u)
    {
        A().scale_row(i, u);
        if (track_ & TrackU)
            s_.U.scale_row(i, u);
        if (track_ & TrackUinv)
            s_.Uinv.scale_col(i, T(1) / u);
    }

    // Position of the nonzero entry of least absolute value in the trailing block.
    bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj)
    {
        bool found = false;
        for (std::size_t i = t; i < A().rows(); ++i)
            for (std::size_t j = t; j < A().cols(); ++j) {
                const T& x = A()(i, j);
                if (sgn(x) == 0)
                    continue;
                if (!found || smaller(x, A()(pi, pj))) {
                    pi = i;
                    pj = j;
                    found = true;
                    if (is_unit_size(x))
                        return true;
                }
            }
        return found;
    }

    static bool smaller(const T& a, const T& b)
    {
        if constexpr (std::is_same_v<T, Integer>) {
            return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0;
        } else {
            auto sa = mpz_sizeinbase(a.get_num_mpz_t(), 2) + mpz_sizeinbase(a.get_den_mpz_t(), 2);
            auto sb = mpz_sizeinbase(b.get_num_mpz_t(), 2) + mpz_sizeinbase(b.get_den_mpz_t(), 2);
            return sa < sb;
        }
    }

    static bool is_unit_size(const T& x)
    {
        if constexpr (std::is_same_v<T, Integer>)
            return x == 1 || x == -1;
        else
            return x == 1 || x == -1;
    }

    void run_integer()
    {
        const std::size_t r = A().rows(), c = A().cols();
        std::size_t t = 0;
        for (; t < std::min(r, c); ++t) {
            std::size_t pi = t, pj = t;
            if (!find_pivot(t, pi, pj))
                break;
            row_swap(t, pi);
            col_swap(t, pj);
            for (;;) {
                bool dirty = false;
                for (std::size_t i = t + 1; i < r; ++i) {
                    if (sgn(A()(i, t)) == 0)
                        continue;
                    Integer q;
                    mpz_tdiv_q(q.get_mpz_t(), A()(i, t).get_mpz_t(), A()(t, t).get_mpz_t());
                    row_add(i, t, -q);
                    if (sgn(A()(i, t)) != 0)
                        dirty = true;
                }
                if (dirty) {
                    std::size_t best = t;
                    for (std::size_t i = t + 1; i < r; ++i)
                        if (sgn(A()(i, t)) != 0 && smaller(A()(i, t), A()(best, t)))
                            best = i;
                    row_swap(t, best);
                    continue;
                }
                for (std::size_t j = t + 1; j < c; ++j) {
                    if (sgn(A()(t, j)) == 0)
                        continue;
                    Integer q;
                    mpz_tdiv_q(q.get_mpz_t(), A()(t, j).get_mpz_t(), A()(t, t).get_mpz_t());
                    col_add(j, t, -q);
                    if (sgn(A()(t, j)) != 0)
                        dirty = true;
                }
                if (dirty) {
                    std::size_t best = t;
                    for (std::size_t j = t + 1; j < c; ++j)
                        if (sgn(A()(t, j)) != 0 && smaller(A()(t, j), A()(t, best)))
                            best = j;
                    col_swap(t, best);
                    continue;
                }
                const Integer& p = A()(t, t);
                if (p == 1 || p == -1)
                    break;
                std::size_t bad = r;
                for (std::size_t i = t + 1; i < r && bad == r; ++i)
                    for (std::size_t j = t + 1; j < c; ++j)
                        if (sgn(A()(i, j)) != 0 && !mpz_divisible_p(A()(i, j).get_mpz_t(), p.get_mpz_t())) {
                            bad = i;
                            break;
                        }
                if (bad == r)
                    break;
                row_add(t, bad, Integer(1));
            }
            if (sgn(A()(t, t)) < 0)
                row_scale(t, Integer(-1));
        }
        s_.rank = t;
    }

    void run_field()
    {
        const std::size_t r = A().rows(), c = A().cols();
        std::size_t t = 0;
        for (; t < std::min(r, c); ++t) {
            std::size_t pi = t, pj = t;
            if (!find_pivot(t, pi, pj))
                break;
            row_swap(t, pi);
            col_swap(t, pj);
            if (A()(t, t) != 1)
                row_scale(t, T(1) / A()(t, t));
            for (std::size_t i = t + 1; i < r; ++i)
                if (sgn(A()(i, t)) != 0)
                    row_add(i, t, T(-A()(i, t)));
            for (std::size_t j = t + 1; j < c; ++j)
                if (sgn(A()(t, j)) != 0)
                    col_add(j, t, T(-A()(t, j)));
        }
        s_.rank = t;
    }

    Smith<T> s_;
    unsigned track_;
};

} // namespace detail

template <class T>
Smith<T> smith(Matrix<T> a, unsigned track = TrackNone)
{
    return detail::SmithReducer<T>(std::move(a), track).run();
}

} // namespace tdual
