#pragma once

// Submodules of T^n (T = Integer: Z-lattices, T = Rational: subspaces) and
// the subquotients built from them. A lattice is described by an invertible
// change of coordinates P together with a scale per new coordinate: z lies in
// the lattice iff (P z)_i is divisible by scale_i (scale 0: must vanish).

#include "tdual/matrix.hpp"
#include "tdual/smith.hpp"

#include <optional>
#include <type_traits>
#include <vector>

namespace tdual {

namespace detail {

template <class T>
bool divides(const T& d, const T& x)
{
    if (sgn(d) == 0)
        return sgn(x) == 0;
    if constexpr (std::is_same_v<T, Integer>)
        return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
    else
        return true;
}

template <class T>
T exact_quotient(const T& x, const T& d)
{
    if constexpr (std::is_same_v<T, Integer>) {
        Integer q;
        mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
        return q;
    } else {
        return x / d;
    }
}

/// Canonical residue of x modulo d (d = 0 leaves x unchanged).
template <class T>
T residue(const T& x, const T& d)
{
    if constexpr (std::is_same_v<T, Integer>) {
        if (sgn(d) == 0)
            return x;
        Integer r;
        mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
        return r;
    } else {
        return sgn(d) == 0 ? x : T(0);
    }
}

} // namespace detail

template <class T>
class Lattice {
public:
    using Vec = std::vector<T>;

    Lattice() = default;

    /// Span of the columns of g; with a nonzero modulus m, m * T^n is added.
    static Lattice from_generators(const Matrix<T>& g, const Integer& modulus = 0)
    {
        Matrix<T> gens = g;
        if (sgn(modulus) != 0)
            gens = gens.hconcat(scaled_identity(g.rows(), modulus));
        auto s = smith(gens, TrackU | TrackUinv | TrackV);
        Lattice l;
        l.ambient_ = g.rows();
        l.P_ = std::move(s.U);
        l.scale_.assign(l.ambient_, T(0));
        for (std::size_t i = 0; i < s.rank; ++i)
            l.scale_[i] = s.D(i, i);
        l.build_basis(s.Uinv);
        l.solver_ = std::move(s.V);
        l.generator_count_ = g.cols();
        l.solvable_ = true;
        return l;
    }

    /// {z : a z = 0}, or {z : a z = 0 mod m} for a nonzero modulus.
    static Lattice kernel(const Matrix<T>& a, const Integer& modulus = 0)
    {
        auto s = smith(a, TrackV | TrackVinv);
        Lattice l;
        l.ambient_ = a.cols();
        l.P_ = std::move(s.Vinv);
        l.scale_.assign(l.ambient_, T(1));
        for (std::size_t i = 0; i < s.rank; ++i) {
            if constexpr (std::is_same_v<T, Integer>) {
                if (sgn(modulus) != 0) {
                    Integer g;
                    mpz_gcd(g.get_mpz_t(), s.D(i, i).get_mpz_t(), modulus.get_mpz_t());
                    l.scale_[i] = modulus / g;
                    continue;
                }
            }
            l.scale_[i] = 0;
        }
        l.build_basis(s.V);
        return l;
    }

    static Lattice full(std::size_t n)
    {
        Lattice l;
        l.ambient_ = n;
        l.P_ = Matrix<T>::identity(n);
        l.scale_.assign(n, T(1));
        l.basis_ = Matrix<T>::identity(n);
        return l;
    }

    std::size_t ambient() const noexcept { return ambient_; }
    std::size_t rank() const noexcept { return basis_.cols(); }
    const Matrix<T>& basis() const noexcept { return basis_; }

    std::optional<Vec> coordinates(const Vec& z) const
    {
        Vec w = P_ * z;
        Vec y;
        y.reserve(rank());
        for (std::size_t i = 0; i < ambient_; ++i) {
            if (!detail::divides(scale_[i], w[i]))
                return std::nullopt;
            if (sgn(scale_[i]) != 0)
                y.push_back(detail::exact_quotient(w[i], scale_[i]));
        }
        return y;
    }

    bool contains(const Vec& z) const { return coordinates(z).has_value(); }

    bool contains(const Lattice& other) const
    {
        for (std::size_t j = 0; j < other.rank(); ++j)
            if (!contains(other.basis_.column(j)))
                return false;
        return true;
    }

    friend bool operator==(const Lattice& a, const Lattice& b)
    {
        return a.ambient_ == b.ambient_ && a.contains(b) && b.contains(a);
    }

    /// Coefficients c on the original generators with g c = z (modulo m when a
    /// modulus was given). Only for lattices built from generators.
    std::optional<Vec> solve(const Vec& z) const
    {
        if (!solvable_)
            return std::nullopt;
        Vec w = P_ * z;
        Vec x(solver_.rows());
        for (std::size_t i = 0; i < ambient_; ++i) {
            if (!detail::divides(scale_[i], w[i]))
                return std::nullopt;
            if (sgn(scale_[i]) != 0)
                x[i] = detail::exact_quotient(w[i], scale_[i]);
        }
        Vec c = solver_ * x;
        c.resize(generator_count_);
        return c;
    }

private:
    static Matrix<T> scaled_identity(std::size_t n, const Integer& s)
    {
        Matrix<T> m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(s);
        return m;
    }

    // Columns of pinv scaled by the nonzero scales.
    void build_basis(const Matrix<T>& pinv)
    {
        std::size_t r = 0;
        for (const auto& s : scale_)
            if (sgn(s) != 0)
                ++r;
        basis_ = Matrix<T>(ambient_, r);
        std::size_t j = 0;
        for (std::size_t i = 0; i < ambient_; ++i) {
            if (sgn(scale_[i]) == 0)
                continue;
            for (std::size_t k = 0; k < ambient_; ++k)
                basis_(k, j) = pinv(k, i) * scale_[i];
            ++j;
        }
    }

    std::size_t ambient_ = 0;
    Matrix<T> P_;
    Vec scale_;
    Matrix<T> basis_;
    Matrix<T> solver_;
    std::size_t generator_count_ = 0;
    bool solvable_ = false;
};

namespace detail {

/// numerator / denominator, presented in Smith form: the quotient is the
/// direct sum of cyclic modules of the given orders (0 = free).
template <class T>
struct Subquotient {
    using Vec = std::vector<T>;

    std::size_t ambient = 0;
    Integer modulus = 0;
    Lattice<T> numerator;
    Lattice<T> denominator;
    Matrix<T> denominator_generators; // without the m * I block
    Matrix<T> projection;             // generator coordinates from numerator coordinates
    Vec orders;
    Matrix<T> generators; // representatives in ambient coordinates

    std::size_t generator_count() const { return orders.size(); }

    Vec reduce(Vec c) const
    {
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = residue(c[i], orders[i]);
        return c;
    }

    std::optional<Vec> class_of(const Vec& z) const
    {
        auto y = numerator.coordinates(z);
        if (!y)
            return std::nullopt;
        return reduce(projection * *y);
    }
};

/// Returns nullopt when some denominator generator is outside the numerator.
template <class T>
std::optional<Subquotient<T>> make_subquotient(Lattice<T> numerator, const Matrix<T>& den, const Integer& modulus)
{
    Subquotient<T> q;
    q.ambient = numerator.ambient();
    q.modulus = modulus;
    q.denominator_generators = den;
    q.denominator = Lattice<T>::from_generators(den, modulus);

    const std::size_t l = numerator.rank();
    Matrix<T> gens = den;
    if (sgn(modulus) != 0) {
        Matrix<T> mi(q.ambient, q.ambient);
        for (std::size_t i = 0; i < q.ambient; ++i)
            mi(i, i) = T(modulus);
        gens = gens.hconcat(mi);
    }
    Matrix<T> x(l, gens.cols());
    for (std::size_t j = 0; j < gens.cols(); ++j) {
        auto y = numerator.coordinates(gens.column(j));
        if (!y)
            return std::nullopt;
        x.set_column(j, *y);
    }
    auto s = smith(std::move(x), TrackU | TrackUinv);
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < l; ++i) {
        T d = i < s.rank ? s.D(i, i) : T(0);
        if (d == 1)
            continue;
        kept.push_back(i);
        q.orders.push_back(d);
    }
    q.projection = Matrix<T>(kept.size(), l);
    Matrix<T> reps(l, kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k)
        for (std::size_t j = 0; j < l; ++j) {
            q.projection(k, j) = s.U(kept[k], j);
            reps(j, k) = s.Uinv(j, kept[k]);
        }
    q.generators = numerator.basis() * reps;
    q.numerator = std::move(numerator);
    return q;
}

} // namespace detail

} // namespace tdual
