#pragma once

#include "tdual/matrix.hpp"
#include "tdual/ring.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tdual {

/// Matrix over a RingSpec with canonically reduced entries. Z and Z/m use
/// integer storage (Z/m entries in [0, m)); Q uses rational storage.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(const RingSpec& ring, std::size_t rows, std::size_t cols);

    static ExactMatrix identity(const RingSpec& ring, std::size_t n);
    static ExactMatrix from_integers(const RingSpec& ring, IntMatrix m);
    static ExactMatrix from_rationals(const RingSpec& ring, const RatMatrix& m);
    static ExactMatrix column_vector(const RingSpec& ring, const std::vector<Rational>& values);
    /// Rows given as small integers; convenient in tests.
    static ExactMatrix from_rows(const RingSpec& ring, std::initializer_list<std::initializer_list<long>> rows);

    const RingSpec& ring() const noexcept { return ring_; }
    std::size_t rows() const noexcept;
    std::size_t cols() const noexcept;

    Rational at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, const Rational& value);
    void add_to(std::size_t i, std::size_t j, const Rational& value);

    bool uses_integers() const noexcept { return !ring_.is_rationals(); }
    const IntMatrix& integers() const;
    const RatMatrix& rationals() const;

    template <class T>
    const Matrix<T>& as() const
    {
        return std::get<Matrix<T>>(data_);
    }

    ExactMatrix transposed() const;
    ExactMatrix column(std::size_t j) const;
    ExactMatrix columns(std::size_t first, std::size_t count) const;
    ExactMatrix rows_block(std::size_t first, std::size_t count) const;
    ExactMatrix hconcat(const ExactMatrix& other) const;
    /// Block diagonal [this 0; 0 other].
    ExactMatrix direct_sum(const ExactMatrix& other) const;
    ExactMatrix kron(const ExactMatrix& other) const;

    /// Two-sided inverse over the ring, if the matrix is square and invertible.
    std::optional<ExactMatrix> inverse() const;

    bool is_zero() const;
    std::string to_string() const;

    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
    friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
    friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
    friend ExactMatrix operator-(const ExactMatrix& a);
    friend ExactMatrix operator*(const Rational& s, const ExactMatrix& a);
    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

private:
    void reduce();

    RingSpec ring_;
    std::variant<IntMatrix, RatMatrix> data_{IntMatrix()};
};

/// U * A * V = D with U, V invertible and d_1 | d_2 | ... on the diagonal.
/// Over Z/m the diagonal holds divisors of m (0 standing for m itself).
struct SmithDecomposition {
    ExactMatrix U, D, V;
    std::size_t rank = 0;
};

SmithDecomposition smith_normal_form(const ExactMatrix& a);

} // namespace tdual
