#include "tdual/exact_matrix.hpp"

#include "tdual/error.hpp"
#include "tdual/smith.hpp"

#include <sstream>

namespace tdual {

namespace {

void reduce_mod(IntMatrix& m, const Integer& modulus)
{
    for (auto& x : m.data())
        if (sgn(x) < 0 || x >= modulus)
            mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
}

Integer gcd(const Integer& a, const Integer& b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

void require_same_ring(const ExactMatrix& a, const ExactMatrix& b)
{
    if (!(a.ring() == b.ring()))
        throw Error(ErrorKind::RingMismatch, "matrices over " + a.ring().name() + " and " + b.ring().name());
}

} // namespace

ExactMatrix::ExactMatrix(const RingSpec& ring, std::size_t rows, std::size_t cols) : ring_(ring)
{
    if (ring.is_rationals())
        data_ = RatMatrix(rows, cols);
    else
        data_ = IntMatrix(rows, cols);
}

ExactMatrix ExactMatrix::identity(const RingSpec& ring, std::size_t n)
{
    ExactMatrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i, 1);
    return m;
}

ExactMatrix ExactMatrix::from_integers(const RingSpec& ring, IntMatrix m)
{
    ExactMatrix r;
    r.ring_ = ring;
    if (ring.is_rationals()) {
        RatMatrix q(m.rows(), m.cols());
        for (std::size_t k = 0; k < m.data().size(); ++k)
            q.data()[k] = m.data()[k];
        r.data_ = std::move(q);
    } else {
        r.data_ = std::move(m);
        r.reduce();
    }
    return r;
}

ExactMatrix ExactMatrix::from_rationals(const RingSpec& ring, const RatMatrix& m)
{
    if (ring.is_rationals()) {
        ExactMatrix r;
        r.ring_ = ring;
        r.data_ = m;
        return r;
    }
    IntMatrix z(m.rows(), m.cols());
    for (std::size_t k = 0; k < m.data().size(); ++k)
        z.data()[k] = to_integer(ring.normalize(m.data()[k]));
    return from_integers(ring, std::move(z));
}

ExactMatrix ExactMatrix::column_vector(const RingSpec& ring, const std::vector<Rational>& values)
{
    ExactMatrix m(ring, values.size(), 1);
    for (std::size_t i = 0; i < values.size(); ++i)
        m.set(i, 0, values[i]);
    return m;
}

ExactMatrix ExactMatrix::from_rows(const RingSpec& ring, std::initializer_list<std::initializer_list<long>> rows)
{
    return from_integers(ring, IntMatrix(rows));
}

std::size_t ExactMatrix::rows() const noexcept
{
    return std::visit([](const auto& m) { return m.rows(); }, data_);
}

std::size_t ExactMatrix::cols() const noexcept
{
    return std::visit([](const auto& m) { return m.cols(); }, data_);
}

Rational ExactMatrix::at(std::size_t i, std::size_t j) const
{
    return std::visit([&](const auto& m) { return Rational(m(i, j)); }, data_);
}

void ExactMatrix::set(std::size_t i, std::size_t j, const Rational& value)
{
    Rational v = ring_.normalize(value);
    if (auto* q = std::get_if<RatMatrix>(&data_))
        (*q)(i, j) = v;
    else
        std::get<IntMatrix>(data_)(i, j) = v.get_num();
}

void ExactMatrix::add_to(std::size_t i, std::size_t j, const Rational& value)
{
    set(i, j, at(i, j) + value);
}

const IntMatrix& ExactMatrix::integers() const
{
    if (ring_.is_rationals())
        throw Error(ErrorKind::InvalidArgument, "matrix over Q has no integer storage");
    return std::get<IntMatrix>(data_);
}

const RatMatrix& ExactMatrix::rationals() const
{
    if (!ring_.is_rationals())
        throw Error(ErrorKind::InvalidArgument, "matrix over " + ring_.name() + " has no rational storage");
    return std::get<RatMatrix>(data_);
}

void ExactMatrix::reduce()
{
    if (ring_.is_modular())
        reduce_mod(std::get<IntMatrix>(data_), Integer(ring_.modulus()));
}

ExactMatrix ExactMatrix::transposed() const
{
    ExactMatrix r;
    r.ring_ = ring_;
    r.data_ = std::visit([](const auto& m) -> std::variant<IntMatrix, RatMatrix> { return m.transposed(); }, data_);
    return r;
}

ExactMatrix ExactMatrix::column(std::size_t j) const
{
    return columns(j, 1);
}

ExactMatrix ExactMatrix::columns(std::size_t first, std::size_t count) const
{
    ExactMatrix r;
    r.ring_ = ring_;
    r.data_ = std::visit([&](const auto& m) -> std::variant<IntMatrix, RatMatrix> { return m.column_block(first, count); },
                         data_);
    return r;
}

ExactMatrix ExactMatrix::rows_block(std::size_t first, std::size_t count) const
{
    ExactMatrix r;
    r.ring_ = ring_;
    r.data_ = std::visit([&](const auto& m) -> std::variant<IntMatrix, RatMatrix> { return m.row_block(first, count); },
                         data_);
    return r;
}

ExactMatrix ExactMatrix::hconcat(const ExactMatrix& other) const
{
    require_same_ring(*this, other);
    if (other.rows() != rows())
        throw Error(ErrorKind::InvalidArgument, "hconcat row mismatch");
    ExactMatrix r;
    r.ring_ = ring_;
    r.data_ = std::visit(
        [&](const auto& m) -> std::variant<IntMatrix, RatMatrix> {
            using M = std::decay_t<decltype(m)>;
            return m.hconcat(std::get<M>(other.data_));
        },
        data_);
    return r;
}

ExactMatrix ExactMatrix::direct_sum(const ExactMatrix& other) const
{
    require_same_ring(*this, other);
    ExactMatrix r(ring_, rows() + other.rows(), cols() + other.cols());
    std::visit(
        [&](auto& out) {
            using M = std::decay_t<decltype(out)>;
            const M& a = std::get<M>(data_);
            const M& b = std::get<M>(other.data_);
            for (std::size_t i = 0; i < a.rows(); ++i)
                for (std::size_t j = 0; j < a.cols(); ++j)
                    out(i, j) = a(i, j);
            for (std::size_t i = 0; i < b.rows(); ++i)
                for (std::size_t j = 0; j < b.cols(); ++j)
                    out(a.rows() + i, a.cols() + j) = b(i, j);
        },
        r.data_);
    return r;
}

ExactMatrix ExactMatrix::kron(const ExactMatrix& other) const
{
    require_same_ring(*this, other);
    const std::size_t r1 = rows(), c1 = cols(), r2 = other.rows(), c2 = other.cols();
    ExactMatrix r(ring_, r1 * r2, c1 * c2);
    std::visit(
        [&](auto& out) {
            using M = std::decay_t<decltype(out)>;
            const M& a = std::get<M>(data_);
            const M& b = std::get<M>(other.data_);
            for (std::size_t i = 0; i < r1; ++i)
                for (std::size_t j = 0; j < c1; ++j)
                    for (std::size_t k = 0; k < r2; ++k)
                        for (std::size_t l = 0; l < c2; ++l)
                            out(i * r2 + k, j * c2 + l) = a(i, j) * b(k, l);
        },
        r.data_);
    r.reduce();
    return r;
}

std::optional<ExactMatrix> ExactMatrix::inverse() const
{
    const std::size_t n = rows();
    if (cols() != n)
        return std::nullopt;
    if (ring_.is_rationals()) {
        auto s = smith(rationals(), TrackU | TrackV);
        if (s.rank != n)
            return std::nullopt;
        return from_rationals(ring_, s.V * s.U);
    }
    auto s = smith(integers(), TrackU | TrackV);
    if (s.rank != n)
        return std::nullopt;
    IntMatrix dinv = IntMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Integer& d = s.D(i, i);
        if (ring_.is_integers()) {
            if (d != 1)
                return std::nullopt;
        } else {
            Integer m(ring_.modulus());
            if (mpz_invert(dinv(i, i).get_mpz_t(), d.get_mpz_t(), m.get_mpz_t()) == 0)
                return std::nullopt;
        }
    }
    return from_integers(ring_, s.V * dinv * s.U);
}

bool ExactMatrix::is_zero() const
{
    return std::visit([](const auto& m) { return m.is_zero(); }, data_);
}

std::string ExactMatrix::to_string() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows(); ++i) {
        if (i)
            os << "; ";
        for (std::size_t j = 0; j < cols(); ++j) {
            if (j)
                os << ' ';
            os << at(i, j).get_str();
        }
    }
    os << ']';
    return os.str();
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b)
{
    require_same_ring(a, b);
    if (a.cols() != b.rows())
        throw Error(ErrorKind::InvalidArgument, "matrix product shape mismatch");
    ExactMatrix r;
    r.ring_ = a.ring_;
    r.data_ = std::visit(
        [&](const auto& m) -> std::variant<IntMatrix, RatMatrix> {
            using M = std::decay_t<decltype(m)>;
            return m * std::get<M>(b.data_);
        },
        a.data_);
    r.reduce();
    return r;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b)
{
    require_same_ring(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorKind::InvalidArgument, "matrix sum shape mismatch");
    ExactMatrix r;
    r.ring_ = a.ring_;
    r.data_ = std::visit(
        [&](const auto& m) -> std::variant<IntMatrix, RatMatrix> {
            using M = std::decay_t<decltype(m)>;
            return m + std::get<M>(b.data_);
        },
        a.data_);
    r.reduce();
    return r;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b)
{
    return a + (-b);
}

ExactMatrix operator-(const ExactMatrix& a)
{
    ExactMatrix r = a;
    std::visit(
        [](auto& m) {
            for (auto& x : m.data())
                x = -x;
        },
        r.data_);
    r.reduce();
    return r;
}

ExactMatrix operator*(const Rational& s, const ExactMatrix& a)
{
    Rational v = a.ring().normalize(s);
    ExactMatrix r = a;
    std::visit(
        [&](auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, RatMatrix>) {
                for (auto& x : m.data())
                    x *= v;
            } else {
                Integer z = v.get_num();
                for (auto& x : m.data())
                    x *= z;
            }
        },
        r.data_);
    r.reduce();
    return r;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b)
{
    return a.ring_ == b.ring_ && a.data_ == b.data_;
}

SmithDecomposition smith_normal_form(const ExactMatrix& a)
{
    const RingSpec& ring = a.ring();
    SmithDecomposition out;
    if (ring.is_rationals()) {
        auto s = smith(a.rationals(), TrackU | TrackV);
        out.U = ExactMatrix::from_rationals(ring, s.U);
        out.D = ExactMatrix::from_rationals(ring, s.D);
        out.V = ExactMatrix::from_rationals(ring, s.V);
        out.rank = s.rank;
        return out;
    }
    auto s = smith(a.integers(), TrackU | TrackV);
    if (ring.is_modular()) {
        // Over Z/m the diagonal entry d is associate to gcd(d, m): find a unit
        // u with u * gcd = d (mod m) and fold u^-1 into the row of U.
        const Integer m(ring.modulus());
        std::size_t rank = 0;
        for (std::size_t i = 0; i < s.rank; ++i) {
            Integer d = s.D(i, i);
            Integer g = gcd(d, m);
            if (g == m) {
                s.D(i, i) = 0;
                continue;
            }
            Integer mg = m / g;
            Integer t = (d / g) % mg;
            Integer u = t;
            while (gcd(u, m) != 1)
                u += mg;
            Integer uinv;
            mpz_invert(uinv.get_mpz_t(), u.get_mpz_t(), m.get_mpz_t());
            s.U.scale_row(i, uinv);
            s.D(i, i) = g;
            ++rank;
        }
        out.rank = rank;
    } else {
        out.rank = s.rank;
    }
    out.U = ExactMatrix::from_integers(ring, std::move(s.U));
    out.D = ExactMatrix::from_integers(ring, std::move(s.D));
    out.V = ExactMatrix::from_integers(ring, std::move(s.V));
    return out;
}

} // namespace tdual
