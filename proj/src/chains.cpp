#include "tdual/chains.hpp"

#include "tdual/error.hpp"

namespace tdual {

namespace {

void put_block(ExactMatrix& m, std::size_t row, std::size_t col, const ExactMatrix& block)
{
    for (std::size_t i = 0; i < block.rows(); ++i)
        for (std::size_t j = 0; j < block.cols(); ++j)
            m.set(row + i, col + j, block.at(i, j));
}

void put_scalar(ExactMatrix& m, std::size_t row, std::size_t col, std::size_t r, int s)
{
    for (std::size_t i = 0; i < r; ++i)
        m.set(row + i, col + i, s);
}

} // namespace

TwistedComplex::TwistedComplex(LocalSystem system, Subcomplex space, Subcomplex subspace, int anchor)
    : system_(std::move(system)), space_(std::move(space)), subspace_(std::move(subspace))
{
    if (space_.ambient() != system_.base() && !(*space_.ambient() == *system_.base()))
        throw Error(ErrorKind::BaseMismatch, "subcomplex and local system live on different complexes");
    anchor_ = anchor < 0 ? base().dimension() : anchor;
    assemble();
}

TwistedComplex TwistedComplex::absolute(const LocalSystem& system, int anchor)
{
    return TwistedComplex(system, Subcomplex::whole(system.base()), Subcomplex::empty(system.base()), anchor);
}

TwistedComplex TwistedComplex::relative(const LocalSystem& system, const FullSubcomplex& k, int anchor)
{
    return TwistedComplex(system, Subcomplex::whole(system.base()), k.complement().as_subcomplex(), anchor);
}

void TwistedComplex::assemble()
{
    const auto& c = base();
    const int n = c.dimension();
    const std::size_t r = rank();
    simplices_.assign(n + 1, {});
    position_.assign(n + 1, {});
    for (int k = 0; k <= n; ++k) {
        position_[k].assign(c.count(k), std::nullopt);
        for (std::size_t i = 0; i < c.count(k); ++i)
            if (space_.contains(k, i) && !subspace_.contains(k, i)) {
                position_[k][i] = simplices_[k].size();
                simplices_[k].push_back(i);
            }
    }

    boundary_.clear();
    boundary_.push_back(ExactMatrix(ring(), 0, dimension(0)));
    for (int k = 1; k <= n; ++k) {
        ExactMatrix d(ring(), dimension(k - 1), dimension(k));
        for (std::size_t j = 0; j < simplices_[k].size(); ++j) {
            const std::size_t s = simplices_[k][j];
            const Simplex& vs = c.simplex(k, s);
            for (int i = 0; i <= k; ++i) {
                auto p = position_[k - 1][c.face(k, s, i)];
                if (!p)
                    continue;
                if (i == 0)
                    put_block(d, *p * r, j * r, system_.transport(vs[1], vs[0]));
                else
                    put_scalar(d, *p * r, j * r, r, i % 2 == 0 ? 1 : -1);
            }
        }
        boundary_.push_back(std::move(d));
    }
    boundary_.push_back(ExactMatrix(ring(), dimension(n), 0));

    coboundary_.clear();
    coboundary_.push_back(ExactMatrix(ring(), dimension(0), 0));
    for (int k = 0; k < n; ++k) {
        const int sign = (anchor_ - k - 1) % 2 == 0 ? 1 : -1;
        ExactMatrix d(ring(), dimension(k + 1), dimension(k));
        for (std::size_t t = 0; t < simplices_[k + 1].size(); ++t) {
            const std::size_t s = simplices_[k + 1][t];
            const Simplex& ws = c.simplex(k + 1, s);
            for (int j = 0; j <= k + 1; ++j) {
                auto p = position_[k][c.face(k + 1, s, j)];
                if (!p)
                    continue;
                if (j == 0)
                    put_block(d, t * r, *p * r, Rational(sign) * system_.transport(ws[0], ws[1]));
                else
                    put_scalar(d, t * r, *p * r, r, (j % 2 == 0 ? 1 : -1) * sign);
            }
        }
        coboundary_.push_back(std::move(d));
    }
    coboundary_.push_back(ExactMatrix(ring(), 0, dimension(n)));
}

std::size_t TwistedComplex::dimension(int k) const
{
    if (k < 0 || k > top_dimension())
        return 0;
    return simplices_[k].size() * rank();
}

const std::vector<std::size_t>& TwistedComplex::simplices(int k) const
{
    static const std::vector<std::size_t> none;
    if (k < 0 || k > top_dimension())
        return none;
    return simplices_[k];
}

std::optional<std::size_t> TwistedComplex::position(int k, std::size_t simplex) const
{
    if (k < 0 || k > top_dimension())
        return std::nullopt;
    return position_[k][simplex];
}

const ExactMatrix& TwistedComplex::boundary(int k) const
{
    if (k < 0 || k > top_dimension() + 1)
        throw Error(ErrorKind::DegreeMismatch, "no boundary in degree " + std::to_string(k));
    return boundary_[k];
}

const ExactMatrix& TwistedComplex::coboundary(int k) const
{
    if (k < -1 || k > top_dimension())
        throw Error(ErrorKind::DegreeMismatch, "no coboundary in degree " + std::to_string(k));
    return coboundary_[k + 1];
}

FPModule TwistedComplex::homology(int k) const
{
    if (k < 0 || k > top_dimension())
        return FPModule::free(ring(), 0);
    return homology_presentation(boundary(k + 1), boundary(k));
}

FPModule TwistedComplex::cohomology(int k) const
{
    if (k < 0 || k > top_dimension())
        return FPModule::free(ring(), 0);
    return homology_presentation(coboundary(k - 1), coboundary(k));
}

ExactMatrix TwistedComplex::to_ambient(int k, const ExactMatrix& v) const
{
    const std::size_t r = rank();
    ExactMatrix out(ring(), base().count(k) * r, v.cols());
    for (std::size_t p = 0; p < simplices(k).size(); ++p)
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t j = 0; j < v.cols(); ++j)
                out.set(simplices_[k][p] * r + a, j, v.at(p * r + a, j));
    return out;
}

ExactMatrix TwistedComplex::from_ambient(int k, const ExactMatrix& v) const
{
    const std::size_t r = rank();
    ExactMatrix out(ring(), dimension(k), v.cols());
    for (std::size_t p = 0; p < simplices(k).size(); ++p)
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t j = 0; j < v.cols(); ++j)
                out.set(p * r + a, j, v.at(simplices_[k][p] * r + a, j));
    return out;
}

ExactMatrix TwistedComplex::transfer_to(const TwistedComplex& other, int k) const
{
    if (!(base() == other.base()))
        throw Error(ErrorKind::BaseMismatch, "transfer between different complexes");
    if (other.rank() != rank())
        throw Error(ErrorKind::InvalidArgument, "transfer between systems of different rank");
    const std::size_t r = rank();
    ExactMatrix out(ring(), other.dimension(k), dimension(k));
    for (std::size_t p = 0; p < simplices(k).size(); ++p)
        if (auto q = other.position(k, simplices_[k][p]))
            put_scalar(out, *q * r, p * r, r, 1);
    return out;
}

bool TwistedComplex::boundary_squares_to_zero() const
{
    for (int k = 1; k <= top_dimension() + 1; ++k)
        if (!(boundary(k - 1) * boundary(k)).is_zero())
            return false;
    return true;
}

bool TwistedComplex::coboundary_squares_to_zero() const
{
    for (int k = -1; k < top_dimension(); ++k)
        if (!(coboundary(k + 1) * coboundary(k)).is_zero())
            return false;
    return true;
}

namespace {

void require_flat(const LocalSystem& system)
{
    auto f = validate_flatness(system);
    if (!f.flat) {
        const auto& t = *f.failing_triangle;
        throw Error(ErrorKind::FlatnessViolation, "transports around triangle " + std::to_string(t[0]) + " " +
                                                      std::to_string(t[1]) + " " + std::to_string(t[2]) +
                                                      " do not compose");
    }
}

} // namespace

TwistedComplex chain_complex(const LocalSystem& system)
{
    require_flat(system);
    auto c = TwistedComplex::absolute(system);
    if (!c.boundary_squares_to_zero())
        throw Error(ErrorKind::FlatnessViolation, "boundary does not square to zero");
    return c;
}

TwistedComplex cochain_complex(const LocalSystem& system, int anchor)
{
    require_flat(system);
    auto c = TwistedComplex::absolute(system, anchor);
    if (!c.coboundary_squares_to_zero())
        throw Error(ErrorKind::FlatnessViolation, "coboundary does not square to zero");
    return c;
}

FPModule homology(const LocalSystem& system, int k)
{
    return chain_complex(system).homology(k);
}

FPModule cohomology(const LocalSystem& system, int k)
{
    return cochain_complex(system).cohomology(k);
}

FPModule relative_homology(const LocalSystem& system, const FullSubcomplex& k_set, int k)
{
    require_flat(system);
    return TwistedComplex::relative(system, k_set).homology(k);
}

FPModule relative_cohomology(const LocalSystem& system, const FullSubcomplex& k_set, int k)
{
    require_flat(system);
    return TwistedComplex::relative(system, k_set).cohomology(k);
}

} // namespace tdual
