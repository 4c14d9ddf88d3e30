#include "tdual/module.hpp"

#include "tdual/error.hpp"

#include <random>
#include <sstream>

namespace tdual {

namespace {

template <class T>
using Vec = std::vector<T>;

template <class T>
Vec<T> column_of(const ExactMatrix& m)
{
    if (m.cols() != 1)
        throw Error(ErrorKind::InvalidArgument, "expected a column vector");
    return m.as<T>().column(0);
}

template <class T>
ExactMatrix to_exact(const RingSpec& ring, const Matrix<T>& m)
{
    if constexpr (std::is_same_v<T, Integer>)
        return ExactMatrix::from_integers(ring, m);
    else
        return ExactMatrix::from_rationals(ring, m);
}

template <class T>
ExactMatrix to_exact(const RingSpec& ring, const Vec<T>& v)
{
    Matrix<T> m(v.size(), 1);
    m.set_column(0, v);
    return to_exact(ring, m);
}

template <class T>
Matrix<T> diagonal(const Vec<T>& d)
{
    Matrix<T> m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        m(i, i) = d[i];
    return m;
}

Integer modulus_of(const RingSpec& ring)
{
    return ring.is_modular() ? Integer(ring.modulus()) : Integer(0);
}

// Dispatch on the storage type of a ring.
template <class F>
decltype(auto) with_domain(const RingSpec& ring, F&& f)
{
    if (ring.is_rationals())
        return f(Rational());
    return f(Integer());
}

template <class T>
Matrix<T> reduce_rows(Matrix<T> m, const Vec<T>& orders)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            m(i, j) = detail::residue(m(i, j), orders[i]);
    return m;
}

template <class T>
ExactMatrix reduce_to_target(const ExactMatrix& m, const FPModule& target)
{
    const auto& q = target.core<T>();
    return to_exact(m.ring(), reduce_rows(m.as<T>(), q.orders));
}

} // namespace

FPModule FPModule::free(const RingSpec& ring, std::size_t n)
{
    return cokernel(ExactMatrix(ring, n, 0));
}

FPModule FPModule::cokernel(const ExactMatrix& relations)
{
    const RingSpec& ring = relations.ring();
    return with_domain(ring, [&](auto tag) {
        using T = decltype(tag);
        auto q = detail::make_subquotient(Lattice<T>::full(relations.rows()), relations.as<T>(), modulus_of(ring));
        return from_core(ring, std::move(*q));
    });
}

std::size_t FPModule::ambient_dimension() const
{
    return std::visit([](const auto& c) { return c->ambient; }, core_);
}

std::size_t FPModule::generator_count() const
{
    return std::visit([](const auto& c) { return c->generator_count(); }, core_);
}

std::vector<Integer> FPModule::orders() const
{
    if (ring_.is_rationals())
        return std::vector<Integer>(generator_count(), Integer(0));
    return core<Integer>().orders;
}

NormalForm FPModule::normal_form() const
{
    NormalForm nf;
    const Integer m = modulus_of(ring_);
    for (const auto& d : orders()) {
        if (d == 0 || (sgn(m) != 0 && d == m))
            ++nf.free_rank;
        else
            nf.torsion.push_back(d);
    }
    return nf;
}

ExactMatrix FPModule::relations() const
{
    auto o = orders();
    ExactMatrix r(ring_, o.size(), o.size());
    for (std::size_t i = 0; i < o.size(); ++i)
        r.set(i, i, Rational(o[i]));
    return r;
}

ExactMatrix FPModule::generators() const
{
    return std::visit([&](const auto& c) { return to_exact(ring_, c->generators); }, core_);
}

std::optional<ExactMatrix> FPModule::coordinates(const ExactMatrix& chain) const
{
    if (chain.rows() != ambient_dimension())
        throw Error(ErrorKind::InvalidArgument, "chain has " + std::to_string(chain.rows()) + " entries, expected " +
                                                    std::to_string(ambient_dimension()));
    return with_domain(ring_, [&](auto tag) -> std::optional<ExactMatrix> {
        using T = decltype(tag);
        auto c = core<T>().class_of(column_of<T>(chain));
        if (!c)
            return std::nullopt;
        return to_exact(ring_, *c);
    });
}

bool FPModule::contains(const ExactMatrix& chain) const
{
    return coordinates(chain).has_value();
}

bool FPModule::is_zero_class(const ExactMatrix& chain) const
{
    auto c = coordinates(chain);
    if (!c)
        throw Error(ErrorKind::InvalidArgument, "vector does not represent a class");
    return c->is_zero();
}

bool FPModule::same_class(const ExactMatrix& a, const ExactMatrix& b) const
{
    return is_zero_class(a - b);
}

bool FPModule::is_generator_of_rank_one(const ExactMatrix& chain) const
{
    auto nf = normal_form();
    if (nf.free_rank != 1 || !nf.torsion.empty())
        return false;
    auto c = coordinates(chain);
    return c && ring_.is_unit(c->at(0, 0));
}

std::string FPModule::to_string() const
{
    auto nf = normal_form();
    std::vector<std::string> parts;
    auto power = [](const std::string& base, std::size_t k, bool paren) {
        if (k == 1)
            return base;
        return (paren ? "(" + base + ")" : base) + "^" + std::to_string(k);
    };
    if (nf.free_rank > 0)
        parts.push_back(power(ring_.short_name(), nf.free_rank, ring_.is_modular()));
    for (std::size_t i = 0; i < nf.torsion.size();) {
        std::size_t j = i;
        while (j < nf.torsion.size() && nf.torsion[j] == nf.torsion[i])
            ++j;
        parts.push_back(power("Z/" + nf.torsion[i].get_str(), j - i, true));
        i = j;
    }
    if (parts.empty())
        return "0";
    std::string s = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i)
        s += "+" + parts[i];
    return s;
}

FPModule FPModule::perturbed(std::uint64_t seed) const
{
    return with_domain(ring_, [&](auto tag) {
        using T = decltype(tag);
        detail::Subquotient<T> q = core<T>();
        std::mt19937_64 rng(seed);
        const auto& den = q.denominator_generators;
        Matrix<T> shift(den.cols(), q.generators.cols());
        for (auto& x : shift.data())
            x = static_cast<long>(rng() % 5) - 2;
        if (den.cols() > 0)
            q.generators = q.generators + den * shift;
        return from_core(ring_, std::move(q));
    });
}

bool operator==(const FPModule& a, const FPModule& b)
{
    return a.ring_ == b.ring_ && a.normal_form() == b.normal_form();
}

ModuleMap::ModuleMap(FPModule source, FPModule target, ExactMatrix matrix, std::optional<ExactMatrix> witness)
    : source_(std::move(source)), target_(std::move(target)), witness_(std::move(witness))
{
    if (matrix.rows() != target_.generator_count() || matrix.cols() != source_.generator_count())
        throw Error(ErrorKind::InvalidArgument, "module map matrix has the wrong shape");
    matrix_ = with_domain(target_.ring(), [&](auto tag) {
        using T = decltype(tag);
        return reduce_to_target<T>(matrix, target_);
    });
}

ModuleMap ModuleMap::zero(const FPModule& source, const FPModule& target)
{
    return ModuleMap(source, target, ExactMatrix(source.ring(), target.generator_count(), source.generator_count()));
}

ModuleMap ModuleMap::identity(const FPModule& m)
{
    return ModuleMap(m, m, ExactMatrix::identity(m.ring(), m.generator_count()));
}

ModuleMap ModuleMap::from_generator_images(const FPModule& source, const FPModule& target, const ExactMatrix& images)
{
    const std::size_t k = source.generator_count();
    if (images.cols() != k)
        throw Error(ErrorKind::InvalidArgument, "one image per source generator expected");
    ExactMatrix m(target.ring(), target.generator_count(), k);
    for (std::size_t j = 0; j < k; ++j) {
        auto c = target.coordinates(images.column(j));
        if (!c)
            throw Error(ErrorKind::NotChainMap, "image of generator " + std::to_string(j) + " is not a cycle");
        for (std::size_t i = 0; i < c->rows(); ++i)
            m.set(i, j, c->at(i, 0));
    }
    return ModuleMap(source, target, m);
}

ExactMatrix ModuleMap::apply(const ExactMatrix& coords) const
{
    return with_domain(target_.ring(), [&](auto tag) {
        using T = decltype(tag);
        return reduce_to_target<T>(matrix_ * coords, target_);
    });
}

bool ModuleMap::is_zero() const
{
    return matrix_.is_zero();
}

ModuleMap ModuleMap::negated() const
{
    return ModuleMap(source_, target_, -matrix_);
}

ModuleMap ModuleMap::then(const ModuleMap& after) const
{
    if (!after.source_.same_presentation(target_))
        throw Error(ErrorKind::InvalidArgument, "composing maps through different presentations");
    return ModuleMap(source_, after.target_, after.matrix_ * matrix_);
}

bool operator==(const ModuleMap& a, const ModuleMap& b)
{
    return a.source_.same_presentation(b.source_) && a.target_.same_presentation(b.target_) && a.matrix_ == b.matrix_;
}

FPModule homology_presentation(const ExactMatrix& d_in, const ExactMatrix& d_out)
{
    if (!(d_in.ring() == d_out.ring()))
        throw Error(ErrorKind::RingMismatch, "boundary matrices over different rings");
    if (d_out.cols() != d_in.rows())
        throw Error(ErrorKind::InvalidArgument, "middle dimensions differ: " + std::to_string(d_out.cols()) + " vs " +
                                                    std::to_string(d_in.rows()));
    if (!(d_out * d_in).is_zero())
        throw Error(ErrorKind::CompositionNonzero, "d_out * d_in != 0");
    const RingSpec& ring = d_in.ring();
    return with_domain(ring, [&](auto tag) {
        using T = decltype(tag);
        const Integer m = modulus_of(ring);
        auto q = detail::make_subquotient(Lattice<T>::kernel(d_out.as<T>(), m), d_in.as<T>(), m);
        if (!q)
            throw Error(ErrorKind::CompositionNonzero, "image not contained in kernel");
        return FPModule::from_core(ring, std::move(*q));
    });
}

namespace {

template <class T>
ModuleMap induced_impl(const ExactMatrix& f, const FPModule& src, const FPModule& dst)
{
    const auto& s = src.core<T>();
    const auto& d = dst.core<T>();
    const Matrix<T>& F = f.as<T>();
    const Matrix<T>& basis = s.numerator.basis();
    for (std::size_t j = 0; j < basis.cols(); ++j)
        if (!d.numerator.contains(F * basis.column(j)))
            throw Error(ErrorKind::NotChainMap, "a cycle is mapped outside the target cycles");

    const Matrix<T>& den = s.denominator_generators;
    Matrix<T> w(d.denominator_generators.cols(), den.cols());
    for (std::size_t j = 0; j < den.cols(); ++j) {
        auto c = d.denominator.solve(F * den.column(j));
        if (!c)
            throw Error(ErrorKind::NotChainMap, "a boundary is mapped to a nonzero class");
        w.set_column(j, *c);
    }

    const RingSpec& ring = dst.ring();
    Matrix<T> m(d.generator_count(), s.generator_count());
    for (std::size_t j = 0; j < s.generator_count(); ++j)
        m.set_column(j, *d.class_of(F * s.generators.column(j)));
    return ModuleMap(src, dst, to_exact(ring, m), to_exact(ring, w));
}

template <class T>
IsoCertificate iso_impl(const ModuleMap& f)
{
    const RingSpec& ring = f.source().ring();
    const auto& a = f.source().core<T>().orders;
    const auto& b = f.target().core<T>().orders;
    const std::size_t ka = a.size(), kb = b.size();
    Matrix<T> m = f.matrix().as<T>().hconcat(diagonal(b));

    IsoCertificate cert;
    auto image = Lattice<T>::from_generators(m);
    cert.surjective = true;
    for (std::size_t i = 0; i < kb; ++i) {
        Vec<T> e(kb);
        e[i] = 1;
        if (!image.contains(e)) {
            cert.surjective = false;
            cert.cokernel_witness = to_exact(ring, e);
            break;
        }
    }

    auto kernel = Lattice<T>::kernel(m);
    cert.injective = true;
    for (std::size_t j = 0; j < kernel.rank() && cert.injective; ++j) {
        Vec<T> v = kernel.basis().column(j);
        v.resize(ka);
        for (std::size_t i = 0; i < ka; ++i)
            if (!detail::divides(a[i], v[i])) {
                cert.injective = false;
                for (std::size_t t = 0; t < ka; ++t)
                    v[t] = detail::residue(v[t], a[t]);
                cert.kernel_witness = to_exact(ring, v);
                break;
            }
    }

    if (cert.is_isomorphism()) {
        Matrix<T> g(ka, kb);
        for (std::size_t i = 0; i < kb; ++i) {
            Vec<T> e(kb);
            e[i] = 1;
            Vec<T> c = *image.solve(e);
            c.resize(ka);
            g.set_column(i, c);
        }
        cert.inverse = ModuleMap(f.target(), f.source(), to_exact(ring, g));
    }
    return cert;
}

template <class T>
bool exact_impl(const ModuleMap& f, const ModuleMap& g)
{
    const auto& b = f.target().core<T>().orders;
    const auto& c = g.target().core<T>().orders;
    const std::size_t kb = b.size();
    auto image = Lattice<T>::from_generators(f.matrix().as<T>().hconcat(diagonal(b)));
    auto k = Lattice<T>::kernel(g.matrix().as<T>().hconcat(diagonal(c)));
    Matrix<T> proj = k.basis().row_block(0, kb).hconcat(diagonal(b));
    return image == Lattice<T>::from_generators(proj);
}

} // namespace

ModuleMap induced_map(const ExactMatrix& f, const FPModule& src, const FPModule& dst)
{
    if (!(f.ring() == src.ring()) || !(f.ring() == dst.ring()))
        throw Error(ErrorKind::RingMismatch, "chain map and modules over different rings");
    if (f.cols() != src.ambient_dimension() || f.rows() != dst.ambient_dimension())
        throw Error(ErrorKind::InvalidArgument, "chain map has the wrong shape");
    return with_domain(f.ring(), [&](auto tag) { return induced_impl<decltype(tag)>(f, src, dst); });
}

IsoCertificate is_isomorphism(const ModuleMap& f)
{
    return with_domain(f.source().ring(), [&](auto tag) { return iso_impl<decltype(tag)>(f); });
}

bool is_exact_at(const ModuleMap& f, const ModuleMap& g)
{
    if (!f.target().same_presentation(g.source()))
        throw Error(ErrorKind::InvalidArgument, "maps do not share the middle module");
    return with_domain(f.target().ring(), [&](auto tag) { return exact_impl<decltype(tag)>(f, g); });
}

} // namespace tdual
