#include "tdual/fundamental.hpp"

#include "tdual/cover.hpp"
#include "tdual/error.hpp"

namespace tdual {

ExactMatrix orientation_chain(const LocalSystem& w)
{
    const auto& c = *w.base();
    const int n = c.dimension();
    ExactMatrix nu(w.ring(), c.count(n), 1);
    for (std::size_t i = 0; i < c.count(n); ++i)
        nu.set(i, 0, local_orientation(c, c.simplex(n, i)[0], i));
    return nu;
}

std::optional<Simplex> boundary_witness(const LocalSystem& w, const ExactMatrix& chain)
{
    auto chains = TwistedComplex::absolute(w);
    const int n = chains.top_dimension();
    auto d = chains.boundary(n) * chain;
    for (std::size_t r = 0; r < d.rows(); ++r)
        if (d.at(r, 0) != 0)
            return w.base()->simplex(n - 1, chains.simplices(n - 1)[r / w.rank()]);
    return std::nullopt;
}

FundamentalClass fundamental_class(const LocalSystem& w)
{
    if (w.rank() != 1)
        throw Error(ErrorKind::InvalidArgument, "fundamental class needs a rank-1 system");
    FundamentalClass nu{w, orientation_chain(w)};
    if (auto r = boundary_witness(w, nu.cycle)) {
        std::string s;
        for (int v : *r)
            s += (s.empty() ? "" : " ") + std::to_string(v);
        throw Error(ErrorKind::NotACycle, "boundary of the orientation chain is nonzero on ridge [" + s + "]");
    }
    if (!is_locally_generating(nu))
        throw Error(ErrorKind::NotACycle, "orientation chain does not generate the local homology");
    return nu;
}

FundamentalClass fundamental_class_direct(ComplexPtr m, const RingSpec& ring)
{
    return fundamental_class(orientation_system(std::move(m), ring));
}

FundamentalClass fundamental_class_via_cover(ComplexPtr m, const RingSpec& ring)
{
    if (!ring.two_is_nonzero())
        throw Error(ErrorKind::TwoIsZero, "the cover construction needs 2 != 0 in " + ring.name());
    auto cover = orientation_double_cover(m);
    auto z = cover_fundamental_cycle(cover, ring);
    if (!(deck_action(cover, ring, m->dimension()) * z == -z))
        throw Error(ErrorKind::NotACycle, "cover cycle is not anti-invariant under the deck transformation");
    const int n = m->dimension();
    ExactMatrix nu(ring, m->count(n), 1);
    for (std::size_t i = 0; i < m->count(n); ++i)
        nu.set(i, 0, z.at(cover.total->index(cover.lift(m->simplex(n, i), 0)), 0));
    return {orientation_system(std::move(m), ring), nu};
}

ExactMatrix restrict_to(const FundamentalClass& nu, const FullSubcomplex& k)
{
    return TwistedComplex::relative(nu.system, k).from_ambient(nu.system.base()->dimension(), nu.cycle);
}

bool inclusion_restriction(const FundamentalClass& nu, const FullSubcomplex& k1, const FullSubcomplex& k2)
{
    if (!k1.subset_of(k2))
        throw Error(ErrorKind::InvalidArgument, "restriction needs K1 inside K2");
    const int n = nu.system.base()->dimension();
    auto r1 = TwistedComplex::relative(nu.system, k1);
    auto r2 = TwistedComplex::relative(nu.system, k2);
    auto image = r2.transfer_to(r1, n) * restrict_to(nu, k2);
    return r1.homology(n).same_class(image, restrict_to(nu, k1));
}

bool is_locally_generating(const FundamentalClass& nu)
{
    const auto& c = nu.system.base();
    const int n = c->dimension();
    for (int v = 0; v < c->vertex_count(); ++v) {
        FullSubcomplex x(c, {v});
        auto rel = TwistedComplex::relative(nu.system, x);
        if (!rel.homology(n).is_generator_of_rank_one(rel.from_ambient(n, nu.cycle)))
            return false;
    }
    return true;
}

} // namespace tdual
