#include "tdual/cover.hpp"

#include "tdual/error.hpp"

#include <deque>
#include <numeric>

namespace tdual {

Simplex DoubleCover::lift(const Simplex& s, int sheet_at_lowest) const
{
    Simplex out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        int sh = sheet_at_lowest;
        if (i > 0 && omega.sign(s[0], s[i]) == -1)
            sh ^= 1;
        out.push_back(vertex(s[i], sh));
    }
    return out;
}

Simplex DoubleCover::project(const Simplex& s)
{
    Simplex out;
    for (int w : s)
        out.push_back(below(w));
    return out;
}

Simplex DoubleCover::deck(const Simplex& s)
{
    Simplex out;
    for (int w : s)
        out.push_back(deck(w));
    return out;
}

FullSubcomplex DoubleCover::preimage(const FullSubcomplex& k) const
{
    std::vector<int> vs;
    for (int v : k.vertices()) {
        vs.push_back(vertex(v, 0));
        vs.push_back(vertex(v, 1));
    }
    return FullSubcomplex(total, vs);
}

bool DoubleCover::connected() const
{
    std::vector<int> parent(total->vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : total->simplices(1))
        parent[find(e[0])] = find(e[1]);
    for (int v = 1; v < total->vertex_count(); ++v)
        if (find(v) != find(0))
            return false;
    return true;
}

DoubleCover build_double_cover(const LocalSystem& omega)
{
    if (!omega.is_sign_system() || !omega.ring().two_is_nonzero())
        throw Error(ErrorKind::NotSignSystem, "a double cover needs a rank-1 system of signs +1/-1 with -1 != 1");
    auto flat = validate_flatness(omega);
    if (!flat.flat)
        throw Error(ErrorKind::FlatnessViolation, "sign system is not flat");
    DoubleCover cover;
    cover.base = omega.base();
    cover.omega = omega;
    std::vector<Simplex> facets;
    for (const auto& s : cover.base->maximal_simplices()) {
        facets.push_back(cover.lift(s, 0));
        facets.push_back(cover.lift(s, 1));
    }
    cover.total = share(SimplicialComplex(2 * cover.base->vertex_count(), facets));
    verify_cover(cover);
    return cover;
}

DoubleCover orientation_double_cover(ComplexPtr base)
{
    auto cover = build_double_cover(orientation_system(std::move(base), RingSpec::integers()));
    cover.orientation_cover = true;
    return cover;
}

void verify_cover(const DoubleCover& cover)
{
    const auto& b = *cover.base;
    const auto& t = *cover.total;
    if (t.dimension() != b.dimension())
        throw Error(ErrorKind::NotACover, "cover and base differ in dimension");
    for (int k = 0; k <= b.dimension(); ++k) {
        if (t.count(k) != 2 * b.count(k))
            throw Error(ErrorKind::NotACover, "degree " + std::to_string(k) + " is not covered twice");
        for (const auto& s : t.simplices(k)) {
            auto p = DoubleCover::project(s);
            if (!b.find(p) || std::adjacent_find(p.begin(), p.end()) != p.end())
                throw Error(ErrorKind::NotACover, "projection is not simplicial");
            if (!t.find(DoubleCover::deck(s)))
                throw Error(ErrorKind::NotACover, "deck transformation leaves the cover");
        }
        for (const auto& s : b.simplices(k)) {
            auto a = cover.lift(s, 0), c = cover.lift(s, 1);
            if (!t.find(a) || !t.find(c) || DoubleCover::deck(a) != c)
                throw Error(ErrorKind::NotACover, "simplex does not lift to two swapped copies");
        }
    }
}

std::vector<int> orient_cover(const DoubleCover& cover)
{
    const auto& t = *cover.total;
    const int n = t.dimension();
    const auto& facets = t.facets();
    std::vector<int> sign(facets.size(), 0);
    for (std::size_t seed = 0; seed < facets.size(); ++seed) {
        if (sign[seed] != 0)
            continue;
        int s = 1;
        if (cover.orientation_cover) {
            const int w0 = facets[seed][0];
            auto base_facet = cover.base->index(DoubleCover::project(facets[seed]));
            s = (DoubleCover::sheet(w0) ? -1 : 1) * local_orientation(*cover.base, DoubleCover::below(w0), base_facet);
        }
        sign[seed] = s;
        std::deque<std::size_t> queue{seed};
        while (!queue.empty()) {
            std::size_t f = queue.front();
            queue.pop_front();
            for (int j = 0; j <= n; ++j) {
                std::size_t r = t.face(n, f, j);
                const auto& co = t.cofacets(r);
                if (co.size() != 2)
                    throw Error(ErrorKind::IncoherentCover, "ridge lies in " + std::to_string(co.size()) + " facets");
                const Simplex& rs = t.simplex(n - 1, r);
                for (std::size_t o : co) {
                    if (o == f)
                        continue;
                    int want = -sign[f] * incidence_sign(facets[f], rs) * incidence_sign(facets[o], rs);
                    if (sign[o] == 0) {
                        sign[o] = want;
                        queue.push_back(o);
                    } else if (sign[o] != want) {
                        throw Error(ErrorKind::IncoherentCover, "cover component is not orientable");
                    }
                }
            }
        }
    }
    return sign;
}

ExactMatrix cover_fundamental_cycle(const DoubleCover& cover, const RingSpec& ring)
{
    auto sign = orient_cover(cover);
    ExactMatrix z(ring, sign.size(), 1);
    for (std::size_t i = 0; i < sign.size(); ++i)
        z.set(i, 0, sign[i]);
    return z;
}

ExactMatrix deck_action(const DoubleCover& cover, const RingSpec& ring, int k)
{
    const auto& t = *cover.total;
    ExactMatrix m(ring, t.count(k), t.count(k));
    for (std::size_t j = 0; j < t.count(k); ++j)
        m.set(t.index(DoubleCover::deck(t.simplex(k, j))), j, 1);
    return m;
}

namespace {

LocalSystem sign_system_over(const LocalSystem& omega, const RingSpec& ring)
{
    std::vector<ExactMatrix> t;
    for (const auto& e : omega.base()->simplices(1))
        t.push_back(ExactMatrix::from_rows(ring, {{omega.sign(e[0], e[1])}}));
    return LocalSystem(omega.base(), ring, 1, std::move(t));
}

} // namespace

CoverSplitting split_maps(const DoubleCover& cover, const RingSpec& ring, const FullSubcomplex& k)
{
    if (!ring.two_is_nonzero())
        throw Error(ErrorKind::TwoIsZero, "cover splitting needs 2 != 0 in " + ring.name());
    CoverSplitting s;
    s.total = TwistedComplex::relative(constant_system(cover.total, ring, 1), cover.preimage(k));
    s.plus = TwistedComplex::relative(constant_system(cover.base, ring, 1), k);
    s.minus = TwistedComplex::relative(sign_system_over(cover.omega, ring), k);
    const int n = cover.base->dimension();
    const auto& t = *cover.total;
    for (int d = 0; d <= n; ++d) {
        const std::size_t tn = s.total.dimension(d), bn = s.plus.dimension(d);
        ExactMatrix sigma(ring, bn, tn), delta(ring, bn, tn), ip(ring, tn, bn), im(ring, tn, bn), rep(ring, bn, tn);
        for (std::size_t p = 0; p < bn; ++p) {
            const Simplex& base_s = cover.base->simplex(d, s.plus.simplices(d)[p]);
            auto a = *s.total.position(d, t.index(cover.lift(base_s, 0)));
            auto b = *s.total.position(d, t.index(cover.lift(base_s, 1)));
            sigma.set(p, a, 1);
            sigma.set(p, b, 1);
            delta.set(p, a, 1);
            delta.set(p, b, -1);
            ip.set(a, p, 1);
            ip.set(b, p, 1);
            im.set(a, p, 1);
            im.set(b, p, -1);
            rep.set(p, a, 1);
        }
        s.sigma_map.push_back(std::move(sigma));
        s.delta_map.push_back(std::move(delta));
        s.incl_plus.push_back(std::move(ip));
        s.incl_minus.push_back(std::move(im));
        s.rep_coordinate.push_back(std::move(rep));
        s.phi.push_back(ExactMatrix::identity(ring, bn));
    }
    s.minus_boundary.push_back(ExactMatrix(ring, 0, s.minus.dimension(0)));
    for (int d = 1; d <= n; ++d)
        s.minus_boundary.push_back(s.rep_coordinate[d - 1] * s.total.boundary(d) * s.incl_minus[d]);
    return s;
}

bool phi_identify(const CoverSplitting& s)
{
    for (int d = 0; d <= s.top_dimension(); ++d) {
        const auto& phi = s.phi[d];
        if (phi.rows() != s.minus.dimension(d) || phi.cols() != s.plus.dimension(d) || !phi.inverse())
            return false;
        if (d > 0 && !(s.minus.boundary(d) * phi == s.phi[d - 1] * s.minus_boundary[d]))
            return false;
    }
    return true;
}

namespace {

// 0 -> A -i-> B -p-> C -> 0 on free modules.
bool short_exact(const RingSpec& ring, const ExactMatrix& i, const ExactMatrix& p)
{
    auto a = FPModule::free(ring, i.cols());
    auto b = FPModule::free(ring, i.rows());
    auto c = FPModule::free(ring, p.rows());
    auto zero = FPModule::free(ring, 0);
    auto in = induced_map(i, a, b);
    auto out = induced_map(p, b, c);
    return is_exact_at(ModuleMap::zero(zero, a), in) && is_exact_at(in, out) &&
           is_exact_at(out, ModuleMap::zero(c, zero));
}

} // namespace

bool short_sequences_exact(const CoverSplitting& s)
{
    const RingSpec& ring = s.total.ring();
    for (int d = 0; d <= s.top_dimension(); ++d) {
        if (!short_exact(ring, s.incl_minus[d], s.sigma_map[d]) || !short_exact(ring, s.incl_plus[d], s.delta_map[d]))
            return false;
    }
    return true;
}

ModuleMap pushforward(const DoubleCover& cover, const RingSpec& ring, const FullSubcomplex& k, int degree)
{
    auto s = split_maps(cover, ring, k);
    return induced_map(s.sigma_map.at(degree), s.total.homology(degree), s.plus.homology(degree));
}

bool lemma1_check(const DoubleCover& cover, const RingSpec& ring)
{
    auto z = cover_fundamental_cycle(cover, ring);
    return deck_action(cover, ring, cover.total->dimension()) * z == -z;
}

ExactMatrix pushforward_fundamental_cycle(const DoubleCover& cover, const RingSpec& ring, const FullSubcomplex& k)
{
    auto z = cover_fundamental_cycle(cover, ring);
    const int n = cover.base->dimension();
    const auto& t = *cover.total;
    ExactMatrix pushed(ring, cover.base->count(n), 1);
    for (std::size_t j = 0; j < t.count(n); ++j)
        pushed.add_to(cover.base->index(DoubleCover::project(t.simplex(n, j))), 0, z.at(j, 0));
    return TwistedComplex::relative(constant_system(cover.base, ring, 1), k).from_ambient(n, pushed);
}

bool lemma2_check(const DoubleCover& cover, const RingSpec& ring, const FullSubcomplex& k)
{
    auto rel = TwistedComplex::relative(constant_system(cover.base, ring, 1), k);
    const int n = cover.base->dimension();
    return rel.homology(n).is_zero_class(pushforward_fundamental_cycle(cover, ring, k));
}

} // namespace tdual
