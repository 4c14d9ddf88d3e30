#include "tdual/error.hpp"
#include "tdual/mayer_vietoris.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <random>
#include <set>

using namespace tdual;

namespace {

auto kind_is(ErrorKind k)
{
    return Catch::Matchers::Predicate<Error>([k](const Error& e) { return e.kind() == k; });
}

// Betti numbers of a subcomplex, computed on a relabeled copy.
std::vector<std::size_t> sub_betti(const Subcomplex& s, int top, long p)
{
    std::vector<std::size_t> out(top + 1, 0);
    const auto& m = *s.ambient();
    std::vector<Simplex> all;
    for (int k = 0; k <= m.dimension(); ++k)
        for (std::size_t i = 0; i < m.count(k); ++i)
            if (s.contains(k, i))
                all.push_back(m.simplex(k, i));
    if (all.empty())
        return out;
    std::map<int, int> label;
    for (const auto& x : all)
        for (int v : x)
            label.emplace(v, 0);
    int next = 0;
    for (auto& [v, l] : label)
        l = next++;
    for (auto& x : all)
        for (int& v : x)
            v = label[v];
    auto b = oracle::betti(SimplicialComplex(next, all), p);
    for (std::size_t k = 0; k < b.size(); ++k)
        out[k] = b[k];
    return out;
}

std::size_t free_rank(const FPModule& m)
{
    return m.normal_form().free_rank;
}

std::size_t index_of(const ExactSequenceReport& r, const std::string& label)
{
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
        if (r.nodes[i].label == label)
            return i;
    FAIL("missing node " << label);
    return 0;
}

std::string hk(int k, const std::string& space)
{
    return "H_" + std::to_string(k) + "(" + space + ")";
}

RingSpec ring_for(long p)
{
    return p ? RingSpec::modular(p) : RingSpec::rationals();
}

// Facets of a 6 x 3 grid lying in the squares between the given columns.
std::vector<Simplex> grid_squares(const SimplicialComplex& m, const std::set<int>& columns)
{
    std::vector<Simplex> out;
    for (const auto& f : m.facets()) {
        std::set<int> cols;
        for (int v : f)
            cols.insert(v / 3);
        int c = *cols.begin();
        if (cols == std::set<int>{0, 5})
            c = 5;
        if (columns.count(c))
            out.push_back(f);
    }
    return out;
}

ExactMatrix random_cochain(const RingSpec& ring, std::size_t n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> d(-4, 4);
    ExactMatrix v(ring, n, 1);
    for (std::size_t i = 0; i < n; ++i)
        v.set(i, 0, d(rng));
    return v;
}

CoverPair relative_fixture_pair(const MVFixture& f)
{
    return CoverPair::relative(f.u, f.v, f.u.intersect(f.k.complement().as_subcomplex()),
                               f.v.intersect(f.l.complement().as_subcomplex()));
}

} // namespace

TEST_CASE("cover fixtures are closed surfaces covered by two pieces", "[mayer_vietoris]")
{
    const std::map<std::string, long> chi = {
        {"octahedron", 2}, {"torus", 0}, {"sphere-grid", 2}, {"torus-grid", 0}, {"klein-grid", 0}};
    for (const auto& name : mv_fixture_names()) {
        INFO(name);
        auto f = mv_fixture(name);
        auto report = validate(*f.complex);
        CHECK(report.passes());
        CHECK(report.euler_characteristic == chi.at(name));
        CHECK(f.u.unite(f.v) == Subcomplex::whole(f.complex));
        CHECK(f.k.as_subcomplex().subset_of(f.u));
        CHECK(f.l.as_subcomplex().subset_of(f.v));
    }
    CHECK_THROWS_MATCHES(mv_fixture("moebius"), Error, kind_is(ErrorKind::UnknownName));
    auto klein = mv_fixture("klein-grid");
    CHECK_FALSE(is_trivializable(orientation_system(klein.complex, RingSpec::integers())).trivializable);
}

TEST_CASE("homology sequence nodes match independent Betti numbers", "[mayer_vietoris]")
{
    for (const auto& name : mv_fixture_names())
        for (long p : {0L, 3L}) {
            INFO(name << " p=" << p);
            auto f = mv_fixture(name);
            const auto g = constant_system(f.complex, ring_for(p), 1);
            const auto r = mv_homology(CoverPair::absolute(f.u, f.v), g);
            CHECK(r.all_exact());
            const auto bab = sub_betti(f.u.intersect(f.v), 2, p);
            const auto ba = sub_betti(f.u, 2, p), bb = sub_betti(f.v, 2, p);
            const auto bx = oracle::betti(*f.complex, p);
            for (int k = 0; k <= 2; ++k) {
                CHECK(free_rank(r.node(hk(k, "A&B")).module) == bab[k]);
                CHECK(free_rank(r.node(hk(k, "A") + "+" + hk(k, "B")).module) == ba[k] + bb[k]);
                CHECK(free_rank(r.node(hk(k, "X")).module) == bx[k]);
            }
            const auto c = mv_cohomology(CoverPair::absolute(f.u, f.v), g);
            CHECK(c.all_exact());
            for (int k = 0; k <= 2; ++k)
                CHECK(free_rank(c.node("H^" + std::to_string(k) + "(A&B)").module) == bab[k]);
        }
}

TEST_CASE("octahedron halves recover the top class from a circle", "[mayer_vietoris]")
{
    auto f = mv_fixture("octahedron");
    const auto g = constant_system(f.complex, RingSpec::integers(), 1);
    const auto r = mv_homology(CoverPair::absolute(f.u, f.v), g);
    CHECK(r.node("H_2(X)").module.to_string() == "Z");
    CHECK(r.node("H_1(A&B)").module.to_string() == "Z");
    CHECK(r.node("H_2(A)+H_2(B)").module.is_zero());
    CHECK(r.node("H_1(A)+H_1(B)").module.is_zero());
    const std::size_t top = index_of(r, "H_2(X)");
    CHECK(is_isomorphism(r.maps[top]).is_isomorphism());

    const auto c = mv_cohomology(CoverPair::absolute(f.u, f.v), g);
    CHECK(c.all_exact());
    CHECK(c.node("H^2(X)").module.to_string() == "Z");
    CHECK(is_isomorphism(c.maps[index_of(c, "H^1(A&B)")]).is_isomorphism());

    const auto t = r.table();
    CHECK(t.columns == std::vector<std::string>{"position", "node", "module", "exact"});
    CHECK(t.rows.size() == 9);
    CHECK(t.rows[2] == std::vector<std::string>{"2", "H_2(X)", "Z", "true"});
}

TEST_CASE("7-vertex torus bands give rank two first homology", "[mayer_vietoris]")
{
    auto f = mv_fixture("torus");
    for (const auto& ring : {RingSpec::integers(), RingSpec::modular(3)}) {
        const auto g = constant_system(f.complex, ring, 1);
        const auto r = mv_homology(CoverPair::absolute(f.u, f.v), g);
        CHECK(r.all_exact());
        CHECK(free_rank(r.node("H_1(X)").module) == 2);
        CHECK(r.node("H_1(X)").module.normal_form().torsion.empty());
        const auto c = mv_cohomology(CoverPair::absolute(f.u, f.v), g);
        CHECK(c.all_exact());
        CHECK(free_rank(c.node("H^1(X)").module) == 2);
    }
}

TEST_CASE("sequences are exact for twisted, random and relative data", "[mayer_vietoris]")
{
    for (const auto& name : mv_fixture_names())
        for (const auto& ring : {RingSpec::integers(), RingSpec::modular(3)}) {
            INFO(name << " " << ring.name());
            auto f = mv_fixture(name);
            const std::vector<LocalSystem> systems = {constant_system(f.complex, ring, 1),
                                                      orientation_system(f.complex, ring),
                                                      random_flat_system(f.complex, ring, 2, 11)};
            for (const auto& g : systems) {
                CHECK(mv_homology(CoverPair::absolute(f.u, f.v), g).all_exact());
                CHECK(mv_cohomology(CoverPair::absolute(f.u, f.v), g).all_exact());
                CHECK(mv_homology(relative_fixture_pair(f), g).all_exact());
                CHECK(mv_cohomology(relative_fixture_pair(f), g).all_exact());
            }
            const auto whole = Subcomplex::whole(f.complex);
            const auto top = CoverPair::relative(whole, whole, f.k.complement().as_subcomplex(),
                                                 f.l.complement().as_subcomplex());
            CHECK(mv_cohomology(top, orientation_system(f.complex, ring)).all_exact());
        }

    // Twisted klein: the integral orientation system gives torsion in H_0.
    auto f = mv_fixture("klein-grid");
    const auto r = mv_homology(CoverPair::absolute(f.u, f.v), orientation_system(f.complex, RingSpec::integers()));
    CHECK(r.all_exact());
    CHECK(r.node("H_0(X)").module.to_string() == "Z/2");
    CHECK(r.node("H_2(X)").module.to_string() == "Z");
}

TEST_CASE("resampled presentations keep the sequence exact", "[mayer_vietoris]")
{
    auto f = mv_fixture("torus-grid");
    const auto g = random_flat_system(f.complex, RingSpec::integers(), 2, 5);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto r = mv_homology(CoverPair::absolute(f.u, f.v), g, seed);
        CHECK(r.all_exact());
        CHECK_FALSE(r.node("H_1(X)").module.same_presentation(
            mv_homology(CoverPair::absolute(f.u, f.v), g).node("H_1(X)").module));
        CHECK(mv_cohomology(relative_fixture_pair(f), g, seed).all_exact());
    }
}

TEST_CASE("disjoint pieces reduce the sequence to additivity", "[mayer_vietoris]")
{
    auto m = share(SimplicialComplex(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}));
    const auto a = Subcomplex::closure(m, {{0, 1}, {1, 2}, {0, 2}});
    const auto b = Subcomplex::closure(m, {{3, 4}, {4, 5}, {3, 5}});
    const auto g = constant_system(m, RingSpec::integers(), 1);
    const auto r = mv_homology(CoverPair::absolute(a, b), g);
    CHECK(r.all_exact());
    for (int k = 0; k <= 1; ++k) {
        CHECK(r.node(hk(k, "A&B")).module.is_zero());
        CHECK(r.node(hk(k, "X")).module.to_string() == "Z^2");
        CHECK(is_isomorphism(r.maps[index_of(r, hk(k, "A") + "+" + hk(k, "B"))]).is_isomorphism());
    }
    const auto c = mv_cohomology(CoverPair::absolute(a, b), g);
    CHECK(c.all_exact());
    for (int k = 0; k <= 1; ++k)
        CHECK(is_isomorphism(c.maps[index_of(c, "H^" + std::to_string(k) + "(X)")]).is_isomorphism());
}

TEST_CASE("pieces on different complexes or misplaced C, D are rejected", "[mayer_vietoris]")
{
    auto f = mv_fixture("octahedron");
    auto other = mv_fixture("torus");
    const auto g = constant_system(f.complex, RingSpec::integers(), 1);
    CHECK_THROWS_MATCHES(mv_homology(CoverPair::absolute(f.u, other.v), g), Error, kind_is(ErrorKind::NotACover));
    CHECK_THROWS_MATCHES(mv_homology(CoverPair::relative(f.u, f.v, f.v, Subcomplex::empty(f.complex)), g), Error,
                         kind_is(ErrorKind::NotACover));
    CHECK_THROWS_MATCHES(mv_cohomology(CoverPair::relative(f.u, f.v, Subcomplex::empty(f.complex), f.u), g), Error,
                         kind_is(ErrorKind::NotACover));
    const auto h = constant_system(other.complex, RingSpec::integers(), 1);
    CHECK_THROWS_MATCHES(mv_homology(CoverPair::absolute(f.u, f.v), h), Error, kind_is(ErrorKind::BaseMismatch));
}

TEST_CASE("cochain splitting satisfies its defining equation", "[mayer_vietoris]")
{
    SECTION("trivial inputs")
    {
        auto f = mv_fixture("torus");
        const auto g = constant_system(f.complex, RingSpec::integers(), 1);
        const auto pair = relative_fixture_pair(f);
        const TwistedComplex ab(g, f.u.intersect(f.v), pair.c.intersect(pair.d));
        const TwistedComplex a(g, pair.a, pair.c);
        const auto zero = mv_splitting(pair, g, 1, ExactMatrix(g.ring(), ab.dimension(1), 1));
        CHECK(zero.holds);
        CHECK(zero.beta.is_zero());
        CHECK(zero.gamma.is_zero());

        ExactMatrix outside(g.ring(), ab.dimension(1), 1);
        for (std::size_t p = 0; p < ab.simplices(1).size(); ++p)
            if (!pair.c.contains(1, ab.simplices(1)[p]))
                outside.set(p, 0, static_cast<long>(p) + 1);
        const auto s = mv_splitting(pair, g, 1, outside);
        CHECK(s.holds);
        CHECK(s.gamma.is_zero());
        CHECK(s.beta == ab.transfer_to(a, 1) * outside);

        CHECK_THROWS_MATCHES(mv_splitting(pair, g, 1, ExactMatrix(g.ring(), 1, 1)), Error,
                             kind_is(ErrorKind::DegreeMismatch));
    }

    SECTION("exhaustive over basis cochains")
    {
        for (const auto& name : {"octahedron", "torus"}) {
            auto f = mv_fixture(name);
            REQUIRE(f.complex->count(2) <= 30);
            for (const auto& g :
                 {constant_system(f.complex, RingSpec::integers(), 1), orientation_system(f.complex, RingSpec::modular(5)),
                  random_flat_system(f.complex, RingSpec::integers(), 2, 3)})
                for (const auto& pair : {CoverPair::absolute(f.u, f.v), relative_fixture_pair(f)}) {
                    const TwistedComplex ab(g, pair.a.intersect(pair.b), pair.c.intersect(pair.d));
                    for (int k = 0; k <= 2; ++k) {
                        std::size_t nonzero_gamma = 0;
                        for (std::size_t i = 0; i < ab.dimension(k); ++i) {
                            ExactMatrix alpha(g.ring(), ab.dimension(k), 1);
                            alpha.set(i, 0, 1);
                            const auto s = mv_splitting(pair, g, k, alpha);
                            CHECK(s.holds);
                            nonzero_gamma += !s.gamma.is_zero();
                        }
                        if (pair.c.is_empty())
                            CHECK(nonzero_gamma == 0);
                    }
                }
        }
    }

    SECTION("random cochains on the torus bands")
    {
        auto f = mv_fixture("torus");
        const auto g = constant_system(f.complex, RingSpec::integers(), 1);
        const auto pair = relative_fixture_pair(f);
        const TwistedComplex ab(g, pair.a.intersect(pair.b), pair.c.intersect(pair.d));
        std::mt19937_64 rng(17);
        for (int seed = 0; seed < 100; ++seed) {
            const int k = seed % 3;
            CHECK(mv_splitting(pair, g, k, random_cochain(g.ring(), ab.dimension(k), rng)).holds);
        }
    }
}

TEST_CASE("connecting maps are natural for a refined cover", "[mayer_vietoris]")
{
    auto f = mv_fixture("torus-grid");
    const auto a_small = Subcomplex::closure(f.complex, grid_squares(*f.complex, {5, 0, 1, 2}));
    REQUIRE(a_small.subset_of(f.u));
    REQUIRE(a_small.unite(f.v) == Subcomplex::whole(f.complex));
    for (const auto& g : {constant_system(f.complex, RingSpec::integers(), 1),
                          random_flat_system(f.complex, RingSpec::integers(), 2, 8)}) {
        const auto coarse = mv_homology(CoverPair::absolute(f.u, f.v), g);
        const auto fine = mv_homology(CoverPair::absolute(a_small, f.v), g);
        const TwistedComplex ab_fine(g, a_small.intersect(f.v), Subcomplex::empty(f.complex));
        const TwistedComplex ab_coarse(g, f.u.intersect(f.v), Subcomplex::empty(f.complex));
        for (int k = 1; k <= 2; ++k) {
            const std::size_t xi = index_of(coarse, hk(k, "X")), xf = index_of(fine, hk(k, "X"));
            const auto& x_coarse = coarse.nodes[xi].module;
            const auto& x_fine = fine.nodes[xf].module;
            const auto id = induced_map(ExactMatrix::identity(g.ring(), x_fine.ambient_dimension()), x_fine, x_coarse);
            const auto incl = induced_map(ab_fine.transfer_to(ab_coarse, k - 1), fine.nodes[xf + 1].module,
                                          coarse.nodes[xi + 1].module);
            CHECK(fine.maps[xf].then(incl) == id.then(coarse.maps[xi]));
        }
    }
}

TEST_CASE("diagram of duality maps commutes up to the connecting sign", "[mayer_vietoris]")
{
    struct Case {
        const char* fixture;
        bool twisted;
    };
    for (const Case& c : {Case{"sphere-grid", false}, Case{"torus-grid", false}, Case{"klein-grid", true},
                          Case{"torus-grid", true}}) {
        for (const auto& ring : {RingSpec::integers(), RingSpec::modular(3), RingSpec::rationals()}) {
            INFO(c.fixture << " twisted=" << c.twisted << " " << ring.name());
            auto f = mv_fixture(c.fixture);
            const auto g = c.twisted ? orientation_system(f.complex, ring) : constant_system(f.complex, ring, 1);
            const auto report = diagram6_check(g, f.u, f.v, f.k, f.l);
            CHECK(report.blocks.size() == 8);
            CHECK(report.middle_blocks_commute());
            CHECK(report.connecting_sign() == -1);
            for (std::uint64_t seed : {1u, 2u}) {
                const auto again = diagram6_check(g, f.u, f.v, f.k, f.l, seed);
                CHECK(again.middle_blocks_commute());
                CHECK(again.connecting_sign() == -1);
            }
        }
    }

    // The random rank-two system only leaves 2-torsion in the connecting
    // blocks, where both signs fit.
    auto f = mv_fixture("torus-grid");
    const auto g = random_flat_system(f.complex, RingSpec::integers(), 2, 4);
    const auto report = diagram6_check(g, f.u, f.v, f.k, f.l);
    CHECK(report.middle_blocks_commute());
    CHECK((report.connecting_sign() == -1 || report.connecting_sign() == 0));

    const auto constant = diagram6_check(constant_system(f.complex, RingSpec::integers(), 1), f.u, f.v, f.k, f.l);
    const auto t = constant.table();
    CHECK(t.columns == std::vector<std::string>{"degree", "block", "sign"});
    CHECK(t.rows[2] == std::vector<std::string>{"0", "connecting", "-1"});
}

TEST_CASE("diagram with disjoint K and L leaves the connecting sign open", "[mayer_vietoris]")
{
    auto f = mv_fixture("torus");
    const auto g = constant_system(f.complex, RingSpec::integers(), 1);
    const auto report = diagram6_check(g, f.u, f.v, f.k, f.l);
    CHECK(report.middle_blocks_commute());
    CHECK(report.connecting_sign() == 0);
}

TEST_CASE("diagram check rejects bad covers", "[mayer_vietoris]")
{
    auto f = mv_fixture("torus-grid");
    const auto g = constant_system(f.complex, RingSpec::integers(), 1);
    CHECK_THROWS_MATCHES(diagram6_check(g, f.u, f.u, f.k, f.k), Error, kind_is(ErrorKind::NotACover));
    CHECK_THROWS_MATCHES(diagram6_check(g, f.u, f.v, f.l, f.k), Error, kind_is(ErrorKind::NotACover));
    auto other = mv_fixture("klein-grid");
    CHECK_THROWS_MATCHES(diagram6_check(g, other.u, other.v, f.k, f.l), Error, kind_is(ErrorKind::BaseMismatch));
}
