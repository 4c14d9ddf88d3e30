#include "tdual/error.hpp"
#include "tdual/local_system.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace tdual;

namespace {

auto kind_is(ErrorKind k)
{
    return Catch::Matchers::Predicate<Error>([k](const Error& e) { return e.kind() == k; });
}

// Non-face 3-cycles of a complex with complete 1-skeleton.
std::vector<std::vector<int>> empty_triangles(const SimplicialComplex& c)
{
    std::vector<std::vector<int>> out;
    for (int a = 0; a < c.vertex_count(); ++a)
        for (int b = a + 1; b < c.vertex_count(); ++b)
            for (int d = b + 1; d < c.vertex_count(); ++d)
                if (c.find({a, b}) && c.find({b, d}) && c.find({a, d}) && !c.find({a, b, d}))
                    out.push_back({a, b, d});
    return out;
}

} // namespace

TEST_CASE("orientation systems are flat and detect orientability")
{
    const std::vector<std::pair<std::string, bool>> orientable = {
        {"circle", true}, {"sphere2", true}, {"torus", true}, {"rp2", false},
        {"klein", false}, {"rp3", true},     {"sphere3", true},
    };
    for (const auto& [name, expected] : orientable) {
        INFO(name);
        auto c = share(corpus(name));
        auto w = orientation_system(c, RingSpec::integers());
        CHECK(w.is_sign_system());
        CHECK(validate_flatness(w).flat);
        auto t = is_trivializable(w);
        CHECK(t.trivializable == expected);
        if (t.trivializable) {
            auto trivial = gauge_transform(w, t.gauge);
            for (std::size_t e = 0; e < c->count(1); ++e)
                CHECK(trivial.edge_transport(e) == ExactMatrix::identity(w.ring(), 1));
        } else {
            CHECK(t.failing_edge.has_value());
        }
    }
}

TEST_CASE("orientation character on the projective plane")
{
    auto c = share(corpus("rp2"));
    auto w = orientation_system(c, RingSpec::integers());
    for (const auto& t : c->simplices(2))
        CHECK(w.holonomy(t) == ExactMatrix::identity(w.ring(), 1));
    // Every empty triangle of the 6-vertex projective plane is an essential loop.
    auto loops = empty_triangles(*c);
    REQUIRE(loops.size() == 10);
    for (const auto& l : loops)
        CHECK(w.holonomy(l) == ExactMatrix::from_rows(w.ring(), {{-1}}));
}

TEST_CASE("local orientations")
{
    auto c = corpus("torus");
    auto refs = reference_facets(c);
    for (int v = 0; v < c.vertex_count(); ++v) {
        CHECK(local_orientation(c, v, refs[v]) == 1);
        CHECK(refs[v] == c.star(v).front());
        for (std::size_t f : c.star(v))
            CHECK(local_orientation(c, v, f) == star_component_walk(c, v, refs[v], f));
    }
}

TEST_CASE("corrupted transport is caught on a triangle")
{
    auto c = share(corpus("torus"));
    for (const RingSpec& ring : {RingSpec::integers(), RingSpec::rationals(), RingSpec::modular(5)}) {
        auto g = constant_system(c, ring, 2);
        auto bad = g.with_transport(2, 4, ExactMatrix::from_rows(ring, {{1, 1}, {0, 1}}));
        auto r = validate_flatness(bad);
        REQUIRE_FALSE(r.flat);
        const auto& t = *r.failing_triangle;
        CHECK(std::count(t.begin(), t.end(), 2) == 1);
        CHECK(std::count(t.begin(), t.end(), 4) == 1);
    }
}

TEST_CASE("non-invertible transports are rejected")
{
    auto c = share(corpus("circle"));
    auto g = constant_system(c, RingSpec::integers(), 1);
    CHECK_THROWS_MATCHES(g.with_transport(0, 1, ExactMatrix::from_rows(g.ring(), {{2}})), Error,
                         kind_is(ErrorKind::InvalidArgument));
    auto q = constant_system(c, RingSpec::rationals(), 1);
    CHECK_NOTHROW(q.with_transport(0, 1, ExactMatrix::from_rows(q.ring(), {{2}})));
}

TEST_CASE("holonomy under gauge, tensor and dual")
{
    auto c = share(corpus("klein"));
    for (const RingSpec& ring : {RingSpec::integers(), RingSpec::modular(7)}) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            auto g = random_flat_system(c, ring, 2, seed);
            REQUIRE(validate_flatness(g).flat);
            auto h = orientation_system(c, ring);
            std::mt19937_64 rng(seed + 100);
            std::vector<ExactMatrix> gauge;
            for (int v = 0; v < c->vertex_count(); ++v)
                gauge.push_back(random_invertible(ring, 2, rng));
            auto gg = gauge_transform(g, gauge);
            CHECK(validate_flatness(gg).flat);
            auto gh = tensor(g, h);
            CHECK(gh.rank() == 2);
            auto gd = dual_system(g);
            for (const auto& loop : std::vector<std::vector<int>>{{0, 1, 2}, {0, 1, 7, 2}, {0, 3, 6}, {0, 2, 6, 8}}) {
                bool is_loop = true;
                for (std::size_t i = 0; i < loop.size(); ++i)
                    is_loop = is_loop && c->find(Simplex{std::min(loop[i], loop[(i + 1) % loop.size()]),
                                                         std::max(loop[i], loop[(i + 1) % loop.size()])});
                if (!is_loop)
                    continue;
                auto hol = g.holonomy(loop);
                CHECK(gg.holonomy(loop) == *gauge[loop[0]].inverse() * hol * gauge[loop[0]]);
                CHECK(gh.holonomy(loop) == hol.kron(h.holonomy(loop)));
                CHECK(gd.holonomy(loop) == hol.inverse()->transposed());
            }
        }
    }
}

TEST_CASE("tensor mismatches")
{
    auto a = share(corpus("torus"));
    auto b = share(corpus("klein"));
    CHECK_THROWS_MATCHES(tensor(constant_system(a, RingSpec::integers(), 1), constant_system(b, RingSpec::integers(), 1)),
                         Error, kind_is(ErrorKind::BaseMismatch));
    CHECK_THROWS_MATCHES(tensor(constant_system(a, RingSpec::integers(), 1), constant_system(a, RingSpec::rationals(), 1)),
                         Error, kind_is(ErrorKind::RingMismatch));
}

TEST_CASE("random flat systems")
{
    for (const char* name : {"rp2", "torus", "rp3"}) {
        auto c = share(corpus(name));
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            auto g = random_flat_system(c, RingSpec::integers(), 2, seed);
            CHECK(validate_flatness(g).flat);
            CHECK(g.digest() == random_flat_system(c, RingSpec::integers(), 2, seed).digest());
        }
        CHECK(validate_flatness(random_flat_system(c, RingSpec::rationals(), 3, 9)).flat);
        CHECK(validate_flatness(random_flat_system(c, RingSpec::modular(4), 1, 9)).flat);
    }
}

TEST_CASE("local system files")
{
    auto c = share(corpus("circle"));
    auto g = LocalSystem::parse(c, "ring Z\nrank 2\nedge 0 2\n0 1\n1 0\n");
    CHECK(g.transport(0, 2) == ExactMatrix::from_rows(g.ring(), {{0, 1}, {1, 0}}));
    CHECK(g.transport(0, 1) == ExactMatrix::identity(g.ring(), 2));
    CHECK(g.holonomy({0, 1, 2}) == ExactMatrix::from_rows(g.ring(), {{0, 1}, {1, 0}}));
    CHECK(LocalSystem::parse(c, g.to_text()).digest() == g.digest());

    auto w = orientation_system(share(corpus("rp2")), RingSpec::modular(3));
    CHECK(LocalSystem::parse(w.base(), w.to_text()).digest() == w.digest());

    for (const char* bad : {
             "rank 1\nedge 0 1\n1\n",                      // no ring
             "ring Z\nrank 1\nedge 1 0\n1\n",              // descending
             "ring Z\nrank 1\nedge 0 1\n1\nedge 0 1\n1\n", // duplicate
             "ring Z\nrank 1\nedge 0 1\n2\n",              // not invertible
             "ring Z\nrank 2\nedge 0 1\n1 0\n",            // truncated
             "ring Z\nrank 1\nedge 0 5\n1\n",              // no such vertex
             "ring W\nrank 1\n",                           // bad ring
             "ring Z\nrank 0\n",                           // bad rank
             "ring Z\nrank 1\nedge 0 1\n1/2\n",            // not an integer
         }) {
        INFO(bad);
        CHECK_THROWS_MATCHES(LocalSystem::parse(c, bad), Error, kind_is(ErrorKind::ParseError));
    }
    CHECK_THROWS_MATCHES(LocalSystem::load(c, "/nonexistent"), Error, kind_is(ErrorKind::ParseError));
}
