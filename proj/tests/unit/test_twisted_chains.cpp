#include "tdual/chains.hpp"
#include "tdual/error.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace tdual;

namespace {

auto kind_is(ErrorKind k)
{
    return Catch::Matchers::Predicate<Error>([k](const Error& e) { return e.kind() == k; });
}

std::vector<std::string> homology_strings(const TwistedComplex& c)
{
    std::vector<std::string> out;
    for (int k = 0; k <= c.top_dimension(); ++k)
        out.push_back(c.homology(k).to_string());
    return out;
}

std::vector<std::string> cohomology_strings(const TwistedComplex& c)
{
    std::vector<std::string> out;
    for (int k = 0; k <= c.top_dimension(); ++k)
        out.push_back(c.cohomology(k).to_string());
    return out;
}

using Strings = std::vector<std::string>;

} // namespace

TEST_CASE("Betti numbers agree with the naive oracle")
{
    for (const auto& name : corpus_names()) {
        INFO(name);
        auto c = share(corpus(name));
        for (long p : {0L, 2L, 3L}) {
            RingSpec ring = p == 0 ? RingSpec::rationals() : RingSpec::modular(p);
            auto expected = oracle::betti(*c, p);
            auto chains = chain_complex(constant_system(c, ring, 1));
            for (int k = 0; k <= c->dimension(); ++k)
                CHECK(chains.homology(k).normal_form().free_rank == expected[k]);
        }
    }
}

TEST_CASE("integral homology of the corpus")
{
    const std::vector<std::pair<std::string, Strings>> table = {
        {"circle", {"Z", "Z"}},
        {"sphere2", {"Z", "0", "Z"}},
        {"torus", {"Z", "Z^2", "Z"}},
        {"rp2", {"Z", "Z/2", "0"}},
        {"klein", {"Z", "Z+Z/2", "0"}},
        {"rp3", {"Z", "Z/2", "0", "Z"}},
        {"sphere3", {"Z", "0", "0", "Z"}},
    };
    for (const auto& [name, expected] : table) {
        INFO(name);
        auto c = share(corpus(name));
        CHECK(homology_strings(chain_complex(constant_system(c, RingSpec::integers(), 1))) == expected);
    }
    auto rp2 = share(corpus("rp2"));
    CHECK(cohomology_strings(cochain_complex(constant_system(rp2, RingSpec::integers(), 1))) == Strings{"Z", "0", "Z/2"});
    CHECK(homology_strings(chain_complex(constant_system(rp2, RingSpec::modular(2), 1))) ==
          Strings{"Z/2", "Z/2", "Z/2"});
    CHECK(homology_strings(chain_complex(constant_system(rp2, RingSpec::modular(4), 1))) ==
          Strings{"Z/4", "Z/2", "Z/2"});
}

TEST_CASE("homology with orientation coefficients")
{
    auto rp2 = share(corpus("rp2"));
    auto w = orientation_system(rp2, RingSpec::integers());
    CHECK(homology_strings(chain_complex(w)) == Strings{"Z/2", "0", "Z"});
    CHECK(cohomology_strings(cochain_complex(w)) == Strings{"0", "Z/2", "Z"});

    auto klein = share(corpus("klein"));
    auto wk = orientation_system(klein, RingSpec::integers());
    CHECK(homology(wk, 2).to_string() == "Z");
    CHECK(homology(wk, 0).to_string() == "Z/2");

    // Orientable: the orientation system is trivializable and changes nothing.
    auto torus = share(corpus("torus"));
    CHECK(homology_strings(chain_complex(orientation_system(torus, RingSpec::integers()))) == Strings{"Z", "Z^2", "Z"});
}

TEST_CASE("differentials square to zero for random flat systems")
{
    for (const char* name : {"rp2", "klein", "rp3"}) {
        auto c = share(corpus(name));
        for (const RingSpec& ring : {RingSpec::integers(), RingSpec::rationals(), RingSpec::modular(6)}) {
            for (std::uint64_t seed = 0; seed < 2; ++seed) {
                auto g = random_flat_system(c, ring, 2, seed);
                for (int anchor : {-1, 0, 1}) {
                    TwistedComplex t = TwistedComplex::absolute(g, anchor);
                    CHECK(t.boundary_squares_to_zero());
                    CHECK(t.coboundary_squares_to_zero());
                }
                FullSubcomplex k(c, {0, 1, 2});
                auto rel = TwistedComplex::relative(g, k);
                CHECK(rel.boundary_squares_to_zero());
                CHECK(rel.coboundary_squares_to_zero());
            }
        }
    }
}

TEST_CASE("homology is a gauge invariant")
{
    auto c = share(corpus("klein"));
    auto g = random_flat_system(c, RingSpec::integers(), 2, 3);
    std::mt19937_64 rng(17);
    std::vector<ExactMatrix> gauge;
    for (int v = 0; v < c->vertex_count(); ++v)
        gauge.push_back(random_invertible(g.ring(), 2, rng));
    auto h = gauge_transform(g, gauge);
    for (int k = 0; k <= 2; ++k) {
        CHECK(homology(g, k) == homology(h, k));
        CHECK(cohomology(g, k) == cohomology(h, k));
    }
}

TEST_CASE("anchor only changes signs")
{
    auto c = share(corpus("rp2"));
    auto g = random_flat_system(c, RingSpec::integers(), 2, 1);
    auto a = TwistedComplex::absolute(g, 2);
    auto b = TwistedComplex::absolute(g, 1);
    for (int k = -1; k <= 2; ++k) {
        CHECK((a.coboundary(k) == b.coboundary(k) || a.coboundary(k) == -b.coboundary(k)));
        if (k >= 0 && k < 2 && !a.coboundary(k).is_zero())
            CHECK(a.coboundary(k) == -b.coboundary(k));
    }
    for (int k = 0; k <= 2; ++k)
        CHECK(a.cohomology(k) == b.cohomology(k));
    // Anchor 1 on a circle: (dc)[a, b] = c(b) - c(a).
    auto trivial = TwistedComplex::absolute(constant_system(share(corpus("circle")), RingSpec::integers(), 1));
    CHECK(trivial.coboundary(0) == ExactMatrix::from_rows(RingSpec::integers(), {{-1, 1, 0}, {-1, 0, 1}, {0, -1, 1}}));
}

TEST_CASE("pairs, transfers and relative homology")
{
    auto c = share(corpus("torus"));
    auto g = constant_system(c, RingSpec::integers(), 1);
    auto whole = TwistedComplex::absolute(g);
    FullSubcomplex point(c, {3});
    auto rel = TwistedComplex::relative(g, point);
    CHECK(rel.dimension(0) == 1);
    CHECK(rel.dimension(2) == c->star(3).size());

    // Chain inclusion C(M) -> C(M|x) commutes with the boundaries.
    for (int k = 1; k <= 2; ++k)
        CHECK(rel.boundary(k) * whole.transfer_to(rel, k) == whole.transfer_to(rel, k - 1) * whole.boundary(k));
    // Cochain restriction C(M|x)^k -> C^k(M) is an inclusion of cochains vanishing off the star.
    for (int k = 0; k < 2; ++k)
        CHECK(whole.coboundary(k) * rel.transfer_to(whole, k) == rel.transfer_to(whole, k + 1) * rel.coboundary(k));

    for (const auto& name : corpus_names()) {
        INFO(name);
        auto m = share(corpus(name));
        const int n = m->dimension();
        auto cs = constant_system(m, RingSpec::integers(), 1);
        for (int v : {0, m->vertex_count() - 1}) {
            FullSubcomplex x(m, {v});
            CHECK(relative_homology(cs, x, n).to_string() == "Z");
            for (int k = 0; k < n; ++k)
                CHECK(relative_homology(cs, x, k).is_zero());
        }
    }

    FullSubcomplex none = FullSubcomplex::none(c);
    CHECK(relative_homology(g, none, 2).is_zero());
    FullSubcomplex all = FullSubcomplex::all(c);
    CHECK(relative_homology(g, all, 1).to_string() == "Z^2");
}

TEST_CASE("ambient coordinates")
{
    auto c = share(corpus("sphere2"));
    auto g = constant_system(c, RingSpec::integers(), 2);
    auto rel = TwistedComplex::relative(g, FullSubcomplex(c, {0}));
    ExactMatrix v(RingSpec::integers(), rel.dimension(1), 1);
    for (std::size_t i = 0; i < v.rows(); ++i)
        v.set(i, 0, static_cast<long>(i + 1));
    auto amb = rel.to_ambient(1, v);
    CHECK(amb.rows() == c->count(1) * 2);
    CHECK(rel.from_ambient(1, amb) == v);
    for (std::size_t e = 0; e < c->count(1); ++e)
        if (!rel.position(1, e))
            CHECK(amb.at(2 * e, 0) == 0);
}

TEST_CASE("flatness violations are rejected")
{
    auto c = share(corpus("torus"));
    auto g = constant_system(c, RingSpec::integers(), 1).with_transport(0, 1, ExactMatrix::from_rows(RingSpec::integers(), {{-1}}));
    CHECK_THROWS_MATCHES(chain_complex(g), Error, kind_is(ErrorKind::FlatnessViolation));
    CHECK_THROWS_MATCHES(cochain_complex(g), Error, kind_is(ErrorKind::FlatnessViolation));
    CHECK_THROWS_MATCHES(homology(g, 1), Error, kind_is(ErrorKind::FlatnessViolation));
    CHECK_FALSE(TwistedComplex::absolute(g).boundary_squares_to_zero());
    CHECK_THROWS_MATCHES(TwistedComplex::absolute(g).boundary(4), Error, kind_is(ErrorKind::DegreeMismatch));
}
