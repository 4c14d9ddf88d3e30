#include "tdual/error.hpp"
#include "tdual/module.hpp"
#include "tdual/smith.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace tdual;

namespace {

// Reference oracles, deliberately naive.

Rational det_rational(RatMatrix m)
{
    const std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            m.swap_rows(p, c);
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            Rational f = m(r, c) / m(c, c);
            for (std::size_t k = c; k < n; ++k)
                m(r, k) -= f * m(c, k);
        }
    }
    return det;
}

std::size_t rank_rational(RatMatrix m)
{
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t p = rank;
        while (p < m.rows() && m(p, c) == 0)
            ++p;
        if (p == m.rows())
            continue;
        m.swap_rows(p, rank);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == rank || m(r, c) == 0)
                continue;
            Rational f = m(r, c) / m(rank, c);
            for (std::size_t k = 0; k < m.cols(); ++k)
                m(r, k) -= f * m(rank, k);
        }
        ++rank;
    }
    return rank;
}

RatMatrix to_rat(const IntMatrix& a)
{
    RatMatrix r(a.rows(), a.cols());
    for (std::size_t k = 0; k < a.data().size(); ++k)
        r.data()[k] = a.data()[k];
    return r;
}

ExactMatrix Z(std::initializer_list<std::initializer_list<long>> rows)
{
    return ExactMatrix::from_rows(RingSpec::integers(), rows);
}

// Circle on three vertices: edges 01, 02, 12; d1 columns are edges.
ExactMatrix circle_d1(const RingSpec& ring)
{
    return ExactMatrix::from_rows(ring, {{-1, -1, 0}, {1, 0, -1}, {0, 1, 1}});
}

} // namespace

TEST_CASE("ring parsing and normalization")
{
    CHECK(RingSpec::parse("Z") == RingSpec::integers());
    CHECK(RingSpec::parse("Q") == RingSpec::rationals());
    CHECK(RingSpec::parse("Zmod 3") == RingSpec::modular(3));
    CHECK(RingSpec::parse("Z/5") == RingSpec::modular(5));
    CHECK_THROWS_AS(RingSpec::parse("R"), Error);
    CHECK_THROWS_AS(RingSpec::modular(1), Error);
    CHECK_FALSE(RingSpec::modular(2).two_is_nonzero());
    CHECK(RingSpec::modular(4).two_is_nonzero());
    CHECK(RingSpec::modular(7).normalize(Rational(-1)) == 6);
    CHECK(RingSpec::modular(7).normalize(Rational(1, 2)) == 4);
    CHECK_THROWS_AS(RingSpec::integers().normalize(Rational(1, 2)), Error);
    CHECK(parse_rational("-3/6") == Rational(-1, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("smith normal form of a 2x2 integer matrix")
{
    auto a = Z({{2, 4}, {6, 8}});
    auto s = smith_normal_form(a);
    CHECK(s.U * a * s.V == s.D);
    CHECK(s.D == Z({{2, 0}, {0, 4}}));
    // d1 = gcd of entries, d1 * d2 = |det|
    CHECK(s.D.at(0, 0) == 2);
    CHECK(s.D.at(0, 0) * s.D.at(1, 1) == abs(det_rational(to_rat(a.integers()))));
}

TEST_CASE("smith normal form trivial cases")
{
    auto id = ExactMatrix::identity(RingSpec::integers(), 3);
    auto s = smith_normal_form(id);
    CHECK(s.D == id);
    auto zero = ExactMatrix(RingSpec::integers(), 3, 2);
    auto z = smith_normal_form(zero);
    CHECK(z.D.is_zero());
    CHECK(z.rank == 0);
}

TEST_CASE("smith normal form over Z/m uses divisors of m")
{
    auto ring = RingSpec::modular(6);
    auto a = ExactMatrix::from_rows(ring, {{4, 0}, {0, 5}});
    auto s = smith_normal_form(a);
    CHECK(s.U * a * s.V == s.D);
    CHECK(s.D.at(0, 0) == 1);
    CHECK(s.D.at(1, 1) == 2);
    auto b = ExactMatrix::from_rows(ring, {{3, 3}, {3, 3}});
    auto t = smith_normal_form(b);
    CHECK(t.U * b * t.V == t.D);
    CHECK(t.D.at(0, 0) == 3);
    CHECK(t.D.at(1, 1) == 0);
}

TEST_CASE("smith normal form over Q has 0/1 diagonal")
{
    auto ring = RingSpec::rationals();
    auto a = ExactMatrix::from_rows(ring, {{2, 4, 1}, {6, 8, 3}, {8, 12, 4}});
    auto s = smith_normal_form(a);
    CHECK(s.U * a * s.V == s.D);
    CHECK(s.rank == 2);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK((s.D.at(i, i) == 0 || s.D.at(i, i) == 1));
}

TEST_CASE("random integer smith decompositions")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        IntMatrix a(r, c);
        for (auto& x : a.data())
            x = static_cast<long>(rng() % 19) - 9;
        auto s = smith(a, TrackAll);
        REQUIRE(s.U * a * s.V == s.D);
        REQUIRE(s.U * s.Uinv == IntMatrix::identity(r));
        REQUIRE(s.V * s.Vinv == IntMatrix::identity(c));
        REQUIRE(abs(det_rational(to_rat(s.U))) == 1);
        REQUIRE(abs(det_rational(to_rat(s.V))) == 1);
        REQUIRE(s.rank == rank_rational(to_rat(a)));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (i != j)
                    REQUIRE(s.D(i, j) == 0);
        for (std::size_t i = 0; i + 1 < s.rank; ++i)
            REQUIRE(mpz_divisible_p(s.D(i + 1, i + 1).get_mpz_t(), s.D(i, i).get_mpz_t()));
        for (std::size_t i = 0; i < s.rank; ++i)
            REQUIRE(s.D(i, i) > 0);
    }
}

TEST_CASE("matrix inverse over each ring")
{
    auto a = Z({{2, 1}, {1, 1}});
    auto inv = a.inverse();
    REQUIRE(inv);
    CHECK(a * *inv == ExactMatrix::identity(RingSpec::integers(), 2));
    CHECK_FALSE(Z({{2, 0}, {0, 1}}).inverse());
    auto m5 = ExactMatrix::from_rows(RingSpec::modular(5), {{2, 0}, {0, 3}});
    REQUIRE(m5.inverse());
    CHECK(m5 * *m5.inverse() == ExactMatrix::identity(RingSpec::modular(5), 2));
    CHECK_FALSE(ExactMatrix::from_rows(RingSpec::modular(6), {{2}}).inverse());
    auto q = ExactMatrix::from_rows(RingSpec::rationals(), {{2, 0}, {0, 3}});
    CHECK(q * *q.inverse() == ExactMatrix::identity(RingSpec::rationals(), 2));
}

TEST_CASE("kronecker product")
{
    auto swap = Z({{0, 1}, {1, 0}});
    auto minus = Z({{-1}});
    CHECK(minus.kron(swap) == -swap);
    CHECK(swap.kron(ExactMatrix::identity(RingSpec::integers(), 1)) == swap);
}

TEST_CASE("homology presentations")
{
    auto zz = RingSpec::integers();
    SECTION("circle H1 = Z")
    {
        auto h = homology_presentation(ExactMatrix(zz, 3, 0), circle_d1(zz));
        CHECK(h.normal_form() == NormalForm{1, {}});
        CHECK(h.to_string() == "Z");
        // brute force: the kernel of d1 is spanned by e01 - e02 + e12
        auto cyc = ExactMatrix::column_vector(zz, {1, -1, 1});
        CHECK(h.is_generator_of_rank_one(cyc));
    }
    SECTION("circle H0 = Z")
    {
        auto h = homology_presentation(circle_d1(zz), ExactMatrix(zz, 0, 3));
        CHECK(h.to_string() == "Z");
    }
    SECTION("zero matrices give a free module")
    {
        auto h = homology_presentation(ExactMatrix(zz, 5, 0), ExactMatrix(zz, 0, 5));
        CHECK(h.normal_form() == NormalForm{5, {}});
        CHECK(h.to_string() == "Z^5");
    }
    SECTION("nonzero composition is rejected")
    {
        auto d = Z({{1}});
        try {
            homology_presentation(d, d);
            FAIL("expected CompositionNonzero");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::CompositionNonzero);
        }
    }
    SECTION("cokernel strings")
    {
        CHECK(FPModule::cokernel(Z({{0, 0}, {0, 2}})).to_string() == "Z+Z/2");
        CHECK(FPModule::cokernel(Z({{2, 0}, {0, 2}})).to_string() == "(Z/2)^2");
        CHECK(FPModule::cokernel(Z({{1}})).to_string() == "0");
        CHECK(FPModule::free(RingSpec::modular(3), 2).to_string() == "(Z/3)^2");
        CHECK(FPModule::free(RingSpec::rationals(), 1).to_string() == "Q");
        auto m9 = FPModule::cokernel(ExactMatrix::from_rows(RingSpec::modular(9), {{3, 0}, {0, 0}}));
        CHECK(m9.to_string() == "Z/9+Z/3");
    }
}

TEST_CASE("induced maps")
{
    auto zz = RingSpec::integers();
    auto h = homology_presentation(ExactMatrix(zz, 3, 0), circle_d1(zz));
    SECTION("identity")
    {
        auto f = induced_map(ExactMatrix::identity(zz, 3), h, h);
        CHECK(f == ModuleMap::identity(h));
        CHECK(is_isomorphism(f).is_isomorphism());
    }
    SECTION("degree two self-map")
    {
        auto f = induced_map(Rational(2) * ExactMatrix::identity(zz, 3), h, h);
        CHECK(f.matrix().at(0, 0) * f.matrix().at(0, 0) == 4);
        auto cert = is_isomorphism(f);
        CHECK(cert.injective);
        CHECK_FALSE(cert.surjective);
        CHECK(cert.cokernel_witness);
    }
    SECTION("boundary of a triangle into the solid triangle")
    {
        auto d2 = Z({{1}, {-1}, {1}});
        auto solid = homology_presentation(d2, circle_d1(zz));
        CHECK(solid.is_zero());
        auto f = induced_map(ExactMatrix::identity(zz, 3), h, solid);
        CHECK(f.is_zero());
    }
    SECTION("non chain maps are rejected")
    {
        auto bad = Z({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}});
        try {
            induced_map(bad, h, h);
            FAIL("expected NotChainMap");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NotChainMap);
        }
    }
}

TEST_CASE("isomorphism certificates")
{
    auto zz = RingSpec::integers();
    auto m = FPModule::cokernel(Z({{0, 0}, {0, 2}}));
    auto id = ModuleMap::identity(m);
    auto cert = is_isomorphism(id);
    REQUIRE(cert.is_isomorphism());
    REQUIRE(cert.inverse);
    CHECK(is_isomorphism(*cert.inverse).is_isomorphism());
    CHECK(id.then(*cert.inverse) == ModuleMap::identity(m));

    auto z = FPModule::free(zz, 1);
    auto twice = ModuleMap(z, z, Z({{2}}));
    auto c2 = is_isomorphism(twice);
    CHECK_FALSE(c2.is_isomorphism());
    REQUIRE(c2.cokernel_witness);
    CHECK(c2.cokernel_witness->at(0, 0) == 1);

    auto z2 = FPModule::cokernel(Z({{2}}));
    auto to_zero = ModuleMap::zero(z2, FPModule::free(zz, 0));
    auto c3 = is_isomorphism(to_zero);
    CHECK(c3.surjective);
    CHECK_FALSE(c3.injective);
    CHECK(c3.kernel_witness);

    // Z/6 -> Z/2 + Z/3 sending 1 to (1, 1) is an isomorphism
    auto z6 = FPModule::cokernel(Z({{6}}));
    auto z23 = FPModule::cokernel(Z({{2, 0}, {0, 3}}));
    auto gens = z23.generators();
    REQUIRE(z23.generator_count() == 1);
    auto crt = ModuleMap(z6, z23, Z({{1}}));
    CHECK(is_isomorphism(crt).is_isomorphism());
}

TEST_CASE("exactness of short sequences")
{
    auto zz = RingSpec::integers();
    auto z = FPModule::free(zz, 1);
    auto z2 = FPModule::cokernel(Z({{2}}));
    auto zero = FPModule::free(zz, 0);
    auto twice = ModuleMap(z, z, Z({{2}}));
    auto quot = ModuleMap(z, z2, Z({{1}}));
    CHECK(is_exact_at(ModuleMap::zero(zero, z), twice));
    CHECK(is_exact_at(twice, quot));
    CHECK(is_exact_at(quot, ModuleMap::zero(z2, zero)));
    CHECK_FALSE(is_exact_at(ModuleMap::zero(zero, z), ModuleMap::zero(z, z)));
}

TEST_CASE("perturbed representatives keep classes")
{
    auto zz = RingSpec::integers();
    auto d2 = Z({{1}, {-1}, {1}});
    auto zero_h = homology_presentation(d2, circle_d1(zz));
    auto h0 = homology_presentation(circle_d1(zz), ExactMatrix(zz, 0, 3));
    auto p = h0.perturbed(3);
    CHECK(p == h0);
    CHECK(h0.same_class(h0.generators(), p.generators()));
    CHECK(zero_h.is_zero());
}
