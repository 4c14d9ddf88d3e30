#include "suite.hpp"

#include "oracles.hpp"
#include "tdual/cap.hpp"
#include "tdual/cover.hpp"
#include "tdual/error.hpp"
#include "tdual/fundamental.hpp"
#include "tdual/hash.hpp"
#include "tdual/mayer_vietoris.hpp"
#include "tdual/smith.hpp"

#include <random>
#include <sstream>

namespace tdual::suite {

namespace {

const std::vector<RingSpec>& all_rings()
{
    static const std::vector<RingSpec> rings = {RingSpec::integers(), RingSpec::modular(3), RingSpec::rationals()};
    return rings;
}

const std::vector<RingSpec>& integral_rings()
{
    static const std::vector<RingSpec> rings = {RingSpec::integers(), RingSpec::modular(3)};
    return rings;
}

struct Family {
    std::string name;
    LocalSystem system;
};

std::vector<Family> families(const ComplexPtr& m, const RingSpec& ring, std::uint64_t seed)
{
    return {{"constant", constant_system(m, ring, 1)},
            {"constant2", constant_system(m, ring, 2)},
            {"orientation", orientation_system(m, ring)},
            {"random-flat", random_flat_system(m, ring, 2, seed)}};
}

ComplexPtr corpus_ptr(const std::string& name)
{
    return share(corpus(name));
}

// Collects failure descriptions; the criterion passes when there are none.
class Tally {
public:
    void check(bool ok, const std::string& what)
    {
        ++checks_;
        if (!ok && failures_.size() < 5)
            failures_.push_back(what);
        failed_ += !ok;
    }
    template <class F>
    void guard(const std::string& what, F&& f)
    {
        try {
            f();
        } catch (const std::exception& e) {
            check(false, what + " (" + e.what() + ")");
        }
    }
    CriterionResult result(int id, std::string name, const std::string& extra = "") const
    {
        std::ostringstream os;
        os << checks_ - failed_ << "/" << checks_ << " checks";
        if (!extra.empty())
            os << "; " << extra;
        for (const auto& f : failures_)
            os << "; failed: " << f;
        return {id, std::move(name), failed_ == 0 && checks_ > 0, os.str()};
    }

private:
    std::size_t checks_ = 0, failed_ = 0;
    std::vector<std::string> failures_;
};

std::string label(const std::string& complex, const std::string& system, const RingSpec& ring)
{
    return complex + "/" + system + "/" + ring.short_name();
}

ExactMatrix random_column(const RingSpec& ring, std::size_t n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> d(-5, 5);
    ExactMatrix v(ring, n, 1);
    for (std::size_t i = 0; i < n; ++i)
        v.set(i, 0, d(rng));
    return v;
}

CriterionResult structural(std::uint64_t seed)
{
    Tally t;
    for (const auto& name : corpus_names()) {
        auto m = corpus_ptr(name);
        for (const auto& ring : all_rings())
            for (const auto& f : families(m, ring, seed))
                t.guard(label(name, f.name, ring), [&] {
                    auto c = TwistedComplex::absolute(f.system);
                    t.check(c.boundary_squares_to_zero(), label(name, f.name, ring) + " boundary");
                    t.check(c.coboundary_squares_to_zero(), label(name, f.name, ring) + " coboundary");
                });
    }
    return t.result(1, "boundary and coboundary square to zero");
}

CriterionResult deck_reverses(std::uint64_t)
{
    Tally t;
    std::string covered;
    bool orientable_done = false;
    for (const auto& name : corpus_names()) {
        auto m = corpus_ptr(name);
        const bool orientable = is_trivializable(orientation_system(m, RingSpec::integers())).trivializable;
        if (orientable && orientable_done)
            continue;
        orientable_done |= orientable;
        covered += (covered.empty() ? "" : ",") + name;
        t.guard(name, [&] {
            auto cover = orientation_double_cover(m);
            t.check(cover.connected() == !orientable, name + " cover connectivity");
            for (const auto& ring : integral_rings())
                t.check(lemma1_check(cover, ring), name + "/" + ring.short_name() + " deck image");
        });
    }
    return t.result(2, "deck transformation negates the cover orientation", "entries " + covered);
}

CriterionResult pushforward_vanishes(std::uint64_t)
{
    Tally t;
    for (const auto& name : corpus_names()) {
        auto m = corpus_ptr(name);
        t.guard(name, [&] {
            auto cover = orientation_double_cover(m);
            for (const auto& ring : integral_rings()) {
                t.check(lemma2_check(cover, ring, FullSubcomplex::all(m)), name + "/" + ring.short_name() + " K=all");
                t.check(lemma2_check(cover, ring, FullSubcomplex(m, {0})), name + "/" + ring.short_name() + " K=vertex");
            }
        });
    }
    return t.result(3, "pushforward of the cover fundamental class vanishes");
}

CriterionResult cover_splitting(std::uint64_t)
{
    Tally t;
    for (const auto& name : corpus_names()) {
        auto m = corpus_ptr(name);
        t.guard(name, [&] {
            auto cover = orientation_double_cover(m);
            for (const auto& ring : integral_rings()) {
                auto s = split_maps(cover, ring, FullSubcomplex::all(m));
                t.check(short_sequences_exact(s), name + "/" + ring.short_name() + " short sequences");
                t.check(phi_identify(s), name + "/" + ring.short_name() + " phi");
            }
        });
    }
    return t.result(4, "cover splitting sequences exact and phi an isomorphism of complexes");
}

CriterionResult fundamental_agreement(std::uint64_t)
{
    Tally t;
    for (const auto& name : corpus_names()) {
        auto m = corpus_ptr(name);
        const int n = m->dimension();
        for (const auto& ring : integral_rings())
            t.guard(label(name, "orientation", ring), [&] {
                auto direct = fundamental_class_direct(m, ring);
                auto via = fundamental_class_via_cover(m, ring);
                auto h = homology(direct.system, n);
                t.check(h.same_class(direct.cycle, via.cycle), name + "/" + ring.short_name() + " agreement");
                t.check(h.is_generator_of_rank_one(direct.cycle), name + "/" + ring.short_name() + " generator");
            });
    }
    return t.result(5, "fundamental class constructions agree and generate");
}

CriterionResult cap_identity(std::uint64_t seed)
{
    Tally t;
    for (const auto& name : corpus_names()) {
        auto m = corpus_ptr(name);
        const int n = m->dimension();
        for (const auto& ring : all_rings()) {
            const auto g = random_flat_system(m, ring, 2, seed);
            const auto h = orientation_system(m, ring);
            std::mt19937_64 rng(fnv1a64(name + "/" + ring.short_name(), seed + 0xcbf29ce484222325ULL));
            std::size_t holds = 0;
            t.guard(label(name, "random-flat", ring), [&] {
                for (int trial = 0; trial < 100; ++trial) {
                    const int k = static_cast<int>(rng() % (n + 1));
                    const int q = k + static_cast<int>(rng() % (n - k + 1));
                    auto c = random_column(ring, m->count(k) * g.rank(), rng);
                    auto a = random_column(ring, m->count(q) * h.rank(), rng);
                    holds += boundary_identity_check(g, c, k, h, a, q).holds;
                }
            });
            t.check(holds == 100, label(name, "random-flat", ring) + " " + std::to_string(holds) + "/100");
        }
    }
    return t.result(6, "cap product boundary identity", "100 random pairs per configuration");
}

CriterionResult duality(std::uint64_t seed)
{
    Tally t;
    for (const auto& name : corpus_names()) {
        auto m = corpus_ptr(name);
        for (const auto& ring : all_rings())
            for (const auto& f : families(m, ring, seed))
                t.guard(label(name, f.name, ring),
                        [&] { t.check(verify_duality(f.system).all_isomorphisms(), label(name, f.name, ring)); });
    }
    std::string spots;
    t.guard("spot values", [&] {
        auto rp2 = corpus_ptr("rp2");
        auto r = verify_duality(constant_system(rp2, RingSpec::integers(), 1));
        const std::vector<std::string> expected = {"Z", "0", "Z/2"};
        bool ok = r.rows.size() == 3;
        for (std::size_t k = 0; ok && k < 3; ++k)
            ok = r.rows[k].left.to_string() == expected[k] && r.rows[k].right.to_string() == expected[k];
        t.check(ok, "rp2/constant/Z spot values");
        auto klein = corpus_ptr("klein");
        auto q = verify_duality(orientation_system(klein, RingSpec::integers()));
        t.check(q.rows.at(1).left.to_string() == "Z+Z/2" && q.rows.at(1).right.to_string() == "Z+Z/2",
                "klein/orientation/Z degree 1");
        spots = "rp2 [" + r.rows[0].left.to_string() + "," + r.rows[1].left.to_string() + "," +
                r.rows[2].left.to_string() + "], klein k=1 " + q.rows[1].left.to_string();
    });
    return t.result(7, "cap with the fundamental class is an isomorphism", spots);
}

CriterionResult mayer_vietoris(std::uint64_t)
{
    Tally t;
    struct Case {
        std::string fixture;
        bool twisted;
    };
    for (const Case& c : {Case{"octahedron", false}, Case{"torus-grid", false}, Case{"klein-grid", true}}) {
        auto f = mv_fixture(c.fixture);
        for (const auto& ring : integral_rings()) {
            const auto g = c.twisted ? orientation_system(f.complex, ring) : constant_system(f.complex, ring, 1);
            const auto what = label(c.fixture, c.twisted ? "orientation" : "constant", ring);
            t.guard(what, [&] {
                t.check(mv_homology(CoverPair::absolute(f.u, f.v), g).all_exact(), what + " homology");
                t.check(mv_cohomology(CoverPair::absolute(f.u, f.v), g).all_exact(), what + " cohomology");
            });
        }
        const auto g = c.twisted ? orientation_system(f.complex, RingSpec::integers())
                                 : constant_system(f.complex, RingSpec::integers(), 1);
        const auto pair = CoverPair::relative(f.u, f.v, f.u.intersect(f.k.complement().as_subcomplex()),
                                              f.v.intersect(f.l.complement().as_subcomplex()));
        t.guard(c.fixture + " splitting", [&] {
            const TwistedComplex ab(g, pair.a.intersect(pair.b), pair.c.intersect(pair.d));
            std::size_t failures = 0;
            for (int k = 0; k <= f.complex->dimension(); ++k)
                for (std::size_t i = 0; i < ab.dimension(k); ++i) {
                    ExactMatrix alpha(g.ring(), ab.dimension(k), 1);
                    alpha.set(i, 0, 1);
                    failures += !mv_splitting(pair, g, k, alpha).holds;
                }
            t.check(failures == 0, c.fixture + " splitting on basis cochains");
        });
    }
    return t.result(8, "Mayer-Vietoris sequences exact and splitting equation");
}

CriterionResult diagram(std::uint64_t seed)
{
    Tally t;
    struct Case {
        std::string fixture;
        bool twisted;
    };
    std::vector<int> signs;
    for (const Case& c : {Case{"sphere-grid", false}, Case{"torus-grid", false}, Case{"klein-grid", true}}) {
        auto f = mv_fixture(c.fixture);
        for (const auto& ring : all_rings())
            for (std::uint64_t s : {std::uint64_t{0}, seed + 1}) {
                const auto g = c.twisted ? orientation_system(f.complex, ring) : constant_system(f.complex, ring, 1);
                const auto what = label(c.fixture, c.twisted ? "orientation" : "constant", ring);
                t.guard(what, [&] {
                    auto r = diagram6_check(g, f.u, f.v, f.k, f.l, s);
                    t.check(r.middle_blocks_commute(), what + " cap squares");
                    const int sign = r.connecting_sign();
                    t.check(sign == 1 || sign == -1, what + " connecting sign");
                    signs.push_back(sign);
                });
            }
    }
    bool global = !signs.empty();
    for (int s : signs)
        global = global && s == signs.front();
    t.check(global, "one global connecting sign");
    std::string extra = signs.empty() ? "no sign" : std::string("connecting sign ") + (signs.front() > 0 ? "+1" : "-1");
    return t.result(9, "duality diagram commutes up to a global sign", extra);
}

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
        for (std::size_t i = c + 1; i < n; ++i) {
            Rational f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j)
                m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

RatMatrix to_rational(const IntMatrix& a)
{
    RatMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r(i, j) = Rational(a(i, j));
    return r;
}

CriterionResult smith_kernel(std::uint64_t seed)
{
    Tally t;
    std::mt19937_64 rng(seed + 20240601);
    std::uniform_int_distribution<int> size(1, 8), entry(-20, 20);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t r = size(rng), c = size(rng);
        IntMatrix a(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                a(i, j) = entry(rng);
        const auto s = smith(a, TrackAll);
        bool ok = s.U * a * s.V == s.D && s.U * s.Uinv == IntMatrix::identity(r) && s.V * s.Vinv == IntMatrix::identity(c);
        ok = ok && abs(det_rational(to_rational(s.U))) == 1 && abs(det_rational(to_rational(s.V))) == 1;
        for (std::size_t i = 0; ok && i < r; ++i)
            for (std::size_t j = 0; ok && j < c; ++j)
                ok = i == j || s.D(i, j) == 0;
        for (std::size_t i = 0; ok && i < s.rank; ++i)
            ok = s.D(i, i) > 0 && (i + 1 == s.rank || mpz_divisible_p(s.D(i + 1, i + 1).get_mpz_t(), s.D(i, i).get_mpz_t()));
        for (std::size_t i = s.rank; ok && i < std::min(r, c); ++i)
            ok = s.D(i, i) == 0;
        ok = ok && s.rank == oracle::rank(to_rational(a));
        t.check(ok, "matrix " + std::to_string(trial));
    }
    return t.result(10, "Smith normal form kernel", "1000 random integer matrices up to 8x8");
}

} // namespace

CriterionResult run_criterion(int id, std::uint64_t seed)
{
    switch (id) {
    case 1: return structural(seed);
    case 2: return deck_reverses(seed);
    case 3: return pushforward_vanishes(seed);
    case 4: return cover_splitting(seed);
    case 5: return fundamental_agreement(seed);
    case 6: return cap_identity(seed);
    case 7: return duality(seed);
    case 8: return mayer_vietoris(seed);
    case 9: return diagram(seed);
    case 10: return smith_kernel(seed);
    }
    throw Error(ErrorKind::InvalidArgument, "no criterion " + std::to_string(id));
}

std::vector<CriterionResult> run_all(std::uint64_t seed, const std::function<void(const CriterionResult&)>& progress)
{
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) {
        out.push_back(run_criterion(id, seed));
        if (progress)
            progress(out.back());
    }
    return out;
}

} // namespace tdual::suite
