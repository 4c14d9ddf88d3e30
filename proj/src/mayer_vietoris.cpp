#include "tdual/mayer_vietoris.hpp"

#include "tdual/cap.hpp"
#include "tdual/error.hpp"
#include "tdual/fundamental.hpp"

#include <algorithm>

namespace tdual {

CoverPair CoverPair::absolute(const Subcomplex& a, const Subcomplex& b)
{
    return {a, b, Subcomplex::empty(a.ambient()), Subcomplex::empty(a.ambient())};
}

CoverPair CoverPair::relative(const Subcomplex& a, const Subcomplex& b, const Subcomplex& c, const Subcomplex& d)
{
    return {a, b, c, d};
}

void validate_pair(const CoverPair& pair)
{
    const auto& m = pair.a.ambient();
    for (const Subcomplex* s : {&pair.b, &pair.c, &pair.d})
        if (!s->ambient() || !(*s->ambient() == *m))
            throw Error(ErrorKind::NotACover, "cover pieces live on different complexes");
    if (!pair.c.subset_of(pair.a))
        throw Error(ErrorKind::NotACover, "C is not contained in A");
    if (!pair.d.subset_of(pair.b))
        throw Error(ErrorKind::NotACover, "D is not contained in B");
}

namespace {

struct Pieces {
    TwistedComplex ab, a, b, x;
    int top = 0;
};

Pieces make_pieces(const CoverPair& pair, const LocalSystem& g)
{
    validate_pair(pair);
    if (!(*g.base() == *pair.complex()))
        throw Error(ErrorKind::BaseMismatch, "local system and cover live on different complexes");
    Pieces p;
    p.ab = TwistedComplex(g, pair.a.intersect(pair.b), pair.c.intersect(pair.d));
    p.a = TwistedComplex(g, pair.a, pair.c);
    p.b = TwistedComplex(g, pair.b, pair.d);
    p.x = TwistedComplex(g, pair.x(), pair.y());
    p.top = g.base()->dimension();
    return p;
}

bool in_range(const TwistedComplex& t, int k)
{
    return k >= 0 && k <= t.top_dimension();
}

ExactMatrix transfer(const TwistedComplex& from, const TwistedComplex& to, int k)
{
    if (!in_range(from, k))
        return ExactMatrix(from.ring(), 0, 0);
    return from.transfer_to(to, k);
}

ExactMatrix vstack(const ExactMatrix& top, const ExactMatrix& bottom)
{
    return top.transposed().hconcat(bottom.transposed()).transposed();
}

// Identity blocks for the simplices of `from` that lie in `to` and satisfy keep.
template <class Keep>
ExactMatrix select(const TwistedComplex& from, const TwistedComplex& to, int k, const Rational& scale, Keep keep)
{
    ExactMatrix out(from.ring(), to.dimension(k), from.dimension(k));
    if (!in_range(from, k))
        return out;
    const std::size_t r = from.rank();
    const auto& simplices = from.simplices(k);
    for (std::size_t p = 0; p < simplices.size(); ++p) {
        if (!keep(simplices[p]))
            continue;
        if (auto q = to.position(k, simplices[p]))
            for (std::size_t i = 0; i < r; ++i)
                out.set(*q * r + i, p * r + i, scale);
    }
    return out;
}

FPModule resample(FPModule m, std::uint64_t seed, std::size_t index)
{
    return seed ? m.perturbed(seed * 1000003u + index) : m;
}

std::string degree_label(const char* h, int k, const char* space)
{
    return std::string(h) + std::to_string(k) + "(" + space + ")";
}

// C_k(A) + C_k(B) inclusions and the zig-zag for the homology sequence.
ExactMatrix include_intersection(const Pieces& p, int k)
{
    return vstack(transfer(p.ab, p.a, k), -transfer(p.ab, p.b, k));
}

ExactMatrix add_pieces(const Pieces& p, int k)
{
    return transfer(p.a, p.x, k).hconcat(transfer(p.b, p.x, k));
}

// z is split as beta = z on A, gamma = the rest. The class lifting
// (d beta, d gamma) is d beta off C and -d gamma on C.
ExactMatrix homology_connecting(const Pieces& p, const CoverPair& pair, int k)
{
    const ExactMatrix beta = transfer(p.x, p.a, k);
    const ExactMatrix gamma = transfer(p.x, p.b, k) *
                              (ExactMatrix::identity(p.x.ring(), p.x.dimension(k)) - transfer(p.a, p.x, k) * beta);
    const auto in_c = [&](std::size_t s) { return pair.c.contains(k - 1, s); };
    return select(p.a, p.ab, k - 1, Rational(1), [&](std::size_t s) { return !in_c(s); }) * p.a.boundary(k) * beta -
           select(p.b, p.ab, k - 1, Rational(1), in_c) * p.b.boundary(k) * gamma;
}

void check_homology_zigzag(const Pieces& p, const CoverPair& pair, int k, const FPModule& hx)
{
    const ExactMatrix z = hx.generators();
    const ExactMatrix beta = transfer(p.x, p.a, k) * z;
    const ExactMatrix gamma = transfer(p.x, p.b, k) * (z - transfer(p.a, p.x, k) * beta);
    const ExactMatrix lifted = include_intersection(p, k - 1) * (homology_connecting(p, pair, k) * z);
    if (!(lifted == vstack(p.a.boundary(k) * beta, p.b.boundary(k) * gamma)))
        throw Error(ErrorKind::NotChainMap, "boundary of the split cycle does not come from A&B");
}

ExactMatrix restrict_pieces(const Pieces& p, int k)
{
    return vstack(transfer(p.x, p.a, k), transfer(p.x, p.b, k));
}

ExactMatrix subtract_restrictions(const Pieces& p, int k)
{
    return transfer(p.a, p.ab, k).hconcat(-transfer(p.b, p.ab, k));
}

ExactMatrix split_beta(const Pieces& p, int k)
{
    return transfer(p.ab, p.a, k);
}

ExactMatrix split_gamma(const Pieces& p, const CoverPair& pair, int k)
{
    return select(p.ab, p.b, k, Rational(-1), [&](std::size_t s) { return pair.c.contains(k, s); });
}

ExactMatrix cohomology_connecting(const Pieces& p, const CoverPair& pair, int k)
{
    const ExactMatrix lift = transfer(p.a, p.x, k + 1).hconcat(
        select(p.b, p.x, k + 1, Rational(1), [&](std::size_t s) { return !pair.a.contains(k + 1, s); }));
    return lift * vstack(p.a.coboundary(k) * split_beta(p, k), p.b.coboundary(k) * split_gamma(p, pair, k));
}

void check_cohomology_zigzag(const Pieces& p, const CoverPair& pair, int k, const FPModule& hab)
{
    const ExactMatrix alpha = hab.generators();
    const ExactMatrix e = cohomology_connecting(p, pair, k) * alpha;
    const ExactMatrix db = p.a.coboundary(k) * (split_beta(p, k) * alpha);
    const ExactMatrix dg = p.b.coboundary(k) * (split_gamma(p, pair, k) * alpha);
    if (!(restrict_pieces(p, k + 1) * e == vstack(db, dg)))
        throw Error(ErrorKind::NotChainMap, "coboundary of the split cocycle does not come from X");
}

void judge_exactness(ExactSequenceReport& r)
{
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        const FPModule& here = r.nodes[i].module;
        const ModuleMap in = i ? r.maps[i - 1] : ModuleMap::zero(FPModule::free(here.ring(), 0), here);
        const ModuleMap out = i + 1 < r.nodes.size() ? r.maps[i] : ModuleMap::zero(here, FPModule::free(here.ring(), 0));
        r.nodes[i].exact = is_exact_at(in, out);
    }
}

ExactSequenceReport homology_sequence(const Pieces& p, const CoverPair& pair, std::uint64_t seed)
{
    ExactSequenceReport r;
    r.kind = "homology";
    for (int k = p.top; k >= 0; --k) {
        FPModule sum = homology_presentation(p.a.boundary(k + 1).direct_sum(p.b.boundary(k + 1)),
                                             p.a.boundary(k).direct_sum(p.b.boundary(k)));
        const std::size_t base = r.nodes.size();
        r.nodes.push_back({degree_label("H_", k, "A&B"), resample(p.ab.homology(k), seed, base), false});
        r.nodes.push_back({degree_label("H_", k, "A") + "+" + degree_label("H_", k, "B"), resample(sum, seed, base + 1),
                           false});
        r.nodes.push_back({degree_label("H_", k, "X"), resample(p.x.homology(k), seed, base + 2), false});
    }
    for (int k = p.top; k >= 0; --k) {
        const std::size_t t = 3 * static_cast<std::size_t>(p.top - k);
        r.maps.push_back(induced_map(include_intersection(p, k), r.nodes[t].module, r.nodes[t + 1].module));
        r.maps.push_back(induced_map(add_pieces(p, k), r.nodes[t + 1].module, r.nodes[t + 2].module));
        if (k > 0) {
            check_homology_zigzag(p, pair, k, r.nodes[t + 2].module);
            r.maps.push_back(induced_map(homology_connecting(p, pair, k), r.nodes[t + 2].module, r.nodes[t + 3].module));
        }
    }
    judge_exactness(r);
    return r;
}

ExactSequenceReport cohomology_sequence(const Pieces& p, const CoverPair& pair, std::uint64_t seed)
{
    ExactSequenceReport r;
    r.kind = "cohomology";
    for (int k = 0; k <= p.top; ++k) {
        FPModule sum = homology_presentation(p.a.coboundary(k - 1).direct_sum(p.b.coboundary(k - 1)),
                                             p.a.coboundary(k).direct_sum(p.b.coboundary(k)));
        const std::size_t base = r.nodes.size();
        r.nodes.push_back({degree_label("H^", k, "X"), resample(p.x.cohomology(k), seed, base), false});
        r.nodes.push_back({degree_label("H^", k, "A") + "+" + degree_label("H^", k, "B"), resample(sum, seed, base + 1),
                           false});
        r.nodes.push_back({degree_label("H^", k, "A&B"), resample(p.ab.cohomology(k), seed, base + 2), false});
    }
    for (int k = 0; k <= p.top; ++k) {
        const std::size_t t = 3 * static_cast<std::size_t>(k);
        r.maps.push_back(induced_map(restrict_pieces(p, k), r.nodes[t].module, r.nodes[t + 1].module));
        r.maps.push_back(induced_map(subtract_restrictions(p, k), r.nodes[t + 1].module, r.nodes[t + 2].module));
        if (k < p.top) {
            check_cohomology_zigzag(p, pair, k, r.nodes[t + 2].module);
            r.maps.push_back(
                induced_map(cohomology_connecting(p, pair, k), r.nodes[t + 2].module, r.nodes[t + 3].module));
        }
    }
    judge_exactness(r);
    return r;
}

} // namespace

bool ExactSequenceReport::all_exact() const
{
    return std::all_of(nodes.begin(), nodes.end(), [](const SequenceNode& n) { return n.exact; });
}

const SequenceNode& ExactSequenceReport::node(const std::string& label) const
{
    for (const auto& n : nodes)
        if (n.label == label)
            return n;
    throw Error(ErrorKind::InvalidArgument, "no node labelled " + label);
}

Table ExactSequenceReport::table() const
{
    Table t;
    t.columns = {"position", "node", "module", "exact"};
    for (std::size_t i = 0; i < nodes.size(); ++i)
        t.rows.push_back({std::to_string(i), nodes[i].label, nodes[i].module.to_string(), nodes[i].exact ? "true" : "false"});
    return t;
}

ExactSequenceReport mv_homology(const CoverPair& pair, const LocalSystem& g, std::uint64_t seed)
{
    return homology_sequence(make_pieces(pair, g), pair, seed);
}

ExactSequenceReport mv_cohomology(const CoverPair& pair, const LocalSystem& g, std::uint64_t seed)
{
    return cohomology_sequence(make_pieces(pair, g), pair, seed);
}

CochainSplitting mv_splitting(const CoverPair& pair, const LocalSystem& g, int k, const ExactMatrix& alpha)
{
    const Pieces p = make_pieces(pair, g);
    if (alpha.rows() != p.ab.dimension(k) || alpha.cols() != 1)
        throw Error(ErrorKind::DegreeMismatch, "cochain has the wrong size for degree " + std::to_string(k));
    CochainSplitting s;
    s.beta = split_beta(p, k) * alpha;
    s.gamma = split_gamma(p, pair, k) * alpha;
    s.holds = subtract_restrictions(p, k) * vstack(s.beta, s.gamma) == alpha;
    return s;
}

bool Diagram6Report::middle_blocks_commute() const
{
    return std::all_of(blocks.begin(), blocks.end(), [](const BlockVerdict& b) {
        return b.block == "connecting" || b.sign == 1 || b.sign == 0;
    });
}

int Diagram6Report::connecting_sign() const
{
    int sign = 0;
    for (const auto& b : blocks) {
        if (b.block != "connecting" || b.sign == 0)
            continue;
        if (b.sign == 2 || (sign && sign != b.sign))
            return 2;
        sign = b.sign;
    }
    return sign;
}

Table Diagram6Report::table() const
{
    Table t;
    t.columns = {"degree", "block", "sign"};
    for (const auto& b : blocks)
        t.rows.push_back({std::to_string(b.degree), b.block,
                          b.sign == 2 ? "none" : (b.sign == 0 ? "either" : (b.sign > 0 ? "+1" : "-1"))});
    return t;
}

namespace {

bool star_inside(const FullSubcomplex& k, const Subcomplex& u)
{
    const auto& m = *u.ambient();
    for (int d = 0; d <= m.dimension(); ++d)
        for (std::size_t i = 0; i < m.count(d); ++i) {
            const Simplex& s = m.simplex(d, i);
            bool meets = std::any_of(s.begin(), s.end(), [&](int v) { return k.contains_vertex(v); });
            if (meets && !u.contains(d, i))
                return false;
        }
    return true;
}

// Cochains of a pair on M capped with nu restricted to the facets of W, read
// as chains of W.
ExactMatrix cap_into(const LocalSystem& g, const FundamentalClass& nu, const TwistedComplex& top,
                     const TwistedComplex& bottom, const Subcomplex& w, int k)
{
    const int n = g.base()->dimension();
    ExactMatrix restricted = nu.cycle;
    for (std::size_t i = 0; i < g.base()->count(n); ++i)
        if (!w.contains(n, i))
            restricted.set(i, 0, 0);
    const ExactMatrix ambient =
        cap_matrix(g, k, nu.system, restricted, n) * top.to_ambient(k, ExactMatrix::identity(g.ring(), top.dimension(k)));
    ExactMatrix out = bottom.from_ambient(n - k, ambient);
    if (!(bottom.to_ambient(n - k, out) == ambient))
        throw Error(ErrorKind::InvalidArgument, "cap product leaves the subcomplex");
    return out;
}

int compare(const ModuleMap& p, const ModuleMap& q)
{
    const bool plus = p == q, minus = p == q.negated();
    if (plus && minus)
        return 0;
    return plus ? 1 : (minus ? -1 : 2);
}

} // namespace

Diagram6Report diagram6_check(const LocalSystem& g, const Subcomplex& u, const Subcomplex& v, const FullSubcomplex& k,
                              const FullSubcomplex& l, std::uint64_t seed)
{
    const ComplexPtr& m = g.base();
    for (const ComplexPtr& other : {u.ambient(), v.ambient(), k.ambient(), l.ambient()})
        if (!other || !(*other == *m))
            throw Error(ErrorKind::BaseMismatch, "diagram data live on different complexes");
    const Subcomplex whole = Subcomplex::whole(m);
    if (!(u.unite(v) == whole))
        throw Error(ErrorKind::NotACover, "U and V do not cover M");
    if (!star_inside(k, u) || !star_inside(l, v))
        throw Error(ErrorKind::NotACover, "K or L is not surrounded by U or V");

    const int n = m->dimension();
    const FundamentalClass nu = fundamental_class_direct(m, g.ring());
    const LocalSystem gw = tensor(g, nu.system);

    const CoverPair top_pair =
        CoverPair::relative(whole, whole, k.complement().as_subcomplex(), l.complement().as_subcomplex());
    const CoverPair bottom_pair = CoverPair::absolute(u, v);
    const Pieces top = make_pieces(top_pair, g);
    const Pieces bottom = make_pieces(bottom_pair, gw);
    const ExactSequenceReport upper = cohomology_sequence(top, top_pair, seed);
    const ExactSequenceReport lower = homology_sequence(bottom, bottom_pair, seed ? seed + 7 : 0);

    std::vector<ModuleMap> vertical;
    for (int d = 0; d <= n; ++d) {
        const std::size_t t = 3 * static_cast<std::size_t>(d);
        const ExactMatrix left = cap_into(g, nu, top.x, bottom.ab, u.intersect(v), d);
        const ExactMatrix middle =
            cap_into(g, nu, top.a, bottom.a, u, d).direct_sum(-cap_into(g, nu, top.b, bottom.b, v, d));
        const ExactMatrix right = cap_into(g, nu, top.ab, bottom.x, whole, d);
        vertical.push_back(induced_map(left, upper.nodes[t].module, lower.nodes[t].module));
        vertical.push_back(induced_map(middle, upper.nodes[t + 1].module, lower.nodes[t + 1].module));
        vertical.push_back(induced_map(right, upper.nodes[t + 2].module, lower.nodes[t + 2].module));
    }

    static const char* names[] = {"left", "right", "connecting"};
    Diagram6Report report;
    for (std::size_t t = 0; t < upper.maps.size(); ++t) {
        const ModuleMap across_then_down = upper.maps[t].then(vertical[t + 1]);
        const ModuleMap down_then_across = vertical[t].then(lower.maps[t]);
        report.blocks.push_back({static_cast<int>(t / 3), names[t % 3], compare(across_then_down, down_then_across)});
    }
    return report;
}

namespace {

// Grid of width x height squares, each cut along the diagonal; the right edge
// is glued to the left one, flipped when twisted. Vertex (a, b) is a*height+b.
std::vector<Simplex> grid_facets(int width, int height, bool twisted)
{
    auto id = [&](int a, int b) {
        b = ((b % height) + height) % height;
        if (a == width) {
            a = 0;
            if (twisted)
                b = (height - b) % height;
        }
        return a * height + b;
    };
    std::vector<Simplex> out;
    for (int a = 0; a < width; ++a)
        for (int b = 0; b < height; ++b) {
            Simplex lower = {id(a, b), id(a + 1, b), id(a + 1, b + 1)};
            Simplex upper = {id(a, b), id(a, b + 1), id(a + 1, b + 1)};
            std::sort(lower.begin(), lower.end());
            std::sort(upper.begin(), upper.end());
            out.push_back(lower);
            out.push_back(upper);
        }
    return out;
}

MVFixture grid_fixture(std::string name, bool twisted)
{
    const int width = 6, height = 3;
    const auto facets = grid_facets(width, height, twisted);
    auto m = share(SimplicialComplex(width * height, facets));
    std::vector<Simplex> u, v;
    for (std::size_t i = 0; i < facets.size(); ++i) {
        const int column = static_cast<int>(i) / (2 * height);
        if (column != 4)
            u.push_back(facets[i]);
        if (column != 1)
            v.push_back(facets[i]);
    }
    std::vector<int> k, l;
    for (int b = 0; b < height; ++b)
        for (int a : {0, 1, 2, 3}) {
            k.push_back(a * height + b);
            l.push_back((a + 3) % width * height + b);
        }
    return {std::move(name), m, Subcomplex::closure(m, u), Subcomplex::closure(m, v), FullSubcomplex(m, k),
            FullSubcomplex(m, l)};
}

// U is the upper hemisphere together with the lower half-star of vertex 0,
// V the mirror image; both contain the whole star of 0.
MVFixture octahedron_fixture()
{
    std::vector<Simplex> facets, u, v;
    for (int x : {0, 1})
        for (int y : {2, 3})
            for (int z : {4, 5}) {
                facets.push_back({x, y, z});
                if (z == 4 || x == 0)
                    u.push_back({x, y, z});
                if (z == 5 || x == 0)
                    v.push_back({x, y, z});
            }
    auto m = share(SimplicialComplex(6, facets));
    return {"octahedron", m, Subcomplex::closure(m, u), Subcomplex::closure(m, v), FullSubcomplex(m, {0, 4}),
            FullSubcomplex(m, {0, 5})};
}

// Cylinder of 6 x 3 squares closed by two cone points; U and V are the
// halves overlapping in two rings of squares.
MVFixture sphere_grid_fixture()
{
    const int width = 6, height = 3, north = (width + 1) * height, south = north + 1;
    std::vector<Simplex> facets, u, v;
    auto id = [&](int a, int b) { return a * height + (b % height); };
    auto add = [&](Simplex s, int column) {
        std::sort(s.begin(), s.end());
        facets.push_back(s);
        if (column <= 3)
            u.push_back(s);
        if (column >= 2)
            v.push_back(s);
    };
    for (int b = 0; b < height; ++b) {
        add({north, id(0, b), id(0, b + 1)}, -1);
        add({south, id(width, b), id(width, b + 1)}, width);
        for (int a = 0; a < width; ++a) {
            add({id(a, b), id(a + 1, b), id(a + 1, b + 1)}, a);
            add({id(a, b), id(a, b + 1), id(a + 1, b + 1)}, a);
        }
    }
    auto m = share(SimplicialComplex(south + 1, facets));
    std::vector<int> k = {north}, l = {south};
    for (int b = 0; b < height; ++b) {
        for (int a = 0; a <= 3; ++a)
            k.push_back(id(a, b));
        for (int a = 3; a <= width; ++a)
            l.push_back(id(a, b));
    }
    return {"sphere-grid", m, Subcomplex::closure(m, u), Subcomplex::closure(m, v), FullSubcomplex(m, k),
            FullSubcomplex(m, l)};
}

// The 7-vertex torus has facets {i, i+1, i+3} and {i, i+2, i+3} mod 7; the
// label i/7 is a circle coordinate, so runs of consecutive i are bands.
MVFixture torus7_fixture()
{
    auto m = share(corpus("torus"));
    std::vector<Simplex> u, v;
    for (int i = 0; i < 7; ++i)
        for (int step : {1, 2}) {
            Simplex s = {i, (i + step) % 7, (i + 3) % 7};
            std::sort(s.begin(), s.end());
            if (i <= 4)
                u.push_back(s);
            if (i >= 3 || i == 0)
                v.push_back(s);
        }
    return {"torus", m, Subcomplex::closure(m, u), Subcomplex::closure(m, v), FullSubcomplex(m, {3}),
            FullSubcomplex(m, {0})};
}

} // namespace

MVFixture mv_fixture(std::string_view name)
{
    if (name == "octahedron")
        return octahedron_fixture();
    if (name == "torus")
        return torus7_fixture();
    if (name == "sphere-grid")
        return sphere_grid_fixture();
    if (name == "torus-grid")
        return grid_fixture("torus-grid", false);
    if (name == "klein-grid")
        return grid_fixture("klein-grid", true);
    throw Error(ErrorKind::UnknownName, "no cover fixture named '" + std::string(name) + "'");
}

const std::vector<std::string>& mv_fixture_names()
{
    static const std::vector<std::string> names = {"octahedron", "torus", "sphere-grid", "torus-grid", "klein-grid"};
    return names;
}

} // namespace tdual
