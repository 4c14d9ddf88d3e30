#include "tdual/local_system.hpp"

#include "tdual/error.hpp"
#include "tdual/hash.hpp"
#include "tdual/module.hpp"

#include <deque>
#include <fstream>
#include <set>
#include <sstream>

namespace tdual {

LocalSystem::LocalSystem(ComplexPtr base, RingSpec ring, std::size_t rank, std::vector<ExactMatrix> transports)
    : base_(std::move(base)), ring_(ring), rank_(rank), forward_(std::move(transports))
{
    if (rank_ == 0)
        throw Error(ErrorKind::InvalidArgument, "local system rank must be positive");
    if (forward_.size() != base_->count(1))
        throw Error(ErrorKind::InvalidArgument, "one transport per edge expected");
    backward_.reserve(forward_.size());
    for (std::size_t e = 0; e < forward_.size(); ++e) {
        const auto& t = forward_[e];
        if (!(t.ring() == ring_))
            throw Error(ErrorKind::RingMismatch, "transport over " + t.ring().name() + " in a system over " + ring_.name());
        if (t.rows() != rank_ || t.cols() != rank_)
            throw Error(ErrorKind::InvalidArgument, "transport has the wrong shape");
        auto inv = t.inverse();
        if (!inv) {
            const auto& s = base_->simplex(1, e);
            throw Error(ErrorKind::InvalidArgument,
                        "transport on edge " + std::to_string(s[0]) + " " + std::to_string(s[1]) + " is not invertible");
        }
        backward_.push_back(std::move(*inv));
    }
}

LocalSystem LocalSystem::parse(ComplexPtr base, std::string_view text)
{
    std::optional<RingSpec> ring;
    std::size_t rank = 0;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    auto fail = [&](const std::string& msg) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": " + msg);
    };
    auto next_tokens = [&](std::vector<std::string>& tok) {
        while (std::getline(in, line)) {
            ++line_no;
            if (auto h = line.find('#'); h != std::string::npos)
                line.erase(h);
            std::istringstream ls(line);
            tok.clear();
            for (std::string t; ls >> t;)
                tok.push_back(t);
            if (!tok.empty())
                return true;
        }
        return false;
    };
    auto parse_vertex = [&](const std::string& t) {
        std::size_t pos = 0;
        int v = -1;
        try {
            v = std::stoi(t, &pos);
        } catch (...) {
            fail("bad vertex '" + t + "'");
        }
        if (pos != t.size() || v < 0 || v >= base->vertex_count())
            fail("bad vertex '" + t + "'");
        return v;
    };

    std::vector<ExactMatrix> transports;
    std::set<std::size_t> seen;
    std::vector<std::string> tok;
    while (next_tokens(tok)) {
        if (tok[0] == "ring") {
            if (ring)
                fail("duplicate 'ring' line");
            std::string spec;
            for (std::size_t i = 1; i < tok.size(); ++i)
                spec += (i > 1 ? " " : "") + tok[i];
            try {
                ring = RingSpec::parse(spec);
            } catch (const Error&) {
                fail("bad ring '" + spec + "'");
            }
        } else if (tok[0] == "rank") {
            if (rank)
                fail("duplicate 'rank' line");
            if (tok.size() != 2)
                fail("expected 'rank <r>'");
            try {
                std::size_t pos = 0;
                long r = std::stol(tok[1], &pos);
                if (pos != tok[1].size() || r <= 0)
                    throw 0;
                rank = static_cast<std::size_t>(r);
            } catch (...) {
                fail("bad rank '" + tok[1] + "'");
            }
        } else if (tok[0] == "edge") {
            if (!ring || !rank)
                fail("'edge' before 'ring' and 'rank'");
            if (transports.empty())
                transports.assign(base->count(1), ExactMatrix::identity(*ring, rank));
            if (tok.size() != 3)
                fail("expected 'edge u v'");
            int u = parse_vertex(tok[1]), v = parse_vertex(tok[2]);
            if (u >= v)
                fail("edge endpoints must be ascending");
            auto e = base->find({u, v});
            if (!e)
                fail("no edge " + tok[1] + " " + tok[2] + " in the complex");
            if (!seen.insert(*e).second)
                fail("duplicate edge " + tok[1] + " " + tok[2]);
            ExactMatrix t(*ring, rank, rank);
            for (std::size_t i = 0; i < rank; ++i) {
                if (!next_tokens(tok))
                    fail("missing matrix row");
                if (tok.size() != rank)
                    fail("matrix row needs " + std::to_string(rank) + " entries");
                for (std::size_t j = 0; j < rank; ++j) {
                    try {
                        t.set(i, j, parse_rational(tok[j]));
                    } catch (const Error& err) {
                        fail("bad entry '" + tok[j] + "'");
                    }
                }
            }
            if (!t.inverse())
                fail("transport on edge " + std::to_string(u) + " " + std::to_string(v) + " is not invertible");
            transports[*e] = std::move(t);
        } else {
            fail("unknown keyword '" + tok[0] + "'");
        }
    }
    if (!ring)
        throw Error(ErrorKind::ParseError, "missing 'ring' line");
    if (!rank)
        throw Error(ErrorKind::ParseError, "missing 'rank' line");
    if (transports.empty())
        transports.assign(base->count(1), ExactMatrix::identity(*ring, rank));
    return LocalSystem(std::move(base), *ring, rank, std::move(transports));
}

LocalSystem LocalSystem::load(ComplexPtr base, const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::ParseError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(std::move(base), ss.str());
}

const ExactMatrix& LocalSystem::transport(int u, int v) const
{
    std::size_t e = base_->edge_index(u, v);
    return u < v ? forward_[e] : backward_[e];
}

ExactMatrix LocalSystem::holonomy(const std::vector<int>& loop) const
{
    ExactMatrix h = ExactMatrix::identity(ring_, rank_);
    for (std::size_t i = 0; i < loop.size(); ++i)
        h = h * transport(loop[i], loop[(i + 1) % loop.size()]);
    return h;
}

LocalSystem LocalSystem::with_transport(int u, int v, const ExactMatrix& t) const
{
    std::vector<ExactMatrix> f = forward_;
    std::size_t e = base_->edge_index(u, v);
    f[e] = u < v ? t : *t.inverse();
    return LocalSystem(base_, ring_, rank_, std::move(f));
}

bool LocalSystem::is_sign_system() const
{
    if (rank_ != 1)
        return false;
    for (const auto& t : forward_) {
        Rational x = t.at(0, 0);
        if (x != 1 && x != ring_.normalize(-1))
            return false;
    }
    return true;
}

int LocalSystem::sign(int u, int v) const
{
    return transport(u, v).at(0, 0) == 1 ? 1 : -1;
}

std::string LocalSystem::to_text() const
{
    std::string out = "ring " + ring_.name() + "\nrank " + std::to_string(rank_) + "\n";
    const auto id = ExactMatrix::identity(ring_, rank_);
    for (std::size_t e = 0; e < forward_.size(); ++e) {
        if (forward_[e] == id)
            continue;
        const auto& s = base_->simplex(1, e);
        out += "edge " + std::to_string(s[0]) + " " + std::to_string(s[1]) + "\n";
        for (std::size_t i = 0; i < rank_; ++i) {
            for (std::size_t j = 0; j < rank_; ++j)
                out += (j ? " " : "") + forward_[e].at(i, j).get_str();
            out += "\n";
        }
    }
    return out;
}

std::string LocalSystem::digest() const
{
    return hex64(fnv1a64(to_text()));
}

FlatnessResult validate_flatness(const LocalSystem& g)
{
    const auto& c = *g.base();
    for (const auto& t : c.simplices(2)) {
        const std::size_t uv = c.edge_index(t[0], t[1]);
        const std::size_t vw = c.edge_index(t[1], t[2]);
        const std::size_t uw = c.edge_index(t[0], t[2]);
        if (!(g.edge_transport(uv) * g.edge_transport(vw) == g.edge_transport(uw)))
            return {false, t};
    }
    return {};
}

LocalSystem constant_system(ComplexPtr base, const RingSpec& ring, std::size_t rank)
{
    std::vector<ExactMatrix> t(base->count(1), ExactMatrix::identity(ring, rank));
    return LocalSystem(std::move(base), ring, rank, std::move(t));
}

std::vector<std::size_t> reference_facets(const SimplicialComplex& complex)
{
    std::vector<std::size_t> ref(complex.vertex_count());
    for (int v = 0; v < complex.vertex_count(); ++v) {
        if (complex.star(v).empty())
            throw Error(ErrorKind::NotClosedPseudomanifold, "vertex " + std::to_string(v) + " lies in no facet");
        ref[v] = complex.star(v).front();
    }
    return ref;
}

int local_orientation(const SimplicialComplex& complex, int vertex, std::size_t facet)
{
    if (complex.star(vertex).empty())
        throw Error(ErrorKind::NotClosedPseudomanifold, "vertex " + std::to_string(vertex) + " lies in no facet");
    return star_component_walk(complex, vertex, complex.star(vertex).front(), facet);
}

LocalSystem orientation_system(ComplexPtr base, const RingSpec& ring)
{
    const auto& c = *base;
    if (!validate(c).closed_pseudomanifold())
        throw Error(ErrorKind::NotClosedPseudomanifold, "orientation system needs a closed pseudomanifold");
    std::vector<ExactMatrix> t;
    t.reserve(c.count(1));
    for (const auto& e : c.simplices(1)) {
        const int u = e[0], v = e[1];
        std::size_t sigma = 0;
        bool found = false;
        for (std::size_t f : c.star(u)) {
            const auto& fs = c.facets()[f];
            if (std::binary_search(fs.begin(), fs.end(), v)) {
                sigma = f;
                found = true;
                break;
            }
        }
        if (!found)
            throw Error(ErrorKind::NotClosedPseudomanifold, "edge lies in no facet");
        const int s = local_orientation(c, u, sigma) * local_orientation(c, v, sigma);
        ExactMatrix m(ring, 1, 1);
        m.set(0, 0, s);
        t.push_back(std::move(m));
    }
    return LocalSystem(std::move(base), ring, 1, std::move(t));
}

namespace {

void require_compatible(const LocalSystem& g, const LocalSystem& h)
{
    if (g.base() != h.base() && !(*g.base() == *h.base()))
        throw Error(ErrorKind::BaseMismatch, "local systems live on different complexes");
    if (!(g.ring() == h.ring()))
        throw Error(ErrorKind::RingMismatch, "local systems over " + g.ring().name() + " and " + h.ring().name());
}

} // namespace

LocalSystem tensor(const LocalSystem& g, const LocalSystem& h)
{
    require_compatible(g, h);
    std::vector<ExactMatrix> t;
    t.reserve(g.base()->count(1));
    for (std::size_t e = 0; e < g.base()->count(1); ++e)
        t.push_back(g.edge_transport(e).kron(h.edge_transport(e)));
    return LocalSystem(g.base(), g.ring(), g.rank() * h.rank(), std::move(t));
}

LocalSystem dual_system(const LocalSystem& g)
{
    std::vector<ExactMatrix> t;
    for (std::size_t e = 0; e < g.base()->count(1); ++e)
        t.push_back(g.edge_inverse(e).transposed());
    return LocalSystem(g.base(), g.ring(), g.rank(), std::move(t));
}

LocalSystem gauge_transform(const LocalSystem& g, const std::vector<ExactMatrix>& gauge)
{
    const auto& c = *g.base();
    if (gauge.size() != static_cast<std::size_t>(c.vertex_count()))
        throw Error(ErrorKind::InvalidArgument, "one gauge matrix per vertex expected");
    std::vector<ExactMatrix> t;
    for (std::size_t e = 0; e < c.count(1); ++e) {
        const auto& s = c.simplex(1, e);
        auto inv = gauge[s[0]].inverse();
        if (!inv)
            throw Error(ErrorKind::InvalidArgument, "gauge matrix is not invertible");
        t.push_back(*inv * g.edge_transport(e) * gauge[s[1]]);
    }
    return LocalSystem(g.base(), g.ring(), g.rank(), std::move(t));
}

Trivialization is_trivializable(const LocalSystem& g)
{
    const auto& c = *g.base();
    const int n = c.vertex_count();
    std::vector<std::vector<int>> nbrs(n);
    for (const auto& e : c.simplices(1)) {
        nbrs[e[0]].push_back(e[1]);
        nbrs[e[1]].push_back(e[0]);
    }
    Trivialization out;
    std::vector<std::optional<ExactMatrix>> gauge(n);
    for (int root = 0; root < n; ++root) {
        if (gauge[root])
            continue;
        gauge[root] = ExactMatrix::identity(g.ring(), g.rank());
        std::deque<int> queue{root};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : nbrs[u]) {
                if (gauge[v])
                    continue;
                gauge[v] = g.transport(v, u) * *gauge[u];
                queue.push_back(v);
            }
        }
    }
    for (auto& m : gauge)
        out.gauge.push_back(std::move(*m));
    const auto id = ExactMatrix::identity(g.ring(), g.rank());
    for (const auto& e : c.simplices(1)) {
        auto inv = out.gauge[e[0]].inverse();
        if (!(*inv * g.transport(e[0], e[1]) * out.gauge[e[1]] == id)) {
            out.failing_edge = e;
            out.gauge.clear();
            return out;
        }
    }
    out.trivializable = true;
    return out;
}

ExactMatrix random_invertible(const RingSpec& ring, std::size_t n, std::mt19937_64& rng)
{
    ExactMatrix m = ExactMatrix::identity(ring, n);
    if (n < 2) {
        if (rng() % 2)
            m.set(0, 0, -1);
        return m;
    }
    for (int step = 0; step < 4; ++step) {
        std::size_t i = rng() % n, j = rng() % (n - 1);
        if (j >= i)
            ++j;
        ExactMatrix e = ExactMatrix::identity(ring, n);
        e.set(i, j, static_cast<long>(rng() % 5) - 2);
        m = m * e;
    }
    if (rng() % 2) {
        ExactMatrix e = ExactMatrix::identity(ring, n);
        e.set(0, 0, -1);
        m = m * e;
    }
    return m;
}

namespace {

// Random Z/2-valued 1-cocycle: a random coboundary plus a random combination
// of representatives of H^1(M; Z/2).
std::vector<int> random_z2_cocycle(const SimplicialComplex& c, std::mt19937_64& rng)
{
    const RingSpec z2 = RingSpec::modular(2);
    ExactMatrix d0(z2, c.count(1), c.count(0));
    for (std::size_t e = 0; e < c.count(1); ++e) {
        d0.set(e, c.face(1, e, 0), 1);
        d0.set(e, c.face(1, e, 1), 1);
    }
    ExactMatrix d1(z2, c.count(2), c.count(1));
    for (std::size_t t = 0; t < c.count(2); ++t)
        for (int j = 0; j < 3; ++j)
            d1.set(t, c.face(2, t, j), 1);
    FPModule h1 = homology_presentation(d0, d1);
    ExactMatrix gens = h1.generators();

    std::vector<int> f(c.count(0));
    for (auto& x : f)
        x = static_cast<int>(rng() % 2);
    std::vector<int> coeff(h1.generator_count());
    for (auto& x : coeff)
        x = static_cast<int>(rng() % 2);
    std::vector<int> a(c.count(1));
    for (std::size_t e = 0; e < c.count(1); ++e) {
        const auto& s = c.simplex(1, e);
        int v = f[s[0]] ^ f[s[1]];
        for (std::size_t k = 0; k < coeff.size(); ++k)
            if (coeff[k] && gens.at(e, k) != 0)
                v ^= 1;
        a[e] = v;
    }
    return a;
}

} // namespace

LocalSystem random_flat_system(ComplexPtr base, const RingSpec& ring, std::size_t rank, std::uint64_t seed)
{
    const auto& c = *base;
    std::mt19937_64 rng(seed);
    auto a = random_z2_cocycle(c, rng);
    auto b = random_z2_cocycle(c, rng);
    std::vector<ExactMatrix> gauge;
    for (int v = 0; v < c.vertex_count(); ++v)
        gauge.push_back(random_invertible(ring, rank, rng));

    ExactMatrix swap = ExactMatrix::identity(ring, rank);
    if (rank >= 2) {
        swap.set(0, 0, 0);
        swap.set(1, 1, 0);
        swap.set(0, 1, 1);
        swap.set(1, 0, 1);
    }
    const ExactMatrix id = ExactMatrix::identity(ring, rank);
    std::vector<ExactMatrix> t;
    for (std::size_t e = 0; e < c.count(1); ++e) {
        const auto& s = c.simplex(1, e);
        ExactMatrix m = a[e] ? swap : id;
        if (b[e])
            m = -m;
        t.push_back(gauge[s[0]] * m * *gauge[s[1]].inverse());
    }
    return LocalSystem(std::move(base), ring, rank, std::move(t));
}

} // namespace tdual
