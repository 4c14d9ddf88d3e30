#include "tdual/complex.hpp"

#include "tdual/error.hpp"
#include "tdual/hash.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

namespace tdual {

namespace {

std::string simplex_text(const Simplex& s)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

} // namespace

SimplicialComplex::SimplicialComplex(int vertex_count, const std::vector<Simplex>& simplices)
    : vertex_count_(vertex_count)
{
    if (vertex_count <= 0)
        throw Error(ErrorKind::InvalidArgument, "complex needs at least one vertex");
    std::vector<std::set<Simplex>> all;
    for (const auto& s : simplices) {
        if (s.empty())
            throw Error(ErrorKind::InvalidArgument, "empty simplex");
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] < 0 || s[i] >= vertex_count)
                throw Error(ErrorKind::InvalidArgument, "vertex out of range in " + simplex_text(s));
            if (i > 0 && s[i] <= s[i - 1])
                throw Error(ErrorKind::InvalidArgument, "vertices not strictly ascending in " + simplex_text(s));
        }
        if (all.size() < s.size())
            all.resize(s.size());
        const unsigned n = static_cast<unsigned>(s.size());
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            Simplex f;
            for (unsigned b = 0; b < n; ++b)
                if (mask & (1u << b))
                    f.push_back(s[b]);
            all[f.size() - 1].insert(f);
        }
    }
    if (all.empty())
        throw Error(ErrorKind::InvalidArgument, "complex has no simplices");
    if (static_cast<int>(all[0].size()) != vertex_count)
        throw Error(ErrorKind::InvalidArgument, "some vertex in [0, " + std::to_string(vertex_count) + ") is unused");

    const int dim = static_cast<int>(all.size()) - 1;
    simplices_.resize(dim + 1);
    index_.resize(dim + 1);
    for (int k = 0; k <= dim; ++k) {
        simplices_[k].assign(all[k].begin(), all[k].end());
        for (std::size_t i = 0; i < simplices_[k].size(); ++i)
            index_[k].emplace(simplices_[k][i], i);
    }

    faces_.resize(dim + 1);
    std::vector<std::vector<char>> has_coface(dim + 1);
    for (int k = 0; k <= dim; ++k)
        has_coface[k].assign(simplices_[k].size(), 0);
    for (int k = 1; k <= dim; ++k) {
        faces_[k].resize(simplices_[k].size());
        for (std::size_t i = 0; i < simplices_[k].size(); ++i) {
            const Simplex& s = simplices_[k][i];
            for (int j = 0; j <= k; ++j) {
                Simplex f = s;
                f.erase(f.begin() + j);
                std::size_t fi = index_[k - 1].at(f);
                faces_[k][i].push_back(fi);
                has_coface[k - 1][fi] = 1;
            }
        }
    }
    for (int k = 0; k <= dim; ++k)
        for (std::size_t i = 0; i < simplices_[k].size(); ++i)
            if (!has_coface[k][i])
                maximal_.push_back(simplices_[k][i]);

    star_.resize(vertex_count);
    for (std::size_t i = 0; i < facets().size(); ++i)
        for (int v : facets()[i])
            star_[v].push_back(i);
    if (dim >= 1) {
        cofacets_.resize(simplices_[dim - 1].size());
        for (std::size_t i = 0; i < facets().size(); ++i)
            for (int j = 0; j <= dim; ++j)
                cofacets_[faces_[dim][i][j]].push_back(i);
    }
}

SimplicialComplex SimplicialComplex::parse(std::string_view text)
{
    int dim = -1;
    std::vector<Simplex> simplices;
    std::set<Simplex> seen;
    int max_vertex = -1;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    auto fail = [&](const std::string& msg) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": " + msg);
    };
    auto parse_int = [&](const std::string& tok) {
        int v = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || p != tok.data() + tok.size() || v < 0)
            fail("expected a non-negative integer, got '" + tok + "'");
        return v;
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto h = line.find('#'); h != std::string::npos)
            line.erase(h);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;)
            tok.push_back(t);
        if (tok.empty())
            continue;
        if (tok[0] == "dim") {
            if (dim >= 0)
                fail("duplicate 'dim' line");
            if (tok.size() != 2)
                fail("expected 'dim <n>'");
            dim = parse_int(tok[1]);
            continue;
        }
        if (tok[0] != "simplex")
            fail("unknown keyword '" + tok[0] + "'");
        if (dim < 0)
            fail("'simplex' before 'dim'");
        if (static_cast<int>(tok.size()) != dim + 2)
            fail("simplex needs exactly " + std::to_string(dim + 1) + " vertices");
        Simplex s;
        for (std::size_t i = 1; i < tok.size(); ++i) {
            int v = parse_int(tok[i]);
            if (!s.empty() && v <= s.back())
                fail("vertices must be strictly ascending");
            s.push_back(v);
            max_vertex = std::max(max_vertex, v);
        }
        if (!seen.insert(s).second)
            fail("duplicate simplex " + simplex_text(s));
        simplices.push_back(std::move(s));
    }
    if (dim < 0)
        throw Error(ErrorKind::ParseError, "missing 'dim' line");
    if (simplices.empty())
        throw Error(ErrorKind::ParseError, "no simplices");
    std::vector<bool> used(max_vertex + 1);
    for (const auto& s : simplices)
        for (int v : s)
            used[v] = true;
    for (int v = 0; v <= max_vertex; ++v)
        if (!used[v])
            throw Error(ErrorKind::ParseError, "vertex " + std::to_string(v) + " is not used by any simplex");
    SimplicialComplex c(max_vertex + 1, simplices);
    for (const auto& s : simplices)
        if (std::find(c.maximal_.begin(), c.maximal_.end(), s) == c.maximal_.end())
            throw Error(ErrorKind::ParseError, "simplex " + simplex_text(s) + " is a face of another simplex");
    return c;
}

SimplicialComplex SimplicialComplex::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::ParseError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse(ss.str());
    } catch (const Error& e) {
        throw Error(e.kind(), path + ": " + std::string(e.what()).substr(to_string(e.kind()).size() + 2));
    }
}

std::size_t SimplicialComplex::count(int k) const
{
    if (k < 0 || k > dimension())
        return 0;
    return simplices_[k].size();
}

const std::vector<Simplex>& SimplicialComplex::simplices(int k) const
{
    static const std::vector<Simplex> none;
    if (k < 0 || k > dimension())
        return none;
    return simplices_[k];
}

std::optional<std::size_t> SimplicialComplex::find(const Simplex& s) const
{
    const int k = static_cast<int>(s.size()) - 1;
    if (k < 0 || k > dimension())
        return std::nullopt;
    auto it = index_[k].find(s);
    if (it == index_[k].end())
        return std::nullopt;
    return it->second;
}

std::size_t SimplicialComplex::index(const Simplex& s) const
{
    auto i = find(s);
    if (!i)
        throw Error(ErrorKind::InvalidArgument, "simplex " + simplex_text(s) + " is not in the complex");
    return *i;
}

std::size_t SimplicialComplex::edge_index(int u, int v) const
{
    return index(u < v ? Simplex{u, v} : Simplex{v, u});
}

long SimplicialComplex::euler_characteristic() const
{
    long chi = 0;
    for (int k = 0; k <= dimension(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(simplices_[k].size());
    return chi;
}

std::string SimplicialComplex::to_text() const
{
    std::string out = "dim " + std::to_string(dimension()) + "\n";
    for (const auto& s : maximal_) {
        out += "simplex";
        for (int v : s)
            out += " " + std::to_string(v);
        out += "\n";
    }
    return out;
}

std::string SimplicialComplex::digest() const
{
    return hex64(fnv1a64(to_text()));
}

DualGraph dual_graph(const SimplicialComplex& complex)
{
    DualGraph g;
    const int n = complex.dimension();
    g.incident.resize(complex.facets().size());
    if (n < 1)
        return g;
    for (std::size_t r = 0; r < complex.count(n - 1); ++r) {
        const auto& cf = complex.cofacets(r);
        for (std::size_t i = 0; i < cf.size(); ++i)
            for (std::size_t j = i + 1; j < cf.size(); ++j) {
                g.incident[cf[i]].push_back(g.edges.size());
                g.incident[cf[j]].push_back(g.edges.size());
                g.edges.push_back({cf[i], cf[j], r});
            }
    }
    return g;
}

SimplicialComplex link(const SimplicialComplex& complex, int vertex)
{
    std::vector<Simplex> parts;
    std::set<int> verts;
    for (const auto& s : complex.maximal_simplices()) {
        if (!std::binary_search(s.begin(), s.end(), vertex))
            continue;
        Simplex t;
        for (int v : s)
            if (v != vertex) {
                t.push_back(v);
                verts.insert(v);
            }
        if (!t.empty())
            parts.push_back(std::move(t));
    }
    if (parts.empty())
        throw Error(ErrorKind::InvalidArgument, "vertex " + std::to_string(vertex) + " has an empty link");
    std::map<int, int> relabel;
    for (int v : verts)
        relabel.emplace(v, static_cast<int>(relabel.size()));
    for (auto& t : parts)
        for (int& v : t)
            v = relabel.at(v);
    return SimplicialComplex(static_cast<int>(relabel.size()), parts);
}

ManifoldReport validate(const SimplicialComplex& complex)
{
    ManifoldReport r;
    const int n = complex.dimension();
    r.dimension = n;
    r.euler_characteristic = complex.euler_characteristic();
    r.is_pure = std::all_of(complex.maximal_simplices().begin(), complex.maximal_simplices().end(),
                            [&](const Simplex& s) { return static_cast<int>(s.size()) == n + 1; });
    if (n == 0) {
        r.each_ridge_in_two_facets = complex.count(0) == 2;
        r.dual_graph_connected = complex.count(0) == 1;
        r.links_validated = true;
        return r;
    }
    r.each_ridge_in_two_facets = true;
    for (std::size_t i = 0; i < complex.count(n - 1); ++i)
        if (complex.cofacets(i).size() != 2)
            r.each_ridge_in_two_facets = false;

    auto g = dual_graph(complex);
    std::vector<char> seen(complex.facets().size());
    std::deque<std::size_t> queue{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
        std::size_t f = queue.front();
        queue.pop_front();
        for (auto e : g.incident[f]) {
            std::size_t o = g.edges[e].a == f ? g.edges[e].b : g.edges[e].a;
            if (!seen[o]) {
                seen[o] = 1;
                ++reached;
                queue.push_back(o);
            }
        }
    }
    r.dual_graph_connected = reached == complex.facets().size();

    r.links_validated = true;
    for (int v = 0; v < complex.vertex_count() && r.links_validated; ++v) {
        SimplicialComplex l = link(complex, v);
        if (l.dimension() != n - 1)
            r.links_validated = false;
        else if (n == 1)
            r.links_validated = l.vertex_count() == 2;
        else
            r.links_validated = validate(l).passes();
    }
    return r;
}

int incidence_sign(const Simplex& facet, const Simplex& ridge)
{
    for (std::size_t i = 0; i < facet.size(); ++i)
        if (i == ridge.size() || facet[i] != ridge[i])
            return i % 2 == 0 ? 1 : -1;
    throw Error(ErrorKind::InvalidArgument, "not a ridge of the facet");
}

int star_component_walk(const SimplicialComplex& complex, int vertex, std::size_t facetA, std::size_t facetB)
{
    const int n = complex.dimension();
    if (vertex < 0 || vertex >= complex.vertex_count())
        throw Error(ErrorKind::InvalidArgument, "vertex out of range");
    const auto& star = complex.star(vertex);
    auto in_star = [&](std::size_t f) { return std::find(star.begin(), star.end(), f) != star.end(); };
    if (!in_star(facetA) || !in_star(facetB))
        throw Error(ErrorKind::NotInStar, "facet does not contain vertex " + std::to_string(vertex));
    if (facetA == facetB)
        return 1;

    std::map<std::size_t, int> sign{{facetA, 1}};
    std::deque<std::size_t> queue{facetA};
    while (!queue.empty()) {
        std::size_t f = queue.front();
        queue.pop_front();
        const Simplex& fs = complex.facets()[f];
        for (int j = 0; j <= n; ++j) {
            if (fs[j] == vertex)
                continue;
            std::size_t r = complex.face(n, f, j);
            const Simplex& rs = complex.simplex(n - 1, r);
            for (std::size_t o : complex.cofacets(r)) {
                if (o == f)
                    continue;
                int s = -sign[f] * incidence_sign(fs, rs) * incidence_sign(complex.facets()[o], rs);
                auto [it, fresh] = sign.emplace(o, s);
                if (fresh)
                    queue.push_back(o);
                else if (it->second != s)
                    throw Error(ErrorKind::NotClosedPseudomanifold,
                                "star of vertex " + std::to_string(vertex) + " is not orientable");
            }
        }
    }
    auto it = sign.find(facetB);
    if (it == sign.end())
        throw Error(ErrorKind::DisconnectedStar, "star of vertex " + std::to_string(vertex) + " is disconnected");
    return it->second;
}

Subcomplex Subcomplex::empty(ComplexPtr ambient)
{
    Subcomplex s;
    s.in_.resize(ambient->dimension() + 1);
    for (int k = 0; k <= ambient->dimension(); ++k)
        s.in_[k].assign(ambient->count(k), 0);
    s.ambient_ = std::move(ambient);
    return s;
}

Subcomplex Subcomplex::whole(ComplexPtr ambient)
{
    Subcomplex s = empty(std::move(ambient));
    for (auto& v : s.in_)
        std::fill(v.begin(), v.end(), 1);
    return s;
}

Subcomplex Subcomplex::closure(ComplexPtr ambient, const std::vector<Simplex>& simplices)
{
    Subcomplex s = empty(ambient);
    for (const auto& g : simplices) {
        const unsigned n = static_cast<unsigned>(g.size());
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            Simplex f;
            for (unsigned b = 0; b < n; ++b)
                if (mask & (1u << b))
                    f.push_back(g[b]);
            s.in_[f.size() - 1][ambient->index(f)] = 1;
        }
    }
    return s;
}

Subcomplex Subcomplex::full(ComplexPtr ambient, const std::vector<bool>& vertices)
{
    Subcomplex s = empty(ambient);
    for (int k = 0; k <= ambient->dimension(); ++k)
        for (std::size_t i = 0; i < ambient->count(k); ++i) {
            const auto& sx = ambient->simplex(k, i);
            s.in_[k][i] = std::all_of(sx.begin(), sx.end(), [&](int v) { return vertices[v]; });
        }
    return s;
}

bool Subcomplex::contains(const Simplex& s) const
{
    auto i = ambient_->find(s);
    return i && contains(static_cast<int>(s.size()) - 1, *i);
}

std::size_t Subcomplex::count(int k) const
{
    if (k < 0 || k >= static_cast<int>(in_.size()))
        return 0;
    return static_cast<std::size_t>(std::count(in_[k].begin(), in_[k].end(), 1));
}

bool Subcomplex::is_empty() const
{
    return in_.empty() || count(0) == 0;
}

std::vector<int> Subcomplex::vertices() const
{
    std::vector<int> out;
    for (std::size_t i = 0; i < in_[0].size(); ++i)
        if (in_[0][i])
            out.push_back(ambient_->simplex(0, i)[0]);
    return out;
}

Subcomplex Subcomplex::unite(const Subcomplex& other) const
{
    Subcomplex s = *this;
    for (std::size_t k = 0; k < in_.size(); ++k)
        for (std::size_t i = 0; i < in_[k].size(); ++i)
            s.in_[k][i] = in_[k][i] || other.in_[k][i];
    return s;
}

Subcomplex Subcomplex::intersect(const Subcomplex& other) const
{
    Subcomplex s = *this;
    for (std::size_t k = 0; k < in_.size(); ++k)
        for (std::size_t i = 0; i < in_[k].size(); ++i)
            s.in_[k][i] = in_[k][i] && other.in_[k][i];
    return s;
}

bool Subcomplex::subset_of(const Subcomplex& other) const
{
    for (std::size_t k = 0; k < in_.size(); ++k)
        for (std::size_t i = 0; i < in_[k].size(); ++i)
            if (in_[k][i] && !other.in_[k][i])
                return false;
    return true;
}

FullSubcomplex::FullSubcomplex(ComplexPtr ambient, const std::vector<int>& vertices)
    : ambient_(std::move(ambient)), flags_(ambient_->vertex_count())
{
    for (int v : vertices) {
        if (v < 0 || v >= ambient_->vertex_count())
            throw Error(ErrorKind::InvalidArgument, "vertex " + std::to_string(v) + " out of range");
        flags_[v] = true;
    }
}

FullSubcomplex FullSubcomplex::all(ComplexPtr ambient)
{
    FullSubcomplex k(std::move(ambient), {});
    std::fill(k.flags_.begin(), k.flags_.end(), true);
    return k;
}

FullSubcomplex FullSubcomplex::none(ComplexPtr ambient)
{
    return FullSubcomplex(std::move(ambient), {});
}

std::vector<int> FullSubcomplex::vertices() const
{
    std::vector<int> out;
    for (std::size_t v = 0; v < flags_.size(); ++v)
        if (flags_[v])
            out.push_back(static_cast<int>(v));
    return out;
}

bool FullSubcomplex::contains(const Simplex& s) const
{
    return std::all_of(s.begin(), s.end(), [&](int v) { return flags_[v]; });
}

bool FullSubcomplex::subset_of(const FullSubcomplex& other) const
{
    for (std::size_t v = 0; v < flags_.size(); ++v)
        if (flags_[v] && !other.flags_[v])
            return false;
    return true;
}

FullSubcomplex FullSubcomplex::complement() const
{
    FullSubcomplex c = *this;
    c.flags_.flip();
    return c;
}

} // namespace tdual
