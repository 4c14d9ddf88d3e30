#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tdual {

/// Vertices in strictly ascending order.
using Simplex = std::vector<int>;

/// Finite abstract simplicial complex on vertices 0..n-1. All faces are
/// stored per dimension in lexicographic order; indices refer to that order.
class SimplicialComplex {
public:
    SimplicialComplex() = default;
    /// Closure of the given simplices. Each must be strictly ascending with
    /// vertices in [0, vertex_count), and every vertex must be used.
    SimplicialComplex(int vertex_count, const std::vector<Simplex>& simplices);

    static SimplicialComplex parse(std::string_view text);
    static SimplicialComplex load(const std::string& path);

    int vertex_count() const noexcept { return vertex_count_; }
    int dimension() const noexcept { return static_cast<int>(simplices_.size()) - 1; }
    std::size_t count(int k) const;
    const std::vector<Simplex>& simplices(int k) const;
    const Simplex& simplex(int k, std::size_t i) const { return simplices_[k][i]; }
    /// Top-dimensional simplices.
    const std::vector<Simplex>& facets() const { return simplices_.back(); }
    const std::vector<Simplex>& maximal_simplices() const noexcept { return maximal_; }

    std::optional<std::size_t> find(const Simplex& s) const;
    /// Throws InvalidArgument for simplices not in the complex.
    std::size_t index(const Simplex& s) const;
    /// Index (in dimension k-1) of the face of simplex (k, i) omitting position j.
    std::size_t face(int k, std::size_t i, int j) const { return faces_[k][i][j]; }
    std::size_t edge_index(int u, int v) const;
    /// Top-dimensional simplices containing v.
    const std::vector<std::size_t>& star(int v) const { return star_[v]; }
    /// Top-dimensional simplices containing the ridge with the given index.
    const std::vector<std::size_t>& cofacets(std::size_t ridge) const { return cofacets_[ridge]; }

    long euler_characteristic() const;
    /// The complex file format.
    std::string to_text() const;
    /// 64-bit FNV-1a of to_text(), hex.
    std::string digest() const;

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b)
    {
        return a.vertex_count_ == b.vertex_count_ && a.maximal_ == b.maximal_;
    }

private:
    int vertex_count_ = 0;
    std::vector<Simplex> maximal_;
    std::vector<std::vector<Simplex>> simplices_;
    std::vector<std::map<Simplex, std::size_t>> index_;
    std::vector<std::vector<std::vector<std::size_t>>> faces_;
    std::vector<std::vector<std::size_t>> star_;
    std::vector<std::vector<std::size_t>> cofacets_;
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

inline ComplexPtr share(SimplicialComplex c)
{
    return std::make_shared<const SimplicialComplex>(std::move(c));
}

struct ManifoldReport {
    int dimension = -1;
    bool is_pure = false;
    bool each_ridge_in_two_facets = false;
    bool dual_graph_connected = false;
    bool links_validated = false;
    long euler_characteristic = 0;

    bool closed_pseudomanifold() const { return is_pure && each_ridge_in_two_facets && dual_graph_connected; }
    bool passes() const { return closed_pseudomanifold() && links_validated; }
};

ManifoldReport validate(const SimplicialComplex& complex);

struct DualGraph {
    struct Edge {
        std::size_t a, b;  // facet indices
        std::size_t ridge; // ridge index
    };
    std::vector<Edge> edges;
    std::vector<std::vector<std::size_t>> incident; // edge ids per facet
};

DualGraph dual_graph(const SimplicialComplex& complex);

/// (-1)^position of the vertex of `facet` missing from `ridge`.
int incidence_sign(const Simplex& facet, const Simplex& ridge);

/// Sign comparing the orientations of two facets in the star of a vertex,
/// transported across shared ridges through the vertex. +1 when facetA is
/// facetB. Throws NotInStar, DisconnectedStar.
int star_component_walk(const SimplicialComplex& complex, int vertex, std::size_t facetA, std::size_t facetB);

/// Link of a vertex, relabeled to consecutive vertices.
SimplicialComplex link(const SimplicialComplex& complex, int vertex);

/// Arbitrary subcomplex, as membership flags per dimension.
class Subcomplex {
public:
    Subcomplex() = default;
    static Subcomplex empty(ComplexPtr ambient);
    static Subcomplex whole(ComplexPtr ambient);
    /// All faces of the given simplices.
    static Subcomplex closure(ComplexPtr ambient, const std::vector<Simplex>& simplices);
    /// Simplices all of whose vertices are flagged.
    static Subcomplex full(ComplexPtr ambient, const std::vector<bool>& vertices);

    const ComplexPtr& ambient() const noexcept { return ambient_; }
    bool contains(int k, std::size_t i) const { return k < static_cast<int>(in_.size()) && in_[k][i]; }
    bool contains(const Simplex& s) const;
    std::size_t count(int k) const;
    bool is_empty() const;
    std::vector<int> vertices() const;

    Subcomplex unite(const Subcomplex& other) const;
    Subcomplex intersect(const Subcomplex& other) const;
    bool subset_of(const Subcomplex& other) const;

    friend bool operator==(const Subcomplex& a, const Subcomplex& b) { return a.in_ == b.in_; }

private:
    ComplexPtr ambient_;
    std::vector<std::vector<char>> in_;
};

/// Full subcomplex spanned by a vertex subset.
class FullSubcomplex {
public:
    FullSubcomplex() = default;
    FullSubcomplex(ComplexPtr ambient, const std::vector<int>& vertices);
    static FullSubcomplex all(ComplexPtr ambient);
    static FullSubcomplex none(ComplexPtr ambient);

    const ComplexPtr& ambient() const noexcept { return ambient_; }
    const std::vector<bool>& vertex_flags() const noexcept { return flags_; }
    std::vector<int> vertices() const;
    bool contains_vertex(int v) const { return flags_[v]; }
    bool contains(const Simplex& s) const;
    bool subset_of(const FullSubcomplex& other) const;

    FullSubcomplex complement() const;
    Subcomplex as_subcomplex() const { return Subcomplex::full(ambient_, flags_); }

    friend bool operator==(const FullSubcomplex& a, const FullSubcomplex& b) { return a.flags_ == b.flags_; }

private:
    ComplexPtr ambient_;
    std::vector<bool> flags_;
};

/// Built-in triangulations: circle, sphere2, torus, rp2, klein, rp3, sphere3.
SimplicialComplex corpus(std::string_view name);
const std::vector<std::string>& corpus_names();

} // namespace tdual
