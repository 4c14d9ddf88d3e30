#pragma once

#include "tdual/complex.hpp"
#include "tdual/exact_matrix.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace tdual {

/// Flat system of free modules R^rank over the vertices of a complex. For an
/// edge u < v, T[u<-v] maps the fiber at v to the fiber at u; the reverse
/// direction uses its inverse.
class LocalSystem {
public:
    LocalSystem() = default;
    /// One matrix per edge, in edge-index order. Throws InvalidArgument for
    /// wrong shapes or non-invertible matrices.
    LocalSystem(ComplexPtr base, RingSpec ring, std::size_t rank, std::vector<ExactMatrix> transports);

    /// File format: "ring Z|Q|Zmod <m>", "rank <r>", then "edge u v" blocks of
    /// r rows with r entries each. Unlisted edges carry the identity.
    static LocalSystem parse(ComplexPtr base, std::string_view text);
    static LocalSystem load(ComplexPtr base, const std::string& path);

    const ComplexPtr& base() const noexcept { return base_; }
    const RingSpec& ring() const noexcept { return ring_; }
    std::size_t rank() const noexcept { return rank_; }

    /// Transport from the fiber at v to the fiber at u along the edge {u, v}.
    const ExactMatrix& transport(int u, int v) const;
    /// T[u<-v] for edge index e = {u < v}.
    const ExactMatrix& edge_transport(std::size_t e) const { return forward_[e]; }
    /// T[v<-u] for edge index e = {u < v}.
    const ExactMatrix& edge_inverse(std::size_t e) const { return backward_[e]; }

    /// T[v0<-v1] T[v1<-v2] ... T[vk<-v0] for the closed loop v0, v1, ..., vk.
    ExactMatrix holonomy(const std::vector<int>& loop) const;

    /// Copy with the transport along {u, v} replaced (given as T[u<-v]).
    LocalSystem with_transport(int u, int v, const ExactMatrix& t) const;

    /// Rank 1 with every transport equal to +1 or -1.
    bool is_sign_system() const;
    /// Sign of a rank-1 sign system along an edge.
    int sign(int u, int v) const;

    std::string to_text() const;
    std::string digest() const;

private:
    ComplexPtr base_;
    RingSpec ring_;
    std::size_t rank_ = 0;
    std::vector<ExactMatrix> forward_;
    std::vector<ExactMatrix> backward_;
};

struct FlatnessResult {
    bool flat = true;
    std::optional<Simplex> failing_triangle;
};

FlatnessResult validate_flatness(const LocalSystem& g);

LocalSystem constant_system(ComplexPtr base, const RingSpec& ring, std::size_t rank);

/// Lowest-index facet containing each vertex.
std::vector<std::size_t> reference_facets(const SimplicialComplex& complex);

/// Orientation of facet relative to the reference facet at the vertex.
int local_orientation(const SimplicialComplex& complex, int vertex, std::size_t facet);

/// Rank-1 system of local orientations. Throws NotClosedPseudomanifold.
LocalSystem orientation_system(ComplexPtr base, const RingSpec& ring);

/// Fiberwise tensor product; fiber index a * rank(h) + b. Throws
/// BaseMismatch, RingMismatch.
LocalSystem tensor(const LocalSystem& g, const LocalSystem& h);

/// Transports (T^-1)^T, the fiberwise dual.
LocalSystem dual_system(const LocalSystem& g);

/// T'[u<-v] = gauge[u]^-1 T[u<-v] gauge[v].
LocalSystem gauge_transform(const LocalSystem& g, const std::vector<ExactMatrix>& gauge);

struct Trivialization {
    bool trivializable = false;
    std::vector<ExactMatrix> gauge; // when trivializable: every gauged transport is the identity
    std::optional<Simplex> failing_edge;
};

/// Spanning-forest gauge fixing.
Trivialization is_trivializable(const LocalSystem& g);

/// Random invertible matrix over the ring (product of elementary matrices).
ExactMatrix random_invertible(const RingSpec& ring, std::size_t n, std::mt19937_64& rng);

/// Flat system of the given rank: a random gauge of P^a (-1)^b, where a, b
/// are random Z/2 1-cocycles and P swaps the first two fiber coordinates.
LocalSystem random_flat_system(ComplexPtr base, const RingSpec& ring, std::size_t rank, std::uint64_t seed);

} // namespace tdual
