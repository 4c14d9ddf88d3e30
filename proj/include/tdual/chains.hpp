#pragma once

#include "tdual/complex.hpp"
#include "tdual/local_system.hpp"
#include "tdual/module.hpp"

#include <optional>
#include <vector>

namespace tdual {

/// Twisted chains and cochains of a pair (P, Q) of subcomplexes with
/// coefficients in a local system. The degree-k module has one block of size
/// rank per k-simplex of P not in Q, holding a fiber element at the simplex's
/// lowest vertex.
///
/// Boundary of g*s, s = [v0..vk]: the face without v_i (i >= 1) gets
/// (-1)^i g, the face without v0 gets T[v1<-v0] g.
/// Coboundary in degree k: (-1)^(N-k-1) times
///   (dc)(t) = T[w0<-w1] c(t without w0) + sum_{j>=1} (-1)^j c(t without wj),
/// where N is the anchor degree; with N = deg(a) this makes
///   d(c ^ a) = c ^ da - (dc) ^ a
/// hold for the cap product.
class TwistedComplex {
public:
    TwistedComplex() = default;
    /// anchor < 0 selects the dimension of the base complex.
    TwistedComplex(LocalSystem system, Subcomplex space, Subcomplex subspace, int anchor = -1);

    static TwistedComplex absolute(const LocalSystem& system, int anchor = -1);
    /// The pair (M, complement(K)), written C(M|K).
    static TwistedComplex relative(const LocalSystem& system, const FullSubcomplex& k, int anchor = -1);

    const LocalSystem& system() const noexcept { return system_; }
    const RingSpec& ring() const noexcept { return system_.ring(); }
    const SimplicialComplex& base() const { return *system_.base(); }
    std::size_t rank() const noexcept { return system_.rank(); }
    int top_dimension() const { return base().dimension(); }
    int anchor() const noexcept { return anchor_; }
    const Subcomplex& space() const noexcept { return space_; }
    const Subcomplex& subspace() const noexcept { return subspace_; }

    /// Rank of the degree-k module (0 outside [0, top]).
    std::size_t dimension(int k) const;
    /// Base simplex indices of degree k, in basis order.
    const std::vector<std::size_t>& simplices(int k) const;
    /// Basis block of a base simplex, if it belongs to the pair.
    std::optional<std::size_t> position(int k, std::size_t simplex) const;

    /// C_k -> C_{k-1}, for 0 <= k <= top + 1.
    const ExactMatrix& boundary(int k) const;
    /// C^k -> C^{k+1}, for -1 <= k <= top.
    const ExactMatrix& coboundary(int k) const;

    FPModule homology(int k) const;
    FPModule cohomology(int k) const;

    /// Pair coordinates -> coordinates on all k-simplices of the base (zero off the pair).
    ExactMatrix to_ambient(int k, const ExactMatrix& v) const;
    /// Coordinates on all k-simplices -> pair coordinates (restriction).
    ExactMatrix from_ambient(int k, const ExactMatrix& v) const;
    /// Identity on simplices shared with another pair over the same base, zero
    /// elsewhere: other.dimension(k) x dimension(k). Realizes inclusions of
    /// chains and restrictions of cochains alike.
    ExactMatrix transfer_to(const TwistedComplex& other, int k) const;

    bool boundary_squares_to_zero() const;
    bool coboundary_squares_to_zero() const;

private:
    void assemble();

    LocalSystem system_;
    Subcomplex space_, subspace_;
    int anchor_ = 0;
    std::vector<std::vector<std::size_t>> simplices_;
    std::vector<std::vector<std::optional<std::size_t>>> position_;
    std::vector<ExactMatrix> boundary_;   // index k
    std::vector<ExactMatrix> coboundary_; // index k + 1
};

/// Absolute complexes, after checking flatness (FlatnessViolation) and that
/// the differentials square to zero.
TwistedComplex chain_complex(const LocalSystem& system);
TwistedComplex cochain_complex(const LocalSystem& system, int anchor = -1);

FPModule homology(const LocalSystem& system, int k);
FPModule cohomology(const LocalSystem& system, int k);
FPModule relative_homology(const LocalSystem& system, const FullSubcomplex& k_set, int k);
FPModule relative_cohomology(const LocalSystem& system, const FullSubcomplex& k_set, int k);

} // namespace tdual
