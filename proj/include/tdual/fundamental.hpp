#pragma once

#include "tdual/chains.hpp"

#include <optional>

namespace tdual {

/// Top chain nu(sigma) = o_v0(sigma) in C_n(M; w), with w a rank-1 system
/// over the ring; v0 is the lowest vertex of sigma.
ExactMatrix orientation_chain(const LocalSystem& w);

/// A ridge where the boundary of the chain is nonzero, if any.
std::optional<Simplex> boundary_witness(const LocalSystem& w, const ExactMatrix& chain);

struct FundamentalClass {
    LocalSystem system; // R_w, the orientation system over R
    ExactMatrix cycle;  // column over the facets
};

/// Throws NotACycle (with a witness ridge) if the orientation chain is not a
/// cycle for the given system; otherwise checks that the restriction to every
/// vertex generates H_n(M|x; w) and throws NotACycle if not.
FundamentalClass fundamental_class(const LocalSystem& w);

/// The class in H_n(M; R_w) built from local orientations.
FundamentalClass fundamental_class_direct(ComplexPtr m, const RingSpec& ring);

/// The same class read off the orientation cover: nu = sum z(rep lift) sigma.
/// Throws TwoIsZero, and NotACycle if the deck action does not negate z.
FundamentalClass fundamental_class_via_cover(ComplexPtr m, const RingSpec& ring);

/// The restriction of nu to C_n(M|K; w).
ExactMatrix restrict_to(const FundamentalClass& nu, const FullSubcomplex& k);

/// For K1 inside K2, the quotient C(M|K2) -> C(M|K1) carries nu_K2 to the
/// class of nu_K1 in H_n(M|K1; w).
bool inclusion_restriction(const FundamentalClass& nu, const FullSubcomplex& k1, const FullSubcomplex& k2);

/// nu restricted to each vertex star generates H_n(M|x; w) (rank one over R).
bool is_locally_generating(const FundamentalClass& nu);

} // namespace tdual
