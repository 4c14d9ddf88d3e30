#pragma once

#include "tdual/chains.hpp"

#include <vector>

namespace tdual {

/// Double cover of a complex determined by a sign system w. Cover vertex 2v+s
/// is sheet s over v; a base simplex [v0..vk] lifts to sheet s0 at v0 and
/// sheet s0 xor [w(v0, vi) = -1] at vi. Lifting preserves vertex order.
struct DoubleCover {
    ComplexPtr base;
    ComplexPtr total;
    LocalSystem omega;
    bool orientation_cover = false;

    static int vertex(int v, int sheet) { return 2 * v + sheet; }
    static int below(int w) { return w / 2; }
    static int sheet(int w) { return w % 2; }
    static int deck(int w) { return w ^ 1; }

    Simplex lift(const Simplex& s, int sheet_at_lowest) const;
    static Simplex project(const Simplex& s);
    static Simplex deck(const Simplex& s);

    /// Preimage of a full subcomplex of the base.
    FullSubcomplex preimage(const FullSubcomplex& k) const;
    bool connected() const;
};

/// Throws NotSignSystem, FlatnessViolation.
DoubleCover build_double_cover(const LocalSystem& omega);
/// The cover of local orientations.
DoubleCover orientation_double_cover(ComplexPtr base);

/// Throws NotACover if projection, lifting or the deck action misbehave.
void verify_cover(const DoubleCover& cover);

/// Signs on the cover's facets forming an orientation. Each component is seeded
/// at its lowest facet: +1, or for the orientation cover (-1)^s o_v0(p(f)) where
/// s is the sheet of the facet's lowest vertex. Throws IncoherentCover.
std::vector<int> orient_cover(const DoubleCover& cover);

/// Top chain sum of sign * facet on the cover.
ExactMatrix cover_fundamental_cycle(const DoubleCover& cover, const RingSpec& ring);

/// Deck transformation on cover chains of degree k (absolute).
ExactMatrix deck_action(const DoubleCover& cover, const RingSpec& ring, int k);

/// Invariant / anti-invariant decomposition of C(M~|K~; R) for a cover with
/// sign system w:
///   plus  = C(M|K; R) with basis sigma <-> rep + tau rep,
///   minus = C(M|K; R_w) with basis f_sigma = rep - tau rep,
/// where rep is the lift with sheet 0 at the lowest vertex. Per degree k:
///   sigma_map: cover -> plus, lift |-> projection (the pushforward),
///   delta_map: cover -> minus, rep |-> f, tau rep |-> -f,
///   incl_plus, incl_minus the basis embeddings,
///   minus_boundary = (rep coordinate) o boundary o incl_minus,
///   phi: f_sigma |-> +1 sigma, the identification of the anti-invariant part.
/// Sequences 0 -> C- -> C -> C+ -> 0 (via sigma_map) and
/// 0 -> C+ -> C -> C- -> 0 (via delta_map).
struct CoverSplitting {
    TwistedComplex total;
    TwistedComplex plus;
    TwistedComplex minus;
    std::vector<ExactMatrix> sigma_map, delta_map, incl_plus, incl_minus, rep_coordinate, phi;
    std::vector<ExactMatrix> minus_boundary; // index k, maps degree k -> k - 1

    int top_dimension() const { return plus.top_dimension(); }
};

/// Throws TwoIsZero when 2 = 0 in the ring.
CoverSplitting split_maps(const DoubleCover& cover, const RingSpec& ring, const FullSubcomplex& k);

/// phi is square, invertible and intertwines minus_boundary with the
/// boundary of C(M|K; R_w) in every degree.
bool phi_identify(const CoverSplitting& s);

/// Both short sequences are exact at every node in every degree.
bool short_sequences_exact(const CoverSplitting& s);

/// p_* : H_k(M~|K~; R) -> H_k(M|K; R).
ModuleMap pushforward(const DoubleCover& cover, const RingSpec& ring, const FullSubcomplex& k, int degree);

/// tau_# z = -z for the oriented orientation cover.
bool lemma1_check(const DoubleCover& cover, const RingSpec& ring);

/// The pushforward of the cover's fundamental cycle, as a relative chain of C(M|K; R).
ExactMatrix pushforward_fundamental_cycle(const DoubleCover& cover, const RingSpec& ring, const FullSubcomplex& k);

/// The class of the pushforward in H_n(M|K; R) is zero.
bool lemma2_check(const DoubleCover& cover, const RingSpec& ring, const FullSubcomplex& k);

} // namespace tdual
