#pragma once

#include "tdual/chains.hpp"
#include "tdual/report.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tdual {

/// (X, Y) = (A u B, C u D) with C inside A and D inside B, all subcomplexes of
/// one base complex. C and D are empty for absolute sequences.
struct CoverPair {
    Subcomplex a, b, c, d;

    static CoverPair absolute(const Subcomplex& a, const Subcomplex& b);
    static CoverPair relative(const Subcomplex& a, const Subcomplex& b, const Subcomplex& c, const Subcomplex& d);

    const ComplexPtr& complex() const { return a.ambient(); }
    Subcomplex x() const { return a.unite(b); }
    Subcomplex y() const { return c.unite(d); }
};

/// Throws NotACover when the pieces live on different complexes or C, D are
/// not inside A, B.
void validate_pair(const CoverPair& pair);

struct SequenceNode {
    std::string label;
    FPModule module;
    bool exact = false;
};

/// A long exact sequence as a path of modules; maps[i] goes from nodes[i] to
/// nodes[i + 1]. The sequence is extended by zero at both ends when judging
/// exactness.
struct ExactSequenceReport {
    std::string kind;
    std::vector<SequenceNode> nodes;
    std::vector<ModuleMap> maps;

    bool all_exact() const;
    /// Node with the given label; throws InvalidArgument if absent.
    const SequenceNode& node(const std::string& label) const;
    Table table() const;
};

/// ... -> H_k(A&B) -> H_k(A)+H_k(B) -> H_k(X) -> H_{k-1}(A&B) -> ...
/// (relative to C&D, C, D, Y), from degree top down to 0, with x |-> (x, -x),
/// (a, b) |-> a + b and the connecting map [z] |-> [d(z restricted to A)]
/// (read off d of the rest of z on simplices of C).
/// A nonzero seed replaces every node by a resampled presentation.
ExactSequenceReport mv_homology(const CoverPair& pair, const LocalSystem& g, std::uint64_t seed = 0);

/// ... -> H^k(X) -> H^k(A)+H^k(B) -> H^k(A&B) -> H^{k+1}(X) -> ...
/// with c |-> (c|A, c|B), (b, g) |-> b|A&B - g|A&B and the connecting map
/// obtained by splitting, coboundary and lifting.
ExactSequenceReport mv_cohomology(const CoverPair& pair, const LocalSystem& g, std::uint64_t seed = 0);

struct CochainSplitting {
    ExactMatrix beta;  // C^k(A, C)
    ExactMatrix gamma; // C^k(B, D)
    bool holds = false; // beta|A&B - gamma|A&B == alpha
};

/// beta = alpha on simplices of A&B outside C, else 0; gamma = -alpha on
/// simplices inside C, else 0. alpha is given in C^k(A&B, C&D) coordinates.
CochainSplitting mv_splitting(const CoverPair& pair, const LocalSystem& g, int k, const ExactMatrix& alpha);

struct BlockVerdict {
    int degree = 0;        // k, the cohomological degree of the top-left corner
    std::string block;     // "left", "right" or "connecting"
    int sign = 0;          // +1 or -1; 0 when both fit (the composites vanish or are 2-torsion); 2 when none fits
};

struct Diagram6Report {
    std::vector<BlockVerdict> blocks;

    /// All left and right squares commute on the nose (sign +1 or 0).
    bool middle_blocks_commute() const;
    /// The common sign of the connecting blocks that single one out; 0 when
    /// none does, 2 when signs disagree or some block fits neither sign.
    int connecting_sign() const;
    Table table() const;
};

/// Compares the cohomology sequence of (M|K&L, M|K + M|L, M|K u L) with the
/// homology sequence of (U&V, U + V, M) in G (x) M_R through caps with the
/// restrictions of the fundamental class, using -nu on the V column.
/// U, V must cover M and every simplex meeting K (resp. L) must lie in U
/// (resp. V); throws NotACover otherwise.
Diagram6Report diagram6_check(const LocalSystem& g, const Subcomplex& u, const Subcomplex& v, const FullSubcomplex& k,
                              const FullSubcomplex& l, std::uint64_t seed = 0);

/// Two-set covers of small surfaces together with vertex sets K, L whose
/// stars lie in U, V.
struct MVFixture {
    std::string name;
    ComplexPtr complex;
    Subcomplex u, v;
    FullSubcomplex k, l;
};

/// octahedron (widened hemispheres), torus (7-vertex torus, two bands),
/// sphere-grid (capped 6x3 cylinder), torus-grid and klein-grid (6x3 grids
/// split into two cylinders). On the grids K u L = M and K & L is a union of
/// core circles, so the connecting maps of both rows can be nonzero.
MVFixture mv_fixture(std::string_view name);
const std::vector<std::string>& mv_fixture_names();

} // namespace tdual
