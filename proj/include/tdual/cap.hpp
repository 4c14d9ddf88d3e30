#pragma once

#include "tdual/chains.hpp"
#include "tdual/fundamental.hpp"
#include "tdual/report.hpp"

#include <optional>
#include <vector>

namespace tdual {

/// The face of s on the given vertex positions, in s's order. Positions must
/// be strictly increasing within 0..dim(s); throws BadIndices otherwise.
Simplex face_restriction(const Simplex& s, const std::vector<int>& positions);

/// Matrix of c |-> c ^ a, from C^k(G) to C_{q-k}(G (x) H), for a fixed
/// chain a in C_q(H) (absolute coordinates). For s = [v0..vq] and p = q - k:
///   c ^ (h s) = (T[v0<-v1] ... T[v_{p-1}<-v_p] c(s[p..q])) (x) h  on s[0..p].
/// Throws DegreeMismatch, BaseMismatch, RingMismatch.
ExactMatrix cap_matrix(const LocalSystem& g, int k, const LocalSystem& h, const ExactMatrix& a, int q);

/// c ^ a as a chain of C_{q-k}(G (x) H).
ExactMatrix cap_chain(const LocalSystem& g, const ExactMatrix& c, int k, const LocalSystem& h, const ExactMatrix& a, int q);

struct IdentityCheck {
    bool holds = false;
    ExactMatrix difference; // d(c ^ a) - c ^ da + (dc) ^ a
};

/// Compares d(c ^ a) with c ^ (da) - (dc) ^ a, with the coboundary anchored at q.
IdentityCheck boundary_identity_check(const LocalSystem& g, const ExactMatrix& c, int k, const LocalSystem& h,
                                      const ExactMatrix& a, int q);

/// c ^ a for a cochain c of C^k(M; G) vanishing on complement(K) (absolute
/// coordinates) and a relative n-cycle a of C_n(M|K; H) (pair coordinates).
/// The result is an absolute (n-k)-cycle of C(M; G (x) H) whose class does not
/// depend on the representatives. Throws NotRelativeCocycle, NotACycle.
ExactMatrix relative_cap(const LocalSystem& g, const ExactMatrix& c, int k, const FullSubcomplex& kset,
                         const LocalSystem& h, const ExactMatrix& a);

struct DualityRow {
    int degree = 0;
    FPModule left;  // H^k(M; G)
    FPModule right; // H_{n-k}(M; G (x) M_R)
    ModuleMap map;
    IsoCertificate certificate;
    std::string certificate_hash;

    bool is_isomorphism() const { return certificate.is_isomorphism(); }
};

struct DualityReport {
    std::string complex_digest;
    std::string system_digest;
    std::string ring;
    std::vector<DualityRow> rows;

    bool all_isomorphisms() const;
    Table table() const;
};

/// Caps cocycle representatives of H^k(M; G) with the fundamental class and
/// certifies the induced maps. Throws NotClosedPseudomanifold, FlatnessViolation.
DualityReport verify_duality(const LocalSystem& g);

} // namespace tdual
