#pragma once

#include "tdual/exact_matrix.hpp"
#include "tdual/lattice.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tdual {

/// Free rank plus torsion coefficients (each > 1, dividing the next).
/// Over Z/m, cyclic summands of order m count as free.
struct NormalForm {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;

    friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

/// A finitely presented module realized as a subquotient of R^n (n = ambient
/// dimension, e.g. a chain group), so that every class has representatives.
/// Generators are the cyclic summands of the Smith form of the presentation.
class FPModule {
public:
    FPModule() = default;

    /// R^n.
    static FPModule free(const RingSpec& ring, std::size_t n);
    /// R^rows / (column span of relations).
    static FPModule cokernel(const ExactMatrix& relations);

    const RingSpec& ring() const noexcept { return ring_; }
    std::size_t ambient_dimension() const;
    std::size_t generator_count() const;
    /// Order of each generator; 0 means infinite order (free over Z or Q).
    std::vector<Integer> orders() const;
    NormalForm normal_form() const;
    /// Diagonal relation matrix on the generators (columns are relations).
    ExactMatrix relations() const;
    /// ambient x generator_count matrix of representatives.
    ExactMatrix generators() const;

    /// Generator coordinates of the class of an ambient column vector, or
    /// nullopt when the vector is not in the numerator (not a cycle).
    std::optional<ExactMatrix> coordinates(const ExactMatrix& chain) const;
    bool contains(const ExactMatrix& chain) const;
    /// Throws InvalidArgument when the chain is not in the numerator.
    bool is_zero_class(const ExactMatrix& chain) const;
    bool same_class(const ExactMatrix& a, const ExactMatrix& b) const;
    /// Whether the class of chain generates a free summand of rank 1 alone,
    /// i.e. the module is R and the class corresponds to a unit.
    bool is_generator_of_rank_one(const ExactMatrix& chain) const;

    bool is_zero() const { return generator_count() == 0; }
    std::string to_string() const;

    /// Same module with every representative shifted by a pseudo-random
    /// element of the denominator.
    FPModule perturbed(std::uint64_t seed) const;

    /// Same normal form over the same ring.
    friend bool operator==(const FPModule& a, const FPModule& b);
    /// Identity of the underlying presentation (same object).
    bool same_presentation(const FPModule& other) const { return core_ == other.core_; }

    template <class T>
    const detail::Subquotient<T>& core() const
    {
        return *std::get<std::shared_ptr<const detail::Subquotient<T>>>(core_);
    }

    template <class T>
    static FPModule from_core(const RingSpec& ring, detail::Subquotient<T> q)
    {
        FPModule m;
        m.ring_ = ring;
        m.core_ = std::make_shared<const detail::Subquotient<T>>(std::move(q));
        return m;
    }

private:
    RingSpec ring_;
    std::variant<std::shared_ptr<const detail::Subquotient<Integer>>, std::shared_ptr<const detail::Subquotient<Rational>>>
        core_;
};

/// Homomorphism given by its matrix on generators (target x source), entries
/// reduced modulo the target orders.
class ModuleMap {
public:
    ModuleMap() = default;
    ModuleMap(FPModule source, FPModule target, ExactMatrix matrix, std::optional<ExactMatrix> witness = std::nullopt);

    static ModuleMap zero(const FPModule& source, const FPModule& target);
    static ModuleMap identity(const FPModule& m);
    /// images: target-ambient x source-generator matrix of representatives.
    static ModuleMap from_generator_images(const FPModule& source, const FPModule& target, const ExactMatrix& images);

    const FPModule& source() const noexcept { return source_; }
    const FPModule& target() const noexcept { return target_; }
    const ExactMatrix& matrix() const noexcept { return matrix_; }
    /// W with f * (source denominator) = (target denominator) * W, when known.
    const std::optional<ExactMatrix>& witness() const noexcept { return witness_; }

    /// Generator coordinates of the image of a class given in source coordinates.
    ExactMatrix apply(const ExactMatrix& coords) const;
    bool is_zero() const;
    ModuleMap negated() const;

    /// after o this
    ModuleMap then(const ModuleMap& after) const;

    friend bool operator==(const ModuleMap& a, const ModuleMap& b);

private:
    FPModule source_, target_;
    ExactMatrix matrix_;
    std::optional<ExactMatrix> witness_;
};

/// ker(d_out) / im(d_in). Throws CompositionNonzero when d_out * d_in != 0.
FPModule homology_presentation(const ExactMatrix& d_in, const ExactMatrix& d_out);

/// Map induced on subquotients by a linear map of ambient spaces. Throws
/// NotChainMap when it does not preserve numerators and denominators.
ModuleMap induced_map(const ExactMatrix& f, const FPModule& src, const FPModule& dst);

struct IsoCertificate {
    bool injective = false;
    bool surjective = false;
    std::optional<ModuleMap> inverse;
    std::optional<ExactMatrix> kernel_witness;   // source coordinates of a nonzero kernel element
    std::optional<ExactMatrix> cokernel_witness; // target coordinates of an element not in the image

    bool is_isomorphism() const { return injective && surjective; }
};

IsoCertificate is_isomorphism(const ModuleMap& f);

/// im(f) == ker(g) inside f.target() == g.source().
bool is_exact_at(const ModuleMap& f, const ModuleMap& g);

} // namespace tdual
