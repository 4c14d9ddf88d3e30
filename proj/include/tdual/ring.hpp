#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tdual {

using Integer = mpz_class;
using Rational = mpq_class;

enum class RingKind { Integers, Modular, Rationals };

/// Coefficient ring: Z, Z/m (m >= 2) or Q.
class RingSpec {
public:
    RingSpec() = default;

    static RingSpec integers() { return RingSpec(RingKind::Integers, 0); }
    static RingSpec modular(unsigned long m);
    static RingSpec rationals() { return RingSpec(RingKind::Rationals, 0); }

    /// Accepts "Z", "Q", "Zmod <m>", "Zmod<m>" and "Z/<m>".
    static RingSpec parse(std::string_view text);

    RingKind kind() const noexcept { return kind_; }
    unsigned long modulus() const noexcept { return modulus_; }
    bool is_integers() const noexcept { return kind_ == RingKind::Integers; }
    bool is_modular() const noexcept { return kind_ == RingKind::Modular; }
    bool is_rationals() const noexcept { return kind_ == RingKind::Rationals; }

    /// False exactly for Z/2 (the only modular ring in which 2 = 0).
    bool two_is_nonzero() const noexcept { return !(is_modular() && 2 % modulus_ == 0); }

    /// Canonical representative: reduced fraction for Q, [0, m) for Z/m.
    /// Throws InvalidArgument for non-integral values over Z, and for
    /// denominators that are not units mod m.
    Rational normalize(const Rational& value) const;
    bool is_unit(const Rational& value) const;
    Rational inverse(const Rational& value) const;

    /// "Z", "Q" or "Zmod m" (the local-system file spelling).
    std::string name() const;
    /// Compact label used in module strings: "Z", "Q", "Z/3".
    std::string short_name() const;

    friend bool operator==(const RingSpec&, const RingSpec&) = default;

private:
    RingSpec(RingKind kind, unsigned long m) : kind_(kind), modulus_(m) {}

    RingKind kind_ = RingKind::Integers;
    unsigned long modulus_ = 0;
};

/// Exact integer value of a rational with denominator 1.
Integer to_integer(const Rational& value);
std::string to_string(const Rational& value);
Rational parse_rational(std::string_view text);

} // namespace tdual
