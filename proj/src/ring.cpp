#include "tdual/ring.hpp"

#include "tdual/error.hpp"

#include <cctype>
#include <charconv>

namespace tdual {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::CompositionNonzero: return "CompositionNonzero";
    case ErrorKind::NotChainMap: return "NotChainMap";
    case ErrorKind::NotInStar: return "NotInStar";
    case ErrorKind::DisconnectedStar: return "DisconnectedStar";
    case ErrorKind::NotClosedPseudomanifold: return "NotClosedPseudomanifold";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::FlatnessViolation: return "FlatnessViolation";
    case ErrorKind::NotSignSystem: return "NotSignSystem";
    case ErrorKind::IncoherentCover: return "IncoherentCover";
    case ErrorKind::TwoIsZero: return "TwoIsZero";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::BadIndices: return "BadIndices";
    case ErrorKind::NotRelativeCocycle: return "NotRelativeCocycle";
    case ErrorKind::NotACover: return "NotACover";
    case ErrorKind::NotACycle: return "NotACycle";
    }
    return "Unknown";
}

RingSpec RingSpec::modular(unsigned long m)
{
    if (m < 2)
        throw Error(ErrorKind::InvalidArgument, "modulus must be >= 2");
    return RingSpec(RingKind::Modular, m);
}

RingSpec RingSpec::parse(std::string_view text)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
            s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text == "Z")
        return integers();
    if (text == "Q")
        return rationals();
    std::string_view rest;
    if (text.starts_with("Zmod"))
        rest = trim(text.substr(4));
    else if (text.starts_with("Z/"))
        rest = trim(text.substr(2));
    else
        throw Error(ErrorKind::ParseError, "unknown ring '" + std::string(text) + "'");
    unsigned long m = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), m);
    if (ec != std::errc() || ptr != rest.data() + rest.size() || rest.empty())
        throw Error(ErrorKind::ParseError, "bad modulus in ring '" + std::string(text) + "'");
    return modular(m);
}

Rational RingSpec::normalize(const Rational& value) const
{
    switch (kind_) {
    case RingKind::Rationals: {
        Rational r = value;
        r.canonicalize();
        return r;
    }
    case RingKind::Integers:
        if (value.get_den() != 1)
            throw Error(ErrorKind::InvalidArgument, "non-integral value " + tdual::to_string(value) + " over Z");
        return value;
    case RingKind::Modular: {
        Integer m = modulus_;
        Integer num = value.get_num();
        Integer den = value.get_den();
        if (den != 1) {
            Integer inv;
            if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
                throw Error(ErrorKind::InvalidArgument,
                            "denominator of " + tdual::to_string(value) + " is not a unit mod " + m.get_str());
            num *= inv;
        }
        Integer r;
        mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), m.get_mpz_t());
        return Rational(r);
    }
    }
    return value;
}

bool RingSpec::is_unit(const Rational& value) const
{
    switch (kind_) {
    case RingKind::Rationals: return sgn(value) != 0;
    case RingKind::Integers: return value == 1 || value == -1;
    case RingKind::Modular: {
        Integer g;
        Integer v = to_integer(normalize(value));
        Integer m = modulus_;
        mpz_gcd(g.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
        return g == 1;
    }
    }
    return false;
}

Rational RingSpec::inverse(const Rational& value) const
{
    if (!is_unit(value))
        throw Error(ErrorKind::InvalidArgument, tdual::to_string(value) + " is not a unit in " + name());
    switch (kind_) {
    case RingKind::Rationals: return 1 / value;
    case RingKind::Integers: return value;
    case RingKind::Modular: {
        Integer inv;
        Integer v = to_integer(normalize(value));
        Integer m = modulus_;
        mpz_invert(inv.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
        return Rational(inv);
    }
    }
    return value;
}

std::string RingSpec::name() const
{
    switch (kind_) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::Modular: return "Zmod " + std::to_string(modulus_);
    }
    return "?";
}

std::string RingSpec::short_name() const
{
    if (is_modular())
        return "Z/" + std::to_string(modulus_);
    return name();
}

Integer to_integer(const Rational& value)
{
    if (value.get_den() != 1)
        throw Error(ErrorKind::InvalidArgument, "expected an integer, got " + to_string(value));
    return value.get_num();
}

std::string to_string(const Rational& value)
{
    return value.get_str();
}

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty())
        throw Error(ErrorKind::ParseError, "empty number");
    auto slash = s.find('/');
    auto valid_int = [](std::string_view t) {
        if (t.empty())
            return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size())
            return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i])))
                return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+')
        num.erase(0, 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw Error(ErrorKind::ParseError, "bad number '" + s + "'");
    Integer d(den);
    if (d == 0)
        throw Error(ErrorKind::ParseError, "zero denominator in '" + s + "'");
    Rational r(Integer(num), d);
    r.canonicalize();
    return r;
}

} // namespace tdual
