#pragma once

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace asnp {

/// Compare only against Rational operands: under C++20 the mixed
/// `Rational == int` overloads of Boost 1.74 rewrite into each other and recurse.
using Rational = boost::rational<std::int64_t>;

/// "p/q", or "p" when q == 1.
std::string to_string(const Rational& r);

/// Parses "p/q" or "p". Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Smallest integer >= r.
std::int64_t ceil(const Rational& r);

inline std::string to_string(const Rational& r)
{
    if (r.denominator() == 1)
        return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline std::int64_t ceil(const Rational& r)
{
    const std::int64_t n = r.numerator();
    const std::int64_t d = r.denominator();
    return n >= 0 ? (n + d - 1) / d : -((-n) / d);
}

inline Rational parse_rational(std::string_view text)
{
    auto parse_int = [&](std::string_view part) {
        std::int64_t value = 0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc() || ptr != part.data() + part.size() || part.empty())
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        return value;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_int(text));
    const std::int64_t den = parse_int(text.substr(slash + 1));
    if (den == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_int(text.substr(0, slash)), den);
}

} // namespace asnp
