#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace boost {

// Under C++20 rewritten comparisons, boost's free `Arg == rational` template
// and its reversed form call each other forever. Non-template exact matches
// win overload resolution and go straight to the member comparison.
inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) { return a.operator==(b); }
inline bool operator==(std::int64_t a, const rational<std::int64_t>& b) { return b.operator==(a); }
inline bool operator==(const rational<std::int64_t>& a, int b) { return a.operator==(std::int64_t{b}); }
inline bool operator==(int a, const rational<std::int64_t>& b) { return b.operator==(std::int64_t{a}); }

}  // namespace boost

namespace dynlab {

/// Exact distances and thresholds. All comparisons in the library are exact.
using Rational = boost::rational<std::int64_t>;

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& value);

inline Rational half(const Rational& value) { return value / 2; }

inline std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return a == 0 ? b : a;
    return a / std::gcd(a, b) * b;
}

}  // namespace dynlab
