#ifndef UNIVEXT_RATIONAL_HPP
#define UNIVEXT_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace univext {

/// Exact rational scalar. GMP keeps every value in lowest terms with a
/// positive denominator, so equality is representational.
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

inline bool is_zero(const Rat& x) { return x.is_zero(); }

inline BigInt numerator_of(const Rat& x) { return boost::multiprecision::numerator(x); }
inline BigInt denominator_of(const Rat& x) { return boost::multiprecision::denominator(x); }

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input
/// or a zero denominator.
inline Rat parse_rat(std::string_view text)
{
    std::string s(text);
    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (start == t.size()) return false;
        for (std::size_t i = start; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den))
        throw std::invalid_argument("malformed rational: '" + s + "'");
    if (num[0] == '+') num.erase(0, 1);
    if (den[0] == '+') den.erase(0, 1);
    BigInt n(num), d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    return Rat(n, d);
}

/// "p/q", or "p" when the denominator is 1.
inline std::string format_rat(const Rat& x)
{
    BigInt d = denominator_of(x);
    if (d == 1) return numerator_of(x).str();
    return numerator_of(x).str() + "/" + d.str();
}

} // namespace univext

#endif
