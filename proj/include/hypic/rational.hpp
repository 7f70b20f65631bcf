#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "hypic/error.hpp"

namespace hypic {

/// Arbitrary-precision rational, always kept canonical (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Canonical n/d.
inline Rational ratio(long n, long d) {
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Parses "p/q" or "p" with optional sign and no whitespace.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] {
        throw Error(ErrorCode::MalformedInput, "bad rational literal '" + std::string(text) + "'");
    };
    if (text.empty()) fail();
    auto valid_int = [](std::string_view s, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    auto slash = text.find('/');
    std::string num(text.substr(0, slash));
    std::string den = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
    if (!valid_int(num, true) || !valid_int(den, false)) fail();
    if (num[0] == '+') num.erase(0, 1);
    Integer d(den);
    if (d == 0) fail();
    Rational q(Integer(num), d);
    q.canonicalize();
    return q;
}

inline std::string format_rational(const Rational& q) {
    if (is_integer(q)) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Integer lcm_of_denominators(const std::vector<Rational>& values) {
    Integer result = 1;
    for (const auto& v : values) mpz_lcm(result.get_mpz_t(), result.get_mpz_t(), v.get_den().get_mpz_t());
    return result;
}

inline Rational frac_part(const Rational& q) {
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return q - Rational(fl);
}

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace hypic
