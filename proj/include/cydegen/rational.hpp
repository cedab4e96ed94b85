#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "cydegen/error.hpp"

namespace cydegen {

/// Arbitrary-precision exact rational. Always kept canonical.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// "p/q" form, denominator always written (structured output).
inline std::string to_fraction_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Human form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Accepts "p", "p/q", with optional sign. Throws InputError.
inline Rational parse_rational(std::string_view text) {
    auto first = text.find_first_not_of(" \t");
    auto last = text.find_last_not_of(" \t");
    std::string s = first == std::string_view::npos ? std::string() : std::string(text.substr(first, last - first + 1));
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
    if (slash == std::string::npos) {
        if (!valid_int(s)) throw InputError("not a rational number: '" + s + "'");
        return Rational(Integer(strip_plus(s)));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw InputError("not a rational number: '" + s + "'");
    Integer d(den);
    if (d == 0) throw InputError("zero denominator in '" + s + "'");
    Rational r(Integer(strip_plus(num)), d);
    r.canonicalize();
    return r;
}

inline Rational factorial(unsigned k) {
    Integer f = 1;
    for (unsigned i = 2; i <= k; ++i) f *= i;
    return Rational(f);
}

inline Rational sign_power(long n) { return (n % 2 == 0) ? Rational(1) : Rational(-1); }

}  // namespace cydegen
