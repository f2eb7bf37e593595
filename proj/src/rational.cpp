#include "tricone/rational.hpp"

#include <cctype>

namespace tricone {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    if (s.empty()) throw std::invalid_argument("Rational: empty integer in '" + std::string(whole) + "'");
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') { neg = s[0] == '-'; i = 1; }
    if (i == s.size()) throw std::invalid_argument("Rational: bad integer in '" + std::string(whole) + "'");
    __int128 v = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw std::invalid_argument("Rational: bad character in '" + std::string(whole) + "'");
        v = v * 10 + (s[i] - '0');
        if (v > static_cast<__int128>(INT64_MAX))
            throw std::overflow_error("Rational: literal too large: '" + std::string(whole) + "'");
    }
    return neg ? -static_cast<std::int64_t>(v) : static_cast<std::int64_t>(v);
}

} // namespace

Rational Rational::parse(std::string_view s) {
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::int64_t n = parse_int(s.substr(0, slash), s);
        std::int64_t d = parse_int(s.substr(slash + 1), s);
        return Rational(n, d);
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot);
        std::string_view fp = s.substr(dot + 1);
        if (fp.empty()) return Rational(parse_int(ip, s));
        bool neg = !ip.empty() && ip[0] == '-';
        std::int64_t whole = ip.empty() || ip == "-" || ip == "+" ? 0 : parse_int(ip, s);
        __int128 den = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(fp[i])))
                throw std::invalid_argument("Rational: bad decimal '" + std::string(s) + "'");
            den *= 10;
            if (den > static_cast<__int128>(INT64_MAX))
                throw std::overflow_error("Rational: too many decimal digits in '" + std::string(s) + "'");
        }
        std::int64_t frac = parse_int(fp, s);
        Rational f(frac, static_cast<std::int64_t>(den));
        Rational w(whole);
        return neg ? w - f : w + f;
    }
    return Rational(parse_int(s, s));
}

} // namespace tricone
