#include "flab/complex_format.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "flab/errors.hpp"

namespace flab {

std::string format_real(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x,
                             std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string format_complex(Complex z) {
    std::string out = format_real(z.real());
    double im = z.imag();
    if (std::signbit(im)) {
        out += '-';
        out += format_real(-im);
    } else {
        out += '+';
        out += format_real(im);
    }
    out += 'i';
    return out;
}

namespace {

double parse_double_token(std::string_view s) {
    if (s == "+" || s.empty()) return 1.0;   // "+i", "i"
    if (s == "-") return -1.0;               // "-i"
    if (s.front() == '+') s.remove_prefix(1); // from_chars rejects leading '+'
    double value = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ConfigError("malformed number: '" + std::string(s) + "'");
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace

double parse_real(std::string_view raw) {
    std::string_view s = trim(raw);
    if (s.empty() || s == "+" || s == "-")
        throw ConfigError("malformed number: '" + std::string(raw) + "'");
    return parse_double_token(s);
}

Complex parse_complex(std::string_view raw) {
    std::string_view s = trim(raw);
    if (s.empty()) throw ConfigError("empty complex literal");

    if (s.back() == 'i' || s.back() == 'I') {
        s.remove_suffix(1);
        // Split at the sign that separates real and imaginary parts: the
        // last '+'/'-' not at position 0 and not part of an exponent.
        for (std::size_t k = s.size(); k-- > 1;) {
            char ch = s[k];
            if ((ch == '+' || ch == '-') &&
                s[k - 1] != 'e' && s[k - 1] != 'E') {
                return Complex(parse_double_token(s.substr(0, k)),
                               parse_double_token(s.substr(k)));
            }
        }
        return Complex(0.0, parse_double_token(s)); // pure imaginary
    }
    return Complex(parse_double_token(s), 0.0);
}

} // namespace flab
