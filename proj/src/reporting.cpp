#include "padicroots/reporting.hpp"

#include <cstdio>

namespace padicroots {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string format_rational(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace padicroots
