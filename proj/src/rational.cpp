#include "balfilt/rational.hpp"

#include <cctype>

namespace balfilt {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string body = text;
    bool negative = false;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        negative = body[0] == '-';
        body.erase(0, 1);
    }
    std::string num = body;
    std::string den = "1";
    if (auto slash = body.find('/'); slash != std::string::npos) {
        num = body.substr(0, slash);
        den = body.substr(slash + 1);
    }
    if (!all_digits(num) || !all_digits(den))
        throw input_error("malformed rational '" + text + "'");
    Int n(num), d(den);
    if (d == 0) throw input_error("zero denominator in '" + text + "'");
    if (negative) n = -n;
    // The two-integer constructor canonicalises; the string constructor of
    // mpq does not, so it is never used here.
    return Rational(n, d);
}

std::string format_rational(const Rational& value) {
    std::string out = numerator(value).str();
    if (denominator(value) != 1) out += "/" + denominator(value).str();
    return out;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace balfilt
