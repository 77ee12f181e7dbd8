#include "kstab/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "kstab/errors.hpp"

namespace kstab {

BigInt floor_rat(const Rat& r) {
    BigInt q = num(r) / den(r);
    if (num(r) < 0 && q * den(r) != num(r)) --q;
    return q;
}

BigInt ceil_rat(const Rat& r) { return -floor_rat(-r); }

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

BigInt pow10(long e) {
    BigInt p = 1;
    for (long i = 0; i < e; ++i) p *= 10;
    return p;
}

// decimal forms: [sign]digits[.digits][(e|E)[sign]digits]
Rat parse_decimal(std::string_view text) {
    std::string s(text);
    bool negative = false;
    std::size_t pos = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        negative = s[pos] == '-';
        ++pos;
    }
    long exponent = 0;
    std::size_t epos = s.find_first_of("eE", pos);
    if (epos != std::string::npos) {
        std::string etail = s.substr(epos + 1);
        if (etail.empty()) throw ParseError("bad rational literal: '" + s + "'");
        std::size_t tp = 0;
        bool eneg = false;
        if (etail[tp] == '+' || etail[tp] == '-') {
            eneg = etail[tp] == '-';
            ++tp;
        }
        if (!all_digits(std::string_view(etail).substr(tp)))
            throw ParseError("bad rational literal: '" + s + "'");
        exponent = std::strtol(etail.c_str() + tp, nullptr, 10);
        if (eneg) exponent = -exponent;
        s = s.substr(0, epos);
    }
    std::string body = s.substr(pos);
    std::size_t dot = body.find('.');
    std::string intpart = dot == std::string::npos ? body : body.substr(0, dot);
    std::string fracpart = dot == std::string::npos ? "" : body.substr(dot + 1);
    if (intpart.empty() && fracpart.empty()) throw ParseError("bad rational literal: '" + std::string(text) + "'");
    if (!intpart.empty() && !all_digits(intpart)) throw ParseError("bad rational literal: '" + std::string(text) + "'");
    if (!fracpart.empty() && !all_digits(fracpart)) throw ParseError("bad rational literal: '" + std::string(text) + "'");
    BigInt mant(intpart.empty() ? "0" : intpart);
    for (char c : fracpart) mant = mant * 10 + (c - '0');
    long shift = exponent - static_cast<long>(fracpart.size());
    Rat value(mant, 1);
    if (shift > 0)
        value *= Rat(pow10(shift), 1);
    else if (shift < 0)
        value /= Rat(pow10(-shift), 1);
    return negative ? Rat(-value) : value;
}

}  // namespace

Rat parse_rational(std::string_view text) {
    if (text.empty()) throw ParseError("empty rational literal");
    std::size_t slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (text.find('.') != std::string_view::npos || text.find('e') != std::string_view::npos ||
            text.find('E') != std::string_view::npos)
            return parse_decimal(text);
        std::string_view body = text;
        if (body[0] == '+' || body[0] == '-') body.remove_prefix(1);
        if (!all_digits(body)) throw ParseError("bad rational literal: '" + std::string(text) + "'");
        return Rat(BigInt(std::string(text)), 1);
    }
    std::string_view num_part = text.substr(0, slash);
    std::string_view den_part = text.substr(slash + 1);
    std::string_view num_body = num_part;
    if (!num_body.empty() && (num_body[0] == '+' || num_body[0] == '-')) num_body.remove_prefix(1);
    if (!all_digits(num_body) || !all_digits(den_part))
        throw ParseError("bad rational literal: '" + std::string(text) + "'");
    BigInt n{std::string(num_part)};
    BigInt d{std::string(den_part)};
    if (d == 0) throw ParseError("zero denominator in rational literal: '" + std::string(text) + "'");
    return Rat(n, d);
}

std::string rat_to_string(const Rat& r) {
    std::string s = num(r).str();
    if (den(r) != 1) s += "/" + den(r).str();
    return s;
}

std::string rat_to_decimal(const Rat& r, int frac_digits) {
    bool negative = r < 0;
    Rat a = rat_abs(r);
    BigInt scale = pow10(frac_digits);
    // round half away from zero: floor(a*scale + 1/2)
    BigInt scaled = floor_rat(a * Rat(scale, 1) + Rat(1, 2));
    std::string digits = scaled.str();
    std::string out;
    if (static_cast<int>(digits.size()) <= frac_digits)
        out = "0." + std::string(frac_digits - digits.size(), '0') + digits;
    else
        out = digits.substr(0, digits.size() - frac_digits) + "." + digits.substr(digits.size() - frac_digits);
    if (frac_digits == 0) out = digits;
    if (negative && scaled != 0) out = "-" + out;
    return out;
}

bool exact_sqrt(const Rat& r, Rat& root) {
    if (r < 0) return false;
    BigInt sn = sqrt(num(r));
    BigInt sd = sqrt(den(r));
    if (sn * sn == num(r) && sd * sd == den(r)) {
        root = Rat(sn, sd);
        return true;
    }
    return false;
}

Rat sqrt_approx(const Rat& x, const Rat& precision) {
    if (precision <= 0) throw InvalidPrecision("sqrt_approx: precision must be positive");
    if (x < 0) throw NegativeNormSquare("sqrt_approx: negative radicand " + rat_to_string(x));
    Rat exact;
    if (exact_sqrt(x, exact)) return exact;
    // q = isqrt(floor(x*D^2))/D satisfies |q - sqrt(x)| <= 1/D <= precision.
    BigInt d = ceil_rat(Rat(1) / precision);
    BigInt scaled = floor_rat(x * Rat(d * d, 1));
    return Rat(sqrt(scaled), d);
}

int compare_with_sqrt(const Rat& a, const Rat& b, const Rat& s) {
    if (s < 0) throw NegativeNormSquare("compare_with_sqrt: negative radicand");
    const Rat rhs_sq = b * b * s;
    const bool rhs_nonneg = b >= 0 || s == 0;
    if (a < 0 && rhs_nonneg) return -1;
    if (a >= 0 && !rhs_nonneg) return a == 0 && rhs_sq == 0 ? 0 : 1;
    // both sides share a sign; compare squares, flipping when both negative
    const Rat a_sq = a * a;
    int cmp = a_sq == rhs_sq ? 0 : (a_sq < rhs_sq ? -1 : 1);
    if (a < 0) cmp = -cmp;
    return cmp;
}

}  // namespace kstab
