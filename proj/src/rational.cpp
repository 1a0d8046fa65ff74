#include "diophlab/rational.hpp"

#include <cmath>
#include <sstream>

namespace diophlab {

Integer pow_int(const Integer& base, unsigned long e) {
    return boost::multiprecision::pow(base, e);
}

Rational pow_rat(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0) {
        if (e < 0) throw Error("pow_rat: zero base with negative exponent");
        return Rational(0);
    }
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    Rational r(pow_int(num(base), a), pow_int(den(base), a));
    if (e < 0) r = Rational(1) / r;
    return r;
}

Integer floor_div(const Integer& p, const Integer& q) {
    Integer quo = p / q; // truncates toward zero
    if ((p % q) != 0 && ((p < 0) != (q < 0))) --quo;
    return quo;
}

Integer round_half_toward_zero(const Rational& r) {
    const Integer p = num(r), q = den(r);
    Integer fl = floor_div(p, q);
    Rational frac = r - Rational(fl);
    // frac in [0,1)
    if (2 * num(frac) > den(frac)) return fl + 1;
    if (2 * num(frac) < den(frac)) return fl;
    // exact half: candidates fl and fl+1; pick the one closer to zero
    return (r > 0) ? fl : fl + 1;
}

namespace {

// log2 of a positive big integer with a rigorous absolute error of at
// most 2^-40 (53-bit top window plus the bound on log2(1+eps)).
double log2_int(const Integer& x) {
    const unsigned bits = boost::multiprecision::msb(x); // floor(log2 x)
    if (bits <= 62) return std::log2(x.convert_to<double>());
    const Integer top = x >> (bits - 62);
    return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 62);
}

} // namespace

int cmp_pow(const Rational& lhs, const Rational& base, const Rational& expo) {
    if (lhs <= 0 || base <= 0) throw Error("cmp_pow: requires positive lhs and base");
    const Integer en = num(expo);
    const Integer ed = den(expo); // > 0
    if (abs_int(en) > 100000000 || ed > 100000000)
        throw Error("cmp_pow: exponent out of supported range");
    const double d = ed.convert_to<double>();
    const double n = en.convert_to<double>();

    // Fast path: sign of  d*log2(lhs) - n*log2(base)  with an interval
    // slop; only ambiguous comparisons fall back to exact powering.
    const double t1 = log2_int(num(lhs)), t2 = log2_int(den(lhs));
    const double t3 = log2_int(num(base)), t4 = log2_int(den(base));
    const double delta = d * (t1 - t2) - n * (t3 - t4);
    const double slop =
        1e-9 * (d * (std::abs(t1) + std::abs(t2) + 2) + std::abs(n) * (std::abs(t3) + std::abs(t4) + 2));
    if (delta > slop) return 1;
    if (delta < -slop) return -1;

    const unsigned long dl = ed.convert_to<unsigned long>();
    const unsigned long al = abs_int(en).convert_to<unsigned long>();
    // lhs^d vs base^en
    Rational l(pow_int(num(lhs), dl), pow_int(den(lhs), dl));
    Rational r(pow_int(num(base), al), pow_int(den(base), al));
    if (en < 0) r = Rational(1) / r;
    if (l < r) return -1;
    if (l > r) return 1;
    return 0;
}

std::string rat_to_string(const Rational& r) {
    std::ostringstream os;
    os << num(r);
    if (den(r) != 1) os << "/" << den(r);
    return os.str();
}

Rational rat_from_string(const std::string& text) {
    std::string s = text;
    // trim whitespace
    const auto first = s.find_first_not_of(" \t\r\n");
    const auto last = s.find_last_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty rational literal");
    s = s.substr(first, last - first + 1);
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer p(s.substr(0, slash));
        Integer q(s.substr(slash + 1));
        if (q == 0) throw ParseError("zero denominator in '" + text + "'");
        return Rational(p, q);
    } catch (const std::exception& e) {
        throw ParseError("bad rational literal '" + text + "': " + e.what());
    }
}

std::string rat_to_decimal(const Rational& r, unsigned digits) {
    const bool neg = r < 0;
    const Rational a = abs_rat(r);
    const Integer scale = pow_int(Integer(10), digits);
    Integer scaled = num(a) * scale / den(a);
    const Integer rem2 = 2 * (num(a) * scale % den(a));
    if (rem2 >= den(a)) ++scaled; // round half away from zero
    Integer ip = scaled / scale;
    Integer fp = scaled % scale;
    std::ostringstream os;
    if (neg && scaled != 0) os << '-';
    os << ip;
    if (digits > 0) {
        std::string f = fp.str();
        os << '.' << std::string(digits - f.size(), '0') << f;
    }
    return os.str();
}

std::string root_decimal(const Rational& pow_b, unsigned b, unsigned digits) {
    if (pow_b < 0) throw Error("root_decimal: negative radicand");
    if (b == 0) throw Error("root_decimal: zero root order");
    const Integer scale = pow_int(Integer(10), digits);
    // largest X with (X/scale)^b <= pow_b
    const Rational target = pow_b * Rational(pow_int(scale, b));
    Integer lo(0), hi(1);
    while (Rational(pow_int(hi, b)) <= target) hi *= 2;
    while (hi - lo > 1) {
        const Integer mid = lo + (hi - lo) / 2;
        if (Rational(pow_int(mid, b)) <= target) lo = mid;
        else hi = mid;
    }
    Integer ip = lo / scale;
    Integer fp = lo % scale;
    std::ostringstream os;
    os << ip;
    if (digits > 0) {
        std::string f = fp.str();
        os << '.' << std::string(digits - f.size(), '0') << f;
    }
    return os.str();
}

Rational norm_sq(const RatVector& v) {
    Rational s(0);
    for (const auto& x : v) s += x * x;
    return s;
}

Rational norm_sq_int(const IntVector& v) {
    Integer s(0);
    for (const auto& x : v) s += x * x;
    return Rational(s);
}

Integer gcd_int(const Integer& a, const Integer& b) {
    return boost::multiprecision::gcd(a, b);
}

Integer lcm_int(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) return Integer(0);
    return abs_int(a / gcd_int(a, b) * b);
}

} // namespace diophlab
