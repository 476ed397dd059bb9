#include "phaseless/rational.hpp"

#include "phaseless/errors.hpp"

#include <cmath>
#include <cstdlib>

namespace phaseless {

Rat parse_rational(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParseError("empty rational literal");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (num.empty() || den.empty()) throw ParseError("bad rational literal '" + text + "'");
        try {
            Rat v(num + "/" + den);
            if (v.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
            v.canonicalize();
            return v;
        } catch (const std::invalid_argument&) {
            throw ParseError("bad rational literal '" + text + "'");
        }
    }

    auto dot = s.find('.');
    auto epos = s.find_first_of("eE");
    long exp10 = 0;
    if (epos != std::string::npos) {
        char* end = nullptr;
        exp10 = std::strtol(s.c_str() + epos + 1, &end, 10);
        if (end != s.c_str() + s.size()) throw ParseError("bad numeric literal '" + text + "'");
        s = s.substr(0, epos);
        dot = s.find('.');
    }
    std::string digits = s;
    long frac_len = 0;
    if (dot != std::string::npos) {
        digits = s.substr(0, dot) + s.substr(dot + 1);
        frac_len = static_cast<long>(s.size() - dot - 1);
    }
    if (digits.empty() || digits == "-" || digits == "+") throw ParseError("bad numeric literal '" + text + "'");
    try {
        Int mant(digits, 10);
        Rat v(mant);
        long shift = exp10 - frac_len;
        if (shift > 0) {
            Int p;
            mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift));
            v *= Rat(p);
        } else if (shift < 0) {
            Int p;
            mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
            v /= Rat(p);
        }
        v.canonicalize();
        return v;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad numeric literal '" + text + "'");
    }
}

std::string format_rational(const Rat& value) {
    Rat v(value);
    v.canonicalize();
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

double to_double(const Rat& value) { return value.get_d(); }

Rat rationalize(double x, double tol) {
    if (!std::isfinite(x)) throw DomainError("cannot rationalize a non-finite value");
    if (tol <= 0) return Rat(x);
    if (std::abs(x) <= tol) return Rat(0);

    bool neg = x < 0;
    double target = neg ? -x : x;

    // Continued fraction convergents p_k/q_k of target.
    Int p0(1), q0(0);
    double frac = target;
    Int p1(static_cast<long>(std::floor(frac))), q1(1);
    frac -= std::floor(frac);
    for (int iter = 0; iter < 64; ++iter) {
        Rat approx(p1, q1);
        approx.canonicalize();
        if (std::abs(approx.get_d() - target) <= tol) break;
        if (frac < 1e-18) break;
        frac = 1.0 / frac;
        double a = std::floor(frac);
        if (a > 9e15) break;
        Int ai(static_cast<long>(a));
        Int p2 = ai * p1 + p0;
        Int q2 = ai * q1 + q0;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        frac -= a;
    }
    Rat out(p1, q1);
    out.canonicalize();
    if (std::abs(out.get_d() - target) > tol) out = Rat(target);
    if (neg) out = -out;
    out.canonicalize();
    return out;
}

long ceil_isqrt(const Int& r) {
    if (r < 0) throw DomainError("ceil_isqrt of negative value");
    Int s;
    mpz_sqrt(s.get_mpz_t(), r.get_mpz_t());
    if (s * s < r) s += 1;
    return s.get_si();
}

long ceil_triangular_inverse(const Int& r) {
    if (r < 0) throw DomainError("ceil_triangular_inverse of negative value");
    long s = 0;
    while (Int(s) * (s + 1) < 2 * r) ++s;
    return s;
}

std::vector<Rat> rationalize_all(const std::vector<double>& xs, double tol) {
    std::vector<Rat> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(rationalize(x, tol));
    return out;
}

} // namespace phaseless
