#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "gpack/errors.hpp"

namespace gpack {

// Exact rational arithmetic used by the packing solvers and the
// verification paths. All packing weights are stored as Rat so that
// identities checked by verifiers hold bit-for-bit.
using Rat = mpq_class;

// Converts a finite double exactly: every finite double is a dyadic
// rational, so no rounding occurs.
inline Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw ArgumentError("rat_from_double: non-finite value");
    Rat r(x);
    r.canonicalize();
    return r;
}

inline double rat_to_double(const Rat& r) { return r.get_d(); }

// Renders "p/q" in lowest terms, or just "p" when q == 1.
inline std::string rat_str(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// Parses "p", "p/q", or a plain decimal like "0.25" (taken exactly).
inline Rat rat_parse(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational");
    try {
        auto dot = text.find('.');
        if (dot != std::string::npos) {
            std::string digits = text.substr(0, dot) + text.substr(dot + 1);
            size_t frac_len = text.size() - dot - 1;
            if (digits.empty() || digits == "-" || digits == "+")
                throw ParseError("bad rational: " + text);
            mpz_class num(digits, 10);
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
            Rat r(num, den);
            r.canonicalize();
            return r;
        }
        Rat r(text, 10);
        if (r.get_den() == 0) throw ParseError("zero denominator: " + text);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational: " + text);
    }
}

}  // namespace gpack
