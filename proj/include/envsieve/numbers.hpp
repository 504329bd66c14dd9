#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>

#include "envsieve/arith.hpp"

namespace envsieve {

using Rational = mpq_class;
using Integer = mpz_class;
using cplx = std::complex<double>;

/// "num/den", always with an explicit denominator.
inline std::string to_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Integer to_integer(std::int64_t v) {
    Integer z;
    mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
    return z;
}

inline Integer to_integer(std::uint64_t v) {
    Integer z;
    mpz_set_ui(z.get_mpz_t(), static_cast<unsigned long>(v));
    return z;
}

inline Rational ratio(std::uint64_t num, std::uint64_t den) {
    Rational r(to_integer(num), to_integer(den));
    r.canonicalize();
    return r;
}

/// e_q(x) = exp(2 pi i x / q), with x reduced mod q first.
inline cplx unit_root(std::int64_t x, std::uint64_t q) {
    std::uint64_t r = arith::mod(x, q);
    double t = 2.0 * std::numbers::pi * (static_cast<double>(r) / static_cast<double>(q));
    return {std::cos(t), std::sin(t)};
}

}  // namespace envsieve
