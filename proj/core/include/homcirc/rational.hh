#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace homcirc {

using Rat = mpq_class;

// Parses "p", "-p" or "p/q" (decimal). Throws std::invalid_argument on junk.
inline auto parse_rat(const std::string &s) -> Rat {
    if (s.empty()) throw std::invalid_argument("empty rational");
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    r.canonicalize();
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    return r;
}

// Always emits the explicit "p/q" form used by the circuit text format.
inline auto rat_str(const Rat &r) -> std::string {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline auto factorial(unsigned n) -> Rat {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rat(f);
}

inline auto binomial(unsigned n, unsigned k) -> Rat {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rat(b);
}

// Small random rationals for hosts; denominators kept tiny so exact
// arithmetic stays fast in sweeps.
inline auto random_rat(std::mt19937_64 &rng, long max_abs_num = 9, long max_den = 4) -> Rat {
    std::uniform_int_distribution<long> num(-max_abs_num, max_abs_num);
    std::uniform_int_distribution<long> den(1, max_den);
    Rat r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

}  // namespace homcirc
