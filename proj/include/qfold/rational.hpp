#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <random>
#include <string>
#include <vector>

namespace qfold {

/// Exact rational scalar. All identity checks in this library reduce to
/// equality tests on these, so there is no tolerance anywhere in the
/// symbolic layer.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

/// 2r as an int, for rationals living in (1/2)Z.
inline int twice_int(const Rational& r) {
    Rational v = r * 2;
    v.canonicalize();
    if (v.get_den() != 1) throw std::domain_error("not a half-integer");
    return (int)v.get_num().get_si();
}

inline std::string to_string(const Rational& r) {
    return r.get_str();
}

/// Deterministic source of small random rationals. Everything that samples
/// (evaluation points, twists, Q-roots) goes through one of these so a fixed
/// seed reproduces a run bit for bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    long integer(long lo, long hi) {
        std::uniform_int_distribution<long> d(lo, hi);
        return d(eng_);
    }

    /// Nonzero rational p/q with |p| <= span, 1 <= q <= span.
    Rational rational(long span = 7) {
        long p = 0;
        while (p == 0) p = integer(-span, span);
        long q = integer(1, span);
        Rational r(p, q);
        r.canonicalize();
        return r;
    }

    /// Rational that avoids the given forbidden values (e.g. 0, +-1).
    Rational rational_avoiding(const std::vector<Rational>& forbidden, long span = 7) {
        for (;;) {
            Rational r = rational(span);
            bool bad = false;
            for (const auto& f : forbidden)
                if (r == f) { bad = true; break; }
            if (!bad) return r;
        }
    }

    /// Pairwise distinct nonzero rationals.
    std::vector<Rational> distinct(int n, long span = 19) {
        std::vector<Rational> out;
        while ((int)out.size() < n) {
            Rational r = rational(span);
            bool dup = false;
            for (const auto& o : out)
                if (o == r) { dup = true; break; }
            if (!dup) out.push_back(r);
        }
        return out;
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

}  // namespace qfold
