#pragma once

#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qfold {

/// Element of (1/2)Z stored as twice its value. Spectral shifts and
/// z-exponents are half-integers throughout (spinorial formulas force both).
struct HalfInt {
    int twice = 0;

    constexpr HalfInt() = default;
    constexpr explicit HalfInt(int twice_value) : twice(twice_value) {}

    static constexpr HalfInt whole(int n) { return HalfInt(2 * n); }
    static constexpr HalfInt half(int n) { return HalfInt(n); }

    constexpr bool is_integer() const { return twice % 2 == 0; }
    constexpr int as_integer() const {
        return twice / 2;  // caller checks is_integer()
    }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(a.twice + b.twice); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(a.twice - b.twice); }
    friend constexpr HalfInt operator-(HalfInt a) { return HalfInt(-a.twice); }
    constexpr HalfInt& operator+=(HalfInt b) { twice += b.twice; return *this; }
    constexpr HalfInt& operator-=(HalfInt b) { twice -= b.twice; return *this; }
    friend constexpr HalfInt operator*(int k, HalfInt a) { return HalfInt(k * a.twice); }

    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

    double value() const { return twice / 2.0; }

    std::string str() const {
        if (is_integer()) return std::to_string(twice / 2);
        return std::to_string(twice) + "/2";
    }
};

/// Spectral shift: an offset in units of hbar plus a formal eta half-period.
/// eta parity is mod 2 (kappa = 2 folding, Q^{[2 eta]} = Q).
struct Shift {
    HalfInt offset{};
    int eta = 0;  // 0 or 1

    constexpr Shift() = default;
    constexpr Shift(HalfInt off, int eta_parity) : offset(off), eta(((eta_parity % 2) + 2) % 2) {}
    static constexpr Shift of(int whole_units, int eta_parity = 0) {
        return Shift(HalfInt::whole(whole_units), eta_parity);
    }
    static constexpr Shift of_half(int half_units, int eta_parity = 0) {
        return Shift(HalfInt::half(half_units), eta_parity);
    }

    friend constexpr Shift operator+(Shift a, Shift b) {
        return Shift(a.offset + b.offset, (a.eta + b.eta) % 2);
    }
    friend constexpr Shift operator-(Shift a) { return Shift(-a.offset, a.eta); }

    friend constexpr auto operator<=>(Shift, Shift) = default;

    std::string str() const {
        std::string s = "[" + offset.str();
        if (eta) s += "+e";
        s += "]";
        return s;
    }
};

/// f^{[a]}^{[b]} = f^{[a+b]} with eta parities adding mod 2.
constexpr Shift shift_compose(Shift a, Shift b) { return a + b; }

}  // namespace qfold
