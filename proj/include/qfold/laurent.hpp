#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "half_int.hpp"
#include "rational.hpp"

namespace qfold {

/// Exact multivariate Laurent polynomial. Exponents are half-integers per
/// variable (z^{1/2} shows up in spinorial characters); the arity is fixed
/// per context. No zero coefficients are stored.
class LaurentPoly {
public:
    using Expo = std::vector<HalfInt>;

    LaurentPoly() = default;
    explicit LaurentPoly(int arity) : arity_(arity) {}

    static LaurentPoly constant(int arity, const Rational& c) {
        LaurentPoly p(arity);
        if (!is_zero(c)) p.terms_[Expo(arity)] = c;
        return p;
    }
    static LaurentPoly one(int arity) { return constant(arity, Rational(1)); }

    /// Monomial c * x_var^e.
    static LaurentPoly monomial(int arity, int var, HalfInt e, const Rational& c = Rational(1)) {
        LaurentPoly p(arity);
        if (!is_zero(c)) {
            Expo ex(arity);
            ex.at(var) = e;
            p.terms_[ex] = c;
        }
        return p;
    }

    int arity() const { return arity_; }
    bool is_zero_poly() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Expo, Rational>& terms() const { return terms_; }

    void add_term(const Expo& e, const Rational& c) {
        if ((int)e.size() != arity_) throw std::invalid_argument("LaurentPoly arity mismatch");
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (!is_zero(c)) terms_[e] = c;
        } else {
            it->second += c;
            if (is_zero(it->second)) terms_.erase(it);
        }
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        check_arity(a, b);
        LaurentPoly out = a;
        for (const auto& [e, c] : b.terms_) out.add_term(e, c);
        return out;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        check_arity(a, b);
        LaurentPoly out = a;
        for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
        return out;
    }
    friend LaurentPoly operator-(const LaurentPoly& a) {
        LaurentPoly out(a.arity_);
        for (const auto& [e, c] : a.terms_) out.terms_[e] = -c;
        return out;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        check_arity(a, b);
        LaurentPoly out(a.arity_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Expo e(a.arity_);
                for (int i = 0; i < a.arity_; ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }
    friend LaurentPoly operator*(const Rational& c, const LaurentPoly& a) {
        LaurentPoly out(a.arity_);
        if (is_zero(c)) return out;
        for (const auto& [e, k] : a.terms_) out.terms_[e] = c * k;
        return out;
    }
    LaurentPoly& operator+=(const LaurentPoly& b) { *this = *this + b; return *this; }
    LaurentPoly& operator*=(const LaurentPoly& b) { *this = *this * b; return *this; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }
    friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.arity_ != b.arity_) return a.arity_ < b.arity_;
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
            if (ia->first != ib->first) return ia->first < ib->first;
            if (ia->second != ib->second) return ia->second < ib->second;
        }
        return a.terms_.size() < b.terms_.size();
    }

    /// Substitute exact values per variable. Half-integer exponents require
    /// the caller to pass square roots: point[i] is the value of x_i^{1/2}.
    Rational eval_sqrt_point(const std::vector<Rational>& sqrt_point) const {
        if ((int)sqrt_point.size() != arity_) throw std::invalid_argument("eval arity mismatch");
        Rational acc(0);
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (int i = 0; i < arity_; ++i) {
                int k = e[i].twice;  // exponent of sqrt variable
                if (k == 0) continue;
                if (sqrt_point[i] == 0) throw std::domain_error("zero base in Laurent eval");
                t *= pow_rat(sqrt_point[i], k);
            }
            acc += t;
        }
        return acc;
    }

    /// Evaluation at integer-exponent points (throws on half exponents).
    Rational eval_point(const std::vector<Rational>& point) const {
        if ((int)point.size() != arity_) throw std::invalid_argument("eval arity mismatch");
        Rational acc(0);
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (int i = 0; i < arity_; ++i) {
                if (e[i].twice == 0) continue;
                if (!e[i].is_integer()) throw std::domain_error("half exponent needs sqrt point");
                t *= pow_rat(point[i], e[i].as_integer());
            }
            acc += t;
        }
        return acc;
    }

    static Rational pow_rat(const Rational& base, long e) {
        if (e == 0) return Rational(1);
        Rational b = base;
        long n = e;
        if (n < 0) {
            if (is_zero(b)) throw std::domain_error("zero to negative power");
            b = 1 / b;
            n = -n;
        }
        Rational acc(1);
        while (n) {
            if (n & 1) acc *= b;
            b *= b;
            n >>= 1;
        }
        return acc;
    }

    std::string str(const std::vector<std::string>& names = {}) const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            std::string mono;
            for (int i = 0; i < arity_; ++i) {
                if (e[i].twice == 0) continue;
                std::string nm = i < (int)names.size() ? names[i] : ("x" + std::to_string(i));
                mono += nm;
                if (e[i] != HalfInt::whole(1)) mono += "^" + e[i].str();
                mono += " ";
            }
            std::string cs = to_string(c);
            if (!first) out += (sgn(c) >= 0 ? " + " : " - ");
            else if (sgn(c) < 0) out += "-";
            first = false;
            Rational ac = abs(c);
            if (ac != 1 || mono.empty()) out += to_string(ac) + (mono.empty() ? "" : " ");
            out += mono;
            while (!out.empty() && out.back() == ' ') out.pop_back();
        }
        return out;
    }

private:
    static void check_arity(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.arity_ != b.arity_) throw std::invalid_argument("LaurentPoly arity mismatch");
    }

    int arity_ = 0;
    std::map<Expo, Rational> terms_;
};

}  // namespace qfold
