#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alphabet.hpp"
#include "half_int.hpp"
#include "laurent.hpp"
#include "rational.hpp"

namespace qfold {

/// A Baxter Q-function label: canonical index set plus spectral shift.
/// `folded` marks the square-root factors appearing in singular reductions
/// (Q_I = curlyQ_I^{[-1]} curlyQ_I^{[+1]} and friends); those are first-class
/// symbols and never expanded back automatically.
struct QSymbol {
    IndexSet base;
    bool folded = false;
    Shift shift{};

    QSymbol() = default;
    QSymbol(IndexSet b, Shift s, bool fold = false) : base(sorted_set(std::move(b))), folded(fold), shift(s) {}

    QSymbol shifted(Shift by) const { return QSymbol(base, shift + by, folded); }

    friend bool operator==(const QSymbol& a, const QSymbol& b) {
        return a.folded == b.folded && a.base == b.base && a.shift == b.shift;
    }
    friend bool operator<(const QSymbol& a, const QSymbol& b) {
        if (a.folded != b.folded) return a.folded < b.folded;
        if (a.base != b.base) return a.base < b.base;
        return a.shift < b.shift;
    }

    std::string str() const {
        std::string s = folded ? "Qf{" : "Q{";
        for (std::size_t i = 0; i < base.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(base[i]);
        }
        s += "}";
        if (shift.offset.twice != 0 || shift.eta) s += shift.str();
        return s;
    }
};

/// Small catalog of scalar prefactors in the twist variables that are not
/// monomials: differences, sums, z_i z_j - 1, and the spinorial half-sums.
struct ScalarFactor {
    enum class Kind { Diff, Sum, ShiftC, ProdM1, ProdP1, HalfSum };
    Kind kind{};
    int i = 0;
    int j = 0;  // second index, or the constant c = +-1 for ShiftC

    friend bool operator==(const ScalarFactor& a, const ScalarFactor& b) {
        return a.kind == b.kind && a.i == b.i && a.j == b.j;
    }
    friend bool operator<(const ScalarFactor& a, const ScalarFactor& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }

    /// Expansion into (z-monomial, coefficient) pairs; the monomial maps
    /// index -> half-integer exponent.
    std::vector<std::pair<std::map<int, HalfInt>, Rational>> monomials() const {
        using M = std::map<int, HalfInt>;
        switch (kind) {
            case Kind::Diff:
                return {{M{{i, HalfInt::whole(1)}}, Rational(1)}, {M{{j, HalfInt::whole(1)}}, Rational(-1)}};
            case Kind::Sum:
                return {{M{{i, HalfInt::whole(1)}}, Rational(1)}, {M{{j, HalfInt::whole(1)}}, Rational(1)}};
            case Kind::ShiftC:
                return {{M{{i, HalfInt::whole(1)}}, Rational(1)}, {M{}, Rational(j)}};
            case Kind::ProdM1:
                return {{M{{i, HalfInt::whole(1)}, {j, HalfInt::whole(1)}}, Rational(1)}, {M{}, Rational(-1)}};
            case Kind::ProdP1:
                return {{M{{i, HalfInt::whole(1)}, {j, HalfInt::whole(1)}}, Rational(1)}, {M{}, Rational(1)}};
            case Kind::HalfSum:
                return {{M{{i, HalfInt::half(1)}}, Rational(1)}, {M{{i, HalfInt::half(-1)}}, Rational(1)}};
        }
        throw std::logic_error("unreachable");
    }

    std::string str() const {
        auto z = [](int a) { return "z" + std::to_string(a); };
        switch (kind) {
            case Kind::Diff: return "(" + z(i) + "-" + z(j) + ")";
            case Kind::Sum: return "(" + z(i) + "+" + z(j) + ")";
            case Kind::ShiftC: return "(" + z(i) + (j >= 0 ? "+" : "") + std::to_string(j) + ")";
            case Kind::ProdM1: return "(" + z(i) + z(j) + "-1)";
            case Kind::ProdP1: return "(" + z(i) + z(j) + "+1)";
            case Kind::HalfSum: return "(" + z(i) + "^1/2+" + z(i) + "^-1/2)";
        }
        return "?";
    }
};

/// Normalized factor constructors; the returned sign keeps orientation
/// canonical (Diff is stored with i < j).
inline std::pair<ScalarFactor, int> z_diff(int i, int j) {
    if (i == j) throw std::invalid_argument("z_diff of equal indices");
    if (i < j) return {{ScalarFactor::Kind::Diff, i, j}, 1};
    return {{ScalarFactor::Kind::Diff, j, i}, -1};
}
inline ScalarFactor z_sum(int i, int j) {
    return {ScalarFactor::Kind::Sum, std::min(i, j), std::max(i, j)};
}
inline ScalarFactor z_shift(int i, int c) {
    if (c != 1 && c != -1) throw std::invalid_argument("z_shift wants c = +-1");
    return {ScalarFactor::Kind::ShiftC, i, c};
}
inline ScalarFactor z_prod_m1(int i, int j) {
    return {ScalarFactor::Kind::ProdM1, std::min(i, j), std::max(i, j)};
}
inline ScalarFactor z_prod_p1(int i, int j) {
    return {ScalarFactor::Kind::ProdP1, std::min(i, j), std::max(i, j)};
}
inline ScalarFactor z_half_sum(int i) { return {ScalarFactor::Kind::HalfSum, i, 0}; }

/// One signed monomial: rational coefficient, twist monomial, scalar factors
/// and a product of (possibly inverted) shifted Q-symbols.
struct Term {
    Rational coeff = Rational(1);
    std::map<int, HalfInt> zexp;
    std::map<ScalarFactor, int> sfac;
    std::map<QSymbol, int> qfac;

    Term() = default;
    explicit Term(Rational c) : coeff(std::move(c)) {}

    bool same_shape(const Term& o) const {
        return zexp == o.zexp && sfac == o.sfac && qfac == o.qfac;
    }

    Term& mul_z(int index, HalfInt e) {
        auto it = zexp.find(index);
        if (it == zexp.end()) {
            if (e.twice) zexp[index] = e;
        } else {
            it->second += e;
            if (it->second.twice == 0) zexp.erase(it);
        }
        return *this;
    }
    Term& mul_q(const QSymbol& q, int power = 1) {
        auto it = qfac.find(q);
        if (it == qfac.end()) {
            if (power) qfac[q] = power;
        } else {
            it->second += power;
            if (it->second == 0) qfac.erase(it);
        }
        return *this;
    }
    Term& mul_s(const ScalarFactor& f, int power = 1) {
        auto it = sfac.find(f);
        if (it == sfac.end()) {
            if (power) sfac[f] = power;
        } else {
            it->second += power;
            if (it->second == 0) sfac.erase(it);
        }
        return *this;
    }

    friend Term operator*(const Term& a, const Term& b) {
        Term out = a;
        out.coeff *= b.coeff;
        for (const auto& [k, v] : b.zexp) out.mul_z(k, v);
        for (const auto& [k, v] : b.sfac) out.mul_s(k, v);
        for (const auto& [k, v] : b.qfac) out.mul_q(k, v);
        return out;
    }

    Term inverse() const {
        Term out;
        out.coeff = 1 / coeff;
        for (const auto& [k, v] : zexp) out.zexp[k] = -v;
        for (const auto& [k, v] : sfac) out.sfac[k] = -v;
        for (const auto& [k, v] : qfac) out.qfac[k] = -v;
        return out;
    }

    Term shifted(Shift by) const {
        Term out = *this;
        out.qfac.clear();
        for (const auto& [q, v] : qfac) out.qfac[q.shifted(by)] = v;
        return out;
    }

    std::string str() const {
        std::string s = to_string(coeff);
        for (const auto& [k, v] : zexp) {
            s += " z" + std::to_string(k);
            if (v != HalfInt::whole(1)) s += "^" + v.str();
        }
        for (const auto& [f, v] : sfac) {
            s += " " + f.str();
            if (v != 1) s += "^" + std::to_string(v);
        }
        for (const auto& [q, v] : qfac) {
            s += " " + q.str();
            if (v != 1) s += "^" + std::to_string(v);
        }
        return s;
    }
};

/// Canonical sum of terms; insertion order never matters.
class QExpr {
public:
    QExpr() = default;
    QExpr(const Term& t) { add_term(t); }

    static QExpr zero() { return QExpr(); }
    static QExpr one() { return QExpr(Term()); }
    static QExpr constant(const Rational& c) {
        Term t(c);
        return QExpr(t);
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const Term& t) {
        if (qfold::is_zero(t.coeff)) return;
        auto key_less = [](const Term& a, const Term& b) {
            if (a.zexp != b.zexp) return a.zexp < b.zexp;
            if (a.sfac != b.sfac) return a.sfac < b.sfac;
            return a.qfac < b.qfac;
        };
        auto it = std::lower_bound(terms_.begin(), terms_.end(), t, key_less);
        if (it != terms_.end() && it->same_shape(t)) {
            it->coeff += t.coeff;
            if (qfold::is_zero(it->coeff)) terms_.erase(it);
        } else {
            terms_.insert(it, t);
        }
    }

    friend QExpr operator+(const QExpr& a, const QExpr& b) {
        QExpr out = a;
        for (const auto& t : b.terms_) out.add_term(t);
        return out;
    }
    friend QExpr operator-(const QExpr& a, const QExpr& b) { return a + (Rational(-1) * b); }
    friend QExpr operator*(const Rational& c, const QExpr& a) {
        QExpr out;
        if (qfold::is_zero(c)) return out;
        out.terms_ = a.terms_;
        for (auto& t : out.terms_) t.coeff *= c;
        return out;
    }
    friend QExpr operator*(const QExpr& a, const QExpr& b) {
        QExpr out;
        for (const auto& ta : a.terms_)
            for (const auto& tb : b.terms_) out.add_term(ta * tb);
        return out;
    }
    friend QExpr operator*(const Term& t, const QExpr& a) { return QExpr(t) * a; }
    QExpr& operator+=(const QExpr& b) { *this = *this + b; return *this; }
    QExpr& operator-=(const QExpr& b) { *this = *this - b; return *this; }
    QExpr& operator*=(const QExpr& b) { *this = *this * b; return *this; }

    friend bool operator==(const QExpr& a, const QExpr& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            if (!(a.terms_[i].same_shape(b.terms_[i]))) return false;
            if (a.terms_[i].coeff != b.terms_[i].coeff) return false;
        }
        return true;
    }

    QExpr shifted(Shift by) const {
        QExpr out;
        for (const auto& t : terms_) out.add_term(t.shifted(by));
        return out;
    }

    /// Multiplicative inverse, defined for single-term expressions only.
    QExpr inverse_term() const {
        if (terms_.size() != 1) throw std::domain_error("inverse of non-monomial expression");
        return QExpr(terms_[0].inverse());
    }

    QExpr pow(int k) const {
        if (k < 0) return inverse_term().pow(-k);
        QExpr acc = one();
        for (int i = 0; i < k; ++i) acc *= *this;
        return acc;
    }

    /// Replace every occurrence of the (base, folded) symbol family by the
    /// given expression (shift-covariantly). Negative powers require the
    /// replacement to be a single term.
    QExpr substituted(const IndexSet& base, bool folded, const QExpr& repl) const {
        QExpr out;
        for (const auto& t : terms_) {
            QExpr acc{[&] {
                Term rest = t;
                rest.qfac.clear();
                for (const auto& [q, v] : t.qfac)
                    if (!(q.base == base && q.folded == folded)) rest.qfac[q] = v;
                return rest;
            }()};
            for (const auto& [q, v] : t.qfac) {
                if (!(q.base == base && q.folded == folded)) continue;
                acc = acc * repl.shifted(q.shift).pow(v);
            }
            out += acc;
        }
        return out;
    }

    /// Largest negative power of each scalar factor across all terms.
    std::map<ScalarFactor, int> scalar_denominators() const {
        std::map<ScalarFactor, int> need;
        for (const auto& t : terms_)
            for (const auto& [f, v] : t.sfac)
                if (v < 0) {
                    int& n = need[f];
                    n = std::max(n, -v);
                }
        return need;
    }

    /// Multiply by the given scalar factors (as sfac powers).
    QExpr times_scalars(const std::map<ScalarFactor, int>& fs) const {
        QExpr out;
        for (const auto& t : terms_) {
            Term u = t;
            for (const auto& [f, v] : fs) u.mul_s(f, v);
            out.add_term(u);
        }
        return out;
    }

    /// Expand all non-negative scalar-factor powers into twist monomials.
    /// Terms still holding negative powers are left untouched.
    QExpr expanded_scalars() const {
        QExpr out;
        for (const auto& t : terms_) {
            bool has_pos = false;
            for (const auto& [f, v] : t.sfac)
                if (v > 0) has_pos = true;
            if (!has_pos) {
                out.add_term(t);
                continue;
            }
            std::vector<Term> acc;
            Term base = t;
            base.sfac.clear();
            for (const auto& [f, v] : t.sfac)
                if (v < 0) base.sfac[f] = v;
            acc.push_back(base);
            for (const auto& [f, v] : t.sfac) {
                for (int rep = 0; rep < v; ++rep) {
                    std::vector<Term> next;
                    for (const auto& a : acc)
                        for (const auto& [mono, c] : f.monomials()) {
                            Term u = a;
                            u.coeff *= c;
                            for (const auto& [idx, e] : mono) u.mul_z(idx, e);
                            next.push_back(u);
                        }
                    acc = std::move(next);
                }
            }
            for (const auto& a : acc) out.add_term(a);
        }
        return out;
    }

    /// Supercharacter limit: every Q-symbol goes to 1 and the result is a
    /// Laurent polynomial in the twist variables z_1..z_arity.
    LaurentPoly char_limit(int arity) const {
        LaurentPoly out(arity);
        for (const auto& t : terms_) {
            LaurentPoly mono(arity);
            {
                LaurentPoly::Expo e(arity);
                for (const auto& [idx, v] : t.zexp) e.at(idx - 1) = v;
                mono.add_term(e, t.coeff);
            }
            for (const auto& [f, v] : t.sfac) {
                LaurentPoly fp(arity);
                for (const auto& [m, c] : f.monomials()) {
                    LaurentPoly::Expo e(arity);
                    for (const auto& [idx, ex] : m) e.at(idx - 1) = ex;
                    fp.add_term(e, c);
                }
                if (v < 0) throw std::domain_error("char_limit with scalar denominator");
                for (int rep = 0; rep < v; ++rep) mono *= fp;
            }
            out += mono;
        }
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (i) s += "  +  ";
            s += terms_[i].str();
        }
        return s;
    }

    /// If a single term X exists with *this == X * other, return it.
    std::optional<Term> term_ratio_to(const QExpr& other) const {
        if (terms_.empty() && other.terms_.empty()) return Term();
        if (terms_.empty() || other.terms_.empty()) return std::nullopt;
        if (terms_.size() != other.terms_.size()) return std::nullopt;
        const Term& b0 = other.terms_[0];
        for (const auto& a : terms_) {
            Term x = a * b0.inverse();
            QExpr lhs = *this;
            QExpr rhs = x * other;
            if (lhs == rhs) return x;
        }
        return std::nullopt;
    }

private:
    std::vector<Term> terms_;
};

inline QExpr q_of(const IndexSet& base, Shift sh = Shift{}, bool folded = false) {
    Term t;
    t.mul_q(QSymbol(base, sh, folded));
    return QExpr(t);
}

}  // namespace qfold
