#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alphabet.hpp"
#include "half_int.hpp"
#include "partition.hpp"
#include "rational.hpp"

namespace qfold {

/// Weight or root written on the epsilon basis of gl(M|N)^*; coordinate i
/// multiplies epsilon_{i+1}. Rational entries cover spinorial weights.
using EpsVector = std::vector<Rational>;

inline EpsVector eps_unit(int n, int index, int twice = 2) {
    EpsVector v(n, Rational(0));
    v[index - 1] = rat(twice, 2);
    return v;
}

inline EpsVector eps_add(const EpsVector& a, const EpsVector& b) {
    EpsVector out(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline EpsVector eps_sub(const EpsVector& a, const EpsVector& b) {
    EpsVector out(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline EpsVector eps_scale(const Rational& c, const EpsVector& a) {
    EpsVector out(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
    return out;
}

/// (x|y) with (eps_i|eps_j) = p_i delta_ij.
inline Rational eps_form(const GradedAlphabet& al, const EpsVector& a, const EpsVector& b) {
    Rational acc(0);
    for (int i = 1; i <= al.size(); ++i) acc += a[i - 1] * b[i - 1] * Rational(al.parity(i));
    return acc;
}

/// Weyl reflection extended by odd reflections (alpha odd, (alpha|alpha)=0
/// branch included).
inline EpsVector reflect_vector(const GradedAlphabet& al, const EpsVector& alpha, const EpsVector& beta) {
    Rational aa = eps_form(al, alpha, alpha);
    Rational ab = eps_form(al, alpha, beta);
    if (!is_zero(aa)) return eps_sub(beta, eps_scale(2 * ab / aa, alpha));
    if (beta == alpha) return eps_scale(Rational(-1), alpha);
    if (!is_zero(ab)) return eps_add(beta, alpha);
    return beta;
}

enum class RootFamily { A, B, C, D };

inline std::string family_name(RootFamily f) {
    switch (f) {
        case RootFamily::A: return "A";
        case RootFamily::B: return "B";
        case RootFamily::C: return "C";
        case RootFamily::D: return "D";
    }
    return "?";
}

/// Simple root system of gl(M|N) or of an orthosymplectic superalgebra,
/// attached to a nesting-path tuple.
class RootSystem {
public:
    RootFamily family{};
    NestingPath path;
    int r = 0, s = 0;
    int upsilon = 1;  // (-1)^count for type C/D tuples; +1 otherwise

    static RootSystem type_A(const NestingPath& path) {
        RootSystem rs;
        rs.family = RootFamily::A;
        rs.path = path;
        int n = path.size();
        for (int a = 1; a <= n - 1; ++a)
            rs.roots_.push_back(eps_sub(eps_unit(n, path.at(n + 1 - a)), eps_unit(n, path.at(n - a))));
        return rs;
    }

    /// osp(2r+1|2s) on a symmetric tuple of gl(2r|2s+1).
    static RootSystem type_B(int r, int s, const NestingPath& path) {
        require(path.alphabet().M() == 2 * r && path.alphabet().N() == 2 * s + 1, "type B wants (M,N)=(2r,2s+1)");
        require(path.symmetric(), "type B wants a symmetric tuple");
        RootSystem rs;
        rs.family = RootFamily::B;
        rs.path = path;
        rs.r = r;
        rs.s = s;
        const auto& al = path.alphabet();
        int n = path.size();
        for (int a = 1; a <= r + s - 1; ++a)
            rs.roots_.push_back(eps_sub(eps_unit(n, al.star(path.at(a))), eps_unit(n, al.star(path.at(a + 1)))));
        if (r + s >= 1) rs.roots_.push_back(eps_unit(n, al.star(path.at(r + s))));
        return rs;
    }

    /// osp(2r|2s) (type D when i_{r+s} is bosonic, type C when fermionic) or
    /// sp(2r) when built over gl(2r+2|0) with D inside B.
    static RootSystem type_CD(int r, int s, const NestingPath& path, const IndexSet& dset) {
        require(path.symmetric(), "type C/D wants a symmetric tuple");
        RootSystem rs;
        rs.path = path;
        rs.r = r;
        rs.s = s;
        const auto& al = path.alphabet();
        int n = path.size();
        int rank = n / 2 - 1;  // r+s for osp(2r|2s), r for sp(2r)
        require(dset.size() == 2, "singular reduction needs |D|=2");
        require(std::find(dset.begin(), dset.end(), path.at(rank + 1)) != dset.end(),
                "tuple slot rank+1 must carry a D-set index");
        bool last_boson = al.is_boson(path.at(rank)) && !in(dset, path.at(rank));
        // sp(2r): D inside the bosonic block, the last free slot is bosonic but
        // the algebra is symplectic; flagged by dset living in B.
        bool d_in_bosons = al.is_boson(dset[0]);
        rs.family = (last_boson && !d_in_bosons) ? RootFamily::D : RootFamily::C;
        for (int a = 1; a <= rank - 1; ++a)
            rs.roots_.push_back(eps_sub(eps_unit(n, al.star(path.at(a))), eps_unit(n, al.star(path.at(a + 1)))));
        if (rs.family == RootFamily::D) {
            rs.roots_.back() = eps_sub(eps_unit(n, al.star(path.at(rank - 1))), eps_unit(n, al.star(path.at(rank))));
            rs.roots_.push_back(eps_add(eps_unit(n, al.star(path.at(rank - 1))), eps_unit(n, al.star(path.at(rank)))));
        } else {
            rs.roots_.push_back(eps_unit(n, al.star(path.at(rank)), 4));  // 2 eps
        }
        int count = 0;
        for (int a = 1; a <= rank; ++a)
            if (path.at(a) >= 1 && path.at(a) <= r) count++;
        rs.upsilon = (count % 2 == 0) ? 1 : -1;
        return rs;
    }

    int rank() const { return (int)roots_.size(); }
    const EpsVector& root(int a) const { return roots_.at(a - 1); }
    const GradedAlphabet& alphabet() const { return path.alphabet(); }

    Rational form(int a, int b) const { return eps_form(alphabet(), root(a), root(b)); }

    int root_parity(int a) const {
        // Product of parities of the constituent eps's (with multiplicity).
        int p = 1;
        const auto& v = root(a);
        for (int i = 1; i <= alphabet().size(); ++i) {
            long k = std::abs(v[i - 1].get_num().get_si());
            for (long t = 0; t < k; ++t) p *= alphabet().parity(i);
        }
        return p;
    }

    enum class Dot { White, Gray, Black };
    Dot dot(int a) const {
        if (is_zero(form(a, a))) return Dot::Gray;
        return root_parity(a) == 1 ? Dot::White : Dot::Black;
    }

    /// Action of the (odd) reflection w_{root a} on the tuple.
    NestingPath reflect_tuple(int a) const {
        if (a < 1 || a > rank()) throw std::out_of_range("reflection index");
        const auto& al = alphabet();
        const auto& P = path;
        int n = P.size();
        auto swapv = [&](const NestingPath& p, int x, int y) { return p.with_swapped_values(x, y); };
        switch (family) {
            case RootFamily::A:
                return swapv(P, P.at(n - a), P.at(n - a + 1));
            case RootFamily::B: {
                if (a <= rank() - 1) {
                    auto q = swapv(P, P.at(a), P.at(a + 1));
                    return swapv(q, al.star(P.at(a)), al.star(P.at(a + 1)));
                }
                return swapv(P, P.at(rank()), al.star(P.at(rank())));
            }
            case RootFamily::D: {
                int m = rank();
                if (a <= m - 1) {
                    auto q = swapv(P, P.at(a), P.at(a + 1));
                    return swapv(q, al.star(P.at(a)), al.star(P.at(a + 1)));
                }
                int im1 = P.at(m - 1), im = P.at(m);
                if (al.parity(im1) == 1) {
                    auto q = swapv(P, im1, al.star(im));
                    return swapv(q, al.star(im1), im);
                }
                auto q = swapv(P, im1, al.star(im));
                q = swapv(q, al.star(im1), im);
                return swapv(q, im1, al.star(im1));
            }
            case RootFamily::C: {
                int m = rank();
                if (a <= m - 2) {
                    auto q = swapv(P, P.at(a), P.at(a + 1));
                    return swapv(q, al.star(P.at(a)), al.star(P.at(a + 1)));
                }
                if (a == m) return swapv(P, P.at(m), al.star(P.at(m)));
                int im1 = P.at(m - 1), im = P.at(m);
                bool plain = (al.parity(im1) == -1) || (al.parity(im1) == 1 && upsilon == 1);
                auto q = swapv(P, im1, im);
                q = swapv(q, al.star(im1), al.star(im));
                if (!plain) q = swapv(q, im1, al.star(im1));
                return q;
            }
        }
        throw std::logic_error("unreachable");
    }

private:
    static void require(bool c, const char* msg) {
        if (!c) throw std::invalid_argument(msg);
    }
    static bool in(const IndexSet& s, int v) { return std::find(s.begin(), s.end(), v) != s.end(); }

    std::vector<EpsVector> roots_;
};

/// Highest weight with its Kac-Dynkin labels for the distinguished simple
/// root system of the chosen family.
struct HighestWeight {
    std::vector<Rational> lambda;      // Lambda_j in the family's own ordering
    std::vector<Rational> kac_dynkin;  // b_j
    bool finite_dimensional = false;
};

enum class WeightBranch { Plus, Minus };

inline HighestWeight weight_dictionary(RootFamily family, int r, int s, const Partition& mu,
                                       WeightBranch branch = WeightBranch::Plus) {
    HighestWeight hw;
    Partition muc = mu.conjugate();
    auto maxz = [](int x) { return Rational(std::max(x, 0)); };
    switch (family) {
        case RootFamily::A: {
            // here r = M, s = N
            if (!mu.in_hook(r, s)) throw std::invalid_argument("diagram outside [M,N]-hook");
            for (int j = 1; j <= r; ++j) hw.lambda.push_back(Rational(mu.part(j)));
            for (int j = 1; j <= s; ++j) hw.lambda.push_back(maxz(muc.part(j) - r));
            int n = r + s;
            for (int j = 1; j <= n - 1; ++j) {
                if (j != r) hw.kac_dynkin.push_back(hw.lambda[j - 1] - hw.lambda[j]);
                else hw.kac_dynkin.push_back(hw.lambda[j - 1] + hw.lambda[j]);
            }
            hw.finite_dimensional = true;
            for (int j = 1; j <= n - 1; ++j)
                if (j != r && (hw.kac_dynkin[j - 1] < 0 || hw.kac_dynkin[j - 1].get_den() != 1))
                    hw.finite_dimensional = false;
            return hw;
        }
        case RootFamily::B: {
            if (!mu.in_hook(r, s)) throw std::invalid_argument("diagram outside [r,s]-hook");
            for (int j = 1; j <= s; ++j) hw.lambda.push_back(Rational(muc.part(j)));
            for (int j = 1; j <= r; ++j) hw.lambda.push_back(maxz(mu.part(j) - s));
            int n = r + s;
            for (int j = 1; j <= n; ++j) {
                Rational next = (j < n) ? hw.lambda[j] : Rational(0);
                if (j == n) hw.kac_dynkin.push_back(2 * hw.lambda[n - 1]);
                else if (j == s) hw.kac_dynkin.push_back(hw.lambda[j - 1] + hw.lambda[j]);
                else hw.kac_dynkin.push_back(hw.lambda[j - 1] - next);
            }
            // finite dimensionality per the distinguished-diagram conditions
            hw.finite_dimensional = true;
            for (int j = 1; j <= n; ++j)
                if (j != s && (hw.kac_dynkin[j - 1] < 0 || hw.kac_dynkin[j - 1].get_den() != 1))
                    hw.finite_dimensional = false;
            if (s >= 1 && hw.finite_dimensional) {
                Rational c = hw.kac_dynkin[s - 1];
                for (int j = s + 1; j <= n - 1; ++j) c -= hw.kac_dynkin[j - 1];
                if (n >= 1) c -= hw.kac_dynkin[n - 1] / 2;
                if (c < 0 || c.get_den() != 1) hw.finite_dimensional = false;
                else {
                    long cv = c.get_num().get_si();
                    if (cv < r)
                        for (long j = s + cv + 1; j <= n; ++j)
                            if (hw.kac_dynkin[j - 1] != 0) hw.finite_dimensional = false;
                }
            }
            return hw;
        }
        case RootFamily::D: {
            if (!mu.in_hook(r, s)) throw std::invalid_argument("diagram outside [r,s]-hook");
            for (int j = 1; j <= s; ++j) hw.lambda.push_back(Rational(muc.part(j)));
            for (int j = 1; j <= r; ++j) hw.lambda.push_back(maxz(mu.part(j) - s));
            if (branch == WeightBranch::Minus && r >= 1) hw.lambda[s + r - 1] = -hw.lambda[s + r - 1];
            int n = r + s;
            for (int j = 1; j <= n; ++j) {
                if (j == n) hw.kac_dynkin.push_back(hw.lambda[n - 2] + hw.lambda[n - 1]);
                else if (j == s) hw.kac_dynkin.push_back(hw.lambda[j - 1] + hw.lambda[j]);
                else hw.kac_dynkin.push_back(hw.lambda[j - 1] - hw.lambda[j]);
            }
            hw.finite_dimensional = true;
            for (int j = 1; j <= n; ++j)
                if (j != s && (hw.kac_dynkin[j - 1] < 0 || hw.kac_dynkin[j - 1].get_den() != 1))
                    hw.finite_dimensional = false;
            if (s >= 1 && hw.finite_dimensional) {
                Rational c = hw.kac_dynkin[s - 1];
                for (int j = s + 1; j <= n - 2; ++j) c -= hw.kac_dynkin[j - 1];
                c -= (hw.kac_dynkin[n - 2] + hw.kac_dynkin[n - 1]) / 2;
                if (c < 0 || c.get_den() != 1) hw.finite_dimensional = false;
                else {
                    long cv = c.get_num().get_si();
                    if (cv < r - 1) {
                        for (long j = s + cv + 1; j <= n; ++j)
                            if (hw.kac_dynkin[j - 1] != 0) hw.finite_dimensional = false;
                    } else if (cv == r - 1) {
                        if (hw.kac_dynkin[n - 2] != 0 || hw.kac_dynkin[n - 1] != 0)
                            hw.finite_dimensional = false;
                    }
                }
            }
            return hw;
        }
        case RootFamily::C: {
            // osp(2|2s): [1,s]-hook, branch unused
            if (!mu.in_hook(1, s)) throw std::invalid_argument("diagram outside [1,s]-hook");
            hw.lambda.push_back(Rational(mu.part(1)));
            for (int j = 1; j <= s; ++j) hw.lambda.push_back(maxz(muc.part(j) - s));
            int n = s + 1;
            for (int j = 1; j <= n; ++j) {
                if (j == 1) hw.kac_dynkin.push_back(hw.lambda[0] + hw.lambda[1]);
                else if (j == n) hw.kac_dynkin.push_back(hw.lambda[n - 1]);
                else hw.kac_dynkin.push_back(hw.lambda[j - 1] - hw.lambda[j]);
            }
            hw.finite_dimensional = true;
            for (int j = 2; j <= n; ++j)
                if (hw.kac_dynkin[j - 1] < 0 || hw.kac_dynkin[j - 1].get_den() != 1)
                    hw.finite_dimensional = false;
            return hw;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace qfold
