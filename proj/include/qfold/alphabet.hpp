#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfold {

using IndexSet = std::vector<int>;  // sorted, unique, values in 1..M+N

inline IndexSet sorted_set(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

/// Graded index set J = B ⊔ F of gl(M|N) with the star involution and the
/// parity grading p_a.
class GradedAlphabet {
public:
    GradedAlphabet() = default;
    GradedAlphabet(int M, int N) : M_(M), N_(N) {
        if (M < 0 || N < 0) throw std::invalid_argument("negative alphabet size");
    }

    int M() const { return M_; }
    int N() const { return N_; }
    int size() const { return M_ + N_; }

    bool is_boson(int a) const { return a >= 1 && a <= M_; }
    bool is_fermion(int a) const { return a > M_ && a <= M_ + N_; }
    int parity(int a) const {
        if (is_boson(a)) return 1;
        if (is_fermion(a)) return -1;
        throw std::out_of_range("index outside alphabet");
    }

    int star(int a) const {
        if (is_boson(a)) return M_ + 1 - a;
        if (is_fermion(a)) return 2 * M_ + N_ + 1 - a;
        throw std::out_of_range("index outside alphabet");
    }

    IndexSet star(const IndexSet& I) const {
        IndexSet out;
        out.reserve(I.size());
        for (int a : I) out.push_back(star(a));
        return sorted_set(std::move(out));
    }

    IndexSet full() const {
        IndexSet out(size());
        for (int i = 0; i < size(); ++i) out[i] = i + 1;
        return out;
    }

    IndexSet complement(const IndexSet& I) const {
        IndexSet out;
        std::size_t k = 0;
        for (int a = 1; a <= size(); ++a) {
            if (k < I.size() && I[k] == a) { ++k; continue; }
            out.push_back(a);
        }
        return out;
    }

    /// sigma(I) = J \ I*.
    IndexSet sigma(const IndexSet& I) const { return complement(star(I)); }

    /// Acceptable set: a in I implies a* not in I.
    bool acceptable(const IndexSet& I) const {
        std::set<int> s(I.begin(), I.end());
        for (int a : I)
            if (s.count(star(a))) return false;
        return true;
    }

    /// Fixed points of the star map (at most one in B and one in F).
    std::vector<int> star_fixed() const {
        std::vector<int> out;
        for (int a = 1; a <= size(); ++a)
            if (star(a) == a) out.push_back(a);
        return out;
    }

private:
    int M_ = 0, N_ = 0;
};

/// A nesting path: a permutation tuple of (1..M+N) together with its prefix
/// sets I_a. Q-function labels are the prefixes read as sets.
class NestingPath {
public:
    NestingPath() = default;
    NestingPath(GradedAlphabet alphabet, std::vector<int> tuple)
        : alphabet_(alphabet), tuple_(std::move(tuple)) {
        if ((int)tuple_.size() != alphabet_.size()) throw std::invalid_argument("tuple size mismatch");
        std::vector<int> chk = tuple_;
        std::sort(chk.begin(), chk.end());
        for (int i = 0; i < (int)chk.size(); ++i)
            if (chk[i] != i + 1) throw std::invalid_argument("tuple is not a permutation");
    }

    const GradedAlphabet& alphabet() const { return alphabet_; }
    const std::vector<int>& tuple() const { return tuple_; }
    int size() const { return (int)tuple_.size(); }
    int at(int k) const { return tuple_.at(k - 1); }  // i_k, 1-based

    IndexSet prefix(int a) const {
        if (a < 0 || a > size()) throw std::out_of_range("prefix length");
        return sorted_set(std::vector<int>(tuple_.begin(), tuple_.begin() + a));
    }

    /// (i_1, .., i_{a-1}, i_{a+1}): the particle-hole partner label at slot a.
    IndexSet tilde(int a) const {
        if (a < 1 || a >= size()) throw std::out_of_range("tilde slot");
        IndexSet s(tuple_.begin(), tuple_.begin() + a - 1);
        s.push_back(tuple_[a]);  // i_{a+1}
        return sorted_set(std::move(s));
    }

    /// Prefix with the a-th entry replaced by its star.
    IndexSet breve(int a) const {
        if (a < 1 || a > size()) throw std::out_of_range("breve slot");
        IndexSet s(tuple_.begin(), tuple_.begin() + a - 1);
        s.push_back(alphabet_.star(tuple_[a - 1]));
        return sorted_set(std::move(s));
    }

    NestingPath with_swapped_values(int x, int y) const {
        std::vector<int> t = tuple_;
        for (int& v : t) {
            if (v == x) v = y;
            else if (v == y) v = x;
        }
        return NestingPath(alphabet_, std::move(t));
    }

    bool symmetric() const {
        int n = size();
        for (int k = 1; k <= n; ++k)
            if (alphabet_.star(at(k)) != at(n + 1 - k)) return false;
        return true;
    }

    /// Almost symmetric (MN odd): symmetric away from the two centre slots,
    /// which hold the two star-fixed points in either order.
    bool almost_symmetric() const {
        int n = size();
        if (n % 2 != 0) return false;
        auto fx = alphabet_.star_fixed();
        if (fx.size() != 2) return false;
        for (int k = 1; k <= n; ++k) {
            if (k == n / 2 || k == n / 2 + 1) continue;
            if (alphabet_.star(at(k)) != at(n + 1 - k)) return false;
        }
        std::vector<int> centre = {at(n / 2), at(n / 2 + 1)};
        std::sort(centre.begin(), centre.end());
        return centre == fx;
    }

    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < size(); ++i) {
            if (i) s += ",";
            s += std::to_string(tuple_[i]);
        }
        return s + ")";
    }

private:
    GradedAlphabet alphabet_;
    std::vector<int> tuple_;
};

/// All symmetric nesting paths (or almost-symmetric ones when MN is odd).
inline std::vector<NestingPath> symmetric_paths(const GradedAlphabet& al) {
    int n = al.size();
    std::vector<NestingPath> out;
    bool mn_odd = (al.M() % 2 == 1) && (al.N() % 2 == 1);
    int half = mn_odd ? (n - 2) / 2 : n / 2;

    std::vector<int> tuple;
    std::vector<bool> used(n + 1, false);
    auto fixed = al.star_fixed();

    // Recursive fill of the free first `half` slots; mirror determines the rest.
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == half) {
            if (mn_odd) {
                for (int order = 0; order < 2; ++order) {
                    std::vector<int> t = tuple;
                    t.push_back(fixed[order]);
                    t.push_back(fixed[1 - order]);
                    for (int k = half; k >= 1; --k) t.push_back(al.star(tuple[k - 1]));
                    out.push_back(NestingPath(al, t));
                }
            } else {
                std::vector<int> t = tuple;
                if (n % 2 == 1) t.push_back(fixed.at(0));
                for (int k = half; k >= 1; --k) t.push_back(al.star(tuple[k - 1]));
                out.push_back(NestingPath(al, t));
            }
            return;
        }
        for (int a = 1; a <= n; ++a) {
            if (used[a] || used[al.star(a)] || al.star(a) == a) continue;
            used[a] = used[al.star(a)] = true;
            tuple.push_back(a);
            self(self, depth + 1);
            tuple.pop_back();
            used[a] = used[al.star(a)] = false;
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace qfold
