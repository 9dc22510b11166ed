#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfold {

/// Integer partition with trimmed zero tail; doubles as its Young diagram.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<int> parts) : parts_(parts) { normalize(); }
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) { normalize(); }

    static Partition rectangle(int height, int width) {
        if (height < 0 || width < 0) throw std::invalid_argument("negative rectangle");
        if (width == 0) return Partition{};
        return Partition(std::vector<int>(height, width));
    }

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return (int)parts_.size(); }
    int part(int i) const { return i >= 1 && i <= length() ? parts_[i - 1] : 0; }  // 1-based
    int width() const { return parts_.empty() ? 0 : parts_[0]; }
    int size() const {
        int s = 0;
        for (int p : parts_) s += p;
        return s;
    }
    bool empty() const { return parts_.empty(); }

    Partition conjugate() const {
        if (parts_.empty()) return {};
        std::vector<int> c(parts_[0], 0);
        for (int p : parts_)
            for (int j = 0; j < p; ++j) c[j]++;
        return Partition(std::move(c));
    }

    bool contains(const Partition& inner) const {
        for (int i = 1; i <= inner.length(); ++i)
            if (inner.part(i) > part(i)) return false;
        return true;
    }

    /// mu_{a+1} <= b, i.e. the diagram fits the [a,b]-hook.
    bool in_hook(int a, int b) const { return part(a + 1) <= b; }

    friend bool operator==(const Partition& x, const Partition& y) { return x.parts_ == y.parts_; }
    friend bool operator<(const Partition& x, const Partition& y) { return x.parts_ < y.parts_; }

    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < (int)parts_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts_[i]);
        }
        return s + ")";
    }

    /// All partitions with at most `rows` rows and parts at most `cols`.
    static std::vector<Partition> all_in_rectangle(int rows, int cols) {
        std::vector<Partition> out;
        std::vector<int> cur;
        enumerate(rows, cols, cur, out);
        return out;
    }

private:
    static void enumerate(int rows, int maxpart, std::vector<int>& cur, std::vector<Partition>& out) {
        out.push_back(Partition(cur));
        if ((int)cur.size() == rows) return;
        int hi = cur.empty() ? maxpart : cur.back();
        for (int p = hi; p >= 1; --p) {
            cur.push_back(p);
            enumerate(rows, maxpart, cur, out);
            cur.pop_back();
        }
    }

    void normalize() {
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
        for (std::size_t i = 0; i + 1 < parts_.size(); ++i)
            if (parts_[i] < parts_[i + 1]) throw std::invalid_argument("not weakly decreasing");
        for (int p : parts_)
            if (p < 0) throw std::invalid_argument("negative part");
    }

    std::vector<int> parts_;
};

/// Skew diagram lambda subset mu, cells addressed by coordinates on mu.
struct SkewDiagram {
    Partition outer;  // mu
    Partition inner;  // lambda

    SkewDiagram() = default;
    SkewDiagram(Partition mu, Partition lambda = {}) : outer(std::move(mu)), inner(std::move(lambda)) {
        if (!outer.contains(inner)) throw std::invalid_argument("inner not contained in outer");
    }

    bool has_cell(int i, int j) const {  // 1-based row i, column j
        return j <= outer.part(i) && j > inner.part(i);
    }

    /// Row-major list of cells (i, j).
    std::vector<std::pair<int, int>> cells() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 1; i <= outer.length(); ++i)
            for (int j = inner.part(i) + 1; j <= outer.part(i); ++j) out.push_back({i, j});
        return out;
    }

    /// Whether the skew shape contains an (h x w) rectangle of cells.
    bool contains_rectangle(int h, int w) const {
        if (h <= 0 || w <= 0) return true;
        for (int i = 1; i + h - 1 <= outer.length(); ++i) {
            // rows i..i+h-1 must share w consecutive columns
            int lo = 0, hi = 1 << 28;
            for (int k = i; k < i + h; ++k) {
                lo = std::max(lo, inner.part(k) + 1);
                hi = std::min(hi, outer.part(k));
            }
            if (hi - lo + 1 >= w) return true;
        }
        return false;
    }
};

/// (m,n)-index of a Young diagram: min{ j >= 1 | mu_j + m - j <= n - 1 }.
inline int xi_index(int m, int n, const Partition& mu) {
    if (m < 0 || n < 0) throw std::invalid_argument("xi_index wants m, n >= 0");
    for (int j = 1;; ++j)
        if (mu.part(j) + m - j <= n - 1) return j;
}

}  // namespace qfold
