#pragma once

#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "bethe.hpp"
#include "qexpr.hpp"

namespace qfold {

struct StrapEdge {
    int from = 0, to = 0;
    int level = 0;  // 1-based F index
    Shift shift{};
};

/// Bethe-strap graph: nodes are canonical signed terms (products of X-type
/// factors); each edge realizes to = from * F_level^{[shift]} applied to one
/// factor, pairing the matching simple-pole slot of both ends.
struct StrapGraph {
    std::vector<Term> nodes;
    std::vector<StrapEdge> edges;
    bool closed = true;
    std::vector<std::pair<int, Shift>> frontier;

    QExpr node_sum() const {
        QExpr out;
        for (const auto& n : nodes) out.add_term(n);
        return out;
    }

    std::multiset<std::pair<int, int>> edge_labels() const {
        std::multiset<std::pair<int, int>> out;
        for (const auto& e : edges) out.insert({e.level, e.shift.offset.twice});
        return out;
    }

    std::string dot(const std::string& name = "strap") const {
        std::ostringstream os;
        os << "digraph " << name << " {\n  rankdir=LR;\n";
        for (std::size_t i = 0; i < nodes.size(); ++i)
            os << "  n" << i << " [label=\"" << nodes[i].str() << "\"];\n";
        for (const auto& e : edges) {
            os << "  n" << e.from << " -> n" << e.to << " [label=\"F" << e.level;
            if (e.shift.offset.twice || e.shift.eta) os << e.shift.str();
            os << "\"];\n";
        }
        os << "}\n";
        return os.str();
    }
};

namespace strap_detail {

inline Term product_of(const std::vector<Term>& factors) {
    Term acc;
    for (const auto& f : factors) acc = acc * f;
    return acc;
}

inline std::string shape_key(const Term& t) {
    Term u = t;
    u.coeff = 1;
    return u.str();
}

/// Denominator slots (level, shift) of a factor, with multiplicity.
inline std::vector<std::pair<int, Shift>> factor_poles(const Term& f,
                                                       const std::vector<SymbolKey>& keys,
                                                       const std::set<SymbolKey>& excluded) {
    std::vector<std::pair<int, Shift>> out;
    for (const auto& [q, k] : f.qfac) {
        if (k >= 0) continue;
        SymbolKey sk{q.base, q.folded};
        if (excluded.count(sk)) continue;
        for (std::size_t a = 0; a < keys.size(); ++a)
            if (keys[a] == sk)
                for (int rep = 0; rep < -k; ++rep) out.push_back({(int)a, q.shift});
    }
    return out;
}

inline bool has_pole(const Term& f, const SymbolKey& key, Shift sh) {
    auto it = f.qfac.find(QSymbol(key.base, sh, key.folded));
    return it != f.qfac.end() && it->second < 0;
}

/// Shift-and-sign normalized shape: used to recognize a term as a shifted
/// copy of one of the catalog atoms (X- or Omega-type single terms).
inline std::string normalized_shape(const Term& t) {
    Term u = t;
    u.coeff = abs(u.coeff);
    if (!u.qfac.empty()) {
        Shift base = u.qfac.begin()->first.shift;
        Shift sub(-base.offset, 0);
        u = u.shifted(sub);
    }
    return u.str();
}

}  // namespace strap_detail

/// Breadth-first closure of the strap rule, one X-factor at a time: a pole
/// slot Q_(a)^{[xi]} of a factor pairs with the factor stepped by
/// F_a^{[xi]} (or its inverse); the step must land on a shifted copy of one
/// of the catalog atoms and share the pole. Edges point along forward
/// F-multiplication; vacuum labels are excluded.
inline StrapGraph strap_expand(const std::vector<Term>& top_factors,
                               const std::vector<SymbolKey>& level_keys,
                               const std::vector<QExpr>& F, const std::vector<QExpr>& atoms,
                               int budget = 128, const std::set<SymbolKey>& excluded = {}) {
    using namespace strap_detail;
    StrapGraph g;
    std::vector<std::vector<Term>> factor_lists;
    std::map<std::string, int> index;
    // matched pole budget per node and slot key
    std::map<int, std::map<std::pair<int, std::pair<int, int>>, int>> matched;

    auto add_node = [&](const std::vector<Term>& fs) -> std::pair<int, bool> {
        Term prod = product_of(fs);
        auto key = shape_key(prod);
        auto it = index.find(key);
        if (it != index.end()) {
            if (!(g.nodes[it->second].coeff == prod.coeff))
                throw std::logic_error("strap node sign conflict");
            return {it->second, false};
        }
        int id = (int)g.nodes.size();
        g.nodes.push_back(prod);
        factor_lists.push_back(fs);
        index[key] = id;
        return {id, true};
    };

    std::set<std::string> atom_shapes;
    for (const auto& a : atoms) {
        if (a.size() != 1) throw std::invalid_argument("atoms must be single terms");
        atom_shapes.insert(normalized_shape(a.terms()[0]));
    }
    auto [top_id, fresh] = add_node(top_factors);
    (void)fresh;
    std::deque<int> queue{top_id};
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        const std::vector<Term> fs = factor_lists[cur];
        for (std::size_t fi = 0; fi < fs.size(); ++fi) {
            auto poles = factor_poles(fs[fi], level_keys, excluded);
            for (const auto& [lvl, sh] : poles) {
                auto slot = std::make_pair(lvl, std::make_pair(sh.offset.twice, sh.eta));
                // total multiplicity of this slot over all factors
                int total = 0;
                for (const auto& f2 : fs)
                    for (const auto& p2 : factor_poles(f2, level_keys, excluded))
                        if (p2.first == lvl && p2.second == sh) ++total;
                if (matched[cur][slot] >= total) continue;
                if ((int)g.nodes.size() >= budget) {
                    g.closed = false;
                    g.frontier.push_back({lvl, sh});
                    continue;
                }
                // forward or inverse step, selected by landing on an atom
                // that shares the pole
                auto try_step = [&](bool forward) -> std::optional<Term> {
                    QExpr prod = forward ? QExpr(fs[fi]) * F[lvl].shifted(sh)
                                         : QExpr(fs[fi]) * F[lvl].shifted(sh).inverse_term();
                    if (prod.size() != 1) return std::nullopt;
                    Term cand = prod.terms()[0];
                    if (!has_pole(cand, level_keys[lvl], sh)) return std::nullopt;
                    if (!atom_shapes.count(normalized_shape(cand))) return std::nullopt;
                    return cand;
                };
                auto fwd = try_step(true);
                auto inv = try_step(false);
                if (fwd && inv) throw std::logic_error("ambiguous strap step");
                if (!fwd && !inv) continue;  // pole cancels inside this factor pair structure
                std::vector<Term> nfs = fs;
                nfs[fi] = fwd ? *fwd : *inv;
                auto [to, is_new] = add_node(nfs);
                if (is_new) queue.push_back(to);
                int from_id = fwd ? cur : to;
                int to_id = fwd ? to : cur;
                g.edges.push_back({from_id, to_id, lvl + 1, sh});
                matched[cur][slot]++;
                matched[to][slot]++;
            }
        }
    }
    return g;
}

/// Single-factor convenience overload.
inline StrapGraph strap_expand(const Term& top, const std::vector<SymbolKey>& level_keys,
                               const std::vector<QExpr>& F, const std::vector<QExpr>& atoms,
                               int budget = 128, const std::set<SymbolKey>& excluded = {}) {
    return strap_expand(std::vector<Term>{top}, level_keys, F, atoms, budget, excluded);
}

/// All X-functions of a family as strap atoms.
inline std::vector<QExpr> x_atoms(const XFamily& fam) {
    std::vector<QExpr> out;
    for (int a = 1; a <= fam.positions(); ++a) {
        QExpr x = x_function(fam, a);
        if (x.size() == 1) out.push_back(x);
    }
    return out;
}

/// Verdict data of a strap / T-function comparison.
struct StrapCompare {
    bool equal = false;
    std::size_t only_graph = 0, only_reference = 0;

    static StrapCompare run(const StrapGraph& g, const QExpr& reference) {
        StrapCompare out;
        QExpr diff = g.node_sum() - reference;
        out.equal = diff.is_zero();
        QExpr sum = g.node_sum();
        std::set<std::string> ref;
        for (const auto& t : reference.terms()) ref.insert(t.str());
        for (const auto& t : sum.terms())
            if (!ref.count(t.str())) out.only_graph++;
        std::set<std::string> got;
        for (const auto& t : sum.terms()) got.insert(t.str());
        for (const auto& t : reference.terms())
            if (!got.count(t.str())) out.only_reference++;
        return out;
    }
};

namespace strap_detail {

inline void append_factor(std::vector<Term>& fs, const QExpr& x) {
    if (x.size() != 1) throw std::logic_error("top factor is not a single term");
    fs.push_back(x.terms()[0]);
}

}  // namespace strap_detail

/// Highest-weight top factors for osp(2r+1|2s) on the distinguished-like
/// tuple: column blocks from the fermionic tail, row blocks from the
/// bosonic block.
inline std::vector<Term> strap_top_ospB(const XFamily& fam, int r, int s, const Partition& mu) {
    Partition muc = mu.conjugate();
    int mu1 = mu.width(), mu1c = muc.width();
    std::vector<Term> fs;
    for (int k = 1; k <= s; ++k)
        for (int j = 1; j <= muc.part(k); ++j)
            strap_detail::append_factor(
                fs, Rational(-1) * x_function(fam, 2 * r + 2 * s + 2 - k)
                                       .shifted(Shift::of(-mu1 + mu1c - 2 * j + 2 * k)));
    for (int j = 1; j <= r; ++j)
        for (int k = s + 1; k <= mu.part(j); ++k)
            strap_detail::append_factor(
                fs, x_function(fam, 2 * r + s + 2 - j).shifted(Shift::of(-mu1 + mu1c - 2 * j + 2 * k)));
    return fs;
}

/// osp(2r|2s), plus and minus branches.
inline std::vector<Term> strap_top_ospD(const XFamily& fam, int r, int s, const Partition& mu,
                                        bool plus) {
    Partition muc = mu.conjugate();
    int mu1 = mu.width(), mu1c = muc.width();
    std::vector<Term> fs;
    for (int k = 1; k <= s; ++k)
        for (int j = 1; j <= muc.part(k); ++j)
            strap_detail::append_factor(
                fs, Rational(-1) * x_function(fam, 2 * r + 2 * s + 3 - k)
                                       .shifted(Shift::of(-mu1 + mu1c - 2 * j + 2 * k)));
    int top_rows = plus ? r : r - 1;
    for (int j = 1; j <= top_rows; ++j)
        for (int k = s + 1; k <= mu.part(j); ++k)
            strap_detail::append_factor(
                fs, x_function(fam, 2 * r + s + 3 - j).shifted(Shift::of(-mu1 + mu1c - 2 * j + 2 * k)));
    if (!plus)
        for (int k = s + 1; k <= mu.part(r); ++k)
            strap_detail::append_factor(
                fs, x_function(fam, r + s).shifted(Shift::of(-mu1 + mu1c - 2 * r + 2 * k)));
    return fs;
}

/// osp(2|2s) on the special tuple (first row at position 2s+4).
inline std::vector<Term> strap_top_ospC(const XFamily& fam, int s, const Partition& mu) {
    Partition muc = mu.conjugate();
    int mu1 = mu.width(), mu1c = muc.width();
    std::vector<Term> fs;
    for (int k = 1; k <= mu1; ++k)
        strap_detail::append_factor(fs,
                                    x_function(fam, 2 * s + 4).shifted(Shift::of(-mu1 + mu1c - 2 + 2 * k)));
    for (int k = 1; k <= s; ++k)
        for (int j = 2; j <= muc.part(k); ++j)
            strap_detail::append_factor(
                fs, Rational(-1) *
                        x_function(fam, 2 * s + 4 - k).shifted(Shift::of(-mu1 + mu1c - 2 * j + 2 * k)));
    return fs;
}

/// Deformed one-row top for osp(2|2s), m >= s+1.
inline std::vector<Term> strap_top_ospC_tilde(const XFamily& fam, int s, int m) {
    std::vector<Term> fs;
    for (int k = 1; k <= std::min(m - s - 1, s); ++k)
        strap_detail::append_factor(fs, x_function(fam, 2 * s + 4).shifted(Shift::of(-m + 2 * k - 1)));
    for (int k = std::max(m - s, 1); k <= s; ++k)
        strap_detail::append_factor(
            fs, Rational(-1) * x_function(fam, m + s + 3 - k).shifted(Shift::of(-m + 2 * k - 1)));
    for (int k = s + 1; k <= m; ++k)
        strap_detail::append_factor(fs, x_function(fam, 1).shifted(Shift::of(-m + 2 * k - 1)));
    return fs;
}

}  // namespace qfold
