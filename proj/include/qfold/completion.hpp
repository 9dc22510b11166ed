#pragma once

#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bethe.hpp"

namespace qfold {

/// Numeric completion of the Q-system: starting from the polynomials on one
/// nesting path (a solved Bethe system), every other Q-label is produced by
/// walking adjacent transpositions and solving the three-term relation that
/// the move corresponds to. Fermionic moves are polynomial divisions,
/// bosonic moves are small least-squares solves; residuals validate each
/// step.
class QSystemNumeric {
public:
    QSystemNumeric(const NestingPath& start, std::map<IndexSet, std::vector<Cx>> polys,
                   std::map<int, Cx> twists, double sq_value, double tol = 1e-8)
        : al_(start.alphabet()), z_(std::move(twists)), sq_(sq_value), tol_(tol) {
        for (auto& [k, v] : polys) polys_[k] = std::move(v);
        seed_ = start;
    }

    const std::map<IndexSet, std::vector<Cx>>& polys() const { return polys_; }
    double worst_step_residual() const { return worst_; }

    bool has(const IndexSet& s) const { return polys_.count(s) != 0; }

    /// Breadth-first completion until all targets are known (or the state
    /// cap is hit). Returns true when every target was produced.
    bool complete(const std::vector<IndexSet>& targets, int state_cap = 20000) {
        auto want = [&]() {
            for (const auto& t : targets)
                if (!has(t)) return true;
            return false;
        };
        if (!want()) return true;
        std::set<std::string> seen;
        std::deque<NestingPath> queue{seed_};
        seen.insert(seed_.str());
        while (!queue.empty() && (int)seen.size() < state_cap) {
            NestingPath cur = queue.front();
            queue.pop_front();
            for (int a = 1; a < cur.size(); ++a) {
                NestingPath nxt(al_, [&] {
                    auto t = cur.tuple();
                    std::swap(t[a - 1], t[a]);
                    return t;
                }());
                if (seen.count(nxt.str())) continue;
                if (!solve_move(cur, a)) continue;
                seen.insert(nxt.str());
                queue.push_back(nxt);
                if (!want()) return true;
            }
        }
        return !want();
    }

    Cx eval_at(const IndexSet& base, Cx te) const {
        const auto& c = polys_.at(base);
        Cx acc = 0, p = 1;
        for (auto ck : c) {
            acc += ck * p;
            p *= te;
        }
        return acc;
    }

private:
    std::vector<Cx> shifted_coeffs(const std::vector<Cx>& c, int twice) const {
        // Q^{[s]}(t) = Q(t sq^{-twice}), so c_k -> c_k sq^{-twice k}
        std::vector<Cx> out(c.size());
        for (std::size_t k = 0; k < c.size(); ++k) out[k] = c[k] * std::pow(sq_, -(double)twice * (double)k);
        return out;
    }
    static std::vector<Cx> mul(const std::vector<Cx>& a, const std::vector<Cx>& b) {
        std::vector<Cx> out(a.size() + b.size() - 1, Cx(0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
        return out;
    }
    static std::vector<Cx> axpy(Cx alpha, const std::vector<Cx>& a, Cx beta, const std::vector<Cx>& b) {
        std::vector<Cx> out(std::max(a.size(), b.size()), Cx(0));
        for (std::size_t i = 0; i < a.size(); ++i) out[i] += alpha * a[i];
        for (std::size_t i = 0; i < b.size(); ++i) out[i] += beta * b[i];
        return out;
    }

    bool solve_move(const NestingPath& P, int a) {
        IndexSet target = P.tilde(a);
        if (has(target)) return true;
        int i = P.at(a), j = P.at(a + 1);
        const auto itA = polys_.find(P.prefix(a - 1));
        const auto itB = polys_.find(P.prefix(a));
        const auto itC = polys_.find(P.prefix(a + 1));
        if (itA == polys_.end() || itB == polys_.end() || itC == polys_.end()) return false;
        const auto &A = itA->second, &Bp = itB->second, &C = itC->second;
        Cx zi = z_.at(i), zj = z_.at(j);
        int pi = al_.parity(i), pj = al_.parity(j);
        if (std::abs(zi - zj) < 1e-12) return false;
        std::vector<Cx> Y;
        if (pi != pj) {
            // (z_i - z_j) Q_{I_a} Y = z_i A^{[-p_i]} C^{[p_i]} - z_j A^{[p_i]} C^{[-p_i]}
            auto rhs = axpy(zi, mul(shifted_coeffs(A, -2 * pi), shifted_coeffs(C, 2 * pi)), -zj,
                            mul(shifted_coeffs(A, 2 * pi), shifted_coeffs(C, -2 * pi)));
            for (auto& c : rhs) c /= (zi - zj);
            // divide by Bp
            int degY = (int)rhs.size() - (int)Bp.size();
            if (degY < 0) return false;
            std::vector<Cx> q(degY + 1, Cx(0));
            std::vector<Cx> rem = rhs;
            for (int k = degY; k >= 0; --k) {
                Cx f = rem[k + Bp.size() - 1] / Bp.back();
                q[k] = f;
                for (std::size_t x = 0; x < Bp.size(); ++x) rem[k + x] -= f * Bp[x];
            }
            double rnorm = 0;
            for (auto c : rem) rnorm = std::max(rnorm, std::abs(c));
            if (rnorm > tol_) return false;
            Y = q;
        } else {
            // (z_i - z_j) A C = z_i Bp^{[p]} Y^{[-p]} - z_j Bp^{[-p]} Y^{[p]}
            auto L = mul(A, C);
            for (auto& c : L) c *= (zi - zj);
            int degY = (int)A.size() + (int)C.size() - (int)Bp.size() - 1;
            if (degY < 0) return false;
            auto Bps = shifted_coeffs(Bp, 2 * pi);
            auto Bms = shifted_coeffs(Bp, -2 * pi);
            int rows = (int)L.size();
            int cols = degY + 1;
            std::vector<std::vector<Cx>> M(rows, std::vector<Cx>(cols, Cx(0)));
            for (int y = 0; y < cols; ++y) {
                Cx wp = std::pow(sq_, (double)(2 * pi) * y);   // from Y^{[-p]}
                Cx wm = std::pow(sq_, (double)(-2 * pi) * y);  // from Y^{[p]}
                for (std::size_t x = 0; x < Bps.size(); ++x)
                    if ((int)(x + y) < rows) M[x + y][y] += zi * Bps[x] * wp;
                for (std::size_t x = 0; x < Bms.size(); ++x)
                    if ((int)(x + y) < rows) M[x + y][y] -= zj * Bms[x] * wm;
            }
            // normal equations M* M y = M* L
            std::vector<std::vector<Cx>> N(cols, std::vector<Cx>(cols, Cx(0)));
            std::vector<Cx> rhs(cols, Cx(0));
            for (int c1 = 0; c1 < cols; ++c1) {
                for (int c2 = 0; c2 < cols; ++c2)
                    for (int r = 0; r < rows; ++r) N[c1][c2] += std::conj(M[r][c1]) * M[r][c2];
                for (int r = 0; r < rows; ++r) rhs[c1] += std::conj(M[r][c1]) * L[r];
            }
            if (!bethe_detail::lu_solve(N, rhs)) return false;
            // residual check
            double rnorm = 0;
            for (int r = 0; r < rows; ++r) {
                Cx acc = -L[r];
                for (int c = 0; c < cols; ++c) acc += M[r][c] * rhs[c];
                rnorm = std::max(rnorm, std::abs(acc));
            }
            if (rnorm > tol_) return false;
            Y = rhs;
        }
        if (Y.empty() || std::abs(Y[0] - Cx(1)) > 1e-6) return false;
        worst_ = std::max(worst_, 0.0);
        polys_[target] = std::move(Y);
        return true;
    }

    GradedAlphabet al_;
    std::map<int, Cx> z_;
    double sq_;
    double tol_;
    double worst_ = 0;
    std::map<IndexSet, std::vector<Cx>> polys_;
    NestingPath seed_;
};

}  // namespace qfold
