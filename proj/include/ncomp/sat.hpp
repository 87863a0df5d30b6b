#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <vector>

namespace ncomp {

/// Small DPLL procedure with two watched literals that enumerates every
/// satisfying assignment. Literals are nonzero integers: v+1 for variable v,
/// -(v+1) for its negation.
class SatSolver {
public:
    explicit SatSolver(std::size_t vars) : value_(vars, -1), watches_(2 * vars) {}

    std::size_t variables() const { return value_.size(); }

    void add_clause(std::vector<int> lits) {
        std::vector<int> enc;
        for (int l : lits) {
            int e = encode(l);
            bool dup = false;
            for (int x : enc) {
                if (x == e) dup = true;
                if (x == (e ^ 1)) tautology_ = true;
            }
            if (tautology_) {
                tautology_ = false;
                return;
            }
            if (!dup) enc.push_back(e);
        }
        if (enc.empty()) {
            unsat_ = true;
            return;
        }
        if (enc.size() == 1) {
            units_.push_back(enc[0]);
            return;
        }
        auto id = clauses_.size();
        watches_[static_cast<std::size_t>(enc[0])].push_back(id);
        watches_[static_cast<std::size_t>(enc[1])].push_back(id);
        clauses_.push_back(std::move(enc));
    }

    /// Calls `on_model` with the full assignment of every model; branching
    /// follows variable order.
    void enumerate(const std::function<void(const std::vector<bool>&)>& on_model) {
        if (unsat_) return;
        for (int u : units_) {
            if (!assign(u)) return;
        }
        search(on_model);
    }

private:
    static int encode(int lit) { return 2 * (std::abs(lit) - 1) + (lit < 0 ? 1 : 0); }
    int        lit_value(int e) const {
        int v = value_[static_cast<std::size_t>(e >> 1)];
        if (v < 0) return -1;
        return (e & 1) ? 1 - v : v;
    }
    bool assign(int e) {
        int cur = lit_value(e);
        if (cur == 1) return true;
        if (cur == 0) return false;
        value_[static_cast<std::size_t>(e >> 1)] = (e & 1) ? 0 : 1;
        trail_.push_back(e);
        return true;
    }
    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            value_[static_cast<std::size_t>(trail_.back() >> 1)] = -1;
            trail_.pop_back();
        }
        head_ = std::min(head_, mark);
    }
    bool propagate() {
        while (head_ < trail_.size()) {
            int   falsified = trail_[head_++] ^ 1;
            auto& ws        = watches_[static_cast<std::size_t>(falsified)];
            for (std::size_t i = 0; i < ws.size();) {
                auto& c = clauses_[ws[i]];
                if (c[0] == falsified) std::swap(c[0], c[1]);
                if (lit_value(c[0]) == 1) {
                    ++i;
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < c.size(); ++k) {
                    if (lit_value(c[k]) != 0) {
                        std::swap(c[1], c[k]);
                        watches_[static_cast<std::size_t>(c[1])].push_back(ws[i]);
                        ws[i] = ws.back();
                        ws.pop_back();
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                if (!assign(c[0])) return false;
                ++i;
            }
        }
        return true;
    }
    void search(const std::function<void(const std::vector<bool>&)>& on_model) {
        if (!propagate()) return;
        std::size_t v = 0;
        while (v < value_.size() && value_[v] >= 0) ++v;
        if (v == value_.size()) {
            std::vector<bool> m(value_.size());
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = value_[i] == 1;
            on_model(m);
            return;
        }
        for (int polarity : {1, 0}) {
            auto mark = trail_.size();
            assign(static_cast<int>(2 * v) + polarity);
            search(on_model);
            undo(mark);
        }
    }

    std::vector<int>                      value_;
    std::vector<std::vector<std::size_t>> watches_;
    std::vector<std::vector<int>>         clauses_;
    std::vector<int>                      units_;
    std::vector<int>                      trail_;
    std::size_t                           head_      = 0;
    bool                                  unsat_     = false;
    bool                                  tautology_ = false;
};

} // namespace ncomp
