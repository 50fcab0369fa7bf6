// Satisfiability and subsumption for concept expressions over an acyclic
// terminology, via a tableau with lazy unfolding.
//
// Expansion strategy: conjunctions and unfolding first, then disjunction
// branching, then role successors.  A primitive specialization A < C
// contributes C to every node containing A and nothing to nodes containing
// (not A); a definition A = C contributes C for A and the negated right side
// for (not A).  Acyclicity bounds the unfolding depth, so no blocking is
// needed.

#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "palc/concepts.hpp"
#include "palc/terminology.hpp"

namespace palc {

class TableauReasoner {
public:
    explicit TableauReasoner(const Terminology& terminology) : term_(&terminology) {}

    bool is_satisfiable(const Concept& c) { return is_satisfiable_all({c}); }

    bool is_satisfiable_all(const std::vector<Concept>& cs) {
        std::vector<Concept> set;
        set.reserve(cs.size());
        for (const Concept& c : cs) set.push_back(to_nnf(c));
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end(),
                              [](const Concept& a, const Concept& b) { return a == b; }),
                  set.end());
        return sat_set(std::move(set));
    }

    // True when every instance of `subsumee` is an instance of `subsumer`.
    bool subsumes(const Concept& subsumer, const Concept& subsumee) {
        return !is_satisfiable_all({subsumee, Concept::negation(subsumer)});
    }

    bool disjoint(const Concept& a, const Concept& b) { return !is_satisfiable_all({a, b}); }

    bool equivalent(const Concept& a, const Concept& b) {
        return subsumes(a, b) && subsumes(b, a);
    }

    std::size_t cache_size() const { return memo_.size(); }

    const Terminology& terminology() const { return *term_; }

private:
    struct SetHash {
        std::size_t operator()(const std::vector<Concept>& v) const {
            std::size_t h = v.size();
            for (const Concept& c : v) h ^= c.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            return h;
        }
    };
    struct SetEq {
        bool operator()(const std::vector<Concept>& a, const std::vector<Concept>& b) const {
            if (a.size() != b.size()) return false;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (!(a[i] == b[i])) return false;
            return true;
        }
    };

    // `set` is sorted, duplicate-free, and in negation normal form.
    bool sat_set(std::vector<Concept> set) {
        auto it = memo_.find(set);
        if (it != memo_.end()) return it->second;
        std::vector<Concept> label;
        std::vector<Concept> pending_or;
        std::vector<Concept> todo(set.rbegin(), set.rend());
        bool result = expand(std::move(label), std::move(pending_or), std::move(todo));
        memo_.emplace(std::move(set), result);
        return result;
    }

    static bool contains(const std::vector<Concept>& v, const Concept& c) {
        for (const Concept& x : v)
            if (x == c) return true;
        return false;
    }

    bool expand(std::vector<Concept> label, std::vector<Concept> pending_or,
                std::vector<Concept> todo) {
        while (!todo.empty()) {
            Concept c = std::move(todo.back());
            todo.pop_back();
            switch (c.kind()) {
                case ConceptKind::Top: continue;
                case ConceptKind::Bottom: return false;
                case ConceptKind::Symbol: {
                    if (contains(label, c)) continue;
                    if (contains(label, Concept::negation(c))) return false;
                    label.push_back(c);
                    if (const Axiom* ax = term_->axiom_for(c.symbol_name()))
                        todo.push_back(to_nnf(ax->rhs));
                    continue;
                }
                case ConceptKind::Not: {
                    // In NNF the child is a symbol.
                    if (contains(label, c)) continue;
                    if (contains(label, c.child())) return false;
                    label.push_back(c);
                    const Axiom* ax = term_->axiom_for(c.child().symbol_name());
                    if (ax && ax->kind == AxiomKind::Definition)
                        todo.push_back(negate_nnf(ax->rhs));
                    continue;
                }
                case ConceptKind::And: {
                    for (auto rit = c.children().rbegin(); rit != c.children().rend(); ++rit)
                        todo.push_back(*rit);
                    continue;
                }
                case ConceptKind::Or: {
                    if (!contains(label, c) && !contains(pending_or, c)) pending_or.push_back(c);
                    continue;
                }
                case ConceptKind::Forall:
                case ConceptKind::Exists: {
                    if (!contains(label, c)) label.push_back(c);
                    continue;
                }
            }
        }

        if (!pending_or.empty()) {
            Concept disj = pending_or.front();
            pending_or.erase(pending_or.begin());
            label.push_back(disj);
            for (const Concept& d : disj.children()) {
                std::vector<Concept> branch_todo{d};
                if (expand(label, pending_or, std::move(branch_todo))) return true;
            }
            return false;
        }

        // Role successors: one node per existential, constrained by every
        // universal on the same role.
        for (const Concept& c : label) {
            if (c.kind() != ConceptKind::Exists) continue;
            std::vector<Concept> succ{c.child()};
            for (const Concept& d : label)
                if (d.kind() == ConceptKind::Forall && d.role_name() == c.role_name())
                    succ.push_back(d.child());
            std::sort(succ.begin(), succ.end());
            succ.erase(std::unique(succ.begin(), succ.end(),
                                   [](const Concept& a, const Concept& b) { return a == b; }),
                       succ.end());
            if (!sat_set(std::move(succ))) return false;
        }
        return true;
    }

    const Terminology* term_;
    std::unordered_map<std::vector<Concept>, bool, SetHash, SetEq> memo_;
};

// ── Classification ──────────────────────────────────────────────────────────

// Subsumption hierarchy over the declared concept names.  Class 0 is the top
// class and class 1 the bottom class; their member lists hold declared names
// proven equivalent to top or bottom and may be empty.  Every other class
// lists mutually equivalent names in declaration order.  Edges run from the
// more specific class to the more general one and form the transitive
// reduction of the subsumption order.
struct Hierarchy {
    static constexpr std::size_t kTopClass = 0;
    static constexpr std::size_t kBottomClass = 1;
    std::vector<std::vector<std::string>> classes;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

inline Hierarchy classify(TableauReasoner& reasoner) {
    const Terminology& term = reasoner.terminology();
    Hierarchy h;
    h.classes.resize(2);

    std::vector<std::size_t> middle;  // class ids that are neither top nor bottom
    std::vector<Concept> rep;         // representative concept per class id
    rep.push_back(Concept::top());
    rep.push_back(Concept::bottom());

    for (const std::string& name : term.concept_names()) {
        Concept c = Concept::symbol(name);
        if (!reasoner.is_satisfiable(c)) {
            h.classes[Hierarchy::kBottomClass].push_back(name);
            continue;
        }
        if (reasoner.subsumes(c, Concept::top())) {
            h.classes[Hierarchy::kTopClass].push_back(name);
            continue;
        }
        bool placed = false;
        for (std::size_t id : middle) {
            if (reasoner.equivalent(rep[id], c)) {
                h.classes[id].push_back(name);
                placed = true;
                break;
            }
        }
        if (!placed) {
            middle.push_back(h.classes.size());
            h.classes.push_back({name});
            rep.push_back(c);
        }
    }

    // below[i][j]: class middle[i] is strictly subsumed by class middle[j].
    std::size_t n = middle.size();
    std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) below[i][j] = reasoner.subsumes(rep[middle[j]], rep[middle[i]]);

    for (std::size_t i = 0; i < n; ++i) {
        bool has_parent = false;
        for (std::size_t j = 0; j < n; ++j) {
            if (!below[i][j]) continue;
            bool direct = true;
            for (std::size_t k = 0; k < n && direct; ++k)
                if (k != i && k != j && below[i][k] && below[k][j]) direct = false;
            if (direct) {
                h.edges.emplace_back(middle[i], middle[j]);
                has_parent = true;
            }
        }
        if (!has_parent) h.edges.emplace_back(middle[i], Hierarchy::kTopClass);
        bool has_child = false;
        for (std::size_t j = 0; j < n && !has_child; ++j) has_child = below[j][i];
        if (!has_child) h.edges.emplace_back(Hierarchy::kBottomClass, middle[i]);
    }
    if (n == 0) h.edges.emplace_back(Hierarchy::kBottomClass, Hierarchy::kTopClass);
    return h;
}

}  // namespace palc
