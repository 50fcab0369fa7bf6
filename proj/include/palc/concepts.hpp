// Concept expressions and their normal form.
//
// Concepts are immutable shared trees.  Symbol and role names are stored
// directly in the nodes, so comparison, hashing, and normalization are
// self-contained and stable across runs.
//
// The normal form is: negation normal form, with n-ary conjunctions and
// disjunctions flattened, sorted lexicographically (on a stable prefix
// serialization), duplicates removed, top/bottom absorbed, and directly
// complementary literals collapsed.  It is a cheap deterministic
// representative, not a full semantic canonical form; semantic equivalence
// beyond it is the tableau's job.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace palc {

enum class ConceptKind : std::uint8_t {
    Top,
    Bottom,
    Symbol,
    Not,
    And,
    Or,
    Forall,
    Exists,
};

class Concept {
public:
    Concept() : node_(top().node_) {}

    static Concept top() { return make(ConceptKind::Top, "", "", {}); }
    static Concept bottom() { return make(ConceptKind::Bottom, "", "", {}); }
    static Concept symbol(std::string name) {
        return make(ConceptKind::Symbol, std::move(name), "", {});
    }
    static Concept negation(Concept c) { return make(ConceptKind::Not, "", "", {std::move(c)}); }
    static Concept conjunction(std::vector<Concept> cs) {
        return make(ConceptKind::And, "", "", std::move(cs));
    }
    static Concept conjunction(Concept a, Concept b) {
        return conjunction(std::vector<Concept>{std::move(a), std::move(b)});
    }
    static Concept disjunction(std::vector<Concept> cs) {
        return make(ConceptKind::Or, "", "", std::move(cs));
    }
    static Concept disjunction(Concept a, Concept b) {
        return disjunction(std::vector<Concept>{std::move(a), std::move(b)});
    }
    static Concept forall(std::string role, Concept c) {
        return make(ConceptKind::Forall, "", std::move(role), {std::move(c)});
    }
    static Concept exists(std::string role, Concept c) {
        return make(ConceptKind::Exists, "", std::move(role), {std::move(c)});
    }

    ConceptKind kind() const { return node_->kind; }
    const std::string& symbol_name() const { return node_->symbol; }
    const std::string& role_name() const { return node_->role; }
    const std::vector<Concept>& children() const { return node_->children; }
    const Concept& child(std::size_t i = 0) const { return node_->children[i]; }
    std::size_t hash() const { return node_->hash; }

    bool operator==(const Concept& o) const {
        if (node_ == o.node_) return true;
        if (node_->hash != o.node_->hash || node_->kind != o.node_->kind) return false;
        if (node_->symbol != o.node_->symbol || node_->role != o.node_->role) return false;
        if (node_->children.size() != o.node_->children.size()) return false;
        for (std::size_t i = 0; i < node_->children.size(); ++i)
            if (!(node_->children[i] == o.node_->children[i])) return false;
        return true;
    }
    bool operator!=(const Concept& o) const { return !(*this == o); }

    // Total order mirroring a prefix serialization: kind token first, then
    // symbol/role name, then children lexicographically, then arity.
    static int compare(const Concept& a, const Concept& b) {
        if (a.node_ == b.node_) return 0;
        if (a.kind() != b.kind())
            return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
        if (int c = a.node_->symbol.compare(b.node_->symbol)) return c < 0 ? -1 : 1;
        if (int c = a.node_->role.compare(b.node_->role)) return c < 0 ? -1 : 1;
        std::size_t n = std::min(a.children().size(), b.children().size());
        for (std::size_t i = 0; i < n; ++i)
            if (int c = compare(a.children()[i], b.children()[i])) return c;
        if (a.children().size() != b.children().size())
            return a.children().size() < b.children().size() ? -1 : 1;
        return 0;
    }
    bool operator<(const Concept& o) const { return compare(*this, o) < 0; }

private:
    struct Node {
        ConceptKind kind;
        std::string symbol;
        std::string role;
        std::vector<Concept> children;
        std::size_t hash;
    };

    explicit Concept(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static Concept make(ConceptKind kind, std::string sym, std::string role,
                        std::vector<Concept> children) {
        std::size_t h = 0xcbf29ce484222325ULL;
        auto mix = [&h](std::size_t v) {
            h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        };
        mix(static_cast<std::size_t>(kind));
        mix(std::hash<std::string>{}(sym));
        mix(std::hash<std::string>{}(role));
        for (const Concept& c : children) mix(c.hash());
        auto node = std::make_shared<Node>(
            Node{kind, std::move(sym), std::move(role), std::move(children), h});
        return Concept(std::move(node));
    }

    std::shared_ptr<const Node> node_;
};

struct ConceptHash {
    std::size_t operator()(const Concept& c) const { return c.hash(); }
};

// ── Negation normal form ────────────────────────────────────────────────────

inline Concept to_nnf(const Concept& c);

inline Concept negate_nnf(const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::Top: return Concept::bottom();
        case ConceptKind::Bottom: return Concept::top();
        case ConceptKind::Symbol: return Concept::negation(c);
        case ConceptKind::Not: return to_nnf(c.child());
        case ConceptKind::And: {
            std::vector<Concept> cs;
            cs.reserve(c.children().size());
            for (const Concept& d : c.children()) cs.push_back(negate_nnf(d));
            return Concept::disjunction(std::move(cs));
        }
        case ConceptKind::Or: {
            std::vector<Concept> cs;
            cs.reserve(c.children().size());
            for (const Concept& d : c.children()) cs.push_back(negate_nnf(d));
            return Concept::conjunction(std::move(cs));
        }
        case ConceptKind::Forall: return Concept::exists(c.role_name(), negate_nnf(c.child()));
        case ConceptKind::Exists: return Concept::forall(c.role_name(), negate_nnf(c.child()));
    }
    throw std::logic_error("unreachable concept kind");
}

inline Concept to_nnf(const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::Top:
        case ConceptKind::Bottom:
        case ConceptKind::Symbol: return c;
        case ConceptKind::Not: return negate_nnf(c.child());
        case ConceptKind::And: {
            std::vector<Concept> cs;
            cs.reserve(c.children().size());
            for (const Concept& d : c.children()) cs.push_back(to_nnf(d));
            return Concept::conjunction(std::move(cs));
        }
        case ConceptKind::Or: {
            std::vector<Concept> cs;
            cs.reserve(c.children().size());
            for (const Concept& d : c.children()) cs.push_back(to_nnf(d));
            return Concept::disjunction(std::move(cs));
        }
        case ConceptKind::Forall: return Concept::forall(c.role_name(), to_nnf(c.child()));
        case ConceptKind::Exists: return Concept::exists(c.role_name(), to_nnf(c.child()));
    }
    throw std::logic_error("unreachable concept kind");
}

// ── Normalization ───────────────────────────────────────────────────────────

namespace detail {

// Shared junction cleanup: flatten, sort, dedup, absorb the annihilator and
// identity elements, and collapse a literal next to its complement.
inline Concept normalize_junction(ConceptKind kind, std::vector<Concept> parts) {
    const bool is_and = kind == ConceptKind::And;
    const Concept identity = is_and ? Concept::top() : Concept::bottom();
    const Concept annihilator = is_and ? Concept::bottom() : Concept::top();

    std::vector<Concept> flat;
    for (Concept& p : parts) {
        if (p.kind() == kind) {
            for (const Concept& q : p.children()) flat.push_back(q);
        } else {
            flat.push_back(std::move(p));
        }
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end(),
                           [](const Concept& a, const Concept& b) { return a == b; }),
               flat.end());

    std::vector<Concept> kept;
    kept.reserve(flat.size());
    for (const Concept& p : flat) {
        if (p == annihilator) return annihilator;
        if (p == identity) continue;
        kept.push_back(p);
    }
    for (const Concept& p : kept) {
        if (p.kind() == ConceptKind::Not) {
            const Concept& pos = p.child();
            if (std::binary_search(kept.begin(), kept.end(), pos,
                                   [](const Concept& a, const Concept& b) { return a < b; }))
                return annihilator;
        }
    }
    if (kept.empty()) return identity;
    if (kept.size() == 1) return kept.front();
    return is_and ? Concept::conjunction(std::move(kept)) : Concept::disjunction(std::move(kept));
}

inline Concept normalize_nnf(const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::Top:
        case ConceptKind::Bottom:
        case ConceptKind::Symbol:
        case ConceptKind::Not: return c;  // NNF negations wrap symbols only
        case ConceptKind::And:
        case ConceptKind::Or: {
            std::vector<Concept> cs;
            cs.reserve(c.children().size());
            for (const Concept& d : c.children()) cs.push_back(normalize_nnf(d));
            return normalize_junction(c.kind(), std::move(cs));
        }
        case ConceptKind::Forall: {
            Concept body = normalize_nnf(c.child());
            if (body.kind() == ConceptKind::Top) return Concept::top();
            return Concept::forall(c.role_name(), std::move(body));
        }
        case ConceptKind::Exists: {
            Concept body = normalize_nnf(c.child());
            if (body.kind() == ConceptKind::Bottom) return Concept::bottom();
            return Concept::exists(c.role_name(), std::move(body));
        }
    }
    throw std::logic_error("unreachable concept kind");
}

}  // namespace detail

inline Concept normalize(const Concept& c) { return detail::normalize_nnf(to_nnf(c)); }

// ── Propositional evaluation ────────────────────────────────────────────────

struct NonPropositionalConcept : std::runtime_error {
    explicit NonPropositionalConcept(const std::string& what) : std::runtime_error(what) {}
};

inline bool is_propositional(const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::Forall:
        case ConceptKind::Exists: return false;
        default:
            for (const Concept& d : c.children())
                if (!is_propositional(d)) return false;
            return true;
    }
}

// Evaluates a role-free concept under a truth assignment for its symbols.
// Defined symbols are evaluated as their own signs, not unfolded.
inline bool eval_propositional(const Concept& c,
                               const std::function<bool(const std::string&)>& sign) {
    switch (c.kind()) {
        case ConceptKind::Top: return true;
        case ConceptKind::Bottom: return false;
        case ConceptKind::Symbol: return sign(c.symbol_name());
        case ConceptKind::Not: return !eval_propositional(c.child(), sign);
        case ConceptKind::And:
            for (const Concept& d : c.children())
                if (!eval_propositional(d, sign)) return false;
            return true;
        case ConceptKind::Or:
            for (const Concept& d : c.children())
                if (eval_propositional(d, sign)) return true;
            return false;
        case ConceptKind::Forall:
        case ConceptKind::Exists:
            throw NonPropositionalConcept(
                "role restrictions cannot be evaluated propositionally; "
                "name the expression with a definition axiom first");
    }
    throw std::logic_error("unreachable concept kind");
}

// ── Serialization to the statement grammar ──────────────────────────────────

// N-ary junctions render as left-nested binary applications so the output
// stays inside the binary grammar; parsing it back and normalizing yields the
// original tree.
inline std::string to_text(const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::Top: return "top";
        case ConceptKind::Bottom: return "bottom";
        case ConceptKind::Symbol: return c.symbol_name();
        case ConceptKind::Not: return "(not " + to_text(c.child()) + ")";
        case ConceptKind::And:
        case ConceptKind::Or: {
            const char* op = c.kind() == ConceptKind::And ? "and" : "or";
            std::string acc = to_text(c.children()[0]);
            for (std::size_t i = 1; i < c.children().size(); ++i)
                acc = "(" + std::string(op) + " " + acc + " " + to_text(c.children()[i]) + ")";
            return acc;
        }
        case ConceptKind::Forall:
            return "(all " + c.role_name() + " " + to_text(c.child()) + ")";
        case ConceptKind::Exists:
            return "(some " + c.role_name() + " " + to_text(c.child()) + ")";
    }
    throw std::logic_error("unreachable concept kind");
}

}  // namespace palc
