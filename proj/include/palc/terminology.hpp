// Acyclic terminologies: declarations plus specialization and definition
// axioms, with validation and a dependency order for unfolding.

#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "palc/concepts.hpp"

namespace palc {

enum class AxiomKind : std::uint8_t {
    Specialization,  // lhs < rhs: necessary conditions only
    Definition,      // lhs = rhs: necessary and sufficient
};

struct Axiom {
    AxiomKind kind;
    std::string lhs;
    Concept rhs;
};

struct TerminologyError : std::runtime_error {
    explicit TerminologyError(const std::string& what) : std::runtime_error(what) {}
};

// A terminology stores concept and role declarations in source order and at
// most one axiom per concept symbol.  `validate` enforces the structural
// rules; the reasoning layers assume they hold.
class Terminology {
public:
    void declare_concept(const std::string& name) {
        if (concept_index_.count(name))
            throw TerminologyError("concept '" + name + "' declared twice");
        concept_index_.emplace(name, concept_names_.size());
        concept_names_.push_back(name);
    }

    void declare_role(const std::string& name) {
        if (role_index_.count(name)) throw TerminologyError("role '" + name + "' declared twice");
        role_index_.emplace(name, role_names_.size());
        role_names_.push_back(name);
    }

    void add_axiom(Axiom ax) {
        if (axiom_index_.count(ax.lhs))
            throw TerminologyError("concept '" + ax.lhs + "' has more than one axiom");
        axiom_index_.emplace(ax.lhs, axioms_.size());
        axioms_.push_back(std::move(ax));
    }

    const std::vector<std::string>& concept_names() const { return concept_names_; }
    const std::vector<std::string>& role_names() const { return role_names_; }
    const std::vector<Axiom>& axioms() const { return axioms_; }

    bool has_concept(const std::string& name) const { return concept_index_.count(name) > 0; }
    bool has_role(const std::string& name) const { return role_index_.count(name) > 0; }

    const Axiom* axiom_for(const std::string& name) const {
        auto it = axiom_index_.find(name);
        return it == axiom_index_.end() ? nullptr : &axioms_[it->second];
    }

    // Validation: every symbol used is declared, roles and concepts do not
    // collide, and the axiom dependency graph is acyclic.  Errors report the
    // first problem found in a deterministic order.
    void validate() const {
        for (const std::string& r : role_names_)
            if (concept_index_.count(r))
                throw TerminologyError("'" + r + "' is declared both as concept and role");
        for (const Axiom& ax : axioms_) {
            if (!has_concept(ax.lhs))
                throw TerminologyError("axiom left side '" + ax.lhs + "' is not a declared concept");
            check_symbols(ax.rhs, "axiom for '" + ax.lhs + "'");
        }
        check_acyclic();
    }

    // Checks that every symbol and role in `c` is declared.
    void check_concept(const Concept& c, const std::string& where) const {
        check_symbols(c, where);
    }

    // Concept names in axiom dependency order: if the axiom for A mentions B,
    // then B appears before A.  Symbols without axioms come first.
    std::vector<std::string> dependency_order() const {
        std::vector<std::string> order;
        std::unordered_set<std::string> done;
        std::unordered_set<std::string> in_progress;
        std::function<void(const std::string&)> visit = [&](const std::string& name) {
            if (done.count(name)) return;
            if (!in_progress.insert(name).second)
                throw TerminologyError("terminology has a cycle through '" + name + "'");
            if (const Axiom* ax = axiom_for(name))
                for (const std::string& dep : mentioned_symbols(ax->rhs)) visit(dep);
            in_progress.erase(name);
            done.insert(name);
            order.push_back(name);
        };
        for (const std::string& name : concept_names_) visit(name);
        return order;
    }

    static std::vector<std::string> mentioned_symbols(const Concept& c) {
        std::vector<std::string> out;
        std::unordered_set<std::string> seen;
        collect_symbols(c, out, seen);
        return out;
    }

private:
    void check_symbols(const Concept& c, const std::string& where) const {
        switch (c.kind()) {
            case ConceptKind::Symbol:
                if (!has_concept(c.symbol_name()))
                    throw TerminologyError(where + " uses undeclared concept '" +
                                           c.symbol_name() + "'");
                return;
            case ConceptKind::Forall:
            case ConceptKind::Exists:
                if (!has_role(c.role_name()))
                    throw TerminologyError(where + " uses undeclared role '" + c.role_name() +
                                           "'");
                check_symbols(c.child(), where);
                return;
            default:
                for (const Concept& d : c.children()) check_symbols(d, where);
                return;
        }
    }

    void check_acyclic() const { dependency_order(); }

    static void collect_symbols(const Concept& c, std::vector<std::string>& out,
                                std::unordered_set<std::string>& seen) {
        if (c.kind() == ConceptKind::Symbol) {
            if (seen.insert(c.symbol_name()).second) out.push_back(c.symbol_name());
            return;
        }
        for (const Concept& d : c.children()) collect_symbols(d, out, seen);
    }

    std::vector<std::string> concept_names_;
    std::vector<std::string> role_names_;
    std::vector<Axiom> axioms_;
    std::unordered_map<std::string, std::size_t> concept_index_;
    std::unordered_map<std::string, std::size_t> role_index_;
    std::unordered_map<std::string, std::size_t> axiom_index_;
};

}  // namespace palc
