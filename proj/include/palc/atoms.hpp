// Lindenbaum atoms over the declared concept symbols.
//
// An atom is a total sign assignment A1^±1 ⊓ ... ⊓ Am^±1 over the signature.
// Atoms whose conjunction is unsatisfiable against the terminology are
// excluded at construction, so terminological axioms act purely by pruning.
// Every role-free concept over the signature denotes a unique set of atoms,
// and probability models live on atom weights.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "palc/concepts.hpp"
#include "palc/rational.hpp"
#include "palc/tableau.hpp"
#include "palc/terminology.hpp"

namespace palc {

struct SignatureTooLarge : std::runtime_error {
    SignatureTooLarge(std::size_t symbols, std::size_t cap)
        : std::runtime_error("signature has " + std::to_string(symbols) +
                             " concept symbols; the atom enumeration cap is " +
                             std::to_string(cap) +
                             " (raise it explicitly to enumerate 2^" +
                             std::to_string(symbols) + " candidates)") {}
};

struct NonPropositionalQuery : std::runtime_error {
    explicit NonPropositionalQuery(const std::string& text)
        : std::runtime_error("'" + text +
                             "' contains a role restriction with no defining axiom; name the "
                             "expression with a definition (X = ...) and use the name instead") {}
};

struct CardinalityMismatch : std::runtime_error {
    explicit CardinalityMismatch(const std::string& what) : std::runtime_error(what) {}
};

// Atoms are stored as sign masks: bit j set means signature[j] occurs
// positively.  Enumeration order is binary counting with signature[0] as the
// most significant digit, so for signature {A, B} the candidate order is
// (not A)(not B), (not A)B, A(not B), AB.
class AtomSpace {
public:
    const std::vector<std::string>& signature() const { return signature_; }
    const std::vector<std::uint32_t>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }

    bool sign(std::size_t atom_index, std::size_t symbol_index) const {
        return (atoms_[atom_index] >> symbol_index) & 1u;
    }

    std::string atom_text(std::size_t atom_index) const {
        if (signature_.empty()) return "top";
        std::string out;
        for (std::size_t j = 0; j < signature_.size(); ++j) {
            std::string lit =
                sign(atom_index, j) ? signature_[j] : "(not " + signature_[j] + ")";
            out = j == 0 ? lit : "(and " + out + " " + lit + ")";
        }
        return out;
    }

    // Indices of the atoms satisfying `c`, ascending.  Role restrictions are
    // admitted only when they match a defined symbol's right side, in which
    // case they evaluate as that symbol.
    std::vector<std::size_t> atoms_of(const Concept& c) const {
        Concept resolved = resolve(c);
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            auto sign_of = [&](const std::string& name) {
                auto it = symbol_index_.find(name);
                if (it == symbol_index_.end())
                    throw TerminologyError("concept '" + name + "' is not in the signature");
                return sign(i, it->second);
            };
            if (eval_propositional(resolved, sign_of)) out.push_back(i);
        }
        return out;
    }

    friend AtomSpace enumerate_atoms(const Terminology& t, std::size_t max_symbols);

private:
    // Replaces each role-restriction subterm that equals a defined symbol's
    // right side (up to normalization) with that symbol.
    Concept resolve(const Concept& c) const {
        switch (c.kind()) {
            case ConceptKind::Forall:
            case ConceptKind::Exists: {
                Concept norm = normalize(c);
                for (const auto& [body, name] : definition_bodies_)
                    if (body == norm) return Concept::symbol(name);
                throw NonPropositionalQuery(to_text(c));
            }
            case ConceptKind::Not: return Concept::negation(resolve(c.child()));
            case ConceptKind::And:
            case ConceptKind::Or: {
                std::vector<Concept> cs;
                cs.reserve(c.children().size());
                for (const Concept& d : c.children()) cs.push_back(resolve(d));
                return c.kind() == ConceptKind::And ? Concept::conjunction(std::move(cs))
                                                    : Concept::disjunction(std::move(cs));
            }
            default: return c;
        }
    }

    std::vector<std::string> signature_;
    std::unordered_map<std::string, std::size_t> symbol_index_;
    std::vector<std::uint32_t> atoms_;
    std::vector<std::pair<Concept, std::string>> definition_bodies_;
};

inline AtomSpace enumerate_atoms(const Terminology& t, std::size_t max_symbols = 16) {
    const std::size_t m = t.concept_names().size();
    if (m > max_symbols) throw SignatureTooLarge(m, max_symbols);

    AtomSpace space;
    space.signature_ = t.concept_names();
    for (std::size_t j = 0; j < m; ++j) space.symbol_index_.emplace(space.signature_[j], j);
    for (const Axiom& ax : t.axioms())
        if (ax.kind == AxiomKind::Definition)
            space.definition_bodies_.emplace_back(normalize(ax.rhs), ax.lhs);

    TableauReasoner reasoner(t);
    const std::uint64_t total = std::uint64_t{1} << m;
    for (std::uint64_t counter = 0; counter < total; ++counter) {
        // Map the counter (signature[0] most significant) to a sign mask.
        std::uint32_t signs = 0;
        for (std::size_t j = 0; j < m; ++j)
            if ((counter >> (m - 1 - j)) & 1u) signs |= std::uint32_t{1} << j;
        std::vector<Concept> literals;
        literals.reserve(m);
        for (std::size_t j = 0; j < m; ++j) {
            Concept s = Concept::symbol(space.signature_[j]);
            literals.push_back((signs >> j) & 1u ? s : Concept::negation(s));
        }
        if (reasoner.is_satisfiable_all(literals)) space.atoms_.push_back(signs);
    }
    return space;
}

// A probability model: one exact weight per atom, in atom order, summing to 1.
struct AtomProbability {
    std::vector<Rat> weights;
};

inline AtomProbability induced_probability(long long domain_size,
                                           const std::vector<long long>& cardinalities,
                                           const AtomSpace& space) {
    if (domain_size <= 0)
        throw CardinalityMismatch("domain size must be positive");
    if (cardinalities.size() != space.size())
        throw CardinalityMismatch("expected " + std::to_string(space.size()) +
                                  " atom cardinalities, got " +
                                  std::to_string(cardinalities.size()));
    long long sum = 0;
    for (long long c : cardinalities) {
        if (c < 0) throw CardinalityMismatch("atom cardinality must be nonnegative");
        sum += c;
    }
    if (sum != domain_size)
        throw CardinalityMismatch("atom cardinalities sum to " + std::to_string(sum) +
                                  ", not the domain size " + std::to_string(domain_size));
    AtomProbability p;
    p.weights.reserve(space.size());
    for (long long c : cardinalities) p.weights.emplace_back(Rat(c, domain_size));
    return p;
}

inline Rat probability_of(const Concept& c, const AtomProbability& p, const AtomSpace& s) {
    Rat sum = 0;
    for (std::size_t i : s.atoms_of(c)) sum += p.weights[i];
    return sum;
}

}  // namespace palc
