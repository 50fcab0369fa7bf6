// Knowledge bases: a terminology plus interval-valued conditionings
// "antecedent -> [lo, hi] consequent", read as: the relative cardinality
// |E[antecedent and consequent]| / |E[antecedent]| lies in the interval.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "palc/concepts.hpp"
#include "palc/rational.hpp"
#include "palc/tableau.hpp"
#include "palc/terminology.hpp"

namespace palc {

struct PConditioning {
    Concept antecedent;
    Concept consequent;
    Interval range;
};

struct UnsatisfiableAntecedent : std::runtime_error {
    UnsatisfiableAntecedent(std::size_t index, const std::string& text)
        : std::runtime_error("conditioning " + std::to_string(index + 1) + ": antecedent '" +
                             text + "' is unsatisfiable, so its conditional probability is "
                             "undefined"),
          conditioning_index(index) {}
    std::size_t conditioning_index;
};

// Immutable once built.  `validate_kb` is the only constructor path that
// guarantees the invariants: terminology validated, conditioning concepts
// normalized and over declared symbols, every antecedent satisfiable.
class KnowledgeBase {
public:
    const Terminology& terminology() const { return term_; }
    const std::vector<PConditioning>& conditionings() const { return conds_; }

    friend KnowledgeBase validate_kb(Terminology terminology,
                                     std::vector<PConditioning> conditionings);

private:
    KnowledgeBase(Terminology t, std::vector<PConditioning> c)
        : term_(std::move(t)), conds_(std::move(c)) {}

    Terminology term_;
    std::vector<PConditioning> conds_;
};

inline KnowledgeBase validate_kb(Terminology terminology,
                                 std::vector<PConditioning> conditionings) {
    terminology.validate();
    for (std::size_t i = 0; i < conditionings.size(); ++i) {
        PConditioning& pc = conditionings[i];
        std::string where = "conditioning " + std::to_string(i + 1);
        terminology.check_concept(pc.antecedent, where);
        terminology.check_concept(pc.consequent, where);
        pc.antecedent = normalize(pc.antecedent);
        pc.consequent = normalize(pc.consequent);
    }
    TableauReasoner reasoner(terminology);
    for (std::size_t i = 0; i < conditionings.size(); ++i)
        if (!reasoner.is_satisfiable(conditionings[i].antecedent))
            throw UnsatisfiableAntecedent(i, to_text(conditionings[i].antecedent));
    return KnowledgeBase(std::move(terminology), std::move(conditionings));
}

}  // namespace palc
