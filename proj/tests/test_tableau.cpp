#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>

#include "palc/parser.hpp"
#include "palc/tableau.hpp"
#include "support/oracles.hpp"

using namespace palc;

namespace {

Concept sym(const char* s) { return Concept::symbol(s); }

Terminology parse_terminology(const std::string& text) {
    ParseResult r = parse_kb(text);
    REQUIRE(r.ok());
    r.terminology.validate();
    return r.terminology;
}

const char* kBirdsV2 =
    "concept animal. concept flying. concept flying_object.\n"
    "concept antarctic_animal. concept bird. concept antarctic_bird. concept penguin.\n"
    "role moves_by.\n"
    "flying_object = (all moves_by flying).\n"
    "antarctic_animal < animal.\n"
    "bird < animal.\n"
    "antarctic_bird = (and antarctic_animal bird).\n"
    "penguin < antarctic_bird.\n";

const char* kBirdsV1 =
    "concept animal. concept flying. concept antarctic_animal.\n"
    "concept bird. concept antarctic_bird. concept penguin.\n"
    "role moves_by.\n"
    "antarctic_animal < animal.\n"
    "bird = (and animal (all moves_by flying)).\n"
    "antarctic_bird = (and antarctic_animal bird).\n"
    "penguin < antarctic_bird.\n";

std::set<std::pair<std::string, std::string>> edge_names(const Hierarchy& h) {
    auto label = [&](std::size_t id) -> std::string {
        if (id == Hierarchy::kTopClass) return "top";
        if (id == Hierarchy::kBottomClass) return "bottom";
        return h.classes[id].front();
    };
    std::set<std::pair<std::string, std::string>> out;
    for (auto [child, parent] : h.edges) out.emplace(label(child), label(parent));
    return out;
}

}  // namespace

TEST_CASE("role interactions") {
    Terminology t;
    t.declare_concept("a");
    t.declare_concept("b");
    t.declare_role("r");
    TableauReasoner reasoner(t);

    // An existential clashing with a universal over the same role.
    CHECK_FALSE(reasoner.is_satisfiable(
        Concept::conjunction(Concept::exists("r", sym("a")),
                             Concept::forall("r", Concept::negation(sym("a"))))));
    CHECK(reasoner.is_satisfiable(Concept::conjunction(Concept::exists("r", sym("a")),
                                                       Concept::forall("r", sym("a")))));
    // A universal alone is satisfiable by having no successors.
    CHECK(reasoner.is_satisfiable(Concept::forall("r", Concept::bottom())));
    CHECK_FALSE(reasoner.is_satisfiable(Concept::exists("r", Concept::bottom())));

    // (some r a) and (all r b) together force (some r (and a b)).
    CHECK(reasoner.subsumes(
        Concept::exists("r", Concept::conjunction(sym("a"), sym("b"))),
        Concept::conjunction(Concept::exists("r", sym("a")), Concept::forall("r", sym("b")))));

    // Universals distribute over conjunction; existentials over disjunction.
    CHECK(reasoner.equivalent(
        Concept::conjunction(Concept::forall("r", sym("a")), Concept::forall("r", sym("b"))),
        Concept::forall("r", Concept::conjunction(sym("a"), sym("b")))));
    CHECK(reasoner.equivalent(
        Concept::disjunction(Concept::exists("r", sym("a")), Concept::exists("r", sym("b"))),
        Concept::exists("r", Concept::disjunction(sym("a"), sym("b")))));
    // But universals do not distribute over disjunction.
    CHECK_FALSE(reasoner.equivalent(
        Concept::disjunction(Concept::forall("r", sym("a")), Concept::forall("r", sym("b"))),
        Concept::forall("r", Concept::disjunction(sym("a"), sym("b")))));
}

TEST_CASE("axioms unfold lazily") {
    Terminology t = parse_terminology(kBirdsV1);
    TableauReasoner reasoner(t);

    CHECK(reasoner.subsumes(sym("animal"), sym("bird")));
    CHECK(reasoner.subsumes(sym("animal"), sym("penguin")));
    CHECK(reasoner.subsumes(sym("bird"), sym("antarctic_bird")));
    CHECK_FALSE(reasoner.subsumes(sym("penguin"), sym("antarctic_bird")));
    CHECK_FALSE(reasoner.subsumes(sym("antarctic_bird"), sym("bird")));

    // Definitions are sufficient conditions: anything matching the right side
    // is a bird.  Specializations are not.
    CHECK(reasoner.subsumes(
        sym("bird"), Concept::conjunction(sym("animal"), Concept::forall("moves_by", sym("flying")))));
    Terminology t2 = parse_terminology(kBirdsV2);
    TableauReasoner r2(t2);
    CHECK_FALSE(r2.subsumes(sym("bird"), sym("animal")));

    // A defined concept clashing with its unfolding is unsatisfiable.
    CHECK_FALSE(reasoner.is_satisfiable(
        Concept::conjunction(sym("bird"), Concept::negation(sym("animal")))));
    CHECK(reasoner.is_satisfiable(
        Concept::conjunction(sym("animal"), Concept::negation(sym("bird")))));
}

TEST_CASE("disjointness and equivalence helpers") {
    Terminology t;
    t.declare_concept("a");
    t.declare_concept("b");
    t.declare_concept("c");
    t.add_axiom({AxiomKind::Specialization, "a", Concept::negation(sym("b"))});
    t.add_axiom({AxiomKind::Definition, "c", Concept::conjunction(sym("a"), sym("b"))});
    TableauReasoner reasoner(t);
    CHECK(reasoner.disjoint(sym("a"), sym("b")));
    CHECK_FALSE(reasoner.disjoint(sym("a"), Concept::negation(sym("b"))));
    CHECK_FALSE(reasoner.is_satisfiable(sym("c")));
    CHECK(reasoner.equivalent(sym("c"), Concept::bottom()));
    CHECK(reasoner.equivalent(Concept::top(), Concept::disjunction(sym("b"), Concept::negation(sym("b")))));
}

TEST_CASE("satisfiability agrees with the truth table oracle on role free input") {
    std::mt19937_64 rng(43);
    int checked = 0;
    for (int i = 0; i < 150; ++i) {
        KnowledgeBase kb = testsupport::random_valid_kb(rng);
        const Terminology& t = kb.terminology();
        TableauReasoner reasoner(t);
        std::vector<std::string> syms = t.concept_names();
        for (int k = 0; k < 6; ++k) {
            Concept c = testsupport::random_simple_concept(rng, syms, 2);
            CHECK(reasoner.is_satisfiable(c) == testsupport::satisfiable_bruteforce(t, c));
            Concept d = testsupport::random_simple_concept(rng, syms, 2);
            CHECK(reasoner.subsumes(c, d) == testsupport::subsumes_bruteforce(t, c, d));
            ++checked;
        }
    }
    CHECK(checked == 900);
}

TEST_CASE("queries are memoized") {
    Terminology t = parse_terminology(kBirdsV2);
    TableauReasoner reasoner(t);
    CHECK(reasoner.cache_size() == 0);
    reasoner.subsumes(sym("animal"), sym("penguin"));
    std::size_t after_first = reasoner.cache_size();
    CHECK(after_first > 0);
    reasoner.subsumes(sym("animal"), sym("penguin"));
    CHECK(reasoner.cache_size() == after_first);
}

TEST_CASE("classification of the birds terminology with a flying_object definition") {
    Terminology t = parse_terminology(kBirdsV2);
    TableauReasoner reasoner(t);
    Hierarchy h = classify(reasoner);

    std::set<std::pair<std::string, std::string>> expected = {
        {"animal", "top"},
        {"flying", "top"},
        {"flying_object", "top"},
        {"antarctic_animal", "animal"},
        {"bird", "animal"},
        {"antarctic_bird", "antarctic_animal"},
        {"antarctic_bird", "bird"},
        {"penguin", "antarctic_bird"},
        {"bottom", "flying"},
        {"bottom", "flying_object"},
        {"bottom", "penguin"},
    };
    CHECK(edge_names(h) == expected);

    // No class contains two names and top/bottom classes are empty.
    CHECK(h.classes[Hierarchy::kTopClass].empty());
    CHECK(h.classes[Hierarchy::kBottomClass].empty());
    for (std::size_t i = 2; i < h.classes.size(); ++i) CHECK(h.classes[i].size() == 1);
}

TEST_CASE("classification of the birds terminology with a defined bird") {
    Terminology t = parse_terminology(kBirdsV1);
    TableauReasoner reasoner(t);
    Hierarchy h = classify(reasoner);

    std::set<std::pair<std::string, std::string>> expected = {
        {"animal", "top"},
        {"flying", "top"},
        {"antarctic_animal", "animal"},
        {"bird", "animal"},
        {"antarctic_bird", "antarctic_animal"},
        {"antarctic_bird", "bird"},
        {"penguin", "antarctic_bird"},
        {"bottom", "flying"},
        {"bottom", "penguin"},
    };
    CHECK(edge_names(h) == expected);
}

TEST_CASE("classification groups equivalent names and spots unsatisfiable ones") {
    Terminology t;
    t.declare_concept("a");
    t.declare_concept("b");
    t.declare_concept("c");
    t.declare_concept("dead");
    t.declare_concept("everything");
    t.add_axiom({AxiomKind::Definition, "a", sym("c")});
    t.add_axiom({AxiomKind::Definition, "b", sym("c")});
    t.add_axiom({AxiomKind::Definition, "dead", Concept::conjunction(sym("c"), Concept::negation(sym("c")))});
    t.add_axiom({AxiomKind::Definition, "everything", Concept::disjunction(sym("c"), Concept::negation(sym("c")))});
    t.validate();
    TableauReasoner reasoner(t);
    Hierarchy h = classify(reasoner);

    CHECK(h.classes[Hierarchy::kTopClass] == std::vector<std::string>{"everything"});
    CHECK(h.classes[Hierarchy::kBottomClass] == std::vector<std::string>{"dead"});
    REQUIRE(h.classes.size() == 3);
    CHECK(h.classes[2] == std::vector<std::string>{"a", "b", "c"});
    std::set<std::pair<std::string, std::string>> expected = {
        {"a", "top"},
        {"bottom", "a"},
    };
    CHECK(edge_names(h) == expected);
}

TEST_CASE("classification of an empty terminology") {
    Terminology t;
    TableauReasoner reasoner(t);
    Hierarchy h = classify(reasoner);
    REQUIRE(h.classes.size() == 2);
    CHECK(h.edges ==
          std::vector<std::pair<std::size_t, std::size_t>>{
              {Hierarchy::kBottomClass, Hierarchy::kTopClass}});
}
