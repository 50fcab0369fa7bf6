// Exact probabilistic reasoning over the atom polytope.
//
// A probability model assigns weights to the satisfiable atoms.  Each
// conditioning C1 -> [q_l, q_u] C2 contributes two homogeneous rows
//
//   sum over atoms(C1 and C2) of p  -  q_l * sum over atoms(C1) of p  >=  0
//   q_u * sum over atoms(C1) of p  -  sum over atoms(C1 and C2) of p  >=  0
//
// and together with the mass constraint (weights sum to 1, all nonnegative)
// these rows carve out the convex polytope of admitted models.  Consistency
// additionally demands a model giving every explicit antecedent positive
// probability.  Conditional ranges are linear-fractional objectives, solved
// exactly by the scaling substitution y = p / P(antecedent): the rows stay
// homogeneous, the antecedent mass is pinned to 1, and the objective becomes
// linear.  Bounds are therefore taken over the closure of the
// positive-antecedent region; a separate max-P(antecedent) > 0 test guards
// vacuous queries.

#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "palc/atoms.hpp"
#include "palc/kb.hpp"
#include "palc/rational.hpp"
#include "palc/simplex.hpp"

namespace palc {

struct LinearConstraintRow {
    std::vector<Rat> coeffs;  // one per atom; row asserts coeffs . p >= 0
    std::string provenance;
};

struct Polytope {
    std::vector<LinearConstraintRow> rows;  // plus implicit sum(p) = 1, p >= 0
};

struct VacuousAntecedent : std::runtime_error {
    explicit VacuousAntecedent(const std::string& text)
        : std::runtime_error("antecedent '" + text +
                             "' has maximal probability 0; its conditional range is undefined") {}
};

struct InconsistentKB : std::runtime_error {
    explicit InconsistentKB(const std::string& detail)
        : std::runtime_error("knowledge base is inconsistent: " + detail) {}
};

struct EntailedRange {
    Concept antecedent;
    Concept consequent;
    Interval range;
    bool vacuous = false;  // set by minimal_ranges when max P(antecedent) = 0
    std::optional<AtomProbability> lo_witness;
    std::optional<AtomProbability> hi_witness;
};

struct ConsistencyReport {
    bool consistent = false;
    std::string detail;
    std::optional<AtomProbability> model;  // gives every antecedent positive mass
    std::vector<Rat> farkas;               // row multipliers when the polytope is empty
};

inline Polytope build_polytope(const KnowledgeBase& kb, const AtomSpace& space) {
    Polytope poly;
    const std::size_t n = space.size();
    for (std::size_t k = 0; k < kb.conditionings().size(); ++k) {
        const PConditioning& pc = kb.conditionings()[k];
        std::vector<std::size_t> ant = space.atoms_of(pc.antecedent);
        std::vector<std::size_t> cons = space.atoms_of(pc.consequent);
        std::vector<std::size_t> both;
        std::set_intersection(ant.begin(), ant.end(), cons.begin(), cons.end(),
                              std::back_inserter(both));
        std::string label = "conditioning " + std::to_string(k + 1) + " (" +
                            to_text(pc.antecedent) + " -> " + to_text(pc.consequent) + " : " +
                            pc.range.to_string() + ")";
        LinearConstraintRow lower{std::vector<Rat>(n, Rat(0)), label + ", lower bound"};
        for (std::size_t i : both) lower.coeffs[i] += 1;
        for (std::size_t i : ant) lower.coeffs[i] -= pc.range.lo;
        LinearConstraintRow upper{std::vector<Rat>(n, Rat(0)), label + ", upper bound"};
        for (std::size_t i : ant) upper.coeffs[i] += pc.range.hi;
        for (std::size_t i : both) upper.coeffs[i] -= 1;
        poly.rows.push_back(std::move(lower));
        poly.rows.push_back(std::move(upper));
    }
    return poly;
}

// Optimizes a per-atom linear objective over the polytope (with the implicit
// mass constraint).  The mass row is appended last, after the polytope rows,
// so infeasibility certificates index the polytope rows directly.
inline lp::Solution solve_lp(const std::vector<Rat>& objective, const Polytope& poly,
                             std::size_t num_atoms, bool maximize = true) {
    lp::Problem p;
    p.num_vars = num_atoms;
    p.objective = objective;
    if (!maximize)
        for (Rat& v : p.objective) v = -v;
    for (const LinearConstraintRow& row : poly.rows)
        p.rows.push_back({row.coeffs, lp::Rel::Ge, Rat(0)});
    p.rows.push_back({std::vector<Rat>(num_atoms, Rat(1)), lp::Rel::Eq, Rat(1)});
    lp::Solution sol = lp::solve(p);
    if (!maximize) sol.objective = -sol.objective;
    return sol;
}

class ExactOracle {
public:
    explicit ExactOracle(const KnowledgeBase& kb, std::size_t atom_cap = 16,
                         bool self_check = true)
        : kb_(&kb),
          space_(enumerate_atoms(kb.terminology(), atom_cap)),
          poly_(build_polytope(kb, space_)),
          self_check_(self_check) {}

    const AtomSpace& space() const { return space_; }
    const Polytope& polytope() const { return poly_; }
    std::size_t self_check_count() const { return self_checks_; }

    // Maximal probability of `c` over the polytope; nullopt when the polytope
    // itself is empty.
    std::optional<Rat> max_probability(const Concept& c) {
        std::vector<Rat> obj(space_.size(), Rat(0));
        for (std::size_t i : space_.atoms_of(c)) obj[i] = 1;
        lp::Solution sol = solve_lp(obj, poly_, space_.size(), true);
        if (sol.status == lp::Status::Infeasible) return std::nullopt;
        return sol.objective;
    }

    ConsistencyReport check_consistency() {
        if (cached_consistency_) return *cached_consistency_;
        ConsistencyReport report = decide_consistency();
        cached_consistency_ = report;
        return report;
    }

    // Measure-zero subsumption: every model gives `specific` minus `general`
    // probability 0.
    bool subsumes_probabilistic(const Concept& general, const Concept& specific) {
        require_consistent();
        std::vector<std::size_t> spec = space_.atoms_of(specific);
        std::vector<std::size_t> gen = space_.atoms_of(general);
        std::vector<std::size_t> diff;
        std::set_difference(spec.begin(), spec.end(), gen.begin(), gen.end(),
                            std::back_inserter(diff));
        if (diff.empty()) return true;
        std::vector<Rat> obj(space_.size(), Rat(0));
        for (std::size_t i : diff) obj[i] = 1;
        lp::Solution sol = solve_lp(obj, poly_, space_.size(), true);
        if (sol.status != lp::Status::Optimal)
            throw std::logic_error("polytope vanished after a consistency check");
        return sol.objective == 0;
    }

    EntailedRange entail_range(const Concept& antecedent, const Concept& consequent) {
        require_consistent();
        EntailedRange out{normalize(antecedent), normalize(consequent), Interval::full(), false,
                          std::nullopt, std::nullopt};
        auto max_ant = max_probability(out.antecedent);
        if (!max_ant) throw InconsistentKB("the polytope is empty");
        if (*max_ant == 0) throw VacuousAntecedent(to_text(out.antecedent));

        std::vector<std::size_t> ant = space_.atoms_of(out.antecedent);
        std::vector<std::size_t> cons = space_.atoms_of(out.consequent);
        std::vector<std::size_t> both;
        std::set_intersection(ant.begin(), ant.end(), cons.begin(), cons.end(),
                              std::back_inserter(both));

        lp::Problem scaled;
        scaled.num_vars = space_.size();
        scaled.objective.assign(space_.size(), Rat(0));
        for (std::size_t i : both) scaled.objective[i] = 1;
        for (const LinearConstraintRow& row : poly_.rows)
            scaled.rows.push_back({row.coeffs, lp::Rel::Ge, Rat(0)});
        std::vector<Rat> ant_mass(space_.size(), Rat(0));
        for (std::size_t i : ant) ant_mass[i] = 1;
        scaled.rows.push_back({ant_mass, lp::Rel::Eq, Rat(1)});

        lp::Solution hi = lp::solve(scaled);
        for (Rat& v : scaled.objective) v = -v;
        lp::Solution lo = lp::solve(scaled);
        if (hi.status != lp::Status::Optimal || lo.status != lp::Status::Optimal)
            throw std::logic_error(
                "conditional range solve failed on a non-vacuous antecedent");
        Rat lo_val = -lo.objective;
        Rat hi_val = hi.objective;
        out.range = Interval(lo_val, hi_val);
        out.lo_witness = unscale(lo.x);
        out.hi_witness = unscale(hi.x);
        if (self_check_) {
            verify_witness(*out.lo_witness, out.antecedent, out.consequent, lo_val);
            verify_witness(*out.hi_witness, out.antecedent, out.consequent, hi_val);
        }
        return out;
    }

    // Tightest entailed range for every ordered pair of tracked concepts,
    // diagonal included; vacuous antecedents are flagged instead of solved.
    std::vector<EntailedRange> minimal_ranges(const std::vector<Concept>& tracked) {
        require_consistent();
        std::vector<EntailedRange> out;
        std::vector<bool> vacuous(tracked.size());
        for (std::size_t i = 0; i < tracked.size(); ++i) {
            auto m = max_probability(tracked[i]);
            if (!m) throw InconsistentKB("the polytope is empty");
            vacuous[i] = (*m == 0);
        }
        for (std::size_t i = 0; i < tracked.size(); ++i) {
            for (std::size_t j = 0; j < tracked.size(); ++j) {
                if (vacuous[i]) {
                    out.push_back({normalize(tracked[i]), normalize(tracked[j]),
                                   Interval::full(), true, std::nullopt, std::nullopt});
                } else {
                    out.push_back(entail_range(tracked[i], tracked[j]));
                }
            }
        }
        return out;
    }

private:
    void require_consistent() {
        ConsistencyReport report = check_consistency();
        if (!report.consistent) throw InconsistentKB(report.detail);
    }

    ConsistencyReport decide_consistency() {
        ConsistencyReport report;
        std::vector<Rat> ones(space_.size(), Rat(1));
        lp::Solution base = solve_lp(ones, poly_, space_.size(), true);
        if (base.status == lp::Status::Infeasible) {
            report.consistent = false;
            report.farkas = base.farkas;
            report.detail = describe_certificate(base.farkas);
            return report;
        }

        // One maximizer per distinct antecedent; their average keeps every
        // antecedent positive (the rows are convex).
        std::vector<Concept> antecedents;
        for (const PConditioning& pc : kb_->conditionings()) {
            bool seen = false;
            for (const Concept& c : antecedents) seen = seen || c == pc.antecedent;
            if (!seen) antecedents.push_back(pc.antecedent);
        }
        std::vector<std::vector<Rat>> maximizers;
        for (const Concept& ant : antecedents) {
            std::vector<Rat> obj(space_.size(), Rat(0));
            for (std::size_t i : space_.atoms_of(ant)) obj[i] = 1;
            lp::Solution sol = solve_lp(obj, poly_, space_.size(), true);
            if (sol.status != lp::Status::Optimal)
                throw std::logic_error("feasible polytope lost during antecedent sweep");
            if (sol.objective == 0) {
                report.consistent = false;
                report.detail = "antecedent '" + to_text(ant) +
                                "' is forced to probability 0, but a conditioning requires "
                                "it to be positive";
                return report;
            }
            maximizers.push_back(sol.x);
        }
        report.consistent = true;
        report.detail = "a model assigns positive probability to every antecedent";
        AtomProbability model;
        model.weights.assign(space_.size(), Rat(0));
        if (maximizers.empty()) {
            model.weights = base.x;
        } else {
            for (const std::vector<Rat>& x : maximizers)
                for (std::size_t i = 0; i < space_.size(); ++i)
                    model.weights[i] += x[i] / Rat(static_cast<long long>(maximizers.size()));
        }
        if (self_check_) verify_point(model);
        report.model = std::move(model);
        return report;
    }

    AtomProbability unscale(const std::vector<Rat>& y) const {
        Rat total = 0;
        for (const Rat& v : y) total += v;
        AtomProbability p;
        p.weights.reserve(y.size());
        for (const Rat& v : y) p.weights.push_back(v / total);
        return p;
    }

    void verify_point(const AtomProbability& p) {
        Rat mass = 0;
        for (const Rat& w : p.weights) {
            if (w < 0) throw std::logic_error("witness has a negative weight");
            mass += w;
        }
        if (mass != 1) throw std::logic_error("witness weights do not sum to 1");
        for (const LinearConstraintRow& row : poly_.rows) {
            Rat dot = 0;
            for (std::size_t i = 0; i < p.weights.size(); ++i) dot += row.coeffs[i] * p.weights[i];
            if (dot < 0)
                throw std::logic_error("witness violates " + row.provenance);
        }
        ++self_checks_;
    }

    void verify_witness(const AtomProbability& p, const Concept& ant, const Concept& cons,
                        const Rat& bound) {
        verify_point(p);
        Rat pa = probability_of(ant, p, space_);
        if (pa <= 0) throw std::logic_error("witness gives the antecedent zero probability");
        Rat pb = probability_of(normalize(Concept::conjunction(ant, cons)), p, space_);
        if (pb / pa != bound)
            throw std::logic_error("witness does not attain the reported bound");
    }

    std::string describe_certificate(const std::vector<Rat>& farkas) const {
        std::string detail =
            "the constraint rows admit no probability model; an infeasibility certificate "
            "combines";
        bool any = false;
        for (std::size_t i = 0; i < farkas.size() && i < poly_.rows.size(); ++i) {
            if (farkas[i] == 0) continue;
            detail += std::string(any ? ";" : "") + " " + poly_.rows[i].provenance +
                      " (weight " + rat_to_string(farkas[i]) + ")";
            any = true;
        }
        if (!any) detail += " the mass constraint alone";
        return detail;
    }

    const KnowledgeBase* kb_;
    AtomSpace space_;
    Polytope poly_;
    bool self_check_;
    std::size_t self_checks_ = 0;
    std::optional<ConsistencyReport> cached_consistency_;
};

}  // namespace palc
