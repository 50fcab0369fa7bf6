// Local interval propagation over tracked concept pairs.
//
// The engine keeps a matrix of conditional-probability intervals
// entry(X, Y) ⊇ {P(Y|X) : admitted models with P(X) > 0} and shrinks entries
// by intersecting candidates from local rules until a full sweep changes
// nothing:
//
//   pair rules      negation duality, conjunction mirroring, zero symmetry,
//                   and positivity coupling between (X,Y) and (Y,X);
//   triple rules    the triangular bound and the Bayes bound, applied under
//                   all six labelings of each tracked triple.
//
// Entries are conditional on a positive row concept, so an empty
// intersection on row X does not by itself refute the knowledge base: it
// proves P(X) = 0 in every model.  Only when X is required to be positive
// (it is an explicit antecedent, it is top, or some required-positive Y has
// entry(Y, X) with a positive lower bound) does the clash mean inconsistency.
// Otherwise X is marked vacuous, its column collapses to [0, 0], and the
// collapse may cascade into a genuine inconsistency on a required row.
// Row entries of a vacuous concept are frozen and excluded from further
// reasoning; its column entries remain valid facts and keep propagating.
//
// Every assignment, from the initialization seeds to the final clash, is
// recorded in a trace; replaying the trace onto a blank matrix reproduces
// the result bit-exactly.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "palc/concepts.hpp"
#include "palc/kb.hpp"
#include "palc/rational.hpp"
#include "palc/tableau.hpp"

namespace palc {

inline constexpr std::size_t kNoConcept = static_cast<std::size_t>(-1);

// ── Rule formulas ───────────────────────────────────────────────────────────

// A candidate bound pair; unlike Interval it may be empty (lo > hi), which
// the engine surfaces as a clash at intersection time.
struct BoundPair {
    Rat lo;
    Rat hi;
};

// Triangular bound for entry (B, C) from p = (A,C), q = (A,B), q_rev = (B,A),
// p_rev = (C,A).  Case analysis on the published side conditions; two
// published guards are unusable as written and carry their continuous-limit
// reading instead: the lower bound's middle case divides by the q_l it just
// required to be zero and equals q'_l as the limit of the first case at
// p_l = 1, and the upper bound's bare q'_u case is shadowed by the first
// case unless its companion condition is q_l = 0.
inline BoundPair rule_triangle(const Interval& p, const Interval& q, const Interval& q_rev,
                               const Interval& p_rev) {
    const Rat &pl = p.lo, &pu = p.hi;
    const Rat& ql = q.lo;
    const Rat &rl_in = q_rev.lo, &ru_in = q_rev.hi;
    const Rat& sl = p_rev.lo;

    Rat lo = 0;
    if (ql != 0) {
        Rat excess = ql + pl - 1;
        if (excess > 0) lo = (rl_in / ql) * excess;
    } else if (pl == 1) {
        lo = rl_in;
    }

    Rat hi = 1;
    if (sl != 0 && ql != 0) {
        Rat t2 = 1 - rl_in + pu * (rl_in / ql);
        Rat t3 = (pu / sl) * (ru_in / ql);
        Rat t4 = t3 * (1 - sl) + ru_in;
        Rat t5 = pu / (sl * (ql - pu) + pu);
        hi = std::min({Rat(1), t2, t3, t4, t5});
    } else if (sl == 0 && ql != 0) {
        hi = std::min(Rat(1), Rat(1 - rl_in + pu * (rl_in / ql)));
    } else if (sl == 1 && ql == 0) {
        hi = ru_in;
    } else if (pu == 0 && ql == 0) {
        hi = 1 - rl_in;
    }
    return {lo, hi};
}

// Bayes bound for entry (B, C) from the same four edges plus r_rev = (C,B).
// Skipped (nullopt) unless p'_l and q_l are nonzero, the published side
// condition; the result is clamped into [0, 1].
inline std::optional<BoundPair> rule_bayes(const Interval& p, const Interval& q,
                                           const Interval& q_rev, const Interval& p_rev,
                                           const Interval& r_rev) {
    if (p_rev.lo == 0 || q.lo == 0) return std::nullopt;
    Rat lo = r_rev.lo * (p.lo / p_rev.hi) * (q_rev.lo / q.hi);
    Rat hi = r_rev.hi * (p.hi / p_rev.lo) * (q_rev.hi / q.lo);
    return BoundPair{std::min(lo, Rat(1)), std::min(hi, Rat(1))};
}

// ── Tracked concepts ────────────────────────────────────────────────────────

// The concepts the matrix ranges over: every declared symbol, its negation,
// every concept of an explicit conditioning, the conjunction of each
// conditioning's antecedent and consequent, and any caller-supplied extras
// (with their negations, plus the conjunction of each consecutive extras
// pair, so a query adds endpoint duals and the endpoint conjunction).
// Normalized, deduplicated, deterministic order.
struct TrackedConcepts {
    std::vector<Concept> concepts;
    std::vector<std::size_t> negation_of;           // kNoConcept when untracked
    std::vector<std::vector<std::size_t>> conj_of;  // conj_of[i][j]: index of i ⊓ j
    std::vector<bool> required_seed;                // explicit antecedent or top

    std::size_t index_of(const Concept& c) const {
        Concept n = normalize(c);
        for (std::size_t i = 0; i < concepts.size(); ++i)
            if (concepts[i] == n) return i;
        return kNoConcept;
    }
    std::size_t size() const { return concepts.size(); }
};

inline TrackedConcepts build_tracked(const KnowledgeBase& kb,
                                     const std::vector<Concept>& extras = {}) {
    TrackedConcepts tc;
    auto add = [&tc](const Concept& c) {
        Concept n = normalize(c);
        for (const Concept& existing : tc.concepts)
            if (existing == n) return;
        tc.concepts.push_back(std::move(n));
    };
    for (const std::string& name : kb.terminology().concept_names())
        add(Concept::symbol(name));
    for (const std::string& name : kb.terminology().concept_names())
        add(Concept::negation(Concept::symbol(name)));
    for (const PConditioning& pc : kb.conditionings()) {
        add(pc.antecedent);
        add(pc.consequent);
        add(Concept::conjunction(pc.antecedent, pc.consequent));
    }
    for (const Concept& c : extras) {
        add(c);
        add(Concept::negation(c));
    }
    for (std::size_t i = 0; i + 1 < extras.size(); i += 2)
        add(Concept::conjunction(extras[i], extras[i + 1]));

    const std::size_t n = tc.concepts.size();
    tc.negation_of.assign(n, kNoConcept);
    for (std::size_t i = 0; i < n; ++i)
        tc.negation_of[i] = tc.index_of(Concept::negation(tc.concepts[i]));
    tc.conj_of.assign(n, std::vector<std::size_t>(n, kNoConcept));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j)
                tc.conj_of[i][j] =
                    tc.index_of(Concept::conjunction(tc.concepts[i], tc.concepts[j]));
    tc.required_seed.assign(n, false);
    for (std::size_t i = 0; i < n; ++i)
        if (tc.concepts[i].kind() == ConceptKind::Top) tc.required_seed[i] = true;
    for (const PConditioning& pc : kb.conditionings())
        tc.required_seed[tc.index_of(pc.antecedent)] = true;
    return tc;
}

// ── Engine ──────────────────────────────────────────────────────────────────

enum class RuleId : std::uint8_t {
    Diagonal,
    Subsumption,
    Disjointness,
    ExplicitRange,
    NegationDuality,
    ConjunctionMirror,
    ZeroSymmetry,
    PositivityCoupling,
    Triangle,
    Bayes,
    VacuousMark,
    VacuousColumn,
};

inline const char* rule_name(RuleId r) {
    switch (r) {
        case RuleId::Diagonal: return "diagonal";
        case RuleId::Subsumption: return "subsumption";
        case RuleId::Disjointness: return "disjointness";
        case RuleId::ExplicitRange: return "explicit range";
        case RuleId::NegationDuality: return "negation duality";
        case RuleId::ConjunctionMirror: return "conjunction mirror";
        case RuleId::ZeroSymmetry: return "zero symmetry";
        case RuleId::PositivityCoupling: return "positivity coupling";
        case RuleId::Triangle: return "triangle";
        case RuleId::Bayes: return "bayes";
        case RuleId::VacuousMark: return "vacuous mark";
        case RuleId::VacuousColumn: return "vacuous column";
    }
    return "?";
}

// One recorded assignment.  A VacuousMark step leaves the entry unchanged
// (before == after) and documents the empty candidate that proved the row
// concept empty; a step with after_lo > after_hi is terminal and marks the
// inconsistency clash.
struct TraceStep {
    RuleId rule;
    std::size_t row;
    std::size_t col;
    std::size_t third;  // participating third concept, or kNoConcept
    Rat before_lo, before_hi;
    Rat after_lo, after_hi;
};

enum class PropagationStatus : std::uint8_t { Converged, SweepCapReached, Inconsistent };

struct PropagationResult {
    PropagationStatus status = PropagationStatus::Converged;
    TrackedConcepts tracked;
    std::vector<std::vector<Interval>> matrix;
    std::vector<bool> vacuous;
    std::vector<TraceStep> trace;
    std::size_t sweeps = 0;  // sweeps that changed at least one entry; one further
                             // quiescent sweep confirms the fixpoint
    std::string conflict;    // empty unless Inconsistent
};

struct PropagationOptions {
    std::size_t max_sweeps = 100;
    std::vector<Concept> extra_concepts;
    bool record_trace = true;
    // 0 visits pairs and triples in canonical index order; any other value
    // shuffles the visit order (for confluence checking).
    std::uint64_t order_seed = 0;
};

namespace detail {

class PropagationEngine {
public:
    PropagationEngine(const KnowledgeBase& kb, const PropagationOptions& opts)
        : kb_(&kb), opts_(opts), tableau_(kb.terminology()) {}

    PropagationResult run() {
        tc_ = build_tracked(*kb_, opts_.extra_concepts);
        const std::size_t n = tc_.size();
        m_.assign(n, std::vector<Interval>(n, Interval::full()));
        vacuous_.assign(n, false);

        initialize();
        std::size_t executed = 0;
        std::size_t changing = 0;
        while (!inconsistent_ && executed < opts_.max_sweeps) {
            changed_ = false;
            sweep();
            ++executed;
            if (!changed_) break;
            ++changing;
        }

        PropagationResult out;
        out.status = inconsistent_ ? PropagationStatus::Inconsistent
                     : changed_    ? PropagationStatus::SweepCapReached
                                   : PropagationStatus::Converged;
        out.tracked = std::move(tc_);
        out.matrix = std::move(m_);
        out.vacuous = std::move(vacuous_);
        out.trace = std::move(trace_);
        out.sweeps = changing;
        out.conflict = std::move(conflict_);
        return out;
    }

private:
    void initialize() {
        const std::size_t n = tc_.size();
        for (std::size_t i = 0; i < n && !inconsistent_; ++i)
            refine(RuleId::Diagonal, i, i, Rat(1), Rat(1));
        for (std::size_t i = 0; i < n && !inconsistent_; ++i) {
            if (vacuous_[i]) continue;
            for (std::size_t j = 0; j < n && !inconsistent_ && !vacuous_[i]; ++j) {
                if (i == j) continue;
                if (tableau_.subsumes(tc_.concepts[j], tc_.concepts[i]))
                    refine(RuleId::Subsumption, i, j, Rat(1), Rat(1));
            }
        }
        for (std::size_t i = 0; i < n && !inconsistent_; ++i) {
            if (vacuous_[i]) continue;
            for (std::size_t j = i + 1; j < n && !inconsistent_ && !vacuous_[i]; ++j) {
                if (tableau_.disjoint(tc_.concepts[i], tc_.concepts[j])) {
                    refine(RuleId::Disjointness, i, j, Rat(0), Rat(0));
                    if (inconsistent_ || vacuous_[j]) continue;
                    refine(RuleId::Disjointness, j, i, Rat(0), Rat(0));
                }
            }
        }
        for (const PConditioning& pc : kb_->conditionings()) {
            if (inconsistent_) break;
            std::size_t i = tc_.index_of(pc.antecedent);
            std::size_t j = tc_.index_of(pc.consequent);
            if (vacuous_[i]) continue;
            refine(RuleId::ExplicitRange, i, j, pc.range.lo, pc.range.hi);
        }
    }

    void sweep() {
        const std::size_t n = tc_.size();
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) pairs.emplace_back(i, j);
        std::vector<std::array<std::size_t, 3>> triples;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = x + 1; y < n; ++y)
                for (std::size_t z = y + 1; z < n; ++z) triples.push_back({x, y, z});
        if (opts_.order_seed != 0) {
            std::mt19937_64 rng(opts_.order_seed);
            std::shuffle(pairs.begin(), pairs.end(), rng);
            std::shuffle(triples.begin(), triples.end(), rng);
        }

        for (const auto& [i, j] : pairs) {
            if (inconsistent_) return;
            if (vacuous_[i]) continue;
            pair_rules(i, j);
        }
        for (const auto& t : triples) {
            if (inconsistent_) return;
            if (vacuous_[t[0]] || vacuous_[t[1]] || vacuous_[t[2]]) continue;
            triple_rules(t[0], t[1], t[2]);
        }
    }

    void pair_rules(std::size_t i, std::size_t j) {
        // Negation duality: entry(i, j) mirrors the dual of entry(i, not j).
        std::size_t nj = tc_.negation_of[j];
        if (nj != kNoConcept && nj != i) {
            Interval d = m_[i][nj].dual();
            refine(RuleId::NegationDuality, i, j, d.lo, d.hi, nj);
        }
        if (inconsistent_ || vacuous_[i]) return;

        // Conjunction mirror: entry(i, j) and entry(i, i ⊓ j) agree.
        std::size_t cj = tc_.conj_of[i][j];
        if (cj != kNoConcept && cj != j) {
            refine(RuleId::ConjunctionMirror, i, cj, m_[i][j].lo, m_[i][j].hi, j);
            if (inconsistent_ || vacuous_[i]) return;
            refine(RuleId::ConjunctionMirror, i, j, m_[i][cj].lo, m_[i][cj].hi, cj);
            if (inconsistent_ || vacuous_[i]) return;
        }

        // Zero symmetry: a pinned-zero entry pins the reverse direction.
        if (!vacuous_[j] && m_[i][j].lo == 0 && m_[i][j].hi == 0)
            refine(RuleId::ZeroSymmetry, j, i, Rat(0), Rat(0));
        if (inconsistent_ || vacuous_[i]) return;

        // Positivity coupling: a positive lower bound on (i, j) and an
        // exactly-zero reverse entry cannot both hold in any model where i
        // is positive.
        if (!vacuous_[j] && m_[i][j].lo > 0 && m_[j][i].hi == 0)
            clash(RuleId::PositivityCoupling, i, j, m_[i][j].lo, Rat(0), j);
    }

    void triple_rules(std::size_t x, std::size_t y, std::size_t z) {
        const std::array<std::array<std::size_t, 3>, 6> perms = {
            {{x, y, z}, {x, z, y}, {y, x, z}, {y, z, x}, {z, x, y}, {z, y, x}}};
        for (const auto& perm : perms) {
            if (inconsistent_) return;
            if (vacuous_[x] || vacuous_[y] || vacuous_[z]) return;
            const std::size_t a = perm[0], b = perm[1], c = perm[2];
            BoundPair tri = rule_triangle(m_[a][c], m_[a][b], m_[b][a], m_[c][a]);
            refine(RuleId::Triangle, b, c, tri.lo, tri.hi, a);
            if (inconsistent_ || vacuous_[x] || vacuous_[y] || vacuous_[z]) return;
            auto bayes = rule_bayes(m_[a][c], m_[a][b], m_[b][a], m_[c][a], m_[c][b]);
            if (bayes) refine(RuleId::Bayes, b, c, bayes->lo, bayes->hi, a);
        }
    }

    void refine(RuleId rule, std::size_t i, std::size_t j, const Rat& lo, const Rat& hi,
                std::size_t third = kNoConcept) {
        if (inconsistent_) return;
        const Interval& cur = m_[i][j];
        Rat nlo = std::max(cur.lo, lo);
        Rat nhi = std::min(cur.hi, hi);
        if (nlo == cur.lo && nhi == cur.hi) return;
        if (nlo > nhi) {
            clash(rule, i, j, nlo, nhi, third);
            return;
        }
        if (opts_.record_trace)
            trace_.push_back({rule, i, j, third, cur.lo, cur.hi, nlo, nhi});
        m_[i][j] = Interval(nlo, nhi);
        changed_ = true;
    }

    // An empty intersection on row i proves that no model gives concept i
    // positive probability: inconsistency if i must be positive, otherwise
    // i is vacuous and its column collapses to zero.
    void clash(RuleId rule, std::size_t i, std::size_t j, const Rat& lo, const Rat& hi,
               std::size_t third) {
        if (required_positive(i)) {
            if (opts_.record_trace)
                trace_.push_back({rule, i, j, third, m_[i][j].lo, m_[i][j].hi, lo, hi});
            inconsistent_ = true;
            conflict_ = "rule '" + std::string(rule_name(rule)) + "' forces the empty range [" +
                        rat_to_string(lo) + ", " + rat_to_string(hi) + "] on (" +
                        to_text(tc_.concepts[i]) + ", " + to_text(tc_.concepts[j]) +
                        "), and '" + to_text(tc_.concepts[i]) +
                        "' must have positive probability";
            return;
        }
        if (opts_.record_trace)
            trace_.push_back({RuleId::VacuousMark, i, j, third, m_[i][j].lo, m_[i][j].hi,
                              m_[i][j].lo, m_[i][j].hi});
        vacuous_[i] = true;
        changed_ = true;
        for (std::size_t y = 0; y < tc_.size() && !inconsistent_; ++y) {
            if (y == i || vacuous_[y]) continue;
            refine(RuleId::VacuousColumn, y, i, Rat(0), Rat(0));
        }
    }

    // Positivity is seeded by explicit antecedents and top, and chains
    // forward: a required-positive Y with entry(Y, X) bounded below by a
    // positive value forces X positive as well.
    bool required_positive(std::size_t target) const {
        const std::size_t n = tc_.size();
        std::vector<bool> rp(n, false);
        std::vector<std::size_t> queue;
        for (std::size_t i = 0; i < n; ++i) {
            if (tc_.required_seed[i]) {
                rp[i] = true;
                queue.push_back(i);
            }
        }
        while (!queue.empty()) {
            std::size_t u = queue.back();
            queue.pop_back();
            for (std::size_t v = 0; v < n; ++v) {
                if (!rp[v] && m_[u][v].lo > 0) {
                    rp[v] = true;
                    queue.push_back(v);
                }
            }
        }
        return rp[target];
    }

    const KnowledgeBase* kb_;
    PropagationOptions opts_;
    TableauReasoner tableau_;
    TrackedConcepts tc_;
    std::vector<std::vector<Interval>> m_;
    std::vector<bool> vacuous_;
    std::vector<TraceStep> trace_;
    bool changed_ = false;
    bool inconsistent_ = false;
    std::string conflict_;
};

}  // namespace detail

inline PropagationResult propagate_to_fixpoint(const KnowledgeBase& kb,
                                               const PropagationOptions& opts = {}) {
    detail::PropagationEngine engine(kb, opts);
    return engine.run();
}

struct LocalConsistency {
    bool consistent_so_far;  // local rules are sound, not complete
    PropagationResult result;
};

inline LocalConsistency check_consistency_local(const KnowledgeBase& kb,
                                                const PropagationOptions& opts = {}) {
    PropagationResult r = propagate_to_fixpoint(kb, opts);
    bool ok = r.status != PropagationStatus::Inconsistent;
    return {ok, std::move(r)};
}

// ── Trace replay ────────────────────────────────────────────────────────────

// Applies a recorded trace to a blank matrix (all entries [0, 1]).  Every
// step must find the entry exactly as recorded; the return value is false
// when the trace ends in a clash step (after_lo > after_hi), mirroring an
// inconsistent run.
inline bool replay_trace(std::size_t n, const std::vector<TraceStep>& steps,
                         std::vector<std::vector<BoundPair>>& out) {
    out.assign(n, std::vector<BoundPair>(n, BoundPair{Rat(0), Rat(1)}));
    for (const TraceStep& s : steps) {
        if (s.row >= n || s.col >= n)
            throw std::logic_error("trace step indexes outside the tracked set");
        BoundPair& e = out[s.row][s.col];
        if (e.lo != s.before_lo || e.hi != s.before_hi)
            throw std::logic_error("trace step does not match the replayed matrix state");
        if (s.after_lo > s.after_hi) return false;
        e = {s.after_lo, s.after_hi};
    }
    return true;
}

inline std::string describe_step(const TrackedConcepts& tc, const TraceStep& s) {
    std::string out;
    if (s.rule == RuleId::VacuousMark) {
        out = "vacuous mark: '" + to_text(tc.concepts[s.row]) +
              "' admits no positive probability (empty candidate on (" +
              to_text(tc.concepts[s.row]) + ", " + to_text(tc.concepts[s.col]) + "))";
        return out;
    }
    out = std::string(rule_name(s.rule)) + ": (" + to_text(tc.concepts[s.row]) + ", " +
          to_text(tc.concepts[s.col]) + ") [" + rat_to_string(s.before_lo) + ", " +
          rat_to_string(s.before_hi) + "] -> [" + rat_to_string(s.after_lo) + ", " +
          rat_to_string(s.after_hi) + "]";
    if (s.third != kNoConcept) out += " (with " + to_text(tc.concepts[s.third]) + ")";
    if (s.after_lo > s.after_hi) out += " (empty intersection)";
    return out;
}

}  // namespace palc
