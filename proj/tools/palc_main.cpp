// Command-line front end for the probabilistic terminology library.
//
//   palc check    FILE [--method local|exact|both] ...
//   palc classify FILE [--json]
//   palc query    FILE --from CONCEPT --to CONCEPT [--method ...] ...
//   palc ranges   FILE [--method ...] [--compare] ...
//
// Exit codes are a stable contract:
//   0  success: consistent knowledge base, query answered
//   1  inconsistent knowledge base (with a conflict trace or an oracle detail)
//   2  usage, parse, or validation error
//   3  vacuous query antecedent: probability 0 in every admitted model
//   4  soundness violation: an exact result escaped its local bound, or an
//      internal self-check failed
//
// Apart from the opt-in --timings output, identical inputs produce
// byte-identical stdout.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "palc/oracle.hpp"
#include "palc/parser.hpp"
#include "palc/propagation.hpp"
#include "palc/tableau.hpp"

namespace {

using nlohmann::json;

constexpr int kExitConsistent = 0;
constexpr int kExitInconsistent = 1;
constexpr int kExitUsage = 2;
constexpr int kExitVacuous = 3;
constexpr int kExitSoundness = 4;

struct Options {
    std::string file;
    std::string method = "local";
    std::string from;
    std::string to;
    bool json_out = false;
    bool trace = false;
    bool timings = false;
    bool compare = false;
    std::size_t max_sweeps = 100;
    std::size_t atom_cap = 16;
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

std::string format_ms(double ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", ms);
    return buf;
}

std::string sweeps_text(std::size_t n) {
    return std::to_string(n) + (n == 1 ? " sweep" : " sweeps");
}

// Rationals serialize as {"num": int, "den": int}; components that overflow
// 64 bits fall back to decimal strings.
json rat_json(const palc::Rat& r) {
    auto component = [](const palc::BigInt& v) -> json {
        static const palc::BigInt lo64 = std::numeric_limits<std::int64_t>::min();
        static const palc::BigInt hi64 = std::numeric_limits<std::int64_t>::max();
        if (v < lo64 || v > hi64) return v.str();
        return v.convert_to<std::int64_t>();
    };
    return json{{"num", component(palc::rat_num(r))}, {"den", component(palc::rat_den(r))}};
}

json bounds_json(const palc::Rat& lo, const palc::Rat& hi) {
    return json{{"lo", rat_json(lo)}, {"hi", rat_json(hi)}};
}

json trace_json(const palc::TrackedConcepts& tc, const std::vector<palc::TraceStep>& steps) {
    json arr = json::array();
    for (const palc::TraceStep& s : steps) {
        arr.push_back(json{
            {"rule", palc::rule_name(s.rule)},
            {"row", palc::to_text(tc.concepts[s.row])},
            {"col", palc::to_text(tc.concepts[s.col])},
            {"third",
             s.third == palc::kNoConcept ? json() : json(palc::to_text(tc.concepts[s.third]))},
            {"before", bounds_json(s.before_lo, s.before_hi)},
            {"after", bounds_json(s.after_lo, s.after_hi)},
        });
    }
    return arr;
}

void print_trace_text(const palc::TrackedConcepts& tc, const std::vector<palc::TraceStep>& steps) {
    std::cout << "trace:\n";
    for (const palc::TraceStep& s : steps) std::cout << "  " << describe_step(tc, s) << "\n";
}

std::string interval_text(const palc::Interval& r) {
    return r.to_string() + " ~ " + r.to_decimal_string();
}

// Inconsistency verdicts go to stdout: they are the command's answer, not a
// usage failure.
void print_inconsistent(bool json_out, const std::string& detail) {
    if (json_out)
        std::cout << json{{"error", {{"kind", "inconsistent"}, {"detail", detail}}}}.dump(2)
                  << "\n";
    else
        std::cout << "inconsistent: " << detail << "\n";
}

std::optional<palc::ParseResult> parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read '" << path << "'\n";
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    palc::ParseResult result = palc::parse_kb(buf.str());
    for (const palc::Diagnostic& d : result.diagnostics)
        std::cerr << path << ":" << palc::format_diagnostic(d) << "\n";
    if (!result.ok()) return std::nullopt;
    return result;
}

// Builds the validated knowledge base; on failure prints the verdict and
// returns the exit code (0 = built).
int build_kb(palc::ParseResult parsed, bool json_out, std::optional<palc::KnowledgeBase>& out) {
    try {
        out = palc::validate_kb(std::move(parsed.terminology), std::move(parsed.conditionings));
        return kExitConsistent;
    } catch (const palc::UnsatisfiableAntecedent& e) {
        print_inconsistent(json_out, e.what());
        return kExitInconsistent;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

struct LocalRun {
    palc::PropagationResult result;
    double ms = 0;
};

std::optional<LocalRun> maybe_run_local(const palc::KnowledgeBase& kb, const Options& opt,
                                        bool enabled, std::vector<palc::Concept> extras = {}) {
    if (!enabled) return std::nullopt;
    palc::PropagationOptions po;
    po.max_sweeps = opt.max_sweeps;
    po.extra_concepts = std::move(extras);
    auto start = std::chrono::steady_clock::now();
    LocalRun run{palc::propagate_to_fixpoint(kb, po), 0};
    run.ms = elapsed_ms(start);
    return run;
}

int run_check(const Options& opt) {
    auto parsed = parse_file(opt.file);
    if (!parsed) return kExitUsage;
    std::optional<palc::KnowledgeBase> kb;
    if (int rc = build_kb(std::move(*parsed), opt.json_out, kb); rc != 0) return rc;

    const bool with_local = opt.method != "exact";
    const bool with_exact = opt.method != "local";

    auto local = maybe_run_local(*kb, opt, with_local);

    std::optional<palc::ConsistencyReport> exact;
    double exact_ms = 0;
    if (with_exact) {
        auto start = std::chrono::steady_clock::now();
        try {
            palc::ExactOracle oracle(*kb, opt.atom_cap);
            exact = oracle.check_consistency();
        } catch (const std::runtime_error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitUsage;
        }
        exact_ms = elapsed_ms(start);
    }

    const bool local_clash =
        local && local->result.status == palc::PropagationStatus::Inconsistent;
    if (local_clash && exact && exact->consistent) {
        std::cerr << "soundness violation: local propagation found the conflict \""
                  << local->result.conflict << "\", but the exact oracle found a model\n";
        return kExitSoundness;
    }
    const bool consistent = !local_clash && (!exact || exact->consistent);

    if (opt.json_out) {
        json j;
        j["command"] = "check";
        j["file"] = opt.file;
        j["method"] = opt.method;
        j["consistent"] = consistent;
        j["local"] = nullptr;
        j["exact"] = nullptr;
        j["trace"] = nullptr;
        if (local) {
            const palc::PropagationResult& r = local->result;
            json vac = json::array();
            for (std::size_t i = 0; i < r.tracked.size(); ++i)
                if (r.vacuous[i]) vac.push_back(palc::to_text(r.tracked.concepts[i]));
            j["local"] = json{
                {"consistent", !local_clash},
                {"sweeps", r.sweeps},
                {"sweep_cap_reached", r.status == palc::PropagationStatus::SweepCapReached},
                {"conflict", local_clash ? json(r.conflict) : json()},
                {"vacuous", std::move(vac)},
            };
            if (opt.trace || local_clash) j["trace"] = trace_json(r.tracked, r.trace);
        }
        if (exact)
            j["exact"] = json{{"consistent", exact->consistent}, {"detail", exact->detail}};
        if (opt.timings) {
            json t;
            if (local) t["local_ms"] = local->ms;
            if (exact) t["exact_ms"] = exact_ms;
            j["timings"] = std::move(t);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        if (local) {
            const palc::PropagationResult& r = local->result;
            if (local_clash) {
                std::cout << "local propagation: inconsistent\n";
                std::cout << "conflict: " << r.conflict << "\n";
                print_trace_text(r.tracked, r.trace);
            } else {
                std::cout << "local propagation: no conflict ("
                          << (r.status == palc::PropagationStatus::SweepCapReached
                                  ? "sweep cap " + std::to_string(opt.max_sweeps) +
                                        " reached before the fixpoint"
                                  : "fixpoint after " + sweeps_text(r.sweeps))
                          << ")\n";
                std::string vac;
                for (std::size_t i = 0; i < r.tracked.size(); ++i)
                    if (r.vacuous[i])
                        vac += (vac.empty() ? "" : ", ") + palc::to_text(r.tracked.concepts[i]);
                if (!vac.empty())
                    std::cout << "note: probability 0 in every model: " << vac << "\n";
                if (opt.trace) print_trace_text(r.tracked, r.trace);
            }
        }
        if (exact) {
            if (exact->consistent)
                std::cout << "exact oracle: consistent (" << exact->detail << ")\n";
            else
                std::cout << "exact oracle: inconsistent\ndetail: " << exact->detail << "\n";
        }
        if (opt.timings) {
            if (local)
                std::cout << "timing: local propagation " << format_ms(local->ms) << " ms\n";
            if (exact) std::cout << "timing: exact oracle " << format_ms(exact_ms) << " ms\n";
        }
        std::cout << "result: " << (consistent ? "consistent" : "inconsistent") << "\n";
    }
    return consistent ? kExitConsistent : kExitInconsistent;
}

int run_classify(const Options& opt) {
    auto parsed = parse_file(opt.file);
    if (!parsed) return kExitUsage;
    palc::Terminology term = std::move(parsed->terminology);
    try {
        term.validate();
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    palc::TableauReasoner reasoner(term);
    palc::Hierarchy h = palc::classify(reasoner);
    auto label = [&h](std::size_t id) -> std::string {
        if (id == palc::Hierarchy::kTopClass) return "top";
        if (id == palc::Hierarchy::kBottomClass) return "bottom";
        return h.classes[id].front();
    };
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& [child, parent] : h.edges) edges.emplace_back(label(child), label(parent));
    std::sort(edges.begin(), edges.end());

    if (opt.json_out) {
        json nodes = json::array();
        for (std::size_t id = 0; id < h.classes.size(); ++id)
            nodes.push_back(json{{"label", label(id)}, {"members", h.classes[id]}});
        json edge_arr = json::array();
        for (const auto& [child, parent] : edges)
            edge_arr.push_back(json{{"child", child}, {"parent", parent}});
        std::cout << json{{"command", "classify"},
                          {"file", opt.file},
                          {"nodes", std::move(nodes)},
                          {"edges", std::move(edge_arr)}}
                         .dump(2)
                  << "\n";
    } else {
        for (const auto& [child, parent] : edges) std::cout << child << " < " << parent << "\n";
    }
    return kExitConsistent;
}

std::optional<palc::Concept> parse_query_concept(const std::string& text, const char* flag) {
    std::vector<palc::Diagnostic> diags;
    auto c = palc::parse_concept_text(text, diags);
    for (const palc::Diagnostic& d : diags)
        std::cerr << flag << ": " << palc::format_diagnostic(d) << "\n";
    return c;
}

int run_query(const Options& opt) {
    auto parsed = parse_file(opt.file);
    if (!parsed) return kExitUsage;
    std::optional<palc::KnowledgeBase> kb;
    if (int rc = build_kb(std::move(*parsed), opt.json_out, kb); rc != 0) return rc;

    auto from = parse_query_concept(opt.from, "--from");
    auto to = parse_query_concept(opt.to, "--to");
    if (!from || !to) return kExitUsage;
    try {
        kb->terminology().check_concept(*from, "--from");
        kb->terminology().check_concept(*to, "--to");
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    const bool with_local = opt.method != "exact";
    const bool with_exact = opt.method != "local";

    auto local = maybe_run_local(*kb, opt, with_local, {*from, *to});

    std::optional<palc::Interval> exact_range;
    bool exact_vacuous = false;
    std::optional<std::string> exact_inconsistent;
    double exact_ms = 0;
    if (with_exact) {
        auto start = std::chrono::steady_clock::now();
        try {
            palc::ExactOracle oracle(*kb, opt.atom_cap);
            exact_range = oracle.entail_range(*from, *to).range;
        } catch (const palc::VacuousAntecedent&) {
            exact_vacuous = true;
        } catch (const palc::InconsistentKB& e) {
            exact_inconsistent = e.what();
        } catch (const std::runtime_error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitUsage;
        }
        exact_ms = elapsed_ms(start);
    }

    const bool local_clash =
        local && local->result.status == palc::PropagationStatus::Inconsistent;
    if (local_clash && with_exact && !exact_inconsistent) {
        std::cerr << "soundness violation: local propagation found the conflict \""
                  << local->result.conflict << "\", but the exact oracle answered the query\n";
        return kExitSoundness;
    }
    if (local_clash) {
        print_inconsistent(opt.json_out, local->result.conflict);
        return kExitInconsistent;
    }
    if (exact_inconsistent) {
        print_inconsistent(opt.json_out, *exact_inconsistent);
        return kExitInconsistent;
    }

    std::optional<palc::Interval> local_range;
    bool local_vacuous = false;
    if (local) {
        const palc::PropagationResult& r = local->result;
        std::size_t i = r.tracked.index_of(*from);
        std::size_t j = r.tracked.index_of(*to);
        local_vacuous = r.vacuous[i];
        if (!local_vacuous) local_range = r.matrix[i][j];
    }

    if (local && with_exact && local_vacuous && !exact_vacuous) {
        std::cerr << "soundness violation: local propagation proved the antecedent vacuous, "
                     "but the exact oracle gives it positive probability\n";
        return kExitSoundness;
    }
    if (local_range && exact_range && !local_range->contains(*exact_range)) {
        std::cerr << "soundness violation: exact range " << exact_range->to_string()
                  << " escapes local range " << local_range->to_string() << "\n";
        return kExitSoundness;
    }

    const bool vacuous = with_exact ? exact_vacuous : local_vacuous;
    std::string agreement = "equal";
    if (vacuous) {
        agreement = "vacuous";
        local_range.reset();
        exact_range.reset();
    } else if (local_range && exact_range && !(*local_range == *exact_range)) {
        agreement = "local_contains_exact";
    }

    const std::string from_text = palc::to_text(palc::normalize(*from));
    const std::string to_text_ = palc::to_text(palc::normalize(*to));
    if (opt.json_out) {
        json j;
        j["query"] = json{{"antecedent", from_text}, {"consequent", to_text_}};
        j["local"] = local_range ? bounds_json(local_range->lo, local_range->hi) : json();
        j["exact"] = exact_range ? bounds_json(exact_range->lo, exact_range->hi) : json();
        j["agreement"] = agreement;
        j["trace"] = (opt.trace && local) ? trace_json(local->result.tracked, local->result.trace)
                                          : json();
        if (opt.timings) {
            json t;
            if (local) t["local_ms"] = local->ms;
            if (with_exact) t["exact_ms"] = exact_ms;
            j["timings"] = std::move(t);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        const std::string vacuous_text =
            "vacuous (the antecedent has probability 0 in every admitted model)";
        std::cout << "query: (" << from_text << " -> " << to_text_ << ")\n";
        if (local)
            std::cout << "local: " << (local_range ? interval_text(*local_range) : vacuous_text)
                      << "\n";
        if (with_exact)
            std::cout << "exact: " << (exact_range ? interval_text(*exact_range) : vacuous_text)
                      << "\n";
        std::cout << "agreement: " << agreement << "\n";
        if (opt.trace && local) print_trace_text(local->result.tracked, local->result.trace);
        if (opt.timings) {
            if (local)
                std::cout << "timing: local propagation " << format_ms(local->ms) << " ms\n";
            if (with_exact) std::cout << "timing: exact oracle " << format_ms(exact_ms) << " ms\n";
        }
    }
    return vacuous ? kExitVacuous : kExitConsistent;
}

int run_ranges(const Options& opt) {
    auto parsed = parse_file(opt.file);
    if (!parsed) return kExitUsage;
    std::optional<palc::KnowledgeBase> kb;
    if (int rc = build_kb(std::move(*parsed), opt.json_out, kb); rc != 0) return rc;

    const bool with_local = opt.compare || opt.method != "exact";
    const bool with_exact = opt.compare || opt.method != "local";
    const std::vector<std::string>& names = kb->terminology().concept_names();
    const std::size_t n = names.size();

    auto local = maybe_run_local(*kb, opt, with_local);
    const bool local_clash =
        local && local->result.status == palc::PropagationStatus::Inconsistent;

    std::vector<palc::EntailedRange> exact_rows;
    std::optional<std::string> exact_inconsistent;
    bool exact_ran = false;
    double exact_ms = 0;
    if (with_exact) {
        auto start = std::chrono::steady_clock::now();
        try {
            palc::ExactOracle oracle(*kb, opt.atom_cap);
            std::vector<palc::Concept> syms;
            for (const std::string& name : names) syms.push_back(palc::Concept::symbol(name));
            exact_rows = oracle.minimal_ranges(syms);
            exact_ran = true;
        } catch (const palc::InconsistentKB& e) {
            exact_inconsistent = e.what();
        } catch (const std::runtime_error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitUsage;
        }
        exact_ms = elapsed_ms(start);
    }

    if (local_clash && with_exact && !exact_inconsistent) {
        std::cerr << "soundness violation: local propagation found the conflict \""
                  << local->result.conflict << "\", but the exact oracle answered\n";
        return kExitSoundness;
    }
    if (local_clash) {
        print_inconsistent(opt.json_out, local->result.conflict);
        return kExitInconsistent;
    }
    if (exact_inconsistent) {
        print_inconsistent(opt.json_out, *exact_inconsistent);
        return kExitInconsistent;
    }

    std::vector<std::size_t> tracked_index(n);
    if (local)
        for (std::size_t i = 0; i < n; ++i)
            tracked_index[i] = local->result.tracked.index_of(palc::Concept::symbol(names[i]));

    struct PairReport {
        std::optional<palc::Interval> local;
        std::optional<palc::Interval> exact;
        bool vacuous = false;
        std::string agreement;
    };
    std::vector<PairReport> pairs(n * n);
    std::optional<palc::Rat> max_slack;
    std::size_t slack_row = 0, slack_col = 0;

    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            PairReport& pr = pairs[r * n + c];
            bool local_vac = false;
            if (local) {
                local_vac = local->result.vacuous[tracked_index[r]];
                if (!local_vac)
                    pr.local = local->result.matrix[tracked_index[r]][tracked_index[c]];
            }
            bool exact_vac = false;
            if (exact_ran) {
                const palc::EntailedRange& er = exact_rows[r * n + c];
                exact_vac = er.vacuous;
                if (!exact_vac) pr.exact = er.range;
            }
            if (local && exact_ran && local_vac && !exact_vac) {
                std::cerr << "soundness violation: local propagation proved '" << names[r]
                          << "' vacuous, but the exact oracle gives it positive probability\n";
                return kExitSoundness;
            }
            pr.vacuous = exact_ran ? exact_vac : local_vac;
            if (pr.vacuous) {
                pr.local.reset();
                pr.exact.reset();
                pr.agreement = "vacuous";
                continue;
            }
            if (pr.local && pr.exact) {
                if (!pr.local->contains(*pr.exact)) {
                    std::cerr << "soundness violation: exact range " << pr.exact->to_string()
                              << " escapes local range " << pr.local->to_string() << " for ("
                              << names[r] << ", " << names[c] << ")\n";
                    return kExitSoundness;
                }
                pr.agreement = *pr.local == *pr.exact ? "equal" : "local_contains_exact";
                palc::Rat slack = pr.local->width() - pr.exact->width();
                if (!max_slack || slack > *max_slack) {
                    max_slack = slack;
                    slack_row = r;
                    slack_col = c;
                }
            } else {
                pr.agreement = "equal";
            }
        }
    }

    const bool compared = local.has_value() && exact_ran;
    const std::string method_label = compared      ? "local vs exact"
                                     : local       ? "local propagation"
                                                   : "exact oracle";
    if (opt.json_out) {
        json rows = json::array();
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                const PairReport& pr = pairs[r * n + c];
                json j{{"antecedent", names[r]},
                       {"consequent", names[c]},
                       {"local", pr.local ? bounds_json(pr.local->lo, pr.local->hi) : json()},
                       {"exact", pr.exact ? bounds_json(pr.exact->lo, pr.exact->hi) : json()},
                       {"vacuous", pr.vacuous}};
                if (compared) j["agreement"] = pr.agreement;
                rows.push_back(std::move(j));
            }
        }
        json out{{"command", "ranges"},
                 {"file", opt.file},
                 {"method", method_label},
                 {"concepts", names},
                 {"pairs", std::move(rows)}};
        if (compared)
            out["max_slack"] = max_slack ? json{{"value", rat_json(*max_slack)},
                                                {"antecedent", names[slack_row]},
                                                {"consequent", names[slack_col]}}
                                         : json();
        if (opt.timings) {
            json t;
            if (local) t["local_ms"] = local->ms;
            if (exact_ran) t["exact_ms"] = exact_ms;
            out["timings"] = std::move(t);
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "ranges over " << n << " named concept" << (n == 1 ? "" : "s") << " ("
                  << method_label << ")\n";
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                const PairReport& pr = pairs[r * n + c];
                std::cout << "(" << names[r] << ", " << names[c] << "): ";
                if (pr.vacuous)
                    std::cout << "vacuous";
                else if (pr.local && pr.exact)
                    std::cout << "local " << pr.local->to_string() << ", exact "
                              << pr.exact->to_string() << ", " << pr.agreement;
                else if (pr.local)
                    std::cout << pr.local->to_string();
                else
                    std::cout << pr.exact->to_string();
                std::cout << "\n";
            }
        }
        if (compared) {
            if (max_slack)
                std::cout << "maximal slack: " << palc::rat_to_string(*max_slack) << " at ("
                          << names[slack_row] << ", " << names[slack_col] << ")\n";
            else
                std::cout << "maximal slack: none\n";
        }
        if (opt.timings) {
            if (local)
                std::cout << "timing: local propagation " << format_ms(local->ms) << " ms\n";
            if (exact_ran)
                std::cout << "timing: exact oracle " << format_ms(exact_ms) << " ms\n";
        }
    }
    return kExitConsistent;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"terminological reasoner with interval probabilities"};
    app.require_subcommand(1);

    auto add_common = [&opt](CLI::App* sub, bool with_method) {
        sub->add_option("file", opt.file, "knowledge file")->required();
        sub->add_flag("--json", opt.json_out, "emit a JSON report");
        if (with_method) {
            sub->add_option("--method", opt.method,
                            "reasoning method: local propagation, the exact oracle, or both")
                ->check(CLI::IsMember({"local", "exact", "both"}));
            sub->add_option("--max-sweeps", opt.max_sweeps, "propagation sweep cap");
            sub->add_option("--atom-cap", opt.atom_cap, "concept signature cap for the oracle");
            sub->add_flag("--trace", opt.trace, "print every propagation step");
            sub->add_flag("--timings", opt.timings, "report per-method wall time");
        }
    };

    CLI::App* check = app.add_subcommand("check", "check joint consistency");
    add_common(check, true);
    CLI::App* classify = app.add_subcommand("classify", "print the subsumption hierarchy");
    add_common(classify, false);
    CLI::App* query =
        app.add_subcommand("query", "conditional probability range for one concept pair");
    add_common(query, true);
    query->add_option("--from", opt.from, "antecedent concept")->required();
    query->add_option("--to", opt.to, "consequent concept")->required();
    CLI::App* ranges =
        app.add_subcommand("ranges", "minimal ranges for every pair of named concepts");
    add_common(ranges, true);
    ranges->add_flag("--compare", opt.compare, "run both methods and flag agreement per pair");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    if (sub != classify && sub->count("--method") == 0 && !(sub == ranges && opt.compare))
        std::cerr << "hint: no --method given; using local propagation only (sound, not "
                     "complete); pass --method both to cross-check against the exact oracle\n";

    try {
        if (sub == check) return run_check(opt);
        if (sub == classify) return run_classify(opt);
        if (sub == query) return run_query(opt);
        return run_ranges(opt);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitSoundness;
    }
}
