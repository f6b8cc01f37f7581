#include "planq/judge.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "planq/grammar.hpp"
#include "planq/landmarks.hpp"

namespace planq::judge {

using questions::TaskKind;

namespace {

constexpr std::array<std::string_view, 4> kDecidedBy = {"stored-metadata", "trivial-rule", "planner-call",
                                                        "parse-failure"};

ScoreRecord scored(const QuestionRecord& r, double score, DecidedBy by, std::string detail) {
    return {r.id, score, by, false, std::move(detail)};
}

ScoreRecord parse_failure(const QuestionRecord& r, std::string detail) {
    return scored(r, 0.0, DecidedBy::ParseFailure, std::move(detail));
}

ScoreRecord abstain(const QuestionRecord& r, std::string detail) {
    return {r.id, 0.0, DecidedBy::PlannerCall, true, std::move(detail)};
}

template <typename Meta>
const Meta& meta_of(const QuestionRecord& r, TaskKind expected) {
    if (r.kind != expected) {
        throw WrongKind("record " + r.id + " is a " + std::string(questions::to_string(r.kind)) + " question, not " +
                        std::string(questions::to_string(expected)));
    }
    return std::get<Meta>(r.meta);
}

std::set<std::string> canonical_set(const std::vector<std::string>& names) {
    std::set<std::string> out;
    for (const auto& n : names) out.insert(canonical_name(n));
    return out;
}

bool contains(const std::vector<std::string>& names, const std::string& name) {
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::optional<std::string> first_unknown_action(const PlanningTask& task, const std::vector<std::string>& names) {
    for (const auto& n : names) {
        if (!task.find_action(n)) return n;
    }
    return std::nullopt;
}

std::optional<std::string> first_unknown_fact(const PlanningTask& task, const std::vector<std::string>& names) {
    for (const auto& n : names) {
        if (!task.find_fact(n)) return n;
    }
    return std::nullopt;
}

ScoreRecord solve_for_goal(const QuestionRecord& r, std::vector<FactId> goal, const planner::SearchBudget& budget,
                           const std::string& what) {
    const auto outcome = planner::solve(r.snapshot.with_goal(std::move(goal)), budget);
    switch (outcome.kind) {
        case planner::SolveOutcome::Kind::Plan:
            return scored(r, 0.0, DecidedBy::PlannerCall, what + " is reachable");
        case planner::SolveOutcome::Kind::Unsolvable:
            return scored(r, 1.0, DecidedBy::PlannerCall, what + " is unreachable");
        case planner::SolveOutcome::Kind::Unknown:
            break;
    }
    return abstain(r, "planner budget exhausted checking " + what);
}

}  // namespace

std::string_view to_string(DecidedBy d) { return kDecidedBy[static_cast<std::size_t>(d)]; }

std::optional<DecidedBy> parse_decided_by(std::string_view text) {
    for (std::size_t i = 0; i < kDecidedBy.size(); ++i) {
        if (kDecidedBy[i] == text) return static_cast<DecidedBy>(i);
    }
    return std::nullopt;
}

ScoreRecord judge_app(const std::vector<std::string>& answer, const QuestionRecord& record) {
    const auto& meta = meta_of<questions::AppMeta>(record, TaskKind::App);
    if (auto bad = first_unknown_action(record.snapshot, answer)) return parse_failure(record, "unknown action " + *bad);
    const bool equal = canonical_set(answer) == canonical_set(meta.gold);
    return scored(record, equal ? 1.0 : 0.0, DecidedBy::StoredMetadata,
                  equal ? "matches all applicable actions" : "differs from the applicable actions");
}

ScoreRecord judge_app_jaccard(const std::vector<std::string>& answer, const QuestionRecord& record) {
    const auto& meta = meta_of<questions::AppMeta>(record, TaskKind::App);
    const auto given = canonical_set(answer);
    const auto gold = canonical_set(meta.gold);
    std::size_t common = 0;
    for (const auto& n : given) common += gold.count(n);
    const std::size_t joint = given.size() + gold.size() - common;
    const double score = joint == 0 ? 1.0 : static_cast<double>(common) / static_cast<double>(joint);
    return scored(record, score, DecidedBy::StoredMetadata,
                  std::to_string(common) + " of " + std::to_string(joint) + " actions shared");
}

ScoreRecord judge_prog(const std::vector<std::string>& positive, const std::vector<std::string>& negative,
                       const QuestionRecord& record) {
    const auto& meta = meta_of<questions::ProgMeta>(record, TaskKind::Prog);
    if (auto bad = first_unknown_fact(record.snapshot, positive)) return parse_failure(record, "unknown fact " + *bad);
    if (auto bad = first_unknown_fact(record.snapshot, negative)) return parse_failure(record, "unknown fact " + *bad);
    const bool pos_ok = canonical_set(positive) == canonical_set(meta.pos);
    const bool neg_ok = canonical_set(negative) == canonical_set(meta.neg);
    const bool ok = pos_ok && neg_ok;
    return scored(record, ok ? 1.0 : 0.0, DecidedBy::StoredMetadata,
                  ok ? "both effect sets correct" : (pos_ok ? "negative effects wrong" : "positive effects wrong"));
}

ScoreRecord judge_reach(const std::optional<std::string>& answer, const QuestionRecord& record,
                        const planner::SearchBudget& budget) {
    const auto& meta = meta_of<questions::ReachMeta>(record, TaskKind::Reach);
    if (!answer) {
        const bool none = meta.negatives.empty();
        return scored(record, none ? 1.0 : 0.0, DecidedBy::StoredMetadata,
                      none ? "all facts are reachable" : "unreachable facts exist");
    }
    const auto name = canonical_name(*answer);
    const auto fact = record.snapshot.find_fact(name);
    if (!fact) return parse_failure(record, "unknown fact " + name);
    if (contains(meta.negatives, name)) return scored(record, 1.0, DecidedBy::StoredMetadata, name + " is known unreachable");
    return solve_for_goal(record, {*fact}, budget, name);
}

ScoreRecord judge_areach(const std::optional<std::string>& answer, const QuestionRecord& record,
                         const planner::SearchBudget& budget) {
    const auto& meta = meta_of<questions::AReachMeta>(record, TaskKind::AReach);
    if (!answer) {
        const bool none = meta.negatives.empty();
        return scored(record, none ? 1.0 : 0.0, DecidedBy::StoredMetadata,
                      none ? "all actions are reachable" : "unreachable actions exist");
    }
    const auto name = canonical_name(*answer);
    const auto action = record.snapshot.find_action(name);
    if (!action) return parse_failure(record, "unknown action " + name);
    if (contains(meta.negatives, name)) return scored(record, 1.0, DecidedBy::StoredMetadata, name + " is known unreachable");
    return solve_for_goal(record, record.snapshot.action(*action).pre, budget, "precondition of " + name);
}

ScoreRecord judge_val(std::uint64_t index, const QuestionRecord& record) {
    const auto& meta = meta_of<questions::ValMeta>(record, TaskKind::Val);
    const bool ok = index == meta.gold_index;
    return scored(record, ok ? 1.0 : 0.0, DecidedBy::StoredMetadata,
                  "first inapplicable action is at " + std::to_string(meta.gold_index));
}

ScoreRecord judge_just(const std::vector<std::string>& answer, const QuestionRecord& record) {
    const auto& meta = meta_of<questions::JustMeta>(record, TaskKind::Just);
    Plan plan;
    for (const auto& n : answer) {
        const auto id = record.snapshot.find_action(n);
        if (!id) return parse_failure(record, "unknown action " + canonical_name(n));
        plan.push_back(*id);
    }
    if (plan.size() >= meta.plan.size()) return scored(record, 0.0, DecidedBy::TrivialRule, "not a proper subsequence");
    std::size_t matched = 0;
    for (const auto& step : meta.plan) {
        if (matched < plan.size() && record.snapshot.action(plan[matched]).name == step) ++matched;
    }
    if (matched != plan.size()) return scored(record, 0.0, DecidedBy::TrivialRule, "not a subsequence of the plan");
    const bool valid = is_plan(record.snapshot, record.snapshot.init(), plan);
    return scored(record, valid ? 1.0 : 0.0, DecidedBy::StoredMetadata,
                  valid ? "valid simplified plan" : "subsequence is not a plan");
}

ScoreRecord judge_land(const std::optional<std::string>& answer, const QuestionRecord& record,
                       const planner::SearchBudget& budget) {
    const auto& meta = meta_of<questions::LandMeta>(record, TaskKind::Land);
    const auto& task = record.snapshot;
    if (!answer) {
        std::size_t covered = 0;
        for (const auto& f : task.facts()) {
            if (landmarks::is_trivial(task, f.id) || contains(meta.known_nonlandmarks, f.name)) ++covered;
        }
        const bool none = meta.known_landmarks.empty() && covered == task.num_facts();
        return scored(record, none ? 1.0 : 0.0, DecidedBy::StoredMetadata,
                      none ? "no non-trivial landmark exists" : "a non-trivial landmark may exist");
    }
    const auto name = canonical_name(*answer);
    const auto fact = task.find_fact(name);
    if (!fact) return parse_failure(record, "unknown fact " + name);
    if (landmarks::is_trivial(task, *fact)) return scored(record, 0.0, DecidedBy::TrivialRule, name + " is a trivial landmark");
    if (contains(meta.known_nonlandmarks, name)) return scored(record, 0.0, DecidedBy::StoredMetadata, name + " is not a landmark");
    if (contains(meta.known_landmarks, name)) return scored(record, 1.0, DecidedBy::StoredMetadata, name + " is a landmark");
    const auto verdict = landmarks::classify_landmark(task, *fact, budget);
    switch (verdict.kind) {
        case landmarks::Verdict::Kind::Landmark:
            return scored(record, 1.0, DecidedBy::PlannerCall, name + " is a landmark");
        case landmarks::Verdict::Kind::NonLandmark:
            return scored(record, 0.0, DecidedBy::PlannerCall, name + " is avoided by some plan");
        case landmarks::Verdict::Kind::Trivial:
            return scored(record, 0.0, DecidedBy::TrivialRule, name + " is a trivial landmark");
        case landmarks::Verdict::Kind::Unknown:
            break;
    }
    return abstain(record, "planner budget exhausted classifying " + name);
}

ScoreRecord judge_nexta(const std::string& answer, const QuestionRecord& record, const planner::SearchBudget& budget) {
    const auto& meta = meta_of<questions::NextaMeta>(record, TaskKind::NextA);
    const auto name = canonical_name(answer);
    const auto id = record.snapshot.find_action(name);
    if (!id) return parse_failure(record, "unknown action " + name);
    if (contains(meta.good, name)) return scored(record, 1.0, DecidedBy::StoredMetadata, name + " starts an optimal plan");
    if (contains(meta.bad, name)) return scored(record, 0.0, DecidedBy::StoredMetadata, name + " does not decrease h*");
    const auto& action = record.snapshot.action(*id);
    const auto& state = record.snapshot.init();
    if (!is_applicable(state, action)) return scored(record, 0.0, DecidedBy::TrivialRule, name + " is not applicable");
    const auto next = planner::optimal_cost(record.snapshot, apply(state, action), budget);
    if (next.kind == planner::Cost::Kind::Unknown) return abstain(record, "planner budget exhausted after " + name);
    const bool ok = next.finite() && next.value + 1 == meta.hstar;
    return scored(record, ok ? 1.0 : 0.0, DecidedBy::PlannerCall,
                  ok ? name + " decreases h* by one" : name + " does not decrease h* by one");
}

ScoreRecord judge_response(std::string_view raw, const QuestionRecord& record, Mode mode,
                           const planner::SearchBudget& budget) {
    using namespace grammar;
    auto failed = [&](const ParsedAnswer& parsed) -> std::optional<ScoreRecord> {
        if (const auto* f = std::get_if<ParseFailed>(&parsed)) return parse_failure(record, f->reason);
        return std::nullopt;
    };
    switch (record.kind) {
        case TaskKind::App: {
            const auto parsed = std::get<ActionList>(parse_action_list(raw));
            return mode == Mode::JaccardApp ? judge_app_jaccard(parsed.names, record) : judge_app(parsed.names, record);
        }
        case TaskKind::Prog: {
            const auto parsed = parse_progression_list(raw);
            if (auto f = failed(parsed)) return *f;
            const auto& pair = std::get<ProgressionPair>(parsed);
            return judge_prog(pair.positive, pair.negative, record);
        }
        case TaskKind::Reach:
        case TaskKind::Land: {
            const auto parsed = parse_fact(raw);
            if (auto f = failed(parsed)) return *f;
            std::optional<std::string> fact;
            if (const auto* n = std::get_if<FactName>(&parsed)) fact = n->name;
            return record.kind == TaskKind::Reach ? judge_reach(fact, record, budget) : judge_land(fact, record, budget);
        }
        case TaskKind::AReach:
        case TaskKind::NextA: {
            const auto parsed = parse_act(raw);
            if (auto f = failed(parsed)) return *f;
            const auto* n = std::get_if<ActionName>(&parsed);
            if (record.kind == TaskKind::AReach) {
                return judge_areach(n ? std::optional<std::string>(n->name) : std::nullopt, record, budget);
            }
            if (!n) return parse_failure(record, "expected an action, got None");
            return judge_nexta(n->name, record, budget);
        }
        case TaskKind::Val: {
            const auto parsed = parse_index(raw);
            if (auto f = failed(parsed)) return *f;
            return judge_val(std::get<Index>(parsed).value, record);
        }
        case TaskKind::Just:
            return judge_just(std::get<ActionList>(parse_action_list(raw)).names, record);
    }
    return parse_failure(record, "unknown task kind");
}

}  // namespace planq::judge
