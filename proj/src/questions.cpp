#include "planq/questions.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "planq/landmarks.hpp"

namespace planq::questions {

namespace {

constexpr std::array<std::string_view, 8> kKindNames = {"app", "prog", "reach", "areach",
                                                        "val", "just", "land", "nexta"};

QuestionRecord make_record(TaskKind kind, const PlanningTask& task, const State& state, QuestionMeta meta) {
    QuestionRecord r;
    r.kind = kind;
    r.snapshot = task.with_init(state);
    r.meta = std::move(meta);
    return r;
}

std::size_t draw(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

template <typename Id>
std::vector<Id> first_n(std::vector<Id> ids, std::size_t n) {
    if (ids.size() > n) ids.resize(n);
    return ids;
}

// Facts that no action adds and that do not hold now.
std::vector<bool> statically_false(const PlanningTask& task, const State& state) {
    std::vector<bool> added(task.num_facts(), false);
    for (const auto& a : task.actions()) {
        for (FactId f : a.add) added[f] = true;
    }
    std::vector<bool> out(task.num_facts(), false);
    for (FactId f = 0; f < task.num_facts(); ++f) out[f] = !added[f] && !state.contains(f);
    return out;
}

std::vector<Removable> describe(const PlanningTask& task, const Plan& plan, const Deletion& d) {
    std::vector<Removable> out;
    for (std::size_t i = d.start; i < d.start + d.length; ++i) {
        const std::size_t occurrence =
            static_cast<std::size_t>(std::count(plan.begin(), plan.begin() + static_cast<std::ptrdiff_t>(i) + 1, plan[i]));
        out.push_back({task.action(plan[i]).name, occurrence});
    }
    return out;
}

Plan erase_block(const Plan& plan, const Deletion& d) {
    Plan out = plan;
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(d.start),
              out.begin() + static_cast<std::ptrdiff_t>(d.start + d.length));
    return out;
}

QuestionRecord just_record(const PlanningTask& task, const State& state, const Plan& plan, const Deletion& d,
                           bool optimal_base) {
    JustMeta meta;
    meta.plan = task.action_names(plan);
    meta.removable = describe(task, plan, d);
    meta.optimal_base = optimal_base;
    auto r = make_record(TaskKind::Just, task, state, std::move(meta));
    r.prompt.sequence = task.action_names(plan);
    return r;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

}  // namespace

std::string_view to_string(TaskKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::optional<TaskKind> parse_task_kind(std::string_view text) {
    for (std::size_t i = 0; i < kKindNames.size(); ++i) {
        if (kKindNames[i] == text) return static_cast<TaskKind>(i);
    }
    return std::nullopt;
}

Generated gen_app(const PlanningTask& task, const State& state, std::size_t bound) {
    const auto applicable = applicable_actions(state, task);
    if (applicable.empty()) return Skip{"no applicable actions"};
    if (applicable.size() > bound) {
        return Skip{std::to_string(applicable.size()) + " applicable actions exceed bound " + std::to_string(bound)};
    }
    return make_record(TaskKind::App, task, state, AppMeta{task.action_names(applicable)});
}

Generated gen_prog_for(const PlanningTask& task, const State& state, ActionId action) {
    const auto& a = task.action(action);
    if (!is_applicable(state, a)) return Skip{a.name + " is not applicable"};
    const auto delta = progression_delta(state, a);
    auto r = make_record(TaskKind::Prog, task, state,
                         ProgMeta{task.fact_names(delta.positive), task.fact_names(delta.negative)});
    r.prompt.action = a.name;
    return r;
}

Generated gen_prog(const PlanningTask& task, const State& state, std::uint64_t seed) {
    const auto applicable = applicable_actions(state, task);
    if (applicable.empty()) return Skip{"no applicable actions"};
    std::mt19937_64 rng(seed);
    return gen_prog_for(task, state, applicable[draw(rng, applicable.size())]);
}

Generated gen_reach(const PlanningTask& task, const State& state, const planner::SearchBudget& budget) {
    std::vector<bool> unreachable = statically_false(task, state);
    std::vector<bool> relaxed(task.num_facts(), false);
    for (FactId f : planner::relaxed_reachable(task, state).facts) relaxed[f] = true;
    std::vector<FactId> negatives;
    for (FactId f = 0; f < task.num_facts(); ++f) {
        if (unreachable[f] || !relaxed[f]) negatives.push_back(f);
    }
    if (negatives.empty()) {
        const auto exploration = planner::explore(task, state, budget);
        if (!exploration.complete) return Skip{"no unreachability evidence and exploration ran out of budget"};
        std::vector<bool> seen(task.num_facts(), false);
        for (FactId f : exploration.reached_facts) seen[f] = true;
        for (FactId f = 0; f < task.num_facts(); ++f) {
            if (!seen[f]) negatives.push_back(f);
        }
    }
    return make_record(TaskKind::Reach, task, state,
                       ReachMeta{task.fact_names(first_n(std::move(negatives), kMaxStoredNegatives))});
}

Generated gen_areach(const PlanningTask& task, const State& state, const planner::SearchBudget& budget) {
    std::vector<bool> fired(task.num_actions(), false);
    for (ActionId a : planner::relaxed_reachable(task, state).actions) fired[a] = true;
    std::vector<ActionId> negatives;
    for (ActionId a = 0; a < task.num_actions(); ++a) {
        if (!fired[a]) negatives.push_back(a);
    }
    if (negatives.empty()) {
        const auto exploration = planner::explore(task, state, budget);
        if (!exploration.complete) return Skip{"no unreachability evidence and exploration ran out of budget"};
        std::vector<bool> seen(task.num_actions(), false);
        for (ActionId a : exploration.applicable_actions) seen[a] = true;
        for (ActionId a = 0; a < task.num_actions(); ++a) {
            if (!seen[a]) negatives.push_back(a);
        }
    }
    return make_record(TaskKind::AReach, task, state,
                       AReachMeta{task.action_names(first_n(std::move(negatives), kMaxStoredNegatives))});
}

QuestionRecord gen_val(const PlanningTask& task, const State& state, std::uint64_t seed, std::size_t max_len) {
    if (max_len == 0) throw std::invalid_argument("max_len must be at least 1");
    std::mt19937_64 rng(seed);
    const std::size_t walk_length = draw(rng, max_len);

    Plan walk;
    std::vector<State> states{state};
    for (std::size_t i = 0; i < walk_length; ++i) {
        const auto applicable = applicable_actions(states.back(), task);
        if (applicable.empty()) break;
        const ActionId a = applicable[draw(rng, applicable.size())];
        walk.push_back(a);
        states.push_back(apply(states.back(), task.action(a)));
    }
    // Splice an inapplicable action after the longest prefix that admits one.
    for (std::size_t keep = walk.size() + 1; keep-- > 0;) {
        std::vector<ActionId> inapplicable;
        for (const auto& a : task.actions()) {
            if (!is_applicable(states[keep], a)) inapplicable.push_back(a.id);
        }
        if (inapplicable.empty()) continue;
        Plan sequence(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(keep));
        sequence.push_back(inapplicable[draw(rng, inapplicable.size())]);
        const std::size_t suffix = draw(rng, 3);
        for (std::size_t i = 0; i < suffix; ++i) sequence.push_back(static_cast<ActionId>(draw(rng, task.num_actions())));

        const auto outcome = run_sequence(task, state, sequence);
        const auto* failed = std::get_if<InapplicableAt>(&outcome);
        if (!failed || failed->index != keep + 1) throw GenerationFailure("validation sequence self-check failed");

        auto r = make_record(TaskKind::Val, task, state, ValMeta{task.action_names(sequence), keep + 1});
        r.prompt.sequence = task.action_names(sequence);
        return r;
    }
    throw GenerationFailure("every action is applicable along the walk");
}

std::vector<Deletion> find_removable(const PlanningTask& task, const State& state, const Plan& plan) {
    std::vector<Deletion> out;
    for (std::size_t length : {std::size_t{1}, std::size_t{2}}) {
        for (std::size_t start = 0; start + length <= plan.size(); ++start) {
            const Deletion d{start, length};
            if (is_plan(task, state, erase_block(plan, d))) out.push_back(d);
        }
        if (!out.empty()) break;
    }
    return out;
}

Generated gen_just_from_plan(const PlanningTask& task, const State& state, const Plan& plan, std::uint64_t seed,
                             bool optimal_base) {
    if (!is_plan(task, state, plan)) return Skip{"base sequence is not a plan"};
    if (const auto removable = find_removable(task, state, plan); !removable.empty()) {
        std::mt19937_64 rng(seed);
        return just_record(task, state, plan, removable[draw(rng, removable.size())], optimal_base);
    }

    const auto states = trajectory(task, state, plan);
    auto insert_at = [&](std::size_t pos, std::initializer_list<ActionId> extra) {
        Plan extended(plan.begin(), plan.begin() + static_cast<std::ptrdiff_t>(pos));
        extended.insert(extended.end(), extra);
        extended.insert(extended.end(), plan.begin() + static_cast<std::ptrdiff_t>(pos), plan.end());
        return extended;
    };
    for (std::size_t pos = 0; pos <= plan.size(); ++pos) {
        for (ActionId a : applicable_actions(states[pos], task)) {
            Plan extended = insert_at(pos, {a});
            if (is_plan(task, state, extended)) return just_record(task, state, extended, {pos, 1}, optimal_base);
        }
    }
    for (std::size_t pos = 0; pos <= plan.size(); ++pos) {
        for (ActionId a : applicable_actions(states[pos], task)) {
            const State mid = apply(states[pos], task.action(a));
            for (ActionId b : applicable_actions(mid, task)) {
                Plan extended = insert_at(pos, {a, b});
                if (is_plan(task, state, extended)) return just_record(task, state, extended, {pos, 2}, optimal_base);
            }
        }
    }
    return Skip{"no single action or pair can be inserted and removed"};
}

Generated gen_just(const PlanningTask& task, const State& state, const planner::SearchBudget& budget,
                   std::uint64_t seed) {
    const auto snapshot = task.with_init(state);
    auto base = planner::solve(snapshot, budget);
    if (base.kind == planner::SolveOutcome::Kind::Unsolvable) return Skip{"state is unsolvable"};
    if (base.kind == planner::SolveOutcome::Kind::Unknown) {
        base = planner::solve_satisficing(snapshot, budget);
        if (!base.solved()) return Skip{"no plan found within budget"};
    }
    return gen_just_from_plan(task, state, base.plan, seed, base.optimal);
}

Generated gen_land(const PlanningTask& task, const State& state, const planner::SearchBudget& budget) {
    const auto snapshot = task.with_init(state);
    const auto base = planner::solve(snapshot, budget);
    if (!base.solved()) return Skip{"state not proven solvable"};
    const auto sets = landmarks::build_landmark_sets(snapshot, budget);
    if (sets.known_landmarks.empty()) {
        std::size_t covered = sets.known_nonlandmarks.size();
        for (FactId f = 0; f < snapshot.num_facts(); ++f) {
            if (landmarks::is_trivial(snapshot, f)) ++covered;
        }
        if (covered < snapshot.num_facts()) return Skip{"no landmark found and some facts unclassified"};
    }
    return make_record(TaskKind::Land, task, state,
                       LandMeta{snapshot.fact_names(sets.known_landmarks), snapshot.fact_names(sets.known_nonlandmarks)});
}

Generated gen_nexta(const PlanningTask& task, const State& state, const planner::SearchBudget& budget,
                    std::size_t k) {
    const auto snapshot = task.with_init(state);
    const auto hstar = planner::optimal_cost(snapshot, budget);
    if (!hstar.finite()) return Skip{"h* unknown or infinite"};
    if (hstar.value == 0) return Skip{"state is a goal state"};
    const auto plans = planner::enumerate_optimal_plans(snapshot, k, budget);
    std::vector<ActionId> good;
    for (const auto& p : plans.plans) {
        if (!p.empty() && std::find(good.begin(), good.end(), p.front()) == good.end()) good.push_back(p.front());
    }
    if (good.empty()) return Skip{"no optimal plan enumerated"};
    std::sort(good.begin(), good.end());

    std::vector<ActionId> bad;
    for (ActionId a : applicable_actions(state, task)) {
        if (std::binary_search(good.begin(), good.end(), a)) continue;
        const auto next = planner::optimal_cost(task, apply(state, task.action(a)), budget);
        if (next.kind == planner::Cost::Kind::Unknown) continue;
        if (next.kind == planner::Cost::Kind::Infinite || next.value + 1 != hstar.value) bad.push_back(a);
    }
    return make_record(TaskKind::NextA, task, state,
                       NextaMeta{task.action_names(good), task.action_names(bad), hstar.value});
}

std::string render_text(const QuestionRecord& record) {
    const auto& task = record.snapshot;
    std::ostringstream out;
    out << "Context: The current state is described by the following facts: "
        << join(task.fact_names(task.init().facts()), ", ") << ". ";
    out << "The goal is to reach a state where the following facts hold: " << join(task.fact_names(task.goal()), ", ")
        << ". ";
    std::map<std::string, std::size_t> predicates;
    for (const auto& f : task.facts()) {
        std::istringstream words(f.name.substr(1, f.name.size() - 2));
        std::string head;
        words >> head;
        std::size_t arity = 0;
        for (std::string w; words >> w;) ++arity;
        predicates.emplace(head, arity);
    }
    std::vector<std::string> signatures;
    for (const auto& [name, arity] : predicates) {
        std::string sig = "(" + name;
        for (std::size_t i = 1; i <= arity; ++i) sig += " ?x" + std::to_string(i);
        signatures.push_back(sig + ")");
    }
    out << "The available propositions are: " << join(signatures, ", ") << ".\n\nInputs: ";

    switch (record.kind) {
        case TaskKind::App:
            out << "List every action whose preconditions hold in the current state, each in parentheses.";
            break;
        case TaskKind::Prog:
            out << "Break down the outcomes of performing the action \"" << record.prompt.action
                << "\". Give two bracketed lists: first the facts it makes true that are false now, then the "
                   "facts true now that it makes false.";
            break;
        case TaskKind::Reach:
            out << "Which fact can never hold in a state reachable from the current one? "
                   "Reply with that fact, or None if every fact is reachable.";
            break;
        case TaskKind::AReach:
            out << "Which action is inapplicable in every state reachable from the current one? "
                   "Reply with that action, or None if there is no such action.";
            break;
        case TaskKind::Val:
            out << "Starting from the current state, the actions " << join(record.prompt.sequence, ", ")
                << " are executed in order. Give the position, counting from 1, of the first one whose "
                   "preconditions do not hold.";
            break;
        case TaskKind::Just:
            out << "Executing " << join(record.prompt.sequence, ", ")
                << " from the current state achieves the goal. Drop one action, or two adjacent actions, so that "
                   "what remains still achieves the goal, and reply with the shortened sequence.";
            break;
        case TaskKind::Land:
            out << "Name a fact that is false now and is not a goal, yet every plan from the current state passes "
                   "through a state where it holds. Reply None if no such fact exists.";
            break;
        case TaskKind::NextA:
            out << "Which action should be taken next to reach the goal with as few actions as possible? "
                   "Reply with one action.";
            break;
    }
    return out.str();
}

}  // namespace planq::questions
