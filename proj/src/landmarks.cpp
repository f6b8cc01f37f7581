#include "planq/landmarks.hpp"

#include <algorithm>

namespace planq::landmarks {

bool is_trivial(const PlanningTask& task, FactId p) {
    return task.init().contains(p) || std::binary_search(task.goal().begin(), task.goal().end(), p);
}

PlanningTask compile_landmark_check(const PlanningTask& task, FactId p) {
    if (is_trivial(task, p)) throw TrivialFact(task.fact(p).name + " holds initially or is a goal");

    std::vector<std::string> names;
    names.reserve(task.num_facts() + 1);
    for (const auto& f : task.facts()) names.push_back(f.name);
    const auto& pname = task.fact(p).name;
    std::string sentinel = "(never-achieved " + pname.substr(1);
    while (task.find_fact(sentinel)) sentinel.insert(1, "x-");
    names.push_back(sentinel);
    const auto nach = static_cast<FactId>(task.num_facts());

    std::vector<GroundAction> actions = task.actions();
    for (auto& a : actions) {
        if (std::binary_search(a.add.begin(), a.add.end(), p)) a.del.push_back(nach);
    }
    std::vector<FactId> init = task.init().facts();
    init.push_back(nach);
    std::vector<FactId> goal = task.goal();
    goal.push_back(nach);
    return PlanningTask(std::move(names), std::move(actions), init, std::move(goal));
}

Verdict classify_landmark(const PlanningTask& task, FactId p, const planner::SearchBudget& budget) {
    if (is_trivial(task, p)) return {Verdict::Kind::Trivial, std::nullopt};
    const auto compiled = compile_landmark_check(task, p);
    auto outcome = planner::solve(compiled, budget);
    switch (outcome.kind) {
        case planner::SolveOutcome::Kind::Plan:
            // Action ids coincide between the compiled and the original task.
            return {Verdict::Kind::NonLandmark, std::move(outcome.plan)};
        case planner::SolveOutcome::Kind::Unsolvable:
            return {Verdict::Kind::Landmark, std::nullopt};
        case planner::SolveOutcome::Kind::Unknown:
            break;
    }
    return {Verdict::Kind::Unknown, std::nullopt};
}

std::vector<FactId> nonlandmark_evidence(const PlanningTask& task, const std::vector<Plan>& plans) {
    std::vector<bool> evidence(task.num_facts(), false);
    for (const auto& plan : plans) {
        if (!is_plan(task, task.init(), plan)) throw InvalidPlan("sequence is not a plan for the task");
        std::vector<bool> seen(task.num_facts(), false);
        for (const auto& s : trajectory(task, task.init(), plan)) {
            for (FactId f : s.facts()) seen[f] = true;
        }
        for (FactId f = 0; f < task.num_facts(); ++f) {
            if (!seen[f]) evidence[f] = true;
        }
    }
    std::vector<FactId> out;
    for (FactId f = 0; f < task.num_facts(); ++f) {
        if (evidence[f] && !is_trivial(task, f)) out.push_back(f);
    }
    return out;
}

LandmarkSets build_landmark_sets(const PlanningTask& task, const planner::SearchBudget& budget) {
    LandmarkSets sets;
    std::vector<Plan> plans;
    if (auto base = planner::solve(task, budget); base.solved()) plans.push_back(std::move(base.plan));
    std::vector<bool> avoided(task.num_facts(), false);
    for (FactId f : nonlandmark_evidence(task, plans)) avoided[f] = true;

    for (FactId f = 0; f < task.num_facts(); ++f) {
        if (is_trivial(task, f)) continue;
        if (avoided[f]) {
            sets.known_nonlandmarks.push_back(f);
            continue;
        }
        const auto verdict = classify_landmark(task, f, budget);
        if (verdict.kind == Verdict::Kind::Landmark) {
            sets.known_landmarks.push_back(f);
        } else if (verdict.kind == Verdict::Kind::NonLandmark) {
            sets.known_nonlandmarks.push_back(f);
        }
    }
    return sets;
}

}  // namespace planq::landmarks
