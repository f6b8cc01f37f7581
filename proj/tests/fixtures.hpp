#pragma once

#include <string>
#include <vector>

#include "planq/bench.hpp"
#include "oracle.hpp"

namespace fixtures {

struct Entry {
    std::string label;
    std::string domain;
    std::string problem;
    bool distinct_args = false;
};

inline std::string path(const std::string& rel) { return std::string(PLANQ_FIXTURE_DIR) + "/" + rel; }

inline const std::vector<Entry>& all() {
    static const std::vector<Entry> entries = {
        {"toy", "blocksworld/domain.pddl", "blocksworld/toy.pddl", true},
        {"bw3", "blocksworld/domain.pddl", "blocksworld/three.pddl", false},
        {"logistics", "logistics/domain.pddl", "logistics/problem.pddl", false},
        {"ferry", "ferry/domain.pddl", "ferry/problem.pddl", false},
        {"gripper", "gripper/domain.pddl", "gripper/problem.pddl", false},
    };
    return entries;
}

inline const Entry& get(const std::string& label) {
    for (const auto& s : all())
        if (s.label == label) return s;
    throw std::invalid_argument("no fixture " + label);
}

inline planq::bench::LoadedProblem load(const Entry& s) {
    return planq::bench::load_problem(path(s.domain), path(s.problem), {s.distinct_args});
}

inline planq::bench::LoadedProblem load(const std::string& label) { return load(get(label)); }

/// A loaded fixture with its oracle task and full reachable graph from init.
struct World {
    Entry fx;
    planq::bench::LoadedProblem problem;
    oracle::Task task;
    oracle::Graph graph;

    const planq::PlanningTask& planning() const { return problem.grounded.task; }

    oracle::FactSet names(const planq::State& s) const {
        oracle::FactSet out;
        for (auto f : s.facts()) out.insert(planning().fact(f).name);
        return out;
    }

    planq::State state(const oracle::FactSet& facts) const {
        std::vector<planq::FactId> ids;
        for (const auto& n : facts) ids.push_back(*planning().find_fact(n));
        return planning().make_state(ids);
    }
};

inline World world(const Entry& s) {
    World w{s, load(s), {}, {}};
    w.task = oracle::instantiate(w.problem.domain, w.problem.problem, s.distinct_args);
    w.graph = oracle::explore(w.task, w.task.init);
    return w;
}

inline World world(const std::string& label) { return world(get(label)); }

inline planq::FactId fid(const planq::PlanningTask& t, std::string_view name) {
    auto f = t.find_fact(name);
    if (!f) throw std::invalid_argument("no fact " + std::string(name));
    return *f;
}

inline planq::ActionId aid(const planq::PlanningTask& t, std::string_view name) {
    auto a = t.find_action(name);
    if (!a) throw std::invalid_argument("no action " + std::string(name));
    return *a;
}

inline planq::State state_of(const planq::PlanningTask& t, std::initializer_list<std::string_view> names) {
    std::vector<planq::FactId> ids;
    for (auto n : names) ids.push_back(fid(t, n));
    return t.make_state(ids);
}

inline planq::Plan plan_of(const planq::PlanningTask& t, const std::vector<std::string>& names) {
    planq::Plan p;
    for (const auto& n : names) p.push_back(aid(t, n));
    return p;
}

inline std::set<std::string> names_of(const planq::PlanningTask& t, const planq::State& s) {
    std::set<std::string> out;
    for (auto f : s.facts()) out.insert(t.fact(f).name);
    return out;
}

inline std::set<std::string> names_of(const planq::PlanningTask& t, const std::vector<planq::FactId>& ids) {
    std::set<std::string> out;
    for (auto f : ids) out.insert(t.fact(f).name);
    return out;
}

}  // namespace fixtures
