#pragma once

// Desk-scale optimal planner and reachability machinery. Every search is
// bounded by a SearchBudget; running out of budget is reported as a value
// (Unknown), never confused with a proof.

#include <cstdint>
#include <limits>
#include <vector>

#include "planq/strips.hpp"

namespace planq::planner {

struct SearchBudget {
    std::uint64_t max_expansions = 1'000'000;
    double max_seconds = 30.0;
};

struct SolveOutcome {
    enum class Kind { Plan, Unsolvable, Unknown };

    Kind kind = Kind::Unknown;
    Plan plan;
    std::size_t cost = 0;
    bool optimal = true;
    std::uint64_t expansions = 0;

    bool solved() const { return kind == Kind::Plan; }
};

/// h* value: finite, infinite (proven unsolvable) or unknown (budget ran out).
struct Cost {
    enum class Kind { Finite, Infinite, Unknown };

    Kind kind = Kind::Unknown;
    std::size_t value = 0;

    bool finite() const { return kind == Kind::Finite; }
    friend bool operator==(const Cost&, const Cost&) = default;
};

inline constexpr unsigned kDeadEnd = std::numeric_limits<unsigned>::max();

/// h^max over the delete relaxation with unit costs. Returns kDeadEnd when
/// some goal fact is relaxed-unreachable. Holds scratch buffers, so one
/// instance must not be shared between threads.
class HMax {
public:
    explicit HMax(const PlanningTask& task);
    unsigned operator()(const State& state);

private:
    const PlanningTask& task_;
    std::vector<std::vector<ActionId>> consumers_;
    std::vector<unsigned> pre_count_;
    std::vector<ActionId> no_pre_;
    std::vector<unsigned> cost_;
    std::vector<unsigned> missing_;
};

/// A* with h^max. Ties on f break towards smaller h, then FIFO.
SolveOutcome solve(const PlanningTask& task, const State& start, const SearchBudget& budget = {});
SolveOutcome solve(const PlanningTask& task, const SearchBudget& budget = {});

/// Greedy best-first search with h^max; plans are not guaranteed optimal.
SolveOutcome solve_satisficing(const PlanningTask& task, const SearchBudget& budget = {});

Cost optimal_cost(const PlanningTask& task, const State& start, const SearchBudget& budget = {});
Cost optimal_cost(const PlanningTask& task, const SearchBudget& budget = {});

struct RelaxedReach {
    std::vector<FactId> facts;
    std::vector<ActionId> actions;
};

/// Least fixpoint of the delete relaxation from `start`. Facts outside the
/// result are unreachable; facts inside are only possibly reachable.
RelaxedReach relaxed_reachable(const PlanningTask& task, const State& start);
RelaxedReach relaxed_reachable(const PlanningTask& task);

/// Exhaustive forward exploration of the reachable state space.
struct Exploration {
    bool complete = false;
    std::size_t states = 0;
    std::vector<FactId> reached_facts;        // hold in some reachable state
    std::vector<ActionId> applicable_actions;  // applicable in some reachable state
};

Exploration explore(const PlanningTask& task, const State& start, const SearchBudget& budget = {});

struct PlanSet {
    std::vector<Plan> plans;
    std::size_t cost = 0;
    bool unsolvable = false;
    /// Budget ran out before k plans were found and before the optimal-cost
    /// envelope was exhausted.
    bool unknown = false;
};

/// Up to k distinct optimal plans, found by depth-first traversal bounded by
/// h*(init) and pruned with h^max.
PlanSet enumerate_optimal_plans(const PlanningTask& task, std::size_t k, const SearchBudget& budget = {});

}  // namespace planq::planner
