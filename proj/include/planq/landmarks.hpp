#pragma once

// Fact landmarks: exact per-fact verification through the "never achieved"
// compilation, plus negative evidence read off plan trajectories.

#include <optional>
#include <stdexcept>
#include <vector>

#include "planq/planner.hpp"
#include "planq/strips.hpp"

namespace planq::landmarks {

class TrivialFact : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidPlan : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Verdict {
    enum class Kind { Landmark, NonLandmark, Trivial, Unknown };

    Kind kind = Kind::Unknown;
    /// For NonLandmark: a plan of the original task whose trajectory avoids the fact.
    std::optional<Plan> witness;
};

struct LandmarkSets {
    std::vector<FactId> known_landmarks;
    std::vector<FactId> known_nonlandmarks;
};

/// p ∈ init ∪ goal.
bool is_trivial(const PlanningTask& task, FactId p);

/// Adds a sentinel fact (the last id, |F|) that holds initially, is required
/// by the goal, and is deleted by every action that adds p. Action ids and
/// all other facts are unchanged. Throws TrivialFact for p ∈ init ∪ goal.
PlanningTask compile_landmark_check(const PlanningTask& task, FactId p);

Verdict classify_landmark(const PlanningTask& task, FactId p, const planner::SearchBudget& budget = {});

/// Facts outside init ∪ goal that hold in no state along at least one of the plans.
/// Throws InvalidPlan if a plan is not a plan for the task.
std::vector<FactId> nonlandmark_evidence(const PlanningTask& task, const std::vector<Plan>& plans);

/// Classifies every non-trivial fact; facts whose check runs out of budget
/// land in neither set.
LandmarkSets build_landmark_sets(const PlanningTask& task, const planner::SearchBudget& budget = {});

}  // namespace planq::landmarks
