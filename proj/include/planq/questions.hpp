#pragma once

// Generation of the eight open-ended question kinds. Each generator either
// returns a record whose stored metadata is proven correct, or a Skip.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "planq/planner.hpp"
#include "planq/strips.hpp"

namespace planq::questions {

enum class TaskKind { App, Prog, Reach, AReach, Val, Just, Land, NextA };

inline constexpr std::array<TaskKind, 8> kAllKinds = {TaskKind::App,  TaskKind::Prog, TaskKind::Reach,
                                                      TaskKind::AReach, TaskKind::Val,  TaskKind::Just,
                                                      TaskKind::Land, TaskKind::NextA};

std::string_view to_string(TaskKind kind);
std::optional<TaskKind> parse_task_kind(std::string_view text);

class GenerationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AppMeta {
    std::vector<std::string> gold;
};
struct ProgMeta {
    std::vector<std::string> pos;
    std::vector<std::string> neg;
};
/// Empty negatives means every fact was proven reachable.
struct ReachMeta {
    std::vector<std::string> negatives;
};
struct AReachMeta {
    std::vector<std::string> negatives;
};
struct ValMeta {
    std::vector<std::string> sequence;
    std::size_t gold_index = 0;  // 1-based
};
struct Removable {
    std::string name;
    std::size_t occurrence = 0;  // 1-based among equal-named actions on the plan
    friend bool operator==(const Removable&, const Removable&) = default;
};
struct JustMeta {
    std::vector<std::string> plan;
    std::vector<Removable> removable;  // one action or a consecutive pair
    bool optimal_base = true;
};
struct LandMeta {
    std::vector<std::string> known_landmarks;
    std::vector<std::string> known_nonlandmarks;
};
struct NextaMeta {
    std::vector<std::string> good;
    std::vector<std::string> bad;
    std::size_t hstar = 0;
};

using QuestionMeta = std::variant<AppMeta, ProgMeta, ReachMeta, AReachMeta, ValMeta, JustMeta, LandMeta, NextaMeta>;

/// Kind-specific inputs shown in the question: the action for prog, the
/// sequence for val, the plan for just.
struct Prompt {
    std::string action;
    std::vector<std::string> sequence;
};

struct QuestionRecord {
    std::string id;
    TaskKind kind = TaskKind::App;
    std::string domain_name;
    PlanningTask snapshot;  // init is the question's current state
    Prompt prompt;
    QuestionMeta meta;
};

struct Skip {
    std::string reason;
};

using Generated = std::variant<QuestionRecord, Skip>;

inline constexpr std::size_t kDefaultAppBound = 10;
inline constexpr std::size_t kMaxStoredNegatives = 20;

Generated gen_app(const PlanningTask& task, const State& state, std::size_t bound = kDefaultAppBound);
Generated gen_prog(const PlanningTask& task, const State& state, std::uint64_t seed);
/// gen_prog for a chosen action; Skip if it is not applicable.
Generated gen_prog_for(const PlanningTask& task, const State& state, ActionId action);
Generated gen_reach(const PlanningTask& task, const State& state, const planner::SearchBudget& budget = {});
Generated gen_areach(const PlanningTask& task, const State& state, const planner::SearchBudget& budget = {});
/// Throws GenerationFailure if no prefix state has an inapplicable action.
QuestionRecord gen_val(const PlanningTask& task, const State& state, std::uint64_t seed, std::size_t max_len);
Generated gen_just(const PlanningTask& task, const State& state, const planner::SearchBudget& budget,
                   std::uint64_t seed);
/// gen_just starting from a given plan for the state instead of a planner call.
Generated gen_just_from_plan(const PlanningTask& task, const State& state, const Plan& plan,
                             std::uint64_t seed, bool optimal_base = true);
Generated gen_land(const PlanningTask& task, const State& state, const planner::SearchBudget& budget = {});
Generated gen_nexta(const PlanningTask& task, const State& state, const planner::SearchBudget& budget = {},
                    std::size_t k = 10);

/// A removable block of a plan: positions [start, start + length).
struct Deletion {
    std::size_t start = 0;
    std::size_t length = 1;
    friend bool operator==(const Deletion&, const Deletion&) = default;
};

/// Single-action deletions that leave a plan for `state`; if there are none,
/// consecutive-pair deletions that do.
std::vector<Deletion> find_removable(const PlanningTask& task, const State& state, const Plan& plan);

/// Deterministic plain-text rendering with "Context:" and "Inputs:" blocks.
std::string render_text(const QuestionRecord& record);

}  // namespace planq::questions
