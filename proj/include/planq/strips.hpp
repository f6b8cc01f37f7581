#pragma once

// Grounded STRIPS semantics: facts, states, actions, progression and plans.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace planq {

using FactId = std::uint32_t;
using ActionId = std::uint32_t;
using Plan = std::vector<ActionId>;

class InapplicableAction : public std::runtime_error {
public:
    explicit InapplicableAction(const std::string& action)
        : std::runtime_error("action " + action + " is not applicable") {}
};

/// Lowercases and normalizes spacing of a "(name arg ...)" string.
/// "( Pick-Up  A )" becomes "(pick-up a)". Strings without parentheses are
/// lowercased and trimmed.
std::string canonical_name(std::string_view text);

struct Fact {
    FactId id = 0;
    std::string name;
};

struct GroundAction {
    ActionId id = 0;
    std::string name;
    std::vector<FactId> pre;
    std::vector<FactId> add;
    std::vector<FactId> del;
};

/// Immutable set of fact ids over a fixed universe, stored as a bitset.
/// Iteration through facts() is always in ascending id order.
class State {
public:
    State() = default;
    State(std::size_t universe, std::span<const FactId> facts);

    bool contains(FactId f) const {
        return f < universe_ && (words_[f >> 6] >> (f & 63)) & 1u;
    }
    bool contains_all(std::span<const FactId> facts) const;
    std::vector<FactId> facts() const;
    std::size_t count() const;
    std::size_t universe() const { return universe_; }
    std::size_t hash() const;

    /// (this \ del) ∪ add, without any applicability check.
    State progressed(std::span<const FactId> del, std::span<const FactId> add) const;

    friend bool operator==(const State&, const State&) = default;
    friend auto operator<=>(const State&, const State&) = default;

private:
    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

struct StateHash {
    std::size_t operator()(const State& s) const { return s.hash(); }
};

/// Grounded task <F, A, s0, g>. Names are canonicalized on construction and
/// action effects are normalized so that add ∩ del = ∅ (add wins).
class PlanningTask {
public:
    PlanningTask() = default;
    PlanningTask(std::vector<std::string> fact_names, std::vector<GroundAction> actions,
                 std::span<const FactId> init, std::vector<FactId> goal);

    const std::vector<Fact>& facts() const { return facts_; }
    const std::vector<GroundAction>& actions() const { return actions_; }
    const State& init() const { return init_; }
    const std::vector<FactId>& goal() const { return goal_; }
    std::size_t num_facts() const { return facts_.size(); }
    std::size_t num_actions() const { return actions_.size(); }

    const Fact& fact(FactId id) const { return facts_.at(id); }
    const GroundAction& action(ActionId id) const { return actions_.at(id); }
    std::optional<FactId> find_fact(std::string_view name) const;
    std::optional<ActionId> find_action(std::string_view name) const;

    State make_state(std::span<const FactId> facts) const { return State(facts_.size(), facts); }
    PlanningTask with_init(const State& init) const;
    PlanningTask with_goal(std::vector<FactId> goal) const;

    /// Names of the given fact ids, in the order given.
    std::vector<std::string> fact_names(std::span<const FactId> ids) const;
    std::vector<std::string> action_names(std::span<const ActionId> ids) const;

private:
    std::vector<Fact> facts_;
    std::vector<GroundAction> actions_;
    State init_;
    std::vector<FactId> goal_;
    std::unordered_map<std::string, FactId> fact_index_;
    std::unordered_map<std::string, ActionId> action_index_;
};

struct EndState {
    State state;
};

struct InapplicableAt {
    std::size_t index = 0;  // 1-based
};

using PlanOutcome = std::variant<EndState, InapplicableAt>;

struct ProgressionDelta {
    std::vector<FactId> positive;  // t \ s
    std::vector<FactId> negative;  // s \ t
};

bool is_applicable(const State& state, const GroundAction& action);

/// Throws InapplicableAction if pre(action) ⊄ state.
State apply(const State& state, const GroundAction& action);

ProgressionDelta progression_delta(const State& state, const GroundAction& action);

PlanOutcome run_sequence(const PlanningTask& task, const State& state,
                         std::span<const ActionId> actions);

/// States s0 .. sn visited by an applicable sequence. Throws InapplicableAction.
std::vector<State> trajectory(const PlanningTask& task, const State& state,
                              std::span<const ActionId> actions);

std::vector<ActionId> applicable_actions(const State& state, const PlanningTask& task);

bool is_goal(const State& state, const PlanningTask& task);

/// run_sequence succeeds and ends in a goal state.
bool is_plan(const PlanningTask& task, const State& state, std::span<const ActionId> actions);

}  // namespace planq
