#include "planq/strips.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

namespace planq {

std::string canonical_name(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char raw : text) {
        const auto c = static_cast<unsigned char>(raw);
        if (std::isspace(c)) {
            pending_space = true;
            continue;
        }
        if (c == ')') {
            pending_space = false;
        } else if (pending_space && !out.empty() && out.back() != '(') {
            out.push_back(' ');
        }
        pending_space = false;
        out.push_back(static_cast<char>(std::tolower(c)));
    }
    return out;
}

State::State(std::size_t universe, std::span<const FactId> facts)
    : universe_(universe), words_((universe + 63) / 64, 0) {
    for (FactId f : facts) {
        if (f >= universe) {
            throw std::out_of_range("fact id " + std::to_string(f) + " outside state universe");
        }
        words_[f >> 6] |= std::uint64_t{1} << (f & 63);
    }
}

bool State::contains_all(std::span<const FactId> facts) const {
    return std::all_of(facts.begin(), facts.end(), [this](FactId f) { return contains(f); });
}

std::vector<FactId> State::facts() const {
    std::vector<FactId> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t bits = words_[w];
        while (bits) {
            const int bit = std::countr_zero(bits);
            out.push_back(static_cast<FactId>(w * 64 + bit));
            bits &= bits - 1;
        }
    }
    return out;
}

std::size_t State::count() const {
    std::size_t n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
}

std::size_t State::hash() const {
    std::size_t h = 1469598103934665603ull ^ universe_;
    for (auto w : words_) {
        h ^= static_cast<std::size_t>(w) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

State State::progressed(std::span<const FactId> del, std::span<const FactId> add) const {
    State next = *this;
    for (FactId f : del) next.words_[f >> 6] &= ~(std::uint64_t{1} << (f & 63));
    for (FactId f : add) next.words_[f >> 6] |= std::uint64_t{1} << (f & 63);
    return next;
}

namespace {

void sort_unique(std::vector<FactId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

void check_ids(const std::vector<FactId>& ids, std::size_t n, const std::string& where) {
    for (FactId f : ids) {
        if (f >= n) throw std::invalid_argument(where + " references unknown fact id " + std::to_string(f));
    }
}

}  // namespace

PlanningTask::PlanningTask(std::vector<std::string> fact_names, std::vector<GroundAction> actions,
                           std::span<const FactId> init, std::vector<FactId> goal)
    : actions_(std::move(actions)), goal_(std::move(goal)) {
    facts_.reserve(fact_names.size());
    for (std::size_t i = 0; i < fact_names.size(); ++i) {
        Fact fact{static_cast<FactId>(i), canonical_name(fact_names[i])};
        if (!fact_index_.emplace(fact.name, fact.id).second) {
            throw std::invalid_argument("duplicate fact name " + fact.name);
        }
        facts_.push_back(std::move(fact));
    }
    const std::size_t n = facts_.size();
    for (std::size_t i = 0; i < actions_.size(); ++i) {
        auto& a = actions_[i];
        a.id = static_cast<ActionId>(i);
        a.name = canonical_name(a.name);
        sort_unique(a.pre);
        sort_unique(a.add);
        sort_unique(a.del);
        check_ids(a.pre, n, a.name);
        check_ids(a.add, n, a.name);
        check_ids(a.del, n, a.name);
        std::erase_if(a.del, [&a](FactId f) { return std::binary_search(a.add.begin(), a.add.end(), f); });
        if (!action_index_.emplace(a.name, a.id).second) {
            throw std::invalid_argument("duplicate action name " + a.name);
        }
    }
    sort_unique(goal_);
    check_ids(goal_, n, "goal");
    init_ = State(n, init);
}

std::optional<FactId> PlanningTask::find_fact(std::string_view name) const {
    auto it = fact_index_.find(canonical_name(name));
    if (it == fact_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<ActionId> PlanningTask::find_action(std::string_view name) const {
    auto it = action_index_.find(canonical_name(name));
    if (it == action_index_.end()) return std::nullopt;
    return it->second;
}

PlanningTask PlanningTask::with_init(const State& init) const {
    if (init.universe() != facts_.size()) throw std::invalid_argument("state universe does not match task");
    PlanningTask copy = *this;
    copy.init_ = init;
    return copy;
}

PlanningTask PlanningTask::with_goal(std::vector<FactId> goal) const {
    sort_unique(goal);
    check_ids(goal, facts_.size(), "goal");
    PlanningTask copy = *this;
    copy.goal_ = std::move(goal);
    return copy;
}

std::vector<std::string> PlanningTask::fact_names(std::span<const FactId> ids) const {
    std::vector<std::string> out;
    out.reserve(ids.size());
    for (FactId f : ids) out.push_back(fact(f).name);
    return out;
}

std::vector<std::string> PlanningTask::action_names(std::span<const ActionId> ids) const {
    std::vector<std::string> out;
    out.reserve(ids.size());
    for (ActionId a : ids) out.push_back(action(a).name);
    return out;
}

bool is_applicable(const State& state, const GroundAction& action) {
    return state.contains_all(action.pre);
}

State apply(const State& state, const GroundAction& action) {
    if (!is_applicable(state, action)) throw InapplicableAction(action.name);
    return state.progressed(action.del, action.add);
}

ProgressionDelta progression_delta(const State& state, const GroundAction& action) {
    const State next = apply(state, action);
    ProgressionDelta delta;
    for (FactId f : action.add) {
        if (!state.contains(f)) delta.positive.push_back(f);
    }
    for (FactId f : action.del) {
        if (state.contains(f) && !next.contains(f)) delta.negative.push_back(f);
    }
    return delta;
}

PlanOutcome run_sequence(const PlanningTask& task, const State& state,
                         std::span<const ActionId> actions) {
    State current = state;
    for (std::size_t i = 0; i < actions.size(); ++i) {
        const auto& a = task.action(actions[i]);
        if (!is_applicable(current, a)) return InapplicableAt{i + 1};
        current = current.progressed(a.del, a.add);
    }
    return EndState{std::move(current)};
}

std::vector<State> trajectory(const PlanningTask& task, const State& state,
                              std::span<const ActionId> actions) {
    std::vector<State> states{state};
    for (ActionId a : actions) states.push_back(apply(states.back(), task.action(a)));
    return states;
}

std::vector<ActionId> applicable_actions(const State& state, const PlanningTask& task) {
    std::vector<ActionId> out;
    for (const auto& a : task.actions()) {
        if (is_applicable(state, a)) out.push_back(a.id);
    }
    return out;
}

bool is_goal(const State& state, const PlanningTask& task) {
    return state.contains_all(task.goal());
}

bool is_plan(const PlanningTask& task, const State& state, std::span<const ActionId> actions) {
    const auto outcome = run_sequence(task, state, actions);
    const auto* end = std::get_if<EndState>(&outcome);
    return end && is_goal(end->state, task);
}

}  // namespace planq
