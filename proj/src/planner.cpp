#include "planq/planner.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <deque>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace planq::planner {

namespace {

class Meter {
public:
    explicit Meter(const SearchBudget& budget)
        : budget_(budget), start_(std::chrono::steady_clock::now()) {}

    /// Counts one expansion; false once the budget is spent.
    bool tick() {
        if (expansions_ >= budget_.max_expansions) return false;
        ++expansions_;
        if ((expansions_ & 1023) == 0) {
            const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
            if (elapsed.count() > budget_.max_seconds) {
                expansions_ = budget_.max_expansions;
                return false;
            }
        }
        return true;
    }

    std::uint64_t expansions() const { return expansions_; }

private:
    SearchBudget budget_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t expansions_ = 0;
};

struct Node {
    State state;
    std::uint32_t parent;
    ActionId action;
    unsigned g;
};

constexpr std::uint32_t kNoParent = std::numeric_limits<std::uint32_t>::max();

Plan extract_plan(const std::vector<Node>& nodes, std::uint32_t index) {
    Plan plan;
    while (nodes[index].parent != kNoParent) {
        plan.push_back(nodes[index].action);
        index = nodes[index].parent;
    }
    std::reverse(plan.begin(), plan.end());
    return plan;
}

// Best-first search; `greedy` orders by h only (GBFS), otherwise by f = g + h.
SolveOutcome best_first(const PlanningTask& task, const State& start, const SearchBudget& budget, bool greedy) {
    HMax hmax(task);
    Meter meter(budget);
    SolveOutcome out;
    out.optimal = !greedy;

    struct Entry {
        unsigned key;
        unsigned h;
        std::uint64_t seq;
        std::uint32_t node;
        unsigned g;
    };
    auto worse = [](const Entry& a, const Entry& b) {
        if (a.key != b.key) return a.key > b.key;
        if (a.h != b.h) return a.h > b.h;
        return a.seq > b.seq;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> open(worse);
    std::vector<Node> nodes;
    std::unordered_map<State, std::uint32_t, StateHash> index;
    std::uint64_t seq = 0;

    const unsigned h0 = hmax(start);
    if (h0 == kDeadEnd) {
        out.kind = SolveOutcome::Kind::Unsolvable;
        return out;
    }
    nodes.push_back({start, kNoParent, 0, 0});
    index.emplace(start, 0);
    open.push({greedy ? h0 : h0, h0, seq++, 0, 0});

    while (!open.empty()) {
        const Entry top = open.top();
        open.pop();
        const Node& node = nodes[top.node];
        if (top.g != node.g) continue;  // stale
        if (is_goal(node.state, task)) {
            out.kind = SolveOutcome::Kind::Plan;
            out.plan = extract_plan(nodes, top.node);
            out.cost = out.plan.size();
            out.expansions = meter.expansions();
            assert(is_plan(task, start, out.plan));
            return out;
        }
        if (!meter.tick()) {
            out.kind = SolveOutcome::Kind::Unknown;
            out.expansions = meter.expansions();
            return out;
        }
        const State current = node.state;
        const unsigned g = node.g;
        for (const auto& a : task.actions()) {
            if (!is_applicable(current, a)) continue;
            State next = current.progressed(a.del, a.add);
            const unsigned ng = g + 1;
            auto it = index.find(next);
            if (it != index.end()) {
                Node& known = nodes[it->second];
                if (greedy || known.g <= ng) continue;
                known.g = ng;
                known.parent = top.node;
                known.action = a.id;
                const unsigned h = hmax(known.state);
                open.push({ng + h, h, seq++, it->second, ng});
                continue;
            }
            const unsigned h = hmax(next);
            if (h == kDeadEnd) continue;
            const auto id = static_cast<std::uint32_t>(nodes.size());
            index.emplace(next, id);
            nodes.push_back({std::move(next), top.node, a.id, ng});
            open.push({greedy ? h : ng + h, h, seq++, id, ng});
        }
    }
    out.kind = SolveOutcome::Kind::Unsolvable;
    out.expansions = meter.expansions();
    return out;
}

}  // namespace

HMax::HMax(const PlanningTask& task)
    : task_(task),
      consumers_(task.num_facts()),
      pre_count_(task.num_actions()),
      cost_(task.num_facts()),
      missing_(task.num_actions()) {
    for (const auto& a : task.actions()) {
        pre_count_[a.id] = static_cast<unsigned>(a.pre.size());
        if (a.pre.empty()) no_pre_.push_back(a.id);
        for (FactId f : a.pre) consumers_[f].push_back(a.id);
    }
}

unsigned HMax::operator()(const State& state) {
    std::fill(cost_.begin(), cost_.end(), kDeadEnd);
    std::copy(pre_count_.begin(), pre_count_.end(), missing_.begin());
    std::vector<FactId> queue;
    queue.reserve(task_.num_facts());
    for (FactId f : state.facts()) {
        cost_[f] = 0;
        queue.push_back(f);
    }
    std::size_t goals_left = 0;
    unsigned result = 0;
    for (FactId g : task_.goal()) {
        if (cost_[g] != 0) ++goals_left;
    }
    if (goals_left == 0) return 0;

    auto fire = [&](ActionId id, unsigned level) {
        for (FactId f : task_.action(id).add) {
            if (cost_[f] != kDeadEnd) continue;
            cost_[f] = level + 1;
            queue.push_back(f);
        }
    };
    for (ActionId id : no_pre_) fire(id, 0);
    // Facts enter the queue in nondecreasing cost order, so an action's cost is
    // the cost of its last precondition to be popped.
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const FactId f = queue[head];
        const unsigned level = cost_[f];
        if (std::binary_search(task_.goal().begin(), task_.goal().end(), f) && level > 0) {
            result = std::max(result, level);
            if (--goals_left == 0) return result;
        }
        for (ActionId id : consumers_[f]) {
            if (--missing_[id] == 0) fire(id, level);
        }
    }
    return kDeadEnd;
}

SolveOutcome solve(const PlanningTask& task, const State& start, const SearchBudget& budget) {
    return best_first(task, start, budget, false);
}

SolveOutcome solve(const PlanningTask& task, const SearchBudget& budget) {
    return solve(task, task.init(), budget);
}

SolveOutcome solve_satisficing(const PlanningTask& task, const SearchBudget& budget) {
    return best_first(task, task.init(), budget, true);
}

Cost optimal_cost(const PlanningTask& task, const State& start, const SearchBudget& budget) {
    const auto outcome = solve(task, start, budget);
    switch (outcome.kind) {
        case SolveOutcome::Kind::Plan: return {Cost::Kind::Finite, outcome.cost};
        case SolveOutcome::Kind::Unsolvable: return {Cost::Kind::Infinite, 0};
        case SolveOutcome::Kind::Unknown: break;
    }
    return {Cost::Kind::Unknown, 0};
}

Cost optimal_cost(const PlanningTask& task, const SearchBudget& budget) {
    return optimal_cost(task, task.init(), budget);
}

RelaxedReach relaxed_reachable(const PlanningTask& task, const State& start) {
    std::vector<unsigned> missing(task.num_actions());
    std::vector<std::vector<ActionId>> consumers(task.num_facts());
    std::vector<bool> reached(task.num_facts(), false);
    std::vector<bool> fired(task.num_actions(), false);
    std::vector<FactId> queue;
    std::vector<ActionId> ready;
    for (const auto& a : task.actions()) {
        missing[a.id] = static_cast<unsigned>(a.pre.size());
        for (FactId f : a.pre) consumers[f].push_back(a.id);
        if (a.pre.empty()) ready.push_back(a.id);
    }
    auto reach = [&](FactId f) {
        if (!reached[f]) {
            reached[f] = true;
            queue.push_back(f);
        }
    };
    for (FactId f : start.facts()) reach(f);
    std::size_t head = 0;
    while (head < queue.size() || !ready.empty()) {
        while (!ready.empty()) {
            const ActionId id = ready.back();
            ready.pop_back();
            if (fired[id]) continue;
            fired[id] = true;
            for (FactId f : task.action(id).add) reach(f);
        }
        while (head < queue.size()) {
            for (ActionId id : consumers[queue[head]]) {
                if (--missing[id] == 0) ready.push_back(id);
            }
            ++head;
        }
    }
    RelaxedReach out;
    for (FactId f = 0; f < task.num_facts(); ++f) {
        if (reached[f]) out.facts.push_back(f);
    }
    for (ActionId a = 0; a < task.num_actions(); ++a) {
        if (fired[a]) out.actions.push_back(a);
    }
    return out;
}

RelaxedReach relaxed_reachable(const PlanningTask& task) {
    return relaxed_reachable(task, task.init());
}

Exploration explore(const PlanningTask& task, const State& start, const SearchBudget& budget) {
    Meter meter(budget);
    Exploration out;
    std::vector<bool> fact_seen(task.num_facts(), false);
    std::vector<bool> action_seen(task.num_actions(), false);
    std::unordered_set<State, StateHash> seen{start};
    std::deque<State> queue{start};
    while (!queue.empty()) {
        if (!meter.tick()) {
            out.states = seen.size();
            return out;
        }
        State s = std::move(queue.front());
        queue.pop_front();
        for (FactId f : s.facts()) fact_seen[f] = true;
        for (const auto& a : task.actions()) {
            if (!is_applicable(s, a)) continue;
            action_seen[a.id] = true;
            State next = s.progressed(a.del, a.add);
            if (seen.insert(next).second) queue.push_back(std::move(next));
        }
    }
    out.complete = true;
    out.states = seen.size();
    for (FactId f = 0; f < task.num_facts(); ++f) {
        if (fact_seen[f]) out.reached_facts.push_back(f);
    }
    for (ActionId a = 0; a < task.num_actions(); ++a) {
        if (action_seen[a]) out.applicable_actions.push_back(a);
    }
    return out;
}

namespace {

struct EnvelopeKey {
    State state;
    std::size_t remaining;
    friend bool operator==(const EnvelopeKey&, const EnvelopeKey&) = default;
};

struct EnvelopeKeyHash {
    std::size_t operator()(const EnvelopeKey& k) const { return k.state.hash() * 31 + k.remaining; }
};

class Enumerator {
public:
    Enumerator(const PlanningTask& task, std::size_t k, const SearchBudget& budget)
        : task_(task), hmax_(task), meter_(budget), k_(k) {}

    // Returns true if at least one plan was found below `state`.
    bool dfs(const State& state, std::size_t remaining) {
        if (remaining == 0) {
            if (is_goal(state, task_)) {
                out.plans.push_back(prefix_);
                return true;
            }
            return false;
        }
        if (!meter_.tick()) {
            exhausted_ = true;
            return false;
        }
        bool found = false;
        for (const auto& a : task_.actions()) {
            if (done()) break;
            if (!is_applicable(state, a)) continue;
            State next = state.progressed(a.del, a.add);
            const unsigned h = hmax_(next);
            if (h == kDeadEnd || h > remaining - 1) continue;
            EnvelopeKey key{next, remaining - 1};
            if (dead_.count(key)) continue;
            prefix_.push_back(a.id);
            const bool sub = dfs(next, remaining - 1);
            prefix_.pop_back();
            if (sub) {
                found = true;
            } else if (!exhausted_) {
                dead_.insert(std::move(key));
            }
        }
        return found;
    }

    bool done() const { return exhausted_ || out.plans.size() >= k_; }
    bool exhausted() const { return exhausted_; }

    PlanSet out;

private:
    const PlanningTask& task_;
    HMax hmax_;
    Meter meter_;
    std::size_t k_;
    bool exhausted_ = false;
    Plan prefix_;
    std::unordered_set<EnvelopeKey, EnvelopeKeyHash> dead_;
};

}  // namespace

PlanSet enumerate_optimal_plans(const PlanningTask& task, std::size_t k, const SearchBudget& budget) {
    PlanSet result;
    if (k == 0) return result;
    const auto first = solve(task, budget);
    if (first.kind == SolveOutcome::Kind::Unsolvable) {
        result.unsolvable = true;
        return result;
    }
    if (first.kind == SolveOutcome::Kind::Unknown) {
        result.unknown = true;
        return result;
    }
    Enumerator e(task, k, budget);
    e.out.cost = first.cost;
    e.dfs(task.init(), first.cost);
    result = std::move(e.out);
    result.unknown = e.exhausted() && result.plans.size() < k;
    return result;
}

}  // namespace planq::planner
