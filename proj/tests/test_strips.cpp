#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "planq/strips.hpp"
#include "fixtures.hpp"

using namespace planq;
using fixtures::aid;
using fixtures::fid;
using fixtures::names_of;
using fixtures::plan_of;
using fixtures::state_of;
using Names = std::set<std::string>;

namespace {

const PlanningTask& toy() {
    static const auto p = fixtures::load("toy");
    return p.grounded.task;
}

const PlanningTask& logistics() {
    static const auto p = fixtures::load("logistics");
    return p.grounded.task;
}

State toy_s0() { return toy().init(); }

}  // namespace

TEST_CASE("canonical names") {
    CHECK(canonical_name("( Pick-Up  A )") == "(pick-up a)");
    CHECK(canonical_name("(on a b)") == "(on a b)");
    CHECK(canonical_name("\t(HANDEMPTY)\n") == "(handempty)");
    CHECK(canonical_name("  None ") == "none");
}

TEST_CASE("state is a canonical set") {
    const std::vector<FactId> ids = {5, 1, 70, 1};
    State s(80, ids);
    CHECK(s.facts() == std::vector<FactId>{1, 5, 70});
    CHECK(s.count() == 3);
    CHECK(s.contains(70));
    CHECK_FALSE(s.contains(2));
    CHECK_FALSE(s.contains(200));
    const std::vector<FactId> same = {70, 5, 1};
    CHECK(State(80, same) == s);
    CHECK(State(80, same).hash() == s.hash());
    const std::vector<FactId> del = {5}, add = {2, 70};
    CHECK(s.progressed(del, add).facts() == std::vector<FactId>{1, 2, 70});
}

TEST_CASE("task construction normalizes effects") {
    GroundAction a{0, "(Flip X)", {1}, {0, 1}, {1}};
    const std::vector<FactId> init = {1};
    PlanningTask t({"(p)", "(q)"}, {a}, init, {0});
    CHECK(t.action(0).name == "(flip x)");
    CHECK(t.action(0).del.empty());  // add wins
    CHECK(t.find_action("( FLIP x )") == ActionId{0});
    CHECK(is_goal(apply(t.init(), t.action(0)), t));

    CHECK_THROWS_AS(PlanningTask({"(p)", "(P)"}, {}, {}, {}), std::invalid_argument);
    GroundAction bad{0, "(bad)", {7}, {}, {}};
    CHECK_THROWS_AS(PlanningTask({"(p)"}, {bad}, {}, {}), std::invalid_argument);
}

TEST_CASE("is_applicable") {
    CHECK(is_applicable(toy_s0(), toy().action(aid(toy(), "(pickup a)"))));
    CHECK_FALSE(is_applicable(toy_s0(), toy().action(aid(toy(), "(stack a b)"))));
    GroundAction free{0, "(noop)", {}, {}, {}};
    CHECK(is_applicable(State(3, {}), free));
}

TEST_CASE("apply") {
    const auto t = apply(toy_s0(), toy().action(aid(toy(), "(pickup a)")));
    CHECK(names_of(toy(), t) == Names{"(ontable b)", "(clear b)", "(holding a)"});

    GroundAction noop{0, "(noop)", {}, {}, {}};
    CHECK(apply(toy_s0(), noop) == toy_s0());

    CHECK_THROWS_AS(apply(toy_s0(), toy().action(aid(toy(), "(stack a b)"))), InapplicableAction);

    const auto& L = logistics();
    const auto s = L.init();
    REQUIRE(s.contains(fid(L, "(at p3 l1-0)")));
    REQUIRE(s.contains(fid(L, "(at t1 l1-0)")));
    const auto u = apply(s, L.action(aid(L, "(load-truck p3 t1 l1-0)")));
    CHECK(u.contains(fid(L, "(in p3 t1)")));
    CHECK_FALSE(u.contains(fid(L, "(at p3 l1-0)")));
    CHECK(u.count() == s.count());
}

TEST_CASE("progression_delta") {
    auto d = progression_delta(toy_s0(), toy().action(aid(toy(), "(pickup a)")));
    CHECK(names_of(toy(), d.positive) == Names{"(holding a)"});
    CHECK(names_of(toy(), d.negative) == Names{"(clear a)", "(ontable a)", "(handempty)"});

    const auto& L = logistics();
    d = progression_delta(L.init(), L.action(aid(L, "(load-truck p3 t1 l1-0)")));
    CHECK(names_of(L, d.positive) == Names{"(in p3 t1)"});
    CHECK(names_of(L, d.negative) == Names{"(at p3 l1-0)"});

    // self-loop drive: adds what holds already, deletion overridden
    d = progression_delta(L.init(), L.action(aid(L, "(drive-truck t1 l1-0 l1-0 c1)")));
    CHECK(d.positive.empty());
    CHECK(d.negative.empty());

    CHECK_THROWS_AS(progression_delta(toy_s0(), toy().action(aid(toy(), "(putdown a)"))), InapplicableAction);
}

TEST_CASE("run_sequence") {
    auto out = run_sequence(toy(), toy_s0(), plan_of(toy(), {"(pickup a)", "(stack a b)"}));
    REQUIRE(std::holds_alternative<EndState>(out));
    CHECK(names_of(toy(), std::get<EndState>(out).state) ==
          Names{"(ontable b)", "(on a b)", "(clear a)", "(handempty)"});

    out = run_sequence(toy(), toy_s0(), {});
    REQUIRE(std::holds_alternative<EndState>(out));
    CHECK(std::get<EndState>(out).state == toy_s0());

    out = run_sequence(toy(), toy_s0(), plan_of(toy(), {"(pickup a)", "(stack a b)", "(pickup b)"}));
    REQUIRE(std::holds_alternative<InapplicableAt>(out));
    CHECK(std::get<InapplicableAt>(out).index == 3);

    out = run_sequence(toy(), toy_s0(), plan_of(toy(), {"(putdown b)"}));
    CHECK(std::get<InapplicableAt>(out).index == 1);
}

TEST_CASE("trajectory and is_plan") {
    const auto p = plan_of(toy(), {"(pickup a)", "(stack a b)"});
    const auto states = trajectory(toy(), toy_s0(), p);
    CHECK(states.size() == 3);
    CHECK(states.front() == toy_s0());
    CHECK(is_goal(states.back(), toy()));
    CHECK(is_plan(toy(), toy_s0(), p));
    CHECK_FALSE(is_plan(toy(), toy_s0(), plan_of(toy(), {"(pickup a)"})));
    CHECK_THROWS_AS(trajectory(toy(), toy_s0(), plan_of(toy(), {"(stack a b)"})), InapplicableAction);
}

TEST_CASE("applicable_actions") {
    CHECK(toy().action_names(applicable_actions(toy_s0(), toy())) ==
          std::vector<std::string>{"(pickup a)", "(pickup b)"});
    const auto s = state_of(toy(), {"(holding a)", "(ontable b)", "(clear b)"});
    const auto names = toy().action_names(applicable_actions(s, toy()));
    CHECK(Names(names.begin(), names.end()) == Names{"(putdown a)", "(stack a b)"});

    PlanningTask empty({"(p)"}, {}, {}, {});
    CHECK(applicable_actions(empty.init(), empty).empty());
    CHECK(applicable_actions(logistics().init(), logistics()).size() == 14);
}

TEST_CASE("is_goal") {
    CHECK(is_goal(state_of(toy(), {"(on a b)", "(clear a)", "(ontable b)", "(handempty)"}), toy()));
    CHECK_FALSE(is_goal(toy_s0(), toy()));
    CHECK(is_goal(toy_s0(), toy().with_goal({})));
}

TEST_CASE("semantics agree with the oracle on every fixture") {
    for (const auto& fx : fixtures::all()) {
        CAPTURE(fx.label);
        const auto w = fixtures::world(fx);
        const auto& task = w.planning();
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 300; ++trial) {
            const auto& ostate = w.graph.states[rng() % w.graph.states.size()];
            const State s = w.state(ostate);
            REQUIRE(w.names(s) == ostate);

            const auto lib = task.action_names(applicable_actions(s, task));
            const auto ref_names = oracle::applicable_names(w.task, ostate);
            CHECK(Names(lib.begin(), lib.end()) == Names(ref_names.begin(), ref_names.end()));
            for (ActionId a : applicable_actions(s, task)) {
                const auto& oa = w.task.actions[w.task.by_name.at(task.action(a).name)];
                CHECK(w.names(apply(s, task.action(a))) == oracle::successor(ostate, oa));
            }

            // a random sequence mixing applicable and arbitrary actions
            std::vector<std::string> names;
            Plan seq;
            for (int k = 0; k < 6; ++k) {
                const ActionId a = static_cast<ActionId>(rng() % task.num_actions());
                seq.push_back(a);
                names.push_back(task.action(a).name);
            }
            const auto lib_run = run_sequence(task, s, seq);
            const auto ref = oracle::run(w.task, ostate, names);
            if (ref.end) {
                REQUIRE(std::holds_alternative<EndState>(lib_run));
                CHECK(w.names(std::get<EndState>(lib_run).state) == *ref.end);
            } else {
                REQUIRE(std::holds_alternative<InapplicableAt>(lib_run));
                CHECK(std::get<InapplicableAt>(lib_run).index == ref.failed_at);
            }
        }
    }
}

TEST_CASE("sequence composition") {
    const auto& L = logistics();
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        Plan p1, p2;
        State s = L.init();
        for (int k = 0; k < 4; ++k) {
            const auto app = applicable_actions(s, L);
            p1.push_back(app[rng() % app.size()]);
            s = apply(s, L.action(p1.back()));
        }
        for (int k = 0; k < 4; ++k) p2.push_back(static_cast<ActionId>(rng() % L.num_actions()));
        Plan both = p1;
        both.insert(both.end(), p2.begin(), p2.end());
        const auto whole = run_sequence(L, L.init(), both);
        const auto tail = run_sequence(L, s, p2);
        if (auto* e = std::get_if<EndState>(&whole)) {
            CHECK(std::get<EndState>(tail).state == e->state);
        } else {
            CHECK(std::get<InapplicableAt>(whole).index == std::get<InapplicableAt>(tail).index + p1.size());
        }
    }
}
