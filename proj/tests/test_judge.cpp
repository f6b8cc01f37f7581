#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "planq/judge.hpp"
#include "validators.hpp"

using namespace planq;
using namespace planq::judge;
using namespace planq::questions;
using fixtures::aid;
using fixtures::fid;
using fixtures::plan_of;
using Names = std::vector<std::string>;

namespace {

const PlanningTask& toy() {
    static const auto p = fixtures::load("toy");
    return p.grounded.task;
}

const PlanningTask& bw3() {
    static const auto p = fixtures::load("bw3");
    return p.grounded.task;
}

const PlanningTask& logistics() {
    static const auto p = fixtures::load("logistics");
    return p.grounded.task;
}

QuestionRecord rec(const Generated& g) {
    REQUIRE(std::holds_alternative<QuestionRecord>(g));
    return std::get<QuestionRecord>(g);
}

double score(std::string_view raw, const QuestionRecord& r, Mode mode = Mode::Strict) {
    return judge_response(raw, r, mode).score;
}

}  // namespace

TEST_CASE("decided_by names") {
    for (auto d : {DecidedBy::StoredMetadata, DecidedBy::TrivialRule, DecidedBy::PlannerCall, DecidedBy::ParseFailure})
        CHECK(parse_decided_by(to_string(d)) == d);
    CHECK(to_string(DecidedBy::PlannerCall) == "planner-call");
    CHECK_FALSE(parse_decided_by("oracle"));
}

TEST_CASE("app") {
    const auto r = rec(gen_app(toy(), toy().init()));
    CHECK(judge_app({"(pickup b)", "(pickup a)"}, r).score == 1.0);
    CHECK(judge_app({"(Pickup  A)", "(pickup b)", "(pickup a)"}, r).score == 1.0);
    CHECK(judge_app({"(pickup a)"}, r).score == 0.0);
    CHECK(judge_app_jaccard({"(pickup a)"}, r).score == 0.5);
    CHECK(judge_app_jaccard({"(pickup a)", "(putdown a)"}, r).score == doctest::Approx(1.0 / 3));
    CHECK(judge_app_jaccard({}, r).score == 0.0);

    const auto bad = judge_app({"(pickup a)", "(fly a)"}, r);
    CHECK(bad.decided_by == DecidedBy::ParseFailure);
    CHECK(bad.score == 0.0);

    CHECK(score("(pickup a), (pickup b)", r) == 1.0);
    CHECK(score("(pickup b)", r, Mode::JaccardApp) == 0.5);
    CHECK(score("no idea", r) == 0.0);
}

TEST_CASE("jaccard never undercuts strict and agrees at 1") {
    const auto& L = logistics();
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        const auto s = bench::sample_state(L, rng(), 6);
        const auto r = rec(gen_app(L, s, L.num_actions()));
        const auto& gold = std::get<AppMeta>(r.meta).gold;
        for (int k = 0; k < 10; ++k) {
            Names answer;
            for (const auto& a : gold)
                if (rng() % 4) answer.push_back(a);
            if (rng() % 2) answer.push_back(L.action(static_cast<ActionId>(rng() % L.num_actions())).name);
            const auto strict = judge_app(answer, r);
            const auto jac = judge_app_jaccard(answer, r);
            CHECK(jac.score >= strict.score);
            CHECK((jac.score == 1.0) == (strict.score == 1.0));
        }
    }
}

TEST_CASE("prog") {
    const auto& L = logistics();
    const auto r = rec(gen_prog_for(L, L.init(), aid(L, "(load-truck p3 t1 l1-0)")));
    CHECK(judge_prog({"(in p3 t1)"}, {"(at p3 l1-0)"}, r).score == 1.0);
    CHECK(judge_prog({"(at p3 l1-0)"}, {"(in p3 t1)"}, r).score == 0.0);
    CHECK(judge_prog({"(in p3 t1)"}, {}, r).score == 0.0);
    CHECK(judge_prog({"(in p3 t9)"}, {"(at p3 l1-0)"}, r).decided_by == DecidedBy::ParseFailure);
    CHECK(score("[(in p3 t1)] [(at p3 l1-0)]", r) == 1.0);
    CHECK(judge_response("[(in p3 t1)]", r).decided_by == DecidedBy::ParseFailure);
}

TEST_CASE("reach") {
    const auto& L = logistics();
    const auto r = rec(gen_reach(L, L.init()));
    const auto in_city = judge_reach("(in-city l0-0 c1)", r);
    CHECK(in_city.score == 1.0);
    CHECK(in_city.decided_by == DecidedBy::StoredMetadata);
    CHECK(judge_reach(std::nullopt, r).score == 0.0);
    CHECK(judge_reach("(at p0 l0-0)", r).score == 0.0);
    CHECK(judge_reach("(at p0 nowhere)", r).decided_by == DecidedBy::ParseFailure);

    const auto t = rec(gen_reach(toy(), toy().init()));
    CHECK(judge_reach(std::nullopt, t).score == 1.0);
    const auto on = judge_reach("(on a b)", t);
    CHECK(on.score == 0.0);
    CHECK(on.decided_by == DecidedBy::PlannerCall);
    CHECK(score("None", t) == 1.0);
}

TEST_CASE("areach") {
    const auto r = rec(gen_areach(bw3(), bw3().init()));
    CHECK(judge_areach("(stack a a)", r).score == 1.0);
    CHECK(judge_areach("(stack a b)", r).score == 0.0);
    CHECK(judge_areach(std::nullopt, r).score == 0.0);
    CHECK(score("The answer is (stack a a).", r) == 1.0);
}

TEST_CASE("val") {
    const auto r = gen_val(toy(), toy().init(), 3, 5);
    const auto gold = std::get<ValMeta>(r.meta).gold_index;
    CHECK(judge_val(gold, r).score == 1.0);
    CHECK(judge_val(gold + 1, r).score == 0.0);
    CHECK(judge_val(0, r).score == 0.0);
    CHECK(score("action " + std::to_string(gold), r) == 1.0);
    CHECK(judge_response("first", r).decided_by == DecidedBy::ParseFailure);
}

TEST_CASE("just") {
    const auto plan = plan_of(toy(), {"(pickup a)", "(putdown a)", "(pickup a)", "(stack a b)"});
    const auto r = rec(gen_just_from_plan(toy(), toy().init(), plan, 0));
    CHECK(judge_just({"(pickup a)", "(stack a b)"}, r).score == 1.0);
    const auto same = judge_just(std::get<JustMeta>(r.meta).plan, r);
    CHECK(same.score == 0.0);
    CHECK(same.decided_by == DecidedBy::TrivialRule);
    CHECK(judge_just({"(stack a b)"}, r).score == 0.0);
    CHECK(judge_just({"(pickup b)", "(stack a b)"}, r).decided_by == DecidedBy::TrivialRule);
    CHECK(judge_just({"(pickup a)", "(jump)"}, r).decided_by == DecidedBy::ParseFailure);
    CHECK(score("1. (pickup a)\n2. (stack a b)", r) == 1.0);
}

TEST_CASE("land") {
    const auto r = rec(gen_land(toy(), toy().init()));
    CHECK(judge_land("(holding a)", r).score == 1.0);
    const auto goal = judge_land("(on a b)", r);
    CHECK(goal.score == 0.0);
    CHECK(goal.decided_by == DecidedBy::TrivialRule);
    CHECK(judge_land("(clear b)", r).decided_by == DecidedBy::TrivialRule);
    CHECK(judge_land("(holding b)", r).score == 0.0);
    CHECK(judge_land(std::nullopt, r).score == 0.0);

    const auto done = toy().with_goal({fid(toy(), "(clear a)")});
    CHECK(judge_land(std::nullopt, rec(gen_land(done, done.init()))).score == 1.0);
}

TEST_CASE("nexta") {
    const auto r = rec(gen_nexta(toy(), toy().init()));
    CHECK(judge_nexta("(pickup a)", r).score == 1.0);
    CHECK(judge_nexta("(pickup b)", r).score == 0.0);
    const auto stack = judge_nexta("(stack a b)", r);
    CHECK(stack.score == 0.0);
    CHECK(stack.decided_by == DecidedBy::TrivialRule);
    CHECK(judge_response("None", r).decided_by == DecidedBy::ParseFailure);
    CHECK(score("pick (pickup a) first", r) == 1.0);
}

TEST_CASE("wrong kind") {
    const auto r = rec(gen_app(toy(), toy().init()));
    CHECK_THROWS_AS(judge_val(1, r), WrongKind);
    CHECK_THROWS_AS(judge_reach(std::nullopt, r), WrongKind);
    CHECK_THROWS_AS(judge_nexta("(pickup a)", r), WrongKind);
}

TEST_CASE("abstain when the planner runs out") {
    const auto hard = bw3().with_goal({fid(bw3(), "(on a b)"), fid(bw3(), "(on b c)")});
    const planner::SearchBudget tiny{1, 30};

    auto n = rec(gen_nexta(hard, hard.init()));
    std::get<NextaMeta>(n.meta).good.clear();
    std::get<NextaMeta>(n.meta).bad.clear();
    auto out = judge_nexta("(pickup a)", n, tiny);
    CHECK(out.abstain);
    CHECK(out.decided_by == DecidedBy::PlannerCall);
    CHECK_FALSE(judge_nexta("(pickup a)", n).abstain);

    auto l = rec(gen_land(hard, hard.init()));
    l.meta = LandMeta{};
    CHECK(judge_land("(holding b)", l, tiny).abstain);
    CHECK_FALSE(judge_land("(holding b)", l).abstain);

    auto reach = rec(gen_reach(hard, hard.init()));
    reach.meta = ReachMeta{};
    CHECK(judge_reach("(on b c)", reach, tiny).abstain);
    CHECK(judge_reach("(on b c)", reach).score == 0.0);
}

TEST_CASE("judges agree with brute force on sampled states") {
    for (const auto& fx : fixtures::all()) {
        CAPTURE(fx.label);
        const auto w = fixtures::world(fx);
        std::mt19937_64 rng(31);
        validators::Tally tally;
        for (int trial = 0; trial < 3; ++trial)
            validators::check_state(w, rng() % w.graph.states.size(), rng(), tally);
        for (const auto& d : tally.disagreements) FAIL_CHECK(d);
        CHECK(tally.checked > 0);
    }
}
