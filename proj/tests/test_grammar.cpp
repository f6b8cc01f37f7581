#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "planq/grammar.hpp"

using namespace planq::grammar;
using K = Token::Kind;
using Names = std::vector<std::string>;

namespace {

std::vector<K> kinds(std::string_view text) {
    std::vector<K> out;
    for (const auto& t : tokenize(text)) out.push_back(t.kind);
    return out;
}

Names list_of(std::string_view text) { return std::get<ActionList>(parse_action_list(text)).names; }

std::string random_junk(std::mt19937_64& rng) {
    static const std::string alphabet = "abcXYZ 019.:;!?*#\"'-_\n\t";
    std::string out;
    const auto n = rng() % 12;
    for (std::size_t i = 0; i < n; ++i) out += alphabet[rng() % alphabet.size()];
    return out;
}

}  // namespace

TEST_CASE("tokenize") {
    CHECK(kinds("(pickup a)") == std::vector<K>{K::LPar, K::Name, K::WS, K::Name, K::RPar});
    CHECK(tokenize("").empty());
    const auto t = tokenize("**answer:** (load p3 t1 l1-0)");
    CHECK(t[0].kind == K::Junk);
    CHECK(t[2].kind == K::Name);
    CHECK(t[2].text == "answer");
    CHECK(t.back().kind == K::RPar);
    bool saw_l10 = false;
    for (const auto& tok : t) saw_l10 |= tok.kind == K::Name && tok.text == "l1-0";
    CHECK(saw_l10);
    CHECK(kinds("[a,b]") == std::vector<K>{K::LSPar, K::Name, K::Comma, K::Name, K::RSPar});
    CHECK(kinds("12 (3)") == std::vector<K>{K::Number, K::WS, K::LPar, K::Junk, K::RPar});
    CHECK(kinds(" \t\r\n") == std::vector<K>{K::WS});
    CHECK(tokenize("x_y-2z")[0].text == "x_y-2z");
}

TEST_CASE("tokenizer covers the input") {
    std::mt19937_64 rng(1);
    const std::string alphabet = "ab1-_()[], \n\t.;:Z9é";
    for (int trial = 0; trial < 500; ++trial) {
        std::string text;
        const auto n = rng() % 40;
        for (std::size_t i = 0; i < n; ++i) text += alphabet[rng() % alphabet.size()];
        std::string joined;
        std::size_t offset = 0;
        for (const auto& tok : tokenize(text)) {
            CHECK(tok.offset == offset);
            offset += tok.text.size();
            joined += tok.text;
        }
        CHECK(joined == text);
    }
}

TEST_CASE("parse_act") {
    auto a = parse_act("The answer is (stack a b).");
    REQUIRE(std::holds_alternative<ActionName>(a));
    CHECK(std::get<ActionName>(a).name == "(stack a b)");
    CHECK(std::holds_alternative<NoneAnswer>(parse_act("None")));
    CHECK(std::holds_alternative<NoneAnswer>(parse_act("no unreachable actions exist: None.")));
    CHECK(std::holds_alternative<NoneAnswer>(parse_act("\"NONE\"")));
    CHECK(std::holds_alternative<NoneAnswer>(parse_act("(none)")));
    CHECK(std::holds_alternative<ParseFailed>(parse_act("nothing to see here")));
    CHECK(std::holds_alternative<ParseFailed>(parse_act("()")));
    CHECK(std::get<ActionName>(parse_act("( Stack  A   B )")).name == "(stack a b)");
    CHECK(std::get<ActionName>(parse_act("(drive-truck t1 l1-0 l1-1 c1) then more")).name ==
          "(drive-truck t1 l1-0 l1-1 c1)");
}

TEST_CASE("parse_fact") {
    auto f = parse_fact("I think (holding a) must hold");
    REQUIRE(std::holds_alternative<FactName>(f));
    CHECK(std::get<FactName>(f).name == "(holding a)");
    CHECK(std::holds_alternative<NoneAnswer>(parse_fact("None.")));
    CHECK(std::get<FactName>(parse_fact("(handempty)")).name == "(handempty)");
}

TEST_CASE("parse_action_list") {
    CHECK(list_of("(pickup a) (pickup b)") == Names{"(pickup a)", "(pickup b)"});
    CHECK(list_of("1. (pickup a)\n2. (pickup b)") == Names{"(pickup a)", "(pickup b)"});
    CHECK(list_of("no actions").empty());
    CHECK(list_of("(pickup a)(pickup a)") == Names{"(pickup a)", "(pickup a)"});
    CHECK(list_of("(pickup a (pickup b)") == Names{"(pickup b)"});
}

TEST_CASE("parse_progression_list") {
    auto p = parse_progression_list("[(in p3 t1)][(at p3 l1-0)]");
    REQUIRE(std::holds_alternative<ProgressionPair>(p));
    CHECK(std::get<ProgressionPair>(p).positive == Names{"(in p3 t1)"});
    CHECK(std::get<ProgressionPair>(p).negative == Names{"(at p3 l1-0)"});

    p = parse_progression_list("[][]");
    REQUIRE(std::holds_alternative<ProgressionPair>(p));
    CHECK(std::get<ProgressionPair>(p).positive.empty());
    CHECK(std::get<ProgressionPair>(p).negative.empty());

    p = parse_progression_list("Positive: [(holding a)] Negative: [(clear a), (ontable a), (handempty)]");
    REQUIRE(std::holds_alternative<ProgressionPair>(p));
    CHECK(std::get<ProgressionPair>(p).positive == Names{"(holding a)"});
    CHECK(std::get<ProgressionPair>(p).negative == Names{"(clear a)", "(ontable a)", "(handempty)"});

    p = parse_progression_list("[(a) (a), (b)] [(c)] [(ignored)]");
    CHECK(std::get<ProgressionPair>(p).positive == Names{"(a)", "(b)"});

    CHECK(std::holds_alternative<ParseFailed>(parse_progression_list("[(a)]")));
    CHECK(std::holds_alternative<ParseFailed>(parse_progression_list("[(a)] [(b)")));
    CHECK(std::holds_alternative<ParseFailed>(parse_progression_list("(a) (b)")));
}

TEST_CASE("parse_index") {
    CHECK(std::get<Index>(parse_index("The first inapplicable action is 3")).value == 3);
    CHECK(std::get<Index>(parse_index("0")).value == 0);
    CHECK(std::get<Index>(parse_index("(drive t1 l1-0 l1-1) is action 4")).value == 4);
    CHECK(std::holds_alternative<ParseFailed>(parse_index("three")));
    CHECK(std::holds_alternative<ParseFailed>(parse_index("99999999999999999999999")));
}

TEST_CASE("junk around a payload does not change the parse") {
    std::mt19937_64 rng(9);
    const std::string act = "(load-truck p3 t1 l1-0)";
    const std::string list = "(pickup a) (stack a b)";
    const std::string prog = "[(in p3 t1)] [(at p3 l1-0)]";
    for (int trial = 0; trial < 300; ++trial) {
        const auto pre = random_junk(rng);
        const auto post = random_junk(rng);
        CAPTURE(pre);
        CAPTURE(post);
        // a None word in the prefix legitimately wins, so keep it out
        if (pre.find("None") != std::string::npos) continue;
        const auto a = parse_act(pre + " " + act + " " + post);
        REQUIRE(std::holds_alternative<ActionName>(a));
        CHECK(std::get<ActionName>(a).name == act);
        CHECK(list_of(pre + " " + list + " " + post) == Names{"(pickup a)", "(stack a b)"});
        const auto p = parse_progression_list(pre + " " + prog + " " + post);
        REQUIRE(std::holds_alternative<ProgressionPair>(p));
        CHECK(std::get<ProgressionPair>(p).positive == Names{"(in p3 t1)"});
    }
}

TEST_CASE("k names survive any separators") {
    std::mt19937_64 rng(4);
    const Names pool = {"(pickup a)", "(stack a b)", "(drive-truck t0 l0-1 l0-0 c0)", "(handempty)"};
    const std::vector<std::string> seps = {"", " ", ", ", "\n", " and ", "; ", "\n- ", " -> "};
    for (int trial = 0; trial < 200; ++trial) {
        Names names;
        std::string text;
        const auto k = rng() % 6;
        for (std::size_t i = 0; i < k; ++i) {
            names.push_back(pool[rng() % pool.size()]);
            text += seps[rng() % seps.size()] + names.back();
        }
        CHECK(list_of(text) == names);
    }
}
