#pragma once

// Lenient parsing of free-form answers. Tokens that do not fit the expected
// production are discarded rather than rejected.
//
//   NAME  /[a-zA-Z][a-zA-Z0-9-_]*/     LPAR "("   RPAR ")"
//   LSPAR "["   RSPAR "]"   COMMA ","   WS whitespace
//   action_name      : LPAR NAME (WS NAME)* RPAR
//   action_list      : (action_name WS?)*
//   prog_list        : action_name* (COMMA action_name)*
//   progression_list : LSPAR prog_list RSPAR LSPAR prog_list RSPAR
//   act              : action_name | "None"
//   index            : /[0-9]+/

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace planq::grammar {

struct Token {
    enum class Kind { Name, LPar, RPar, LSPar, RSPar, Comma, WS, Number, Junk };

    Kind kind = Kind::Junk;
    std::string text;
    std::size_t offset = 0;
};

/// Covers the whole input; token texts concatenate back to it. Digit runs
/// inside parentheses are Junk, outside they are Number.
std::vector<Token> tokenize(std::string_view text);

struct ActionName { std::string name; };
struct FactName { std::string name; };
struct NoneAnswer {};
struct ActionList { std::vector<std::string> names; };  // in order, duplicates kept
struct ProgressionPair {
    std::vector<std::string> positive;  // deduplicated
    std::vector<std::string> negative;
};
struct Index { std::uint64_t value = 0; };
struct ParseFailed { std::string reason; };

using ParsedAnswer =
    std::variant<ActionName, FactName, NoneAnswer, ActionList, ProgressionPair, Index, ParseFailed>;

/// First action_name or "None" (case-insensitive), whichever comes first.
ParsedAnswer parse_act(std::string_view text);
/// Same as parse_act but yields FactName.
ParsedAnswer parse_fact(std::string_view text);
ParsedAnswer parse_action_list(std::string_view text);
ParsedAnswer parse_progression_list(std::string_view text);
ParsedAnswer parse_index(std::string_view text);

}  // namespace planq::grammar
