#include "planq/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>

namespace planq::grammar {

namespace {

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_space(char c) { return c == ' ' || c == '\n' || c == '\t' || c == '\r'; }
bool is_name_char(char c) { return is_alpha(c) || is_digit(c) || c == '-' || c == '_'; }

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

using Kind = Token::Kind;

struct Match {
    std::string name;
    std::size_t next;
};

// action_name starting at tokens[i]; whitespace right inside the parentheses is tolerated.
std::optional<Match> match_action_name(const std::vector<Token>& tokens, std::size_t i) {
    if (i >= tokens.size() || tokens[i].kind != Kind::LPar) return std::nullopt;
    ++i;
    std::vector<std::string> words;
    bool need_separator = false;
    for (; i < tokens.size(); ++i) {
        const auto& t = tokens[i];
        if (t.kind == Kind::WS) {
            need_separator = false;
            continue;
        }
        if (t.kind == Kind::Name && !need_separator) {
            words.push_back(lower(t.text));
            need_separator = true;
            continue;
        }
        if (t.kind == Kind::RPar && !words.empty()) {
            std::string name = "(";
            for (std::size_t w = 0; w < words.size(); ++w) name += (w ? " " : "") + words[w];
            return Match{name + ")", i + 1};
        }
        return std::nullopt;
    }
    return std::nullopt;
}

bool is_none_word(const Token& t) { return t.kind == Kind::Name && lower(t.text) == "none"; }

template <typename Named>
ParsedAnswer parse_single(std::string_view text) {
    const auto tokens = tokenize(text);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (auto m = match_action_name(tokens, i)) {
            if (m->name == "(none)") return NoneAnswer{};
            return Named{std::move(m->name)};
        }
        if (is_none_word(tokens[i])) return NoneAnswer{};
    }
    return ParseFailed{"no parenthesized name or None found"};
}

void push_unique(std::vector<std::string>& v, std::string s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(std::move(s));
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    int depth = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        const std::size_t start = i;
        Kind kind = Kind::Junk;
        if (c == '(') {
            kind = Kind::LPar;
            ++depth;
            ++i;
        } else if (c == ')') {
            kind = Kind::RPar;
            depth = std::max(0, depth - 1);
            ++i;
        } else if (c == '[') {
            kind = Kind::LSPar;
            ++i;
        } else if (c == ']') {
            kind = Kind::RSPar;
            ++i;
        } else if (c == ',') {
            kind = Kind::Comma;
            ++i;
        } else if (is_space(c)) {
            kind = Kind::WS;
            while (i < text.size() && is_space(text[i])) ++i;
        } else if (is_alpha(c)) {
            kind = Kind::Name;
            while (i < text.size() && is_name_char(text[i])) ++i;
        } else if (is_digit(c)) {
            kind = depth == 0 ? Kind::Number : Kind::Junk;
            while (i < text.size() && is_digit(text[i])) ++i;
        } else {
            ++i;
        }
        tokens.push_back({kind, std::string(text.substr(start, i - start)), start});
    }
    return tokens;
}

ParsedAnswer parse_act(std::string_view text) { return parse_single<ActionName>(text); }

ParsedAnswer parse_fact(std::string_view text) { return parse_single<FactName>(text); }

ParsedAnswer parse_action_list(std::string_view text) {
    const auto tokens = tokenize(text);
    ActionList list;
    std::size_t i = 0;
    while (i < tokens.size()) {
        if (auto m = match_action_name(tokens, i)) {
            list.names.push_back(std::move(m->name));
            i = m->next;
        } else {
            ++i;
        }
    }
    return list;
}

ParsedAnswer parse_progression_list(std::string_view text) {
    const auto tokens = tokenize(text);
    std::vector<std::vector<std::string>> groups;
    std::size_t i = 0;
    while (i < tokens.size() && groups.size() < 2) {
        if (tokens[i].kind != Kind::LSPar) {
            ++i;
            continue;
        }
        std::vector<std::string> group;
        std::size_t j = i + 1;
        bool closed = false;
        while (j < tokens.size()) {
            if (tokens[j].kind == Kind::RSPar) {
                closed = true;
                ++j;
                break;
            }
            if (auto m = match_action_name(tokens, j)) {
                push_unique(group, std::move(m->name));
                j = m->next;
            } else {
                ++j;
            }
        }
        if (!closed) break;
        groups.push_back(std::move(group));
        i = j;
    }
    if (groups.size() < 2) return ParseFailed{"expected two bracketed lists"};
    return ProgressionPair{std::move(groups[0]), std::move(groups[1])};
}

ParsedAnswer parse_index(std::string_view text) {
    for (const auto& t : tokenize(text)) {
        if (t.kind != Kind::Number) continue;
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc{}) return ParseFailed{"index out of range"};
        return Index{value};
    }
    return ParseFailed{"no number found"};
}

}  // namespace planq::grammar
