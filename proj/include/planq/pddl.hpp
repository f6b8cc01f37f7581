#pragma once

// Front end for the :strips + :typing subset of PDDL and its grounding into a
// PlanningTask.

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "planq/strips.hpp"

namespace planq::pddl {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line, int column)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                             ": " + message),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

class GroundingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kRootType = "object";

struct TypedName {
    std::string name;
    std::string type{kRootType};
    friend bool operator==(const TypedName&, const TypedName&) = default;
};

/// Predicate applied to variables ("?x") or object names.
struct Atom {
    std::string predicate;
    std::vector<std::string> args;
    friend bool operator==(const Atom&, const Atom&) = default;
};

struct Predicate {
    std::string name;
    std::vector<TypedName> params;
    friend bool operator==(const Predicate&, const Predicate&) = default;
};

struct ActionSchema {
    std::string name;
    std::vector<TypedName> params;
    std::vector<Atom> pre;
    std::vector<Atom> add;
    std::vector<Atom> del;
    friend bool operator==(const ActionSchema&, const ActionSchema&) = default;
};

struct DomainDef {
    std::string name;
    std::vector<std::string> requirements;
    std::vector<TypedName> types;  // name with its parent type
    std::vector<TypedName> constants;
    std::vector<Predicate> predicates;
    std::vector<ActionSchema> actions;
    friend bool operator==(const DomainDef&, const DomainDef&) = default;

    const Predicate* find_predicate(std::string_view name) const;
    /// True if `type` equals `ancestor` or descends from it.
    bool is_subtype(std::string_view type, std::string_view ancestor) const;
};

struct ProblemDef {
    std::string name;
    std::string domain_name;
    std::vector<TypedName> objects;
    std::vector<Atom> init;
    std::vector<Atom> goal;
    friend bool operator==(const ProblemDef&, const ProblemDef&) = default;
};

struct StaticInfo {
    std::set<std::string> static_predicates;
    std::vector<FactId> static_true_facts;
    std::vector<FactId> static_false_facts;
};

struct GroundingOptions {
    /// Drop instantiations that bind one object to two parameters.
    bool distinct_args = false;
};

struct GroundedTask {
    PlanningTask task;
    StaticInfo statics;
};

DomainDef parse_domain(std::string_view text);
ProblemDef parse_problem(std::string_view text, const DomainDef& domain);

/// Predicates that no schema adds or deletes.
std::set<std::string> detect_static(const DomainDef& domain);

GroundedTask ground(const DomainDef& domain, const ProblemDef& problem,
                    const GroundingOptions& options = {});

std::string render_domain(const DomainDef& domain);
std::string render_problem(const ProblemDef& problem);

/// "(pred a b)" for a ground atom.
std::string atom_name(const Atom& atom);

/// Debug listing: one fact per line, then one block per action.
std::string dump_task(const PlanningTask& task);

}  // namespace planq::pddl
