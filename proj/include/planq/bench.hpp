#pragma once

// Dataset generation, JSON-lines file formats, batch judging and accuracy
// reports.
//
// Dataset line:  {"id", "task_kind", "domain_name", "prompt_text", "prompt",
//                 "snapshot": {"domain", "problem", "distinct_args", "state"}, "meta"}
// Response line: {"question_id", "raw_response"}
// Score line:    {"question_id", "task_kind", "domain_name", "score",
//                 "decided_by", "abstain", "detail"}

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "planq/judge.hpp"
#include "planq/pddl.hpp"
#include "planq/questions.hpp"

namespace planq::bench {

using nlohmann::ordered_json;
using questions::QuestionRecord;
using questions::TaskKind;

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Canonical PDDL text of a problem and how it was grounded.
struct ProblemSource {
    std::string domain_text;
    std::string problem_text;
    bool distinct_args = false;
};

struct LoadedProblem {
    pddl::DomainDef domain;
    pddl::ProblemDef problem;
    pddl::GroundedTask grounded;
    ProblemSource source;
};

LoadedProblem load_problem_text(std::string_view domain_text, std::string_view problem_text,
                                const pddl::GroundingOptions& options = {});
/// Throws InputError for unreadable files.
LoadedProblem load_problem(const std::filesystem::path& domain_path, const std::filesystem::path& problem_path,
                           const pddl::GroundingOptions& options = {});

struct GenerateOptions {
    std::vector<TaskKind> kinds{questions::kAllKinds.begin(), questions::kAllKinds.end()};
    std::uint64_t seed = 0;
    planner::SearchBudget budget;
    std::size_t states = 1;       // sampled question states
    std::size_t walk_length = 4;  // random-walk length drawn from [0, walk_length]
    std::size_t app_bound = questions::kDefaultAppBound;
    std::size_t val_max_len = 6;
    std::size_t nexta_k = 10;
};

struct GenerateResult {
    std::vector<QuestionRecord> records;
    std::vector<std::string> skipped;  // "<id>: <reason>"
};

/// Seeded random walk from the problem's initial state.
State sample_state(const PlanningTask& task, std::uint64_t seed, std::size_t max_length);

GenerateResult generate(const LoadedProblem& problem, const GenerateOptions& options);

ordered_json record_to_json(const QuestionRecord& record, const ProblemSource& source);

/// Dataset with snapshots re-grounded from the embedded PDDL text.
struct Dataset {
    std::vector<QuestionRecord> records;
    std::vector<ProblemSource> sources;  // parallel to records
    std::unordered_map<std::string, std::size_t> by_id;

    const QuestionRecord* find(const std::string& id) const;
};

void write_dataset(std::ostream& out, const std::vector<QuestionRecord>& records, const ProblemSource& source);
/// Throws InputError on malformed lines or duplicate ids.
Dataset read_dataset(std::istream& in);

/// A response that the judge scores 1, built from the stored metadata.
std::string synthesize_gold_response(const QuestionRecord& record);

struct Response {
    std::string question_id;
    std::string raw_response;
};

void write_responses(std::ostream& out, const std::vector<Response>& responses);
std::vector<Response> read_responses(std::istream& in);

struct JudgeRun {
    std::vector<judge::ScoreRecord> scores;
    std::vector<std::string> warnings;
    std::size_t abstentions = 0;
};

JudgeRun judge_responses(const Dataset& dataset, const std::vector<Response>& responses, judge::Mode mode,
                         const planner::SearchBudget& budget = {});

void write_scores(std::ostream& out, const Dataset& dataset, const std::vector<judge::ScoreRecord>& scores);
std::vector<judge::ScoreRecord> read_scores(std::istream& in);

struct ReportCell {
    double score_sum = 0.0;
    std::size_t scored = 0;  // abstentions excluded
    std::size_t abstentions = 0;
    std::size_t parse_failures = 0;

    double accuracy() const { return scored == 0 ? 0.0 : score_sum / static_cast<double>(scored); }
};

struct ReportTable {
    std::map<TaskKind, ReportCell> per_task;
    std::map<TaskKind, std::map<std::string, ReportCell>> per_task_domain;
};

ReportTable build_report(const std::vector<judge::ScoreRecord>& scores, const Dataset& dataset);
std::string render_report(const ReportTable& table);
ordered_json report_to_json(const ReportTable& table);

}  // namespace planq::bench
