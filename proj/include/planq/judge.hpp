#pragma once

// Scoring of answers against generated questions. Stored metadata decides
// whenever it can; otherwise the planner is consulted on the question's
// snapshot task.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "planq/planner.hpp"
#include "planq/questions.hpp"

namespace planq::judge {

using questions::QuestionRecord;

class WrongKind : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class DecidedBy { StoredMetadata, TrivialRule, PlannerCall, ParseFailure };

std::string_view to_string(DecidedBy d);
std::optional<DecidedBy> parse_decided_by(std::string_view text);

struct ScoreRecord {
    std::string question_id;
    double score = 0.0;  // 0/1, or a Jaccard fraction
    DecidedBy decided_by = DecidedBy::ParseFailure;
    /// The planner ran out of budget; the answer is neither right nor wrong.
    bool abstain = false;
    std::string detail;
};

enum class Mode { Strict, JaccardApp };

ScoreRecord judge_app(const std::vector<std::string>& answer, const QuestionRecord& record);
ScoreRecord judge_app_jaccard(const std::vector<std::string>& answer, const QuestionRecord& record);
ScoreRecord judge_prog(const std::vector<std::string>& positive, const std::vector<std::string>& negative,
                       const QuestionRecord& record);
/// nullopt stands for the answer "None".
ScoreRecord judge_reach(const std::optional<std::string>& answer, const QuestionRecord& record,
                        const planner::SearchBudget& budget = {});
ScoreRecord judge_areach(const std::optional<std::string>& answer, const QuestionRecord& record,
                         const planner::SearchBudget& budget = {});
ScoreRecord judge_val(std::uint64_t index, const QuestionRecord& record);
ScoreRecord judge_just(const std::vector<std::string>& answer, const QuestionRecord& record);
ScoreRecord judge_land(const std::optional<std::string>& answer, const QuestionRecord& record,
                       const planner::SearchBudget& budget = {});
ScoreRecord judge_nexta(const std::string& answer, const QuestionRecord& record,
                        const planner::SearchBudget& budget = {});

/// Parses a raw response with the grammar production for the record's kind
/// and routes it to that kind's judge.
ScoreRecord judge_response(std::string_view raw, const QuestionRecord& record, Mode mode = Mode::Strict,
                           const planner::SearchBudget& budget = {});

}  // namespace planq::judge
