#include "planq/bench.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <random>
#include <set>
#include <tuple>
#include <sstream>

namespace planq::bench {

namespace {

// Report column order.
constexpr std::array<TaskKind, 8> kReportOrder = {TaskKind::App,   TaskKind::AReach, TaskKind::Just,
                                                  TaskKind::Land,  TaskKind::NextA,  TaskKind::Prog,
                                                  TaskKind::Reach, TaskKind::Val};

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    // splitmix64 over the combined inputs
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (a + 1) + 0xbf58476d1ce4e5b9ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

ordered_json meta_to_json(const questions::QuestionMeta& meta) {
    return std::visit(
        [](const auto& m) -> ordered_json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, questions::AppMeta>) {
                return {{"gold", m.gold}};
            } else if constexpr (std::is_same_v<T, questions::ProgMeta>) {
                return {{"pos", m.pos}, {"neg", m.neg}};
            } else if constexpr (std::is_same_v<T, questions::ReachMeta> || std::is_same_v<T, questions::AReachMeta>) {
                return {{"negatives", m.negatives}};
            } else if constexpr (std::is_same_v<T, questions::ValMeta>) {
                return {{"sequence", m.sequence}, {"gold_index", m.gold_index}};
            } else if constexpr (std::is_same_v<T, questions::JustMeta>) {
                ordered_json removable = ordered_json::array();
                for (const auto& r : m.removable) removable.push_back({{"name", r.name}, {"occurrence", r.occurrence}});
                return {{"plan", m.plan}, {"removable", removable}, {"optimal_base", m.optimal_base}};
            } else if constexpr (std::is_same_v<T, questions::LandMeta>) {
                return {{"known_landmarks", m.known_landmarks}, {"known_nonlandmarks", m.known_nonlandmarks}};
            } else {
                return {{"good", m.good}, {"bad", m.bad}, {"hstar", m.hstar}};
            }
        },
        meta);
}

questions::QuestionMeta meta_from_json(TaskKind kind, const ordered_json& j) {
    using V = std::vector<std::string>;
    switch (kind) {
        case TaskKind::App: return questions::AppMeta{j.at("gold").get<V>()};
        case TaskKind::Prog: return questions::ProgMeta{j.at("pos").get<V>(), j.at("neg").get<V>()};
        case TaskKind::Reach: return questions::ReachMeta{j.at("negatives").get<V>()};
        case TaskKind::AReach: return questions::AReachMeta{j.at("negatives").get<V>()};
        case TaskKind::Val: return questions::ValMeta{j.at("sequence").get<V>(), j.at("gold_index").get<std::size_t>()};
        case TaskKind::Just: {
            questions::JustMeta m;
            m.plan = j.at("plan").get<V>();
            for (const auto& r : j.at("removable")) {
                m.removable.push_back({r.at("name").get<std::string>(), r.at("occurrence").get<std::size_t>()});
            }
            m.optimal_base = j.value("optimal_base", true);
            return m;
        }
        case TaskKind::Land:
            return questions::LandMeta{j.at("known_landmarks").get<V>(), j.at("known_nonlandmarks").get<V>()};
        case TaskKind::NextA:
            return questions::NextaMeta{j.at("good").get<V>(), j.at("bad").get<V>(), j.at("hstar").get<std::size_t>()};
    }
    throw InputError("unknown task kind");
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

std::string fixed2(double v) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << v;
    return out.str();
}

}  // namespace

LoadedProblem load_problem_text(std::string_view domain_text, std::string_view problem_text,
                                const pddl::GroundingOptions& options) {
    LoadedProblem p;
    p.domain = pddl::parse_domain(domain_text);
    p.problem = pddl::parse_problem(problem_text, p.domain);
    p.grounded = pddl::ground(p.domain, p.problem, options);
    p.source = {pddl::render_domain(p.domain), pddl::render_problem(p.problem), options.distinct_args};
    return p;
}

LoadedProblem load_problem(const std::filesystem::path& domain_path, const std::filesystem::path& problem_path,
                           const pddl::GroundingOptions& options) {
    return load_problem_text(read_file(domain_path), read_file(problem_path), options);
}

State sample_state(const PlanningTask& task, std::uint64_t seed, std::size_t max_length) {
    std::mt19937_64 rng(seed);
    const std::size_t length = static_cast<std::size_t>(rng() % (max_length + 1));
    State s = task.init();
    for (std::size_t i = 0; i < length; ++i) {
        const auto applicable = applicable_actions(s, task);
        if (applicable.empty()) break;
        s = apply(s, task.action(applicable[rng() % applicable.size()]));
    }
    return s;
}

GenerateResult generate(const LoadedProblem& problem, const GenerateOptions& options) {
    GenerateResult result;
    const auto& task = problem.grounded.task;
    for (std::size_t si = 0; si < options.states; ++si) {
        const State state = sample_state(task, mix(options.seed, si, 99), options.walk_length);
        for (TaskKind kind : options.kinds) {
            const std::string id = problem.domain.name + "-" + problem.problem.name + "-s" + std::to_string(si) + "-" +
                                   std::string(questions::to_string(kind));
            const std::uint64_t seed = mix(options.seed, si, static_cast<std::uint64_t>(kind));
            questions::Generated g = questions::Skip{};
            switch (kind) {
                case TaskKind::App: g = questions::gen_app(task, state, options.app_bound); break;
                case TaskKind::Prog: g = questions::gen_prog(task, state, seed); break;
                case TaskKind::Reach: g = questions::gen_reach(task, state, options.budget); break;
                case TaskKind::AReach: g = questions::gen_areach(task, state, options.budget); break;
                case TaskKind::Val:
                    try {
                        g = questions::gen_val(task, state, seed, options.val_max_len);
                    } catch (const questions::GenerationFailure& e) {
                        g = questions::Skip{e.what()};
                    }
                    break;
                case TaskKind::Just: g = questions::gen_just(task, state, options.budget, seed); break;
                case TaskKind::Land: g = questions::gen_land(task, state, options.budget); break;
                case TaskKind::NextA: g = questions::gen_nexta(task, state, options.budget, options.nexta_k); break;
            }
            if (auto* skip = std::get_if<questions::Skip>(&g)) {
                result.skipped.push_back(id + ": " + skip->reason);
                continue;
            }
            auto record = std::get<QuestionRecord>(std::move(g));
            record.id = id;
            record.domain_name = problem.domain.name;
            result.records.push_back(std::move(record));
        }
    }
    return result;
}

ordered_json record_to_json(const QuestionRecord& r, const ProblemSource& source) {
    ordered_json prompt = {{"action", r.prompt.action}, {"sequence", r.prompt.sequence}};
    ordered_json snapshot = {{"domain", source.domain_text},
                             {"problem", source.problem_text},
                             {"distinct_args", source.distinct_args},
                             {"state", r.snapshot.fact_names(r.snapshot.init().facts())}};
    return {{"id", r.id},
            {"task_kind", questions::to_string(r.kind)},
            {"domain_name", r.domain_name},
            {"prompt_text", questions::render_text(r)},
            {"prompt", prompt},
            {"snapshot", snapshot},
            {"meta", meta_to_json(r.meta)}};
}

const QuestionRecord* Dataset::find(const std::string& id) const {
    auto it = by_id.find(id);
    return it == by_id.end() ? nullptr : &records[it->second];
}

void write_dataset(std::ostream& out, const std::vector<QuestionRecord>& records, const ProblemSource& source) {
    for (const auto& r : records) out << record_to_json(r, source).dump() << '\n';
}

Dataset read_dataset(std::istream& in) {
    Dataset ds;
    std::map<std::tuple<std::string, std::string, bool>, PlanningTask> grounded;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto j = ordered_json::parse(line);
            QuestionRecord r;
            r.id = j.at("id").get<std::string>();
            const auto kind = questions::parse_task_kind(j.at("task_kind").get<std::string>());
            if (!kind) throw InputError("unknown task_kind");
            r.kind = *kind;
            r.domain_name = j.at("domain_name").get<std::string>();
            const auto& prompt = j.at("prompt");
            r.prompt.action = prompt.value("action", "");
            r.prompt.sequence = prompt.value("sequence", std::vector<std::string>{});
            const auto& snap = j.at("snapshot");
            ProblemSource source{snap.at("domain").get<std::string>(), snap.at("problem").get<std::string>(),
                                 snap.value("distinct_args", false)};
            const auto key = std::make_tuple(source.domain_text, source.problem_text, source.distinct_args);
            auto it = grounded.find(key);
            if (it == grounded.end()) {
                auto loaded = load_problem_text(source.domain_text, source.problem_text, {source.distinct_args});
                it = grounded.emplace(key, std::move(loaded.grounded.task)).first;
            }
            const PlanningTask& task = it->second;
            std::vector<FactId> state;
            for (const auto& name : snap.at("state")) {
                const auto f = task.find_fact(name.get<std::string>());
                if (!f) throw InputError("snapshot state names unknown fact " + name.get<std::string>());
                state.push_back(*f);
            }
            r.snapshot = task.with_init(task.make_state(state));
            r.meta = meta_from_json(r.kind, j.at("meta"));
            if (!ds.by_id.emplace(r.id, ds.records.size()).second) throw InputError("duplicate id " + r.id);
            ds.records.push_back(std::move(r));
            ds.sources.push_back(std::move(source));
        } catch (const InputError& e) {
            throw InputError("dataset line " + std::to_string(line_no) + ": " + e.what());
        } catch (const std::exception& e) {
            throw InputError("dataset line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return ds;
}

std::string synthesize_gold_response(const QuestionRecord& r) {
    return std::visit(
        [&r](const auto& m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, questions::AppMeta>) {
                return join(m.gold, " ");
            } else if constexpr (std::is_same_v<T, questions::ProgMeta>) {
                return "[" + join(m.pos, ", ") + "] [" + join(m.neg, ", ") + "]";
            } else if constexpr (std::is_same_v<T, questions::ReachMeta> || std::is_same_v<T, questions::AReachMeta>) {
                return m.negatives.empty() ? "None" : m.negatives.front();
            } else if constexpr (std::is_same_v<T, questions::ValMeta>) {
                return std::to_string(m.gold_index);
            } else if constexpr (std::is_same_v<T, questions::JustMeta>) {
                std::vector<std::string> plan = m.plan;
                if (!m.removable.empty()) {
                    std::size_t seen = 0;
                    for (std::size_t i = 0; i < plan.size(); ++i) {
                        if (plan[i] == m.removable.front().name && ++seen == m.removable.front().occurrence) {
                            plan.erase(plan.begin() + static_cast<std::ptrdiff_t>(i),
                                       plan.begin() + static_cast<std::ptrdiff_t>(i + m.removable.size()));
                            break;
                        }
                    }
                }
                return join(plan, " ");
            } else if constexpr (std::is_same_v<T, questions::LandMeta>) {
                return m.known_landmarks.empty() ? "None" : m.known_landmarks.front();
            } else {
                (void)r;
                return m.good.empty() ? "None" : m.good.front();
            }
        },
        r.meta);
}

void write_responses(std::ostream& out, const std::vector<Response>& responses) {
    for (const auto& r : responses) {
        out << ordered_json{{"question_id", r.question_id}, {"raw_response", r.raw_response}}.dump() << '\n';
    }
}

std::vector<Response> read_responses(std::istream& in) {
    std::vector<Response> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto j = ordered_json::parse(line);
            out.push_back({j.at("question_id").get<std::string>(), j.at("raw_response").get<std::string>()});
        } catch (const std::exception& e) {
            throw InputError("responses line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

JudgeRun judge_responses(const Dataset& dataset, const std::vector<Response>& responses, judge::Mode mode,
                         const planner::SearchBudget& budget) {
    JudgeRun run;
    for (const auto& response : responses) {
        const auto* record = dataset.find(response.question_id);
        if (!record) {
            run.warnings.push_back("unknown question_id " + response.question_id);
            run.scores.push_back({response.question_id, 0.0, judge::DecidedBy::ParseFailure, false, "unknown question_id"});
            continue;
        }
        auto score = judge::judge_response(response.raw_response, *record, mode, budget);
        if (score.abstain) ++run.abstentions;
        run.scores.push_back(std::move(score));
    }
    return run;
}

void write_scores(std::ostream& out, const Dataset& dataset, const std::vector<judge::ScoreRecord>& scores) {
    for (const auto& s : scores) {
        const auto* record = dataset.find(s.question_id);
        out << ordered_json{{"question_id", s.question_id},
                            {"task_kind", record ? std::string(questions::to_string(record->kind)) : ""},
                            {"domain_name", record ? record->domain_name : ""},
                            {"score", s.score},
                            {"decided_by", judge::to_string(s.decided_by)},
                            {"abstain", s.abstain},
                            {"detail", s.detail}}
                   .dump()
            << '\n';
    }
}

std::vector<judge::ScoreRecord> read_scores(std::istream& in) {
    std::vector<judge::ScoreRecord> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto j = ordered_json::parse(line);
            const auto by = judge::parse_decided_by(j.at("decided_by").get<std::string>());
            if (!by) throw InputError("unknown decided_by");
            out.push_back({j.at("question_id").get<std::string>(), j.at("score").get<double>(), *by,
                           j.value("abstain", false), j.value("detail", "")});
        } catch (const std::exception& e) {
            throw InputError("scores line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

ReportTable build_report(const std::vector<judge::ScoreRecord>& scores, const Dataset& dataset) {
    ReportTable table;
    for (const auto& s : scores) {
        const auto* record = dataset.find(s.question_id);
        if (!record) continue;
        for (ReportCell* cell : {&table.per_task[record->kind], &table.per_task_domain[record->kind][record->domain_name]}) {
            if (s.abstain) {
                ++cell->abstentions;
                continue;
            }
            ++cell->scored;
            cell->score_sum += s.score;
            if (s.decided_by == judge::DecidedBy::ParseFailure) ++cell->parse_failures;
        }
    }
    return table;
}

std::string render_report(const ReportTable& table) {
    std::ostringstream out;
    out << std::left << std::setw(8) << "task" << std::setw(10) << "accuracy" << std::setw(8) << "scored"
        << std::setw(11) << "abstained" << "parse-failures\n";
    std::set<std::string> domains;
    for (TaskKind kind : kReportOrder) {
        auto it = table.per_task.find(kind);
        if (it == table.per_task.end()) continue;
        const auto& c = it->second;
        out << std::setw(8) << questions::to_string(kind) << std::setw(10) << fixed2(c.accuracy()) << std::setw(8)
            << c.scored << std::setw(11) << c.abstentions << c.parse_failures << "\n";
        for (const auto& [domain, cell] : table.per_task_domain.at(kind)) domains.insert(domain);
    }
    if (domains.empty()) return out.str();
    out << "\n" << std::setw(8) << "task";
    for (const auto& d : domains) out << std::setw(std::max<int>(12, static_cast<int>(d.size()) + 2)) << d;
    out << "\n";
    for (TaskKind kind : kReportOrder) {
        auto it = table.per_task_domain.find(kind);
        if (it == table.per_task_domain.end()) continue;
        out << std::setw(8) << questions::to_string(kind);
        for (const auto& d : domains) {
            const int width = std::max<int>(12, static_cast<int>(d.size()) + 2);
            auto cell = it->second.find(d);
            out << std::setw(width) << (cell == it->second.end() || cell->second.scored == 0 ? "-" : fixed2(cell->second.accuracy()));
        }
        out << "\n";
    }
    return out.str();
}

ordered_json report_to_json(const ReportTable& table) {
    auto cell_json = [](const ReportCell& c) {
        return ordered_json{{"accuracy", c.accuracy()},
                            {"scored", c.scored},
                            {"abstentions", c.abstentions},
                            {"parse_failures", c.parse_failures}};
    };
    ordered_json per_task = ordered_json::object();
    ordered_json per_domain = ordered_json::object();
    for (TaskKind kind : kReportOrder) {
        const std::string name(questions::to_string(kind));
        if (auto it = table.per_task.find(kind); it != table.per_task.end()) per_task[name] = cell_json(it->second);
        if (auto it = table.per_task_domain.find(kind); it != table.per_task_domain.end()) {
            ordered_json row = ordered_json::object();
            for (const auto& [domain, cell] : it->second) row[domain] = cell_json(cell);
            per_domain[name] = row;
        }
    }
    return {{"per_task", per_task}, {"per_task_domain", per_domain}};
}

}  // namespace planq::bench
