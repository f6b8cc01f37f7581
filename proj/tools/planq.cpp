// planq: ground, plan, generate, judge, report, landmarks, gold.
//
// Exit codes: 0 ok, 1 judging finished with abstentions, 2 bad input.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "planq/bench.hpp"
#include "planq/landmarks.hpp"

using namespace planq;

namespace {

struct ProblemArgs {
    std::string domain;
    std::string problem;
    bool distinct_args = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--domain", domain, "PDDL domain file")->required()->check(CLI::ExistingFile);
        cmd->add_option("--problem", problem, "PDDL problem file")->required()->check(CLI::ExistingFile);
        cmd->add_flag("--distinct-args", distinct_args, "skip groundings that reuse an object");
    }

    bench::LoadedProblem load() const { return bench::load_problem(domain, problem, {distinct_args}); }
};

struct BudgetArgs {
    planner::SearchBudget budget;

    void attach(CLI::App* cmd) {
        cmd->add_option("--max-expansions", budget.max_expansions, "search expansion budget")->capture_default_str();
        cmd->add_option("--max-seconds", budget.max_seconds, "search time budget")->capture_default_str();
    }
};

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw bench::InputError("cannot write " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw bench::InputError("cannot read " + path);
    return in;
}

std::vector<questions::TaskKind> parse_kinds(const std::vector<std::string>& names) {
    if (names.empty()) return {questions::kAllKinds.begin(), questions::kAllKinds.end()};
    std::vector<questions::TaskKind> kinds;
    for (const auto& n : names) {
        auto k = questions::parse_task_kind(n);
        if (!k) throw bench::InputError("unknown task kind " + n);
        if (std::find(kinds.begin(), kinds.end(), *k) == kinds.end()) kinds.push_back(*k);
    }
    return kinds;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Question generation and answer judging over STRIPS planning problems"};
    app.require_subcommand(1);

    // ground
    ProblemArgs ground_args;
    bool dump = false;
    auto* ground_cmd = app.add_subcommand("ground", "parse and ground a problem");
    ground_args.attach(ground_cmd);
    ground_cmd->add_flag("--dump", dump, "list facts and actions");

    // plan
    ProblemArgs plan_args;
    BudgetArgs plan_budget;
    auto* plan_cmd = app.add_subcommand("plan", "print an optimal plan, one action per line");
    plan_args.attach(plan_cmd);
    plan_budget.attach(plan_cmd);

    // generate
    ProblemArgs gen_args;
    BudgetArgs gen_budget;
    bench::GenerateOptions gen_opts;
    std::vector<std::string> gen_tasks;
    std::string gen_out;
    auto* gen_cmd = app.add_subcommand("generate", "write a JSON-lines question dataset");
    gen_args.attach(gen_cmd);
    gen_budget.attach(gen_cmd);
    gen_cmd->add_option("--tasks", gen_tasks, "task kinds (default: all)")->delimiter(',');
    gen_cmd->add_option("--seed", gen_opts.seed)->capture_default_str();
    gen_cmd->add_option("--states", gen_opts.states, "number of sampled states")->capture_default_str();
    gen_cmd->add_option("--walk-length", gen_opts.walk_length, "max random-walk length")->capture_default_str();
    gen_cmd->add_option("--app-bound", gen_opts.app_bound)->capture_default_str();
    gen_cmd->add_option("--val-max-len", gen_opts.val_max_len)->capture_default_str();
    gen_cmd->add_option("--nexta-k", gen_opts.nexta_k)->capture_default_str();
    gen_cmd->add_option("--out", gen_out, "dataset file")->required();

    // judge
    std::string judge_dataset, judge_responses, judge_out, judge_mode = "strict";
    BudgetArgs judge_budget;
    auto* judge_cmd = app.add_subcommand("judge", "score responses against a dataset");
    judge_cmd->add_option("--dataset", judge_dataset)->required()->check(CLI::ExistingFile);
    judge_cmd->add_option("--responses", judge_responses)->required()->check(CLI::ExistingFile);
    judge_cmd->add_option("--mode", judge_mode)->check(CLI::IsMember({"strict", "jaccard-app"}))->capture_default_str();
    judge_cmd->add_option("--out", judge_out, "scores file")->required();
    judge_budget.attach(judge_cmd);

    // report
    std::string report_dataset, report_scores, report_json;
    auto* report_cmd = app.add_subcommand("report", "accuracy per task kind and domain");
    report_cmd->add_option("--dataset", report_dataset)->required()->check(CLI::ExistingFile);
    report_cmd->add_option("--scores", report_scores)->required()->check(CLI::ExistingFile);
    report_cmd->add_option("--json", report_json, "also write the table as JSON");

    // landmarks
    ProblemArgs lm_args;
    BudgetArgs lm_budget;
    auto* lm_cmd = app.add_subcommand("landmarks", "classify every non-trivial fact");
    lm_args.attach(lm_cmd);
    lm_budget.attach(lm_cmd);

    // gold
    std::string gold_dataset, gold_out;
    auto* gold_cmd = app.add_subcommand("gold", "write responses built from stored metadata");
    gold_cmd->add_option("--dataset", gold_dataset)->required()->check(CLI::ExistingFile);
    gold_cmd->add_option("--out", gold_out, "responses file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*ground_cmd) {
            const auto p = ground_args.load();
            const auto& task = p.grounded.task;
            std::cout << task.num_facts() << " facts, " << task.num_actions() << " actions\n";
            if (dump) std::cout << pddl::dump_task(task);
        } else if (*plan_cmd) {
            const auto p = plan_args.load();
            const auto outcome = planner::solve(p.grounded.task, plan_budget.budget);
            if (outcome.kind == planner::SolveOutcome::Kind::Unsolvable) {
                std::cerr << "unsolvable\n";
                return 1;
            }
            if (!outcome.solved()) {
                std::cerr << "budget exhausted after " << outcome.expansions << " expansions\n";
                return 1;
            }
            for (const auto& name : p.grounded.task.action_names(outcome.plan)) std::cout << name << '\n';
            std::cerr << "; cost " << outcome.cost << "\n";
        } else if (*gen_cmd) {
            const auto p = gen_args.load();
            gen_opts.kinds = parse_kinds(gen_tasks);
            gen_opts.budget = gen_budget.budget;
            const auto result = bench::generate(p, gen_opts);
            auto out = open_out(gen_out);
            bench::write_dataset(out, result.records, p.source);
            for (const auto& s : result.skipped) std::cerr << "skipped " << s << '\n';
            std::cerr << result.records.size() << " questions, " << result.skipped.size() << " skipped\n";
        } else if (*judge_cmd) {
            auto din = open_in(judge_dataset);
            const auto dataset = bench::read_dataset(din);
            auto rin = open_in(judge_responses);
            const auto responses = bench::read_responses(rin);
            const auto mode = judge_mode == "strict" ? judge::Mode::Strict : judge::Mode::JaccardApp;
            const auto run = bench::judge_responses(dataset, responses, mode, judge_budget.budget);
            auto out = open_out(judge_out);
            bench::write_scores(out, dataset, run.scores);
            for (const auto& w : run.warnings) std::cerr << "warning: " << w << '\n';
            if (run.abstentions) {
                std::cerr << run.abstentions << " abstentions\n";
                return 1;
            }
        } else if (*report_cmd) {
            auto din = open_in(report_dataset);
            const auto dataset = bench::read_dataset(din);
            auto sin = open_in(report_scores);
            const auto table = bench::build_report(bench::read_scores(sin), dataset);
            std::cout << bench::render_report(table);
            if (!report_json.empty()) open_out(report_json) << bench::report_to_json(table).dump(2) << '\n';
        } else if (*lm_cmd) {
            const auto p = lm_args.load();
            const auto& task = p.grounded.task;
            for (FactId f = 0; f < task.num_facts(); ++f) {
                const auto v = landmarks::classify_landmark(task, f, lm_budget.budget);
                const char* label = "unknown";
                switch (v.kind) {
                    case landmarks::Verdict::Kind::Landmark: label = "landmark"; break;
                    case landmarks::Verdict::Kind::NonLandmark: label = "non-landmark"; break;
                    case landmarks::Verdict::Kind::Trivial: label = "trivial"; break;
                    case landmarks::Verdict::Kind::Unknown: break;
                }
                std::cout << task.fact(f).name << '\t' << label << '\n';
            }
        } else if (*gold_cmd) {
            auto din = open_in(gold_dataset);
            const auto dataset = bench::read_dataset(din);
            std::vector<bench::Response> responses;
            for (const auto& r : dataset.records) responses.push_back({r.id, bench::synthesize_gold_response(r)});
            auto out = open_out(gold_out);
            bench::write_responses(out, responses);
        }
    } catch (const bench::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const pddl::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const pddl::GroundingError& e) {
        std::cerr << "grounding error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
