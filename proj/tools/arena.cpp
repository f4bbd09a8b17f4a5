#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "arena/analysis.hpp"
#include "arena/orchestrator.hpp"
#include "arena/report.hpp"

using namespace arena;

namespace {

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Validation:
    case ErrorKind::NotFound:
    case ErrorKind::Config:
      return 2;
    case ErrorKind::Provider:
      return 3;
    default:
      return 1;
  }
}

RunConfig load_config(const std::string& path, const std::optional<std::int64_t>& seed) {
  if (path.empty()) throw validation_error("--config is required");
  RunConfig config = RunConfig::from_json(load_json_file(path));
  if (seed) config.seed = *seed;
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"peer-battle tournament runner and leaderboard builder"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::int64_t> seed;
  bool resume = false;
  app.add_option("--config", config_path, "run configuration file (JSON)");
  app.add_option("--seed", seed, "override the configured seed");
  app.add_flag("--resume", resume, "continue an interrupted run");

  // gen-questions
  auto* gen = app.add_subcommand("gen-questions", "generate a question set");
  int per_category = 0;
  std::string out_path, pair_id;
  gen->add_option("--per-category", per_category, "questions per category");
  gen->add_option("--out", out_path, "output JSONL path");
  gen->add_option("--pair-id", pair_id, "tag questions for a specific pairing");

  // run
  auto* run = app.add_subcommand("run", "run the full Swiss tournament");

  // add-model
  auto* add = app.add_subcommand("add-model", "insert a newcomer into a finished run");
  std::string new_player;
  add->add_option("player", new_player, "registered id of the new player")->required();

  // ablate
  auto* ablate = app.add_subcommand("ablate", "run a protocol ablation");
  std::string ablate_mode;
  std::string ablate_run_id;
  ablate->add_option("--mode", ablate_mode, "no-debate or no-discussion")->required();
  ablate->add_option("--run-id", ablate_run_id, "override the ablation run id");

  // report
  auto* report = app.add_subcommand("report", "post-run diagnostics");
  std::string reference_path;
  report->add_option("--reference", reference_path,
                     "JSON array of player ids, best first");

  // analyze-contamination
  auto* contam = app.add_subcommand("analyze-contamination",
                                    "screen questions against a snippet corpus");
  std::string questions_path, corpus_path, method = "both";
  double threshold = 0.8;
  contam->add_option("--questions", questions_path, "question set JSONL")->required();
  contam->add_option("--corpus", corpus_path, "snippet corpus (JSON array)")->required();
  contam->add_option("--method", method, "substring, similarity, or both");
  contam->add_option("--threshold", threshold, "cosine threshold");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      RunConfig config = load_config(config_path, seed);
      if (per_category <= 0) per_category = config.per_category_questions;
      Orchestrator orch(config, {});
      QuestionFactory factory(orch.gateway_for(config.examiner), config.examiner,
                              config.examiner_temperature);
      std::optional<std::string> tag;
      if (!pair_id.empty()) tag = pair_id;
      std::int64_t qseed = static_cast<std::int64_t>(hash_combine(
          fnv1a("questions:" + pair_id), static_cast<std::uint64_t>(config.seed)));
      std::vector<Question> questions = factory.generate_set(per_category, tag, qseed);
      std::filesystem::path out = out_path.empty()
          ? orch.run_dir() / "questions" / "global.jsonl"
          : std::filesystem::path(out_path);
      save_question_set(out, questions);
      std::cout << "wrote " << questions.size() << " questions to " << out.string()
                << "\n";
      return 0;
    }

    if (run->parsed()) {
      RunConfig config = load_config(config_path, seed);
      Orchestrator::Options opts;
      opts.resume = resume;
      Orchestrator orch(config, opts);
      RatingTable table = orch.run_tournament();
      std::cout << table.to_text_table();
      return 0;
    }

    if (add->parsed()) {
      RunConfig config = load_config(config_path, seed);
      Orchestrator orch(config, {});
      RatingTable table = orch.add_model(new_player);
      std::cout << table.to_text_table();
      return 0;
    }

    if (ablate->parsed()) {
      RunConfig config = load_config(config_path, seed);
      if (ablate_mode != "no-debate" && ablate_mode != "no-discussion")
        throw validation_error("unknown ablation mode: " + ablate_mode);
      config.mode = ablate_mode;
      config.run_id = ablate_run_id.empty() ? config.run_id + "-" + ablate_mode
                                            : ablate_run_id;
      Orchestrator::Options opts;
      opts.resume = resume;
      Orchestrator orch(config, opts);
      RatingTable table = orch.run_tournament();
      std::cout << table.to_text_table();
      return 0;
    }

    if (report->parsed()) {
      RunConfig config = load_config(config_path, seed);
      std::optional<std::vector<std::string>> reference;
      if (!reference_path.empty()) {
        std::vector<std::string> order;
        for (const auto& id : load_json_file(reference_path))
          order.push_back(id.get<std::string>());
        reference = std::move(order);
      }
      std::filesystem::path run_dir =
          std::filesystem::path(config.output_root) / config.run_id;
      json out = build_report(run_dir, reference);
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (contam->parsed()) {
      if (method != "substring" && method != "similarity" && method != "both")
        throw validation_error("unknown method: " + method);
      std::vector<Question> questions = load_question_set(questions_path);
      SnippetCorpus corpus = SnippetCorpus::load(corpus_path);
      Embedder embedder = bag_of_words_embedder();
      int flagged = 0;
      json rows = json::array();
      for (const Question& q : questions) {
        std::vector<std::string> snippets = corpus.search(q.text);
        bool by_substring = false, by_similarity = false;
        if (method != "similarity")
          by_substring = contamination_substring(q.text, snippets, fnv1a(q.id));
        if (method != "substring")
          by_similarity =
              contamination_similarity(q.text, snippets, embedder, threshold);
        json row;
        row["question_id"] = q.id;
        row["category"] = q.category;
        row["substring"] = by_substring;
        row["similarity"] = by_similarity;
        rows.push_back(row);
        if (by_substring || by_similarity) ++flagged;
      }
      json out;
      out["questions"] = questions.size();
      out["flagged"] = flagged;
      out["results"] = rows;
      std::cout << out.dump(2) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
