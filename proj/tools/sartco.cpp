// sartco: board generation, instruction rendering, model runs and scoring.
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "sartco/dsl.hpp"
#include "sartco/harness.hpp"

using namespace sartco;

namespace {

struct ModelFlags {
  std::string endpoint;
  std::string model = "mock";
  double temperature = 0.0;
  int max_tokens = 250;
  std::string mock = "off";
  std::string fixed_text = "hello";
  int retries = 3;
  int timeout_s = 60;
  long long max_requests = -1;
};

void add_model_flags(CLI::App* cmd, ModelFlags& f) {
  cmd->add_option("--endpoint", f.endpoint, "Chat-completions URL (default $SARTCO_ENDPOINT)");
  cmd->add_option("--model", f.model, "Model name sent to the endpoint")->capture_default_str();
  cmd->add_option("--temperature", f.temperature)->capture_default_str();
  cmd->add_option("--max-tokens", f.max_tokens)->capture_default_str();
  cmd->add_option("--mock", f.mock, "off, echo_gold or fixed_text")
      ->check(CLI::IsMember({"off", "echo_gold", "fixed_text"}))
      ->capture_default_str();
  cmd->add_option("--fixed-text", f.fixed_text, "Reply used by --mock fixed_text")
      ->capture_default_str();
  cmd->add_option("--retries", f.retries, "Retries on transient failures")->capture_default_str();
  cmd->add_option("--timeout", f.timeout_s, "Request timeout in seconds")->capture_default_str();
  cmd->add_option("--max-requests", f.max_requests, "Request budget, negative for none")
      ->capture_default_str();
}

ModelConfig model_config(const ModelFlags& f) {
  ModelConfig cfg;
  cfg.endpoint = f.endpoint;
  if (cfg.endpoint.empty()) {
    if (const char* e = std::getenv("SARTCO_ENDPOINT")) cfg.endpoint = e;
  }
  if (const char* k = std::getenv("SARTCO_API_KEY")) cfg.api_key = k;
  cfg.model = f.model;
  cfg.temperature = f.temperature;
  cfg.max_new_tokens = f.max_tokens;
  cfg.mock = *parse_mock_mode(f.mock);
  cfg.fixed_text = f.fixed_text;
  cfg.max_retries = f.retries;
  cfg.timeout = std::chrono::seconds(f.timeout_s);
  cfg.max_requests = f.max_requests;
  if (cfg.mock == MockMode::off && cfg.endpoint.empty()) {
    throw std::invalid_argument("no endpoint: pass --endpoint, set SARTCO_ENDPOINT or use --mock");
  }
  return cfg;
}

struct RunFlags {
  std::string dataset;
  std::string split;
  std::vector<std::string> tasks;
  std::string style = "template_single";
  std::string instructions;
  std::string turns = "joined";
  std::size_t k_examples = 5;
  std::uint64_t rng_seed = 42;
  std::size_t concurrency = 4;
  std::string out;
  ModelFlags model;
};

void add_run_flags(CLI::App* cmd, RunFlags& f, std::string_view default_split) {
  f.split = std::string(default_split);
  cmd->add_option("--dataset", f.dataset, "Board JSONL from gen-boards")->required();
  cmd->add_option("--split", f.split, "Split to evaluate")
      ->check(CLI::IsMember({"train", "val", "test"}))
      ->capture_default_str();
  cmd->add_option("--task", f.tasks,
                  "property_comp, func_comp_sequences, func_comp_optimal or func_repeat "
                  "(repeatable)");
  cmd->add_option("--style", f.style,
                  "template_single, template_multi, model_generated or human_written")
      ->capture_default_str();
  cmd->add_option("--instructions", f.instructions,
                  "Instruction file for model_generated (JSONL from gen-instructions) or "
                  "human_written ({record_id, text} lines)");
  cmd->add_option("--turns", f.turns, "Multi-turn delivery: joined or messages")
      ->check(CLI::IsMember({"joined", "messages"}))
      ->capture_default_str();
  cmd->add_option("--k-examples", f.k_examples, "In-context samples per prompt")
      ->capture_default_str();
  cmd->add_option("--rng-seed", f.rng_seed)->capture_default_str();
  cmd->add_option("--concurrency", f.concurrency, "Requests in flight")->capture_default_str();
  cmd->add_option("--out", f.out, "Output directory");
  add_model_flags(cmd, f.model);
}

std::vector<TaskKind> parse_tasks(const std::vector<std::string>& names) {
  std::vector<TaskKind> out;
  for (const auto& n : names) {
    const auto t = parse_task(n);
    if (!t) throw std::invalid_argument("unknown task: " + n);
    out.push_back(*t);
  }
  return out;
}

RunManifest manifest_from(const RunFlags& f) {
  RunManifest m;
  m.dataset_path = f.dataset;
  m.split = *parse_split(f.split);
  if (!f.tasks.empty()) m.tasks = parse_tasks(f.tasks);
  const auto style = parse_style(f.style);
  if (!style) throw std::invalid_argument("unknown style: " + f.style);
  m.style = *style;
  m.instructions_path = f.instructions;
  m.turns = f.turns == "messages" ? TurnMode::messages : TurnMode::joined;
  m.model = model_config(f.model);
  m.rng_seed = f.rng_seed;
  m.k_examples = f.k_examples;
  m.concurrency = f.concurrency;
  m.out_dir = f.out;
  return m;
}

void emit(const std::string& out, std::string_view text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_file(out, text);
  }
}

const BoardRecord& find_record(const std::vector<BoardRecord>& records, const std::string& id) {
  for (const auto& r : records) {
    if (r.id == id) return r;
  }
  throw std::invalid_argument("no record with id " + id);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Assembly-board code generation benchmark"};
  app.require_subcommand(1);

  // gen-boards
  std::uint64_t gen_seed = 42;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen-boards", "Generate the board dataset as JSONL");
  gen->add_option("--rng-seed", gen_seed)->capture_default_str();
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  // gen-instructions
  std::string gi_dataset;
  std::string gi_style = "template_single";
  std::string gi_split;
  std::string gi_out;
  ModelFlags gi_model;
  auto* gi = app.add_subcommand("gen-instructions", "Render or generate instructions as JSONL");
  gi->add_option("--dataset", gi_dataset)->required();
  gi->add_option("--style", gi_style, "template_single, template_multi or model_generated")
      ->check(CLI::IsMember({"template_single", "template_multi", "model_generated"}))
      ->capture_default_str();
  gi->add_option("--split", gi_split, "Only this split (default all)")
      ->check(CLI::IsMember({"train", "val", "test"}));
  gi->add_option("--out", gi_out, "Output file (default stdout)");
  add_model_flags(gi, gi_model);

  // run / ablate
  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "Prompt a model over a split and score the replies");
  add_run_flags(run, run_flags, "test");

  RunFlags ab_flags;
  auto* ab = app.add_subcommand("ablate", "Score each prompt-section subset");
  add_run_flags(ab, ab_flags, "val");

  // score
  std::string sc_dataset;
  std::string sc_generated;
  std::string sc_out;
  auto* sc = app.add_subcommand("score", "Score generated code from a JSONL file");
  sc->add_option("--dataset", sc_dataset)->required();
  sc->add_option("--generated", sc_generated,
                 "JSONL lines with record_id, task, code and optional model, style")
      ->required();
  sc->add_option("--out", sc_out, "Output directory (default: report to stdout)");

  // render
  std::string rd_dataset;
  std::string rd_id;
  std::string rd_code;
  auto* rd = app.add_subcommand("render", "Show a board, or the board a program builds");
  rd->add_option("--dataset", rd_dataset);
  rd->add_option("--id", rd_id, "Record to show");
  rd->add_option("--code", rd_code, "Program file to execute and show");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      SplitConfig cfg;
      cfg.rng_seed = gen_seed;
      emit(gen_out, to_jsonl(make_splits(cfg).records));
    } else if (gi->parsed()) {
      auto records = read_jsonl(read_file(gi_dataset));
      if (!gi_split.empty()) {
        const Split s = *parse_split(gi_split);
        std::erase_if(records, [&](const BoardRecord& r) { return r.split != s; });
      }
      const InstructionStyle style = *parse_style(gi_style);
      std::vector<InstructionSet> sets;
      if (style == InstructionStyle::model_generated) {
        ChatClient client(model_config(gi_model));
        sets = generate_model_instructions(records, client);
      } else {
        for (const auto& r : records) sets.push_back(render_template(r, style));
      }
      emit(gi_out, instructions_to_jsonl(sets));
    } else if (run->parsed()) {
      const auto res = run_eval(manifest_from(run_flags));
      std::cout << render_report_text(res.report);
    } else if (ab->parsed()) {
      RunManifest m = manifest_from(ab_flags);
      if (ab_flags.tasks.empty()) m.tasks = {TaskKind::func_comp_optimal};
      const Dataset ds{read_jsonl(read_file(m.dataset_path))};
      const auto rows = ablate(m, ds);
      const auto text = render_ablation_text(rows);
      std::cout << text;
      if (!m.out_dir.empty()) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : rows) {
          j.push_back({{"structure", r.structure}, {"n", r.n}, {"em", r.em}, {"cb", r.cb},
                       {"es", r.es}});
        }
        const std::filesystem::path dir(m.out_dir);
        write_file((dir / "ablation.json").string(), j.dump(2) + "\n");
        write_file((dir / "ablation.txt").string(), text);
        write_file((dir / "manifest.json").string(), m.to_json().dump(2) + "\n");
      }
    } else if (sc->parsed()) {
      const auto records = read_jsonl(read_file(sc_dataset));
      std::map<std::string, const BoardRecord*> by_id;
      for (const auto& r : records) by_id[r.id] = &r;
      std::vector<EvalOutcome> outcomes;
      std::istringstream in(read_file(sc_generated));
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        const auto id = j.at("record_id").get<std::string>();
        const auto it = by_id.find(id);
        if (it == by_id.end()) throw std::invalid_argument("unknown record_id " + id);
        const auto task = parse_tasks({j.at("task").get<std::string>()}).front();
        const auto style = parse_style(j.value("style", "template_single"));
        if (!style) throw std::invalid_argument("unknown style in " + line);
        outcomes.push_back(score_response(*it->second, task, j.at("code").get<std::string>(),
                                          j.value("model", "unknown"), *style));
      }
      const auto report = aggregate(outcomes);
      if (sc_out.empty()) {
        std::cout << render_report_text(report);
      } else {
        const std::filesystem::path dir(sc_out);
        std::string lines;
        for (const auto& o : outcomes) lines += outcome_to_json(o).dump() + "\n";
        write_file((dir / "outcomes.jsonl").string(), lines);
        write_file((dir / "report.json").string(), report_to_json(report).dump(2) + "\n");
        write_file((dir / "report.txt").string(), render_report_text(report));
      }
    } else if (rd->parsed()) {
      if (!rd_code.empty()) {
        const auto outcome = dsl::run_source(read_file(rd_code));
        std::cout << render_ascii(outcome.board);
        if (!outcome.success) {
          std::cout << category_display(*outcome.error) << ": " << outcome.message << "\n";
          return 1;
        }
      } else {
        if (rd_dataset.empty() || rd_id.empty()) {
          throw std::invalid_argument("render needs --code, or --dataset with --id");
        }
        const auto records = read_jsonl(read_file(rd_dataset));
        const auto& r = find_record(records, rd_id);
        std::cout << render_ascii(r.target) << "\n"
                  << describe_grid(r.target) << "\n"
                  << render_template(r, InstructionStyle::template_single).joined() << "\n\n"
                  << "# first_order\n" << r.gold.first_order << "\n"
                  << "# higher_order\n" << r.gold.higher_order << "\n"
                  << "# optimal\n" << r.gold.optimal;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "sartco: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
