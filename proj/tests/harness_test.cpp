#include <gtest/gtest.h>

#include <filesystem>
#include <set>
#include <thread>

#include <httplib.h>

#include "sartco/harness.hpp"

using namespace sartco;

namespace {

const Dataset& dataset() {
  static const Dataset ds = make_splits({});
  return ds;
}

const BoardRecord& first_of(Split split, BoardType type) {
  for (const auto& r : dataset().records) {
    if (r.split == split && r.board_type == type) return r;
  }
  throw std::logic_error("no record");
}

bool contains(const std::string& s, std::string_view needle) {
  return s.find(needle) != std::string::npos;
}

// Chat endpoint on a background thread; the handler decides each reply.
class FakeEndpoint {
 public:
  explicit FakeEndpoint(httplib::Server::Handler handler) {
    server_.Post("/v1/chat/completions", std::move(handler));
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeEndpoint() {
    server_.stop();
    thread_.join();
  }
  std::string url() const {
    return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions";
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

std::string completion(std::string_view content) {
  return nlohmann::json{{"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}}}
      .dump();
}

ModelConfig live_config(const std::string& url) {
  ModelConfig cfg;
  cfg.endpoint = url;
  cfg.model = "fake";
  cfg.api_key = "k";
  cfg.backoff = std::chrono::milliseconds(1);
  cfg.timeout = std::chrono::milliseconds(2000);
  return cfg;
}

}  // namespace

TEST(Prompt, FullStructureHasEverySection) {
  PromptSpec spec;
  spec.in_context.push_back({"a", "place a red nut", "put(board, 'nut', 'red', 0, 0)\n"});
  const auto p = build_prompt(spec, "place a blue washer");
  for (auto head : {"System Info", "Environment Info", "Context Info", "Task Info",
                    "In-context Samples", "Other Info"}) {
    EXPECT_TRUE(contains(p, head)) << head;
  }
  EXPECT_TRUE(contains(p, "Instruction:\nplace a red nut\nOutput:\nput(board, 'nut', 'red', 0, 0)"));
  EXPECT_TRUE(p.ends_with("Instruction:\nplace a blue washer\n"));
  EXPECT_TRUE(contains(p, "labeled Instruction please respond with code under the label Output"));
  EXPECT_LT(p.find("System Info"), p.find("Environment Info"));
  EXPECT_LT(p.find("In-context Samples"), p.find("Other Info"));
}

TEST(Prompt, DroppedSectionIsAbsent) {
  PromptSpec spec;
  spec.sections = {Section::system, Section::environment, Section::task, Section::other};
  const auto p = build_prompt(spec, "x");
  EXPECT_FALSE(contains(p, "Context Info"));
  EXPECT_FALSE(contains(p, "to place a shape on the board"));
  EXPECT_TRUE(contains(p, "Environment Info"));
}

TEST(Prompt, CustomLabels) {
  PromptSpec spec;
  spec.instruction_label = "Q";
  spec.output_label = "A";
  const auto p = build_prompt(spec, "x");
  EXPECT_TRUE(contains(p, "labeled Q please respond with code under the label A"));
  EXPECT_TRUE(p.ends_with("Q:\nx\n"));
}

TEST(Prompt, AblationStructures) {
  const auto s = ablation_structures();
  ASSERT_EQ(s.size(), 6u);
  std::vector<std::string> labels;
  for (const auto& x : s) labels.push_back(structure_label(x));
  EXPECT_EQ(labels, (std::vector<std::string>{
                        "S + E + C + T + O + I*", "E + C + T + O + I*", "S + C + T + O + I*",
                        "S + E + T + O + I*", "S + E + C + O + I*", "S + E + C + T + I*"}));
}

TEST(Prompt, ObjectDefinitionIsTheDefBlock) {
  const auto& r = first_of(Split::test, BoardType::regular);
  const auto def = object_definition(r);
  ASSERT_FALSE(def.empty());
  EXPECT_TRUE(def.starts_with("def "));
  EXPECT_TRUE(r.gold.optimal.starts_with(def));
  EXPECT_FALSE(contains(def, "\nfor "));
}

TEST(InContext, ExcludesSameComboAndIsDeterministic) {
  const auto& test = first_of(Split::test, BoardType::simple);
  auto rng1 = record_rng(42, test.id);
  auto rng2 = record_rng(42, test.id);
  const auto a = select_in_context(dataset().records, test, TaskKind::property_comp, 5, rng1);
  const auto b = select_in_context(dataset().records, test, TaskKind::property_comp, 5, rng2);
  ASSERT_EQ(a.size(), 5u);
  EXPECT_EQ(a, b);
  std::set<std::string> ids;
  for (const auto* r : a) {
    EXPECT_EQ(r->split, Split::train);
    EXPECT_EQ(r->board_type, BoardType::simple);
    EXPECT_NE(combo_key(*r), combo_key(test));
    ids.insert(r->id);
  }
  EXPECT_EQ(ids.size(), 5u);

  auto rng3 = record_rng(43, test.id);
  const auto c = select_in_context(dataset().records, test, TaskKind::property_comp, 5, rng3);
  EXPECT_NE(a, c);
}

TEST(InContext, ZeroAndInsufficient) {
  const auto& test = first_of(Split::test, BoardType::regular);
  auto rng = record_rng(1, test.id);
  EXPECT_TRUE(select_in_context(dataset().records, test, TaskKind::func_repeat, 0, rng).empty());
  std::vector<BoardRecord> tiny(dataset().records.begin(), dataset().records.begin() + 3);
  for (auto& r : tiny) r.split = Split::train;
  EXPECT_THROW(select_in_context(tiny, test, TaskKind::func_repeat, 5, rng), InsufficientPool);
}

TEST(Response, LabelFenceAndFallback) {
  auto p = parse_response("Sure.\nOutput:\n```python\nput(board, 'nut', 'red', 0, 0)\n```\n");
  EXPECT_TRUE(p.label_found);
  EXPECT_EQ(p.code, "put(board, 'nut', 'red', 0, 0)\n");

  p = parse_response("Output: put(board, 'nut', 'red', 0, 0)\nInstruction:\nmore");
  EXPECT_TRUE(p.label_found);
  EXPECT_EQ(p.code, "put(board, 'nut', 'red', 0, 0)\n");

  p = parse_response("**Output:**\nx = 1\n\nput(board, 'nut', 'red', x, 0)\n");
  EXPECT_TRUE(p.label_found);
  EXPECT_EQ(p.code, "x = 1\n\nput(board, 'nut', 'red', x, 0)\n");

  p = parse_response("put(board, 'nut', 'red', 0, 0)\n");
  EXPECT_FALSE(p.label_found);
  EXPECT_EQ(p.code, "put(board, 'nut', 'red', 0, 0)\n");

  p = parse_response("The Output: is below");
  EXPECT_FALSE(p.label_found);
}

TEST(Client, MockModes) {
  ModelConfig cfg;
  cfg.mock = MockMode::echo_gold;
  ChatClient echo(cfg);
  EXPECT_EQ(echo.complete("prompt", "gold"), "gold");
  cfg.mock = MockMode::fixed_text;
  ChatClient fixed(cfg);
  EXPECT_EQ(fixed.complete("prompt", "gold"), "hello");
  EXPECT_EQ(parse_mock_mode("echo_gold"), MockMode::echo_gold);
  EXPECT_FALSE(parse_mock_mode("echo").has_value());
}

TEST(Client, Budget) {
  ModelConfig cfg;
  cfg.mock = MockMode::echo_gold;
  cfg.max_requests = 2;
  ChatClient c(cfg);
  c.complete("a");
  c.complete("b");
  EXPECT_THROW(c.complete("c"), BudgetExceeded);
}

TEST(Client, PayloadAndRetry) {
  std::atomic<int> calls{0};
  nlohmann::json seen;
  std::string auth;
  FakeEndpoint ep([&](const httplib::Request& req, httplib::Response& res) {
    if (calls++ == 0) {
      res.status = 500;
      return;
    }
    seen = nlohmann::json::parse(req.body);
    auth = req.get_header_value("Authorization");
    res.set_content(completion("Output:\nx = 1"), "application/json");
  });
  ChatClient c(live_config(ep.url()));
  EXPECT_EQ(c.complete("hi"), "Output:\nx = 1");
  EXPECT_EQ(calls.load(), 2);
  EXPECT_EQ(seen["model"], "fake");
  EXPECT_EQ(seen["temperature"], 0.0);
  EXPECT_EQ(seen["max_tokens"], 250);
  EXPECT_EQ(seen["messages"][0]["role"], "user");
  EXPECT_EQ(seen["messages"][0]["content"], "hi");
  EXPECT_EQ(auth, "Bearer k");
}

TEST(Client, RetriesExhaustedAndAuth) {
  std::atomic<int> calls{0};
  FakeEndpoint busy([&](const httplib::Request&, httplib::Response& res) {
    ++calls;
    res.status = 429;
  });
  ChatClient c(live_config(busy.url()));
  EXPECT_THROW(c.complete("hi"), TransportError);
  EXPECT_EQ(calls.load(), 4);

  FakeEndpoint denied([](const httplib::Request&, httplib::Response& res) { res.status = 401; });
  ChatClient d(live_config(denied.url()));
  EXPECT_THROW(d.complete("hi"), AuthError);
}

TEST(Client, UnreachableEndpoint) {
  auto cfg = live_config("http://127.0.0.1:1/v1/chat/completions");
  cfg.max_retries = 1;
  ChatClient c(cfg);
  EXPECT_THROW(c.complete("hi"), TransportError);
}

TEST(Run, EchoGoldScoresPerfectly) {
  RunManifest m;
  m.model.mock = MockMode::echo_gold;
  m.concurrency = 2;
  const auto res = run_eval(m, dataset());
  ASSERT_FALSE(res.outcomes.empty());
  for (const auto& o : res.outcomes) {
    EXPECT_EQ(o.eval.em, 1.0) << o.eval.record_id;
    EXPECT_DOUBLE_EQ(o.eval.codebleu.score, 1.0) << o.eval.record_id;
    EXPECT_EQ(o.eval.es, 1.0) << o.eval.record_id;
    EXPECT_EQ(o.in_context_ids.size(), 5u);
  }
  for (const auto& row : res.report.rows) {
    EXPECT_EQ(row.em, 1.0);
    EXPECT_EQ(row.es, 1.0);
  }
  EXPECT_TRUE(res.report.errors.empty());
}

TEST(Run, InContextNeverLeaksTheTestCombo) {
  RunManifest m;
  m.model.mock = MockMode::echo_gold;
  const auto res = run_eval(m, dataset());
  std::map<std::string, const BoardRecord*> by_id;
  for (const auto& r : dataset().records) by_id[r.id] = &r;
  for (const auto& o : res.outcomes) {
    const auto key = combo_key(*by_id.at(o.eval.record_id));
    for (const auto& id : o.in_context_ids) {
      EXPECT_EQ(by_id.at(id)->split, Split::train);
      EXPECT_NE(combo_key(*by_id.at(id)), key);
    }
  }
}

TEST(Run, FixedTextIsAllSyntaxErrors) {
  RunManifest m;
  m.model.mock = MockMode::fixed_text;
  m.tasks = {TaskKind::property_comp};
  const auto res = run_eval(m, dataset());
  for (const auto& o : res.outcomes) {
    EXPECT_EQ(o.eval.es, 0.0);
    EXPECT_EQ(o.eval.error, ErrorCategory::syntax);
  }
}

TEST(Run, ConcurrencyDoesNotChangeResults) {
  RunManifest m;
  m.model.mock = MockMode::fixed_text;
  m.model.fixed_text = "Output:\nput(board, 'nut', 'red', 0, 0)";
  m.split = Split::val;
  m.concurrency = 1;
  const auto serial = run_eval(m, dataset());
  m.concurrency = 4;
  const auto parallel = run_eval(m, dataset());
  ASSERT_EQ(serial.outcomes.size(), parallel.outcomes.size());
  for (std::size_t i = 0; i < serial.outcomes.size(); ++i) {
    EXPECT_EQ(run_outcome_to_json(serial.outcomes[i]), run_outcome_to_json(parallel.outcomes[i]));
    EXPECT_EQ(serial.outcomes[i].prompt, parallel.outcomes[i].prompt);
  }
  EXPECT_EQ(report_to_json(serial.report), report_to_json(parallel.report));
}

TEST(Run, TransportFailuresBecomeOutcomes) {
  RunManifest m;
  m.model = live_config("http://127.0.0.1:1/v1/chat/completions");
  m.model.max_retries = 0;
  m.tasks = {TaskKind::property_comp};
  m.split = Split::val;
  const auto res = run_eval(m, dataset());
  ASSERT_FALSE(res.outcomes.empty());
  for (const auto& o : res.outcomes) {
    EXPECT_EQ(o.eval.error, ErrorCategory::transport);
    EXPECT_EQ(o.eval.es, 0.0);
  }
}

TEST(Run, AuthFailureAbortsTheRun) {
  FakeEndpoint denied([](const httplib::Request&, httplib::Response& res) { res.status = 403; });
  RunManifest m;
  m.model = live_config(denied.url());
  m.tasks = {TaskKind::property_comp};
  EXPECT_THROW(run_eval(m, dataset()), AuthError);
}

TEST(Run, MessageTurnsUseOneRequestPerRecord) {
  std::atomic<int> multi{0};
  FakeEndpoint ep([&](const httplib::Request& req, httplib::Response& res) {
    const auto j = nlohmann::json::parse(req.body);
    if (j["messages"].size() > 1) ++multi;
    res.set_content(completion("Output:\nhello"), "application/json");
  });
  RunManifest m;
  m.model = live_config(ep.url());
  m.tasks = {TaskKind::property_comp};
  m.split = Split::val;
  m.style = InstructionStyle::template_multi;
  m.turns = TurnMode::messages;
  const auto res = run_eval(m, dataset());
  EXPECT_GT(multi.load(), 0);
  for (const auto& o : res.outcomes) EXPECT_TRUE(o.label_found);
}

TEST(Run, WritesArtifacts) {
  const auto dir = std::filesystem::temp_directory_path() / "sartco_harness_test";
  std::filesystem::remove_all(dir);
  const auto data = (dir / "boards.jsonl").string();
  write_file(data, to_jsonl(dataset().records));
  RunManifest m;
  m.dataset_path = data;
  m.out_dir = (dir / "run").string();
  m.model.mock = MockMode::echo_gold;
  m.tasks = {TaskKind::func_repeat};
  const auto res = run_eval(m);
  for (auto f : {"outcomes.jsonl", "prompts.jsonl", "report.json", "report.txt", "manifest.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / "run" / f)) << f;
  }
  const auto manifest = nlohmann::json::parse(read_file((dir / "run" / "manifest.json").string()));
  EXPECT_EQ(manifest["rng_seed"], 42);
  EXPECT_EQ(manifest["model"]["mock"], "echo_gold");
  std::filesystem::remove_all(dir);
}

TEST(Run, HumanStyleNeedsInstructions) {
  RunManifest m;
  m.model.mock = MockMode::echo_gold;
  m.style = InstructionStyle::human_written;
  EXPECT_THROW(run_eval(m, dataset()), std::invalid_argument);

  const auto& r = first_of(Split::test, BoardType::simple);
  const auto sets = import_human_instructions(
      nlohmann::json{{"record_id", r.id}, {"text", "build it"}}.dump() + "\n");
  m.tasks = {TaskKind::property_comp};
  const auto res = run_eval(m, dataset(), sets);
  ASSERT_EQ(res.outcomes.size(), 1u);
  EXPECT_TRUE(res.outcomes[0].prompt.ends_with("Instruction:\nbuild it\n"));
}

TEST(Ablate, SixRowsAllPerfectWithEchoGold) {
  RunManifest m;
  m.model.mock = MockMode::echo_gold;
  m.split = Split::val;
  m.tasks = {TaskKind::func_comp_optimal};
  const auto rows = ablate(m, dataset());
  ASSERT_EQ(rows.size(), 6u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.em, 1.0) << r.structure;
    EXPECT_EQ(r.es, 1.0) << r.structure;
    EXPECT_GT(r.n, 0u);
  }
  EXPECT_TRUE(contains(render_ablation_text(rows), "S + E + C + T + I*"));
}

TEST(ModelInstructions, EchoGoldReturnsTemplateText) {
  ModelConfig cfg;
  cfg.mock = MockMode::echo_gold;
  ChatClient c(cfg);
  const auto& r = first_of(Split::test, BoardType::simple);
  const auto sets = generate_model_instructions({r}, c);
  ASSERT_EQ(sets.size(), 1u);
  EXPECT_EQ(sets[0].style, InstructionStyle::model_generated);
  EXPECT_EQ(sets[0].joined(), render_template(r, InstructionStyle::template_single).joined());
}
