#include "sartco/harness.hpp"

#include <algorithm>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "sartco/prompt_text.hpp"

namespace sartco {

// --- prompt ---

bool PromptSpec::has(Section s) const {
  return std::find(sections.begin(), sections.end(), s) != sections.end();
}

namespace {

std::string_view section_letter(Section s) {
  switch (s) {
    case Section::system: return "S";
    case Section::environment: return "E";
    case Section::context: return "C";
    case Section::task: return "T";
    case Section::in_context: return "I*";
    case Section::other: return "O";
  }
  return "";
}

std::string substitute(std::string text, std::string_view key, std::string_view value) {
  for (auto p = text.find(key); p != std::string::npos; p = text.find(key, p + value.size())) {
    text.replace(p, key.size(), value);
  }
  return text;
}

// Extra task line; the shared label sentence alone does not say which code form is wanted.
std::string_view task_hint(TaskKind t) {
  switch (t) {
    case TaskKind::property_comp: return "";
    case TaskKind::func_comp_sequences:
      return "Wrap the placements in a function named after the object, then call it.";
    case TaskKind::func_comp_optimal:
      return "Write a function named after the object that takes board, colors, x and y, then "
             "call it.";
    case TaskKind::func_repeat:
      return "Define the object function, then use loops to repeat it as instructed.";
  }
  return "";
}

}  // namespace

std::string structure_label(const std::vector<Section>& sections) {
  // Samples are written last, as in the ablation table.
  std::string out;
  for (Section s : {Section::system, Section::environment, Section::context, Section::task,
                    Section::other, Section::in_context}) {
    if (std::find(sections.begin(), sections.end(), s) == sections.end()) continue;
    if (!out.empty()) out += " + ";
    out += section_letter(s);
  }
  return out;
}

std::vector<std::vector<Section>> ablation_structures() {
  std::vector<std::vector<Section>> out{{kAllSections.begin(), kAllSections.end()}};
  for (Section drop : {Section::system, Section::environment, Section::context, Section::task,
                       Section::other}) {
    std::vector<Section> s;
    for (Section x : kAllSections) {
      if (x != drop) s.push_back(x);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string build_prompt(const PromptSpec& spec, std::string_view test_instruction) {
  namespace pt = prompt_text;
  const std::string ilabel = spec.instruction_label + ":";
  const std::string olabel = spec.output_label + ":";
  std::vector<std::string> parts;
  for (Section s : kAllSections) {
    if (!spec.has(s)) continue;
    std::string text;
    switch (s) {
      case Section::system:
        text = "System Info\n\n" + std::string(pt::kCodeSystem);
        break;
      case Section::environment:
        text = "Environment Info\n\n" + std::string(pt::kEnvironmentGrid) + "\n\n" +
               std::string(pt::kCodeAxes) + "\n\n" + std::string(pt::kBridgeNaming);
        break;
      case Section::context:
        text = "Context Info\n\n" + std::string(pt::kContextPreamble) + "\n\n" +
               std::string(pt::kContextPut);
        for (const auto& def : spec.object_definitions) {
          text += "\n\nThe object named in the instruction is built by this function; include "
                  "it in the response before using it:\n" +
                  def;
          while (!text.empty() && text.back() == '\n') text.pop_back();
        }
        break;
      case Section::task: {
        text = "Task Info\n\n" +
               substitute(substitute(std::string(pt::kCodeTask), "$INSTRUCTION_LABEL",
                                     spec.instruction_label),
                          "$OUTPUT_LABEL", spec.output_label);
        const auto hint = task_hint(spec.task);
        if (!hint.empty()) text += "\n" + std::string(hint);
        break;
      }
      case Section::in_context:
        if (spec.in_context.empty()) continue;
        text = "In-context Samples";
        for (const auto& ex : spec.in_context) {
          std::string code = ex.code;
          while (!code.empty() && code.back() == '\n') code.pop_back();
          text += "\n\n" + ilabel + "\n" + ex.instruction + "\n" + olabel + "\n" + code;
        }
        break;
      case Section::other:
        text = "Other Info\n\n" + std::string(pt::kNoOtherText) + "\n\n" +
               std::string(pt::kExecHint) + "\n\n" + std::string(pt::kBegin);
        break;
    }
    parts.push_back(std::move(text));
  }
  parts.push_back(ilabel + "\n" + std::string(test_instruction));
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "\n\n";
    out += p;
  }
  return out + "\n";
}

std::string object_definition(const BoardRecord& r) {
  std::istringstream in(r.gold.optimal);
  std::string line;
  std::string out;
  bool in_def = false;
  while (std::getline(in, line)) {
    if (line.rfind("def ", 0) == 0) {
      in_def = true;
    } else if (line.empty() || line[0] != ' ') {
      if (in_def) break;
      continue;
    }
    if (in_def) out += line + "\n";
  }
  return out;
}

// --- in-context selection ---

std::string combo_key(const BoardRecord& r) {
  std::vector<std::string> shapes;
  for (Shape s : r.shapes) shapes.emplace_back(shape_name(s));
  std::sort(shapes.begin(), shapes.end());
  std::string key;
  for (const auto& s : shapes) key += s + ",";
  const Cell origin = r.window ? Cell{r.window->row, r.window->col} : r.anchor;
  return key + "@" + std::to_string(origin.row) + "," + std::to_string(origin.col);
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Unbiased draw from [0, n) with a fixed algorithm, so selections do not
// depend on the standard library's distribution implementation.
std::size_t bounded(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

}  // namespace

std::mt19937_64 record_rng(std::uint64_t seed, std::string_view record_id) {
  const std::uint64_t h = fnv1a(record_id);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  return std::mt19937_64(seq);
}

std::vector<const BoardRecord*> select_in_context(const std::vector<BoardRecord>& train,
                                                  const BoardRecord& test, TaskKind task,
                                                  std::size_t k, std::mt19937_64& rng) {
  if (k == 0) return {};
  const std::string key = combo_key(test);
  std::vector<const BoardRecord*> pool;
  for (const auto& r : train) {
    if (r.split == Split::train && task_accepts(task, r) && r.id != test.id &&
        combo_key(r) != key) {
      pool.push_back(&r);
    }
  }
  if (pool.size() < k) {
    throw InsufficientPool("select_in_context: " + std::to_string(pool.size()) +
                           " eligible examples for " + test.id + ", need " + std::to_string(k));
  }
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(pool[i], pool[i + bounded(rng, pool.size() - i)]);
  }
  pool.resize(k);
  return pool;
}

// --- model client ---

std::string_view mock_mode_name(MockMode m) {
  switch (m) {
    case MockMode::off: return "off";
    case MockMode::echo_gold: return "echo_gold";
    case MockMode::fixed_text: return "fixed_text";
  }
  return "off";
}

std::optional<MockMode> parse_mock_mode(std::string_view s) {
  for (auto m : {MockMode::off, MockMode::echo_gold, MockMode::fixed_text}) {
    if (mock_mode_name(m) == s) return m;
  }
  return std::nullopt;
}

nlohmann::json chat_payload(const std::vector<std::string>& user_messages, const ModelConfig& cfg) {
  nlohmann::json messages = nlohmann::json::array();
  for (const auto& m : user_messages) messages.push_back({{"role", "user"}, {"content", m}});
  return {{"model", cfg.model},
          {"messages", messages},
          {"temperature", cfg.temperature},
          {"max_tokens", cfg.max_new_tokens}};
}

ChatClient::ChatClient(ModelConfig cfg) : cfg_(std::move(cfg)) {}

std::string ChatClient::complete(const std::vector<std::string>& user_messages,
                                 std::string_view gold) {
  const long long n = ++requests_;
  if (cfg_.max_requests >= 0 && n > cfg_.max_requests) {
    throw BudgetExceeded("request budget of " + std::to_string(cfg_.max_requests) + " exhausted");
  }
  switch (cfg_.mock) {
    case MockMode::echo_gold: return std::string(gold);
    case MockMode::fixed_text: return cfg_.fixed_text;
    case MockMode::off: break;
  }
  return live(user_messages);
}

namespace {

struct Url {
  std::string base;  // scheme://host[:port]
  std::string path;
};

Url split_url(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) throw TransportError("endpoint is not a URL: " + url);
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

}  // namespace

std::string ChatClient::live(const std::vector<std::string>& user_messages) {
  if (cfg_.endpoint.empty()) throw TransportError("no endpoint configured");
  const Url url = split_url(cfg_.endpoint);
  httplib::Client cli(url.base);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(cfg_.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(cfg_.timeout - secs);
  cli.set_connection_timeout(secs.count(), usecs.count());
  cli.set_read_timeout(secs.count(), usecs.count());
  cli.set_write_timeout(secs.count(), usecs.count());
  httplib::Headers headers;
  if (!cfg_.api_key.empty()) headers.emplace("Authorization", "Bearer " + cfg_.api_key);
  const std::string body = chat_payload(user_messages, cfg_).dump();

  std::string last_error;
  auto delay = cfg_.backoff;
  for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
    auto res = cli.Post(url.path, headers, body, "application/json");
    if (!res) {
      last_error = "connection failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 401 || res->status == 403) {
      throw AuthError("endpoint rejected credentials (HTTP " + std::to_string(res->status) + ")");
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw TransportError("HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
    }
    try {
      const auto j = nlohmann::json::parse(res->body);
      const auto& content = j.at("choices").at(0).at("message").at("content");
      return content.is_null() ? std::string{} : content.get<std::string>();
    } catch (const std::exception& e) {
      throw TransportError(std::string("malformed completion response: ") + e.what());
    }
  }
  throw TransportError("giving up after " + std::to_string(cfg_.max_retries + 1) +
                       " attempts: " + last_error);
}

// --- responses ---

namespace {

std::string_view trim_view(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Content after "label:" when the line is a label line (markdown emphasis allowed).
std::optional<std::string_view> after_label(std::string_view line, std::string_view label) {
  line = trim_view(line);
  while (!line.empty() && (line.front() == '*' || line.front() == '#' || line.front() == '_')) {
    line.remove_prefix(1);
  }
  line = trim_view(line);
  if (line.substr(0, label.size()) != label) return std::nullopt;
  line.remove_prefix(label.size());
  while (!line.empty() && (line.front() == '*' || line.front() == '_')) line.remove_prefix(1);
  if (line.empty() || line.front() != ':') return std::nullopt;
  line.remove_prefix(1);
  while (!line.empty() && (line.front() == '*' || line.front() == '_')) line.remove_prefix(1);
  return trim_view(line);
}

std::vector<std::string_view> split_lines(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto nl = s.find('\n');
    out.push_back(s.substr(0, nl));
    if (nl == std::string_view::npos) break;
    s.remove_prefix(nl + 1);
  }
  return out;
}

std::string strip_fence(std::string text) {
  auto lines = split_lines(text);
  std::size_t first = 0;
  std::size_t last = lines.size();
  while (first < last && trim_view(lines[first]).empty()) ++first;
  while (last > first && trim_view(lines[last - 1]).empty()) --last;
  if (last - first < 2) return text;
  if (trim_view(lines[first]).substr(0, 3) != "```" || trim_view(lines[last - 1]) != "```") {
    return text;
  }
  std::string out;
  for (std::size_t i = first + 1; i + 1 < last; ++i) {
    out += std::string(lines[i]) + "\n";
  }
  return out;
}

}  // namespace

ParsedResponse parse_response(std::string_view raw, std::string_view output_label,
                              std::string_view instruction_label) {
  const auto lines = split_lines(raw);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto rest = after_label(lines[i], output_label);
    if (!rest) continue;
    std::string body;
    if (!rest->empty()) body += std::string(*rest) + "\n";
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (after_label(lines[j], output_label) || after_label(lines[j], instruction_label)) break;
      body += std::string(lines[j]) + "\n";
    }
    // Drop blank lines the label line leaves around the code.
    const auto b = body.find_first_not_of("\n");
    body.erase(0, b == std::string::npos ? body.size() : b);
    while (body.size() >= 2 && body[body.size() - 1] == '\n' && body[body.size() - 2] == '\n') {
      body.pop_back();
    }
    return {strip_fence(std::move(body)), true};
  }
  return {strip_fence(std::string(raw)), false};
}

// --- runs ---

nlohmann::json RunManifest::to_json() const {
  nlohmann::json tasks_j = nlohmann::json::array();
  for (TaskKind t : tasks) tasks_j.push_back(task_id(t));
  nlohmann::json sections_j = nlohmann::json::array();
  for (Section s : sections) sections_j.push_back(section_letter(s));
  return {{"dataset_path", dataset_path},
          {"split", split_name(split)},
          {"tasks", tasks_j},
          {"style", style_name(style)},
          {"instructions_path", instructions_path},
          {"turns", turns == TurnMode::joined ? "joined" : "messages"},
          {"model",
           {{"endpoint", model.endpoint},
            {"model", model.model},
            {"temperature", model.temperature},
            {"max_new_tokens", model.max_new_tokens},
            {"timeout_ms", model.timeout.count()},
            {"max_retries", model.max_retries},
            {"max_requests", model.max_requests},
            {"mock", mock_mode_name(model.mock)},
            {"fixed_text", model.fixed_text}}},
          {"rng_seed", rng_seed},
          {"k_examples", k_examples},
          {"sections", sections_j},
          {"concurrency", concurrency}};
}

nlohmann::json run_outcome_to_json(const RunOutcome& o) {
  auto j = outcome_to_json(o.eval);
  j["raw_response"] = o.raw_response;
  j["label_found"] = o.label_found;
  j["in_context_ids"] = o.in_context_ids;
  return j;
}

namespace {

std::string template_text(const BoardRecord& r, InstructionStyle style) {
  const auto s = style == InstructionStyle::template_multi ? InstructionStyle::template_multi
                                                           : InstructionStyle::template_single;
  return render_template(r, s).joined();
}

struct WorkItem {
  TaskKind task;
  const BoardRecord* record;
  std::vector<std::string> turns;
};

RunOutcome evaluate_item(const RunManifest& m, const WorkItem& item,
                         const std::vector<BoardRecord>& records, ChatClient& client) {
  const BoardRecord& rec = *item.record;
  PromptSpec spec;
  spec.sections = m.sections;
  spec.task = item.task;
  spec.k_examples = m.k_examples;
  auto rng = record_rng(m.rng_seed ^ (static_cast<std::uint64_t>(item.task) << 56), rec.id);
  RunOutcome out;
  for (const BoardRecord* ex : select_in_context(records, rec, item.task, m.k_examples, rng)) {
    spec.in_context.push_back(
        {ex->id, template_text(*ex, m.style), gold_for_task(*ex, item.task)});
    out.in_context_ids.push_back(ex->id);
  }
  if (item.task == TaskKind::func_repeat) {
    const auto def = object_definition(rec);
    if (!def.empty()) spec.object_definitions.push_back(def);
  }
  std::vector<std::string> messages;
  if (m.turns == TurnMode::messages && item.turns.size() > 1) {
    messages.push_back(build_prompt(spec, item.turns.front()));
    messages.insert(messages.end(), item.turns.begin() + 1, item.turns.end());
  } else {
    std::string joined;
    for (const auto& t : item.turns) joined += (joined.empty() ? "" : "\n") + t;
    messages.push_back(build_prompt(spec, joined));
  }
  out.prompt = messages.front();
  for (std::size_t i = 1; i < messages.size(); ++i) out.prompt += "\n" + messages[i];

  const std::string& gold = gold_for_task(rec, item.task);
  try {
    out.raw_response = client.complete(messages, gold);
  } catch (const TransportError& e) {
    out.eval = score_response(rec, item.task, "", client.config().model, m.style);
    out.eval.error = ErrorCategory::transport;
    out.eval.error_message = e.what();
    return out;
  } catch (const BudgetExceeded& e) {
    out.eval = score_response(rec, item.task, "", client.config().model, m.style);
    out.eval.error = ErrorCategory::transport;
    out.eval.error_message = e.what();
    return out;
  }
  const auto parsed = parse_response(out.raw_response, spec.output_label, spec.instruction_label);
  out.label_found = parsed.label_found;
  out.eval = score_response(rec, item.task, parsed.code, client.config().model, m.style);
  return out;
}

}  // namespace

RunResult run_eval(const RunManifest& m, const Dataset& dataset,
                   const std::vector<InstructionSet>& instructions) {
  const bool templated = m.style == InstructionStyle::template_single ||
                         m.style == InstructionStyle::template_multi;
  std::map<std::string, const InstructionSet*> by_id;
  for (const auto& s : instructions) by_id[s.record_id] = &s;
  if (!templated && by_id.empty()) {
    throw std::invalid_argument("style " + std::string(style_name(m.style)) +
                                " needs an instruction file");
  }

  std::vector<const BoardRecord*> split_records;
  for (const auto& r : dataset.records) {
    if (r.split == m.split) split_records.push_back(&r);
  }
  std::sort(split_records.begin(), split_records.end(),
            [](const BoardRecord* a, const BoardRecord* b) { return a->id < b->id; });

  std::vector<WorkItem> items;
  for (TaskKind t : m.tasks) {
    for (const BoardRecord* r : split_records) {
      if (!task_accepts(t, *r)) continue;
      if (templated) {
        auto set = render_template(*r, m.style);
        items.push_back({t, r, std::move(set.turns)});
      } else if (auto it = by_id.find(r->id); it != by_id.end()) {
        items.push_back({t, r, it->second->turns});
      }
    }
  }
  if (items.empty()) throw std::invalid_argument("run_eval: no records to evaluate");

  ChatClient client(m.model);
  std::vector<RunOutcome> results(items.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr fatal;
  std::mutex fatal_mu;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next++;
      if (i >= items.size()) return;
      {
        std::lock_guard lock(fatal_mu);
        if (fatal) return;
      }
      try {
        results[i] = evaluate_item(m, items[i], dataset.records, client);
      } catch (...) {
        std::lock_guard lock(fatal_mu);
        if (!fatal) fatal = std::current_exception();
        return;
      }
    }
  };
  const std::size_t n_threads = std::clamp<std::size_t>(m.concurrency, 1, items.size());
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (fatal) std::rethrow_exception(fatal);

  std::vector<EvalOutcome> evals;
  for (const auto& r : results) evals.push_back(r.eval);
  return {std::move(results), aggregate(evals)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

RunResult run_eval(const RunManifest& m) {
  Dataset ds{read_jsonl(read_file(m.dataset_path))};
  std::vector<InstructionSet> sets;
  if (!m.instructions_path.empty()) {
    const std::string text = read_file(m.instructions_path);
    sets = m.style == InstructionStyle::human_written ? import_human_instructions(text)
                                                      : read_instructions_jsonl(text);
  }
  RunResult res = run_eval(m, ds, sets);
  if (!m.out_dir.empty()) {
    const std::filesystem::path dir(m.out_dir);
    std::string outcomes;
    std::string prompts;
    for (const auto& o : res.outcomes) {
      outcomes += run_outcome_to_json(o).dump() + "\n";
      prompts += nlohmann::json{{"record_id", o.eval.record_id},
                                {"task", task_id(o.eval.task)},
                                {"in_context_ids", o.in_context_ids},
                                {"prompt", o.prompt}}
                     .dump() +
                 "\n";
    }
    write_file((dir / "outcomes.jsonl").string(), outcomes);
    write_file((dir / "prompts.jsonl").string(), prompts);
    write_file((dir / "report.json").string(), report_to_json(res.report).dump(2) + "\n");
    write_file((dir / "report.txt").string(), render_report_text(res.report));
    write_file((dir / "manifest.json").string(), m.to_json().dump(2) + "\n");
  }
  return res;
}

std::vector<AblationRow> ablate(const RunManifest& manifest, const Dataset& dataset) {
  std::vector<AblationRow> rows;
  for (const auto& structure : ablation_structures()) {
    RunManifest m = manifest;
    m.sections = structure;
    m.out_dir.clear();
    const auto res = run_eval(m, dataset);
    AblationRow row{structure_label(structure)};
    for (const auto& o : res.outcomes) {
      row.em += o.eval.em;
      row.cb += o.eval.codebleu.score;
      row.es += o.eval.es;
    }
    row.n = res.outcomes.size();
    const double n = static_cast<double>(row.n);
    row.em /= n;
    row.cb /= n;
    row.es /= n;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string render_ablation_text(const std::vector<AblationRow>& rows) {
  std::size_t width = std::string("Prompt Structure").size();
  for (const auto& r : rows) width = std::max(width, r.structure.size());
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(width)) << "Prompt Structure"
      << " | N    | EM   | CB   | ES\n";
  out << std::fixed << std::setprecision(2);
  for (const auto& r : rows) {
    out << std::left << std::setw(static_cast<int>(width)) << r.structure << " | "
        << std::setw(4) << r.n << " | " << r.em << " | " << r.cb << " | " << r.es << "\n";
  }
  return out.str();
}

std::vector<InstructionSet> generate_model_instructions(const std::vector<BoardRecord>& records,
                                                        ChatClient& client) {
  std::vector<InstructionSet> out;
  for (const auto& r : records) {
    const std::string prompt = build_describe_prompt(r);
    const std::string reference = render_template(r, InstructionStyle::template_single).joined();
    const std::string raw = client.complete(prompt, reference);
    std::string text = parse_response(raw, "Instruction", "Output").code;
    while (!text.empty() && (text.back() == '\n' || text.back() == ' ')) text.pop_back();
    out.push_back({r.id, InstructionStyle::model_generated, {std::move(text)}});
  }
  return out;
}

}  // namespace sartco
