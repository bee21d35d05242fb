#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sartco/board_gen.hpp"
#include "sartco/instruction_gen.hpp"
#include "sartco/metrics.hpp"

namespace sartco {

// --- prompt ---

enum class Section : std::uint8_t { system, environment, context, task, in_context, other };
inline constexpr std::array<Section, 6> kAllSections{Section::system,  Section::environment,
                                                     Section::context, Section::task,
                                                     Section::in_context, Section::other};

struct Example {
  std::string record_id;
  std::string instruction;
  std::string code;
};

struct PromptSpec {
  std::vector<Section> sections{kAllSections.begin(), kAllSections.end()};
  TaskKind task = TaskKind::property_comp;
  std::size_t k_examples = 5;
  std::string instruction_label = "Instruction";
  std::string output_label = "Output";
  std::vector<Example> in_context;
  /// Object functions the test record relies on (repeatability only).
  std::vector<std::string> object_definitions;

  bool has(Section s) const;
};

/// Ablation label in the "S + E + C + T + O + I*" form.
std::string structure_label(const std::vector<Section>& sections);
/// The full structure followed by each single-section omission except the samples.
std::vector<std::vector<Section>> ablation_structures();

/// Sections in S, E, C, T, I, O order, then the test instruction under the label.
std::string build_prompt(const PromptSpec& spec, std::string_view test_instruction);

/// The definition block at the head of an optimal program, empty if none.
std::string object_definition(const BoardRecord& r);

// --- in-context selection ---

class InsufficientPool : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sorted shapes plus the placement origin (window origin for regular boards).
std::string combo_key(const BoardRecord& r);

/// k records from `train` the task accepts, none sharing the test record's
/// combo_key, drawn without replacement in draw order.
std::vector<const BoardRecord*> select_in_context(const std::vector<BoardRecord>& train,
                                                  const BoardRecord& test, TaskKind task,
                                                  std::size_t k, std::mt19937_64& rng);

/// Generator for one record: the same seed and id always give the same stream.
std::mt19937_64 record_rng(std::uint64_t seed, std::string_view record_id);

// --- model client ---

enum class MockMode : std::uint8_t { off, echo_gold, fixed_text };
std::string_view mock_mode_name(MockMode m);
std::optional<MockMode> parse_mock_mode(std::string_view s);

struct ModelConfig {
  std::string endpoint;  // full URL of a chat-completions route
  std::string model = "mock";
  std::string api_key;
  double temperature = 0.0;
  int max_new_tokens = 250;
  std::chrono::milliseconds timeout{60'000};
  int max_retries = 3;
  std::chrono::milliseconds backoff{500};
  long long max_requests = -1;  // negative: unlimited
  MockMode mock = MockMode::off;
  std::string fixed_text = "hello";
};

class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class AuthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// JSON body sent to the endpoint: model, messages, temperature, max_tokens.
nlohmann::json chat_payload(const std::vector<std::string>& user_messages, const ModelConfig& cfg);

/// One chat completion per call. Mock modes never touch the network. Transient
/// failures (connection errors, 429, 5xx) are retried with doubling backoff.
class ChatClient {
 public:
  explicit ChatClient(ModelConfig cfg);
  std::string complete(const std::vector<std::string>& user_messages, std::string_view gold = {});
  std::string complete(std::string_view prompt, std::string_view gold = {}) {
    return complete(std::vector<std::string>{std::string(prompt)}, gold);
  }
  const ModelConfig& config() const { return cfg_; }
  long long requests() const { return requests_.load(); }

 private:
  std::string live(const std::vector<std::string>& user_messages);

  ModelConfig cfg_;
  std::atomic<long long> requests_{0};
};

// --- responses ---

struct ParsedResponse {
  std::string code;
  bool label_found = false;
};

/// Text after "<label>:" up to the next label line, with one surrounding code
/// fence removed. Without the label the whole reply is returned unchanged.
ParsedResponse parse_response(std::string_view raw, std::string_view output_label = "Output",
                              std::string_view instruction_label = "Instruction");

// --- runs ---

enum class TurnMode : std::uint8_t { joined, messages };

struct RunManifest {
  std::string dataset_path;
  Split split = Split::test;
  std::vector<TaskKind> tasks{kAllTasks.begin(), kAllTasks.end()};
  InstructionStyle style = InstructionStyle::template_single;
  std::string instructions_path;  // human_written / model_generated sets
  TurnMode turns = TurnMode::joined;
  ModelConfig model;
  std::uint64_t rng_seed = 42;
  std::size_t k_examples = 5;
  std::vector<Section> sections{kAllSections.begin(), kAllSections.end()};
  std::size_t concurrency = 4;
  std::string out_dir;  // empty: nothing written

  nlohmann::json to_json() const;
};

struct RunOutcome {
  EvalOutcome eval;
  std::string prompt;
  std::string raw_response;
  bool label_found = false;
  std::vector<std::string> in_context_ids;
};

nlohmann::json run_outcome_to_json(const RunOutcome& o);

struct RunResult {
  std::vector<RunOutcome> outcomes;  // ordered by task, then record id
  ReportTable report;
};

/// Evaluates every record of the split under each task. Per-record model
/// failures become transport-error outcomes; auth and data errors throw.
RunResult run_eval(const RunManifest& manifest, const Dataset& dataset,
                   const std::vector<InstructionSet>& instructions = {});
/// Loads the dataset (and instruction file, if any) named by the manifest,
/// runs, and writes outcomes.jsonl, prompts.jsonl, report.json, report.txt and
/// manifest.json when out_dir is set.
RunResult run_eval(const RunManifest& manifest);

struct AblationRow {
  std::string structure;
  double em = 0;
  double cb = 0;
  double es = 0;
  std::size_t n = 0;
};

/// One run per ablation structure; a row per structure with overall means.
std::vector<AblationRow> ablate(const RunManifest& manifest, const Dataset& dataset);
std::string render_ablation_text(const std::vector<AblationRow>& rows);

/// Prompts a model for board descriptions and wraps the replies as
/// model_generated instruction sets. echo_gold mocks answer with the
/// single-turn template text.
std::vector<InstructionSet> generate_model_instructions(const std::vector<BoardRecord>& records,
                                                        ChatClient& client);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace sartco
