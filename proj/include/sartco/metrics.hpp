#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sartco/board_gen.hpp"
#include "sartco/grid.hpp"
#include "sartco/instruction_gen.hpp"

namespace sartco {

/// The four evaluation tasks. Each pairs a board category with a gold form.
enum class TaskKind : std::uint8_t {
  property_comp,        // simple boards, first-order code
  func_comp_sequences,  // simple boards, higher-order code built from first-order lines
  func_comp_optimal,    // simple boards, optimal higher-order code
  func_repeat,          // regular boards, optimal code with loops
};

inline constexpr std::array<TaskKind, 4> kAllTasks{TaskKind::property_comp,
                                                   TaskKind::func_comp_sequences,
                                                   TaskKind::func_comp_optimal,
                                                   TaskKind::func_repeat};

std::string_view task_id(TaskKind t);       // "property_comp"
std::string_view task_display(TaskKind t);  // "Property Compositionality"
std::optional<TaskKind> parse_task(std::string_view id);
/// Gold text a task is scored against.
const std::string& gold_for_task(const BoardRecord& r, TaskKind t);
/// Whether a record belongs to a task's evaluation pool.
bool task_accepts(TaskKind t, const BoardRecord& r);

// --- exact match ---

/// Line endings unified and trailing whitespace stripped per line.
std::string normalize_for_em(std::string_view text);
int exact_match(std::string_view generated, std::string_view gold);

// --- CodeBLEU ---

/// Lexical tokens: names, numbers, quoted strings, operators. Whitespace,
/// indentation and comments are dropped.
std::vector<std::string> code_tokens(std::string_view text);

/// Tokens that weigh 1.0 in the weighted n-gram component; others weigh 0.2.
inline constexpr std::array<std::string_view, 8> kCodeKeywords{
    "def", "for", "in", "if", "return", "range", "zip", "put"};
inline constexpr double kKeywordWeight = 1.0;
inline constexpr double kOtherTokenWeight = 0.2;

struct CodeBleuWeights {
  double ngram = 0.25;
  double weighted_ngram = 0.25;
  double syntax = 0.25;
  double dataflow = 0.25;
};

/// Components are absent when the reference gives them nothing to match (no
/// tokens, no AST subtrees, no dataflow edges, or the reference does not parse);
/// the score then averages the remaining components with renormalized weights.
struct CodeBleuScore {
  double score = 0.0;
  std::optional<double> ngram;
  std::optional<double> weighted_ngram;
  std::optional<double> syntax;
  std::optional<double> dataflow;
};

/// Corpus-BLEU over one pair: clipped n-gram precision for n = 1..4 with
/// epsilon 0.1 smoothing of empty orders, uniform reweighting for hypotheses
/// under four tokens, and the usual brevity penalty.
double bleu(const std::vector<std::string>& hyp, const std::vector<std::string>& ref);
/// Same, with unigram matches weighted by kCodeKeywords membership.
double weighted_bleu(const std::vector<std::string>& hyp, const std::vector<std::string>& ref);
/// Share of the reference's internal AST subtrees (node kinds only) that also
/// occur in the hypothesis. nullopt when the reference has none.
std::optional<double> syntax_match(std::string_view hyp, std::string_view ref);
/// Share of the reference's def-use edges, with variables renamed by first
/// appearance, that the hypothesis reproduces. nullopt when the reference has none.
std::optional<double> dataflow_match(std::string_view hyp, std::string_view ref);

/// Throws std::invalid_argument on negative weights or weights not summing to 1.
CodeBleuScore codebleu(std::string_view generated, std::string_view gold,
                       const CodeBleuWeights& weights = {});

// --- execution ---

struct ExecutionResult {
  int es = 0;
  Board executed;
  std::optional<ErrorCategory> error;
  std::string message;
};

/// Runs `generated` on an empty board; es is 1 iff it succeeds and builds `target`.
ExecutionResult execution_success(std::string_view generated, const Board& target);

/// For two valid boards that differ: count, then the first differing cell in
/// row-major order (location when one side is empty or the stacks differ only
/// in height), then the first differing component bottom-up (shape, else color).
/// Throws std::invalid_argument when the boards are equal.
ErrorCategory classify_error(const Board& executed, const Board& target);

// --- outcomes and reports ---

struct EvalOutcome {
  std::string record_id;
  BoardType board_type = BoardType::simple;
  ObjectType object_type = ObjectType::simple;
  TaskKind task = TaskKind::property_comp;
  InstructionStyle style = InstructionStyle::template_single;
  std::string model;
  int em = 0;
  CodeBleuScore codebleu;
  int es = 0;
  std::optional<ErrorCategory> error;
  std::string error_message;
  Board executed;
  std::string generated;
};

/// Scores one response against a record under a task.
EvalOutcome score_response(const BoardRecord& record, TaskKind task, std::string_view generated,
                           std::string_view model,
                           InstructionStyle style = InstructionStyle::template_single);

nlohmann::json outcome_to_json(const EvalOutcome& o);
EvalOutcome outcome_from_json(const nlohmann::json& j);

struct ReportRow {
  InstructionStyle style = InstructionStyle::template_single;
  BoardType board_type = BoardType::simple;
  ObjectType object_type = ObjectType::simple;
  TaskKind task = TaskKind::property_comp;
  std::string model;
  std::size_t n = 0;
  double em = 0;
  double cb = 0;
  double es = 0;
};

struct ErrorRow {
  InstructionStyle style = InstructionStyle::template_single;
  BoardType board_type = BoardType::simple;
  ObjectType object_type = ObjectType::simple;
  TaskKind task = TaskKind::property_comp;
  ErrorCategory category = ErrorCategory::syntax;
  std::string model;
  std::size_t count = 0;
};

struct ReportTable {
  std::vector<ReportRow> rows;      // instruction style, board, object, task, then model
  std::vector<ErrorRow> errors;     // same order, then category
};

/// Means per (style, board type, object type, task, model) and error counts.
/// Models keep their order of first appearance. Throws on empty input.
ReportTable aggregate(const std::vector<EvalOutcome>& outcomes);

std::string style_display(InstructionStyle s);  // "Template-based Instructions"
std::string render_report_text(const ReportTable& t);
nlohmann::json report_to_json(const ReportTable& t);

}  // namespace sartco
