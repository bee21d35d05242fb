#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sartco/board_gen.hpp"

namespace sartco {

enum class InstructionStyle : std::uint8_t {
  template_single,
  template_multi,
  model_generated,
  human_written,
};

std::string_view style_name(InstructionStyle s);
std::optional<InstructionStyle> parse_style(std::string_view s);

struct InstructionSet {
  std::string record_id;
  InstructionStyle style = InstructionStyle::template_single;
  std::vector<std::string> turns;

  /// All turns as one message, separated by newlines.
  std::string joined() const;
};

class UnsupportedStyle : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Phrases that depend on the reader's viewpoint; template text never uses them.
inline constexpr std::array<std::string_view, 2> kBannedPhrases{"your left", "in front of you"};

/// Template instructions for a record. Only the two template styles are rendered.
InstructionSet render_template(const BoardRecord& record, InstructionStyle style);

/// Zero-shot prompt asking a model to describe the record's target board.
std::string build_describe_prompt(const BoardRecord& record);

/// Grid status for regular boards: object name and colors at every copy's origin.
std::string render_object_grid(const BoardRecord& record, std::string_view empty_symbol = "□");
std::string describe_objects(const BoardRecord& record);

/// "first", "second", ... for 1..8.
std::string_view ordinal_word(int n);

nlohmann::json instruction_to_json(const InstructionSet& s);
InstructionSet instruction_from_json(const nlohmann::json& j);
std::string instructions_to_jsonl(const std::vector<InstructionSet>& sets);
std::vector<InstructionSet> read_instructions_jsonl(std::string_view text);

/// Imports externally written instructions: one JSON object per line with
/// "record_id" and "text". Each becomes a single-turn human_written set.
std::vector<InstructionSet> import_human_instructions(std::string_view jsonl);

}  // namespace sartco
