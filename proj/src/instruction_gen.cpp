#include "sartco/instruction_gen.hpp"

#include <algorithm>
#include <sstream>

#include "sartco/dsl.hpp"
#include "sartco/prompt_text.hpp"

namespace sartco {

std::string_view style_name(InstructionStyle s) {
  switch (s) {
    case InstructionStyle::template_single: return "template_single";
    case InstructionStyle::template_multi: return "template_multi";
    case InstructionStyle::model_generated: return "model_generated";
    case InstructionStyle::human_written: return "human_written";
  }
  return "template_single";
}

std::optional<InstructionStyle> parse_style(std::string_view s) {
  for (auto st : {InstructionStyle::template_single, InstructionStyle::template_multi,
                  InstructionStyle::model_generated, InstructionStyle::human_written}) {
    if (style_name(st) == s) return st;
  }
  return std::nullopt;
}

std::string InstructionSet::joined() const {
  std::string out;
  for (std::size_t i = 0; i < turns.size(); ++i) {
    if (i > 0) out += '\n';
    out += turns[i];
  }
  return out;
}

std::string_view ordinal_word(int n) {
  static constexpr std::array<std::string_view, 8> words{
      "first", "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth"};
  if (n < 1 || n > 8) throw std::out_of_range("ordinal_word: " + std::to_string(n));
  return words[static_cast<std::size_t>(n - 1)];
}

namespace {

std::string ordinal_list(const std::vector<int>& ones_based) {
  std::string out;
  for (std::size_t i = 0; i < ones_based.size(); ++i) {
    if (i > 0) out += ones_based.size() > 2 ? ", " : " ";
    if (i > 0 && i + 1 == ones_based.size()) out += "and ";
    out += ordinal_word(ones_based[i]);
  }
  return out;
}

std::string colors_text(const std::vector<Color>& colors) {
  std::string out = "[";
  for (std::size_t i = 0; i < colors.size(); ++i) {
    if (i > 0) out += ", ";
    out += "'" + std::string(color_name(colors[i])) + "'";
  }
  return out + "]";
}

// "place a red washer in the 7 row, 3 column"
std::string placement_phrase(const dsl::PutCall& p) {
  std::string what;
  if (is_bridge(p.shape)) {
    what = std::string("bridge ") + (p.shape == Shape::bridge_h ? "horizontal" : "vertical") + "ly";
  } else {
    what = std::string(shape_name(p.shape));
  }
  return "place a " + std::string(color_name(p.color)) + " " + what + " in the " +
         std::to_string(p.row + 1) + " row, " + std::to_string(p.col + 1) + " column";
}

std::vector<dsl::PutCall> placements(const BoardRecord& r) {
  auto out = dsl::run_source(r.gold.first_order);
  if (!out.success) throw std::invalid_argument("record " + r.id + ": first-order gold fails");
  return out.trace;
}

InstructionSet render_simple(const BoardRecord& r, InstructionStyle style) {
  const auto puts = placements(r);
  InstructionSet set{r.id, style, {}};
  if (style == InstructionStyle::template_multi) {
    for (std::size_t i = 0; i < puts.size(); ++i) {
      std::string turn;
      if (i == 0) turn = "These are the step-by-step instructions to build " + r.combo_name + ". ";
      set.turns.push_back(turn + placement_phrase(puts[i]));
    }
    return set;
  }
  std::string text = "These are the instructions to build " + r.combo_name + ".";
  for (const auto& p : puts) {
    std::string phrase = placement_phrase(p);
    phrase[0] = 'P';
    text += " " + phrase + ".";
  }
  set.turns.push_back(std::move(text));
  return set;
}

std::string arrangement_sentence(const BoardRecord& r) {
  const Window& w = *r.window;
  const std::string obj = "'" + r.combo_name + "'";
  const std::string fp =
      std::to_string(r.footprint_rows) + "x" + std::to_string(r.footprint_cols) + " space";
  const std::string until =
      " Continue until there's insufficient space at the grid's end for a full object.";
  auto lines = [](int extent) {
    std::vector<int> v;
    for (int i : {1, 4, 7}) {
      if (i <= extent) v.push_back(i);
    }
    return v;
  };
  switch (r.arrangement) {
    case Arrangement::columns_1_4_7:
      return "Place a " + obj + " object in the " + ordinal_list(lines(w.cols)) +
             " columns of the first row. Then, repeat this pattern of placement in the "
             "remaining rows.";
    case Arrangement::rows_1_4_7:
      return "Place a " + obj + " object in the " + ordinal_list(lines(w.rows)) +
             " rows of the first column. Then, repeat this pattern of placement in the "
             "remaining columns.";
    case Arrangement::diagonal:
      return "Starting from the top-left corner, fill the grid with " + obj +
             " objects diagonally.";
    case Arrangement::corners:
      return "Place a " + obj + " object at all the corners of the grid.";
    case Arrangement::cross:
      return "Place a " + obj + " object in the " + ordinal_list({1, w.cols / 2 + 1}) +
             " columns of the first row. Then, repeat this placement pattern in the " +
             std::string(ordinal_word(w.rows / 2 + 1)) + " row.";
    case Arrangement::footprint_diagonal:
      return "Start from the top-left corner and diagonally place " + obj +
             " objects, each taking a " + fp + "." + until;
    case Arrangement::alternating:
      return "Starting from the top-left corner, place the " + obj +
             " object in alternating columns of the first row, each taking a " + fp + "." +
             until + " Then, repeat this pattern in alternating rows.";
    case Arrangement::column_fill:
      return "Fill the first column with the " + obj + " object, each taking a " + fp + "." +
             until + " Then, repeat this action in every alternate column.";
    case Arrangement::fourth_column:
      return "Fill the fourth column with the " + obj + " object, each taking a " + fp + "." +
             until;
    case Arrangement::none:
      break;
  }
  throw std::invalid_argument("record " + r.id + ": regular board without arrangement");
}

InstructionSet render_regular(const BoardRecord& r, InstructionStyle style) {
  if (!r.window) throw std::invalid_argument("record " + r.id + ": regular board without window");
  const Window& w = *r.window;
  // Boards live in a sub-area of the grid, so the sentence is anchored to it
  // and positions inside it count from its top-left cell.
  const std::string area = "Treat the " + std::to_string(w.rows) + "x" +
                           std::to_string(w.cols) + " area whose top-left cell is in the " +
                           std::to_string(w.row + 1) + " row, " + std::to_string(w.col + 1) +
                           " column as the grid; rows and columns below count from that cell.";
  const std::string text = area + " " + arrangement_sentence(r) + " Use only these colors: " +
                           colors_text(r.colors) + " for the '" + r.combo_name + "' object.";
  return InstructionSet{r.id, style, {text}};
}

}  // namespace

InstructionSet render_template(const BoardRecord& record, InstructionStyle style) {
  if (style != InstructionStyle::template_single && style != InstructionStyle::template_multi) {
    throw UnsupportedStyle("render_template: style " + std::string(style_name(style)) +
                           " is not template-based");
  }
  return record.board_type == BoardType::simple ? render_simple(record, style)
                                                : render_regular(record, style);
}

std::string render_object_grid(const BoardRecord& record, std::string_view empty_symbol) {
  std::ostringstream out;
  for (int r = 0; r < kRows; ++r) {
    out << '[';
    for (int c = 0; c < kCols; ++c) {
      if (c > 0) out << ", ";
      const Cell cell{r, c};
      if (std::find(record.anchors.begin(), record.anchors.end(), cell) == record.anchors.end()) {
        out << '\'' << empty_symbol << '\'';
        continue;
      }
      out << "[('" << record.combo_name << "', " << colors_text(record.colors) << ")]";
    }
    out << "]\n";
  }
  return out.str();
}

std::string describe_objects(const BoardRecord& record) {
  std::vector<Cell> anchors = record.anchors;
  std::sort(anchors.begin(), anchors.end());
  std::ostringstream out;
  for (const Cell& a : anchors) {
    out << "Row(" << a.row + 1 << "), Col(" << a.col + 1 << ") contains '" << record.combo_name
        << "' object with colors ";
    for (std::size_t i = 0; i < record.colors.size(); ++i) {
      if (i > 0) out << ", ";
      out << color_name(record.colors[i]);
    }
    out << ".\n";
  }
  return out.str();
}

std::string build_describe_prompt(const BoardRecord& record) {
  namespace pt = prompt_text;
  const bool simple = record.board_type == BoardType::simple;
  std::ostringstream out;
  out << "System Info\n" << pt::kDescribeSystem << "\n\n";
  out << "Environment Info\n" << pt::kEnvironmentGrid << "\n" << pt::kDescribeAxes << "\n\n";
  out << (simple ? pt::kDescribeGridShapes : pt::kDescribeGridObjects) << "\n"
      << pt::kDescribeExplanation << "\n\n";
  out << "Task Info\n"
      << pt::kDescribeTask << "\n"
      << (simple ? pt::kDescribeTaskShapes : pt::kDescribeTaskObjects) << "\n\n";
  out << "Other Info\n" << pt::kNoOtherText << "\n\n" << pt::kBegin << "\n\n";
  out << "Current Grid Status\n"
      << (simple ? render_ascii(record.target) : render_object_grid(record)) << "\n";
  if (simple) out << "Object Name\n'" << record.combo_name << "'.\n\n";
  out << "Grid Explanation\n" << (simple ? describe_grid(record.target) : describe_objects(record));
  return out.str();
}

nlohmann::json instruction_to_json(const InstructionSet& s) {
  return {{"record_id", s.record_id}, {"style", style_name(s.style)}, {"turns", s.turns}};
}

InstructionSet instruction_from_json(const nlohmann::json& j) {
  InstructionSet s;
  s.record_id = j.at("record_id").get<std::string>();
  const auto style = parse_style(j.at("style").get<std::string>());
  if (!style) throw std::invalid_argument("unknown instruction style");
  s.style = *style;
  s.turns = j.at("turns").get<std::vector<std::string>>();
  return s;
}

std::string instructions_to_jsonl(const std::vector<InstructionSet>& sets) {
  std::string out;
  for (const auto& s : sets) out += instruction_to_json(s).dump() + "\n";
  return out;
}

namespace {

template <typename F>
void for_each_json_line(std::string_view text, F&& f) {
  std::size_t lineno = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      f(nlohmann::json::parse(line));
    } catch (const std::exception& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

}  // namespace

std::vector<InstructionSet> read_instructions_jsonl(std::string_view text) {
  std::vector<InstructionSet> out;
  for_each_json_line(text, [&](const nlohmann::json& j) { out.push_back(instruction_from_json(j)); });
  return out;
}

std::vector<InstructionSet> import_human_instructions(std::string_view jsonl) {
  std::vector<InstructionSet> out;
  for_each_json_line(jsonl, [&](const nlohmann::json& j) {
    out.push_back({j.at("record_id").get<std::string>(), InstructionStyle::human_written,
                   {j.at("text").get<std::string>()}});
  });
  return out;
}

}  // namespace sartco
