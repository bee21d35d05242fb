#include <gtest/gtest.h>

#include <regex>

#include "sartco/board_gen.hpp"
#include "sartco/instruction_gen.hpp"

using namespace sartco;

namespace {

const Dataset& dataset() {
  static const Dataset ds = make_splits({});
  return ds;
}

BoardRecord washer_screw() {
  Combo combo{{Shape::washer, Shape::screw}, {Color::red, Color::blue}, {6, 2}, std::nullopt, 0};
  return generate_board(seed_by_id("stack-two"), combo);
}

std::size_t seed_index(std::string_view id) {
  for (std::size_t i = 0; i < catalog().size(); ++i)
    if (catalog()[i].id == id) return i;
  throw std::invalid_argument("no seed");
}

// Reads "place a <color> <shape|bridge orientationly> in the R row, C column"
// phrases back into puts and replays them on an empty board.
Board replay_phrases(const std::string& text) {
  static const std::regex phrase(
      R"([Pp]lace a (\w+) (washer|nut|screw|bridge horizontally|bridge vertically) in the (\d+) row, (\d+) column)");
  Board b;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), phrase);
       it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    std::string shape = m[2];
    if (shape == "bridge horizontally") shape = "bridge-h";
    if (shape == "bridge vertically") shape = "bridge-v";
    auto err = b.try_put(shape, m[1].str(), std::stol(m[3]) - 1, std::stol(m[4]) - 1);
    if (err) throw std::runtime_error("replay failed: " + err->detail);
  }
  return b;
}

}  // namespace

TEST(Template, MultiTurnWasherScrew) {
  const auto set = render_template(washer_screw(), InstructionStyle::template_multi);
  ASSERT_EQ(set.turns.size(), 2u);
  EXPECT_EQ(set.turns[0],
            "These are the step-by-step instructions to build ws. place a red washer in the 7 "
            "row, 3 column");
  EXPECT_EQ(set.turns[1], "place a blue screw in the 7 row, 3 column");
  EXPECT_EQ(set.style, InstructionStyle::template_multi);
}

TEST(Template, SingleTurnWasherScrew) {
  const auto set = render_template(washer_screw(), InstructionStyle::template_single);
  ASSERT_EQ(set.turns.size(), 1u);
  EXPECT_EQ(set.turns[0],
            "These are the instructions to build ws. Place a red washer in the 7 row, 3 column. "
            "Place a blue screw in the 7 row, 3 column.");
}

TEST(Template, BridgeOrientationWording) {
  Combo combo{{Shape::washer, Shape::nut, Shape::bridge_h},
              {Color::red, Color::blue, Color::green},
              {1, 1},
              std::nullopt,
              0};
  const auto set = render_template(generate_board(seed_by_id("row-pair-bridge-h"), combo),
                                   InstructionStyle::template_multi);
  ASSERT_EQ(set.turns.size(), 3u);
  EXPECT_EQ(set.turns[2], "place a green bridge horizontally in the 2 row, 2 column");
}

TEST(Template, CornersSentence) {
  Combo combo{{Shape::washer, Shape::nut},
              {Color::red, Color::blue},
              {},
              Window{0, 0, 4, 4},
              seed_index("stack-two")};
  const auto r = generate_board(seed_by_id("corners"), combo);
  const auto set = render_template(r, InstructionStyle::template_single);
  ASSERT_EQ(set.turns.size(), 1u);
  EXPECT_EQ(set.turns[0],
            "Treat the 4x4 area whose top-left cell is in the 1 row, 1 column as the grid; rows "
            "and columns below count from that cell. Place a 'wn' object at all the corners of "
            "the grid. Use only these colors: ['red', 'blue'] for the 'wn' object.");
  // Regular boards have a single sentence whatever the style.
  EXPECT_EQ(render_template(r, InstructionStyle::template_multi).turns, set.turns);
}

TEST(Template, ColumnsSentenceListsOrdinals) {
  Combo combo{{Shape::washer, Shape::nut}, {Color::red, Color::blue}, {}, Window{4, 4, 3, 4},
              seed_index("stack-two")};
  const auto r = generate_board(seed_by_id("columns-1-4-7"), combo);
  const auto text = render_template(r, InstructionStyle::template_single).turns[0];
  EXPECT_NE(text.find("in the 5 row, 5 column as the grid"), std::string::npos);
  EXPECT_NE(text.find("Place a 'wn' object in the first and fourth columns of the first row."),
            std::string::npos);
}

TEST(Template, HumanAndModelStylesAreNotRendered) {
  EXPECT_THROW(render_template(washer_screw(), InstructionStyle::human_written), UnsupportedStyle);
  EXPECT_THROW(render_template(washer_screw(), InstructionStyle::model_generated),
               UnsupportedStyle);
}

TEST(Template, Deterministic) {
  const auto r = washer_screw();
  EXPECT_EQ(render_template(r, InstructionStyle::template_multi).turns,
            render_template(r, InstructionStyle::template_multi).turns);
}

TEST(TemplateProperties, OverDataset) {
  std::size_t complex_regular = 0;
  for (const auto& r : dataset().records) {
    for (auto style : {InstructionStyle::template_single, InstructionStyle::template_multi}) {
      const auto set = render_template(r, style);
      EXPECT_EQ(set.record_id, r.id);
      const std::string text = set.joined();
      for (auto banned : kBannedPhrases) {
        ASSERT_EQ(text.find(banned), std::string::npos) << r.id;
      }
      if (r.board_type == BoardType::simple) {
        // Completeness and ordinals: the phrases alone rebuild the target.
        if (style == InstructionStyle::template_multi) {
          ASSERT_EQ(set.turns.size(), r.target.component_count()) << r.id;
        } else {
          ASSERT_EQ(set.turns.size(), 1u);
        }
        ASSERT_TRUE(boards_equal(replay_phrases(text), r.target)) << r.id;
      } else {
        ASSERT_EQ(set.turns.size(), 1u);
        const auto& w = *r.window;
        const std::string area = "top-left cell is in the " + std::to_string(w.row + 1) +
                                 " row, " + std::to_string(w.col + 1) + " column";
        ASSERT_NE(text.find(area), std::string::npos) << r.id;
        ASSERT_NE(text.find("Use only these colors: ["), std::string::npos) << r.id;
        const std::string fp = "each taking a " + std::to_string(r.footprint_rows) + "x" +
                               std::to_string(r.footprint_cols) + " space";
        if (r.object_type == ObjectType::complex) {
          ++complex_regular;
          ASSERT_NE(text.find(fp), std::string::npos) << r.id;
        } else {
          ASSERT_EQ(text.find("each taking"), std::string::npos) << r.id;
        }
      }
    }
  }
  EXPECT_GT(complex_regular, 0u);
}

TEST(Describe, SimplePrompt) {
  const auto prompt = build_describe_prompt(washer_screw());
  EXPECT_NE(prompt.find("Row(7), Col(3) contains red washer, blue screw."), std::string::npos);
  EXPECT_NE(prompt.find("Object Name\n'ws'."), std::string::npos);
  EXPECT_NE(prompt.find("You are an expert annotator"), std::string::npos);
  EXPECT_NE(prompt.find("[('washer', 'red'), ('screw', 'blue')]"), std::string::npos);
  EXPECT_NE(prompt.find("filled with shapes"), std::string::npos);
  EXPECT_LT(prompt.find("System Info"), prompt.find("Environment Info"));
  EXPECT_LT(prompt.find("Environment Info"), prompt.find("Task Info"));
  EXPECT_LT(prompt.find("Task Info"), prompt.find("Lets begin"));
  EXPECT_LT(prompt.find("Lets begin"), prompt.find("\nCurrent Grid Status\n"));
}

TEST(Describe, EmptyBoardHasAllEmptyStatus) {
  BoardRecord r;
  r.combo_name = "none";
  const auto prompt = build_describe_prompt(r);
  std::string row = "[";
  for (int c = 0; c < kCols; ++c) row += std::string(c ? ", " : "") + "'□'";
  row += "]\n";
  std::string grid;
  for (int i = 0; i < kRows; ++i) grid += row;
  EXPECT_NE(prompt.find("Current Grid Status\n" + grid), std::string::npos);
}

TEST(Describe, RegularPromptListsObjects) {
  Combo combo{{Shape::washer, Shape::nut}, {Color::red, Color::blue}, {}, Window{0, 0, 4, 4},
              seed_index("stack-two")};
  const auto prompt = build_describe_prompt(generate_board(seed_by_id("corners"), combo));
  EXPECT_NE(prompt.find("filled with objects"), std::string::npos);
  EXPECT_EQ(prompt.find("filled with shapes"), std::string::npos);
  EXPECT_EQ(prompt.find("Object Name"), std::string::npos);
  EXPECT_NE(prompt.find("[('wn', ['red', 'blue'])]"), std::string::npos);
  EXPECT_NE(prompt.find("Row(4), Col(4) contains 'wn' object with colors red, blue."),
            std::string::npos);
  EXPECT_EQ(prompt.find("('washer', 'red')"), std::string::npos);
}

TEST(Jsonl, InstructionRoundTrip) {
  std::vector<InstructionSet> sets;
  for (std::size_t i = 0; i < 50; ++i) {
    sets.push_back(render_template(dataset().records[i * 100], InstructionStyle::template_multi));
  }
  const auto back = read_instructions_jsonl(instructions_to_jsonl(sets));
  ASSERT_EQ(back.size(), sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    EXPECT_EQ(back[i].record_id, sets[i].record_id);
    EXPECT_EQ(back[i].style, sets[i].style);
    EXPECT_EQ(back[i].turns, sets[i].turns);
  }
}

TEST(Jsonl, HumanImport) {
  const auto sets = import_human_instructions(
      "{\"record_id\": \"a\", \"text\": \"put a red washer somewhere\"}\n\n"
      "{\"record_id\": \"b\", \"text\": \"x\"}\n");
  ASSERT_EQ(sets.size(), 2u);
  EXPECT_EQ(sets[0].style, InstructionStyle::human_written);
  EXPECT_EQ(sets[1].turns, std::vector<std::string>{"x"});
  EXPECT_THROW(import_human_instructions("{\"record_id\": \"a\"}\n"), std::invalid_argument);
}

TEST(Ordinals, Words) {
  EXPECT_EQ(ordinal_word(1), "first");
  EXPECT_EQ(ordinal_word(8), "eighth");
  EXPECT_THROW(ordinal_word(9), std::out_of_range);
}
