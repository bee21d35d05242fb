#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace sartco {

inline constexpr int kRows = 8;
inline constexpr int kCols = 8;

enum class Shape : std::uint8_t { washer, nut, screw, bridge_h, bridge_v };
enum class Color : std::uint8_t { red, green, blue, yellow };

inline constexpr std::array<Shape, 5> kAllShapes{Shape::washer, Shape::nut, Shape::screw,
                                                 Shape::bridge_h, Shape::bridge_v};
inline constexpr std::array<Color, 4> kAllColors{Color::red, Color::green, Color::blue,
                                                 Color::yellow};

/// Name used in programs and renders: "washer", ..., "bridge-h", "bridge-v".
std::string_view shape_name(Shape s);
std::string_view color_name(Color c);
std::optional<Shape> parse_shape(std::string_view name);
std::optional<Color> parse_color(std::string_view name);

constexpr bool is_bridge(Shape s) { return s == Shape::bridge_h || s == Shape::bridge_v; }

/// Every failure a program can end in, placement and runtime alike, plus the
/// mismatch classes used when a program runs but builds the wrong board.
enum class ErrorCategory : std::uint8_t {
  syntax,
  key,
  name,
  value,
  type,
  resource,
  dimensions_mismatch,
  depth_mismatch,
  bridge_placement,
  same_shape_stacking,
  same_shape_alternate_levels,
  not_on_top_of_screw,
  same_color_stacking,
  mismatch_location,
  mismatch_color,
  mismatch_shape,
  mismatch_count,
  transport,
};

inline constexpr int kErrorCategoryCount = 18;

std::string_view category_id(ErrorCategory c);       // "same_shape_stacking"
std::string_view category_display(ErrorCategory c);  // "Same Shape Stacking"
std::optional<ErrorCategory> parse_category(std::string_view id);

struct Cell {
  int row = 0;
  int col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct PlacementError {
  ErrorCategory category = ErrorCategory::key;
  std::string detail;
  std::optional<Cell> location;
};

struct Component {
  Shape shape = Shape::washer;
  Color color = Color::red;
  std::uint32_t bridge_id = 0;  // nonzero iff shape is a bridge
  friend bool operator==(const Component&, const Component&) = default;
};

using Stack = std::vector<Component>;

/// 8x8 board of bottom-to-top stacks. The only mutator is try_put, so every
/// reachable board satisfies the placement rules.
class Board {
 public:
  Board() = default;

  const Stack& at(int row, int col) const { return cells_[index(row, col)]; }
  const Stack& at(Cell c) const { return at(c.row, c.col); }
  std::size_t height(int row, int col) const { return at(row, col).size(); }
  std::size_t component_count() const;  // bridges count once
  bool empty() const;

  /// Places a component; on error the board is left untouched.
  std::optional<PlacementError> try_put(std::string_view shape, std::string_view color, long row,
                                        long col);
  std::optional<PlacementError> try_put(Shape shape, Color color, long row, long col);

  /// Full structural equality, bridge ids included.
  friend bool operator==(const Board&, const Board&) = default;

 private:
  static constexpr std::size_t index(int row, int col) {
    return static_cast<std::size_t>(row * kCols + col);
  }
  std::optional<PlacementError> check(Shape shape, Color color, long row, long col) const;

  std::array<Stack, kRows * kCols> cells_{};
  std::uint32_t next_bridge_id_ = 1;
};

inline Board new_board() { return Board{}; }

/// Value-semantics put: a new board on success, the error otherwise.
std::variant<Board, PlacementError> put(const Board& board, std::string_view shape,
                                        std::string_view color, long row, long col);

/// Cell-by-cell comparison of (shape, color) sequences; bridge ids ignored.
bool boards_equal(const Board& a, const Board& b);

std::string render_ascii(const Board& board, std::string_view empty_symbol = "□");
std::string describe_grid(const Board& board);

nlohmann::json board_to_json(const Board& board);
/// Rebuilds a board by replaying puts level by level; throws std::invalid_argument
/// when the cells do not describe a legal board.
Board board_from_json(const nlohmann::json& j);

}  // namespace sartco
