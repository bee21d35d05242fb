#include "sartco/grid.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace sartco {

namespace {

constexpr std::array<std::string_view, 5> kShapeNames{"washer", "nut", "screw", "bridge-h",
                                                      "bridge-v"};
constexpr std::array<std::string_view, 4> kColorNames{"red", "green", "blue", "yellow"};

struct CategoryNames {
  std::string_view id;
  std::string_view display;
};

constexpr std::array<CategoryNames, kErrorCategoryCount> kCategoryNames{{
    {"syntax", "Syntax Error"},
    {"key", "Key Error"},
    {"name", "Name Error"},
    {"value", "Value Error"},
    {"type", "Type Error"},
    {"resource", "Resource Error"},
    {"dimensions_mismatch", "Dimensions Mismatch"},
    {"depth_mismatch", "Depth Mismatch"},
    {"bridge_placement", "Bridge Placement"},
    {"same_shape_stacking", "Same Shape Stacking"},
    {"same_shape_alternate_levels", "Same Shape At Alternate Levels"},
    {"not_on_top_of_screw", "Not On Top Of Screw"},
    {"same_color_stacking", "Same Color Stacking"},
    {"mismatch_location", "Mismatch Location"},
    {"mismatch_color", "Mismatch Color"},
    {"mismatch_shape", "Mismatch Shape"},
    {"mismatch_count", "Mismatch Count"},
    {"transport", "Transport Error"},
}};

PlacementError make_error(ErrorCategory cat, std::string detail, long row, long col) {
  PlacementError e{cat, std::move(detail), std::nullopt};
  if (row >= 0 && row < kRows && col >= 0 && col < kCols) {
    e.location = Cell{static_cast<int>(row), static_cast<int>(col)};
  }
  return e;
}

std::string where(long row, long col) {
  return "(" + std::to_string(row) + ", " + std::to_string(col) + ")";
}

}  // namespace

std::string_view shape_name(Shape s) { return kShapeNames[static_cast<std::size_t>(s)]; }
std::string_view color_name(Color c) { return kColorNames[static_cast<std::size_t>(c)]; }

std::optional<Shape> parse_shape(std::string_view name) {
  for (std::size_t i = 0; i < kShapeNames.size(); ++i) {
    if (kShapeNames[i] == name) return static_cast<Shape>(i);
  }
  return std::nullopt;
}

std::optional<Color> parse_color(std::string_view name) {
  for (std::size_t i = 0; i < kColorNames.size(); ++i) {
    if (kColorNames[i] == name) return static_cast<Color>(i);
  }
  return std::nullopt;
}

std::string_view category_id(ErrorCategory c) {
  return kCategoryNames[static_cast<std::size_t>(c)].id;
}

std::string_view category_display(ErrorCategory c) {
  return kCategoryNames[static_cast<std::size_t>(c)].display;
}

std::optional<ErrorCategory> parse_category(std::string_view id) {
  for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
    if (kCategoryNames[i].id == id) return static_cast<ErrorCategory>(i);
  }
  return std::nullopt;
}

std::size_t Board::component_count() const {
  std::size_t n = 0;
  for (const auto& stack : cells_) {
    for (const auto& c : stack) {
      // a bridge appears in two cells, each half weighs one
      n += is_bridge(c.shape) ? 1 : 2;
    }
  }
  return n / 2;
}

bool Board::empty() const {
  return std::all_of(cells_.begin(), cells_.end(), [](const Stack& s) { return s.empty(); });
}

std::optional<PlacementError> Board::try_put(std::string_view shape, std::string_view color,
                                             long row, long col) {
  auto s = parse_shape(shape);
  if (!s) {
    return make_error(ErrorCategory::key, "unsupported shape '" + std::string(shape) + "'", row,
                      col);
  }
  auto c = parse_color(color);
  if (!c) {
    return make_error(ErrorCategory::key, "unsupported color '" + std::string(color) + "'", row,
                      col);
  }
  return try_put(*s, *c, row, col);
}

std::optional<PlacementError> Board::check(Shape shape, Color color, long row, long col) const {
  if (row < 0 || row >= kRows || col < 0 || col >= kCols) {
    return make_error(ErrorCategory::dimensions_mismatch,
                      "location " + where(row, col) + " is outside the 8x8 grid", row, col);
  }
  if (shape == Shape::bridge_h && col == kCols - 1) {
    return make_error(ErrorCategory::value, "horizontal bridge at " + where(row, col) +
                                                " would leave the grid",
                      row, col);
  }
  if (shape == Shape::bridge_v && row == kRows - 1) {
    return make_error(ErrorCategory::value,
                      "vertical bridge at " + where(row, col) + " would leave the grid", row, col);
  }

  const int r = static_cast<int>(row);
  const int c = static_cast<int>(col);
  std::vector<Cell> support{{r, c}};
  if (shape == Shape::bridge_h) support.push_back({r, c + 1});
  if (shape == Shape::bridge_v) support.push_back({r + 1, c});

  for (const Cell& cell : support) {
    const Stack& st = at(cell);
    if (!st.empty() && st.back().shape == Shape::screw) {
      return make_error(ErrorCategory::not_on_top_of_screw,
                        "cannot place on top of a screw at " + where(cell.row, cell.col),
                        cell.row, cell.col);
    }
  }
  if (is_bridge(shape)) {
    const std::size_t h0 = at(support[0]).size();
    const std::size_t h1 = at(support[1]).size();
    if (h0 != h1) {
      return make_error(ErrorCategory::depth_mismatch,
                        "bridge supports at " + where(row, col) + " have depths " +
                            std::to_string(h0) + " and " + std::to_string(h1),
                        row, col);
    }
    if (h0 >= 2) {
      return make_error(ErrorCategory::bridge_placement,
                        "bridge at " + where(row, col) + " would rest on level " +
                            std::to_string(h0 + 1),
                        row, col);
    }
  }
  for (const Cell& cell : support) {
    const Stack& st = at(cell);
    if (!st.empty() && st.back().shape == shape) {
      return make_error(ErrorCategory::same_shape_stacking,
                        std::string(shape_name(shape)) + " on top of " +
                            std::string(shape_name(shape)) + " at " + where(cell.row, cell.col),
                        cell.row, cell.col);
    }
  }
  for (const Cell& cell : support) {
    const Stack& st = at(cell);
    if (!st.empty() && st.back().color == color) {
      return make_error(ErrorCategory::same_color_stacking,
                        std::string(color_name(color)) + " on top of " +
                            std::string(color_name(color)) + " at " + where(cell.row, cell.col),
                        cell.row, cell.col);
    }
  }
  for (const Cell& cell : support) {
    const Stack& st = at(cell);
    if (st.size() >= 2 && st[st.size() - 2].shape == shape) {
      return make_error(ErrorCategory::same_shape_alternate_levels,
                        std::string(shape_name(shape)) + " two levels above another " +
                            std::string(shape_name(shape)) + " at " + where(cell.row, cell.col),
                        cell.row, cell.col);
    }
  }
  return std::nullopt;
}

std::optional<PlacementError> Board::try_put(Shape shape, Color color, long row, long col) {
  if (auto err = check(shape, color, row, col)) return err;
  const int r = static_cast<int>(row);
  const int c = static_cast<int>(col);
  if (is_bridge(shape)) {
    const std::uint32_t id = next_bridge_id_++;
    cells_[index(r, c)].push_back({shape, color, id});
    if (shape == Shape::bridge_h) {
      cells_[index(r, c + 1)].push_back({shape, color, id});
    } else {
      cells_[index(r + 1, c)].push_back({shape, color, id});
    }
  } else {
    cells_[index(r, c)].push_back({shape, color, 0});
  }
  return std::nullopt;
}

std::variant<Board, PlacementError> put(const Board& board, std::string_view shape,
                                        std::string_view color, long row, long col) {
  Board next = board;
  if (auto err = next.try_put(shape, color, row, col)) return *err;
  return next;
}

bool boards_equal(const Board& a, const Board& b) {
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < kCols; ++c) {
      const Stack& x = a.at(r, c);
      const Stack& y = b.at(r, c);
      if (x.size() != y.size()) return false;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].shape != y[i].shape || x[i].color != y[i].color) return false;
      }
    }
  }
  return true;
}

std::string render_ascii(const Board& board, std::string_view empty_symbol) {
  std::ostringstream out;
  for (int r = 0; r < kRows; ++r) {
    out << '[';
    for (int c = 0; c < kCols; ++c) {
      if (c > 0) out << ", ";
      const Stack& st = board.at(r, c);
      if (st.empty()) {
        out << '\'' << empty_symbol << '\'';
        continue;
      }
      out << '[';
      for (std::size_t i = 0; i < st.size(); ++i) {
        if (i > 0) out << ", ";
        out << "('" << shape_name(st[i].shape) << "', '" << color_name(st[i].color) << "')";
      }
      out << ']';
    }
    out << "]\n";
  }
  return out.str();
}

std::string describe_grid(const Board& board) {
  std::ostringstream out;
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < kCols; ++c) {
      const Stack& st = board.at(r, c);
      if (st.empty()) continue;
      out << "Row(" << r + 1 << "), Col(" << c + 1 << ") contains ";
      for (std::size_t i = 0; i < st.size(); ++i) {
        if (i > 0) out << ", ";
        out << color_name(st[i].color) << ' ' << shape_name(st[i].shape);
      }
      out << ".\n";
    }
  }
  return out.str();
}

nlohmann::json board_to_json(const Board& board) {
  // Bridges are renumbered in row-major order of their first cell so equal
  // boards serialize identically whatever order they were built in.
  std::unordered_map<std::uint32_t, std::uint32_t> renumber;
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < kRows; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < kCols; ++c) {
      nlohmann::json stack = nlohmann::json::array();
      for (const Component& comp : board.at(r, c)) {
        nlohmann::json item{{"shape", shape_name(comp.shape)}, {"color", color_name(comp.color)}};
        if (is_bridge(comp.shape)) {
          auto it = renumber.try_emplace(comp.bridge_id,
                                         static_cast<std::uint32_t>(renumber.size() + 1));
          item["bridge_id"] = it.first->second;
        }
        stack.push_back(std::move(item));
      }
      row.push_back(std::move(stack));
    }
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"cells", std::move(rows)}};
}

Board board_from_json(const nlohmann::json& j) {
  const auto& rows = j.at("cells");
  if (!rows.is_array() || rows.size() != kRows) {
    throw std::invalid_argument("board json: expected 8 rows");
  }
  struct Entry {
    Shape shape;
    Color color;
    long long bridge_id;
  };
  std::array<std::vector<Entry>, kRows * kCols> cells;
  std::size_t max_height = 0;
  for (int r = 0; r < kRows; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != kCols) {
      throw std::invalid_argument("board json: expected 8 columns in row " + std::to_string(r));
    }
    for (int c = 0; c < kCols; ++c) {
      auto& out = cells[static_cast<std::size_t>(r * kCols + c)];
      for (const auto& item : row[static_cast<std::size_t>(c)]) {
        auto s = parse_shape(item.at("shape").get<std::string>());
        auto col = parse_color(item.at("color").get<std::string>());
        if (!s || !col) throw std::invalid_argument("board json: unknown shape or color");
        out.push_back({*s, *col, item.value("bridge_id", -1LL)});
      }
      max_height = std::max(max_height, out.size());
    }
  }

  Board board;
  for (std::size_t level = 0; level < max_height; ++level) {
    for (int r = 0; r < kRows; ++r) {
      for (int c = 0; c < kCols; ++c) {
        const auto& st = cells[static_cast<std::size_t>(r * kCols + c)];
        if (level >= st.size()) continue;
        const Entry& e = st[level];
        if (board.height(r, c) > level) continue;  // second half of a bridge already placed
        if (is_bridge(e.shape)) {
          const int r2 = e.shape == Shape::bridge_v ? r + 1 : r;
          const int c2 = e.shape == Shape::bridge_h ? c + 1 : c;
          if (r2 >= kRows || c2 >= kCols) {
            throw std::invalid_argument("board json: dangling bridge half");
          }
          const auto& other = cells[static_cast<std::size_t>(r2 * kCols + c2)];
          if (other.size() <= level || other[level].shape != e.shape ||
              other[level].color != e.color || other[level].bridge_id != e.bridge_id) {
            throw std::invalid_argument("board json: bridge halves disagree at " + where(r, c));
          }
        }
        if (auto err = board.try_put(e.shape, e.color, r, c)) {
          throw std::invalid_argument("board json: " + err->detail);
        }
      }
    }
  }
  return board;
}

}  // namespace sartco
