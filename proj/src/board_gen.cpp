#include "sartco/board_gen.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "sartco/dsl.hpp"

namespace sartco {

namespace {

constexpr auto F = std::nullopt;
constexpr std::optional<Shape> BH = Shape::bridge_h;
constexpr std::optional<Shape> BV = Shape::bridge_v;

std::vector<Seed> build_catalog() {
  std::vector<Seed> c;
  auto simple = [&](std::string id, std::string title, std::vector<std::optional<Shape>> slots,
                    std::vector<int> dx, std::vector<int> dy, int rows, int cols) {
    c.push_back(Seed{std::move(id), SeedKind::simple_object, std::move(title), std::move(slots),
                     std::move(dx), std::move(dy), rows, cols, Arrangement::none});
  };
  simple("stack-two", "stack two shapes", {F, F}, {0, 0}, {0, 0}, 1, 1);
  simple("stack-three", "stack three shapes", {F, F, F}, {0, 0, 0}, {0, 0, 0}, 1, 1);
  simple("row-pair-bridge-h", "two shapes on a row under a horizontal bridge", {F, F, BH},
         {0, 0, 0}, {0, 1, 0}, 1, 2);
  simple("column-pair-bridge-v", "two shapes in a column under a vertical bridge", {F, F, BV},
         {0, 1, 0}, {0, 0, 0}, 2, 1);
  simple("bridge-h-right-stack", "horizontal bridge with two shapes on its right cell",
         {BH, F, F}, {0, 0, 0}, {0, 1, 1}, 1, 2);
  simple("bridge-v-bottom-stack", "vertical bridge with two shapes on its bottom cell",
         {BV, F, F}, {0, 1, 1}, {0, 0, 0}, 2, 1);
  simple("stack-four", "stack four shapes", {F, F, F, F}, {0, 0, 0, 0}, {0, 0, 0, 0}, 1, 1);
  simple("row-pair-bridge-h-cap-left", "row pair, horizontal bridge, shape on the left end",
         {F, F, BH, F}, {0, 0, 0, 0}, {0, 1, 0, 0}, 1, 2);
  simple("row-pair-bridge-h-cap-right", "row pair, horizontal bridge, shape on the right end",
         {F, F, BH, F}, {0, 0, 0, 0}, {0, 1, 0, 1}, 1, 2);
  simple("column-pair-bridge-v-cap-top", "column pair, vertical bridge, shape on the top end",
         {F, F, BV, F}, {0, 1, 0, 0}, {0, 0, 0, 0}, 2, 1);
  simple("column-pair-bridge-v-cap-bottom",
         "column pair, vertical bridge, shape on the bottom end", {F, F, BV, F}, {0, 1, 0, 1},
         {0, 0, 0, 0}, 2, 1);
  simple("bridge-h-bridge-v", "horizontal bridge, vertical bridge and two shapes",
         {BH, F, BV, F}, {0, 1, 0, 0}, {0, 1, 1, 1}, 2, 2);
  simple("bridge-v-bridge-h", "vertical bridge, horizontal bridge and two shapes",
         {BV, F, BH, F}, {0, 1, 1, 1}, {0, 1, 0, 0}, 2, 2);
  simple("bridges-h-then-v", "two horizontal bridges under two vertical bridges",
         {BH, BH, BV, BV}, {0, 1, 0, 0}, {0, 0, 0, 1}, 2, 2);
  simple("bridges-v-then-h", "two vertical bridges under two horizontal bridges",
         {BV, BV, BH, BH}, {0, 0, 0, 1}, {0, 1, 0, 0}, 2, 2);
  simple("bridge-h-bridge-v-stack", "horizontal bridge, vertical bridge and a two-shape stack",
         {BH, F, BV, F, F}, {0, 1, 0, 0, 0}, {0, 1, 1, 1, 1}, 2, 2);
  simple("row-pair-bridge-h-stack", "row pair, horizontal bridge and a two-shape stack",
         {F, F, BH, F, F}, {0, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, 1, 2);
  simple("column-pair-bridge-v-stack", "column pair, vertical bridge and a two-shape stack",
         {F, F, BV, F, F}, {0, 1, 0, 0, 0}, {0, 0, 0, 0, 0}, 2, 1);

  auto regular = [&](std::string id, std::string title, SeedKind kind, Arrangement a, int rows,
                     int cols) {
    c.push_back(Seed{std::move(id), kind, std::move(title), {}, {}, {}, rows, cols, a});
  };
  const auto rs = SeedKind::regular_simple;
  regular("columns-1-4-7", "first, fourth and seventh columns of every row", rs,
          Arrangement::columns_1_4_7, 1, 1);
  regular("rows-1-4-7", "first, fourth and seventh rows of every column", rs,
          Arrangement::rows_1_4_7, 1, 1);
  regular("diagonal", "main diagonal", rs, Arrangement::diagonal, 1, 1);
  regular("corners", "four corners", rs, Arrangement::corners, 1, 1);
  regular("cross", "first and middle rows crossed with first and middle columns", rs,
          Arrangement::cross, 1, 1);

  const auto rc = SeedKind::regular_complex;
  const std::array<std::pair<int, int>, 3> classes{{{1, 2}, {2, 1}, {2, 2}}};
  const std::array<std::pair<Arrangement, const char*>, 3> patterns{{
      {Arrangement::footprint_diagonal, "footprint-diagonal"},
      {Arrangement::alternating, "alternating"},
      {Arrangement::column_fill, "column-fill"},
  }};
  for (const auto& [arr, name] : patterns) {
    for (const auto& [r, k] : classes) {
      regular(std::string(name) + "-" + std::to_string(r) + "x" + std::to_string(k),
              std::string(arrangement_name(arr)) + " arrangement", rc, arr, r, k);
    }
  }
  regular("fourth-column-2x1", "fourth column arrangement", rc, Arrangement::fourth_column, 2,
          1);
  return c;
}

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

template <typename T, typename Fmt>
std::string py_list(const std::vector<T>& items, Fmt&& fmt) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += fmt(items[i]);
  }
  return out + "]";
}

std::string int_list(const std::vector<int>& v) {
  return py_list(v, [](int i) { return std::to_string(i); });
}

std::string colors_literal(const std::vector<Color>& colors) {
  return py_list(colors, [](Color c) { return quoted(color_name(c)); });
}

/// The higher-order function a simple-object seed defines.
std::string object_definition(const Seed& seed, const std::string& name,
                              const std::vector<Shape>& shapes) {
  std::string out = "def " + name + "(board, colors, x, y):\n";
  out += "    shapes = " + py_list(shapes, [](Shape s) { return quoted(shape_name(s)); }) + "\n";
  const bool stacked = std::all_of(seed.dx.begin(), seed.dx.end(), [](int v) { return v == 0; }) &&
                       std::all_of(seed.dy.begin(), seed.dy.end(), [](int v) { return v == 0; });
  if (stacked) {
    out += "    for shape, color in zip(shapes, colors):\n";
    out += "        put(board, shape, color, x, y)\n";
  } else {
    out += "    for shape, color, dx, dy in zip(shapes, colors, " + int_list(seed.dx) + ", " +
           int_list(seed.dy) + "):\n";
    out += "        put(board, shape, color, x + dx, y + dy)\n";
  }
  return out;
}

std::string offset(const char* var, int base) {
  return base == 0 ? std::string(var) : std::string(var) + " + " + std::to_string(base);
}

std::vector<int> stepped(int limit, int step) {
  std::vector<int> v;
  for (int i = 0; i < limit; i += step) v.push_back(i);
  return v;
}

std::vector<int> literal_lines(int extent) {
  std::vector<int> v;
  for (int i : {0, 3, 6}) {
    if (i < extent) v.push_back(i);
  }
  return v;
}

/// Loops placing an object at every arrangement_anchors() cell, window-relative.
std::string arrangement_program(Arrangement a, const Window& w, int fr, int fc,
                                const std::string& name, const std::vector<Color>& colors) {
  const std::string colors_arg = colors_literal(colors);
  auto call = [&](const std::string& x, const std::string& y, int indent) {
    return std::string(static_cast<std::size_t>(indent), ' ') + name + "(board, colors=" +
           colors_arg + ", x=" + x + ", y=" + y + ")\n";
  };
  const std::string x = offset("row", w.row);
  const std::string y = offset("col", w.col);
  const int span_r = w.rows - fr + 1;
  const int span_c = w.cols - fc + 1;
  auto range = [](int stop, int step) {
    return "range(0, " + std::to_string(stop) + ", " + std::to_string(step) + ")";
  };
  std::string out;
  switch (a) {
    case Arrangement::columns_1_4_7:
      out += "for row in range(" + std::to_string(w.rows) + "):\n";
      out += "    for col in " + int_list(literal_lines(w.cols)) + ":\n";
      out += call(x, y, 8);
      break;
    case Arrangement::rows_1_4_7:
      out += "for row in " + int_list(literal_lines(w.rows)) + ":\n";
      out += "    for col in range(" + std::to_string(w.cols) + "):\n";
      out += call(x, y, 8);
      break;
    case Arrangement::diagonal:
      out += "for row in range(" + std::to_string(w.rows) + "):\n";
      out += "    for col in range(" + std::to_string(w.cols) + "):\n";
      out += "        if row == col:\n";
      out += call(x, y, 12);
      break;
    case Arrangement::corners: {
      const std::string lr = std::to_string(w.rows - 1);
      const std::string lc = std::to_string(w.cols - 1);
      out += "for row, col in [[0,0], [0," + lc + "], [" + lr + ", 0], [" + lr + ", " + lc +
             "]]:\n";
      out += call(x, y, 4);
      break;
    }
    case Arrangement::cross:
      out += "for row in [0, " + std::to_string(w.rows / 2) + "]:\n";
      out += "    for col in [0, " + std::to_string(w.cols / 2) + "]:\n";
      out += call(x, y, 8);
      break;
    case Arrangement::footprint_diagonal:
      out += "for row, col in zip(" + range(span_r, fr) + ", " + range(span_c, fc) + "):\n";
      out += call(x, y, 4);
      break;
    case Arrangement::alternating:
      out += "for row in " + range(span_r, fr + 1) + ":\n";
      out += "    for col in " + range(span_c, fc + 1) + ":\n";
      out += call(x, y, 8);
      break;
    case Arrangement::column_fill:
      out += "for row in " + range(span_r, fr) + ":\n";
      out += "    for col in " + range(span_c, fc + 1) + ":\n";
      out += call(x, y, 8);
      break;
    case Arrangement::fourth_column:
      out += "for row in " + range(span_r, fr) + ":\n";
      out += call(x, std::to_string(3 + w.col), 4);
      break;
    case Arrangement::none:
      break;
  }
  return out;
}

std::string first_order_text(const std::vector<dsl::PutCall>& trace) {
  std::string out;
  for (const auto& p : trace) {
    out += "put(board, " + quoted(shape_name(p.shape)) + ", " + quoted(color_name(p.color)) +
           ", " + std::to_string(p.row) + ", " + std::to_string(p.col) + ")\n";
  }
  return out;
}

std::string higher_order_text(const std::string& name, const std::string& first_order) {
  std::string out = "def " + name + "(board):\n";
  std::istringstream lines(first_order);
  std::string line;
  while (std::getline(lines, line)) out += "    " + line + "\n";
  return out + name + "(board)\n";
}

bool window_in_one_quadrant(const Window& w) {
  if (w.rows < 1 || w.cols < 1 || w.row < 0 || w.col < 0) return false;
  if (w.row + w.rows > kRows || w.col + w.cols > kCols) return false;
  return quadrant_of({w.row, w.col}) == quadrant_of({w.row + w.rows - 1, w.col + w.cols - 1});
}

/// Places an object's slots directly on a board; nullopt when a rule is broken.
std::optional<Board> build_object(const Seed& seed, const std::vector<Shape>& shapes,
                                  const std::vector<Color>& colors, Cell at) {
  Board b;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    if (b.try_put(shapes[i], colors[i], at.row + seed.dx[i], at.col + seed.dy[i])) {
      return std::nullopt;
    }
  }
  return b;
}

std::string layout_key(const Board& b) {
  std::string key;
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < kCols; ++c) {
      for (const Component& comp : b.at(r, c)) key += std::string(shape_name(comp.shape)) + ",";
      key += ";";
    }
  }
  return key;
}

std::size_t max_height(const Board& b) {
  std::size_t h = 0;
  for (int r = 0; r < kRows; ++r)
    for (int c = 0; c < kCols; ++c) h = std::max(h, b.height(r, c));
  return h;
}

std::vector<Cell> occupied_cells(const Board& b) {
  std::vector<Cell> cells;
  for (int r = 0; r < kRows; ++r)
    for (int c = 0; c < kCols; ++c)
      if (!b.at(r, c).empty()) cells.push_back({r, c});
  return cells;
}

}  // namespace

std::string_view seed_kind_name(SeedKind k) {
  switch (k) {
    case SeedKind::simple_object: return "simple_object";
    case SeedKind::regular_simple: return "regular_simple";
    case SeedKind::regular_complex: return "regular_complex";
  }
  return "";
}

std::string_view board_type_name(BoardType t) {
  return t == BoardType::simple ? "simple" : "regular";
}

std::string_view object_type_name(ObjectType t) {
  return t == ObjectType::simple ? "simple" : "complex";
}

std::string_view split_name(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::val: return "val";
    case Split::test: return "test";
  }
  return "";
}

std::optional<Split> parse_split(std::string_view s) {
  for (Split sp : {Split::train, Split::val, Split::test}) {
    if (split_name(sp) == s) return sp;
  }
  return std::nullopt;
}

std::string_view arrangement_name(Arrangement a) {
  switch (a) {
    case Arrangement::none: return "none";
    case Arrangement::columns_1_4_7: return "columns_1_4_7";
    case Arrangement::rows_1_4_7: return "rows_1_4_7";
    case Arrangement::diagonal: return "diagonal";
    case Arrangement::corners: return "corners";
    case Arrangement::cross: return "cross";
    case Arrangement::footprint_diagonal: return "footprint_diagonal";
    case Arrangement::alternating: return "alternating";
    case Arrangement::column_fill: return "column_fill";
    case Arrangement::fourth_column: return "fourth_column";
  }
  return "";
}

namespace {
template <typename T>
T need(std::optional<T> v, const std::string& what) {
  if (!v) throw std::invalid_argument("bad record field: " + what);
  return *v;
}

Arrangement parse_arrangement(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(Arrangement::fourth_column); ++i) {
    if (arrangement_name(static_cast<Arrangement>(i)) == s) return static_cast<Arrangement>(i);
  }
  throw std::invalid_argument("unknown arrangement '" + std::string(s) + "'");
}
}  // namespace

const std::vector<Seed>& catalog() {
  static const std::vector<Seed> seeds = build_catalog();
  return seeds;
}

const Seed& seed_by_id(std::string_view id) {
  for (const Seed& s : catalog()) {
    if (s.id == id) return s;
  }
  throw std::invalid_argument("unknown seed '" + std::string(id) + "'");
}

std::string combo_name(const std::vector<Shape>& shapes) {
  std::string name;
  for (Shape s : shapes) {
    switch (s) {
      case Shape::washer: name += "w"; break;
      case Shape::nut: name += "n"; break;
      case Shape::screw: name += "s"; break;
      case Shape::bridge_h: name += "bh"; break;
      case Shape::bridge_v: name += "bv"; break;
    }
  }
  return name;
}

std::vector<ObjectSpec> enumerate_objects(const std::vector<Seed>& seeds) {
  static constexpr std::array<Shape, 3> kFree{Shape::washer, Shape::nut, Shape::screw};
  std::vector<ObjectSpec> out;
  std::set<std::string> seen;
  const std::vector<Seed>& all = catalog();
  for (const Seed& seed : seeds) {
    if (seed.kind != SeedKind::simple_object) continue;
    std::size_t index = 0;
    while (index < all.size() && all[index].id != seed.id) ++index;

    const std::size_t n = seed.slots.size();
    std::vector<std::size_t> free_slots;
    for (std::size_t i = 0; i < n; ++i)
      if (!seed.slots[i]) free_slots.push_back(i);

    std::size_t shape_combos = 1;
    for (std::size_t k = 0; k < free_slots.size(); ++k) shape_combos *= kFree.size();
    std::size_t color_combos = 1;
    for (std::size_t k = 0; k < n; ++k) color_combos *= kAllColors.size();

    for (std::size_t sc = 0; sc < shape_combos; ++sc) {
      std::vector<Shape> shapes(n);
      std::size_t rest = sc;
      // last free slot varies fastest, so the order is lexicographic
      for (std::size_t k = free_slots.size(); k-- > 0;) {
        shapes[free_slots[k]] = kFree[rest % kFree.size()];
        rest /= kFree.size();
      }
      for (std::size_t i = 0; i < n; ++i)
        if (seed.slots[i]) shapes[i] = *seed.slots[i];

      ObjectSpec spec{index, shapes, seed.rows, seed.cols, combo_name(shapes), {}};
      std::optional<Board> sample;
      for (std::size_t cc = 0; cc < color_combos; ++cc) {
        std::vector<Color> colors(n);
        std::size_t r = cc;
        for (std::size_t k = n; k-- > 0;) {
          colors[k] = kAllColors[r % kAllColors.size()];
          r /= kAllColors.size();
        }
        auto b = build_object(seed, shapes, colors, {0, 0});
        if (!b) continue;
        if (!sample) sample = b;
        spec.colorings.push_back(std::move(colors));
      }
      if (!sample) continue;
      if (max_height(*sample) > kMaxObjectHeight) continue;
      if (sample->component_count() > kMaxObjectComponents) continue;
      if (!seen.insert(layout_key(*sample)).second) continue;
      out.push_back(std::move(spec));
    }
  }
  return out;
}

const std::vector<ObjectSpec>& catalog_objects() {
  static const std::vector<ObjectSpec> objects = enumerate_objects(catalog());
  return objects;
}

std::vector<Cell> arrangement_anchors(Arrangement a, const Window& w, int fr, int fc) {
  std::vector<Cell> rel;
  if (w.rows < fr || w.cols < fc) return {};
  const int span_r = w.rows - fr + 1;
  const int span_c = w.cols - fc + 1;
  const bool single = fr == 1 && fc == 1;
  switch (a) {
    case Arrangement::columns_1_4_7:
      if (!single || w.cols < 4) return {};
      for (int r = 0; r < w.rows; ++r)
        for (int c : literal_lines(w.cols)) rel.push_back({r, c});
      break;
    case Arrangement::rows_1_4_7:
      if (!single || w.rows < 4) return {};
      for (int r : literal_lines(w.rows))
        for (int c = 0; c < w.cols; ++c) rel.push_back({r, c});
      break;
    case Arrangement::diagonal:
      if (!single) return {};
      for (int i = 0; i < std::min(w.rows, w.cols); ++i) rel.push_back({i, i});
      break;
    case Arrangement::corners:
      if (!single || w.rows < 2 || w.cols < 2) return {};
      rel = {{0, 0}, {0, w.cols - 1}, {w.rows - 1, 0}, {w.rows - 1, w.cols - 1}};
      break;
    case Arrangement::cross:
      if (!single || w.rows < 2 || w.cols < 2) return {};
      for (int r : {0, w.rows / 2})
        for (int c : {0, w.cols / 2}) rel.push_back({r, c});
      break;
    case Arrangement::footprint_diagonal: {
      const auto rows = stepped(span_r, fr);
      const auto cols = stepped(span_c, fc);
      for (std::size_t i = 0; i < std::min(rows.size(), cols.size()); ++i)
        rel.push_back({rows[i], cols[i]});
      break;
    }
    case Arrangement::alternating:
      for (int r : stepped(span_r, fr + 1))
        for (int c : stepped(span_c, fc + 1)) rel.push_back({r, c});
      break;
    case Arrangement::column_fill:
      for (int r : stepped(span_r, fr))
        for (int c : stepped(span_c, fc + 1)) rel.push_back({r, c});
      break;
    case Arrangement::fourth_column:
      if (fc != 1 || w.cols < 4) return {};
      for (int r : stepped(span_r, fr)) rel.push_back({r, 3});
      break;
    case Arrangement::none:
      return {};
  }
  if (rel.size() < 2) return {};
  std::vector<Cell> out;
  for (const Cell& c : rel) out.push_back({c.row + w.row, c.col + w.col});
  return out;
}

int quadrant_of(Cell c) { return (c.row >= 4 ? 2 : 0) + (c.col >= 4 ? 1 : 0); }

Split split_of_quadrant(int quadrant) {
  switch (quadrant) {
    case 0: return Split::train;
    case 1: return Split::val;
    default: return Split::test;
  }
}

bool satisfies_quadrant_rule(const BoardRecord& r) {
  const auto cells = occupied_cells(r.target);
  if (cells.empty()) return false;
  const int q = quadrant_of(cells.front());
  for (const Cell& c : cells) {
    if (quadrant_of(c) != q) return false;
  }
  return split_of_quadrant(q) == r.split;
}

BoardRecord generate_board(const Seed& seed, const Combo& combo) {
  BoardRecord rec;
  rec.seed_id = seed.id;
  rec.arrangement = seed.arrangement;
  rec.shapes = combo.shapes;
  rec.colors = combo.colors;
  rec.combo_name = combo_name(combo.shapes);

  const Seed* object_seed = &seed;
  if (seed.kind != SeedKind::simple_object) {
    if (combo.object_seed >= catalog().size() ||
        catalog()[combo.object_seed].kind != SeedKind::simple_object) {
      throw InvalidCombo("regular seed needs a simple-object seed to repeat");
    }
    object_seed = &catalog()[combo.object_seed];
  }
  rec.object_seed_id = object_seed->id;
  rec.footprint_rows = object_seed->rows;
  rec.footprint_cols = object_seed->cols;

  const std::size_t n = object_seed->slots.size();
  if (combo.shapes.size() != n || combo.colors.size() != n) {
    throw InvalidCombo("seed " + object_seed->id + " takes " + std::to_string(n) +
                       " shapes and colors");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (object_seed->slots[i] && *object_seed->slots[i] != combo.shapes[i]) {
      throw InvalidCombo("slot " + std::to_string(i) + " of " + object_seed->id + " must be " +
                         std::string(shape_name(*object_seed->slots[i])));
    }
  }

  const std::string definition = object_definition(*object_seed, rec.combo_name, combo.shapes);
  std::string optimal;
  Cell origin;
  if (seed.kind == SeedKind::simple_object) {
    rec.board_type = BoardType::simple;
    rec.object_type = ObjectType::simple;
    rec.anchor = combo.anchor;
    rec.anchors = {combo.anchor};
    origin = combo.anchor;
    optimal = definition + rec.combo_name + "(board, colors=" + colors_literal(combo.colors) +
              ", x=" + std::to_string(combo.anchor.row) +
              ", y=" + std::to_string(combo.anchor.col) + ")\n";
  } else {
    rec.board_type = BoardType::regular;
    const bool single = object_seed->rows == 1 && object_seed->cols == 1;
    if (seed.kind == SeedKind::regular_simple ? !single
                                              : (object_seed->rows != seed.rows ||
                                                 object_seed->cols != seed.cols)) {
      throw InvalidCombo("object " + object_seed->id + " does not fit seed " + seed.id);
    }
    rec.object_type = single ? ObjectType::simple : ObjectType::complex;
    if (!combo.window || !window_in_one_quadrant(*combo.window)) {
      throw InvalidCombo("regular boards need a window inside one quadrant");
    }
    const Window& w = *combo.window;
    rec.window = w;
    rec.anchor = {w.row, w.col};
    origin = rec.anchor;
    rec.anchors = arrangement_anchors(seed.arrangement, w, object_seed->rows, object_seed->cols);
    if (rec.anchors.empty()) {
      throw InvalidCombo("arrangement " + std::string(arrangement_name(seed.arrangement)) +
                         " does not fit a " + std::to_string(w.rows) + "x" +
                         std::to_string(w.cols) + " window");
    }
    optimal = definition + arrangement_program(seed.arrangement, w, object_seed->rows,
                                               object_seed->cols, rec.combo_name, combo.colors);
  }

  const dsl::ExecOutcome out = dsl::run_source(optimal);
  if (!out.success) {
    throw InvalidCombo("combo breaks a placement rule: " + out.message);
  }
  const int q = quadrant_of(origin);
  for (const Cell& c : occupied_cells(out.board)) {
    if (quadrant_of(c) != q) {
      throw InvalidCombo("object leaves its quadrant at (" + std::to_string(c.row) + ", " +
                         std::to_string(c.col) + ")");
    }
  }
  rec.split = split_of_quadrant(q);
  rec.target = out.board;
  rec.gold.optimal = optimal;
  rec.gold.first_order = first_order_text(out.trace);
  rec.gold.higher_order = higher_order_text(rec.combo_name, rec.gold.first_order);
  return rec;
}

std::string_view category_name(Category c) {
  switch (c) {
    case Category::simple_simple: return "simple-simple";
    case Category::regular_simple: return "regular-simple";
    case Category::regular_complex: return "regular-complex";
  }
  return "";
}

Category category_of(const BoardRecord& r) {
  if (r.board_type == BoardType::simple) return Category::simple_simple;
  return r.object_type == ObjectType::simple ? Category::regular_simple
                                             : Category::regular_complex;
}

std::size_t SplitCounts::of(Split s) const {
  switch (s) {
    case Split::train: return train;
    case Split::val: return val;
    case Split::test: return test;
  }
  return 0;
}

namespace {

struct RegularPlacement {
  std::size_t seed_index;
  Window window;
};

/// A board in the sampling space: one object, a coloring, a placement.
struct SpaceBlock {
  const ObjectSpec* object;
  std::vector<Cell> anchors;              // simple boards
  std::vector<RegularPlacement> regular;  // regular boards
  std::size_t placements() const { return anchors.empty() ? regular.size() : anchors.size(); }
  std::size_t size() const { return object->colorings.size() * placements(); }
};

std::vector<int> split_quadrants(Split s) {
  switch (s) {
    case Split::train: return {0};
    case Split::val: return {1};
    case Split::test: return {2, 3};
  }
  return {};
}

std::vector<Cell> simple_anchors(int fr, int fc, int quadrant) {
  const int r0 = quadrant >= 2 ? 4 : 0;
  const int c0 = quadrant % 2 ? 4 : 0;
  std::vector<Cell> out;
  for (int r = r0; r + fr <= r0 + 4; ++r)
    for (int c = c0; c + fc <= c0 + 4; ++c) out.push_back({r, c});
  return out;
}

/// Distinct regular layouts for one footprint inside one quadrant, first seed wins.
std::vector<RegularPlacement> regular_placements(int fr, int fc, int quadrant) {
  const int r0 = quadrant >= 2 ? 4 : 0;
  const int c0 = quadrant % 2 ? 4 : 0;
  const bool single = fr == 1 && fc == 1;
  const SeedKind kind = single ? SeedKind::regular_simple : SeedKind::regular_complex;
  std::vector<RegularPlacement> out;
  std::set<std::vector<Cell>> seen;
  const auto& seeds = catalog();
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    if (seeds[s].kind != kind) continue;
    if (!single && (seeds[s].rows != fr || seeds[s].cols != fc)) continue;
    for (int h = 1; h <= 4; ++h) {
      for (int w = 1; w <= 4; ++w) {
        for (int r = r0; r + h <= r0 + 4; ++r) {
          for (int c = c0; c + w <= c0 + 4; ++c) {
            const Window win{r, c, h, w};
            auto anchors = arrangement_anchors(seeds[s].arrangement, win, fr, fc);
            if (anchors.empty()) continue;
            std::sort(anchors.begin(), anchors.end());
            if (seen.insert(anchors).second) out.push_back({s, win});
          }
        }
      }
    }
  }
  return out;
}

bool in_category(const ObjectSpec& o, Category c) {
  switch (c) {
    case Category::simple_simple: return true;
    case Category::regular_simple: return o.object_type() == ObjectType::simple;
    case Category::regular_complex: return o.object_type() == ObjectType::complex;
  }
  return false;
}

std::vector<SpaceBlock> space_blocks(Category cat, Split split) {
  std::vector<SpaceBlock> blocks;
  for (const ObjectSpec& o : catalog_objects()) {
    if (!in_category(o, cat)) continue;
    SpaceBlock b{&o, {}, {}};
    for (int q : split_quadrants(split)) {
      if (cat == Category::simple_simple) {
        auto a = simple_anchors(o.rows, o.cols, q);
        b.anchors.insert(b.anchors.end(), a.begin(), a.end());
      } else {
        auto p = regular_placements(o.rows, o.cols, q);
        b.regular.insert(b.regular.end(), p.begin(), p.end());
      }
    }
    if (b.size() > 0) blocks.push_back(std::move(b));
  }
  return blocks;
}

BoardRecord realize(const SpaceBlock& block, std::size_t local) {
  const ObjectSpec& o = *block.object;
  const std::size_t p = block.placements();
  const auto& colors = o.colorings[local / p];
  const std::size_t at = local % p;
  Combo combo;
  combo.shapes = o.shapes;
  combo.colors = colors;
  combo.object_seed = o.seed_index;
  if (!block.anchors.empty()) {
    combo.anchor = block.anchors[at];
    return generate_board(catalog()[o.seed_index], combo);
  }
  combo.window = block.regular[at].window;
  return generate_board(catalog()[block.regular[at].seed_index], combo);
}

/// Uniform integer in [0, n) by rejection, independent of the standard library's
/// distribution implementations so output is identical across toolchains.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

}  // namespace

std::size_t board_space_size(Category c, Split s) {
  std::size_t total = 0;
  for (const SpaceBlock& b : space_blocks(c, s)) total += b.size();
  return total;
}

std::size_t board_space_size(Category c) {
  std::size_t total = 0;
  for (Split s : {Split::train, Split::val, Split::test}) total += board_space_size(c, s);
  return total;
}

Dataset make_splits(const SplitConfig& config) {
  Dataset ds;
  for (Category cat : kAllCategories) {
    auto it = config.counts.find(cat);
    if (it == config.counts.end()) continue;
    for (Split split : {Split::train, Split::val, Split::test}) {
      const std::size_t want = it->second.of(split);
      if (want == 0) continue;
      const auto blocks = space_blocks(cat, split);
      std::vector<std::size_t> starts;
      std::size_t total = 0;
      for (const auto& b : blocks) {
        starts.push_back(total);
        total += b.size();
      }
      if (want > total) {
        throw InfeasibleSplit(std::string(category_name(cat)) + "/" +
                              std::string(split_name(split)) + ": requested " +
                              std::to_string(want) + " boards, only " + std::to_string(total) +
                              " exist");
      }
      std::seed_seq seq{static_cast<std::uint32_t>(config.rng_seed),
                        static_cast<std::uint32_t>(config.rng_seed >> 32),
                        static_cast<std::uint32_t>(cat), static_cast<std::uint32_t>(split)};
      std::mt19937_64 rng(seq);

      std::vector<std::size_t> picked;
      std::unordered_set<std::size_t> taken;
      if (want >= blocks.size()) {
        for (std::size_t i = 0; i < blocks.size(); ++i) {
          const std::size_t idx = starts[i] + bounded(rng, blocks[i].size());
          picked.push_back(idx);
          taken.insert(idx);
        }
      }
      if (want * 2 > total) {
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < total; ++i)
          if (!taken.count(i)) rest.push_back(i);
        for (std::size_t k = 0; picked.size() < want; ++k) {
          std::swap(rest[k], rest[k + bounded(rng, rest.size() - k)]);
          picked.push_back(rest[k]);
        }
      } else {
        while (picked.size() < want) {
          const std::size_t idx = bounded(rng, total);
          if (taken.insert(idx).second) picked.push_back(idx);
        }
      }
      std::sort(picked.begin(), picked.end());

      std::size_t serial = 0;
      std::size_t b = 0;
      for (std::size_t idx : picked) {
        while (b + 1 < blocks.size() && starts[b + 1] <= idx) ++b;
        BoardRecord rec = realize(blocks[b], idx - starts[b]);
        char id[64];
        std::snprintf(id, sizeof id, "%s-%s-%04zu", std::string(category_name(cat)).c_str(),
                      std::string(split_name(split)).c_str(), serial++);
        rec.id = id;
        ds.records.push_back(std::move(rec));
      }
    }
  }
  return ds;
}

nlohmann::json record_to_json(const BoardRecord& r) {
  using nlohmann::json;
  auto cell = [](const Cell& c) { return json::array({c.row, c.col}); };
  json j;
  j["id"] = r.id;
  j["board_type"] = board_type_name(r.board_type);
  j["object_type"] = object_type_name(r.object_type);
  j["split"] = split_name(r.split);
  j["seed_id"] = r.seed_id;
  j["object_seed_id"] = r.object_seed_id;
  j["arrangement"] = arrangement_name(r.arrangement);
  j["combo_name"] = r.combo_name;
  j["shapes"] = json::array();
  for (Shape s : r.shapes) j["shapes"].push_back(shape_name(s));
  j["colors"] = json::array();
  for (Color c : r.colors) j["colors"].push_back(color_name(c));
  j["footprint"] = json::array({r.footprint_rows, r.footprint_cols});
  j["anchor"] = cell(r.anchor);
  if (r.window) {
    j["window"] = {{"row", r.window->row},
                   {"col", r.window->col},
                   {"rows", r.window->rows},
                   {"cols", r.window->cols}};
  } else {
    j["window"] = nullptr;
  }
  j["anchors"] = json::array();
  for (const Cell& c : r.anchors) j["anchors"].push_back(cell(c));
  j["gold"] = {{"first_order", r.gold.first_order},
               {"higher_order", r.gold.higher_order},
               {"optimal", r.gold.optimal}};
  j["target"] = board_to_json(r.target);
  return j;
}

BoardRecord record_from_json(const nlohmann::json& j) {
  BoardRecord r;
  r.id = j.at("id").get<std::string>();
  const auto bt = j.at("board_type").get<std::string>();
  if (bt != "simple" && bt != "regular") throw std::invalid_argument("bad board_type " + bt);
  r.board_type = bt == "simple" ? BoardType::simple : BoardType::regular;
  const auto ot = j.at("object_type").get<std::string>();
  if (ot != "simple" && ot != "complex") throw std::invalid_argument("bad object_type " + ot);
  r.object_type = ot == "simple" ? ObjectType::simple : ObjectType::complex;
  r.split = need(parse_split(j.at("split").get<std::string>()), "split");
  r.seed_id = j.at("seed_id").get<std::string>();
  r.object_seed_id = j.at("object_seed_id").get<std::string>();
  r.arrangement = parse_arrangement(j.at("arrangement").get<std::string>());
  r.combo_name = j.at("combo_name").get<std::string>();
  for (const auto& s : j.at("shapes")) r.shapes.push_back(need(parse_shape(s.get<std::string>()), "shape"));
  for (const auto& c : j.at("colors")) r.colors.push_back(need(parse_color(c.get<std::string>()), "color"));
  r.footprint_rows = j.at("footprint").at(0).get<int>();
  r.footprint_cols = j.at("footprint").at(1).get<int>();
  r.anchor = {j.at("anchor").at(0).get<int>(), j.at("anchor").at(1).get<int>()};
  if (!j.at("window").is_null()) {
    const auto& w = j.at("window");
    r.window = Window{w.at("row").get<int>(), w.at("col").get<int>(), w.at("rows").get<int>(),
                      w.at("cols").get<int>()};
  }
  for (const auto& c : j.at("anchors")) r.anchors.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
  const auto& g = j.at("gold");
  r.gold = {g.at("first_order").get<std::string>(), g.at("higher_order").get<std::string>(),
            g.at("optimal").get<std::string>()};
  r.target = board_from_json(j.at("target"));
  return r;
}

std::string to_jsonl(const std::vector<BoardRecord>& records) {
  std::string out;
  for (const auto& r : records) out += record_to_json(r).dump() + "\n";
  return out;
}

std::vector<BoardRecord> read_jsonl(std::string_view text) {
  std::vector<BoardRecord> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    out.push_back(record_from_json(nlohmann::json::parse(line)));
  }
  return out;
}

}  // namespace sartco
