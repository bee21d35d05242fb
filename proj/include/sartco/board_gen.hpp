#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sartco/grid.hpp"

namespace sartco {

enum class SeedKind : std::uint8_t { simple_object, regular_simple, regular_complex };
enum class BoardType : std::uint8_t { simple, regular };
enum class ObjectType : std::uint8_t { simple, complex };
enum class Split : std::uint8_t { train, val, test };

/// Placement patterns for regular boards. The first five repeat single-cell
/// objects, the last four repeat multi-cell objects.
enum class Arrangement : std::uint8_t {
  none,
  columns_1_4_7,
  rows_1_4_7,
  diagonal,
  corners,
  cross,
  footprint_diagonal,
  alternating,
  column_fill,
  fourth_column,
};

std::string_view seed_kind_name(SeedKind k);
std::string_view board_type_name(BoardType t);
std::string_view object_type_name(ObjectType t);
std::string_view split_name(Split s);
std::string_view arrangement_name(Arrangement a);
std::optional<Split> parse_split(std::string_view s);

struct Seed {
  std::string id;
  SeedKind kind = SeedKind::simple_object;
  std::string title;
  // simple_object seeds: one entry per slot, a fixed shape or nullopt for a free slot
  std::vector<std::optional<Shape>> slots;
  std::vector<int> dx;  // row offset per slot
  std::vector<int> dy;  // column offset per slot
  // footprint of the object (simple_object) or of the objects it repeats (regular_complex)
  int rows = 1;
  int cols = 1;
  Arrangement arrangement = Arrangement::none;
};

/// 18 simple-object seeds, then 5 regular-simple, then 10 regular-complex.
const std::vector<Seed>& catalog();
const Seed& seed_by_id(std::string_view id);

/// Largest stack a simple object may build and the most components it may hold.
inline constexpr std::size_t kMaxObjectHeight = 3;
inline constexpr std::size_t kMaxObjectComponents = 5;

/// One distinct shape assignment of a simple-object seed.
struct ObjectSpec {
  std::size_t seed_index = 0;  // into catalog()
  std::vector<Shape> shapes;   // every slot, fixed bridges included
  int rows = 1;
  int cols = 1;
  std::string combo_name;
  /// Every color assignment under which the object obeys the placement rules.
  std::vector<std::vector<Color>> colorings;

  ObjectType object_type() const {
    return rows == 1 && cols == 1 ? ObjectType::simple : ObjectType::complex;
  }
};

/// Valid shape assignments for the simple-object seeds among `seeds`, in seed
/// order then lexicographic shape order, deduplicated by layout.
std::vector<ObjectSpec> enumerate_objects(const std::vector<Seed>& seeds);
/// enumerate_objects(catalog()), computed once.
const std::vector<ObjectSpec>& catalog_objects();

/// "ws", "wnbh", ...: shape initials with bh/bv for bridges.
std::string combo_name(const std::vector<Shape>& shapes);

/// Rectangle of the grid a regular board is laid out in.
struct Window {
  int row = 0;
  int col = 0;
  int rows = 4;
  int cols = 4;
  friend bool operator==(const Window&, const Window&) = default;
};

struct Combo {
  std::vector<Shape> shapes;
  std::vector<Color> colors;
  Cell anchor;                    // simple boards: object origin
  std::optional<Window> window;   // regular boards
  std::size_t object_seed = 0;    // regular boards: simple-object seed being repeated
};

struct GoldCode {
  std::string first_order;
  std::string higher_order;
  std::string optimal;
};

struct BoardRecord {
  std::string id;
  BoardType board_type = BoardType::simple;
  ObjectType object_type = ObjectType::simple;
  Split split = Split::train;
  Board target;
  GoldCode gold;
  std::string seed_id;
  std::string object_seed_id;
  Arrangement arrangement = Arrangement::none;
  std::string combo_name;
  std::vector<Shape> shapes;
  std::vector<Color> colors;
  int footprint_rows = 1;
  int footprint_cols = 1;
  Cell anchor;
  std::optional<Window> window;
  std::vector<Cell> anchors;  // origin of every object copy
};

class InvalidCombo : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InfeasibleSplit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Object origins a regular seed produces inside `window` for objects of the
/// given footprint; empty when the pattern does not fit.
std::vector<Cell> arrangement_anchors(Arrangement a, const Window& window, int rows, int cols);

/// Builds the record by running the optimal program; the target and the
/// first-order form both come from that execution. The id and split are set
/// from the anchor quadrant; callers may overwrite the id.
BoardRecord generate_board(const Seed& seed, const Combo& combo);

/// 0 top-left, 1 top-right, 2 bottom-left, 3 bottom-right.
int quadrant_of(Cell c);
Split split_of_quadrant(int quadrant);
/// True when every occupied cell lies in one quadrant that belongs to the split.
bool satisfies_quadrant_rule(const BoardRecord& r);

enum class Category : std::uint8_t { simple_simple, regular_simple, regular_complex };
inline constexpr std::array<Category, 3> kAllCategories{
    Category::simple_simple, Category::regular_simple, Category::regular_complex};
std::string_view category_name(Category c);
Category category_of(const BoardRecord& r);

struct SplitCounts {
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;
  std::size_t of(Split s) const;
};

struct SplitConfig {
  std::uint64_t rng_seed = 42;
  std::map<Category, SplitCounts> counts{
      {Category::simple_simple, {1072, 130, 130}},
      {Category::regular_simple, {1168, 130, 130}},
      {Category::regular_complex, {2944, 130, 130}},
  };
};

struct Dataset {
  std::vector<BoardRecord> records;  // category, then split, then sample order
};

/// Size of the board space of one category over all four quadrants.
std::size_t board_space_size(Category c);
/// Same, restricted to one split.
std::size_t board_space_size(Category c, Split s);

/// Samples distinct boards per category and split. Every object of the category
/// gets at least one board per split when the requested count allows it.
Dataset make_splits(const SplitConfig& config);

nlohmann::json record_to_json(const BoardRecord& r);
BoardRecord record_from_json(const nlohmann::json& j);
std::string to_jsonl(const std::vector<BoardRecord>& records);
std::vector<BoardRecord> read_jsonl(std::string_view text);

}  // namespace sartco
