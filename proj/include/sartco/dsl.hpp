#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sartco/grid.hpp"

namespace sartco::dsl {

struct SourceLoc {
  int line = 0;  // 1-based
  int col = 0;   // 1-based
  friend bool operator==(const SourceLoc&, const SourceLoc&) = default;
  friend auto operator<=>(const SourceLoc&, const SourceLoc&) = default;
};

enum class NodeKind : std::uint8_t {
  // statements
  Program,
  Block,
  FunctionDef,  // text = name; children = [Params, Block]
  Params,       // children = Param...
  Param,        // text = name
  For,          // children = [Targets, iterable, Block]
  Targets,      // children = Name...
  If,           // children = [condition, Block]
  Call,         // text = callee; children = positional args then Keyword...
  Keyword,      // text = name; children = [value]
  Assign,       // text = target name; children = [value]
  // expressions
  IntLiteral,   // int_value
  StringLiteral,  // text
  ListLiteral,
  TupleLiteral,
  Name,  // text
  BinaryAdd,
  RangeCall,
  ZipCall,
  Compare,  // equality only
};

std::string_view node_kind_name(NodeKind k);

/// Uniform AST node; the per-kind layout is documented on NodeKind.
struct Node {
  NodeKind kind = NodeKind::Program;
  SourceLoc loc;
  std::string text;
  long long int_value = 0;
  std::vector<Node> children;
};

struct SyntaxError {
  SourceLoc loc;
  std::string message;
};

struct ParseResult {
  std::optional<Node> program;
  std::optional<SyntaxError> error;
  bool ok() const { return program.has_value(); }
};

/// Parses the restricted put-language. Never throws on malformed input.
ParseResult parse(std::string_view source);

nlohmann::json ast_to_json(const Node& node);

/// One successful put, in execution order.
struct PutCall {
  Shape shape;
  Color color;
  int row;
  int col;
  friend bool operator==(const PutCall&, const PutCall&) = default;
};

struct ExecEnv {
  long long step_budget = 100'000;
  int max_call_depth = 64;
  std::size_t max_sequence_length = 100'000;
};

struct ExecOutcome {
  bool success = false;
  Board board;  // final board, or the partial board at the failing statement
  std::optional<ErrorCategory> error;
  std::string message;
  std::optional<SourceLoc> location;
  std::vector<PutCall> trace;
  long long steps = 0;
};

ExecOutcome execute(const Node& program, Board board = {}, const ExecEnv& env = {});

/// parse + execute; a parse failure becomes a syntax outcome on the untouched board.
ExecOutcome run_source(std::string_view source, Board board = {}, const ExecEnv& env = {});

enum class SiteKind : std::uint8_t { assign, for_target, param, use, unbound };

struct Site {
  SiteKind kind = SiteKind::unbound;
  SourceLoc loc;
  friend bool operator==(const Site&, const Site&) = default;
  friend auto operator<=>(const Site&, const Site&) = default;
};

struct DataflowEdge {
  std::string var;
  Site def;
  Site use;
  friend bool operator==(const DataflowEdge&, const DataflowEdge&) = default;
  friend auto operator<=>(const DataflowEdge&, const DataflowEdge&) = default;
};

/// Def-use edges, ordered by use site then variable name.
std::vector<DataflowEdge> extract_dataflow(const Node& program);

}  // namespace sartco::dsl
