#include <array>
#include <stdexcept>

#include "sartco/dsl.hpp"

namespace sartco::dsl {

namespace {

enum class Tok : std::uint8_t { Name, Int, String, Op, Newline, Indent, Dedent, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  long long ival = 0;
  SourceLoc loc;
};

struct ParseFailure {
  SyntaxError error;
};

[[noreturn]] void fail(SourceLoc loc, std::string message) {
  throw ParseFailure{SyntaxError{loc, std::move(message)}};
}

constexpr long long kMaxLiteral = 1'000'000'000'000'000LL;
constexpr int kMaxNesting = 100;

constexpr std::array<std::string_view, 35> kPythonKeywords{
    "False", "None",   "True",    "and",      "as",     "assert", "async",
    "await", "break",  "class",   "continue", "def",    "del",    "elif",
    "else",  "except", "finally", "for",      "from",   "global", "if",
    "import", "in",    "is",      "lambda",   "nonlocal", "not",  "or",
    "pass",  "raise",  "return",  "try",      "while",  "with",   "yield"};

bool is_keyword(std::string_view s) {
  for (auto k : kPythonKeywords) {
    if (k == s) return true;
  }
  return false;
}

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<int> indents{0};
    std::vector<std::pair<char, SourceLoc>> brackets;
    int line_no = 0;
    std::size_t pos = 0;

    while (pos <= src_.size()) {
      const std::size_t eol = std::min(src_.find('\n', pos), src_.size());
      std::string_view line = src_.substr(pos, eol - pos);
      ++line_no;
      const bool last = eol >= src_.size();
      pos = eol + 1;

      std::size_t i = 0;
      if (brackets.empty()) {
        int width = 0;
        for (; i < line.size(); ++i) {
          if (line[i] == ' ') {
            ++width;
          } else if (line[i] == '\t') {
            width = (width / 8 + 1) * 8;
          } else if (line[i] == '\f' || line[i] == '\r') {
            continue;
          } else {
            break;
          }
        }
        if (i >= line.size() || line[i] == '#' || rest_blank(line, i)) {
          if (last) break;
          continue;
        }
        const SourceLoc at{line_no, static_cast<int>(i) + 1};
        if (width > indents.back()) {
          indents.push_back(width);
          out_.push_back({Tok::Indent, "", 0, at});
        } else if (width < indents.back()) {
          while (width < indents.back()) {
            indents.pop_back();
            out_.push_back({Tok::Dedent, "", 0, at});
          }
          if (width != indents.back()) fail(at, "unindent does not match any outer level");
        }
      }

      bool any = false;
      while (i < line.size()) {
        const char ch = line[i];
        const SourceLoc at{line_no, static_cast<int>(i) + 1};
        if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\f') {
          ++i;
          continue;
        }
        if (ch == '#') break;
        any = true;
        if (is_ident_start(ch)) {
          std::size_t j = i;
          while (j < line.size() && is_ident_char(line[j])) ++j;
          out_.push_back({Tok::Name, std::string(line.substr(i, j - i)), 0, at});
          i = j;
        } else if (is_digit(ch)) {
          std::size_t j = i;
          long long v = 0;
          while (j < line.size() && is_digit(line[j])) {
            v = v * 10 + (line[j] - '0');
            if (v > kMaxLiteral) fail(at, "integer literal too large");
            ++j;
          }
          if (j < line.size() && (is_ident_start(line[j]) || line[j] == '.')) {
            fail(at, "invalid number literal");
          }
          if (j - i > 1 && line[i] == '0') fail(at, "leading zeros in integer literal");
          out_.push_back({Tok::Int, std::string(line.substr(i, j - i)), v, at});
          i = j;
        } else if (ch == '\'' || ch == '"') {
          std::string value;
          std::size_t j = i + 1;
          bool closed = false;
          while (j < line.size()) {
            const char c = line[j];
            if (c == ch) {
              closed = true;
              ++j;
              break;
            }
            if (c == '\\' && j + 1 < line.size()) {
              const char e = line[j + 1];
              value.push_back(e == 'n' ? '\n' : e == 't' ? '\t' : e);
              j += 2;
              continue;
            }
            value.push_back(c);
            ++j;
          }
          if (!closed) fail(at, "unterminated string literal");
          out_.push_back({Tok::String, std::move(value), 0, at});
          i = j;
        } else if (ch == '=' && i + 1 < line.size() && line[i + 1] == '=') {
          out_.push_back({Tok::Op, "==", 0, at});
          i += 2;
        } else if (ch == '(' || ch == '[') {
          brackets.push_back({ch, at});
          if (brackets.size() > kMaxNesting) fail(at, "brackets nested too deeply");
          out_.push_back({Tok::Op, std::string(1, ch), 0, at});
          ++i;
        } else if (ch == ')' || ch == ']') {
          const char open = ch == ')' ? '(' : '[';
          if (brackets.empty() || brackets.back().first != open) {
            fail(at, std::string("unmatched '") + ch + "'");
          }
          brackets.pop_back();
          out_.push_back({Tok::Op, std::string(1, ch), 0, at});
          ++i;
        } else if (ch == ',' || ch == ':' || ch == '=' || ch == '+' || ch == '-') {
          out_.push_back({Tok::Op, std::string(1, ch), 0, at});
          ++i;
        } else {
          fail(at, "invalid character in program text");
        }
      }
      if (brackets.empty() && any) {
        out_.push_back({Tok::Newline, "", 0, {line_no, static_cast<int>(line.size()) + 1}});
      }
      if (last) break;
    }
    if (!brackets.empty()) {
      fail(brackets.back().second, std::string("'") + brackets.back().first + "' was never closed");
    }
    const SourceLoc end{line_no + 1, 1};
    while (indents.size() > 1) {
      indents.pop_back();
      out_.push_back({Tok::Dedent, "", 0, end});
    }
    out_.push_back({Tok::End, "", 0, end});
    return std::move(out_);
  }

 private:
  static bool rest_blank(std::string_view line, std::size_t i) {
    for (; i < line.size(); ++i) {
      if (line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '\f') return false;
    }
    return true;
  }

  std::string_view src_;
  std::vector<Token> out_;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Node program() {
    Node root{NodeKind::Program, {1, 1}, "", 0, {}};
    while (peek().kind != Tok::End) {
      if (peek().kind == Tok::Indent) fail(peek().loc, "unexpected indent");
      root.children.push_back(statement());
    }
    return root;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at_op(std::string_view op, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Tok::Op && t.text == op;
  }
  bool at_name(std::string_view name) const {
    return peek().kind == Tok::Name && peek().text == name;
  }
  void expect_op(std::string_view op) {
    if (!at_op(op)) fail(peek().loc, "expected '" + std::string(op) + "', found " + describe());
    next();
  }
  std::string expect_identifier() {
    const Token& t = peek();
    if (t.kind != Tok::Name || is_keyword(t.text)) {
      fail(t.loc, "expected identifier, found " + describe());
    }
    return next().text;
  }
  void expect_newline() {
    if (peek().kind == Tok::End) return;
    if (peek().kind != Tok::Newline) fail(peek().loc, "expected end of line, found " + describe());
    next();
  }
  std::string describe() const {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Name: return "'" + t.text + "'";
      case Tok::Int: return "number " + t.text;
      case Tok::String: return "string literal";
      case Tok::Op: return "'" + t.text + "'";
      case Tok::Newline: return "end of line";
      case Tok::Indent: return "indent";
      case Tok::Dedent: return "dedent";
      case Tok::End: return "end of input";
    }
    return "token";
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p, SourceLoc loc) : p_(p) {
      if (++p_.depth_ > kMaxNesting) fail(loc, "program nested too deeply");
    }
    ~DepthGuard() { --p_.depth_; }
    Parser& p_;
  };

  Node statement() {
    DepthGuard guard(*this, peek().loc);
    const Token& t = peek();
    if (t.kind != Tok::Name) fail(t.loc, "unexpected " + describe() + " at start of statement");
    if (t.text == "def") return function_def();
    if (t.text == "for") return for_stmt();
    if (t.text == "if") return if_stmt();
    if (is_keyword(t.text)) fail(t.loc, "unsupported construct '" + t.text + "'");
    Node s = simple_statement();
    expect_newline();
    return s;
  }

  Node simple_statement() {
    const Token& t = peek();
    if (t.kind != Tok::Name || is_keyword(t.text)) {
      fail(t.loc, "expected a call or an assignment, found " + describe());
    }
    if (at_op("=", 1)) {
      Node a{NodeKind::Assign, t.loc, next().text, 0, {}};
      next();
      a.children.push_back(expression());
      return a;
    }
    if (at_op("(", 1)) {
      Node call{NodeKind::Call, t.loc, next().text, 0, {}};
      call_arguments(call, true);
      return call;
    }
    fail(peek(1).loc, "expected a call or an assignment after '" + t.text + "'");
  }

  Node suite() {
    Node block{NodeKind::Block, peek().loc, "", 0, {}};
    if (peek().kind != Tok::Newline) {
      block.children.push_back(simple_statement());
      expect_newline();
      return block;
    }
    next();
    if (peek().kind != Tok::Indent) fail(peek().loc, "expected an indented block");
    next();
    while (peek().kind != Tok::Dedent && peek().kind != Tok::End) {
      if (peek().kind == Tok::Indent) fail(peek().loc, "unexpected indent");
      block.children.push_back(statement());
    }
    if (peek().kind == Tok::Dedent) next();
    return block;
  }

  Node function_def() {
    Node def{NodeKind::FunctionDef, next().loc, "", 0, {}};
    def.text = expect_identifier();
    Node params{NodeKind::Params, peek().loc, "", 0, {}};
    expect_op("(");
    while (!at_op(")")) {
      const SourceLoc at = peek().loc;
      std::string name = expect_identifier();
      for (const Node& p : params.children) {
        if (p.text == name) fail(at, "duplicate parameter '" + name + "'");
      }
      params.children.push_back(Node{NodeKind::Param, at, std::move(name), 0, {}});
      if (at_op("=")) fail(peek().loc, "default parameter values are not supported");
      if (!at_op(",")) break;
      next();
    }
    expect_op(")");
    expect_op(":");
    def.children.push_back(std::move(params));
    def.children.push_back(suite());
    return def;
  }

  Node for_stmt() {
    Node loop{NodeKind::For, next().loc, "", 0, {}};
    Node targets{NodeKind::Targets, peek().loc, "", 0, {}};
    const bool paren = at_op("(");
    if (paren) next();
    while (true) {
      const SourceLoc at = peek().loc;
      targets.children.push_back(Node{NodeKind::Name, at, expect_identifier(), 0, {}});
      if (!at_op(",")) break;
      next();
      if (paren && at_op(")")) break;
      if (!paren && at_name("in")) break;
    }
    if (paren) expect_op(")");
    if (!at_name("in")) fail(peek().loc, "expected 'in', found " + describe());
    next();
    loop.children.push_back(std::move(targets));
    loop.children.push_back(expression());
    expect_op(":");
    loop.children.push_back(suite());
    return loop;
  }

  Node if_stmt() {
    Node branch{NodeKind::If, next().loc, "", 0, {}};
    branch.children.push_back(expression());
    expect_op(":");
    branch.children.push_back(suite());
    if (at_name("else") || at_name("elif")) {
      fail(peek().loc, "unsupported construct '" + peek().text + "'");
    }
    return branch;
  }

  void call_arguments(Node& call, bool allow_keywords) {
    expect_op("(");
    bool seen_keyword = false;
    while (!at_op(")")) {
      if (peek().kind == Tok::Name && at_op("=", 1)) {
        if (!allow_keywords) fail(peek().loc, "keyword arguments are not supported here");
        Node kw{NodeKind::Keyword, peek().loc, expect_identifier(), 0, {}};
        for (std::size_t i = 0; i < call.children.size(); ++i) {
          const Node& c = call.children[i];
          if (c.kind == NodeKind::Keyword && c.text == kw.text) {
            fail(kw.loc, "keyword argument repeated: '" + kw.text + "'");
          }
        }
        next();
        kw.children.push_back(expression());
        call.children.push_back(std::move(kw));
        seen_keyword = true;
      } else {
        if (seen_keyword) fail(peek().loc, "positional argument follows keyword argument");
        call.children.push_back(expression());
      }
      if (!at_op(",")) break;
      next();
    }
    expect_op(")");
  }

  Node expression() {
    DepthGuard guard(*this, peek().loc);
    Node lhs = sum();
    if (at_op("==")) {
      Node cmp{NodeKind::Compare, peek().loc, "==", 0, {}};
      next();
      cmp.children.push_back(std::move(lhs));
      cmp.children.push_back(sum());
      if (at_op("==")) fail(peek().loc, "chained comparisons are not supported");
      return cmp;
    }
    return lhs;
  }

  Node sum() {
    Node lhs = unary();
    while (at_op("+")) {
      Node add{NodeKind::BinaryAdd, peek().loc, "+", 0, {}};
      next();
      add.children.push_back(std::move(lhs));
      add.children.push_back(unary());
      lhs = std::move(add);
    }
    return lhs;
  }

  Node unary() {
    if (at_op("-")) {
      const SourceLoc at = next().loc;
      if (peek().kind != Tok::Int) fail(at, "unary minus is only supported on integer literals");
      const Token& t = next();
      return Node{NodeKind::IntLiteral, at, "-" + t.text, -t.ival, {}};
    }
    return atom();
  }

  Node atom() {
    DepthGuard guard(*this, peek().loc);
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int: {
        next();
        return Node{NodeKind::IntLiteral, t.loc, t.text, t.ival, {}};
      }
      case Tok::String: {
        next();
        return Node{NodeKind::StringLiteral, t.loc, t.text, 0, {}};
      }
      case Tok::Name: {
        if (is_keyword(t.text)) fail(t.loc, "unsupported construct '" + t.text + "'");
        if (at_op("(", 1)) {
          if (t.text != "range" && t.text != "zip") {
            fail(t.loc, "only range() and zip() may be called inside an expression");
          }
          Node call{t.text == "range" ? NodeKind::RangeCall : NodeKind::ZipCall, t.loc, t.text, 0,
                    {}};
          next();
          call_arguments(call, false);
          return call;
        }
        next();
        return Node{NodeKind::Name, t.loc, t.text, 0, {}};
      }
      case Tok::Op: {
        if (t.text == "[") {
          Node list{NodeKind::ListLiteral, t.loc, "", 0, {}};
          next();
          while (!at_op("]")) {
            list.children.push_back(expression());
            if (!at_op(",")) break;
            next();
          }
          expect_op("]");
          return list;
        }
        if (t.text == "(") {
          const SourceLoc at = t.loc;
          next();
          if (at_op(")")) {
            next();
            return Node{NodeKind::TupleLiteral, at, "", 0, {}};
          }
          Node first = expression();
          if (at_op(")")) {
            next();
            return first;
          }
          Node tuple{NodeKind::TupleLiteral, at, "", 0, {}};
          tuple.children.push_back(std::move(first));
          while (at_op(",")) {
            next();
            if (at_op(")")) break;
            tuple.children.push_back(expression());
          }
          expect_op(")");
          return tuple;
        }
        break;
      }
      default:
        break;
    }
    fail(t.loc, "unexpected " + describe() + " in expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

std::string_view node_kind_name(NodeKind k) {
  static constexpr std::array<std::string_view, 20> kNames{
      "Program", "Block",       "FunctionDef",   "Params",      "Param",
      "For",     "Targets",     "If",            "Call",        "Keyword",
      "Assign",  "IntLiteral",  "StringLiteral", "ListLiteral", "TupleLiteral",
      "Name",    "BinaryAdd",   "RangeCall",     "ZipCall",     "Compare"};
  return kNames[static_cast<std::size_t>(k)];
}

ParseResult parse(std::string_view source) {
  ParseResult result;
  try {
    Lexer lexer(source);
    Parser parser(lexer.run());
    result.program = parser.program();
  } catch (const ParseFailure& f) {
    result.error = f.error;
  }
  return result;
}

nlohmann::json ast_to_json(const Node& node) {
  nlohmann::json j{{"type", node_kind_name(node.kind)},
                   {"line", node.loc.line},
                   {"col", node.loc.col}};
  switch (node.kind) {
    case NodeKind::IntLiteral: j["value"] = node.int_value; break;
    case NodeKind::StringLiteral: j["value"] = node.text; break;
    case NodeKind::FunctionDef:
    case NodeKind::Param:
    case NodeKind::Call:
    case NodeKind::Keyword:
    case NodeKind::Assign:
    case NodeKind::Name: j["name"] = node.text; break;
    default: break;
  }
  if (!node.children.empty()) {
    nlohmann::json kids = nlohmann::json::array();
    for (const Node& c : node.children) kids.push_back(ast_to_json(c));
    j["children"] = std::move(kids);
  }
  return j;
}

}  // namespace sartco::dsl
