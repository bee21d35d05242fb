#include <memory>
#include <unordered_map>

#include "sartco/dsl.hpp"

namespace sartco::dsl {

namespace {

struct Value;
using Items = std::shared_ptr<const std::vector<Value>>;

struct Value {
  enum class Kind : std::uint8_t { Int, Str, List, Tuple, Board };
  Kind kind = Kind::Int;
  long long i = 0;
  std::string s;
  Items items;

  static Value integer(long long v) { return Value{Kind::Int, v, {}, {}}; }
  static Value string(std::string v) { return Value{Kind::Str, 0, std::move(v), {}}; }
  static Value sequence(Kind k, std::vector<Value> v) {
    return Value{k, 0, {}, std::make_shared<const std::vector<Value>>(std::move(v))};
  }
  static Value board() { return Value{Kind::Board, 0, {}, {}}; }

  bool is_sequence() const { return kind == Kind::List || kind == Kind::Tuple; }
};

std::string_view kind_name(Value::Kind k) {
  switch (k) {
    case Value::Kind::Int: return "int";
    case Value::Kind::Str: return "str";
    case Value::Kind::List: return "list";
    case Value::Kind::Tuple: return "tuple";
    case Value::Kind::Board: return "board";
  }
  return "value";
}

bool equal(const Value& a, const Value& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Value::Kind::Int: return a.i == b.i;
    case Value::Kind::Str: return a.s == b.s;
    case Value::Kind::Board: return true;
    case Value::Kind::List:
    case Value::Kind::Tuple: {
      if (a.items->size() != b.items->size()) return false;
      for (std::size_t k = 0; k < a.items->size(); ++k) {
        if (!equal((*a.items)[k], (*b.items)[k])) return false;
      }
      return true;
    }
  }
  return false;
}

bool truthy(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Int: return v.i != 0;
    case Value::Kind::Str: return !v.s.empty();
    case Value::Kind::Board: return true;
    default: return !v.items->empty();
  }
}

struct Fault {
  ErrorCategory category;
  std::string message;
  SourceLoc loc;
};

[[noreturn]] void raise(ErrorCategory c, std::string message, SourceLoc loc) {
  throw Fault{c, std::move(message), loc};
}

constexpr std::array<std::string_view, 6> kKeywordNames{"board", "shape", "color",
                                                        "x",     "y",     "colors"};

bool keyword_allowed(std::string_view name) {
  for (auto k : kKeywordNames) {
    if (k == name) return true;
  }
  return false;
}

using Frame = std::unordered_map<std::string, Value>;

class Interpreter {
 public:
  Interpreter(Board& board, const ExecEnv& env, std::vector<PutCall>& trace)
      : board_(board), env_(env), trace_(trace) {}

  void run(const Node& program) {
    frames_.emplace_back();
    exec_block(program);
  }

  long long steps() const { return steps_; }

 private:
  void tick(SourceLoc loc) {
    if (++steps_ > env_.step_budget) {
      raise(ErrorCategory::resource,
            "step budget of " + std::to_string(env_.step_budget) + " exceeded", loc);
    }
  }

  /// Sequence construction is billed per element so the budget bounds memory too.
  void charge(std::size_t elements, SourceLoc loc) {
    steps_ += static_cast<long long>(elements);
    if (steps_ > env_.step_budget) {
      raise(ErrorCategory::resource,
            "step budget of " + std::to_string(env_.step_budget) + " exceeded", loc);
    }
  }

  void exec_block(const Node& block) {
    for (const Node& stmt : block.children) exec(stmt);
  }

  void exec(const Node& stmt) {
    tick(stmt.loc);
    switch (stmt.kind) {
      case NodeKind::FunctionDef:
        functions_[stmt.text] = &stmt;
        break;
      case NodeKind::Assign:
        frames_.back()[stmt.text] = eval(stmt.children[0]);
        break;
      case NodeKind::Call:
        call(stmt);
        break;
      case NodeKind::If:
        if (truthy(eval(stmt.children[0]))) exec_block(stmt.children[1]);
        break;
      case NodeKind::For:
        exec_for(stmt);
        break;
      default:
        raise(ErrorCategory::syntax, "unexpected statement", stmt.loc);
    }
  }

  void exec_for(const Node& stmt) {
    const Node& targets = stmt.children[0];
    const Value iterable = eval(stmt.children[1]);
    if (!iterable.is_sequence()) {
      raise(ErrorCategory::type, "'" + std::string(kind_name(iterable.kind)) + "' is not iterable",
            stmt.children[1].loc);
    }
    for (const Value& item : *iterable.items) {
      tick(stmt.loc);
      if (targets.children.size() == 1) {
        frames_.back()[targets.children[0].text] = item;
      } else {
        if (!item.is_sequence()) {
          raise(ErrorCategory::type,
                "cannot unpack non-sequence '" + std::string(kind_name(item.kind)) + "'",
                targets.loc);
        }
        if (item.items->size() != targets.children.size()) {
          raise(ErrorCategory::value,
                "expected " + std::to_string(targets.children.size()) + " values to unpack, got " +
                    std::to_string(item.items->size()),
                targets.loc);
        }
        for (std::size_t k = 0; k < targets.children.size(); ++k) {
          frames_.back()[targets.children[k].text] = (*item.items)[k];
        }
      }
      exec_block(stmt.children[2]);
    }
  }

  const Value* lookup(const std::string& name) const {
    if (auto it = frames_.back().find(name); it != frames_.back().end()) return &it->second;
    if (frames_.size() > 1) {
      if (auto it = frames_.front().find(name); it != frames_.front().end()) return &it->second;
    }
    return nullptr;
  }

  Value eval(const Node& e) {
    tick(e.loc);
    switch (e.kind) {
      case NodeKind::IntLiteral: return Value::integer(e.int_value);
      case NodeKind::StringLiteral: return Value::string(e.text);
      case NodeKind::ListLiteral:
      case NodeKind::TupleLiteral: {
        std::vector<Value> items;
        items.reserve(e.children.size());
        for (const Node& c : e.children) items.push_back(eval(c));
        return Value::sequence(
            e.kind == NodeKind::ListLiteral ? Value::Kind::List : Value::Kind::Tuple,
            std::move(items));
      }
      case NodeKind::Name: {
        if (const Value* v = lookup(e.text)) return *v;
        if (e.text == "board") return Value::board();
        if (functions_.count(e.text) || e.text == "put" || e.text == "range" || e.text == "zip") {
          raise(ErrorCategory::type, "functions cannot be used as values: '" + e.text + "'",
                e.loc);
        }
        raise(ErrorCategory::name, "name '" + e.text + "' is not defined", e.loc);
      }
      case NodeKind::BinaryAdd: return add(eval(e.children[0]), eval(e.children[1]), e.loc);
      case NodeKind::Compare:
        return Value::integer(equal(eval(e.children[0]), eval(e.children[1])) ? 1 : 0);
      case NodeKind::RangeCall: return range(e);
      case NodeKind::ZipCall: return zip(e);
      default: raise(ErrorCategory::syntax, "unexpected expression", e.loc);
    }
  }

  Value add(const Value& a, const Value& b, SourceLoc loc) {
    if (a.kind == Value::Kind::Int && b.kind == Value::Kind::Int) {
      long long r = 0;
      if (__builtin_add_overflow(a.i, b.i, &r)) raise(ErrorCategory::value, "integer overflow", loc);
      return Value::integer(r);
    }
    if (a.kind == Value::Kind::Str && b.kind == Value::Kind::Str) {
      if (a.s.size() + b.s.size() > env_.max_sequence_length) {
        raise(ErrorCategory::resource, "string too long", loc);
      }
      charge(a.s.size() + b.s.size(), loc);
      return Value::string(a.s + b.s);
    }
    if (a.kind == b.kind && a.is_sequence()) {
      if (a.items->size() + b.items->size() > env_.max_sequence_length) {
        raise(ErrorCategory::resource, "sequence too long", loc);
      }
      charge(a.items->size() + b.items->size(), loc);
      std::vector<Value> items(*a.items);
      items.insert(items.end(), b.items->begin(), b.items->end());
      return Value::sequence(a.kind, std::move(items));
    }
    raise(ErrorCategory::type,
          "unsupported operand types for +: '" + std::string(kind_name(a.kind)) + "' and '" +
              std::string(kind_name(b.kind)) + "'",
          loc);
  }

  std::vector<Value> positional(const Node& call) {
    std::vector<Value> args;
    for (const Node& c : call.children) {
      if (c.kind == NodeKind::Keyword) {
        raise(ErrorCategory::type, call.text + "() takes no keyword arguments", c.loc);
      }
      args.push_back(eval(c));
    }
    return args;
  }

  Value range(const Node& call) {
    const std::vector<Value> args = positional(call);
    if (args.empty() || args.size() > 3) {
      raise(ErrorCategory::type,
            "range expected 1 to 3 arguments, got " + std::to_string(args.size()), call.loc);
    }
    for (const Value& a : args) {
      if (a.kind != Value::Kind::Int) {
        raise(ErrorCategory::type,
              "'" + std::string(kind_name(a.kind)) + "' object cannot be interpreted as an integer",
              call.loc);
      }
    }
    long long start = 0, stop = 0, step = 1;
    if (args.size() == 1) {
      stop = args[0].i;
    } else {
      start = args[0].i;
      stop = args[1].i;
      if (args.size() == 3) step = args[2].i;
    }
    if (step == 0) raise(ErrorCategory::value, "range() arg 3 must not be zero", call.loc);
    const __int128 span = static_cast<__int128>(stop) - start;
    __int128 count = 0;
    if (step > 0 && span > 0) count = (span + step - 1) / step;
    if (step < 0 && span < 0) count = (-span + (-step) - 1) / (-step);
    if (count > static_cast<__int128>(env_.max_sequence_length)) {
      raise(ErrorCategory::resource, "range too long", call.loc);
    }
    charge(static_cast<std::size_t>(count), call.loc);
    std::vector<Value> items;
    items.reserve(static_cast<std::size_t>(count));
    for (__int128 k = 0; k < count; ++k) {
      items.push_back(Value::integer(static_cast<long long>(start + k * step)));
    }
    return Value::sequence(Value::Kind::List, std::move(items));
  }

  Value zip(const Node& call) {
    const std::vector<Value> args = positional(call);
    std::size_t n = args.empty() ? 0 : SIZE_MAX;
    for (const Value& a : args) {
      if (!a.is_sequence()) {
        raise(ErrorCategory::type,
              "zip argument is not iterable: '" + std::string(kind_name(a.kind)) + "'", call.loc);
      }
      n = std::min(n, a.items->size());
    }
    charge(n * args.size(), call.loc);
    std::vector<Value> rows;
    rows.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<Value> tuple;
      tuple.reserve(args.size());
      for (const Value& a : args) tuple.push_back((*a.items)[k]);
      rows.push_back(Value::sequence(Value::Kind::Tuple, std::move(tuple)));
    }
    return Value::sequence(Value::Kind::List, std::move(rows));
  }

  /// Binds call arguments onto `params`. A leading `board` parameter may be
  /// omitted by the caller; it then resolves to the board.
  std::vector<Value> bind(const Node& call, const std::vector<std::string_view>& params) {
    std::vector<const Node*> pos;
    std::vector<const Node*> kws;
    for (const Node& c : call.children) {
      (c.kind == NodeKind::Keyword ? kws : pos).push_back(&c);
    }
    std::vector<std::optional<Value>> slots(params.size());
    std::size_t offset = 0;
    bool board_by_keyword = false;
    for (const Node* kw : kws) board_by_keyword |= kw->text == "board";
    if (!params.empty() && params[0] == "board" && !board_by_keyword &&
        pos.size() + kws.size() + 1 == params.size()) {
      slots[0] = Value::board();
      offset = 1;
    }
    if (pos.size() + offset > params.size()) {
      raise(ErrorCategory::type,
            call.text + "() takes " + std::to_string(params.size()) +
                " positional arguments but " + std::to_string(pos.size()) + " were given",
            call.loc);
    }
    for (std::size_t k = 0; k < pos.size(); ++k) slots[k + offset] = eval(*pos[k]);
    for (const Node* kw : kws) {
      if (!keyword_allowed(kw->text)) {
        raise(ErrorCategory::type, "unsupported keyword argument '" + kw->text + "'", kw->loc);
      }
      std::size_t idx = params.size();
      for (std::size_t k = 0; k < params.size(); ++k) {
        if (params[k] == kw->text) idx = k;
      }
      if (idx == params.size()) {
        raise(ErrorCategory::type,
              call.text + "() got an unexpected keyword argument '" + kw->text + "'", kw->loc);
      }
      if (slots[idx]) {
        raise(ErrorCategory::type,
              call.text + "() got multiple values for argument '" + kw->text + "'", kw->loc);
      }
      slots[idx] = eval(kw->children[0]);
    }
    std::vector<Value> out;
    out.reserve(slots.size());
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if (!slots[k]) {
        raise(ErrorCategory::type,
              call.text + "() missing required argument '" + std::string(params[k]) + "'",
              call.loc);
      }
      out.push_back(std::move(*slots[k]));
    }
    return out;
  }

  void call(const Node& c) {
    if (auto it = functions_.find(c.text); it != functions_.end()) {
      call_user(*it->second, c);
      return;
    }
    if (c.text == "put") {
      call_put(c);
      return;
    }
    if (c.text == "range") {
      range(c);
      return;
    }
    if (c.text == "zip") {
      zip(c);
      return;
    }
    raise(ErrorCategory::name, "name '" + c.text + "' is not defined", c.loc);
  }

  void call_put(const Node& c) {
    static const std::vector<std::string_view> kParams{"board", "shape", "color", "x", "y"};
    const std::vector<Value> args = bind(c, kParams);
    if (args[0].kind != Value::Kind::Board) {
      raise(ErrorCategory::type, "put() expects the board as its first argument", c.loc);
    }
    if (args[1].kind != Value::Kind::Str || args[2].kind != Value::Kind::Str) {
      raise(ErrorCategory::type, "put() expects shape and color names as strings", c.loc);
    }
    if (args[3].kind != Value::Kind::Int || args[4].kind != Value::Kind::Int) {
      raise(ErrorCategory::type, "put() expects integer coordinates", c.loc);
    }
    const long long row = args[3].i;
    const long long col = args[4].i;
    if (auto err = board_.try_put(args[1].s, args[2].s, row, col)) {
      raise(err->category, err->detail, c.loc);
    }
    trace_.push_back(PutCall{*parse_shape(args[1].s), *parse_color(args[2].s),
                             static_cast<int>(row), static_cast<int>(col)});
  }

  void call_user(const Node& def, const Node& c) {
    if (static_cast<int>(frames_.size()) > env_.max_call_depth) {
      raise(ErrorCategory::resource, "maximum call depth exceeded", c.loc);
    }
    std::vector<std::string_view> params;
    for (const Node& p : def.children[0].children) params.push_back(p.text);
    std::vector<Value> args = bind(c, params);
    Frame frame;
    for (std::size_t k = 0; k < params.size(); ++k) {
      frame[std::string(params[k])] = std::move(args[k]);
    }
    frames_.push_back(std::move(frame));
    exec_block(def.children[1]);
    frames_.pop_back();
  }

  Board& board_;
  const ExecEnv& env_;
  std::vector<PutCall>& trace_;
  std::vector<Frame> frames_;
  std::unordered_map<std::string, const Node*> functions_;
  long long steps_ = 0;
};

}  // namespace

ExecOutcome execute(const Node& program, Board board, const ExecEnv& env) {
  ExecOutcome out;
  out.board = std::move(board);
  Interpreter interp(out.board, env, out.trace);
  try {
    interp.run(program);
    out.success = true;
  } catch (const Fault& f) {
    out.error = f.category;
    out.message = f.message;
    out.location = f.loc;
  }
  out.steps = interp.steps();
  return out;
}

ExecOutcome run_source(std::string_view source, Board board, const ExecEnv& env) {
  ParseResult parsed = parse(source);
  if (!parsed.ok()) {
    ExecOutcome out;
    out.board = std::move(board);
    out.error = ErrorCategory::syntax;
    out.message = parsed.error->message;
    out.location = parsed.error->loc;
    return out;
  }
  return execute(*parsed.program, std::move(board), env);
}

}  // namespace sartco::dsl
