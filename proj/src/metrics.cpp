#include "sartco/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <sstream>

#include "sartco/dsl.hpp"

namespace sartco {

std::string_view task_id(TaskKind t) {
  switch (t) {
    case TaskKind::property_comp: return "property_comp";
    case TaskKind::func_comp_sequences: return "func_comp_sequences";
    case TaskKind::func_comp_optimal: return "func_comp_optimal";
    case TaskKind::func_repeat: return "func_repeat";
  }
  return "property_comp";
}

std::string_view task_display(TaskKind t) {
  switch (t) {
    case TaskKind::property_comp: return "Property Compositionality";
    case TaskKind::func_comp_sequences:
      return "Function Compositionality (Using sequences of first-order code)";
    case TaskKind::func_comp_optimal:
      return "Function Compositionality (Using optimal higher-order code)";
    case TaskKind::func_repeat: return "Function Repeatability";
  }
  return "";
}

std::optional<TaskKind> parse_task(std::string_view id) {
  for (TaskKind t : kAllTasks) {
    if (task_id(t) == id) return t;
  }
  return std::nullopt;
}

const std::string& gold_for_task(const BoardRecord& r, TaskKind t) {
  switch (t) {
    case TaskKind::property_comp: return r.gold.first_order;
    case TaskKind::func_comp_sequences: return r.gold.higher_order;
    case TaskKind::func_comp_optimal:
    case TaskKind::func_repeat: return r.gold.optimal;
  }
  return r.gold.optimal;
}

bool task_accepts(TaskKind t, const BoardRecord& r) {
  return t == TaskKind::func_repeat ? r.board_type == BoardType::regular
                                    : r.board_type == BoardType::simple;
}

// --- exact match ---

std::string normalize_for_em(std::string_view text) {
  std::vector<std::string> lines;
  std::string cur;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '\r' || ch == '\n') {
      if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      lines.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  lines.push_back(std::move(cur));
  for (auto& l : lines) {
    const auto end = l.find_last_not_of(" \t\f\v");
    l.erase(end == std::string::npos ? 0 : end + 1);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

int exact_match(std::string_view generated, std::string_view gold) {
  return normalize_for_em(generated) == normalize_for_em(gold) ? 1 : 0;
}

// --- tokens ---

namespace {

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_'; }

}  // namespace

std::vector<std::string> code_tokens(std::string_view s) {
  static constexpr std::array<std::string_view, 14> two_char{
      "==", "!=", "<=", ">=", "->", "**", "//", "+=", "-=", "*=", "/=", "<<", ">>", ":="};
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c) || c == '\\') {
      ++i;
    } else if (c == '#') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (ident_start(c)) {
      const std::size_t b = i;
      while (i < s.size() && ident_char(static_cast<unsigned char>(s[i]))) ++i;
      out.emplace_back(s.substr(b, i - b));
    } else if (std::isdigit(c)) {
      const std::size_t b = i;
      while (i < s.size() && (ident_char(static_cast<unsigned char>(s[i])) || s[i] == '.')) ++i;
      out.emplace_back(s.substr(b, i - b));
    } else if (c == '\'' || c == '"') {
      const std::size_t b = i++;
      while (i < s.size() && s[i] != static_cast<char>(c) && s[i] != '\n') {
        if (s[i] == '\\' && i + 1 < s.size()) ++i;
        ++i;
      }
      if (i < s.size() && s[i] == static_cast<char>(c)) ++i;
      out.emplace_back(s.substr(b, i - b));
    } else if (c >= 0x80) {
      // one token per UTF-8 sequence
      const std::size_t b = i++;
      while (i < s.size() && (static_cast<unsigned char>(s[i]) & 0xC0) == 0x80) ++i;
      out.emplace_back(s.substr(b, i - b));
    } else {
      std::string_view op = s.substr(i, 1);
      if (i + 1 < s.size()) {
        const auto two = s.substr(i, 2);
        if (std::find(two_char.begin(), two_char.end(), two) != two_char.end()) op = two;
      }
      out.emplace_back(op);
      i += op.size();
    }
  }
  return out;
}

// --- BLEU ---

namespace {

using Ngram = std::vector<std::string>;

std::map<Ngram, std::size_t> ngram_counts(const std::vector<std::string>& toks, std::size_t n) {
  std::map<Ngram, std::size_t> counts;
  if (toks.size() < n) return counts;
  for (std::size_t i = 0; i + n <= toks.size(); ++i) {
    ++counts[Ngram(toks.begin() + static_cast<std::ptrdiff_t>(i),
                   toks.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

double token_weight(const std::string& tok) {
  return std::find(kCodeKeywords.begin(), kCodeKeywords.end(), tok) != kCodeKeywords.end()
             ? kKeywordWeight
             : kOtherTokenWeight;
}

// Shared BLEU core; `weighted` applies token weights to unigram matches.
double bleu_core(const std::vector<std::string>& hyp, const std::vector<std::string>& ref,
                 bool weighted) {
  constexpr std::size_t kMaxOrder = 4;
  constexpr double kEpsilon = 0.1;
  std::array<double, kMaxOrder> num{};
  std::array<double, kMaxOrder> den{};
  for (std::size_t n = 1; n <= kMaxOrder; ++n) {
    const auto h = ngram_counts(hyp, n);
    const auto r = ngram_counts(ref, n);
    double matched = 0;
    double total = 0;
    for (const auto& [g, cnt] : h) {
      const auto it = r.find(g);
      const double clipped = it == r.end() ? 0.0 : static_cast<double>(std::min(cnt, it->second));
      const double w = weighted && n == 1 ? token_weight(g.front()) : 1.0;
      matched += w * clipped;
      total += w * static_cast<double>(cnt);
    }
    num[n - 1] = matched;
    den[n - 1] = total > 0 ? total : 1.0;
  }
  if (num[0] == 0) return 0.0;
  const double c = static_cast<double>(hyp.size());
  const double r = static_cast<double>(ref.size());
  const double bp = c > r ? 1.0 : std::exp(1.0 - r / c);
  const std::size_t orders = std::min(kMaxOrder, hyp.size());
  const double w = 1.0 / static_cast<double>(orders);
  double log_sum = 0;
  for (std::size_t n = 0; n < orders; ++n) {
    const double p = num[n] == 0 ? kEpsilon / den[n] : num[n] / den[n];
    log_sum += w * std::log(p);
  }
  return bp * std::exp(log_sum);
}

}  // namespace

double bleu(const std::vector<std::string>& hyp, const std::vector<std::string>& ref) {
  return bleu_core(hyp, ref, false);
}

double weighted_bleu(const std::vector<std::string>& hyp, const std::vector<std::string>& ref) {
  return bleu_core(hyp, ref, true);
}

// --- syntax and dataflow ---

namespace {

std::string sexp(const dsl::Node& n, std::vector<std::string>& internal) {
  std::string out = "(" + std::string(dsl::node_kind_name(n.kind));
  for (const auto& c : n.children) out += " " + sexp(c, internal);
  out += ")";
  if (!n.children.empty()) internal.push_back(out);
  return out;
}

std::vector<std::string> internal_subtrees(const dsl::Node& program) {
  std::vector<std::string> out;
  sexp(program, out);
  return out;
}

std::string_view site_kind_name(dsl::SiteKind k) {
  switch (k) {
    case dsl::SiteKind::assign: return "assign";
    case dsl::SiteKind::for_target: return "for_target";
    case dsl::SiteKind::param: return "param";
    case dsl::SiteKind::use: return "use";
    case dsl::SiteKind::unbound: return "unbound";
  }
  return "";
}

std::vector<std::string> normalized_edges(const dsl::Node& program) {
  std::map<std::string, std::string> rename;
  std::vector<std::string> out;
  for (const auto& e : dsl::extract_dataflow(program)) {
    auto it = rename.try_emplace(e.var, "var_" + std::to_string(rename.size())).first;
    out.push_back(it->second + "<-" + std::string(site_kind_name(e.def.kind)));
  }
  return out;
}

}  // namespace

std::optional<double> syntax_match(std::string_view hyp, std::string_view ref) {
  const auto rp = dsl::parse(ref);
  if (!rp.ok()) return std::nullopt;
  const auto ref_trees = internal_subtrees(*rp.program);
  if (ref_trees.empty()) return std::nullopt;
  const auto hp = dsl::parse(hyp);
  if (!hp.ok()) return 0.0;
  auto hyp_trees = internal_subtrees(*hp.program);
  std::sort(hyp_trees.begin(), hyp_trees.end());
  const auto found = std::count_if(ref_trees.begin(), ref_trees.end(), [&](const auto& t) {
    return std::binary_search(hyp_trees.begin(), hyp_trees.end(), t);
  });
  return static_cast<double>(found) / static_cast<double>(ref_trees.size());
}

std::optional<double> dataflow_match(std::string_view hyp, std::string_view ref) {
  const auto rp = dsl::parse(ref);
  if (!rp.ok()) return std::nullopt;
  const auto ref_edges = normalized_edges(*rp.program);
  if (ref_edges.empty()) return std::nullopt;
  const auto hp = dsl::parse(hyp);
  if (!hp.ok()) return 0.0;
  std::multiset<std::string> pool;
  for (auto& e : normalized_edges(*hp.program)) pool.insert(std::move(e));
  std::size_t found = 0;
  for (const auto& e : ref_edges) {
    if (auto it = pool.find(e); it != pool.end()) {
      pool.erase(it);
      ++found;
    }
  }
  return static_cast<double>(found) / static_cast<double>(ref_edges.size());
}

CodeBleuScore codebleu(std::string_view generated, std::string_view gold,
                       const CodeBleuWeights& w) {
  const std::array<double, 4> ws{w.ngram, w.weighted_ngram, w.syntax, w.dataflow};
  if (std::any_of(ws.begin(), ws.end(), [](double x) { return x < 0 || !std::isfinite(x); }) ||
      std::abs(std::accumulate(ws.begin(), ws.end(), 0.0) - 1.0) > 1e-9) {
    throw std::invalid_argument("codebleu: weights must be non-negative and sum to 1");
  }
  CodeBleuScore s;
  const auto hyp = code_tokens(generated);
  const auto ref = code_tokens(gold);
  if (!ref.empty()) {
    s.ngram = bleu(hyp, ref);
    s.weighted_ngram = weighted_bleu(hyp, ref);
  }
  s.syntax = syntax_match(generated, gold);
  s.dataflow = dataflow_match(generated, gold);

  const std::array<std::optional<double>, 4> parts{s.ngram, s.weighted_ngram, s.syntax,
                                                   s.dataflow};
  double total = 0;
  double weight = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!parts[i]) continue;
    total += ws[i] * *parts[i];
    weight += ws[i];
  }
  if (weight > 0) {
    s.score = std::clamp(total / weight, 0.0, 1.0);
  } else {
    // Nothing in the reference to match against: only an equally empty text scores.
    s.score = hyp.empty() ? 1.0 : 0.0;
  }
  return s;
}

// --- execution ---

ErrorCategory classify_error(const Board& executed, const Board& target) {
  if (executed.component_count() != target.component_count()) return ErrorCategory::mismatch_count;
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < kCols; ++c) {
      const Stack& a = executed.at(r, c);
      const Stack& b = target.at(r, c);
      if (a.empty() != b.empty()) return ErrorCategory::mismatch_location;
      const std::size_t common = std::min(a.size(), b.size());
      for (std::size_t i = 0; i < common; ++i) {
        if (a[i].shape != b[i].shape) return ErrorCategory::mismatch_shape;
        if (a[i].color != b[i].color) return ErrorCategory::mismatch_color;
      }
      if (a.size() != b.size()) return ErrorCategory::mismatch_location;
    }
  }
  throw std::invalid_argument("classify_error: boards are equal");
}

ExecutionResult execution_success(std::string_view generated, const Board& target) {
  auto out = dsl::run_source(generated);
  ExecutionResult res;
  res.executed = std::move(out.board);
  if (!out.success) {
    res.error = out.error;
    res.message = std::move(out.message);
    return res;
  }
  if (boards_equal(res.executed, target)) {
    res.es = 1;
    return res;
  }
  res.error = classify_error(res.executed, target);
  res.message = std::string(category_display(*res.error));
  return res;
}

// --- outcomes ---

EvalOutcome score_response(const BoardRecord& record, TaskKind task, std::string_view generated,
                           std::string_view model, InstructionStyle style) {
  const std::string& gold = gold_for_task(record, task);
  EvalOutcome o;
  o.record_id = record.id;
  o.board_type = record.board_type;
  o.object_type = record.object_type;
  o.task = task;
  o.style = style;
  o.model = std::string(model);
  o.generated = std::string(generated);
  o.em = exact_match(generated, gold);
  o.codebleu = codebleu(generated, gold);
  auto ex = execution_success(generated, record.target);
  o.es = ex.es;
  o.error = ex.error;
  o.error_message = std::move(ex.message);
  o.executed = std::move(ex.executed);
  return o;
}

namespace {

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> number_or_null(const nlohmann::json& j) {
  return j.is_null() ? std::nullopt : std::optional<double>(j.get<double>());
}

template <typename T, typename Parse>
T parse_enum(const nlohmann::json& j, Parse parse, const char* what) {
  auto v = parse(j.get<std::string>());
  if (!v) throw std::invalid_argument(std::string("unknown ") + what);
  return *v;
}

std::optional<BoardType> parse_board_type(std::string_view s) {
  if (s == board_type_name(BoardType::simple)) return BoardType::simple;
  if (s == board_type_name(BoardType::regular)) return BoardType::regular;
  return std::nullopt;
}

std::optional<ObjectType> parse_object_type(std::string_view s) {
  if (s == object_type_name(ObjectType::simple)) return ObjectType::simple;
  if (s == object_type_name(ObjectType::complex)) return ObjectType::complex;
  return std::nullopt;
}

}  // namespace

nlohmann::json outcome_to_json(const EvalOutcome& o) {
  nlohmann::json j;
  j["record_id"] = o.record_id;
  j["board_type"] = board_type_name(o.board_type);
  j["object_type"] = object_type_name(o.object_type);
  j["task"] = task_id(o.task);
  j["style"] = style_name(o.style);
  j["model"] = o.model;
  j["em"] = o.em;
  j["codebleu"] = {{"score", o.codebleu.score},
                   {"ngram", optional_number(o.codebleu.ngram)},
                   {"weighted_ngram", optional_number(o.codebleu.weighted_ngram)},
                   {"syntax", optional_number(o.codebleu.syntax)},
                   {"dataflow", optional_number(o.codebleu.dataflow)}};
  j["es"] = o.es;
  j["error"] = o.error ? nlohmann::json(category_id(*o.error)) : nlohmann::json(nullptr);
  j["error_message"] = o.error_message;
  j["generated"] = o.generated;
  j["executed"] = board_to_json(o.executed);
  return j;
}

EvalOutcome outcome_from_json(const nlohmann::json& j) {
  EvalOutcome o;
  o.record_id = j.at("record_id").get<std::string>();
  o.board_type = parse_enum<BoardType>(j.at("board_type"), parse_board_type, "board type");
  o.object_type = parse_enum<ObjectType>(j.at("object_type"), parse_object_type, "object type");
  o.task = parse_enum<TaskKind>(j.at("task"), parse_task, "task");
  o.style = parse_enum<InstructionStyle>(j.at("style"), parse_style, "style");
  o.model = j.at("model").get<std::string>();
  o.em = j.at("em").get<int>();
  const auto& cb = j.at("codebleu");
  o.codebleu.score = cb.at("score").get<double>();
  o.codebleu.ngram = number_or_null(cb.at("ngram"));
  o.codebleu.weighted_ngram = number_or_null(cb.at("weighted_ngram"));
  o.codebleu.syntax = number_or_null(cb.at("syntax"));
  o.codebleu.dataflow = number_or_null(cb.at("dataflow"));
  o.es = j.at("es").get<int>();
  if (!j.at("error").is_null()) {
    o.error = parse_enum<ErrorCategory>(j.at("error"), parse_category, "error category");
  }
  o.error_message = j.value("error_message", "");
  o.generated = j.value("generated", "");
  if (j.contains("executed")) o.executed = board_from_json(j.at("executed"));
  return o;
}

// --- aggregation ---

namespace {

int style_rank(InstructionStyle s) {
  switch (s) {
    case InstructionStyle::template_single:
    case InstructionStyle::template_multi: return static_cast<int>(s);
    case InstructionStyle::human_written: return 2;
    case InstructionStyle::model_generated: return 3;
  }
  return 0;
}

}  // namespace

ReportTable aggregate(const std::vector<EvalOutcome>& outcomes) {
  if (outcomes.empty()) throw std::invalid_argument("aggregate: no outcomes");
  std::vector<std::string> models;
  for (const auto& o : outcomes) {
    if (std::find(models.begin(), models.end(), o.model) == models.end()) models.push_back(o.model);
  }
  auto model_rank = [&](const std::string& m) {
    return std::find(models.begin(), models.end(), m) - models.begin();
  };
  auto key = [&](const EvalOutcome& o) {
    return std::make_tuple(style_rank(o.style), static_cast<int>(o.board_type),
                           static_cast<int>(o.object_type), static_cast<int>(o.task),
                           model_rank(o.model));
  };
  struct Sum {
    const EvalOutcome* first = nullptr;
    std::size_t n = 0;
    double em = 0, cb = 0, es = 0;
    std::map<ErrorCategory, std::size_t> errors;
  };
  std::map<decltype(key(outcomes.front())), Sum> cells;
  for (const auto& o : outcomes) {
    Sum& s = cells[key(o)];
    if (!s.first) s.first = &o;
    ++s.n;
    s.em += o.em;
    s.cb += o.codebleu.score;
    s.es += o.es;
    if (o.es == 0) ++s.errors[o.error.value_or(ErrorCategory::syntax)];
  }
  ReportTable t;
  for (const auto& [k, s] : cells) {
    const EvalOutcome& f = *s.first;
    const double n = static_cast<double>(s.n);
    t.rows.push_back({f.style, f.board_type, f.object_type, f.task, f.model, s.n, s.em / n,
                      s.cb / n, s.es / n});
  }
  // Error rows group by cell without the model, then list models per category.
  std::map<std::tuple<int, int, int, int, ErrorCategory, long>, ErrorRow> errs;
  for (const auto& [k, s] : cells) {
    const EvalOutcome& f = *s.first;
    for (const auto& [cat, count] : s.errors) {
      errs[{std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k), cat, std::get<4>(k)}] =
          ErrorRow{f.style, f.board_type, f.object_type, f.task, cat, f.model, count};
    }
  }
  for (auto& [k, e] : errs) t.errors.push_back(std::move(e));
  return t;
}

std::string style_display(InstructionStyle s) {
  switch (s) {
    case InstructionStyle::template_single: return "Template-based Instructions (single-turn)";
    case InstructionStyle::template_multi: return "Template-based Instructions (multi-turn)";
    case InstructionStyle::human_written: return "Human-written Instructions";
    case InstructionStyle::model_generated: return "Model-generated Instructions";
  }
  return "";
}

namespace {

std::string capitalized(std::string_view s) {
  std::string out(s);
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

std::string fixed2(double v) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(2) << v;
  return o.str();
}

std::string aligned(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()));
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i > 0) line += " | ";
      line += r[i] + std::string(width[i] - r[i].size(), ' ');
    }
    line.erase(line.find_last_not_of(' ') + 1);
    out += line + "\n";
  }
  return out;
}

}  // namespace

std::string render_report_text(const ReportTable& t) {
  std::string out;
  std::optional<InstructionStyle> current;
  std::vector<std::vector<std::string>> block;
  auto flush = [&] {
    if (!block.empty()) out += aligned(block) + "\n";
    block.clear();
  };
  for (const auto& r : t.rows) {
    if (current != r.style) {
      flush();
      current = r.style;
      out += style_display(r.style) + "\n";
      block.push_back({"Board Type", "Object Type", "Task", "Model", "N", "EM", "CB", "ES"});
    }
    block.push_back({capitalized(board_type_name(r.board_type)),
                     capitalized(object_type_name(r.object_type)), std::string(task_display(r.task)),
                     r.model, std::to_string(r.n), fixed2(r.em), fixed2(r.cb), fixed2(r.es)});
  }
  flush();
  if (!t.errors.empty()) {
    out += "Errors\n";
    block.push_back({"Instructions", "Board Type", "Object Type", "Task", "Error Category", "Model",
                     "Count"});
    for (const auto& e : t.errors) {
      block.push_back({style_display(e.style), capitalized(board_type_name(e.board_type)),
                       capitalized(object_type_name(e.object_type)),
                       std::string(task_display(e.task)),
                       std::string(category_display(e.category)), e.model,
                       std::to_string(e.count)});
    }
    flush();
  }
  return out;
}

nlohmann::json report_to_json(const ReportTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"style", style_name(r.style)},
                    {"board_type", board_type_name(r.board_type)},
                    {"object_type", object_type_name(r.object_type)},
                    {"task", task_id(r.task)},
                    {"model", r.model},
                    {"n", r.n},
                    {"em", r.em},
                    {"cb", r.cb},
                    {"es", r.es}});
  }
  nlohmann::json errors = nlohmann::json::array();
  for (const auto& e : t.errors) {
    errors.push_back({{"style", style_name(e.style)},
                      {"board_type", board_type_name(e.board_type)},
                      {"object_type", object_type_name(e.object_type)},
                      {"task", task_id(e.task)},
                      {"category", category_id(e.category)},
                      {"model", e.model},
                      {"count", e.count}});
  }
  return {{"rows", rows}, {"errors", errors}};
}

}  // namespace sartco
