#include <algorithm>
#include <map>

#include "sartco/dsl.hpp"

namespace sartco::dsl {

namespace {

using Scope = std::map<std::string, Site>;

class DataflowWalker {
 public:
  std::vector<DataflowEdge> run(const Node& program) {
    scopes_.emplace_back();
    block(program);
    std::sort(edges_.begin(), edges_.end(), [](const DataflowEdge& a, const DataflowEdge& b) {
      if (a.use.loc != b.use.loc) return a.use.loc < b.use.loc;
      return a.var < b.var;
    });
    return std::move(edges_);
  }

 private:
  void block(const Node& b) {
    for (const Node& s : b.children) statement(s);
  }

  void statement(const Node& s) {
    switch (s.kind) {
      case NodeKind::FunctionDef: {
        Scope local;
        for (const Node& p : s.children[0].children) {
          local[p.text] = Site{SiteKind::param, p.loc};
        }
        scopes_.push_back(std::move(local));
        block(s.children[1]);
        scopes_.pop_back();
        break;
      }
      case NodeKind::For:
        expr(s.children[1]);
        for (const Node& t : s.children[0].children) {
          scopes_.back()[t.text] = Site{SiteKind::for_target, t.loc};
        }
        block(s.children[2]);
        break;
      case NodeKind::If:
        expr(s.children[0]);
        block(s.children[1]);
        break;
      case NodeKind::Assign:
        expr(s.children[0]);
        scopes_.back()[s.text] = Site{SiteKind::assign, s.loc};
        break;
      case NodeKind::Call:
        for (const Node& a : s.children) expr(a);
        break;
      default:
        break;
    }
  }

  void expr(const Node& e) {
    if (e.kind == NodeKind::Name) {
      edges_.push_back(DataflowEdge{e.text, resolve(e.text), Site{SiteKind::use, e.loc}});
      return;
    }
    for (const Node& c : e.children) expr(c);
  }

  Site resolve(const std::string& name) const {
    if (auto it = scopes_.back().find(name); it != scopes_.back().end()) return it->second;
    if (scopes_.size() > 1) {
      if (auto it = scopes_.front().find(name); it != scopes_.front().end()) return it->second;
    }
    return Site{SiteKind::unbound, {}};
  }

  std::vector<Scope> scopes_;
  std::vector<DataflowEdge> edges_;
};

}  // namespace

std::vector<DataflowEdge> extract_dataflow(const Node& program) {
  return DataflowWalker{}.run(program);
}

}  // namespace sartco::dsl
