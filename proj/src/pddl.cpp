#include "pddl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace skillforge::pddl {

namespace {

struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  int line = 1;
  int column = 1;
};

struct AnnexLine {
  std::vector<std::string> words;
  int line;
  int column;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  SExpr read_document() {
    skip_space();
    if (pos_ >= text_.size()) throw SyntaxError("empty document", line_, col_);
    SExpr root = read_expr();
    skip_space();
    if (pos_ < text_.size()) throw SyntaxError("trailing input after document", line_, col_);
    return root;
  }

  std::vector<AnnexLine> annex() const { return annex_; }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        int line = line_, col = col_;
        std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        record_annex(text_.substr(start, pos_ - start), line, col);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void record_annex(std::string_view comment, int line, int col) {
    std::size_t i = 0;
    while (i < comment.size() && comment[i] == ';') ++i;
    std::istringstream in{std::string(comment.substr(i))};
    AnnexLine a{{}, line, col};
    std::string w;
    while (in >> w) a.words.push_back(w);
    if (!a.words.empty() && a.words[0].size() > 1 && a.words[0][0] == ':') annex_.push_back(a);
  }

  SExpr read_expr() {
    SExpr e;
    e.line = line_;
    e.column = col_;
    char c = text_[pos_];
    if (c == ')') throw SyntaxError("unexpected ')'", line_, col_);
    if (c == '(') {
      e.is_list = true;
      advance();
      while (true) {
        skip_space();
        if (pos_ >= text_.size()) throw SyntaxError("unterminated list", e.line, e.column);
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        e.items.push_back(read_expr());
      }
      return e;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';') break;
      advance();
    }
    e.atom = lower(text_.substr(start, pos_ - start));
    return e;
  }

  static std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  std::vector<AnnexLine> annex_;
};

[[noreturn]] void fail(const SExpr& at, const std::string& msg) {
  throw SyntaxError(msg, at.line, at.column);
}

const std::string& atom_of(const SExpr& e, const char* what) {
  if (e.is_list || e.atom.empty()) fail(e, std::string("expected ") + what);
  return e.atom;
}

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '?' ||
          c == '.'))
      return false;
  }
  return true;
}

const SExpr& expect_list(const SExpr& e, const char* what) {
  if (!e.is_list) fail(e, std::string("expected ") + what);
  return e;
}

bool is_keyword_list(const SExpr& e, const std::string& kw) {
  return e.is_list && !e.items.empty() && !e.items[0].is_list && e.items[0].atom == kw;
}

// Parses "a b - t c - u d" into (name, type) pairs; untyped names get "object".
std::vector<std::pair<std::string, std::string>> typed_list(const std::vector<SExpr>& items,
                                                            std::size_t begin) {
  std::vector<std::pair<std::string, std::string>> out;
  std::vector<std::string> pending;
  for (std::size_t i = begin; i < items.size(); ++i) {
    const SExpr& e = items[i];
    const std::string& a = atom_of(e, "name");
    if (a == "-") {
      if (i + 1 >= items.size()) fail(e, "missing type after '-'");
      const SExpr& t = items[i + 1];
      if (t.is_list) fail(t, "'either' types are not supported");
      for (auto& p : pending) out.emplace_back(p, t.atom);
      pending.clear();
      ++i;
    } else {
      if (!is_identifier(a)) fail(e, "invalid identifier '" + a + "'");
      pending.push_back(a);
    }
  }
  for (auto& p : pending) out.emplace_back(p, kRootType);
  return out;
}

Vec3 parse_vec(const AnnexLine& a, std::size_t at) {
  if (a.words.size() < at + 3) throw SyntaxError("expected three coordinates", a.line, a.column);
  auto num = [&](const std::string& w) {
    double v = 0;
    auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || p != w.data() + w.size()) {
      throw SyntaxError("invalid number '" + w + "'", a.line, a.column);
    }
    return v;
  };
  return {num(a.words[at]), num(a.words[at + 1]), num(a.words[at + 2])};
}

const std::set<std::string> kSupportedRequirements = {":strips", ":typing",
                                                      ":negative-preconditions", ":equality"};

class LiteralParser {
 public:
  LiteralParser(const std::map<std::string, PredicateSchema>& predicates,
                const std::set<std::string>* variables)
      : predicates_(predicates), variables_(variables) {}

  std::vector<ParamLiteral> conjunction(const SExpr& e) const {
    expect_list(e, "formula");
    std::vector<ParamLiteral> out;
    if (e.items.empty()) return out;
    if (is_keyword_list(e, "and")) {
      for (std::size_t i = 1; i < e.items.size(); ++i) out.push_back(literal(e.items[i]));
    } else {
      out.push_back(literal(e));
    }
    return out;
  }

  ParamLiteral literal(const SExpr& e) const {
    expect_list(e, "literal");
    if (is_keyword_list(e, "not")) {
      if (e.items.size() != 2) fail(e, "'not' takes one argument");
      ParamLiteral l = positive(e.items[1]);
      l.positive = false;
      return l;
    }
    return positive(e);
  }

 private:
  ParamLiteral positive(const SExpr& e) const {
    expect_list(e, "atom");
    if (e.items.empty()) fail(e, "empty atom");
    ParamLiteral l;
    l.predicate = atom_of(e.items[0], "predicate name");
    if (l.predicate == "and" || l.predicate == "or" || l.predicate == "forall" ||
        l.predicate == "exists" || l.predicate == "when" || l.predicate == "imply") {
      fail(e.items[0], "unsupported connective '" + l.predicate + "'");
    }
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      const std::string& t = atom_of(e.items[i], "term");
      if (variables_ && is_variable(t) && !variables_->count(t)) {
        fail(e.items[i], "undeclared variable " + t);
      }
      l.terms.push_back(t);
    }
    if (l.predicate == "=") {
      if (l.terms.size() != 2) fail(e, "'=' takes two terms");
      return l;
    }
    auto it = predicates_.find(l.predicate);
    if (it == predicates_.end()) {
      throw Error(ErrorCode::kUnknownPredicate, std::to_string(e.line) + ":" +
                                                    std::to_string(e.column) +
                                                    ": unknown predicate " + l.predicate);
    }
    if (it->second.params.size() != l.terms.size()) {
      throw Error(ErrorCode::kArityMismatch, std::to_string(e.line) + ":" +
                                                 std::to_string(e.column) + ": " + l.predicate +
                                                 " expects " +
                                                 std::to_string(it->second.params.size()) +
                                                 " arguments");
    }
    return l;
  }

  const std::map<std::string, PredicateSchema>& predicates_;
  const std::set<std::string>* variables_;
};

void check_header(const SExpr& root, const char* kind, std::string& name) {
  expect_list(root, "(define ...)");
  if (!is_keyword_list(root, "define")) fail(root, "expected (define ...)");
  if (root.items.size() < 2 || !is_keyword_list(root.items[1], kind) ||
      root.items[1].items.size() != 2) {
    fail(root, std::string("expected (") + kind + " <name>)");
  }
  name = atom_of(root.items[1].items[1], "name");
}

}  // namespace

DomainFragment parse_domain(std::string_view text) {
  Reader reader(text);
  SExpr root = reader.read_document();
  DomainFragment d;
  check_header(root, "domain", d.name);

  bool saw_types = false;
  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const SExpr& sec = expect_list(root.items[i], "section");
    if (sec.items.empty()) fail(sec, "empty section");
    const std::string& kw = atom_of(sec.items[0], "section keyword");
    if (kw == ":requirements") {
      for (std::size_t j = 1; j < sec.items.size(); ++j) {
        const std::string& r = atom_of(sec.items[j], "requirement");
        if (!kSupportedRequirements.count(r)) {
          throw Error(ErrorCode::kUnsupportedRequirement,
                      std::to_string(sec.items[j].line) + ":" + std::to_string(sec.items[j].column) +
                          ": unsupported requirement " + r);
        }
      }
    } else if (kw == ":types") {
      saw_types = true;
      auto pairs = typed_list(sec.items, 1);
      // Declare all names first so forward references resolve.
      std::set<std::string> declared{kRootType};
      for (auto& [t, _] : pairs) declared.insert(t);
      for (auto& [t, p] : pairs) {
        if (!declared.count(p)) {
          throw Error(ErrorCode::kUndeclaredType, "type " + t + " has undeclared parent " + p);
        }
      }
      // Insert in dependency order.
      std::vector<std::pair<std::string, std::string>> todo = pairs;
      while (!todo.empty()) {
        std::size_t before = todo.size();
        for (auto it = todo.begin(); it != todo.end();) {
          if (it->first == kRootType) {
            it = todo.erase(it);
          } else if (d.types.contains(it->second)) {
            d.types.add(it->first, it->second);
            it = todo.erase(it);
          } else {
            ++it;
          }
        }
        if (todo.size() == before) fail(sec, "cyclic type declaration");
      }
    } else if (kw == ":predicates") {
      for (std::size_t j = 1; j < sec.items.size(); ++j) {
        const SExpr& p = expect_list(sec.items[j], "predicate declaration");
        if (p.items.empty()) fail(p, "empty predicate declaration");
        PredicateSchema schema;
        schema.name = atom_of(p.items[0], "predicate name");
        if (!is_identifier(schema.name)) fail(p.items[0], "invalid predicate name");
        std::set<std::string> seen;
        for (auto& [var, type] : typed_list(p.items, 1)) {
          if (!is_variable(var)) fail(p, "predicate parameter must be a variable");
          if (!seen.insert(var).second) fail(p, "duplicate parameter " + var);
          if (!d.types.contains(type)) {
            throw Error(ErrorCode::kUndeclaredType, "predicate " + schema.name + ": type " + type);
          }
          schema.params.push_back({var, type});
        }
        d.predicates[schema.name] = schema;
      }
    } else if (kw == ":action") {
      if (sec.items.size() < 2) fail(sec, "action without name");
      ActionSchema a;
      a.name = atom_of(sec.items[1], "action name");
      if (d.actions.count(a.name)) fail(sec.items[1], "duplicate action " + a.name);
      std::set<std::string> vars;
      const SExpr* pre = nullptr;
      const SExpr* eff = nullptr;
      for (std::size_t j = 2; j < sec.items.size(); j += 2) {
        const std::string& key = atom_of(sec.items[j], "action keyword");
        if (j + 1 >= sec.items.size()) fail(sec.items[j], "missing value for " + key);
        const SExpr& val = sec.items[j + 1];
        if (key == ":parameters") {
          expect_list(val, "parameter list");
          for (auto& [var, type] : typed_list(val.items, 0)) {
            if (!is_variable(var)) fail(val, "parameter must be a variable");
            if (!vars.insert(var).second) fail(val, "duplicate parameter " + var);
            if (!d.types.contains(type)) {
              throw Error(ErrorCode::kUndeclaredType, "action " + a.name + ": type " + type);
            }
            a.params.push_back({var, type});
          }
        } else if (key == ":precondition") {
          pre = &val;
        } else if (key == ":effect") {
          eff = &val;
        } else {
          fail(sec.items[j], "unsupported action keyword " + key);
        }
      }
      LiteralParser lp(d.predicates, &vars);
      if (pre) a.pre = lp.conjunction(*pre);
      if (eff) {
        a.eff = lp.conjunction(*eff);
        for (const auto& l : a.eff) {
          if (l.predicate == "=") fail(*eff, "equality cannot be an effect");
        }
      }
      a.normalize();
      d.actions[a.name] = a;
    } else {
      fail(sec.items[0], "unsupported section " + kw);
    }
  }
  (void)saw_types;

  for (const auto& an : reader.annex()) {
    const auto& w = an.words;
    auto need = [&](std::size_t n) {
      if (w.size() < n) throw SyntaxError("malformed annex line " + w[0], an.line, an.column);
    };
    if (w[0] == ":skill") {
      need(3);
      auto it = d.actions.find(w[1]);
      if (it == d.actions.end()) throw SyntaxError("annex names unknown action", an.line, an.column);
      it->second.kind = ActionKind::kBasic;
      it->second.skill = w[2];
    } else if (w[0] == ":expansion") {
      need(3);
      auto it = d.actions.find(w[1]);
      if (it == d.actions.end()) throw SyntaxError("annex names unknown action", an.line, an.column);
      ExpansionStep step;
      step.action = w[2];
      std::size_t k = 3;
      for (; k < w.size() && w[k][0] != ':'; ++k) step.args.push_back(w[k]);
      while (k < w.size()) {
        if (w[k] == ":displacement") {
          step.extra.displacement = parse_vec(an, k + 1);
          k += 4;
        } else if (w[k] == ":orientation" && k + 1 < w.size()) {
          if (w[k + 1] == "lying") {
            step.extra.orientation = Orientation::kLying;
          } else if (w[k + 1] == "upright") {
            step.extra.orientation = Orientation::kUpright;
          } else {
            throw SyntaxError("unknown orientation " + w[k + 1], an.line, an.column);
          }
          k += 2;
        } else {
          throw SyntaxError("unknown expansion option " + w[k], an.line, an.column);
        }
      }
      it->second.kind = ActionKind::kMeta;
      it->second.skill.clear();
      it->second.expansion.push_back(step);
    } else if (w[0] == ":parent") {
      need(3);
      if (!d.types.contains(w[1]) || !d.types.contains(w[2])) {
        throw Error(ErrorCode::kUndeclaredType, "annex parent refers to undeclared type");
      }
      d.types.add(w[1], w[2]);
    } else if (w[0] == ":entity-type") {
      need(3);
      if (!d.types.contains(w[2])) {
        throw Error(ErrorCode::kUndeclaredType, "annex entity type " + w[2] + " undeclared");
      }
      d.entity_types[w[1]].insert(w[2]);
    } else if (w[0] == ":location") {
      need(5);
      d.locations[w[1]] = parse_vec(an, 2);
    } else {
      throw SyntaxError("unknown annex keyword " + w[0], an.line, an.column);
    }
  }
  for (const auto& [name, a] : d.actions) {
    for (const auto& step : a.expansion) {
      auto it = d.actions.find(step.action);
      if (it == d.actions.end() || it->second.is_meta()) {
        throw Error(ErrorCode::kInvalidTask, "meta-action " + name + " expands to non-basic " +
                                                 step.action);
      }
    }
  }
  return d;
}

ProblemFragment parse_problem(std::string_view text, const DomainFragment& domain) {
  Reader reader(text);
  SExpr root = reader.read_document();
  ProblemFragment p;
  check_header(root, "problem", p.name);

  auto check_entities = [&](const Literal& l, const SExpr& at) {
    for (const auto& a : l.atom.args) {
      if (is_variable(a)) fail(at, "variables are not allowed in problems");
      if (!p.entities.count(a)) {
        throw Error(ErrorCode::kUnknownEntity, std::to_string(at.line) + ":" +
                                                   std::to_string(at.column) +
                                                   ": unknown entity " + a);
      }
    }
  };
  LiteralParser lp(domain.predicates, nullptr);

  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const SExpr& sec = expect_list(root.items[i], "section");
    if (sec.items.empty()) fail(sec, "empty section");
    const std::string& kw = atom_of(sec.items[0], "section keyword");
    if (kw == ":domain") {
      if (sec.items.size() != 2) fail(sec, "expected (:domain <name>)");
      p.domain = atom_of(sec.items[1], "domain name");
    } else if (kw == ":objects") {
      for (auto& [name, type] : typed_list(sec.items, 1)) {
        if (!domain.types.contains(type)) {
          throw Error(ErrorCode::kUndeclaredType, "object " + name + " has undeclared type " + type);
        }
        p.entities[name].insert(type);
      }
    } else if (kw == ":init") {
      for (std::size_t j = 1; j < sec.items.size(); ++j) {
        ParamLiteral l = lp.literal(sec.items[j]);
        if (!l.positive || l.predicate == "=") fail(sec.items[j], "init atoms must be positive");
        Literal g{{l.predicate, l.terms}, true};
        check_entities(g, sec.items[j]);
        p.init.insert(g.atom);
      }
    } else if (kw == ":goal") {
      if (sec.items.size() != 2) fail(sec, "expected one goal formula");
      for (const auto& l : lp.conjunction(sec.items[1])) {
        if (l.predicate == "=") fail(sec.items[1], "equality goals are not supported");
        Literal g{{l.predicate, l.terms}, l.positive};
        check_entities(g, sec.items[1]);
        p.goal.push_back(g);
      }
    } else {
      fail(sec.items[0], "unsupported section " + kw);
    }
  }
  std::sort(p.goal.begin(), p.goal.end());
  p.goal.erase(std::unique(p.goal.begin(), p.goal.end()), p.goal.end());

  for (const auto& an : reader.annex()) {
    const auto& w = an.words;
    if (w[0] == ":types") {
      if (w.size() < 3) throw SyntaxError("malformed :types annex", an.line, an.column);
      if (!p.entities.count(w[1])) throw Error(ErrorCode::kUnknownEntity, "unknown entity " + w[1]);
      std::set<std::string> ts;
      for (std::size_t k = 2; k < w.size(); ++k) {
        if (!domain.types.contains(w[k])) {
          throw Error(ErrorCode::kUndeclaredType, "annex type " + w[k] + " undeclared");
        }
        ts.insert(w[k]);
      }
      p.entities[w[1]] = ts;
    } else if (w[0] == ":location") {
      if (w.size() < 5) throw SyntaxError("malformed :location annex", an.line, an.column);
      p.locations[w[1]] = parse_vec(an, 2);
    } else {
      throw SyntaxError("unknown annex keyword " + w[0], an.line, an.column);
    }
  }
  return p;
}

PlanningTask make_task(const DomainFragment& domain, const ProblemFragment& problem) {
  PlanningTask t;
  t.domain_name = domain.name;
  t.problem_name = problem.name;
  t.types = domain.types;
  t.predicates = domain.predicates;
  t.actions = domain.actions;
  t.entities = problem.entities;
  t.init = problem.init;
  t.goal = problem.goal;
  t.locations = problem.locations;
  for (const auto& [entity, types] : domain.entity_types) {
    auto it = t.entities.find(entity);
    if (it != t.entities.end()) {
      it->second.insert(types.begin(), types.end());
    } else if (auto loc = domain.locations.find(entity); loc != domain.locations.end()) {
      t.entities[entity] = types;
      t.locations[entity] = loc->second;
    }
  }
  t.normalize();
  return t;
}

DomainFragment domain_of(const PlanningTask& task) {
  DomainFragment d;
  d.name = task.domain_name;
  d.types = task.types;
  d.predicates = task.predicates;
  d.actions = task.actions;
  for (const auto& [entity, types] : task.entities) {
    if (types.size() < 2) continue;
    d.entity_types[entity] = types;
    if (auto it = task.locations.find(entity); it != task.locations.end()) {
      d.locations[entity] = it->second;
    }
  }
  return d;
}

ProblemFragment problem_of(const PlanningTask& task) {
  ProblemFragment p;
  p.name = task.problem_name;
  p.domain = task.domain_name;
  p.entities = task.entities;
  p.init = task.init;
  p.goal = task.goal;
  p.locations = task.locations;
  return p;
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

namespace {

std::string format_literal(const ParamLiteral& l) {
  std::string s = "(" + l.predicate;
  for (const auto& t : l.terms) s += " " + t;
  s += ")";
  return l.positive ? s : "(not " + s + ")";
}

std::string format_conjunction(const std::vector<ParamLiteral>& lits) {
  if (lits.empty()) return "(and)";
  std::string s = "(and";
  for (const auto& l : lits) s += " " + format_literal(l);
  return s + ")";
}

std::string format_params(const std::vector<TypedParam>& params) {
  std::string s;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) s += " ";
    s += params[i].name + " - " + params[i].type;
  }
  return s;
}

std::string format_vec(const Vec3& v) {
  return format_number(v.x) + " " + format_number(v.y) + " " + format_number(v.z);
}

}  // namespace

std::string serialize_domain(const DomainFragment& d) {
  std::ostringstream out;
  out << "(define (domain " << d.name << ")\n";
  out << "  (:requirements :strips :typing :negative-preconditions :equality)\n";
  out << "  (:types\n";
  std::vector<std::string> extra_parents;
  for (const auto& [type, parents] : d.types.edges()) {
    if (type == kRootType) continue;
    auto it = parents.begin();
    out << "    " << type << " - " << *it << "\n";
    for (++it; it != parents.end(); ++it) {
      extra_parents.push_back(";; :parent " + type + " " + *it);
    }
  }
  out << "  )\n";
  for (const auto& line : extra_parents) out << "  " << line << "\n";
  out << "  (:predicates\n";
  for (const auto& [name, schema] : d.predicates) {
    out << "    (" << name;
    if (!schema.params.empty()) out << " " << format_params(schema.params);
    out << ")\n";
  }
  out << "  )\n";
  for (const auto& [name, a] : d.actions) {
    if (a.is_meta()) {
      for (const auto& step : a.expansion) {
        out << "  ;; :expansion " << name << " " << step.action;
        for (const auto& arg : step.args) out << " " << arg;
        if (step.extra.displacement) out << " :displacement " << format_vec(*step.extra.displacement);
        if (step.extra.orientation) {
          out << " :orientation "
              << (*step.extra.orientation == Orientation::kLying ? "lying" : "upright");
        }
        out << "\n";
      }
    } else if (!a.skill.empty()) {
      out << "  ;; :skill " << name << " " << a.skill << "\n";
    }
    out << "  (:action " << name << "\n";
    out << "    :parameters (" << format_params(a.params) << ")\n";
    out << "    :precondition " << format_conjunction(a.pre) << "\n";
    out << "    :effect " << format_conjunction(a.eff) << ")\n";
  }
  for (const auto& [entity, types] : d.entity_types) {
    for (const auto& t : types) out << "  ;; :entity-type " << entity << " " << t << "\n";
  }
  for (const auto& [entity, loc] : d.locations) {
    out << "  ;; :location " << entity << " " << format_vec(loc) << "\n";
  }
  out << ")\n";
  return out.str();
}

std::string serialize_problem(const ProblemFragment& p) {
  std::ostringstream out;
  out << "(define (problem " << p.name << ")\n";
  out << "  (:domain " << p.domain << ")\n";
  out << "  (:objects\n";
  for (const auto& [name, types] : p.entities) {
    out << "    " << name << " - " << *types.begin() << "\n";
  }
  out << "  )\n";
  out << "  (:init\n";
  for (const auto& a : p.init) out << "    " << to_string(a) << "\n";
  out << "  )\n";
  out << "  (:goal (and";
  for (const auto& l : p.goal) out << " " << to_string(l);
  out << "))\n";
  out << ")\n";
  for (const auto& [name, types] : p.entities) {
    if (types.size() < 2) continue;
    out << ";; :types " << name;
    for (const auto& t : types) out << " " << t;
    out << "\n";
  }
  for (const auto& [name, loc] : p.locations) {
    out << ";; :location " << name << " " << format_vec(loc) << "\n";
  }
  return out.str();
}

std::string serialize_domain(const PlanningTask& task) { return serialize_domain(domain_of(task)); }
std::string serialize_problem(const PlanningTask& task) {
  return serialize_problem(problem_of(task));
}
std::string serialize(const PlanningTask& task) {
  return serialize_domain(task) + "\n" + serialize_problem(task);
}

PlanningTask parse_task(std::string_view domain_text, std::string_view problem_text) {
  DomainFragment d = parse_domain(domain_text);
  ProblemFragment p = parse_problem(problem_text, d);
  PlanningTask t = make_task(d, p);
  t.validate();
  return t;
}

}  // namespace skillforge::pddl
