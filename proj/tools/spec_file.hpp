#pragma once

#include <yaml-cpp/yaml.h>

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "descent/fincat.hpp"
#include "descent/finset.hpp"
#include "descent/label.hpp"
#include "descent/table_diagrams.hpp"

namespace descent::cli {

/// A parse or reference error; `line` is 1-based, 0 when unknown.
class SpecError : public std::runtime_error {
 public:
  SpecError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

template <class T>
struct Named {
  std::string name;
  T value;
  std::size_t line = 0;
};

struct FunctorDecl {
  std::string source, target;
  FunctorTable table;
};

struct TransformationDecl {
  std::string source, target;  // functor names
  std::map<std::string, std::string> components;
};

struct DiagramDecl {
  TableDiagram diagram;
  std::size_t line = 0;
};

struct Task {
  std::string command;
  std::optional<std::string> map;
  std::optional<std::size_t> bound;
};

struct SpecFile {
  std::optional<std::string> note;
  std::vector<Named<FinSet>> sets;
  std::vector<Named<FinFunction>> functions;
  std::vector<Named<FinCategory>> categories;
  std::vector<Named<FunctorDecl>> functors;
  std::vector<Named<TransformationDecl>> transformations;
  std::optional<DiagramDecl> diagram;
  std::optional<Task> task;

  template <class T>
  static const T* lookup(const std::vector<Named<T>>& xs, const std::string& name) {
    for (const auto& x : xs)
      if (x.name == name) return &x.value;
    return nullptr;
  }
  const FinSet* set(const std::string& n) const { return lookup(sets, n); }
  const FinFunction* function(const std::string& n) const { return lookup(functions, n); }
  const FinCategory* category(const std::string& n) const { return lookup(categories, n); }
  const FunctorDecl* functor(const std::string& n) const { return lookup(functors, n); }
};

inline const std::vector<std::string>& section_order() {
  static const std::vector<std::string> order = {"note",    "sets",           "functions", "categories",
                                                 "functors", "transformations", "diagram",   "task"};
  return order;
}

inline const std::vector<std::string>& task_commands() {
  static const std::vector<std::string> commands = {"classify", "br", "validate"};
  return commands;
}

namespace detail {

inline std::size_t line_of(const YAML::Node& n) {
  const auto m = n.Mark();
  return m.is_null() ? 0 : static_cast<std::size_t>(m.line) + 1;
}

[[noreturn]] inline void fail(const YAML::Node& n, const std::string& what) { throw SpecError(line_of(n), what); }

inline std::string scalar(const YAML::Node& n, const std::string& what) {
  if (!n.IsScalar()) fail(n, what + " must be a scalar");
  return n.Scalar();
}

inline std::string identifier(const YAML::Node& n, const std::string& what) {
  auto s = scalar(n, what);
  if (s.empty()) fail(n, what + " is empty");
  return s;
}

inline std::string label(const YAML::Node& n, const std::string& what) {
  auto s = scalar(n, what);
  if (!is_valid_label(s)) fail(n, what + " '" + s + "' is not a valid label");
  return s;
}

inline void expect_map(const YAML::Node& n, const std::string& what) {
  if (!n.IsMap()) fail(n, what + " must be a mapping");
}

inline void expect_seq(const YAML::Node& n, const std::string& what) {
  if (!n.IsSequence()) fail(n, what + " must be a list");
}

// Rejects keys outside `allowed` and reports missing `required` ones.
inline void check_keys(const YAML::Node& n, const std::string& what, const std::set<std::string>& allowed,
                       const std::set<std::string>& required) {
  expect_map(n, what);
  std::set<std::string> seen;
  for (const auto& kv : n) {
    const auto k = scalar(kv.first, "key");
    if (!allowed.count(k)) fail(kv.first, "unknown key '" + k + "' in " + what);
    if (!seen.insert(k).second) fail(kv.first, "duplicate key '" + k + "' in " + what);
  }
  for (const auto& r : required)
    if (!seen.count(r)) fail(n, what + " lacks '" + r + "'");
}

template <class T>
void declare(std::vector<Named<T>>& xs, const YAML::Node& key, T value, const std::string& kind) {
  const auto name = identifier(key, kind + " name");
  for (const auto& x : xs)
    if (x.name == name) fail(key, kind + " '" + name + "' declared twice");
  xs.push_back({name, std::move(value), line_of(key)});
}

inline FinSet parse_set(const YAML::Node& n, const std::string& name) {
  expect_seq(n, "set " + name);
  std::vector<std::string> labels;
  std::set<std::string> seen;
  for (const auto& e : n) {
    auto l = label(e, "element of " + name);
    if (!seen.insert(l).second) fail(e, "duplicate element '" + l + "' in set " + name);
    labels.push_back(std::move(l));
  }
  return FinSet(std::move(labels));
}

inline FinFunction parse_function(const SpecFile& s, const YAML::Node& n, const std::string& name) {
  check_keys(n, "function " + name, {"from", "to", "map"}, {"from", "to", "map"});
  const auto from = identifier(n["from"], "from"), to = identifier(n["to"], "to");
  const auto* dom = s.set(from);
  const auto* cod = s.set(to);
  if (!dom) fail(n["from"], "set '" + from + "' is not declared");
  if (!cod) fail(n["to"], "set '" + to + "' is not declared");
  const auto& m = n["map"];
  if (!(m.IsMap() || (m.IsSequence() && m.size() == 0)))
    fail(m, "map of " + name + " must be a mapping");
  std::vector<std::size_t> image(dom->size(), Pullback::npos);
  for (const auto& kv : m) {
    const auto x = label(kv.first, "argument"), y = label(kv.second, "value");
    const auto i = dom->index_of(x);
    const auto j = cod->index_of(y);
    if (!i) fail(kv.first, "'" + x + "' is not an element of " + from);
    if (!j) fail(kv.second, "'" + y + "' is not an element of " + to);
    if (image[*i] != Pullback::npos) fail(kv.first, "'" + x + "' mapped twice in " + name);
    image[*i] = *j;
  }
  for (std::size_t i = 0; i < image.size(); ++i)
    if (image[i] == Pullback::npos) fail(m, name + " is undefined on '" + dom->label(i) + "'");
  return make_function(*dom, *cod, std::move(image));
}

inline std::vector<std::string> string_list(const YAML::Node& n, const std::string& what) {
  expect_seq(n, what);
  std::vector<std::string> out;
  for (const auto& e : n) out.push_back(identifier(e, "entry of " + what));
  return out;
}

// With an `identities` key the table is taken literally; otherwise identities
// id_<x> and their composites are added.
inline FinCategory parse_category(const YAML::Node& n, const std::string& name) {
  check_keys(n, "category " + name, {"objects", "arrows", "identities", "compose"}, {"objects"});
  const auto objects = string_list(n["objects"], "objects of " + name);
  std::vector<MorphismEntry> arrows;
  if (n["arrows"]) {
    const auto& a = n["arrows"];
    if (!(a.IsMap() || (a.IsSequence() && a.size() == 0))) fail(a, "arrows of " + name + " must be a mapping");
    for (const auto& kv : a) {
      const auto id = identifier(kv.first, "arrow");
      const auto ends = string_list(kv.second, "endpoints of " + id);
      if (ends.size() != 2) fail(kv.second, "arrow " + id + " needs [source, target]");
      arrows.push_back({id, ends[0], ends[1]});
    }
  }
  std::vector<std::tuple<std::string, std::string, std::string>> composites;
  if (n["compose"]) {
    expect_seq(n["compose"], "compose of " + name);
    for (const auto& e : n["compose"]) {
      const auto t = string_list(e, "composite");
      if (t.size() != 3) fail(e, "composite needs [g, f, g∘f]");
      composites.emplace_back(t[0], t[1], t[2]);
    }
  }
  if (!n["identities"]) return make_category(name, objects, arrows, composites);
  FinCategory c;
  c.name = name;
  c.objects = objects;
  c.morphisms = arrows;
  check_keys(n["identities"], "identities of " + name, {objects.begin(), objects.end()}, {});
  for (const auto& kv : n["identities"]) {
    const auto o = kv.first.Scalar(), id = identifier(kv.second, "identity");
    c.identity[o] = id;
    if (!c.find(id)) c.morphisms.insert(c.morphisms.begin() + static_cast<std::ptrdiff_t>(c.identity.size() - 1), {id, o, o});
  }
  for (const auto& [g, f, h] : composites) c.compose[{g, f}] = h;
  return c;
}

inline FunctorDecl parse_functor(const SpecFile& s, const YAML::Node& n, const std::string& name) {
  check_keys(n, "functor " + name, {"from", "to", "objects", "arrows"}, {"from", "to", "objects"});
  FunctorDecl f{identifier(n["from"], "from"), identifier(n["to"], "to"), {name, {}, {}}};
  const auto* src = s.category(f.source);
  const auto* tgt = s.category(f.target);
  if (!src) fail(n["from"], "category '" + f.source + "' is not declared");
  if (!tgt) fail(n["to"], "category '" + f.target + "' is not declared");
  const auto& objs = n["objects"];
  if (!(objs.IsMap() || (objs.IsSequence() && objs.size() == 0))) fail(objs, "objects of " + name + " must be a mapping");
  for (const auto& kv : objs) f.table.objects[identifier(kv.first, "object")] = identifier(kv.second, "object");
  if (n["arrows"]) {
    const auto& a = n["arrows"];
    if (!(a.IsMap() || (a.IsSequence() && a.size() == 0))) fail(a, "arrows of " + name + " must be a mapping");
    for (const auto& kv : a) f.table.morphisms[identifier(kv.first, "arrow")] = identifier(kv.second, "arrow");
  }
  // identities follow the object map unless given
  for (const auto& [x, id] : src->identity) {
    auto it = f.table.objects.find(x);
    auto jt = it == f.table.objects.end() ? tgt->identity.end() : tgt->identity.find(it->second);
    if (!f.table.morphisms.count(id) && jt != tgt->identity.end()) f.table.morphisms[id] = jt->second;
  }
  return f;
}

inline TransformationDecl parse_transformation(const SpecFile& s, const YAML::Node& n, const std::string& name) {
  check_keys(n, "transformation " + name, {"from", "to", "components"}, {"from", "to", "components"});
  TransformationDecl t{identifier(n["from"], "from"), identifier(n["to"], "to"), {}};
  const auto* f = s.functor(t.source);
  const auto* g = s.functor(t.target);
  if (!f) fail(n["from"], "functor '" + t.source + "' is not declared");
  if (!g) fail(n["to"], "functor '" + t.target + "' is not declared");
  if (f->source != g->source || f->target != g->target)
    fail(n, "functors " + t.source + " and " + t.target + " are not parallel");
  const auto& c = n["components"];
  if (!(c.IsMap() || (c.IsSequence() && c.size() == 0))) fail(c, "components of " + name + " must be a mapping");
  for (const auto& kv : c) t.components[identifier(kv.first, "object")] = identifier(kv.second, "arrow");
  return t;
}

inline DiagramDecl parse_diagram(const SpecFile& s, const YAML::Node& n) {
  check_keys(n, "diagram", {"name", "levels", "d", "d0", "d1", "s0", "del0", "del1", "del2", "theta"},
             {"levels", "d", "d0", "d1", "s0", "del0", "del1", "del2", "theta"});
  DiagramDecl out;
  out.line = line_of(n);
  auto& t = out.diagram;
  t.name = n["name"] ? identifier(n["name"], "name") : "diagram";
  const auto levels = string_list(n["levels"], "levels");
  if (levels.size() != 4) fail(n["levels"], "levels needs four categories");
  FinCategory* slots[] = {&t.c0, &t.c1, &t.c2, &t.c3};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto* c = s.category(levels[i]);
    if (!c) fail(n["levels"][i], "category '" + levels[i] + "' is not declared");
    *slots[i] = *c;
  }
  struct Slot {
    const char* key;
    FunctorTable* table;
    std::size_t from, to;
  };
  const Slot fs[] = {{"d", &t.d, 0, 1},     {"d0", &t.d0, 1, 2},   {"d1", &t.d1, 1, 2},  {"s0", &t.s0, 2, 1},
                     {"del0", &t.del0, 2, 3}, {"del1", &t.del1, 2, 3}, {"del2", &t.del2, 2, 3}};
  for (const auto& f : fs) {
    const auto name = identifier(n[f.key], f.key);
    const auto* decl = s.functor(name);
    if (!decl) fail(n[f.key], "functor '" + name + "' is not declared");
    if (decl->source != levels[f.from] || decl->target != levels[f.to])
      fail(n[f.key], std::string(f.key) + " must go from " + levels[f.from] + " to " + levels[f.to]);
    *f.table = decl->table;
  }
  const auto& th = n["theta"];
  if (th.IsScalar()) {
    const auto name = th.Scalar();
    const auto* decl = SpecFile::lookup(s.transformations, name);
    if (!decl) fail(th, "transformation '" + name + "' is not declared");
    t.theta = decl->components;
  } else {
    if (!(th.IsMap() || (th.IsSequence() && th.size() == 0))) fail(th, "theta must be a mapping or a name");
    for (const auto& kv : th) t.theta[identifier(kv.first, "object")] = identifier(kv.second, "arrow");
  }
  return out;
}

inline Task parse_task(const SpecFile& s, const YAML::Node& n) {
  check_keys(n, "task", {"command", "map", "bound"}, {"command"});
  Task t;
  t.command = identifier(n["command"], "command");
  bool known = false;
  for (const auto& c : task_commands()) known = known || c == t.command;
  if (!known) fail(n["command"], "unknown command '" + t.command + "'");
  if (n["map"]) {
    t.map = identifier(n["map"], "map");
    if (!s.function(*t.map)) fail(n["map"], "function '" + *t.map + "' is not declared");
  }
  if (n["bound"]) {
    try {
      const long b = std::stol(scalar(n["bound"], "bound"));
      if (b < 0) throw std::out_of_range("negative");
      t.bound = static_cast<std::size_t>(b);
    } catch (const std::logic_error&) {
      fail(n["bound"], "bound must be a non-negative integer");
    }
  }
  return t;
}

}  // namespace detail

/// Parses a spec document. Sections must appear in `section_order()`.
inline SpecFile parse_spec(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw SpecError(static_cast<std::size_t>(e.mark.line) + 1, e.msg);
  }
  SpecFile s;
  if (root.IsNull()) return s;
  detail::expect_map(root, "document");
  std::size_t last = 0;
  for (const auto& kv : root) {
    const auto key = detail::scalar(kv.first, "section name");
    const auto& order = section_order();
    const auto pos = static_cast<std::size_t>(std::find(order.begin(), order.end(), key) - order.begin());
    if (pos == order.size()) detail::fail(kv.first, "unknown section '" + key + "'");
    if (pos < last) detail::fail(kv.first, "section '" + key + "' must come before '" + order[last] + "'");
    last = pos;
    const auto& body = kv.second;
    auto entries = [&](auto each) {
      if (body.IsNull()) return;
      detail::expect_map(body, key);
      for (const auto& e : body) each(e.first, e.second);
    };
    if (key == "note") {
      s.note = detail::scalar(body, "note");
    } else if (key == "sets") {
      entries([&](const YAML::Node& k, const YAML::Node& v) {
        detail::declare(s.sets, k, detail::parse_set(v, k.Scalar()), "set");
      });
    } else if (key == "functions") {
      entries([&](const YAML::Node& k, const YAML::Node& v) {
        detail::declare(s.functions, k, detail::parse_function(s, v, k.Scalar()), "function");
      });
    } else if (key == "categories") {
      entries([&](const YAML::Node& k, const YAML::Node& v) {
        detail::declare(s.categories, k, detail::parse_category(v, k.Scalar()), "category");
      });
    } else if (key == "functors") {
      entries([&](const YAML::Node& k, const YAML::Node& v) {
        detail::declare(s.functors, k, detail::parse_functor(s, v, k.Scalar()), "functor");
      });
    } else if (key == "transformations") {
      entries([&](const YAML::Node& k, const YAML::Node& v) {
        detail::declare(s.transformations, k, detail::parse_transformation(s, v, k.Scalar()), "transformation");
      });
    } else if (key == "diagram") {
      s.diagram = detail::parse_diagram(s, body);
    } else if (key == "task") {
      s.task = detail::parse_task(s, body);
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Writing spec documents (used for witnesses)

/// Accumulates sets and functions and renders them as a spec document.
class SpecWriter {
 public:
  /// Declares `x` under `name`, or returns the name of an identical set
  /// already declared.
  std::string add_set(const std::string& name, const FinSet& x) {
    for (const auto& [n, s] : sets_)
      if (s == x) return n;
    sets_.emplace_back(fresh(name), x);
    return sets_.back().first;
  }

  void add_function(const std::string& name, const std::string& from_hint, const std::string& to_hint,
                    const FinFunction& f) {
    for (const auto& g : functions_)
      if (g.name == name) {
        if (g.f == f) return;
        throw std::logic_error("witness function " + name + " written twice");
      }
    const auto from = add_set(from_hint, f.dom);
    const auto to = add_set(to_hint, f.cod);
    functions_.push_back({name, from, to, f});
  }

  void add_category(const FinCategory& c) { categories_.push_back(c); }
  void set_note(std::string n) { note_ = std::move(n); }

  std::string str() const {
    YAML::Emitter out;
    out << YAML::BeginMap;
    if (!note_.empty()) out << YAML::Key << "note" << YAML::Value << YAML::DoubleQuoted << note_;
    if (!sets_.empty()) {
      out << YAML::Key << "sets" << YAML::Value << YAML::BeginMap;
      for (const auto& [n, s] : sets_) {
        out << YAML::Key << n << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (const auto& l : s.labels()) out << YAML::DoubleQuoted << l;
        out << YAML::EndSeq;
      }
      out << YAML::EndMap;
    }
    if (!functions_.empty()) {
      out << YAML::Key << "functions" << YAML::Value << YAML::BeginMap;
      for (const auto& f : functions_) {
        out << YAML::Key << f.name << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "from" << YAML::Value << f.from << YAML::Key << "to" << YAML::Value << f.to;
        out << YAML::Key << "map" << YAML::Value << YAML::Flow << YAML::BeginMap;
        for (std::size_t i = 0; i < f.f.dom.size(); ++i)
          out << YAML::Key << YAML::DoubleQuoted << f.f.dom.label(i) << YAML::Value << YAML::DoubleQuoted
              << f.f.image_label(i);
        out << YAML::EndMap << YAML::EndMap;
      }
      out << YAML::EndMap;
    }
    if (!categories_.empty()) {
      out << YAML::Key << "categories" << YAML::Value << YAML::BeginMap;
      for (const auto& c : categories_) {
        out << YAML::Key << c.name << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "objects" << YAML::Value << YAML::Flow << c.objects;
        out << YAML::Key << "arrows" << YAML::Value << YAML::BeginMap;
        for (const auto& m : c.morphisms)
          if (!c.is_identity(m.id))
            out << YAML::Key << m.id << YAML::Value << YAML::Flow << std::vector<std::string>{m.dom, m.cod};
        out << YAML::EndMap;
        out << YAML::Key << "identities" << YAML::Value << YAML::Flow << c.identity;
        out << YAML::Key << "compose" << YAML::Value << YAML::BeginSeq;
        for (const auto& [gf, h] : c.compose)
          out << YAML::Flow << std::vector<std::string>{gf.first, gf.second, h};
        out << YAML::EndSeq << YAML::EndMap;
      }
      out << YAML::EndMap;
    }
    out << YAML::EndMap;
    return out.c_str();
  }

 private:
  struct Fn {
    std::string name, from, to;
    FinFunction f;
  };

  std::string fresh(const std::string& hint) const {
    auto taken = [&](const std::string& n) {
      for (const auto& [m, s] : sets_)
        if (m == n) return true;
      return false;
    };
    if (!taken(hint)) return hint;
    for (std::size_t i = 2;; ++i)
      if (!taken(hint + std::to_string(i))) return hint + std::to_string(i);
  }

  std::string note_;
  std::vector<std::pair<std::string, FinSet>> sets_;
  std::vector<Fn> functions_;
  std::vector<FinCategory> categories_;
};

}  // namespace descent::cli
