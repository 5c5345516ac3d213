#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "descent/category.hpp"

namespace descent {

struct MorphismEntry {
  std::string id;
  std::string dom;
  std::string cod;
  friend bool operator==(const MorphismEntry&, const MorphismEntry&) = default;
};

/// Explicit finite category. `compose[{g, f}]` is g∘f.
struct FinCategory {
  std::string name;
  std::vector<std::string> objects;
  std::vector<MorphismEntry> morphisms;
  std::map<std::string, std::string> identity;
  std::map<std::pair<std::string, std::string>, std::string> compose;

  const MorphismEntry* find(const std::string& id) const {
    for (const auto& m : morphisms)
      if (m.id == id) return &m;
    return nullptr;
  }
  bool has_object(const std::string& x) const {
    return std::find(objects.begin(), objects.end(), x) != objects.end();
  }
  bool is_identity(const std::string& id) const {
    for (const auto& [o, i] : identity)
      if (i == id) return true;
    return false;
  }
};

using TableCategory = Category<std::string, std::string>;

/// Every broken law, each naming the offending pair or triple. Empty iff valid.
inline std::vector<Violation> validate_category(const FinCategory& c) {
  std::vector<Violation> out;
  std::set<std::string> seen_obj;
  for (const auto& o : c.objects)
    if (!seen_obj.insert(o).second) out.push_back({"duplicate object", o, ""});
  std::map<std::string, const MorphismEntry*> mor;
  for (const auto& m : c.morphisms) {
    if (!mor.emplace(m.id, &m).second) out.push_back({"duplicate morphism", m.id, ""});
    if (!c.has_object(m.dom) || !c.has_object(m.cod))
      out.push_back({"unknown endpoint", m.id, m.dom + " -> " + m.cod});
  }
  for (const auto& o : c.objects) {
    auto it = c.identity.find(o);
    if (it == c.identity.end()) {
      out.push_back({"missing identity", o, ""});
      continue;
    }
    auto m = mor.find(it->second);
    if (m == mor.end() || m->second->dom != o || m->second->cod != o)
      out.push_back({"bad identity", o, it->second});
  }
  if (!out.empty()) return out;

  for (const auto& [gf, h] : c.compose) {
    const auto& [g, f] = gf;
    auto mg = mor.find(g), mf = mor.find(f), mh = mor.find(h);
    if (mg == mor.end() || mf == mor.end() || mh == mor.end()) {
      out.push_back({"unknown morphism in composition table", g + "∘" + f, h});
      continue;
    }
    if (mf->second->cod != mg->second->dom) {
      out.push_back({"compose defined on non-composable pair", g + "∘" + f, h});
      continue;
    }
    if (mh->second->dom != mf->second->dom || mh->second->cod != mg->second->cod)
      out.push_back({"composite has wrong endpoints", g + "∘" + f, h});
  }
  auto composite = [&](const std::string& g, const std::string& f) -> const std::string* {
    auto it = c.compose.find({g, f});
    return it == c.compose.end() ? nullptr : &it->second;
  };
  for (const auto& f : c.morphisms)
    for (const auto& g : c.morphisms)
      if (f.cod == g.dom && !composite(g.id, f.id))
        out.push_back({"missing composite", g.id + "∘" + f.id, ""});
  if (!out.empty()) return out;

  for (const auto& f : c.morphisms) {
    if (*composite(c.identity.at(f.cod), f.id) != f.id)
      out.push_back({"left unit law", f.id, *composite(c.identity.at(f.cod), f.id)});
    if (*composite(f.id, c.identity.at(f.dom)) != f.id)
      out.push_back({"right unit law", f.id, *composite(f.id, c.identity.at(f.dom))});
  }
  for (const auto& f : c.morphisms)
    for (const auto& g : c.morphisms) {
      if (f.cod != g.dom) continue;
      for (const auto& h : c.morphisms) {
        if (g.cod != h.dom) continue;
        const auto& lhs = *composite(h.id, *composite(g.id, f.id));
        const auto& rhs = *composite(*composite(h.id, g.id), f.id);
        if (lhs != rhs)
          out.push_back({"associativity", h.id + "∘" + g.id + "∘" + f.id, lhs + " != " + rhs});
      }
    }
  return out;
}

/// Builds a table with identities `id_<x>` added and identity composites
/// filled in. `composites` lists (g, f, g∘f) for the remaining pairs.
inline FinCategory make_category(
    std::string name, std::vector<std::string> objects,
    std::vector<MorphismEntry> arrows,
    const std::vector<std::tuple<std::string, std::string, std::string>>& composites = {}) {
  FinCategory c;
  c.name = std::move(name);
  c.objects = std::move(objects);
  for (const auto& o : c.objects) {
    c.morphisms.push_back({"id_" + o, o, o});
    c.identity[o] = "id_" + o;
  }
  for (auto& a : arrows) c.morphisms.push_back(std::move(a));
  for (const auto& m : c.morphisms) {
    c.compose[{c.identity[m.cod], m.id}] = m.id;
    c.compose[{m.id, c.identity[m.dom]}] = m.id;
  }
  for (const auto& [g, f, h] : composites) c.compose[{g, f}] = h;
  return c;
}

inline FinCategory terminal_category() { return make_category("1", {"*"}, {}); }
inline FinCategory discrete_category(std::size_t n) {
  std::vector<std::string> objs;
  for (std::size_t i = 0; i < n; ++i) objs.push_back(std::to_string(i));
  return make_category("D" + std::to_string(n), objs, {});
}
inline FinCategory arrow_category() {
  return make_category("2", {"0", "1"}, {{"u", "0", "1"}});
}
inline FinCategory iso_category() {
  return make_category("I", {"0", "1"}, {{"u", "0", "1"}, {"v", "1", "0"}},
                       {{"v", "u", "id_0"}, {"u", "v", "id_1"}});
}
inline FinCategory parallel_pair_category() {
  return make_category("P", {"0", "1"}, {{"u", "0", "1"}, {"v", "0", "1"}});
}
/// 0 -> 1 -> ... -> n-1 with every composite.
inline FinCategory chain_category(std::size_t n) {
  std::vector<std::string> objs;
  std::vector<MorphismEntry> arrows;
  std::vector<std::tuple<std::string, std::string, std::string>> comp;
  for (std::size_t i = 0; i < n; ++i) objs.push_back(std::to_string(i));
  auto name = [](std::size_t i, std::size_t j) {
    return "a" + std::to_string(i) + std::to_string(j);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) arrows.push_back({name(i, j), objs[i], objs[j]});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) comp.emplace_back(name(j, k), name(i, j), name(i, k));
  return make_category("chain" + std::to_string(n), objs, arrows, comp);
}

/// Enumerator view of a table. The table must be valid.
inline TableCategory to_category(const FinCategory& table) {
  auto t = std::make_shared<const FinCategory>(table);
  auto by_id = std::make_shared<std::map<std::string, MorphismEntry>>();
  auto homs = std::make_shared<std::map<std::pair<std::string, std::string>, std::vector<std::string>>>();
  for (const auto& m : t->morphisms) {
    (*by_id)[m.id] = m;
    (*homs)[{m.dom, m.cod}].push_back(m.id);
  }
  TableCategory c;
  c.name = t->name;
  c.finite = true;
  c.objects = [t](std::size_t) { return t->objects; };
  c.hom = [homs](const std::string& a, const std::string& b) {
    auto it = homs->find({a, b});
    return it == homs->end() ? std::vector<std::string>{} : it->second;
  };
  c.identity = [t](const std::string& x) {
    auto it = t->identity.find(x);
    if (it == t->identity.end()) throw std::invalid_argument("no identity on " + x);
    return it->second;
  };
  c.compose = [t](const std::string& g, const std::string& f) {
    auto it = t->compose.find({g, f});
    if (it == t->compose.end())
      throw std::invalid_argument("composite " + g + "∘" + f + " undefined in " + t->name);
    return it->second;
  };
  c.dom = [by_id](const std::string& m) { return by_id->at(m).dom; };
  c.cod = [by_id](const std::string& m) { return by_id->at(m).cod; };
  return c;
}

/// Functor between table categories as two lookup tables.
struct FunctorTable {
  std::string name;
  std::map<std::string, std::string> objects;
  std::map<std::string, std::string> morphisms;
  friend bool operator==(const FunctorTable& a, const FunctorTable& b) {
    return a.objects == b.objects && a.morphisms == b.morphisms;
  }
};

inline Functor<TableCategory, TableCategory> to_functor(const FunctorTable& f,
                                                        const TableCategory& src,
                                                        const TableCategory& tgt) {
  auto t = std::make_shared<const FunctorTable>(f);
  return {f.name, src, tgt,
          [t](const std::string& x) {
            auto it = t->objects.find(x);
            if (it == t->objects.end())
              throw std::invalid_argument(t->name + " undefined on object " + x);
            return it->second;
          },
          [t](const std::string& m) {
            auto it = t->morphisms.find(m);
            if (it == t->morphisms.end())
              throw std::invalid_argument(t->name + " undefined on morphism " + m);
            return it->second;
          }};
}

inline FunctorTable compose_tables(const FunctorTable& g, const FunctorTable& f) {
  FunctorTable h{g.name + "∘" + f.name, {}, {}};
  for (const auto& [x, y] : f.objects) h.objects[x] = g.objects.at(y);
  for (const auto& [m, n] : f.morphisms) h.morphisms[m] = g.morphisms.at(n);
  return h;
}

inline FunctorTable identity_table(const FinCategory& c) {
  FunctorTable t{"Id", {}, {}};
  for (const auto& o : c.objects) t.objects[o] = o;
  for (const auto& m : c.morphisms) t.morphisms[m.id] = m.id;
  return t;
}

/// Every functor between two valid tables, in lexicographic order of choices.
inline std::vector<FunctorTable> all_functors(const FinCategory& src, const FinCategory& tgt) {
  std::vector<FunctorTable> out;
  if (src.objects.empty()) {
    out.push_back({"F", {}, {}});
    return out;
  }
  if (tgt.objects.empty()) return out;
  const auto tc = to_category(tgt);
  std::vector<std::size_t> pick(src.objects.size(), 0);
  while (true) {
    FunctorTable base{"F", {}, {}};
    for (std::size_t i = 0; i < pick.size(); ++i) base.objects[src.objects[i]] = tgt.objects[pick[i]];
    // backtrack over morphism images
    std::vector<const MorphismEntry*> ms;
    for (const auto& m : src.morphisms) ms.push_back(&m);
    std::function<void(std::size_t, FunctorTable&)> go = [&](std::size_t k, FunctorTable& f) {
      if (k == ms.size()) {
        for (const auto& [gf, h] : src.compose)
          if (f.morphisms.at(h) != tgt.compose.at({f.morphisms.at(gf.first), f.morphisms.at(gf.second)}))
            return;
        out.push_back(f);
        return;
      }
      const auto& m = *ms[k];
      const auto a = f.objects.at(m.dom), b = f.objects.at(m.cod);
      std::vector<std::string> choices;
      if (src.is_identity(m.id))
        choices = {tgt.identity.at(a)};
      else
        choices = tc.hom(a, b);
      for (const auto& c : choices) {
        f.morphisms[m.id] = c;
        go(k + 1, f);
      }
      f.morphisms.erase(m.id);
    };
    go(0, base);
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == tgt.objects.size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].name = "F" + std::to_string(i);
  return out;
}

/// The subcategory on the given objects and morphisms. Callers are expected to
/// pass a set closed under identities and composition; see `subcategories`.
inline FinCategory subcategory(const FinCategory& c, const std::set<std::string>& objs,
                               const std::set<std::string>& mors) {
  FinCategory s;
  s.name = c.name + "'";
  for (const auto& o : c.objects)
    if (objs.count(o)) {
      s.objects.push_back(o);
      s.identity[o] = c.identity.at(o);
    }
  for (const auto& m : c.morphisms)
    if (mors.count(m.id)) s.morphisms.push_back(m);
  for (const auto& [gf, h] : c.compose)
    if (mors.count(gf.first) && mors.count(gf.second)) s.compose[gf] = h;
  return s;
}

struct SubcategoryChoice {
  std::set<std::string> objects;
  std::set<std::string> morphisms;
  friend bool operator==(const SubcategoryChoice&, const SubcategoryChoice&) = default;
};

/// Every subcategory (object subset, then closed morphism subset).
inline std::vector<SubcategoryChoice> subcategories(const FinCategory& c) {
  std::vector<SubcategoryChoice> out;
  const std::size_t n = c.objects.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::set<std::string> objs;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) objs.insert(c.objects[i]);
    std::vector<std::string> optional;
    std::set<std::string> ids;
    for (const auto& o : objs) ids.insert(c.identity.at(o));
    for (const auto& m : c.morphisms)
      if (objs.count(m.dom) && objs.count(m.cod) && !ids.count(m.id)) optional.push_back(m.id);
    for (std::size_t sub = 0; sub < (std::size_t{1} << optional.size()); ++sub) {
      std::set<std::string> mors = ids;
      for (std::size_t i = 0; i < optional.size(); ++i)
        if (sub & (std::size_t{1} << i)) mors.insert(optional[i]);
      bool closed = true;
      for (const auto& [gf, h] : c.compose)
        if (mors.count(gf.first) && mors.count(gf.second) && !mors.count(h)) {
          closed = false;
          break;
        }
      if (closed) out.push_back({objs, mors});
    }
  }
  return out;
}

/// Inclusion functor of a subcategory table into its parent.
inline FunctorTable inclusion_table(const FinCategory& sub) {
  FunctorTable t{"incl", {}, {}};
  for (const auto& o : sub.objects) t.objects[o] = o;
  for (const auto& m : sub.morphisms) t.morphisms[m.id] = m.id;
  return t;
}

}  // namespace descent
