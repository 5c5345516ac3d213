#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "descent/category.hpp"
#include "descent/cosimplicial.hpp"
#include "descent/equivalence.hpp"
#include "descent/fincat.hpp"

namespace descent {

/// A strict truncated augmented diagram of table categories: every
/// constraint except theta is an identity, so the cosimplicial identities
/// hold on the nose.
struct TableDiagram {
  std::string name;
  FinCategory c0, c1, c2, c3;
  FunctorTable d, d0, d1, s0, del0, del1, del2;
  std::map<std::string, std::string> theta;  // c0 object -> morphism of c2
};

using TableCosimplicial = AugCosimplicial3<TableCategory>;

namespace detail {

inline void check_table_functor(std::vector<Violation>& out, const FunctorTable& f,
                                const FinCategory& src, const FinCategory& tgt) {
  for (const auto& v : check_functor(to_functor(f, to_category(src), to_category(tgt)), 0))
    out.push_back({v.law, f.name + " at " + v.where, v.detail});
}

inline std::string inverse_in(const FinCategory& c, const std::string& m) {
  const auto cat = to_category(c);
  for (const auto& g : cat.hom(cat.cod(m), cat.dom(m)))
    if (cat.compose(g, m) == cat.identity(cat.dom(m)) && cat.compose(m, g) == cat.identity(cat.cod(m)))
      return g;
  throw std::invalid_argument(m + " is not invertible in " + c.name);
}

inline NatIso<TableCategory, TableCategory> strict_identity(std::string name, const Functor<TableCategory, TableCategory>& f,
                                                            const Functor<TableCategory, TableCategory>& g) {
  auto id = [f](const std::string& x) { return f.target.identity(f.obj(x)); };
  return {{std::move(name), f, g, id}, id};
}

}  // namespace detail

/// Table validity, functoriality, the strict cosimplicial identities and
/// the presentation equations for theta.
inline std::vector<Violation> validate_table_diagram(const TableDiagram& t) {
  std::vector<Violation> out;
  for (const auto* c : {&t.c0, &t.c1, &t.c2, &t.c3})
    for (auto v : validate_category(*c)) {
      v.where = c->name + ": " + v.where;
      out.push_back(std::move(v));
    }
  if (!out.empty()) return out;
  detail::check_table_functor(out, t.d, t.c0, t.c1);
  detail::check_table_functor(out, t.d0, t.c1, t.c2);
  detail::check_table_functor(out, t.d1, t.c1, t.c2);
  detail::check_table_functor(out, t.s0, t.c2, t.c1);
  detail::check_table_functor(out, t.del0, t.c2, t.c3);
  detail::check_table_functor(out, t.del1, t.c2, t.c3);
  detail::check_table_functor(out, t.del2, t.c2, t.c3);
  if (!out.empty()) return out;
  const auto id1 = identity_table(t.c1);
  auto same = [&](const FunctorTable& a, const FunctorTable& b, const std::string& law) {
    if (!(a == b)) out.push_back({"cosimplicial identity", law, "composites differ"});
  };
  same(compose_tables(t.del1, t.d0), compose_tables(t.del0, t.d0), "del1∘d0 = del0∘d0");
  same(compose_tables(t.del2, t.d0), compose_tables(t.del0, t.d1), "del2∘d0 = del0∘d1");
  same(compose_tables(t.del2, t.d1), compose_tables(t.del1, t.d1), "del2∘d1 = del1∘d1");
  same(compose_tables(t.s0, t.d0), id1, "s0∘d0 = Id");
  same(compose_tables(t.s0, t.d1), id1, "s0∘d1 = Id");
  if (!out.empty()) return out;
  const auto c2 = to_category(t.c2);
  const auto c3 = to_category(t.c3);
  for (const auto& x : t.c0.objects) {
    auto it = t.theta.find(x);
    if (it == t.theta.end()) {
      out.push_back({"typing", x, "θ has no component"});
      continue;
    }
    const auto& m = it->second;
    if (!t.c2.find(m)) {
      out.push_back({"typing", x, "θ component " + m + " is not a morphism of " + t.c2.name});
      continue;
    }
    const auto dx = t.d.objects.at(x);
    if (c2.dom(m) != t.d1.objects.at(dx) || c2.cod(m) != t.d0.objects.at(dx))
      out.push_back({"typing", x, "θ component " + m + " is not d1(d x) -> d0(d x)"});
  }
  for (const auto& [x, m] : t.theta)
    if (!t.c0.has_object(x)) out.push_back({"typing", x, "θ component at an unknown object"});
  if (!out.empty()) return out;
  for (const auto& f : t.c0.morphisms) {
    const auto df = t.d.morphisms.at(f.id);
    if (c2.compose(t.d0.morphisms.at(df), t.theta.at(f.dom)) != c2.compose(t.theta.at(f.cod), t.d1.morphisms.at(df)))
      out.push_back({"naturality", f.id, "θ"});
  }
  for (const auto& [x, m] : t.theta) {
    try {
      detail::inverse_in(t.c2, m);
    } catch (const std::exception&) {
      out.push_back({"invertibility", x, "θ component " + m + " is not invertible"});
      continue;
    }
    if (t.s0.morphisms.at(m) != t.c1.identity.at(t.d.objects.at(x)))
      out.push_back({"identity", x, "s0(θ) = " + t.s0.morphisms.at(m)});
    if (c3.compose(t.del0.morphisms.at(m), t.del2.morphisms.at(m)) != t.del1.morphisms.at(m))
      out.push_back({"associativity", x, "del0(θ)∘del2(θ) != del1(θ)"});
  }
  return out;
}

/// The enumerator view without theta.
inline TableCosimplicial to_diagram_without_theta(const TableDiagram& t) {
  TableCosimplicial D;
  D.name = t.name;
  D.c0 = to_category(t.c0);
  D.c1 = to_category(t.c1);
  D.c2 = to_category(t.c2);
  D.c3 = to_category(t.c3);
  D.d = to_functor(t.d, *D.c0, D.c1);
  D.d0 = to_functor(t.d0, D.c1, D.c2);
  D.d1 = to_functor(t.d1, D.c1, D.c2);
  D.s0 = to_functor(t.s0, D.c2, D.c1);
  D.del0 = to_functor(t.del0, D.c2, D.c3);
  D.del1 = to_functor(t.del1, D.c2, D.c3);
  D.del2 = to_functor(t.del2, D.c2, D.c3);
  D.sigma01 = detail::strict_identity("σ01", compose(D.del1, D.d0), compose(D.del0, D.d0));
  D.sigma02 = detail::strict_identity("σ02", compose(D.del2, D.d0), compose(D.del0, D.d1));
  D.sigma12 = detail::strict_identity("σ12", compose(D.del2, D.d1), compose(D.del1, D.d1));
  D.n0 = detail::strict_identity("n0", compose(D.s0, D.d0), identity_functor(D.c1));
  D.n1 = detail::strict_identity("n1", compose(D.s0, D.d1), identity_functor(D.c1));
  return D;
}

/// The enumerator view, with identity constraints. The table must validate.
inline TableCosimplicial to_diagram(const TableDiagram& t) {
  auto D = to_diagram_without_theta(t);
  auto fwd = std::make_shared<const std::map<std::string, std::string>>(t.theta);
  auto inv = std::make_shared<std::map<std::string, std::string>>();
  for (const auto& [x, m] : t.theta) (*inv)[x] = detail::inverse_in(t.c2, m);
  D.theta = NatIso<TableCategory, TableCategory>{
      {"θ", compose(D.d1, *D.d), compose(D.d0, *D.d), [fwd](const std::string& x) { return fwd->at(x); }},
      [inv](const std::string& x) { return inv->at(x); }};
  return D;
}

/// Subcategory choices per level, in the order c0..c3.
struct SubDiagramChoice {
  SubcategoryChoice c0, c1, c2, c3;
};

/// The sub-diagram on the chosen subcategories, or nothing when some face,
/// degeneracy or theta component leaves them.
inline std::optional<TableDiagram> sub_diagram(const TableDiagram& t, const SubDiagramChoice& s) {
  auto maps_into = [](const FunctorTable& f, const SubcategoryChoice& a, const SubcategoryChoice& b) {
    for (const auto& o : a.objects)
      if (!b.objects.count(f.objects.at(o))) return false;
    for (const auto& m : a.morphisms)
      if (!b.morphisms.count(f.morphisms.at(m))) return false;
    return true;
  };
  if (!maps_into(t.d, s.c0, s.c1) || !maps_into(t.d0, s.c1, s.c2) || !maps_into(t.d1, s.c1, s.c2) ||
      !maps_into(t.s0, s.c2, s.c1) || !maps_into(t.del0, s.c2, s.c3) || !maps_into(t.del1, s.c2, s.c3) ||
      !maps_into(t.del2, s.c2, s.c3))
    return std::nullopt;
  auto restrict_functor = [](const FunctorTable& f, const SubcategoryChoice& a) {
    FunctorTable r{f.name, {}, {}};
    for (const auto& o : a.objects) r.objects[o] = f.objects.at(o);
    for (const auto& m : a.morphisms) r.morphisms[m] = f.morphisms.at(m);
    return r;
  };
  TableDiagram r;
  r.name = t.name + "'";
  r.c0 = subcategory(t.c0, s.c0.objects, s.c0.morphisms);
  r.c1 = subcategory(t.c1, s.c1.objects, s.c1.morphisms);
  r.c2 = subcategory(t.c2, s.c2.objects, s.c2.morphisms);
  r.c3 = subcategory(t.c3, s.c3.objects, s.c3.morphisms);
  r.d = restrict_functor(t.d, s.c0);
  r.d0 = restrict_functor(t.d0, s.c1);
  r.d1 = restrict_functor(t.d1, s.c1);
  r.s0 = restrict_functor(t.s0, s.c2);
  r.del0 = restrict_functor(t.del0, s.c2);
  r.del1 = restrict_functor(t.del1, s.c2);
  r.del2 = restrict_functor(t.del2, s.c2);
  for (const auto& o : s.c0.objects) {
    const auto& m = t.theta.at(o);
    if (!s.c2.morphisms.count(m)) return std::nullopt;
    r.theta[o] = m;
    // the inverse must survive too
    if (!s.c2.morphisms.count(detail::inverse_in(t.c2, m))) return std::nullopt;
  }
  return r;
}

/// Levelwise inclusion functors of a sub-diagram.
struct TableInclusion {
  Functor<TableCategory, TableCategory> at0, at1, at2, at3;
};

inline TableInclusion inclusion(const TableDiagram& sub, const TableDiagram& whole) {
  return {to_functor(inclusion_table(sub.c0), to_category(sub.c0), to_category(whole.c0)),
          to_functor(inclusion_table(sub.c1), to_category(sub.c1), to_category(whole.c1)),
          to_functor(inclusion_table(sub.c2), to_category(sub.c2), to_category(whole.c2)),
          to_functor(inclusion_table(sub.c3), to_category(sub.c3), to_category(whole.c3))};
}

/// The categories a generated diagram may use at each level.
inline std::vector<FinCategory> diagram_menu() {
  return {terminal_category(), discrete_category(2), arrow_category(), iso_category()};
}

/// Every valid strict diagram whose levels are drawn from the menu, in a
/// deterministic order. Faces are pruned level by level.
inline std::vector<TableDiagram> strict_table_diagrams(const std::vector<FinCategory>& menu = diagram_menu()) {
  std::vector<TableDiagram> out;
  for (const auto& c1 : menu)
    for (const auto& c2 : menu) {
      const auto faces = all_functors(c1, c2);
      const auto degens = all_functors(c2, c1);
      const auto id1 = identity_table(c1);
      for (const auto& d0 : faces)
        for (const auto& d1 : faces)
          for (const auto& s0 : degens) {
            if (!(compose_tables(s0, d0) == id1) || !(compose_tables(s0, d1) == id1)) continue;
            for (const auto& c3 : menu) {
              const auto faces3 = all_functors(c2, c3);
              for (const auto& e0 : faces3)
                for (const auto& e1 : faces3) {
                  if (!(compose_tables(e1, d0) == compose_tables(e0, d0))) continue;
                  for (const auto& e2 : faces3) {
                    if (!(compose_tables(e2, d0) == compose_tables(e0, d1))) continue;
                    if (!(compose_tables(e2, d1) == compose_tables(e1, d1))) continue;
                    for (const auto& c0 : menu)
                      for (const auto& d : all_functors(c0, c1)) {
                        TableDiagram t{"", c0, c1, c2, c3, d, d0, d1, s0, e0, e1, e2, {}};
                        t.d.name = "d";
                        t.d0.name = "d0";
                        t.d1.name = "d1";
                        t.s0.name = "s0";
                        t.del0.name = "del0";
                        t.del1.name = "del1";
                        t.del2.name = "del2";
                        const auto D = to_diagram_without_theta(t);
                        for (const auto& th : natural_isomorphisms(compose(D.d1, *D.d), compose(D.d0, *D.d))) {
                          t.theta.clear();
                          for (const auto& x : c0.objects) t.theta[x] = th.at(x);
                          if (!validate_table_diagram(t).empty()) continue;
                          t.name = "T" + std::to_string(out.size());
                          out.push_back(t);
                        }
                      }
                  }
                }
            }
          }
    }
  return out;
}

}  // namespace descent
