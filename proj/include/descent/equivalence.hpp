#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "descent/category.hpp"

namespace descent {

/// First isomorphism x -> y in enumeration order, as (forward, inverse).
template <class C>
std::optional<std::pair<MorphismOf<C>, MorphismOf<C>>> find_isomorphism(
    const C& cat, const ObjectOf<C>& x, const ObjectOf<C>& y) {
  if (x == y) return std::pair{cat.identity(x), cat.identity(x)};
  auto all = isomorphisms(cat, x, y);
  if (all.empty()) return std::nullopt;
  return all.front();
}

template <class C>
bool are_isomorphic(const C& cat, const ObjectOf<C>& x, const ObjectOf<C>& y) {
  return find_isomorphism(cat, x, y).has_value();
}

/// Keeps the first representative of each isomorphism class, in order.
template <class C>
std::vector<ObjectOf<C>> iso_class_representatives(const C& cat,
                                                   const std::vector<ObjectOf<C>>& objs) {
  std::vector<ObjectOf<C>> reps;
  for (const auto& x : objs) {
    bool seen = false;
    for (const auto& r : reps)
      if (are_isomorphic(cat, r, x)) {
        seen = true;
        break;
      }
    if (!seen) reps.push_back(x);
  }
  return reps;
}

template <class C, class D>
struct FaithfulResult {
  bool holds = true;
  bool within_bound = true;  // false only when the source category is finite
  std::optional<std::pair<MorphismOf<C>, MorphismOf<C>>> witness;
};

template <class C, class D>
struct FullResult {
  bool holds = true;
  bool within_bound = true;
  // (x, y, a morphism F x -> F y not in the image)
  std::optional<std::tuple<ObjectOf<C>, ObjectOf<C>, MorphismOf<D>>> witness;
};

template <class C, class D>
struct EssentialSurjectivityResult {
  bool holds = true;
  bool within_bound = true;
  std::optional<ObjectOf<D>> witness;
};

namespace detail {

template <class T>
bool contains(const std::vector<T>& xs, const T& x) {
  if constexpr (std::totally_ordered<T>) {
    return std::binary_search(xs.begin(), xs.end(), x);
  } else {
    return std::find(xs.begin(), xs.end(), x) != xs.end();
  }
}

template <class T>
void prepare(std::vector<T>& xs) {
  if constexpr (std::totally_ordered<T>) std::sort(xs.begin(), xs.end());
}

}  // namespace detail

/// Injectivity of F on every hom-set between enumerated objects.
template <class C, class D>
FaithfulResult<C, D> is_faithful(const Functor<C, D>& f, std::size_t bound) {
  FaithfulResult<C, D> r;
  r.within_bound = !f.source.finite;
  const auto objs = f.source.objects(bound);
  for (const auto& x : objs)
    for (const auto& y : objs) {
      const auto homs = f.source.hom(x, y);
      std::vector<MorphismOf<D>> images;
      images.reserve(homs.size());
      for (const auto& m : homs) images.push_back(f.mor(m));
      for (std::size_t i = 0; i < homs.size(); ++i)
        for (std::size_t j = i + 1; j < homs.size(); ++j)
          if (images[i] == images[j]) {
            r.holds = false;
            r.witness = std::pair{homs[i], homs[j]};
            return r;
          }
    }
  return r;
}

/// Surjectivity of F onto hom(F x, F y) for enumerated x, y.
template <class C, class D>
FullResult<C, D> is_full(const Functor<C, D>& f, std::size_t bound) {
  FullResult<C, D> r;
  r.within_bound = !f.source.finite;
  const auto objs = f.source.objects(bound);
  std::vector<ObjectOf<D>> images;
  images.reserve(objs.size());
  for (const auto& x : objs) images.push_back(f.obj(x));
  for (std::size_t i = 0; i < objs.size(); ++i)
    for (std::size_t j = 0; j < objs.size(); ++j) {
      std::vector<MorphismOf<D>> hit;
      for (const auto& m : f.source.hom(objs[i], objs[j])) hit.push_back(f.mor(m));
      detail::prepare(hit);
      for (const auto& t : f.target.hom(images[i], images[j]))
        if (!detail::contains(hit, t)) {
          r.holds = false;
          r.witness = std::tuple{objs[i], objs[j], t};
          return r;
        }
    }
  return r;
}

/// Every enumerated target object is isomorphic to some F(x).
///
/// When `lift` is given it proposes a preimage for each target object; the
/// proposal is verified, and only when it fails are the enumerated source
/// objects searched.
template <class C, class D>
EssentialSurjectivityResult<C, D> is_essentially_surjective(
    const Functor<C, D>& f, std::size_t bound,
    const std::function<std::optional<ObjectOf<C>>(const ObjectOf<D>&)>& lift = {}) {
  EssentialSurjectivityResult<C, D> r;
  r.within_bound = !(f.source.finite && f.target.finite);
  std::optional<std::vector<ObjectOf<D>>> images;
  for (const auto& t : f.target.objects(bound)) {
    bool reached = false;
    if (lift)
      if (auto s = lift(t)) reached = are_isomorphic(f.target, f.obj(*s), t);
    if (!reached) {
      if (!images) {
        images.emplace();
        for (const auto& x : f.source.objects(bound)) images->push_back(f.obj(x));
      }
      for (const auto& im : *images)
        if (are_isomorphic(f.target, im, t)) {
          reached = true;
          break;
        }
    }
    if (!reached) {
      r.holds = false;
      r.witness = t;
      return r;
    }
  }
  return r;
}

enum class EquivalenceLevel { Equivalence, FullyFaithfulOnly, FaithfulOnly, None };

inline std::string to_string(EquivalenceLevel l) {
  switch (l) {
    case EquivalenceLevel::Equivalence: return "Equivalence";
    case EquivalenceLevel::FullyFaithfulOnly: return "FullyFaithfulOnly";
    case EquivalenceLevel::FaithfulOnly: return "FaithfulOnly";
    case EquivalenceLevel::None: return "None";
  }
  return "?";
}

template <class C, class D>
struct EquivalenceResult {
  EquivalenceLevel level = EquivalenceLevel::None;
  bool within_bound = true;
  FaithfulResult<C, D> faithful;
  std::optional<FullResult<C, D>> full;
  std::optional<EssentialSurjectivityResult<C, D>> essentially_surjective;
};

/// Strongest level attained; checks stop at the first failing one.
template <class C, class D>
EquivalenceResult<C, D> is_equivalence(
    const Functor<C, D>& f, std::size_t bound,
    const std::function<std::optional<ObjectOf<C>>(const ObjectOf<D>&)>& lift = {}) {
  EquivalenceResult<C, D> r;
  r.faithful = is_faithful(f, bound);
  r.within_bound = r.faithful.within_bound;
  if (!r.faithful.holds) {
    r.level = EquivalenceLevel::None;
    return r;
  }
  r.full = is_full(f, bound);
  if (!r.full->holds) {
    r.level = EquivalenceLevel::FaithfulOnly;
    return r;
  }
  r.essentially_surjective = is_essentially_surjective(f, bound, lift);
  r.within_bound = r.within_bound || r.essentially_surjective->within_bound;
  r.level = r.essentially_surjective->holds ? EquivalenceLevel::Equivalence
                                            : EquivalenceLevel::FullyFaithfulOnly;
  return r;
}

/// Every natural isomorphism F ⇒ G over the enumerated objects of a finite
/// source, in lexicographic order of component choices.
template <class C, class D>
std::vector<NatIso<C, D>> natural_isomorphisms(const Functor<C, D>& f, const Functor<C, D>& g,
                                               std::size_t bound = 0) {
  using M = MorphismOf<D>;
  const auto objs = f.source.objects(bound);
  std::vector<std::vector<std::pair<M, M>>> choices;
  for (const auto& x : objs) {
    choices.push_back(isomorphisms(f.target, f.obj(x), g.obj(x)));
    if (choices.back().empty()) return {};
  }
  std::vector<NatIso<C, D>> out;
  std::vector<std::size_t> pick(objs.size(), 0);
  while (true) {
    auto table = std::make_shared<std::vector<std::pair<ObjectOf<C>, std::pair<M, M>>>>();
    for (std::size_t i = 0; i < objs.size(); ++i) table->emplace_back(objs[i], choices[i][pick[i]]);
    auto lookup = [table](const ObjectOf<C>& x) -> const std::pair<M, M>& {
      for (const auto& [o, c] : *table)
        if (o == x) return c;
      throw std::invalid_argument("no component at " + show(x));
    };
    NatIso<C, D> a{{f.name + "≅" + g.name, f, g, [lookup](const ObjectOf<C>& x) { return lookup(x).first; }},
                   [lookup](const ObjectOf<C>& x) { return lookup(x).second; }};
    if (check_natural(a.forward, bound).empty()) out.push_back(std::move(a));
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

}  // namespace descent
