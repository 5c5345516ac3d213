#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "descent/category.hpp"
#include "descent/finset.hpp"
#include "descent/mutation.hpp"

namespace descent {

/// An object X -> B of the slice over B.
using SliceObject = FinFunction;

/// A commuting triangle: `map` is a function source.dom -> target.dom over B.
struct SliceMorphism {
  SliceObject source;
  SliceObject target;
  std::vector<std::size_t> map;

  FinFunction as_function() const { return {source.dom, target.dom, map}; }

  friend bool operator==(const SliceMorphism& a, const SliceMorphism& b) {
    return a.map == b.map && a.source == b.source && a.target == b.target;
  }
  friend bool operator<(const SliceMorphism& a, const SliceMorphism& b) {
    if (a.map != b.map) return a.map < b.map;
    if (!(a.source == b.source)) return a.source < b.source;
    return a.target < b.target;
  }
};

using SliceCategory = Category<SliceObject, SliceMorphism>;

inline std::string show(const SliceMorphism& m) { return show(m.as_function()); }

inline bool is_slice_morphism(const SliceMorphism& m) {
  if (m.map.size() != m.source.dom.size()) return false;
  for (std::size_t x = 0; x < m.map.size(); ++x)
    if (m.map[x] >= m.target.dom.size() || m.target.map[m.map[x]] != m.source.map[x]) return false;
  return true;
}

/// Fibers of q: X -> B as lists of element indices.
inline std::vector<std::vector<std::size_t>> fibers(const SliceObject& q) {
  std::vector<std::vector<std::size_t>> out(q.cod.size());
  for (std::size_t x = 0; x < q.dom.size(); ++x) out[q.map[x]].push_back(x);
  return out;
}

inline std::vector<std::size_t> fiber_sizes(const SliceObject& q) {
  std::vector<std::size_t> out(q.cod.size(), 0);
  for (auto b : q.map) ++out[b];
  return out;
}

/// The canonical object with the given fiber sizes: carrier "0".."n-1" laid
/// out fiber by fiber.
inline SliceObject canonical_object(const FinSet& b, const std::vector<std::size_t>& sizes) {
  std::vector<std::size_t> m;
  for (std::size_t i = 0; i < sizes.size(); ++i) m.insert(m.end(), sizes[i], i);
  return {FinSet::range(m.size()), b, std::move(m)};
}

/// Every fiber-size vector over `n` points with total at most `bound`, by
/// total size and then lexicographically descending in the first fiber.
inline std::vector<std::vector<std::size_t>> fiber_size_vectors(std::size_t n, std::size_t bound) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t total = 0; total <= bound; ++total) {
    if (n == 0) {
      if (total == 0) out.push_back({});
      continue;
    }
    std::vector<std::size_t> v(n, 0);
    std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t left) {
      if (i + 1 == n) {
        v[i] = left;
        out.push_back(v);
        return;
      }
      for (std::size_t k = left + 1; k-- > 0;) {
        v[i] = k;
        go(i + 1, left - k);
      }
    };
    go(0, total);
  }
  return out;
}

namespace detail {

// Odometer over per-position choice lists; calls visit(choice vector).
template <class Visit>
void odometer(const std::vector<const std::vector<std::size_t>*>& choices, Visit&& visit) {
  for (const auto* c : choices)
    if (c->empty()) return;
  std::vector<std::size_t> pos(choices.size(), 0), val(choices.size());
  for (std::size_t i = 0; i < choices.size(); ++i) val[i] = (*choices[i])[0];
  while (true) {
    visit(val);
    std::size_t i = choices.size();
    while (i > 0) {
      --i;
      if (++pos[i] < choices[i]->size()) {
        val[i] = (*choices[i])[pos[i]];
        break;
      }
      pos[i] = 0;
      val[i] = (*choices[i])[0];
      if (i == 0) return;
    }
    if (choices.empty()) return;
  }
}

inline void permutations_of(const std::vector<std::size_t>& xs,
                            std::vector<std::vector<std::size_t>>& out) {
  auto v = xs;
  std::sort(v.begin(), v.end());
  do out.push_back(v);
  while (std::next_permutation(v.begin(), v.end()));
}

}  // namespace detail

/// All morphisms x -> y over the common base, in odometer order.
inline std::vector<SliceMorphism> slice_hom(const SliceObject& x, const SliceObject& y) {
  std::vector<SliceMorphism> out;
  if (!(x.cod == y.cod)) return out;
  const auto fy = fibers(y);
  std::vector<const std::vector<std::size_t>*> choices;
  choices.reserve(x.dom.size());
  for (std::size_t i = 0; i < x.dom.size(); ++i) choices.push_back(&fy[x.map[i]]);
  if (choices.empty()) {
    out.push_back({x, y, {}});
    return out;
  }
  detail::odometer(choices, [&](const std::vector<std::size_t>& v) { out.push_back({x, y, v}); });
  return out;
}

/// Fiberwise bijections x -> y with their inverses.
inline std::vector<std::pair<SliceMorphism, SliceMorphism>> slice_isos(const SliceObject& x,
                                                                       const SliceObject& y) {
  std::vector<std::pair<SliceMorphism, SliceMorphism>> out;
  if (!(x.cod == y.cod) || x.dom.size() != y.dom.size()) return out;
  const auto fx = fibers(x), fy = fibers(y);
  for (std::size_t b = 0; b < fx.size(); ++b)
    if (fx[b].size() != fy[b].size()) return out;
  std::vector<std::vector<std::vector<std::size_t>>> perms(fx.size());
  for (std::size_t b = 0; b < fx.size(); ++b) detail::permutations_of(fy[b], perms[b]);
  std::vector<std::size_t> idx(fx.size(), 0);
  while (true) {
    std::vector<std::size_t> fwd(x.dom.size()), bwd(y.dom.size());
    for (std::size_t b = 0; b < fx.size(); ++b)
      for (std::size_t k = 0; k < fx[b].size(); ++k) {
        fwd[fx[b][k]] = perms[b][idx[b]][k];
        bwd[perms[b][idx[b]][k]] = fx[b][k];
      }
    out.emplace_back(SliceMorphism{x, y, std::move(fwd)}, SliceMorphism{y, x, std::move(bwd)});
    std::size_t b = fx.size();
    while (b > 0 && ++idx[b - 1] == perms[b - 1].size()) idx[--b] = 0;
    if (b == 0) break;
  }
  return out;
}

inline SliceMorphism slice_identity(const SliceObject& x) {
  return {x, x, identity_function(x.dom).map};
}

/// g after f.
inline SliceMorphism slice_compose(const SliceMorphism& g, const SliceMorphism& f) {
  if (!(f.target == g.source)) throw std::invalid_argument("slice compose: " + show(g) + " ∘ " + show(f));
  std::vector<std::size_t> m(f.map.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = g.map[f.map[i]];
  return {f.source, g.target, std::move(m)};
}

inline std::optional<SliceMorphism> slice_inverse(const SliceMorphism& m) {
  if (!is_bijective(m.as_function())) return std::nullopt;
  return SliceMorphism{m.target, m.source, inverse(m.as_function()).map};
}

/// The slice over b. Objects up to the bound are the canonical ones.
inline SliceCategory slice(const FinSet& b) {
  SliceCategory c;
  c.name = "Set/{" + [&] {
    std::string s;
    for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + b.label(i);
    return s;
  }() + "}";
  c.objects = [b](std::size_t bound) {
    std::vector<SliceObject> out;
    for (const auto& v : fiber_size_vectors(b.size(), bound)) out.push_back(canonical_object(b, v));
    return out;
  };
  c.hom = slice_hom;
  c.identity = slice_identity;
  c.compose = slice_compose;
  c.dom = [](const SliceMorphism& m) { return m.source; };
  c.cod = [](const SliceMorphism& m) { return m.target; };
  c.isos = slice_isos;
  return c;
}

/// Swaps the first two elements sharing a fiber; identity if every fiber is
/// a singleton or empty.
inline SliceMorphism fiber_swap(const SliceObject& x) {
  auto m = slice_identity(x);
  for (const auto& f : fibers(x))
    if (f.size() >= 2) {
      std::swap(m.map[f[0]], m.map[f[1]]);
      break;
    }
  return m;
}

/// Change of base along g: E' -> E. Chosen pullbacks are memoised per object.
class ChangeOfBase {
 public:
  explicit ChangeOfBase(FinFunction g) : state_(std::make_shared<State>(std::move(g))) {}

  const FinFunction& along() const { return state_->g; }

  /// The chosen pullback of x along g; x.pr2 is the structure map.
  std::shared_ptr<const Pullback> pullback_of(const SliceObject& x) const {
    if (!(x.cod == state_->g.cod))
      throw std::invalid_argument("change of base: object not over the codomain of the base map");
    std::lock_guard lock(state_->mutex);
    auto it = state_->cache.find(x);
    if (it != state_->cache.end()) return it->second;
    auto pb = std::make_shared<const Pullback>(pullback(x, state_->g));
    state_->cache.emplace(x, pb);
    return pb;
  }

  SliceObject obj(const SliceObject& x) const { return pullback_of(x)->pr2; }

  /// First projection g*x -> x as an index map.
  const std::vector<std::size_t>& projection(const SliceObject& x) const {
    return pullback_of(x)->pr1.map;
  }

  SliceMorphism mor(const SliceMorphism& h) const {
    const auto src = pullback_of(h.source);
    const auto tgt = pullback_of(h.target);
    std::vector<std::size_t> m(src->object.size());
    for (std::size_t k = 0; k < m.size(); ++k) {
      m[k] = tgt->at(h.map[src->pr1.map[k]], src->pr2.map[k]);
      if (m[k] == Pullback::npos) throw std::invalid_argument("change of base: not a slice morphism");
    }
    return {src->pr2, tgt->pr2, std::move(m)};
  }

  Functor<SliceCategory, SliceCategory> functor(std::string name) const {
    auto self = *this;
    return {std::move(name), slice(state_->g.cod), slice(state_->g.dom),
            [self](const SliceObject& x) { return self.obj(x); },
            [self](const SliceMorphism& h) { return self.mor(h); }};
  }

 private:
  struct State {
    explicit State(FinFunction g_) : g(std::move(g_)) {}
    FinFunction g;
    std::mutex mutex;
    std::map<SliceObject, std::shared_ptr<const Pullback>> cache;
  };
  std::shared_ptr<State> state_;
};

inline Functor<SliceCategory, SliceCategory> change_of_base(const FinFunction& p) {
  return ChangeOfBase(p).functor("p*");
}

/// Post-composition with p.
inline Functor<SliceCategory, SliceCategory> sigma(const FinFunction& p) {
  auto obj = [p](const SliceObject& w) { return compose(p, w); };
  return {"Σ", slice(p.dom), slice(p.cod), obj, [obj](const SliceMorphism& m) {
            return SliceMorphism{obj(m.source), obj(m.target), m.map};
          }};
}

/// Σ_p ⊣ p*: unit w ↦ (w, q(w)); counit the first projection.
inline Adjunction<SliceCategory, SliceCategory> sigma_pullback_adjunction(
    const FinFunction& p, Mutation mutation = Mutation::None) {
  ChangeOfBase pull(p);
  auto left = sigma(p);
  auto right = pull.functor("p*");
  auto unit = [pull, p](const SliceObject& w) {
    const auto sw = compose(p, w);
    const auto pb = pull.pullback_of(sw);
    std::vector<std::size_t> m(w.dom.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = pb->at(i, w.map[i]);
    return SliceMorphism{w, pb->pr2, std::move(m)};
  };
  auto counit = [pull, p, mutation](const SliceObject& x) {
    const auto pb = pull.pullback_of(x);
    SliceMorphism e{compose(p, pb->pr2), x, pb->pr1.map};
    if (mutation == Mutation::BrokenTriangle) e = slice_compose(fiber_swap(x), e);
    return e;
  };
  return {left,
          right,
          {"η", identity_functor(left.source), compose(right, left), unit},
          {"ε", compose(left, right), identity_functor(right.source), counit}};
}

/// The unique isomorphism x -> y matching elements with the same image in a
/// common object W and the same base point. Both x and y must be pullbacks of
/// W along maps that agree; `px`, `py` are their projections to W.
inline SliceMorphism canonical_comparison(const SliceObject& x, const std::vector<std::size_t>& px,
                                          const SliceObject& y, const std::vector<std::size_t>& py,
                                          std::size_t w_size) {
  if (!(x.cod == y.cod) || x.dom.size() != y.dom.size())
    throw std::invalid_argument("canonical comparison: objects over different bases or of different size");
  const auto nb = y.cod.size();
  std::vector<std::size_t> where(w_size * nb, Pullback::npos);
  for (std::size_t j = 0; j < y.dom.size(); ++j) where[py[j] * nb + y.map[j]] = j;
  std::vector<std::size_t> m(x.dom.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    m[i] = where[px[i] * nb + x.map[i]];
    if (m[i] == Pullback::npos)
      throw std::invalid_argument("canonical comparison: no partner for " + x.dom.label(i) +
                                  " (the two composite base maps differ)");
  }
  return {x, y, std::move(m)};
}

}  // namespace descent
