#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "descent/label.hpp"

namespace descent {

/// A finite set of distinct labels. Elements are addressed by position.
class FinSet {
 public:
  FinSet() : labels_(empty()) {}
  explicit FinSet(std::vector<std::string> labels)
      : labels_(std::make_shared<const std::vector<std::string>>(std::move(labels))) {
    std::set<std::string_view> seen;
    for (const auto& l : *labels_)
      if (!seen.insert(l).second) throw std::invalid_argument("duplicate element label " + l);
  }

  /// {"0", ..., "n-1"}
  static FinSet range(std::size_t n) {
    std::vector<std::string> ls(n);
    for (std::size_t i = 0; i < n; ++i) ls[i] = std::to_string(i);
    return FinSet(std::move(ls));
  }

  std::size_t size() const { return labels_->size(); }
  bool empty_set() const { return labels_->empty(); }
  const std::string& label(std::size_t i) const { return (*labels_)[i]; }
  const std::vector<std::string>& labels() const { return *labels_; }

  std::optional<std::size_t> index_of(std::string_view l) const {
    auto it = std::find(labels_->begin(), labels_->end(), l);
    if (it == labels_->end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_->begin());
  }

  friend bool operator==(const FinSet& a, const FinSet& b) {
    return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
  }
  friend bool operator<(const FinSet& a, const FinSet& b) {
    if (a.labels_ == b.labels_) return false;
    if (a.size() != b.size()) return a.size() < b.size();
    return *a.labels_ < *b.labels_;
  }

 private:
  static std::shared_ptr<const std::vector<std::string>> empty() {
    static const auto e = std::make_shared<const std::vector<std::string>>();
    return e;
  }
  std::shared_ptr<const std::vector<std::string>> labels_;
};

struct FinFunction {
  FinSet dom;
  FinSet cod;
  std::vector<std::size_t> map;

  std::size_t operator()(std::size_t i) const { return map[i]; }
  const std::string& image_label(std::size_t i) const { return cod.label(map[i]); }

  friend bool operator==(const FinFunction& f, const FinFunction& g) {
    return f.map == g.map && f.dom == g.dom && f.cod == g.cod;
  }
  friend bool operator<(const FinFunction& f, const FinFunction& g) {
    if (f.dom.size() != g.dom.size()) return f.dom.size() < g.dom.size();
    if (f.map != g.map) return f.map < g.map;
    if (!(f.dom == g.dom)) return f.dom < g.dom;
    return f.cod < g.cod;
  }
};

inline bool is_valid(const FinFunction& f) {
  if (f.map.size() != f.dom.size()) return false;
  return std::all_of(f.map.begin(), f.map.end(), [&](std::size_t y) { return y < f.cod.size(); });
}

inline FinFunction make_function(FinSet dom, FinSet cod, std::vector<std::size_t> map) {
  FinFunction f{std::move(dom), std::move(cod), std::move(map)};
  if (!is_valid(f)) throw std::invalid_argument("function table is not total into its codomain");
  return f;
}

inline FinFunction identity_function(const FinSet& x) {
  std::vector<std::size_t> m(x.size());
  std::iota(m.begin(), m.end(), std::size_t{0});
  return {x, x, std::move(m)};
}

/// g after f.
inline FinFunction compose(const FinFunction& g, const FinFunction& f) {
  if (!(f.cod == g.dom)) throw std::invalid_argument("compose: codomain/domain mismatch");
  std::vector<std::size_t> m(f.map.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = g.map[f.map[i]];
  return {f.dom, g.cod, std::move(m)};
}

inline bool is_surjective(const FinFunction& f) {
  std::vector<bool> hit(f.cod.size(), false);
  for (auto y : f.map) hit[y] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

inline bool is_injective(const FinFunction& f) {
  std::vector<bool> hit(f.cod.size(), false);
  for (auto y : f.map) {
    if (hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

inline bool is_bijective(const FinFunction& f) {
  return f.dom.size() == f.cod.size() && is_injective(f);
}

inline FinFunction inverse(const FinFunction& f) {
  if (!is_bijective(f)) throw std::invalid_argument("inverse of a non-bijection");
  std::vector<std::size_t> m(f.map.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[f.map[i]] = i;
  return {f.cod, f.dom, std::move(m)};
}

inline FinFunction constant_function(const FinSet& x, const FinSet& y, std::size_t value) {
  return make_function(x, y, std::vector<std::size_t>(x.size(), value));
}

/// All functions x -> y, the last element index varying fastest.
inline std::vector<FinFunction> all_functions(const FinSet& x, const FinSet& y) {
  std::vector<FinFunction> out;
  if (y.size() == 0 && x.size() > 0) return out;
  std::vector<std::size_t> m(x.size(), 0);
  while (true) {
    out.push_back({x, y, m});
    std::size_t i = m.size();
    while (i > 0 && ++m[i - 1] == y.size()) m[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

inline std::string show(const FinFunction& f) {
  std::string s = "{";
  for (std::size_t i = 0; i < f.map.size(); ++i) {
    if (i) s += ", ";
    s += f.dom.label(i) + "↦" + f.cod.label(f.map[i]);
  }
  return s + "}";
}

/// Chosen pullback: pairs (x, y) with f(x) = g(y), ordered by (x, y).
struct Pullback {
  FinFunction f;
  FinFunction g;
  FinSet object;
  FinFunction pr1;
  FinFunction pr2;
  // index[x * |Y| + y] is the position of (x, y), or npos
  std::vector<std::size_t> index;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t at(std::size_t x, std::size_t y) const { return index[x * g.dom.size() + y]; }
};

inline Pullback pullback(const FinFunction& f, const FinFunction& g) {
  if (!(f.cod == g.cod)) throw std::invalid_argument("pullback: codomain mismatch");
  const auto nx = f.dom.size(), ny = g.dom.size();
  // bucket the y's by image so the scan is linear in the output
  std::vector<std::vector<std::size_t>> over(f.cod.size());
  for (std::size_t y = 0; y < ny; ++y) over[g.map[y]].push_back(y);
  std::vector<std::string> labels;
  std::vector<std::size_t> p1, p2;
  std::vector<std::size_t> index(nx * ny, Pullback::npos);
  for (std::size_t x = 0; x < nx; ++x)
    for (auto y : over[f.map[x]]) {
      index[x * ny + y] = labels.size();
      labels.push_back(pair_label(f.dom.label(x), g.dom.label(y)));
      p1.push_back(x);
      p2.push_back(y);
    }
  FinSet p(std::move(labels));
  return {f, g, p, {p, f.dom, std::move(p1)}, {p, g.dom, std::move(p2)}, std::move(index)};
}

/// The unique u with pr1∘u = q1 and pr2∘u = q2.
inline FinFunction mediating_map(const Pullback& pb, const FinFunction& q1, const FinFunction& q2) {
  if (!(q1.dom == q2.dom) || !(q1.cod == pb.f.dom) || !(q2.cod == pb.g.dom))
    throw std::invalid_argument("mediating_map: cone legs do not match the cospan");
  std::vector<std::size_t> m(q1.dom.size());
  for (std::size_t w = 0; w < m.size(); ++w) {
    const auto k = pb.at(q1.map[w], q2.map[w]);
    if (k == Pullback::npos)
      throw std::invalid_argument("mediating_map: cone does not commute at " + q1.dom.label(w));
    m[w] = k;
  }
  return {q1.dom, pb.object, std::move(m)};
}

struct Quotient {
  FinSet object;
  FinFunction proj;
};

/// X modulo the equivalence relation generated by `pairs` (index pairs).
/// Each class is labelled by its smallest member label; classes are sorted.
inline Quotient quotient(const FinSet& x,
                         const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<std::size_t> parent(x.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& [a, b] : pairs) {
    if (a >= x.size() || b >= x.size()) throw std::out_of_range("quotient: pair outside the set");
    const auto ra = find(a), rb = find(b);
    if (ra != rb) parent[ra] = rb;
  }
  std::vector<std::size_t> least(x.size(), Pullback::npos);
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto& l = least[find(i)];
    if (l == Pullback::npos || x.label(i) < x.label(l)) l = i;
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (find(i) == i) names.push_back(x.label(least[i]));
  std::sort(names.begin(), names.end());
  FinSet q(names);
  std::vector<std::size_t> m(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto& n = x.label(least[find(i)]);
    m[i] = static_cast<std::size_t>(std::lower_bound(names.begin(), names.end(), n) - names.begin());
  }
  return {q, {x, q, std::move(m)}};
}

struct Product {
  FinSet object;
  FinFunction pr1;
  FinFunction pr2;
};

inline Product product(const FinSet& x, const FinSet& y) {
  std::vector<std::string> labels;
  std::vector<std::size_t> p1, p2;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) {
      labels.push_back(pair_label(x.label(i), y.label(j)));
      p1.push_back(i);
      p2.push_back(j);
    }
  FinSet p(std::move(labels));
  return {p, {p, x, std::move(p1)}, {p, y, std::move(p2)}};
}

inline FinFunction product_map(const FinFunction& f, const FinFunction& g, const Product& src,
                               const Product& tgt) {
  std::vector<std::size_t> m(src.object.size());
  for (std::size_t k = 0; k < m.size(); ++k)
    m[k] = f.map[src.pr1.map[k]] * g.cod.size() + g.map[src.pr2.map[k]];
  return {src.object, tgt.object, std::move(m)};
}

struct Equalizer {
  FinSet object;
  FinFunction inclusion;
};

inline Equalizer equalizer(const FinFunction& f, const FinFunction& g) {
  if (!(f.dom == g.dom) || !(f.cod == g.cod))
    throw std::invalid_argument("equalizer: maps are not parallel");
  std::vector<std::string> labels;
  std::vector<std::size_t> m;
  for (std::size_t i = 0; i < f.dom.size(); ++i)
    if (f.map[i] == g.map[i]) {
      labels.push_back(f.dom.label(i));
      m.push_back(i);
    }
  FinSet e(std::move(labels));
  return {e, {e, f.dom, std::move(m)}};
}

struct Coproduct {
  FinSet object;
  FinFunction in1;
  FinFunction in2;
};

inline Coproduct coproduct(const FinSet& x, const FinSet& y) {
  std::vector<std::string> labels;
  std::vector<std::size_t> i1, i2;
  for (std::size_t i = 0; i < x.size(); ++i) {
    i1.push_back(labels.size());
    labels.push_back(pair_label("1", x.label(i)));
  }
  for (std::size_t j = 0; j < y.size(); ++j) {
    i2.push_back(labels.size());
    labels.push_back(pair_label("2", y.label(j)));
  }
  FinSet c(std::move(labels));
  return {c, {x, c, std::move(i1)}, {y, c, std::move(i2)}};
}

}  // namespace descent
