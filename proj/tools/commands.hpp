#pragma once

#include <chrono>
#include <fstream>
#include <sstream>
#include <string>

#include "descent/monadic.hpp"
#include "descent/theorems.hpp"
#include "report.hpp"
#include "spec_file.hpp"

namespace descent::cli {

struct Options {
  std::optional<std::size_t> bound;
  std::string format = "text";
};

constexpr std::size_t default_cli_bound = 4;

inline int exit_code_of(DescentClass c) {
  switch (c) {
    case DescentClass::Effective: return kEffective;
    case DescentClass::Descent: return kDescent;
    case DescentClass::Almost: return kAlmost;
    case DescentClass::NotAlmost: return kNotAlmost;
  }
  return kIncident;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(0, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace detail {

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::string show_levels(const FinFunction& p) {
  return std::to_string(p.dom.size()) + " -> " + std::to_string(p.cod.size()) + ", " + show(p);
}

// The map a command acts on: task.map, else `p`, else the only function.
inline const FinFunction* target_map(const SpecFile& s) {
  if (s.task && s.task->map) return s.function(*s.task->map);
  if (const auto* p = s.function("p")) return p;
  if (s.functions.size() == 1) return &s.functions.front().value;
  return nullptr;
}

inline std::size_t pick_bound(const Options& o, const SpecFile& s) {
  if (o.bound) return *o.bound;
  if (s.task && s.task->bound) return *s.task->bound;
  return default_cli_bound;
}

inline void add_slice_object(SpecWriter& w, const std::string& name, const std::string& carrier,
                             const std::string& base, const SliceObject& x) {
  w.add_function(name, carrier, base, x);
}

inline void add_slice_morphism(SpecWriter& w, const std::string& name, const SliceMorphism& m,
                               const std::string& src, const std::string& tgt, const std::string& base) {
  add_slice_object(w, src, src + "_carrier", base, m.source);
  add_slice_object(w, tgt, tgt + "_carrier", base, m.target);
  w.add_function(name, src + "_carrier", tgt + "_carrier", m.as_function());
}

inline std::vector<std::string> slice_witnesses(const FinFunction& p, const Classification<SliceCategory>& c) {
  std::vector<std::string> out;
  const auto& d = c.detail;
  if (!d.faithful.holds && d.faithful.witness) {
    SpecWriter w;
    w.set_note("f and g are distinct morphisms x -> y over B whose pullbacks along p coincide");
    w.add_set("E", p.dom);
    w.add_set("B", p.cod);
    w.add_function("p", "E", "B", p);
    add_slice_morphism(w, "f", d.faithful.witness->first, "x", "y", "B");
    add_slice_morphism(w, "g", d.faithful.witness->second, "x", "y", "B");
    out.push_back(w.str());
  }
  if (d.full && !d.full->holds && d.full->witness) {
    const auto& [x, y, m] = *d.full->witness;
    SpecWriter w;
    w.set_note("m is a morphism of descent data from the pullback of x to that of y that is not pulled back from any x -> y");
    w.add_set("E", p.dom);
    w.add_set("B", p.cod);
    w.add_function("p", "E", "B", p);
    add_slice_object(w, "x", "X", "B", x);
    add_slice_object(w, "y", "Y", "B", y);
    add_slice_morphism(w, "m", m.m, "w", "w2", "E");
    out.push_back(w.str());
  }
  if (d.essentially_surjective && !d.essentially_surjective->holds && d.essentially_surjective->witness) {
    const auto& x = *d.essentially_surjective->witness;
    SpecWriter w;
    w.set_note("(w, rho) is a descent datum not isomorphic to the pullback of any object over B");
    w.add_set("E", p.dom);
    w.add_set("B", p.cod);
    w.add_function("p", "E", "B", p);
    w.add_function("w", "W", "E", x.w);
    add_slice_morphism(w, "rho", x.rho, "d1w", "d0w", "E2");
    out.push_back(w.str());
  }
  return out;
}

inline std::vector<std::string> table_witnesses(const TableDiagram& t, const Classification<TableCategory>& c) {
  std::vector<std::string> out;
  const auto& d = c.detail;
  auto doc = [&](const std::string& note) {
    SpecWriter w;
    w.set_note(note);
    w.add_category(t.c0);
    if (t.c1.name != t.c0.name) w.add_category(t.c1);
    if (t.c2.name != t.c0.name && t.c2.name != t.c1.name) w.add_category(t.c2);
    out.push_back(w.str());
  };
  if (!d.faithful.holds && d.faithful.witness)
    doc("Φ identifies " + d.faithful.witness->first + " and " + d.faithful.witness->second + " in " + t.c0.name);
  if (d.full && !d.full->holds && d.full->witness) {
    const auto& [x, y, m] = *d.full->witness;
    doc("the descent morphism " + m.m + " in " + t.c1.name + " between Φ(" + x + ") and Φ(" + y +
        ") is not in the image of Φ");
  }
  if (d.essentially_surjective && !d.essentially_surjective->holds && d.essentially_surjective->witness) {
    const auto& x = *d.essentially_surjective->witness;
    doc("the descent datum (" + x.w + ", " + x.rho + ") with " + x.rho + " in " + t.c2.name +
        " is not reached by Φ");
  }
  return out;
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

template <class C>
void add_classification_facts(Report& r, const Classification<C>& c) {
  const auto& d = c.detail;
  r.fact("faithful", yes_no(d.faithful.holds));
  r.fact("full", d.full ? yes_no(d.full->holds) : "not checked");
  r.fact("essentially surjective", d.essentially_surjective ? yes_no(d.essentially_surjective->holds) : "not checked");
}

}  // namespace detail

inline Report cmd_classify(const SpecFile& s, const std::string& input, const Options& o) {
  detail::Timer timer;
  Report r;
  r.command = "classify";
  r.input = input;
  if (const auto* p = detail::target_map(s)) {
    const auto bound = detail::pick_bound(o, s);
    const auto c = classify(*p, bound);
    r.bound = bound;
    r.bounded = true;
    r.verdict = to_string(c.level);
    r.exit_code = exit_code_of(c.level);
    r.fact("map", detail::show_levels(*p));
    r.fact("surjective", detail::yes_no(is_surjective(*p)));
    detail::add_classification_facts(r, c);
    r.witnesses = detail::slice_witnesses(*p, c);
  } else if (s.diagram) {
    const auto& t = s.diagram->diagram;
    const auto violations = validate_table_diagram(t);
    if (!violations.empty()) {
      r.verdict = "invalid diagram";
      r.exit_code = kInputError;
      for (const auto& v : violations) r.rows.push_back({"VIOLATION", v.law, v.where + " " + v.detail});
    } else {
      const auto c = classify(to_diagram(t), 0);
      r.verdict = to_string(c.level);
      r.exit_code = exit_code_of(c.level);
      r.fact("diagram", t.name);
      detail::add_classification_facts(r, c);
      r.witnesses = detail::table_witnesses(t, c);
    }
  } else {
    throw SpecError(0, "classify needs a function (task.map, a function named p, or a single function) or a diagram");
  }
  r.seconds = timer.seconds();
  return r;
}

inline Report cmd_br(const SpecFile& s, const std::string& input, const Options& o, Mutation tamper) {
  detail::Timer timer;
  Report r;
  r.command = "br";
  r.input = input;
  const auto* p = detail::target_map(s);
  if (!p) throw SpecError(0, "br needs a function (task.map, a function named p, or a single function)");
  const auto bound = detail::pick_bound(o, s);
  const auto rep = benabou_roubaud(*p, bound, tamper);
  r.bound = bound;
  r.bounded = true;
  r.fact("map", detail::show_levels(*p));
  if (tamper != Mutation::None) r.fact("tamper", to_string(tamper));
  r.fact("descent data", std::to_string(rep.desc_objects) + " in " + std::to_string(rep.desc_classes) + " classes");
  r.fact("algebras", std::to_string(rep.em_objects) + " in " + std::to_string(rep.em_classes) + " classes");
  r.fact("factorizations agree", detail::yes_no(rep.factorizations_agree));
  for (const auto& v : rep.incidents) r.rows.push_back({"INCIDENT", v.law, v.where + " " + v.detail});
  if (rep.witness) r.rows.push_back({"WITNESS", "Ψ", *rep.witness});
  r.verdict = rep.incidents.empty() ? to_string(rep.level) : "incident";
  r.exit_code = rep.ok() ? kEffective : kIncident;
  r.seconds = timer.seconds();
  return r;
}

inline Report cmd_validate(const SpecFile& s, const std::string& input, const Options& o) {
  detail::Timer timer;
  Report r;
  r.command = "validate";
  r.input = input;
  std::size_t violations = 0, incidents = 0;
  auto violation = [&](const std::string& subject, const Violation& v) {
    ++violations;
    r.rows.push_back({"VIOLATION", subject, v.law + (v.where.empty() ? "" : " at " + v.where) +
                                               (v.detail.empty() ? "" : ": " + v.detail)});
  };
  std::set<std::string> valid_categories;
  for (const auto& c : s.categories) {
    const auto vs = validate_category(c.value);
    for (const auto& v : vs) violation("category " + c.name, v);
    if (vs.empty()) {
      valid_categories.insert(c.name);
      r.rows.push_back({"OK", "category " + c.name, ""});
    }
  }
  std::set<std::string> valid_functors;
  for (const auto& f : s.functors) {
    const auto& d = f.value;
    if (!valid_categories.count(d.source) || !valid_categories.count(d.target)) {
      r.rows.push_back({"SKIP", "functor " + f.name, "endpoint category is invalid"});
      continue;
    }
    std::vector<Violation> vs;
    try {
      descent::detail::check_table_functor(vs, d.table, *s.category(d.source), *s.category(d.target));
    } catch (const std::exception& e) {
      vs.push_back({"functor table", f.name, e.what()});
    }
    for (const auto& v : vs) violation("functor " + f.name, v);
    if (vs.empty()) {
      valid_functors.insert(f.name);
      r.rows.push_back({"OK", "functor " + f.name, ""});
    }
  }
  for (const auto& t : s.transformations) {
    const auto& d = t.value;
    if (!valid_functors.count(d.source) || !valid_functors.count(d.target)) {
      r.rows.push_back({"SKIP", "transformation " + t.name, "endpoint functor is invalid"});
      continue;
    }
    const auto& f = *s.functor(d.source);
    const auto& g = *s.functor(d.target);
    const auto src = to_category(*s.category(f.source)), tgt = to_category(*s.category(f.target));
    const auto ff = to_functor(f.table, src, tgt), gg = to_functor(g.table, src, tgt);
    auto comps = std::make_shared<const std::map<std::string, std::string>>(d.components);
    NatTrans<TableCategory, TableCategory> a{t.name, ff, gg, [comps, name = t.name](const std::string& x) {
                                               auto it = comps->find(x);
                                               if (it == comps->end())
                                                 throw std::invalid_argument(name + " has no component at " + x);
                                               return it->second;
                                             }};
    std::vector<Violation> vs;
    try {
      vs = check_natural(a, 0);
    } catch (const std::exception& e) {
      vs.push_back({"naturality", t.name, e.what()});
    }
    for (const auto& v : vs) violation("transformation " + t.name, v);
    if (vs.empty()) r.rows.push_back({"OK", "transformation " + t.name, ""});
  }
  if (s.diagram) {
    const auto& t = s.diagram->diagram;
    std::vector<Violation> vs;
    try {
      vs = validate_table_diagram(t);
    } catch (const std::exception& e) {
      vs.push_back({"diagram", t.name, e.what()});
    }
    for (const auto& v : vs) violation("diagram " + t.name, v);
    if (vs.empty()) {
      const auto rep = validate_coherence(to_diagram(t), 0);
      for (const auto& f : rep.failures) {
        ++violations;
        r.rows.push_back({"VIOLATION", "diagram " + t.name, f.equation + " at " + f.object + ": " + f.lhs + " vs " + f.rhs});
      }
      if (rep.ok()) r.rows.push_back({"OK", "diagram " + t.name, "presentation equations hold"});
    }
  }
  if (!s.functions.empty()) {
    const auto bound = detail::pick_bound(o, s);
    r.bound = bound;
    r.bounded = true;
    for (const auto& f : s.functions) {
      // the basic fibration is coherent by construction; a failure is ours
      const auto rep = validate_coherence(basic_fibration(f.value), bound);
      for (const auto& fail : rep.failures) {
        ++incidents;
        r.rows.push_back({"INCIDENT", "basic fibration of " + f.name,
                          fail.equation + " at " + fail.object + ": " + fail.lhs + " vs " + fail.rhs});
      }
      if (rep.ok())
        r.rows.push_back({"OK", "basic fibration of " + f.name,
                          "presentation equations hold on " + std::to_string(rep.objects_checked) + " objects"});
    }
  }
  r.fact("violations", std::to_string(violations));
  r.fact("incidents", std::to_string(incidents));
  r.verdict = incidents ? "incident" : violations ? "invalid" : "valid";
  r.exit_code = incidents ? kIncident : violations ? kInputError : kEffective;
  r.seconds = timer.seconds();
  return r;
}

inline Report cmd_harness(HarnessKind kind, const GeneratorOptions& g, const Options& o) {
  detail::Timer timer;
  Report r;
  r.command = "harness";
  r.input = to_string(kind);
  const auto rep = run_harness(kind, g, o.bound);
  r.bound = rep.bound;
  r.bounded = true;
  r.fact("mode", g.exhaustive ? "exhaustive" : "random");
  r.fact("sizes", std::to_string(g.sizes));
  if (!g.exhaustive) {
    r.fact("seed", std::to_string(g.seed));
    r.fact("count", std::to_string(g.count));
  }
  r.fact("instances", std::to_string(rep.results.size()));
  r.fact("pass", std::to_string(rep.count(Verdict::Pass)));
  r.fact("fail", std::to_string(rep.count(Verdict::Fail)));
  r.fact("skip", std::to_string(rep.count(Verdict::Skip)));
  for (const auto& c : rep.results) {
    std::string detail = c.detail;
    for (const auto& w : c.witnesses) detail += "; " + w;
    r.rows.push_back({to_string(c.verdict), c.instance, detail});
  }
  r.verdict = rep.ok() ? "PASS" : "FAIL";
  r.exit_code = rep.ok() ? kEffective : kIncident;
  r.seconds = timer.seconds();
  return r;
}

}  // namespace descent::cli
