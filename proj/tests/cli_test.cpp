#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>

#include "commands.hpp"

using namespace descent;
using namespace descent::cli;

namespace {

const std::string kSpecs = DESCENT_SPEC_DIR;

SpecFile load(const std::string& name) { return parse_spec(read_file(kSpecs + "/" + name)); }

std::size_t error_line(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const SpecError& e) {
    return e.line();
  }
  return 0;
}

int run(const std::string& args) {
  const std::string cmd = std::string(DESCENT_KIT) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(SpecFile, ParsesSetsAndFunctions) {
  const auto s = load("fold.yaml");
  ASSERT_EQ(s.sets.size(), 2u);
  const auto* p = s.function("p");
  ASSERT_NE(p, nullptr);
  EXPECT_EQ(p->dom.labels(), (std::vector<std::string>{"left", "right"}));
  EXPECT_EQ(p->map, (std::vector<std::size_t>{0, 0}));
  ASSERT_TRUE(s.task.has_value());
  EXPECT_EQ(s.task->bound, 4u);
}

TEST(SpecFile, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("sets:\n  E: [a]\nfunctions:\n  p: {from: E, to: E, map: {a: a}, extra: 1}\n"), 4u);
  EXPECT_EQ(error_line("sets:\n  E: [a]\nbogus: 1\n"), 3u);
  EXPECT_EQ(error_line("functions:\n  p: {from: E, to: E, map: {}}\n"), 2u);
  EXPECT_EQ(error_line("sets:\n  E: [a, b]\n  B: [x]\nfunctions:\n  p: {from: E, to: B, map: {a: x}}\n"), 5u);
  EXPECT_EQ(error_line("sets:\n  E: [a, a]\n"), 2u);
  EXPECT_EQ(error_line("sets:\n  E: [a\n"), 3u);
  EXPECT_EQ(error_line("task:\n  command: classify\nsets:\n  E: [a]\n"), 3u);
  EXPECT_EQ(error_line("sets:\n  E: [a]\ntask:\n  command: classify\n  map: q\n"), 5u);
  EXPECT_EQ(error_line("sets:\n  E: [\"(a\"]\n"), 2u);
}

TEST(SpecFile, CategoriesAndFunctors) {
  const auto s = load("arrow_diagram.yaml");
  const auto* two = s.category("Two");
  ASSERT_NE(two, nullptr);
  EXPECT_TRUE(validate_category(*two).empty());
  EXPECT_EQ(two->morphisms.size(), 3u);
  ASSERT_TRUE(s.diagram.has_value());
  EXPECT_TRUE(validate_table_diagram(s.diagram->diagram).empty());
  // identities of a functor follow its object map
  EXPECT_EQ(s.functor("Id")->table.morphisms.at("id_0"), "id_0");
}

TEST(SpecFile, LiteralIdentities) {
  const auto s = parse_spec(
      "categories:\n  C:\n    objects: [a, b]\n    identities: {a: i}\n    compose:\n      - [i, i, i]\n");
  const auto vs = validate_category(*s.category("C"));
  ASSERT_FALSE(vs.empty());
  EXPECT_EQ(vs.front().law, "missing identity");
}

TEST(Commands, ClassifyVerdicts) {
  const Options o;
  EXPECT_EQ(cmd_classify(load("identity.yaml"), "identity", o).exit_code, kEffective);
  EXPECT_EQ(cmd_classify(load("fold.yaml"), "fold", o).exit_code, kEffective);
  EXPECT_EQ(cmd_classify(load("missed_point.yaml"), "missed", o).exit_code, kNotAlmost);
  EXPECT_EQ(cmd_classify(load("swap.yaml"), "swap", o).exit_code, kDescent);
  EXPECT_EQ(cmd_classify(load("collapse.yaml"), "collapse", o).exit_code, kAlmost);
}

TEST(Commands, NotAlmostWitnessReparses) {
  const auto r = cmd_classify(load("missed_point.yaml"), "missed", {});
  ASSERT_EQ(r.witnesses.size(), 1u);
  const auto w = parse_spec(r.witnesses.front());
  const auto *p = w.function("p"), *f = w.function("f"), *g = w.function("g"), *x = w.function("x"),
             *y = w.function("y");
  ASSERT_TRUE(p && f && g && x && y);
  const SliceMorphism fm{*x, *y, f->map}, gm{*x, *y, g->map};
  EXPECT_TRUE(is_slice_morphism(fm));
  EXPECT_TRUE(is_slice_morphism(gm));
  EXPECT_NE(f->map, g->map);
  EXPECT_EQ(pulled_back_graph(*p, fm), pulled_back_graph(*p, gm));
  // the witness is itself a spec: classifying it gives the same verdict
  EXPECT_EQ(cmd_classify(w, "witness", {}).exit_code, kNotAlmost);
}

TEST(Commands, TableWitnessesReparse) {
  for (const auto* name : {"swap.yaml", "collapse.yaml"}) {
    const auto r = cmd_classify(load(name), name, {});
    ASSERT_FALSE(r.witnesses.empty()) << name;
    for (const auto& w : r.witnesses) {
      const auto s = parse_spec(w);
      EXPECT_FALSE(s.categories.empty());
      for (const auto& c : s.categories) EXPECT_TRUE(validate_category(c.value).empty());
      EXPECT_TRUE(s.note.has_value());
    }
  }
}

TEST(Commands, BenabouRoubaud) {
  Options small;
  small.bound = 3;
  EXPECT_EQ(cmd_br(load("identity.yaml"), "identity", small, Mutation::None).verdict, "Equivalence");
  const auto ok = cmd_br(load("fold.yaml"), "fold", {}, Mutation::None);
  EXPECT_EQ(ok.verdict, "Equivalence");
  EXPECT_EQ(ok.exit_code, kEffective);
  const auto bad = cmd_br(load("fold.yaml"), "fold", {}, Mutation::BrokenMu);
  EXPECT_EQ(bad.exit_code, kIncident);
  EXPECT_FALSE(bad.rows.empty());
}

TEST(Commands, Validate) {
  EXPECT_EQ(cmd_validate(load("arrow_diagram.yaml"), "a", {}).exit_code, kEffective);
  EXPECT_EQ(cmd_validate(load("fold.yaml"), "f", {}).exit_code, kEffective);
  const auto bad = cmd_validate(load("broken_table.yaml"), "b", {});
  EXPECT_EQ(bad.exit_code, kInputError);
  std::size_t violations = 0;
  for (const auto& row : bad.rows) violations += row.status == "VIOLATION";
  EXPECT_EQ(violations, 1u);
}

TEST(Commands, RenderingsCarryTheSameVerdict) {
  const auto r = cmd_classify(load("missed_point.yaml"), "missed", {});
  const auto j = nlohmann::json::parse(render(r, "machine"));
  EXPECT_EQ(j["verdict"], r.verdict);
  EXPECT_EQ(j["exit_code"], r.exit_code);
  EXPECT_EQ(j["witnesses"].size(), r.witnesses.size());
  const auto text = render(r, "text");
  EXPECT_NE(text.find("verdict: " + r.verdict), std::string::npos);
  EXPECT_NE(text.find("exit code: " + std::to_string(r.exit_code)), std::string::npos);
  for (const auto& [k, v] : r.facts) EXPECT_NE(text.find(k + ": " + v), std::string::npos);
}

TEST(Commands, HarnessIsReproducible) {
  GeneratorOptions g;
  g.seed = 11;
  g.count = 6;
  const auto a = cmd_harness(HarnessKind::Coherence, g, {});
  const auto b = cmd_harness(HarnessKind::Coherence, g, {});
  ASSERT_EQ(a.rows.size(), 6u);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].subject, b.rows[i].subject);
    EXPECT_EQ(a.rows[i].status, b.rows[i].status);
  }
  EXPECT_EQ(a.verdict, "PASS");
}

TEST(Binary, ExitCodesDoNotDependOnFormat) {
  const std::vector<std::pair<std::string, int>> cases = {
      {"classify " + kSpecs + "/identity.yaml", 0},       {"classify " + kSpecs + "/fold.yaml", 0},
      {"classify " + kSpecs + "/swap.yaml", 3},           {"classify " + kSpecs + "/collapse.yaml", 4},
      {"classify " + kSpecs + "/missed_point.yaml", 5},   {"classify " + kSpecs + "/no_such_file.yaml", 2},
      {"validate " + kSpecs + "/broken_table.yaml", 2},   {"validate " + kSpecs + "/arrow_diagram.yaml", 0},
      {"br " + kSpecs + "/fold.yaml", 0},                 {"br " + kSpecs + "/fold.yaml --tamper broken-mu", 1},
      {"br " + kSpecs + "/fold.yaml --tamper nonsense", 2}, {"harness coherence --sizes 1 --exhaustive", 0},
      {"harness nonsense", 2}};
  for (const auto& [args, code] : cases) {
    EXPECT_EQ(run(args), code) << args;
    EXPECT_EQ(run("--format machine " + args), code) << args;
  }
}
