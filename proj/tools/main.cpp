#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace descent;
using namespace descent::cli;

namespace {

int emit(const Report& r, const Options& o) {
  std::cout << render(r, o.format);
  return r.exit_code;
}

// Parse errors and unreadable files exit with 2; anything else thrown while
// checking is an internal incident.
template <class F>
int guarded(const std::string& command, const std::string& input, const Options& o, F run) {
  try {
    return emit(run(), o);
  } catch (const SpecError& e) {
    Report r;
    r.command = command;
    r.input = input;
    r.verdict = "input error";
    r.exit_code = kInputError;
    r.rows.push_back({"ERROR", input, e.what()});
    return emit(r, o);
  } catch (const std::exception& e) {
    Report r;
    r.command = command;
    r.input = input;
    r.verdict = "incident";
    r.exit_code = kIncident;
    r.rows.push_back({"INCIDENT", input, e.what()});
    return emit(r, o);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"descent_kit: descent along maps of finite sets and small diagrams of finite categories"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  std::size_t bound = default_cli_bound;
  auto* bound_opt = app.add_option("--bound", bound, "Largest object size enumerated (default 4; harness kinds pick their own)");
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "machine"}));

  std::string file;
  auto* classify = app.add_subcommand("classify", "Classify a map (or a table diagram) as effective/descent/almost/not");
  classify->add_option("file", file, "Spec file")->required();

  auto* br = app.add_subcommand("br", "Compare descent data with algebras of the pullback monad");
  br->add_option("file", file, "Spec file")->required();
  std::string tamper = "none";
  br->add_option("--tamper", tamper, "Inject a corruption: broken-mu, inverted-theta, dropped-cocycle, wrong-face-convention, non-natural-rho, broken-triangle");

  auto* harness = app.add_subcommand("harness", "Run a generated sweep of checks");
  std::string kind;
  std::vector<std::string> kinds;
  for (const auto& [k, name] : harness_kinds()) kinds.push_back(name);
  harness->add_option("kind", kind, "Which checks")->required()->check(CLI::IsMember(kinds));
  GeneratorOptions gen;
  harness->add_option("--sizes", gen.sizes, "Largest carrier size");
  harness->add_option("--seed", gen.seed, "Random seed");
  harness->add_option("--count", gen.count, "Instances drawn in random mode");
  harness->add_flag("--exhaustive", gen.exhaustive, "Enumerate every instance up to --sizes");

  auto* validate = app.add_subcommand("validate", "Check tables, functors, diagrams and coherence");
  validate->add_option("file", file, "Spec file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }
  if (bound_opt->count()) opt.bound = bound;

  if (*classify)
    return guarded("classify", file, opt, [&] { return cmd_classify(parse_spec(read_file(file)), file, opt); });
  if (*br)
    return guarded("br", file, opt, [&] {
      const auto m = parse_mutation(tamper);
      if (!m) throw SpecError(0, "unknown --tamper value '" + tamper + "'");
      return cmd_br(parse_spec(read_file(file)), file, opt, *m);
    });
  if (*validate)
    return guarded("validate", file, opt, [&] { return cmd_validate(parse_spec(read_file(file)), file, opt); });
  return guarded("harness", kind, opt, [&] {
    if (gen.exhaustive && gen.sizes > exhaustive_ceiling)
      throw SpecError(0, "--exhaustive supports --sizes up to " + std::to_string(exhaustive_ceiling));
    return cmd_harness(*parse_harness_kind(kind), gen, opt);
  });
}
