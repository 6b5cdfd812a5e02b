// wallform: command-line frontend over problem files.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace wallform;
using namespace wallform::cli;

int main(int argc, char** argv) {
  CLI::App app{"Wall forms, unipotent isometries and characteristic-2 Clifford involutions"};
  app.require_subcommand(1);

  std::string space_path;
  std::string theorem;
  bool compact_json = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--space", space_path, "problem file (JSON), '-' for stdin")->required();
    sub->add_flag("--json", compact_json, "single-line JSON output");
  };
  auto* analyze = app.add_subcommand("analyze", "Wall form, classification, r/k dimensions, spinor norms");
  auto* decomp = app.add_subcommand("decompose", "orthogonal decomposition of a unipotent index-2 isometry");
  auto* clifford = app.add_subcommand("clifford", "involution J_tau on C(q): type, Phi, Pfister invariant, criterion");
  auto* verify = app.add_subcommand("verify", "exhaustive theorem check over the orthogonal group");
  auto* enumerate = app.add_subcommand("enumerate", "orthogonal group order and unipotent index-2 count");
  for (auto* sub : {analyze, decomp, clifford, verify, enumerate}) add_common(sub);
  verify->add_option("--theorem", theorem, "theorem id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code(ErrorKind::ParseError);
  }

  const CommandResult result = run_guarded([&]() -> CommandResult {
    const ProblemFile p = load_problem(space_path);
    if (analyze->parsed()) return cmd_analyze(p);
    if (decomp->parsed()) return cmd_decompose(p);
    if (clifford->parsed()) return cmd_clifford(p);
    if (verify->parsed()) return cmd_verify(theorem, p);
    return cmd_enumerate(p);
  });

  if (result.report.contains("error")) std::cerr << "error: " << result.report["error"].get<std::string>() << ": "
                                                 << result.report["message"].get<std::string>() << "\n";
  std::cout << (compact_json ? result.report.dump() : result.report.dump(2)) << "\n";
  return result.exit_code;
}
