#include "dermat/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"dermat: exact derivation calculus for finite-dimensional algebras"};
  app.require_subcommand(1);
  app.fallthrough();

  dermat::CommandOptions opts;
  std::string module_path;
  std::string format = "text";
  bool regular = false;
  std::size_t n = 0;

  auto* module_opt = app.add_option("--module", module_path, "bimodule file (default: regular bimodule)");
  app.add_flag("--regular", regular, "use the regular bimodule")->excludes(module_opt);
  auto* n_opt = app.add_option("-n", n, "matrix size; computes on M_n of the pair");
  app.add_flag("--jordan", opts.jordan, "also compute Jordan derivations");
  app.add_option("--derivation", opts.derivation_path, "map file");
  app.add_option("--oracle", opts.oracle, "map file or perturb:<kind>:<map file>");
  app.add_option("--samples", opts.samples, "verification samples")->capture_default_str();
  app.add_option("--seed", opts.seed, "sampling seed")->capture_default_str();
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"text"}));
  app.add_flag("--unchecked", opts.unchecked, "lemma22: skip derivation certification of the input");
  app.add_flag("--complete-lift", opts.complete_lift, "twolocal: probe diagonal points after S and T");

  std::string path;
  auto* validate = app.add_subcommand("validate", "validate an algebra file");
  auto* derspace = app.add_subcommand("derspace", "derivation space, inner derivations and H1");
  auto* decompose = app.add_subcommand("decompose", "split a derivation on M_n into inner and lifted parts");
  auto* lemma22 = app.add_subcommand("lemma22", "check the matrix-component identities");
  auto* twolocal = app.add_subcommand("twolocal", "reconstruct a derivation from a 2-local oracle");
  for (auto* sub : {validate, derspace, decompose, lemma22, twolocal})
    sub->add_option("algebra", path, "algebra file")->required();
  std::string catalog_name;
  auto* catalog = app.add_subcommand("catalog", "print a catalog algebra as an algebra file");
  catalog->add_option("name", catalog_name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return dermat::exit_input_error;
  }

  opts.algebra_path = path;
  if (!module_path.empty()) opts.module_path = module_path;
  if (*n_opt) opts.n = n;

  if (*validate) return dermat::cmd_validate(path, std::cout, std::cerr);
  if (*derspace) return dermat::cmd_derspace(opts, std::cout, std::cerr);
  if (*decompose) return dermat::cmd_decompose(opts, std::cout, std::cerr);
  if (*lemma22) return dermat::cmd_lemma22(opts, std::cout, std::cerr);
  if (*twolocal) return dermat::cmd_twolocal(opts, std::cout, std::cerr);
  return dermat::cmd_catalog(catalog_name, std::cout, std::cerr);
}
