#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "confal.h"

// Thin command surface over the C API.  Exit codes: 0 success / property
// holds, 1 verification failure, 2 usage or parse error, 3 bound exceeded,
// 70 internal.

namespace {

int finish(int rc, char* out, char* err) {
  if (out) {
    std::fputs(out, stdout);
    confal_free_string(out);
  }
  if (err) {
    std::fprintf(stderr, "error: %s\n", err);
    confal_free_string(err);
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact symbolic engine for conformal algebras and their envelopes"};
  app.set_version_flag("--version", confal_version());
  app.require_subcommand(1);

  std::string file, expr, target;
  int dpow = 0, basis_degree = 0, basis_dpow = 0, cap = 0;

  CLI::App* verify = app.add_subcommand("verify", "check the axiom suite of a file");
  verify->add_option("file", file, "algebra file")->required();
  verify->add_option("--dpow", dpow, "d-power per identity instance (default 2)");

  CLI::App* complete =
      app.add_subcommand("complete", "complete the envelope and print the rules");
  complete->add_option("file", file, "algebra file")->required();

  CLI::App* nf = app.add_subcommand("normal-form", "reduce an element expression");
  nf->add_option("file", file, "algebra file")->required();
  nf->add_option("expr", expr, "element expression")->required();

  CLI::App* basis =
      app.add_subcommand("basis", "list irreducible words inside a window");
  basis->add_option("file", file, "algebra file")->required();
  basis->add_option("--degree", basis_degree, "largest X-degree")->required();
  basis->add_option("--dpow", basis_dpow, "largest d count")->required();

  CLI::App* table = app.add_subcommand("table", "graded Poisson / lambda tables");
  table->add_option("file", file, "algebra file")->required();
  table->add_option("target", target, "pv2 | pv3 | pk10 | pk10hat | generic")
      ->required();
  table->add_option("--cap", cap, "grade cap (required except for generic)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  char* err = nullptr;
  confal_algebra* alg = confal_load_file(file.c_str(), &err);
  if (!alg) return finish(2, nullptr, err);

  char* out = nullptr;
  int rc = 70;
  if (verify->parsed()) rc = confal_verify(alg, dpow, &out, &err);
  else if (complete->parsed()) rc = confal_complete(alg, &out, &err);
  else if (nf->parsed()) rc = confal_normal_form(alg, expr.c_str(), &out, &err);
  else if (basis->parsed()) rc = confal_basis(alg, basis_degree, basis_dpow, &out, &err);
  else if (table->parsed()) rc = confal_table(alg, target.c_str(), cap, &out, &err);
  confal_release(alg);
  return finish(rc, out, err);
}
