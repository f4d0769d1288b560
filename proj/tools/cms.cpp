#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cms/parallel.hpp"
#include "cms/verify.hpp"

using namespace cms;

namespace {

struct Options {
  std::string family = "rat-a";
  std::string mode = "symbolic";
  std::string format = "text";
  std::string variant = "expanded";
  std::string hamiltonian = "displayed";
  std::string k, p, q;
  int s = 0;
  bool serial = false;
  bool stable = false;
};

void add_common(CLI::App* app, VerifyRequest& req, Options& o) {
  app->add_option("--family", o.family, "rat-a, trig-a, rat-b or trig-bc");
  app->add_option("--N", req.N, "number of variables (undeformed)");
  app->add_option("--n", req.n, "variables of the first species");
  app->add_option("--m", req.m, "variables of the second species");
  app->add_option("--r", req.r, "integral order");
  app->add_option("--s", o.s, "second integral order for commutators");
  app->add_option("--deg", req.deg, "degree bound");
  app->add_option("--pwindow", req.pwindow, "largest p index (default: deg)");
  app->add_option("--mode", o.mode, "symbolic or sampled")->check(CLI::IsMember({"symbolic", "sampled"}));
  app->add_option("--seed", req.seed, "seed for sampled mode");
  app->add_option("--k", o.k, "numeric value for k, e.g. 3/2");
  app->add_option("--p", o.p, "numeric value for p");
  app->add_option("--q", o.q, "numeric value for q");
  app->add_option("--variant", o.variant, "closed form: expanded or transcribed")
      ->check(CLI::IsMember({"expanded", "transcribed"}));
  app->add_option("--hamiltonian", o.hamiltonian, "trig-bc Hamiltonian: displayed or consistent")
      ->check(CLI::IsMember({"displayed", "consistent"}));
  app->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app->add_flag("--unsafe", req.unsafe, "lift the size caps");
  app->add_flag("--serial", o.serial, "run the serial reference path");
  app->add_flag("--stable-timing", o.stable, "write wall_ms as 0 in json output");
}

BigRat parse_rational(const std::string& text) {
  BigRat v(text, 10);
  v.canonicalize();
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  configure_workers_from_env();
  CLI::App app{"Exact checks for Dunkl operators at infinity and deformed CMS systems"};
  app.require_subcommand(1);

  VerifyRequest req;
  Options o;
  std::string command;

  auto* verify = app.add_subcommand("verify", "run a verification");
  verify->add_option("command", command,
                     "closed-form, commute-infinity, diagram, deformed, lax, moser-integrals, degenerate-k1")
      ->required();
  add_common(verify, req, o);

  auto* generate = app.add_subcommand("generate", "print a generated object");
  std::string what;
  generate->add_option("what", what, "integral")->required()->check(CLI::IsMember({"integral"}));
  add_common(generate, req, o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      auto c = command_from_name(command);
      if (!c || *c == Command::GenerateIntegral) throw CLI::ValidationError("command", "unknown verify command " + command);
      req.command = *c;
    } else {
      req.command = Command::GenerateIntegral;
    }
    auto fam = family_from_name(o.family);
    if (!fam) throw CLI::ValidationError("--family", "unknown family " + o.family);
    req.family = *fam;
    req.sampled = o.mode == "sampled";
    if (o.s > 0) req.s = o.s;
    if (!o.k.empty()) req.k = parse_rational(o.k);
    if (!o.p.empty()) req.p = parse_rational(o.p);
    if (!o.q.empty()) req.q = parse_rational(o.q);
    req.variant = o.variant == "expanded" ? ClosedFormVariant::Expanded : ClosedFormVariant::Transcribed;
    req.bc_hamiltonian = o.hamiltonian == "displayed" ? BcHamiltonian::Displayed : BcHamiltonian::Consistent;
    req.parallel = !o.serial;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid number: " << e.what() << "\n";
    return 2;
  }

  Report rep = run(req);
  if (o.format == "json") {
    std::cout << to_json(rep, o.stable) << "\n";
  } else {
    std::cout << to_text(rep);
  }
  return exit_code(rep);
}
