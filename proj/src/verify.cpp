#include "cms/verify.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "json.hpp"

#include "cms/error.hpp"
#include "cms/finite_cms.hpp"
#include "cms/parallel.hpp"
#include "cms/weyl.hpp"

namespace cms {

namespace {

constexpr std::pair<Command, const char*> kCommands[] = {
    {Command::ClosedForm, "closed-form"},     {Command::CommuteInfinity, "commute-infinity"},
    {Command::Diagram, "diagram"},            {Command::Deformed, "deformed"},
    {Command::Lax, "lax"},                    {Command::MoserIntegrals, "moser-integrals"},
    {Command::DegenerateK1, "degenerate-k1"}, {Command::GenerateIntegral, "generate-integral"},
};

template <class T>
std::string str(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// One named check: empty optional when it holds.
struct Check {
  std::string input;
  std::function<std::optional<Counterexample>()> run;
};

template <class T>
std::optional<Counterexample> compare(const std::string& input, const T& lhs, const T& rhs) {
  if (lhs == rhs) return std::nullopt;
  return Counterexample{input, str(lhs), str(rhs)};
}

void run_checks(const std::vector<Check>& checks, bool parallel, Report& rep) {
  auto eval = [](const Check& c) { return c.run(); };
  auto results = parallel ? parallel_map(checks, eval) : serial_map(checks, eval);
  rep.stats["checks"] += static_cast<long>(checks.size());
  for (auto& r : results)
    if (r) rep.counterexamples.push_back(*std::move(r));
}

std::vector<LambdaXElem> x_generators(Family f) {
  const bool lr = family_is_laurent(f);
  auto X = [&](int a) { return LambdaXElem::x_power(a, lr); };
  auto P = [&](int i) { return LambdaXElem::p(i, lr); };
  return {X(1), X(2), P(1), P(2), P(3), X(1) * P(1), X(2) * P(2)};
}

std::vector<LambdaElem> p_generators() {
  return {LambdaElem::p(1), LambdaElem::p(2), LambdaElem::p(3), LambdaElem::p(1) * LambdaElem::p(2)};
}

// ---------------------------------------------------------------- commands

void closed_form(const VerifyRequest& req, const Params& pr, Report& rep) {
  InfDunkl op(req.family, pr);
  const int r = is_type_b(req.family) ? 1 : 2;
  const int window = req.pwindow > 0 ? req.pwindow : req.deg;
  std::vector<Check> checks;
  for (const auto& m : monomial_basis(req.deg, window)) {
    checks.push_back({m.to_string(), [&, m] {
                        LambdaElem f = LambdaElem::monomial(m);
                        return compare(m.to_string(), apply_closed_form(req.family, pr, f, req.variant),
                                       op.integral(r, f));
                      }});
  }
  run_checks(checks, req.parallel, rep);
  rep.values["closed_form"] = closed_form_L2(req.family, pr, std::min(window, 3), req.variant).to_string();
}

void commute_infinity(const VerifyRequest& req, const Params& pr, Report& rep) {
  InfDunkl op(req.family, pr);
  const int s = req.s.value_or(req.r + 1);
  const int window = req.pwindow > 0 ? req.pwindow : req.deg;
  auto res = commutator_on_basis(op, req.r, s, req.deg, window, req.parallel);
  rep.stats["checks"] += static_cast<long>(monomial_basis(req.deg, window).size());
  for (const auto& [m, v] : res)
    if (!v.is_zero()) rep.counterexamples.push_back({m.to_string(), v.to_string(), "0"});
}

void diagram(const VerifyRequest& req, const Params& pr, Report& rep) {
  InfDunkl op(req.family, pr);
  const int N = req.N;
  std::vector<Check> checks;
  for (const auto& g : x_generators(req.family))
    for (int i = 0; i < N; ++i) {
      std::string in = "D x_" + std::to_string(i + 1) + " " + g.to_string();
      checks.push_back({in, [&, g, i, in] {
                          Hom h = phi_at(req.family, pr, N, i);
                          return compare(in, h.apply(op.apply(g)), finite_dunkl(req.family, pr, i, h.apply(g)));
                        }});
    }
  // E(x^j) = p_|j| sees x_i^j and x_i^-j, so the BC integrals reduce to twice
  // the Heckman sums.
  const ParamRatio scale(req.family == Family::TrigBC ? 2 : 1);
  for (int r = 1; r <= req.r; ++r)
    for (const auto& g : p_generators()) {
      std::string in = "L" + std::to_string(r) + " " + g.to_string();
      checks.push_back({in, [&, g, r, in] {
                          Hom h = phi(req.family, pr, N);
                          return compare(in, h.apply(op.integral(r, g)),
                                         heckman_integral(req.family, pr, r, h.apply(g)).scaled(scale));
                        }});
    }
  run_checks(checks, req.parallel, rep);
}

void deformed(const VerifyRequest& req, const Params& pr, Report& rep) {
  const Family fam = req.family;
  if (fam == Family::TrigBC) throw UnsupportedFamily("no deformed reduction checks for trig-bc");
  InfDunkl op(fam, pr);
  const Parity par{req.n, req.m};
  std::vector<Check> checks;
  for (const auto& g : x_generators(fam))
    for (int i = 0; i < par.size(); ++i) {
      std::string in = "relation i=" + std::to_string(i + 1) + " " + g.to_string();
      checks.push_back({in, [&, g, i, in] {
                          return compare(in, phi_deformed(fam, pr, par, i).apply(op.apply(g)),
                                         deformed_dunkl_relation(fam, pr, par, i, g));
                        }});
    }
  if (!is_type_b(fam)) {
    for (int r = 1; r <= req.r; ++r) {
      WeylOp G = gauged_moser_integral(fam, pr, par, r, false);
      rep.stats["gauged_integral_terms_r" + std::to_string(r)] = static_cast<long>(G.terms().size());
      for (const auto& g : p_generators()) {
        std::string in = "gauged Moser r=" + std::to_string(r) + " " + g.to_string();
        checks.push_back({in, [&, G, g, r, in] {
                            Hom h = phi_deformed(fam, pr, par);
                            return compare(in, RatFun(h.apply(op.integral(r, g))), G.apply(h.apply(g)));
                          }});
      }
    }
  }
  if (fam == Family::RatA) {
    for (int r = 1; r <= req.r; ++r)
      for (int l = 1; l <= 3; ++l) {
        std::string in = "recursion r=" + std::to_string(r) + " p" + std::to_string(l);
        checks.push_back({in, [&, r, l, in]() -> std::optional<Counterexample> {
                            MultiPoly f = phi_deformed(fam, pr, par).apply(LambdaElem::p(l));
                            auto parts = deformed_partials(pr, par, r, f);
                            for (int i = 0; i < par.size(); ++i) {
                              auto rhs = phi_deformed(fam, pr, par, i).apply(op.apply(LambdaXElem::p(l), r));
                              if (!(parts[i] == rhs)) return Counterexample{in + " i=" + std::to_string(i + 1), str(parts[i]), str(rhs)};
                            }
                            return std::nullopt;
                          }});
      }
    WeylOp Hg = hamiltonian(fam, pr, par, true);
    for (int l = 1; l <= 3; ++l) {
      std::string in = "second integral vs gauged Hamiltonian p" + std::to_string(l);
      checks.push_back({in, [&, Hg, l, in] {
                          MultiPoly f = phi_deformed(fam, pr, par).apply(LambdaElem::p(l));
                          return compare(in, RatFun(deformed_integral(pr, par, 2, f)), Hg.apply(f));
                        }});
    }
  }
  run_checks(checks, req.parallel, rep);
}

void lax(const VerifyRequest& req, const Params& pr, Report& rep) {
  const Parity par{req.n, req.m};
  auto res = lax_check(req.family, pr, par, req.parallel);
  rep.stats["entries_checked"] = lax_entry_count(par);
  rep.stats["checks"] += lax_entry_count(par);
  for (const auto& e : res)
    rep.counterexamples.push_back({"(" + std::to_string(e.i + 1) + "," + std::to_string(e.j + 1) + ")",
                                   e.residual.to_string(), "0"});
}

WeylOp request_hamiltonian(const VerifyRequest& req, const Params& pr, const Parity& par) {
  if (req.family == Family::TrigBC && req.bc_hamiltonian == BcHamiltonian::Consistent)
    return trig_bc_consistent_hamiltonian(pr, par);
  return hamiltonian(req.family, pr, par, false);
}

// Symbolic normal form for small instances, monomial basis otherwise.
void commute_check(const std::string& name, const WeylOp& a, const WeylOp& b, bool symbolic, const VerifyRequest& req,
                   Report& rep) {
  if (symbolic) {
    WeylOp c = commutator(a, b);
    rep.stats["checks"] += 1;
    if (!c.is_zero()) rep.counterexamples.push_back({name, c.to_string(), "0"});
    return;
  }
  auto res = commute_on_basis(a, b, req.deg, req.family == Family::TrigBC, req.parallel);
  rep.stats["checks"] += static_cast<long>(monomials_up_to(a.nvars(), req.deg, req.family == Family::TrigBC).size());
  for (const auto& r : res) rep.counterexamples.push_back({name + " on " + str(MultiPoly::monomial(a.nvars(), r.input)), r.value.to_string(), "0"});
}

void moser_integrals(const VerifyRequest& req, const Params& pr, Report& rep) {
  const Parity par{req.n, req.m};
  const bool typeB = is_type_b(req.family);
  // A families: symbolic up to three variables; B and BC: basis mode.
  const bool symbolic = !typeB && par.size() <= 3;
  WeylOp H = request_hamiltonian(req, pr, par);
  std::vector<WeylOp> I;
  for (int r = 1; r <= req.r; ++r) {
    I.push_back(moser_integral(req.family, pr, par, r, req.parallel));
    rep.stats["integral_terms_r" + std::to_string(r)] = static_cast<long>(I.back().terms().size());
    commute_check("[I" + std::to_string(r) + ",H]", I.back(), H, symbolic, req, rep);
  }
  const int second = typeB ? 1 : 2;
  if (req.r >= second) {
    auto am = affine_match(I[static_cast<std::size_t>(second - 1)], H);
    if (am) {
      rep.values["second_integral_scale"] = am->scale.to_string();
      rep.values["second_integral_constant"] = am->constant.to_string();
    } else {
      rep.counterexamples.push_back({"second integral vs Hamiltonian", I[static_cast<std::size_t>(second - 1)].to_string(),
                                     H.to_string()});
    }
  }
  if (req.s) {
    WeylOp Ia = moser_integral(req.family, pr, par, req.r, req.parallel);
    WeylOp Ib = moser_integral(req.family, pr, par, *req.s, req.parallel);
    commute_check("[I" + std::to_string(req.r) + ",I" + std::to_string(*req.s) + "]", Ia, Ib, false, req, rep);
  }
}

void degenerate_k1(const VerifyRequest& req, const Params& pr_in, Report& rep) {
  Params pr = constrained_params(req.family, ParamRatio(1), pr_in.p, pr_in.q);
  const Parity par{req.n, req.m};
  const Parity flat = Parity::undeformed(par.size());
  const int N = par.size();
  std::vector<Check> checks;
  for (int r = 1; r <= req.r; ++r) {
    std::string in = "Moser integral r=" + std::to_string(r);
    checks.push_back({in, [&, r, in] {
                        return compare(in, moser_integral(req.family, pr, par, r, false),
                                       moser_integral(req.family, pr, flat, r, false));
                      }});
  }
  if (!is_type_b(req.family)) {
    Hom h = phi(req.family, pr, N);
    for (int r = 1; r <= req.r; ++r)
      for (const auto& g : p_generators()) {
        std::string in = "gauged r=" + std::to_string(r) + " " + g.to_string();
        checks.push_back({in, [&, h, g, r, in] {
                            MultiPoly f = h.apply(g);
                            return compare(in, gauged_moser_integral(req.family, pr, par, r, false).apply(f),
                                           RatFun(heckman_integral(req.family, pr, r, f)));
                          }});
      }
  }
  if (req.family == Family::RatA) {
    Hom h = phi(req.family, pr, N);
    for (int r = 1; r <= req.r; ++r)
      for (const auto& g : p_generators()) {
        std::string in = "recursion integral r=" + std::to_string(r) + " " + g.to_string();
        checks.push_back({in, [&, h, g, r, in] {
                            MultiPoly f = h.apply(g);
                            return compare(in, deformed_integral(pr, par, r, f), heckman_integral(req.family, pr, r, f));
                          }});
      }
  }
  run_checks(checks, req.parallel, rep);
}

void generate_integral(const VerifyRequest& req, const Params& pr, Report& rep) {
  InfDunkl op(req.family, pr);
  LambdaDiffOp L = reconstruct_diff_op(op, req.r, req.deg);
  rep.values["operator"] = L.to_string();
  const int window = req.pwindow > 0 ? req.pwindow : req.deg;
  IntegralTable table(op, req.r);
  auto basis = monomial_basis(req.deg, window);
  table.precompute(basis, req.parallel);
  for (const auto& m : basis) {
    LambdaElem v = table.apply(LambdaElem::monomial(m));
    rep.values["L(" + m.to_string() + ")"] = v.to_string();
    if (!(L.apply(LambdaElem::monomial(m)) == v))
      rep.counterexamples.push_back({m.to_string(), L.apply(LambdaElem::monomial(m)).to_string(), v.to_string()});
  }
  rep.stats["checks"] += static_cast<long>(basis.size());
  rep.stats["operator_terms"] = static_cast<long>(L.terms().size());
}

void cap(bool ok, const std::string& why) {
  if (!ok) throw InvalidRequest(why + " (pass --unsafe to override)");
}

nlohmann::json request_json(const VerifyRequest& q) {
  nlohmann::json j;
  j["command"] = command_name(q.command);
  j["family"] = family_name(q.family);
  j["N"] = q.N;
  j["n"] = q.n;
  j["m"] = q.m;
  j["r"] = q.r;
  j["s"] = q.s ? nlohmann::json(*q.s) : nlohmann::json(nullptr);
  j["deg"] = q.deg;
  j["pwindow"] = q.pwindow;
  j["mode"] = q.sampled ? "sampled" : "symbolic";
  j["seed"] = q.seed;
  for (auto [name, v] : {std::pair{"k", &q.k}, {"p", &q.p}, {"q", &q.q}})
    j["bindings"][name] = *v ? nlohmann::json(to_string(**v)) : nlohmann::json(nullptr);
  j["variant"] = q.variant == ClosedFormVariant::Expanded ? "expanded" : "transcribed";
  j["hamiltonian"] = q.bc_hamiltonian == BcHamiltonian::Displayed ? "displayed" : "consistent";
  j["unsafe"] = q.unsafe;
  return j;
}

}  // namespace

const char* command_name(Command c) {
  for (auto [cc, name] : kCommands)
    if (cc == c) return name;
  return "?";
}

std::optional<Command> command_from_name(const std::string& name) {
  for (auto [cc, n] : kCommands)
    if (name == n) return cc;
  return std::nullopt;
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Verified: return "verified";
    case Status::Falsified: return "falsified";
    case Status::Error: return "error";
  }
  return "?";
}

void validate(const VerifyRequest& q) {
  if (q.N < 1 || q.n < 0 || q.m < 0 || q.n + q.m < 1) throw InvalidRequest("sizes must be positive");
  if (q.n + q.m > kMaxVars || q.N > kMaxVars) throw InvalidRequest("at most 8 variables");
  if (q.r < 1 || (q.s && *q.s < 1)) throw InvalidRequest("orders must be positive");
  if (q.deg < 0 || q.pwindow < 0) throw InvalidRequest("degree bounds must be nonnegative");
  if (q.k && *q.k == 0) throw InvalidRequest("k = 0 makes the deformed operators singular");
  if (q.unsafe) return;
  const int size = q.n + q.m;
  switch (q.command) {
    case Command::ClosedForm:
    case Command::CommuteInfinity:
    case Command::GenerateIntegral:
      cap(q.deg <= 10, "degree at infinity is capped at 10");
      cap(q.r <= 4 && q.s.value_or(1) <= 4, "orders at infinity are capped at 4");
      break;
    case Command::Diagram:
      cap(q.N <= 5, "N is capped at 5");
      cap(q.r <= 3, "integral order is capped at 3");
      break;
    case Command::Deformed:
    case Command::DegenerateK1:
      cap(size <= 4, "n + m is capped at 4");
      cap(q.r <= 3, "integral order is capped at 3");
      break;
    case Command::Lax: cap(size <= 4, "n + m is capped at 4 in symbolic Lax mode"); break;
    case Command::MoserIntegrals:
      cap(size <= 3, "n + m is capped at 3");
      cap(q.r <= 3 && q.s.value_or(1) <= 3, "integral order is capped at 3");
      cap(q.deg <= 6, "basis degree is capped at 6");
      break;
  }
}

Params request_params(const VerifyRequest& q) {
  Params base = q.sampled ? sampled_params(q.family, q.seed) : symbolic_params(q.family);
  if (!q.sampled) {
    base.p = ParamRatio::symbol(Symbol::p);
    base.q = ParamRatio::symbol(Symbol::q);
  }
  return constrained_params(q.family, q.k ? ParamRatio(*q.k) : base.k, q.p ? ParamRatio(*q.p) : base.p,
                            q.q ? ParamRatio(*q.q) : base.q);
}

Report run(const VerifyRequest& req) {
  Report rep;
  rep.request = req;
  const auto start = std::chrono::steady_clock::now();
  try {
    validate(req);
    Params pr = request_params(req);
    switch (req.command) {
      case Command::ClosedForm: closed_form(req, pr, rep); break;
      case Command::CommuteInfinity: commute_infinity(req, pr, rep); break;
      case Command::Diagram: diagram(req, pr, rep); break;
      case Command::Deformed: deformed(req, pr, rep); break;
      case Command::Lax: lax(req, pr, rep); break;
      case Command::MoserIntegrals: moser_integrals(req, pr, rep); break;
      case Command::DegenerateK1: degenerate_k1(req, pr, rep); break;
      case Command::GenerateIntegral: generate_integral(req, pr, rep); break;
    }
    rep.status = rep.counterexamples.empty() ? Status::Verified : Status::Falsified;
  } catch (const std::exception& e) {
    rep.status = Status::Error;
    rep.error = e.what();
    rep.counterexamples.clear();
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::string to_json(const Report& rep, bool stable_timing) {
  nlohmann::json j;
  j["request"] = request_json(rep.request);
  j["status"] = status_name(rep.status);
  j["error"] = rep.error;
  j["counterexamples"] = nlohmann::json::array();
  for (const auto& c : rep.counterexamples) j["counterexamples"].push_back({{"input", c.input}, {"lhs", c.lhs}, {"rhs", c.rhs}});
  j["stats"] = rep.stats;
  j["values"] = rep.values;
  j["timing"]["wall_ms"] = stable_timing ? 0.0 : rep.wall_ms;
  return j.dump();
}

std::string to_text(const Report& rep) {
  std::ostringstream os;
  const auto& q = rep.request;
  os << command_name(q.command) << " " << family_name(q.family) << ": " << status_name(rep.status) << "\n";
  if (!rep.error.empty()) os << "error: " << rep.error << "\n";
  for (const auto& [k, v] : rep.stats) os << "  " << k << " = " << v << "\n";
  for (const auto& [k, v] : rep.values) os << "  " << k << " = " << v << "\n";
  for (const auto& c : rep.counterexamples) os << "  counterexample " << c.input << "\n    lhs: " << c.lhs << "\n    rhs: " << c.rhs << "\n";
  os << "  time " << static_cast<long>(rep.wall_ms) << " ms\n";
  return os.str();
}

int exit_code(const Report& rep) {
  switch (rep.status) {
    case Status::Verified: return 0;
    case Status::Falsified: return 1;
    case Status::Error: return 2;
  }
  return 2;
}

}  // namespace cms
