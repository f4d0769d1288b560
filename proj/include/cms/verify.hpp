#pragma once

// Verification requests, their execution, and report serialization shared by
// the command-line tool and the acceptance suite.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cms/coeffs.hpp"
#include "cms/dunkl_infinity.hpp"

namespace cms {

enum class Command { ClosedForm, CommuteInfinity, Diagram, Deformed, Lax, MoserIntegrals, DegenerateK1, GenerateIntegral };

const char* command_name(Command c);
std::optional<Command> command_from_name(const std::string& name);

enum class BcHamiltonian { Displayed, Consistent };

struct VerifyRequest {
  Command command = Command::Lax;
  Family family = Family::RatA;
  int N = 2;
  int n = 1, m = 1;
  int r = 2;
  std::optional<int> s;  // second order for commutators
  int deg = 4;
  int pwindow = 0;  // 0: same as deg
  bool sampled = false;
  std::uint64_t seed = 1;
  std::optional<BigRat> k, p, q;
  ClosedFormVariant variant = ClosedFormVariant::Expanded;
  BcHamiltonian bc_hamiltonian = BcHamiltonian::Displayed;
  bool unsafe = false;
  bool parallel = true;
};

struct Counterexample {
  std::string input, lhs, rhs;
};

enum class Status { Verified, Falsified, Error };
const char* status_name(Status s);

struct Report {
  VerifyRequest request;
  Status status = Status::Verified;
  std::string error;
  std::vector<Counterexample> counterexamples;
  std::map<std::string, long> stats;          // checks run, term counts
  std::map<std::string, std::string> values;  // computed outputs (constants, operators)
  double wall_ms = 0;
};

// Desk-scale caps; throws InvalidRequest with the reason unless unsafe.
void validate(const VerifyRequest& req);

// Parameters of the request: symbols, or a seeded sample, with bindings applied.
Params request_params(const VerifyRequest& req);

// Runs the request. Library exceptions become status Error.
Report run(const VerifyRequest& req);

// Stable-keyed JSON (sorted keys, no whitespace variation). stable_timing
// writes wall_ms as 0 so identical requests give identical bytes.
std::string to_json(const Report& report, bool stable_timing = false);
std::string to_text(const Report& report);

int exit_code(const Report& report);  // 0 verified, 1 falsified, 2 error

}  // namespace cms
