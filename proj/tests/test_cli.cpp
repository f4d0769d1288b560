#include <gtest/gtest.h>

#include "cms/error.hpp"
#include "cms/verify.hpp"
#include "json.hpp"

using namespace cms;
using nlohmann::json;

namespace {

VerifyRequest request(Command c, Family f) {
  VerifyRequest r;
  r.command = c;
  r.family = f;
  return r;
}

}  // namespace

TEST(Run, LaxRationalSmall) {
  Report rep = run(request(Command::Lax, Family::RatA));
  EXPECT_EQ(rep.status, Status::Verified);
  EXPECT_EQ(rep.stats.at("entries_checked"), 4);
  EXPECT_EQ(exit_code(rep), 0);
}

TEST(Run, ClosedFormVariants) {
  VerifyRequest q = request(Command::ClosedForm, Family::RatA);
  q.deg = 8;
  EXPECT_EQ(run(q).status, Status::Verified);
  q.family = Family::RatB;
  q.deg = 4;
  EXPECT_EQ(run(q).status, Status::Verified);
  q.variant = ClosedFormVariant::Transcribed;
  Report rep = run(q);
  EXPECT_EQ(rep.status, Status::Falsified);
  EXPECT_EQ(exit_code(rep), 1);
  ASSERT_FALSE(rep.counterexamples.empty());
  EXPECT_FALSE(rep.counterexamples[0].lhs.empty());
  EXPECT_FALSE(rep.counterexamples[0].rhs.empty());
}

TEST(Run, GenerateSecondTrigIntegral) {
  VerifyRequest q = request(Command::GenerateIntegral, Family::TrigA);
  q.r = 2;
  q.deg = 4;
  Report rep = run(q);
  EXPECT_EQ(rep.status, Status::Verified);
  EXPECT_EQ(rep.values.at("L(p1)"), "(k+1)*p1 + (-k)*p0*p1");
  LambdaDiffOp expanded = closed_form_L2(Family::TrigA, symbolic_params(Family::TrigA), 4).truncated(4);
  EXPECT_EQ(rep.values.at("operator"), expanded.to_string());
}

TEST(Run, CommuteAtInfinity) {
  VerifyRequest q = request(Command::CommuteInfinity, Family::TrigA);
  q.r = 2;
  q.s = 3;
  q.deg = 4;
  Report rep = run(q);
  EXPECT_EQ(rep.status, Status::Verified);
  EXPECT_TRUE(rep.counterexamples.empty());
  EXPECT_EQ(rep.stats.at("checks"), 12);
}

TEST(Run, DiagramsAllFamilies) {
  for (Family f : {Family::RatA, Family::TrigA, Family::RatB, Family::TrigBC}) {
    VerifyRequest q = request(Command::Diagram, f);
    q.N = 3;
    q.r = 2;
    Report rep = run(q);
    EXPECT_EQ(rep.status, Status::Verified) << family_name(f) << " " << to_text(rep);
  }
}

TEST(Run, DeformedChecks) {
  for (Family f : {Family::RatA, Family::TrigA, Family::RatB}) {
    VerifyRequest q = request(Command::Deformed, f);
    q.n = 2;
    q.m = 1;
    q.r = 3;
    EXPECT_EQ(run(q).status, Status::Verified) << family_name(f);
  }
  Report rep = run(request(Command::Deformed, Family::TrigBC));
  EXPECT_EQ(rep.status, Status::Error);
  EXPECT_EQ(exit_code(rep), 2);
}

TEST(Run, UnitCouplingDegenerations) {
  for (Family f : {Family::RatA, Family::TrigA, Family::RatB}) {
    VerifyRequest q = request(Command::DegenerateK1, f);
    q.r = f == Family::RatB ? 2 : 3;
    EXPECT_EQ(run(q).status, Status::Verified) << family_name(f);
  }
}

TEST(Run, MoserIntegralsReportConstants) {
  VerifyRequest q = request(Command::MoserIntegrals, Family::TrigA);
  q.r = 3;
  Report rep = run(q);
  EXPECT_EQ(rep.status, Status::Verified);
  EXPECT_EQ(rep.values.at("second_integral_scale"), "(1)/1");
  EXPECT_EQ(rep.values.at("second_integral_constant"), "(-k-1)/4");

  VerifyRequest b = request(Command::MoserIntegrals, Family::RatB);
  b.r = 1;
  b.deg = 3;
  rep = run(b);
  EXPECT_EQ(rep.status, Status::Verified);
  EXPECT_EQ(rep.values.at("second_integral_scale"), "(-2)/1");
}

TEST(Run, TrigBCHamiltonianForms) {
  VerifyRequest q = request(Command::MoserIntegrals, Family::TrigBC);
  q.n = 1;
  q.m = 0;
  q.r = 1;
  q.deg = 2;
  EXPECT_EQ(run(q).status, Status::Falsified);
  q.bc_hamiltonian = BcHamiltonian::Consistent;
  Report rep = run(q);
  EXPECT_EQ(rep.status, Status::Verified);
  EXPECT_EQ(rep.values.at("second_integral_scale"), "(1)/2");
}

TEST(Run, SampledModeAndBindings) {
  VerifyRequest q = request(Command::Lax, Family::TrigA);
  q.sampled = true;
  q.seed = 5;
  Params pr = request_params(q);
  EXPECT_TRUE(pr.k.is_constant());
  EXPECT_EQ(run(q).status, Status::Verified);

  VerifyRequest b = request(Command::MoserIntegrals, Family::TrigBC);
  b.k = BigRat(3, 2);
  Params pb = request_params(b);
  EXPECT_EQ(pb.k, ParamRatio(BigRat(3, 2)));
  EXPECT_EQ(pb.r, ParamRatio::symbol(Symbol::p) / ParamRatio(BigRat(3, 2)));
}

TEST(Run, Caps) {
  VerifyRequest q = request(Command::Lax, Family::RatA);
  q.n = 4;
  q.m = 1;
  Report rep = run(q);
  EXPECT_EQ(rep.status, Status::Error);
  EXPECT_NE(rep.error.find("--unsafe"), std::string::npos);
  EXPECT_THROW(validate(q), InvalidRequest);
  q.unsafe = true;
  EXPECT_NO_THROW(validate(q));
  q.k = BigRat(0);
  EXPECT_THROW(validate(q), InvalidRequest);
}

TEST(Report, JsonShape) {
  Report ok = run(request(Command::Lax, Family::RatA));
  json j = json::parse(to_json(ok));
  EXPECT_EQ(j["status"], "verified");
  EXPECT_TRUE(j["counterexamples"].is_array());
  EXPECT_TRUE(j["counterexamples"].empty());
  EXPECT_GE(j["timing"]["wall_ms"].get<double>(), 0.0);
  EXPECT_EQ(j["request"]["command"], "lax");
  EXPECT_EQ(j["request"]["family"], "rat-a");

  VerifyRequest q = request(Command::ClosedForm, Family::TrigBC);
  q.variant = ClosedFormVariant::Transcribed;
  q.deg = 3;
  json f = json::parse(to_json(run(q)));
  EXPECT_EQ(f["status"], "falsified");
  ASSERT_FALSE(f["counterexamples"].empty());
  for (const auto& c : f["counterexamples"]) {
    EXPECT_TRUE(c.contains("input"));
    EXPECT_FALSE(c["lhs"].get<std::string>().empty());
    EXPECT_FALSE(c["rhs"].get<std::string>().empty());
  }
  // Round trip: dumping the parsed document gives the same bytes.
  std::string s = to_json(ok);
  EXPECT_EQ(json::parse(s).dump(), s);
}

TEST(Report, Deterministic) {
  VerifyRequest q = request(Command::Deformed, Family::TrigA);
  q.sampled = true;
  q.seed = 11;
  EXPECT_EQ(to_json(run(q), true), to_json(run(q), true));
  q.parallel = false;
  VerifyRequest p = q;
  p.parallel = true;
  EXPECT_EQ(to_json(run(q), true), to_json(run(p), true));
}

TEST(Report, Text) {
  std::string t = to_text(run(request(Command::Lax, Family::RatA)));
  EXPECT_NE(t.find("lax rat-a: verified"), std::string::npos);
}

TEST(Names, RoundTrip) {
  for (Command c : {Command::ClosedForm, Command::CommuteInfinity, Command::Diagram, Command::Deformed, Command::Lax,
                    Command::MoserIntegrals, Command::DegenerateK1})
    EXPECT_EQ(command_from_name(command_name(c)), c);
  EXPECT_FALSE(command_from_name("nope").has_value());
}
