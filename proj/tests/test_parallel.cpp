#include <gtest/gtest.h>

#include <numeric>
#include <stdexcept>

#include "cms/dunkl_infinity.hpp"
#include "cms/parallel.hpp"
#include "cms/weyl.hpp"

using namespace cms;

TEST(ParallelMap, MatchesSerialOrder) {
  std::vector<int> in(200);
  std::iota(in.begin(), in.end(), -50);
  auto f = [](int x) { return x * x - 3 * x; };
  EXPECT_EQ(parallel_map(in, f), serial_map(in, f));
  EXPECT_TRUE(parallel_map(std::vector<int>{}, f).empty());
}

TEST(ParallelMap, RethrowsTaskErrors) {
  std::vector<int> in{1, 2, 3, 4};
  auto f = [](int x) {
    if (x == 3) throw std::runtime_error("task 3");
    return x;
  };
  EXPECT_THROW(parallel_map(in, f), std::runtime_error);
}

TEST(Workers, SetAndRead) {
  const int before = worker_count();
  set_worker_count(2);
  EXPECT_EQ(worker_count(), 2);
  set_worker_count(before);
  EXPECT_EQ(worker_count(), before);
}

TEST(Kernels, IntegralTableParallelMatchesSerial) {
  InfDunkl op(Family::TrigA, symbolic_params(Family::TrigA));
  auto basis = monomial_basis(5, 5);
  IntegralTable a(op, 2), b(op, 2);
  a.precompute(basis, true);
  b.precompute(basis, false);
  for (const auto& m : basis) EXPECT_EQ(a.on_monomial(m), b.on_monomial(m));
}

TEST(Kernels, InfinityCommutatorParallelMatchesSerial) {
  InfDunkl op(Family::RatA, symbolic_params(Family::RatA));
  EXPECT_EQ(commutator_on_basis(op, 2, 3, 4, 4, true), commutator_on_basis(op, 2, 3, 4, 4, false));
}

TEST(Kernels, LaxAndBasisParallelMatchesSerial) {
  Params pr = symbolic_params(Family::RatA);
  Parity par{2, 1};
  EXPECT_TRUE(lax_check(Family::RatA, pr, par, true).empty());
  EXPECT_TRUE(lax_check(Family::RatA, pr, par, false).empty());
  // A nonzero commutator, so the residual lists are compared element by element.
  WeylOp a = moser_integral(Family::RatA, pr, par, 2, false);
  WeylOp b = WeylOp::mult(RatFun::var(3, 0, 2));
  auto p = commute_on_basis(a, b, 2, false, true);
  auto s = commute_on_basis(a, b, 2, false, false);
  ASSERT_EQ(p.size(), s.size());
  ASSERT_FALSE(p.empty());
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_EQ(p[i].input, s[i].input);
    EXPECT_EQ(p[i].value, s[i].value);
  }
}
