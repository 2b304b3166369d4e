#include "doctest.h"

#include "common.hpp"
#include "lorlab/triangle_lab.hpp"

using namespace lorlab;
using testutil::close_rel;

TEST_CASE("analytic bound evaluators") {
  // r -> p+ sends the bound to 1
  CHECK(bound_modulo_A(0.5, 0.5 + 1e-4) <= 1.01);
  CHECK(bound_modulo_A(0.9, 0.9 + 1e-4) <= 1.01);
  CHECK(close_rel(bound_modulo_A(0.5, kInf), 4.0, 1e-12));
  CHECK(close_rel(bound_modulo_A(0.5, 1.0), 2.0 * (1.0 + 0.5 * std::log(2.0)), 1e-12));
  CHECK_THROWS_AS(bound_modulo_A(1.5, 2.0), std::domain_error);
  CHECK_THROWS_AS(bound_modulo_A(0.5, 0.4), std::domain_error);

  CHECK(close_rel(stw_bound(0.5), 9.0, 1e-12));
  CHECK(close_rel(stw_bound(0.75), std::pow(5.0, 4.0 / 3.0), 1e-12));
  CHECK(std::isfinite(stw_bound(1e-3)));  // p -> 0+ behavior reported, not asserted
  CHECK_THROWS_AS(stw_bound(1.0), std::domain_error);

  CHECK(close_rel(bks_constant(2.0, 4.0),
                  std::pow(0.5, 0.25) * std::pow(1.5, 0.75), 1e-12));
  CHECK(std::abs(bks_constant(2.0, 2.0 + 1e-4) - 1.0) < 1e-3);
  for (double p : {1.25, 1.5, 2.0, 3.0})
    for (double r : {2.0, 4.0, 8.0, 32.0})
      if (r > p) CHECK(bks_constant(p, r) >= 1.0);
  CHECK_THROWS_AS(bks_constant(0.5, 2.0), std::domain_error);
}

TEST_CASE("family ratio: exact baselines") {
  // disjoint equal indicators: ratio exactly 1 in the p-power form
  StepFamily disjoint;
  for (int k = 0; k < 4; ++k) disjoint.fns.push_back({{1.0, static_cast<double>(k), 1.0}});
  CHECK(close_rel(family_ratio(disjoint, LorentzExponents(0.5, 0.5)), 1.0, 1e-12));
  CHECK(close_rel(family_ratio(disjoint, LorentzExponents(0.5, kInf)), 1.0, 1e-12));

  StepFamily singleton;
  singleton.fns.push_back({{2.0, 0.0, 3.0}});
  CHECK(close_rel(family_ratio(singleton, LorentzExponents(0.5, 1.0)), 1.0, 1e-12));

  // a known overlap configuration beats 1 at (1/2, inf):
  // f = 3 on [0,1) + 1 on [1,2), g = 2 on [1,2): sum = 3 on [0,2)
  StepFamily overlap;
  overlap.fns.push_back({{3.0, 0.0, 1.0}, {1.0, 1.0, 1.0}});
  overlap.fns.push_back({{2.0, 1.0, 1.0}});
  const double ratio = family_ratio(overlap, LorentzExponents(0.5, kInf));
  const double expect = 12.0 / std::pow(std::sqrt(4.0) + std::sqrt(2.0), 2.0);
  CHECK(close_rel(ratio, expect, 1e-12));
  CHECK(ratio > 1.0);
}

TEST_CASE("empirical search: determinism, floor and caps") {
  const ConstantReport a = empirical_constant(0.5, kInf, 1500, 31337);
  const ConstantReport b = empirical_constant(0.5, kInf, 1500, 31337);
  CHECK(a.empirical_lower == b.empirical_lower);
  CHECK(a.best_configuration == b.best_configuration);
  CHECK(a.empirical_lower >= 1.0);
  CHECK(a.empirical_lower <= stw_bound(0.5));
  CHECK(close_rel(a.analytic_bound_mod_A, 4.0, 1e-12));

  const ConstantReport c = empirical_constant(2.0, 4.0, 1500, 7);
  CHECK(c.empirical_lower >= 1.0);
  CHECK(c.empirical_lower <= bks_constant(2.0, 4.0) * (1.0 + 1e-6));
}

TEST_CASE("plain triangle ratio respects the Hardy cap on random families") {
  for (double p : {1.5, 2.0, 4.0}) {
    for (double r : {1.0, 2.0}) {
      const double cap = 1.0 / (1.0 - 1.0 / p);
      for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        StepFamily fam = random_step_family(seed);
        CHECK(family_ratio(fam, LorentzExponents(p, r)) <= cap * (1.0 + 1e-9));
      }
    }
  }
}
