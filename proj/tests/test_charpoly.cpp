#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "dhopf/charpoly.hpp"
#include "dhopf/polyroots.hpp"
#include "support/test_support.hpp"

using namespace dhopf;
using namespace dhopf::testing;

TEST_CASE("char_spec_p0: reference coefficients") {
  const CharSpecP0 s = char_spec_p0(fig1_params());
  CHECK(s.p1 == doctest::Approx(4.17).epsilon(1e-12));
  CHECK(s.p2 == doctest::Approx(5.93).epsilon(1e-12));
  CHECK(s.p3 == doctest::Approx(1.5575).epsilon(1e-12));
  CHECK(s.b == 0.4);
  CHECK(s.K == 1.0);
}

TEST_CASE("char_spec_p0: degenerate corner a=c=d=k=0, b=1") {
  const CharSpecP0 s = char_spec_p0({0.0, 1.0, 0.0, 0.0, 0.0, 1.0});
  CHECK(s.p1 == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(s.p2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.p3 == 0.0);
}

TEST_CASE("char_value: lambda = 0 collapses to b * p3 for any tau") {
  const CharSpecP0 s = char_spec_p0(fig1_params());
  for (const double tau : {0.0, 0.5, 2.0, 11.0}) {
    const Complex v = char_value(s, Complex(0.0, 0.0), tau);
    CHECK(std::abs(v - Complex(0.4 * 1.5575, 0.0)) < 1e-14);
  }
  CHECK(std::abs(char_value(s, {0.0, 0.0}, 0.5) - Complex(0.623, 0.0)) < 1e-14);
}

TEST_CASE("char_value: i*omega_+ is a root at the critical delay") {
  const CharSpecP0 s = char_spec_p0(fig1_params());
  CHECK(std::abs(char_value(s, Complex(0.0, 0.8), kFig1Tau0)) < 1e-6);
}

TEST_CASE("char_spec_p1: reference coefficient block") {
  const SystemParams p = fig2_params();
  const auto eqs = equilibria(p);
  const CharSpecP1 s = char_spec_p1(p, eqs[1]);
  CHECK(s.a1 == doctest::Approx(2.15).epsilon(1e-12));
  CHECK(s.b1 == doctest::Approx(1.065).epsilon(1e-12));
  CHECK(s.c1 == doctest::Approx(4.23).epsilon(1e-12));
  CHECK(s.d1 == doctest::Approx(3.4).epsilon(1e-12));
  CHECK(s.a2 == 1.0);  // a2 = K exactly
  CHECK(s.b2 == doctest::Approx(2.95).epsilon(1e-12));
  CHECK(s.c2 == doctest::Approx(1.725).epsilon(1e-12));

  // d1 reconstruction: 2c(k-d) theta^2.
  CHECK(s.d1 ==
        doctest::Approx(2.0 * p.c * (p.k - p.d) * kFig2ThetaSq).epsilon(1e-12));
}

TEST_CASE("char_spec_p1: P1 and P2 share every coefficient") {
  Rng rng(201);
  for (int i = 0; i < 50; ++i) {
    const SystemParams p = random_three_equilibria_params(rng);
    const auto eqs = equilibria(p);
    const CharSpecP1 s1 = char_spec_p1(p, eqs[1]);
    const CharSpecP1 s2 = char_spec_p1(p, eqs[2]);
    CHECK(s1.a1 == s2.a1);
    CHECK(s1.b1 == s2.b1);
    CHECK(s1.c1 == s2.c1);
    CHECK(s1.d1 == s2.d1);
    CHECK(s1.a2 == s2.a2);
    CHECK(s1.b2 == s2.b2);
    CHECK(s1.c2 == s2.c2);
  }
}

TEST_CASE("char_value: P1 spec at lambda = 0 returns d1 for any tau") {
  const SystemParams p = fig2_params();
  const CharSpecP1 s = char_spec_p1(p, equilibria(p)[1]);
  for (const double tau : {0.0, 0.31, 3.0}) {
    CHECK(std::abs(char_value(s, Complex(0.0, 0.0), tau) - Complex(s.d1, 0.0)) < 1e-14);
  }
}

TEST_CASE("routh_hurwitz_p0: reference set passes") {
  const StabilityGate gate = routh_hurwitz_p0(char_spec_p0(fig1_params()));
  CHECK(gate.pass);
  CHECK(gate.conditions.size() == 3);
  CHECK(gate.conditions[2].margin == doctest::Approx(4.17 * 5.93 - 1.5575).epsilon(1e-12));
}

TEST_CASE("routh_hurwitz_p0: violations are named") {
  const StabilityGate gate = routh_hurwitz_p0(CharSpecP0{-1.0, 1.0, 1.0, 1.0, 0.0});
  CHECK(!gate.pass);
  const auto violated = gate.violated();
  CHECK(std::find(violated.begin(), violated.end(), "p1 > 0") != violated.end());
}

TEST_CASE("routh_hurwitz_p0: boundary equality fails with the marginal flag") {
  const StabilityGate gate = routh_hurwitz_p0(CharSpecP0{1.0, 1.0, 1.0, 1.0, 0.0});
  CHECK(!gate.pass);
  CHECK(gate.marginal);
  CHECK(gate.conditions[2].marginal);
  CHECK(gate.violated() == std::vector<std::string>{"p1*p2 > p3"});
}

TEST_CASE("routh_hurwitz_p1_tau0: reference set passes") {
  const SystemParams p = fig2_params();
  const StabilityGate gate = routh_hurwitz_p1_tau0(char_spec_p1(p, equilibria(p)[1]));
  CHECK(gate.pass);
  CHECK(gate.conditions.size() == 4);
}

TEST_CASE("routh_hurwitz_p1_tau0: targeted failures") {
  CharSpecP1 s{1.0, 1.0, 1.0, -1.0, 1.0, 1.0, 1.0};
  StabilityGate gate = routh_hurwitz_p1_tau0(s);
  CHECK(!gate.pass);
  auto violated = gate.violated();
  CHECK(std::find(violated.begin(), violated.end(), "d1 > 0") != violated.end());

  gate = routh_hurwitz_p1_tau0(CharSpecP1{});
  CHECK(!gate.pass);
  CHECK(!gate.conditions[0].satisfied);
  CHECK(!gate.conditions[2].satisfied);
}

namespace {

int count_rhp(const std::array<double, 5>& poly) {
  int n = 0;
  for (const auto& root : polynomial_roots(poly)) {
    if (root.real() > 0.0) ++n;
  }
  return n;
}

bool all_lhp(const std::array<double, 5>& poly) {
  for (const auto& root : polynomial_roots(poly)) {
    if (!(root.real() < 0.0)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("gate equivalence: P0 gate + b>0 <=> expanded tau=0 quartic is Hurwitz") {
  Rng rng(202);
  for (int i = 0; i < 300; ++i) {
    const SystemParams p = random_params(rng);
    const CharSpecP0 s = char_spec_p0(p);
    const bool gate = routh_hurwitz_p0(s).pass;
    const bool stable = all_lhp(tau0_polynomial(CharSpec{s}));
    CHECK(gate == stable);
  }
}

TEST_CASE("gate equivalence: P1 tau=0 gate <=> companion eigenvalues in the LHP") {
  Rng rng(203);
  for (int i = 0; i < 300; ++i) {
    CharSpecP1 s;
    s.a1 = rng.uniform(-3, 3);
    s.b1 = rng.uniform(-3, 3);
    s.c1 = rng.uniform(-3, 3);
    s.d1 = rng.uniform(-3, 3);
    s.a2 = rng.uniform(-3, 3);
    s.b2 = rng.uniform(-3, 3);
    s.c2 = rng.uniform(-3, 3);
    const bool gate = routh_hurwitz_p1_tau0(s).pass;
    const bool stable = all_lhp(tau0_polynomial(CharSpec{s}));
    CHECK(gate == stable);
  }
}

TEST_CASE("determinant link: char_value equals det(J0 + e^{-lambda tau} Jtau - lambda I)") {
  Rng rng(204);
  for (int i = 0; i < 60; ++i) {
    const SystemParams p = random_three_equilibria_params(rng);
    const auto eqs = equilibria(p);
    for (const auto& eq : eqs) {
      const JacobianPair pair = jacobians_at(eq, p);
      CharSpec spec;
      if (eq.label == EquilibriumLabel::P0) {
        spec = char_spec_p0(p);
      } else {
        spec = char_spec_p1(p, eq);
      }
      const double tau = rng.uniform(0.0, 2.0);
      const Complex lambda(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
      Eigen::Matrix4cd m = pair.j0.cast<Complex>() +
                           std::exp(-lambda * tau) * pair.jtau.cast<Complex>();
      m -= lambda * Eigen::Matrix4cd::Identity();
      const Complex det = m.determinant();
      const Complex direct = char_value(spec, lambda, tau);
      CHECK(std::abs(det - direct) < 1e-9 * (1.0 + std::abs(direct)));
    }
  }
}

TEST_CASE("tau0_polynomial: expanded P0 product") {
  const CharSpecP0 s = char_spec_p0(fig1_params());
  const auto poly = tau0_polynomial(CharSpec{s});
  // (lambda + b)(cubic): evaluate both forms at a few points.
  for (const double x : {-1.3, 0.4, 2.0}) {
    double horner = 0.0;
    for (const double c : poly) horner = horner * x + c;
    const Complex factored = char_value(s, Complex(x, 0.0), 0.0);
    CHECK(horner == doctest::Approx(factored.real()).epsilon(1e-12));
  }
}

TEST_CASE("rhp count at tau=0 equals zero exactly when the P0 gate passes") {
  Rng rng(205);
  for (int i = 0; i < 100; ++i) {
    const SystemParams p = random_params(rng);
    const CharSpecP0 s = char_spec_p0(p);
    const auto poly = tau0_polynomial(CharSpec{s});
    if (routh_hurwitz_p0(s).pass) {
      CHECK(count_rhp(poly) == 0);
    } else {
      CHECK(count_rhp(poly) >= 0);
    }
  }
}
