#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dhopf/model.hpp"
#include "support/test_support.hpp"

using namespace dhopf;
using namespace dhopf::testing;

TEST_CASE("rhs: P0 is a fixed point for any b > 0") {
  Rng rng(101);
  for (int i = 0; i < 50; ++i) {
    const SystemParams p = random_params(rng);
    const State p0{0.0, 1.0 / p.b, 0.0, 0.0};
    const State dot = rhs(p0, p0, p);
    CHECK(dot.inf_norm() <= 1e-12 * (1.0 + p0.inf_norm()));
  }
}

TEST_CASE("rhs: hand-evaluated point") {
  const State s{1.0, 2.0, 0.5, 0.5};
  const State dot = rhs(s, s, fig1_params());
  CHECK(dot.x == doctest::Approx(-2.0).epsilon(1e-13));
  CHECK(dot.y == doctest::Approx(-0.6).epsilon(1e-13));
  CHECK(dot.z == doctest::Approx(-1.75).epsilon(1e-13));
  CHECK(dot.u == doctest::Approx(-0.485).epsilon(1e-13));
}

TEST_CASE("rhs: K = 0 removes any dependence on the delayed state") {
  Rng rng(102);
  SystemParams p = fig1_params();
  p.K = 0.0;
  for (int i = 0; i < 50; ++i) {
    const State s{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                  rng.uniform(-2, 2)};
    const State d1{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                   rng.uniform(-2, 2)};
    const State d2{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                   rng.uniform(-2, 2)};
    CHECK(rhs(s, d1, p) == rhs(s, d2, p));
  }
}

TEST_CASE("equilibria: three fixed points with the documented coordinates") {
  const SystemParams p = fig2_params();
  const auto eqs = equilibria(p);
  REQUIRE(eqs.size() == 3);
  CHECK(eqs[0].label == EquilibriumLabel::P0);
  CHECK(eqs[0].point.y == doctest::Approx(5.0).epsilon(1e-14));

  const double theta = std::sqrt(kFig2ThetaSq);
  CHECK(eqs[1].point.x == doctest::Approx(theta).epsilon(1e-14));
  CHECK(eqs[1].point.y == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(eqs[1].point.z == doctest::Approx(-theta / 2.5).epsilon(1e-14));
  CHECK(eqs[1].point.u == doctest::Approx(-0.15 * theta).epsilon(1e-13));
  REQUIRE(eqs[1].theta.has_value());
  CHECK(*eqs[1].theta == doctest::Approx(theta).epsilon(1e-14));

  // Published rounded coordinates.
  CHECK(eqs[1].point.x == doctest::Approx(0.92).epsilon(5e-3));
  CHECK(eqs[1].point.y == doctest::Approx(0.75).epsilon(5e-3));
  CHECK(eqs[1].point.z == doctest::Approx(-0.37).epsilon(5e-3));
  CHECK(eqs[1].point.u == doctest::Approx(-0.14).epsilon(7e-3));
}

TEST_CASE("equilibria: unique P0 branch when the offset ratio is nonpositive") {
  SystemParams p = fig1_params();
  p.k = 0.3;  // ratio = 0.87 / (1.5 * -0.1) = -5.8
  const auto eqs = equilibria(p);
  REQUIRE(eqs.size() == 1);
  CHECK(eqs[0].point.x == 0.0);
  CHECK(eqs[0].point.y == doctest::Approx(2.5).epsilon(1e-14));

  // Ratio exactly zero stays on the unique branch.
  const SystemParams boundary{0.0, 1.0, 1.0, 0.0, 1.0, 1.0};
  CHECK(equilibria(boundary).size() == 1);
}

TEST_CASE("equilibria: Fig.1 parameters sit on the three-point branch") {
  const auto eqs = equilibria(fig1_params());
  REQUIRE(eqs.size() == 3);
  const double theta_sq = 0.17 * 0.4 * (1.0 + 5.0 * 1.5) / (1.5 * (0.2 - 0.17)) + 1.0;
  CHECK(*eqs[1].theta * *eqs[1].theta == doctest::Approx(theta_sq).epsilon(1e-12));
  CHECK(theta_sq == doctest::Approx(13.844444444444443).epsilon(1e-9));
}

TEST_CASE("equilibria: every returned point zeroes the vector field") {
  Rng rng(103);
  for (int i = 0; i < 200; ++i) {
    const SystemParams p = random_three_equilibria_params(rng);
    for (const auto& eq : equilibria(p)) {
      const State dot = rhs(eq.point, eq.point, p);
      CHECK(dot.inf_norm() < 1e-12 * (1.0 + eq.point.inf_norm()));
    }
  }
}

TEST_CASE("equilibria: P2 mirrors P1 in x, z, u and shares y") {
  Rng rng(104);
  for (int i = 0; i < 100; ++i) {
    const SystemParams p = random_three_equilibria_params(rng);
    const auto eqs = equilibria(p);
    REQUIRE(eqs.size() == 3);
    CHECK(eqs[2].point.x == -eqs[1].point.x);
    CHECK(eqs[2].point.z == -eqs[1].point.z);
    CHECK(eqs[2].point.u == -eqs[1].point.u);
    CHECK(eqs[2].point.y == eqs[1].point.y);
  }
}

TEST_CASE("equilibria: independent of K (and hence of the delay)") {
  Rng rng(105);
  for (int i = 0; i < 50; ++i) {
    SystemParams p = random_three_equilibria_params(rng);
    p.K = 0.0;
    const auto without = equilibria(p);
    p.K = 7.0;
    const auto with = equilibria(p);
    REQUIRE(without.size() == with.size());
    for (size_t j = 0; j < with.size(); ++j) {
      CHECK(without[j].point == with[j].point);
    }
  }
}

TEST_CASE("equilibria: degenerate parameter rejections") {
  SystemParams p = fig1_params();
  p.d = p.k = 0.2;
  CHECK_THROWS_AS(equilibria(p), DegenerateParameters);
  p = fig1_params();
  p.c = 0.0;
  CHECK_THROWS_AS(equilibria(p), DegenerateParameters);
  p = fig1_params();
  p.b = 0.0;
  CHECK_THROWS_AS(equilibria(p), DegenerateParameters);
  p = fig1_params();
  p.a = -1.0;
  CHECK_THROWS_AS(equilibria(p), ValidationError);
}

TEST_CASE("shift_to_origin: maps P0 to the origin and inverts cleanly") {
  const SystemParams p = fig1_params();
  const State origin = shift_to_origin({0.0, 2.5, 0.0, 0.0}, p);
  CHECK(origin.inf_norm() == 0.0);

  const State shifted = shift_to_origin({1.0, 2.0, 0.5, 0.5}, p);
  CHECK(shifted.y == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(shifted.x == 1.0);

  Rng rng(106);
  for (int i = 0; i < 50; ++i) {
    const State s{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3),
                  rng.uniform(-3, 3)};
    const State back = unshift_from_origin(shift_to_origin(s, p), p);
    CHECK(std::abs(back.y - s.y) < 1e-15 * (1.0 + std::abs(s.y)) + 1e-18);
    CHECK(back.x == s.x);
  }
}

TEST_CASE("jacobians_at: P0 closed form") {
  const SystemParams p = fig1_params();
  const auto eqs = equilibria(p);
  const JacobianPair pair = jacobians_at(eqs[0], p);
  CHECK(pair.j0(0, 0) == doctest::Approx(-2.5).epsilon(1e-14));  // 1/b - a
  CHECK(pair.j0(0, 2) == 1.0);
  CHECK(pair.j0(0, 3) == 1.0);
  CHECK(pair.j0(1, 1) == doctest::Approx(-0.4 + 1.0).epsilon(1e-14));
  CHECK(pair.j0(3, 0) == doctest::Approx(-0.2 / 0.4).epsilon(1e-14));
}

TEST_CASE("jacobians_at: delayed part has the single -K entry") {
  Rng rng(107);
  for (int i = 0; i < 50; ++i) {
    const SystemParams p = random_three_equilibria_params(rng);
    for (const auto& eq : equilibria(p)) {
      const JacobianPair pair = jacobians_at(eq, p);
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
          if (r == 1 && c == 1) {
            CHECK(pair.jtau(r, c) == -p.K);
          } else {
            CHECK(pair.jtau(r, c) == 0.0);
          }
        }
      }
    }
  }
}

TEST_CASE("jacobians_at: P1 closed form entry") {
  const SystemParams p = fig2_params();
  const auto eqs = equilibria(p);
  const JacobianPair pair = jacobians_at(eqs[1], p);
  CHECK(pair.j0(0, 0) == doctest::Approx(0.55).epsilon(1e-14));  // (k+acd)/(c(k-d))
}

namespace {

// Central finite differences of the tau = 0 vector field.
Eigen::Matrix4d numerical_ode_jacobian(const State& at, const SystemParams& p) {
  Eigen::Matrix4d j;
  const double h = 1e-6;
  for (int c = 0; c < 4; ++c) {
    State plus = at, minus = at;
    plus[c] += h;
    minus[c] -= h;
    const State fp = rhs(plus, plus, p);
    const State fm = rhs(minus, minus, p);
    for (int r = 0; r < 4; ++r) j(r, c) = (fp[r] - fm[r]) / (2.0 * h);
  }
  return j;
}

}  // namespace

TEST_CASE("jacobians_at: j0 + jtau matches the finite-difference ODE Jacobian") {
  Rng rng(108);
  for (int i = 0; i < 25; ++i) {
    const SystemParams p = random_three_equilibria_params(rng);
    for (const auto& eq : equilibria(p)) {
      const JacobianPair pair = jacobians_at(eq, p);
      const Eigen::Matrix4d sum = pair.j0 + pair.jtau;
      const Eigen::Matrix4d fd = numerical_ode_jacobian(eq.point, p);
      CHECK((sum - fd).cwiseAbs().maxCoeff() < 1e-6 * (1.0 + sum.cwiseAbs().maxCoeff()));
    }
  }
}
