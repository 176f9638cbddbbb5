#include <doctest.h>

#include <vector>

#include "ncchain/errors.hpp"
#include "ncchain/nc_algebra.hpp"

using namespace ncchain;

namespace {

NcParams uniform(Rational c_theta, Rational c_eta, Rational hbar = Rational(1), Rational lp = Rational(1)) {
  NcParams p;
  p.hbar = std::move(hbar);
  p.planck_length = std::move(lp);
  p.constants = UniformConstants{std::move(c_theta), std::move(c_eta)};
  return p;
}

}  // namespace

TEST_CASE("levi-civita") {
  CHECK(levi_civita(1, 2, 3) == 1);
  CHECK(levi_civita(2, 3, 1) == 1);
  CHECK(levi_civita(2, 1, 3) == -1);
  CHECK(levi_civita(1, 1, 3) == 0);
}

TEST_CASE("build_tensors with unit constants") {
  WeylAlgebra alg;
  const auto t = build_tensors(alg, uniform(Rational(1), Rational(1)), 1, Rational(1));
  CHECK(t.theta_mat[0][1] == alg.aux_a(3));
  CHECK(t.theta_mat[1][2] == alg.aux_a(1));
  CHECK(t.theta_mat[2][0] == alg.aux_a(2));
  CHECK(t.eta_mat[0][1] == alg.aux_pb(3));
  for (int i = 0; i < 3; ++i) {
    CHECK(t.theta_mat[i][i].is_zero());
    for (int j = 0; j < 3; ++j) {
      CHECK(t.theta_mat[i][j] == -t.theta_mat[j][i]);
      CHECK(t.eta_mat[i][j] == -t.eta_mat[j][i]);
    }
  }
}

TEST_CASE("build_tensors scaling") {
  SUBCASE("c_theta = 0 gives vanishing theta") {
    WeylAlgebra alg;
    const auto t = build_tensors(alg, uniform(Rational(0), Rational(1)), 1, Rational(1));
    for (const auto& row : t.theta_mat)
      for (const auto& e : row) CHECK(e.is_zero());
  }
  SUBCASE("c_theta l_P^2 / hbar and c_eta hbar / l_P^2") {
    WeylAlgebra alg(Rational(2));
    const auto t = build_tensors(alg, uniform(Rational(3), Rational(5), Rational(2), ratio(1, 2)), 1, Rational(1));
    CHECK(t.theta_scale == ratio(3, 8));  // 3 * 1/4 / 2
    CHECK(t.eta_scale == Rational(40));   // 5 * 2 / (1/4)
    CHECK(t.theta_mat[0][1] == alg.aux_a(3) * Complex(ratio(3, 8)));
  }
  SUBCASE("mass-scaled: gamma=2, m=4 gives theta_12 = a3/2") {
    WeylAlgebra alg;
    NcParams p;
    p.constants = MassScaledConstants{Rational(2), Rational(3)};
    const auto t = build_tensors(alg, p, 1, Rational(4));
    CHECK(t.theta_mat[0][1] == alg.aux_a(3) * Complex(ratio(1, 2)));
    CHECK(t.eta_mat[0][1] == alg.aux_pb(3) * Complex(Rational(12)));
  }
  SUBCASE("non-positive mass is rejected") {
    WeylAlgebra alg;
    CHECK_THROWS_AS(build_tensors(alg, uniform(Rational(1), Rational(1)), 1, Rational(0)), DomainError);
  }
  SUBCASE("equal masses give identical tensors in mass-scaled mode") {
    WeylAlgebra alg;
    NcParams p;
    p.constants = MassScaledConstants{ratio(1, 3), ratio(2, 7)};
    CHECK(build_tensors(alg, p, 1, ratio(3, 2)) == build_tensors(alg, p, 2, ratio(3, 2)));
    CHECK_FALSE(build_tensors(alg, p, 1, ratio(3, 2)) == build_tensors(alg, p, 2, Rational(2)));
  }
  SUBCASE("per-particle constants") {
    WeylAlgebra alg;
    NcParams p;
    p.constants = PerParticleConstants{{Rational(1), Rational(2)}, {Rational(0), Rational(1)}};
    CHECK(build_tensors(alg, p, 2, Rational(1)).theta_scale == Rational(2));
    CHECK_THROWS_AS(build_tensors(alg, p, 3, Rational(1)), ConfigError);
  }
}

TEST_CASE("bopp_shift") {
  WeylAlgebra alg;
  SUBCASE("commutative limit") {
    const auto t = build_tensors(alg, uniform(Rational(0), Rational(0)), 1, Rational(1));
    const auto ops = bopp_shift(alg, 1, t);
    for (int i = 1; i <= 3; ++i) {
      CHECK(ops.X[i - 1] == alg.x(1, i));
      CHECK(ops.P[i - 1] == alg.p(1, i));
    }
  }
  SUBCASE("expanded components for unit constants") {
    const auto t = build_tensors(alg, uniform(Rational(1), Rational(1)), 1, Rational(1));
    const auto ops = bopp_shift(alg, 1, t);
    const Complex half(ratio(1, 2));
    // X_1 = x_1 + ½(θ_2 p_3 − θ_3 p_2)
    CHECK(ops.X[0] == alg.x(1, 1) + (alg.aux_a(2) * alg.p(1, 3) - alg.aux_a(3) * alg.p(1, 2)) * half);
    // P_1 = p_1 + ½(x_2 η_3 − x_3 η_2)
    CHECK(ops.P[0] == alg.p(1, 1) + (alg.x(1, 2) * alg.aux_pb(3) - alg.x(1, 3) * alg.aux_pb(2)) * half);
    for (int i = 0; i < 3; ++i) {
      CHECK(adjoint(ops.X[i]) == ops.X[i]);
      CHECK(adjoint(ops.P[i]) == ops.P[i]);
    }
  }
}

TEST_CASE("[X1, P2] equals -(i hbar / 4) theta_2 eta_1") {
  WeylAlgebra alg;
  const auto t = build_tensors(alg, uniform(Rational(1), Rational(1)), 1, Rational(1));
  const auto ops = bopp_shift(alg, 1, t);
  const auto expected = t.theta_vec[1] * t.eta_vec[0] * Complex(Rational(0), ratio(-1, 4));
  CHECK(commutator(ops.X[0], ops.P[1]) == expected);

  // ε-contraction form: (i/4)(δ_12 θ·η − θ_2 η_1)
  OperatorPoly contracted = alg.zero();
  for (int k = 0; k < 3; ++k) contracted += t.theta_mat[0][k] * t.eta_mat[1][k];
  CHECK(contracted * Complex(Rational(0), ratio(1, 4)) == expected);
}

TEST_CASE("verify_nc_relations passes for the Bopp shift") {
  SUBCASE("unit constants, one particle") {
    const auto r = verify_nc_relations(uniform(Rational(1), Rational(1)), 1);
    CHECK(r.passed());
    CHECK(r.checked > 0);
  }
  SUBCASE("non-trivial hbar, l_P and constants, three particles") {
    const auto r = verify_nc_relations(uniform(ratio(2, 3), ratio(-5, 7), ratio(3, 2), ratio(4, 5)), 3);
    CHECK(r.passed());
  }
  SUBCASE("mass-scaled with distinct masses") {
    NcParams p;
    p.constants = MassScaledConstants{ratio(1, 2), ratio(3, 2)};
    const std::vector<Rational> masses{Rational(1), Rational(2), ratio(1, 3)};
    CHECK(verify_nc_relations(p, 3, masses).passed());
  }
  SUBCASE("bad arguments") {
    CHECK_THROWS_AS(verify_nc_relations(uniform(Rational(1), Rational(1)), 0), ConfigError);
    const std::vector<Rational> masses{Rational(1)};
    CHECK_THROWS_AS(verify_nc_relations(uniform(Rational(1), Rational(1)), 2, masses), ConfigError);
  }
}

TEST_CASE("momentum shift with the opposite sign reverses [P,P]") {
  // P = p − ½[x × η] gives [P_1, P_2] = −iħ η_3, so only P = p + ½[x × η] realizes the algebra.
  WeylAlgebra alg;
  const auto t = build_tensors(alg, uniform(Rational(0), Rational(1)), 1, Rational(1));
  const Complex half(ratio(1, 2));
  const auto p1 = alg.p(1, 1) - (alg.x(1, 2) * t.eta_vec[2] - alg.x(1, 3) * t.eta_vec[1]) * half;
  const auto p2 = alg.p(1, 2) - (alg.x(1, 3) * t.eta_vec[0] - alg.x(1, 1) * t.eta_vec[2]) * half;
  CHECK(commutator(p1, p2) == t.eta_mat[0][1] * Complex(Rational(0), Rational(-1)));

  const auto ops = bopp_shift(alg, 1, t);
  CHECK(commutator(ops.P[0], ops.P[1]) == t.eta_mat[0][1] * Complex::i());
}
