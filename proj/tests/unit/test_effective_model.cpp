#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "ncchain/effective_model.hpp"
#include "ncchain/errors.hpp"

using namespace ncchain;

namespace {

ModelParams chain(int n, Rational m, Rational omega, Rational k, Rational c_theta, Rational c_eta) {
  ModelParams p;
  p.particle_count = n;
  p.mass = std::move(m);
  p.omega = std::move(omega);
  p.coupling = std::move(k);
  p.nc.constants = UniformConstants{std::move(c_theta), std::move(c_eta)};
  return p;
}

ModelParams with_moments(int n, Rational m, Rational omega, Rational k, Rational theta_sq, Rational eta_sq) {
  ModelParams p = chain(n, std::move(m), std::move(omega), std::move(k), Rational(0), Rational(0));
  p.moments_override = Moments{std::move(theta_sq), std::move(eta_sq)};
  return p;
}

OperatorPoly sum_sq(const WeylAlgebra& alg, bool momentum, int n) {
  OperatorPoly acc = alg.zero();
  for (int i = 1; i <= 3; ++i) {
    const auto g = momentum ? alg.p(n, i) : alg.x(n, i);
    acc += g * g;
  }
  return acc;
}

}  // namespace

TEST_CASE("build_chain_hamiltonian") {
  SUBCASE("single site: periodic self-coupling vanishes") {
    CHECK(build_chain_hamiltonian(chain(1, Rational(1), Rational(1), Rational(5), ratio(1, 3), ratio(1, 2))) ==
          build_chain_hamiltonian(chain(1, Rational(1), Rational(1), Rational(0), ratio(1, 3), ratio(1, 2))));
  }
  SUBCASE("commutative two-site chain double-counts its bond") {
    const Rational m = ratio(3, 2);
    const Rational w = ratio(2, 3);
    const Rational k = ratio(5, 7);
    WeylAlgebra alg;
    OperatorPoly expected = alg.zero();
    for (int n = 1; n <= 2; ++n) {
      expected += sum_sq(alg, true, n) * Complex(Rational(1 / (2 * m)));
      expected += sum_sq(alg, false, n) * Complex(Rational(m * w * w / 2));
    }
    for (int i = 1; i <= 3; ++i) {
      const auto d = alg.x(1, i) - alg.x(2, i);
      expected += d * d * Complex(Rational(2 * k));
    }
    CHECK(build_chain_hamiltonian(chain(2, m, w, k, Rational(0), Rational(0))) == expected);
  }
  SUBCASE("Hermitian") {
    const auto h = build_chain_hamiltonian(chain(3, ratio(2, 3), ratio(1, 2), ratio(3, 4), ratio(1, 5), ratio(2, 7)));
    CHECK(adjoint(h) == h);
  }
  SUBCASE("moments override has no operator-level Hamiltonian") {
    CHECK_THROWS_AS(build_chain_hamiltonian(with_moments(2, Rational(1), Rational(1), Rational(1), ratio(1, 50),
                                                         ratio(3, 100))),
                    ConfigError);
  }
}

TEST_CASE("expanded_hamiltonian equals the Bopp-shifted Hamiltonian") {
  for (int n = 1; n <= 4; ++n) {
    const auto p = chain(n, ratio(4, 3), ratio(3, 5), ratio(2, 9), ratio(-3, 4), ratio(5, 6));
    CHECK(expanded_hamiltonian(p) - build_chain_hamiltonian(p) == OperatorPoly());
  }
  SUBCASE("commutative limit") {
    const auto p = chain(3, Rational(2), Rational(1), Rational(1), Rational(0), Rational(0));
    CHECK(expanded_hamiltonian(p) == build_chain_hamiltonian(p));
  }
  SUBCASE("free particle, omega = k = 0") {
    const Rational m = ratio(5, 3);
    const auto p = chain(1, m, Rational(0), Rational(0), ratio(2, 3), ratio(3, 2));
    WeylAlgebra alg;
    const auto t = build_tensors(alg, p.nc, 1, m);
    const auto& eta = t.eta_vec;
    auto x = [&](int i) { return alg.x(1, i); };
    auto pp = [&](int i) { return alg.p(1, i); };
    // η·[x×p]
    const auto eta_xp = eta[0] * (x(2) * pp(3) - x(3) * pp(2)) + eta[1] * (x(3) * pp(1) - x(1) * pp(3)) +
                        eta[2] * (x(1) * pp(2) - x(2) * pp(1));
    // [η×x]²
    const auto c1 = eta[1] * x(3) - eta[2] * x(2);
    const auto c2 = eta[2] * x(1) - eta[0] * x(3);
    const auto c3 = eta[0] * x(2) - eta[1] * x(1);
    const auto expected = sum_sq(alg, true, 1) * Complex(Rational(1 / (2 * m))) -
                          eta_xp * Complex(Rational(1 / (2 * m))) +
                          (c1 * c1 + c2 * c2 + c3 * c3) * Complex(Rational(1 / (8 * m)));
    CHECK(expanded_hamiltonian(p) == expected);
    CHECK(build_chain_hamiltonian(p) == expected);
  }
}

TEST_CASE("effective_params") {
  const auto zero_theta = effective_params(ratio(7, 3), Rational(2), Moments{Rational(0), ratio(1, 10)});
  CHECK(zero_theta.m_eff == ratio(7, 3));
  const auto e = effective_params(Rational(1), Rational(1), Moments{Rational(0), Rational(6)});
  CHECK(e.m_eff == Rational(1));
  CHECK(e.omega_eff_sq == Rational(2));
  CHECK(e.omega_eff() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  const auto g = effective_params(Rational(2), Rational(3), Moments{ratio(1, 6), ratio(1, 2)});
  // dressing 1 + 4·9·(1/6)/6 = 2
  CHECK(g.m_eff == Rational(1));
  CHECK(g.omega_eff_sq == (Rational(9) + ratio(1, 48)) * 2);
}

TEST_CASE("averaged Hamiltonian and the closed-form template agree exactly") {
  SUBCASE("moments given directly") {
    const auto p = with_moments(3, Rational(1), Rational(1), Rational(1), ratio(1, 50), ratio(3, 100));
    const auto eh = effective_hamiltonian(p);
    CHECK(eh.form == effective_template(p));
    CHECK(eh.form.is_symmetric());
    CHECK(sgn(eh.form.offset()) == 0);
  }
  SUBCASE("moments from tensors, several chain lengths") {
    for (int n = 1; n <= 4; ++n) {
      const auto p = chain(n, ratio(3, 2), ratio(2, 5), ratio(7, 4), ratio(1, 3), ratio(-2, 5));
      const auto eh = effective_hamiltonian(p);
      CHECK(eh.form == effective_template(p));
      CHECK(eh.moments == theta_eta_moments(p.nc));
    }
  }
  SUBCASE("override reproduces the tensor route when moments coincide") {
    const auto direct = chain(3, ratio(3, 2), ratio(2, 5), ratio(7, 4), ratio(1, 3), ratio(-2, 5));
    auto overridden = direct;
    overridden.moments_override = theta_eta_moments(direct.nc);
    CHECK(averaged_hamiltonian(overridden) == averaged_hamiltonian(direct));
  }
  SUBCASE("averaged Hamiltonian is affine in the squared tensor scales") {
    auto at = [](Rational c_theta, Rational c_eta) {
      return averaged_hamiltonian(chain(2, ratio(2, 3), ratio(5, 4), ratio(1, 3), std::move(c_theta), std::move(c_eta)));
    };
    const auto base = at(Rational(0), Rational(0));
    const auto theta1 = at(Rational(1), Rational(0)) - base;
    const auto eta1 = at(Rational(0), Rational(1)) - base;
    CHECK(at(Rational(2), Rational(3)) == base + theta1 * Complex(Rational(4)) + eta1 * Complex(Rational(9)));
    CHECK(at(ratio(-1, 2), Rational(0)) == base + theta1 * Complex(ratio(1, 4)));
  }
}

TEST_CASE("delta_hamiltonian") {
  SUBCASE("commutative model has no correction") {
    CHECK(delta_hamiltonian(chain(3, Rational(1), Rational(1), Rational(1), Rational(0), Rational(0))).is_zero());
  }
  SUBCASE("averages to zero and is Hermitian") {
    const auto p = chain(3, ratio(5, 4), ratio(1, 3), ratio(2, 3), ratio(3, 7), ratio(4, 9));
    const auto dh = delta_hamiltonian(p);
    CHECK_FALSE(dh.is_zero());
    CHECK(vacuum_expectation(dh).is_zero());
    CHECK(adjoint(dh) == dh);
    CHECK(adjoint(averaged_hamiltonian(p)) == averaged_hamiltonian(p));
  }
  SUBCASE("explicit nine-term form matches the subtraction") {
    for (int n = 1; n <= 3; ++n) {
      const auto p = chain(n, ratio(5, 4), ratio(1, 3), ratio(2, 3), ratio(3, 7), ratio(4, 9));
      CHECK(delta_hamiltonian_explicit(p) == delta_hamiltonian(p));
    }
  }
  SUBCASE("<[eta x x]^2 / 8m> = <eta^2> x^2 / 12m") {
    const Rational m = ratio(3, 2);
    NcParams nc;
    nc.constants = UniformConstants{Rational(0), ratio(2, 3)};
    WeylAlgebra alg;
    const auto t = build_tensors(alg, nc, 1, m);
    OperatorPoly sq = alg.zero();
    for (int i = 1; i <= 3; ++i) {
      OperatorPoly c = alg.zero();
      for (int j = 1; j <= 3; ++j)
        for (int k = 1; k <= 3; ++k)
          if (int e = levi_civita(i, j, k)) c += t.eta_vec[j - 1] * alg.x(1, k) * Complex(e);
      sq += c * c;
    }
    const auto lhs = vacuum_expectation(sq * Complex(Rational(1 / (8 * m))));
    const auto rhs = sum_sq(alg, false, 1) * Complex(Rational(theta_eta_moments(nc).eta_sq / (12 * m)));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("quadratic form extraction") {
  WeylAlgebra alg(Rational(2));
  SUBCASE("symmetric ordering of x p") {
    // ½(xp + px) = xp − iħ/2
    const auto h = alg.x(1, 1) * alg.p(1, 1) - alg.scalar(Complex(Rational(0), Rational(1)));
    const auto f = extract_quadratic_form(h, 1);
    CHECK(f(f.position_index(1, 1), f.momentum_index(1, 1)) == Rational(1));
    CHECK(f(f.momentum_index(1, 1), f.position_index(1, 1)) == Rational(1));
    CHECK(sgn(f.offset()) == 0);
  }
  SUBCASE("diagonal terms and constants") {
    const auto h = alg.p(2, 3) * alg.p(2, 3) * Complex(ratio(1, 2)) + alg.scalar(Complex(Rational(4)));
    const auto f = extract_quadratic_form(h, 2);
    CHECK(f(f.momentum_index(2, 3), f.momentum_index(2, 3)) == Rational(1));
    CHECK(f.offset() == Rational(4));
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(extract_quadratic_form(alg.x(1, 1), 1), std::invalid_argument);
    CHECK_THROWS_AS(extract_quadratic_form(alg.aux_a(1) * alg.aux_a(1), 1), std::invalid_argument);
    CHECK_THROWS_AS(extract_quadratic_form(alg.x(1, 1) * alg.x(1, 1) * Complex::i(), 1), std::invalid_argument);
    CHECK_THROWS_AS(extract_quadratic_form(alg.x(2, 1) * alg.x(2, 1), 1), std::invalid_argument);
  }
  SUBCASE("index layout") {
    QuadraticForm f(3);
    CHECK(f.dimension() == 18);
    CHECK(f.position_index(2, 1) == 3);
    CHECK(f.momentum_index(1, 1) == 9);
    const auto j = f.symplectic_form();
    CHECK(j(0, 9) == 1.0);
    CHECK(j(9, 0) == -1.0);
  }
}

TEST_CASE("structure of the effective quadratic form") {
  SUBCASE("positive semidefinite with massive centre of mass when <eta^2> > 0") {
    const auto eh = effective_hamiltonian(with_moments(4, Rational(1), Rational(0), Rational(1), ratio(1, 20), ratio(1, 10)));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(eh.form.matrix());
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
  SUBCASE("exactly three zero directions when omega = <eta^2> = 0") {
    const auto eh = effective_hamiltonian(with_moments(5, Rational(1), Rational(0), ratio(3, 2), ratio(1, 20), Rational(0)));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(eh.form.matrix());
    int zeros = 0;
    for (double v : es.eigenvalues()) {
      CHECK(v > -1e-12);
      if (std::abs(v) < 1e-12) ++zeros;
    }
    CHECK(zeros == 3);
    // the zero directions are uniform translations
    Eigen::VectorXd shift = Eigen::VectorXd::Zero(30);
    for (int n = 1; n <= 5; ++n) shift(static_cast<Eigen::Index>(eh.form.position_index(n, 2))) = 1.0;
    CHECK((eh.form.matrix() * shift).norm() == 0.0);
  }
  SUBCASE("coupling blocks are circulant in the particle index") {
    const int count = 5;
    const auto eh = effective_hamiltonian(with_moments(count, ratio(2, 3), ratio(1, 2), ratio(3, 4), ratio(1, 30), ratio(1, 40)));
    const auto& f = eh.form;
    for (int axis = 1; axis <= 3; ++axis) {
      for (int n = 1; n <= count; ++n) {
        for (int m = 1; m <= count; ++m) {
          const int n2 = n % count + 1;
          const int m2 = m % count + 1;
          CHECK(f(f.position_index(n, axis), f.position_index(m, axis)) ==
                f(f.position_index(n2, axis), f.position_index(m2, axis)));
          CHECK(f(f.momentum_index(n, axis), f.momentum_index(m, axis)) ==
                f(f.momentum_index(n2, axis), f.momentum_index(m2, axis)));
        }
      }
    }
  }
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(chain(0, Rational(1), Rational(1), Rational(1), Rational(0), Rational(0)).validate(), ConfigError);
  CHECK_THROWS_AS(chain(1, Rational(0), Rational(1), Rational(1), Rational(0), Rational(0)).validate(), ConfigError);
  CHECK_THROWS_AS(chain(1, Rational(1), Rational(-1), Rational(1), Rational(0), Rational(0)).validate(), ConfigError);
  CHECK_THROWS_AS(chain(1, Rational(1), Rational(1), Rational(-1), Rational(0), Rational(0)).validate(), ConfigError);
  CHECK_THROWS_AS(with_moments(1, Rational(1), Rational(1), Rational(1), Rational(-1), Rational(0)).validate(), ConfigError);

  ModelParams unequal = chain(2, Rational(1), Rational(1), Rational(1), Rational(0), Rational(0));
  unequal.nc.constants = PerParticleConstants{{Rational(1), Rational(2)}, {Rational(0), Rational(0)}};
  CHECK_THROWS_AS(unequal.moments(), ConfigError);
  CHECK_NOTHROW(build_chain_hamiltonian(unequal));
  CHECK_THROWS_AS(effective_hamiltonian(unequal), ConfigError);
}
