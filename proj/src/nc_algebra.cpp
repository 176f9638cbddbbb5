#include "ncchain/nc_algebra.hpp"

#include <stdexcept>

#include "ncchain/errors.hpp"

namespace ncchain {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

OperatorPoly delta_poly(const WeylAlgebra& algebra, bool same) { return same ? algebra.identity() : algebra.zero(); }

}  // namespace

int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  // even permutations of (1,2,3)
  if ((i == 1 && j == 2) || (i == 2 && j == 3) || (i == 3 && j == 1)) return 1;
  return -1;
}

void NcParams::validate() const {
  if (sgn(hbar) <= 0) throw ConfigError("hbar must be positive");
  if (sgn(planck_length) <= 0) throw ConfigError("planck_length must be positive");
  if (const auto* pp = std::get_if<PerParticleConstants>(&constants)) {
    if (pp->c_theta.size() != pp->c_eta.size())
      throw ConfigError("per-particle c_theta and c_eta must have the same length");
  }
}

std::pair<Rational, Rational> NcParams::constants_for(int particle, const Rational& mass) const {
  if (sgn(mass) <= 0) throw DomainError("particle mass must be positive");
  return std::visit(
      Overloaded{
          [](const UniformConstants& u) { return std::pair{u.c_theta, u.c_eta}; },
          [particle](const PerParticleConstants& pp) {
            if (particle < 1 || static_cast<std::size_t>(particle) > pp.c_theta.size())
              throw ConfigError("no per-particle constants for particle " + std::to_string(particle));
            auto idx = static_cast<std::size_t>(particle - 1);
            return std::pair{pp.c_theta[idx], pp.c_eta[idx]};
          },
          [&mass](const MassScaledConstants& ms) {
            return std::pair{Rational(ms.gamma_tilde / mass), Rational(ms.alpha_tilde * mass)};
          },
      },
      constants);
}

NcTensors tensors_from_scales(const WeylAlgebra& algebra, const Rational& theta_scale, const Rational& eta_scale) {
  NcTensors t;
  t.theta_scale = theta_scale;
  t.eta_scale = eta_scale;
  for (int i = 1; i <= 3; ++i) {
    t.theta_vec[i - 1] = algebra.aux_a(i) * Complex(theta_scale);
    t.eta_vec[i - 1] = algebra.aux_pb(i) * Complex(eta_scale);
  }
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      OperatorPoly th = algebra.zero();
      OperatorPoly et = algebra.zero();
      for (int k = 1; k <= 3; ++k) {
        int e = levi_civita(i, j, k);
        if (e == 0) continue;
        th += t.theta_vec[k - 1] * Complex(e);
        et += t.eta_vec[k - 1] * Complex(e);
      }
      t.theta_mat[i - 1][j - 1] = std::move(th);
      t.eta_mat[i - 1][j - 1] = std::move(et);
    }
  }
  return t;
}

NcTensors build_tensors(const WeylAlgebra& algebra, const NcParams& params, int particle, const Rational& mass) {
  params.validate();
  if (algebra.hbar() != params.hbar) throw ConfigError("algebra hbar differs from NcParams hbar");
  auto [c_theta, c_eta] = params.constants_for(particle, mass);
  const Rational lp2 = params.planck_length * params.planck_length;
  return tensors_from_scales(algebra, Rational(c_theta * lp2 / params.hbar), Rational(c_eta * params.hbar / lp2));
}

PhaseSpaceOperators bopp_shift(const WeylAlgebra& algebra, int particle, const NcTensors& tensors) {
  PhaseSpaceOperators ops;
  const Complex half = ratio(1, 2);
  for (int i = 1; i <= 3; ++i) {
    OperatorPoly X = algebra.x(particle, i);
    OperatorPoly P = algebra.p(particle, i);
    for (int j = 1; j <= 3; ++j) {
      for (int k = 1; k <= 3; ++k) {
        int e = levi_civita(i, j, k);
        if (e == 0) continue;
        X += tensors.theta_vec[j - 1] * algebra.p(particle, k) * (half * Complex(e));
        P += algebra.x(particle, j) * tensors.eta_vec[k - 1] * (half * Complex(e));
      }
    }
    ops.X[i - 1] = std::move(X);
    ops.P[i - 1] = std::move(P);
  }
  return ops;
}

VerificationReport verify_nc_relations(const NcParams& params, int particle_count, std::span<const Rational> masses) {
  if (particle_count < 1) throw ConfigError("particle count must be >= 1");
  if (!masses.empty() && masses.size() != static_cast<std::size_t>(particle_count))
    throw ConfigError("masses must be empty or have one entry per particle");
  params.validate();

  WeylAlgebra algebra(params.hbar);
  const Complex i_hbar(Rational(0), params.hbar);

  std::vector<NcTensors> tensors;
  std::vector<PhaseSpaceOperators> ops;
  for (int n = 1; n <= particle_count; ++n) {
    Rational mass = masses.empty() ? Rational(1) : masses[static_cast<std::size_t>(n - 1)];
    tensors.push_back(build_tensors(algebra, params, n, mass));
    ops.push_back(bopp_shift(algebra, n, tensors.back()));
  }

  VerificationReport report;
  auto check = [&](const char* relation, int n, int m, int i, int j, OperatorPoly residual) {
    ++report.checked;
    if (!residual.is_zero()) report.failures.push_back({relation, n, m, i, j, std::move(residual)});
  };

  for (int n = 1; n <= particle_count; ++n) {
    const auto& tn = tensors[static_cast<std::size_t>(n - 1)];
    for (int m = 1; m <= particle_count; ++m) {
      const auto& tm = tensors[static_cast<std::size_t>(m - 1)];
      const bool same = n == m;
      const auto& on = ops[static_cast<std::size_t>(n - 1)];
      const auto& om = ops[static_cast<std::size_t>(m - 1)];
      for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
          const auto ii = static_cast<std::size_t>(i - 1);
          const auto jj = static_cast<std::size_t>(j - 1);
          OperatorPoly expect_xx = same ? tn.theta_mat[ii][jj] * i_hbar : algebra.zero();
          check("[X,X]", n, m, i, j, commutator(on.X[ii], om.X[jj]) - expect_xx);

          OperatorPoly expect_pp = same ? tn.eta_mat[ii][jj] * i_hbar : algebra.zero();
          check("[P,P]", n, m, i, j, commutator(on.P[ii], om.P[jj]) - expect_pp);

          OperatorPoly gamma = delta_poly(algebra, i == j);
          for (std::size_t k = 0; k < 3; ++k) gamma += tn.theta_mat[ii][k] * tm.eta_mat[jj][k] * Complex(ratio(1, 4));
          OperatorPoly expect_xp = same ? gamma * i_hbar : algebra.zero();
          check("[X,P]", n, m, i, j, commutator(on.X[ii], om.P[jj]) - expect_xp);
        }
      }
    }
  }

  // Tensors commute with every principal generator.
  for (int n = 1; n <= particle_count; ++n) {
    const auto& tn = tensors[static_cast<std::size_t>(n - 1)];
    for (int m = 1; m <= particle_count; ++m) {
      for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
          for (int k = 1; k <= 3; ++k) {
            const auto ii = static_cast<std::size_t>(i - 1);
            const auto jj = static_cast<std::size_t>(j - 1);
            check("[theta,x]", n, m, i, j, commutator(tn.theta_mat[ii][jj], algebra.x(m, k)));
            check("[theta,p]", n, m, i, j, commutator(tn.theta_mat[ii][jj], algebra.p(m, k)));
            check("[eta,x]", n, m, i, j, commutator(tn.eta_mat[ii][jj], algebra.x(m, k)));
            check("[eta,p]", n, m, i, j, commutator(tn.eta_mat[ii][jj], algebra.p(m, k)));
          }
        }
      }
    }
  }
  return report;
}

}  // namespace ncchain
