#include "ncchain/effective_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ncchain/errors.hpp"

namespace ncchain {

namespace {

using Vec3 = std::array<OperatorPoly, 3>;

Vec3 cross(const Vec3& a, const Vec3& b) {
  Vec3 out;
  for (int i = 1; i <= 3; ++i) {
    OperatorPoly acc;
    for (int j = 1; j <= 3; ++j) {
      for (int k = 1; k <= 3; ++k) {
        int e = levi_civita(i, j, k);
        if (e != 0) acc += a[j - 1] * b[k - 1] * Complex(e);
      }
    }
    out[i - 1] = std::move(acc);
  }
  return out;
}

OperatorPoly dot(const Vec3& a, const Vec3& b) {
  OperatorPoly acc;
  for (std::size_t i = 0; i < 3; ++i) acc += a[i] * b[i];
  return acc;
}

Vec3 difference(const Vec3& a, const Vec3& b) {
  Vec3 out;
  for (std::size_t i = 0; i < 3; ++i) out[i] = a[i] - b[i];
  return out;
}

Vec3 positions(const WeylAlgebra& algebra, int n) {
  return {algebra.x(n, 1), algebra.x(n, 2), algebra.x(n, 3)};
}

Vec3 momenta(const WeylAlgebra& algebra, int n) {
  return {algebra.p(n, 1), algebra.p(n, 2), algebra.p(n, 3)};
}

int next_site(int n, int count) { return n % count + 1; }

OperatorPoly hamiltonian_from(const WeylAlgebra& algebra, const ModelParams& params,
                              const std::vector<PhaseSpaceOperators>& ops) {
  const int count = params.particle_count;
  const Complex kinetic(Rational(1 / (2 * params.mass)));
  const Complex potential(Rational(params.mass * params.omega * params.omega / 2));
  const Complex coupling(params.coupling);
  OperatorPoly h = algebra.zero();
  for (int n = 1; n <= count; ++n) {
    const auto& cur = ops[static_cast<std::size_t>(n - 1)];
    const auto& nxt = ops[static_cast<std::size_t>(next_site(n, count) - 1)];
    for (std::size_t i = 0; i < 3; ++i) {
      h += cur.P[i] * cur.P[i] * kinetic;
      h += cur.X[i] * cur.X[i] * potential;
      OperatorPoly d = nxt.X[i] - cur.X[i];
      h += d * d * coupling;
    }
  }
  return h;
}

std::vector<PhaseSpaceOperators> operators_from_scales(const WeylAlgebra& algebra, int count,
                                                       const Rational& theta_scale, const Rational& eta_scale) {
  NcTensors tensors = tensors_from_scales(algebra, theta_scale, eta_scale);
  std::vector<PhaseSpaceOperators> ops;
  ops.reserve(static_cast<std::size_t>(count));
  for (int n = 1; n <= count; ++n) ops.push_back(bopp_shift(algebra, n, tensors));
  return ops;
}

void require_operator_model(const ModelParams& params) {
  if (params.moments_override)
    throw ConfigError("operator-level Hamiltonians need c_theta/c_eta; a moments override only defines the spectrum");
}

// Shared θ, η vectors of an equal-tensor chain.
NcTensors chain_tensors(const WeylAlgebra& algebra, const ModelParams& params) {
  require_operator_model(params);
  (void)params.moments();  // rejects unequal per-particle tensors
  return build_tensors(algebra, params.nc, 1, params.mass);
}

}  // namespace

void ModelParams::validate() const {
  if (particle_count < 1) throw ConfigError("N must be >= 1");
  if (particle_count > 0xFFFF) throw ConfigError("N must be <= 65535");
  if (sgn(mass) <= 0) throw ConfigError("mass must be positive");
  if (sgn(omega) < 0) throw ConfigError("omega must be non-negative");
  if (sgn(coupling) < 0) throw ConfigError("k must be non-negative");
  nc.validate();
  if (moments_override && (sgn(moments_override->theta_sq) < 0 || sgn(moments_override->eta_sq) < 0))
    throw ConfigError("moments must be non-negative");
  if (omega_osc && sgn(*omega_osc) <= 0) throw ConfigError("omega_osc must be positive");
}

Moments ModelParams::moments() const {
  validate();
  if (moments_override) return *moments_override;
  const auto first = nc.constants_for(1, mass);
  for (int n = 2; n <= particle_count; ++n) {
    if (nc.constants_for(n, mass) != first)
      throw ConfigError("chain spectrum requires identical noncommutativity tensors for all particles");
  }
  return theta_eta_moments(nc, 1, mass);
}

std::vector<PhaseSpaceOperators> chain_operators(const WeylAlgebra& algebra, const ModelParams& params) {
  params.validate();
  require_operator_model(params);
  std::vector<PhaseSpaceOperators> ops;
  ops.reserve(static_cast<std::size_t>(params.particle_count));
  for (int n = 1; n <= params.particle_count; ++n)
    ops.push_back(bopp_shift(algebra, n, build_tensors(algebra, params.nc, n, params.mass)));
  return ops;
}

OperatorPoly build_chain_hamiltonian(const ModelParams& params) {
  WeylAlgebra algebra(params.nc.hbar);
  return hamiltonian_from(algebra, params, chain_operators(algebra, params));
}

OperatorPoly expanded_hamiltonian(const ModelParams& params) {
  params.validate();
  WeylAlgebra algebra(params.nc.hbar);
  const NcTensors t = chain_tensors(algebra, params);
  const Vec3& theta = t.theta_vec;
  const Vec3& eta = t.eta_vec;
  const Rational& m = params.mass;
  const Rational mw2 = m * params.omega * params.omega;
  const Rational& k = params.coupling;
  const int count = params.particle_count;

  OperatorPoly h = algebra.zero();
  for (int n = 1; n <= count; ++n) {
    const Vec3 x = positions(algebra, n);
    const Vec3 p = momenta(algebra, n);
    const Vec3 dx = difference(positions(algebra, next_site(n, count)), x);
    const Vec3 dp = difference(momenta(algebra, next_site(n, count)), p);
    const Vec3 x_cross_p = cross(x, p);
    const Vec3 eta_cross_x = cross(eta, x);
    const Vec3 theta_cross_p = cross(theta, p);
    const Vec3 theta_cross_dp = cross(theta, dp);

    h += dot(p, p) * Complex(Rational(1 / (2 * m)));
    h += dot(x, x) * Complex(Rational(mw2 / 2));
    h += dot(dx, dx) * Complex(k);
    h -= dot(eta, x_cross_p) * Complex(Rational(1 / (2 * m)));
    h -= dot(theta, x_cross_p) * Complex(Rational(mw2 / 2));
    h -= dot(theta, cross(dx, dp)) * Complex(k);
    h += dot(eta_cross_x, eta_cross_x) * Complex(Rational(1 / (8 * m)));
    h += dot(theta_cross_p, theta_cross_p) * Complex(Rational(mw2 / 8));
    h += dot(theta_cross_dp, theta_cross_dp) * Complex(Rational(k / 4));
  }
  return h;
}

OperatorPoly averaged_hamiltonian(const ModelParams& params) {
  params.validate();
  if (!params.moments_override) return vacuum_expectation(build_chain_hamiltonian(params));

  // <H_s>_ab is affine in s_θ² and s_η² (odd orders average out and θ never
  // meets η), and a unit scale carries <θ²> = <η²> = 3/2.
  WeylAlgebra algebra(params.nc.hbar);
  const int count = params.particle_count;
  auto averaged_at = [&](const Rational& st, const Rational& se) {
    return vacuum_expectation(hamiltonian_from(algebra, params, operators_from_scales(algebra, count, st, se)));
  };
  const OperatorPoly base = averaged_at(Rational(0), Rational(0));
  const OperatorPoly theta_unit = averaged_at(Rational(1), Rational(0)) - base;
  const OperatorPoly eta_unit = averaged_at(Rational(0), Rational(1)) - base;
  const Rational unit = ratio(3, 2);
  return base + theta_unit * Complex(Rational(params.moments_override->theta_sq / unit)) +
         eta_unit * Complex(Rational(params.moments_override->eta_sq / unit));
}

OperatorPoly delta_hamiltonian(const ModelParams& params) {
  OperatorPoly hs = build_chain_hamiltonian(params);
  return hs - vacuum_expectation(hs);
}

OperatorPoly delta_hamiltonian_explicit(const ModelParams& params) {
  params.validate();
  WeylAlgebra algebra(params.nc.hbar);
  const NcTensors t = chain_tensors(algebra, params);
  const Moments mom = params.moments();
  const Vec3& theta = t.theta_vec;
  const Vec3& eta = t.eta_vec;
  const Rational& m = params.mass;
  const Rational mw2 = m * params.omega * params.omega;
  const Rational& k = params.coupling;
  const int count = params.particle_count;

  OperatorPoly h = algebra.zero();
  for (int n = 1; n <= count; ++n) {
    const Vec3 x = positions(algebra, n);
    const Vec3 p = momenta(algebra, n);
    const Vec3 dx = difference(positions(algebra, next_site(n, count)), x);
    const Vec3 dp = difference(momenta(algebra, next_site(n, count)), p);
    const Vec3 x_cross_p = cross(x, p);
    const Vec3 eta_cross_x = cross(eta, x);
    const Vec3 theta_cross_p = cross(theta, p);
    const Vec3 theta_cross_dp = cross(theta, dp);

    h += dot(eta_cross_x, eta_cross_x) * Complex(Rational(1 / (8 * m)));
    h += dot(theta_cross_p, theta_cross_p) * Complex(Rational(mw2 / 8));
    h -= dot(theta, x_cross_p) * Complex(Rational(mw2 / 2));
    h -= dot(eta, x_cross_p) * Complex(Rational(1 / (2 * m)));
    h -= dot(theta, cross(dx, dp)) * Complex(k);
    h += dot(theta_cross_dp, theta_cross_dp) * Complex(Rational(k / 4));
    h -= dot(x, x) * Complex(Rational(mom.eta_sq / (12 * m)));
    h -= dot(p, p) * Complex(Rational(mom.theta_sq * mw2 / 12));
    h -= dot(dp, dp) * Complex(Rational(k * mom.theta_sq / 6));
  }
  return h;
}

double EffectiveParams::omega_eff() const { return std::sqrt(to_double(omega_eff_sq)); }

EffectiveParams effective_params(const Rational& mass, const Rational& omega, const Moments& moments) {
  if (sgn(mass) <= 0) throw DomainError("mass must be positive");
  const Rational dressing = 1 + mass * mass * omega * omega * moments.theta_sq / 6;
  EffectiveParams e;
  e.m_eff = mass / dressing;
  e.omega_eff_sq = (omega * omega + moments.eta_sq / (6 * mass * mass)) * dressing;
  return e;
}

QuadraticForm::QuadraticForm(int particle_count)
    : particle_count_(particle_count), dim_(6 * static_cast<std::size_t>(particle_count)), entries_(dim_ * dim_) {
  if (particle_count < 1) throw std::invalid_argument("QuadraticForm needs at least one particle");
}

std::size_t QuadraticForm::position_index(int particle, int axis) const {
  if (particle < 1 || particle > particle_count_ || axis < 1 || axis > 3)
    throw std::out_of_range("position index out of range");
  return 3 * static_cast<std::size_t>(particle - 1) + static_cast<std::size_t>(axis - 1);
}

std::size_t QuadraticForm::momentum_index(int particle, int axis) const {
  return dim_ / 2 + position_index(particle, axis);
}

void QuadraticForm::add_symmetric(std::size_t row, std::size_t col, const Rational& v) {
  entries_[row * dim_ + col] += v;
  if (row != col) entries_[col * dim_ + row] += v;
}

bool QuadraticForm::is_symmetric() const {
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = r + 1; c < dim_; ++c)
      if (entries_[r * dim_ + c] != entries_[c * dim_ + r]) return false;
  return true;
}

Eigen::MatrixXd QuadraticForm::matrix() const {
  const auto d = static_cast<Eigen::Index>(dim_);
  Eigen::MatrixXd m(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = to_double(entries_[static_cast<std::size_t>(r) * dim_ + static_cast<std::size_t>(c)]);
  return m;
}

Eigen::MatrixXd QuadraticForm::symplectic_form() const {
  const auto d = static_cast<Eigen::Index>(dim_);
  const Eigen::Index h = d / 2;
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(d, d);
  j.topRightCorner(h, h).setIdentity();
  j.bottomLeftCorner(h, h) = -Eigen::MatrixXd::Identity(h, h);
  return j;
}

QuadraticForm extract_quadratic_form(const OperatorPoly& poly, int particle_count) {
  QuadraticForm form(particle_count);
  auto index_of = [&](const Generator& g) {
    if (g.is_auxiliary()) throw std::invalid_argument("quadratic form input contains auxiliary generators");
    if (g.particle > particle_count) throw std::invalid_argument("generator particle index exceeds N");
    return g.kind == GeneratorKind::kPosition ? form.position_index(g.particle, g.axis)
                                              : form.momentum_index(g.particle, g.axis);
  };
  Complex offset;
  for (const auto& [w, c] : poly.terms()) {
    if (w.empty()) {
      offset += c;
      continue;
    }
    if (w.size() != 2) throw std::invalid_argument("quadratic form input must have degree 0 or 2 terms only");
    if (!c.is_real()) throw std::invalid_argument("quadratic form input is not Hermitian (complex coefficient)");
    const std::size_t u = index_of(w[0]);
    const std::size_t v = index_of(w[1]);
    if (u == v) {
      form.add_symmetric(u, u, Rational(2 * c.re));
    } else {
      form.add_symmetric(u, v, c.re);
      // gh = ½(gh + hg) + ½[g, h]
      if (poly.algebra()) offset += c * (*poly.algebra())(w[0], w[1]) * Complex(ratio(1, 2));
    }
  }
  if (!offset.is_real()) throw std::invalid_argument("quadratic form input is not Hermitian (complex offset)");
  form.add_offset(offset.re);
  return form;
}

QuadraticForm effective_template(const ModelParams& params) {
  const Moments mom = params.moments();
  const EffectiveParams eff = effective_params(params.mass, params.omega, mom);
  const int count = params.particle_count;
  QuadraticForm form(count);

  const Rational x_diag = eff.m_eff * eff.omega_eff_sq;
  const Rational p_diag = 1 / eff.m_eff;
  // ½ zᵀMz weights of the bond Laplacian Σ(Δx)², Σ(Δp)²
  const Rational x_bond = 2 * params.coupling;
  const Rational p_bond = params.coupling * mom.theta_sq / 3;

  for (int n = 1; n <= count; ++n) {
    for (int i = 1; i <= 3; ++i) {
      form.add_symmetric(form.position_index(n, i), form.position_index(n, i), x_diag);
      form.add_symmetric(form.momentum_index(n, i), form.momentum_index(n, i), p_diag);
    }
  }
  // c (z_a − z_b)² adds 2c to M_aa and M_bb and −2c to M_ab; a self-bond (N = 1) vanishes.
  auto add_bond = [&form](std::size_t a, std::size_t b, const Rational& weight) {
    if (a == b) return;
    form.add_symmetric(a, a, weight);
    form.add_symmetric(b, b, weight);
    form.add_symmetric(a, b, Rational(-weight));
  };
  for (int n = 1; n <= count; ++n) {
    const int m = next_site(n, count);
    for (int i = 1; i <= 3; ++i) {
      add_bond(form.position_index(n, i), form.position_index(m, i), x_bond);
      add_bond(form.momentum_index(n, i), form.momentum_index(m, i), p_bond);
    }
  }
  return form;
}

EffectiveHamiltonian effective_hamiltonian(const ModelParams& params) {
  const Moments mom = params.moments();
  const EffectiveParams eff = effective_params(params.mass, params.omega, mom);
  const OperatorPoly averaged = averaged_hamiltonian(params);
  if (!averaged.is_principal_only()) throw InternalConsistencyError("averaged Hamiltonian still has auxiliaries");
  if (!(adjoint(averaged) == averaged)) throw InternalConsistencyError("averaged Hamiltonian is not Hermitian");
  QuadraticForm form = extract_quadratic_form(averaged, params.particle_count);
  const QuadraticForm tmpl = effective_template(params);
  if (!(form == tmpl)) {
    for (std::size_t r = 0; r < form.dimension(); ++r) {
      for (std::size_t c = 0; c < form.dimension(); ++c) {
        if (form(r, c) != tmpl(r, c))
          throw InternalConsistencyError("averaged form differs from closed-form template at (" + std::to_string(r) +
                                         "," + std::to_string(c) + "): " + to_string(form(r, c)) + " vs " +
                                         to_string(tmpl(r, c)));
      }
    }
    throw InternalConsistencyError("averaged form offset differs from template: " + to_string(form.offset()));
  }
  return {std::move(form), eff, mom};
}

}  // namespace ncchain
