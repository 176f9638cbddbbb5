#include "ncchain/symplectic_oracle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ncchain/errors.hpp"
#include "ncchain/spectrum.hpp"

namespace ncchain {

namespace {

Eigen::MatrixXd canonical_symplectic(Eigen::Index d) {
  const Eigen::Index h = d / 2;
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(d, d);
  j.topRightCorner(h, h).setIdentity();
  j.bottomLeftCorner(h, h) = -Eigen::MatrixXd::Identity(h, h);
  return j;
}

// Sorted magnitudes hold every ω twice; average each adjacent pair.
std::vector<double> fold_pairs(std::vector<double> magnitudes, double zero_cut, double& pair_gap) {
  std::sort(magnitudes.begin(), magnitudes.end());
  std::vector<double> out;
  pair_gap = 0.0;
  for (std::size_t i = 0; i + 1 < magnitudes.size(); i += 2) {
    pair_gap = std::max(pair_gap, std::abs(magnitudes[i + 1] - magnitudes[i]));
    const double w = 0.5 * (magnitudes[i] + magnitudes[i + 1]);
    out.push_back(w <= zero_cut ? 0.0 : w);
  }
  return out;
}

// Real Schur QR can stall on the clustered ±iω pairs of a long chain; retry with
// a larger iteration budget, then with the complex Schur form.
Eigen::VectorXcd general_eigenvalues(const Eigen::MatrixXd& s) {
  Eigen::EigenSolver<Eigen::MatrixXd> real_eig;
  real_eig.setMaxIterations(40 * s.rows());
  real_eig.compute(s, /*computeEigenvectors=*/false);
  if (real_eig.info() == Eigen::Success) return real_eig.eigenvalues();
  real_eig.setMaxIterations(400 * s.rows());
  real_eig.compute(s, false);
  if (real_eig.info() == Eigen::Success) return real_eig.eigenvalues();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> complex_eig(s.cast<std::complex<double>>(), false);
  if (complex_eig.info() == Eigen::Success) return complex_eig.eigenvalues();
  throw InternalConsistencyError("symplectic_spectrum: eigensolver did not converge");
}

}  // namespace

SymplecticSpectrum symplectic_spectrum(const Eigen::MatrixXd& hessian, double tol, OracleBackend backend) {
  const Eigen::Index d = hessian.rows();
  if (d == 0 || d != hessian.cols() || d % 2 != 0)
    throw std::invalid_argument("symplectic_spectrum: Hessian must be square with even dimension");
  if (!(tol > 0.0)) throw std::invalid_argument("symplectic_spectrum: tolerance must be positive");

  const double entry_scale = std::max(hessian.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  const double asym = (hessian - hessian.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol * entry_scale) {
    std::ostringstream os;
    os << "symplectic_spectrum: Hessian not symmetric (max |M - M^T| = " << asym << ")";
    throw std::invalid_argument(os.str());
  }
  const Eigen::MatrixXd sym = 0.5 * (hessian + hessian.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> hess_eig(sym);
  const Eigen::VectorXd& lambda = hess_eig.eigenvalues();
  const double norm = std::max(std::abs(lambda.minCoeff()), std::abs(lambda.maxCoeff()));
  if (lambda.minCoeff() < -tol * norm) {
    std::ostringstream os;
    os << "symplectic_spectrum: Hessian indefinite (min eigenvalue " << lambda.minCoeff() << ", norm " << norm << ")";
    throw std::invalid_argument(os.str());
  }
  // Rounding leaves exact zeros of M at ~eps·‖M‖; their square roots would
  // surface as spurious frequencies of order √eps, so clip them first.
  const double noise = 16.0 * static_cast<double>(d) * std::numeric_limits<double>::epsilon() * norm;
  const Eigen::VectorXd root = lambda.unaryExpr([noise](double v) { return v <= noise ? 0.0 : std::sqrt(v); });
  const Eigen::MatrixXd sqrt_m = hess_eig.eigenvectors() * root.asDiagonal() * hess_eig.eigenvectors().transpose();
  const Eigen::MatrixXd s = sqrt_m * canonical_symplectic(d) * sqrt_m;

  const double zero_cut = tol * norm;
  const double scale = norm > 0.0 ? norm : 1.0;
  SymplecticSpectrum out;
  std::vector<double> magnitudes;
  magnitudes.reserve(static_cast<std::size_t>(d));
  double defect = 0.0;

  if (backend == OracleBackend::kGeneral) {
    const Eigen::VectorXcd eigenvalues = general_eigenvalues(s);
    std::vector<double> upper;
    std::vector<double> lower;
    for (Eigen::Index i = 0; i < d; ++i) {
      const std::complex<double> mu = eigenvalues(i);
      magnitudes.push_back(std::abs(mu));
      defect = std::max(defect, std::abs(mu.real()) / scale);
      if (std::abs(mu) <= zero_cut) continue;
      (mu.imag() > 0.0 ? upper : lower).push_back(std::abs(mu.imag()));
    }
    if (upper.size() != lower.size()) {
      defect = std::max(defect, 1.0);
    } else {
      std::sort(upper.begin(), upper.end());
      std::sort(lower.begin(), lower.end());
      for (std::size_t i = 0; i < upper.size(); ++i) defect = std::max(defect, std::abs(upper[i] - lower[i]) / scale);
    }
  } else {
    const Eigen::MatrixXcd hermitian = std::complex<double>(0.0, 1.0) * s.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(hermitian, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw InternalConsistencyError("symplectic_spectrum: eigensolver failed");
    const Eigen::VectorXd& mu = eig.eigenvalues();
    for (Eigen::Index i = 0; i < d; ++i) magnitudes.push_back(std::abs(mu(i)));
    // ascending ±ω list must be symmetric about zero
    for (Eigen::Index i = 0; i < d; ++i) defect = std::max(defect, std::abs(mu(i) + mu(d - 1 - i)) / scale);
  }

  double pair_gap = 0.0;
  out.frequencies = fold_pairs(std::move(magnitudes), zero_cut, pair_gap);
  out.pairing_defect = std::max(defect, pair_gap / scale);
  out.zero_mode_count =
      static_cast<int>(std::count(out.frequencies.begin(), out.frequencies.end(), 0.0));
  return out;
}

std::vector<double> symplectic_frequencies(const QuadraticForm& form, double tol, OracleBackend backend) {
  if (!form.is_symmetric()) throw std::invalid_argument("symplectic_frequencies: form matrix is not symmetric");
  SymplecticSpectrum sp = symplectic_spectrum(form.matrix(), tol, backend);
  if (sp.pairing_defect > tol) {
    std::ostringstream os;
    os << "symplectic_frequencies: eigenvalues do not pair as ±iω (defect " << sp.pairing_defect << ")";
    throw InternalConsistencyError(os.str());
  }
  return std::move(sp.frequencies);
}

std::vector<double> circulant_frequencies(const QuadraticForm& form) {
  const int count = form.particle_count();
  const Eigen::MatrixXd m = form.matrix();
  const auto h = static_cast<Eigen::Index>(form.dimension() / 2);
  if (m.topRightCorner(h, h).cwiseAbs().maxCoeff() != 0.0)
    throw std::invalid_argument("circulant_frequencies: form couples positions and momenta");

  std::vector<double> out;
  for (int axis = 1; axis <= 3; ++axis) {
    for (int n = 1; n <= count; ++n) {
      for (int other = 1; other <= 3; ++other) {
        if (other == axis) continue;
        for (int j = 1; j <= count; ++j) {
          const auto r = static_cast<Eigen::Index>(form.position_index(n, axis));
          if (m(r, static_cast<Eigen::Index>(form.position_index(j, other))) != 0.0 ||
              m(h + r, h + static_cast<Eigen::Index>(form.position_index(j, other))) != 0.0)
            throw std::invalid_argument("circulant_frequencies: form couples different axes");
        }
      }
    }
    for (int a = 1; a <= count; ++a) {
      // symbol of the circulant block: Σ_r c(r) e^{2πi a r / N}; real for symmetric circulants
      double ax = 0.0;
      double ap = 0.0;
      const auto row = static_cast<Eigen::Index>(form.position_index(1, axis));
      for (int j = 1; j <= count; ++j) {
        const auto col = static_cast<Eigen::Index>(form.position_index(j, axis));
        const double phase = std::cos(2.0 * std::numbers::pi * a * (j - 1) / count);
        ax += m(row, col) * phase;
        ap += m(h + row, h + col) * phase;
      }
      const double alpha = 0.5 * ap;  // H_a = α p̃² + β x̃²
      const double beta = 0.5 * ax;
      out.push_back(2.0 * std::sqrt(std::max(alpha * beta, 0.0)));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

OracleReport cross_validate(const ModelParams& params, double tol) {
  OracleReport report;
  const EffectiveHamiltonian eh = effective_hamiltonian(params);
  const SymplecticSpectrum sp = symplectic_spectrum(eh.form.matrix(), tol);
  report.oracle_frequencies = sp.frequencies;
  report.pairing_defect = sp.pairing_defect;
  report.zero_mode_count = sp.zero_mode_count;

  for (double w : mode_frequencies_exact(params).frequencies)
    report.analytic_frequencies.insert(report.analytic_frequencies.end(), 3, w);
  std::sort(report.analytic_frequencies.begin(), report.analytic_frequencies.end());

  if (report.oracle_frequencies.size() != report.analytic_frequencies.size()) {
    report.max_relative_error = 1.0;
    return report;
  }
  for (std::size_t i = 0; i < report.oracle_frequencies.size(); ++i) {
    const double o = report.oracle_frequencies[i];
    const double a = report.analytic_frequencies[i];
    const double denom = std::max(std::abs(a), std::abs(o));
    if (denom > 0.0) report.max_relative_error = std::max(report.max_relative_error, std::abs(o - a) / denom);
  }

  // Oracle clusters of numerically equal frequencies must have sizes divisible by 3.
  report.multiplicities_match = true;
  std::size_t start = 0;
  const auto& f = report.oracle_frequencies;
  for (std::size_t i = 1; i <= f.size(); ++i) {
    const bool boundary = i == f.size() || std::abs(f[i] - f[i - 1]) > tol * std::max(1.0, std::abs(f[i]));
    if (boundary) {
      if ((i - start) % 3 != 0) report.multiplicities_match = false;
      start = i;
    }
  }
  report.passed = report.max_relative_error < tol && report.multiplicities_match && report.pairing_defect < tol;
  return report;
}

ModelParams sample_model(std::mt19937_64& rng, int max_particles) {
  if (max_particles < 1) throw std::invalid_argument("sample_model: max_particles must be >= 1");
  constexpr long kGrid = 1000000;
  // modulo bias is below 2⁻⁴⁰ for these ranges
  auto grid_point = [&rng](const Rational& lo, const Rational& hi) {
    const auto step = static_cast<long>(rng() % static_cast<std::uint64_t>(kGrid + 1));
    return Rational(lo + (hi - lo) * ratio(step, kGrid));
  };
  ModelParams p;
  p.particle_count = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_particles));
  p.mass = grid_point(ratio(1, 2), Rational(2));
  p.omega = grid_point(Rational(0), Rational(2));
  p.coupling = grid_point(Rational(0), Rational(2));
  Rational theta_sq = grid_point(Rational(0), ratio(1, 10));
  Rational eta_sq = grid_point(Rational(0), ratio(1, 10));
  p.moments_override = Moments{std::move(theta_sq), std::move(eta_sq)};
  return p;
}

}  // namespace ncchain
