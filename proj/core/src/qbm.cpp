#include "surfqbm/qbm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "surfqbm/constants.hpp"
#include "surfqbm/diagnostics.hpp"
#include "surfqbm/error.hpp"

namespace surfqbm {

namespace {
using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using constants::hbar;
}  // namespace

double QbmParams::z_zpf() const { return std::sqrt(hbar / (2.0 * mass * omega)); }
double QbmParams::p_zpf() const { return hbar / (2.0 * z_zpf()); }

void QbmParams::validate() const {
  if (!(mass > 0.0)) throw DomainError("mass must be > 0");
  if (!(omega >= 0.0)) throw DomainError("trap frequency must be >= 0");
  if (!(gamma >= 0.0)) throw DomainError("Gamma must be >= 0");
  if (!(lambda >= 0.0)) throw DomainError("Lambda must be >= 0");
}

double GaussianState::energy(const QbmParams& p) const {
  const double pp = var_pp + mean_p * mean_p;
  const double zz = var_zz + mean_z * mean_z;
  return pp / (2.0 * p.mass) + 0.5 * p.mass * p.omega * p.omega * zz;
}

GaussianState GaussianState::ground(const QbmParams& p) {
  GaussianState s;
  s.var_zz = p.z_zpf() * p.z_zpf();
  s.var_pp = p.p_zpf() * p.p_zpf();
  return s;
}

namespace {

struct Deriv {
  double z, p, zz, zp, pp;
};

Deriv rhs(const GaussianState& s, const QbmParams& q) {
  const double m = q.mass;
  const double w2 = q.omega * q.omega;
  return {s.mean_p / m,
          -m * w2 * s.mean_z - 2.0 * q.gamma * s.mean_p,
          2.0 * s.var_zp / m,
          s.var_pp / m - m * w2 * s.var_zz - 2.0 * q.gamma * s.var_zp,
          -2.0 * m * w2 * s.var_zp - 4.0 * q.gamma * s.var_pp + 2.0 * hbar * hbar * q.lambda};
}

GaussianState axpy(const GaussianState& s, const Deriv& d, double h) {
  return {s.mean_z + h * d.z, s.mean_p + h * d.p, s.var_zz + h * d.zz, s.var_zp + h * d.zp,
          s.var_pp + h * d.pp};
}

}  // namespace

GaussianTrajectory evolve_gaussian(const GaussianState& state, const QbmParams& params, double dt,
                                   std::size_t steps, std::size_t record_every) {
  params.validate();
  if (!(dt > 0.0)) throw DomainError("dt must be > 0");
  if (dt * std::max(params.omega, params.gamma) >= 0.1) {
    throw DomainError("stability guard: dt * max(Omega, Gamma) must be < 0.1");
  }
  if (!(state.var_zz > 0.0) || !(state.var_pp > 0.0)) {
    throw DomainError("Gaussian state needs positive variances");
  }
  if (record_every == 0) record_every = 1;
  const double floor = 0.25 * hbar * hbar;
  GaussianTrajectory out;
  GaussianState s = state;
  out.times.push_back(0.0);
  out.states.push_back(s);
  for (std::size_t n = 1; n <= steps; ++n) {
    const Deriv k1 = rhs(s, params);
    const Deriv k2 = rhs(axpy(s, k1, 0.5 * dt), params);
    const Deriv k3 = rhs(axpy(s, k2, 0.5 * dt), params);
    const Deriv k4 = rhs(axpy(s, k3, dt), params);
    const Deriv d{(k1.z + 2 * k2.z + 2 * k3.z + k4.z) / 6.0, (k1.p + 2 * k2.p + 2 * k3.p + k4.p) / 6.0,
                  (k1.zz + 2 * k2.zz + 2 * k3.zz + k4.zz) / 6.0,
                  (k1.zp + 2 * k2.zp + 2 * k3.zp + k4.zp) / 6.0,
                  (k1.pp + 2 * k2.pp + 2 * k3.pp + k4.pp) / 6.0};
    s = axpy(s, d, dt);
    if (s.health() < floor * (1.0 - 1e-9)) ++out.health_violations;
    if (n % record_every == 0 || n == steps) {
      out.times.push_back(n * dt);
      out.states.push_back(s);
    }
  }
  if (out.health_violations > 0) {
    warn("evolve_gaussian: uncertainty bound violated on " + std::to_string(out.health_violations) +
         " steps");
  }
  return out;
}

FockState::FockState(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 2) {
    throw DomainError("density matrix must be square with dim >= 2");
  }
}

FockState FockState::ground(int dim) {
  Mat rho = Mat::Zero(dim, dim);
  rho(0, 0) = 1.0;
  return FockState(rho);
}

FockState FockState::thermal(int dim, double nbar) {
  Mat rho = Mat::Zero(dim, dim);
  const double r = nbar / (1.0 + nbar);
  double p = 1.0 / (1.0 + nbar);
  double total = 0.0;
  for (int n = 0; n < dim; ++n) {
    rho(n, n) = p;
    total += p;
    p *= r;
  }
  rho /= total;
  return FockState(rho);
}

namespace {
Eigen::VectorXcd coherent_vector(int dim, cd alpha) {
  Eigen::VectorXcd v(dim);
  v(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < dim; ++n) v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return v;
}
}  // namespace

cd FockState::coherent_element(cd a, cd b) const {
  const Eigen::VectorXcd va = coherent_vector(dim(), a);
  const Eigen::VectorXcd vb = coherent_vector(dim(), b);
  return va.dot(rho_ * vb);
}

FockState FockState::coherent(int dim, cd alpha) {
  Eigen::VectorXcd v = coherent_vector(dim, alpha);
  v /= v.norm();
  return FockState(v * v.adjoint());
}

FockState FockState::cat(int dim, cd alpha, int sign) {
  Eigen::VectorXcd v = coherent_vector(dim, alpha) + static_cast<double>(sign) * coherent_vector(dim, -alpha);
  if (v.norm() == 0.0) throw DomainError("cat state has zero norm");
  v /= v.norm();
  return FockState(v * v.adjoint());
}

double FockState::hermiticity_error() const { return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff(); }

double FockState::min_eigenvalue() const {
  Mat h = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double FockState::top_population() const {
  const int d = dim();
  const int start = d - std::max(1, d / 10);
  double p = 0.0;
  for (int n = start; n < d; ++n) p += std::abs(rho_(n, n).real());
  return p;
}

double FockState::parity() const {
  double s = 0.0;
  for (int n = 0; n < dim(); ++n) s += (n % 2 == 0 ? 1.0 : -1.0) * rho_(n, n).real();
  return s;
}

GaussianState FockState::moments(const QbmParams& p) const {
  // X = a + a^dagger, P = i (a^dagger - a); z = z_zpf X, p = p_zpf P.
  const int d = dim();
  cd ex = 0.0, ep = 0.0, exx = 0.0, epp = 0.0, esym = 0.0;
  for (int n = 0; n + 1 < d; ++n) {
    const double s = std::sqrt(n + 1.0);
    // <a> = sum_n sqrt(n+1) rho(n+1, n)
    const cd a = s * rho_(n + 1, n);
    ex += a + std::conj(a);
    ep += cd(0.0, 1.0) * (std::conj(a) - a);
  }
  // <a^2>, <a^dagger a>
  cd a2 = 0.0;
  double na = 0.0;
  for (int n = 0; n < d; ++n) {
    na += n * rho_(n, n).real();
    if (n + 2 < d) a2 += std::sqrt((n + 1.0) * (n + 2.0)) * rho_(n + 2, n);
  }
  // X^2 = a^2 + a^dag^2 + 2 a^dag a + 1; P^2 = -(a^2 + a^dag^2) + 2 a^dag a + 1
  // {X, P}/2 = i (a^dag^2 - a^2)
  exx = a2 + std::conj(a2) + 2.0 * na + 1.0;
  epp = -(a2 + std::conj(a2)) + 2.0 * na + 1.0;
  esym = cd(0.0, 1.0) * (std::conj(a2) - a2);
  const double zs = p.z_zpf();
  const double ps = p.p_zpf();
  GaussianState g;
  g.mean_z = zs * ex.real();
  g.mean_p = ps * ep.real();
  g.var_zz = zs * zs * (exx.real() - ex.real() * ex.real());
  g.var_pp = ps * ps * (epp.real() - ep.real() * ep.real());
  g.var_zp = zs * ps * (esym.real() - ex.real() * ep.real());
  return g;
}

namespace {

// Tridiagonal actions of X and P in the truncated basis.
// (X rho)_{mn} = sqrt(m) rho_{m-1,n} + sqrt(m+1) rho_{m+1,n}
// (P rho)_{mn} = i [sqrt(m) rho_{m-1,n} - sqrt(m+1) rho_{m+1,n}]
struct Ops {
  int d;
  std::vector<double> sq;  // sq[m] = sqrt(m)

  explicit Ops(int dim) : d(dim), sq(dim + 1) {
    for (int m = 0; m <= dim; ++m) sq[m] = std::sqrt(static_cast<double>(m));
  }

  void left_x(const Mat& r, Mat& out) const {
    for (int n = 0; n < d; ++n) {
      for (int m = 0; m < d; ++m) {
        cd v = 0.0;
        if (m > 0) v += sq[m] * r(m - 1, n);
        if (m + 1 < d) v += sq[m + 1] * r(m + 1, n);
        out(m, n) = v;
      }
    }
  }
  void left_p(const Mat& r, Mat& out) const {
    const cd i(0.0, 1.0);
    for (int n = 0; n < d; ++n) {
      for (int m = 0; m < d; ++m) {
        cd v = 0.0;
        if (m > 0) v += sq[m] * r(m - 1, n);
        if (m + 1 < d) v -= sq[m + 1] * r(m + 1, n);
        out(m, n) = i * v;
      }
    }
  }
  // (r X)_{mn} = sqrt(n) r_{m,n-1} + sqrt(n+1) r_{m,n+1}
  void right_x(const Mat& r, Mat& out) const {
    for (int n = 0; n < d; ++n) {
      for (int m = 0; m < d; ++m) {
        cd v = 0.0;
        if (n > 0) v += sq[n] * r(m, n - 1);
        if (n + 1 < d) v += sq[n + 1] * r(m, n + 1);
        out(m, n) = v;
      }
    }
  }
  // (r P)_{mn} = i [ -sqrt(n) r_{m,n-1} + sqrt(n+1) r_{m,n+1} ]
  void right_p(const Mat& r, Mat& out) const {
    const cd i(0.0, 1.0);
    for (int n = 0; n < d; ++n) {
      for (int m = 0; m < d; ++m) {
        cd v = 0.0;
        if (n > 0) v -= sq[n] * r(m, n - 1);
        if (n + 1 < d) v += sq[n + 1] * r(m, n + 1);
        out(m, n) = i * v;
      }
    }
  }
};

class Generator {
 public:
  Generator(int dim, const QbmParams& p)
      : ops_(dim), omega_(p.omega), g_(p.gamma), l_(p.lambda * p.z_zpf() * p.z_zpf()),
        a_(dim, dim), b_(dim, dim), c_(dim, dim), e_(dim, dim) {}

  // -i Omega (m - n) rho - (i Gamma / 2)[X, {P, rho}] - Lambda z_zpf^2 [X, [X, rho]]
  void apply(const Mat& r, Mat& out) {
    const int d = ops_.d;
    for (int n = 0; n < d; ++n) {
      for (int m = 0; m < d; ++m) out(m, n) = cd(0.0, -omega_ * (m - n)) * r(m, n);
    }
    if (g_ != 0.0) {
      ops_.left_p(r, a_);
      ops_.right_p(r, b_);
      a_ += b_;  // {P, rho}
      ops_.left_x(a_, c_);
      ops_.right_x(a_, e_);
      out += cd(0.0, -0.5 * g_) * (c_ - e_);
    }
    if (l_ != 0.0) {
      ops_.left_x(r, a_);
      ops_.right_x(r, b_);
      a_ -= b_;  // [X, rho]
      ops_.left_x(a_, c_);
      ops_.right_x(a_, e_);
      out -= l_ * (c_ - e_);
    }
  }

 private:
  Ops ops_;
  double omega_;
  double g_;
  double l_;
  Mat a_, b_, c_, e_;
};

}  // namespace

FockTrajectory evolve_fock(const FockState& state, const QbmParams& params, double dt,
                           std::size_t steps, const FockOptions& options) {
  params.validate();
  if (!(dt > 0.0)) throw DomainError("dt must be > 0");
  if (dt * std::max(params.omega, params.gamma) >= 0.1) {
    throw DomainError("stability guard: dt * max(Omega, Gamma) must be < 0.1");
  }
  if (!(params.omega > 0.0)) throw DomainError("Fock evolution needs Omega > 0 (basis scale)");
  const int d = state.dim();
  // Crude bound on the spectral radius of the truncated generator; RK4 is
  // stable on the imaginary axis up to ~2.8.
  const double zz = params.z_zpf() * params.z_zpf();
  const double radius =
      params.omega * (d - 1) + 2.0 * params.gamma * d + 8.0 * params.lambda * zz * d;
  if (dt * radius >= 2.5) {
    throw DomainError("stability guard: dt too large for the Fock basis (dt * radius = " +
                      std::to_string(dt * radius) + ")");
  }
  if (state.top_population() > options.truncation_limit) {
    throw TruncationError("initial state populates the top 10% of the Fock basis");
  }
  Generator gen(d, params);
  Mat rho = state.matrix();
  Mat k1(d, d), k2(d, d), k3(d, d), k4(d, d), tmp(d, d);
  const std::size_t rec = options.record_every ? options.record_every : 1;
  const std::size_t mon = options.monitor_every ? options.monitor_every : 1;

  FockTrajectory out{{}, {}, {}, 0.0, 0.0, 0.0, state};
  auto record = [&](double t, const FockState& s) {
    out.times.push_back(t);
    out.moments.push_back(s.moments(params));
    out.parity.push_back(s.parity());
  };
  auto monitor = [&](const FockState& s, std::size_t n) {
    out.max_trace_drift = std::max(out.max_trace_drift, std::abs(s.trace() - 1.0));
    out.max_hermiticity_error = std::max(out.max_hermiticity_error, s.hermiticity_error());
    if (n % mon == 0 || n == steps) {
      out.min_eigenvalue = std::min(out.min_eigenvalue, s.min_eigenvalue());
      if (s.top_population() > options.truncation_limit) {
        throw TruncationError("Fock truncation guard tripped at step " + std::to_string(n) +
                              ": top-level population " + std::to_string(s.top_population()));
      }
    }
  };
  record(0.0, state);
  for (std::size_t n = 1; n <= steps; ++n) {
    gen.apply(rho, k1);
    tmp = rho + 0.5 * dt * k1;
    gen.apply(tmp, k2);
    tmp = rho + 0.5 * dt * k2;
    gen.apply(tmp, k3);
    tmp = rho + dt * k3;
    gen.apply(tmp, k4);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    FockState s(rho);
    monitor(s, n);
    if (n % rec == 0 || n == steps) record(n * dt, s);
  }
  out.final_state = FockState(rho);
  if (out.min_eigenvalue < -1e-10) {
    warn("evolve_fock: density matrix eigenvalue " + std::to_string(out.min_eigenvalue) +
         " (positivity is not guaranteed by this master equation)");
  }
  return out;
}

double max_moment_deviation(const GaussianState& a, const GaussianState& b, const QbmParams& p) {
  const double zs = p.z_zpf();
  const double ps = p.p_zpf();
  auto rel = [](double x, double y, double scale) {
    return std::abs(x - y) / std::max({std::abs(x), std::abs(y), scale});
  };
  return std::max({rel(a.mean_z, b.mean_z, zs), rel(a.mean_p, b.mean_p, ps),
                   rel(a.var_zz, b.var_zz, zs * zs), rel(a.var_zp, b.var_zp, zs * ps),
                   rel(a.var_pp, b.var_pp, ps * ps)});
}

double coherence_decay_rate(double delta_z, double lambda) {
  if (delta_z < 0.0) throw DomainError("delta_z must be >= 0");
  if (lambda < 0.0) throw DomainError("Lambda must be >= 0");
  return lambda * delta_z * delta_z;
}

}  // namespace surfqbm
