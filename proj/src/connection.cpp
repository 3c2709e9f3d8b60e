#include "rp2bundle/connection.hpp"

#include <cmath>
#include <stdexcept>

#include "rp2bundle/errors.hpp"
#include "rp2bundle/scalar_modules.hpp"

namespace rp2bundle {

ProjectorField grassmann_field() {
  return [](const SpherePoint& x) { return Eigen::MatrixXcd(grassmann_projector(x)); };
}

ProjectorField tautological_field() {
  return [](const SpherePoint& x) { return Eigen::MatrixXcd(real_projector(x)); };
}

ProjectorField bloch_field() {
  return [](const SpherePoint& x) {
    const Complex i(0.0, 1.0);
    Eigen::MatrixXcd b(2, 2);
    b(0, 0) = 0.5 * (1.0 + x.x3());
    b(0, 1) = 0.5 * (x.x1() - i * x.x2());
    b(1, 0) = 0.5 * (x.x1() + i * x.x2());
    b(1, 1) = 0.5 * (1.0 - x.x3());
    return b;
  };
}

ProjectorField trivial_field() {
  return [](const SpherePoint&) { return Eigen::MatrixXcd::Identity(1, 1); };
}

Eigen::VectorXcd fiber_basis_vector(const ProjectorField& field, const SpherePoint& x) {
  const Eigen::MatrixXcd p = field(x);
  Eigen::Index best = 0;
  double best_norm = 0.0;
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    const double n = p.col(j).norm();
    if (n > best_norm) {
      best_norm = n;
      best = j;
    }
  }
  if (best_norm < 1e-12)
    throw std::invalid_argument("fiber_basis_vector: projector is numerically zero");
  return p.col(best) / best_norm;
}

TransportResult parallel_transport(const DiscretePath& path, const Eigen::VectorXcd& v0,
                                   const ProjectorField& field, double fiber_tol) {
  const double n0 = v0.norm();
  if (n0 < 1e-14) throw std::invalid_argument("parallel_transport: zero start vector");
  Eigen::VectorXcd v = v0 / n0;
  const Eigen::MatrixXcd p0 = field(path.points.front());
  if ((p0 * v - v).norm() > fiber_tol)
    throw FiberError("parallel_transport: start vector is not in the start fiber");
  double drift = 0.0;
  for (std::size_t k = 1; k < path.points.size(); ++k) {
    Eigen::VectorXcd w = field(path.points[k]) * v;
    const double n = w.norm();
    if (n <= 0.5)
      throw StepError("parallel_transport: projection shrank the vector below half its norm; "
                      "refine the path");
    v = w / n;
    drift = std::max(drift, std::abs(v.norm() - 1.0));
  }
  TransportResult result;
  result.final_vector = v;
  const Complex overlap = (v0 / n0).dot(v);
  result.phase = std::abs(overlap) > 1e-12 ? overlap / std::abs(overlap) : Complex(0.0, 0.0);
  result.norm_drift = drift;
  result.n_steps = static_cast<int>(path.points.size()) - 1;
  return result;
}

Complex holonomy(const DiscretePath& loop, const ProjectorField& field) {
  if (!loop.closed_in_projective)
    throw std::invalid_argument("holonomy: path is not closed (not even projectively)");
  const Eigen::VectorXcd v0 = fiber_basis_vector(field, loop.points.front());
  return parallel_transport(loop, v0, field).phase;
}

CurvatureProbe curvature_probe(const SpherePoint& center, double angular_radius,
                               const ProjectorField& field, int n_steps) {
  if (angular_radius < 1e-3 || angular_radius > 0.5)
    throw std::invalid_argument("curvature_probe: angular radius must lie in [1e-3, 0.5]");
  const DiscretePath loop = small_circle(center.vec(), angular_radius, n_steps);
  const Complex phase = holonomy(loop, field);
  const double area = 2.0 * M_PI * (1.0 - std::cos(angular_radius));
  CurvatureProbe probe{center, angular_radius, std::arg(phase) / area, phase, n_steps};
  return probe;
}

double frame_connection_check(const SpherePoint& x, const Vec3& direction, double h) {
  if (h < 1e-6 || h > 1e-2)
    throw std::invalid_argument("frame_connection_check: h must lie in [1e-6, 1e-2]");
  const double dn = direction.norm();
  if (dn < 1e-14) throw std::invalid_argument("frame_connection_check: zero direction");
  const Vec3 u = direction / dn;
  if (std::abs(u.dot(x.vec())) > 1e-10)
    throw std::invalid_argument("frame_connection_check: direction must be tangent at x");
  const SpherePoint xp = SpherePoint::normalized(std::cos(h) * x.vec() + std::sin(h) * u);
  const SpherePoint xm = SpherePoint::normalized(std::cos(h) * x.vec() - std::sin(h) * u);
  const Mat3c q = real_projector(x);
  double worst = 0.0;
  for (int i = 1; i <= 3; ++i) {
    const Vec3c diff = (frame_section(i, xp) - frame_section(i, xm)) / (2.0 * h);
    Vec3c analytic = Vec3c::Zero();
    for (int j = 1; j <= 3; ++j) {
      const double da = u(i - 1) * x.vec()(j - 1) + x.vec()(i - 1) * u(j - 1);
      analytic += da * frame_section(j, x);
    }
    worst = std::max(worst, (q * diff - analytic).norm());
  }
  return worst;
}

namespace {

double orbit_residual(const Vec3& axis, double total_angle, const SpherePoint& x0, int n_steps,
                      bool freeze_frame) {
  if (n_steps < 2) throw std::invalid_argument("orbit transport: need n_steps >= 2");
  const DiscretePath path = orbit_path(axis, total_angle, x0, n_steps);
  const double dt = 1.0 / n_steps;
  std::vector<Vec3c> s(path.points.size());
  for (std::size_t k = 0; k < path.points.size(); ++k) {
    const SpherePoint& xk = path.points[k];
    Vec3c acc = Vec3c::Zero();
    for (int i = 1; i <= 3; ++i) {
      const SpherePoint& frame_at = freeze_frame ? x0 : xk;
      acc += xk.vec()(i - 1) * frame_section(i, frame_at);
    }
    s[k] = acc;
  }
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < path.points.size(); ++k) {
    const Vec3c deriv = (s[k + 1] - s[k - 1]) / (2.0 * dt);
    worst = std::max(worst, (real_projector(path.points[k]) * deriv).norm());
  }
  return worst;
}

}  // namespace

double orbit_transport_check(const Vec3& axis, double total_angle, const SpherePoint& x0,
                             int n_steps) {
  return orbit_residual(axis, total_angle, x0, n_steps, false);
}

double orbit_transport_fixed_frame_control(const Vec3& axis, double total_angle,
                                           const SpherePoint& x0, int n_steps) {
  return orbit_residual(axis, total_angle, x0, n_steps, true);
}

namespace {

Vec3 coordinate_axis(int axis) {
  switch (axis) {
    case 1: return Vec3::UnitX();
    case 2: return Vec3::UnitY();
    case 3: return Vec3::UnitZ();
    default: throw std::invalid_argument("axis must be 1, 2 or 3");
  }
}

// One-sided difference quotient of the transported-back action at angle t.
Eigen::MatrixXcd difference_quotient(const ProjectorField& field, const ActionField& action,
                                     const std::vector<Eigen::VectorXcd>& basis, int axis,
                                     const SpherePoint& x, double t, int steps_per_arc) {
  const Vec3 n = coordinate_axis(axis);
  std::vector<SpherePoint> arc;
  arc.reserve(steps_per_arc + 1);
  for (int j = 0; j <= steps_per_arc; ++j) {
    const double s = t * static_cast<double>(j) / steps_per_arc;
    arc.push_back(rotate(SU2Element::axis_angle(n, s), x));
  }
  std::vector<SpherePoint> back(arc.rbegin(), arc.rend());
  const DiscretePath back_path(std::move(back), false, 0.5);
  const Eigen::MatrixXcd a = action(SU2Element::axis_angle(n, t));
  const std::size_t dim = basis.size();
  Eigen::MatrixXcd m(dim, dim);
  const Complex i_over_t = Complex(0.0, 1.0) / t;
  for (std::size_t k = 0; k < dim; ++k) {
    const Eigen::VectorXcd moved = a * basis[k];
    const TransportResult tr = parallel_transport(back_path, moved, field);
    const Eigen::VectorXcd y = tr.final_vector * moved.norm();
    for (std::size_t j = 0; j < dim; ++j) m(j, k) = i_over_t * basis[j].dot(y - basis[k]);
  }
  return m;
}

}  // namespace

Eigen::MatrixXcd local_spin_operator(const ProjectorField& field, const ActionField& action,
                                     const std::vector<Eigen::VectorXcd>& fiber_basis, int axis,
                                     const SpherePoint& x, const std::vector<double>& t_sequence,
                                     int steps_per_arc) {
  if (fiber_basis.empty()) throw std::invalid_argument("local_spin_operator: empty fiber basis");
  if (t_sequence.empty()) throw std::invalid_argument("local_spin_operator: empty t sequence");
  for (double t : t_sequence)
    if (!(t > 0.0) || t > 0.5)
      throw std::invalid_argument("local_spin_operator: t values must lie in (0, 0.5]");
  for (std::size_t a = 0; a < fiber_basis.size(); ++a)
    for (std::size_t b = 0; b < fiber_basis.size(); ++b) {
      const Complex g = fiber_basis[a].dot(fiber_basis[b]);
      if (std::abs(g - (a == b ? Complex(1.0) : Complex(0.0))) > 1e-8)
        throw std::invalid_argument("local_spin_operator: fiber basis is not orthonormal");
    }

  std::vector<double> ts = t_sequence;
  std::sort(ts.begin(), ts.end());
  if (ts.size() == 1)
    return difference_quotient(field, action, fiber_basis, axis, x, ts[0], steps_per_arc);
  // Two-point Richardson on the two smallest steps removes the O(t) term of
  // the one-sided quotient, leaving O(t^2).
  const double t_small = ts[0];
  const double t_big = ts[1];
  const Eigen::MatrixXcd m_small =
      difference_quotient(field, action, fiber_basis, axis, x, t_small, steps_per_arc);
  const Eigen::MatrixXcd m_big =
      difference_quotient(field, action, fiber_basis, axis, x, t_big, steps_per_arc);
  return (t_big * m_small - t_small * m_big) / (t_big - t_small);
}

}  // namespace rp2bundle
