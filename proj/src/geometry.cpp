#include "rp2bundle/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "rp2bundle/errors.hpp"

namespace rp2bundle {

namespace {

void check_unit(double norm, const char* what) {
  if (std::abs(norm - 1.0) > kUnitTol)
    throw std::invalid_argument(std::string(what) + ": not normalized within 1e-12");
}

}  // namespace

SpherePoint::SpherePoint(const Vec3& v) : v_(v) { check_unit(v_.norm(), "SpherePoint"); }

SpherePoint::SpherePoint(double x1, double x2, double x3) : SpherePoint(Vec3(x1, x2, x3)) {}

SpherePoint SpherePoint::normalized(const Vec3& v) {
  const double n = v.norm();
  if (n < 1e-14) throw std::invalid_argument("SpherePoint: cannot normalize zero vector");
  return SpherePoint(Vec3(v / n));
}

SpherePoint antipode(const SpherePoint& x) { return x.antipode(); }

SpherePoint canonical_representative(const SpherePoint& x) {
  const Vec3& v = x.vec();
  // Sign fixed by the last coordinate that is away from zero, checked x3
  // first, then x2, then x1.  A unit vector always has one above tolerance.
  double pivot = 0.0;
  if (std::abs(v.z()) > kUnitTol)
    pivot = v.z();
  else if (std::abs(v.y()) > kUnitTol)
    pivot = v.y();
  else
    pivot = v.x();
  return pivot > 0.0 ? x : x.antipode();
}

bool is_canonical_representative(const SpherePoint& x) {
  return (canonical_representative(x).vec() - x.vec()).norm() < 1e-9;
}

SU2Element::SU2Element(double q0, double q1, double q2, double q3)
    : q0_(q0), q1_(q1), q2_(q2), q3_(q3) {
  check_unit(std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3), "SU2Element");
}

SU2Element SU2Element::axis_angle(const Vec3& axis, double angle) {
  const double n = axis.norm();
  if (n < 1e-14) throw std::invalid_argument("SU2Element: zero rotation axis");
  const Vec3 u = axis / n;
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  return SU2Element(c, s * u.x(), s * u.y(), s * u.z());
}

SU2Element SU2Element::operator*(const SU2Element& r) const {
  return SU2Element(q0_ * r.q0_ - q1_ * r.q1_ - q2_ * r.q2_ - q3_ * r.q3_,
                    q0_ * r.q1_ + q1_ * r.q0_ + q2_ * r.q3_ - q3_ * r.q2_,
                    q0_ * r.q2_ - q1_ * r.q3_ + q2_ * r.q0_ + q3_ * r.q1_,
                    q0_ * r.q3_ + q1_ * r.q2_ - q2_ * r.q1_ + q3_ * r.q0_);
}

Mat3 SU2Element::rotation_matrix() const {
  const double w = q0_, x = q1_, y = q2_, z = q3_;
  Mat3 m;
  m << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
      2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
      2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return m;
}

SpherePoint rotate(const SU2Element& g, const SpherePoint& x) {
  return SpherePoint(Vec3(g.rotation_matrix() * x.vec()));
}

Mat3c spherical_basis_matrix() {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  Mat3c t;
  t << Complex(-r), -i * r, Complex(0.0),
      Complex(0.0), Complex(0.0), Complex(-1.0),
      Complex(r), -i * r, Complex(0.0);
  return t;
}

Mat3c wigner_d1(const SU2Element& g) {
  static const Mat3c t = spherical_basis_matrix();
  static const Mat3c t_dag = spherical_basis_matrix().adjoint();
  return t * g.rotation_matrix().cast<Complex>() * t_dag;
}

SphericalAngles to_spherical(const SpherePoint& x) {
  const double s = std::hypot(x.x1(), x.x2());
  SphericalAngles a;
  a.theta = std::atan2(s, x.x3());
  if (s < kUnitTol) {
    a.phi = 0.0;  // azimuth is a gauge choice at the poles
  } else {
    a.phi = std::atan2(x.x2(), x.x1());
    if (a.phi < 0.0) a.phi += 2.0 * M_PI;
  }
  return a;
}

double Rng::uniform() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  spare_ = mag * std::sin(2.0 * M_PI * u2);
  has_spare_ = true;
  return mag * std::cos(2.0 * M_PI * u2);
}

Vec3 Rng::gaussian_vec3() {
  const double a = gaussian();
  const double b = gaussian();
  const double c = gaussian();
  return Vec3(a, b, c);
}

SpherePoint Rng::sphere_point() {
  for (;;) {
    const Vec3 v = gaussian_vec3();
    if (v.norm() > 1e-6) return SpherePoint::normalized(v);
  }
}

SU2Element haar_sample(Rng& rng) {
  for (;;) {
    const double a = rng.gaussian();
    const double b = rng.gaussian();
    const double c = rng.gaussian();
    const double d = rng.gaussian();
    const double n = std::sqrt(a * a + b * b + c * c + d * d);
    if (n > 1e-6) return SU2Element(a / n, b / n, c / n, d / n);
  }
}

DiscretePath::DiscretePath(std::vector<SpherePoint> pts, bool closed, double max_step)
    : points(std::move(pts)), closed_in_projective(closed) {
  if (points.size() < 2) throw std::invalid_argument("DiscretePath: need at least two points");
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    const double step = (points[k + 1].vec() - points[k].vec()).norm();
    if (step > max_step)
      throw StepError("DiscretePath: step " + std::to_string(step) + " exceeds bound");
  }
  if (closed_in_projective) {
    const Vec3 d_same = points.back().vec() - points.front().vec();
    const Vec3 d_anti = points.back().vec() + points.front().vec();
    if (d_same.norm() > kUnitTol && d_anti.norm() > kUnitTol)
      throw std::invalid_argument("DiscretePath: marked closed but endpoints differ");
  }
}

namespace {

bool endpoints_projectively_closed(const std::vector<SpherePoint>& pts) {
  const Vec3 d_same = pts.back().vec() - pts.front().vec();
  const Vec3 d_anti = pts.back().vec() + pts.front().vec();
  return d_same.norm() <= kUnitTol || d_anti.norm() <= kUnitTol;
}

// Orthonormal vector transverse to u.
Vec3 any_orthogonal(const Vec3& u) {
  const Vec3 trial = std::abs(u.x()) < 0.7 ? Vec3::UnitX() : Vec3::UnitY();
  return u.cross(trial).normalized();
}

}  // namespace

DiscretePath great_circle_arc(const SpherePoint& a, const SpherePoint& b, int n_steps) {
  if (n_steps < 1) throw std::invalid_argument("great_circle_arc: n_steps must be >= 1");
  if ((a.vec() + b.vec()).norm() < 1e-9)
    throw std::invalid_argument("great_circle_arc: endpoints antipodal, arc is ambiguous");
  const double cos_omega = std::clamp(a.vec().dot(b.vec()), -1.0, 1.0);
  const double omega = std::acos(cos_omega);
  std::vector<SpherePoint> pts;
  pts.reserve(n_steps + 1);
  if (omega < 1e-12) {
    for (int k = 0; k <= n_steps; ++k) pts.push_back(a);
  } else {
    const double so = std::sin(omega);
    for (int k = 0; k <= n_steps; ++k) {
      const double t = static_cast<double>(k) / n_steps;
      const Vec3 v = (std::sin((1.0 - t) * omega) * a.vec() + std::sin(t * omega) * b.vec()) / so;
      pts.push_back(SpherePoint::normalized(v));
    }
  }
  const bool closed = endpoints_projectively_closed(pts);
  return DiscretePath(std::move(pts), closed);
}

DiscretePath half_great_circle(const SpherePoint& start, const Vec3& direction, int n_steps) {
  if (n_steps < 2) throw std::invalid_argument("half_great_circle: n_steps must be >= 2");
  const double n = direction.norm();
  if (n < 1e-14) throw std::invalid_argument("half_great_circle: zero direction");
  const Vec3 u = direction / n;
  if (std::abs(u.dot(start.vec())) > 1e-10)
    throw std::invalid_argument("half_great_circle: direction must be tangent to the sphere");
  std::vector<SpherePoint> pts;
  pts.reserve(n_steps + 1);
  for (int k = 0; k <= n_steps; ++k) {
    const double ang = M_PI * static_cast<double>(k) / n_steps;
    pts.push_back(SpherePoint::normalized(std::cos(ang) * start.vec() + std::sin(ang) * u));
  }
  return DiscretePath(std::move(pts), true);
}

DiscretePath small_circle(const Vec3& axis, double angular_radius, int n_steps) {
  if (n_steps < 3) throw std::invalid_argument("small_circle: n_steps must be >= 3");
  if (!(angular_radius > 0.0) || angular_radius >= M_PI)
    throw std::invalid_argument("small_circle: angular radius must lie in (0, pi)");
  const double n = axis.norm();
  if (n < 1e-14) throw std::invalid_argument("small_circle: zero axis");
  const Vec3 c = axis / n;
  const Vec3 u = any_orthogonal(c);
  const Vec3 v = c.cross(u);
  std::vector<SpherePoint> pts;
  pts.reserve(n_steps + 1);
  const double cr = std::cos(angular_radius);
  const double sr = std::sin(angular_radius);
  for (int k = 0; k <= n_steps; ++k) {
    const double ang = 2.0 * M_PI * static_cast<double>(k) / n_steps;
    pts.push_back(
        SpherePoint::normalized(cr * c + sr * (std::cos(ang) * u + std::sin(ang) * v)));
  }
  pts.back() = pts.front();  // close exactly
  return DiscretePath(std::move(pts), true);
}

DiscretePath orbit_path(const Vec3& axis, double total_angle, const SpherePoint& x0, int n_steps) {
  if (n_steps < 1) throw std::invalid_argument("orbit_path: n_steps must be >= 1");
  std::vector<SpherePoint> pts;
  pts.reserve(n_steps + 1);
  for (int k = 0; k <= n_steps; ++k) {
    const double t = static_cast<double>(k) / n_steps;
    pts.push_back(rotate(SU2Element::axis_angle(axis, t * total_angle), x0));
  }
  const bool closed = endpoints_projectively_closed(pts);
  return DiscretePath(std::move(pts), closed);
}

DiscretePath reversed(const DiscretePath& path) {
  std::vector<SpherePoint> pts(path.points.rbegin(), path.points.rend());
  return DiscretePath(std::move(pts), path.closed_in_projective);
}

}  // namespace rp2bundle
