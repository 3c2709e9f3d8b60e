#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace rp2bundle {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Vec3c = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3d;
using Mat3c = Eigen::Matrix3cd;

// Tolerance used for "is this a unit vector / unit quaternion" checks and for
// the zero test inside the canonical-representative sign rule.
inline constexpr double kUnitTol = 1e-12;

// Point on the unit two-sphere.  Construction validates the norm; use
// normalized() to build one from an arbitrary nonzero vector.
class SpherePoint {
 public:
  explicit SpherePoint(const Vec3& v);
  SpherePoint(double x1, double x2, double x3);
  static SpherePoint normalized(const Vec3& v);

  const Vec3& vec() const { return v_; }
  double x1() const { return v_.x(); }
  double x2() const { return v_.y(); }
  double x3() const { return v_.z(); }

  SpherePoint antipode() const { return SpherePoint(Vec3(-v_)); }

 private:
  Vec3 v_;
};

SpherePoint antipode(const SpherePoint& x);

// Canonical representative of the antipodal class [x]: the sign is chosen so
// that the last coordinate that is nonzero (checked in the order x3, x2, x1,
// zero meaning |coord| <= kUnitTol) is strictly positive.
SpherePoint canonical_representative(const SpherePoint& x);
bool is_canonical_representative(const SpherePoint& x);

// Point of the projective plane, stored through its canonical lift.
class ProjectivePoint {
 public:
  explicit ProjectivePoint(const SpherePoint& any_lift)
      : rep_(canonical_representative(any_lift)) {}
  const SpherePoint& rep() const { return rep_; }

 private:
  SpherePoint rep_;
};

// Element of SU(2) stored as a unit quaternion q0 + q1 i + q2 j + q3 k.
// rotation_matrix() is the usual two-to-one covering map, acting on vectors
// as v -> q v q^{-1} (active, right handed).
class SU2Element {
 public:
  SU2Element(double q0, double q1, double q2, double q3);
  static SU2Element identity() { return SU2Element(1.0, 0.0, 0.0, 0.0); }
  static SU2Element axis_angle(const Vec3& axis, double angle);

  SU2Element operator*(const SU2Element& rhs) const;  // Hamilton product
  SU2Element inverse() const { return SU2Element(q0_, -q1_, -q2_, -q3_); }

  Mat3 rotation_matrix() const;

  double q0() const { return q0_; }
  double q1() const { return q1_; }
  double q2() const { return q2_; }
  double q3() const { return q3_; }

 private:
  double q0_, q1_, q2_, q3_;
};

SpherePoint rotate(const SU2Element& g, const SpherePoint& x);

// Unitary change of basis from Cartesian components to the spherical
// components ordered (m = +1, 0, -1).  Its rows are fixed by the
// Condon-Shortley convention for the degree-one harmonics.
Mat3c spherical_basis_matrix();

// Spin-1 representation matrix in the spherical basis (m = +1, 0, -1),
// conjugate of the rotation matrix by spherical_basis_matrix().  With T that
// change of basis, wigner_d1(g) = T R(g) T^dagger, so wigner_d1(g) applied to
// T x equals T (R(g) x) identically.
Mat3c wigner_d1(const SU2Element& g);

struct SphericalAngles {
  double theta;  // [0, pi]
  double phi;    // [0, 2*pi); forced to 0 at the poles (sin(theta) < kUnitTol)
};
SphericalAngles to_spherical(const SpherePoint& x);

// Deterministic random source.  Gaussians come from an explicit Box-Muller
// transform over the raw mt19937_64 stream so that a seed pins the exact
// sample sequence independent of the standard library's distribution choices.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform();   // [0, 1)
  double gaussian();  // standard normal
  Vec3 gaussian_vec3();
  SpherePoint sphere_point();  // uniform on the sphere

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Haar-distributed SU(2) element: four independent Gaussians, normalized.
SU2Element haar_sample(Rng& rng);

// Piecewise sampled path on the sphere.  closed_in_projective marks paths
// whose final point equals the first point or its antipode; the constructor
// validates that flag and rejects steps larger than max_step (chordal).
struct DiscretePath {
  std::vector<SpherePoint> points;
  bool closed_in_projective = false;

  DiscretePath(std::vector<SpherePoint> pts, bool closed, double max_step = 0.5);

  std::size_t size() const { return points.size(); }
};

// Geodesic arc from a to b (rejects antipodal endpoints), n_steps + 1 points.
DiscretePath great_circle_arc(const SpherePoint& a, const SpherePoint& b, int n_steps);

// Half great circle from start to its antipode, leaving along `direction`
// (must be tangent: orthogonal to start).  Closed in the projective plane.
DiscretePath half_great_circle(const SpherePoint& start, const Vec3& direction, int n_steps);

// Full circle of angular radius rho about `axis`, counterclockwise seen from
// the axis tip.  Closed on the sphere.
DiscretePath small_circle(const Vec3& axis, double angular_radius, int n_steps);

// Orbit t -> exp(t * angle * axis) x0 of a one-parameter rotation subgroup.
DiscretePath orbit_path(const Vec3& axis, double total_angle, const SpherePoint& x0, int n_steps);

DiscretePath reversed(const DiscretePath& path);

}  // namespace rp2bundle
