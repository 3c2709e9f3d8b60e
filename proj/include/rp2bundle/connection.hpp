#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "rp2bundle/geometry.hpp"

namespace rp2bundle {

// Hermitian projector field P(x) defining a subbundle of a trivial C^n bundle,
// and a unitary SU(2) action on the same ambient space.
using ProjectorField = std::function<Eigen::MatrixXcd(const SpherePoint&)>;
using ActionField = std::function<Eigen::MatrixXcd(const SU2Element&)>;

ProjectorField grassmann_field();     // p(x), rank 1 in C^3
ProjectorField tautological_field();  // q(x), rank 1 in C^3
ProjectorField bloch_field();         // (I + x.sigma)/2, rank 1 in C^2; curved control
ProjectorField trivial_field();       // constant [1] on C^1

// Unit vector spanning the image of a rank-one projector (largest column,
// normalized).
Eigen::VectorXcd fiber_basis_vector(const ProjectorField& field, const SpherePoint& x);

struct TransportResult {
  Eigen::VectorXcd final_vector;
  Complex phase;      // <v0, v_final> / |<v0, v_final>|; meaningful for loops
  double norm_drift;  // max deviation of the running norm from 1
  int n_steps;
};

// Discrete parallel transport for the Grassmann connection: repeated
// projection v <- P(x_{k+1}) v with renormalization each step (Pancharatnam
// product).  Throws FiberError if v0 is not in the start fiber (residual
// above fiber_tol) and StepError if a projection shrinks the vector below
// half its norm, which signals too coarse a path.
TransportResult parallel_transport(const DiscretePath& path, const Eigen::VectorXcd& v0,
                                   const ProjectorField& field, double fiber_tol = 1e-10);

// Transport phase of a fiber basis vector around a loop.  Loops closed only
// in the projective plane are allowed whenever the field is antipodally even,
// since then the fiber at -x equals the fiber at x and the overlap with v0 is
// well defined.
Complex holonomy(const DiscretePath& loop, const ProjectorField& field);

struct CurvatureProbe {
  SpherePoint center;
  double angular_radius;
  double phase_per_area;  // arg(holonomy) / enclosed spherical area
  Complex phase;
  int n_steps;
};

// Plaquette probe: transports around the circle of angular radius rho about
// `center` and divides the resulting phase angle by the cap area
// 2 pi (1 - cos rho).  Radius restricted to [1e-3, 0.5].
CurvatureProbe curvature_probe(const SpherePoint& center, double angular_radius,
                               const ProjectorField& field, int n_steps);

// Checks the frame connection rule for the tautological frame e_i(x): the
// projected directional derivative of e_i at x along the tangent `direction`
// must equal sum_j (u_i x_j + x_i u_j) e_j(x).  Returns the largest residual
// over i; the two sides are evaluated by a central difference of step h
// (h in [1e-6, 1e-2]) and analytically, so the residual decays as h^2.
double frame_connection_check(const SpherePoint& x, const Vec3& direction, double h);

// Parallelism of s(t) = sum_i x_i(t) e_i(x(t)) along the orbit
// t -> exp(t * angle * axis) x0, for t on [0,1] with n_steps intervals:
// returns max_t || q(x(t)) (s(t+h) - s(t-h)) / (2h) ||.
double orbit_transport_check(const Vec3& axis, double total_angle, const SpherePoint& x0,
                             int n_steps);

// Same quantity with the frame frozen at t = 0 (negative control; the
// residual stays O(1) for generic orbits).
double orbit_transport_fixed_frame_control(const Vec3& axis, double total_angle,
                                           const SpherePoint& x0, int n_steps);

// Local spin operator about coordinate axis `axis` (1, 2 or 3) at the class
// of x, acting on the fiber spanned by `fiber_basis` (orthonormal vectors in
// the image of field(x)).  For each t in t_sequence the group element of
// angle t about the axis moves x along the rotation flow, the action is
// applied, and the result is transported back along the reversed arc; the
// quotients (i/t)(y_t - y_0) are then Richardson-extrapolated over the two
// smallest t values, leaving an O(t^2) error.
Eigen::MatrixXcd local_spin_operator(const ProjectorField& field, const ActionField& action,
                                     const std::vector<Eigen::VectorXcd>& fiber_basis, int axis,
                                     const SpherePoint& x, const std::vector<double>& t_sequence,
                                     int steps_per_arc = 64);

}  // namespace rp2bundle
