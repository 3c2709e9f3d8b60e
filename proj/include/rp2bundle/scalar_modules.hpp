#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

#include "rp2bundle/geometry.hpp"

namespace rp2bundle {

// Unit section of the rank-one complex bundle: in Cartesian coordinates
//   psi(x) = ( -(x1 + i x2)/sqrt(2),  -x3,  (x1 - i x2)/sqrt(2) ),
// the degree-one spherical-harmonic triple in the (m = +1, 0, -1) ordering.
// It is odd, psi(-x) = -psi(x), and has unit norm on the sphere.
Vec3c psi(const SpherePoint& x);

// Rank-one projector p(x) = psi(x) psi(x)^dagger.  Even in x.
Mat3c grassmann_projector(const SpherePoint& x);

// Real tautological projector q(x), entries x_i x_j.
Mat3c real_projector(const SpherePoint& x);

// Fixed unitary with rows (1/sqrt2, -i/sqrt2, 0), (0, 0, -1),
// (-1/sqrt2, -i/sqrt2, 0).
Mat3c u_matrix();

// Conjugated projector U^dagger p(x) U.  Real symmetric; equals q(x) up to
// the fixed sign conjugation diag(-1, 1, 1) (see u_tilde_sign_matrix).
Mat3c u_tilde_projector(const SpherePoint& x);
Mat3 u_tilde_sign_matrix();  // diag(-1, 1, 1)

// Constant unitary C with q(x) = C^dagger p(x) C for every x.  Solved once
// from the intertwining equations at three generic points (nullspace of the
// stacked Sylvester system) and cached; verify_q_p_intertwiner checks it
// globally on a random grid.
const Mat3c& q_p_intertwiner();
double verify_q_p_intertwiner(Rng& rng, int n_samples);

// Generic solver used for the constant-unitary questions: finds X with
// A(s) X = X B(s) for all supplied sample pairs, normalized to be unitary.
// Returns the matrix and the spectral gap separating the (phase) null
// direction from the rest; a healthy gap certifies uniqueness up to phase.
struct IntertwinerSolution {
  Eigen::MatrixXcd matrix;
  double null_residual;  // smallest eigenvalue of the constraint Gram
  double gap;            // second smallest eigenvalue
};
IntertwinerSolution solve_intertwiner(const std::vector<Eigen::MatrixXcd>& a_side,
                                      const std::vector<Eigen::MatrixXcd>& b_side);

// Frame of sections e_i(x) = i-th column of q(x) (i in {1,2,3}); every value
// lies in the image of q(x) and sum_i x_i e_i(x) = x.
Vec3c frame_section(int index, const SpherePoint& x);

struct FrameField {
  int index;  // 1-based
  Vec3c operator()(const SpherePoint& x) const { return frame_section(index, x); }
};

// Function sampled on antipodal pairs of sphere points: entries 2k and 2k+1
// always hold a point and its antipode.  Values are complex vectors of one
// common dimension.
class SampledSection {
 public:
  SampledSection(std::vector<SpherePoint> points, std::vector<Eigen::VectorXcd> values);

  template <typename Fn>
  static SampledSection from_function(const std::vector<SpherePoint>& base_points, int dimension,
                                      Fn&& fn) {
    std::vector<SpherePoint> pts;
    std::vector<Eigen::VectorXcd> vals;
    pts.reserve(2 * base_points.size());
    vals.reserve(2 * base_points.size());
    for (const auto& x : base_points) {
      const SpherePoint xm = x.antipode();
      pts.push_back(x);
      vals.push_back(fn(x));
      pts.push_back(xm);
      vals.push_back(fn(xm));
      if (vals[vals.size() - 1].size() != dimension || vals[vals.size() - 2].size() != dimension)
        throw std::invalid_argument("SampledSection: generator dimension mismatch");
    }
    return SampledSection(std::move(pts), std::move(vals));
  }

  int dimension() const { return dimension_; }
  std::size_t size() const { return points_.size(); }
  std::size_t pair_count() const { return points_.size() / 2; }
  static std::size_t antipode_index(std::size_t i) { return i ^ 1u; }

  const SpherePoint& point(std::size_t i) const { return points_[i]; }
  const Eigen::VectorXcd& value(std::size_t i) const { return values_[i]; }
  Eigen::VectorXcd& value(std::size_t i) { return values_[i]; }
  const std::vector<SpherePoint>& points() const { return points_; }

  double max_abs() const;  // max over samples of the sup norm of the value

 private:
  std::vector<SpherePoint> points_;
  std::vector<Eigen::VectorXcd> values_;
  int dimension_;
};

// Largest pairing violations: even_residual = max |f(x) - f(-x)|,
// odd_residual = max |f(x) + f(-x)| (sup norm over components).
double even_residual(const SampledSection& f);
double odd_residual(const SampledSection& f);

// Pointwise even/odd parts, computed symmetrically from each antipodal pair
// so that the even output is exactly even and the odd output exactly odd.
std::pair<SampledSection, SampledSection> even_odd_split(const SampledSection& f);

// Module isomorphism between even psi-compatible triples and odd scalars:
//   forward:  g(x) = <psi(x), f(x)>   (triple f must be even)
//   backward: f(x) = g(x) psi(x)      (scalar g must be odd)
// Parity preconditions are checked within parity_tol relative to the
// section's sup norm.
SampledSection iso_forward(const SampledSection& f, double parity_tol = 1e-10);
SampledSection iso_backward(const SampledSection& g, double parity_tol = 1e-10);

// Random band-limited test sections (polynomial in x of low degree):
// even scalar  c0 + sum c_ij x_i x_j,
// odd scalar   sum c_i x_i + sum c_ijk x_i x_j x_k,
// even triple  three independent even scalars.
SampledSection random_even_scalar(Rng& rng, const std::vector<SpherePoint>& base_points);
SampledSection random_odd_scalar(Rng& rng, const std::vector<SpherePoint>& base_points);
SampledSection random_even_triple(Rng& rng, const std::vector<SpherePoint>& base_points);

}  // namespace rp2bundle
