#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>

#include "rp2bundle/geometry.hpp"

namespace rp2bundle {

// Two spin-1/2 particles, realized on four bosonic modes (a1, a2, b1, b2)
// restricted to total occupation two, dimension 10.  The basis is the fixed
// family |J, mJ>^(mu) with J-blocks read row major, mu in (-1, 0, +1) within
// each row, and the singlet last:
//   0..2  |1, 1>^(-1,0,1)   3..5  |1, 0>^(-1,0,1)   6..8  |1,-1>^(-1,0,1)
//   9     |0, 0>
inline constexpr int kTwoSpinDim = 10;

const std::array<std::string, kTwoSpinDim>& two_spin_labels();

// Index of |1, mJ>^(mu) in the fixed basis (mJ in {+1,0,-1}, mu in {-1,0,+1}).
int triplet_index(int m_j, int mu);

// The ten basis states expressed in the occupation-number basis of the
// two-quanta sector (lexicographic order over (n_a1, n_a2, n_b1, n_b2)).
// Built by applying the defining creation-operator monomials to the vacuum;
// the set is orthonormal.
std::array<Eigen::VectorXcd, kTwoSpinDim> schwinger_basis();

// Occupation tuples indexing the two-quanta sector, in the order used by
// schwinger_basis().
const std::array<std::array<int, 4>, kTwoSpinDim>& occupation_basis();

// Rotation profile matrix
//   [  cos^2(t/2)          e^{i f} sin t / sqrt2    e^{2 i f} sin^2(t/2) ]
//   [ -e^{-i f} sin t/sqrt2   cos t                 e^{i f} sin t / sqrt2 ]
//   [  e^{-2 i f} sin^2(t/2)  -e^{-i f} sin t/sqrt2   cos^2(t/2)          ]
// with t = theta, f = phi.  Unitary with determinant one; W(0, phi) = I.
Mat3c w_matrix(double theta, double phi);

// Middle row of w_matrix at the angles of r, as a 3-vector over the mu index
// in (-1, 0, +1) order.  Flips sign under r -> -r.
Vec3c w_middle_row(const SpherePoint& r);

struct TransportedBasis {
  SpherePoint r;
  // Order (1,1), (1,0), (1,-1), (0,0); each vector is a coefficient vector
  // over the fixed 10-dim basis.
  std::array<Eigen::VectorXcd, 4> vectors;

  TransportedBasis(const SpherePoint& point, std::array<Eigen::VectorXcd, 4> vecs);
};

// Moving basis over the sphere: the triplet vectors combine the mu-families
// with the middle-row coefficients of w_matrix at r, the singlet is constant.
// Triplet vectors are odd under r -> -r, the singlet even.
TransportedBasis transported_basis(const SpherePoint& r);

// Max over interior samples and over basis pairs (V', V) of
// |<V'(t), dV/dt>| with dV/dt the central difference at parameter step h.
// The continuum value vanishes identically (parallel-transport condition).
double pt_condition_residual(const DiscretePath& curve, double h);

// Projector onto the triplet line in the mu index space:
// W^T P0 W^* with P0 the (middle, middle) matrix unit; equals the outer
// product of the middle row with itself.  Even under r -> -r.
Mat3c triplet_projector(const SpherePoint& r);
Mat3c triplet_projector_angles(double theta, double phi);

// Constant unitary B with triplet_projector(r) = B^dagger p(x(r)) B for all
// r, solved once from the intertwining equations at three generic points and
// cached.  verify_basis_match checks the relation on a random grid.
const Mat3c& basis_match_unitary();
double verify_basis_match(Rng& rng, int n_samples);

// Rank-4 projector on the 10-dim space whose image is spanned by the
// transported basis at r; antipodally even, so it defines a projective-plane
// bundle (triplet part three copies of the nontrivial line bundle, singlet
// part trivial).
Eigen::MatrixXcd two_spin_projector(const SpherePoint& r);

// Unitary SU(2) action on the 10-dim space: conjugate spin-1 rotation on the
// mJ index tensored with the reversal-conjugated spin-1 rotation on the mu
// index, identity on the singlet.  Maps the fiber at r onto the fiber at g.r,
// sending transported basis vectors at r to combinations of transported
// vectors at g.r mixed by conj(wigner_d1(g)).
Eigen::MatrixXcd two_spin_action(const SU2Element& g);

// Basis change between the product basis (up up, up down, down up, down down)
// and the coupled basis ((1,1), (1,0), (1,-1), (0,0)).  Real orthogonal.
enum class CgDirection { ProductToCoupled, CoupledToProduct };
Eigen::Matrix4cd cg_transform(CgDirection direction);

// Spin-1 generators in the spherical basis (m = +1, 0, -1), normalized so
// that conj(wigner_d1(axis_angle(n, a))) = exp(-i a sum_k n_k G_k), i.e. the
// conjugate rotation family is generated by -iG.  They obey the standard
// angular momentum algebra [G_i, G_j] = i eps_ijk G_k; axis 3 is
// diag(1, 0, -1).
Mat3c spin1_generator(int axis);

// Total-spin operator on the fiber at r, written in the transported frame
// ((1,1), (1,0), (1,-1), (0,0)): the spin-1 generator on the triplet block
// and zero on the singlet.  In the moving frame the matrix is the same at
// every r; the argument fixes the frame the entries refer to.
Eigen::Matrix4cd spin_operator_field(int axis, const SpherePoint& r);

}  // namespace rp2bundle
