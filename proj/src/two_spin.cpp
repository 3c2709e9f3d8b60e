#include "rp2bundle/two_spin.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rp2bundle/errors.hpp"
#include "rp2bundle/scalar_modules.hpp"

namespace rp2bundle {

const std::array<std::string, kTwoSpinDim>& two_spin_labels() {
  static const std::array<std::string, kTwoSpinDim> labels = {
      "|1,+1>^(-1)", "|1,+1>^(0)", "|1,+1>^(+1)", "|1,0>^(-1)", "|1,0>^(0)",
      "|1,0>^(+1)",  "|1,-1>^(-1)", "|1,-1>^(0)", "|1,-1>^(+1)", "|0,0>"};
  return labels;
}

int triplet_index(int m_j, int mu) {
  if (m_j < -1 || m_j > 1 || mu < -1 || mu > 1)
    throw std::invalid_argument("triplet_index: m_j and mu must lie in {-1, 0, +1}");
  return 3 * (1 - m_j) + (mu + 1);
}

namespace {

constexpr int kModeA1 = 0;
constexpr int kModeA2 = 1;
constexpr int kModeB1 = 2;
constexpr int kModeB2 = 3;

// All four-mode occupations with total at most two, lexicographic.  The
// creation operators act within this truncated space; the two-quanta sector
// is read back out at the end.
std::vector<std::array<int, 4>> truncated_fock_states() {
  std::vector<std::array<int, 4>> states;
  for (int n0 = 0; n0 <= 2; ++n0)
    for (int n1 = 0; n1 + n0 <= 2; ++n1)
      for (int n2 = 0; n2 + n1 + n0 <= 2; ++n2)
        for (int n3 = 0; n3 + n2 + n1 + n0 <= 2; ++n3)
          states.push_back({n0, n1, n2, n3});
  return states;
}

int truncated_index(const std::array<int, 4>& occ) {
  static const std::vector<std::array<int, 4>> states = truncated_fock_states();
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == occ) return static_cast<int>(i);
  throw std::logic_error("occupation outside the truncated Fock space");
}

Eigen::VectorXcd create(int mode, const Eigen::VectorXcd& state) {
  static const std::vector<std::array<int, 4>> states = truncated_fock_states();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(state.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (state(i) == Complex(0.0)) continue;
    std::array<int, 4> occ = states[i];
    if (occ[0] + occ[1] + occ[2] + occ[3] >= 2)
      throw std::logic_error("creation operator leaves the truncated Fock space");
    const double amp = std::sqrt(occ[mode] + 1.0);
    occ[mode] += 1;
    out(truncated_index(occ)) += amp * state(i);
  }
  return out;
}

std::array<Eigen::VectorXcd, kTwoSpinDim> build_schwinger_basis() {
  static const std::vector<std::array<int, 4>> states = truncated_fock_states();
  const Eigen::Index full_dim = static_cast<Eigen::Index>(states.size());
  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(full_dim);
  vac(truncated_index({0, 0, 0, 0})) = 1.0;
  const double s2 = std::sqrt(2.0);
  auto pair = [&](int m1, int m2) { return create(m1, create(m2, vac)); };

  std::array<Eigen::VectorXcd, kTwoSpinDim> full;
  full[0] = pair(kModeA1, kModeA1) / s2;
  full[1] = pair(kModeA1, kModeA2);
  full[2] = pair(kModeA2, kModeA2) / s2;
  full[3] = pair(kModeB1, kModeB1) / s2;
  full[4] = pair(kModeB1, kModeB2);
  full[5] = pair(kModeB2, kModeB2) / s2;
  full[6] = pair(kModeA1, kModeB1);
  full[7] = (pair(kModeA1, kModeB2) + pair(kModeB1, kModeA2)) / s2;
  full[8] = pair(kModeA2, kModeB2);
  full[9] = (pair(kModeA1, kModeB2) - pair(kModeB1, kModeA2)) / s2;

  // Restrict to the two-quanta sector coordinates.
  const auto& sector = occupation_basis();
  std::array<Eigen::VectorXcd, kTwoSpinDim> basis;
  for (int s = 0; s < kTwoSpinDim; ++s) {
    basis[s] = Eigen::VectorXcd::Zero(kTwoSpinDim);
    for (int k = 0; k < kTwoSpinDim; ++k) basis[s](k) = full[s](truncated_index(sector[k]));
  }
  return basis;
}

}  // namespace

const std::array<std::array<int, 4>, kTwoSpinDim>& occupation_basis() {
  static const std::array<std::array<int, 4>, kTwoSpinDim> sector = [] {
    std::array<std::array<int, 4>, kTwoSpinDim> out{};
    int next = 0;
    for (const auto& occ : truncated_fock_states())
      if (occ[0] + occ[1] + occ[2] + occ[3] == 2) out[next++] = occ;
    if (next != kTwoSpinDim) throw std::logic_error("two-quanta sector has wrong size");
    return out;
  }();
  return sector;
}

std::array<Eigen::VectorXcd, kTwoSpinDim> schwinger_basis() {
  static const std::array<Eigen::VectorXcd, kTwoSpinDim> basis = build_schwinger_basis();
  return basis;
}

Mat3c w_matrix(double theta, double phi) {
  if (theta < 0.0 || theta > M_PI)
    throw std::invalid_argument("w_matrix: theta must lie in [0, pi]");
  const Complex i(0.0, 1.0);
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  const double ch2 = std::cos(theta / 2.0);
  const double sh2 = std::sin(theta / 2.0);
  const Complex ep = std::exp(i * phi);
  const Complex em = std::exp(-i * phi);
  const double r2 = std::sqrt(2.0);
  Mat3c w;
  w(0, 0) = ch2 * ch2;
  w(0, 1) = ep * st / r2;
  w(0, 2) = ep * ep * sh2 * sh2;
  w(1, 0) = -em * st / r2;
  w(1, 1) = ct;
  w(1, 2) = ep * st / r2;
  w(2, 0) = em * em * sh2 * sh2;
  w(2, 1) = -em * st / r2;
  w(2, 2) = ch2 * ch2;
  return w;
}

Vec3c w_middle_row(const SpherePoint& r) {
  // Cartesian closed form of the middle row: e^{+-i phi} sin(theta) is
  // x1 +- i x2 and cos(theta) is x3.  Exactly odd under r -> -r.
  const Complex i(0.0, 1.0);
  const double r2 = std::sqrt(2.0);
  Vec3c w;
  w(0) = -(r.x1() - i * r.x2()) / r2;
  w(1) = r.x3();
  w(2) = (r.x1() + i * r.x2()) / r2;
  return w;
}

TransportedBasis::TransportedBasis(const SpherePoint& point,
                                   std::array<Eigen::VectorXcd, 4> vecs)
    : r(point), vectors(std::move(vecs)) {
  for (const auto& v : vectors)
    if (v.size() != kTwoSpinDim)
      throw std::invalid_argument("TransportedBasis: vectors must have dimension 10");
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b <= a; ++b) {
      const Complex g = vectors[a].dot(vectors[b]);
      if (std::abs(g - (a == b ? Complex(1.0) : Complex(0.0))) > 1e-12)
        throw std::invalid_argument("TransportedBasis: vectors are not orthonormal");
    }
}

TransportedBasis transported_basis(const SpherePoint& r) {
  const Vec3c w = w_middle_row(r);
  std::array<Eigen::VectorXcd, 4> vecs;
  const int ms[3] = {1, 0, -1};
  for (int row = 0; row < 3; ++row) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(kTwoSpinDim);
    for (int mu = -1; mu <= 1; ++mu) v(triplet_index(ms[row], mu)) = w(mu + 1);
    vecs[row] = v;
  }
  Eigen::VectorXcd singlet = Eigen::VectorXcd::Zero(kTwoSpinDim);
  singlet(9) = 1.0;
  vecs[3] = singlet;
  return TransportedBasis(r, std::move(vecs));
}

double pt_condition_residual(const DiscretePath& curve, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("pt_condition_residual: h must be positive");
  if (curve.points.size() < 3)
    throw std::invalid_argument("pt_condition_residual: need at least three samples");
  std::vector<TransportedBasis> bases;
  bases.reserve(curve.points.size());
  for (const auto& x : curve.points) bases.push_back(transported_basis(x));
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < bases.size(); ++k) {
    for (int l = 0; l < 4; ++l) {
      const Eigen::VectorXcd deriv =
          (bases[k + 1].vectors[l] - bases[k - 1].vectors[l]) / (2.0 * h);
      for (int j = 0; j < 4; ++j)
        worst = std::max(worst, std::abs(bases[k].vectors[j].dot(deriv)));
    }
  }
  return worst;
}

Mat3c triplet_projector(const SpherePoint& r) {
  const Vec3c w = w_middle_row(r);
  return w * w.adjoint();
}

Mat3c triplet_projector_angles(double theta, double phi) {
  const Mat3c w = w_matrix(theta, phi);
  Mat3c p0 = Mat3c::Zero();
  p0(1, 1) = 1.0;
  return w.transpose() * p0 * w.conjugate();
}

namespace {

Mat3c solve_basis_match() {
  // Three generic points, same rationale as the scalar intertwiner solve: a
  // third point removes the spurious null direction the two-point system has.
  const SpherePoint a = SpherePoint::normalized(Vec3(0.3, -0.5, 0.81));
  const SpherePoint b = SpherePoint::normalized(Vec3(0.7, 0.2, -0.4));
  const SpherePoint c = SpherePoint::normalized(Vec3(-0.2, 0.9, 0.35));
  // p(x) B = B P(r) for the constant unitary B.
  std::vector<Eigen::MatrixXcd> ps{grassmann_projector(a), grassmann_projector(b),
                                   grassmann_projector(c)};
  std::vector<Eigen::MatrixXcd> ts{triplet_projector(a), triplet_projector(b),
                                   triplet_projector(c)};
  IntertwinerSolution sol = solve_intertwiner(ps, ts);
  if (sol.null_residual > 1e-12 || sol.gap < 1e-3)
    throw std::runtime_error("basis_match_unitary: intertwiner solve is degenerate");
  return Mat3c(sol.matrix);
}

}  // namespace

const Mat3c& basis_match_unitary() {
  static const Mat3c b = solve_basis_match();
  return b;
}

double verify_basis_match(Rng& rng, int n_samples) {
  const Mat3c& b = basis_match_unitary();
  const Mat3c b_dag = b.adjoint();
  double worst = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    const SpherePoint r = rng.sphere_point();
    const Mat3c diff = b_dag * grassmann_projector(r) * b - triplet_projector(r);
    worst = std::max(worst, diff.norm());
  }
  return worst;
}

Eigen::MatrixXcd two_spin_projector(const SpherePoint& r) {
  const TransportedBasis basis = transported_basis(r);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(kTwoSpinDim, kTwoSpinDim);
  for (const auto& v : basis.vectors) p += v * v.adjoint();
  return p;
}

Eigen::MatrixXcd two_spin_action(const SU2Element& g) {
  const Mat3c d = wigner_d1(g);
  // The m_J index carries the conjugate spin-1 rotation.  Differentiating the
  // conjugate family along coordinate-axis flows yields exactly the spin-1
  // generators returned by spin1_generator, so operators induced from this
  // action agree with spin_operator_field.
  const Mat3c d_j = d.conjugate();
  // The mu index carries the reversal-conjugated spin-1 rotation; with this
  // block the action maps each transported basis vector at r to a mixed
  // combination of transported vectors at g.r exactly.
  Mat3 rev = Mat3::Zero();
  rev(0, 2) = rev(1, 1) = rev(2, 0) = 1.0;
  const Mat3c d_mu = rev * d * rev;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kTwoSpinDim, kTwoSpinDim);
  // Triplet block indices factor as 3 * row(m_J) + col(mu).
  for (int r1 = 0; r1 < 3; ++r1)
    for (int r2 = 0; r2 < 3; ++r2)
      for (int c1 = 0; c1 < 3; ++c1)
        for (int c2 = 0; c2 < 3; ++c2) out(3 * r1 + c1, 3 * r2 + c2) = d_j(r1, r2) * d_mu(c1, c2);
  out(9, 9) = 1.0;
  return out;
}

Eigen::Matrix4cd cg_transform(CgDirection direction) {
  // Rows: coupled (1,1), (1,0), (1,-1), (0,0); columns: product up-up,
  // up-down, down-up, down-down.
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  const double s = 1.0 / std::sqrt(2.0);
  m(0, 0) = 1.0;
  m(1, 1) = s;
  m(1, 2) = s;
  m(2, 3) = 1.0;
  m(3, 1) = s;
  m(3, 2) = -s;
  if (direction == CgDirection::CoupledToProduct) return m.transpose();
  return m;
}

Mat3c spin1_generator(int axis) {
  const Complex i(0.0, 1.0);
  const double s = 1.0 / std::sqrt(2.0);
  // The family satisfying wigner_d1(axis_angle(n, a)) = exp(i a sum_k n_k G_k)
  // for the basis convention used here: the middle spherical component
  // carries a sign relative to the textbook harmonics, so axes 1 and 2 are
  // the textbook matrices conjugated by diag(1, -1, 1).
  Mat3c m = Mat3c::Zero();
  switch (axis) {
    case 1:
      m(0, 1) = m(1, 0) = m(1, 2) = m(2, 1) = -s;
      break;
    case 2:
      m(0, 1) = m(1, 2) = i * s;
      m(1, 0) = m(2, 1) = -i * s;
      break;
    case 3:
      m(0, 0) = 1.0;
      m(2, 2) = -1.0;
      break;
    default:
      throw std::invalid_argument("spin1_generator: axis must be 1, 2 or 3");
  }
  return m;
}

Eigen::Matrix4cd spin_operator_field(int axis, const SpherePoint& r) {
  (void)r;
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m.topLeftCorner<3, 3>() = spin1_generator(axis);
  return m;
}

}  // namespace rp2bundle
