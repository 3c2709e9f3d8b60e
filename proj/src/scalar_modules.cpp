#include "rp2bundle/scalar_modules.hpp"

#include <cmath>
#include <stdexcept>

#include "rp2bundle/errors.hpp"

namespace rp2bundle {

Vec3c psi(const SpherePoint& p) {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  Vec3c v;
  v << -(p.x1() + i * p.x2()) * r, Complex(-p.x3()), (p.x1() - i * p.x2()) * r;
  return v;
}

Mat3c grassmann_projector(const SpherePoint& x) {
  const Vec3c v = psi(x);
  return v * v.adjoint();
}

Mat3c real_projector(const SpherePoint& x) {
  const Vec3 v = x.vec();
  return (v * v.transpose()).cast<Complex>();
}

Mat3c u_matrix() {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  Mat3c u;
  u << Complex(r), -i * r, Complex(0.0),
      Complex(0.0), Complex(0.0), Complex(-1.0),
      Complex(-r), -i * r, Complex(0.0);
  return u;
}

Mat3c u_tilde_projector(const SpherePoint& x) {
  static const Mat3c u = u_matrix();
  static const Mat3c u_dag = u_matrix().adjoint();
  return u_dag * grassmann_projector(x) * u;
}

Mat3 u_tilde_sign_matrix() {
  Mat3 d = Mat3::Identity();
  d(0, 0) = -1.0;
  return d;
}

IntertwinerSolution solve_intertwiner(const std::vector<Eigen::MatrixXcd>& a_side,
                                      const std::vector<Eigen::MatrixXcd>& b_side) {
  if (a_side.empty() || a_side.size() != b_side.size())
    throw std::invalid_argument("solve_intertwiner: need matching nonempty sample lists");
  const Eigen::Index n = a_side.front().rows();
  const Eigen::Index nn = n * n;
  // Constraints A X - X B = 0 as (I (x) A - B^T (x) I) vec(X) = 0 for
  // column-major vec; accumulate the Gram matrix of the stacked system.
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(nn, nn);
  for (std::size_t s = 0; s < a_side.size(); ++s) {
    const Eigen::MatrixXcd& a = a_side[s];
    const Eigen::MatrixXcd& b = b_side[s];
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(nn, nn);
    for (Eigen::Index j = 0; j < n; ++j)
      m.block(j * n, j * n, n, n) = a;
    const Eigen::MatrixXcd bt = b.transpose();
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k)
        m.block(j * n, k * n, n, n) -= bt(j, k) * Eigen::MatrixXcd::Identity(n, n);
    gram += m.adjoint() * m;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
  IntertwinerSolution sol;
  sol.null_residual = eig.eigenvalues()(0);
  sol.gap = eig.eigenvalues()(1);
  Eigen::VectorXcd v = eig.eigenvectors().col(0);
  Eigen::MatrixXcd x(n, n);
  for (Eigen::Index j = 0; j < n; ++j) x.col(j) = v.segment(j * n, n);
  // The null direction is determined up to a complex scalar; rescale to the
  // unitary representative.
  x *= std::sqrt(static_cast<double>(n)) / x.norm();
  sol.matrix = x;
  return sol;
}

namespace {

Mat3c solve_q_p() {
  // Three generic points: with only two, a spurious null direction supported
  // on the joint orthogonal complement of the sample lines survives.
  const SpherePoint a = SpherePoint::normalized(Vec3(0.3, -0.5, 0.81));
  const SpherePoint b = SpherePoint::normalized(Vec3(0.7, 0.2, -0.4));
  const SpherePoint c = SpherePoint::normalized(Vec3(-0.2, 0.9, 0.35));
  std::vector<Eigen::MatrixXcd> ps{grassmann_projector(a), grassmann_projector(b),
                                   grassmann_projector(c)};
  std::vector<Eigen::MatrixXcd> qs{real_projector(a), real_projector(b), real_projector(c)};
  // p(x) C = C q(x): a one-complex-dimensional null space at three generic
  // points; the gap is checked so a degenerate sample set cannot slip by.
  IntertwinerSolution sol = solve_intertwiner(ps, qs);
  if (sol.null_residual > 1e-12 || sol.gap < 1e-3)
    throw std::runtime_error("q_p_intertwiner: intertwiner solve is degenerate");
  return Mat3c(sol.matrix);
}

}  // namespace

const Mat3c& q_p_intertwiner() {
  static const Mat3c c = solve_q_p();
  return c;
}

double verify_q_p_intertwiner(Rng& rng, int n_samples) {
  const Mat3c& c = q_p_intertwiner();
  const Mat3c c_dag = c.adjoint();
  double worst = 0.0;
  for (int k = 0; k < n_samples; ++k) {
    const SpherePoint x = rng.sphere_point();
    worst = std::max(worst,
                     (real_projector(x) - c_dag * grassmann_projector(x) * c).norm());
  }
  return worst;
}

Vec3c frame_section(int index, const SpherePoint& x) {
  if (index < 1 || index > 3) throw std::invalid_argument("frame_section: index must be 1..3");
  return Vec3c(real_projector(x).col(index - 1));
}

SampledSection::SampledSection(std::vector<SpherePoint> points,
                               std::vector<Eigen::VectorXcd> values)
    : points_(std::move(points)), values_(std::move(values)) {
  if (points_.empty() || points_.size() != values_.size())
    throw std::invalid_argument("SampledSection: points and values must match and be nonempty");
  if (points_.size() % 2 != 0)
    throw PairingError("SampledSection: odd sample count breaks antipodal pairing");
  dimension_ = static_cast<int>(values_.front().size());
  if (dimension_ < 1) throw std::invalid_argument("SampledSection: empty value vectors");
  for (const auto& v : values_)
    if (v.size() != dimension_)
      throw std::invalid_argument("SampledSection: inconsistent value dimension");
  for (std::size_t k = 0; k + 1 < points_.size(); k += 2) {
    if ((points_[k].vec() + points_[k + 1].vec()).norm() > kUnitTol)
      throw PairingError("SampledSection: samples " + std::to_string(k) + "," +
                         std::to_string(k + 1) + " are not antipodal partners");
  }
}

double SampledSection::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, v.cwiseAbs().maxCoeff());
  return m;
}

double even_residual(const SampledSection& f) {
  double worst = 0.0;
  for (std::size_t k = 0; k < f.size(); k += 2)
    worst = std::max(worst, (f.value(k) - f.value(k + 1)).cwiseAbs().maxCoeff());
  return worst;
}

double odd_residual(const SampledSection& f) {
  double worst = 0.0;
  for (std::size_t k = 0; k < f.size(); k += 2)
    worst = std::max(worst, (f.value(k) + f.value(k + 1)).cwiseAbs().maxCoeff());
  return worst;
}

std::pair<SampledSection, SampledSection> even_odd_split(const SampledSection& f) {
  std::vector<Eigen::VectorXcd> even_vals(f.size()), odd_vals(f.size());
  for (std::size_t k = 0; k < f.size(); k += 2) {
    const Eigen::VectorXcd& a = f.value(k);
    const Eigen::VectorXcd& b = f.value(k + 1);
    // One shared computation per pair keeps the even part exactly even and
    // the odd part exactly odd.
    const Eigen::VectorXcd avg = 0.5 * (a + b);
    const Eigen::VectorXcd dif = 0.5 * (a - b);
    even_vals[k] = avg;
    even_vals[k + 1] = avg;
    odd_vals[k] = dif;
    odd_vals[k + 1] = -dif;
  }
  std::vector<SpherePoint> pts = f.points();
  std::vector<SpherePoint> pts2 = pts;
  return {SampledSection(std::move(pts), std::move(even_vals)),
          SampledSection(std::move(pts2), std::move(odd_vals))};
}

SampledSection iso_forward(const SampledSection& f, double parity_tol) {
  if (f.dimension() != 3) throw std::invalid_argument("iso_forward: expected a 3-component section");
  const double scale = std::max(f.max_abs(), 1e-300);
  if (even_residual(f) > parity_tol * scale)
    throw std::invalid_argument("iso_forward: input section is not even on the samples");
  std::vector<Eigen::VectorXcd> vals(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const Vec3c p = psi(f.point(k));
    Eigen::VectorXcd g(1);
    g(0) = p.dot(f.value(k));  // Eigen dot conjugates the left argument
    vals[k] = g;
  }
  std::vector<SpherePoint> pts = f.points();
  return SampledSection(std::move(pts), std::move(vals));
}

SampledSection iso_backward(const SampledSection& g, double parity_tol) {
  if (g.dimension() != 1) throw std::invalid_argument("iso_backward: expected a scalar section");
  const double scale = std::max(g.max_abs(), 1e-300);
  if (odd_residual(g) > parity_tol * scale)
    throw std::invalid_argument("iso_backward: input section is not odd on the samples");
  std::vector<Eigen::VectorXcd> vals(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    vals[k] = Eigen::VectorXcd(g.value(k)(0) * psi(g.point(k)));
  }
  std::vector<SpherePoint> pts = g.points();
  return SampledSection(std::move(pts), std::move(vals));
}

namespace {

struct EvenPoly {
  double c0;
  Mat3 c2;  // symmetric coefficient matrix for x^T c2 x
  double operator()(const SpherePoint& p) const { return c0 + p.vec().dot(c2 * p.vec()); }
};

struct OddPoly {
  Vec3 c1;
  Eigen::Matrix<double, 3, 3> c3[3];  // coefficient block for x_i * (x^T c3[i] x)
  double operator()(const SpherePoint& p) const {
    const Vec3& v = p.vec();
    double r = c1.dot(v);
    for (int i = 0; i < 3; ++i) r += v(i) * v.dot(c3[i] * v);
    return r;
  }
};

EvenPoly random_even_poly(Rng& rng) {
  EvenPoly p;
  p.c0 = rng.gaussian();
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = rng.gaussian();
  p.c2 = 0.5 * (m + m.transpose());
  return p;
}

OddPoly random_odd_poly(Rng& rng) {
  OddPoly p;
  p.c1 = rng.gaussian_vec3();
  for (int i = 0; i < 3; ++i) {
    Mat3 m;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) m(a, b) = rng.gaussian();
    p.c3[i] = 0.5 * (m + m.transpose());
  }
  return p;
}

}  // namespace

SampledSection random_even_scalar(Rng& rng, const std::vector<SpherePoint>& base_points) {
  const EvenPoly p = random_even_poly(rng);
  return SampledSection::from_function(base_points, 1, [&](const SpherePoint& x) {
    Eigen::VectorXcd v(1);
    v(0) = Complex(p(x), 0.0);
    return v;
  });
}

SampledSection random_odd_scalar(Rng& rng, const std::vector<SpherePoint>& base_points) {
  const OddPoly p = random_odd_poly(rng);
  return SampledSection::from_function(base_points, 1, [&](const SpherePoint& x) {
    Eigen::VectorXcd v(1);
    v(0) = Complex(p(x), 0.0);
    return v;
  });
}

SampledSection random_even_triple(Rng& rng, const std::vector<SpherePoint>& base_points) {
  const EvenPoly p0 = random_even_poly(rng);
  const EvenPoly p1 = random_even_poly(rng);
  const EvenPoly p2 = random_even_poly(rng);
  return SampledSection::from_function(base_points, 3, [&](const SpherePoint& x) {
    Eigen::VectorXcd v(3);
    v(0) = Complex(p0(x), 0.0);
    v(1) = Complex(p1(x), 0.0);
    v(2) = Complex(p2(x), 0.0);
    return v;
  });
}

}  // namespace rp2bundle
