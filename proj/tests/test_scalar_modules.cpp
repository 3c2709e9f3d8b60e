#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rp2bundle/errors.hpp"
#include "rp2bundle/scalar_modules.hpp"
#include "test_util.hpp"

using namespace rp2bundle;
using testutil::max_abs;

namespace {

std::vector<SpherePoint> random_points(Rng& rng, int n) {
  std::vector<SpherePoint> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) pts.push_back(rng.sphere_point());
  return pts;
}

}  // namespace

TEST_CASE("scalar modules: psi matches its closed form and is an odd unit section") {
  const Vec3c v = psi(SpherePoint(0.6, 0.48, 0.64));
  CHECK(std::abs(v(0) - Complex(-0.42426406871192845, -0.33941125496954277)) <= 1e-15);
  CHECK(std::abs(v(1) - Complex(-0.64, 0.0)) <= 1e-15);
  CHECK(std::abs(v(2) - Complex(0.42426406871192845, -0.33941125496954277)) <= 1e-15);

  Rng rng(2);
  for (int i = 0; i < 500; ++i) {
    const SpherePoint x = rng.sphere_point();
    CHECK(std::abs(psi(x).norm() - 1.0) <= 1e-15);
    // Oddness is exact: every component is linear in the coordinates.
    CHECK((psi(x.antipode()) + psi(x)).cwiseAbs().maxCoeff() == 0.0);
  }

  // psi equals the spherical basis matrix applied to the coordinates.
  const SpherePoint x = rng.sphere_point();
  CHECK((psi(x) - spherical_basis_matrix() * x.vec().cast<Complex>()).cwiseAbs().maxCoeff() <=
        1e-15);
}

TEST_CASE("scalar modules: projectors are rank-one, hermitian and antipodally even") {
  Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    const SpherePoint x = rng.sphere_point();
    const Mat3c p = grassmann_projector(x);
    CHECK(max_abs(p * p - p) <= 1e-15);
    CHECK(max_abs(p - p.adjoint()) <= 1e-15);
    CHECK(std::abs(p.trace() - Complex(1.0)) <= 1e-15);
    CHECK(max_abs(grassmann_projector(x.antipode()) - p) == 0.0);

    const Mat3c q = real_projector(x);
    CHECK(max_abs(q * q - q) <= 1e-15);
    CHECK(max_abs(q - q.transpose()) == 0.0);
    CHECK(q.imag().cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::abs(q.trace() - Complex(1.0)) <= 1e-15);
    CHECK((q * x.vec().cast<Complex>() - x.vec().cast<Complex>()).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("scalar modules: the fixed unitary conjugates p onto a sign twist of q") {
  const Mat3c u = u_matrix();
  CHECK(max_abs(u * u.adjoint() - Mat3c::Identity()) <= 1e-15);

  const Mat3 d = u_tilde_sign_matrix();
  CHECK((d - Vec3(-1.0, 1.0, 1.0).asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff() == 0.0);

  Rng rng(6);
  for (int i = 0; i < 200; ++i) {
    const SpherePoint x = rng.sphere_point();
    const Mat3c tilde = u_tilde_projector(x);
    CHECK(tilde.imag().cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(max_abs(tilde - tilde.transpose()) <= 1e-15);
    const Mat3c expected = d.cast<Complex>() * real_projector(x) * d.cast<Complex>();
    CHECK(max_abs(tilde - expected) <= 1e-14);
  }
}

TEST_CASE("scalar modules: constant unitary intertwines q and p globally") {
  const Mat3c& c = q_p_intertwiner();
  CHECK(max_abs(c * c.adjoint() - Mat3c::Identity()) <= 1e-12);

  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const SpherePoint x = rng.sphere_point();
    CHECK(max_abs(c.adjoint() * grassmann_projector(x) * c - real_projector(x)) <= 1e-12);
  }

  // Entry magnitudes agree with the spherical basis matrix; the phase is the
  // only freedom left by the solve.
  const Mat3c t = spherical_basis_matrix();
  CHECK(max_abs(c.cwiseAbs() - t.cwiseAbs()) <= 1e-10);

  Rng check_rng(9);
  CHECK(verify_q_p_intertwiner(check_rng, 500) <= 1e-12);
}

TEST_CASE("scalar modules: intertwiner solve needs several generic points to be unique") {
  // Three well-separated points; random triples can come out nearly
  // degenerate and shrink the singular value gap below any useful bound.
  const SpherePoint points[] = {SpherePoint::normalized(Vec3(0.2, 0.3, 0.93)),
                                SpherePoint::normalized(Vec3(-0.7, 0.5, 0.2)),
                                SpherePoint::normalized(Vec3(0.4, -0.8, 0.45))};
  std::vector<Eigen::MatrixXcd> a_side;
  std::vector<Eigen::MatrixXcd> b_side;
  for (const SpherePoint& x : points) {
    a_side.push_back(real_projector(x));
    b_side.push_back(grassmann_projector(x));
  }

  const IntertwinerSolution one = solve_intertwiner({a_side[0]}, {b_side[0]});
  CHECK(one.null_residual <= 1e-12);
  CHECK(one.gap <= 1e-8);  // a single projector pair leaves a large solution space

  const IntertwinerSolution three = solve_intertwiner(a_side, b_side);
  CHECK(three.null_residual <= 1e-12);
  CHECK(three.gap >= 1e-1);
  CHECK(max_abs(three.matrix * three.matrix.adjoint() - Mat3c::Identity()) <= 1e-12);

  CHECK_THROWS_AS(solve_intertwiner({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(solve_intertwiner(a_side, {b_side[0]}), std::invalid_argument);
}

TEST_CASE("scalar modules: frame sections span the image of q and reassemble x") {
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const SpherePoint x = rng.sphere_point();
    const Mat3c q = real_projector(x);
    Vec3c sum = Vec3c::Zero();
    for (int idx = 1; idx <= 3; ++idx) {
      const Vec3c e = frame_section(idx, x);
      CHECK((q * e - e).cwiseAbs().maxCoeff() <= 1e-15);
      sum += x.vec()(idx - 1) * e;
    }
    CHECK((sum - x.vec().cast<Complex>()).cwiseAbs().maxCoeff() <= 1e-14);
  }
  CHECK_THROWS_AS(frame_section(0, SpherePoint(0, 0, 1)), std::invalid_argument);
  CHECK_THROWS_AS(frame_section(4, SpherePoint(0, 0, 1)), std::invalid_argument);

  const FrameField field{2};
  const SpherePoint x = rng.sphere_point();
  CHECK((field(x) - frame_section(2, x)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("scalar modules: sampled sections enforce the antipodal pairing") {
  Rng rng(14);
  const SpherePoint x = rng.sphere_point();
  const SpherePoint y = rng.sphere_point();
  const Eigen::VectorXcd v = Eigen::VectorXcd::Ones(2);

  CHECK_THROWS_AS(SampledSection({x}, {v}), PairingError);
  CHECK_THROWS_AS(SampledSection({x, y}, {v, v}), PairingError);
  CHECK_THROWS_AS(SampledSection({x, x.antipode()}, {v}), std::invalid_argument);
  Eigen::VectorXcd w = Eigen::VectorXcd::Ones(3);
  CHECK_THROWS_AS(SampledSection({x, x.antipode()}, {v, w}), std::invalid_argument);

  const SampledSection s({x, x.antipode()}, {v, 2.0 * v});
  CHECK(s.dimension() == 2);
  CHECK(s.size() == 2);
  CHECK(s.pair_count() == 1);
  CHECK(SampledSection::antipode_index(0) == 1);
  CHECK(SampledSection::antipode_index(1) == 0);
  CHECK(SampledSection::antipode_index(6) == 7);
  CHECK(s.max_abs() == 2.0);
}

TEST_CASE("scalar modules: even odd split is exact on the pairs and reconstructs") {
  Rng rng(16);
  const auto base = random_points(rng, 64);
  // A section with both parities mixed in.
  const SampledSection f = SampledSection::from_function(base, 2, [](const SpherePoint& x) {
    Eigen::VectorXcd v(2);
    v(0) = Complex(x.x1() + x.x2() * x.x3(), 0.3);
    v(1) = Complex(x.x3(), x.x1() * x.x1());
    return v;
  });

  const auto [even, odd] = even_odd_split(f);
  CHECK(even_residual(even) == 0.0);
  CHECK(odd_residual(odd) == 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Eigen::VectorXcd back = even.value(i) + odd.value(i);
    CHECK((back - f.value(i)).cwiseAbs().maxCoeff() <= 1e-15 * f.max_abs());
  }

  // Residual conventions: an even section has zero even_residual and an
  // odd_residual of twice its magnitude.
  CHECK(even_residual(f) > 0.0);
  CHECK(odd_residual(f) > 0.0);
}

TEST_CASE("scalar modules: random polynomial sections carry exact parity") {
  Rng rng(18);
  const auto base = random_points(rng, 128);
  for (int trial = 0; trial < 5; ++trial) {
    CHECK(even_residual(random_even_scalar(rng, base)) == 0.0);
    CHECK(odd_residual(random_odd_scalar(rng, base)) == 0.0);
    CHECK(even_residual(random_even_triple(rng, base)) == 0.0);
  }
}

TEST_CASE("scalar modules: module isomorphism round trips both ways") {
  Rng rng(20);
  const auto base = random_points(rng, 256);

  for (int trial = 0; trial < 10; ++trial) {
    const SampledSection g = random_odd_scalar(rng, base);
    const SampledSection back = iso_forward(iso_backward(g));
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      worst = std::max(worst, (back.value(i) - g.value(i)).cwiseAbs().maxCoeff());
    CHECK(worst <= 1e-13 * std::max(1.0, g.max_abs()));

    const SampledSection f = random_even_triple(rng, base);
    const SampledSection round = iso_backward(iso_forward(f));
    worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      // The round trip is the fiberwise projection of f onto the psi line.
      const Eigen::VectorXcd expected = grassmann_projector(f.point(i)) * f.value(i);
      worst = std::max(worst, (round.value(i) - expected).cwiseAbs().maxCoeff());
    }
    CHECK(worst <= 1e-13 * std::max(1.0, f.max_abs()));
  }
}

TEST_CASE("scalar modules: module isomorphism rejects sections of the wrong parity") {
  Rng rng(22);
  const auto base = random_points(rng, 32);

  const SampledSection odd_triple = SampledSection::from_function(base, 3, [](const SpherePoint& x) {
    return Eigen::VectorXcd(x.vec().cast<Complex>());
  });
  CHECK_THROWS_AS(iso_forward(odd_triple), std::invalid_argument);

  const SampledSection even_scalar = random_even_scalar(rng, base);
  CHECK_THROWS_AS(iso_backward(even_scalar), std::invalid_argument);

  // Dimension mismatches are rejected before any parity check.
  const SampledSection scalar = random_odd_scalar(rng, base);
  CHECK_THROWS_AS(iso_forward(scalar), std::invalid_argument);
  const SampledSection triple = random_even_triple(rng, base);
  CHECK_THROWS_AS(iso_backward(triple), std::invalid_argument);
}
