// Acceptance gate for the bundle library: eleven release criteria, each run
// as a self-contained scenario against fixed tolerances.  Prints one verdict
// line per criterion and exits nonzero if any of them fail.

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rp2bundle/connection.hpp"
#include "rp2bundle/equivariant.hpp"
#include "rp2bundle/geometry.hpp"
#include "rp2bundle/scalar_modules.hpp"
#include "rp2bundle/two_spin.hpp"

using namespace rp2bundle;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  std::ostringstream out;
  out << std::scientific << std::setprecision(2) << v;
  return out.str();
}

std::vector<SpherePoint> random_points(Rng& rng, int n) {
  std::vector<SpherePoint> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) pts.push_back(rng.sphere_point());
  return pts;
}

std::pair<Vec3, Vec3> random_circle_frame(Rng& rng) {
  const Vec3 a = rng.sphere_point().vec();
  Vec3 raw = rng.gaussian_vec3();
  raw -= raw.dot(a) * a;
  while (raw.norm() < 1e-6) {
    raw = rng.gaussian_vec3();
    raw -= raw.dot(a) * a;
  }
  return {a, raw.normalized()};
}

DiscretePath circle_curve(const Vec3& a, const Vec3& b, double wobble, double h, int& n_out) {
  const Vec3 c = a.cross(b);
  const int n = std::max(8, static_cast<int>(std::lround(2.0 * M_PI / h)));
  std::vector<SpherePoint> pts;
  pts.reserve(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double t = 2.0 * M_PI * static_cast<double>(k) / n;
    const Vec3 raw = std::cos(t) * a + std::sin(t) * b + wobble * std::sin(2.0 * t) * c;
    pts.push_back(SpherePoint::normalized(raw));
  }
  n_out = n;
  return DiscretePath(std::move(pts), true);
}

double fit_loglog_slope(const std::vector<std::pair<double, double>>& pts) {
  const double n = static_cast<double>(pts.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    const double lx = std::log(x);
    const double ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// 1. Rank-one projector: Hermitian, idempotent, unit trace, antipodally even.
Outcome projector_identities() {
  Rng rng(101);
  const double tol_identity = 1e-13;
  const double tol_antipodal = 1e-14;
  double worst_identity = 0;
  double worst_antipodal = 0;
  for (int i = 0; i < 10000; ++i) {
    const SpherePoint x = rng.sphere_point();
    const Mat3c p = grassmann_projector(x);
    worst_identity = std::max({worst_identity, (p * p - p).norm(), (p - p.adjoint()).norm(),
                               std::abs(p.trace() - Complex(1.0))});
    worst_antipodal = std::max(worst_antipodal, (grassmann_projector(x.antipode()) - p).norm());
  }
  const bool pass = worst_identity <= tol_identity && worst_antipodal <= tol_antipodal;
  return {pass, "identities=" + num(worst_identity) + " (tol " + num(tol_identity) +
                    "), antipodal=" + num(worst_antipodal) + " (tol " + num(tol_antipodal) + ")"};
}

// 2. Module isomorphism: round trips on 100 random band-limited sections
// sampled at 1000 paired points.
Outcome module_iso_roundtrips() {
  Rng rng(102);
  const double tol = 1e-12;
  const auto base = random_points(rng, 500);
  double worst = 0;
  for (int s = 0; s < 50; ++s) {
    const SampledSection g = random_odd_scalar(rng, base);
    const SampledSection g2 = iso_forward(iso_backward(g));
    for (std::size_t i = 0; i < g.size(); ++i)
      worst = std::max(worst, std::abs(g2.value(i)(0) - g.value(i)(0)));

    const SampledSection f = random_even_triple(rng, base);
    const SampledSection f2 = iso_backward(iso_forward(f));
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Vec3c expected = grassmann_projector(f.point(i)) * Vec3c(f.value(i));
      worst = std::max(worst, (Vec3c(f2.value(i)) - expected).norm());
    }
  }
  return {worst <= tol, "roundtrip=" + num(worst) + " (tol " + num(tol) + ", 100 sections)"};
}

// 3. The unit section intertwines rotations with the spin-1 matrices.
Outcome rotation_equivariance() {
  Rng rng(103);
  const double tol = 1e-12;
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const SU2Element g = haar_sample(rng);
    const SpherePoint x = rng.sphere_point();
    worst = std::max(worst, (wigner_d1(g) * psi(x) - psi(rotate(g, x))).norm());
  }
  return {worst <= tol, "equivariance=" + num(worst) + " (tol " + num(tol) + ", 1000 draws)"};
}

// 4. Curvature plaquettes: flat phase per area for both scalar fields, with
// at least a factor-2 drop per radius halving, against a curved control.
Outcome curvature_plaquettes() {
  Rng rng(104);
  const double tol_flat = 1e-2;
  const double tol_control = 0.05;
  const double floor = 1e-12;
  const int n = 2000;
  const std::vector<SpherePoint> centers = {SpherePoint(Vec3(0, 0, 1)), rng.sphere_point(),
                                            rng.sphere_point()};
  double worst_flat = 0;
  double worst_decay = 0;
  for (const ProjectorField& field : {tautological_field(), grassmann_field()})
    for (const auto& center : centers) {
      const double coarse = std::abs(curvature_probe(center, 0.05, field, n).phase_per_area);
      const double fine = std::abs(curvature_probe(center, 0.025, field, n).phase_per_area);
      worst_flat = std::max(worst_flat, coarse);
      if (!(coarse <= floor && fine <= floor))
        worst_decay = std::max(worst_decay, fine - coarse / 2.0);
    }
  const double control =
      std::abs(curvature_probe(SpherePoint(Vec3(0, 0, 1)), 0.05, bloch_field(), n).phase_per_area);
  const double control_gap = std::abs(control - 0.5);
  const bool pass = worst_flat <= tol_flat && worst_decay <= 0.0 && control_gap <= tol_control;
  return {pass, "plaquette=" + num(worst_flat) + " (tol " + num(tol_flat) +
                    "), decay_excess=" + num(worst_decay) + ", control_gap=" + num(control_gap) +
                    " (tol " + num(tol_control) + ")"};
}

// 5. Loop holonomy: -1 on the generator loop, +1 on a contractible loop, and
// a convergence slope of at least first order unless already at the floor.
Outcome loop_holonomy() {
  const double tol_phase = 5e-3;
  const double floor = 1e-12;
  const int n = 10000;
  const DiscretePath generator = half_great_circle(SpherePoint(0, 0, 1), Vec3(1, 0, 0), n);
  const DiscretePath contractible = small_circle(Vec3(0, 0, 1), 0.1, n);
  double worst_generator = 0;
  double worst_contractible = 0;
  for (const ProjectorField& field : {tautological_field(), grassmann_field()}) {
    worst_generator = std::max(worst_generator, std::abs(holonomy(generator, field) - Complex(-1.0)));
    worst_contractible =
        std::max(worst_contractible, std::abs(holonomy(contractible, field) - Complex(1.0)));
  }

  std::vector<std::pair<double, double>> above;
  for (int steps : {100, 1000, 10000}) {
    const DiscretePath loop = half_great_circle(SpherePoint(0, 0, 1), Vec3(1, 0, 0), steps);
    const double err = std::abs(holonomy(loop, tautological_field()) - Complex(-1.0));
    if (err > floor) above.push_back({static_cast<double>(steps), err});
  }
  const bool slope_ok = above.size() < 2 || fit_loglog_slope(above) <= -0.9;
  const std::string slope_note =
      above.size() < 2 ? "slope=at-floor" : "slope=" + num(fit_loglog_slope(above));
  const bool pass = worst_generator <= tol_phase && worst_contractible <= tol_phase && slope_ok;
  return {pass, "generator=" + num(worst_generator) + ", contractible=" + num(worst_contractible) +
                    " (tol " + num(tol_phase) + "), " + slope_note};
}

// 6. Orbit transport: the comoving frame section is parallel along rotation
// orbits, decays at second order, and beats the frozen-frame control.
Outcome orbit_transport() {
  Rng rng(106);
  const double tol = 1e-5;
  const double floor = 1e-9;
  const int n = 1000;
  double worst = orbit_transport_check(Vec3(1, 0, 0), M_PI, SpherePoint(Vec3(0, 0, 1)), n);
  const double reference = worst;
  for (int i = 0; i < 2; ++i)
    worst = std::max(worst, orbit_transport_check(rng.sphere_point().vec(), M_PI,
                                                  rng.sphere_point(), n));
  const double fine =
      orbit_transport_check(Vec3(1, 0, 0), M_PI, SpherePoint(Vec3(0, 0, 1)), 2 * n);
  const bool decay_ok = (reference <= floor && fine <= floor) || fine <= reference / 3.0;
  const double control =
      orbit_transport_fixed_frame_control(Vec3(1, 0, 0), M_PI, SpherePoint(Vec3(0, 0, 1)), n);
  const bool control_ok = control >= 1000.0 * reference;
  const bool pass = worst <= tol && decay_ok && control_ok;
  return {pass, "residual=" + num(worst) + " (tol " + num(tol) + "), halved_step=" + num(fine) +
                    ", control_ratio=" + num(reference > 0 ? control / reference : INFINITY)};
}

// 7. Two-spin bundle: rotation profile unitary, transported basis
// orthonormal with the exchange signs, the closed-form triplet projector,
// and one constant unitary matching it to the scalar projector.
Outcome two_spin_suite() {
  Rng rng(107);
  const double tol_unitary = 1e-13;
  const double tol_orthonormal = 1e-12;
  const double tol_exchange = 1e-13;
  const double tol_printed = 1e-13;
  const double tol_match = 1e-12;
  const Complex iu(0.0, 1.0);
  double worst_unitary = 0;
  double worst_orthonormal = 0;
  double worst_exchange = 0;
  double worst_printed = 0;
  for (int i = 0; i < 10000; ++i) {
    const SpherePoint x = rng.sphere_point();
    const SphericalAngles ang = to_spherical(x);
    const Mat3c w = w_matrix(ang.theta, ang.phi);
    worst_unitary = std::max(worst_unitary, (w.adjoint() * w - Mat3c::Identity()).norm());

    const TransportedBasis here = transported_basis(x);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const Complex g = here.vectors[a].dot(here.vectors[b]);
        worst_orthonormal =
            std::max(worst_orthonormal, std::abs(g - (a == b ? Complex(1.0) : Complex(0.0))));
      }

    const TransportedBasis there = transported_basis(x.antipode());
    for (int a = 0; a < 3; ++a)
      worst_exchange = std::max(worst_exchange, (there.vectors[a] + here.vectors[a]).norm());
    worst_exchange = std::max(worst_exchange, (there.vectors[3] - here.vectors[3]).norm());

    const double st = std::sin(ang.theta);
    const double ct = std::cos(ang.theta);
    const Complex ep = std::exp(iu * ang.phi);
    const Complex em = std::exp(-iu * ang.phi);
    Mat3c closed_form;
    closed_form(0, 0) = 0.5 * st * st;
    closed_form(0, 1) = -st * ct * em / std::sqrt(2.0);
    closed_form(0, 2) = -0.5 * st * st * em * em;
    closed_form(1, 0) = -st * ct * ep / std::sqrt(2.0);
    closed_form(1, 1) = ct * ct;
    closed_form(1, 2) = st * ct * em / std::sqrt(2.0);
    closed_form(2, 0) = -0.5 * st * st * ep * ep;
    closed_form(2, 1) = st * ct * ep / std::sqrt(2.0);
    closed_form(2, 2) = 0.5 * st * st;
    worst_printed = std::max(worst_printed, (triplet_projector(x) - closed_form).norm());
  }
  const double worst_match = verify_basis_match(rng, 10000);
  const bool pass = worst_unitary <= tol_unitary && worst_orthonormal <= tol_orthonormal &&
                    worst_exchange <= tol_exchange && worst_printed <= tol_printed &&
                    worst_match <= tol_match;
  return {pass, "unitary=" + num(worst_unitary) + ", orthonormal=" + num(worst_orthonormal) +
                    ", exchange=" + num(worst_exchange) + ", closed_form=" + num(worst_printed) +
                    ", constant_match=" + num(worst_match)};
}

// 8. Transport tangency: the transported basis has vanishing tangential
// derivative along great circles, with second-order decay on a bent curve.
Outcome transport_tangency() {
  Rng rng(108);
  const double tol = 1e-6;
  const double floor = 1e-9;
  double worst = 0;
  for (int k = 0; k < 3; ++k) {
    const auto [a, b] = random_circle_frame(rng);
    int n = 0;
    const DiscretePath curve = circle_curve(a, b, 0.0, 1e-4, n);
    worst = std::max(worst, pt_condition_residual(curve, 2.0 * M_PI / n));
  }
  const auto [a, b] = random_circle_frame(rng);
  int n1 = 0, n2 = 0;
  const DiscretePath coarse_curve = circle_curve(a, b, 0.3, 1e-3, n1);
  const DiscretePath fine_curve = circle_curve(a, b, 0.3, 5e-4, n2);
  const double coarse = pt_condition_residual(coarse_curve, 2.0 * M_PI / n1);
  const double fine = pt_condition_residual(fine_curve, 2.0 * M_PI / n2);
  const bool decay_ok = (coarse <= floor && fine <= floor) || fine <= coarse / 3.0;
  const bool pass = worst <= tol && decay_ok;
  return {pass, "great_circles=" + num(worst) + " (tol " + num(tol) + "), bent_curve=" +
                    num(coarse) + " -> " + num(fine) + " per halving"};
}

// 9. Spin operators: zero on the scalar line bundle, the transported-frame
// matrices on the two-spin bundle, and the su(2) algebra with its Casimir.
Outcome spin_operators() {
  Rng rng(109);
  const double tol_scalar = 1e-4;
  const double tol_match = 5e-4;
  const double tol_algebra = 1e-12;
  const std::vector<double> ts = {1e-3, 5e-4};
  const Complex iu(0.0, 1.0);

  const ProjectorField scalar_field = tautological_field();
  const ActionField scalar_action = [](const SU2Element& g) {
    return Eigen::MatrixXcd(g.rotation_matrix().cast<Complex>());
  };
  double worst_scalar = 0;
  for (const SpherePoint& x :
       {SpherePoint(Vec3(0, 0, 1)), rng.sphere_point(), rng.sphere_point()})
    for (int axis = 1; axis <= 3; ++axis) {
      const std::vector<Eigen::VectorXcd> basis = {fiber_basis_vector(scalar_field, x)};
      worst_scalar = std::max(
          worst_scalar, local_spin_operator(scalar_field, scalar_action, basis, axis, x, ts).norm());
    }

  const ProjectorField pair_field = [](const SpherePoint& x) { return two_spin_projector(x); };
  const ActionField pair_action = [](const SU2Element& g) { return two_spin_action(g); };
  double worst_match = 0;
  for (const SpherePoint& x : {SpherePoint(Vec3(0, 0, 1)), rng.sphere_point()}) {
    const TransportedBasis tb = transported_basis(x);
    const std::vector<Eigen::VectorXcd> basis(tb.vectors.begin(), tb.vectors.end());
    for (int axis = 1; axis <= 3; ++axis) {
      const Eigen::MatrixXcd m = local_spin_operator(pair_field, pair_action, basis, axis, x, ts);
      worst_match = std::max(worst_match, (m - Eigen::MatrixXcd(spin_operator_field(axis, x))).norm());
    }
  }

  const SpherePoint x = rng.sphere_point();
  const Eigen::Matrix4cd s1 = spin_operator_field(1, x);
  const Eigen::Matrix4cd s2 = spin_operator_field(2, x);
  const Eigen::Matrix4cd s3 = spin_operator_field(3, x);
  Eigen::Matrix4cd casimir_ref = Eigen::Matrix4cd::Zero();
  casimir_ref.topLeftCorner<3, 3>() = 2.0 * Mat3c::Identity();
  double worst_algebra = 0;
  worst_algebra = std::max(worst_algebra, (s1 * s2 - s2 * s1 - iu * s3).norm());
  worst_algebra = std::max(worst_algebra, (s2 * s3 - s3 * s2 - iu * s1).norm());
  worst_algebra = std::max(worst_algebra, (s3 * s1 - s1 * s3 - iu * s2).norm());
  worst_algebra = std::max(worst_algebra, (s1 * s1 + s2 * s2 + s3 * s3 - casimir_ref).norm());

  const bool pass =
      worst_scalar <= tol_scalar && worst_match <= tol_match && worst_algebra <= tol_algebra;
  return {pass, "scalar=" + num(worst_scalar) + " (tol " + num(tol_scalar) + "), frame_match=" +
                    num(worst_match) + " (tol " + num(tol_match) + "), algebra=" +
                    num(worst_algebra) + " (tol " + num(tol_algebra) + ")"};
}

// 10. Singlevaluedness audit: invariant sections descend when the lift
// parity matches the action parity and flip exactly when it is off by one.
Outcome singlevaluedness_flip() {
  Rng rng(110);
  const double tol = 1e-13;
  double worst_single = 0;
  double worst_anti = 0;
  bool verdicts_ok = true;
  for (int trial = 0; trial < 20; ++trial) {
    const int k_tilde = trial % 2;
    Z2ActionSpec action;
    action.k_tilde = k_tilde;
    const auto base = random_points(rng, 64);
    std::vector<SpherePoint> pts;
    std::vector<Eigen::VectorXcd> vals;
    for (const auto& x : base)
      for (const SpherePoint& p : {x, x.antipode()}) {
        pts.push_back(p);
        Eigen::VectorXcd v(4);
        for (int c = 0; c < 4; ++c) v(c) = Complex(rng.gaussian(), rng.gaussian());
        vals.push_back(std::move(v));
      }
    const SpinSection section =
        invariant_part(action, SpinSection(SampledSection(std::move(pts), std::move(vals))));

    const SinglevaluednessReport matched = singlevaluedness_audit(k_tilde, k_tilde, section);
    const SinglevaluednessReport flipped = singlevaluedness_audit(k_tilde + 1, k_tilde, section);
    worst_single = std::max(worst_single, matched.single_residual);
    worst_anti = std::max(worst_anti, flipped.anti_residual);
    verdicts_ok = verdicts_ok && matched.verdict == "singlevalued" &&
                  flipped.verdict == "antivalued";
  }
  const bool pass = worst_single <= tol && worst_anti <= tol && verdicts_ok;
  return {pass, "matched=" + num(worst_single) + ", shifted=" + num(worst_anti) + " (tol " +
                    num(tol) + "), verdicts " + (verdicts_ok ? "flip" : "WRONG")};
}

int run_command(const std::string& cmd) {
  const int rc = std::system(cmd.c_str());
  if (rc == -1 || !WIFEXITED(rc)) return -1;
  return WEXITSTATUS(rc);
}

// 11. Verifier front end: two seeded runs agree byte for byte once timing
// fields are cleared, and the exit code tracks the pass/fail verdict.
Outcome verifier_determinism() {
  const std::string bin = RP2BUNDLE_VERIFY_BIN;
  const std::filesystem::path dir = std::filesystem::temp_directory_path();
  const std::string path_a = (dir / "rp2bundle_accept_a.json").string();
  const std::string path_b = (dir / "rp2bundle_accept_b.json").string();
  const std::string path_c = (dir / "rp2bundle_accept_fail.json").string();

  const std::string base = "\"" + bin + "\" verify all --seed 42 --out ";
  const int exit_a = run_command(base + "\"" + path_a + "\"");
  const int exit_b = run_command(base + "\"" + path_b + "\"");
  const int exit_fail =
      run_command("\"" + bin + "\" verify projector --seed 42 --tol psi-unit-norm=1e-30 --out \"" +
                  path_c + "\"");

  bool identical = false;
  std::string parse_note;
  try {
    std::ifstream in_a(path_a);
    std::ifstream in_b(path_b);
    nlohmann::json a, b;
    in_a >> a;
    in_b >> b;
    for (auto& check : a.at("checks")) check["wall_time_ms"] = 0;
    for (auto& check : b.at("checks")) check["wall_time_ms"] = 0;
    identical = a == b;
  } catch (const std::exception& e) {
    parse_note = std::string(", report parse failed: ") + e.what();
  }

  std::error_code ec;
  std::filesystem::remove(path_a, ec);
  std::filesystem::remove(path_b, ec);
  std::filesystem::remove(path_c, ec);

  const bool pass = exit_a == 0 && exit_b == 0 && identical && exit_fail == 1;
  return {pass, "exit_codes=" + std::to_string(exit_a) + "/" + std::to_string(exit_b) +
                    ", reports_identical=" + (identical ? "yes" : "no") +
                    ", forced_fail_exit=" + std::to_string(exit_fail) + parse_note};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"rank-one projector identities", projector_identities},
      {"module isomorphism round trips", module_iso_roundtrips},
      {"rotation equivariance", rotation_equivariance},
      {"curvature plaquettes", curvature_plaquettes},
      {"loop holonomy", loop_holonomy},
      {"orbit transport", orbit_transport},
      {"two-spin transported basis", two_spin_suite},
      {"transport tangency", transport_tangency},
      {"local spin operators", spin_operators},
      {"singlevaluedness audit", singlevaluedness_flip},
      {"verifier determinism", verifier_determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::cout << "criterion " << std::setw(2) << (i + 1) << " "
              << (outcome.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
              << outcome.detail << "\n";
  }
  std::cout << (failures == 0 ? "acceptance: all criteria passed"
                              : "acceptance: " + std::to_string(failures) + " criterion(s) failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
