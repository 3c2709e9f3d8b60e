#include "rp2bundle/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "rp2bundle/connection.hpp"
#include "rp2bundle/equivariant.hpp"
#include "rp2bundle/geometry.hpp"
#include "rp2bundle/scalar_modules.hpp"
#include "rp2bundle/two_spin.hpp"

namespace rp2bundle {

void RunConfig::validate() const {
  if (grid_n < 1) throw std::invalid_argument("config: grid_n must be at least 1");
  if (path_steps < 2) throw std::invalid_argument("config: path_steps must be at least 2");
  for (const auto& [name, tol] : tol_overrides)
    if (!(tol > 0.0)) throw std::invalid_argument("config: tolerance for " + name + " must be > 0");
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

std::vector<SpherePoint> random_points(Rng& rng, int n) {
  std::vector<SpherePoint> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) pts.push_back(rng.sphere_point());
  return pts;
}

SampledSection add_sections(const SampledSection& a, const SampledSection& b) {
  std::vector<SpherePoint> pts(a.points());
  std::vector<Eigen::VectorXcd> vals(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) vals[i] = a.value(i) + b.value(i);
  return SampledSection(std::move(pts), std::move(vals));
}

// Orthonormal pair spanning a random great circle.
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

DiscretePath great_circle_curve(const Vec3& a, const Vec3& b, double h, int& n_out) {
  const int n = std::max(8, static_cast<int>(std::lround(2.0 * M_PI / h)));
  std::vector<SpherePoint> pts;
  pts.reserve(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double t = 2.0 * M_PI * static_cast<double>(k) / n;
    pts.push_back(SpherePoint::normalized(std::cos(t) * a + std::sin(t) * b));
  }
  n_out = n;
  return DiscretePath(std::move(pts), true);
}

// Closed non-circular curve; the central-difference transport condition is
// genuinely second order here, unlike on circles where the chord is exactly
// tangent.
DiscretePath wobble_curve(const Vec3& a, const Vec3& b, double h, int& n_out) {
  const Vec3 c = a.cross(b);
  const int n = std::max(8, static_cast<int>(std::lround(2.0 * M_PI / h)));
  std::vector<SpherePoint> pts;
  pts.reserve(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double t = 2.0 * M_PI * static_cast<double>(k) / n;
    const Vec3 raw = std::cos(t) * a + std::sin(t) * b + 0.3 * std::sin(2.0 * t) * c;
    pts.push_back(SpherePoint::normalized(raw));
  }
  n_out = n;
  return DiscretePath(std::move(pts), true);
}

double holonomy_error(const std::string& check, int n_steps, Complex* phase_out) {
  const ProjectorField field = tautological_field();
  if (check == "rp2-generator-holonomy") {
    const DiscretePath loop = half_great_circle(SpherePoint(0, 0, 1), Vec3(1, 0, 0), n_steps);
    const Complex phase = holonomy(loop, field);
    if (phase_out) *phase_out = phase;
    return std::abs(phase - Complex(-1.0));
  }
  if (check == "contractible-loop-holonomy") {
    const DiscretePath loop = small_circle(Vec3(0, 0, 1), 0.1, n_steps);
    const Complex phase = holonomy(loop, field);
    if (phase_out) *phase_out = phase;
    return std::abs(phase - Complex(1.0));
  }
  throw std::invalid_argument("unknown holonomy check " + check);
}

double fit_loglog_slope(const std::vector<std::pair<double, double>>& pts) {
  // Least-squares slope of log(error) against log(resolution).
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

// A decay demand expressed as a residual: zero when the fine error is at or
// below the coarse error divided by `factor`, or when both sit at the noise
// floor; positive (the excess) otherwise.
double decay_deficiency(double coarse, double fine, double factor, double floor) {
  if (coarse <= floor && fine <= floor) return 0.0;
  return std::max(0.0, fine - coarse / factor);
}

using CheckFn = std::function<void(const RunConfig&, Rng&, CheckReport&)>;

struct CheckDef {
  std::string name;
  std::string suite;
  double default_tol;
  CheckFn fn;
};

SampledSection random_section4(Rng& rng, const std::vector<SpherePoint>& base) {
  std::vector<SpherePoint> pts;
  std::vector<Eigen::VectorXcd> vals;
  for (const auto& x : base) {
    for (const SpherePoint& p : {x, x.antipode()}) {
      pts.push_back(p);
      Eigen::VectorXcd v(4);
      for (int c = 0; c < 4; ++c) v(c) = Complex(rng.gaussian(), rng.gaussian());
      vals.push_back(std::move(v));
    }
  }
  return SampledSection(std::move(pts), std::move(vals));
}

// Assembles a 4-component section from per-component scalar sections sharing
// one sample set.
SampledSection zip_components(const std::array<SampledSection, 4>& parts) {
  std::vector<SpherePoint> pts(parts[0].points());
  std::vector<Eigen::VectorXcd> vals(parts[0].size());
  for (std::size_t i = 0; i < parts[0].size(); ++i) {
    Eigen::VectorXcd v(4);
    for (int c = 0; c < 4; ++c) v(c) = parts[c].value(i)(0);
    vals[i] = std::move(v);
  }
  return SampledSection(std::move(pts), std::move(vals));
}

const std::vector<CheckDef>& registry() {
  static const std::vector<CheckDef> defs = [] {
    std::vector<CheckDef> v;

    // ---- projector suite ----
    v.push_back({"psi-unit-norm", "projector", 1e-14, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      double worst = 0;
      for (int i = 0; i < c.grid_n; ++i)
        worst = std::max(worst, std::abs(psi(rng.sphere_point()).norm() - 1.0));
      r.n_samples = c.grid_n;
      r.max_residual = worst;
    }});
    v.push_back({"psi-odd", "projector", 1e-14, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      double worst = 0;
      for (int i = 0; i < c.grid_n; ++i) {
        const SpherePoint x = rng.sphere_point();
        worst = std::max(worst, (psi(x.antipode()) + psi(x)).norm());
      }
      r.n_samples = c.grid_n;
      r.max_residual = worst;
    }});
    v.push_back({"projector-identities", "projector", 1e-13, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      double worst = 0;
      for (int i = 0; i < c.grid_n; ++i) {
        const Mat3c p = grassmann_projector(rng.sphere_point());
        worst = std::max({worst, (p * p - p).norm(), (p - p.adjoint()).norm(),
                          std::abs(p.trace() - Complex(1.0))});
      }
      r.n_samples = c.grid_n;
      r.max_residual = worst;
    }});
    v.push_back({"projector-antipodal", "projector", 1e-14, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      double worst = 0;
      for (int i = 0; i < c.grid_n; ++i) {
        const SpherePoint x = rng.sphere_point();
        worst = std::max(worst, (grassmann_projector(x.antipode()) - grassmann_projector(x)).norm());
      }
      r.n_samples = c.grid_n;
      r.max_residual = worst;
    }});
    v.push_back({"real-projector-identities", "projector", 1e-13, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      double worst = 0;
      for (int i = 0; i < c.grid_n; ++i) {
        const Mat3c q = real_projector(rng.sphere_point());
        worst = std::max({worst, (q * q - q).norm(), (q - q.transpose()).norm(),
                          std::abs(q.trace() - Complex(1.0)), q.imag().norm()});
      }
      r.n_samples = c.grid_n;
      r.max_residual = worst;
    }});
    v.push_back({"projector-intertwiner", "projector", 1e-12, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      r.max_residual = verify_q_p_intertwiner(rng, c.grid_n);
      r.n_samples = c.grid_n;
    }});
    v.push_back({"u-matrix-unitary", "projector", 1e-15, [](const RunConfig&, Rng&, CheckReport& r) {
      const Mat3c u = u_matrix();
      r.max_residual = (u.adjoint() * u - Mat3c::Identity()).norm();
      r.n_samples = 1;
    }});
    v.push_back({"u-tilde-real-sign", "projector", 1e-13, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      const Mat3 d = u_tilde_sign_matrix();
      double worst = 0;
      for (int i = 0; i < c.grid_n; ++i) {
        const SpherePoint x = rng.sphere_point();
        const Mat3c pt = u_tilde_projector(x);
        worst = std::max({worst, pt.imag().norm(),
                          (pt - Mat3c(d * real_projector(x).real() * d)).norm()});
      }
      r.n_samples = c.grid_n;
      r.max_residual = worst;
    }});

    // ---- module-iso suite ----
    v.push_back({"even-odd-split", "module-iso", 1e-14, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      const auto base = random_points(rng, std::max(1, c.grid_n / 2));
      const SampledSection f =
          add_sections(random_even_scalar(rng, base), random_odd_scalar(rng, base));
      const auto [fe, fo] = even_odd_split(f);
      double worst = std::max(even_residual(fe), odd_residual(fo));
      for (std::size_t i = 0; i < f.size(); ++i)
        worst = std::max(worst,
                         (f.value(i) - fe.value(i) - fo.value(i)).cwiseAbs().maxCoeff());
      const auto [fee, feo] = even_odd_split(fe);
      const auto [foe, foo] = even_odd_split(fo);
      for (std::size_t i = 0; i < f.size(); ++i)
        worst = std::max({worst, (fe.value(i) - fee.value(i)).cwiseAbs().maxCoeff(),
                          feo.value(i).cwiseAbs().maxCoeff(),
                          foe.value(i).cwiseAbs().maxCoeff(),
                          (fo.value(i) - foo.value(i)).cwiseAbs().maxCoeff()});
      r.n_samples = static_cast<long>(f.size());
      r.max_residual = worst;
    }});
    v.push_back({"iso-roundtrip-odd", "module-iso", 1e-13, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      const int sections = 100;
      const auto base = random_points(rng, std::max(1, c.grid_n / 2));
      double worst = 0;
      for (int s = 0; s < sections; ++s) {
        const SampledSection g = random_odd_scalar(rng, base);
        const SampledSection g2 = iso_forward(iso_backward(g));
        for (std::size_t i = 0; i < g.size(); ++i)
          worst = std::max(worst, std::abs(g2.value(i)(0) - g.value(i)(0)));
      }
      r.n_samples = static_cast<long>(sections) * static_cast<long>(2 * base.size());
      r.params["sections"] = std::to_string(sections);
      r.max_residual = worst;
    }});
    v.push_back({"iso-roundtrip-even", "module-iso", 1e-12, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      const int sections = 100;
      const auto base = random_points(rng, std::max(1, c.grid_n / 2));
      double worst = 0;
      for (int s = 0; s < sections; ++s) {
        const SampledSection f = random_even_triple(rng, base);
        const SampledSection f2 = iso_backward(iso_forward(f));
        for (std::size_t i = 0; i < f.size(); ++i) {
          const Vec3c expected = grassmann_projector(f.point(i)) * Vec3c(f.value(i));
          worst = std::max(worst, (Vec3c(f2.value(i)) - expected).norm());
        }
      }
      r.n_samples = static_cast<long>(sections) * static_cast<long>(2 * base.size());
      r.params["sections"] = std::to_string(sections);
      r.max_residual = worst;
    }});
    v.push_back({"iso-module-linearity", "module-iso", 1e-14, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      const auto base = random_points(rng, std::max(1, c.grid_n / 2));
      const SampledSection h = random_even_scalar(rng, base);
      const SampledSection f = random_even_triple(rng, base);
      std::vector<SpherePoint> pts(f.points());
      std::vector<Eigen::VectorXcd> vals(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) vals[i] = h.value(i)(0) * f.value(i);
      const SampledSection hf(std::move(pts), std::move(vals));
      const SampledSection lhs = iso_forward(hf);
      const SampledSection g = iso_forward(f);
      double worst = 0;
      for (std::size_t i = 0; i < f.size(); ++i)
        worst = std::max(worst, std::abs(lhs.value(i)(0) - h.value(i)(0) * g.value(i)(0)));
      r.n_samples = static_cast<long>(f.size());
      r.max_residual = worst;
    }});

    // ---- equivariance suite ----
    v.push_back({"wigner-unitarity", "equivariance", 1e-12, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      double worst = 0;
      for (int i = 0; i < c.grid_n; ++i) {
        const Mat3c d = wigner_d1(haar_sample(rng));
        worst = std::max(worst, (d.adjoint() * d - Mat3c::Identity()).norm());
      }
      r.n_samples = c.grid_n;
      r.max_residual = worst;
    }});
    v.push_back({"wigner-multiplicativity", "equivariance", 1e-10, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      double worst = 0;
      for (int i = 0; i < c.grid_n; ++i) {
        const SU2Element g = haar_sample(rng);
        const SU2Element h = haar_sample(rng);
        worst = std::max(worst, (wigner_d1(g * h) - wigner_d1(g) * wigner_d1(h)).norm());
        worst = std::max(worst,
                         (wigner_d1(g) * wigner_d1(g.inverse()) - Mat3c::Identity()).norm());
      }
      r.n_samples = c.grid_n;
      r.max_residual = worst;
    }});
    v.push_back({"psi-equivariance", "equivariance", 1e-12, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      double worst = 0;
      for (int i = 0; i < c.grid_n; ++i) {
        const SU2Element g = haar_sample(rng);
        const SpherePoint x = rng.sphere_point();
        worst = std::max(worst, (wigner_d1(g) * psi(x) - psi(rotate(g, x))).norm());
      }
      r.n_samples = c.grid_n;
      r.max_residual = worst;
    }});
    v.push_back({"projector-equivariance", "equivariance", 1e-12, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      double worst = 0;
      for (int i = 0; i < c.grid_n; ++i) {
        const SU2Element g = haar_sample(rng);
        const SpherePoint x = rng.sphere_point();
        const Mat3c d = wigner_d1(g);
        worst = std::max(
            worst, (d * grassmann_projector(x) * d.adjoint() - grassmann_projector(rotate(g, x)))
                       .norm());
      }
      r.n_samples = c.grid_n;
      r.max_residual = worst;
    }});

    // ---- flatness suite ----
    v.push_back({"plaquette-flatness", "flatness", 1e-2, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      const int n = std::max(8, c.path_steps / 2);
      const double rho = 0.05;
      const std::vector<SpherePoint> centers = {SpherePoint(Vec3(0, 0, 1)), rng.sphere_point(),
                                                rng.sphere_point()};
      double worst = 0;
      int probes = 0;
      for (const ProjectorField& field : {tautological_field(), grassmann_field()})
        for (const auto& center : centers) {
          worst = std::max(worst, std::abs(curvature_probe(center, rho, field, n).phase_per_area));
          ++probes;
        }
      r.n_samples = probes;
      r.params["rho"] = fmt(rho);
      r.params["n_steps"] = std::to_string(n);
      r.max_residual = worst;
    }});
    v.push_back({"flatness-radius-decay", "flatness", 1e-9, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      const int n = std::max(8, c.path_steps / 2);
      const double rho = 0.05;
      const double floor = 1e-12;
      const std::vector<SpherePoint> centers = {SpherePoint(Vec3(0, 0, 1)), rng.sphere_point()};
      double worst = 0;
      double coarse_max = 0, fine_max = 0;
      for (const ProjectorField& field : {tautological_field(), grassmann_field()})
        for (const auto& center : centers) {
          const double coarse = std::abs(curvature_probe(center, rho, field, n).phase_per_area);
          const double fine =
              std::abs(curvature_probe(center, rho / 2.0, field, n).phase_per_area);
          coarse_max = std::max(coarse_max, coarse);
          fine_max = std::max(fine_max, fine);
          worst = std::max(worst, decay_deficiency(coarse, fine, 2.0, floor));
        }
      r.n_samples = 8;
      r.params["rho"] = fmt(rho);
      r.params["floor"] = fmt(floor);
      r.params["max_abs_phase_per_area_coarse"] = fmt(coarse_max);
      r.params["max_abs_phase_per_area_fine"] = fmt(fine_max);
      r.max_residual = worst;
    }});
    v.push_back({"bloch-monopole-control", "flatness", 0.05, [](const RunConfig& c, Rng&, CheckReport& r) {
      const int n = std::max(8, c.path_steps / 2);
      const CurvatureProbe probe = curvature_probe(SpherePoint(Vec3(0, 0, 1)), 0.05, bloch_field(), n);
      r.n_samples = 1;
      r.params["rho"] = fmt(probe.angular_radius);
      r.params["n_steps"] = std::to_string(n);
      r.params["phase_per_area"] = fmt(probe.phase_per_area);
      r.max_residual = std::abs(std::abs(probe.phase_per_area) - 0.5);
    }});

    // ---- holonomy suite ----
    v.push_back({"rp2-generator-holonomy", "holonomy", 5e-3, [](const RunConfig& c, Rng&, CheckReport& r) {
      const int n = std::max(8, c.path_steps);
      const DiscretePath loop = half_great_circle(SpherePoint(0, 0, 1), Vec3(1, 0, 0), n);
      double worst = 0;
      for (const ProjectorField& field : {tautological_field(), grassmann_field()}) {
        const Complex phase = holonomy(loop, field);
        worst = std::max(worst, std::abs(phase - Complex(-1.0)));
      }
      r.n_samples = n;
      r.params["expected"] = "-1";
      r.max_residual = worst;
    }});
    v.push_back({"contractible-loop-holonomy", "holonomy", 5e-3, [](const RunConfig& c, Rng&, CheckReport& r) {
      const int n = std::max(8, c.path_steps);
      const DiscretePath loop = small_circle(Vec3(0, 0, 1), 0.1, n);
      double worst = 0;
      for (const ProjectorField& field : {tautological_field(), grassmann_field()})
        worst = std::max(worst, std::abs(holonomy(loop, field) - Complex(1.0)));
      r.n_samples = n;
      r.params["expected"] = "+1";
      r.params["rho"] = fmt(0.1);
      r.max_residual = worst;
    }});
    v.push_back({"double-cover-loop-holonomy", "holonomy", 1e-2, [](const RunConfig& c, Rng&, CheckReport& r) {
      const int n = std::max(16, c.path_steps);
      const DiscretePath loop =
          orbit_path(Vec3(1, 0, 0), 2.0 * M_PI, SpherePoint(Vec3(0, 0, 1)), n);
      double worst = 0;
      for (const ProjectorField& field : {tautological_field(), grassmann_field()})
        worst = std::max(worst, std::abs(holonomy(loop, field) - Complex(1.0)));
      r.n_samples = n;
      r.params["expected"] = "+1";
      r.max_residual = worst;
    }});
    v.push_back({"holonomy-reversal", "holonomy", 1e-10, [](const RunConfig& c, Rng&, CheckReport& r) {
      const int n = std::max(8, c.path_steps);
      const DiscretePath loop = half_great_circle(SpherePoint(0, 0, 1), Vec3(1, 0, 0), n);
      const DiscretePath back = reversed(loop);
      double worst = 0;
      for (const ProjectorField& field : {tautological_field(), grassmann_field()}) {
        const Complex fwd = holonomy(loop, field);
        const Complex rev = holonomy(back, field);
        worst = std::max(worst, std::abs(fwd * std::conj(rev) - Complex(1.0)));
      }
      r.n_samples = n;
      r.max_residual = worst;
    }});
    v.push_back({"holonomy-convergence", "holonomy", 1e-9, [](const RunConfig&, Rng&, CheckReport& r) {
      const std::vector<int> ns = {100, 1000, 10000};
      const double floor = 1e-12;
      std::vector<std::pair<double, double>> above;
      bool all_at_floor = true;
      for (std::size_t i = 0; i < ns.size(); ++i) {
        const double err = holonomy_error("rp2-generator-holonomy", ns[i], nullptr);
        r.params["error_n" + std::to_string(ns[i])] = fmt(err);
        if (err > floor) {
          above.push_back({static_cast<double>(ns[i]), err});
          all_at_floor = false;
        }
      }
      r.params["floor"] = fmt(floor);
      r.params["at_floor"] = all_at_floor ? "1" : "0";
      double deficiency = 0.0;
      if (!all_at_floor && above.size() >= 2) {
        const double slope = fit_loglog_slope(above);
        r.params["slope"] = fmt(slope);
        deficiency = std::max(0.0, slope + 0.9);
      }
      r.n_samples = static_cast<long>(ns.size());
      r.max_residual = deficiency;
    }});

    // ---- orbit-transport suite ----
    v.push_back({"orbit-transport-residual", "orbit-transport", 1e-5, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      const int n = std::max(8, c.path_steps / 4);
      double worst = 0;
      worst = std::max(worst,
                       orbit_transport_check(Vec3(1, 0, 0), M_PI, SpherePoint(Vec3(0, 0, 1)), n));
      for (int i = 0; i < 2; ++i) {
        const Vec3 axis = rng.sphere_point().vec();
        const SpherePoint x0 = rng.sphere_point();
        worst = std::max(worst, orbit_transport_check(axis, M_PI, x0, n));
      }
      r.n_samples = 3L * n;
      r.params["n_steps"] = std::to_string(n);
      r.max_residual = worst;
    }});
    v.push_back({"orbit-stationary", "orbit-transport", 1e-14, [](const RunConfig& c, Rng&, CheckReport& r) {
      const int n = std::max(8, c.path_steps / 4);
      r.max_residual =
          orbit_transport_check(Vec3(0, 0, 1), 2.0 * M_PI, SpherePoint(Vec3(0, 0, 1)), n);
      r.n_samples = n;
    }});
    v.push_back({"orbit-halving-decay", "orbit-transport", 1e-9, [](const RunConfig& c, Rng&, CheckReport& r) {
      const int n = std::max(8, c.path_steps / 4);
      const double floor = 1e-9;
      const double coarse =
          orbit_transport_check(Vec3(1, 0, 0), M_PI, SpherePoint(Vec3(0, 0, 1)), n);
      const double fine =
          orbit_transport_check(Vec3(1, 0, 0), M_PI, SpherePoint(Vec3(0, 0, 1)), 2 * n);
      r.params["residual_coarse"] = fmt(coarse);
      r.params["residual_fine"] = fmt(fine);
      r.params["floor"] = fmt(floor);
      r.n_samples = 3L * n;
      r.max_residual = decay_deficiency(coarse, fine, 3.0, floor);
    }});
    v.push_back({"orbit-fixed-frame-control", "orbit-transport", 1e-9, [](const RunConfig& c, Rng&, CheckReport& r) {
      const int n = std::max(8, c.path_steps / 4);
      const double moving =
          orbit_transport_check(Vec3(1, 0, 0), M_PI, SpherePoint(Vec3(0, 0, 1)), n);
      const double control =
          orbit_transport_fixed_frame_control(Vec3(1, 0, 0), M_PI, SpherePoint(Vec3(0, 0, 1)), n);
      r.params["residual_moving"] = fmt(moving);
      r.params["residual_control"] = fmt(control);
      r.n_samples = n;
      r.max_residual = std::max(0.0, 1000.0 * moving - control);
    }});

    // ---- two-spin suite ----
    v.push_back({"schwinger-gram", "two-spin", 1e-13, [](const RunConfig&, Rng&, CheckReport& r) {
      const auto basis = schwinger_basis();
      double worst = 0;
      for (int a = 0; a < kTwoSpinDim; ++a)
        for (int b = 0; b < kTwoSpinDim; ++b) {
          const Complex g = basis[a].dot(basis[b]);
          worst = std::max(worst, std::abs(g - (a == b ? Complex(1.0) : Complex(0.0))));
        }
      r.n_samples = kTwoSpinDim * kTwoSpinDim;
      r.max_residual = worst;
    }});
    v.push_back({"w-unitarity", "two-spin", 1e-13, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      double worst = 0;
      for (int i = 0; i < c.grid_n; ++i) {
        const SphericalAngles ang = to_spherical(rng.sphere_point());
        const Mat3c w = w_matrix(ang.theta, ang.phi);
        worst = std::max(worst, (w.adjoint() * w - Mat3c::Identity()).norm());
      }
      r.n_samples = c.grid_n;
      r.max_residual = worst;
    }});
    v.push_back({"w-determinant", "two-spin", 1e-12, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      double worst = 0;
      for (int i = 0; i < c.grid_n; ++i) {
        const SphericalAngles ang = to_spherical(rng.sphere_point());
        worst = std::max(worst, std::abs(w_matrix(ang.theta, ang.phi).determinant() - Complex(1.0)));
      }
      r.n_samples = c.grid_n;
      r.max_residual = worst;
    }});
    v.push_back({"w-identity-at-zero", "two-spin", 1e-15, [](const RunConfig&, Rng&, CheckReport& r) {
      double worst = 0;
      for (double phi : {0.0, 1.0, 3.0})
        worst = std::max(worst, (w_matrix(0.0, phi) - Mat3c::Identity()).norm());
      r.n_samples = 3;
      r.max_residual = worst;
    }});
    v.push_back({"w-middle-row-closed-form", "two-spin", 1e-13, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      double worst = 0;
      for (int i = 0; i < c.grid_n; ++i) {
        const SpherePoint x = rng.sphere_point();
        const SphericalAngles ang = to_spherical(x);
        const Mat3c w = w_matrix(ang.theta, ang.phi);
        worst = std::max(worst, (w.row(1).transpose() - w_middle_row(x)).norm());
      }
      r.n_samples = c.grid_n;
      r.max_residual = worst;
    }});
    v.push_back({"transported-basis-orthonormal", "two-spin", 1e-12, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      double worst = 0;
      for (int i = 0; i < c.grid_n; ++i) {
        const TransportedBasis basis = transported_basis(rng.sphere_point());
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) {
            const Complex g = basis.vectors[a].dot(basis.vectors[b]);
            worst = std::max(worst, std::abs(g - (a == b ? Complex(1.0) : Complex(0.0))));
          }
      }
      r.n_samples = c.grid_n;
      r.max_residual = worst;
    }});
    v.push_back({"triplet-projector-printed", "two-spin", 1e-13, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      const Complex iu(0.0, 1.0);
      double worst = 0;
      for (int i = 0; i < c.grid_n; ++i) {
        const SpherePoint x = rng.sphere_point();
        const SphericalAngles ang = to_spherical(x);
        const double st = std::sin(ang.theta);
        const double ct = std::cos(ang.theta);
        const Complex ep = std::exp(iu * ang.phi);
        const Complex em = std::exp(-iu * ang.phi);
        Mat3c oracle;
        oracle(0, 0) = 0.5 * st * st;
        oracle(0, 1) = -st * ct * em / std::sqrt(2.0);
        oracle(0, 2) = -0.5 * st * st * em * em;
        oracle(1, 0) = -st * ct * ep / std::sqrt(2.0);
        oracle(1, 1) = ct * ct;
        oracle(1, 2) = st * ct * em / std::sqrt(2.0);
        oracle(2, 0) = -0.5 * st * st * ep * ep;
        oracle(2, 1) = st * ct * ep / std::sqrt(2.0);
        oracle(2, 2) = 0.5 * st * st;
        worst = std::max(worst, (triplet_projector(x) - oracle).norm());
      }
      r.n_samples = c.grid_n;
      r.max_residual = worst;
    }});
    v.push_back({"triplet-projector-properties", "two-spin", 1e-13, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      double worst = 0;
      for (int i = 0; i < c.grid_n; ++i) {
        const SpherePoint x = rng.sphere_point();
        const Mat3c p = triplet_projector(x);
        worst = std::max({worst, (p * p - p).norm(), (p - p.adjoint()).norm(),
                          std::abs(p.trace() - Complex(1.0)),
                          (triplet_projector(x.antipode()) - p).norm()});
      }
      r.n_samples = c.grid_n;
      r.max_residual = worst;
    }});
    v.push_back({"triplet-projector-vs-angles", "two-spin", 1e-13, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      double worst = 0;
      for (int i = 0; i < c.grid_n; ++i) {
        const SpherePoint x = rng.sphere_point();
        const SphericalAngles ang = to_spherical(x);
        worst = std::max(worst,
                         (triplet_projector(x) - triplet_projector_angles(ang.theta, ang.phi)).norm());
      }
      r.n_samples = c.grid_n;
      r.max_residual = worst;
    }});
    v.push_back({"basis-match-global", "two-spin", 1e-12, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      r.max_residual = verify_basis_match(rng, c.grid_n);
      r.n_samples = c.grid_n;
    }});
    v.push_back({"two-spin-projector-rank", "two-spin", 1e-12, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      const int n = std::max(1, c.grid_n / 4);
      double worst = 0;
      for (int i = 0; i < n; ++i) {
        const SpherePoint x = rng.sphere_point();
        const Eigen::MatrixXcd p = two_spin_projector(x);
        worst = std::max({worst, (p * p - p).norm(), (p - p.adjoint()).norm(),
                          std::abs(p.trace() - Complex(4.0)),
                          (two_spin_projector(x.antipode()) - p).norm()});
      }
      r.n_samples = n;
      r.max_residual = worst;
    }});
    v.push_back({"two-spin-equivariance", "two-spin", 1e-12, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      const int n = std::max(1, c.grid_n / 4);
      double worst = 0;
      for (int i = 0; i < n; ++i) {
        const SU2Element g = haar_sample(rng);
        const SpherePoint x = rng.sphere_point();
        const Eigen::MatrixXcd a = two_spin_action(g);
        worst = std::max(worst, (a.adjoint() * a -
                                 Eigen::MatrixXcd::Identity(kTwoSpinDim, kTwoSpinDim)).norm());
        worst = std::max(
            worst,
            (a * two_spin_projector(x) * a.adjoint() - two_spin_projector(rotate(g, x))).norm());
      }
      r.n_samples = n;
      r.max_residual = worst;
    }});
    v.push_back({"cg-orthogonality", "two-spin", 1e-15, [](const RunConfig&, Rng&, CheckReport& r) {
      const Eigen::Matrix4cd m = cg_transform(CgDirection::ProductToCoupled);
      const Eigen::Matrix4cd back = cg_transform(CgDirection::CoupledToProduct);
      double worst = (m * back - Eigen::Matrix4cd::Identity()).norm();
      worst = std::max(worst, (m.transpose() - back).norm());
      worst = std::max(worst, m.imag().norm());
      r.n_samples = 1;
      r.max_residual = worst;
    }});
    v.push_back({"spin1-generators-algebra", "two-spin", 1e-14, [](const RunConfig&, Rng&, CheckReport& r) {
      const Complex iu(0.0, 1.0);
      const Mat3c j1 = spin1_generator(1);
      const Mat3c j2 = spin1_generator(2);
      const Mat3c j3 = spin1_generator(3);
      double worst = 0;
      worst = std::max(worst, (j1 * j2 - j2 * j1 - iu * j3).norm());
      worst = std::max(worst, (j2 * j3 - j3 * j2 - iu * j1).norm());
      worst = std::max(worst, (j3 * j1 - j1 * j3 - iu * j2).norm());
      worst = std::max(worst, (j1 * j1 + j2 * j2 + j3 * j3 - 2.0 * Mat3c::Identity()).norm());
      r.n_samples = 4;
      r.max_residual = worst;
    }});

    // ---- exchange suite ----
    v.push_back({"exchange-signs", "exchange", 1e-13, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      double worst = 0;
      for (int i = 0; i < c.grid_n; ++i) {
        const SpherePoint x = rng.sphere_point();
        const TransportedBasis here = transported_basis(x);
        const TransportedBasis there = transported_basis(x.antipode());
        for (int a = 0; a < 3; ++a)
          worst = std::max(worst, (there.vectors[a] + here.vectors[a]).norm());
        worst = std::max(worst, (there.vectors[3] - here.vectors[3]).norm());
      }
      r.n_samples = c.grid_n;
      r.params["triplet_sign"] = "-1";
      r.params["singlet_sign"] = "+1";
      r.max_residual = worst;
    }});
    v.push_back({"cg-parity-transfer", "exchange", 1e-13, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      const auto base = random_points(rng, std::max(1, c.grid_n / 2));
      const SampledSection up_up = random_odd_scalar(rng, base);
      const SampledSection dn_dn = random_odd_scalar(rng, base);
      const SampledSection g = add_sections(random_even_scalar(rng, base),
                                            random_odd_scalar(rng, base));
      const Eigen::Matrix4cd m = cg_transform(CgDirection::ProductToCoupled);
      std::vector<SpherePoint> pts(up_up.points());
      std::vector<Eigen::VectorXcd> vals(up_up.size());
      for (std::size_t i = 0; i < up_up.size(); ++i) {
        Eigen::Vector4cd product;
        product(0) = up_up.value(i)(0);
        product(1) = g.value(i)(0);
        // Swapped-index component, pinned so the pair swap equals the
        // antipodal flip with an overall minus sign.
        product(2) = -g.value(SampledSection::antipode_index(i))(0);
        product(3) = dn_dn.value(i)(0);
        vals[i] = m * product;
      }
      const SpinSection coupled(SampledSection(std::move(pts), std::move(vals)));
      double worst = 0;
      for (std::size_t i = 0; i < coupled.coeffs.size(); i += 2) {
        const Eigen::VectorXcd& a = coupled.coeffs.value(i);
        const Eigen::VectorXcd& b = coupled.coeffs.value(i + 1);
        for (int comp = 0; comp < 3; ++comp) worst = std::max(worst, std::abs(a(comp) + b(comp)));
        worst = std::max(worst, std::abs(a(3) - b(3)));
      }
      const ParityReport audit = parity_audit(coupled, 1e-12);
      r.params["k_tilde_verdict"] = audit.k_tilde_verdict;
      if (audit.k_tilde_verdict != "1") worst = std::max(worst, 1.0);
      r.n_samples = static_cast<long>(coupled.coeffs.size());
      r.max_residual = worst;
    }});

    // ---- pt-condition suite ----
    v.push_back({"pt-condition-great-circles", "pt-condition", 1e-6, [](const RunConfig&, Rng& rng, CheckReport& r) {
      const double h = 1e-4;
      double worst = 0;
      long samples = 0;
      for (int k = 0; k < 3; ++k) {
        const auto [a, b] = random_circle_frame(rng);
        int n = 0;
        const DiscretePath curve = great_circle_curve(a, b, h, n);
        worst = std::max(worst, pt_condition_residual(curve, 2.0 * M_PI / n));
        samples += n;
      }
      r.n_samples = samples;
      r.params["h"] = fmt(h);
      r.max_residual = worst;
    }});
    v.push_back({"pt-condition-constant-curve", "pt-condition", 1e-14, [](const RunConfig&, Rng& rng, CheckReport& r) {
      const SpherePoint x = rng.sphere_point();
      const DiscretePath curve(std::vector<SpherePoint>(9, x), true);
      r.max_residual = pt_condition_residual(curve, 1e-4);
      r.n_samples = 9;
    }});
    v.push_back({"pt-condition-halving", "pt-condition", 1e-9, [](const RunConfig&, Rng& rng, CheckReport& r) {
      const double floor = 1e-9;
      const auto [a, b] = random_circle_frame(rng);
      int n1 = 0, n2 = 0;
      const DiscretePath coarse_curve = wobble_curve(a, b, 1e-3, n1);
      const DiscretePath fine_curve = wobble_curve(a, b, 5e-4, n2);
      const double coarse = pt_condition_residual(coarse_curve, 2.0 * M_PI / n1);
      const double fine = pt_condition_residual(fine_curve, 2.0 * M_PI / n2);
      r.params["residual_coarse"] = fmt(coarse);
      r.params["residual_fine"] = fmt(fine);
      r.params["floor"] = fmt(floor);
      r.n_samples = n1 + n2;
      r.max_residual = decay_deficiency(coarse, fine, 3.0, floor);
    }});

    // ---- spin-operators suite ----
    v.push_back({"scalar-spin-operator-zero", "spin-operators", 1e-4, [](const RunConfig&, Rng& rng, CheckReport& r) {
      const ProjectorField field = tautological_field();
      const ActionField action = [](const SU2Element& g) {
        return Eigen::MatrixXcd(g.rotation_matrix().cast<Complex>());
      };
      const std::vector<double> ts = {1e-3, 5e-4};
      std::vector<SpherePoint> points = {SpherePoint(Vec3(0, 0, 1)), rng.sphere_point(),
                                         rng.sphere_point()};
      double worst = 0;
      for (const auto& x : points)
        for (int axis = 1; axis <= 3; ++axis) {
          const std::vector<Eigen::VectorXcd> basis = {fiber_basis_vector(field, x)};
          const Eigen::MatrixXcd m = local_spin_operator(field, action, basis, axis, x, ts);
          worst = std::max(worst, m.norm());
        }
      r.n_samples = static_cast<long>(points.size()) * 3;
      r.params["t_values"] = fmt(ts[0]) + ";" + fmt(ts[1]);
      r.max_residual = worst;
    }});
    v.push_back({"trivial-spin-operator-zero", "spin-operators", 1e-12, [](const RunConfig&, Rng& rng, CheckReport& r) {
      const ProjectorField field = trivial_field();
      const ActionField action = [](const SU2Element&) { return Eigen::MatrixXcd::Identity(1, 1); };
      const std::vector<double> ts = {1e-3, 5e-4};
      const SpherePoint x = rng.sphere_point();
      double worst = 0;
      for (int axis = 1; axis <= 3; ++axis) {
        const std::vector<Eigen::VectorXcd> basis = {Eigen::VectorXcd::Ones(1)};
        worst = std::max(worst, local_spin_operator(field, action, basis, axis, x, ts).norm());
      }
      r.n_samples = 3;
      r.max_residual = worst;
    }});
    v.push_back({"two-spin-operator-match", "spin-operators", 5e-4, [](const RunConfig&, Rng& rng, CheckReport& r) {
      const ProjectorField field = [](const SpherePoint& x) { return two_spin_projector(x); };
      const ActionField action = [](const SU2Element& g) { return two_spin_action(g); };
      const std::vector<double> ts = {1e-3, 5e-4};
      const std::vector<SpherePoint> points = {SpherePoint(Vec3(0, 0, 1)), rng.sphere_point()};
      double worst = 0;
      for (const auto& x : points) {
        const TransportedBasis tb = transported_basis(x);
        const std::vector<Eigen::VectorXcd> basis(tb.vectors.begin(), tb.vectors.end());
        for (int axis = 1; axis <= 3; ++axis) {
          const Eigen::MatrixXcd m = local_spin_operator(field, action, basis, axis, x, ts);
          worst = std::max(worst, (m - Eigen::MatrixXcd(spin_operator_field(axis, x))).norm());
        }
      }
      r.n_samples = static_cast<long>(points.size()) * 3;
      r.params["t_values"] = fmt(ts[0]) + ";" + fmt(ts[1]);
      r.max_residual = worst;
    }});
    v.push_back({"spin-operator-algebra", "spin-operators", 1e-12, [](const RunConfig&, Rng& rng, CheckReport& r) {
      const Complex iu(0.0, 1.0);
      const SpherePoint x = rng.sphere_point();
      const Eigen::Matrix4cd s1 = spin_operator_field(1, x);
      const Eigen::Matrix4cd s2 = spin_operator_field(2, x);
      const Eigen::Matrix4cd s3 = spin_operator_field(3, x);
      Eigen::Matrix4cd casimir_ref = Eigen::Matrix4cd::Zero();
      casimir_ref.topLeftCorner<3, 3>() = 2.0 * Mat3c::Identity();
      double worst = 0;
      worst = std::max(worst, (s1 * s2 - s2 * s1 - iu * s3).norm());
      worst = std::max(worst, (s2 * s3 - s3 * s2 - iu * s1).norm());
      worst = std::max(worst, (s3 * s1 - s1 * s3 - iu * s2).norm());
      worst = std::max(worst, (s1 * s1 + s2 * s2 + s3 * s3 - casimir_ref).norm());
      r.n_samples = 4;
      r.max_residual = worst;
    }});

    // ---- singlevaluedness suite ----
    v.push_back({"tau-involution", "singlevaluedness", 1e-15, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      const auto base = random_points(rng, std::max(1, c.grid_n / 4));
      const SpinSection psi_s(random_section4(rng, base));
      double worst = 0;
      for (int kt = 0; kt < 2; ++kt) {
        const Z2ActionSpec action{kt, 1};
        const SpinSection twice = tau_act(action, tau_act(action, psi_s));
        for (std::size_t i = 0; i < psi_s.coeffs.size(); ++i)
          worst = std::max(
              worst, (twice.coeffs.value(i) - psi_s.coeffs.value(i)).cwiseAbs().maxCoeff());
      }
      r.n_samples = static_cast<long>(psi_s.coeffs.size());
      r.max_residual = worst;
    }});
    v.push_back({"invariant-part-fixed", "singlevaluedness", 1e-15, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      const auto base = random_points(rng, std::max(1, c.grid_n / 4));
      const SpinSection psi_s(random_section4(rng, base));
      double worst = 0;
      for (int kt = 0; kt < 2; ++kt) {
        const Z2ActionSpec action{kt, 1};
        const SpinSection inv = invariant_part(action, psi_s);
        worst = std::max(worst, tau_invariance_residual(action, inv));
        const SpinSection again = invariant_part(action, inv);
        for (std::size_t i = 0; i < inv.coeffs.size(); ++i)
          worst = std::max(worst,
                           (again.coeffs.value(i) - inv.coeffs.value(i)).cwiseAbs().maxCoeff());
      }
      r.n_samples = static_cast<long>(psi_s.coeffs.size());
      r.max_residual = worst;
    }});
    v.push_back({"invariant-coefficient-parity", "singlevaluedness", 1e-14, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      const auto base = random_points(rng, std::max(1, c.grid_n / 4));
      const SpinSection psi_s(random_section4(rng, base));
      double worst = 0;
      for (int kt = 0; kt < 2; ++kt) {
        const Z2ActionSpec action{kt, 1};
        const SpinSection inv = invariant_part(action, psi_s);
        for (std::size_t i = 0; i < inv.coeffs.size(); i += 2)
          for (int comp = 0; comp < 4; ++comp) {
            const double s = action.block_sign(SpinSection::total_spin_of_component(comp));
            worst = std::max(worst, std::abs(inv.coeffs.value(i + 1)(comp) -
                                             s * inv.coeffs.value(i)(comp)));
          }
      }
      r.n_samples = static_cast<long>(psi_s.coeffs.size());
      r.max_residual = worst;
    }});
    v.push_back({"parity-audit-verdicts", "singlevaluedness", 0.5, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      const auto base = random_points(rng, std::max(1, c.grid_n / 4));
      auto odd = [&] { return random_odd_scalar(rng, base); };
      auto even = [&] { return random_even_scalar(rng, base); };
      auto zero = [&] {
        std::vector<SpherePoint> pts;
        std::vector<Eigen::VectorXcd> vals;
        for (const auto& x : base)
          for (const SpherePoint& p : {x, x.antipode()}) {
            pts.push_back(p);
            vals.push_back(Eigen::VectorXcd::Zero(1));
          }
        return SampledSection(std::move(pts), std::move(vals));
      };
      int mismatches = 0;
      auto expect = [&](const std::array<SampledSection, 4>& parts, const std::string& want) {
        const ParityReport audit = parity_audit(SpinSection(zip_components(parts)));
        if (audit.k_tilde_verdict != want) ++mismatches;
        return audit.k_tilde_verdict;
      };
      r.params["triplet_odd_singlet_even"] = expect({odd(), odd(), odd(), even()}, "1");
      r.params["triplet_even_singlet_odd"] = expect({even(), even(), even(), odd()}, "0");
      r.params["zero_section"] = expect({zero(), zero(), zero(), zero()}, "indeterminate");
      r.params["all_even"] = expect({even(), even(), even(), even()}, "none");
      r.n_samples = 4;
      r.max_residual = static_cast<double>(mismatches);
    }});
    v.push_back({"singlevalued-match", "singlevaluedness", 1e-13, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      const int per_parity = 10;
      double worst = 0;
      long samples = 0;
      for (int kt = 0; kt < 2; ++kt)
        for (int s = 0; s < per_parity; ++s) {
          const auto base = random_points(rng, std::max(1, c.grid_n / 4));
          const Z2ActionSpec action{kt, 1};
          const SpinSection inv = invariant_part(action, SpinSection(random_section4(rng, base)));
          const SinglevaluednessReport rep = singlevaluedness_audit(kt, kt, inv);
          worst = std::max(worst, rep.single_residual);
          if (rep.verdict != "singlevalued") worst = std::max(worst, 1.0);
          samples += static_cast<long>(inv.coeffs.size());
        }
      r.params["sections"] = std::to_string(2 * per_parity);
      r.n_samples = samples;
      r.max_residual = worst;
    }});
    v.push_back({"antivalued-flip", "singlevaluedness", 1e-13, [](const RunConfig& c, Rng& rng, CheckReport& r) {
      const int per_parity = 10;
      double worst = 0;
      long samples = 0;
      for (int kt = 0; kt < 2; ++kt)
        for (int s = 0; s < per_parity; ++s) {
          const auto base = random_points(rng, std::max(1, c.grid_n / 4));
          const Z2ActionSpec action{kt, 1};
          const SpinSection inv = invariant_part(action, SpinSection(random_section4(rng, base)));
          const SinglevaluednessReport rep = singlevaluedness_audit(kt + 1, kt, inv);
          worst = std::max(worst, rep.anti_residual);
          if (rep.verdict != "antivalued") worst = std::max(worst, 1.0);
          samples += static_cast<long>(inv.coeffs.size());
        }
      r.params["sections"] = std::to_string(2 * per_parity);
      r.n_samples = samples;
      r.max_residual = worst;
    }});

    return v;
  }();
  return defs;
}

CheckReport run_check(const CheckDef& def, const RunConfig& config) {
  CheckReport report;
  report.check_name = def.name;
  const auto it = config.tol_overrides.find(def.name);
  report.tolerance = it == config.tol_overrides.end() ? def.default_tol : it->second;
  Rng rng(config.seed ^ fnv1a(def.name));
  const auto start = std::chrono::steady_clock::now();
  def.fn(config, rng, report);
  const auto stop = std::chrono::steady_clock::now();
  report.wall_time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
  report.pass = report.max_residual <= report.tolerance;
  return report;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "projector",  "module-iso",      "equivariance",   "flatness",
      "holonomy",   "orbit-transport", "two-spin",       "exchange",
      "pt-condition", "spin-operators", "singlevaluedness", "all"};
  return names;
}

std::vector<CheckReport> run_suite(const std::string& suite, const RunConfig& config) {
  config.validate();
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw std::invalid_argument("unknown suite: " + suite);
  std::vector<CheckReport> reports;
  for (const CheckDef& def : registry())
    if (suite == "all" || def.suite == suite) reports.push_back(run_check(def, config));
  return reports;
}

SuiteResult run_suite_result(const std::string& suite, const RunConfig& config) {
  SuiteResult result;
  result.suite = suite;
  result.checks = run_suite(suite, config);
  result.all_pass = std::all_of(result.checks.begin(), result.checks.end(),
                                [](const CheckReport& c) { return c.pass; });
  return result;
}

nlohmann::json suite_to_json(const SuiteResult& result, const RunConfig& config) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckReport& c : result.checks) {
    checks.push_back({{"check_name", c.check_name},
                      {"n_samples", c.n_samples},
                      {"max_residual", c.max_residual},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass},
                      {"params", c.params},
                      {"wall_time_ms", c.wall_time_ms}});
  }
  return nlohmann::json{{"suite", result.suite},
                        {"all_pass", result.all_pass},
                        {"config",
                         {{"grid_n", config.grid_n},
                          {"path_steps", config.path_steps},
                          {"seed", config.seed},
                          {"tol_overrides", config.tol_overrides}}},
                        {"checks", checks}};
}

std::string suite_to_csv(const SuiteResult& result) {
  std::ostringstream out;
  out << "check_name,n_samples,max_residual,tolerance,pass,wall_time_ms,params\n";
  for (const CheckReport& c : result.checks) {
    out << c.check_name << ',' << c.n_samples << ',' << fmt(c.max_residual) << ','
        << fmt(c.tolerance) << ',' << (c.pass ? "true" : "false") << ',' << c.wall_time_ms << ',';
    bool first = true;
    for (const auto& [k, val] : c.params) {
      if (!first) out << ';';
      out << k << '=' << val;
      first = false;
    }
    out << "\n";
  }
  return out.str();
}

const std::vector<std::string>& sweepable_checks() {
  static const std::vector<std::string> names = {
      "rp2-generator-holonomy", "contractible-loop-holonomy", "bloch-monopole-control",
      "orbit-transport-residual", "pt-condition"};
  return names;
}

SweepResult convergence_sweep(const std::string& check, const std::string& parameter,
                              const std::vector<double>& values, const RunConfig& config) {
  config.validate();
  if (values.empty()) throw std::invalid_argument("sweep: empty parameter value list");
  const auto& names = sweepable_checks();
  if (std::find(names.begin(), names.end(), check) == names.end())
    throw std::invalid_argument("sweep: unknown check " + check);
  const bool step_size_param = check == "pt-condition";
  const std::string expected_param = step_size_param ? "h" : "n_steps";
  if (parameter != expected_param)
    throw std::invalid_argument("sweep: check " + check + " sweeps over " + expected_param);

  SweepResult result;
  result.check = check;
  result.parameter = parameter;
  result.floor = step_size_param || check == "orbit-transport-residual" ? 1e-9 : 1e-12;

  Rng rng(config.seed ^ fnv1a(check));
  // Shared fixtures so every parameter value sees the same geometry.
  const auto [wa, wb] = random_circle_frame(rng);

  for (double value : values) {
    SweepRow row{value, 0.0, 0.0, 0.0};
    if (check == "pt-condition") {
      if (!(value > 0.0) || value > 0.1)
        throw std::invalid_argument("sweep: h values must lie in (0, 0.1]");
      int n = 0;
      const DiscretePath curve = wobble_curve(wa, wb, value, n);
      row.error = pt_condition_residual(curve, 2.0 * M_PI / n);
    } else {
      const int n = static_cast<int>(std::lround(value));
      if (n < 8) throw std::invalid_argument("sweep: n_steps values must be at least 8");
      if (check == "orbit-transport-residual") {
        row.error = orbit_transport_check(Vec3(1, 0, 0), M_PI, SpherePoint(Vec3(0, 0, 1)), n);
      } else if (check == "bloch-monopole-control") {
        const CurvatureProbe probe =
            curvature_probe(SpherePoint(Vec3(0, 0, 1)), 0.05, bloch_field(), n);
        row.phase_re = probe.phase.real();
        row.phase_im = probe.phase.imag();
        row.error = std::abs(std::abs(probe.phase_per_area) - 0.5);
      } else {
        Complex phase;
        row.error = holonomy_error(check, n, &phase);
        row.phase_re = phase.real();
        row.phase_im = phase.imag();
      }
    }
    result.rows.push_back(row);
  }

  std::vector<std::pair<double, double>> above;
  for (const SweepRow& row : result.rows) {
    if (row.error > result.floor) {
      const double resolution = step_size_param ? 1.0 / row.parameter : row.parameter;
      above.push_back({resolution, row.error});
    }
  }
  result.at_floor = above.empty();
  result.slope = above.size() >= 2 ? fit_loglog_slope(above) : 0.0;
  return result;
}

std::string sweep_to_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "parameter,phase_re,phase_im,error\n";
  for (const SweepRow& row : result.rows)
    out << fmt(row.parameter) << ',' << fmt(row.phase_re) << ',' << fmt(row.phase_im) << ','
        << fmt(row.error) << "\n";
  out << "# check=" << result.check << " slope=" << fmt(result.slope)
      << " at_floor=" << (result.at_floor ? "1" : "0") << " floor=" << fmt(result.floor) << "\n";
  return out.str();
}

}  // namespace rp2bundle
