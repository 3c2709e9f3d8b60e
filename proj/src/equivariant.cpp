#include "rp2bundle/equivariant.hpp"

#include <cmath>
#include <stdexcept>

#include "rp2bundle/two_spin.hpp"

namespace rp2bundle {

double Z2ActionSpec::block_sign(int j) const {
  if (j != 0 && j != 1)
    throw std::invalid_argument("Z2ActionSpec::block_sign: total spin must be 0 or 1");
  const int e = two_s - j + k_tilde;
  return (e % 2 + 2) % 2 == 0 ? 1.0 : -1.0;
}

SpinSection::SpinSection(SampledSection c) : coeffs(std::move(c)) {
  if (coeffs.dimension() != 4)
    throw std::invalid_argument("SpinSection: coefficient sections have four components");
}

const std::array<std::string, 4>& SpinSection::labels() {
  static const std::array<std::string, 4> l = {"(1,+1)", "(1,0)", "(1,-1)", "(0,0)"};
  return l;
}

SpinSection tau_act(const Z2ActionSpec& action, const SpinSection& psi) {
  const SampledSection& f = psi.coeffs;
  std::vector<SpherePoint> pts(f.points());
  std::vector<Eigen::VectorXcd> vals(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Eigen::VectorXcd& src = f.value(SampledSection::antipode_index(i));
    Eigen::VectorXcd v(4);
    for (int c = 0; c < 4; ++c)
      v(c) = action.block_sign(SpinSection::total_spin_of_component(c)) * src(c);
    vals[i] = std::move(v);
  }
  return SpinSection(SampledSection(std::move(pts), std::move(vals)));
}

SpinSection invariant_part(const Z2ActionSpec& action, const SpinSection& psi) {
  const SampledSection& f = psi.coeffs;
  std::vector<SpherePoint> pts(f.points());
  std::vector<Eigen::VectorXcd> vals(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Eigen::VectorXcd& here = f.value(i);
    const Eigen::VectorXcd& there = f.value(SampledSection::antipode_index(i));
    Eigen::VectorXcd v(4);
    for (int c = 0; c < 4; ++c) {
      const double s = action.block_sign(SpinSection::total_spin_of_component(c));
      v(c) = (here(c) + s * there(c)) / 2.0;
    }
    vals[i] = std::move(v);
  }
  return SpinSection(SampledSection(std::move(pts), std::move(vals)));
}

double tau_invariance_residual(const Z2ActionSpec& action, const SpinSection& psi) {
  const SpinSection moved = tau_act(action, psi);
  double worst = 0.0;
  for (std::size_t i = 0; i < psi.coeffs.size(); ++i)
    worst = std::max(worst,
                     (psi.coeffs.value(i) - moved.coeffs.value(i)).cwiseAbs().maxCoeff());
  return worst;
}

ParityReport parity_audit(const SpinSection& psi, double tol) {
  const SampledSection& f = psi.coeffs;
  ParityReport report;
  report.tolerance = tol;
  std::array<double, 4> even{};
  std::array<double, 4> odd{};
  std::array<double, 4> magnitude{};
  for (std::size_t i = 0; i < f.size(); i += 2) {
    const Eigen::VectorXcd& a = f.value(i);
    const Eigen::VectorXcd& b = f.value(i + 1);
    for (int c = 0; c < 4; ++c) {
      even[c] = std::max(even[c], std::abs(a(c) - b(c)));
      odd[c] = std::max(odd[c], std::abs(a(c) + b(c)));
      magnitude[c] = std::max({magnitude[c], std::abs(a(c)), std::abs(b(c))});
    }
  }
  for (int c = 0; c < 4; ++c) {
    ParityEntry entry;
    entry.label = SpinSection::labels()[c];
    entry.even_residual = even[c];
    entry.odd_residual = odd[c];
    if (magnitude[c] <= tol)
      entry.classification = "zero";
    else if (even[c] <= tol)
      entry.classification = "even";
    else if (odd[c] <= tol)
      entry.classification = "odd";
    else
      entry.classification = "mixed";
    report.entries[c] = entry;
  }
  bool ok[2];
  for (int kt = 0; kt < 2; ++kt) {
    const Z2ActionSpec action{kt, 1};
    double worst = 0.0;
    for (int c = 0; c < 4; ++c) {
      const double s = action.block_sign(SpinSection::total_spin_of_component(c));
      worst = std::max(worst, s > 0.0 ? even[c] : odd[c]);
    }
    ok[kt] = worst <= tol;
  }
  if (ok[0] && ok[1])
    report.k_tilde_verdict = "indeterminate";
  else if (ok[0])
    report.k_tilde_verdict = "0";
  else if (ok[1])
    report.k_tilde_verdict = "1";
  else
    report.k_tilde_verdict = "none";
  return report;
}

SinglevaluednessReport singlevaluedness_audit(int k, int k_tilde, const SpinSection& psi,
                                              double tol) {
  if (k < 0 || k_tilde < 0)
    throw std::invalid_argument("singlevaluedness_audit: parities must be non-negative");
  const Z2ActionSpec action{k_tilde, 1};
  const double inv = tau_invariance_residual(action, psi);
  if (inv > 1e-10 * std::max(1.0, psi.coeffs.max_abs()))
    throw std::invalid_argument(
        "singlevaluedness_audit: section is not invariant under the requested action");

  // Basis realization: odd K keeps the transported basis (its native
  // exchange parity); even K flips the sign on the non-canonical lift of
  // each antipodal pair.
  const bool flip_on_non_canonical = (k % 2) == 0;
  const SampledSection& f = psi.coeffs;
  std::vector<Eigen::VectorXcd> ambient(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const SpherePoint& r = f.point(i);
    const TransportedBasis basis = transported_basis(r);
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(kTwoSpinDim);
    for (int c = 0; c < 4; ++c) acc += f.value(i)(c) * basis.vectors[c];
    if (flip_on_non_canonical && !is_canonical_representative(r)) acc = -acc;
    ambient[i] = std::move(acc);
  }
  SinglevaluednessReport report;
  report.k = k;
  report.k_tilde = k_tilde;
  report.tolerance = tol;
  double single = 0.0;
  double anti = 0.0;
  for (std::size_t i = 0; i < f.size(); i += 2) {
    single = std::max(single, (ambient[i] - ambient[i + 1]).norm());
    anti = std::max(anti, (ambient[i] + ambient[i + 1]).norm());
  }
  report.single_residual = single;
  report.anti_residual = anti;
  if (single <= tol && anti <= tol)
    report.verdict = "indeterminate";
  else if (single <= tol)
    report.verdict = "singlevalued";
  else if (anti <= tol)
    report.verdict = "antivalued";
  else
    report.verdict = "neither";
  return report;
}

void to_json(nlohmann::json& j, const ParityReport& report) {
  nlohmann::json components = nlohmann::json::array();
  for (const auto& e : report.entries)
    components.push_back({{"label", e.label},
                          {"even_residual", e.even_residual},
                          {"odd_residual", e.odd_residual},
                          {"classification", e.classification}});
  j = nlohmann::json{{"components", components},
                     {"k_tilde_verdict", report.k_tilde_verdict},
                     {"tolerance", report.tolerance}};
}

void to_json(nlohmann::json& j, const SinglevaluednessReport& report) {
  j = nlohmann::json{{"k", report.k},
                     {"k_tilde", report.k_tilde},
                     {"single_residual", report.single_residual},
                     {"anti_residual", report.anti_residual},
                     {"verdict", report.verdict},
                     {"tolerance", report.tolerance}};
}

}  // namespace rp2bundle
