#include "fockctx/witness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace fockctx {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRouteCrossCheckTol = 1e-6;

WitnessSetting setting_from_angles(double theta, double phi) { return {theta, phi, std::nullopt}; }

WitnessSetting setting_from_vector(const Eigen::Vector3d& v) {
  if (std::abs(v.norm() - 1.0) > kPhysicalTol)
    throw std::invalid_argument("witness setting: direction must be a unit vector");
  const double z = std::clamp(v.z(), -1.0, 1.0);
  return {std::acos(z), std::atan2(v.y(), v.x()), v};
}

void validate(const WitnessSpec& spec) {
  const int n = static_cast<int>(spec.settings.size());
  for (const auto& term : spec.terms) {
    if (term.indices.empty())
      throw std::invalid_argument("witness '" + spec.name + "': empty term");
    for (int i : term.indices)
      if (i < 0 || i >= n)
        throw std::invalid_argument("witness '" + spec.name + "': term index " +
                                    std::to_string(i) + " has no setting");
  }
}

// The 13 directions of the state-independent set: the three axes, the six
// face diagonals, and four of the body diagonals.
const std::vector<Eigen::Vector3d>& thirteen_directions() {
  static const std::vector<Eigen::Vector3d> dirs = [] {
    const double r2 = 1.0 / std::sqrt(2.0);
    const double r3 = 1.0 / std::sqrt(3.0);
    std::vector<Eigen::Vector3d> v;
    v.emplace_back(1, 0, 0);                  // 0
    v.emplace_back(0, 1, 0);                  // 1
    v.emplace_back(0, 0, 1);                  // 2
    v.emplace_back(0.0, r2, -r2);             // 3
    v.emplace_back(r2, 0.0, -r2);             // 4
    v.emplace_back(r2, -r2, 0.0);             // 5
    v.emplace_back(0.0, r2, r2);              // 6
    v.emplace_back(r2, 0.0, r2);              // 7
    v.emplace_back(r2, r2, 0.0);              // 8
    v.emplace_back(-r3, r3, r3);              // 9
    v.emplace_back(r3, -r3, r3);              // 10
    v.emplace_back(r3, r3, -r3);              // 11
    v.emplace_back(r3, r3, r3);               // 12
    return v;
  }();
  return dirs;
}

const std::vector<std::pair<int, int>>& triad_edges() {
  static const std::vector<std::pair<int, int>> e = {
      {0, 3}, {0, 6}, {1, 4}, {1, 7}, {2, 5}, {2, 8}, {3, 6}, {4, 7}, {5, 8}};
  return e;
}

const std::vector<std::pair<int, int>>& remaining_edges() {
  static const std::vector<std::pair<int, int>> e = {
      {0, 1}, {0, 2}, {1, 2}, {3, 9}, {3, 12}, {4, 10}, {4, 12}, {5, 11},
      {5, 12}, {6, 10}, {6, 11}, {7, 9}, {7, 11}, {8, 9}, {8, 10}};
  return e;
}

std::vector<WitnessSetting> thirteen_settings() {
  std::vector<WitnessSetting> settings;
  settings.reserve(13);
  for (const auto& v : thirteen_directions()) settings.push_back(setting_from_vector(v));
  return settings;
}

}  // namespace

WitnessSpec kcbs_spec() { return ncycle_spec(5); }

WitnessSpec ncycle_spec(int n) {
  if (n < 5 || n % 2 == 0)
    throw std::invalid_argument("ncycle_spec: cycle length must be odd and at least 5");

  const double c = std::cos(kPi / n);
  const double theta = std::acos(std::sqrt(c / (1.0 + c)));
  const double step = kPi * (n - 1) / n;

  WitnessSpec spec;
  spec.name = n == 5 ? "kcbs" : "ncycle" + std::to_string(n);
  for (int j = 0; j < n; ++j)
    spec.settings.push_back(setting_from_angles(theta, std::fmod(step * j, 2.0 * kPi)));
  for (int j = 0; j < n; ++j)
    spec.terms.push_back({{j, (j + 1) % n}, -1.0 / (n - 2)});
  spec.normalization = 1.0;
  spec.nc_bound = 1.0;
  return spec;
}

WitnessSpec yu_oh_spec() {
  WitnessSpec spec;
  spec.name = "yu-oh";
  spec.settings = thirteen_settings();
  for (int j = 0; j < 13; ++j) spec.terms.push_back({{j}, -1.0 / 8.0});
  for (const auto& [a, b] : triad_edges()) spec.terms.push_back({{a, b}, -1.0 / 16.0});
  for (const auto& [a, b] : remaining_edges()) spec.terms.push_back({{a, b}, -1.0 / 16.0});
  spec.normalization = 1.0;
  spec.nc_bound = 1.0;
  return spec;
}

WitnessSpec opt3_spec() {
  WitnessSpec spec;
  spec.name = "opt3";
  spec.settings = thirteen_settings();
  for (int j = 0; j < 9; ++j) spec.terms.push_back({{j}, -1.0 / 25.0});
  for (int j = 9; j < 13; ++j) spec.terms.push_back({{j}, -2.0 / 25.0});
  for (const auto& [a, b] : triad_edges()) spec.terms.push_back({{a, b}, -1.0 / 25.0});
  for (const auto& [a, b] : remaining_edges()) spec.terms.push_back({{a, b}, -2.0 / 25.0});
  for (int j = 0; j < 3; ++j) spec.terms.push_back({{j, j + 3, j + 6}, 3.0 / 25.0});
  spec.normalization = 1.0;
  spec.nc_bound = 1.0;
  return spec;
}

std::vector<IdealMeasurement> realize_measurements(const WitnessSpec& spec,
                                                   const BasisPtr& basis) {
  ModeGrouping grouping;
  if (basis->modes() == 2 && basis->photons() == 2) {
    grouping = ModeGrouping::two_mode();
  } else if (basis->modes() == 4 && basis->photons() == 2) {
    grouping = ModeGrouping::polarization_pairs();
  } else {
    throw std::invalid_argument("realize_measurements: no measurement realization for sector (" +
                                std::to_string(basis->modes()) + "," +
                                std::to_string(basis->photons()) + ")");
  }

  std::vector<IdealMeasurement> meas;
  meas.reserve(spec.settings.size());
  for (const auto& s : spec.settings)
    meas.push_back(measurement_from_settings(basis, grouping, s.theta, s.phi));
  return meas;
}

namespace {

double operator_term(const BosonicState& state, const std::vector<IdealMeasurement>& meas,
                     const std::vector<int>& indices) {
  Matrix prod = observable_of(meas[indices.front()]).matrix;
  for (std::size_t k = 1; k < indices.size(); ++k)
    prod *= observable_of(meas[indices[k]]).matrix;
  return expectation(state, {state.basis, std::move(prod)}).real();
}

WitnessValue evaluate(const WitnessSpec& spec, const BosonicState& state,
                      const std::vector<IdealMeasurement>& meas, EvaluationRoute route) {
  validate(spec);
  if (meas.size() != spec.settings.size())
    throw std::invalid_argument("witness '" + spec.name +
                                "': one measurement per setting required");
  for (const auto& m : meas)
    if (!same_sector(m.parity.basis, state.basis))
      throw std::invalid_argument("witness '" + spec.name +
                                  "': measurement sector does not match the state");

  WitnessValue out;
  out.route = route;
  double sum = 0.0;
  for (const auto& term : spec.terms) {
    const double op_value = operator_term(state, meas, term.indices);
    double value = op_value;
    if (route == EvaluationRoute::kSequential) {
      std::vector<IdealMeasurement> sequence;
      sequence.reserve(term.indices.size());
      for (int i : term.indices) sequence.push_back(meas[i]);
      value = correlator(sequential_joint(state, sequence));
      if (std::abs(value - op_value) > kRouteCrossCheckTol)
        throw std::runtime_error("witness '" + spec.name +
                                 "': compatibility violation, sequential and operator routes "
                                 "disagree by " + std::to_string(std::abs(value - op_value)));
    }
    out.per_term.push_back({term.indices, term.coeff, value});
    sum += term.coeff * value;
  }
  out.value = spec.normalization * sum;
  return out;
}

}  // namespace

WitnessValue evaluate_operator(const WitnessSpec& spec, const BosonicState& state) {
  return evaluate(spec, state, realize_measurements(spec, state.basis),
                  EvaluationRoute::kOperator);
}

WitnessValue evaluate_operator(const WitnessSpec& spec, const BosonicState& state,
                               const std::vector<IdealMeasurement>& measurements) {
  return evaluate(spec, state, measurements, EvaluationRoute::kOperator);
}

WitnessValue evaluate_sequential(const WitnessSpec& spec, const BosonicState& state) {
  return evaluate(spec, state, realize_measurements(spec, state.basis),
                  EvaluationRoute::kSequential);
}

WitnessValue evaluate_sequential(const WitnessSpec& spec, const BosonicState& state,
                                 const std::vector<IdealMeasurement>& measurements) {
  return evaluate(spec, state, measurements, EvaluationRoute::kSequential);
}

double noncontextual_bound(const WitnessSpec& spec) {
  validate(spec);
  const int n = static_cast<int>(spec.settings.size());
  if (n > 20)
    throw std::invalid_argument("noncontextual_bound: exhaustive search capped at 20 settings");

  double best = -std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double sum = 0.0;
    for (const auto& term : spec.terms) {
      int sign = 1;
      for (int i : term.indices)
        if (mask & (1u << i)) sign = -sign;
      sum += term.coeff * sign;
    }
    best = std::max(best, sum);
  }
  return spec.normalization * best;
}

std::string to_json(const WitnessSpec& spec) {
  nlohmann::json j;
  j["name"] = spec.name;
  j["settings"] = nlohmann::json::array();
  for (const auto& s : spec.settings) {
    if (s.vector) {
      j["settings"].push_back({{"vector", {s.vector->x(), s.vector->y(), s.vector->z()}}});
    } else {
      j["settings"].push_back({{"theta", s.theta}, {"phi", s.phi}});
    }
  }
  j["terms"] = nlohmann::json::array();
  for (const auto& t : spec.terms)
    j["terms"].push_back({{"indices", t.indices}, {"coeff", t.coeff}});
  j["normalization"] = spec.normalization;
  j["nc_bound"] = spec.nc_bound;
  return j.dump(2);
}

WitnessSpec witness_spec_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  WitnessSpec spec;
  spec.name = j.at("name").get<std::string>();
  for (const auto& s : j.at("settings")) {
    if (s.contains("vector")) {
      const auto& v = s.at("vector");
      if (v.size() != 3)
        throw std::invalid_argument("witness settings: direction needs three components");
      spec.settings.push_back(setting_from_vector(
          Eigen::Vector3d(v[0].get<double>(), v[1].get<double>(), v[2].get<double>())));
    } else {
      spec.settings.push_back(
          setting_from_angles(s.at("theta").get<double>(), s.at("phi").get<double>()));
    }
  }
  for (const auto& t : j.at("terms")) {
    WitnessTerm term;
    term.indices = t.at("indices").get<std::vector<int>>();
    term.coeff = t.at("coeff").get<double>();
    spec.terms.push_back(std::move(term));
  }
  spec.normalization = j.at("normalization").get<double>();
  spec.nc_bound = j.at("nc_bound").get<double>();
  validate(spec);
  return spec;
}

}  // namespace fockctx
