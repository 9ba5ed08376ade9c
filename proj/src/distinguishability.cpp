#include "fockctx/distinguishability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fockctx/format.hpp"

namespace fockctx {

namespace {

const BasisPtr& four_mode_basis() {
  static const BasisPtr basis = enumerate_basis(4, 2);
  return basis;
}

}  // namespace

BosonicState partial_input_state(double eta) {
  if (eta < 0.0 || eta > 1.0)
    throw std::invalid_argument("partial_input_state: overlap parameter must lie in [0, 1]");
  const BasisPtr& basis = four_mode_basis();
  Vector amps = Vector::Zero(basis->dim());
  amps(basis->index_of({1, 0, 1, 0})) = std::sqrt(1.0 - eta * eta);
  amps(basis->index_of({1, 0, 0, 1})) = eta;
  return {basis, std::move(amps)};
}

LinearOperator polarization_blind_bs(double theta, double phi) {
  return grouped_bs_unitary(four_mode_basis(), ModeGrouping::polarization_pairs(), theta, phi);
}

IdealMeasurement grouped_measurement(double theta, double phi) {
  return measurement_from_settings(four_mode_basis(), ModeGrouping::polarization_pairs(),
                                   theta, phi);
}

double coincidence_probability(double eta, double theta) {
  const BosonicState out = apply(polarization_blind_bs(theta, 0.0), partial_input_state(eta));
  const LinearOperator parity =
      parity_unitary(four_mode_basis(), ModeGrouping::polarization_pairs());
  const double p = 0.5 * (1.0 + expectation(out, parity).real());
  return std::clamp(p, 0.0, 1.0);
}

double bunching_probability(double eta, double theta) {
  return 1.0 - coincidence_probability(eta, theta);
}

std::vector<double> uniform_grid(double start, double stop, int count) {
  if (count < 2) throw std::invalid_argument("uniform_grid: need at least two points");
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) grid[i] = start + (stop - start) * i / (count - 1);
  grid.back() = stop;
  return grid;
}

SweepResult witness_vs_eta(const WitnessSpec& spec, const std::vector<double>& grid,
                           double prep_theta, double prep_phi) {
  if (grid.empty()) throw std::invalid_argument("witness_vs_eta: empty grid");

  const BasisPtr& basis = four_mode_basis();
  const std::vector<IdealMeasurement> meas = realize_measurements(spec, basis);
  const LinearOperator prep = polarization_blind_bs(prep_theta, prep_phi);

  SweepResult sweep;
  sweep.witness_name = spec.name;
  sweep.rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const BosonicState state = apply(prep, partial_input_state(grid[i]));
    const bool endpoint = i == 0 || i + 1 == grid.size();
    const WitnessValue value = endpoint ? evaluate_sequential(spec, state, meas)
                                        : evaluate_operator(spec, state, meas);
    sweep.rows.push_back({grid[i], value.value, prep_theta, prep_phi});
  }
  return sweep;
}

std::string to_csv(const SweepResult& sweep) {
  std::ostringstream out;
  out << "eta,value,theta,phi\n";
  for (const auto& row : sweep.rows)
    out << format_double(row.eta) << ',' << format_double(row.value) << ','
        << format_double(row.prep_theta) << ',' << format_double(row.prep_phi) << '\n';
  return out.str();
}

std::string to_json(const SweepResult& sweep) {
  nlohmann::json j;
  j["witness"] = sweep.witness_name;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : sweep.rows)
    j["rows"].push_back({{"eta", row.eta},
                         {"value", row.value},
                         {"theta", row.prep_theta},
                         {"phi", row.prep_phi}});
  return j.dump(2);
}

}  // namespace fockctx
