#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fockctx/measurement.hpp"

namespace fockctx {

// One measurement setting, stored as beam-splitter angles. Settings built
// from a real unit 3-vector keep the vector for serialization; the angles are
// its polar decomposition theta = acos(v_z), phi = atan2(v_y, v_x).
struct WitnessSetting {
  double theta = 0.0;
  double phi = 0.0;
  std::optional<Eigen::Vector3d> vector;
};

// One witness term: a product of the observables named by `indices`
// (positions into the settings list), weighted by `coeff`.
struct WitnessTerm {
  std::vector<int> indices;
  double coeff = 0.0;
};

struct WitnessSpec {
  std::string name;
  std::vector<WitnessSetting> settings;
  std::vector<WitnessTerm> terms;
  double normalization = 1.0;
  double nc_bound = 1.0;
};

// Pentagon witness: five settings at theta = acos(5^{-1/4}) with azimuthal
// step 4*pi/5 (adjacent settings exactly orthogonal), cyclic pair terms with
// coefficient -1/3.
WitnessSpec kcbs_spec();

// Odd-n-cycle generalization: cos^2(theta) = cos(pi/n)/(1 + cos(pi/n)),
// azimuthal step pi(n-1)/n, cyclic pair coefficients -1/(n-2). Requires odd
// n >= 5; reproduces kcbs_spec at n = 5.
WitnessSpec ncycle_spec(int n);

// 13-setting state-independent witness: -(1/8)(sum of 13 singles +
// (1/2) sum over the 24 orthogonality edges).
WitnessSpec yu_oh_spec();

// Optimal weighted variant on the same 13 settings, including three
// triple-product terms over the complete orthogonal triads.
WitnessSpec opt3_spec();

enum class EvaluationRoute { kOperator, kSequential };

struct TermValue {
  std::vector<int> indices;
  double coeff = 0.0;
  double value = 0.0;  // <product of observables> for this term
};

struct WitnessValue {
  double value = 0.0;
  EvaluationRoute route = EvaluationRoute::kOperator;
  std::vector<TermValue> per_term;
};

// Measurements realizing the witness's settings on the state's sector: the
// two-mode pairing on the (2,2) sector, the polarization-blind grouped
// pairing on the (4,2) sector.
std::vector<IdealMeasurement> realize_measurements(const WitnessSpec& spec,
                                                   const BasisPtr& basis);

// Expectation route: value = normalization * sum of coeff * Re<psi|prod A|psi>.
WitnessValue evaluate_operator(const WitnessSpec& spec, const BosonicState& state);
WitnessValue evaluate_operator(const WitnessSpec& spec, const BosonicState& state,
                               const std::vector<IdealMeasurement>& measurements);

// Sequential route: every term evaluated as the correlator of the joint
// outcome distribution of measuring its observables in order. Cross-checked
// term by term against the operator route; disagreement beyond 1e-6 throws
// (compatibility violation).
WitnessValue evaluate_sequential(const WitnessSpec& spec, const BosonicState& state);
WitnessValue evaluate_sequential(const WitnessSpec& spec, const BosonicState& state,
                                 const std::vector<IdealMeasurement>& measurements);

// Exhaustive maximum of the witness expression over all +-1 outcome
// assignments to the settings (at most 20 settings).
double noncontextual_bound(const WitnessSpec& spec);

std::string to_json(const WitnessSpec& spec);
WitnessSpec witness_spec_from_json(const std::string& text);

}  // namespace fockctx
