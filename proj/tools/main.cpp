#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fockctx/distinguishability.hpp"
#include "fockctx/format.hpp"
#include "fockctx/measurement.hpp"
#include "fockctx/optics.hpp"
#include "fockctx/witness.hpp"

namespace fx = fockctx;

namespace {

struct GridSpec {
  double start = 0.0;
  double stop = 1.0;
  int count = 2;
};

GridSpec parse_grid(const std::string& text) {
  const auto fail = [&] {
    return std::invalid_argument("grid must look like start:stop:count, got '" + text + "'");
  };
  std::istringstream in(text);
  std::string a, b, c;
  if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c)) throw fail();
  GridSpec g;
  try {
    std::size_t pos = 0;
    g.start = std::stod(a, &pos);
    if (pos != a.size()) throw fail();
    g.stop = std::stod(b, &pos);
    if (pos != b.size()) throw fail();
    g.count = std::stoi(c, &pos);
    if (pos != c.size()) throw fail();
  } catch (const std::invalid_argument&) {
    throw fail();
  } catch (const std::out_of_range&) {
    throw fail();
  }
  if (g.count < 2) throw std::invalid_argument("grid needs at least two points");
  return g;
}

// Writes to stdout when no output path is set. Relative paths are resolved
// under FOCKCTX_OUTPUT_DIR when that variable is present.
void emit(const std::string& output, const std::string& content) {
  if (output.empty()) {
    std::cout << content;
    return;
  }
  std::filesystem::path path(output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("FOCKCTX_OUTPUT_DIR")) {
      path = std::filesystem::path(dir) / path;
    }
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file " + path.string());
  out << content;
  if (!out.flush()) throw std::runtime_error("failed writing " + path.string());
}

fx::WitnessSpec make_witness(const std::string& name, int n) {
  if (name == "kcbs") return fx::kcbs_spec();
  if (name == "ncycle") return fx::ncycle_spec(n);
  if (name == "yu-oh") return fx::yu_oh_spec();
  if (name == "opt3") return fx::opt3_spec();
  throw std::invalid_argument("unknown witness '" + name + "'");
}

nlohmann::json per_term_json(const fx::WitnessValue& wv) {
  auto arr = nlohmann::json::array();
  for (const auto& t : wv.per_term)
    arr.push_back({{"indices", t.indices}, {"coeff", t.coeff}, {"value", t.value}});
  return arr;
}

std::string indices_text(const std::vector<int>& indices) {
  std::string s;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(indices[i]);
  }
  return s;
}

struct ScalarOpts {
  std::string config;
  std::string format = "text";
  std::string output;
  std::string route = "sequential";
  double prep_theta = 0.0;
  double prep_phi = 0.0;
  int n = 5;
};

int run_scalar(const std::string& command, const fx::WitnessSpec& spec, const ScalarOpts& o,
               nlohmann::json extra_config) {
  const fx::BosonicState state = fx::prepare_two_photon_state(o.prep_theta, o.prep_phi);
  const fx::WitnessValue wv = o.route == "operator" ? fx::evaluate_operator(spec, state)
                                                    : fx::evaluate_sequential(spec, state);
  const double bound = fx::noncontextual_bound(spec);

  if (o.format == "json") {
    nlohmann::json config = {
        {"prep-theta", o.prep_theta}, {"prep-phi", o.prep_phi}, {"route", o.route}};
    if (extra_config.is_object()) config.update(extra_config);
    nlohmann::json j;
    j["command"] = command;
    j["config"] = config;
    j["witness"] = spec.name;
    j["value"] = wv.value;
    j["nc_bound"] = bound;
    j["per_term"] = per_term_json(wv);
    emit(o.output, j.dump(2) + "\n");
    return 0;
  }

  std::ostringstream out;
  out << "witness " << spec.name << '\n';
  out << "route " << o.route << '\n';
  out << "value " << fx::format_double(wv.value) << '\n';
  out << "nc_bound " << fx::format_double(bound) << '\n';
  for (const auto& t : wv.per_term)
    out << "term " << indices_text(t.indices) << " coeff " << fx::format_double(t.coeff)
        << " value " << fx::format_double(t.value) << '\n';
  emit(o.output, out.str());
  return 0;
}

struct HomOpts {
  std::string config;
  std::string format = "csv";
  std::string output;
  double eta = 0.0;
  double theta = 0.0;
  std::string grid;
};

int run_hom(const HomOpts& o, bool theta_given) {
  std::vector<double> thetas;
  if (theta_given) {
    thetas = {o.theta};
  } else {
    const GridSpec g = o.grid.empty() ? GridSpec{0.0, std::numbers::pi, 41} : parse_grid(o.grid);
    thetas = fx::uniform_grid(g.start, g.stop, g.count);
  }

  if (o.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (double theta : thetas) {
      const double p = fx::coincidence_probability(o.eta, theta);
      rows.push_back({{"theta", theta}, {"p_plus", p}, {"p_minus", 1.0 - p}});
    }
    nlohmann::json j;
    j["command"] = "hom";
    j["config"] = {{"eta", o.eta}};
    if (theta_given)
      j["config"]["theta"] = o.theta;
    else
      j["config"]["grid"] = o.grid.empty() ? "0:pi:41" : o.grid;
    j["rows"] = rows;
    emit(o.output, j.dump(2) + "\n");
    return 0;
  }

  std::ostringstream out;
  out << "theta,p_plus,p_minus\n";
  for (double theta : thetas) {
    const double p = fx::coincidence_probability(o.eta, theta);
    out << fx::format_double(theta) << ',' << fx::format_double(p) << ','
        << fx::format_double(1.0 - p) << '\n';
  }
  emit(o.output, out.str());
  return 0;
}

struct SweepOpts {
  std::string config;
  std::string format = "csv";
  std::string output;
  std::string witness = "kcbs";
  int n = 5;
  std::string grid = "0:1:101";
  double prep_theta = 0.0;
  double prep_phi = 0.0;
  std::uint64_t seed = 0;
};

int run_sweep(const SweepOpts& o, bool seed_given) {
  const GridSpec g = parse_grid(o.grid);
  const std::vector<double> grid = fx::uniform_grid(g.start, g.stop, g.count);

  double prep_theta = o.prep_theta;
  double prep_phi = o.prep_phi;
  if (seed_given) {
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    prep_theta = std::numbers::pi * u(rng);
    prep_phi = 2.0 * std::numbers::pi * u(rng);
  }

  const fx::WitnessSpec spec = make_witness(o.witness, o.n);
  const fx::SweepResult result = fx::witness_vs_eta(spec, grid, prep_theta, prep_phi);

  if (o.format == "json") {
    nlohmann::json config = {{"witness", o.witness},
                             {"grid", o.grid},
                             {"prep-theta", prep_theta},
                             {"prep-phi", prep_phi}};
    if (o.witness == "ncycle") config["n"] = o.n;
    if (seed_given) config["seed"] = o.seed;
    nlohmann::json j;
    j["command"] = "sweep-eta";
    j["config"] = config;
    const nlohmann::json sweep = nlohmann::json::parse(fx::to_json(result));
    j["witness"] = sweep.at("witness");
    j["rows"] = sweep.at("rows");
    emit(o.output, j.dump(2) + "\n");
    return 0;
  }

  emit(o.output, fx::to_csv(result));
  return 0;
}

struct RhoOpts {
  std::string config;
  std::string format = "text";
  std::string output;
  int pair = 0;
  double prep_theta = 0.0;
  double prep_phi = 0.0;
};

int run_rho(const RhoOpts& o) {
  if (o.pair < 0 || o.pair > 4) throw std::invalid_argument("--pair must lie in 0..4");
  const fx::WitnessSpec spec = fx::kcbs_spec();
  const fx::BosonicState state = fx::prepare_two_photon_state(o.prep_theta, o.prep_phi);
  const std::vector<fx::IdealMeasurement> meas = fx::realize_measurements(spec, state.basis);
  const Eigen::Matrix4cd rho =
      fx::ancilla_pair_density(state, meas[o.pair], meas[(o.pair + 1) % 5]);

  // The matrix is expressed in the +-/readout eigenbasis, where the readout
  // observable of each ancilla is diagonal: <XX> is the signed diagonal sum.
  const double sigma_xx = (rho(0, 0) - rho(1, 1) - rho(2, 2) + rho(3, 3)).real();
  double offdiag_max = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (r != c) offdiag_max = std::max(offdiag_max, std::abs(rho(r, c)));

  if (o.format == "json") {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (int r = 0; r < 4; ++r) {
      nlohmann::json re_row = nlohmann::json::array();
      nlohmann::json im_row = nlohmann::json::array();
      for (int c = 0; c < 4; ++c) {
        re_row.push_back(rho(r, c).real());
        im_row.push_back(rho(r, c).imag());
      }
      re.push_back(re_row);
      im.push_back(im_row);
    }
    nlohmann::json j;
    j["command"] = "rho-ab";
    j["config"] = {{"pair", o.pair}, {"prep-theta", o.prep_theta}, {"prep-phi", o.prep_phi}};
    j["matrix"] = {{"re", re}, {"im", im}};
    j["probabilities"] = {{"pp", rho(0, 0).real()},
                          {"pm", rho(1, 1).real()},
                          {"mp", rho(2, 2).real()},
                          {"mm", rho(3, 3).real()}};
    j["sigma_xx"] = sigma_xx;
    j["offdiag_max"] = offdiag_max;
    emit(o.output, j.dump(2) + "\n");
    return 0;
  }

  std::ostringstream out;
  out << "pair " << o.pair << ',' << (o.pair + 1) % 5 << '\n';
  out << "p_pp " << fx::format_double(rho(0, 0).real()) << '\n';
  out << "p_pm " << fx::format_double(rho(1, 1).real()) << '\n';
  out << "p_mp " << fx::format_double(rho(2, 2).real()) << '\n';
  out << "p_mm " << fx::format_double(rho(3, 3).real()) << '\n';
  out << "sigma_xx " << fx::format_double(sigma_xx) << '\n';
  out << "offdiag_max " << fx::format_double(offdiag_max) << '\n';
  emit(o.output, out.str());
  return 0;
}

// Fills in defaults from a JSON config file named by --config: every key is a
// long option of the invoked subcommand, and explicit command-line flags win.
void inject_config_defaults(CLI::App& app, std::vector<std::string>& tokens) {
  std::string subname;
  for (const auto& t : tokens)
    if (!t.empty() && t[0] != '-') {
      subname = t;
      break;
    }

  std::string path;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    if (t == "--config" && i + 1 < tokens.size()) {
      path = tokens[i + 1];
      break;
    }
    if (t.rfind("--config=", 0) == 0) {
      path = t.substr(9);
      break;
    }
  }
  if (path.empty() || subname.empty()) return;

  CLI::App* sub = nullptr;
  try {
    sub = app.get_subcommand(subname);
  } catch (const CLI::Error&) {
    return;  // let the normal parse report the unknown subcommand
  }

  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("config file " + path + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("config file " + path + " must hold a JSON object");

  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string flag = "--" + it.key();
    bool present = false;
    for (const auto& t : tokens)
      if (t == flag || t.rfind(flag + "=", 0) == 0) {
        present = true;
        break;
      }
    if (present) continue;
    if (sub->get_option_no_throw(flag) == nullptr)
      throw std::runtime_error("config key '" + it.key() + "' is not an option of " + subname);
    tokens.push_back(flag);
    tokens.push_back(it.value().is_string() ? it.value().get<std::string>() : it.value().dump());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Two-photon optics simulator: beam-splitter preparations, arm-parity measurements, "
      "and contextuality witnesses, with partial-distinguishability sweeps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "1.0.0");

  const std::vector<std::string> witness_names = {"kcbs", "ncycle", "yu-oh", "opt3"};

  ScalarOpts so;
  auto add_scalar = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", so.config, "JSON file with option defaults; flags win");
    sub->add_option("--format", so.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--output", so.output,
                    "write to this file instead of stdout "
                    "(FOCKCTX_OUTPUT_DIR prefixes relative paths)");
    sub->add_option("--route", so.route, "evaluation route")
        ->check(CLI::IsMember({"operator", "sequential"}));
    sub->add_option("--prep-theta", so.prep_theta, "preparation beam-splitter angle");
    sub->add_option("--prep-phi", so.prep_phi, "preparation beam-splitter phase");
    return sub;
  };

  CLI::App* cmd_kcbs = add_scalar("kcbs", "pentagon witness on the two-mode two-photon sector");
  CLI::App* cmd_ncycle = add_scalar("ncycle", "odd n-cycle witness (n >= 5)");
  cmd_ncycle->add_option("--n", so.n, "cycle length, odd and at least 5")
      ->check(CLI::Range(5, 19));
  CLI::App* cmd_yuoh = add_scalar("yu-oh", "13-setting state-independent witness");
  CLI::App* cmd_opt3 = add_scalar("opt3", "optimally weighted 13-setting witness");

  HomOpts ho;
  CLI::App* cmd_hom =
      app.add_subcommand("hom", "two-photon coincidence vs beam-splitter angle");
  cmd_hom->add_option("--config", ho.config, "JSON file with option defaults; flags win");
  cmd_hom->add_option("--format", ho.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd_hom->add_option("--output", ho.output, "write to this file instead of stdout");
  cmd_hom->add_option("--eta", ho.eta, "distinguishability of the two photons, 0..1")
      ->check(CLI::Range(0.0, 1.0));
  CLI::Option* hom_theta = cmd_hom->add_option("--theta", ho.theta, "single mixing angle");
  CLI::Option* hom_grid =
      cmd_hom->add_option("--grid", ho.grid, "mixing-angle grid start:stop:count");
  hom_theta->excludes(hom_grid);

  SweepOpts sw;
  CLI::App* cmd_sweep = app.add_subcommand(
      "sweep-eta", "witness value vs distinguishability on the four-mode sector");
  cmd_sweep->add_option("--config", sw.config, "JSON file with option defaults; flags win");
  cmd_sweep->add_option("--format", sw.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd_sweep->add_option("--output", sw.output, "write to this file instead of stdout");
  cmd_sweep->add_option("--witness", sw.witness, "witness to sweep")
      ->check(CLI::IsMember(witness_names));
  cmd_sweep->add_option("--n", sw.n, "cycle length when --witness ncycle")
      ->check(CLI::Range(5, 19));
  cmd_sweep->add_option("--grid", sw.grid, "eta grid start:stop:count");
  cmd_sweep->add_option("--prep-theta", sw.prep_theta, "preparation beam-splitter angle");
  cmd_sweep->add_option("--prep-phi", sw.prep_phi, "preparation beam-splitter phase");
  CLI::Option* sweep_seed = cmd_sweep->add_option(
      "--seed", sw.seed, "draw a random preparation from this seed (overrides --prep-*)");

  RhoOpts ro;
  CLI::App* cmd_rho = app.add_subcommand(
      "rho-ab", "joint ancilla density matrix for an adjacent pentagon measurement pair");
  cmd_rho->add_option("--config", ro.config, "JSON file with option defaults; flags win");
  cmd_rho->add_option("--format", ro.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd_rho->add_option("--output", ro.output, "write to this file instead of stdout");
  cmd_rho->add_option("--pair", ro.pair, "first setting of the adjacent pair, 0..4");
  cmd_rho->add_option("--prep-theta", ro.prep_theta, "preparation beam-splitter angle");
  cmd_rho->add_option("--prep-phi", ro.prep_phi, "preparation beam-splitter phase");

  std::vector<std::string> tokens(argv + 1, argv + argc);
  try {
    inject_config_defaults(app, tokens);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  std::vector<const char*> cargv;
  cargv.reserve(tokens.size() + 1);
  cargv.push_back(argc > 0 ? argv[0] : "fockctx");
  for (const auto& t : tokens) cargv.push_back(t.c_str());

  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (app.got_subcommand(cmd_kcbs)) return run_scalar("kcbs", fx::kcbs_spec(), so, {});
    if (app.got_subcommand(cmd_ncycle))
      return run_scalar("ncycle", fx::ncycle_spec(so.n), so, {{"n", so.n}});
    if (app.got_subcommand(cmd_yuoh)) return run_scalar("yu-oh", fx::yu_oh_spec(), so, {});
    if (app.got_subcommand(cmd_opt3)) return run_scalar("opt3", fx::opt3_spec(), so, {});
    if (app.got_subcommand(cmd_hom)) return run_hom(ho, hom_theta->count() > 0);
    if (app.got_subcommand(cmd_sweep)) return run_sweep(sw, sweep_seed->count() > 0);
    if (app.got_subcommand(cmd_rho)) return run_rho(ro);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
