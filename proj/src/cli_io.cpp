// Copyright 2026 The extremal-qudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "extremal/cli_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "extremal/commutant.hpp"
#include "extremal/extremal_solver.hpp"
#include "extremal/format.hpp"
#include "extremal/random.hpp"
#include "extremal/spectral.hpp"

namespace extremal {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorCode::invalid_argument, "config: " + what);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) config_error(where + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) config_error(where + " must be finite");
  return v;
}

template <std::size_t N>
std::array<double, N> number_array(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != N) config_error(where + " must be an array of " + std::to_string(N) + " numbers");
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = number(j[i], where + "[" + std::to_string(i) + "]");
  return out;
}

Mat4c parse_matrix(const json& j) {
  if (!j.is_array() || j.size() != 4) config_error("hamiltonian.matrix must be a 4 x 4 array");
  Mat4c m;
  for (int r = 0; r < 4; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != 4) config_error("hamiltonian.matrix must be a 4 x 4 array");
    for (int c = 0; c < 4; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      const std::string where = "hamiltonian.matrix[" + std::to_string(r) + "][" + std::to_string(c) + "]";
      if (e.is_array()) {
        const auto v = number_array<2>(e, where);
        m(r, c) = cplx(v[0], v[1]);
      } else {
        m(r, c) = number(e, where);
      }
    }
  }
  const double defect = hermiticity_defect(m);
  if (!(defect <= kHermitianTolerance)) {
    std::ostringstream msg;
    msg << "config: hamiltonian.matrix is not Hermitian (max |H - H^dagger| = " << defect << ")";
    throw Error(ErrorCode::non_hermitian, msg.str());
  }
  return m;
}

json matrix_json(const MatX& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

json vector_json(const VecX& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

std::string coeff_name(FanoIndex i) {
  return "r" + std::to_string(i.p) + std::to_string(i.q);
}

json stratum_json(const StratumDescriptor& s) {
  return {{"d", s.d},     {"multiplicities", s.multiplicities}, {"k", s.k},
          {"codim", s.codim}, {"dim", s.dim}, {"r", s.r}, {"n", s.n},
          {"flag_manifold", s.multiplicities.empty() ? std::string("unknown") : s.flag_manifold()}};
}

json target_json(const MixingTarget& t) {
  json j = {{"c", vector_json(t.c)},
            {"admissible", t.admissible},
            {"label", to_string(t.label)},
            {"bezoutian_rank", t.bezoutian_rank},
            {"multiplicities", t.multiplicities},
            {"diagnostics", t.diagnostics}};
  if (t.spectrum) j["spectrum"] = vector_json(*t.spectrum);
  return j;
}

const std::map<Command, std::set<std::string>>& allowed_keys() {
  static const std::map<Command, std::set<std::string>> keys{
      {Command::analyze, {"command", "hamiltonian", "mixing", "output", "seed"}},
      {Command::sweep, {"command", "hamiltonian", "mixing", "sweep", "output", "seed"}},
      {Command::region, {"command", "region", "output", "seed"}},
      {Command::classify, {"command", "hamiltonian", "weights", "state", "output", "seed"}},
      {Command::verify, {"command", "output", "seed", "inject_fault"}},
  };
  return keys;
}

void write_text(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (config.output.path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(config.output.path, std::ios::binary);
  if (!f) throw Error(ErrorCode::invalid_argument, "cannot open output file " + config.output.path);
  f << text;
}

// ---- verification suites -------------------------------------------------

struct Suite {
  std::string name;
  int checks = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 10) failures.push_back(what);
    if (!ok && failures.size() == 10) failures.push_back("...");
  }
};

HamiltonianParams random_params(Rng& rng, bool kramers) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  HamiltonianParams p;
  p.beta = u(rng);
  p.gamma = u(rng);
  p.delta = u(rng);
  p.epsilon = u(rng);
  p.sigma = u(rng);
  p.s = kramers ? p.sigma : -p.sigma;
  return p;
}

Suite suite_pauli(Rng& rng) {
  Suite s{"pauli_algebra", 0, {}};
  for (const auto& c : commutator_tables_check()) s.expect(c.pass, c.name);
  for (int i = 0; i < 50; ++i) {
    const Mat4c rho = random_density_matrix(4, rng);
    s.expect(max_abs(MatXc(fano_compose(fano_decompose(rho)) - rho)) <= 1e-14, "Fano round trip");
    const VecX a = char_poly_coeffs(MatXc(partial_transpose(rho, Subsystem::A)));
    const VecX b = char_poly_coeffs(MatXc(partial_transpose(rho, Subsystem::B)));
    s.expect((a - b).cwiseAbs().maxCoeff() <= 1e-12, "PT_A and PT_B characteristic polynomials");
  }
  return s;
}

Suite suite_hamiltonian(Rng& rng) {
  Suite s{"hamiltonian_model", 0, {}};
  const TimeReversalOperator t = build_time_reversal();
  s.expect(max_abs(MatXc(t.unitary * t.unitary.conjugate() + Mat4c::Identity())) == 0.0, "T^2 = -I");
  for (int i = 0; i < 50; ++i) {
    const HamiltonianParams p = random_params(rng, true);
    const Mat4c h = build_hamiltonian(p);
    s.expect(time_reversal_commutes(h, t).commutes, "[T, H] = 0 at s = sigma");
    const double e = p.kramers_energy();
    s.expect(std::abs(h.determinant().real() - std::pow(e, 4)) <= 1e-10 * std::pow(e, 4), "det H = E^4");
    const HamiltonianParams b = random_params(rng, false);
    s.expect(!time_reversal_commutes(build_hamiltonian(b), t).commutes, "[T, H] != 0 at s = -sigma");
  }
  return s;
}

Suite suite_commutant(Rng& rng) {
  Suite s{"commutant_analysis", 0, {}};
  for (int i = 0; i < 50; ++i) {
    const StratumDescriptor k = stratum_of(build_hamiltonian(random_params(rng, true)));
    s.expect(k.r == 8 && k.n == 7, "Kramers stratum (r, n) = (8, 7)");
    const StratumDescriptor b = stratum_of(build_hamiltonian(random_params(rng, false)));
    s.expect(b.r == 12 && b.n == 3, "broken stratum (r, n) = (12, 3)");
  }
  s.expect(stratum_of(Mat4c::Identity()).r == 0, "scalar matrix is a point");
  return s;
}

Suite suite_spectral(Rng& rng) {
  Suite s{"spectral_positivity", 0, {}};
  for (int i = 0; i < 200; ++i) {
    const int d = 2 + i % 5;
    const VecX lambda = random_spectrum(d, rng);
    const VecX a = char_poly_coeffs(lambda);
    const VecX t = power_sums(lambda, d);
    double gap = 0.0;
    for (int k = 1; k <= d; ++k) {
      gap = std::max(gap, std::abs(girard_waring(t, k) - a(k)));
      gap = std::max(gap, std::abs(girard_waring_inverse(a, k) - t(k)));
    }
    s.expect(gap <= 1e-12, "Girard-Waring round trip");
  }
  s.expect(region_membership(make_target(0.0, 0.0, 0.0)).admissible, "pure vertex admissible");
  s.expect(region_membership(make_target(3.0 / 8.0, 1.0 / 16.0, 1.0 / 256.0)).admissible, "maximally mixed vertex admissible");
  s.expect(!region_membership(make_target(0.4, 0.0, 0.0)).admissible, "c2 above bound rejected");
  return s;
}

Suite suite_solver(Rng& rng) {
  Suite s{"extremal_solver", 0, {}};
  for (int i = 0; i < 20; ++i) {
    const Mat4c h = build_hamiltonian(random_params(rng, i % 2 == 0));
    Eigen::SelfAdjointEigenSolver<Mat4c> es(h, Eigen::EigenvaluesOnly);
    const ExtremalStateSet set = solve_pure_extremal(h);
    std::vector<double> m = set.mean_values;
    std::sort(m.begin(), m.end());
    bool ok = m.size() == 4;
    for (std::size_t k = 0; ok && k < 4; ++k) ok = std::abs(m[k] - es.eigenvalues()(static_cast<Eigen::Index>(k))) <= 1e-8;
    s.expect(ok, "pure extremal mean values equal the eigenvalues");
  }
  return s;
}

Suite suite_entanglement(Rng& rng, const PptConstants& constants) {
  Suite s{"entanglement_ppt", 0, {}};
  for (int i = 0; i < 200; ++i) {
    const DensityState rho = DensityState::from_matrix(random_density_matrix(4, rng));
    try {
      const EntanglementVerdict v = classify(rho, constants);
      const bool pt_negative = v.pt_min_eigenvalue < -1e-10;
      const bool pt_positive = v.pt_min_eigenvalue > 1e-10;
      s.expect(!(pt_negative && v.is_separable()) && !(pt_positive && !v.is_separable()),
               "PPT verdict agrees with the partial-transpose spectrum");
    } catch (const Error& e) {
      s.expect(false, e.what());
    }
  }
  for (int i = 0; i < 20; ++i) {
    const HamiltonianParams p = random_params(rng, true);
    const double b = std::uniform_real_distribution<double>(0.0, 0.5)(rng);
    try {
      const Table2Result r = table2_classify(MixtureWeights::from({0.5 - b, 0.5 - b, b, b}), p);
      s.expect(r.formula_residual <= 1e-9 && r.verdict.is_separable(), "two-pair mixtures are separable");
    } catch (const Error& e) {
      s.expect(false, e.what());
    }
  }
  return s;
}

Suite suite_propositions(Rng& rng) {
  Suite s{"propositions", 0, {}};
  for (int i = 0; i < 20; ++i) {
    const HamiltonianParams p = random_params(rng, true);
    const Mat4c h = build_hamiltonian(p);
    const ExtremalStateSet set = closed_form_kramers_pure(p);
    std::vector<Mat4c> states;
    for (const auto& st : set.states) states.push_back(st.matrix());
    s.expect(verify_proposition1(h, states).holds, "Proposition 1");
    s.expect(verify_proposition2(h, states).holds, "Proposition 2");
  }
  return s;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::analyze: return "analyze";
    case Command::sweep: return "sweep";
    case Command::region: return "region";
    case Command::classify: return "classify";
    case Command::verify: return "verify";
  }
  return "verify";
}

Command command_from_string(const std::string& name) {
  for (Command c : {Command::analyze, Command::sweep, Command::region, Command::classify, Command::verify})
    if (to_string(c) == name) return c;
  config_error("unknown command '" + name + "'");
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument:
    case ErrorCode::non_hermitian: return kExitConfig;
    case ErrorCode::inadmissible_target: return kExitInadmissible;
    case ErrorCode::solver_failure: return kExitSolver;
    case ErrorCode::verification_failure: return kExitVerification;
    case ErrorCode::internal: return kExitInternal;
  }
  return kExitInternal;
}

Mat4c RunConfig::hamiltonian() const {
  if (matrix) return *matrix;
  if (params) return build_hamiltonian(*params);
  throw Error(ErrorCode::invalid_argument, "config: hamiltonian is required");
}

RunConfig parse_config(const json& j, std::optional<Command> command) {
  if (!j.is_object()) config_error("top level must be an object");
  RunConfig c;
  if (j.contains("command")) {
    if (!j["command"].is_string()) config_error("command must be a string");
    c.command = command_from_string(j["command"].get<std::string>());
    if (command && *command != c.command)
      config_error("command '" + to_string(c.command) + "' does not match '" + to_string(*command) + "'");
  } else if (command) {
    c.command = *command;
  } else {
    config_error("command is required");
  }
  const auto& allowed = allowed_keys().at(c.command);
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) config_error("field '" + key + "' is not used by command '" + to_string(c.command) + "'");

  if (j.contains("hamiltonian")) {
    const json& h = j["hamiltonian"];
    if (!h.is_object()) config_error("hamiltonian must be an object");
    if (h.contains("matrix")) {
      if (h.size() != 1) config_error("hamiltonian.matrix excludes other hamiltonian fields");
      c.matrix = parse_matrix(h["matrix"]);
    } else {
      HamiltonianParams p;
      for (const char* name : {"beta", "gamma", "delta", "epsilon", "sigma", "s"}) {
        if (!h.contains(name)) config_error(std::string("hamiltonian.") + name + " is required");
        p.set(name, number(h[name], std::string("hamiltonian.") + name));
      }
      if (h.size() != 6) config_error("hamiltonian has unknown fields");
      c.params = p;
    }
  }
  if (j.contains("mixing")) c.mixing = number_array<3>(j["mixing"], "mixing");
  if (j.contains("weights")) c.weights = number_array<4>(j["weights"], "weights");
  if (j.contains("state")) {
    try {
      c.state = state_from_json(j["state"]).fano;
    } catch (const nlohmann::json::exception& e) {
      config_error(std::string("state: ") + e.what());
    }
  }
  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    if (!s.is_object()) config_error("sweep must be an object");
    SweepSpec spec;
    if (!s.contains("parameter") || !s["parameter"].is_string()) config_error("sweep.parameter must be a string");
    spec.parameter = s["parameter"].get<std::string>();
    try {
      HamiltonianParams{}.get(spec.parameter);
    } catch (const Error&) {
      config_error("sweep.parameter '" + spec.parameter + "' is not a Hamiltonian parameter");
    }
    if (!s.contains("start") || !s.contains("stop") || !s.contains("steps")) config_error("sweep needs start, stop and steps");
    spec.start = number(s["start"], "sweep.start");
    spec.stop = number(s["stop"], "sweep.stop");
    if (!s["steps"].is_number_integer()) config_error("sweep.steps must be an integer");
    spec.steps = s["steps"].get<int>();
    if (spec.steps < 2) config_error("sweep.steps must be at least 2");
    c.sweep = spec;
  }
  if (j.contains("region")) {
    const json& r = j["region"];
    if (!r.is_object() || !r.contains("resolution") || !r["resolution"].is_number_integer())
      config_error("region.resolution must be an integer");
    c.region_resolution = r["resolution"].get<int>();
    if (c.region_resolution < 2) config_error("region.resolution must be at least 2");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0))
      config_error("seed must be a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("inject_fault")) {
    if (!j["inject_fault"].is_string() || j["inject_fault"].get<std::string>() != "ppt_constant")
      config_error("inject_fault must be \"ppt_constant\"");
    c.inject_fault = "ppt_constant";
  }

  const bool tabular = c.command == Command::sweep || c.command == Command::region;
  c.output.format = tabular ? "csv" : "json";
  if (j.contains("output")) {
    const json& o = j["output"];
    if (!o.is_object()) config_error("output must be an object");
    if (o.contains("path")) {
      if (!o["path"].is_string()) config_error("output.path must be a string");
      c.output.path = o["path"].get<std::string>();
    }
    if (o.contains("format")) {
      if (!o["format"].is_string()) config_error("output.format must be a string");
      c.output.format = o["format"].get<std::string>();
    }
  }
  if (c.output.format != "json" && c.output.format != "csv") config_error("output.format must be csv or json");
  if (!tabular && c.output.format != "json") config_error("command '" + to_string(c.command) + "' writes json only");

  switch (c.command) {
    case Command::analyze:
      if (!c.has_hamiltonian()) config_error("analyze needs hamiltonian");
      break;
    case Command::sweep:
      if (!c.params) config_error("sweep needs hamiltonian parameters");
      if (!c.sweep) config_error("sweep needs a sweep block");
      break;
    case Command::classify:
      if (c.state.has_value() == (c.weights.has_value() || c.has_hamiltonian()))
        config_error("classify needs either state, or weights with hamiltonian parameters");
      if (c.weights && !c.params) config_error("classify with weights needs hamiltonian parameters");
      if (c.params && !c.weights) config_error("classify with hamiltonian needs weights");
      break;
    case Command::region:
    case Command::verify:
      break;
  }
  return c;
}

RunConfig load_config(const std::string& path, std::optional<Command> command) {
  std::ifstream f(path);
  if (!f) config_error("cannot read " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    config_error(std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j, command);
}

json state_to_json(const DensityState& s) {
  return {{"fano", matrix_json(s.fano.coeffs)},
          {"tau_a", vector_json(s.tau_a)},
          {"tau_b", vector_json(s.tau_b)},
          {"correlation", matrix_json(s.correlation)},
          {"schlienz_mahler", matrix_json(s.schlienz_mahler)}};
}

DensityState state_from_json(const json& j) {
  const json& f = j.at("fano");
  if (!f.is_array() || f.size() != 4) throw Error(ErrorCode::invalid_argument, "state.fano must be 4 x 4");
  FanoOperator op;
  for (int p = 0; p < 4; ++p) {
    const json& row = f.at(static_cast<std::size_t>(p));
    if (!row.is_array() || row.size() != 4) throw Error(ErrorCode::invalid_argument, "state.fano must be 4 x 4");
    for (int q = 0; q < 4; ++q) op(p, q) = number(row.at(static_cast<std::size_t>(q)), "state.fano");
  }
  if (op(0, 0) != 1.0) throw Error(ErrorCode::invalid_argument, "state.fano[0][0] must be 1");
  return DensityState::from_fano(op);
}

json verdict_to_json(const EntanglementVerdict& v) {
  return {{"a2pt", v.a2pt},
          {"a3pt", v.a3pt},
          {"a4pt", v.a4pt},
          {"det_c", v.det_c},
          {"det_m", v.det_m},
          {"beta", v.beta},
          {"linear_entropy", v.linear_entropy},
          {"pt_min_eigenvalue", v.pt_min_eigenvalue},
          {"label", to_string(v.label)},
          {"violated", v.violated},
          {"table2_case", to_string(v.table2_case)}};
}

json cmd_analyze(const RunConfig& config) {
  const Mat4c h = config.hamiltonian();
  SolverOptions options;
  options.seed = config.seed;
  json report;
  if (config.params) {
    const auto& p = *config.params;
    report["hamiltonian"] = {{"beta", p.beta}, {"gamma", p.gamma}, {"delta", p.delta},
                             {"epsilon", p.epsilon}, {"sigma", p.sigma}, {"s", p.s}};
  } else {
    json m = json::array();
    for (int r = 0; r < 4; ++r) {
      json row = json::array();
      for (int c = 0; c < 4; ++c) row.push_back({h(r, c).real(), h(r, c).imag()});
      m.push_back(row);
    }
    report["hamiltonian"] = {{"matrix", m}};
  }
  Eigen::SelfAdjointEigenSolver<Mat4c> es(h, Eigen::EigenvaluesOnly);
  report["eigenvalues"] = vector_json(es.eigenvalues());

  const CommutantSolution sol = solve_commutant(h);
  report["stratum"] = stratum_json(sol.stratum);
  json relations = json::array();
  for (const auto& rel : sol.dependent) {
    json terms = json::array();
    for (const auto& [idx, coef] : rel.terms) terms.push_back({{"free", coeff_name(idx)}, {"coefficient", coef}});
    relations.push_back({{"target", coeff_name(rel.target)}, {"terms", terms}});
  }
  json free = json::array();
  for (const auto& f : sol.free) free.push_back(coeff_name(f));
  report["commutant"] = {{"dimension", sol.dimension()},
                         {"free", free},
                         {"relations", relations},
                         {"warnings", sol.warnings}};
  const CommutationCheck tr = time_reversal_commutes(h, build_time_reversal());
  report["time_reversal"] = {{"commutes", tr.commutes}, {"residual", tr.residual}};

  ExtremalStateSet set;
  json extremal;
  if (config.mixing) {
    const auto& m = *config.mixing;
    const MixingTarget target = region_membership(make_target(m[0], m[1], m[2]));
    extremal["mixing"] = target_json(target);
    set = solve_mixed_extremal(h, target, options);
  } else {
    set = solve_pure_extremal(h, options);
  }
  if (sol.stratum.n == 15) set.notes.push_back("H is scalar: every state commutes with H (n = 15)");
  extremal["purity"] = to_string(set.purity_class);
  extremal["method"] = set.method;
  extremal["complete"] = set.complete;
  extremal["family_dimension"] = set.family_dimension;
  extremal["notes"] = set.notes;
  json states = json::array();
  for (std::size_t i = 0; i < set.states.size(); ++i) {
    json st = state_to_json(set.states[i]);
    st["mean_value"] = set.mean_values[i];
    st["branch_weights"] = set.branch_labels[i].weights;
    st["commutation_residual"] = set.commutation_residuals[i];
    st["coefficient_residual"] = set.coefficient_residuals[i];
    st["min_eigenvalue"] = set.min_eigenvalues[i];
    st["verdict"] = verdict_to_json(classify(set.states[i]));
    states.push_back(st);
  }
  extremal["states"] = states;
  extremal["mean_values"] = set.mean_values;
  report["extremal"] = extremal;
  return report;
}

std::string cmd_sweep(const RunConfig& config) {
  if (!config.params || !config.sweep) config_error("sweep needs hamiltonian parameters and a sweep block");
  MixingTarget target = make_target(0.0, 0.0, 0.0);
  if (config.mixing) {
    const auto& m = *config.mixing;
    target = region_membership(make_target(m[0], m[1], m[2]));
    if (!target.admissible) throw Error(ErrorCode::inadmissible_target, "mixing target is not admissible");
  }
  SolverOptions options;
  options.seed = config.seed;
  const auto& s = *config.sweep;
  const SweepResult r = sweep_mean_values(*config.params, s.parameter, s.start, s.stop, s.steps, target, options);
  std::ostringstream out;
  if (config.output.format == "csv") {
    write_sweep_csv(out, r);
  } else {
    json points = json::array();
    for (const auto& pt : r.points) {
      json sep = json::array();
      for (bool b : pt.separable) sep.push_back(b);
      points.push_back({{"sweep_value", pt.value}, {"mean_values", pt.mean_values}, {"separable", sep}, {"error", pt.error}});
    }
    out << json{{"parameter", r.parameter}, {"branches", r.branches}, {"crossings", r.crossings}, {"points", points}}.dump(2)
        << "\n";
  }
  return out.str();
}

std::string cmd_region(const RunConfig& config) {
  const auto points = region_sample(config.region_resolution);
  std::ostringstream out;
  if (config.output.format == "csv") {
    out << "c2,c3,c4,label,bezoutian_rank\n";
    for (const auto& p : points)
      out << format_double(p.c2) << ',' << format_double(p.c3) << ',' << format_double(p.c4) << ',' << to_string(p.label)
          << ',' << p.bezoutian_rank << '\n';
  } else {
    json arr = json::array();
    for (const auto& p : points)
      arr.push_back({{"c2", p.c2}, {"c3", p.c3}, {"c4", p.c4}, {"label", to_string(p.label)}, {"bezoutian_rank", p.bezoutian_rank}});
    out << json{{"resolution", config.region_resolution}, {"points", arr}}.dump(2) << "\n";
  }
  return out.str();
}

json cmd_classify(const RunConfig& config) {
  if (config.state) {
    const DensityState s = DensityState::from_fano(*config.state);
    return {{"state", state_to_json(s)}, {"verdict", verdict_to_json(classify(s))}};
  }
  if (!config.weights || !config.params) config_error("classify needs weights with hamiltonian parameters");
  if (!config.params->is_kramers()) config_error("classify with weights needs s = sigma");
  const MixtureWeights w = MixtureWeights::from(*config.weights);
  const Table2Result r = table2_classify(w, *config.params);
  json table2 = {{"case", to_string(r.verdict.table2_case)},
                 {"row", r.row},
                 {"canonical", r.canonical},
                 {"permutation", r.permutation},
                 {"formula", {{"a2pt", r.formula.a2}, {"a3pt", r.formula.a3}, {"a4pt", r.formula.a4}}},
                 {"formula_residual", r.formula_residual},
                 {"kramers_invariant", r.kramers_invariant},
                 {"t_residual", r.t_residual}};
  const DetCM dcm = det_cm_closed_forms(*config.params, w);
  return {{"weights", w.p},
          {"x", w.x()},
          {"y", w.y()},
          {"z", w.z()},
          {"state", state_to_json(closed_form_degenerate(*config.params, w))},
          {"verdict", verdict_to_json(r.verdict)},
          {"closed_form_determinants", {{"det_c", dcm.det_c}, {"det_m", dcm.det_m}}},
          {"table2", table2}};
}

VerifyReport cmd_verify(const RunConfig& config) {
  Rng rng(config.seed);
  PptConstants constants;
  if (config.inject_fault == "ppt_constant") constants.det_c_weight *= 1.0 + 1e-6;
  std::vector<Suite> suites;
  auto guarded = [&](const std::string& name, auto&& fn) {
    try {
      suites.push_back(fn());
    } catch (const std::exception& e) {
      suites.push_back(Suite{name, 1, {e.what()}});
    }
  };
  guarded("pauli_algebra", [&] { return suite_pauli(rng); });
  guarded("hamiltonian_model", [&] { return suite_hamiltonian(rng); });
  guarded("commutant_analysis", [&] { return suite_commutant(rng); });
  guarded("spectral_positivity", [&] { return suite_spectral(rng); });
  guarded("extremal_solver", [&] { return suite_solver(rng); });
  guarded("entanglement_ppt", [&] { return suite_entanglement(rng, constants); });
  guarded("propositions", [&] { return suite_propositions(rng); });

  VerifyReport report;
  report.pass = true;
  json arr = json::array();
  for (const auto& s : suites) {
    const bool ok = s.failures.empty();
    report.pass = report.pass && ok;
    arr.push_back({{"name", s.name}, {"checks", s.checks}, {"pass", ok}, {"failures", s.failures}});
  }
  report.summary = {{"pass", report.pass}, {"seed", config.seed}, {"suites", arr}};
  return report;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::analyze: {
        const json report = cmd_analyze(config);
        write_text(config, report.dump(2) + "\n", out);
        if (!report["extremal"]["complete"].get<bool>()) {
          err << "error: extremal solution set is incomplete\n";
          return kExitSolver;
        }
        return kExitOk;
      }
      case Command::sweep:
        write_text(config, cmd_sweep(config), out);
        return kExitOk;
      case Command::region:
        write_text(config, cmd_region(config), out);
        return kExitOk;
      case Command::classify:
        write_text(config, cmd_classify(config).dump(2) + "\n", out);
        return kExitOk;
      case Command::verify: {
        const VerifyReport r = cmd_verify(config);
        write_text(config, r.summary.dump(2) + "\n", out);
        if (!r.pass) err << "verification failed\n";
        return r.pass ? kExitOk : kExitVerification;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace extremal
