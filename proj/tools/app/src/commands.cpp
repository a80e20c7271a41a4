#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "gqml/dirac.hpp"
#include "gqml/errors.hpp"
#include "gqml/metric.hpp"
#include "gqml/rapid_decay.hpp"
#include "gqml/spec_io.hpp"
#include "gqml_app/cache.hpp"
#include "gqml_app/cli.hpp"
#include "gqml_app/verify.hpp"

namespace gqml::app {

namespace {

// Flags each command accepts besides --spec, --out and --no-cache.
const std::map<std::string, std::set<std::string>>& command_flags() {
  static const std::map<std::string, std::set<std::string>> table{
      {"validate", {}},
      {"norms", {"element", "k", "p", "tol", "format"}},
      {"distance", {"state-a", "state-b", "k", "tol", "budget"}},
      {"rd-report", {"p", "samples", "seed", "threads", "format"}},
      {"diameter", {"k", "p", "n", "samples", "pairs", "tol", "budget", "seed", "threads"}},
      {"verify", {"seed", "threads"}},
  };
  return table;
}

std::vector<std::string> given_flags(const RunConfig& c) {
  std::vector<std::string> out;
  if (!c.element_path.empty()) out.push_back("element");
  if (!c.state_a_path.empty()) out.push_back("state-a");
  if (!c.state_b_path.empty()) out.push_back("state-b");
  if (c.k) out.push_back("k");
  if (c.p) out.push_back("p");
  if (c.n) out.push_back("n");
  if (c.tol) out.push_back("tol");
  if (c.budget) out.push_back("budget");
  if (c.samples) out.push_back("samples");
  if (c.pairs) out.push_back("pairs");
  if (c.seed) out.push_back("seed");
  if (c.threads) out.push_back("threads");
  if (c.format) out.push_back("format");
  return out;
}

[[noreturn]] void reject(const std::string& message) { throw Error(ErrorKind::InvalidArgument, message); }

Json error_json(const Error& e) {
  return {{"error", std::string(to_string(e.kind()))},
          {"message", e.what()},
          {"pointer", e.pointer()},
          {"witness", e.witness()}};
}

DistanceOptions distance_options(const RunConfig& c) {
  DistanceOptions o;
  o.k = c.k.value_or(1);
  o.tol = c.tol.value_or(1e-6);
  o.budget = c.budget.value_or(2000);
  return o;
}

CommandResult cmd_validate(const GroupoidSpec& spec) {
  const auto& G = spec.groupoid;
  Json out{{"valid", true},
           {"group_order", G.order()},
           {"space_size", G.space_size()},
           {"arrows", G.size()},
           {"self_adjoint_parameters", SelfAdjointParameterization(G).dimension()},
           {"length_min_positive", spec.length.min_positive()},
           {"length_max", spec.length.max_value()}};
  return {kExitOk, dump_json(out), {}};
}

CommandResult cmd_norms(const GroupoidSpec& spec, const RunConfig& c) {
  const AlgebraElement f = parse_element(spec.groupoid, read_json_file(c.element_path));
  if (c.format.value_or("json") == "csv") {
    std::string out;
    for (int x = 0; x < spec.groupoid.space_size(); ++x) {
      if (x > 0) out += '\n';
      out += "# x = " + spec.space_labels[x] + "\n";
      out += fibre_matrix_csv(spec, f, x);
    }
    return {kExitOk, out, {}};
  }
  const double p = c.p.value_or(1.0);
  QuotientNormOptions qo;
  if (c.tol) qo.tol = *c.tol;
  const auto q = quotient_norm(f, qo);
  Json lip = Json::array();
  for (int k = 1; k <= c.k.value_or(1); ++k) {
    lip.push_back({{"k", k}, {"value", lipschitz_seminorm(spec.length, f, k)}});
  }
  Json out{{"sup", sup_norm(f)},
           {"module", module_norm(f)},
           {"i_norm", i_norm(f)},
           {"reduced", reduced_norm(f)},
           {"sobolev",
            {{"p", p},
             {"source", sobolev_norm(spec.length, f, p, SobolevSide::Source)},
             {"range", sobolev_norm(spec.length, f, p, SobolevSide::Range)},
             {"max", sobolev_norm(spec.length, f, p, SobolevSide::Max)}}},
           {"quotient",
            {{"value", q.value},
             {"lower", q.lower},
             {"upper", q.upper},
             {"iterations", q.iterations},
             {"converged", q.converged}}},
           {"lipschitz", lip}};
  return {kExitOk, dump_json(out), {}};
}

CommandResult cmd_distance(const GroupoidSpec& spec, const RunConfig& c) {
  const State a = parse_state(spec.groupoid, read_json_file(c.state_a_path));
  const State b = parse_state(spec.groupoid, read_json_file(c.state_b_path));
  const auto cert = connes_distance(spec.length, a, b, distance_options(c));
  CommandResult r{kExitOk, dump_json(certificate_to_json(cert)), {}};
  if (cert.status == DistanceStatus::BudgetExceeded) {
    r.exit_code = kExitBudget;
    r.diagnostics = "cut budget exhausted before the gap closed";
  }
  return r;
}

RdReport rd_report(const GroupoidSpec& spec, const RunConfig& c) {
  RdOptions o;
  o.p = c.p.value_or(1.0);
  o.samples = c.samples.value_or(10'000);
  o.seed = c.seed.value_or(42);
  o.threads = c.threads.value_or(1);
  return empirical_rd_constant(spec.length, o);
}

CommandResult cmd_rd_report(const GroupoidSpec& spec, const RunConfig& c) {
  const RdReport report = rd_report(spec, c);
  if (c.format.value_or("json") == "csv") return {kExitOk, tail_table_csv(report), {}};
  return {kExitOk, dump_json(rd_report_to_json(report)), {}};
}

CommandResult cmd_diameter(const GroupoidSpec& spec, RunConfig c) {
  const int k = c.k.value_or(1);
  const double p = c.p.value_or(0.5);
  const double n = c.n.value_or(1.0);
  if (!(k > p)) reject("diameter needs k > p");
  c.p = p;
  const double alpha = alpha_constant(spec.length, k, p, n);
  const RdReport rd = rd_report(spec, c);
  const double bound = diameter_bound(spec.length, k, p, n, rd.empirical_c);
  const double doubled = diameter_bound(spec.length, k, p, n, 2.0 * rd.empirical_c);

  std::mt19937_64 rng(c.seed.value_or(42));
  const DistanceOptions o = distance_options(c);
  Json distances = Json::array();
  double worst = 0.0;
  bool budget_hit = false;
  for (int i = 0; i < c.pairs.value_or(20); ++i) {
    const State mu = random_state(spec.groupoid, rng());
    const State nu = random_same_fibre_state(mu, rng());
    const auto cert = connes_distance(spec.length, mu, nu, o);
    budget_hit = budget_hit || cert.status == DistanceStatus::BudgetExceeded;
    worst = std::max(worst, cert.upper);
    distances.push_back({{"lower", cert.lower}, {"upper", cert.upper}, {"status", std::string(to_string(cert.status))}});
  }
  Json out{{"k", k},
           {"p", p},
           {"n", n},
           {"alpha", alpha},
           {"rd_constant", rd.empirical_c},
           {"rd_constant_is_lower_estimate", true},
           {"bound", bound},
           {"bound_doubled_constant", doubled},
           {"max_sampled_distance", worst},
           {"within_bound", worst <= bound + o.tol},
           {"within_doubled_bound", worst <= doubled + o.tol},
           {"distances", distances}};
  CommandResult r{kExitOk, dump_json(out), {}};
  if (budget_hit) {
    r.exit_code = kExitBudget;
    r.diagnostics = "some distances ran out of cut budget; their upper bounds were used";
  }
  return r;
}

CommandResult cmd_verify(const GroupoidSpec& spec, const RunConfig& c) {
  const Json report = verify_suite(spec, c.seed.value_or(42), c.threads.value_or(1));
  CommandResult r{kExitOk, dump_json(report), {}};
  if (!verify_passed(report)) {
    r.exit_code = kExitInternal;
    r.diagnostics = "at least one invariant suite failed";
  }
  return r;
}

}  // namespace

void validate_config(const RunConfig& c) {
  const auto& table = command_flags();
  const auto it = table.find(c.command);
  if (it == table.end()) reject("unknown command \"" + c.command + "\"");
  if (c.spec_path.empty()) reject("--spec is required");
  for (const auto& flag : given_flags(c)) {
    if (!it->second.contains(flag)) reject("--" + flag + " does not apply to " + c.command);
  }
  if (c.command == "norms" && c.element_path.empty()) reject("norms needs --element");
  if (c.command == "distance" && (c.state_a_path.empty() || c.state_b_path.empty())) {
    reject("distance needs --state-a and --state-b");
  }
  if (c.k && (*c.k < 1 || *c.k > power_cap())) reject("-k must be in 1.." + std::to_string(power_cap()));
  if (c.p && !(*c.p > 0.0)) reject("-p must be positive");
  if (c.n && !(*c.n >= 1.0)) reject("-n must be at least 1");
  if (c.tol && !(*c.tol > 0.0)) reject("--tol must be positive");
  if (c.budget && *c.budget < 1) reject("--budget must be positive");
  if (c.samples && *c.samples < 1) reject("--samples must be positive");
  if (c.pairs && *c.pairs < 1) reject("--pairs must be positive");
  if (c.threads && *c.threads < 1) reject("--threads must be positive");
  if (c.format && *c.format != "json" && *c.format != "csv") reject("--format must be json or csv");
}

CommandResult run(const RunConfig& config) {
  try {
    validate_config(config);
    const GroupoidSpec spec = load_spec(config.spec_path, !config.no_cache);
    if (config.command == "validate") return cmd_validate(spec);
    if (config.command == "norms") return cmd_norms(spec, config);
    if (config.command == "distance") return cmd_distance(spec, config);
    if (config.command == "rd-report") return cmd_rd_report(spec, config);
    if (config.command == "diameter") return cmd_diameter(spec, config);
    return cmd_verify(spec, config);
  } catch (const Error& e) {
    int code = kExitInternal;
    if (e.kind() == ErrorKind::FibreToleranceAmbiguous) {
      code = kExitAmbiguous;
    } else if (e.is_validation_error()) {
      code = kExitValidation;
    }
    std::string diag = e.what();
    if (!e.pointer().empty()) diag += " at " + e.pointer();
    return {code, dump_json(error_json(e)), diag};
  } catch (const std::exception& e) {
    return {kExitInternal, dump_json(Json{{"error", "Internal"}, {"message", e.what()}}), e.what()};
  }
}

}  // namespace gqml::app
