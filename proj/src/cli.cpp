#include "qv/cli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qv/adversarial.hpp"
#include "qv/entanglement.hpp"
#include "qv/io.hpp"
#include "qv/qpv.hpp"
#include "qv/sim.hpp"
#include "qv/states.hpp"
#include "qv/stats.hpp"
#include "qv/strategies.hpp"
#include "qv/types.hpp"

namespace qv::cli {

namespace {

using nlohmann::json;

constexpr double kUnsetReal = std::numeric_limits<double>::quiet_NaN();
constexpr double kQuarterPi = 0.78539816339744830961;
/// Grid angles this close to pi/4 are snapped onto it exactly, so sweeps
/// written with rounded endpoints such as 0.7854 hit the closed-form value.
constexpr double kThetaSnapTol = 1e-3;

const char* kFamilyList =
    "bell, mes, ghz2, ghzopt, stabilizer, coloring, twoqubit-local, "
    "oneway-qubit, twoway-qubit, manyround-qubit, oneway-qudit, twoway-qudit, "
    "w-locc, w-local, dicke-locc, homogeneous, global";

/// Parameters shared by every command that can build a strategy in place.
struct FamilyOpts {
  std::string family;
  std::string strategy_file;
  int d = 0;
  int n = 0;
  int k = 0;
  double theta = kUnsetReal;
  double lambda = kUnsetReal;
  std::vector<double> schmidt;
  std::string graph_file;
  std::string state_spec;
};

void add_family_flags(CLI::App* cmd, FamilyOpts& o, bool with_file) {
  cmd->add_option("--family", o.family,
                  std::string("strategy family; one of ") + kFamilyList);
  if (with_file) {
    cmd->add_option("--strategy", o.strategy_file, "strategy JSON file");
  }
  cmd->add_option("--d", o.d, "local dimension (mes)");
  cmd->add_option("--n", o.n,
                  "qubit count (ghz2, ghzopt, w-locc, w-local, dicke-locc)");
  cmd->add_option("--k", o.k, "excitation count (dicke-locc)");
  cmd->add_option("--theta", o.theta,
                  "state angle in (0, pi/4] (twoqubit-local, oneway-qubit, "
                  "twoway-qubit, manyround-qubit)");
  cmd->add_option("--schmidt", o.schmidt,
                  "Schmidt coefficients (oneway-qudit, twoway-qudit)")
      ->delimiter(',');
  cmd->add_option("--graph", o.graph_file, "graph file (stabilizer, coloring)");
  cmd->add_option("--lambda", o.lambda,
                  "non-target eigenvalue (homogeneous)");
  cmd->add_option("--state", o.state_spec,
                  "target state spec (homogeneous, global)");
}

int need_count(const FamilyOpts& o, int v, const char* flag) {
  if (v <= 0) {
    throw std::invalid_argument("family " + o.family + " requires " + flag);
  }
  return v;
}

double need_real(const FamilyOpts& o, double v, const char* flag) {
  if (std::isnan(v)) {
    throw std::invalid_argument("family " + o.family + " requires " + flag);
  }
  return v;
}

const std::string& need_text(const FamilyOpts& o, const std::string& v,
                             const char* flag) {
  if (v.empty()) {
    throw std::invalid_argument("family " + o.family + " requires " + flag);
  }
  return v;
}

strategies::Strategy build_family(const FamilyOpts& o) {
  const std::string& f = o.family;
  if (f == "bell") return strategies::bell_strategy();
  if (f == "mes") return strategies::mes_strategy(need_count(o, o.d, "--d"));
  if (f == "ghz2") {
    return strategies::ghz_two_setting(need_count(o, o.n, "--n"));
  }
  if (f == "ghzopt") return strategies::ghz_optimal(need_count(o, o.n, "--n"));
  if (f == "stabilizer") {
    return strategies::stabilizer_strategy(
        io::load_graph(need_text(o, o.graph_file, "--graph")));
  }
  if (f == "coloring") {
    return strategies::coloring_strategy(
        io::load_graph(need_text(o, o.graph_file, "--graph")));
  }
  if (f == "twoqubit-local") {
    return strategies::two_qubit_local_optimal(
        need_real(o, o.theta, "--theta"));
  }
  if (f == "oneway-qubit") {
    return strategies::one_way_qubit(need_real(o, o.theta, "--theta"));
  }
  if (f == "twoway-qubit") {
    return strategies::two_way_qubit(need_real(o, o.theta, "--theta"));
  }
  if (f == "manyround-qubit") {
    return strategies::many_round_qubit(need_real(o, o.theta, "--theta"));
  }
  if (f == "oneway-qudit" || f == "twoway-qudit") {
    if (o.schmidt.empty()) {
      throw std::invalid_argument("family " + f + " requires --schmidt");
    }
    states::SchmidtVector lambda(o.schmidt);
    return f == "oneway-qudit" ? strategies::one_way_qudit(lambda)
                               : strategies::two_way_qudit(lambda);
  }
  if (f == "w-locc") return strategies::w_locc(need_count(o, o.n, "--n"));
  if (f == "w-local") return strategies::w_local(need_count(o, o.n, "--n"));
  if (f == "dicke-locc") {
    return strategies::dicke_locc(need_count(o, o.n, "--n"),
                                  need_count(o, o.k, "--k"));
  }
  if (f == "homogeneous") {
    return adversarial::homogeneous_strategy(
        io::parse_state(need_text(o, o.state_spec, "--state")),
        need_real(o, o.lambda, "--lambda"));
  }
  if (f == "global") {
    return strategies::global_strategy(
        io::parse_state(need_text(o, o.state_spec, "--state")));
  }
  throw std::invalid_argument("unknown family \"" + f + "\"; known families: " +
                              kFamilyList);
}

strategies::Strategy resolve_strategy(const FamilyOpts& o) {
  if (!o.strategy_file.empty() && !o.family.empty()) {
    throw std::invalid_argument("give either --family or --strategy, not both");
  }
  if (!o.strategy_file.empty()) return io::load_strategy(o.strategy_file);
  if (!o.family.empty()) return build_family(o);
  throw std::invalid_argument(
      "a strategy is required: pass --family NAME or --strategy FILE");
}

double parse_real(const std::string& text, const std::string& what) {
  size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (text.empty() || pos != text.size()) {
    throw std::invalid_argument(what + " expects a number, got \"" + text +
                                "\"");
  }
  return v;
}

long long parse_count(const std::string& text, const std::string& what) {
  size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (text.empty() || pos != text.size()) {
    throw std::invalid_argument(what + " expects an integer, got \"" + text +
                                "\"");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream s(text);
  while (std::getline(s, item, sep)) parts.push_back(item);
  return parts;
}

sim::Source parse_source(const std::string& text,
                         const strategies::Strategy& s) {
  std::string head = text;
  std::string arg;
  if (size_t colon = text.find(':'); colon != std::string::npos) {
    head = text.substr(0, colon);
    arg = text.substr(colon + 1);
  }
  if (head == "exact") {
    if (!arg.empty()) throw std::invalid_argument("exact takes no parameter");
    return sim::exact_source(s.target);
  }
  if (head == "worst") {
    return sim::worst_case_source(s, parse_real(arg, "worst"));
  }
  if (head == "depol") {
    return sim::depolarized_source(s.target, parse_real(arg, "depol"));
  }
  if (head == "custom") {
    if (arg.empty()) throw std::invalid_argument("custom expects custom:FILE");
    return sim::custom_source(io::load_operator(arg));
  }
  throw std::invalid_argument("unknown source \"" + text +
                              "\"; expected exact, worst:eps, depol:p, or "
                              "custom:FILE");
}

void emit_text(const std::string& text, const std::string& path,
               std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    io::write_text(path, text);
  }
}

void emit_json(const json& j, const std::string& path, std::ostream& out) {
  emit_text(j.dump(2) + "\n", path, out);
}

json result_to_json(const stats::TestResult& r, double epsilon, double nu) {
  json j{{"rounds", r.rounds},
         {"passes", r.passes},
         {"frequency", r.frequency},
         {"threshold", stats::worst_case_pass_prob(epsilon, nu)},
         {"reject", r.reject}};
  if (r.confidence) {
    j["confidence"] = *r.confidence;
  } else {
    j["confidence"] = nullptr;
  }
  return j;
}

json plan_to_json(const adversarial::AdversarialPlan& p) {
  return json{{"epsilon", p.epsilon}, {"delta", p.delta},
              {"lambda", p.lambda},   {"tau", p.tau},
              {"overhead", p.overhead}, {"rounds", p.rounds},
              {"mix", p.mix},         {"asymptotic", p.asymptotic}};
}

double snap_theta(double theta) {
  return std::abs(theta - kQuarterPi) < kThetaSnapTol ? kQuarterPi : theta;
}

std::string sweep_csv(const FamilyOpts& base, const std::string& theta_grid,
                      const std::string& n_range) {
  if (theta_grid.empty() == n_range.empty()) {
    throw std::invalid_argument("sweep requires exactly one of --theta a:b:k "
                                "or --n a:b");
  }
  if (base.family.empty()) {
    throw std::invalid_argument("sweep requires --family");
  }
  std::ostringstream csv;
  if (!theta_grid.empty()) {
    static const std::vector<std::string> kThetaFamilies{
        "twoqubit-local", "oneway-qubit", "twoway-qubit", "manyround-qubit"};
    if (std::find(kThetaFamilies.begin(), kThetaFamilies.end(), base.family) ==
        kThetaFamilies.end()) {
      throw std::invalid_argument("family " + base.family +
                                  " does not sweep over --theta");
    }
    std::vector<std::string> parts = split(theta_grid, ':');
    if (parts.size() != 3) {
      throw std::invalid_argument("--theta grid must be a:b:k");
    }
    double a = parse_real(parts[0], "--theta start");
    double b = parse_real(parts[1], "--theta end");
    long long k = parse_count(parts[2], "--theta count");
    if (!(b > a) || k < 1) {
      throw std::invalid_argument("--theta grid needs b > a and k >= 1");
    }
    csv << "theta,gap,predicted\n";
    // Half-open grid (a, b]: endpoints at a would leave the builders'
    // domain, and the last point lands exactly on b.
    for (long long i = 1; i <= k; ++i) {
      double theta =
          snap_theta(a + (b - a) * static_cast<double>(i) /
                             static_cast<double>(k));
      FamilyOpts o = base;
      o.theta = theta;
      strategies::Strategy s = build_family(o);
      csv << io::csv_double(theta) << ',' << io::csv_double(s.gap()) << ','
          << io::csv_double(s.predicted_gap.value_or(
                 std::numeric_limits<double>::quiet_NaN()))
          << '\n';
    }
    return csv.str();
  }
  static const std::vector<std::string> kCountFamilies{
      "mes", "ghz2", "ghzopt", "w-locc", "w-local", "dicke-locc"};
  if (std::find(kCountFamilies.begin(), kCountFamilies.end(), base.family) ==
      kCountFamilies.end()) {
    throw std::invalid_argument("family " + base.family +
                                " does not sweep over --n");
  }
  std::vector<std::string> parts = split(n_range, ':');
  if (parts.size() != 2) {
    throw std::invalid_argument("--n range must be a:b");
  }
  long long a = parse_count(parts[0], "--n start");
  long long b = parse_count(parts[1], "--n end");
  if (a > b) throw std::invalid_argument("--n range needs a <= b");
  csv << "n,gap,predicted\n";
  for (long long n = a; n <= b; ++n) {
    FamilyOpts o = base;
    if (base.family == "mes") {
      o.d = static_cast<int>(n);
    } else {
      o.n = static_cast<int>(n);
    }
    strategies::Strategy s = build_family(o);
    csv << n << ',' << io::csv_double(s.gap()) << ','
        << io::csv_double(s.predicted_gap.value_or(
               std::numeric_limits<double>::quiet_NaN()))
        << '\n';
  }
  return csv.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"quantum state verification toolkit"};
  app.name("qver");
  app.require_subcommand(1);

  // state build
  CLI::App* state_cmd = app.add_subcommand("state", "build pure states");
  state_cmd->require_subcommand(1);
  CLI::App* state_build =
      state_cmd->add_subcommand("build", "write a state as JSON");
  std::string state_spec;
  std::string state_out;
  state_build->add_option("--spec", state_spec,
                          "bell | mes:d | ghz:n | w:n | dicke:n:k | "
                          "schmidt:l1,l2,... | twoqubit:theta | graph:FILE")
      ->required();
  state_build->add_option("--out", state_out, "output file (default stdout)");
  state_build->callback([&] {
    emit_json(io::state_to_json(io::parse_state(state_spec)), state_out, out);
  });

  // strategy build | gap | check
  CLI::App* strat_cmd =
      app.add_subcommand("strategy", "build and inspect strategies");
  strat_cmd->require_subcommand(1);

  CLI::App* strat_build =
      strat_cmd->add_subcommand("build", "write a strategy as JSON");
  FamilyOpts build_opts;
  std::string strat_build_out;
  add_family_flags(strat_build, build_opts, false);
  strat_build->add_option("--out", strat_build_out,
                          "output file (default stdout)");
  strat_build->callback([&] {
    if (build_opts.family.empty()) {
      throw std::invalid_argument("strategy build requires --family");
    }
    emit_json(io::strategy_to_json(build_family(build_opts)), strat_build_out,
              out);
  });

  CLI::App* strat_gap =
      strat_cmd->add_subcommand("gap", "compute the spectral gap");
  FamilyOpts gap_opts;
  add_family_flags(strat_gap, gap_opts, true);
  strat_gap->callback([&] {
    strategies::Strategy s = resolve_strategy(gap_opts);
    json j{{"gap", s.gap()}};
    if (s.predicted_gap) {
      j["predicted"] = *s.predicted_gap;
    } else {
      j["predicted"] = nullptr;
    }
    emit_json(j, "", out);
  });

  CLI::App* strat_check =
      strat_cmd->add_subcommand("check", "run structural validity checks");
  FamilyOpts check_opts;
  add_family_flags(strat_check, check_opts, true);
  strat_check->callback([&] {
    strategies::Strategy s = resolve_strategy(check_opts);
    strategies::ValidityReport r = strategies::validate(s);
    json j{{"label", s.label},
           {"ok", r.ok()},
           {"prob_sum", r.prob_sum},
           {"prob_sum_ok", r.prob_sum_ok},
           {"min_effect_eig", r.min_effect_eig},
           {"max_effect_eig", r.max_effect_eig},
           {"effects_ok", r.effects_ok},
           {"max_target_residual", r.max_target_residual},
           {"target_fixed_ok", r.target_fixed_ok},
           {"achieved_gap", r.achieved_gap},
           {"gap_matches", r.gap_matches}};
    if (!s.one_way.empty()) {
      strategies::OneWayReport ow = strategies::check_one_way_constraints(s);
      j["one_way"] = json{{"trace_b_defect", ow.trace_b_defect},
                          {"trace_b_identity", ow.trace_b_identity},
                          {"min_pt_eigenvalue", ow.min_pt_eigenvalue},
                          {"ppt", ow.ppt},
                          {"ppt_conclusive", ow.ppt_conclusive},
                          {"target_expectation_error",
                           ow.target_expectation_error},
                          {"target_fixed", ow.target_fixed}};
    }
    emit_json(j, "", out);
  });

  // plan
  CLI::App* plan_cmd =
      app.add_subcommand("plan", "sample count for an i.i.d. source");
  double plan_eps = kUnsetReal, plan_delta = kUnsetReal, plan_nu = kUnsetReal;
  plan_cmd->add_option("--eps", plan_eps, "infidelity threshold")->required();
  plan_cmd->add_option("--delta", plan_delta, "significance level")
      ->required();
  plan_cmd->add_option("--nu", plan_nu, "strategy spectral gap")->required();
  plan_cmd->callback([&] {
    stats::TestPlan p = stats::make_test_plan(plan_eps, plan_delta, plan_nu);
    emit_json(json{{"epsilon", p.epsilon},
                   {"delta", p.delta},
                   {"nu", p.nu},
                   {"threshold", stats::worst_case_pass_prob(p.epsilon, p.nu)},
                   {"rounds", p.rounds}},
              "", out);
  });

  // simulate
  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "run protocol rounds against a source");
  FamilyOpts sim_opts;
  add_family_flags(sim_cmd, sim_opts, true);
  std::string sim_source;
  long long sim_rounds = 0;
  uint64_t sim_seed = 0;
  int sim_threads = 1;
  std::string sim_out, sim_csv;
  sim_cmd->add_option("--source", sim_source,
                      "exact | worst:eps | depol:p | custom:FILE")
      ->required();
  sim_cmd->add_option("--rounds", sim_rounds, "number of rounds")->required();
  sim_cmd->add_option("--seed", sim_seed, "random seed")->required();
  sim_cmd->add_option("--threads", sim_threads, "worker threads (default 1)");
  sim_cmd->add_option("--out", sim_out, "transcript JSON file (default stdout)");
  sim_cmd->add_option("--csv", sim_csv, "also write per-round CSV to a file");
  sim_cmd->callback([&] {
    if (sim_threads < 1) {
      throw std::invalid_argument("--threads must be at least 1");
    }
    strategies::Strategy s = resolve_strategy(sim_opts);
    sim::Source src = parse_source(sim_source, s);
    sim::Transcript t =
        sim::run_protocol(s, src, sim_rounds, sim_seed, sim_threads);
    if (!sim_csv.empty()) io::write_text(sim_csv, io::transcript_csv(t));
    emit_json(io::transcript_to_json(t), sim_out, out);
  });

  // decide
  CLI::App* decide_cmd =
      app.add_subcommand("decide", "apply the frequency decision rule");
  std::string decide_transcript;
  double decide_freq = kUnsetReal;
  long long decide_rounds = 0;
  double decide_eps = kUnsetReal, decide_nu = kUnsetReal;
  decide_cmd->add_option("--transcript", decide_transcript,
                         "transcript JSON file");
  decide_cmd->add_option("--frequency", decide_freq,
                         "pass frequency (with --rounds)");
  decide_cmd->add_option("--rounds", decide_rounds,
                         "round count (with --frequency)");
  decide_cmd->add_option("--eps", decide_eps, "infidelity threshold")
      ->required();
  decide_cmd->add_option("--nu", decide_nu, "strategy spectral gap")
      ->required();
  decide_cmd->callback([&] {
    stats::TestResult r;
    if (!decide_transcript.empty()) {
      if (!std::isnan(decide_freq) || decide_rounds != 0) {
        throw std::invalid_argument(
            "give either --transcript or --frequency/--rounds, not both");
      }
      r = sim::evaluate_transcript(io::load_transcript(decide_transcript),
                                   decide_eps, decide_nu);
    } else {
      if (std::isnan(decide_freq) || decide_rounds <= 0) {
        throw std::invalid_argument(
            "decide requires --transcript FILE or --frequency F --rounds N");
      }
      r = stats::fidelity_decision(decide_freq, decide_eps, decide_nu,
                                   decide_rounds);
    }
    emit_json(result_to_json(r, decide_eps, decide_nu), "", out);
  });

  // adversarial plan
  CLI::App* adv_cmd =
      app.add_subcommand("adversarial", "plans for adversarial sources");
  adv_cmd->require_subcommand(1);
  CLI::App* adv_plan = adv_cmd->add_subcommand(
      "plan", "asymptotic sample count against a correlated source");
  double adv_eps = kUnsetReal, adv_delta = kUnsetReal, adv_lambda = kUnsetReal;
  std::string adv_strategy;
  bool adv_mix = false;
  adv_plan->add_option("--eps", adv_eps, "infidelity threshold")->required();
  adv_plan->add_option("--delta", adv_delta, "significance level")->required();
  adv_plan->add_option("--lambda", adv_lambda,
                       "homogeneous non-target eigenvalue");
  adv_plan->add_option("--strategy", adv_strategy, "strategy JSON file");
  adv_plan->add_flag("--trivial-mix", adv_mix,
                     "search the identity-admixture weight minimising the "
                     "overhead");
  adv_plan->callback([&] {
    bool have_lambda = !std::isnan(adv_lambda);
    if (have_lambda == !adv_strategy.empty()) {
      throw std::invalid_argument(
          "adversarial plan requires exactly one of --lambda or --strategy");
    }
    adversarial::AdversarialPlan p;
    if (have_lambda) {
      if (adv_mix) {
        throw std::invalid_argument("--trivial-mix requires --strategy");
      }
      p.epsilon = adv_eps;
      p.delta = adv_delta;
      p.lambda = adv_lambda;
      p.tau = adv_lambda;
      p.overhead = adversarial::prefactor(adv_lambda);
      p.rounds = adversarial::adversarial_samples_homogeneous(
          adv_eps, adv_delta, adv_lambda);
      p.mix = 0.0;
    } else {
      strategies::Strategy s = io::load_strategy(adv_strategy);
      p = adversarial::adversarial_samples_general(adv_eps, adv_delta,
                                                   s.aggregate(), s.target,
                                                   adv_mix);
    }
    emit_json(plan_to_json(p), "", out);
  });

  // qpv convert
  CLI::App* qpv_cmd =
      app.add_subcommand("qpv", "gate verification via Choi states");
  qpv_cmd->require_subcommand(1);
  CLI::App* qpv_convert = qpv_cmd->add_subcommand(
      "convert", "turn a one-way strategy into a prepare-and-measure plan");
  std::string qpv_strategy, qpv_gate, qpv_out;
  qpv_convert->add_option("--strategy", qpv_strategy, "strategy JSON file")
      ->required();
  qpv_convert->add_option("--gate", qpv_gate, "gate operator JSON file")
      ->required();
  qpv_convert->add_option("--out", qpv_out, "output file (default stdout)");
  qpv_convert->callback([&] {
    strategies::Strategy s = io::load_strategy(qpv_strategy);
    Operator u = io::load_operator(qpv_gate);
    emit_json(io::pm_to_json(qpv::pm_plan_for_gate(s, u)), qpv_out, out);
  });

  // witness confidence
  CLI::App* wit_cmd =
      app.add_subcommand("witness", "entanglement detection bounds");
  wit_cmd->require_subcommand(1);
  CLI::App* wit_conf = wit_cmd->add_subcommand(
      "confidence", "confidence that a passing source was entangled");
  int wit_d = 0;
  long long wit_passes = -1, wit_rounds = 0;
  wit_conf->add_option("--d", wit_d, "local dimension")->required();
  wit_conf->add_option("--passes", wit_passes, "observed passes")->required();
  wit_conf->add_option("--rounds", wit_rounds, "rounds played")->required();
  wit_conf->callback([&] {
    if (wit_rounds < 1 || wit_passes < 0 || wit_passes > wit_rounds) {
      throw std::invalid_argument(
          "witness confidence needs 0 <= passes <= rounds and rounds >= 1");
    }
    double bound = entanglement::separable_pass_bound(wit_d);
    double f = static_cast<double>(wit_passes) /
               static_cast<double>(wit_rounds);
    double delta = entanglement::entanglement_confidence(f, bound, wit_rounds);
    emit_json(json{{"d", wit_d},
                   {"separable_bound", bound},
                   {"rounds", wit_rounds},
                   {"passes", wit_passes},
                   {"frequency", f},
                   {"delta_bound", delta},
                   {"confidence", 1.0 - delta}},
              "", out);
  });

  // sweep
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "gap tables over a theta or n grid");
  FamilyOpts sweep_opts;
  std::string sweep_theta, sweep_n, sweep_out;
  sweep_cmd->add_option("--family", sweep_opts.family,
                        std::string("strategy family; one of ") + kFamilyList);
  sweep_cmd->add_option("--k", sweep_opts.k, "excitation count (dicke-locc)");
  sweep_cmd->add_option("--theta", sweep_theta,
                        "angle grid a:b:k over the half-open range (a, b]");
  sweep_cmd->add_option("--n", sweep_n, "integer range a:b");
  sweep_cmd->add_option("--out", sweep_out, "output file (default stdout)");
  sweep_cmd->callback([&] {
    emit_text(sweep_csv(sweep_opts, sweep_theta, sweep_n), sweep_out, out);
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    return 0;
  } catch (const CLI::Success&) {
    const CLI::App* leaf = &app;
    while (!leaf->get_subcommands().empty()) {
      leaf = leaf->get_subcommands().front();
    }
    out << leaf->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    const CLI::App* leaf = &app;
    while (!leaf->get_subcommands().empty()) {
      leaf = leaf->get_subcommands().front();
    }
    err << e.what() << "\n\n" << leaf->help();
    return 2;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << '\n';
    return 3;
  } catch (const NumericalError& e) {
    err << "numerical-integrity error: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace qv::cli
