// qhfpt: command-line front end. Every command prints one JSON document (or
// CSV / text) on stdout. Exit codes: 0 ok, 1 oracle disagreement or internal
// invariant failure, 2 hypothesis error, 3 parse error, 4 resource cap.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qhfpt/errors.hpp"
#include "qhfpt/families.hpp"
#include "qhfpt/jacobian.hpp"
#include "qhfpt/oracle.hpp"
#include "qhfpt/parse.hpp"
#include "qhfpt/report.hpp"
#include "qhfpt/threshold.hpp"

using namespace qhfpt;
using report::json;

namespace {

struct RunConfig {
  std::string poly;
  std::string family;
  std::string param = "L";
  std::string kind;
  std::vector<std::string> vars;
  std::vector<u32> weights;
  u64 prime = 0;
  unsigned e_max = 2;
  unsigned e = 1;
  bool assume_isolated = false;
  bool csv = false;
  std::string format = "json";
  ResourceLimits limits;
};

struct Input {
  RingPtr ring;
  Poly f;
  std::vector<std::string> warnings;
};

RingPtr ring_of(const RunConfig& cfg) {
  std::vector<u32> weights = cfg.weights;
  if (weights.empty()) weights.assign(cfg.vars.size(), 1);
  return make_ring(cfg.prime, cfg.vars, weights);
}

Input read_input(const RunConfig& cfg) {
  RingPtr ring = ring_of(cfg);
  auto parsed = parse_poly_with_warnings(cfg.poly, ring);
  return Input{ring, std::move(parsed.poly), std::move(parsed.warnings)};
}

json echo(const Input& in) {
  json j = report::ring_json(*in.ring);
  j["poly"] = format_poly(in.f);
  j["warnings"] = in.warnings;
  return j;
}

bool m_primary_if_known(const Poly& f, const ResourceLimits& limits) {
  if (!f.is_quasi_homogeneous()) return false;
  try {
    return is_isolated(f, IsolationOptions{limits}).jacobian_is_m_primary();
  } catch (const ResourceError&) {
    return false;
  }
}

json cmd_fpt(const RunConfig& cfg) {
  Input in = read_input(cfg);
  FptOptions opts;
  opts.e_max = cfg.e_max;
  opts.assume_isolated = cfg.assume_isolated;
  opts.limits = cfg.limits;
  json out = report::fpt_json(fpt(in.f, opts));
  out["input"] = echo(in);
  return out;
}

json cmd_diagonal(const RunConfig& cfg) {
  Input in = read_input(cfg);
  auto d = diagonal_threshold(in.f, cfg.e_max, cfg.limits);
  json out = report::fpt_json(d.result);
  json coeffs = json::array();
  for (const auto& c : d.coefficients) coeffs.push_back(c.value);
  out["socle_coefficients"] = coeffs;
  out["input"] = echo(in);
  return out;
}

json cmd_mu(const RunConfig& cfg) {
  Input in = read_input(cfg);
  MuOptions opts{cfg.limits, m_primary_if_known(in.f, cfg.limits)};
  MuLadder ladder = mu_ladder(in.f, cfg.e, opts);
  return {{"input", echo(in)},
          {"e", cfg.e},
          {"mu_ladder", report::ladder_json(ladder)},
          {"bound_checks", report::bound_checks_json(ladder)}};
}

json cmd_isolated(const RunConfig& cfg) {
  Input in = read_input(cfg);
  json out = report::certificate_json(is_isolated(in.f, IsolationOptions{cfg.limits}));
  out["input"] = echo(in);
  return out;
}

json cmd_milnor(const RunConfig& cfg) {
  Input in = read_input(cfg);
  const u64 d = quasi_degree(in.f);
  json out = report::milnor_json(milnor_number(in.f), hilbert_numerator_check(d, in.ring->weights()));
  out["degree"] = d;
  out["input"] = echo(in);
  return out;
}

json cmd_ordinary(const RunConfig& cfg) {
  Input in = read_input(cfg);
  const FieldElement c = socle_coefficient(in.f, 1, cfg.limits);
  FptOptions opts;
  opts.e_max = 1;
  opts.assume_isolated = cfg.assume_isolated;
  opts.limits = cfg.limits;
  const FptResult r = fpt(in.f, opts);
  json out = {{"coefficient", c.value}, {"verdict", c.value != 0 ? "ordinary" : "supersingular"}};
  out["fpt"] = r.exact ? json(to_string(r.value)) : json(nullptr);
  if (!r.exact) out["interval"] = {to_string(r.lower), to_string(r.upper)};
  out["certificate"] = certificate_name(r.certificate);
  out["input"] = echo(in);
  return out;
}

json cmd_hasse(const RunConfig& cfg) {
  Input in = read_input(cfg);
  return {{"h", hasse_order(in.f, cfg.limits)}, {"input", echo(in)}};
}

json cmd_oracle_check(const RunConfig& cfg) {
  Input in = read_input(cfg);
  MuLadder ladder = mu_ladder(in.f, cfg.e, MuOptions{cfg.limits, false});
  bool agree = true;
  json mu_rows = json::array();
  for (const auto& rung : ladder.entries) {
    const u64 brute = oracle::mu_bruteforce(in.f, rung.e);
    agree = agree && brute == rung.mu;
    mu_rows.push_back({{"e", rung.e}, {"mu", rung.mu}, {"mu_oracle", brute}, {"agree", brute == rung.mu}});
  }
  json out = {{"input", echo(in)}, {"e", cfg.e}, {"mu", mu_rows}};
  if (in.f.is_quasi_homogeneous() && quasi_degree(in.f) == in.ring->weight_sum()) {
    json socle_rows = json::array();
    for (unsigned e = 1; e <= cfg.e; ++e) {
      const u32 main = socle_coefficient(in.f, e, cfg.limits).value;
      const u32 brute = oracle::socle_coefficient_bruteforce(in.f, e).value;
      agree = agree && main == brute;
      socle_rows.push_back({{"e", e}, {"coefficient", main}, {"coefficient_oracle", brute}, {"agree", main == brute}});
    }
    out["socle"] = socle_rows;
  }
  out["agree"] = agree;
  return out;
}

FamilyExpr read_family(const RunConfig& cfg, json& input) {
  auto build = [&] {
    if (cfg.kind.empty()) return parse_family(cfg.family, ring_of(cfg), cfg.param);
    const PrimeField field(cfg.prime);
    return elliptic_family(parse_kind(cfg.kind), static_cast<u32>(cfg.prime), cfg.param);
  };
  FamilyExpr fam = build();
  input = report::ring_json(*fam.base.ring());
  input["param"] = fam.parameter;
  return fam;
}

int run(const std::string& command, const RunConfig& cfg) {
  json out;
  if (command == "sweep") {
    json input;
    FamilyExpr fam = read_family(cfg, input);
    FamilyReport rep = sweep_family(fam, SweepOptions{cfg.e_max, cfg.limits});
    if (cfg.csv || cfg.format == "csv") {
      std::cout << report::family_csv(rep);
      return 0;
    }
    out = report::family_json(rep);
    out["input"] = input;
  } else if (command == "fpt") {
    out = cmd_fpt(cfg);
  } else if (command == "diagonal") {
    out = cmd_diagonal(cfg);
  } else if (command == "mu") {
    out = cmd_mu(cfg);
  } else if (command == "isolated") {
    out = cmd_isolated(cfg);
  } else if (command == "milnor") {
    out = cmd_milnor(cfg);
  } else if (command == "ordinary") {
    out = cmd_ordinary(cfg);
  } else if (command == "hasse-order") {
    out = cmd_hasse(cfg);
  } else if (command == "oracle-check") {
    out = cmd_oracle_check(cfg);
  }
  if (cfg.format == "text")
    std::cout << report::to_text(out);
  else
    std::cout << out.dump(2) << "\n";
  if (command == "oracle-check" && !out["agree"].get<bool>()) return 1;
  return 0;
}

int fail(int code, const std::string& kind, const std::string& detail) {
  std::cout << report::error_json(kind, detail).dump(2) << "\n";
  return code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"F-pure thresholds and Frobenius invariants of quasi-homogeneous polynomials"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_ring = [&](CLI::App* sub) {
    sub->add_option("--vars", cfg.vars, "variable names")->delimiter(',')->required();
    sub->add_option("--weights", cfg.weights, "positive weights, default all 1")->delimiter(',');
    sub->add_option("--prime", cfg.prime, "characteristic")->required();
    sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };
  auto add_poly = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--poly", cfg.poly, "polynomial")->required();
    add_ring(sub);
    return sub;
  };

  auto* fpt_cmd = add_poly("fpt", "F-pure threshold with certificate");
  fpt_cmd->add_option("--e-max", cfg.e_max, "largest e in the mu ladder")->check(CLI::Range(1u, 64u));
  fpt_cmd->add_flag("--assume-isolated", cfg.assume_isolated, "skip the isolated-singularity requirement");
  auto* diag_cmd = add_poly("diagonal", "threshold of x_0^a_0+...+x_n^a_n+c*x_0*...*x_n with sum 1/a_i < 1");
  diag_cmd->add_option("--e-max", cfg.e_max, "largest e checked")->check(CLI::Range(1u, 64u));
  add_poly("mu", "mu ladder")->add_option("--e", cfg.e, "largest e")->check(CLI::Range(1u, 64u));
  add_poly("isolated", "isolated-singularity certificate");
  add_poly("milnor", "Milnor number: formula and dimension");
  add_poly("ordinary", "socle coefficient and ordinary/supersingular verdict")
      ->add_flag("--assume-isolated", cfg.assume_isolated, "skip the isolated-singularity requirement");
  add_poly("hasse-order", "vanishing order of the Hasse invariant");
  add_poly("oracle-check", "compare against brute-force references")
      ->add_option("--e", cfg.e, "largest e")->check(CLI::Range(1u, 8u));

  auto* sweep = app.add_subcommand("sweep", "classify every member of a one-parameter family");
  auto* fam_opt = sweep->add_option("--family", cfg.family, "family, linear in the parameter");
  sweep->add_option("--kind", cfg.kind, "E6, E7 or E8 (alternative to --family)")->excludes(fam_opt);
  sweep->add_option("--param", cfg.param, "parameter name");
  sweep->add_option("--vars", cfg.vars, "variable names, default x,y,z")->delimiter(',');
  sweep->add_option("--weights", cfg.weights, "positive weights, default all 1")->delimiter(',');
  sweep->add_option("--prime", cfg.prime, "characteristic")->required();
  sweep->add_option("--e-max", cfg.e_max, "largest e for singular members")->check(CLI::Range(1u, 64u));
  sweep->add_flag("--csv", cfg.csv, "CSV instead of JSON");
  sweep->add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(3, "usage", e.what());
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (command == "sweep") {
    if (cfg.vars.empty()) cfg.vars = {"x", "y", "z"};
    if (cfg.family.empty() && cfg.kind.empty()) return fail(3, "usage", "sweep needs --family or --kind");
  }

  try {
    cfg.limits = ResourceLimits::from_env();
    return run(command, cfg);
  } catch (const ParseError& e) {
    return fail(3, e.kind(), e.what());
  } catch (const HypothesisError& e) {
    return fail(e.kind() == "unsupported-family" ? 3 : 2, e.kind(), e.what());
  } catch (const ResourceError& e) {
    return fail(4, e.kind(), e.what());
  } catch (const Error& e) {
    return fail(2, e.kind(), e.what());
  } catch (const InvariantViolation& e) {
    return fail(1, "invariant-violation", e.what());
  }
}
