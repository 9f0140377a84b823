#include "qhfpt/report.hpp"

#include <sstream>

#include "qhfpt/parse.hpp"

namespace qhfpt::report {

namespace {

json bigint_json(const BigInt& v) {
  if (v >= 0 && v <= BigInt(std::numeric_limits<std::uint64_t>::max())) return static_cast<std::uint64_t>(v);
  return v.str();
}

void flatten(const json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

} // namespace

json ring_json(const GradedRing& ring) {
  return {{"vars", ring.variables()},
          {"weights", std::vector<u32>(ring.weights().begin(), ring.weights().end())},
          {"prime", ring.prime()}};
}

json ladder_json(const MuLadder& ladder) {
  json out = json::array();
  for (const auto& e : ladder.entries) out.push_back({e.e, e.q, e.mu});
  return out;
}

json bound_checks_json(const MuLadder& ladder) {
  json out = json::array();
  for (const auto& e : ladder.entries) {
    json row = {{"e", e.e}};
    row["upper_bound"] = e.upper_bound ? bigint_json(*e.upper_bound) : json(nullptr);
    row["lower_bound"] = e.lower_bound ? json(to_string(*e.lower_bound)) : json(nullptr);
    out.push_back(row);
  }
  return out;
}

json fpt_json(const FptResult& r) {
  json out;
  if (r.exact) {
    out["fpt"] = to_string(r.value);
    out["kind"] = "exact";
  } else {
    out["fpt"] = nullptr;
    out["kind"] = "interval";
    out["lower"] = to_string(r.lower);
    out["upper"] = to_string(r.upper);
    out["blocked_by"] = r.blocked_by;
  }
  out["certificate"] = certificate_name(r.certificate);
  out["e_used"] = r.e_used;
  out["mu_ladder"] = ladder_json(r.ladder);
  out["bound_checks"] = bound_checks_json(r.ladder);
  if (r.hasse_order) out["hasse_order"] = *r.hasse_order;
  out["assumptions"] = {{"quasi_homogeneous", r.assumptions.quasi_homogeneous},
                        {"isolated", r.assumptions.isolated_verified
                                         ? "verified"
                                         : (r.assumptions.isolated_assumed ? "assumed" : "not-required")},
                        {"isolation_verdict", r.assumptions.isolation_verdict}};
  return out;
}

json certificate_json(const IsolatedCertificate& c) {
  json ranks = json::array();
  for (const auto& d : c.per_degree_rank)
    ranks.push_back({{"degree", d.degree}, {"rank", d.rank}, {"dimension", d.dimension}});
  return {{"verdict", to_string(c.verdict)},
          {"reason", c.reason},
          {"socle_degree", c.socle_degree},
          {"window", {c.window_lo, c.window_hi}},
          {"per_degree_rank", ranks},
          {"milnor_dim", c.milnor_dim ? bigint_json(*c.milnor_dim) : json(nullptr)},
          {"milnor_formula_value", to_string(c.milnor_formula_value)}};
}

json milnor_json(const MilnorNumber& m, const HilbertNumeratorCheck& h) {
  json quotient = json::array();
  for (const auto& c : h.quotient) quotient.push_back(c.str());
  return {{"formula_value", to_string(m.formula_value)},
          {"formula_is_integer", m.formula_is_integer},
          {"dimension", m.dimension ? bigint_json(*m.dimension) : json(nullptr)},
          {"agrees", m.agrees},
          {"hilbert", {{"divisible", h.divisible}, {"quotient", quotient}}}};
}

json family_json(const FamilyReport& r) {
  json members = json::array();
  for (const auto& m : r.per_lambda) {
    json row = {{"lambda", m.lambda}, {"status", to_string(m.status)}, {"phi_value", m.phi_value}};
    row["fpt"] = m.fpt ? json(to_string(*m.fpt)) : json(nullptr);
    if (m.certificate) row["certificate"] = certificate_name(*m.certificate);
    if (m.lower && m.upper) row["interval"] = {to_string(*m.lower), to_string(*m.upper)};
    members.push_back(row);
  }
  json out = {{"family_type", r.family_type},
              {"base", format_poly(r.family.base)},
              {"parameter_term", format_poly(r.family.parameter_term)},
              {"members", members}};
  out["kind"] = r.kind ? json(kind_data(*r.kind).name) : json(nullptr);
  out["phi_polynomial"] = r.phi_polynomial ? json(format_poly(*r.phi_polynomial)) : json(nullptr);
  return out;
}

std::string family_csv(const FamilyReport& r) {
  std::ostringstream out;
  out << "lambda,status,fpt_num,fpt_den,phi_value\n";
  for (const auto& m : r.per_lambda) {
    out << m.lambda << ',' << to_string(m.status) << ',';
    if (m.fpt)
      out << boost::multiprecision::numerator(*m.fpt) << ',' << boost::multiprecision::denominator(*m.fpt);
    else
      out << ',';
    out << ',' << m.phi_value << '\n';
  }
  return out.str();
}

json error_json(const std::string& kind, const std::string& detail) {
  return {{"error", {{"kind", kind}, {"detail", detail}}}};
}

std::string to_text(const json& j) {
  std::ostringstream out;
  flatten(j, "", out);
  return out.str();
}

} // namespace qhfpt::report
