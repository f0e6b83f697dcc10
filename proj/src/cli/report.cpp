#include "ordiff/cli/report.hpp"

#include <cstdio>
#include <sstream>

namespace ordiff {

namespace {

template <class T>
void put_opt(json& j, const char* key, const std::optional<T>& v) {
  j[key] = v ? json(*v) : json(nullptr);
}

template <class T>
void get_opt(const json& j, const char* key, std::optional<T>& v) {
  const auto& n = j.at(key);
  if (n.is_null()) v.reset();
  else v = n.get<T>();
}

}  // namespace

void to_json(json& j, const SpaceDescriptor& s) { j = json{{"kind", s.kind}, {"p", s.p}, {"dim", s.dim}}; }

void from_json(const json& j, SpaceDescriptor& s) {
  j.at("kind").get_to(s.kind);
  j.at("p").get_to(s.p);
  j.at("dim").get_to(s.dim);
}

void to_json(json& j, const ConeDiagnostic& d) {
  j = json::object();
  put_opt(j, "violating_index", d.violating_index);
  put_opt(j, "violation", d.violation);
  put_opt(j, "fit_residual", d.fit_residual);
  put_opt(j, "negative_coefficient", d.negative_coefficient);
  j["coefficients"] = d.coefficients;
  put_opt(j, "coefficient_band", d.coefficient_band);
}

void from_json(const json& j, ConeDiagnostic& d) {
  get_opt(j, "violating_index", d.violating_index);
  get_opt(j, "violation", d.violation);
  get_opt(j, "fit_residual", d.fit_residual);
  get_opt(j, "negative_coefficient", d.negative_coefficient);
  j.at("coefficients").get_to(d.coefficients);
  get_opt(j, "coefficient_band", d.coefficient_band);
}

void to_json(json& j, const OrderVerdict& v) {
  j = json{{"relation", v.relation}, {"is_strict", v.is_strict}, {"witness", v.witness}};
}

void from_json(const json& j, OrderVerdict& v) {
  j.at("relation").get_to(v.relation);
  j.at("is_strict").get_to(v.is_strict);
  j.at("witness").get_to(v.witness);
}

void to_json(json& j, const FrechetReport& r) {
  j = json{{"max_directional_error", r.max_directional_error},
           {"remainder_slope", r.remainder_slope},
           {"remainder_ratios", r.remainder_ratios},
           {"residual_at_smallest", r.residual_at_smallest},
           {"exact_zero_remainder", r.exact_zero_remainder},
           {"seed", r.seed},
           {"num_directions", r.num_directions},
           {"verdict", r.verdict}};
  put_opt(j, "bound_satisfied", r.bound_satisfied);
}

void from_json(const json& j, FrechetReport& r) {
  j.at("max_directional_error").get_to(r.max_directional_error);
  j.at("remainder_slope").get_to(r.remainder_slope);
  j.at("remainder_ratios").get_to(r.remainder_ratios);
  j.at("residual_at_smallest").get_to(r.residual_at_smallest);
  j.at("exact_zero_remainder").get_to(r.exact_zero_remainder);
  get_opt(j, "bound_satisfied", r.bound_satisfied);
  j.at("seed").get_to(r.seed);
  j.at("num_directions").get_to(r.num_directions);
  j.at("verdict").get_to(r.verdict);
}

void to_json(json& j, const ExtremumWitness& w) {
  j = json::object();
  put_opt(j, "t_below", w.t_below);
  put_opt(j, "t_above", w.t_above);
  put_opt(j, "t_incomparable", w.t_incomparable);
  put_opt(j, "sample_below", w.sample_below);
  put_opt(j, "sample_above", w.sample_above);
  put_opt(j, "sample_incomparable", w.sample_incomparable);
}

void from_json(const json& j, ExtremumWitness& w) {
  get_opt(j, "t_below", w.t_below);
  get_opt(j, "t_above", w.t_above);
  get_opt(j, "t_incomparable", w.t_incomparable);
  get_opt(j, "sample_below", w.sample_below);
  get_opt(j, "sample_above", w.sample_above);
  get_opt(j, "sample_incomparable", w.sample_incomparable);
}

void to_json(json& j, const ExtremumVerdict& v) {
  j = json{{"status", v.status},
           {"scope", v.scope},
           {"sample_description", v.sample_description},
           {"num_samples", v.num_samples},
           {"witness", v.witness}};
}

void from_json(const json& j, ExtremumVerdict& v) {
  j.at("status").get_to(v.status);
  j.at("scope").get_to(v.scope);
  j.at("sample_description").get_to(v.sample_description);
  j.at("num_samples").get_to(v.num_samples);
  j.at("witness").get_to(v.witness);
}

void to_json(json& j, const MonotoneCertificate& c) {
  j = json{{"order_increasing_sampled", c.order_increasing_sampled},
           {"derivative_cone_positive", c.derivative_cone_positive},
           {"num_pairs", c.num_pairs},
           {"seed", c.seed}};
  put_opt(j, "counterexample", c.counterexample);
  put_opt(j, "derivative_counterexample", c.derivative_counterexample);
}

void from_json(const json& j, MonotoneCertificate& c) {
  j.at("order_increasing_sampled").get_to(c.order_increasing_sampled);
  j.at("derivative_cone_positive").get_to(c.derivative_cone_positive);
  j.at("num_pairs").get_to(c.num_pairs);
  j.at("seed").get_to(c.seed);
  get_opt(j, "counterexample", c.counterexample);
  get_opt(j, "derivative_counterexample", c.derivative_counterexample);
}

void to_json(json& j, const CriticalSetResult& r) {
  j = json{{"root_set", r.root_set},
           {"set_kind", r.set_kind},
           {"truncated_kind", r.truncated_kind},
           {"discrepancy_flag", r.discrepancy_flag}};
  put_opt(j, "published_claim", r.published_claim);
}

void from_json(const json& j, CriticalSetResult& r) {
  j.at("root_set").get_to(r.root_set);
  j.at("set_kind").get_to(r.set_kind);
  j.at("truncated_kind").get_to(r.truncated_kind);
  get_opt(j, "published_claim", r.published_claim);
  j.at("discrepancy_flag").get_to(r.discrepancy_flag);
}

}  // namespace ordiff

namespace ordiff::cli {

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

template <class T>
std::string opt_str(const std::optional<T>& v) {
  if (!v) return "-";
  if constexpr (std::is_floating_point_v<T>) return format_number(*v);
  else return std::to_string(*v);
}

void row(std::ostringstream& os, const std::string& key, const std::string& value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "  %-28s", key.c_str());
  os << buf << value << '\n';
}

}  // namespace

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string format_coords(std::span<const double> v) {
  std::string out = "[";
  const std::size_t shown = std::min(v.size(), kTextCoords);
  for (std::size_t i = 0; i < shown; ++i) {
    if (i) out += ", ";
    out += format_number(v[i]);
  }
  if (v.size() > shown) out += ", ...] (+" + std::to_string(v.size() - shown) + " more)";
  else out += "]";
  return out;
}

std::string render(const FrechetReport& r) {
  std::ostringstream os;
  os << "Frechet check\n";
  row(os, "max directional error", format_number(r.max_directional_error));
  row(os, "remainder slope", r.exact_zero_remainder ? "n/a (remainder at round-off)" : format_number(r.remainder_slope));
  row(os, "remainder ratios", format_coords(r.remainder_ratios));
  row(os, "residual at smallest scale", format_number(r.residual_at_smallest));
  row(os, "bound satisfied", r.bound_satisfied ? yes_no(*r.bound_satisfied) : "-");
  row(os, "directions / seed", std::to_string(r.num_directions) + " / " + std::to_string(r.seed));
  row(os, "verdict", r.verdict == Verdict::Pass ? "PASS" : "FAIL");
  return os.str();
}

std::string render(const ExtremumVerdict& v) {
  std::ostringstream os;
  os << to_string(v.scope) << " extremum check\n";
  row(os, "status", to_string(v.status));
  row(os, "samples", std::to_string(v.num_samples) + " (" + v.sample_description + ")");
  if (!v.witness.empty()) {
    row(os, "witness t below / above", opt_str(v.witness.t_below) + " / " + opt_str(v.witness.t_above));
    row(os, "witness t incomparable", opt_str(v.witness.t_incomparable));
    row(os, "witness sample below", opt_str(v.witness.sample_below));
    row(os, "witness sample above", opt_str(v.witness.sample_above));
    row(os, "witness sample incomparable", opt_str(v.witness.sample_incomparable));
  }
  return os.str();
}

std::string render(const MonotoneCertificate& c) {
  std::ostringstream os;
  os << "Order-monotonicity certificate\n";
  row(os, "order increasing (sampled)", yes_no(c.order_increasing_sampled));
  row(os, "derivative cone-positive", yes_no(c.derivative_cone_positive));
  row(os, "pairs / seed", std::to_string(c.num_pairs) + " / " + std::to_string(c.seed));
  if (c.counterexample) {
    row(os, "counterexample x", format_coords(c.counterexample->first));
    row(os, "counterexample x + c", format_coords(c.counterexample->second));
  }
  if (c.derivative_counterexample) {
    row(os, "derivative counterexample x", format_coords(c.derivative_counterexample->first));
    row(os, "derivative counterexample v", format_coords(c.derivative_counterexample->second));
  }
  return os.str();
}

std::string render(const CriticalSetResult& r) {
  std::ostringstream os;
  os << "Critical set of the polynomial-type operator\n";
  row(os, "roots of q", format_coords(r.root_set));
  row(os, "critical set (l_p)", to_string(r.set_kind));
  row(os, "critical set (truncated)", to_string(r.truncated_kind));
  if (r.published_claim) row(os, "published claim", to_string(*r.published_claim));
  row(os, "discrepancy", yes_no(r.discrepancy_flag));
  return os.str();
}

std::string render(const OrderVerdict& v) {
  std::ostringstream os;
  os << "Order relation\n";
  row(os, "relation", to_string(v.relation));
  row(os, "strict", yes_no(v.is_strict));
  if (v.witness.violating_index) row(os, "violating index", std::to_string(*v.witness.violating_index));
  if (v.witness.violation) row(os, "violation", format_number(*v.witness.violation));
  return os.str();
}

}  // namespace ordiff::cli
