#include "ordiff/cli/commands.hpp"

#include <CLI11.hpp>
#include <ostream>

#include "ordiff/cli/fixtures.hpp"
#include "ordiff/error.hpp"

namespace ordiff::cli {

namespace {

constexpr const char* kGrammar = R"(Mini-languages:
  --space     lp:p=<p>,n=<N>      truncated l_p (defaults p=2, n=64)
              c01:g=<G>           C[0,1] on G uniform nodes (default 257)
              lp01:p=<p>,g=<G>    L_p[0,1] on G uniform nodes
  --codomain  lp01:p=<p>,g=<G>    relabels a C[0,1] operator into L_p[0,1]
  --op        power:<m>           t^m
              poly:<a1>,...,<am>  a1 t + a2 t^2 + ... + am t^m
              sin                 sin t
              scale:<a>(<op>)     a * op
              sum(<op>,<op>)      op + op
              compose(<f>,<g>)    f o g
  vectors     [x1, x2, ...]       JSON array (l_p arrays are zero-padded to N)
              geom:<r>            (r, r^2, ..., r^N)
              const:<c>           constant c
              zeros
  cones       K | C+ | Lp+ | Pn+:n=<degree>
  --config    TOML with keys space, codomain, op, cone, dcone, ccone, seed,
              json and a [diff] table (h_values, slope_scales, scheme,
              num_directions)

Exit status: 0 pass, 1 failure, 2 usage or parse error.)";

bool is_usage(ErrorKind k) { return k != ErrorKind::NumericalBreakdown; }

ConeDescriptor natural_cone(const SpaceDescriptor& s) {
  switch (s.kind) {
    case SpaceKind::SequenceLp: return cone_k();
    case SpaceKind::GridC01: return cone_c_plus();
    case SpaceKind::GridLp01: return cone_lp_plus();
  }
  return cone_k();
}

void check_cone(const ConeDescriptor& cone, const SpaceDescriptor& space, const char* flag) {
  if (!cone.compatible_with(space))
    throw Error(ErrorKind::UsageError,
                std::string(flag) + " " + shorthand(cone) + " does not live in " + describe(space));
}

std::vector<double> coords_of(const Vector& v) { return {v.coords().begin(), v.coords().end()}; }

void emit(std::ostream& out, const RunConfig& cfg, const json& doc, const std::string& text) {
  if (cfg.output == OutputFormat::Json) out << doc.dump() << '\n';
  else out << text;
}

struct Flags {
  std::string config, space, codomain, op, cone, dcone, ccone;
  std::uint64_t seed = 7;
  bool json = false;
};

RunConfig resolve(const CLI::App& app, const Flags& f) {
  RunConfig cfg;
  if (app.count("--config")) cfg = load_config(f.config);
  if (app.count("--space")) cfg.space = parse_space(f.space);
  if (app.count("--codomain")) cfg.codomain = parse_space(f.codomain);
  if (app.count("--op")) cfg.op_text = f.op;
  if (app.count("--cone")) cfg.cone = parse_cone(f.cone);
  if (app.count("--dcone")) cfg.dcone = parse_cone(f.dcone);
  if (app.count("--ccone")) cfg.ccone = parse_cone(f.ccone);
  if (app.count("--seed")) cfg.seed = f.seed;
  if (f.json) cfg.output = OutputFormat::Json;
  cfg.diff.rng_seed = cfg.seed;
  (void)cfg.op();  // surface operator/space errors before running anything
  return cfg;
}

}  // namespace

json cmd_derive(const RunConfig& cfg, const Vector& xbar) {
  const auto op = cfg.op();
  const auto d = exact_derivative(op, xbar);
  const auto rep = verify_frechet(op, xbar, cfg.diff, d);
  return {{"command", "derive"},
          {"op", to_string(op)},
          {"space", op.domain()},
          {"codomain", op.codomain()},
          {"at", coords_of(xbar)},
          {"multipliers", std::vector<double>(d.multipliers().begin(), d.multipliers().end())},
          {"frechet", rep},
          {"verdict", rep.verdict}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact derivatives of pointwise operators, checked against finite differences, plus ordered "
               "critical points, extrema and monotonicity on l_p, C[0,1] and L_p[0,1]."};
  app.name("ordiff");
  app.footer(kGrammar);
  app.require_subcommand(1);
  app.fallthrough();

  Flags f;
  app.add_option("--config", f.config, "TOML file mirroring the flags below");
  app.add_option("--space", f.space, "domain space (default lp:p=2,n=64)");
  app.add_option("--codomain", f.codomain, "codomain space for C[0,1] -> L_p[0,1]");
  app.add_option("--op", f.op, "operator (default power:3)");
  app.add_option("--cone", f.cone, "codomain cone for extrema");
  app.add_option("--dcone", f.dcone, "domain cone for monotone");
  app.add_option("--ccone", f.ccone, "codomain cone for monotone");
  app.add_option("--seed", f.seed, "random seed (default 7)");
  app.add_flag("--json", f.json, "emit JSON instead of text");

  std::string at = "zeros";
  auto* derive = app.add_subcommand("derive", "exact multipliers at --at, with a Frechet check");
  derive->add_option("--at", at, "base point");

  double corrupt = 0.0;
  std::string step;
  auto* frechet = app.add_subcommand("frechet", "Frechet remainder test of the exact derivative at --at");
  frechet->add_option("--at", at, "base point");
  frechet->add_option("--corrupt", corrupt, "add this to every multiplier before testing");
  frechet->add_option("--step", step, "also evaluate the power-operator remainder bound at this step u");

  double lo = 0.0, hi = 7.0, tol = 1e-9;
  auto* critical = app.add_subcommand("critical", "critical set (polynomial-type, sine) or criticality at --at");
  auto* crit_at = critical->add_option("--at", at, "test this point instead");
  critical->add_option("--lo", lo, "sine: lower end of the constant range");
  critical->add_option("--hi", hi, "sine: upper end of the constant range");
  critical->add_option("--tol", tol, "criticality tolerance");

  std::string dir;
  std::vector<double> trange{-1.0, 1.0};
  int num_t = kDefaultNumT, samples = 100;
  double spread = 1.0;
  auto* extrema = app.add_subcommand("extrema", "ordered extremum test at --at");
  extrema->add_option("--at", at, "base point")->required();
  extrema->add_option("--dir", dir, "direction: directional test along it");
  extrema->add_option("--t-range", trange, "directional t range lo hi")->expected(2);
  extrema->add_option("--num-t", num_t, "directional sample count");
  extrema->add_option("--samples", samples, "absolute test: number of random samples");
  extrema->add_option("--spread", spread, "absolute test: samples are xbar + spread * N(0,1)");

  int pairs = 200;
  auto* monotone = app.add_subcommand("monotone", "sampled order-monotonicity certificate");
  monotone->add_option("--pairs", pairs, "pairs and derivative points to sample");

  std::string filter;
  bool list = false;
  auto* verify = app.add_subcommand("verify", "run the built-in fixture suite");
  auto* filter_opt = verify->add_option("--filter", filter, "fixture id glob, e.g. 'example-3.*'");
  verify->add_flag("--list", list, "print fixture ids and exit");

  std::vector<std::string> argv_store{"ordiff"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    const RunConfig cfg = resolve(app, f);

    if (derive->parsed()) {
      const auto op = cfg.op();
      const auto doc = cmd_derive(cfg, parse_vector(at, op.domain()));
      const auto rep = doc.at("frechet").get<FrechetReport>();
      std::string text = to_string(op) + " on " + describe(op.domain()) + " -> " + describe(op.codomain()) + "\n";
      text += "multipliers " + format_coords(doc.at("multipliers").get<std::vector<double>>()) + "\n";
      text += render(rep);
      emit(out, cfg, doc, text);
      return rep.verdict == Verdict::Pass ? kExitPass : kExitFail;
    }

    if (frechet->parsed()) {
      const auto op = cfg.op();
      const Vector x = parse_vector(at, op.domain());
      auto d = exact_derivative(op, x);
      if (corrupt != 0.0) d = perturb_map(d, corrupt);
      const auto rep = verify_frechet(op, x, cfg.diff, d);
      json doc{{"command", "frechet"}, {"op", to_string(op)}, {"corrupt", corrupt}, {"frechet", rep}};
      std::string text = render(rep);
      bool ok = rep.verdict == Verdict::Pass;
      if (!step.empty()) {
        const auto sides = remainder_bound_sides(op, x, parse_vector(step, op.domain()));
        const bool holds = check_remainder_bound(op, x, parse_vector(step, op.domain()));
        doc["bound"] = {{"lhs", sides.lhs}, {"rhs", sides.rhs}, {"satisfied", holds}};
        text += "  bound at step                " + format_number(sides.lhs) + " <= " + format_number(sides.rhs) +
                (holds ? "  yes\n" : "  NO\n");
        ok = ok && holds;
      }
      emit(out, cfg, doc, text);
      return ok ? kExitPass : kExitFail;
    }

    if (critical->parsed()) {
      const auto op = cfg.op();
      if (crit_at->count() > 0) {
        const Vector x = parse_vector(at, op.domain());
        const auto d = exact_derivative(op, x);
        const bool crit = is_generalized_critical(op, x, tol);
        json doc{{"command", "critical"}, {"op", to_string(op)}, {"critical", crit}, {"max_abs_multiplier", operator_norm(d)}};
        emit(out, cfg, doc,
             "critical at point: " + std::string(crit ? "yes" : "no") + " (max |multiplier| " +
                 format_number(operator_norm(d)) + ")\n");
        return kExitPass;
      }
      if (op.kind() == OpKind::Sine) {
        const auto consts = critical_set_sine(lo, hi, tol, op.domain());
        json doc{{"command", "critical"}, {"op", "sin"}, {"range", {lo, hi}}, {"critical_constants", consts}};
        emit(out, cfg, doc, "critical constants in [" + format_number(lo) + ", " + format_number(hi) + "]: " +
                                format_coords(consts) + "\n");
        return kExitPass;
      }
      std::vector<double> coeffs;
      if (op.kind() == OpKind::PolyType) coeffs = op.coefficients();
      else if (op.kind() == OpKind::Power) {
        coeffs.assign(static_cast<std::size_t>(op.exponent()), 0.0);
        coeffs.back() = 1.0;
      } else {
        throw Error(ErrorKind::UsageError, "critical set is closed-form only for power, poly and sin; pass --at");
      }
      const auto r = critical_set_polytype(coeffs, true);
      emit(out, cfg, json{{"command", "critical"}, {"op", to_string(op)}, {"result", r}}, render(r));
      return kExitPass;
    }

    if (extrema->parsed()) {
      const auto op = cfg.op();
      const auto cone = cfg.cone.value_or(natural_cone(op.codomain()));
      check_cone(cone, op.codomain(), "--cone");
      const Vector x = parse_vector(at, op.domain());
      ExtremumVerdict v;
      if (!dir.empty()) {
        v = directional_extremum(op, cone, x, parse_vector(dir, op.domain()), {trange[0], trange[1]}, num_t);
      } else {
        if (samples < 1) throw Error(ErrorKind::UsageError, "--samples must be positive");
        std::vector<Vector> pts;
        for (int i = 0; i < samples; ++i)
          pts.push_back(axpy(1.0, x, spread, random_point(op.domain(), cfg.seed, static_cast<std::uint64_t>(i))));
        v = absolute_extremum(op, cone, x, pts,
                              std::to_string(samples) + " points xbar + " + format_number(spread) +
                                  " * N(0,1), seed " + std::to_string(cfg.seed));
      }
      const bool crit = is_generalized_critical(op, x, 1e-9);
      json doc{{"command", "extrema"}, {"op", to_string(op)}, {"cone", shorthand(cone)}, {"verdict", v}, {"critical", crit}};
      emit(out, cfg, doc, render(v) + "  critical                    " + (crit ? "yes" : "no") + "\n");
      return kExitPass;
    }

    if (monotone->parsed()) {
      const auto op = cfg.op();
      const auto dcone = cfg.dcone.value_or(cfg.cone.value_or(natural_cone(op.domain())));
      const auto ccone = cfg.ccone.value_or(cfg.cone.value_or(natural_cone(op.codomain())));
      check_cone(dcone, op.domain(), "--dcone");
      check_cone(ccone, op.codomain(), "--ccone");
      const auto c = check_order_monotone(op, dcone, ccone, pairs, cfg.seed);
      json doc{{"command", "monotone"},
               {"op", to_string(op)},
               {"dcone", shorthand(dcone)},
               {"ccone", shorthand(ccone)},
               {"certificate", c}};
      emit(out, cfg, doc, render(c));
      return c.order_increasing_sampled && c.derivative_cone_positive ? kExitPass : kExitFail;
    }

    if (verify->parsed()) {
      if (list) {
        for (const auto& id : fixture_ids()) out << id << '\n';
        return kExitPass;
      }
      const auto results = cmd_verify_paper(filter_opt->count() ? std::optional(filter) : std::nullopt, cfg.seed);
      bool any_fail = false;
      for (const auto& r : results) {
        any_fail = any_fail || r.status == FixtureStatus::Fail;
        if (cfg.output == OutputFormat::Json) {
          out << json(r).dump() << '\n';
        } else {
          char buf[64];
          std::snprintf(buf, sizeof buf, "%-26s", r.fixture_id.c_str());
          out << buf << to_string(r.status) << '\n';
        }
      }
      if (cfg.output == OutputFormat::Text)
        out << results.size() << " fixtures, " << (any_fail ? "failures present" : "no failures") << '\n';
      return any_fail ? kExitFail : kExitPass;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_usage(e.kind()) ? kExitUsage : kExitFail;
  }
  return kExitUsage;
}

}  // namespace ordiff::cli
