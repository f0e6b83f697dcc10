#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "ordiff/cli/commands.hpp"
#include "ordiff/cli/fixtures.hpp"
#include "ordiff/ordopt.hpp"
#include "support.hpp"

using namespace ordiff;
using namespace ordiff::cli;
using support::kind_of;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string parse_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    return e.what();
  }
  FAIL("no error thrown");
  return {};
}

template <class T>
void round_trip(const T& value) {
  const json j = value;
  CHECK(json::parse(j.dump()).get<T>() == value);
}

}  // namespace

TEST_CASE("space parsing") {
  CHECK(parse_space("lp:p=2,n=8") == sequence_lp(2.0, 8));
  CHECK(parse_space("c01:g=257") == grid_c01(257));
  CHECK(parse_space("lp01:p=1.5,g=33") == grid_lp01(1.5, 33));
  CHECK(parse_space("lp:p=3") == sequence_lp(3.0));
  CHECK(parse_message([] { parse_space("lq:p=2"); }).find("col 1") != std::string::npos);
  CHECK(parse_message([] { parse_space("lp:p=0.5,n=8"); }).find("col 6") != std::string::npos);
  CHECK(parse_message([] { parse_space("lp:p=2,n=x"); }).find("col") != std::string::npos);
  CHECK(kind_of([] { parse_space("lp:p=2,q=1"); }) == ErrorKind::ParseError);
}

TEST_CASE("vector parsing") {
  const auto s = sequence_lp(2.0, 4);
  CHECK(parse_vector("[1, 2]", s) == Vector(s, {1, 2, 0, 0}));
  CHECK(parse_vector("geom:0.5", s) == Vector(s, {0.5, 0.25, 0.125, 0.0625}));
  CHECK(parse_vector("zeros", s) == zeros(s));
  const auto g = grid_c01(5);
  CHECK(parse_vector("const:2", g) == constant(g, 2.0));
  CHECK(kind_of([&] { parse_vector("[1, 2]", g); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { parse_vector("[1, 2, 3, 4, 5]", s); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { parse_vector("geom:abc", s); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { parse_vector("[1, \"a\"]", s); }) == ErrorKind::ParseError);
}

TEST_CASE("operator parsing") {
  const auto s = sequence_lp(2.0, 4);
  const Vector x(s, {0.1, -0.2, 0.3, 0.4});
  CHECK(apply(parse_operator("power:3", s), x) == apply(power(3, s), x));
  CHECK(apply(parse_operator("poly:1,0,2", s), x) == apply(polytype({1, 0, 2}, s), x));
  CHECK(apply(parse_operator("sin", s), x) == apply(sine(s), x));
  const auto nested = parse_operator("sum(scale:2(power:2),compose(sin,poly:1,1))", s);
  const auto direct = sum(scaled(2, power(2, s)), compose(sine(s), polytype({1, 1}, s)));
  CHECK(apply(nested, x) == apply(direct, x));
  CHECK(to_string(nested) == to_string(direct));

  const auto g = grid_c01(9);
  const auto to_l2 = parse_operator("sin", g, grid_lp01(2.0, 9));
  CHECK(to_l2.codomain() == grid_lp01(2.0, 9));

  CHECK(parse_message([&] { parse_operator("power:3x", s); }).find("col") != std::string::npos);
  CHECK(parse_message([&] { parse_operator("sum(sin power:2)", s); }).find("col") != std::string::npos);
  CHECK(kind_of([&] { parse_operator("power:0", s); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { parse_operator("cos", s); }) == ErrorKind::ParseError);
}

TEST_CASE("cone and scheme parsing") {
  CHECK(parse_cone("K") == cone_k());
  CHECK(parse_cone("C+") == cone_c_plus());
  CHECK(parse_cone("Lp+") == cone_lp_plus());
  CHECK(parse_cone("Pn+:n=3") == cone_poly(3));
  CHECK(kind_of([] { parse_cone("Q+"); }) == ErrorKind::ParseError);
  CHECK(parse_scheme("forward") == FdScheme::Forward);
  CHECK(parse_scheme("central") == FdScheme::Central);
  CHECK(kind_of([] { parse_scheme("backward"); }) == ErrorKind::ParseError);
}

TEST_CASE("report JSON round-trips") {
  const auto s = sequence_lp(2.0);
  const auto w = geometric(s, 0.5);
  const auto cube = power(3, s);
  round_trip(s);
  round_trip(grid_lp01(1.5, 33));
  round_trip(verify_frechet(cube, w, {}, exact_derivative(cube, w)));
  round_trip(verify_frechet(sine(s), w, {}, exact_derivative(sine(s), w)));
  round_trip(critical_set_polytype({0, -1.5, 1}, true));
  round_trip(critical_set_polytype({-1, 0, 1}, false));
  round_trip(directional_extremum(cube, cone_k(), zeros(s), w, {-0.5, 0.5}));
  round_trip(check_order_monotone(power(2, s), cone_k(), cone_k(), 50, 7));
  round_trip(check_order_monotone(cube, cone_k(), cone_k(), 50, 7));
  round_trip(compare(cone_k(), w, zeros(s)));
  round_trip(in_cone(cone_poly(3), sample(grid_c01(), [](double t) { return std::sin(t); })).diagnostic);
  for (const auto& r : cmd_verify_paper(std::string("cor-3.4-*"))) round_trip(r);
}

TEST_CASE("text output truncates long vectors") {
  const std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  CHECK(format_coords(v) == "[1, 2, 3, 4, 5, 6, 7, 8, ...] (+2 more)");
  CHECK(format_coords(std::vector<double>{0.5}) == "[0.5]");
  const auto r = invoke({"derive", "--space", "lp:p=2,n=64", "--op", "power:3", "--at", "geom:0.5"});
  CHECK(r.out.find("(+56 more)") != std::string::npos);
}

TEST_CASE("derive command") {
  RunConfig cfg;
  cfg.space = sequence_lp(2.0, 8);
  cfg.op_text = "power:3";
  const auto j = cmd_derive(cfg, geometric(cfg.space, 0.5));
  const auto mult = j.at("multipliers").get<std::vector<double>>();
  for (std::size_t n = 1; n <= 8; ++n) CHECK(mult[n - 1] == doctest::Approx(3 * std::pow(0.5, 2.0 * n)));
  CHECK(j.at("verdict") == "Pass");

  cfg.op_text = "poly:1";
  for (double m : cmd_derive(cfg, zeros(cfg.space)).at("multipliers").get<std::vector<double>>()) CHECK(m == 1.0);
  cfg.space = grid_c01(257);
  cfg.op_text = "sin";
  for (double m : cmd_derive(cfg, zeros(cfg.space)).at("multipliers").get<std::vector<double>>()) CHECK(m == 1.0);
}

TEST_CASE("exit codes") {
  CHECK(invoke({"derive", "--op", "power:3", "--at", "geom:0.5"}).code == kExitPass);
  CHECK(invoke({"frechet", "--op", "power:3", "--at", "geom:0.5", "--corrupt", "0.1"}).code == kExitFail);
  CHECK(invoke({"monotone", "--op", "power:3", "--dcone", "K", "--ccone", "K", "--pairs", "200", "--seed", "7"}).code ==
        kExitPass);
  CHECK(invoke({"monotone", "--op", "power:2"}).code == kExitFail);
  CHECK(invoke({"critical", "--op", "poly:0,0,1"}).code == kExitPass);
  CHECK(invoke({"--space", "c01:g=257", "extrema", "--op", "sin", "--cone", "C+", "--at", "const:1.5707963"}).code ==
        kExitPass);
  const auto bad = invoke({"derive", "--op", "power:"});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.rfind("error: ParseError", 0) == 0);
  CHECK(invoke({"nosuch"}).code == kExitUsage);
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"verify", "--filter", "no-such-*"}).code == kExitUsage);
  CHECK(invoke({"derive", "--space", "lp:p=2,n=2", "--op", "power:5", "--at", "[1e80, 1]"}).code == kExitFail);
}

TEST_CASE("command examples in JSON") {
  const auto crit = json::parse(invoke({"--json", "critical", "--op", "poly:0,0,1"}).out);
  CHECK(crit.at("result").at("set_kind") == "OnlyOrigin");
  CHECK(crit.at("result").at("root_set") == json::array({0.0}));

  const auto ext = json::parse(invoke({"extrema", "--space", "c01:g=257", "--op", "sin", "--cone", "C+", "--at",
                                    "const:1.5707963", "--samples", "100", "--seed", "7", "--json"})
                                   .out);
  CHECK(ext.at("verdict").at("status") == "Maximum");

  const auto mono = json::parse(invoke({"--json", "monotone", "--op", "power:3"}).out);
  CHECK(mono.at("certificate").at("order_increasing_sampled") == true);
  CHECK(mono.at("certificate").at("derivative_cone_positive") == true);
}

TEST_CASE("verify suite") {
  const auto examples = cmd_verify_paper(std::string("example-3.*"));
  REQUIRE(examples.size() == 4);
  for (const auto& r : examples) CHECK(r.status == FixtureStatus::Pass);
  const auto disc = cmd_verify_paper(std::string("cor-3.4-i-nonzero-roots"));
  REQUIRE(disc.size() == 1);
  CHECK(disc[0].status == FixtureStatus::DiscrepancyDocumented);
  CHECK(kind_of([] { cmd_verify_paper(std::string("thm-9.9")); }) == ErrorKind::UsageError);

  const auto a = invoke({"--json", "verify", "--filter", "cor-*"});
  const auto b = invoke({"--json", "verify", "--filter", "cor-*"});
  CHECK(a.code == kExitPass);
  CHECK(a.out == b.out);
  CHECK(invoke({"verify", "--list"}).out.find("prop-4.5-ii") != std::string::npos);
}

TEST_CASE("config files") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto good = (dir / "ordiff_test_good.toml").string();
  std::ofstream(good) << "space = \"lp:p=3,n=16\"\nop = \"poly:1,1\"\nseed = 11\njson = true\n"
                         "[diff]\nscheme = \"forward\"\nh_values = [1e-4, 1e-5, 1e-6]\n";
  const auto cfg = load_config(good);
  CHECK(cfg.space == sequence_lp(3.0, 16));
  CHECK(cfg.op_text == "poly:1,1");
  CHECK(cfg.seed == 11);
  CHECK(cfg.output == OutputFormat::Json);
  CHECK(cfg.diff.scheme == FdScheme::Forward);
  CHECK(cfg.diff.h_values == std::vector<double>{1e-4, 1e-5, 1e-6});

  const auto run_json = invoke({"--config", good, "derive"});
  CHECK(run_json.code == kExitPass);
  CHECK(json::parse(run_json.out).at("space").at("p") == 3.0);
  // explicit flags win over the file
  CHECK(json::parse(invoke({"--config", good, "--space", "lp:p=2,n=4", "derive"}).out).at("space").at("dim") == 4);

  const auto bad = (dir / "ordiff_test_bad.toml").string();
  std::ofstream(bad) << "space = \"lp:p=2\"\nop = power\n";
  CHECK(parse_message([&] { load_config(bad); }).find(":2:") != std::string::npos);
  std::ofstream(bad) << "colour = \"red\"\n";
  CHECK(kind_of([&] { load_config(bad); }) == ErrorKind::ParseError);
  CHECK(invoke({"--config", bad, "derive"}).code == kExitUsage);
  CHECK(invoke({"--config", (dir / "ordiff_missing.toml").string(), "derive"}).code == kExitUsage);
}
