#include "ordiff/cli/parse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <json.hpp>
#include <toml.hpp>

#include "ordiff/error.hpp"

namespace ordiff::cli {

namespace {

/// Left-to-right scanner over a mini-language string; errors report a 1-based column.
class Cursor {
 public:
  Cursor(std::string_view text, std::string_view what) : text_(text), what_(what) {}

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw Error(ErrorKind::ParseError,
                std::string(what_) + " '" + std::string(text_) + "' col " + std::to_string(at + 1) + ": " + msg);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }

  bool done() const { return pos_ >= text_.size(); }
  std::size_t pos() const { return pos_; }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  bool accept(std::string_view token) {
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }
  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }
  void expect_end() {
    if (!done()) fail("unexpected trailing input");
  }

  double number() {
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    if (first != last && *first == '+') ++first;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || !std::isfinite(value)) fail("expected a finite number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  int integer() {
    const std::size_t start = pos_;
    const double v = number();
    if (v != std::floor(v) || std::abs(v) > 1e6) fail("expected an integer", start);
    return static_cast<int>(v);
  }

  bool at_number() const {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
  }

  std::string word() {
    const std::size_t start = pos_;
    while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '+')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

 private:
  std::string_view text_;
  std::string_view what_;
  std::size_t pos_ = 0;
};

struct KeyValue {
  double value;
  std::size_t column;
};

/// Parses "k=v,k=v" after a prefix; only the listed keys are accepted.
std::map<std::string, KeyValue> parse_keys(Cursor& cur, std::initializer_list<std::string_view> allowed) {
  std::map<std::string, KeyValue> out;
  if (cur.done()) return out;
  cur.expect(":");
  do {
    const std::size_t at = cur.pos();
    std::string key = cur.word();
    bool ok = false;
    for (auto a : allowed) ok = ok || a == key;
    if (!ok) cur.fail("unknown key '" + key + "'", at);
    if (out.count(key)) cur.fail("duplicate key '" + key + "'", at);
    cur.expect("=");
    const std::size_t vat = cur.pos();
    out[key] = {cur.number(), vat};
  } while (cur.accept(","));
  cur.expect_end();
  return out;
}

std::size_t as_size(const Cursor& cur, const KeyValue& kv, const char* key) {
  if (kv.value != std::floor(kv.value) || kv.value < 1 || kv.value > 1e8)
    cur.fail(std::string(key) + " must be a positive integer", kv.column);
  return static_cast<std::size_t>(kv.value);
}

OperatorSpec parse_op(Cursor& cur, const SpaceDescriptor& domain) {
  const std::size_t at = cur.pos();
  const std::string head = cur.word();
  try {
    if (head == "power") {
      cur.expect(":");
      const std::size_t m_at = cur.pos();
      const int m = cur.integer();
      if (m < 1) cur.fail("power exponent must be >= 1", m_at);
      return power(m, domain);
    }
    if (head == "poly") {
      cur.expect(":");
      std::vector<double> a{cur.number()};
      // A comma followed by a number continues the list; otherwise it separates arguments.
      while (cur.peek() == ',') {
        Cursor probe = cur;
        probe.accept(",");
        if (!probe.at_number()) break;
        cur = probe;
        a.push_back(cur.number());
      }
      return polytype(std::move(a), domain);
    }
    if (head == "sin") return sine(domain);
    if (head == "scale") {
      cur.expect(":");
      const double a = cur.number();
      cur.expect("(");
      OperatorSpec inner = parse_op(cur, domain);
      cur.expect(")");
      return scaled(a, inner);
    }
    if (head == "sum" || head == "compose") {
      cur.expect("(");
      OperatorSpec first = parse_op(cur, domain);
      cur.expect(",");
      OperatorSpec second = parse_op(cur, domain);
      cur.expect(")");
      return head == "sum" ? sum(first, second) : compose(first, second);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    cur.fail(e.what(), at);
  }
  cur.fail(head.empty() ? "expected an operator" : "unknown operator '" + head + "'", at);
}

double vector_arg(Cursor& cur) {
  cur.expect(":");
  const double v = cur.number();
  cur.expect_end();
  return v;
}

}  // namespace

SpaceDescriptor parse_space(std::string_view text) {
  Cursor cur(text, "space");
  const std::string head = cur.word();
  std::map<std::string, KeyValue> k;
  if (head == "lp") k = parse_keys(cur, {"p", "n"});
  else if (head == "c01") k = parse_keys(cur, {"g"});
  else if (head == "lp01") k = parse_keys(cur, {"p", "g"});
  else cur.fail("expected lp, c01 or lp01", 0);

  const double p = k.count("p") ? k["p"].value : 2.0;
  SpaceDescriptor s;
  if (head == "lp") s = {SpaceKind::SequenceLp, p, k.count("n") ? as_size(cur, k["n"], "n") : kDefaultTruncation};
  else if (head == "c01") s = {SpaceKind::GridC01, 0.0, k.count("g") ? as_size(cur, k["g"], "g") : kDefaultGrid};
  else s = {SpaceKind::GridLp01, p, k.count("g") ? as_size(cur, k["g"], "g") : kDefaultGrid};
  try {
    s.validate();
  } catch (const Error& e) {
    const bool bad_p = s.has_exponent() && !(s.p > 1.0 && std::isfinite(s.p));
    const char* key = bad_p ? "p" : (head == "lp" ? "n" : "g");
    cur.fail(e.what(), k.count(key) ? k[key].column : 0);
  }
  return s;
}

Vector parse_vector(std::string_view text, const SpaceDescriptor& space) {
  Cursor cur(text, "vector");
  if (cur.peek() == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      cur.fail(e.what(), e.byte > 0 ? e.byte - 1 : 0);
    }
    if (!j.is_array()) cur.fail("expected a JSON array", 0);
    std::vector<double> c;
    for (const auto& e : j) {
      if (!e.is_number()) cur.fail("array entries must be numbers", 0);
      c.push_back(e.get<double>());
    }
    if (c.size() > space.dim) cur.fail("array has " + std::to_string(c.size()) + " entries, space has " + std::to_string(space.dim), 0);
    if (c.size() < space.dim) {
      if (space.kind != SpaceKind::SequenceLp)
        cur.fail("grid functions need exactly " + std::to_string(space.dim) + " samples", 0);
      c.resize(space.dim, 0.0);
    }
    try {
      return Vector(space, std::move(c));
    } catch (const Error& e) {
      cur.fail(e.what(), 0);
    }
  }
  const std::string head = cur.word();
  if (head == "zeros") {
    cur.expect_end();
    return zeros(space);
  }
  if (head == "const") return constant(space, vector_arg(cur));
  if (head == "geom") return geometric(space, vector_arg(cur));
  cur.fail("expected a JSON array, geom:r, const:c or zeros", 0);
}

OperatorSpec parse_operator(std::string_view text, const SpaceDescriptor& domain,
                            std::optional<SpaceDescriptor> codomain) {
  Cursor cur(text, "operator");
  OperatorSpec op = parse_op(cur, domain);
  cur.expect_end();
  if (codomain && !(*codomain == op.codomain())) {
    try {
      op = retarget_codomain(op, *codomain);
    } catch (const Error& e) {
      cur.fail(e.what(), 0);
    }
  }
  return op;
}

ConeDescriptor parse_cone(std::string_view text) {
  Cursor cur(text, "cone");
  ConeDescriptor c;
  if (cur.accept("Pn+")) {
    cur.expect(":");
    cur.expect("n");
    cur.expect("=");
    const std::size_t at = cur.pos();
    c = cone_poly(cur.integer());
    cur.expect_end();
    try {
      c.validate();
    } catch (const Error& e) {
      cur.fail(e.what(), at);
    }
    return c;
  }
  const std::string head = cur.word();
  cur.expect_end();
  if (head == "K") return cone_k();
  if (head == "C+") return cone_c_plus();
  if (head == "Lp+") return cone_lp_plus();
  cur.fail("expected K, C+, Lp+ or Pn+:n=<degree>", 0);
}

FdScheme parse_scheme(std::string_view text) {
  if (text == "central") return FdScheme::Central;
  if (text == "forward") return FdScheme::Forward;
  throw Error(ErrorKind::ParseError, "scheme '" + std::string(text) + "' col 1: expected central or forward");
}

RunConfig load_config(const std::string& path, RunConfig base) {
  toml::table tbl;
  try {
    tbl = toml::parse_file(path);
  } catch (const toml::parse_error& e) {
    const auto& b = e.source().begin;
    throw Error(ErrorKind::ParseError,
                path + ":" + std::to_string(b.line) + ":" + std::to_string(b.column) + ": " + std::string(e.description()));
  }

  // Re-raises value errors with the location of the offending key.
  auto located = [&](const toml::node& node, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      const auto& b = node.source().begin;
      throw Error(ErrorKind::ParseError,
                  path + ":" + std::to_string(b.line) + ":" + std::to_string(b.column) + ": " + e.what());
    }
  };
  auto str = [&](const toml::node& node) {
    auto v = node.value<std::string>();
    if (!v) located(node, [] { throw Error(ErrorKind::ParseError, "expected a string"); });
    return *v;
  };
  auto num_list = [&](const toml::node& node) {
    std::vector<double> out;
    const auto* arr = node.as_array();
    if (!arr) located(node, [] { throw Error(ErrorKind::ParseError, "expected an array of numbers"); });
    for (const auto& e : *arr) {
      auto v = e.value<double>();
      if (!v) located(e, [] { throw Error(ErrorKind::ParseError, "expected a number"); });
      out.push_back(*v);
    }
    return out;
  };

  RunConfig cfg = std::move(base);
  for (const auto& [key, node] : tbl) {
    const std::string k(key.str());
    if (k == "space") located(node, [&] { cfg.space = parse_space(str(node)); });
    else if (k == "codomain") located(node, [&] { cfg.codomain = parse_space(str(node)); });
    else if (k == "op") cfg.op_text = str(node);
    else if (k == "cone") located(node, [&] { cfg.cone = parse_cone(str(node)); });
    else if (k == "dcone") located(node, [&] { cfg.dcone = parse_cone(str(node)); });
    else if (k == "ccone") located(node, [&] { cfg.ccone = parse_cone(str(node)); });
    else if (k == "seed") {
      auto v = node.value<std::int64_t>();
      if (!v || *v < 0) located(node, [] { throw Error(ErrorKind::ParseError, "seed must be a nonnegative integer"); });
      cfg.seed = static_cast<std::uint64_t>(*v);
    } else if (k == "json") {
      auto v = node.value<bool>();
      if (!v) located(node, [] { throw Error(ErrorKind::ParseError, "json must be a boolean"); });
      cfg.output = *v ? OutputFormat::Json : OutputFormat::Text;
    } else if (k == "diff") {
      const auto* diff = node.as_table();
      if (!diff) located(node, [] { throw Error(ErrorKind::ParseError, "diff must be a table"); });
      for (const auto& [dkey, dnode] : *diff) {
        const std::string dk(dkey.str());
        if (dk == "h_values") cfg.diff.h_values = num_list(dnode);
        else if (dk == "slope_scales") cfg.diff.slope_scales = num_list(dnode);
        else if (dk == "scheme") located(dnode, [&] { cfg.diff.scheme = parse_scheme(str(dnode)); });
        else if (dk == "num_directions") {
          auto v = dnode.value<std::int64_t>();
          if (!v) located(dnode, [] { throw Error(ErrorKind::ParseError, "num_directions must be an integer"); });
          cfg.diff.num_directions = static_cast<int>(*v);
        } else {
          located(dnode, [&] { throw Error(ErrorKind::ParseError, "unknown key diff." + dk); });
        }
      }
      located(node, [&] { cfg.diff.validate(); });
    } else {
      located(node, [&] { throw Error(ErrorKind::ParseError, "unknown key " + k); });
    }
  }
  if (const auto* op = tbl.get("op")) located(*op, [&] { (void)cfg.op(); });
  return cfg;
}

}  // namespace ordiff::cli
