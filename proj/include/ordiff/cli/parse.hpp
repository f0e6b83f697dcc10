#pragma once

// Mini-languages accepted on the command line and in config files.
//
//   space     lp:p=2,n=64 | c01:g=257 | lp01:p=2,g=257
//   vector    [1, 0.5, ...] | geom:r | const:c | zeros
//             (a JSON array shorter than N on l_p is padded with zeros)
//   operator  power:m | poly:a1,a2,...,am | sin
//             | scale:a(op) | sum(op,op) | compose(outer,inner)
//   cone      K | C+ | Lp+ | Pn+:n=3
//
// Errors are ParseError with a 1-based column.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ordiff/cones.hpp"
#include "ordiff/diffcheck.hpp"
#include "ordiff/operators.hpp"
#include "ordiff/spaces.hpp"

namespace ordiff::cli {

SpaceDescriptor parse_space(std::string_view text);
Vector parse_vector(std::string_view text, const SpaceDescriptor& space);
/// Leaves map domain -> domain; when `codomain` differs, the outermost result is relabelled.
OperatorSpec parse_operator(std::string_view text, const SpaceDescriptor& domain,
                            std::optional<SpaceDescriptor> codomain = std::nullopt);
ConeDescriptor parse_cone(std::string_view text);
FdScheme parse_scheme(std::string_view text);

enum class OutputFormat { Text, Json };

struct RunConfig {
  SpaceDescriptor space = sequence_lp(2.0);
  std::optional<SpaceDescriptor> codomain;
  std::string op_text = "power:3";
  std::optional<ConeDescriptor> cone;
  std::optional<ConeDescriptor> dcone;
  std::optional<ConeDescriptor> ccone;
  DiffConfig diff;
  OutputFormat output = OutputFormat::Text;
  std::uint64_t seed = 7;

  OperatorSpec op() const { return parse_operator(op_text, space, codomain); }
};

/// Reads a TOML file whose keys mirror RunConfig (space, codomain, op, cone,
/// dcone, ccone, seed, json, and a [diff] table). Errors carry line:column.
RunConfig load_config(const std::string& path, RunConfig base = {});

}  // namespace ordiff::cli
