#pragma once

// Certificate builders behind the command-line subcommands. Each returns the
// JSON certificate; the text report is rendered from it.

#include <cstdint>
#include <optional>
#include <string>

#include "chaingeom/pline.hpp"
#include "chaingeom/suite.hpp"

namespace chaingeom {

struct GeometryArgs {
  std::string ring = "m2:gf(2)";
  std::string field;  // empty: the ring's scalar field
  std::string embed = "scalar";
  std::size_t cap = kDefaultChainCap;
};

struct AnalyzeArgs {
  GeometryArgs geometry;
  std::string rep = "natural";
  std::size_t dim = 2;  // for basis:i
  std::uint64_t seed = 7;
  bool timings = false;
};

struct MorphismArgs {
  GeometryArgs source;
  GeometryArgs target;  // empty ring: same as source
  std::uint32_t kappa = 0;
  std::string h1;                      // "a,b,c,d"; empty: identity
  std::optional<std::uint32_t> omega;  // correlation power
  bool isomorphism = false;
  bool force = false;
};

Json points_certificate(const std::string& ring);
Json chains_certificate(const GeometryArgs& args);
/// "ok" is false when any internal cross-check of the analysis disagrees.
Json analyze_certificate(const AnalyzeArgs& args);
/// "ok" is true iff the map is a fundamental bijective morphism (and maps
/// chains onto chains when isomorphism is requested).
Json morphism_certificate(const MorphismArgs& args);

/// Human-readable report derived from a certificate.
std::string render_text(const Json& cert);

/// The distant graph of P(R) in DOT format.
std::string distant_graph_dot(const ProjectiveLine& line);

}  // namespace chaingeom
