// chaingeom: build chain geometries over small finite rings, analyze their
// representations, and run the verification suite.
//
// Exit codes: 0 success, 1 a verification failed, 2 invalid usage or
// descriptor, 3 size cap exceeded, 4 domain error, 5 internal error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "chaingeom/commands.hpp"
#include "chaingeom/error.hpp"
#include "chaingeom/suite.hpp"

namespace {

using namespace chaingeom;

enum Exit : int { kOk = 0, kFailed = 1, kUsage = 2, kCap = 3, kDomain = 4, kInternal = 5 };

struct Output {
  std::string emit;
  bool json = false;
};

void add_output(CLI::App* cmd, Output& out) {
  cmd->add_option("--emit", out.emit, "write the JSON certificate to this path");
  cmd->add_flag("--json", out.json, "print the certificate instead of the text report");
}

void add_geometry(CLI::App* cmd, GeometryArgs& g, const std::string& prefix = "") {
  cmd->add_option("--" + prefix + "ring", g.ring, "ring descriptor: gf(q), m2:gf(q), dual:gf(q), prod2:gf(q), ut2:gf(q)")
      ->capture_default_str();
  cmd->add_option("--" + prefix + "field", g.field, "subfield F, default the ring's scalar field");
  cmd->add_option("--" + prefix + "embed", g.embed, "embedding of F: scalar, regular or twisted")->capture_default_str();
  cmd->add_option("--" + prefix + "cap", g.cap, "maximum number of chains to enumerate")->capture_default_str();
}

int finish(const Json& cert, const Output& out) {
  const std::string text = cert.dump(2) + "\n";
  if (!out.emit.empty()) {
    std::ofstream f(out.emit, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write '" + out.emit + "'");
    f << text;
  }
  std::cout << (out.json ? text : render_text(cert));
  return cert.value("ok", true) ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chain geometries over finite rings: points, chains, representations, verification"};
  app.require_subcommand(1);

  Output out;
  std::string points_ring = "m2:gf(2)";
  std::string dot_path;
  auto* points = app.add_subcommand("points", "enumerate the projective line P(R)");
  points->add_option("--ring", points_ring, "ring descriptor")->capture_default_str();
  points->add_option("--emit-dot", dot_path, "write the distant graph in DOT format");
  add_output(points, out);

  GeometryArgs chains_args;
  auto* chains = app.add_subcommand("chains", "enumerate the chains of Sigma(F, R)");
  add_geometry(chains, chains_args);
  add_output(chains, out);

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "chains, representation, transversals, regulus verdict and spreads");
  add_geometry(analyze, analyze_args.geometry);
  analyze->add_option("--rep", analyze_args.rep, "natural, regular, basis:i or diag:i,j,...")->capture_default_str();
  analyze->add_option("--dim", analyze_args.dim, "dimension for basis:i")->capture_default_str();
  analyze->add_option("--seed", analyze_args.seed, "recorded seed")->capture_default_str();
  analyze->add_flag("--timings", analyze_args.timings, "record wall-clock timings (breaks byte-identical output)");
  add_output(analyze, out);

  SuiteOptions suite_opts;
  auto* suite = app.add_subcommand("verify-suite", "run every verification check");
  suite->add_option("--seed", suite_opts.seed, "seed for sampled checks")->capture_default_str();
  suite->add_option("--only", suite_opts.only, "run only these check ids");
  suite->add_flag("--timings", suite_opts.timings, "record per-check timings (breaks byte-identical output)");
  bool list = false;
  suite->add_flag("--list", list, "list check ids and exit");
  add_output(suite, out);

  MorphismArgs morph;
  morph.target.ring.clear();
  auto* morphism = app.add_subcommand("morphism", "verify a map R(A,B) -> R'((A^kappa, B^kappa) diag(H1, H1))");
  add_geometry(morphism, morph.source);
  add_geometry(morphism, morph.target, "target-");
  morphism->add_option("--kappa", morph.kappa, "Frobenius power of kappa")->capture_default_str();
  morphism->add_option("--h1", morph.h1, "H1 as a,b,c,d (row-major element codes), default identity");
  morphism->add_option("--omega", morph.omega, "apply the correlation for this Frobenius power first");
  morphism->add_flag("--iso", morph.isomorphism, "require equality in the inclusion condition");
  morphism->add_flag("--force", morph.force, "skip the inclusion condition (negative control)");
  add_output(morphism, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*points) {
      if (!dot_path.empty()) {
        std::ofstream f(dot_path, std::ios::binary);
        if (!f) throw InvalidArgument("cannot write '" + dot_path + "'");
        f << distant_graph_dot(*ProjectiveLine::build(parse_ring(points_ring)));
      }
      return finish(points_certificate(points_ring), out);
    }
    if (*chains) return finish(chains_certificate(chains_args), out);
    if (*analyze) return finish(analyze_certificate(analyze_args), out);
    if (*morphism) {
      if (morph.target.ring.empty() && (!morph.target.field.empty() || morph.target.embed != "scalar")) {
        morph.target.ring = morph.source.ring;
      }
      return finish(morphism_certificate(morph), out);
    }
    if (*suite) {
      if (list) {
        for (const CheckInfo& c : suite_checks()) std::cout << c.id << "  " << c.title << "\n";
        return kOk;
      }
      const auto results = run_suite(suite_opts);
      Json cert = suite_certificate(suite_opts, results);
      cert["ok"] = cert["summary"]["failed"].get<std::size_t>() == 0;
      return finish(cert, out);
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
