#include "chaingeom/commands.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>

#include "chaingeom/error.hpp"
#include "chaingeom/geometry.hpp"
#include "chaingeom/morphism.hpp"
#include "chaingeom/representation.hpp"

namespace chaingeom {

namespace {

Json mat_json(const Mat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows; ++i) rows.push_back(m.row_vec(i));
  return rows;
}

// row-major coefficient list
Json elem_json(const FiniteRing& R, RingId a) { return R.mat(a).data; }

Json point_json(const ProjectiveLine& L, PointId p) {
  const PointRep r = L.rep(p);
  return {{"id", p}, {"a", elem_json(*L.ring(), r.a)}, {"b", elem_json(*L.ring(), r.b)}};
}

Json mat2_json(const FiniteRing& R, const Mat2& m) {
  Json out = Json::array();
  for (RingId e : m.e) out.push_back(elem_json(R, e));
  return out;
}

struct Built {
  RingPtr ring;
  LinePtr line;
  std::optional<SubfieldEmbedding> emb;
};

Built build_geometry(const GeometryArgs& g) {
  Built b;
  b.ring = parse_ring(g.ring);
  const FieldPtr F = g.field.empty() ? b.ring->scalar_field() : parse_field(g.field);
  b.emb = embed_subfield(F, b.ring, parse_embed_mode(g.embed));
  b.line = ProjectiveLine::build(b.ring);
  return b;
}

Json geometry_json(const Built& b) {
  return {{"ring", b.ring->descriptor()}, {"field", b.emb->field()->descriptor()}, {"embedding", to_string(b.emb->mode())}};
}

Json counts_json(const ProjectiveLine& L, const ChainGeometry& geom) {
  return {{"points", L.size()}, {"chains", geom.chains().size()}, {"chain_size", geom.chain_size()}};
}

Json transversal_json(const TransversalRecord& t) {
  Json j{{"u", t.u}, {"alpha", t.alpha.descriptor()}};
  const auto power = t.alpha.frobenius_power();
  j["alpha_power"] = power ? Json(*power) : Json(nullptr);
  j["kind"] = to_string(t.kind);
  return j;
}

Json verdict_json(const RegulusCertificate& c) {
  Json j{{"verdict", to_string(c.verdict)}, {"reason", c.reason}};
  j["alpha"] = c.alpha ? Json(c.alpha->descriptor()) : Json(nullptr);
  Json classes = Json::array();
  for (const LinkedClass& lc : c.classes) {
    classes.push_back({{"alpha", lc.alpha.descriptor()}, {"eigenspace_dim", lc.eigenspace.dim()},
                       {"eigenspace_basis", mat_json(lc.eigenspace.basis())}});
  }
  j["classes"] = classes;
  j["witness_basis"] = mat_json(c.witness_basis);
  j["linked_and_spanning"] = c.linked_and_spanning;
  j["synthetic_regulus"] = c.synthetic_regulus ? Json(*c.synthetic_regulus) : Json(nullptr);
  return j;
}

}  // namespace

Json points_certificate(const std::string& ring) {
  const RingPtr R = parse_ring(ring);
  const LinePtr L = ProjectiveLine::build(R);
  Json cert;
  cert["schema_version"] = kSchemaVersion;
  cert["command"] = "points";
  cert["geometry"] = {{"ring", R->descriptor()}};
  std::size_t edges = 0;
  for (PointId p = 0; p < L->size(); ++p) {
    for (PointId q = p + 1; q < L->size(); ++q) edges += L->is_distant(p, q) ? 1 : 0;
  }
  cert["counts"] = {{"ring_size", R->size()}, {"units", R->units().size()}, {"points", L->size()}, {"distant_pairs", edges}};
  Json pts = Json::array();
  for (PointId p = 0; p < L->size(); ++p) pts.push_back(point_json(*L, p));
  cert["points"] = pts;
  cert["ok"] = true;
  return cert;
}

Json chains_certificate(const GeometryArgs& args) {
  const Built b = build_geometry(args);
  const ChainGeometry geom = ChainGeometry::build(b.line, *b.emb, args.cap);
  const ProjectiveLine& L = *b.line;
  Json cert;
  cert["schema_version"] = kSchemaVersion;
  cert["command"] = "chains";
  cert["geometry"] = geometry_json(b);
  cert["counts"] = counts_json(L, geom);
  std::vector<std::size_t> through;
  bool distant = true;
  for (PointId p : {L.base_zero(), L.base_infinity(), L.base_unit()}) {
    for (PointId q : {L.base_zero(), L.base_infinity(), L.base_unit()}) distant = distant && (p == q || L.is_distant(p, q));
  }
  if (distant) through = chains_through(geom, {L.base_zero(), L.base_infinity(), L.base_unit()});
  cert["chains_through_base_triple"] = through.size();
  Json chains = Json::array();
  for (const Chain& c : geom.chains()) chains.push_back({{"points", c.points}, {"witness", mat2_json(*b.ring, c.witness)}});
  cert["chains"] = chains;
  cert["ok"] = true;
  return cert;
}

Json analyze_certificate(const AnalyzeArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  const Built b = build_geometry(args.geometry);
  const SubfieldEmbedding& emb = *b.emb;
  const ProjectiveLine& L = *b.line;
  const ChainGeometry geom = ChainGeometry::build(b.line, emb, args.geometry.cap);
  const auto t_chains = std::chrono::steady_clock::now();

  const RepPtr rep = parse_rep(args.rep, emb, args.dim);
  const auto transversals = weak_transversals(*rep, emb);
  const TransversalCriteria criteria = check_transversal_criteria(*rep, emb);
  const RegulusCertificate verdict = regulus_verdict(*rep, emb);
  bool ok = criteria.ok();
  std::optional<DecompositionReport> decomposition;
  if (verdict.verdict != Verdict::neither) {
    decomposition = check_decomposition(*rep, emb, verdict);
    ok = ok && decomposition->ok();
  }
  if (verdict.synthetic_regulus) ok = ok && (*verdict.synthetic_regulus == (verdict.verdict == Verdict::regulus));
  ok = ok && verdict.linked_and_spanning == (verdict.verdict == Verdict::regulus);
  const auto t_rep = std::chrono::steady_clock::now();

  Json cert;
  cert["schema_version"] = kSchemaVersion;
  cert["command"] = "analyze";
  cert["geometry"] = geometry_json(b);
  cert["counts"] = counts_json(L, geom);
  cert["representation"] = {{"descriptor", rep->descriptor()},
                            {"scalar_field", rep->field()->descriptor()},
                            {"dimU", rep->dim()},
                            {"faithful", rep->faithful()}};
  // which transversals of the standard chain image are transversals of every chain image
  std::vector<std::vector<Subspace>> images;
  images.reserve(geom.chains().size());
  for (const Chain& c : geom.chains()) images.push_back(chain_image(*rep, L, c));
  Json tr = Json::array();
  for (const auto& t : transversals) {
    const Subspace T = diagonal_line(*rep->field(), t.u);
    std::size_t met = 0;
    for (const auto& lines : images) {
      met += std::all_of(lines.begin(), lines.end(),
                         [&](const Subspace& l) { return meet_dim(*rep->field(), T, l) > 0; })
                 ? 1
                 : 0;
    }
    Json j = transversal_json(t);
    j["chains_met"] = met;
    j["meets_every_chain_image"] = met == images.size();
    tr.push_back(j);
  }
  cert["transversals"] = tr;
  cert["transversal_criteria"] = {{"weak", criteria.weak},
                                  {"full", criteria.full},
                                  {"eigen_matches_geometric", criteria.eigen_matches_geometric},
                                  {"eigen_matches_bimodule", criteria.eigen_matches_bimodule},
                                  {"full_matches_geometric", criteria.full_matches_geometric},
                                  {"full_iff_surjective", criteria.full_iff_surjective},
                                  {"surjective_iff_cyclic", criteria.surjective_iff_cyclic},
                                  {"pairwise_skew", criteria.pairwise_skew}};
  cert["verdict"] = verdict_json(verdict);
  if (decomposition) {
    cert["decomposition"] = {{"summand_dims", decomposition->summand_dims},
                             {"direct_sum", decomposition->direct_sum},
                             {"traces_are_reguli", decomposition->traces_are_reguli},
                             {"join_of_traces", decomposition->join_of_traces}};
  }

  // per-chain spread classification only makes sense for lines of PG(3, K)
  if (rep->dim() == 2) {
    const Pg3 pg(rep->field());
    std::map<std::string, std::size_t> tally;
    Json per_chain = Json::array();
    for (const auto& lines : images) {
      const std::string kind = to_string(spread_check(pg, lines));
      ++tally[kind];
      per_chain.push_back(kind);
    }
    Json summary = Json::object();
    for (const char* k : {"not_spread", "spread", "regular_spread"}) summary[k] = tally[k];
    cert["spreads"] = {{"summary", summary}, {"per_chain", per_chain}};
  } else {
    cert["spreads"] = nullptr;
  }
  cert["morphism_reports"] = Json::array();
  cert["rng_seed"] = args.seed;
  if (args.timings) {
    const auto end = std::chrono::steady_clock::now();
    cert["timings"] = {{"chains_seconds", std::chrono::duration<double>(t_chains - start).count()},
                       {"representation_seconds", std::chrono::duration<double>(t_rep - t_chains).count()},
                       {"spreads_seconds", std::chrono::duration<double>(end - t_rep).count()}};
  }
  cert["ok"] = ok;
  return cert;
}

Json morphism_certificate(const MorphismArgs& args) {
  const Built src = build_geometry(args.source);
  GeometryArgs tgt_args = args.target;
  if (tgt_args.ring.empty()) tgt_args = args.source;
  const Built dst = build_geometry(tgt_args);
  const FieldPtr K = src.ring->scalar_field();
  const FieldPtr K2 = dst.ring->scalar_field();
  if (K->order() != K2->order()) throw DomainError("kappa must be bijective: scalar fields have different orders");
  const FieldHom kappa = [&] {
    const auto homs = homomorphisms(K, K2);
    for (const FieldHom& h : homs) {
      if (h.frobenius_power() == args.kappa) return h;
    }
    throw InvalidArgument("kappa power " + std::to_string(args.kappa) + " out of range");
  }();
  std::optional<FieldAut> omega;
  if (args.omega) {
    if (*args.omega >= K->degree()) throw InvalidArgument("omega power out of range");
    omega = FieldAut(K, *args.omega);
  }
  const Mat H1 = args.h1.empty() ? Mat::identity(2) : parse_matrix2(*K2, args.h1);
  const FundamentalMode mode = args.isomorphism ? FundamentalMode::isomorphism : FundamentalMode::morphism;
  const MorphismSpec spec = make_fundamental(*src.emb, *dst.emb, kappa, H1, omega, mode, args.force);

  const ChainGeometry gs = ChainGeometry::build(src.line, *src.emb, args.source.cap);
  const bool same = geometry_json(src) == geometry_json(dst);
  const std::optional<ChainGeometry> built =
      same ? std::nullopt : std::optional<ChainGeometry>(ChainGeometry::build(dst.line, *dst.emb, tgt_args.cap));
  const ChainGeometry& gd = same ? gs : *built;
  const MorphismReport rep = verify_morphism(spec, gs, gd);

  Json cert;
  cert["schema_version"] = kSchemaVersion;
  cert["command"] = "morphism";
  cert["geometry"] = {{"source", geometry_json(src)}, {"target", geometry_json(dst)}};
  cert["counts"] = {{"source", counts_json(*src.line, gs)}, {"target", counts_json(*dst.line, gd)}};
  Json r{{"spec", spec.descriptor()},
         {"mode", args.isomorphism ? "isomorphism" : "morphism"},
         {"forced", spec.forced},
         {"bijective", rep.bijective},
         {"distant_forward", rep.distant_forward},
         {"distant_backward", rep.distant_backward},
         {"chains_into_chains", rep.chains_into_chains},
         {"chains_onto_chains", rep.chains_onto_chains},
         {"fundamental", rep.fundamental}};
  cert["morphism_reports"] = Json::array({r});
  cert["ok"] = rep.all_true() && (!args.isomorphism || rep.chains_onto_chains);
  return cert;
}

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render_object(std::ostringstream& out, const Json& obj, const std::string& indent) {
  for (const auto& [key, value] : obj.items()) {
    if (value.is_object()) {
      out << indent << key << ":\n";
      render_object(out, value, indent + "  ");
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      out << indent << key << ": " << value.size() << " entries\n";
      for (const Json& e : value) {
        out << indent << "  -";
        for (const auto& [k, v] : e.items()) {
          if (!v.is_structured() || v.size() <= 8) out << " " << k << "=" << scalar_text(v);
        }
        out << "\n";
      }
    } else if (value.is_array() && value.size() > 12) {
      out << indent << key << ": [" << value.size() << " entries]\n";
    } else {
      out << indent << key << ": " << scalar_text(value) << "\n";
    }
  }
}

}  // namespace

std::string render_text(const Json& cert) {
  std::ostringstream out;
  const std::string command = cert.value("command", "");
  if (command == "verify-suite") {
    out << "verify-suite (seed " << cert["rng_seed"].get<std::uint64_t>() << ")\n";
    for (const Json& c : cert["checks"]) {
      out << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["id"].get<std::string>() << "  ("
          << c["assertions"].get<std::size_t>() << " assertions)";
      if (c.contains("seconds")) out << "  " << c["seconds"].get<double>() << " s";
      out << "\n";
      for (const Json& f : c["failures"]) out << "     - " << f.get<std::string>() << "\n";
    }
    const Json& s = cert["summary"];
    out << s["passed"].get<std::size_t>() << "/" << s["total"].get<std::size_t>() << " checks passed\n";
    return out.str();
  }
  Json shown = cert;
  if (command == "points") shown.erase("points");
  if (command == "chains") shown.erase("chains");
  if (shown.contains("spreads") && shown["spreads"].is_object()) shown["spreads"].erase("per_chain");
  if (shown.contains("verdict")) {
    shown["verdict"].erase("witness_basis");
    for (Json& c : shown["verdict"]["classes"]) c.erase("eigenspace_basis");
  }
  render_object(out, shown, "");
  return out.str();
}

std::string distant_graph_dot(const ProjectiveLine& line) {
  std::ostringstream out;
  out << "graph distant {\n";
  for (PointId p = 0; p < line.size(); ++p) out << "  p" << p << ";\n";
  for (PointId p = 0; p < line.size(); ++p) {
    for (PointId q = p + 1; q < line.size(); ++q) {
      if (line.is_distant(p, q)) out << "  p" << p << " -- p" << q << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace chaingeom
