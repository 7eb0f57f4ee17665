// gkmtool: command-line front end for the GKM toolkit.
//
// Exit codes: 0 ok, 1 validation failure, 2 property refuted, 3 parse/IO error.

#include <iostream>
#include <optional>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "gkm/acs.hpp"
#include "gkm/cohomology.hpp"
#include "gkm/error.hpp"
#include "gkm/io.hpp"
#include "gkm/models.hpp"
#include "gkm/pipeline.hpp"

using namespace gkm;

namespace {

constexpr int kOk = 0, kInvalid = 1, kRefuted = 2, kParse = 3;

struct Options {
  std::string format = "json";
  int jobs = 1;
};

// Text rendering: one "path: value" line per scalar, arrays of scalars inline.
void render_text(const json &j, const std::string &prefix, std::ostream &os) {
  auto scalar_array = [](const json &a) {
    for (const auto &x : a)
      if (x.is_structured())
        return false;
    return true;
  };
  if (j.is_object()) {
    for (const auto &[k, v] : j.items())
      render_text(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array() && !scalar_array(j)) {
    for (std::size_t i = 0; i < j.size(); ++i)
      render_text(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else if (j.is_array()) {
    os << prefix << ":";
    for (const auto &x : j)
      os << " " << (x.is_string() ? x.get<std::string>() : x.dump());
    os << "\n";
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const Options &o, json report, const std::string &headline = {}) {
  json out = {{"schema", 1}};
  for (auto &[k, v] : report.items())
    out[k] = v;
  if (o.format == "text") {
    if (!headline.empty())
      std::cout << headline << "\n";
    out.erase("schema");
    render_text(out, "", std::cout);
  } else {
    std::cout << out.dump(2) << "\n";
  }
}

GraphData read_data(const std::string &path) { return load_graph_data(path); }

// Graphs without a connection get the inferred one when the labels allow it.
GkmGraph read_graph(const std::string &path) {
  GkmGraph g = GkmGraph::from_data(read_data(path));
  if (!g.has_connection() && g.labelled())
    g = infer_connection(g);
  return g;
}

json factors_json(const std::vector<Factor> &fs) {
  json a = json::array();
  for (const auto &f : fs)
    a.push_back(f.str());
  return a;
}

json check_json(const Check &c) {
  json j = {{"name", c.name}, {"passed", c.passed}};
  if (!c.passed)
    j["witness"] = c.witness;
  return j;
}

json face_json(const GkmGraph &g, const Face &f) {
  json vs = json::array(), es = json::array();
  for (VertexId v : f.vertices)
    vs.push_back(g.vertex_name(v));
  for (int u : f.edges)
    es.push_back(g.edge_name(2 * u));
  return {{"vertices", vs}, {"edges", es}, {"dim", f.dim}, {"type", to_string(f.type)}};
}

json class_json(const GkmGraph &g, const CohomologyClass &c) {
  json j = json::object();
  for (std::size_t v = 0; v < c.entries.size(); ++v)
    j[g.vertex_name(static_cast<VertexId>(v))] = c.entries[v].str();
  return j;
}

json longs(const std::vector<long> &xs) { return json(xs); }

// ---- subcommands -------------------------------------------------------

int cmd_validate(const Options &o, const std::string &path) {
  GraphData d = read_data(path);
  ValidationReport r = validate_structure(d);
  json checks = json::array();
  for (const auto &c : r.checks)
    checks.push_back(check_json(c));
  bool ok = r.ok();
  json rep = {{"valid", ok}, {"checks", checks}};
  if (ok) {
    GkmGraph g = GkmGraph::from_data(d);
    rep["gkm_order"] = r.gkm_order;
    if (g.labelled() && g.has_connection() && g.valence() && *g.valence() >= 2) {
      CompatReport cr = check_connection_compat(g);
      for (const auto &c : cr.report.checks) {
        checks.push_back(check_json(c));
        ok = ok && c.passed;
      }
      rep["checks"] = checks;
      rep["valid"] = ok;
      if (cr.report.ok()) {
        IndependenceResult mi = check_manifold_integrality(cr, g);
        rep["manifold_integrality"] = mi.ok;
        if (!mi.ok)
          rep["integrality_witness"] = mi.witness;
      }
      rep["effective"] = check_effective(g);
    }
  }
  emit(o, rep, ok ? "VALID" : "INVALID");
  return ok ? kOk : kInvalid;
}

int cmd_faces(const Options &o, const std::string &path, int dim) {
  GkmGraph g = read_graph(path);
  json a = json::array();
  for (const Face &f : enumerate_faces(g, dim))
    a.push_back(face_json(g, f));
  emit(o, {{"dim", dim}, {"faces", a}});
  return kOk;
}

int cmd_classify(const Options &o, const std::string &path) {
  GkmGraph g = read_graph(path);
  SmallFacesResult r = check_small_three_faces(g);
  json counts = json::object();
  for (const auto &[t, n] : r.type_counts)
    counts[to_string(t)] = n;
  json rep = {{"small_three_faces", r.ok}, {"type_counts", counts}};
  if (!r.ok)
    rep["witness"] = r.witness;
  json parts = json::array();
  if (r.ok) {
    SimplexPartition p = maximal_simplex_partition(g, 0);
    for (const auto &b : p.blocks) {
      json es = json::array();
      for (EdgeId e : b.edges)
        es.push_back(g.edge_name(e));
      parts.push_back({{"kind", b.kind == FactorKind::Delta ? "Delta" : "Sigma"},
                       {"size", b.size()},
                       {"edges", es}});
    }
    rep["partition_at"] = g.vertex_name(0);
    rep["partition"] = parts;
  }
  emit(o, rep, r.ok ? "SMALL_FACES" : "NOT_SMALL");
  return r.ok ? kOk : kRefuted;
}

int cmd_cover(const Options &o, const std::string &path) {
  GkmGraph g = read_graph(path);
  CoveringMap c = build_covering(g);
  std::string bad = verify_covering(c);
  if (!bad.empty())
    throw Error("CoveringCheckFailed", bad);
  DeckGroup d = deck_group(c);
  const GkmGraph &t = c.total.graph;
  json vm = json::object(), em = json::object();
  for (VertexId v = 0; v < static_cast<VertexId>(t.num_vertices()); ++v)
    vm[t.vertex_name(v)] = c.base.vertex_name(c.vertex_map[v]);
  for (EdgeId e = 0; e < static_cast<EdgeId>(t.num_edges()); ++e)
    em[t.edge_name(e)] = c.base.edge_name(c.edge_map[e]);
  emit(o, {{"factors", factors_json(c.total.factors)},
           {"deck_order", d.order()},
           {"degree", c.degree()},
           {"vertex_map", vm},
           {"edge_map", em}});
  return kOk;
}

int cmd_deck(const Options &o, const std::string &path) {
  GkmGraph g = read_graph(path);
  CoveringMap c = build_covering(g);
  DeckGroup d = deck_group(c);
  const GkmGraph &t = c.total.graph;
  json els = json::array();
  for (const auto &h : d.elements) {
    json m = json::object();
    for (VertexId v = 0; v < static_cast<VertexId>(t.num_vertices()); ++v)
      m[t.vertex_name(v)] = t.vertex_name(h.vertex[v]);
    els.push_back(m);
  }
  emit(o, {{"order", d.order()}, {"elements", els}, {"table", d.table}});
  return kOk;
}

int cmd_extend(const Options &o, const std::string &path, const std::string &order) {
  GkmGraph g = read_graph(path);
  Extension ext =
      extend_to_gkm_n(g, order == "reverse" ? TreeOrder::Reverse : TreeOrder::Lexicographic);
  json beta = json::object(), basis = json::array();
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); e += 2)
    beta[g.edge_name(e)] = to_json(ext.beta.weight(e));
  for (EdgeId e : ext.basis)
    basis.push_back(g.edge_name(e));
  emit(o, {{"rank", ext.n},
           {"phi", to_json(ext.phi)},
           {"base_vertex", g.vertex_name(ext.base)},
           {"basis", basis},
           {"beta", beta}});
  return kOk;
}

int cmd_betti(const Options &o, const std::string &path) {
  GkmGraph g = read_graph(path);
  GradedDims d = betti_numbers(g, o.jobs);
  emit(o, {{"equivariant", d.equivariant},
           {"betti", longs(d.betti)},
           {"total", d.total},
           {"vertices", d.vertices}});
  return kOk;
}

int cmd_ring(const Options &o, const std::string &path, std::size_t degree) {
  GkmGraph g = read_graph(path);
  auto basis = equivariant_basis(g, degree);
  json cs = json::array();
  for (const auto &c : basis)
    cs.push_back(class_json(g, c));
  emit(o, {{"degree", degree}, {"dimension", basis.size()}, {"classes", cs}});
  return kOk;
}

std::vector<Factor> parse_factors(const std::string &s) {
  static const std::regex re(R"((Delta|Sigma|D|S)(\d+))");
  std::vector<Factor> fs;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, 'x')) {
    std::smatch m;
    if (!std::regex_match(tok, m, re))
      throw ParseError("bad factor '" + tok + "'");
    fs.push_back({m[1].str()[0] == 'D' ? FactorKind::Delta : FactorKind::Sigma, std::stoi(m[2].str())});
  }
  return fs;
}

int cmd_model(const Options &, const std::string &kind, const std::vector<std::string> &args,
              const std::string &part) {
  auto arg = [&](std::size_t i) -> long {
    if (i >= args.size())
      throw ParseError("model " + kind + " needs " + std::to_string(i + 1) + " argument(s)");
    try {
      return std::stol(args[i]);
    } catch (const std::exception &) {
      throw ParseError("not an integer: '" + args[i] + "'");
    }
  };
  GkmGraph g;
  if (kind == "simplex")
    g = simplex_model(static_cast<int>(arg(0)));
  else if (kind == "sigma")
    g = sigma_model(static_cast<int>(arg(0)));
  else if (kind == "product") {
    if (args.empty())
      throw ParseError("model product needs a factor list like D2xS2");
    g = standard_product_model(parse_factors(args[0]));
  } else if (kind == "wps")
    g = weighted_projective_model(arg(0), arg(1));
  else if (kind == "hirzebruch")
    g = hirzebruch_model(arg(0));
  else if (kind == "cube") {
    HypercubeModel m = hypercube_involution_model(static_cast<int>(arg(0)));
    g = part == "total" ? m.total : part == "projected" ? m.total_projected : m.quotient;
  } else
    throw ParseError("unknown model '" + kind + "'");
  // graph JSON is emitted bare so it can be piped back in
  std::cout << to_json(g).dump(2) << "\n";
  return kOk;
}

int cmd_bott(const Options &o, const std::string &path) {
  json spec = read_json(path);
  std::vector<BottStage> stages;
  try {
    for (const auto &s : spec.at("stages")) {
      BottStage st;
      st.n = s.at("n").get<int>();
      st.bundles = s.value("bundles", std::vector<std::vector<long>>{});
      stages.push_back(st);
    }
  } catch (const json::exception &e) {
    throw ParseError(std::string("bad Bott tower spec: ") + e.what());
  }
  BottRing r = bott_tower_cohomology(stages);
  json rel = json::array();
  for (const auto &p : r.relations)
    rel.push_back(p.str());
  emit(o, {{"generators", r.generators},
           {"fiber_dims", r.fiber_dims},
           {"relations", rel},
           {"betti", r.betti}});
  return kOk;
}

int cmd_acs(const Options &o, const std::string &path) {
  GkmGraph g = read_graph(path);
  AcsResult r = find_acs_lift(g);
  if (!r.lift) {
    emit(o, {{"result", "NO_LIFT"}, {"witness", r.witness}, {"cycle", r.cycle}}, "NO_LIFT");
    return kRefuted;
  }
  json signs = json::object(), table = json::array();
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.num_edges()); e += 2)
    signs[g.edge_name(e)] = to_json(r.lift->lift[e]);
  for (const auto &c : r.table)
    table.push_back({{"vertex", g.vertex_name(c.vertex)},
                     {"along", g.edge_name(c.along)},
                     {"edge", g.edge_name(c.edge)},
                     {"image", g.edge_name(c.image)},
                     {"p", to_json(c.p)},
                     {"q", to_json(c.q)}});
  emit(o, {{"result", "LIFT_FOUND"}, {"lift", signs}, {"table", table}}, "LIFT_FOUND");
  return kOk;
}

int cmd_recognize(const Options &o, const std::string &path) {
  GkmGraph g = read_graph(path);
  BottReport r = recognize_bott(g);
  json rep = {{"recognized", r.recognized}, {"factors", factors_json(r.factors)}};
  if (r.recognized)
    rep["conclusion"] = r.conclusion;
  else
    rep["failed_stage"] = r.failed_stage, rep["witness"] = r.witness;
  emit(o, rep, r.recognized ? "BOTT" : "NOT_RECOGNIZED");
  return r.recognized ? kOk : kRefuted;
}

int cmd_pipeline_model(const Options &o, const std::string &path) {
  GkmGraph g = read_graph(path);
  ModelReport r = build_model(g, o.jobs);
  json lam = json::array(), act = json::array();
  for (const auto &f : r.lambda)
    lam.push_back({{"vertices", f.vertices.size()}, {"lambda", to_json(f.lambda)}});
  for (const auto &a : r.action)
    act.push_back(to_json(a));
  json rep = {{"ok", r.ok},
              {"hypotheses",
               {{"small_three_faces", r.small_three_faces},
                {"gkm_order", r.gkm_order},
                {"effective", r.effective}}},
              {"factors", factors_json(r.factors)},
              {"deck_order", r.deck_order},
              {"extension_rank", r.extension_rank},
              {"phi", to_json(r.phi)},
              {"lambda", lam},
              {"action", act},
              {"graph_betti", longs(r.graph_betti)},
              {"model_betti", longs(r.model_betti)}};
  if (!r.small_three_faces)
    rep["hypotheses"]["small_faces_witness"] = r.small_faces_witness;
  if (!r.ok)
    rep["failed_stage"] = r.failed_stage, rep["witness"] = r.witness;
  emit(o, rep, r.ok ? "MODEL_OK" : "MODEL_FAILED at " + r.failed_stage);
  return r.ok ? kOk : kRefuted;
}

int cmd_pipeline_classify(const Options &o, const std::string &path, bool expect_product) {
  GkmGraph g = read_graph(path);
  OrbitSpaceReport r = classify_orbit_space(g);
  json rep = {{"verdict", to_string(r.verdict)},
              {"factors", factors_json(r.factors)},
              {"deck_order", r.deck_order},
              {"antipodal_cube", r.antipodal_cube}};
  if (!r.witness.empty())
    rep["witness"] = r.witness;
  emit(o, rep, to_string(r.verdict));
  if (r.verdict == Verdict::PreconditionFailed)
    return kRefuted;
  if (expect_product && r.verdict != Verdict::Product)
    return kRefuted;
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"gkmtool: GKM graph toolkit"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--jobs", o.jobs, "worker threads; never changes output")
      ->check(CLI::PositiveNumber);

  std::string file, order = "lex", kind, part = "quotient";
  int dim = 2;
  std::size_t degree = 1;
  bool expect_product = false;
  std::vector<std::string> model_args;
  std::function<int()> run;

  auto with_file = [&](CLI::App *sub) {
    sub->add_option("file", file, "graph JSON, or - for stdin")->required();
    return sub;
  };
  with_file(app.add_subcommand("validate", "structural and GKM checks"))
      ->callback([&] { run = [&] { return cmd_validate(o, file); }; });
  auto faces = with_file(app.add_subcommand("faces", "enumerate faces of one dimension"));
  faces->add_option("--dim", dim, "face dimension")->capture_default_str();
  faces->callback([&] { run = [&] { return cmd_faces(o, file, dim); }; });
  with_file(app.add_subcommand("classify", "small three-dimensional faces and simplex partition"))
      ->callback([&] { run = [&] { return cmd_classify(o, file); }; });
  with_file(app.add_subcommand("cover", "covering by a product graph"))
      ->callback([&] { run = [&] { return cmd_cover(o, file); }; });
  with_file(app.add_subcommand("deck", "deck transformation group"))
      ->callback([&] { run = [&] { return cmd_deck(o, file); }; });
  auto ext = with_file(app.add_subcommand("extend", "extend labels to full rank"));
  ext->add_option("--order", order, "spanning tree order")
      ->check(CLI::IsMember({"lex", "reverse"}))
      ->capture_default_str();
  ext->callback([&] { run = [&] { return cmd_extend(o, file, order); }; });
  with_file(app.add_subcommand("betti", "equivariant dimensions and Betti numbers"))
      ->callback([&] { run = [&] { return cmd_betti(o, file); }; });
  auto ring = with_file(app.add_subcommand("ring", "basis of equivariant classes of one degree"));
  ring->add_option("--degree", degree, "polynomial degree")->capture_default_str();
  ring->callback([&] { run = [&] { return cmd_ring(o, file, degree); }; });
  auto model = app.add_subcommand("model", "emit a model graph: simplex N | sigma M | product D2xS2 | wps A B | hirzebruch A | cube N");
  model->add_option("kind", kind)->required();
  model->add_option("args", model_args);
  model->add_option("--part", part, "for cube: total, projected or quotient")
      ->check(CLI::IsMember({"total", "projected", "quotient"}))
      ->capture_default_str();
  model->callback([&] { run = [&] { return cmd_model(o, kind, model_args, part); }; });
  with_file(app.add_subcommand("bott", "cohomology of a generalized Bott tower spec"))
      ->callback([&] { run = [&] { return cmd_bott(o, file); }; });
  with_file(app.add_subcommand("acs", "search for an almost complex sign lift"))
      ->callback([&] { run = [&] { return cmd_acs(o, file); }; });
  with_file(app.add_subcommand("recognize", "generalized Bott recognition"))
      ->callback([&] { run = [&] { return cmd_recognize(o, file); }; });
  auto pipe = app.add_subcommand("pipeline", "model construction and orbit space classification");
  pipe->require_subcommand(1);
  with_file(pipe->add_subcommand("model", "covering, extension and invariant cohomology"))
      ->callback([&] { run = [&] { return cmd_pipeline_model(o, file); }; });
  auto cls = with_file(pipe->add_subcommand("classify", "product or nontrivial cover"));
  cls->add_flag("--expect-product", expect_product, "exit 2 unless the verdict is Product");
  cls->callback([&] { run = [&] { return cmd_pipeline_classify(o, file, expect_product); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }
  try {
    return run();
  } catch (const ParseError &e) {
    std::cerr << "gkmtool: " << e.what() << "\n";
    return kParse;
  } catch (const Error &e) {
    std::cerr << "gkmtool: " << e.what() << "\n";
    if (o.format == "json")
      std::cout << json{{"schema", 1}, {"error", e.kind()}, {"witness", e.witness()}}.dump(2)
                << "\n";
    return e.kind() == "Malformed" ? kInvalid : kRefuted;
  }
}
