#include "commands.hpp"

#include "qlab/constructions.hpp"
#include "qlab/covering.hpp"
#include "qlab/errors.hpp"
#include "qlab/oracle.hpp"
#include "qlab/quantize.hpp"
#include "qlab/version.hpp"

#include <fstream>
#include <random>
#include <sstream>

namespace qlab::cli {

namespace {

Scalar scalar_at(const Json& c, const char* key) { return scalar_from_json(c.at(key)); }

std::uint64_t u64_at(const Json& c, const char* key) {
  const Json& v = c.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw ParseError(std::string("config key \"") + key + "\" must be a non-negative integer");
  return v.get<std::uint64_t>();
}

std::string string_at(const Json& c, const char* key) {
  if (!c.at(key).is_string()) throw ParseError(std::string("config key \"") + key + "\" must be a string");
  return c.at(key).get<std::string>();
}

bool bool_at(const Json& c, const char* key) {
  if (!c.at(key).is_boolean()) throw ParseError(std::string("config key \"") + key + "\" must be true or false");
  return c.at(key).get<bool>();
}

SearchOptions search_options(const Json& c) { return SearchOptions{u64_at(c, "budget"), true}; }

NetFamily nets_of(const Json& c) {
  if (!c.at("delta").is_null()) return NetFamily(Net::lattice(scalar_at(c, "delta")));
  return net_family_from_json(c.at("nets"));
}

QuantizationMode mode_of(const Json& c) {
  std::string m = string_at(c, "mode");
  if (m == "cqp") return QuantizationMode::support_restricted;
  if (m == "nqp") return QuantizationMode::unrestricted;
  throw ParseError("mode must be \"cqp\" or \"nqp\"");
}

// Seeded random vectors with entries k / den, |k| <= bound * den, about a
// quarter of the entries zero. Indices are first..first+dim-1.
std::vector<Coeffs> random_vectors(std::mt19937_64& rng, std::size_t count, std::size_t dim, Index first,
                                   const Scalar& bound, long den, unsigned zero_percent = 25) {
  const long top = static_cast<long>(floor(bound * den).get_si());
  std::vector<Coeffs> out;
  for (std::size_t s = 0; s < count; ++s) {
    Coeffs x;
    for (std::size_t i = 0; i < dim; ++i) {
      if (rng() % 100 < zero_percent) continue;
      long k = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * top + 1)) - top;
      if (k != 0) x.set(first + i, Scalar(k) / den);
    }
    out.push_back(std::move(x));
  }
  return out;
}

// x, then the listed vectors, then the random ones. An untouched default
// (empty x, no vectors, no samples) still yields the zero vector.
std::vector<Coeffs> vectors_of(const Json& c, std::size_t dim) {
  std::vector<Coeffs> out;
  Coeffs x = coeffs_from_json(c.at("x"));
  const std::uint64_t samples = u64_at(c, "samples");
  if (!x.empty() || (c.at("vectors").empty() && samples == 0)) out.push_back(x);
  for (const auto& v : c.at("vectors")) out.push_back(coeffs_from_json(v));
  std::mt19937_64 rng(u64_at(c, "seed"));
  auto extra = random_vectors(rng, samples, dim, 0, scalar_at(c, "bound"), static_cast<long>(u64_at(c, "denominator")));
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

std::vector<Index> section_of(const Json& c, std::size_t dim) {
  std::vector<Index> s;
  if (c.at("section").is_null()) {
    for (Index i = 0; i < dim; ++i) s.push_back(i);
  } else {
    s = c.at("section").get<std::vector<Index>>();
  }
  return s;
}

std::string point_text(const Point& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + to_string(p[i]);
  return s;
}

Json summary_of(std::size_t count, const Scalar& max_error, std::size_t violations) {
  return Json{{"instances", count}, {"max_error", scalar_to_json(max_error)}, {"violations", violations}};
}

} // namespace

CommandOutput cmd_norm(const Json& c) {
  BasisSpace space = space_from_json(c.at("space"));
  CommandOutput out;
  out.csv_header = {"index", "norm"};
  Json rows = Json::array();
  std::size_t k = 0;
  for (const auto& x : vectors_of(c, space.dimension())) {
    Scalar n = norm(space, x);
    rows.push_back(Json{{"x", coeffs_to_json(x)}, {"norm", scalar_to_json(n)}});
    out.csv_rows.push_back({std::to_string(k++), to_string(n)});
  }
  out.result = Json{{"space", space_to_json(space)}, {"norms", rows}};
  return out;
}

CommandOutput cmd_quantize(const Json& c) {
  BasisSpace space = space_from_json(c.at("space"));
  NetFamily nets = nets_of(c);
  const std::string method = string_at(c, "method");
  if (method != "greedy" && method != "round") throw ParseError("method must be \"greedy\" or \"round\"");

  CommandOutput out;
  out.csv_header = {"index", "error", "guarantee", "neighborly_excess"};
  Json instances = Json::array();
  Scalar worst = 0;
  std::size_t violations = 0;
  std::size_t k = 0;
  for (const auto& x : vectors_of(c, space.dimension())) {
    Json row{{"x", coeffs_to_json(x)}};
    if (method == "round") {
      QuantizationChoice ch = round_nearest(x, nets);
      Scalar e = norm(space, x - ch.digits);
      Scalar ex = neighborly_excess(x, ch.digits, nets.max_delta(x.support()));
      row["choice"] = coeffs_to_json(ch.digits);
      row["error"] = scalar_to_json(e);
      row["guarantee"] = nullptr;
      row["neighborly_excess"] = scalar_to_json(ex);
      worst = std::max(worst, e);
      out.csv_rows.push_back({std::to_string(k++), to_string(e), "", to_string(ex)});
    } else {
      auto r = quantize(space, x, nets);
      if (!r) throw InvalidArgument("no greedy quantizer for the " + space.family_name() + " family");
      Json rep = quantizer_report_to_json(*r);
      for (const auto& [key, v] : rep.items()) row[key] = v;
      if (r->error > r->guarantee) ++violations;
      worst = std::max(worst, r->error);
      out.csv_rows.push_back(
          {std::to_string(k++), to_string(r->error), to_string(r->guarantee), to_string(r->neighborly_excess)});
    }
    instances.push_back(std::move(row));
  }
  out.result = Json{{"space", space_to_json(space)}, {"nets", net_family_to_json(nets)}};
  if (instances.size() == 1)
    for (const auto& [key, v] : instances[0].items()) out.result[key] = v;
  out.result["instances"] = instances;
  out.result["summary"] = summary_of(instances.size(), worst, violations);
  out.violation = violations > 0;
  return out;
}

CommandOutput cmd_oracle(const Json& c) {
  BasisSpace space = space_from_json(c.at("space"));
  NetFamily nets = nets_of(c);
  SectionProblem problem{make_model(space), section_of(c, space.dimension()), nets, mode_of(c)};
  SearchOptions opts = search_options(c);
  opts.pruning = bool_at(c, "pruning");
  SamplingPlan plan{static_cast<std::size_t>(u64_at(c, "samples")), u64_at(c, "seed"), 1};
  const std::string task = string_at(c, "task");

  CommandOutput out;
  out.result = Json{{"space", space_to_json(space)}, {"nets", net_family_to_json(nets)}, {"task", task}};
  if (task == "best") {
    out.csv_header = {"index", "error", "greedy_error", "nodes"};
    Json rows = Json::array();
    std::size_t k = 0;
    Json probe = c;
    probe["samples"] = 0; // "samples" sizes the estimators; best uses x and vectors only
    for (const auto& x : vectors_of(probe, space.dimension())) {
      SearchResult r = best_quantization(problem, x, opts);
      Json row{{"x", coeffs_to_json(x)}, {"choice", coeffs_to_json(r.choice.digits)},
               {"error", scalar_to_json(*r.choice.error)}, {"nodes", r.nodes}};
      std::string greedy_text;
      if (auto g = quantize(space, x, nets); g && problem.mode == QuantizationMode::support_restricted) {
        row["greedy_error"] = scalar_to_json(g->error);
        greedy_text = to_string(g->error);
        if (g->error < *r.choice.error) out.violation = true;
      }
      rows.push_back(std::move(row));
      out.csv_rows.push_back({std::to_string(k++), to_string(*r.choice.error), greedy_text, std::to_string(r.nodes)});
    }
    out.result["results"] = rows;
  } else if (task == "property_p") {
    PropertyPVerdict v = check_property_p(*problem.model, nets, problem.section, opts);
    out.result["holds"] = v.holds;
    out.result["witness"] = v.holds ? coeffs_to_json(v.witness) : Json(nullptr);
    out.result["witness_norm"] = v.holds ? scalar_to_json(v.witness_norm) : Json(nullptr);
    out.result["nodes"] = v.nodes;
    out.csv_header = {"holds", "witness_norm", "nodes"};
    out.csv_rows.push_back({v.holds ? "true" : "false", v.holds ? to_string(v.witness_norm) : "", std::to_string(v.nodes)});
  } else if (task == "eps_ball" || task == "eps_space") {
    EpsEstimate e = task == "eps_ball" ? eps_ball_estimate(problem, plan, opts)
                                       : eps_space_estimate(problem, scalar_at(c, "radius"), plan, opts);
    out.result["estimate"] = eps_estimate_to_json(e);
    out.csv_header = {"lower_bound", "sample_count", "nodes"};
    out.csv_rows.push_back({to_string(e.lower_bound), std::to_string(e.sample_count), std::to_string(e.nodes)});
  } else if (task == "quasi_greedy") {
    QuasiGreedyEstimate q = quasi_greedy_constants(*problem.model, space.dimension(), nets.fallback().delta(), plan);
    out.result["k_lower"] = scalar_to_json(q.k_lower);
    out.result["l_lower"] = scalar_to_json(q.l_lower);
    out.result["k_witness"] = coeffs_to_json(q.k_witness);
    out.result["l_witness"] = coeffs_to_json(q.l_witness);
    out.result["l_subset"] = q.l_subset;
    out.result["sample_count"] = q.sample_count;
    out.csv_header = {"k_lower", "l_lower", "sample_count"};
    out.csv_rows.push_back({to_string(q.k_lower), to_string(q.l_lower), std::to_string(q.sample_count)});
  } else {
    throw ParseError("oracle task must be best, property_p, eps_ball, eps_space or quasi_greedy");
  }
  return out;
}

CommandOutput cmd_sweep_eps(const Json& c) {
  BasisSpace space = space_from_json(c.at("space"));
  std::vector<Scalar> deltas;
  if (!c.at("delta").is_null()) {
    Scalar d = scalar_at(c, "delta");
    deltas = {d, 2 * d};
  } else {
    for (const auto& d : c.at("deltas")) deltas.push_back(scalar_from_json(d));
  }
  if (deltas.empty()) throw ParseError("deltas must not be empty");
  const Scalar radius = scalar_at(c, "radius");
  SamplingPlan plan{static_cast<std::size_t>(u64_at(c, "samples")), u64_at(c, "seed"), 1};
  std::vector<Index> all;
  for (Index i = 0; i < space.dimension(); ++i) all.push_back(i);

  CommandOutput out;
  out.csv_header = {"delta", "radius", "estimate", "ratio"};
  Json rows = Json::array();
  std::optional<Scalar> base;
  bool holds = true;
  for (const auto& d : deltas) {
    // Same seed, samples scaled with delta: the estimates must scale exactly.
    Scalar r = radius * d / deltas.front();
    SectionProblem p{make_model(space), all, NetFamily(Net::lattice(d)), mode_of(c)};
    EpsEstimate e = eps_space_estimate(p, r, plan, search_options(c));
    if (!base) base = e.lower_bound;
    Scalar expected = *base * d / deltas.front();
    holds = holds && e.lower_bound == expected;
    std::string ratio = *base == 0 ? "" : to_string(e.lower_bound / *base);
    rows.push_back(Json{{"delta", scalar_to_json(d)}, {"radius", scalar_to_json(r)}, {"estimate", eps_estimate_to_json(e)},
                        {"ratio", *base == 0 ? Json(nullptr) : Json(ratio)}});
    out.csv_rows.push_back({to_string(d), to_string(r), to_string(e.lower_bound), ratio});
  }
  out.result = Json{{"space", space_to_json(space)}, {"sweep", rows}, {"scaling_holds", holds}};
  out.violation = !holds;
  return out;
}

CommandOutput cmd_haar(const Json& c) {
  std::vector<std::size_t> levels = c.at("levels").get<std::vector<std::size_t>>();
  std::vector<Scalar> deltas;
  if (!c.at("delta").is_null())
    deltas = {scalar_at(c, "delta")};
  else
    for (const auto& d : c.at("deltas")) deltas.push_back(scalar_from_json(d));

  CommandOutput out;
  out.csv_header = {"level", "delta", "distance", "guaranteed", "nodes"};
  Json rows = Json::array();
  for (std::size_t n : levels)
    for (const auto& d : deltas) {
      HaarDistance h = haar_witness_distance(n, d, search_options(c));
      // The lower bound 1 is promised once N >= 2 / delta.
      bool guaranteed = Scalar(static_cast<long>(n)) * d >= 2;
      if (guaranteed && h.distance < 1) out.violation = true;
      rows.push_back(Json{{"level", n}, {"delta", scalar_to_json(d)}, {"witness", coeffs_to_json(haar_witness(n))},
                          {"distance", scalar_to_json(h.distance)}, {"nearest", coeffs_to_json(h.nearest)},
                          {"guaranteed", guaranteed}, {"nodes", h.nodes}});
      out.csv_rows.push_back({std::to_string(n), to_string(d), to_string(h.distance), guaranteed ? "true" : "false",
                              std::to_string(h.nodes)});
    }
  out.result = Json{{"distances", rows}};
  return out;
}

CommandOutput cmd_covering(const Json& c) {
  const std::string task = string_at(c, "task");
  std::vector<SlackSample> slack;
  CoverOptions opts{scalar_at(c, "mesh"), &slack};
  CommandOutput out;
  out.result = Json{{"task", task}};

  auto slack_csv = [&](std::size_t dim) {
    for (std::size_t i = 0; i < dim; ++i) out.csv_header.push_back("x" + std::to_string(i));
    out.csv_header.push_back("distance");
    for (const auto& s : slack) {
      std::vector<std::string> row;
      for (const auto& v : s.point) row.push_back(to_string(v));
      row.push_back(s.distance ? to_string(*s.distance) : "");
      out.csv_rows.push_back(std::move(row));
    }
  };

  if (task == "p1" || task == "p2" || task == "p3") {
    Body body = body_from_json(c.at("body"));
    CoverVerdict v;
    if (task == "p1") {
      v = check_p1(body, lattice_from_json(c.at("lattice")), opts);
    } else if (task == "p3") {
      v = check_p3(body, opts);
    } else {
      std::vector<Net> nets;
      if (c.at("coordinate-nets").is_null()) {
        Scalar d = c.at("delta").is_null() ? Scalar(1) : scalar_at(c, "delta");
        nets.assign(body.dimension(), Net::lattice(d));
      } else {
        for (const auto& n : c.at("coordinate-nets")) nets.push_back(net_from_json(n));
      }
      std::optional<std::pair<Point, Point>> region;
      if (!c.at("region").is_null())
        region = std::make_pair(point_from_json(c.at("region").at(0)), point_from_json(c.at("region").at(1)));
      v = check_p2(body, nets, opts, region);
    }
    out.result["body"] = body_to_json(body);
    out.result["verdict"] = verdict_to_json(v);
    slack_csv(body.dimension());
  } else if (task == "amplification") {
    Body body = body_from_json(c.at("body"));
    std::optional<Scalar> eps1;
    if (!c.at("eps1").is_null()) eps1 = scalar_at(c, "eps1");
    AmplificationReport r = amplification_check(body, lattice_from_json(c.at("lattice")), scalar_at(c, "eps0"), eps1,
                                                scalar_at(c, "radius"), CoverOptions{scalar_at(c, "mesh")});
    out.result["eps0"] = scalar_to_json(r.eps0);
    out.result["eps1"] = scalar_to_json(r.eps1);
    out.result["radius"] = scalar_to_json(r.radius);
    out.result["phase1"] = verdict_to_json(r.phase1);
    out.result["phase2"] = verdict_to_json(r.phase2);
    out.result["implication_holds"] = !r.phase1.covered || r.phase2.covered;
    out.violation = r.phase1.covered && !r.phase2.covered;
    out.csv_header = {"phase", "covered", "points_checked", "worst_slack"};
    out.csv_rows.push_back({"1", r.phase1.covered ? "true" : "false", std::to_string(r.phase1.points_checked),
                            to_string(r.phase1.worst_slack)});
    out.csv_rows.push_back({"2", r.phase2.covered ? "true" : "false", std::to_string(r.phase2.points_checked),
                            to_string(r.phase2.worst_slack)});
  } else if (task == "parallelogram") {
    ParallelogramReport r = parallelogram_example(scalar_at(c, "eta"), CoverOptions{scalar_at(c, "mesh")});
    out.result["eta"] = scalar_to_json(r.eta);
    out.result["body"] = body_to_json(r.body);
    out.result["q"] = point_to_json(r.q);
    out.result["q_in_k"] = r.q_in_k;
    out.result["q_in_shifted_k"] = r.q_in_shifted_k;
    out.result["tiling"] = verdict_to_json(r.tiling);
    out.result["interiors_disjoint"] = r.interiors_disjoint;
    out.result["disjointness_samples"] = r.disjointness_samples;
    out.result["shrunk_lattice"] = verdict_to_json(r.shrunk_lattice);
    out.violation = !(r.q_in_k && r.q_in_shifted_k && r.tiling.covered && r.interiors_disjoint);
    out.csv_header = {"check", "value"};
    out.csv_rows = {{"q", point_text(r.q)},
                    {"q_in_k", r.q_in_k ? "true" : "false"},
                    {"q_in_shifted_k", r.q_in_shifted_k ? "true" : "false"},
                    {"tiling_covered", r.tiling.covered ? "true" : "false"},
                    {"interiors_disjoint", r.interiors_disjoint ? "true" : "false"},
                    {"shrunk_covered", r.shrunk_lattice.covered ? "true" : "false"},
                    {"shrunk_witness", r.shrunk_lattice.witness ? point_text(*r.shrunk_lattice.witness) : ""}};
  } else {
    throw ParseError("covering task must be p1, p2, p3, amplification or parallelogram");
  }
  return out;
}

CommandOutput cmd_construct(const Json& c) {
  const std::string kind = string_at(c, "kind");
  const std::size_t samples = static_cast<std::size_t>(u64_at(c, "samples"));
  std::mt19937_64 rng(u64_at(c, "seed"));
  CommandOutput out;
  out.csv_header = {"check", "value", "ok"};
  auto check = [&](const std::string& name, const std::string& value, bool ok) {
    out.csv_rows.push_back({name, value, ok ? "true" : "false"});
    if (!ok) out.violation = true;
  };
  Json persisted;

  if (kind == "y") {
    YSpaceBuild y = build_y_space(space_from_json(c.at("inner")), static_cast<std::size_t>(u64_at(c, "blocks")));
    Scalar delta = c.at("delta").is_null() ? Scalar(1) : scalar_at(c, "delta");
    bool normalized = true;
    for (Index i = 0; i < y.dimension; ++i) normalized = normalized && basis_vector_norm(y.space, i) == 1;
    Json lemma = Json::array();
    for (std::size_t n = 1; n <= y.blocks; ++n) {
      Scalar k = lemma_basis_constant(n * n);
      lemma.push_back(Json{{"block", n}, {"size", n * n}, {"basis_constant", scalar_to_json(k)}});
      check("lemma_constant_block_" + std::to_string(n), to_string(k), k <= 3);
    }
    NetFamily nets(Net::lattice(delta));
    const auto& ys = *y.space.as<DirectSumYSpace>();
    const Scalar bound = quantize_y(Coeffs(), nets, ys).guarantee;
    std::size_t violations = 0;
    Scalar worst = 0;
    for (const auto& x : random_vectors(rng, samples, y.dimension, 0, Scalar(2), 8)) {
      QuantizerReport r = quantize_y(x, nets, ys);
      if (r.error > r.guarantee) ++violations;
      worst = std::max(worst, r.error);
    }
    check("normalized", normalized ? "true" : "false", normalized);
    check("quantizer_violations", std::to_string(violations), violations == 0);
    out.result = Json{{"kind", "y"},
                      {"dimension", y.dimension},
                      {"space", space_to_json(y.space)},
                      {"normalized", normalized},
                      {"lemma", lemma},
                      {"quantizer", Json{{"delta", scalar_to_json(delta)}, {"guarantee", scalar_to_json(bound)},
                                         {"summary", summary_of(samples, worst, violations)}}}};
    persisted = out.result["space"];
  } else if (kind == "u") {
    USpaceBuild u = build_u_space(space_from_json(c.at("base")), scalar_at(c, "eta"),
                                  static_cast<std::size_t>(u64_at(c, "stages")));
    UInvariantReport inv = verify_u_invariants(u);
    EquivalenceReport eq = subsequence_equivalence_check(u, samples, u64_at(c, "seed"));
    Scalar eps = scalar_at(c, "epsilon");
    NetFamily nets(Net::lattice(eps / 3));
    std::size_t violations = 0;
    Scalar worst = 0;
    for (const auto& x : random_vectors(rng, samples, u.max_index(), 1, Scalar(2), 8, 85)) {
      QuantizerReport r = quantize_u(u, x, nets);
      if (r.error > r.guarantee) ++violations;
      worst = std::max(worst, r.error);
    }
    check("invariants", std::to_string(inv.violations.size()), inv.ok());
    check("equivalence_within_bounds", to_string(eq.min_ratio) + " " + to_string(eq.max_ratio), eq.within_bounds);
    check("quantizer_violations", std::to_string(violations), violations == 0);
    out.result = Json{{"kind", "u"},
                      {"markers", u.markers},
                      {"meshes", Json::array()},
                      {"functionals", u.functionals.size()},
                      {"links", u.links.size()},
                      {"invariants", Json{{"ok", inv.ok()}, {"violations", inv.violations}}},
                      {"equivalence", Json{{"min_ratio", scalar_to_json(eq.min_ratio)},
                                           {"max_ratio", scalar_to_json(eq.max_ratio)},
                                           {"samples", eq.samples},
                                           {"within_bounds", eq.within_bounds}}},
                      {"quantizer", Json{{"epsilon", scalar_to_json(eps)}, {"guarantee", scalar_to_json(2 * eps / 3)},
                                         {"summary", summary_of(samples, worst, violations)}}}};
    for (const auto& m : u.meshes) out.result["meshes"].push_back(scalar_to_json(m));
    persisted = u_build_to_json(u);
  } else {
    throw ParseError("construct kind must be \"y\" or \"u\"");
  }

  const std::string path = string_at(c, "build-out");
  if (!path.empty()) {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot write build file " + path);
    f << persisted.dump(2) << "\n";
    out.result["build_file"] = path;
  }
  return out;
}

Json make_report(const std::string& command, const Json& config, const CommandOutput& out, double seconds) {
  return Json{{"command", command},
              {"version", version},
              {"config", config},
              {"result", out.result},
              {"violation", out.violation},
              {"timing", Json{{"seconds", seconds}}}};
}

std::string to_csv(const CommandOutput& out) {
  auto cell = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cell(cells[i]);
    os << "\n";
  };
  line(out.csv_header);
  for (const auto& r : out.csv_rows) line(r);
  return os.str();
}

} // namespace qlab::cli
