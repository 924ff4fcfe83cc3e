#include "qlab/serialize.hpp"

#include "qlab/errors.hpp"

namespace qlab {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw ParseError(std::string("field \"") + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

// Typed read that reports JSON type mismatches as ParseError.
template <class T> T typed(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("field \"") + what + "\" has the wrong type");
  }
}

Index index_from_key(const std::string& key) {
  if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("coefficient key \"" + key + "\" is not a non-negative integer");
  return std::stoull(key);
}

std::vector<Scalar> scalars_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of scalars");
  std::vector<Scalar> out;
  for (const auto& v : j) out.push_back(scalar_from_json(v));
  return out;
}

Json scalars_to_json(const std::vector<Scalar>& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(scalar_to_json(s));
  return out;
}

Json functional_to_json(const Functional& f) {
  Json out = Json::object();
  for (const auto& [i, v] : f) out[std::to_string(i)] = scalar_to_json(v);
  return out;
}

Functional functional_from_json(const Json& j) {
  Functional f;
  for (const auto& [i, v] : coeffs_from_json(j)) f.emplace_back(i, v);
  return f;
}

} // namespace

Json scalar_to_json(const Scalar& value) { return to_string(value); }

Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(Integer(j.dump()));
  throw ParseError("scalars must be strings \"p/q\" or integers, got " + j.dump());
}

Json coeffs_to_json(const Coeffs& x) {
  Json out = Json::object();
  for (const auto& [i, a] : x) out[std::to_string(i)] = scalar_to_json(a);
  return out;
}

Coeffs coeffs_from_json(const Json& j) {
  if (j.is_array()) return Coeffs::dense(scalars_from_json(j));
  if (!j.is_object()) throw ParseError("coefficients must be an object {\"i\": \"p/q\"} or an array");
  Coeffs x;
  for (const auto& [k, v] : j.items()) x.set(index_from_key(k), scalar_from_json(v));
  return x;
}

Json net_to_json(const Net& net) {
  Json out;
  if (net.kind() == Net::Kind::lattice) {
    out["kind"] = "lattice";
    out["delta"] = scalar_to_json(net.delta());
  } else {
    out["kind"] = "explicit";
    out["points"] = scalars_to_json(net.points());
    out["delta"] = scalar_to_json(net.delta());
    out["reach"] = scalar_to_json(*net.reach());
  }
  return out;
}

Net net_from_json(const Json& j) {
  std::string kind = typed<std::string>(field(j, "kind"), "kind");
  if (kind == "lattice") return Net::lattice(scalar_from_json(field(j, "delta")));
  if (kind == "explicit")
    return Net::explicit_points(scalars_from_json(field(j, "points")), scalar_from_json(field(j, "delta")),
                                scalar_from_json(field(j, "reach")));
  throw ParseError("unknown net kind \"" + kind + "\"");
}

Json net_family_to_json(const NetFamily& nets) {
  Json out;
  out["default"] = net_to_json(nets.fallback());
  Json over = Json::object();
  for (const auto& [i, n] : nets.overrides()) over[std::to_string(i)] = net_to_json(n);
  out["overrides"] = over;
  return out;
}

NetFamily net_family_from_json(const Json& j) {
  if (j.is_object() && j.contains("kind")) return NetFamily(net_from_json(j));
  NetFamily nets(net_from_json(field(j, "default")));
  if (j.contains("overrides"))
    for (const auto& [k, v] : j.at("overrides").items()) nets.set(index_from_key(k), net_from_json(v));
  return nets;
}

Json point_to_json(const Point& p) { return scalars_to_json(p); }
Point point_from_json(const Json& j) { return scalars_from_json(j); }

Json body_to_json(const Body& body) {
  auto verts = [](const ConvexPolytope& p) {
    Json v = Json::array();
    for (const auto& x : p.vertices()) v.push_back(point_to_json(x));
    return v;
  };
  Json out;
  if (body.convex()) {
    out["vertices"] = verts(body.pieces().front());
  } else {
    Json pieces = Json::array();
    for (const auto& p : body.pieces()) pieces.push_back(Json{{"vertices", verts(p)}});
    out["pieces"] = pieces;
  }
  return out;
}

Body body_from_json(const Json& j) {
  auto hull = [](const Json& vs) {
    if (!vs.is_array()) throw ParseError("vertices must be an array of points");
    std::vector<Point> pts;
    for (const auto& v : vs) pts.push_back(point_from_json(v));
    return ConvexPolytope::hull(pts);
  };
  if (j.contains("vertices")) return Body(hull(j.at("vertices")));
  if (j.contains("pieces")) {
    std::vector<ConvexPolytope> pieces;
    for (const auto& p : j.at("pieces")) pieces.push_back(hull(field(p, "vertices")));
    return Body(std::move(pieces));
  }
  if (j.contains("box")) {
    const Json& b = j.at("box");
    return Body::box(point_from_json(field(b, "lower")), point_from_json(field(b, "upper")));
  }
  if (j.contains("cube")) return Body::cube(size_field(j, "dimension"), scalar_from_json(j.at("cube")));
  if (j.contains("preset")) {
    if (j.at("preset") == "parallelogram") return parallelogram_body();
    throw ParseError("unknown body preset " + j.at("preset").dump());
  }
  throw ParseError("a body needs \"vertices\", \"pieces\", \"box\", \"cube\" or \"preset\"");
}

Json lattice_to_json(const LatticeSpec& lattice) {
  Json basis = Json::array();
  for (const auto& b : lattice.basis()) basis.push_back(point_to_json(b));
  return Json{{"basis", basis}};
}

LatticeSpec lattice_from_json(const Json& j) {
  if (j.contains("integer")) return LatticeSpec::integer(size_field(j, "integer"));
  if (j.contains("diagonal")) return LatticeSpec::diagonal(point_from_json(j.at("diagonal")));
  std::vector<Point> basis;
  for (const auto& b : field(j, "basis")) basis.push_back(point_from_json(b));
  return LatticeSpec(std::move(basis));
}

Json space_to_json(const BasisSpace& space) {
  Json out;
  out["family"] = space.family_name();
  if (const auto* s = space.as<C0Space>()) out["n"] = s->n;
  if (const auto* s = space.as<SummingSpace>()) out["n"] = s->n;
  if (const auto* s = space.as<MultiSignSpace>()) out["signs"] = s->signs;
  if (const auto* s = space.as<SchauderSpace>()) out["max_index"] = s->max_index;
  if (const auto* s = space.as<TreeSpace>()) {
    Json parents = Json::array();
    for (const auto& p : s->parents) parents.push_back(p ? Json(*p) : Json(nullptr));
    out["parents"] = parents;
  }
  if (const auto* s = space.as<HaarSpace>()) out["level"] = s->level;
  if (const auto* s = space.as<DirectSumYSpace>()) {
    out["inner"] = space_to_json(*s->inner);
    out["blocks"] = s->blocks;
  }
  if (const auto* s = space.as<PolyGaugeSpace>()) out["body"] = body_to_json(s->body);
  if (const auto* s = space.as<ScaledSpace>()) {
    out["inner"] = space_to_json(*s->inner);
    out["scales"] = scalars_to_json(s->scales);
  }
  return out;
}

BasisSpace space_from_json(const Json& j) {
  const std::string family = typed<std::string>(field(j, "family"), "family");
  if (family == "c0") return BasisSpace::c0(size_field(j, "n"));
  if (family == "summing") return BasisSpace::summing(size_field(j, "n"));
  if (family == "multisign") return BasisSpace::multisign(typed<std::vector<std::vector<int>>>(field(j, "signs"), "signs"));
  if (family == "schauder") return BasisSpace::schauder(size_field(j, "max_index"));
  if (family == "tree") {
    std::vector<std::optional<std::size_t>> parents;
    for (const auto& p : field(j, "parents")) {
      if (p.is_null())
        parents.emplace_back();
      else if (p.is_number_unsigned())
        parents.emplace_back(p.get<std::size_t>());
      else
        throw ParseError("tree parents must be null or non-negative integers");
    }
    return BasisSpace::tree(std::move(parents));
  }
  if (family == "haar") return BasisSpace::haar(size_field(j, "level"));
  if (family == "y") return BasisSpace::direct_sum_y(space_from_json(field(j, "inner")), size_field(j, "blocks"));
  if (family == "gauge") return BasisSpace::poly_gauge(body_from_json(field(j, "body")));
  if (family == "scaled")
    return BasisSpace(ScaledSpace{std::make_shared<const BasisSpace>(space_from_json(field(j, "inner"))),
                                  scalars_from_json(field(j, "scales"))});
  throw ParseError("unknown space family \"" + family + "\"");
}

Json choice_to_json(const QuantizationChoice& choice) {
  Json out;
  out["digits"] = coeffs_to_json(choice.digits);
  out["error"] = choice.error ? scalar_to_json(*choice.error) : Json(nullptr);
  return out;
}

Json quantizer_report_to_json(const QuantizerReport& report) {
  Json out;
  out["choice"] = coeffs_to_json(report.choice.digits);
  out["error"] = scalar_to_json(report.error);
  out["guarantee"] = scalar_to_json(report.guarantee);
  out["neighborly_excess"] = scalar_to_json(report.neighborly_excess);
  return out;
}

Json verdict_to_json(const CoverVerdict& verdict) {
  Json out;
  out["covered"] = verdict.covered;
  out["witness"] = verdict.witness ? point_to_json(*verdict.witness) : Json(nullptr);
  Json cert = Json::array();
  for (const auto& [z, d] : verdict.certificate)
    cert.push_back(Json{{"translate", point_to_json(z)}, {"distance", scalar_to_json(d)}});
  out["certificate"] = cert;
  out["resolution"] = scalar_to_json(verdict.resolution);
  out["translate_bound"] = scalar_to_json(verdict.translate_bound);
  out["points_checked"] = verdict.points_checked;
  out["worst_slack"] = scalar_to_json(verdict.worst_slack);
  return out;
}

Json eps_estimate_to_json(const EpsEstimate& e) {
  Json out;
  out["lower_bound"] = scalar_to_json(e.lower_bound);
  out["witness"] = coeffs_to_json(e.witness);
  out["sample_count"] = e.sample_count;
  out["sampling"] = e.sampling;
  out["seed"] = e.seed;
  out["scale"] = scalar_to_json(e.scale);
  out["certified"] = e.certified;
  out["nodes"] = e.nodes;
  return out;
}

Json u_build_to_json(const USpaceBuild& b) {
  Json out;
  out["base"] = space_to_json(b.base);
  out["eta"] = scalar_to_json(b.eta);
  out["meshes"] = scalars_to_json(b.meshes);
  out["stages"] = b.stages;
  Json sets = Json::array();
  for (const auto& s : b.dual_sets) {
    Json set = Json::array();
    for (const auto& g : s) set.push_back(scalars_to_json(g));
    sets.push_back(set);
  }
  out["dual_sets"] = sets;
  out["markers"] = b.markers;
  Json fs = Json::array();
  for (std::size_t k = 0; k < b.functionals.size(); ++k)
    fs.push_back(Json{{"stage", b.stage_of[k]}, {"values", functional_to_json(b.functionals[k])}});
  out["functionals"] = fs;
  Json links = Json::array();
  for (const auto& l : b.links)
    links.push_back(Json{{"link", l.link}, {"stage", l.stage}, {"parent", l.parent}, {"g", scalars_to_json(l.g)}});
  out["links"] = links;
  return out;
}

USpaceBuild u_build_from_json(const Json& j) {
  USpaceBuild b{space_from_json(field(j, "base")), scalar_from_json(field(j, "eta")), {}, 0, {}, {}, {}, {}, {}};
  b.meshes = scalars_from_json(field(j, "meshes"));
  b.stages = size_field(j, "stages");
  for (const auto& s : field(j, "dual_sets")) {
    std::vector<std::vector<Scalar>> set;
    for (const auto& g : s) set.push_back(scalars_from_json(g));
    b.dual_sets.push_back(std::move(set));
  }
  b.markers = typed<std::vector<Index>>(field(j, "markers"), "markers");
  for (const auto& f : field(j, "functionals")) {
    b.stage_of.push_back(size_field(f, "stage"));
    b.functionals.push_back(functional_from_json(field(f, "values")));
  }
  for (const auto& l : field(j, "links"))
    b.links.push_back(LinkRecord{size_field(l, "link"), size_field(l, "stage"), size_field(l, "parent"),
                                 scalars_from_json(field(l, "g"))});
  if (b.markers.empty() || b.markers.size() != b.stages || b.dual_sets.size() != b.stages)
    throw ParseError("U build has inconsistent stage data");
  for (const auto& l : b.links)
    if (l.parent >= b.functionals.size()) throw ParseError("U build link refers to a missing functional");
  return b;
}

} // namespace qlab
