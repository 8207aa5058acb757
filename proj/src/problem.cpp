#include "resolvent/problem.hpp"

#include "resolvent/error.hpp"

namespace resolvent {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::Parse, where + ": " + what);
}

const Json& field(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) bad(where, "missing field '" + key + "'");
  return obj.at(key);
}

std::string text_of(const Json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  bad(where, "expected a polynomial string");
}

long integer_of(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<long>();
}

std::vector<std::string> strings_of(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(text_of(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Poly poly_of(const Json& j, const RingPtr& ring, const std::string& where) {
  const std::string s = text_of(j, where);
  try {
    return parse_poly(s, ring);
  } catch (const Error& e) {
    throw Error(e.code(), where + ": " + e.what());
  }
}

PolyMatrix entries_of(const Json& obj, const RingPtr& ring, const std::string& where) {
  const Json& rows = field(obj, "entries", where);
  if (!rows.is_array()) bad(where + ".entries", "expected an array of rows");
  std::size_t nrows = rows.size();
  std::size_t ncols = nrows ? rows[0].size() : 0;
  if (obj.contains("rows")) nrows = static_cast<std::size_t>(integer_of(obj["rows"], where + ".rows"));
  if (obj.contains("cols")) ncols = static_cast<std::size_t>(integer_of(obj["cols"], where + ".cols"));
  if (rows.size() != nrows) bad(where + ".entries", "expected " + std::to_string(nrows) + " rows");
  PolyMatrix m(ring, nrows, ncols);
  for (std::size_t r = 0; r < nrows; ++r) {
    const std::string rw = where + ".entries[" + std::to_string(r) + "]";
    if (!rows[r].is_array() || rows[r].size() != ncols) bad(rw, "expected " + std::to_string(ncols) + " entries");
    for (std::size_t c = 0; c < ncols; ++c) m(r, c) = poly_of(rows[r][c], ring, rw + "[" + std::to_string(c) + "]");
  }
  return m;
}

std::vector<long> twists_of(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of integers");
  std::vector<long> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(integer_of(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Geometry geometry_of(const Json& g) {
  const std::string kind = text_of(field(g, "kind", "geometry"), "geometry.kind");
  if (kind == "P1") return Geometry::p1();
  if (kind == "P2") return Geometry::p2();
  if (kind != "BlownP2") bad("geometry.kind", "expected P1, P2 or BlownP2");
  const Json& pts = field(g, "points", "geometry");
  if (!pts.is_array()) bad("geometry.points", "expected an array of points");
  std::vector<ProjectivePoint> points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string where = "geometry.points[" + std::to_string(i) + "]";
    auto coords = strings_of(pts[i], where);
    if (coords.size() != 3) bad(where, "expected three homogeneous coordinates");
    ProjectivePoint p;
    for (std::size_t k = 0; k < 3; ++k) {
      try {
        p[k] = parse_rational(coords[k]);
      } catch (const Error& e) {
        bad(where, e.what());
      }
    }
    points.push_back(p);
  }
  try {
    return Geometry::blown_p2(std::move(points));
  } catch (const Error& e) {
    bad("geometry.points", e.what());
  }
}

}  // namespace

MonomialOrder parse_order(const std::string& name) {
  if (name == "grevlex") return MonomialOrder::grevlex();
  if (name == "lex") return MonomialOrder::lex();
  throw Error(ErrorCode::Parse, "unknown monomial order '" + name + "' (expected grevlex or lex)");
}

Problem load_problem(const Json& source, const ParamOverrides& overrides) {
  if (!source.is_object()) bad("problem", "expected a JSON object");
  Problem p;
  p.source = source;

  const Json params = source.contains("params") ? source.at("params") : Json::object();
  if (!params.is_object()) bad("params", "expected an object");
  const Json& ring_stanza = field(source, "ring", "problem");
  if (params.contains("order")) p.options.order = text_of(params["order"], "params.order");
  if (ring_stanza.contains("order")) p.options.order = text_of(ring_stanza["order"], "ring.order");
  if (params.contains("max_depth"))
    p.options.max_depth = static_cast<std::size_t>(integer_of(params["max_depth"], "params.max_depth"));
  if (params.contains("degree_cap")) p.options.degree_cap = integer_of(params["degree_cap"], "params.degree_cap");
  if (params.contains("seed")) p.options.seed = static_cast<std::uint64_t>(integer_of(params["seed"], "params.seed"));
  if (overrides.order) p.options.order = *overrides.order;
  if (overrides.max_depth) p.options.max_depth = *overrides.max_depth;
  if (overrides.degree_cap) p.options.degree_cap = *overrides.degree_cap;
  if (overrides.seed) p.options.seed = *overrides.seed;
  if (params.contains("target")) p.target = text_of(params["target"], "params.target");
  if (params.contains("compare")) p.compare = text_of(params["compare"], "params.compare");
  if (params.contains("seeds"))
    for (auto s : twists_of(params["seeds"], "params.seeds")) p.seeds.push_back(static_cast<std::uint64_t>(s));

  auto vars = strings_of(field(ring_stanza, "vars", "ring"), "ring.vars");
  if (vars.empty()) bad("ring.vars", "expected at least one variable");
  auto ring = PolyRing::make(vars, parse_order(p.options.order));
  std::vector<Poly> relations;
  if (ring_stanza.contains("relations")) {
    const Json& rels = ring_stanza["relations"];
    if (!rels.is_array()) bad("ring.relations", "expected an array");
    for (std::size_t i = 0; i < rels.size(); ++i)
      relations.push_back(poly_of(rels[i], ring, "ring.relations[" + std::to_string(i) + "]"));
  }
  p.chart = std::make_shared<const Chart>(ring, relations);

  const Json objects = source.contains("objects") ? source.at("objects") : Json::object();
  if (!objects.is_object()) bad("objects", "expected an object");
  for (const auto& [name, obj] : objects.items()) {
    const std::string where = "objects." + name;
    const std::string kind = text_of(field(obj, "kind", where), where + ".kind");
    if (kind == "matrix") {
      p.matrices.emplace(name, MatrixHom(p.chart, entries_of(obj, ring, where)));
    } else if (kind == "graded") {
      auto src = twists_of(field(obj, "source_twists", where), where + ".source_twists");
      auto tgt = twists_of(field(obj, "target_twists", where), where + ".target_twists");
      try {
        p.graded.emplace(name, GradedMatrix(ring, src, tgt, entries_of(obj, ring, where)));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::Parse) throw;
        bad(where, e.what());
      }
    } else if (kind != "complex") {
      bad(where + ".kind", "expected matrix, complex or graded");
    }
  }
  for (const auto& [name, obj] : objects.items()) {
    if (obj.at("kind") != "complex") continue;
    const std::string where = "objects." + name + ".maps";
    auto maps = strings_of(field(obj, "maps", "objects." + name), where);
    std::vector<MatrixHom> terms;
    for (const auto& m : maps) {
      auto it = p.matrices.find(m);
      if (it == p.matrices.end()) bad(where, "no matrix named '" + m + "'");
      terms.push_back(it->second);
    }
    if (terms.empty()) bad(where, "a complex needs at least one map");
    try {
      p.complexes.emplace(name, ComplexOnChart(terms));
    } catch (const Error& e) {
      bad(where, e.what());
    }
  }

  if (source.contains("geometry") && !source.at("geometry").is_null()) p.geometry = geometry_of(source.at("geometry"));
  if (p.target && !p.matrices.count(*p.target) && !p.complexes.count(*p.target) && !p.graded.count(*p.target))
    bad("params.target", "no object named '" + *p.target + "'");
  if (p.compare && !p.matrices.count(*p.compare)) bad("params.compare", "no matrix named '" + *p.compare + "'");
  return p;
}

Problem load_problem_text(const std::string& text, const ParamOverrides& overrides) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(e.byte, "malformed JSON");
  }
  return load_problem(j, overrides);
}

}  // namespace resolvent
