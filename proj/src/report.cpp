#include "resolvent/report.hpp"

#include <iomanip>
#include <sstream>

#include "resolvent/error.hpp"

namespace resolvent {

std::optional<Command> parse_command(const std::string& name) {
  if (name == "diagonalize") return Command::Diagonalize;
  if (name == "resolve") return Command::Resolve;
  if (name == "euler") return Command::Euler;
  if (name == "fitting") return Command::Fitting;
  if (name == "check") return Command::Check;
  return std::nullopt;
}

std::string to_string(Command c) {
  switch (c) {
    case Command::Diagonalize: return "diagonalize";
    case Command::Resolve: return "resolve";
    case Command::Euler: return "euler";
    case Command::Fitting: return "fitting";
    case Command::Check: return "check";
  }
  return "unknown";
}

namespace {

Json polys(const std::vector<Poly>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(p.to_string());
  return a;
}

Json matrix_json(const PolyMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

Json chart_json(const Chart& c) {
  Json j;
  j["name"] = c.name();
  j["vars"] = c.ring()->names();
  j["relations"] = polys(c.relations().generators());
  Json ex = Json::array();
  for (const auto& e : c.exceptionals()) ex.push_back(Json{{"label", e.label}, {"equation", e.equation.to_string()}});
  j["exceptionals"] = ex;
  return j;
}

Json cert_json(const DiagCert& c) {
  Json j;
  j["diag"] = polys(c.diag);
  j["U"] = matrix_json(c.U);
  j["V"] = matrix_json(c.V);
  j["V_inverse"] = matrix_json(c.V_inverse);
  j["U_det"] = c.U_det.to_string();
  j["V_det"] = c.V_det.to_string();
  return j;
}

Json tower_json(const BlowupTower& t) {
  Json j;
  j["blowups"] = t.steps.size();
  j["charts"] = t.nodes.size();
  j["leaves"] = t.leaves().size();
  j["depth"] = t.depth();
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    Json st;
    st["chart"] = t.nodes[s.node].chart->name();
    st["level"] = s.level;
    st["stage"] = s.stage;
    st["label"] = s.blowup.label;
    st["center"] = polys(s.blowup.generators);
    Json kids = Json::array();
    for (auto c : t.nodes[s.node].children) kids.push_back(t.nodes[c].chart->name());
    st["children"] = kids;
    steps.push_back(std::move(st));
  }
  j["steps"] = steps;
  return j;
}

Json options_json(const RunOptions& o) {
  Json j;
  j["order"] = o.order;
  j["max_depth"] = o.max_depth;
  j["degree_cap"] = o.degree_cap;
  j["seed"] = o.seed;
  return j;
}

template <class Map>
std::string pick(const Problem& p, const Map& pool, const std::string& what) {
  if (p.target) {
    if (!pool.count(*p.target)) throw Error(ErrorCode::Parse, "params.target: '" + *p.target + "' is not a " + what);
    return *p.target;
  }
  if (pool.size() != 1)
    throw Error(ErrorCode::Parse, "params.target: name the " + what + " to use (" + std::to_string(pool.size()) +
                                      " candidates)");
  return pool.begin()->first;
}

TowerOptions tower_options(const RunOptions& o) {
  TowerOptions t;
  t.max_depth = o.max_depth;
  t.reduce.seed = o.seed;
  if (o.seed) t.shuffle_seed = o.seed;
  return t;
}

Json diagonalize(const Problem& p, std::string& target) {
  target = pick(p, p.matrices, "matrix");
  const MatrixHom& phi = p.matrices.at(target);
  auto t = determinantal_tower(phi, tower_options(p.options));
  Json r;
  r["image_rank"] = image_rank(phi);
  r["tower"] = tower_json(t.tower);
  Json leaves = Json::array();
  for (const auto& lc : t.certs) {
    const auto& node = t.tower.nodes[lc.node];
    Json l;
    l["chart"] = chart_json(*node.chart);
    l["map"] = polys(node.from_root.images());
    l["certificate"] = cert_json(lc.cert);
    leaves.push_back(std::move(l));
  }
  r["leaves"] = leaves;
  return r;
}

ComplexOnChart complex_target(const Problem& p, std::string& target) {
  if (p.target && p.matrices.count(*p.target)) {
    target = *p.target;
    return ComplexOnChart({p.matrices.at(target)});
  }
  if (!p.target && p.complexes.empty() && p.matrices.size() == 1) {
    target = p.matrices.begin()->first;
    return ComplexOnChart({p.matrices.begin()->second});
  }
  target = pick(p, p.complexes, "complex");
  return p.complexes.at(target);
}

ResolveOptions resolve_options(const RunOptions& o) {
  ResolveOptions r;
  r.max_depth = o.max_depth;
  r.reduce.seed = o.seed;
  if (o.seed) r.shuffle_seed = o.seed;
  return r;
}

Json resolve(const Problem& p, std::string& target) {
  ComplexOnChart c = complex_target(p, target);
  auto res = resolve_complex(c, resolve_options(p.options));
  Json r;
  Json ranks = Json::array();
  for (std::size_t i = 0; i <= c.length(); ++i) ranks.push_back(c.rank(i));
  r["ranks"] = ranks;
  r["tower"] = tower_json(res.tower);
  r["cohomology"] = res.cohomology;
  r["torsion"] = torsion_check(res);
  Json leaves = Json::array();
  for (const auto& leaf : res.leaves) {
    const auto& node = res.tower.nodes[leaf.node];
    Json l;
    l["chart"] = chart_json(*node.chart);
    l["map"] = polys(node.from_root.images());
    Json certs = Json::array();
    for (const auto& cert : leaf.certs) certs.push_back(cert_json(cert));
    l["certificates"] = certs;
    Json kernel = Json::array();
    for (const auto& v : leaf.kernel.vectors) kernel.push_back(polys(v));
    l["kernel"] = kernel;
    leaves.push_back(std::move(l));
  }
  r["leaves"] = leaves;
  return r;
}

Geometry geometry_for(const Problem& p, const GradedMatrix& m) {
  if (p.geometry) return *p.geometry;
  return m.ring()->nvars() == 2 ? Geometry::p1() : Geometry::p2();
}

Json class_json(const DivisorClass& d) { return Json{{"h", d.h}, {"e", d.e}}; }

Json euler(const Problem& p, std::string& target) {
  target = pick(p, p.graded, "graded matrix");
  const GradedMatrix& m = p.graded.at(target);
  const Geometry g = geometry_for(p, m);
  EulerOptions eo;
  eo.degree_cap = p.options.degree_cap;
  eo.max_depth = p.options.max_depth;
  eo.seed = p.options.seed;
  auto run = compute_euler(g, m, eo);
  Json r;
  Json geo;
  geo["kind"] = to_string(g.kind);
  Json pts = Json::array();
  for (const auto& pt : g.points) pts.push_back(Json::array({pt[0].get_str(), pt[1].get_str(), pt[2].get_str()}));
  geo["points"] = pts;
  r["geometry"] = geo;
  r["number"] = run.number;
  r["kernel_rank"] = run.kernel_rank;
  if (g.kind == Geometry::Kind::P1) {
    r["twists"] = run.twists;
  } else {
    r["orders"] = run.orders;
  }
  r["chern"] = Json{{"c1", class_json(run.chern.c1)}, {"c2", run.chern.c2}};
  r["torsion"] = run.torsion_ok;
  Json res;
  res["blowups"] = run.resolution.tower.steps.size();
  res["leaves"] = run.resolution.leaves.size();
  res["cohomology"] = run.resolution.cohomology;
  r["resolution"] = res;
  if (!p.seeds.empty()) {
    auto ind = independence_harness(g, m, p.seeds, eo);
    r["independence"] = Json{{"seeds", ind.seeds}, {"numbers", ind.numbers}, {"agree", ind.agree}};
  }
  return r;
}

Json fitting(const Problem& p, std::string& target) {
  target = pick(p, p.matrices, "matrix");
  Presentation pres{p.matrices.at(target)};
  Json r;
  Json ideals = Json::array();
  for (std::size_t h = 0; h <= pres.alpha.rows(); ++h) {
    Ideal j = fitting_ideal(pres, h);
    ideals.push_back(Json{{"h", h}, {"basis", polys(j.basis())}});
  }
  r["ideals"] = ideals;
  if (p.compare) {
    Presentation other{p.matrices.at(*p.compare)};
    r["compare"] = Json{{"with", *p.compare}, {"equal", fitting_independence_check(pres, other)}};
  }
  return r;
}

}  // namespace

std::string report_digest(const Json& report) {
  Json body = report;
  body.erase("digest");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : body.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

Json run_command(Command c, const Problem& p) {
  std::string target;
  Json result;
  switch (c) {
    case Command::Diagonalize: result = diagonalize(p, target); break;
    case Command::Resolve: result = resolve(p, target); break;
    case Command::Euler: result = euler(p, target); break;
    case Command::Fitting: result = fitting(p, target); break;
    case Command::Check: throw Error(ErrorCode::InvalidArgument, "check takes a report, not a problem");
  }
  Json report;
  report["tool"] = "resolvent";
  report["command"] = to_string(c);
  report["target"] = target;
  report["options"] = options_json(p.options);
  report["problem"] = p.source;
  report["result"] = result;
  report["digest"] = report_digest(report);
  return report;
}

std::string render_json(const Json& report) { return report.dump(2) + "\n"; }

namespace {

std::string join(const Json& arr, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) out += sep;
    out += arr[i].is_string() ? arr[i].get<std::string>() : arr[i].dump();
  }
  return out;
}

void tower_text(std::ostringstream& os, const Json& t) {
  os << "blowups " << t["blowups"] << "   charts " << t["charts"] << "   leaves " << t["leaves"] << "   depth "
     << t["depth"] << "\n";
  if (t["steps"].empty()) return;
  os << std::left << std::setw(6) << "label" << std::setw(10) << "chart" << std::setw(7) << "level" << std::setw(7)
     << "stage" << "center -> children\n";
  for (const auto& s : t["steps"])
    os << std::setw(6) << s["label"].get<std::string>() << std::setw(10) << s["chart"].get<std::string>()
       << std::setw(7) << s["level"].dump() << std::setw(7) << s["stage"].dump() << "(" << join(s["center"])
       << ") -> " << join(s["children"], " ") << "\n";
}

std::string class_text(const Json& c) {
  std::string out = std::to_string(c["h"].get<long>()) + "H";
  for (std::size_t i = 0; i < c["e"].size(); ++i) {
    long e = c["e"][i].get<long>();
    if (e) out += (e < 0 ? " - " : " + ") + std::to_string(e < 0 ? -e : e) + "E" + std::to_string(i + 1);
  }
  return out;
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream os;
  if (report.contains("error")) {
    os << "error " << report["error"]["code"].get<std::string>() << ": " << report["error"]["message"].get<std::string>()
       << "\n";
    return os.str();
  }
  const std::string cmd = report["command"];
  if (cmd == "check") {
    os << "check " << report["checked"].get<std::string>() << ": " << (report["ok"].get<bool>() ? "ok" : "FAILED");
    os << "   certificates " << report["certificates"] << "\n";
    if (!report["ok"].get<bool>()) os << "reason: " << report["reason"].get<std::string>() << "\n";
    return os.str();
  }
  const auto& o = report["options"];
  os << cmd << " " << report["target"].get<std::string>() << "   order " << o["order"].get<std::string>()
     << "   max-depth " << o["max_depth"] << "   degree-cap " << o["degree_cap"] << "   seed " << o["seed"] << "\n";
  const auto& r = report["result"];
  if (cmd == "diagonalize") {
    os << "image rank " << r["image_rank"] << "\n";
    tower_text(os, r["tower"]);
    os << std::left << std::setw(10) << "leaf" << "diagonal\n";
    for (const auto& l : r["leaves"])
      os << std::setw(10) << l["chart"]["name"].get<std::string>() << join(l["certificate"]["diag"]) << "\n";
  } else if (cmd == "resolve") {
    os << "ranks " << join(r["ranks"], " ") << "\n";
    tower_text(os, r["tower"]);
    os << "cohomology " << join(r["cohomology"], " ") << "   torsion " << (r["torsion"].get<bool>() ? "yes" : "no")
       << "\n";
    os << std::left << std::setw(10) << "leaf" << std::setw(8) << "kernel" << "diagonals\n";
    for (const auto& l : r["leaves"]) {
      std::string diags;
      for (const auto& c : l["certificates"]) diags += "[" + join(c["diag"]) + "] ";
      os << std::setw(10) << l["chart"]["name"].get<std::string>() << std::setw(8) << l["kernel"].size() << diags
         << "\n";
    }
  } else if (cmd == "euler") {
    os << "geometry " << r["geometry"]["kind"].get<std::string>();
    for (const auto& p : r["geometry"]["points"]) os << " (" << join(p, ":") << ")";
    os << "\n";
    if (r.contains("twists")) os << "kernel twists " << join(r["twists"], " ") << "\n";
    if (r.contains("orders") && !r["orders"].empty()) os << "exceptional orders " << join(r["orders"], " ") << "\n";
    os << "kernel rank " << r["kernel_rank"] << "   c1 " << class_text(r["chern"]["c1"]) << "   c2 "
       << r["chern"]["c2"] << "\n";
    os << "torsion " << (r["torsion"].get<bool>() ? "yes" : "no") << "   affine blowups "
       << r["resolution"]["blowups"] << "\n";
    os << "euler number " << r["number"] << "\n";
    if (r.contains("independence"))
      os << "independence " << (r["independence"]["agree"].get<bool>() ? "agree" : "DISAGREE") << " over seeds "
         << join(r["independence"]["seeds"], " ") << ": " << join(r["independence"]["numbers"], " ") << "\n";
  } else if (cmd == "fitting") {
    for (const auto& j : r["ideals"]) os << "J_" << j["h"] << " = (" << join(j["basis"]) << ")\n";
    if (r.contains("compare"))
      os << "same Fitting ideals as " << r["compare"]["with"].get<std::string>() << ": "
         << (r["compare"]["equal"].get<bool>() ? "yes" : "no") << "\n";
  }
  return os.str();
}

namespace {

std::string str_at(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_string())
    throw Error(ErrorCode::Verification, where + "." + key + " is missing");
  return j[key].get<std::string>();
}

const Json& at(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::Verification, where + "." + key + " is missing");
  return j.at(key);
}

PolyMatrix read_matrix(const Json& j, const RingPtr& ring, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array() || j.size() != rows) throw Error(ErrorCode::Verification, where + " has the wrong shape");
  PolyMatrix m(ring, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw Error(ErrorCode::Verification, where + " has the wrong shape");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_poly(j[r][c].get<std::string>(), ring);
  }
  return m;
}

DiagCert read_cert(const Json& j, const ChartPtr& chart, std::size_t q, std::size_t p, const std::string& where) {
  DiagCert c;
  c.chart = chart;
  const auto& ring = chart->ring();
  c.U = read_matrix(at(j, "U", where), ring, q, q, where + ".U");
  c.V = read_matrix(at(j, "V", where), ring, p, p, where + ".V");
  c.V_inverse = read_matrix(at(j, "V_inverse", where), ring, p, p, where + ".V_inverse");
  for (const auto& d : at(j, "diag", where)) c.diag.push_back(parse_poly(d.get<std::string>(), ring));
  c.U_det = parse_poly(str_at(j, "U_det", where), ring);
  c.V_det = parse_poly(str_at(j, "V_det", where), ring);
  return c;
}

/// Rebuilds a leaf chart and its map from the root, validating the map.
RingMap read_leaf(const Json& leaf, const ChartPtr& root, const std::string& order, const std::string& where) {
  const Json& chart = at(leaf, "chart", where);
  std::vector<std::string> vars = at(chart, "vars", where + ".chart").get<std::vector<std::string>>();
  auto ring = PolyRing::make(vars, parse_order(order));
  std::vector<Poly> rels;
  for (const auto& r : at(chart, "relations", where + ".chart")) rels.push_back(parse_poly(r.get<std::string>(), ring));
  auto c = std::make_shared<const Chart>(ring, rels, std::vector<Exceptional>{}, str_at(chart, "name", where + ".chart"));
  std::vector<Poly> images;
  for (const auto& i : at(leaf, "map", where)) images.push_back(parse_poly(i.get<std::string>(), ring));
  return RingMap(root, c, images);
}

void verify_certificates(const Json& report, const Problem& p, CheckOutcome& out) {
  const std::string cmd = report["command"];
  const std::string target = str_at(report, "target", "report");
  const Json& leaves = at(at(report, "result", "report"), "leaves", "result");
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const std::string where = "result.leaves[" + std::to_string(i) + "]";
    RingMap m = read_leaf(leaves[i], p.chart, p.options.order, where);
    std::vector<MatrixHom> maps;
    std::vector<Json> certs;
    if (cmd == "diagonalize") {
      maps.push_back(p.matrices.at(target));
      certs.push_back(at(leaves[i], "certificate", where));
    } else {
      maps = p.complexes.count(target) ? p.complexes.at(target).terms()
                                       : std::vector<MatrixHom>{p.matrices.at(target)};
      const Json& cs = at(leaves[i], "certificates", where);
      if (cs.size() != maps.size()) throw Error(ErrorCode::Verification, where + " has the wrong number of certificates");
      for (const auto& c : cs) certs.push_back(c);
    }
    for (std::size_t k = 0; k < maps.size(); ++k) {
      MatrixHom pulled = pullback_hom(m, maps[k]);
      const std::string cw = where + ".certificate" + (maps.size() > 1 ? "s[" + std::to_string(k) + "]" : "");
      DiagCert cert = read_cert(certs[k], m.target(), pulled.rows(), pulled.cols(), cw);
      auto check = verify_cert(pulled, cert);
      if (!check.ok())
        throw Error(ErrorCode::Verification, cw + ": " + to_string(check.reason) + " (" + check.detail + ")");
      ++out.certificates;
    }
  }
}

}  // namespace

CheckOutcome check_report(const std::string& report_text) {
  CheckOutcome out;
  Json report;
  try {
    report = Json::parse(report_text);
  } catch (const Json::parse_error& e) {
    throw ParseError(e.byte, "report is not valid JSON");
  }
  try {
    out.checked = str_at(report, "command", "report");
    auto cmd = parse_command(out.checked);
    if (!cmd || *cmd == Command::Check) throw Error(ErrorCode::Verification, "report.command is not checkable");
    const Json& o = at(report, "options", "report");
    ParamOverrides ov;
    ov.order = o.at("order").get<std::string>();
    ov.max_depth = o.at("max_depth").get<std::size_t>();
    ov.degree_cap = o.at("degree_cap").get<long>();
    ov.seed = o.at("seed").get<std::uint64_t>();
    Problem p = load_problem(at(report, "problem", "report"), ov);
    if (*cmd == Command::Diagonalize || *cmd == Command::Resolve) verify_certificates(report, p, out);
    if (str_at(report, "digest", "report") != report_digest(report))
      throw Error(ErrorCode::Verification, "report.digest does not match the report body");
    const std::string fresh = render_json(run_command(*cmd, p));
    if (fresh != report_text) {
      std::size_t k = 0;
      while (k < fresh.size() && k < report_text.size() && fresh[k] == report_text[k]) ++k;
      throw Error(ErrorCode::Verification, "report differs from a fresh derivation at byte " + std::to_string(k));
    }
    out.ok = true;
  } catch (const Error& e) {
    out.ok = false;
    out.reason = e.what();
  } catch (const Json::exception& e) {
    out.ok = false;
    out.reason = std::string("malformed report field: ") + e.what();
  }
  return out;
}

Json check_json(const CheckOutcome& outcome) {
  Json j;
  j["command"] = "check";
  j["checked"] = outcome.checked;
  j["ok"] = outcome.ok;
  j["certificates"] = outcome.certificates;
  j["reason"] = outcome.reason;
  return j;
}

Json error_json(const std::string& code, const std::string& message) {
  Json j;
  j["error"] = Json{{"code", code}, {"message", message}};
  return j;
}

}  // namespace resolvent
