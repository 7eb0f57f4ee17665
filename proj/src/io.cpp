#include "gkm/io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <set>

#include "gkm/error.hpp"

namespace gkm {

json to_json(const Rational &r) { return r.str(); }

json to_json(const QVector &v) {
  json a = json::array();
  for (const auto &x : v)
    a.push_back(x.str());
  return a;
}

json to_json(const QMatrix &m) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    a.push_back(to_json(m.row(r)));
  return a;
}

Rational rational_from_json(const json &j) {
  if (j.is_string())
    return Rational::parse(j.get<std::string>());
  if (j.is_number_integer())
    return Rational(j.get<std::int64_t>());
  throw ParseError("rational must be a string \"p/q\" or an integer");
}

QVector qvector_from_json(const json &j) {
  if (!j.is_array())
    throw ParseError("vector must be an array");
  std::vector<Rational> xs;
  for (const auto &x : j)
    xs.push_back(rational_from_json(x));
  return QVector(std::move(xs));
}

namespace {

void only_fields(const json &j, std::initializer_list<const char *> allowed,
                 const std::string &where) {
  if (!j.is_object())
    throw ParseError(where + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto &[k, v] : j.items())
    if (!ok.count(k))
      throw ParseError("unknown field '" + k + "' in " + where);
}

std::string str_field(const json &j, const char *key, const std::string &where) {
  if (!j.contains(key) || !j[key].is_string())
    throw ParseError(where + " needs string field '" + key + "'");
  return j[key].get<std::string>();
}

} // namespace

GraphData graph_data_from_json(const json &j) {
  only_fields(j, {"torus_rank", "vertices", "edges", "connection"}, "graph");
  GraphData d;
  if (!j.contains("torus_rank") || !j["torus_rank"].is_number_integer())
    throw ParseError("graph needs integer 'torus_rank'");
  d.torus_rank = j["torus_rank"].get<int>();
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw ParseError("graph needs array 'vertices'");
  for (const auto &v : j["vertices"]) {
    if (!v.is_string())
      throw ParseError("vertex ids must be strings");
    d.vertices.push_back(v.get<std::string>());
  }
  if (!j.contains("edges") || !j["edges"].is_array())
    throw ParseError("graph needs array 'edges'");
  for (const auto &e : j["edges"]) {
    only_fields(e, {"id", "source", "target", "weight"}, "edge");
    EdgeRecord r{str_field(e, "id", "edge"), str_field(e, "source", "edge"),
                 str_field(e, "target", "edge"), {}};
    if (e.contains("weight"))
      r.weight = qvector_from_json(e["weight"]).entries();
    d.edges.push_back(std::move(r));
  }
  if (j.contains("connection")) {
    if (!j["connection"].is_array())
      throw ParseError("'connection' must be an array");
    std::vector<ConnectionRecord> conn;
    for (const auto &c : j["connection"]) {
      only_fields(c, {"along", "map"}, "connection entry");
      ConnectionRecord rec{str_field(c, "along", "connection entry"), {}};
      if (!c.contains("map") || !c["map"].is_object())
        throw ParseError("connection entry needs object 'map'");
      for (const auto &[k, v] : c["map"].items()) {
        if (!v.is_string())
          throw ParseError("connection map values must be edge ids");
        rec.map.emplace_back(k, v.get<std::string>());
      }
      conn.push_back(std::move(rec));
    }
    d.connection = std::move(conn);
  }
  return d;
}

json to_json(const GraphData &d) {
  json j;
  j["torus_rank"] = d.torus_rank;
  j["vertices"] = d.vertices;
  json es = json::array();
  for (const auto &e : d.edges) {
    json r;
    r["id"] = e.id;
    r["source"] = e.source;
    r["target"] = e.target;
    if (!e.weight.empty())
      r["weight"] = to_json(QVector(e.weight));
    es.push_back(std::move(r));
  }
  j["edges"] = std::move(es);
  if (d.connection) {
    json cs = json::array();
    for (const auto &c : *d.connection) {
      json m = json::object();
      for (const auto &[k, v] : c.map)
        m[k] = v;
      cs.push_back({{"along", c.along}, {"map", std::move(m)}});
    }
    j["connection"] = std::move(cs);
  }
  return j;
}

json to_json(const GkmGraph &g) { return to_json(g.to_data()); }

json read_json(const std::string &path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in)
      throw ParseError("cannot open '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::exception &e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

GraphData load_graph_data(const std::string &path) {
  try {
    return graph_data_from_json(read_json(path));
  } catch (const json::exception &e) {
    throw ParseError(std::string("bad graph JSON: ") + e.what());
  }
}

} // namespace gkm
