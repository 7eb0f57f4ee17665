#ifndef GKM_IO_HPP
#define GKM_IO_HPP

#include <string>

#include "gkm/graph.hpp"
#include "json.hpp"

namespace gkm {

using json = nlohmann::ordered_json;

json to_json(const Rational &r);
json to_json(const QVector &v);
json to_json(const QMatrix &m);
Rational rational_from_json(const json &j);
QVector qvector_from_json(const json &j);

// Interchange format; unknown fields raise ParseError.
GraphData graph_data_from_json(const json &j);
json to_json(const GraphData &d);
json to_json(const GkmGraph &g);

// Reads a file, or standard input for "-". Throws ParseError on IO or syntax
// problems.
json read_json(const std::string &path);
GraphData load_graph_data(const std::string &path);

} // namespace gkm

#endif
