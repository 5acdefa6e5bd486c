#include "gcube/lattice.hpp"

#include <json.hpp>

namespace gcube {

namespace {

using nlohmann::json;

json parse_object(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("expected a JSON object");
  return doc;
}

std::size_t read_dim(const json& doc) {
  if (!doc.contains("d") || !doc["d"].is_number_integer() || doc["d"].get<std::int64_t>() < 0) {
    throw FormatError("field \"d\" must be a nonnegative integer");
  }
  return doc["d"].get<std::size_t>();
}

LatticePoint read_point(const json& p, std::size_t dim) {
  if (!p.is_array()) throw FormatError("point must be an array of integers");
  if (p.size() != dim) {
    throw FormatError("point has " + std::to_string(p.size()) + " coordinates, expected " + std::to_string(dim));
  }
  std::vector<std::int64_t> coords;
  coords.reserve(dim);
  for (const auto& c : p) {
    if (!c.is_number_integer()) throw FormatError("point coordinates must be integers");
    coords.push_back(c.get<std::int64_t>());
  }
  return LatticePoint(std::move(coords));
}

json write_point(const LatticePoint& x) {
  json p = json::array();
  for (auto c : x.coords()) p.push_back(c);
  return p;
}

}  // namespace

LatticeFunction function_from_json(const std::string& text) {
  const json doc = parse_object(text);
  const std::size_t dim = read_dim(doc);
  if (!doc.contains("entries") || !doc["entries"].is_array()) throw FormatError("field \"entries\" must be an array");

  LatticeFunction f(dim);
  for (const auto& e : doc["entries"]) {
    if (!e.is_object() || !e.contains("p")) throw FormatError("entry must be an object with a \"p\" field");
    double re = 0.0;
    double im = 0.0;
    if (e.contains("re")) {
      if (!e["re"].is_number()) throw FormatError("\"re\" must be a number");
      re = e["re"].get<double>();
    }
    if (e.contains("im")) {
      if (!e["im"].is_number()) throw FormatError("\"im\" must be a number");
      im = e["im"].get<double>();
    }
    f.add(read_point(e["p"], dim), Scalar(re, im));
  }
  return f;
}

std::string function_to_json(const LatticeFunction& f) {
  json entries = json::array();
  for (const auto& [x, v] : f.entries()) {
    entries.push_back({{"p", write_point(x)}, {"re", v.real()}, {"im", v.imag()}});
  }
  return json{{"d", f.dim()}, {"entries", entries}}.dump();
}

CubeSet set_from_json(const std::string& text) {
  const json doc = parse_object(text);
  const std::size_t dim = read_dim(doc);
  if (!doc.contains("n") || !doc["n"].is_number_integer()) throw FormatError("field \"n\" must be an integer");
  if (!doc.contains("members") || !doc["members"].is_array()) throw FormatError("field \"members\" must be an array");

  const auto side = doc["n"].get<std::int64_t>();
  if (side < 1) throw FormatError("field \"n\" must be >= 1");
  CubeSet set(dim, side);
  for (const auto& m : doc["members"]) {
    try {
      set.insert(read_point(m, dim));
    } catch (const std::domain_error& e) {
      throw FormatError(e.what());
    }
  }
  return set;
}

std::string set_to_json(const CubeSet& set) {
  json members = json::array();
  for (const auto& x : set.members()) members.push_back(write_point(x));
  return json{{"d", set.dim()}, {"n", set.side()}, {"members", members}}.dump();
}

}  // namespace gcube
