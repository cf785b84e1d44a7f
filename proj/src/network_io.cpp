#include "spincomm/network_io.hpp"

#include <fstream>
#include <string>
#include <vector>

#include "spincomm/errors.hpp"

namespace spincomm {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key) {
  if (!obj.contains(key)) throw InvalidArgument(std::string("network description missing '") + key + "'");
  return obj.at(key);
}

std::size_t as_index(const json& value, const char* what) {
  if (!value.is_number_integer() || value.get<long long>() < 0)
    throw InvalidArgument(std::string(what) + " must be a non-negative integer");
  return value.get<std::size_t>();
}

std::vector<std::size_t> as_index_list(const json& value, const char* what) {
  if (!value.is_array()) throw InvalidArgument(std::string(what) + " must be a list");
  std::vector<std::size_t> out;
  for (const auto& v : value) out.push_back(as_index(v, what));
  return out;
}

std::vector<double> chain_couplings(const json& desc, std::optional<unsigned long long> seed) {
  if (desc.contains("couplings")) {
    const auto& c = desc.at("couplings");
    if (!c.is_array()) throw InvalidArgument("'couplings' must be a list of numbers");
    std::vector<double> out;
    for (const auto& v : c) {
      if (!v.is_number()) throw InvalidArgument("'couplings' must be a list of numbers");
      out.push_back(v.get<double>());
    }
    return out;
  }
  if (desc.contains("random_couplings")) {
    const auto& r = desc.at("random_couplings");
    const std::size_t n = as_index(require(r, "n_sites"), "random_couplings.n_sites");
    if (n < 2) throw InvalidArgument("random chain needs at least two sites");
    const double low = require(r, "low").get<double>();
    const double high = require(r, "high").get<double>();
    unsigned long long s = r.value("seed", 0ULL);
    if (seed) s = *seed;
    auto out = random_couplings(n - 1, low, high, s);
    if (r.contains("end_couplings")) {
      const double ends = r.at("end_couplings").get<double>();
      out.front() = ends;
      out.back() = ends;
    }
    return out;
  }
  throw InvalidArgument("chain shorthand needs 'couplings' or 'random_couplings'");
}

}  // namespace

SpinNetwork build_network(const json& desc, std::optional<unsigned long long> seed) {
  if (!desc.is_object()) throw InvalidArgument("network description must be an object");
  try {
    if (desc.contains("kind") && !desc.contains("edges")) {
      const auto kind = parse_coupling_kind(require(desc, "kind").get<std::string>());
      const auto couplings = chain_couplings(desc, seed);
      return chain_from_couplings(couplings, kind, as_index(require(desc, "n_alice"), "n_alice"),
                                  as_index(require(desc, "n_bob"), "n_bob"));
    }

    const std::size_t n = as_index(require(desc, "n_sites"), "n_sites");
    std::vector<Edge> edges;
    for (const auto& e : require(desc, "edges")) {
      if (!e.is_array() || e.size() != 4)
        throw InvalidArgument("each edge must be [i, j, kind, strength]");
      edges.push_back({as_index(e[0], "edge site"), as_index(e[1], "edge site"),
                       parse_coupling_kind(e[2].get<std::string>()), e[3].get<double>()});
    }
    std::vector<double> z;
    if (desc.contains("z_fields")) z = desc.at("z_fields").get<std::vector<double>>();
    return SpinNetwork(n, std::move(edges), std::move(z),
                       as_index_list(require(desc, "alice_sites"), "alice_sites"),
                       as_index_list(require(desc, "bob_sites"), "bob_sites"));
  } catch (const json::exception& ex) {
    throw InvalidArgument(std::string("malformed network description: ") + ex.what());
  }
}

SpinNetwork load_network(const std::filesystem::path& path, std::optional<unsigned long long> seed) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open network file " + path.string());
  json desc;
  try {
    in >> desc;
  } catch (const json::parse_error& ex) {
    throw InvalidArgument("cannot parse " + path.string() + ": " + ex.what());
  }
  return build_network(desc, seed);
}

json network_to_json(const SpinNetwork& network) {
  json edges = json::array();
  for (const auto& e : network.edges())
    edges.push_back(json::array({e.i, e.j, std::string(to_string(e.kind)), e.strength}));
  return json{{"n_sites", network.n_sites()},
              {"edges", std::move(edges)},
              {"z_fields", network.z_fields()},
              {"alice_sites", network.alice_sites()},
              {"bob_sites", network.bob_sites()}};
}

}  // namespace spincomm
