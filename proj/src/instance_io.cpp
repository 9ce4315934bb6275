#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "mtmclp/errors.hpp"
#include "mtmclp/io.hpp"

namespace mtmclp {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

namespace {

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

Json parse_json(std::string_view text, const char* what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::string msg = e.what();
    const auto colon = msg.find("parse error");
    if (colon != std::string::npos) msg = msg.substr(colon);
    throw InputError(std::string(what) + ": malformed JSON at " +
                     line_column(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + msg);
  }
}

[[noreturn]] void field_error(const std::string& path, const std::string& msg) {
  throw InputError("instance field '" + path + "': " + msg);
}

void require_object(const Json& j, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  if (!j.is_object()) field_error(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      field_error(path.empty() ? key : path + "." + key, "unknown field");
    }
  }
}

const Json& member(const Json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) field_error(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::string join(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) field_error(path, "expected a number");
  return j.get<double>();
}

int count_of(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0 || j.get<long long>() > 1'000'000) {
    field_error(path, "expected a nonnegative integer");
  }
  return static_cast<int>(j.get<long long>());
}

Point point_of(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) field_error(path, "expected a nonempty array of numbers");
  std::vector<double> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  return Point(std::move(c));
}

NormSpec norm_of(const Json& j, const std::string& path) {
  require_object(j, path, {"kind", "tau"});
  const Json& kind = member(j, path, "kind");
  if (!kind.is_string()) field_error(join(path, "kind"), "expected a string");
  std::optional<double> tau;
  if (j.contains("tau")) tau = number(j["tau"], join(path, "tau"));
  try {
    return parse_norm(kind.get<std::string>(), tau);
  } catch (const InputError& e) {
    field_error(path, e.what());
  }
}

OrderedJson norm_json(const NormSpec& norm) {
  OrderedJson j;
  switch (norm.kind) {
    case NormKind::L1:
      j["kind"] = "L1";
      break;
    case NormKind::L2:
      j["kind"] = "L2";
      break;
    case NormKind::LInf:
      j["kind"] = "LInf";
      break;
    case NormKind::Lp:
      j["kind"] = "Lp";
      j["tau"] = norm.tau;
      break;
  }
  return j;
}

OrderedJson coords_json(const Point& p) {
  OrderedJson a = OrderedJson::array();
  for (double v : p.coords()) a.push_back(v);
  return a;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  const Json doc = parse_json(text, "instance");
  require_object(doc, "", {"format", "version", "name", "seed", "dimension", "demand",
                           "discrete_types", "continuous_types"});
  if (doc.contains("format") && doc["format"] != "mtmclp-instance") {
    field_error("format", "expected \"mtmclp-instance\"");
  }
  if (doc.contains("version") && doc["version"] != kInstanceFormatVersion) {
    field_error("version", "unsupported version (expected " + std::to_string(kInstanceFormatVersion) + ")");
  }
  Instance inst;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) field_error("name", "expected a string");
    inst.name = doc["name"].get<std::string>();
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) field_error("seed", "expected a nonnegative integer");
    inst.seed = doc["seed"].get<std::uint64_t>();
  }
  const Json& dim = member(doc, "", "dimension");
  if (!dim.is_number_integer() || dim.get<long long>() < 1) field_error("dimension", "expected a positive integer");
  inst.dimension = dim.get<std::size_t>();

  const Json& demand = member(doc, "", "demand");
  if (!demand.is_array()) field_error("demand", "expected an array");
  for (std::size_t i = 0; i < demand.size(); ++i) {
    const std::string path = "demand[" + std::to_string(i) + "]";
    require_object(demand[i], path, {"coords", "weight"});
    DemandPoint p;
    p.point = point_of(member(demand[i], path, "coords"), join(path, "coords"));
    if (demand[i].contains("weight")) p.weight = number(demand[i]["weight"], join(path, "weight"));
    inst.demand.push_back(std::move(p));
  }

  if (doc.contains("discrete_types")) {
    const Json& types = doc["discrete_types"];
    if (!types.is_array()) field_error("discrete_types", "expected an array");
    for (std::size_t t = 0; t < types.size(); ++t) {
      const std::string path = "discrete_types[" + std::to_string(t) + "]";
      require_object(types[t], path, {"sites", "count", "norm"});
      DiscreteTypeSpec spec;
      const Json& sites = member(types[t], path, "sites");
      if (!sites.is_array()) field_error(join(path, "sites"), "expected an array");
      for (std::size_t j = 0; j < sites.size(); ++j) {
        const std::string sp = path + ".sites[" + std::to_string(j) + "]";
        require_object(sites[j], sp, {"coords", "radius"});
        spec.sites.push_back(point_of(member(sites[j], sp, "coords"), join(sp, "coords")));
        spec.radii.push_back(number(member(sites[j], sp, "radius"), join(sp, "radius")));
      }
      spec.count = count_of(member(types[t], path, "count"), join(path, "count"));
      if (types[t].contains("norm")) spec.norm = norm_of(types[t]["norm"], join(path, "norm"));
      inst.discrete_types.push_back(std::move(spec));
    }
  }
  if (doc.contains("continuous_types")) {
    const Json& types = doc["continuous_types"];
    if (!types.is_array()) field_error("continuous_types", "expected an array");
    for (std::size_t t = 0; t < types.size(); ++t) {
      const std::string path = "continuous_types[" + std::to_string(t) + "]";
      require_object(types[t], path, {"norm", "radius", "count"});
      ContinuousTypeSpec spec;
      spec.norm = norm_of(member(types[t], path, "norm"), join(path, "norm"));
      spec.radius = number(member(types[t], path, "radius"), join(path, "radius"));
      spec.count = count_of(member(types[t], path, "count"), join(path, "count"));
      inst.continuous_types.push_back(spec);
    }
  }
  inst = deduplicated(std::move(inst));
  validate(inst);
  return inst;
}

Instance load_instance(const std::string& path) {
  try {
    return parse_instance(read_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string emit_instance(const Instance& instance) {
  OrderedJson doc;
  doc["format"] = "mtmclp-instance";
  doc["version"] = kInstanceFormatVersion;
  if (!instance.name.empty()) doc["name"] = instance.name;
  if (instance.seed) doc["seed"] = *instance.seed;
  doc["dimension"] = instance.dimension;
  OrderedJson demand = OrderedJson::array();
  for (const DemandPoint& p : instance.demand) {
    OrderedJson e;
    e["coords"] = coords_json(p.point);
    e["weight"] = p.weight;
    demand.push_back(std::move(e));
  }
  doc["demand"] = std::move(demand);
  OrderedJson discrete = OrderedJson::array();
  for (const DiscreteTypeSpec& spec : instance.discrete_types) {
    OrderedJson t;
    OrderedJson sites = OrderedJson::array();
    for (std::size_t j = 0; j < spec.sites.size(); ++j) {
      OrderedJson s;
      s["coords"] = coords_json(spec.sites[j]);
      s["radius"] = spec.radii[j];
      sites.push_back(std::move(s));
    }
    t["sites"] = std::move(sites);
    t["count"] = spec.count;
    t["norm"] = norm_json(spec.norm);
    discrete.push_back(std::move(t));
  }
  doc["discrete_types"] = std::move(discrete);
  OrderedJson cont = OrderedJson::array();
  for (const ContinuousTypeSpec& spec : instance.continuous_types) {
    OrderedJson t;
    t["norm"] = norm_json(spec.norm);
    t["radius"] = spec.radius;
    t["count"] = spec.count;
    cont.push_back(std::move(t));
  }
  doc["continuous_types"] = std::move(cont);
  return doc.dump(2) + "\n";
}

std::vector<DemandPoint> parse_points_csv(std::string_view text) {
  std::vector<DemandPoint> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    std::vector<double> values;
    bool numeric = true;
    for (const std::string& c : cells) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(c, &used));
        if (c.find_first_not_of(" \t", used) != std::string::npos) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (out.empty() && lineno == 1) continue;  // header
      throw InputError("points CSV line " + std::to_string(lineno) + ": non-numeric value");
    }
    if (values.size() != 2 && values.size() != 3) {
      throw InputError("points CSV line " + std::to_string(lineno) + ": expected x,y[,weight]");
    }
    out.push_back(DemandPoint{Point{values[0], values[1]}, values.size() == 3 ? values[2] : 1.0});
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw InputError("failed writing '" + path + "'");
}

}  // namespace mtmclp
