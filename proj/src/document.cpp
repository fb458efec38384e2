#include "prevcalc/document.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace prevcalc {

using nlohmann::json;

namespace {

const json& field(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + "." + key + ": missing");
  return *it;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end()) {
      throw ParseError(where + "." + key + ": unknown field");
    }
  }
}

void check_version(const json& j, const std::string& where) {
  const json& v = field(j, "version", where);
  if (!v.is_number_integer() || v.get<int>() != kDocumentVersion) {
    throw ParseError(where + ".version: unsupported (expected " + std::to_string(kDocumentVersion) + ")");
  }
}

std::size_t read_size(const json& j, const std::string& key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_number_integer() || v.get<long long>() < 1) throw ParseError(where + "." + key + ": expected a positive integer");
  return v.get<std::size_t>();
}

Rat rat_from_json(const json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a rational string like \"3/2\"");
  try {
    return parse_rat(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
}

std::vector<Point> point_list(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a nonempty array of points");
  std::vector<Point> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string at = where + "[" + std::to_string(i) + "]";
    Point p = point_from_json(j[i], at);
    if (p.size() != n) throw ParseError(at + ": expected " + std::to_string(n) + " coordinates");
    out.push_back(std::move(p));
  }
  return out;
}

json point_list_json(const std::vector<Point>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(point_to_json(p));
  return a;
}

template <class Branch>
std::vector<Branch> branch_list(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a nonempty array of branches");
  std::vector<Branch> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(Branch{point_list(j[i], n, where + "[" + std::to_string(i) + "]")});
  }
  return out;
}

}  // namespace

json point_to_json(const Point& p) {
  json a = json::array();
  for (std::size_t i = 0; i < p.size(); ++i) a.push_back(to_string(p[i]));
  return a;
}

Point point_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a nonempty array of rationals");
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rat_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  try {
    return Point(std::move(v));
  } catch (const std::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
}

json prevision_to_json(const Prevision& p, std::optional<Flavor> flavor) {
  json j;
  j["version"] = kDocumentVersion;
  j["n"] = p.n();
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, LinearPrev>) {
          j["form"] = "linear";
          j["payload"] = point_to_json(f.weights);
        } else if constexpr (std::is_same_v<T, MinOfSub>) {
          j["form"] = "min_of_sub";
          j["payload"] = json::array();
          for (const auto& b : f.branches) j["payload"].push_back(point_list_json(b.gens));
        } else if constexpr (std::is_same_v<T, MaxOfSuper>) {
          j["form"] = "max_of_super";
          j["payload"] = json::array();
          for (const auto& b : f.branches) j["payload"].push_back(point_list_json(b.gens));
        } else {
          j["form"] = f.direction == GaugeDirection::Down ? "gauge_down" : "gauge_up";
          j["payload"] = point_list_json(f.hull_points);
        }
      },
      p.form());
  if (flavor) j["flavor"] = to_string(*flavor);
  return j;
}

PrevisionDocument prevision_from_json(const json& j) {
  const std::string where = "prevision";
  check_keys(j, {"version", "n", "form", "payload", "flavor"}, where);
  check_version(j, where);
  const std::size_t n = read_size(j, "n", where);
  const json& form = field(j, "form", where);
  if (!form.is_string()) throw ParseError(where + ".form: expected a string");
  const std::string tag = form.get<std::string>();
  const json& payload = field(j, "payload", where);
  const std::string pw = where + ".payload";
  std::optional<Prevision> p;
  try {
    if (tag == "linear") {
      Point w = point_from_json(payload, pw);
      if (w.size() != n) throw ParseError(pw + ": expected " + std::to_string(n) + " coordinates");
      p = Prevision::linear(std::move(w));
    } else if (tag == "min_of_sub") {
      p = Prevision(n, MinOfSub{branch_list<DownGen>(payload, n, pw)});
    } else if (tag == "max_of_super") {
      p = Prevision(n, MaxOfSuper{branch_list<UpGen>(payload, n, pw)});
    } else if (tag == "gauge_down" || tag == "gauge_up") {
      auto dir = tag == "gauge_down" ? GaugeDirection::Down : GaugeDirection::Up;
      p = Prevision(n, GaugeForm{point_list(payload, n, pw), dir});
    } else {
      throw ParseError(where + ".form: unknown form '" + tag + "'");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(pw + ": " + e.what());
  }
  PrevisionDocument doc{*p, std::nullopt};
  if (auto it = j.find("flavor"); it != j.end()) {
    if (!it->is_string()) throw ParseError(where + ".flavor: expected a string");
    try {
      doc.flavor = parse_flavor(it->get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(where + ".flavor: " + e.what());
    }
  }
  return doc;
}

namespace {

template <class Elem>
json hyper_to_json(const Elem& e, const std::string& kind) {
  json j;
  j["version"] = kDocumentVersion;
  j["kind"] = kind;
  j["n"] = e.gens.empty() ? 0 : e.gens.front().n();
  j["gens"] = json::array();
  for (const auto& g : e.gens) j["gens"].push_back(prevision_to_json(g));
  return j;
}

template <class Elem>
Elem hyper_from_json(const json& j, const std::string& kind) {
  const std::string where = kind;
  check_keys(j, {"version", "kind", "n", "gens"}, where);
  check_version(j, where);
  const json& k = field(j, "kind", where);
  if (!k.is_string() || k.get<std::string>() != kind) throw ParseError(where + ".kind: expected \"" + kind + "\"");
  const std::size_t n = read_size(j, "n", where);
  const json& gens = field(j, "gens", where);
  if (!gens.is_array() || gens.empty()) throw ParseError(where + ".gens: expected a nonempty array of previsions");
  Elem out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::string at = where + ".gens[" + std::to_string(i) + "]";
    PrevisionDocument d = [&] {
      try {
        return prevision_from_json(gens[i]);
      } catch (const ParseError& e) {
        throw ParseError(at + ": " + e.what());
      }
    }();
    if (d.prevision.n() != n) throw ParseError(at + ": dimension differs from n");
    out.gens.push_back(std::move(d.prevision));
  }
  return out;
}

}  // namespace

json smyth_to_json(const SmythGen& s) { return hyper_to_json(s, "smyth"); }
json hoare_to_json(const HoareGen& h) { return hyper_to_json(h, "hoare"); }
SmythGen smyth_from_json(const json& j) { return hyper_from_json<SmythGen>(j, "smyth"); }
HoareGen hoare_from_json(const json& j) { return hyper_from_json<HoareGen>(j, "hoare"); }

json points_to_json(const std::vector<Point>& pts) {
  json j;
  j["version"] = kDocumentVersion;
  j["n"] = pts.empty() ? 0 : pts.front().size();
  j["points"] = point_list_json(pts);
  return j;
}

std::vector<Point> points_from_json(const json& j) {
  check_keys(j, {"version", "n", "points"}, "points");
  check_version(j, "points");
  const std::size_t n = read_size(j, "n", "points");
  return point_list(field(j, "points", "points"), n, "points.points");
}

json poset_to_json(const FinitePoset& p) {
  json j;
  j["version"] = kDocumentVersion;
  j["size"] = p.size();
  j["leq"] = json::array();
  for (const auto& [a, b] : p.strict_pairs()) j["leq"].push_back({a, b});
  return j;
}

FinitePoset poset_from_json(const json& j) {
  check_keys(j, {"version", "size", "leq"}, "poset");
  check_version(j, "poset");
  const std::size_t size = read_size(j, "size", "poset");
  const json& leq = field(j, "leq", "poset");
  if (!leq.is_array()) throw ParseError("poset.leq: expected an array of [i, j] pairs");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < leq.size(); ++i) {
    const json& e = leq[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
      throw ParseError("poset.leq[" + std::to_string(i) + "]: expected a pair of element indices");
    }
    pairs.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
  }
  try {
    return FinitePoset::from_pairs(size, pairs);
  } catch (const std::exception& e) {
    throw ParseError(std::string("poset.leq: ") + e.what());
  }
}

std::string dump_document(const json& j) { return j.dump(2) + "\n"; }

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("json: ") + e.what());
  }
}

json read_document_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_document(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace prevcalc
