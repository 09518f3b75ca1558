#ifndef SOA_INSTANCE_HPP
#define SOA_INSTANCE_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "soa/finset.hpp"
#include "soa/lifting.hpp"
#include "soa/soa.hpp"
#include "soa/stability.hpp"
#include "soa/twocat.hpp"

namespace soa {

using nlohmann::json;

inline constexpr const char* kInstanceSchema = "soa-instance/1";
inline constexpr const char* kReportSchema = "soa-report/1";

/// Raised by loaders with a JSON-pointer style location.
struct InstanceError : std::runtime_error {
  explicit InstanceError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what) {}
};

// --- JSON encodings of the kernel types ------------------------------------

inline json finset_to_json(const FinSet& s) { return json(s.elements()); }

inline FinSet finset_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw InstanceError(where, "expected an array of atoms");
  std::vector<Atom> elems;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string())
      throw InstanceError(where + "/" + std::to_string(i), "atom must be a string");
    elems.push_back(j[i].get<std::string>());
  }
  try {
    return FinSet(std::move(elems));
  } catch (const std::invalid_argument& ex) {
    throw InstanceError(where, ex.what());
  }
}

inline json finmap_to_json(const FinMap& m) {
  json table = json::object();
  for (std::size_t i = 0; i < m.dom().size(); ++i)
    table[m.dom().at(i)] = m.cod().at(m.apply_index(i));
  return json{{"dom", finset_to_json(m.dom())},
              {"cod", finset_to_json(m.cod())},
              {"table", table}};
}

inline FinMap finmap_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw InstanceError(where, "expected a map object");
  for (const char* key : {"dom", "cod", "table"})
    if (!j.contains(key)) throw InstanceError(where, std::string("missing field '") + key + "'");
  FinSet dom = finset_from_json(j["dom"], where + "/dom");
  FinSet cod = finset_from_json(j["cod"], where + "/cod");
  if (!j["table"].is_object()) throw InstanceError(where + "/table", "expected an object");
  std::map<Atom, Atom> assign;
  for (const auto& [k, v] : j["table"].items()) {
    if (!v.is_string()) throw InstanceError(where + "/table/" + k, "image must be a string");
    assign[k] = v.get<std::string>();
  }
  try {
    return FinMap::from_pairs(dom, cod, assign);
  } catch (const std::exception& ex) {
    throw InstanceError(where + "/table", ex.what());
  }
}

// --- certificates -----------------------------------------------------------

inline json certificate_to_json(const CellCertificate& c) {
  switch (c.kind) {
    case CellCertificate::Kind::generator:
      return json{{"kind", "generator"}, {"map", finmap_to_json(c.gen)}};
    case CellCertificate::Kind::pushout:
      return json{{"kind", "pushout"},
                  {"cell", certificate_to_json(c.children.at(0))},
                  {"attach", finmap_to_json(c.attach)}};
    case CellCertificate::Kind::composite: {
      json parts = json::array();
      for (const auto& ch : c.children) parts.push_back(certificate_to_json(ch));
      return json{{"kind", "composite"}, {"parts", parts}};
    }
    case CellCertificate::Kind::corner:
      return json{{"kind", "corner"},
                  {"left", certificate_to_json(c.children.at(0))},
                  {"right", certificate_to_json(c.children.at(1))}};
  }
  throw std::logic_error("certificate_to_json: unknown node kind");
}

inline CellCertificate certificate_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("kind"))
    throw InstanceError(where, "expected a certificate node with 'kind'");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "generator") {
    if (!j.contains("map")) throw InstanceError(where, "generator node needs 'map'");
    return CellCertificate::generator_node(finmap_from_json(j["map"], where + "/map"));
  }
  if (kind == "pushout") {
    if (!j.contains("cell") || !j.contains("attach"))
      throw InstanceError(where, "pushout node needs 'cell' and 'attach'");
    return CellCertificate::pushout_node(certificate_from_json(j["cell"], where + "/cell"),
                                         finmap_from_json(j["attach"], where + "/attach"));
  }
  if (kind == "composite") {
    if (!j.contains("parts") || !j["parts"].is_array())
      throw InstanceError(where, "composite node needs array 'parts'");
    std::vector<CellCertificate> parts;
    for (std::size_t i = 0; i < j["parts"].size(); ++i)
      parts.push_back(certificate_from_json(j["parts"][i], where + "/parts/" + std::to_string(i)));
    return CellCertificate::composite_node(std::move(parts));
  }
  if (kind == "corner") {
    if (!j.contains("left") || !j.contains("right"))
      throw InstanceError(where, "corner node needs 'left' and 'right'");
    return CellCertificate::corner_node(certificate_from_json(j["left"], where + "/left"),
                                        certificate_from_json(j["right"], where + "/right"));
  }
  throw InstanceError(where + "/kind", "unknown node kind '" + kind + "'");
}

// --- instance documents ------------------------------------------------------

struct InstanceDocument {
  std::string base;  // "set" | "twocat"
  // Set base payload.
  std::map<std::string, FinSet> objects;
  std::map<std::string, FinMap> maps;
  WfsSpec profile;
  std::optional<std::string> f_name, k_name;
  std::vector<std::string> targets;  // names into maps
  SoaConfig config;
  // 2-categorical payload.
  std::optional<FiniteTwoCategory> twocat;

  const FinMap& named_map(const std::string& name) const {
    auto it = maps.find(name);
    if (it == maps.end()) throw InstanceError("/maps", "no map named '" + name + "'");
    return it->second;
  }
};

namespace detail_instance {

inline void check_atoms(const FinSet& s, const std::string& where) {
  for (const auto& a : s.elements())
    if (!atom_is_valid(a))
      throw InstanceError(where, "atom '" + a + "' uses reserved characters or whitespace");
}

inline FinCategory homcat_from_json(const json& j, const std::string& where) {
  FinCategory c;
  if (!j.is_object()) throw InstanceError(where, "expected a hom-category object");
  if (!j.contains("objects") || !j["objects"].is_array())
    throw InstanceError(where, "hom-category needs array 'objects'");
  for (const auto& o : j["objects"]) c.objects.push_back(o.get<std::string>());
  bool discrete = !j.contains("morphisms");
  for (const auto& o : c.objects) {
    c.morphisms.push_back({"2id_" + o, o, o});
    c.identity[o] = "2id_" + o;
  }
  if (!discrete) {
    for (std::size_t i = 0; i < j["morphisms"].size(); ++i) {
      const json& m = j["morphisms"][i];
      std::string mw = where + "/morphisms/" + std::to_string(i);
      for (const char* key : {"name", "dom", "cod"})
        if (!m.contains(key)) throw InstanceError(mw, std::string("missing '") + key + "'");
      c.morphisms.push_back({m["name"].get<std::string>(), m["dom"].get<std::string>(),
                             m["cod"].get<std::string>()});
    }
  }
  // Identity composites are forced; other composites come from "comp".
  for (const auto& m : c.morphisms) {
    c.comp[{m.name, "2id_" + m.dom}] = m.name;
    c.comp[{"2id_" + m.cod, m.name}] = m.name;
  }
  if (j.contains("comp")) {
    for (std::size_t i = 0; i < j["comp"].size(); ++i) {
      const json& row = j["comp"][i];
      if (!row.is_array() || row.size() != 3)
        throw InstanceError(where + "/comp/" + std::to_string(i), "expected [g, f, gf]");
      c.comp[{row[0].get<std::string>(), row[1].get<std::string>()}] = row[2].get<std::string>();
    }
  }
  return c;
}

inline FiniteTwoCategory twocat_from_json(const json& j, const std::string& where) {
  FiniteTwoCategory t;
  if (!j.contains("objects") || !j["objects"].is_array())
    throw InstanceError(where, "needs array 'objects'");
  for (const auto& o : j["objects"]) t.objects.push_back(o.get<std::string>());
  for (const auto& x : t.objects)
    for (const auto& y : t.objects) t.homcat[{x, y}] = FinCategory{};
  if (!j.contains("homcats") || !j["homcats"].is_object())
    throw InstanceError(where, "needs object 'homcats' keyed by \"X|Y\"");
  for (const auto& [key, val] : j["homcats"].items()) {
    auto bar = key.find('|');
    if (bar == std::string::npos)
      throw InstanceError(where + "/homcats/" + key, "key must be \"X|Y\"");
    std::string x = key.substr(0, bar), y = key.substr(bar + 1);
    t.homcat[{x, y}] = homcat_from_json(val, where + "/homcats/" + key);
  }
  if (!j.contains("id1") || !j["id1"].is_object())
    throw InstanceError(where, "needs object 'id1'");
  for (const auto& [x, v] : j["id1"].items()) t.id1[x] = v.get<std::string>();
  // Identity whiskers are forced by the unit laws; fill them in before
  // reading the explicit tables.
  for (const auto& x : t.objects)
    for (const auto& y : t.objects) {
      auto it = t.homcat.find({x, y});
      if (it == t.homcat.end()) continue;
      const FinCategory& c = it->second;
      for (const auto& o : c.objects) {
        t.hcomp1[{o, t.id1.at(x)}] = o;
        t.hcomp1[{t.id1.at(y), o}] = o;
      }
      for (const auto& m : c.morphisms) {
        t.hcomp2[{m.name, "2id_" + t.id1.at(x)}] = m.name;
        t.hcomp2[{"2id_" + t.id1.at(y), m.name}] = m.name;
      }
    }
  if (j.contains("hcomp1"))
    for (std::size_t i = 0; i < j["hcomp1"].size(); ++i) {
      const json& row = j["hcomp1"][i];
      if (!row.is_array() || row.size() != 3)
        throw InstanceError(where + "/hcomp1/" + std::to_string(i), "expected [g, f, gf]");
      t.hcomp1[{row[0].get<std::string>(), row[1].get<std::string>()}] =
          row[2].get<std::string>();
    }
  // Identity 2-cell composites follow from functoriality once hcomp1 is known.
  for (const auto& x : t.objects)
    for (const auto& y : t.objects)
      for (const auto& z : t.objects) {
        auto xy = t.homcat.find({x, y});
        auto yz = t.homcat.find({y, z});
        if (xy == t.homcat.end() || yz == t.homcat.end()) continue;
        for (const auto& f : xy->second.objects)
          for (const auto& g : yz->second.objects) {
            auto comp = t.hcomp1.find({g, f});
            if (comp != t.hcomp1.end())
              t.hcomp2.insert({{"2id_" + g, "2id_" + f}, "2id_" + comp->second});
          }
      }
  if (j.contains("hcomp2"))
    for (std::size_t i = 0; i < j["hcomp2"].size(); ++i) {
      const json& row = j["hcomp2"][i];
      if (!row.is_array() || row.size() != 3)
        throw InstanceError(where + "/hcomp2/" + std::to_string(i), "expected [b, a, ba]");
      t.hcomp2[{row[0].get<std::string>(), row[1].get<std::string>()}] =
          row[2].get<std::string>();
    }
  if (auto err = t.validate()) throw InstanceError(where, "invalid 2-category: " + *err);
  return t;
}

}  // namespace detail_instance

inline InstanceDocument instance_from_json(const json& j) {
  InstanceDocument doc;
  if (!j.is_object()) throw InstanceError("/", "instance must be an object");
  if (!j.contains("schema") || j["schema"] != kInstanceSchema)
    throw InstanceError("/schema", std::string("expected \"") + kInstanceSchema + "\"");
  if (!j.contains("base")) throw InstanceError("/base", "missing");
  doc.base = j["base"].get<std::string>();
  if (doc.base != "set" && doc.base != "twocat")
    throw InstanceError("/base", "must be \"set\" or \"twocat\"");

  if (j.contains("objects")) {
    for (const auto& [name, val] : j["objects"].items()) {
      FinSet s = finset_from_json(val, "/objects/" + name);
      detail_instance::check_atoms(s, "/objects/" + name);
      doc.objects[name] = std::move(s);
    }
  }
  if (j.contains("maps")) {
    for (const auto& [name, val] : j["maps"].items()) {
      std::string where = "/maps/" + name;
      if (!val.is_object()) throw InstanceError(where, "expected a map object");
      FinMap m = [&] {
        if (val.contains("dom") && val["dom"].is_string()) {
          // Named objects with a table.
          std::string dn = val["dom"].get<std::string>();
          std::string cn = val["cod"].is_string() ? val["cod"].get<std::string>() : "";
          if (doc.objects.find(dn) == doc.objects.end())
            throw InstanceError(where + "/dom", "unknown object '" + dn + "'");
          if (doc.objects.find(cn) == doc.objects.end())
            throw InstanceError(where + "/cod", "unknown object '" + cn + "'");
          std::map<Atom, Atom> assign;
          for (const auto& [a, b] : val["table"].items())
            assign[a] = b.get<std::string>();
          try {
            return FinMap::from_pairs(doc.objects.at(dn), doc.objects.at(cn), assign);
          } catch (const std::exception& ex) {
            throw InstanceError(where + "/table", ex.what());
          }
        }
        return finmap_from_json(val, where);
      }();
      doc.maps[name] = std::move(m);
    }
  }

  if (j.contains("profile")) {
    const json& p = j["profile"];
    if (p.is_string()) {
      auto builtin = builtin_profile(p.get<std::string>());
      if (!builtin)
        throw InstanceError("/profile", "unknown profile '" + p.get<std::string>() + "'");
      doc.profile = *builtin;
    } else if (p.is_object()) {
      doc.profile.name = p.value("name", "custom");
      if (!p.contains("J") || !p["J"].is_array())
        throw InstanceError("/profile", "inline profile needs array 'J' of map names");
      for (const auto& nm : p["J"]) {
        std::string n = nm.get<std::string>();
        if (doc.maps.find(n) == doc.maps.end())
          throw InstanceError("/profile/J", "unknown map '" + n + "'");
        doc.profile.generators.push_back(doc.maps.at(n));
      }
      if (doc.profile.generators.empty())
        throw InstanceError("/profile/J", "generator list must be nonempty");
    } else {
      throw InstanceError("/profile", "expected a name or an inline profile object");
    }
  } else if (doc.base == "set") {
    doc.profile = set_weak_profile();
  } else {
    doc.profile.name = "none";
  }

  if (j.contains("f")) doc.f_name = j["f"].get<std::string>();
  if (j.contains("k")) doc.k_name = j["k"].get<std::string>();
  if (j.contains("I")) {
    for (const auto& nm : j["I"]) {
      std::string n = nm.get<std::string>();
      if (doc.base == "set" && doc.maps.find(n) == doc.maps.end())
        throw InstanceError("/I", "unknown map '" + n + "'");
      doc.targets.push_back(n);
    }
  }
  if (j.contains("config")) {
    const json& c = j["config"];
    doc.config.stage_cap = c.value("stage_cap", doc.config.stage_cap);
    doc.config.inner_cap = c.value("inner_cap", doc.config.inner_cap);
    doc.config.check_before_stage =
        c.value("check_before_stage", doc.config.check_before_stage);
    doc.config.skip_solved = c.value("skip_solved", doc.config.skip_solved);
    doc.config.seed = c.value("seed", doc.config.seed);
    try {
      doc.config.validate();
    } catch (const std::exception& ex) {
      throw InstanceError("/config", ex.what());
    }
  }
  if (doc.base == "twocat") {
    if (!j.contains("twocat")) throw InstanceError("/twocat", "missing 2-category description");
    doc.twocat = detail_instance::twocat_from_json(j["twocat"], "/twocat");
  }
  if (doc.base == "set" && doc.f_name && doc.maps.find(*doc.f_name) == doc.maps.end())
    throw InstanceError("/f", "unknown map '" + *doc.f_name + "'");
  if (doc.base == "set" && doc.k_name && doc.maps.find(*doc.k_name) == doc.maps.end())
    throw InstanceError("/k", "unknown map '" + *doc.k_name + "'");
  return doc;
}

/// Serializes with sorted keys and a trailing newline; byte-stable.
inline std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

}  // namespace soa

#endif  // SOA_INSTANCE_HPP
