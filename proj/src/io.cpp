#include "glat/io.hpp"

#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include <json.hpp>

namespace glat {
namespace {

using nlohmann::json;

json pt_json(const Pt& p) {
  json a = json::array();
  for (const Int& x : p) {
    if (!x.fits_slong_p()) throw Error("io: degree coordinate out of range");
    a.push_back(x.get_si());
  }
  return a;
}

Pt json_pt(const json& a, int rank) {
  if (!a.is_array() || (int)a.size() != rank)
    throw Error("io: degree must be an array of length rank");
  Pt p(rank);
  for (int i = 0; i < rank; ++i) {
    if (!a[i].is_number_integer()) throw Error("io: degree coordinates must be integers");
    p[i] = Int(a[i].get<long>());
  }
  return p;
}

Scalar json_scalar(const json& v) {
  if (v.is_number_integer()) return Scalar(v.get<long>());
  if (v.is_string()) {
    auto s = Scalar::parse(v.get<std::string>());
    if (!s) throw Error("io: malformed coefficient \"" + v.get<std::string>() + "\"");
    return *s;
  }
  throw Error("io: coefficient must be a canonical string or an integer");
}

struct PairLess {
  bool operator()(const std::pair<Pt, Pt>& a, const std::pair<Pt, Pt>& b) const {
    PtLess lt;
    if (lt(a.first, b.first)) return true;
    if (lt(b.first, a.first)) return false;
    return lt(a.second, b.second);
  }
};

struct Table {
  std::map<std::pair<Pt, Pt>, Scalar, PairLess> c;
  std::set<Pt, PtLess> supp;
};

}  // namespace

std::string save_structure(const ScalarStructure& s, const Box& box) {
  json j;
  j["name"] = s.name;
  j["rank"] = s.rank;
  j["field"] = s.field == Field::Qi ? "Qi" : "Q";
  json mod = json::array();
  for (long m : s.moduli_or_free()) mod.push_back(m);
  j["moduli"] = mod;
  j["box"] = box.radius;

  // First degrees run over the doubled box: a radius-R verification sweep
  // evaluates c(a+b, nu) with a, b, nu in the box, so the emitted window must
  // cover sums on the left slot.
  Box outer{box.rank, 2 * box.radius};
  std::map<std::pair<Pt, Pt>, Scalar, PairLess> table;
  outer.each([&](const Pt& a) {
    if (!s.in_supp(a)) return;
    box.each([&](const Pt& b) {
      if (!s.in_supp(b)) return;
      std::pair<Pt, Pt> key{s.canon_pt(a), s.canon_pt(b)};
      if (table.count(key)) return;
      Scalar v = s.c(key.first, key.second);
      if (!v.is_zero()) table.emplace(std::move(key), std::move(v));
    });
  });
  json entries = json::array();
  for (const auto& [key, v] : table) {
    json e;
    e["lam"] = pt_json(key.first);
    e["mu"] = pt_json(key.second);
    e["c"] = v.str();
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j.dump(1);
}

void save_structure_file(const ScalarStructure& s, const Box& box,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("io: cannot write " + path);
  out << save_structure(s, box) << "\n";
}

ScalarStructure load_structure(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(std::string("io: invalid JSON: ") + e.what());
  }
  try {
    ScalarStructure s;
    if (!j.contains("rank") || !j["rank"].is_number_integer())
      throw Error("io: missing integer field \"rank\"");
    s.rank = j["rank"].get<int>();
    if (s.rank < 1 || s.rank > 16) throw Error("io: rank out of range");
    std::string f = j.value("field", std::string("Q"));
    if (f == "Q")
      s.field = Field::Q;
    else if (f == "Qi")
      s.field = Field::Qi;
    else
      throw Error("io: field must be \"Q\" or \"Qi\"");
    s.name = j.value("name", std::string("loaded"));
    if (j.contains("moduli")) {
      if (!j["moduli"].is_array() || (int)j["moduli"].size() != s.rank)
        throw Error("io: moduli must be an array of length rank");
      for (const auto& m : j["moduli"]) {
        if (!m.is_number_integer() || m.get<long>() < 0)
          throw Error("io: moduli must be non-negative integers");
        s.moduli.push_back(m.get<long>());
      }
    }

    auto table = std::make_shared<Table>();
    table->supp.insert(pt_zero(s.rank));
    const auto mods = s.moduli_or_free();
    if (j.contains("entries")) {
      if (!j["entries"].is_array()) throw Error("io: entries must be an array");
      for (const auto& e : j["entries"]) {
        Pt lam = canon(json_pt(e.at("lam"), s.rank), mods);
        Pt mu = canon(json_pt(e.at("mu"), s.rank), mods);
        Scalar v = json_scalar(e.at("c"));
        if (v.is_zero()) continue;
        auto [it, inserted] = table->c.emplace(std::make_pair(lam, mu), v);
        if (!inserted && it->second != v)
          throw Error("io: conflicting duplicate entry at " + pt_str(lam) + "," +
                      pt_str(mu));
        table->supp.insert(lam);
        table->supp.insert(mu);
      }
    }
    s.c = [table, mods](const Pt& a, const Pt& b) -> Scalar {
      auto it = table->c.find({canon(a, mods), canon(b, mods)});
      return it == table->c.end() ? Scalar(0) : it->second;
    };
    s.supp = [table, mods](const Pt& p) { return table->supp.count(canon(p, mods)) > 0; };
    return s;
  } catch (const json::exception& e) {
    throw Error(std::string("io: invalid structure JSON: ") + e.what());
  }
}

ScalarStructure load_structure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io: cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_structure(buf.str());
}

}  // namespace glat
