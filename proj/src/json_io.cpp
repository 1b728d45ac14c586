#include "mmcbrace/json_io.hpp"

#include <fstream>
#include <sstream>

#include "mmcbrace/errors.hpp"

namespace mmc {

namespace {

template <typename F>
auto parsing(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ParseError(what + ": " + e.what());
  }
}

}  // namespace

Json to_json(const GroupShape& shape) { return shape.to_string(); }

Json to_json(const GroupElement& x) {
  Json out = Json::array();
  for (int i = 0; i < x.shape().rank(); ++i) out.push_back(x.coord(i));
  return out;
}

Json to_json(const AutMatrix& a) { return a.endo().row_major(); }

Json to_json(const HolElement& g) { return Json{{"aut", to_json(g.aut())}, {"trans", to_json(g.trans())}}; }

Json to_json(const BraceTable& t) {
  return Json{{"add", t.add_table()}, {"circ", t.circ_table()}, {"size", t.size()}};
}

Json to_json(const Cocycle& c) {
  return Json{{"S", to_json(c.S())},           {"T", to_json(c.T())},
              {"family", c.family().to_string()}, {"gamma_a", to_json(c.gamma_a())},
              {"gamma_b", to_json(c.gamma_b())},  {"shape", to_json(c.shape())}};
}

Json to_json(const CensusRecord& r) {
  return Json{{"X", to_json(r.X)},
              {"Y", to_json(r.Y)},
              {"iso_class_id", r.iso_class_id},
              {"m", r.m},
              {"shape", to_json(r.shape)},
              {"socle_desc", r.socle_desc},
              {"subgroup_key", r.subgroup_key}};
}

Json to_json(const Census& c) {
  Json records = Json::array();
  for (const auto& r : c.records) records.push_back(to_json(r));
  Json classes = Json::array();
  for (const auto& k : c.iso_classes) {
    classes.push_back(Json{{"id", k.id}, {"representative", k.representative}, {"size", k.size}});
  }
  return Json{{"iso_classes", classes}, {"m", c.m}, {"records", records}, {"shape", to_json(c.shape)}};
}

GroupShape shape_from_json(const Json& j) {
  return parsing("shape", [&] { return GroupShape::parse(j.get<std::string>()); });
}

GroupElement element_from_json(const GroupShape& shape, const Json& j) {
  return parsing("group element", [&] {
    auto coords = j.get<std::vector<Residue>>();
    if (static_cast<int>(coords.size()) != shape.rank()) {
      throw ParseError("element " + j.dump() + " does not fit " + shape.to_string());
    }
    return GroupElement(shape, coords);
  });
}

AutMatrix aut_from_json(const GroupShape& shape, const Json& j) {
  return parsing("matrix", [&] {
    auto raw = j.get<std::vector<Residue>>();
    if (raw.size() != static_cast<std::size_t>(shape.rank() * shape.rank())) {
      throw ParseError("matrix " + j.dump() + " does not fit " + shape.to_string());
    }
    return AutMatrix(EndoMatrix::canonicalize_row_major(shape, raw));
  });
}

HolElement hol_from_json(const GroupShape& shape, const Json& j) {
  return parsing("holomorph element", [&] {
    return HolElement(aut_from_json(shape, j.at("aut")), element_from_json(shape, j.at("trans")));
  });
}

BraceTable brace_from_json(const Json& j) {
  return parsing("brace", [&] {
    return BraceTable(j.at("size").get<std::uint32_t>(), j.at("add").get<std::vector<Label>>(),
                      j.at("circ").get<std::vector<Label>>());
  });
}

Cocycle cocycle_from_json(const Json& j) {
  return parsing("cocycle", [&] {
    auto fam = TwoGroupFamily::parse(j.at("family").get<std::string>());
    auto shape = shape_from_json(j.at("shape"));
    return cocycle_extend(fam, shape, aut_from_json(shape, j.at("S")), aut_from_json(shape, j.at("T")),
                          element_from_json(shape, j.at("gamma_a")),
                          element_from_json(shape, j.at("gamma_b")));
  });
}

Census census_from_json(const Json& j) {
  return parsing("census", [&] {
    Census c{j.at("m").get<int>(), shape_from_json(j.at("shape")), {}, {}, true};
    for (const auto& rj : j.at("records")) {
      CensusRecord r = make_record(rj.at("m").get<int>(), hol_from_json(c.shape, rj.at("X")),
                                   hol_from_json(c.shape, rj.at("Y")));
      if (r.m != c.m || !(shape_from_json(rj.at("shape")) == c.shape)) {
        throw ParseError("record does not match the census m and shape");
      }
      if (r.subgroup_key != rj.at("subgroup_key").get<std::string>()) {
        throw ParseError("stored key " + rj.at("subgroup_key").dump() + " differs from rebuilt " +
                         r.subgroup_key);
      }
      if (r.socle_desc != rj.at("socle_desc").get<std::string>()) {
        throw ParseError("stored socle " + rj.at("socle_desc").dump() + " differs from rebuilt " +
                         r.socle_desc);
      }
      r.iso_class_id = rj.at("iso_class_id").get<int>();
      c.records.push_back(std::move(r));
    }
    for (std::size_t i = 1; i < c.records.size(); ++i) {
      if (!(c.records[i - 1].subgroup_key < c.records[i].subgroup_key)) {
        throw ParseError("records are not sorted by subgroup_key");
      }
    }
    for (const auto& kj : j.at("iso_classes")) {
      c.iso_classes.push_back(
          {kj.at("id").get<int>(), kj.at("size").get<std::size_t>(), kj.at("representative").get<std::string>()});
    }
    std::vector<std::size_t> sizes(c.iso_classes.size(), 0);
    for (const auto& r : c.records) {
      if (r.iso_class_id < 0 || static_cast<std::size_t>(r.iso_class_id) >= sizes.size()) {
        throw ParseError("record " + r.subgroup_key + " has an unknown class id");
      }
      ++sizes[static_cast<std::size_t>(r.iso_class_id)];
    }
    for (std::size_t k = 0; k < c.iso_classes.size(); ++k) {
      const auto& cls = c.iso_classes[k];
      if (cls.id != static_cast<int>(k) || cls.size != sizes[k] ||
          c.record(cls.representative).iso_class_id != cls.id) {
        throw ParseError("iso class " + std::to_string(k) + " is inconsistent with its records");
      }
    }
    return c;
  });
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << dump_json(j);
  if (!out) throw IoError("failed writing " + path);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parsing(path, [&] { return Json::parse(buf.str()); });
}

void export_census(const Census& c, const std::string& path) { write_json_file(path, to_json(c)); }

Census import_census(const std::string& path) { return census_from_json(read_json_file(path)); }

}  // namespace mmc
