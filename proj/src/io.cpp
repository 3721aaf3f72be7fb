// Copyright 2026 The patchpeps Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "patchpeps/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "patchpeps/errors.hpp"

namespace patchpeps {

namespace {

void dump_scalar(const Json& v, std::string& out) {
  if (v.is_number_float()) {
    const double x = v.get<double>();
    // "-0" would parse back as the integer 0 and lose the sign.
    if (x == 0.0 && std::signbit(x)) {
      out += "-0.0";
      return;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out += buf;
  } else {
    out += v.dump();
  }
}

bool is_flat(const Json& v, int depth) {
  if (v.is_object()) return false;
  if (!v.is_array()) return true;
  if (depth == 0) return false;
  for (const auto& e : v)
    if (!is_flat(e, depth - 1)) return false;
  return true;
}

void dump_value(const Json& v, std::string& out, int indent) {
  const std::string pad(std::size_t(indent) * 2, ' ');
  const std::string inner(std::size_t(indent + 1) * 2, ' ');
  if (v.is_object()) {
    if (v.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += inner + Json(it.key()).dump() + ": ";
      dump_value(it.value(), out, indent + 1);
    }
    out += "\n" + pad + "}";
  } else if (v.is_array()) {
    if (is_flat(v, 2)) {
      out += "[";
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) out += ", ";
        dump_value(v[k], out, indent + 1);
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k) out += ",\n";
      out += inner;
      dump_value(v[k], out, indent + 1);
    }
    out += "\n" + pad + "]";
  } else {
    dump_scalar(v, out);
  }
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed document: ") + e.what());
  }
}

const Json& child(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return doc.at(key);
}

template <typename T>
T field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const Json::exception&) {
    throw FormatError(std::string("field '") + key + "' has the wrong type");
  }
}

Json complex_array(const Tensor& t) {
  Json data = Json::array();
  for (Complex z : t.data()) data.push_back(Json::array({z.real(), z.imag()}));
  return data;
}

std::vector<Complex> complex_values(const Json& data, std::size_t expected, const std::string& what) {
  if (!data.is_array() || data.size() != expected)
    throw FormatError(what + ": expected " + std::to_string(expected) + " entries");
  std::vector<Complex> out;
  out.reserve(expected);
  for (const auto& pair : data) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      throw FormatError(what + ": entries must be [re, im] number pairs");
    out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return out;
}

Json coord_json(const Coord& c) { return Json(c.c); }

Coord coord_from(const Json& j) {
  try {
    return Coord{j.get<std::vector<int>>()};
  } catch (const Json::exception&) {
    throw FormatError("site coordinates must be integer arrays");
  }
}

}  // namespace

std::string dump_json(const Json& doc) {
  std::string out;
  dump_value(doc, out, 0);
  out += "\n";
  return out;
}

Json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json json_complex(Complex z) { return Json{{"re", json_number(z.real())}, {"im", json_number(z.imag())}}; }

Json peps_to_json(const PepsState& peps) {
  Json doc;
  doc["format_version"] = 1;
  doc["lattice"] = {{"dimension", peps.lattice().dimension()}, {"extents", peps.lattice().extents()}};
  doc["phys_dim"] = peps.phys_dim();
  doc["bond_dim"] = peps.bond_dim();
  Json tensors = Json::array();
  for (SiteIndex s = 0; s < peps.num_sites(); ++s) {
    const Tensor& t = peps.tensor(s);
    tensors.push_back(
        {{"site", coord_json(peps.lattice().coord(s))}, {"shape", t.shape()}, {"data", complex_array(t)}});
  }
  doc["tensors"] = std::move(tensors);
  return doc;
}

PepsState peps_from_json(const Json& doc) {
  if (field<int>(doc, "format_version") != 1) throw FormatError("unsupported format_version");
  const Json& lat = child(doc, "lattice");
  const auto dimension = field<std::size_t>(lat, "dimension");
  const auto extents = field<std::vector<int>>(lat, "extents");
  if (extents.size() != dimension) throw FormatError("lattice extents do not match the dimension");
  for (int e : extents)
    if (e < 1) throw FormatError("lattice extents must be positive");
  Lattice lattice(extents);
  const auto phys_dim = field<std::size_t>(doc, "phys_dim");
  const auto bond_dim = field<std::size_t>(doc, "bond_dim");
  const Json& list = child(doc, "tensors");
  if (!list.is_array()) throw FormatError("'tensors' must be an array");

  std::vector<std::optional<Tensor>> slots(lattice.num_sites());
  for (const auto& entry : list) {
    const Coord c = coord_from(child(entry, "site"));
    if (!lattice.contains(c)) throw FormatError("tensor site " + to_string(c) + " is outside the lattice");
    const SiteIndex s = lattice.index(c);
    if (slots[s]) throw FormatError("site " + to_string(c) + " appears twice");
    const auto shape = field<Shape>(entry, "shape");
    for (std::size_t e : shape)
      if (e == 0) throw FormatError("tensor extents must be positive");
    const std::size_t volume = shape_volume(shape);
    slots[s] = Tensor(shape, complex_values(child(entry, "data"), volume, "tensor at " + to_string(c)));
  }
  std::vector<Tensor> tensors;
  for (SiteIndex s = 0; s < slots.size(); ++s) {
    if (!slots[s]) throw FormatError("no tensor for site " + to_string(lattice.coord(s)));
    tensors.push_back(std::move(*slots[s]));
  }
  return PepsState(std::move(lattice), phys_dim, bond_dim, std::move(tensors));
}

Json observable_to_json(const Observable& obs) {
  Json sites = Json::array();
  for (const Coord& c : obs.sites()) sites.push_back(coord_json(c));
  return Json{{"sites", sites}, {"dim", obs.dim()}, {"matrix", complex_array(obs.matrix())}};
}

Observable observable_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("sites") || !doc.at("sites").is_array())
    throw FormatError("observable needs a 'sites' array");
  std::vector<Coord> sites;
  for (const auto& s : doc.at("sites")) sites.push_back(coord_from(s));
  const auto dim = field<std::size_t>(doc, "dim");
  if (dim == 0) throw FormatError("observable dim must be positive");
  Tensor m(Shape{dim, dim}, complex_values(child(doc, "matrix"), dim * dim, "matrix"));
  return Observable(std::move(sites), std::move(m));
}

std::string write_peps(const PepsState& peps) { return dump_json(peps_to_json(peps)); }
PepsState read_peps(const std::string& text) { return peps_from_json(parse(text)); }
std::string write_observable(const Observable& obs) { return dump_json(observable_to_json(obs)); }
Observable read_observable(const std::string& text) { return observable_from_json(parse(text)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ArgumentError("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw ArgumentError("failed writing '" + path + "'");
}

}  // namespace patchpeps
