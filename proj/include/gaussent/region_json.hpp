// Copyright 2026 The gaussent Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAUSSENT_REGION_JSON_HPP
#define GAUSSENT_REGION_JSON_HPP

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "closed_form.hpp"
#include "errors.hpp"
#include "lattice.hpp"

namespace gaussent {

using json = nlohmann::json;

/// What the closed-form module knows about a partition, if anything.
struct RegionShape {
  Geometry geometry = Geometry::SingleSite;
  int nx = 1;
  int ny = 1;
};

struct PairShape {
  PairGeometry geometry = PairGeometry::Parallel;
  int n = 1;
  int depth = 1;
  int separation = 0;
};

/// A named region (complementary cut) or region pair, with the descriptor it came from.
struct Partition {
  std::string id;
  json descriptor;
  std::variant<Region, RegionPair> value;
  std::optional<RegionShape> region_shape;
  std::optional<PairShape> pair_shape;

  bool is_pair() const { return std::holds_alternative<RegionPair>(value); }
  const Region& region() const { return std::get<Region>(value); }
  const RegionPair& pair() const { return std::get<RegionPair>(value); }
};

namespace detail {

inline int get_int(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("region descriptor is missing \"") + key + "\"");
  if (!j.at(key).is_number_integer()) throw ConfigError(std::string("\"") + key + "\" must be an integer");
  return j.at(key).get<int>();
}

inline int get_int_or(const json& j, const char* key, int fallback) {
  return j.contains(key) ? get_int(j, key) : fallback;
}

inline PairGeometry parse_pair_geometry(const json& j) {
  const std::string g = j.value("geometry", "parallel");
  if (g == "parallel") return PairGeometry::Parallel;
  if (g == "tilted") return PairGeometry::Tilted;
  throw ConfigError("unknown pair geometry \"" + g + "\"");
}

}  // namespace detail

/// Single region from {"kind": site | rect | tilted | checkerboard | sites | range, ...}.
inline Region region_from_json(const json& j, const Lattice2D& lat, std::optional<RegionShape>* shape = nullptr) {
  if (!j.is_object() || !j.contains("kind")) throw ConfigError("region descriptor needs a \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  std::optional<RegionShape> sh;
  Region r;
  if (kind == "site") {
    r = single_site(lat, detail::get_int(j, "x"), detail::get_int(j, "y"));
    sh = RegionShape{Geometry::SingleSite, 1, 1};
  } else if (kind == "rect") {
    const int w = detail::get_int(j, "width");
    const int h = detail::get_int(j, "height");
    r = rect_block(lat, detail::get_int(j, "x0"), detail::get_int(j, "y0"), w, h);
    sh = RegionShape{Geometry::ParallelBlock, w, h};
  } else if (kind == "tilted") {
    const int n = detail::get_int(j, "n");
    r = tilted_block(lat, detail::get_int(j, "cx"), detail::get_int(j, "cy"), n);
    sh = RegionShape{Geometry::TiltedBlock, n, n};
  } else if (kind == "checkerboard") {
    r = checkerboard(lat, detail::get_int_or(j, "parity", 0));
    sh = RegionShape{Geometry::Checkerboard, lat.nx, lat.ny};
  } else if (kind == "sites") {
    if (!j.contains("sites") || !j.at("sites").is_array()) throw ConfigError("\"sites\" must be an array");
    r = Region(j.at("sites").get<IndexList>(), lat.size());
  } else if (kind == "range") {
    const int first = detail::get_int_or(j, "first", 0);
    const int count = detail::get_int(j, "count");
    IndexList s;
    for (int i = first; i < first + count; ++i) s.push_back(i);
    r = Region(std::move(s), lat.size());
  } else {
    throw ConfigError("unknown region kind \"" + kind + "\"");
  }
  if (shape) *shape = sh;
  return r;
}

/// Explicit descriptor for any region.
inline json to_json(const Region& r) { return json{{"kind", "sites"}, {"sites", r.sites()}}; }

inline json to_json(const RegionPair& p) {
  return json{{"kind", "pair"}, {"b", to_json(p.b)}, {"c", to_json(p.c)}};
}

/// Region or pair from a partition descriptor; pairs are block_pair, line_pair or
/// {"kind": "pair", "b": region, "c": region}.
inline Partition partition_from_json(const json& j, const Lattice2D& lat, const std::string& fallback_id) {
  Partition p;
  p.id = j.value("id", fallback_id);
  p.descriptor = j;
  const std::string kind = j.value("kind", "");
  if (kind == "block_pair" || kind == "line_pair") {
    PairShape s;
    s.geometry = detail::parse_pair_geometry(j);
    s.n = detail::get_int(j, "n");
    s.depth = kind == "line_pair" ? 1 : detail::get_int_or(j, "depth", s.n);
    s.separation = detail::get_int_or(j, "separation", 0);
    p.value = block_pair(lat, s.geometry, s.n, s.depth, s.separation);
    p.pair_shape = s;
  } else if (kind == "pair") {
    if (!j.contains("b") || !j.contains("c")) throw ConfigError("pair descriptor needs \"b\" and \"c\"");
    RegionPair rp{region_from_json(j.at("b"), lat), region_from_json(j.at("c"), lat)};
    if (!disjoint(rp.b.span(), rp.c.span())) throw OverlappingRegions("pair \"" + p.id + "\" overlaps");
    p.value = std::move(rp);
  } else {
    std::optional<RegionShape> shape;
    p.value = region_from_json(j, lat, &shape);
    p.region_shape = shape;
  }
  return p;
}

}  // namespace gaussent

#endif  // GAUSSENT_REGION_JSON_HPP
