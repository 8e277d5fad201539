#pragma once

// JSON encodings of the domain objects. Emitted forms are canonical: rationals
// in lowest terms, balls closed with digit-reduced centers, cheeses normalized.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mvf/approx.hpp"
#include "mvf/balls.hpp"
#include "mvf/boundedness.hpp"
#include "mvf/error.hpp"
#include "mvf/lattices.hpp"
#include "mvf/matrix.hpp"
#include "mvf/rational.hpp"
#include "mvf/valued_field.hpp"

namespace mvf::io {

using json = nlohmann::json;

[[noreturn]] inline void schema_error(const std::string& what) {
  throw Error(ErrorCode::ParseError, what);
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::int64_t to_int(const json& j, const char* what) {
  if (!j.is_number_integer()) schema_error(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

// ---- rationals ----

inline json to_json(const Rat& r) { return r.str(); }

inline Rat rat_from_json(const json& j) {
  if (j.is_string()) return Rat::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rat(BigInt(j.dump()));
  schema_error("rational must be a string \"a/b\" or an integer");
}

inline json to_json(const RatVector& v) {
  json out = json::array();
  for (const Rat& r : v) out.push_back(to_json(r));
  return out;
}

inline RatVector vector_from_json(const json& j) {
  if (!j.is_array()) schema_error("vector must be an array of rationals");
  RatVector v;
  for (const json& e : j) v.push_back(rat_from_json(e));
  return v;
}

// ---- places ----

inline json to_json(const Place& p) {
  if (p.prime().fits_slong_p()) return p.prime().get_si();
  return p.prime().get_str();
}

inline Place place_from_json(const json& j) {
  if (j.is_number_integer()) return Place(BigInt(j.dump()));
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      schema_error("place must be a positive integer");
    }
    return Place(BigInt(s));
  }
  schema_error("place must be a positive integer");
}

/// "place" from the object if present, otherwise the fallback.
inline Place place_of(const json& j, const std::optional<Place>& fallback) {
  if (j.is_object() && j.contains("place")) return place_from_json(j.at("place"));
  if (fallback) return *fallback;
  schema_error("no place given (use a \"place\" field or -p)");
}

// ---- balls and cheeses ----

inline json to_json(const Ball& b) {
  return json{{"place", to_json(b.place())},
              {"center", to_json(b.center())},
              {"radius", b.radius()},
              {"closed", true}};
}

inline Ball ball_from_json(const json& j, const std::optional<Place>& fallback = std::nullopt) {
  const Place P = place_of(j, fallback);
  const Rat c = rat_from_json(field(j, "center"));
  const std::int64_t r = to_int(field(j, "radius"), "radius");
  bool closed = true;
  if (j.contains("closed")) {
    if (!j.at("closed").is_boolean()) schema_error("'closed' must be a boolean");
    closed = j.at("closed").get<bool>();
  }
  return closed ? Ball::closed(P, c, r) : Ball::open(P, c, r);
}

inline std::vector<Ball> balls_from_json(const json& j, const std::optional<Place>& fallback) {
  if (!j.is_array()) schema_error("expected an array of balls");
  std::vector<Ball> out;
  for (const json& e : j) out.push_back(ball_from_json(e, fallback));
  return out;
}

inline json to_json(const SwissCheese& sc) {
  if (sc.is_empty_form()) return json{{"empty", true}, {"place", to_json(sc.place())}};
  json holes = json::array();
  for (const Ball& h : sc.holes()) holes.push_back(to_json(h));
  return json{{"outer", to_json(sc.outer())}, {"holes", holes}};
}

inline SwissCheese cheese_from_json(const json& j, const std::optional<Place>& fallback = std::nullopt) {
  if (j.is_object() && j.contains("empty")) {
    if (j.at("empty") != true) schema_error("'empty' must be true when present");
    return SwissCheese::empty(place_of(j, fallback));
  }
  const Ball outer = ball_from_json(field(j, "outer"), fallback);
  std::vector<Ball> holes;
  if (j.contains("holes")) holes = balls_from_json(j.at("holes"), outer.place());
  return SwissCheese(outer, std::move(holes));
}

// ---- matrices, lattices, torsors ----

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) schema_error("matrix must be a nonempty array of rows");
  const std::size_t n = j.size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) schema_error("matrix must be square");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = rat_from_json(j[i][k]);
  }
  return m;
}

inline json to_json(const LatticeClass& s) {
  return json{{"place", to_json(s.place())}, {"dim", s.dim()}, {"rep", to_json(s.rep())}};
}

/// Any representative is accepted; the class is canonicalized on read.
inline LatticeClass lattice_from_json(const json& j, const std::optional<Place>& fallback = std::nullopt) {
  const Place P = place_of(j, fallback);
  const Matrix m = matrix_from_json(field(j, "rep"));
  if (j.contains("dim") && to_int(j.at("dim"), "dim") != static_cast<std::int64_t>(m.rows())) {
    schema_error("'dim' disagrees with the representative");
  }
  return canon(m, P);
}

inline json to_json(const TorsorElement& t) {
  json res = json::array();
  for (const BigInt& r : t.residue()) {
    res.push_back(r.fits_slong_p() ? json(r.get_si()) : json(r.get_str()));
  }
  return json{{"lat", to_json(t.lat())}, {"residue", res}};
}

inline TorsorElement torsor_from_json(const json& j, const std::optional<Place>& fallback = std::nullopt) {
  LatticeClass s = lattice_from_json(field(j, "lat"), fallback);
  const json& rj = field(j, "residue");
  if (!rj.is_array()) schema_error("residue must be an array of integers");
  std::vector<BigInt> res;
  for (const json& e : rj) {
    if (e.is_number_integer()) res.emplace_back(e.dump());
    else if (e.is_string()) res.push_back(Rat::parse(e.get<std::string>()).num());
    else schema_error("residue entries must be integers");
  }
  return TorsorElement(std::move(s), std::move(res));
}

// ---- finite-field polynomials ----

inline json to_json(const FFPoly& f) {
  return json{{"p", f.characteristic()}, {"coeffs", f.coeffs()}};
}

inline std::vector<std::int64_t> coeffs_from_json(const json& j) {
  if (!j.is_array()) schema_error("coeffs must be an array of integers");
  std::vector<std::int64_t> c;
  for (const json& e : j) c.push_back(to_int(e, "coefficient"));
  return c;
}

inline FFPoly poly_from_json(const json& j, std::optional<std::uint64_t> fallback_p = std::nullopt) {
  std::uint64_t p = 0;
  if (j.is_object() && j.contains("p")) {
    const std::int64_t v = to_int(j.at("p"), "p");
    if (v < 2) schema_error("p must be a prime");
    p = static_cast<std::uint64_t>(v);
  } else if (fallback_p) {
    p = *fallback_p;
  } else {
    schema_error("polynomial needs a characteristic 'p'");
  }
  const json& c = j.is_array() ? j : field(j, "coeffs");
  return FFPoly::from_signed(p, coeffs_from_json(c));
}

inline BoundednessSpec bspec_from_json(const json& j) {
  const std::int64_t pv = to_int(field(j, "p"), "p");
  if (pv < 2) schema_error("p must be a prime");
  const auto p = static_cast<std::uint64_t>(pv);
  auto key = [](const std::string& k) -> std::uint64_t {
    if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos) {
      schema_error("degree keys must be positive integers");
    }
    return std::stoull(k);
  };
  std::map<std::uint64_t, std::uint64_t> dmap;
  const json& dm = field(j, "degree_map");
  if (!dm.is_object()) schema_error("degree_map must be an object");
  for (auto it = dm.begin(); it != dm.end(); ++it) {
    const std::int64_t d = to_int(it.value(), "degree");
    if (d < 1) schema_error("degrees must be positive");
    dmap[key(it.key())] = static_cast<std::uint64_t>(d);
  }
  std::map<std::uint64_t, FFPoly> rs;
  const json& rp = field(j, "r_polys");
  if (!rp.is_object()) schema_error("r_polys must be an object");
  for (auto it = rp.begin(); it != rp.end(); ++it) {
    rs.emplace(key(it.key()), poly_from_json(it.value(), p));
  }
  return BoundednessSpec(p, std::move(dmap), std::move(rs));
}

inline json to_json(const TbdReport& r) {
  json cands = json::array();
  for (const auto& c : r.candidates) {
    cands.push_back(json{{"poly", to_json(c.candidate)}, {"splits", c.splits}});
  }
  return json{{"m", r.m}, {"r_irreducible", r.r_irreducible}, {"candidates", cands}, {"pass", r.pass}};
}

}  // namespace mvf::io
