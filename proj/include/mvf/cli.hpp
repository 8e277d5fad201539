#pragma once

// Verb dispatch for the mvf command-line tool. Kept in a header so the test
// suites can drive it in-process.

#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mvf/approx.hpp"
#include "mvf/balls.hpp"
#include "mvf/boundedness.hpp"
#include "mvf/error.hpp"
#include "mvf/json_io.hpp"
#include "mvf/lattices.hpp"
#include "mvf/valued_field.hpp"

namespace mvf::cli {

using json = nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitSemantic = 1;
inline constexpr int kExitParse = 2;

struct Invocation {
  std::optional<Place> place;
  std::vector<std::string> operands;  // raw positional operands after the verb
  json args;                          // the parsed argument document
};

using Handler = std::function<json(const Invocation&)>;

namespace detail {

using io::schema_error;

inline const json& array_arg(const json& j, const char* what) {
  if (!j.is_array()) schema_error(std::string(what) + " must be an array");
  return j;
}

inline std::vector<LatticeClass> lattices(const json& j, const std::optional<Place>& p) {
  std::vector<LatticeClass> out;
  for (const json& e : array_arg(j, "classes")) out.push_back(io::lattice_from_json(e, p));
  return out;
}

inline std::vector<TorsorElement> torsors(const json& j, const std::optional<Place>& p) {
  std::vector<TorsorElement> out;
  for (const json& e : array_arg(j, "torsors")) out.push_back(io::torsor_from_json(e, p));
  return out;
}

inline std::pair<Ball, Ball> two_balls(const Invocation& inv) {
  const auto bs = io::balls_from_json(array_arg(inv.args, "ball pair"), inv.place);
  if (bs.size() != 2) schema_error("expected exactly two balls");
  return {bs[0], bs[1]};
}

// Approximation problem files: {"places": [...], "constraints": {place: cheese
// | {coordinate: cheese}}}. Returns the problem and, for the coordinate-keyed
// form, the dimension.
inline std::pair<ApproxProblem, std::optional<std::size_t>> problem_from_json(const json& j) {
  const json& places = array_arg(io::field(j, "places"), "places");
  const json& cons = io::field(j, "constraints");
  if (!cons.is_object()) schema_error("constraints must be an object keyed by place");
  std::vector<PlaceConstraint> pcs;
  std::optional<std::size_t> dim;
  bool scalar_form = false;
  for (const json& pj : places) {
    const Place P = io::place_from_json(pj);
    const std::string key = P.prime().get_str();
    if (!cons.contains(key)) schema_error("no constraint for place " + key);
    const json& c = cons.at(key);
    PlaceConstraint pc{P, {}};
    if (c.contains("outer") || c.contains("empty")) {
      scalar_form = true;
      pc.coords.push_back(io::cheese_from_json(c, P));
    } else {
      if (!c.is_object()) schema_error("constraint for place " + key + " must be an object");
      const std::size_t k = c.size();
      if (dim && *dim != k) throw Error(ErrorCode::DimensionMismatch, "coordinate counts differ");
      dim = k;
      for (std::size_t i = 0; i < k; ++i) {
        const std::string ck = std::to_string(i);
        if (!c.contains(ck)) schema_error("coordinates must be keyed 0.." + std::to_string(k - 1));
        pc.coords.push_back(io::cheese_from_json(c.at(ck), P));
      }
    }
    pcs.push_back(std::move(pc));
  }
  if (scalar_form && dim) schema_error("mixed scalar and coordinate-keyed constraints");
  ApproxProblem problem(std::move(pcs));
  if (cons.size() != places.size()) schema_error("constraints name a place outside 'places'");
  return {std::move(problem), dim};
}

inline json ff_verdict(const Invocation& inv, const char* key, bool (*test)(const FFPoly&)) {
  return json{{key, test(io::poly_from_json(inv.args))}};
}

}  // namespace detail

/// Verb path ("ball dist", "val", ...) -> handler.
inline const std::map<std::string, Handler>& verbs() {
  using namespace detail;
  static const std::map<std::string, Handler> table = {
      {"val",
       [](const Invocation& inv) {
         const ExtInt v = val(io::rat_from_json(inv.args), io::place_of(json::object(), inv.place));
         return json{{"val", v.is_finite() ? json(v.value()) : json("inf")}};
       }},
      {"residue",
       [](const Invocation& inv) {
         const BigInt r = residue(io::rat_from_json(inv.args), io::place_of(json::object(), inv.place));
         return json{{"residue", r.fits_slong_p() ? json(r.get_si()) : json(r.get_str())}};
       }},
      {"code",
       [](const Invocation& inv) {
         const RatVector pts = io::vector_from_json(inv.args.is_array() ? inv.args : json::array({inv.args}));
         for (std::size_t i = 0; i < pts.size(); ++i)
           for (std::size_t j = i + 1; j < pts.size(); ++j)
             if (pts[i] == pts[j]) schema_error("points must be pairwise distinct");
         return json{{"coeffs", io::to_json(code_finite_set(pts))}};
       }},
      {"ball member",
       [](const Invocation& inv) {
         const Ball b = io::ball_from_json(io::field(inv.args, "ball"), inv.place);
         return json{{"member", member(io::rat_from_json(io::field(inv.args, "x")), b)}};
       }},
      {"ball compare",
       [](const Invocation& inv) {
         const auto [a, b] = two_balls(inv);
         return json{{"relation", std::string(to_string(compare(a, b)))}};
       }},
      {"ball dist",
       [](const Invocation& inv) {
         const auto [a, b] = two_balls(inv);
         return json{{"dist", dist(a, b)}};
       }},
      {"ball cover",
       [](const Invocation& inv) {
         const auto bs = io::balls_from_json(inv.args, inv.place);
         return json{{"cover", io::to_json(min_closed_cover(bs))}};
       }},
      {"sc normalize",
       [](const Invocation& inv) {
         return json{{"cheese", io::to_json(sc_normalize(io::cheese_from_json(inv.args, inv.place)))}};
       }},
      {"sc member",
       [](const Invocation& inv) {
         const SwissCheese sc = io::cheese_from_json(io::field(inv.args, "cheese"), inv.place);
         return json{{"member", sc_member(io::rat_from_json(io::field(inv.args, "x")), sc)}};
       }},
      {"sc empty",
       [](const Invocation& inv) {
         return json{{"empty", sc_is_empty(io::cheese_from_json(inv.args, inv.place))}};
       }},
      {"sc generic",
       [](const Invocation& inv) {
         const BallChain chain(io::balls_from_json(io::field(inv.args, "chain"), inv.place));
         std::vector<Ball> avoid;
         if (inv.args.contains("avoid")) avoid = io::balls_from_json(inv.args.at("avoid"), inv.place);
         return json{{"point", io::to_json(generic_point(chain, avoid))}};
       }},
      {"lat canon",
       [](const Invocation& inv) {
         const Place P = io::place_of(inv.args, inv.place);
         return json{{"lat", io::to_json(canon(io::matrix_from_json(io::field(inv.args, "matrix")), P))}};
       }},
      {"lat eq",
       [](const Invocation& inv) {
         const Place P = io::place_of(inv.args, inv.place);
         const Matrix a = io::matrix_from_json(io::field(inv.args, "a"));
         const Matrix b = io::matrix_from_json(io::field(inv.args, "b"));
         if (det(a).is_zero()) throw Error(ErrorCode::Singular, "first matrix is singular");
         return json{{"equal", lat_eq(a, b, P)}};
       }},
      {"lat member",
       [](const Invocation& inv) {
         const LatticeClass s = io::lattice_from_json(io::field(inv.args, "lat"), inv.place);
         return json{{"member", lattice_member(io::vector_from_json(io::field(inv.args, "x")), s)}};
       }},
      {"lat nbhd",
       [](const Invocation& inv) {
         json rows = json::array();
         for (const auto& row : open_neighborhood(io::lattice_from_json(inv.args, inv.place))) {
           json r = json::array();
           for (const Ball& b : row) r.push_back(io::to_json(b));
           rows.push_back(r);
         }
         return json{{"balls", rows}};
       }},
      {"tor make",
       [](const Invocation& inv) {
         const Place P = io::place_of(inv.args, inv.place);
         return json{{"torsor", io::to_json(t_m(io::matrix_from_json(io::field(inv.args, "matrix")), P))}};
       }},
      {"tor eq",
       [](const Invocation& inv) {
         const TorsorElement a = io::torsor_from_json(io::field(inv.args, "a"), inv.place);
         const TorsorElement b = io::torsor_from_json(io::field(inv.args, "b"), inv.place);
         return json{{"equal", torsor_eq(a, b)}};
       }},
      {"tor embed",
       [](const Invocation& inv) {
         return json{{"torsor", io::to_json(embed_S_in_T(io::lattice_from_json(inv.args, inv.place)))}};
       }},
      {"tor combine",
       [](const Invocation& inv) {
         return json{{"torsor", io::to_json(combine(torsors(inv.args, inv.place)))}};
       }},
      {"tor project",
       [](const Invocation& inv) {
         const TorsorElement t = io::torsor_from_json(io::field(inv.args, "torsor"), inv.place);
         const std::int64_t j = io::to_int(io::field(inv.args, "index"), "index");
         std::vector<std::size_t> dims;
         for (const json& d : array_arg(io::field(inv.args, "dims"), "dims")) {
           const std::int64_t v = io::to_int(d, "block size");
           if (v < 1) schema_error("block sizes must be positive");
           dims.push_back(static_cast<std::size_t>(v));
         }
         if (j < 1) throw Error(ErrorCode::IndexOutOfRange, "block indices start at 1");
         return json{{"torsor", io::to_json(project(t, static_cast<std::size_t>(j), dims))}};
       }},
      {"approx solve",
       [](const Invocation& inv) {
         const auto [problem, dim] = problem_from_json(inv.args);
         const RatVector sol = dim ? solve_nd(problem, *dim) : RatVector{solve_1d(problem)};
         bool ok = true;
         for (const auto& pc : problem.constraints())
           for (std::size_t i = 0; i < pc.coords.size(); ++i) ok = ok && sc_member(sol[i], pc.coords[i]);
         if (!ok) throw Error(ErrorCode::VerificationFailed, "solution fails membership");
         return json{{"solution", dim ? io::to_json(sol) : io::to_json(sol.front())}, {"verified", ok}};
       }},
      {"approx meet-lat",
       [](const Invocation& inv) {
         const auto classes = lattices(io::field(inv.args, "classes"), inv.place);
         const Matrix c = meet_lattice_cosets(classes);
         bool ok = true;
         for (const auto& s : classes) ok = ok && lat_eq(c, s.rep(), s.place());
         return json{{"matrix", io::to_json(c)}, {"verified", ok}};
       }},
      {"approx meet-tor",
       [](const Invocation& inv) {
         const auto ts = torsors(io::field(inv.args, "torsors"), inv.place);
         const TorsorMeet meet = meet_torsor_cosets(ts);
         bool ok = true;
         for (const auto& t : ts) {
           ok = ok && lat_eq(meet.basis, t.lat().rep(), t.place()) && coset_member(meet.vector, t);
         }
         return json{{"matrix", io::to_json(meet.basis)}, {"vector", io::to_json(meet.vector)}, {"verified", ok}};
       }},
      {"ff irred", [](const Invocation& inv) { return ff_verdict(inv, "irreducible", &ff_irreducible); }},
      {"ff sep", [](const Invocation& inv) { return ff_verdict(inv, "separable", &ff_separable); }},
      {"ff splits",
       [](const Invocation& inv) {
         const FFPoly f = io::poly_from_json(io::field(inv.args, "f"));
         const FFPoly r = io::poly_from_json(io::field(inv.args, "r"), f.characteristic());
         return json{{"splits", ff_splits_mod(f, r)}};
       }},
      {"ff tbd",
       [](const Invocation& inv) {
         const BoundednessSpec spec = io::bspec_from_json(io::field(inv.args, "spec"));
         const std::int64_t m = io::to_int(io::field(inv.args, "m"), "m");
         if (m < 1) schema_error("m must be positive");
         std::vector<FFPoly> cands;
         for (const json& c : array_arg(io::field(inv.args, "candidates"), "candidates")) {
           cands.push_back(io::poly_from_json(c, spec.characteristic()));
         }
         return json{{"report", io::to_json(check_Tbd(spec, static_cast<std::uint64_t>(m), cands))}};
       }},
  };
  return table;
}

/// Groups that take a second word.
inline bool is_group(const std::string& word) {
  static const std::vector<std::string> groups = {"ball", "sc", "lat", "tor", "approx", "ff"};
  return std::find(groups.begin(), groups.end(), word) != groups.end();
}

namespace detail {

inline void emit_error(std::ostream& err, std::string_view code, const std::string& detail) {
  err << json{{"error", code}, {"detail", detail}}.dump() << '\n';
}

// A positional operand is JSON if it parses as JSON, otherwise a bare string
// (so `val -p 2 3/5` works without quoting).
inline json operand_to_json(const std::string& s) {
  json j = json::parse(s, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return json(s);
  return j;
}

}  // namespace detail

/// Runs one command. argv excludes the program name.
inline int run(const std::vector<std::string>& argv, std::istream& in, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Exact valued-field arithmetic: balls, lattices, approximation, F_p tests"};
  app.set_help_flag();
  std::string place_text;
  std::string file;
  bool pretty = false;
  bool help = false;
  std::vector<std::string> words;
  app.add_option("-p,--place", place_text, "prime of the place for single-place verbs");
  app.add_option("--file", file, "read the argument document from a file");
  app.add_flag("--pretty", pretty, "indented output");
  app.add_flag("-h,--help", help, "show usage");
  app.allow_extras();
  app.footer("arguments: verb [subverb] [operand...]");

  try {
    std::vector<std::string> rev(argv.rbegin(), argv.rend());
    app.parse(rev);
    words = app.remaining();
  } catch (const CLI::ParseError& e) {
    detail::emit_error(err, "UsageError", e.what());
    return kExitParse;
  }
  if (help || words.empty()) {
    out << app.help();
    out << "verbs:";
    for (const auto& [name, h] : verbs()) out << "\n  " << name;
    out << '\n';
    return help ? kExitOk : kExitParse;
  }

  // Resolve the verb before looking at any argument.
  std::string verb = words.front();
  std::size_t consumed = 1;
  if (is_group(verb)) {
    if (words.size() < 2) {
      detail::emit_error(err, "UnknownVerb", verb + " needs a subcommand");
      return kExitParse;
    }
    verb += " " + words[1];
    consumed = 2;
  }
  const auto it = verbs().find(verb);
  if (it == verbs().end()) {
    detail::emit_error(err, "UnknownVerb", verb);
    return kExitParse;
  }

  Invocation inv;
  inv.operands.assign(words.begin() + static_cast<std::ptrdiff_t>(consumed), words.end());
  try {
    if (!place_text.empty()) inv.place = io::place_from_json(json(place_text));
    if (!inv.operands.empty()) {
      if (!file.empty()) io::schema_error("give either --file or an inline operand, not both");
      if (inv.operands.size() == 1) {
        inv.args = detail::operand_to_json(inv.operands.front());
      } else {
        inv.args = json::array();
        for (const auto& o : inv.operands) inv.args.push_back(detail::operand_to_json(o));
      }
    } else if (!file.empty()) {
      std::ifstream f(file);
      if (!f) io::schema_error("cannot open " + file);
      inv.args = json::parse(f);
    } else {
      inv.args = json::parse(std::string(std::istreambuf_iterator<char>(in), {}));
    }
    const json result = it->second(inv);
    out << (pretty ? result.dump(2) : result.dump()) << '\n';
    return kExitOk;
  } catch (const Error& e) {
    detail::emit_error(err, to_string(e.code()), e.detail());
    return e.code() == ErrorCode::ParseError ? kExitParse : kExitSemantic;
  } catch (const json::exception& e) {
    detail::emit_error(err, "ParseError", e.what());
    return kExitParse;
  }
}

}  // namespace mvf::cli
