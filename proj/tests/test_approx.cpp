#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "mvf/approx.hpp"
#include "oracles.hpp"

using namespace mvf;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an mvf::Error";
  return ErrorCode::ParseError;
}

SwissCheese ball_only(long p, long c, std::int64_t r) { return SwissCheese(Ball(Place(p), Rat(c), r), {}); }

SwissCheese satisfiable_cheese(std::mt19937_64& rng, long p) {
  for (;;) {
    SwissCheese sc = oracle::random_cheese(rng, p, 2);
    if (!oracle::cheese_empty_by_enumeration(sc)) return sc;
  }
}

bool coset_by_valuation(const RatVector& d, const TorsorElement& t) {
  const long p = t.place().prime().get_si();
  const RatVector u = t.lift();
  RatVector diff(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) diff[i] = d[i] - u[i];
  for (const Rat& c : inverse(t.lat().rep()) * diff) {
    const auto v = oracle::naive_val(c, p);
    if (v && *v < 1) return false;
  }
  return true;
}

}  // namespace

TEST(Solve1d, Examples) {
  // x = 1 mod 8 and x = 0 mod 9.
  EXPECT_EQ(solve_1d(ApproxProblem::one_dim({ball_only(2, 1, 3), ball_only(3, 0, 2)})), Rat(9));
  EXPECT_EQ(solve_1d(ApproxProblem::one_dim({ball_only(2, 0, 0)})), Rat(0));

  const SwissCheese at2(Ball(Place(2), Rat(0), 1), {Ball(Place(2), Rat(0), 2)});
  const SwissCheese at3(Ball(Place(3), Rat(0), 1), {Ball(Place(3), Rat(0), 2)});
  const Rat x = solve_1d(ApproxProblem::one_dim({at2, at3}));
  EXPECT_EQ(x, Rat(6));
  EXPECT_EQ(oracle::naive_val(x, 2), 1);
  EXPECT_EQ(oracle::naive_val(x, 3), 1);
}

TEST(Solve1d, NegativeRadiiAndFractionalCenters) {
  const Place P2(2), P3(3);
  const SwissCheese a(Ball(P2, Rat::parse("1/4"), -1), {});
  const SwissCheese b(Ball(P3, Rat::parse("2/3"), 2), {Ball(P3, Rat::parse("2/3"), 3)});
  const Rat x = solve_1d(ApproxProblem::one_dim({a, b}));
  EXPECT_TRUE(oracle::in_cheese_naive(x, a));
  EXPECT_TRUE(oracle::in_cheese_naive(x, b));
}

TEST(Solve1d, Errors) {
  const SwissCheese covered(Ball(Place(2), Rat(0), 0), {Ball(Place(2), Rat(0), 1), Ball(Place(2), Rat(1), 1)});
  EXPECT_EQ(code_of([&] { ApproxProblem::one_dim({covered}); }), ErrorCode::EmptyConstraint);
  EXPECT_EQ(code_of([] { ApproxProblem::one_dim({ball_only(2, 0, 1), ball_only(2, 1, 1)}); }),
            ErrorCode::DuplicatePlace);
}

TEST(Solve1d, RandomSystemsVerifiedIndependently) {
  std::mt19937_64 rng(2024);
  const std::vector<std::vector<long>> prime_sets{{2}, {3}, {5}, {2, 3}, {2, 5}, {3, 5}, {2, 3, 5}};
  for (int i = 0; i < 200; ++i) {
    const auto& ps = prime_sets[static_cast<std::size_t>(i) % prime_sets.size()];
    std::vector<SwissCheese> cheeses;
    for (long p : ps) cheeses.push_back(satisfiable_cheese(rng, p));
    const Rat x = solve_1d(ApproxProblem::one_dim(cheeses));
    for (const SwissCheese& sc : cheeses) EXPECT_TRUE(oracle::in_cheese_naive(x, sc)) << x.str();
    EXPECT_EQ(solve_1d(ApproxProblem::one_dim(cheeses)), x);
  }
}

TEST(SolveNd, Examples) {
  const ApproxProblem zero({{Place(2), {ball_only(2, 0, 0), ball_only(2, 0, 0)}},
                            {Place(3), {ball_only(3, 0, 0), ball_only(3, 0, 0)}}});
  EXPECT_EQ(solve_nd(zero, 2), (RatVector{Rat(0), Rat(0)}));

  const auto one = ApproxProblem::one_dim({ball_only(2, 1, 3), ball_only(3, 0, 2)});
  EXPECT_EQ(solve_nd(one, 1), (RatVector{solve_1d(one)}));
  EXPECT_EQ(code_of([&] { solve_nd(zero, 3); }), ErrorCode::DimensionMismatch);
}

TEST(SolveNd, RandomFourDimensional) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 40; ++i) {
    std::vector<PlaceConstraint> pcs;
    for (long p : {2L, 3L}) {
      PlaceConstraint pc{Place(p), {}};
      for (int j = 0; j < 4; ++j) pc.coords.push_back(satisfiable_cheese(rng, p));
      pcs.push_back(pc);
    }
    const RatVector x = solve_nd(ApproxProblem(pcs), 4);
    for (const auto& pc : pcs)
      for (std::size_t j = 0; j < 4; ++j) EXPECT_TRUE(oracle::in_cheese_naive(x[j], pc.coords[j]));
  }
}

TEST(MeetLattice, Examples) {
  const std::vector<LatticeClass> standard{canon(Matrix::identity(2), Place(2)), canon(Matrix::identity(2), Place(3))};
  const Matrix c = meet_lattice_cosets(standard);
  EXPECT_TRUE(oracle::gl_o_related(c, Matrix::identity(2), 2));
  EXPECT_TRUE(oracle::gl_o_related(c, Matrix::identity(2), 3));

  const Matrix d21{{Rat(2), Rat(0)}, {Rat(0), Rat(1)}};
  const std::vector<LatticeClass> mixed{canon(d21, Place(2)), canon(Matrix::identity(2), Place(3))};
  const Matrix e = meet_lattice_cosets(mixed);
  EXPECT_TRUE(oracle::gl_o_related(e, d21, 2));
  EXPECT_TRUE(oracle::gl_o_related(e, Matrix::identity(2), 3));

  const std::vector<LatticeClass> dup{canon(Matrix::identity(2), Place(2)), canon(d21, Place(2))};
  EXPECT_EQ(code_of([&] { meet_lattice_cosets(dup); }), ErrorCode::DuplicatePlace);
  const std::vector<LatticeClass> dims{canon(Matrix::identity(2), Place(2)), canon(Matrix::identity(3), Place(3))};
  EXPECT_EQ(code_of([&] { meet_lattice_cosets(dims); }), ErrorCode::DimensionMismatch);
}

TEST(MeetLattice, RandomPairs) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50; ++i) {
    const Matrix a = oracle::random_invertible(rng, 2, 2), b = oracle::random_invertible(rng, 2, 3);
    const std::vector<LatticeClass> cls{canon(a, Place(2)), canon(b, Place(3))};
    const Matrix c = meet_lattice_cosets(cls);
    EXPECT_TRUE(oracle::gl_o_related(c, a, 2));
    EXPECT_TRUE(oracle::gl_o_related(c, b, 3));
  }
}

TEST(MeetTorsor, Examples) {
  const LatticeClass s2 = canon(Matrix::identity(2), Place(2)), s3 = canon(Matrix::identity(2), Place(3));
  const std::vector<TorsorElement> e1{TorsorElement(s2, {1, 0}), TorsorElement(s3, {1, 0})};
  const TorsorMeet m = meet_torsor_cosets(e1);
  EXPECT_EQ(m.basis, Matrix::identity(2));
  EXPECT_EQ(m.vector, (RatVector{Rat(1), Rat(0)}));

  const std::vector<TorsorElement> mixed{TorsorElement(s2, {1, 0}), TorsorElement(s3, {0, 0})};
  const TorsorMeet n = meet_torsor_cosets(mixed);
  EXPECT_GE(*oracle::naive_val(n.vector[0] - Rat(1), 2), 1);
  for (const Rat& dj : n.vector) {
    const auto v3 = oracle::naive_val(dj, 3);
    EXPECT_TRUE(!v3 || *v3 >= 1);
  }
  const auto v2 = oracle::naive_val(n.vector[1], 2);
  EXPECT_TRUE(!v2 || *v2 >= 1);
}

TEST(MeetTorsor, RandomPairs) {
  std::mt19937_64 rng(60);
  std::uniform_int_distribution<long> r2(0, 1), r3(0, 2);
  for (int i = 0; i < 50; ++i) {
    const Matrix a = oracle::random_invertible(rng, 2, 2), b = oracle::random_invertible(rng, 2, 3);
    const std::vector<TorsorElement> ts{TorsorElement(canon(a, Place(2)), {r2(rng), r2(rng)}),
                                        TorsorElement(canon(b, Place(3)), {r3(rng), r3(rng)})};
    const TorsorMeet m = meet_torsor_cosets(ts);
    EXPECT_TRUE(oracle::gl_o_related(m.basis, a, 2));
    EXPECT_TRUE(oracle::gl_o_related(m.basis, b, 3));
    for (const auto& t : ts) EXPECT_TRUE(coset_by_valuation(m.vector, t));
  }
}
