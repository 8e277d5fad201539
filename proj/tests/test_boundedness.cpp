#include <gtest/gtest.h>

#include <map>
#include <vector>

#include "mvf/boundedness.hpp"
#include "oracles.hpp"

using namespace mvf;

namespace {

FFPoly F2(std::vector<FFPoly::Coeff> c) { return FFPoly(2, std::move(c)); }

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

FFPoly first_irreducible(std::uint64_t p, int d) {
  for (const FFPoly& r : oracle::monic_polys(p, d))
    if (oracle::irreducible_by_trial_division(r)) return r;
  throw std::logic_error("no irreducible polynomial");
}

BoundednessSpec spec_with(FFPoly r2) {
  return BoundednessSpec(2, {{2, 2}}, {{2, std::move(r2)}});
}

}  // namespace

TEST(FFPoly, CanonicalForm) {
  EXPECT_EQ(F2({1, 3, 0, 2}), F2({1, 1}));
  EXPECT_EQ(F2({0, 0}).degree(), -1);
  EXPECT_TRUE(F2({}).is_zero());
  EXPECT_EQ(F2({1, 1, 1}).str(), "x^2 + x + 1");
  const std::vector<std::int64_t> neg{-1, 0, 1};
  EXPECT_EQ(FFPoly::from_signed(3, neg), FFPoly(3, {2, 0, 1}));
  EXPECT_EQ(code_of([] { FFPoly(6, {1}); }), ErrorCode::NotPrime);
}

TEST(Irreducible, Examples) {
  EXPECT_TRUE(ff_irreducible(F2({1, 1, 1})));
  EXPECT_FALSE(ff_irreducible(F2({1, 0, 1})));
  ASSERT_TRUE(oracle::irreducible_by_trial_division(F2({1, 1, 0, 1})));
  EXPECT_TRUE(ff_irreducible(F2({1, 1, 0, 1})));
  EXPECT_EQ(code_of([] { ff_irreducible(F2({1})); }), ErrorCode::ConstantPolynomial);
}

TEST(Separable, Examples) {
  EXPECT_TRUE(ff_separable(F2({0, 1, 1})));
  EXPECT_FALSE(ff_separable(F2({0, 0, 1})));
  for (std::uint64_t p : {2, 3, 5, 7, 11}) {
    std::vector<FFPoly::Coeff> c(p + 1, 0);
    c[1] = p - 1;
    c[p] = 1;
    EXPECT_TRUE(ff_separable(FFPoly(p, c)));
  }
  EXPECT_EQ(code_of([] { ff_separable(F2({})); }), ErrorCode::ConstantPolynomial);
}

TEST(SplitsMod, Examples) {
  EXPECT_TRUE(ff_splits_mod(F2({1, 1, 1}), F2({1, 1, 1})));
  ASSERT_EQ(oracle::factor_degrees(F2({1, 1, 0, 1})), (std::vector<int>{3}));
  EXPECT_FALSE(ff_splits_mod(F2({1, 1, 0, 1}), F2({1, 1, 1})));
  EXPECT_TRUE(ff_splits_mod(F2({0, 1, 1}), F2({1, 1})));
  EXPECT_EQ(code_of([] { ff_splits_mod(F2({0, 0, 1}), F2({1, 1})); }), ErrorCode::NotSeparable);
  EXPECT_EQ(code_of([] { ff_splits_mod(F2({0, 1, 1}), F2({1, 0, 1})); }), ErrorCode::NotIrreducibleModulus);
  EXPECT_EQ(code_of([] { ff_splits_mod(F2({0, 1, 1}), FFPoly(3, {1, 1})); }), ErrorCode::CharacteristicMismatch);
}

TEST(CheckTbd, Examples) {
  const std::vector<FFPoly> a{F2({1, 1, 1})};
  const TbdReport ra = check_Tbd(spec_with(F2({1, 1, 1})), 2, a);
  EXPECT_TRUE(ra.r_irreducible);
  EXPECT_TRUE(ra.pass);

  const std::vector<FFPoly> b{F2({0, 1, 1})};
  EXPECT_TRUE(check_Tbd(spec_with(F2({1, 1, 1})), 2, b).pass);

  const TbdReport rc = check_Tbd(spec_with(F2({1, 0, 1})), 2, a);
  EXPECT_FALSE(rc.r_irreducible);
  EXPECT_FALSE(rc.pass);

  EXPECT_EQ(code_of([&] { check_Tbd(spec_with(F2({1, 1, 1})), 3, a); }), ErrorCode::UnknownDegree);
  const std::vector<FFPoly> ramified{F2({1, 0, 1})};
  EXPECT_EQ(code_of([&] { check_Tbd(spec_with(F2({1, 1, 1})), 2, ramified); }), ErrorCode::NotSeparable);
}

TEST(CheckTbd, ExhaustiveOverSeparableQuadraticsAndCubics) {
  // Every separable degree-m polynomial over F_p has irreducible factors of
  // degree <= m, so r of degree lcm(1..m) makes the list pass.
  for (std::uint64_t p : {2, 3, 5}) {
    const BoundednessSpec spec(p, {{2, 2}, {3, 6}}, {{2, first_irreducible(p, 2)}, {3, first_irreducible(p, 6)}});
    for (std::uint64_t m : {2, 3}) {
      std::vector<FFPoly> cands;
      for (const FFPoly& f : oracle::monic_polys(p, static_cast<int>(m)))
        if (oracle::squarefree_by_trial_division(f)) cands.push_back(f);
      EXPECT_TRUE(check_Tbd(spec, m, cands).pass) << "p=" << p << " m=" << m;
    }
    // Degree 3 modulo a quadratic: irreducible cubics fail.
    const BoundednessSpec weak(p, {{3, 2}}, {{3, first_irreducible(p, 2)}});
    const std::vector<FFPoly> cubic{first_irreducible(p, 3)};
    EXPECT_FALSE(check_Tbd(weak, 3, cubic).pass);
  }
}

TEST(Oracle, IrreducibleAgreesWithTrialDivision) {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (int d = 1; d <= 5; ++d) {
      for (const FFPoly& f : oracle::monic_polys(p, d))
        ASSERT_EQ(ff_irreducible(f), oracle::irreducible_by_trial_division(f)) << f.str() << " p=" << p;
    }
  }
}

TEST(Oracle, SeparableAndSplitsAgreeWithFactorDegrees) {
  for (std::uint64_t p : {2, 3, 5}) {
    std::vector<FFPoly> rs;
    for (int d = 1; d <= 3; ++d) rs.push_back(first_irreducible(p, d));
    for (int deg = 1; deg <= 4; ++deg) {
      for (const FFPoly& f : oracle::monic_polys(p, deg)) {
        const bool sq = oracle::squarefree_by_trial_division(f);
        ASSERT_EQ(ff_separable(f), sq) << f.str();
        if (!sq) continue;
        const auto degrees = oracle::factor_degrees(f);
        for (const FFPoly& r : rs) {
          bool expected = true;
          for (int k : degrees) expected = expected && r.degree() % k == 0;
          ASSERT_EQ(ff_splits_mod(f, r), expected) << f.str() << " mod " << r.str();
        }
      }
    }
  }
}

TEST(SplitsMod, DependsOnlyOnDegreeOfModulus) {
  for (std::uint64_t p : {2, 3, 5}) {
    for (int d = 1; d <= 3; ++d) {
      std::vector<FFPoly> rs;
      for (const FFPoly& r : oracle::monic_polys(p, d))
        if (oracle::irreducible_by_trial_division(r)) rs.push_back(r);
      for (int deg = 1; deg <= 3; ++deg) {
        for (const FFPoly& f : oracle::monic_polys(p, deg)) {
          if (!oracle::squarefree_by_trial_division(f)) continue;
          const bool first = ff_splits_mod(f, rs.front());
          for (const FFPoly& r : rs) ASSERT_EQ(ff_splits_mod(f, r), first);
        }
      }
    }
  }
}
