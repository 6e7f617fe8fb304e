#include <ffdigits/factor.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ffdigits;

TEST(Irreducible, Examples) {
  PolyRing R2(Field::of_order(2));
  EXPECT_TRUE(is_irreducible(R2, R2.from_indices({1, 1, 1})));
  EXPECT_FALSE(is_irreducible(R2, R2.from_indices({0, 0, 1})));
  PolyRing R17(Field::of_order(17));
  EXPECT_TRUE(is_irreducible(R17, R17.t()));
}

TEST(Irreducible, RejectsNonMonicOrConstant) {
  PolyRing R(Field::of_order(3));
  EXPECT_THROW(is_irreducible(R, R.one()), std::invalid_argument);
  EXPECT_THROW(is_irreducible(R, R.from_indices({1, 2})), std::invalid_argument);
  EXPECT_THROW(is_irreducible(R, R.zero()), std::invalid_argument);
}

TEST(Irreducible, AgreesWithTrialDivision) {
  for (std::uint64_t q : {2, 3, 4, 5}) {
    auto F = Field::of_order(q);
    PolyRing R(F);
    for (int n = 1; n <= (q <= 3 ? 7 : 5); ++n)
      MonicEnumerator(*F, n).for_each([&](const Poly& f) {
        ASSERT_EQ(is_irreducible(R, f), oracle::irreducible_by_trial_division(R, f)) << "q=" << q << " f=" << R.format(f);
      });
  }
}

TEST(Factorize, Examples) {
  PolyRing R2(Field::of_order(2));
  const auto fac = factorize(R2, R2.from_indices({1, 0, 0, 1}));
  ASSERT_EQ(fac.factors.size(), 2u);
  EXPECT_EQ(fac.factors[0], std::make_pair(R2.from_indices({1, 1}), 1));
  EXPECT_EQ(fac.factors[1], std::make_pair(R2.from_indices({1, 1, 1}), 1));

  const Poly irr = R2.from_indices({1, 1, 0, 0, 1});
  const auto single = factorize(R2, irr);
  ASSERT_EQ(single.factors.size(), 1u);
  EXPECT_EQ(single.factors[0], std::make_pair(irr, 1));

  PolyRing R3(Field::of_order(3));
  const auto sq = factorize(R3, R3.from_indices({0, 0, 1}));
  ASSERT_EQ(sq.factors.size(), 1u);
  EXPECT_EQ(sq.factors[0], std::make_pair(R3.t(), 2));
}

TEST(Factorize, ZeroThrows) {
  PolyRing R(Field::of_order(3));
  EXPECT_THROW(factorize(R, R.zero()), std::invalid_argument);
}

TEST(Factorize, KeepsUnit) {
  PolyRing R(Field::of_order(5));
  const Poly f = R.from_indices({3, 0, 3});  // 3 (t^2 + 1) = 3 (t + 2)(t + 3)
  const auto fac = factorize(R, f);
  EXPECT_EQ(fac.unit, Elem{3});
  EXPECT_EQ(fac.factors.size(), 2u);
  EXPECT_EQ(reassemble(R, fac), f);
}

TEST(FactorizeProperties, ReassemblesIntoIrreducibles) {
  std::mt19937_64 rng(11);
  for (std::uint64_t q : {2, 3, 4, 5, 8, 9, 17}) {
    PolyRing R(Field::of_order(q));
    std::uniform_int_distribution<std::uint32_t> coeff(0, static_cast<std::uint32_t>(q - 1));
    for (int i = 0; i < 120; ++i) {
      // products of small pieces so repeated factors are common
      Poly f = R.one();
      for (int j = 0; j < 4; ++j) {
        Poly piece;
        const int d = 1 + static_cast<int>(rng() % 3);
        for (int k = 0; k < d; ++k) piece.c.push_back(Elem{coeff(rng)});
        piece.c.push_back(R.field().one());
        const int e = 1 + static_cast<int>(rng() % 3);
        for (int k = 0; k < e; ++k) f = R.mul(f, piece);
      }
      const auto fac = factorize(R, f);
      EXPECT_EQ(reassemble(R, fac), f) << "q=" << q << " f=" << R.format(f);
      for (std::size_t k = 0; k < fac.factors.size(); ++k) {
        EXPECT_TRUE(is_irreducible(R, fac.factors[k].first));
        if (k) {
          EXPECT_NE(fac.factors[k - 1].first, fac.factors[k].first);
        }
      }
    }
  }
}

TEST(Mobius, Examples) {
  PolyRing R2(Field::of_order(2));
  EXPECT_EQ(mobius(R2, R2.one()), 1);
  EXPECT_EQ(mobius(R2, R2.t()), -1);
  EXPECT_EQ(mobius(R2, R2.from_indices({0, 0, 1})), 0);
  EXPECT_EQ(mobius(R2, R2.from_indices({0, 1, 1})), 1);
  for (std::uint64_t q : {3, 7, 17}) {
    PolyRing R(Field::of_order(q));
    EXPECT_EQ(mobius(R, R.t()), -1);
  }
}

TEST(EulerPhi, Examples) {
  for (std::uint64_t q : {2, 3, 5, 17}) {
    PolyRing R(Field::of_order(q));
    EXPECT_EQ(euler_phi(R, R.t()), BigInt(q - 1));
    EXPECT_EQ(euler_phi(R, R.one()), BigInt(1));
  }
  PolyRing R2(Field::of_order(2));
  EXPECT_EQ(euler_phi(R2, R2.from_indices({0, 1, 1})), BigInt(1));
  PolyRing R3(Field::of_order(3));
  EXPECT_EQ(euler_phi(R3, R3.from_indices({0, 0, 1})), BigInt(6));
}

// phi(f) counts residues coprime to f.
TEST(EulerPhi, MatchesUnitCount) {
  for (std::uint64_t q : {2, 3}) {
    auto F = Field::of_order(q);
    PolyRing R(F);
    for (int d = 1; d <= 4; ++d)
      MonicEnumerator(*F, d).for_each([&](const Poly& f) {
        std::uint64_t units = 0;
        for (int e = 0; e < d; ++e)
          MonicEnumerator(*F, e).for_each([&](const Poly& a) {
            for (std::uint32_t c = 1; c < q; ++c) units += R.gcd(R.scale(a, Elem{c}), f) == R.one();
          });
        EXPECT_EQ(euler_phi(R, f), BigInt(units)) << R.format(f);
      });
  }
}

TEST(MultiplicativeProperties, MobiusAndPhi) {
  std::mt19937_64 rng(5);
  for (std::uint64_t q : {2, 3, 5}) {
    auto F = Field::of_order(q);
    PolyRing R(F);
    const auto monics = list_monic(*F, 3);
    const auto smaller = list_monic(*F, 2);
    for (int i = 0; i < 200; ++i) {
      const Poly& f = monics[rng() % monics.size()];
      const Poly& g = smaller[rng() % smaller.size()];
      if (R.gcd(f, g) != R.one()) continue;
      const Poly fg = R.mul(f, g);
      EXPECT_EQ(mobius(R, fg), mobius(R, f) * mobius(R, g));
      EXPECT_EQ(euler_phi(R, fg), euler_phi(R, f) * euler_phi(R, g));
    }
  }
}

TEST(PrimeCount, Examples) {
  EXPECT_EQ(prime_count(2, 1), 2);
  EXPECT_EQ(prime_count(2, 4), 3);
  EXPECT_EQ(prime_count(3, 2), 3);
  EXPECT_EQ(prime_count(3, 4), 18);
  EXPECT_EQ(prime_count(3, 6), 116);
  EXPECT_EQ(prime_count(17, 3), 1632);
  EXPECT_THROW(prime_count(2, 0), std::invalid_argument);
}

TEST(PrimeCount, MatchesEnumeration) {
  for (std::uint64_t q : {2, 3, 4, 5}) {
    auto F = Field::of_order(q);
    for (unsigned n = 1; n <= (q == 2 ? 10u : 6u); ++n)
      EXPECT_EQ(prime_count(q, n), BigInt(oracle::count_irreducible_by_trial_division(F, static_cast<int>(n))))
          << "q=" << q << " n=" << n;
  }
}

TEST(PrimeCount, NecklaceIdentity) {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17}) {
    for (unsigned n = 1; n <= 20; ++n) {
      BigInt acc = 0;
      for (unsigned d = 1; d <= n; ++d)
        if (n % d == 0) acc += d * prime_count(q, d);
      EXPECT_EQ(acc, ipow(q, n)) << "q=" << q << " n=" << n;
    }
  }
}

TEST(MonicEnumerator, Examples) {
  auto F2 = Field::of_order(2);
  const auto only = list_monic(*F2, 2, std::vector<Elem>{Elem{1}});
  ASSERT_EQ(only.size(), 1u);
  PolyRing R2(F2);
  EXPECT_EQ(only[0], R2.from_indices({1, 1, 1}));

  auto F3 = Field::of_order(3);
  PolyRing R3(F3);
  EXPECT_EQ(list_monic(*F3, 1), (std::vector<Poly>{R3.from_indices({0, 1}), R3.from_indices({1, 1}), R3.from_indices({2, 1})}));
}

TEST(MonicEnumerator, CountsAndUniqueness) {
  auto F = Field::of_order(5);
  for (int n = 0; n <= 4; ++n) {
    std::vector<Elem> allowed{Elem{1}, Elem{3}, Elem{4}};
    MonicEnumerator en(*F, n, allowed);
    EXPECT_EQ(en.count(), ipow(3, static_cast<unsigned>(n)));
    auto all = list_monic(*F, n, allowed);
    EXPECT_EQ(all.size(), en.count().convert_to<std::size_t>());
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
    EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
    for (const auto& f : all) {
      EXPECT_EQ(f.degree(), n);
      for (int i = 0; i < n; ++i) EXPECT_NE(f.c[static_cast<std::size_t>(i)], Elem{0});
    }
  }
  EXPECT_THROW(MonicEnumerator(*F, 2, std::vector<Elem>{}), std::invalid_argument);
}

TEST(MonicEnumerator, PrefixSubtreesPartitionTheStream) {
  auto F = Field::of_order(3);
  const std::vector<Elem> allowed{Elem{1}, Elem{2}};
  const auto all = list_monic(*F, 4, allowed);
  std::vector<Poly> joined;
  for (std::uint32_t a = 0; a < 2; ++a)
    for (std::uint32_t b = 0; b < 2; ++b)
      MonicEnumerator(*F, 4, allowed, {a, b}).for_each([&](const Poly& f) { joined.push_back(f); });
  EXPECT_EQ(joined, all);
}

TEST(IrreducibleCache, MatchesPrimeCountAndIsShared) {
  IrreducibleCache cache(Field::of_order(3));
  const auto& six = cache.of_degree(6);
  EXPECT_EQ(six.size(), 116u);
  EXPECT_EQ(&cache.of_degree(6), &six);
  for (const auto& f : six) EXPECT_TRUE(is_irreducible(cache.ring(), f));
}
