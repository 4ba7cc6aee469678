#include "dertower/cone.hpp"
#include "dertower/spectral.hpp"

#include <gtest/gtest.h>

using namespace dertower;

namespace {

std::shared_ptr<FreeDgAlgebra> even_sphere()
{
  auto a = std::make_shared<FreeDgAlgebra>(Flavor::commutative, Grading::cohomological,
                                           std::vector<Generator>{{"x", 2, 2, false, false}, {"y", 3, 3, false, false}});
  a->set_differential("y", a->power(a->gen("x"), 2));
  return a;
}

std::shared_ptr<FreeDgAlgebra> moore(int k)
{
  auto q = std::make_shared<FreeDgAlgebra>(Flavor::associative, Grading::homological,
                                           std::vector<Generator>{{"a", 2, 2, false, false}, {"b", 3, 3, false, false}});
  q->set_differential("b", Rational(k) * q->gen("a"));
  return q;
}

void check_everything(const FilteredComplex& fc, int nlo, int nhi)
{
  fc.check();
  SpectralSequence ss(fc, nlo, nhi);
  ExactCouple ec(fc, nlo, nhi);
  for (const auto& row : e_infinity_and_compare(ss)) {
    EXPECT_EQ(row.assembled, row.direct) << "n=" << row.n;
    EXPECT_TRUE(row.stable_page_agrees) << "n=" << row.n;
  }
  EXPECT_EQ(page_invariant_failures(ss, 6), std::vector<std::string>{});
  EXPECT_EQ(route_mismatches(ss, ec, 6), std::vector<std::string>{});
}

}  // namespace

TEST(Spectral, ZeroDifferentialCollapsesAtFirstPage)
{
  auto q = std::make_shared<FreeDgAlgebra>(Flavor::associative, Grading::homological,
                                           std::vector<Generator>{{"x", 2, 2, false, false}});
  ConeComplex cone(q);
  const FilteredComplex fc = cone.filtered(-9, 6);
  SpectralSequence ss(fc, -8, 4);
  for (int n = -8; n <= 4; ++n)
    for (int s = ss.smin(); s <= ss.smax(); ++s) {
      EXPECT_EQ(ss.dimension(1, s, n), fc.graded_dimension(n, s));
      EXPECT_EQ(ss.e_infinity(s, n).dimension(), fc.graded_dimension(n, s));
    }
  check_everything(fc, -8, 4);
}

TEST(Spectral, EvenSphereSelfCoefficients)
{
  auto a = even_sphere();
  DerivationComplex der(a, {}, Coefficients::self(a));
  const FilteredComplex fc = filtered_derivations(der, -12, 12);
  check_everything(fc, -10, 10);
  SpectralSequence ss(fc, -10, 10);
  // (x->1) sits at s = 2, n = -2 and hits (y->x) at s = 3 on the first page
  const Matrix d1 = ss.differential(1, 2, -2);
  EXPECT_EQ(d1.rows(), 1u);
  EXPECT_EQ(d1.cols(), 1u);
  EXPECT_FALSE(d1.is_zero_matrix());
  EXPECT_EQ(ss.dimension(2, 2, -2), 0u);
  EXPECT_EQ(ss.e_infinity(3, -3).dimension(), 1u);
}

TEST(Spectral, LiftSearchFindsObstructionAndSurvivor)
{
  auto a = even_sphere();
  DerivationComplex der(a, {}, Coefficients::self(a));
  const FilteredComplex fc = filtered_derivations(der, -12, 12);
  SpectralSequence ss(fc, -10, 10);
  const auto x1 = unit_vector(*der.index_of(-2, Slot{0, {}}));
  const LiftReport dead = differential_via_lift(ss, 2, -2, x1);
  EXPECT_FALSE(dead.survives);
  EXPECT_EQ(dead.obstruction_page, 1);
  const auto y1 = unit_vector(*der.index_of(-3, Slot{1, {}}));
  const LiftReport alive = differential_via_lift(ss, 3, -3, y1);
  EXPECT_TRUE(alive.survives);
  EXPECT_TRUE(fc.complex().differential(-3).apply(alive.lift).empty());
  // (x->x) at s = 2 lifts to the cocycle (x->x) + 2 (y->y)
  const auto xx = unit_vector(*der.index_of(0, Slot{0, {{0}}}));
  const LiftReport id = differential_via_lift(ss, 2, 0, xx);
  EXPECT_TRUE(id.survives);
  EXPECT_EQ(id.lift.size(), 2u);
}

TEST(Spectral, MooreConeAndTrivialCoefficients)
{
  ConeComplex cone(moore(2));
  check_everything(cone.filtered(-10, 6), -8, 4);
  auto q = moore(3);
  DerivationComplex triv(q, {}, Coefficients::trivial(q));
  check_everything(filtered_derivations(triv, -6, 8), -4, 6);
  DerivationComplex self(q, {}, Coefficients::self(q));
  check_everything(filtered_derivations(self, -10, 6), -8, 4);
}

TEST(Spectral, QuotientToTrivialCoefficientsCommutesWithDifferentials)
{
  auto a = even_sphere();
  DerivationComplex self(a, {}, Coefficients::self(a));
  DerivationComplex triv(a, {}, Coefficients::trivial(a));
  const FilteredComplex fs = filtered_derivations(self, -8, 8);
  const FilteredComplex ft = filtered_derivations(triv, -8, 8);
  FilteredMap f;
  for (int p = -8; p <= 8; ++p) {
    Matrix m(triv.dimension(p), self.dimension(p));
    for (std::size_t j = 0; j < self.basis(p).size(); ++j) {
      const Slot& sl = self.basis(p)[j];
      if (sl.value.is_unit()) m.set(*triv.index_of(p, sl), j, Rational(1));
    }
    f.components.emplace(p, std::move(m));
  }
  // chain map
  for (int p = -8; p < 8; ++p)
    EXPECT_EQ(ft.complex().differential(p) * f.components.at(p), f.components.at(p + 1) * fs.complex().differential(p));
  SpectralSequence ss(fs, -6, 6), st(ft, -6, 6);
  for (int r = 1; r <= 3; ++r)
    for (int n = -6; n <= 5; ++n)
      for (int s = 2; s <= 3; ++s) {
        const Matrix lhs = st.differential(r, s, n);
        EXPECT_EQ(lhs * induced_page_map(ss, st, f, r, s, n),
                  induced_page_map(ss, st, f, r, s + r, n + 1) * ss.differential(r, s, n));
      }
}
