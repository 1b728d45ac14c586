#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "mmcbrace/errors.hpp"
#include "mmcbrace/presentations.hpp"

using namespace mmc;

TEST_CASE("family text forms") {
  CHECK(TwoGroupFamily::parse("M32") == TwoGroupFamily::mmc(3));
  CHECK(TwoGroupFamily::parse("M64") == TwoGroupFamily::mmc(4));
  CHECK(TwoGroupFamily::parse("SD32").kind() == FamilyKind::Semidihedral);
  CHECK(TwoGroupFamily::parse("Q32").to_string() == "Q32");
  CHECK(TwoGroupFamily::parse("D64").m() == 4);
  CHECK_THROWS(TwoGroupFamily::parse("M33"));
  CHECK_THROWS(TwoGroupFamily::parse("X32"));
}

TEST_CASE("pg_mul examples") {
  auto f = TwoGroupFamily::mmc(3);
  CHECK(pg_mul({1, 0}, {1, 0}, f) == PresentedElement{0, 0});
  CHECK(pg_mul({0, 1}, {1, 0}, f) == PresentedElement{1, 9});
  CHECK(pg_mul({1, 2}, {1, 3}, f) == PresentedElement{0, 5});
  CHECK(pg_order({0, 1}, f) == 16);
  CHECK(pg_order({1, 1}, f) == 16);
  CHECK(pg_order({1, 8}, f) == 2);
  CHECK(PresentedElement::parse("b*a^3", f) == PresentedElement{1, 3});
  CHECK(PresentedElement{1, 3}.to_string() == "b*a^3");
  CHECK(PresentedElement::parse("a^0", f).index(f) == 0);
}

TEST_CASE("every family table is a group of the right order") {
  for (auto kind : {FamilyKind::MMC, FamilyKind::Dihedral, FamilyKind::Quaternion,
                    FamilyKind::Semidihedral}) {
    for (int m : {2, 3, 4}) {
      TwoGroupFamily f(kind, m);
      CAPTURE(f.to_string());
      const auto n = static_cast<std::uint32_t>(f.order());
      auto t = multiplication_table(f);
      bool ok = true;
      for (std::uint32_t x = 0; x < n && ok; ++x) {
        ok = t[x] == x && t[static_cast<std::size_t>(x) * n] == x;
        bool inv = false;
        for (std::uint32_t y = 0; y < n; ++y) inv = inv || t[static_cast<std::size_t>(x) * n + y] == 0;
        ok = ok && inv;
        for (std::uint32_t y = 0; y < n && ok; ++y) {
          for (std::uint32_t z = 0; z < n && ok; ++z) {
            ok = t[static_cast<std::size_t>(t[static_cast<std::size_t>(x) * n + y]) * n + z] ==
                 t[static_cast<std::size_t>(x) * n + t[static_cast<std::size_t>(y) * n + z]];
          }
        }
      }
      CHECK(ok);
      PresentedElement a{0, 1}, b{1, 0};
      CHECK(pg_order(a, f) == static_cast<std::uint64_t>(f.a_order()));
      CHECK(pg_mul(pg_mul(pg_inv(b, f), a, f), b, f) == pg_pow(a, static_cast<std::uint64_t>(f.twist()), f));
      CHECK(pg_pow(b, 2, f) == pg_pow(a, static_cast<std::uint64_t>(f.b_square_exponent()), f));
    }
  }
}

TEST_CASE("MMC element orders, m = 3") {
  auto f = TwoGroupFamily::mmc(3);
  std::map<std::uint64_t, int> hist;
  std::set<std::uint32_t> order16;
  for (std::uint32_t g = 0; g < f.order(); ++g) {
    auto e = PresentedElement::from_index(f, g);
    auto o = pg_order(e, f);
    ++hist[o];
    if (o == 16) order16.insert(g);
  }
  CHECK(hist[1] == 1);
  CHECK(hist[2] == 3);
  std::set<std::uint32_t> odd;
  for (Residue i = 1; i < 16; i += 2) {
    odd.insert(PresentedElement{0, i}.index(f));
    odd.insert(PresentedElement{1, i}.index(f));
  }
  CHECK(order16 == odd);
  auto subs = all_subgroups(f);
  for (Residue i = 1; i < 16; i += 2) {
    // a^2 lies in <b*a^i>
    std::set<PresentedElement> dummy;
    PresentedElement x{1, i};
    bool found = false;
    for (std::uint64_t k = 0; k < 16; ++k) found = found || pg_pow(x, k, f) == PresentedElement{0, 2};
    CHECK(found);
  }
}

TEST_CASE("normal subgroup classification") {
  for (int m : {2, 3, 4, 5}) {
    auto f = TwoGroupFamily::mmc(m);
    CAPTURE(m);
    auto report = verify_subgroup_classification(f);
    CHECK(report.ok);
    for (const auto& p : report.problems) MESSAGE(p);
    std::vector<std::string> expect{"<b>", "<" + PresentedElement{1, Residue{1} << m}.to_string() + ">"};
    auto got = report.non_normal;
    std::sort(got.begin(), got.end());
    std::sort(expect.begin(), expect.end());
    CHECK(got == expect);
  }
  CHECK_THROWS_AS(all_subgroups(TwoGroupFamily(FamilyKind::Dihedral, 3)), UnsupportedFamily);
}

TEST_CASE("find_isomorphism and satisfies_relations") {
  auto f = TwoGroupFamily::mmc(3);
  auto s = GroupShape(2, {1, 4});
  AutMatrix d(EndoMatrix::canonicalize(s, {{1, 0}, {0, 9}}));
  std::vector<HolElement> gens{HolElement::translation(GroupElement(s, {0, 1})),
                               HolElement(d, GroupElement(s, {1, 0}))};
  auto h = generate(s, gens);
  auto iso = find_isomorphism(f, h);
  REQUIRE(iso.has_value());
  CHECK(hol_order(iso->x) == 16);
  CHECK(hol_order(iso->y) == 2);
  CHECK(satisfies_relations(f, iso->x, iso->y));
  CHECK_FALSE(find_isomorphism(TwoGroupFamily(FamilyKind::Dihedral, 3), h).has_value());
  for (const auto& C : enumerate_automorphisms(s)) {
    CHECK(find_isomorphism(f, conjugate(h, HolElement(C, GroupElement::zero(s)))).has_value());
  }
  auto z32 = GroupShape(2, {5});
  std::vector<HolElement> t{HolElement::translation(GroupElement(z32, {1}))};
  CHECK_FALSE(find_isomorphism(f, generate(z32, t)).has_value());
}
