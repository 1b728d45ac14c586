#include <doctest.h>

#include <algorithm>

#include "mmcbrace/errors.hpp"
#include "mmcbrace/holomorph.hpp"

using namespace mmc;

namespace {

GroupShape z2z16() { return GroupShape(2, {1, 4}); }

AutMatrix aut(const GroupShape& s, std::vector<std::vector<Residue>> raw) {
  return AutMatrix(EndoMatrix::canonicalize(s, raw));
}

HolSubgroup example_subgroup() {
  auto s = z2z16();
  std::vector<HolElement> gens{HolElement(AutMatrix::identity(s), GroupElement(s, {0, 1})),
                               HolElement(aut(s, {{1, 0}, {0, 9}}), GroupElement(s, {1, 0}))};
  return generate(s, gens);
}

// (n+1)x(n+1) integer affine matrix [[A, v], [0, 1]], reduced rowwise.
std::vector<std::vector<Residue>> affine(const HolElement& g) {
  const int n = g.shape().rank();
  std::vector<std::vector<Residue>> out(n + 1, std::vector<Residue>(n + 1, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[i][j] = g.aut().entry(i, j);
    out[i][n] = g.trans().coord(i);
  }
  out[n][n] = 1;
  return out;
}

std::vector<std::vector<Residue>> affine_product(const GroupShape& s,
                                                 const std::vector<std::vector<Residue>>& a,
                                                 const std::vector<std::vector<Residue>>& b) {
  const std::size_t n = a.size();
  std::vector<std::vector<Residue>> out(n, std::vector<Residue>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    const Residue mod = i + 1 < n ? s.modulus(static_cast<int>(i)) : 0;
    for (std::size_t j = 0; j < n; ++j) {
      Residue acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc += a[i][k] * b[k][j];
      out[i][j] = mod ? ((acc % mod) + mod) % mod : acc;
    }
  }
  return out;
}

std::vector<HolElement> all_elements(const GroupShape& s) {
  std::vector<HolElement> out;
  for (const auto& A : enumerate_automorphisms(s)) {
    for (std::uint64_t i = 0; i < s.order(); ++i) out.emplace_back(A, GroupElement::from_index(s, i));
  }
  return out;
}

}  // namespace

TEST_CASE("hol_mul, hol_inv and hol_order examples") {
  auto s = z2z16();
  HolElement t(AutMatrix::identity(s), GroupElement(s, {0, 1}));
  HolElement d(aut(s, {{1, 0}, {0, 9}}), GroupElement(s, {1, 0}));
  CHECK(hol_mul(HolElement::identity(s), d) == d);
  CHECK(hol_mul(t, d) == HolElement(aut(s, {{1, 0}, {0, 9}}), GroupElement(s, {1, 1})));
  CHECK(hol_mul(d, hol_inv(d)).is_identity());
  CHECK(hol_inv(t) == HolElement(AutMatrix::identity(s), GroupElement(s, {0, 15})));
  CHECK(hol_inv(d) == d);
  CHECK(hol_order(HolElement::identity(s)) == 1);
  CHECK(hol_order(t) == 16);
  CHECK(hol_order(d) == 2);
  CHECK(hol_pow(t, 5) == HolElement::translation(GroupElement(s, {0, 5})));
}

TEST_CASE("generate and is_regular") {
  auto s = z2z16();
  std::vector<HolElement> id{HolElement::identity(s)};
  auto trivial = generate(s, id);
  CHECK(trivial.size() == 1);
  CHECK_FALSE(is_regular(trivial));
  auto h = example_subgroup();
  CHECK(h.size() == 32);
  CHECK(is_regular(h));
  std::vector<HolElement> t2{HolElement::translation(GroupElement(s, {0, 2}))};
  CHECK(generate(s, t2).size() == 8);
  std::vector<HolElement> t1{HolElement::translation(GroupElement(s, {0, 1}))};
  CHECK_FALSE(is_regular(generate(s, t1)));
  for (std::uint64_t i = 0; i < s.order(); ++i) {
    auto x = GroupElement::from_index(s, i);
    CHECK(std::count_if(h.elements().begin(), h.elements().end(),
                        [&](const HolElement& g) { return g.trans() == x; }) == 1);
    REQUIRE(h.find_by_trans(x).has_value());
    CHECK(h.find_by_trans(x)->trans() == x);
  }
}

TEST_CASE("generate respects its bound") {
  auto s = z2z16();
  std::vector<HolElement> gens{HolElement::translation(GroupElement(s, {0, 1})),
                               HolElement::translation(GroupElement(s, {1, 0}))};
  CHECK_THROWS_AS(generate(s, gens, 16), BoundExceeded);
}

TEST_CASE("subgroup constructor checks closure") {
  auto s = z2z16();
  std::vector<HolElement> bad{HolElement::identity(s),
                              HolElement::translation(GroupElement(s, {0, 1}))};
  CHECK_THROWS(HolSubgroup(s, bad));
}

TEST_CASE("conjugation") {
  auto s = z2z16();
  auto h = example_subgroup();
  CHECK(conjugate(h, HolElement::identity(s)) == h);
  for (const auto& C : enumerate_automorphisms(s)) {
    auto k = conjugate(h, HolElement(C, GroupElement::zero(s)));
    CHECK(k.size() == h.size());
    CHECK(is_regular(k));
    std::vector<std::uint64_t> o1, o2;
    for (const auto& g : h.elements()) o1.push_back(hol_order(g));
    for (const auto& g : k.elements()) o2.push_back(hol_order(g));
    std::sort(o1.begin(), o1.end());
    std::sort(o2.begin(), o2.end());
    CHECK(o1 == o2);
  }
}

TEST_CASE("hol_mul agrees with affine matrices") {
  for (const char* text : {"2,4", "4,4", "2,2,2", "8"}) {
    CAPTURE(text);
    auto s = GroupShape::parse(text);
    auto all = all_elements(s);
    const std::uint64_t hol = all.size();
    const std::size_t stride = all.size() > 200 ? all.size() / 200 : 1;
    for (std::size_t i = 0; i < all.size(); i += stride) {
      CHECK(hol % hol_order(all[i]) == 0);
      for (std::size_t j = 0; j < all.size(); j += stride) {
        auto prod = hol_mul(all[i], all[j]);
        if (affine(prod) != affine_product(s, affine(all[i]), affine(all[j]))) {
          FAIL("affine mismatch at " << all[i].to_string() << " * " << all[j].to_string());
        }
      }
    }
  }
}
