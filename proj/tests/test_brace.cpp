#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "mmcbrace/brace.hpp"
#include "mmcbrace/errors.hpp"

using namespace mmc;

namespace {

GroupShape z2z16() { return GroupShape(2, {1, 4}); }

AutMatrix aut(const GroupShape& s, std::vector<std::vector<Residue>> raw) {
  return AutMatrix(EndoMatrix::canonicalize(s, raw));
}

Cocycle example_cocycle() {
  auto s = z2z16();
  return cocycle_extend(TwoGroupFamily::mmc(3), s, AutMatrix::identity(s), aut(s, {{1, 0}, {0, 9}}),
                        GroupElement(s, {0, 1}), GroupElement(s, {1, 0}));
}

HolSubgroup example_subgroup() {
  auto s = z2z16();
  std::vector<HolElement> gens{HolElement::translation(GroupElement(s, {0, 1})),
                               HolElement(aut(s, {{1, 0}, {0, 9}}), GroupElement(s, {1, 0}))};
  return generate(s, gens);
}

BraceTable relabel(const BraceTable& t, const std::vector<Label>& perm) {
  const auto n = t.size();
  std::vector<Label> add(static_cast<std::size_t>(n) * n), circ(add.size());
  for (Label x = 0; x < n; ++x) {
    for (Label y = 0; y < n; ++y) {
      add[static_cast<std::size_t>(perm[x]) * n + perm[y]] = perm[t.add(x, y)];
      circ[static_cast<std::size_t>(perm[x]) * n + perm[y]] = perm[t.circ(x, y)];
    }
  }
  return BraceTable(n, add, circ);
}

std::vector<Label> random_perm(Label n, std::mt19937& rng) {
  std::vector<Label> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin() + 1, p.end(), rng);
  return p;
}

// All regular subgroups of Hol(N): repeatedly pick an element over the
// smallest uncovered translation and close, keeping translations distinct.
void extend_regular(const GroupShape& s, const std::vector<AutMatrix>& auts,
                    std::vector<HolElement> gens, std::set<std::vector<std::uint64_t>>& seen,
                    std::vector<HolSubgroup>& out) {
  HolSubgroup h = gens.empty() ? HolSubgroup(s, {HolElement::identity(s)}) : generate(s, gens, s.order());
  std::vector<bool> covered(s.order(), false);
  for (const auto& g : h.elements()) {
    if (covered[g.trans().index()]) return;
    covered[g.trans().index()] = true;
  }
  if (h.size() == s.order()) {
    if (seen.insert(h.keys()).second) out.push_back(h);
    return;
  }
  std::uint64_t v = 0;
  while (covered[v]) ++v;
  for (const auto& A : auts) {
    auto next = gens;
    next.emplace_back(A, GroupElement::from_index(s, v));
    try {
      extend_regular(s, auts, next, seen, out);
    } catch (const BoundExceeded&) {
    }
  }
}

std::vector<HolSubgroup> regular_subgroups_small(const GroupShape& s) {
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<HolSubgroup> out;
  extend_regular(s, enumerate_automorphisms(s), {}, seen, out);
  return out;
}

}  // namespace

TEST_CASE("verify_brace on trivial, example and corrupted tables") {
  auto z8 = GroupShape(2, {3});
  CHECK(verify_brace(BraceTable::trivial(z8)).ok);
  auto t = brace_from_cocycle(example_cocycle());
  CHECK(verify_brace(t).ok);
  auto circ = t.circ_table();
  std::swap(circ[5 * 32 + 7], circ[5 * 32 + 8]);
  auto bad = verify_brace(BraceTable(32, t.add_table(), circ));
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.witness.empty());
  CHECK(verify_brace(BraceTable(1, {0}, {0})).ok);
}

TEST_CASE("regular subgroup round trip") {
  auto s = z2z16();
  std::vector<HolElement> translations;
  for (std::uint64_t i = 0; i < 32; ++i) translations.push_back(HolElement::translation(GroupElement::from_index(s, i)));
  HolSubgroup tr(s, translations);
  CHECK(brace_from_regular(tr) == BraceTable::trivial(s));
  CHECK(brace_to_regular(BraceTable::trivial(s), s) == tr);

  auto h = example_subgroup();
  auto t = brace_from_regular(h);
  CHECK(verify_brace(t).ok);
  CHECK(brace_to_regular(t, s) == h);
  CHECK(find_isomorphism(TwoGroupFamily::mmc(3), h).has_value());
  CHECK(brace_to_regular(brace_from_cocycle(example_cocycle()),
                         *find_additive_identification(brace_from_cocycle(example_cocycle()), s)) ==
        example_cocycle().regular_subgroup());
  CHECK(example_cocycle().regular_subgroup() == h);

  std::vector<HolElement> half{HolElement::identity(s)};
  CHECK_THROWS_AS(brace_from_regular(generate(s, half)), NotRegular);
  CHECK_THROWS_AS(brace_to_regular(t, GroupShape(2, {5})), AdditiveShapeMismatch);
}

TEST_CASE("order 8: every regular subgroup gives a brace and round-trips") {
  for (const char* text : {"8", "2,4", "2,2,2"}) {
    CAPTURE(text);
    auto s = GroupShape::parse(text);
    auto subs = regular_subgroups_small(s);
    CHECK(!subs.empty());
    for (const auto& h : subs) {
      auto t = brace_from_regular(h);
      auto v = verify_brace(t);
      CHECK_MESSAGE(v.ok, v.failure);
      CHECK(brace_to_regular(t, s) == h);
      CHECK(additive_shape(t) == s);
    }
  }
}

TEST_CASE("cocycle_extend examples") {
  auto c = example_cocycle();
  auto f = TwoGroupFamily::mmc(3);
  auto s = z2z16();
  for (Residue i = 0; i < 16; ++i) {
    CHECK(c.gamma(PresentedElement{0, i}) == GroupElement(s, {0, i}));
    CHECK(c.gamma(PresentedElement{1, i}) == GroupElement(s, {1, i}));
  }
  CHECK(c.x_generator() == HolElement::translation(GroupElement(s, {0, 1})));
  try {
    cocycle_extend(f, s, AutMatrix::identity(s), aut(s, {{1, 0}, {0, 9}}), GroupElement(s, {0, 1}),
                   GroupElement(s, {1, 1}));
    FAIL("expected RelationViolation");
  } catch (const RelationViolation& e) {
    CHECK(std::string(e.what()).find("pp4") != std::string::npos);
  }
  CHECK_THROWS_AS(cocycle_extend(f, s, aut(s, {{1, 0}, {0, 3}}), aut(s, {{1, 0}, {0, 9}}),
                                 GroupElement(s, {0, 1}), GroupElement(s, {1, 0})),
                  RelationViolation);
  CHECK_THROWS_AS(cocycle_extend(f, GroupShape(2, {2, 3}), AutMatrix::identity(GroupShape(2, {2, 3})),
                                 AutMatrix::identity(GroupShape(2, {2, 3})),
                                 GroupElement(GroupShape(2, {2, 3}), {0, 1}),
                                 GroupElement(GroupShape(2, {2, 3}), {1, 0})),
                  RelationViolation);
  auto t = brace_from_cocycle(c);
  CHECK(additive_shape(t) == s);
  CHECK(brace_from_regular(c.regular_subgroup()).size() == 32);
  CHECK(braces_isomorphic(t, brace_from_regular(c.regular_subgroup())).has_value());
}

TEST_CASE("socle and ideals") {
  auto z8 = GroupShape(2, {3});
  auto triv = BraceTable::trivial(z8);
  CHECK(socle(triv).size() == 8);
  auto f = TwoGroupFamily::mmc(3);
  auto t = brace_from_cocycle(example_cocycle());
  auto soc = socle(t);
  std::vector<Label> expect;
  for (Residue i = 0; i < 16; ++i) expect.push_back(PresentedElement{0, i}.index(f));
  std::sort(expect.begin(), expect.end());
  CHECK(soc == expect);
  CHECK(is_ideal(t, soc).ok);
  CHECK(is_right_ideal(t, {0}).ok);
  CHECK(is_ideal(t, {0}).ok);
  // rho fixes gamma(b) = (1,0), so {0, b} is a right ideal, but <b> is not
  // normal in M_32.
  const std::vector<Label> zb{0, PresentedElement{1, 0}.index(f)};
  CHECK(is_right_ideal(t, zb).ok);
  auto r = is_ideal(t, zb);
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.witness.empty());
  auto r2 = is_right_ideal(t, {0, PresentedElement{0, 1}.index(f)});
  CHECK_FALSE(r2.ok);
  CHECK(r2.witness.size() == 2);
}

TEST_CASE("brace identities on the example") {
  auto t = brace_from_cocycle(example_cocycle());
  const auto n = t.size();
  for (Label a = 0; a < n; ++a) {
    // inverse formula: a^-1 = -rho_{a^-1}(a)
    CHECK(t.circ_inv(a) == t.neg(t.rho(t.circ_inv(a), a)));
    for (Label x = 0; x < n; ++x) {
      for (Label y = 0; y < n; ++y) {
        if (t.rho(a, t.add(x, y)) != t.add(t.rho(a, x), t.rho(a, y))) FAIL("rho not additive");
        // rho anti-homomorphism: rho_{x o y} = rho_y rho_x
        if (t.rho(t.circ(x, y), a) != t.rho(y, t.rho(x, a))) FAIL("rho not anti-homomorphic");
      }
    }
  }
}

TEST_CASE("isomorphism is reflexive, symmetric and label invariant") {
  std::mt19937 rng(12345);
  auto t = brace_from_cocycle(example_cocycle());
  auto self = braces_isomorphic(t, t);
  REQUIRE(self.has_value());
  for (int k = 0; k < 5; ++k) {
    auto u = relabel(t, random_perm(t.size(), rng));
    CHECK(verify_brace(u).ok);
    auto f = braces_isomorphic(t, u);
    REQUIRE(f.has_value());
    for (Label x = 0; x < t.size(); ++x) {
      for (Label y = 0; y < t.size(); ++y) {
        if ((*f)[t.add(x, y)] != u.add((*f)[x], (*f)[y])) FAIL("not additive");
        if ((*f)[t.circ(x, y)] != u.circ((*f)[x], (*f)[y])) FAIL("not multiplicative");
      }
    }
    CHECK(braces_isomorphic(u, t).has_value());
  }
  auto triv = BraceTable::trivial(z2z16());
  CHECK_FALSE(braces_isomorphic(t, triv).has_value());
  CHECK_FALSE(braces_isomorphic(triv, t).has_value());
}

TEST_CASE("additive identification") {
  auto t = brace_from_cocycle(example_cocycle());
  CHECK(additive_shape(t) == z2z16());
  auto ident = find_additive_identification(t, z2z16());
  REQUIRE(ident.has_value());
  CHECK(brace_to_regular(t, *ident).size() == 32);
  CHECK_FALSE(find_additive_identification(t, GroupShape(2, {5})).has_value());
  CHECK(additive_shape(BraceTable::trivial(GroupShape(2, {1, 1, 2}))) == GroupShape(2, {1, 1, 2}));
}
