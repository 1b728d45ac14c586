#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "mmcbrace/census.hpp"
#include "mmcbrace/errors.hpp"

using namespace mmc;

namespace {

const Census& census_m3() {
  static const Census c = enumerate_mmc_regular(GroupShape(2, {1, 4}), 3);
  return c;
}

const Census& census_m4() {
  static const Census c = enumerate_mmc_regular(GroupShape(2, {1, 5}), 4);
  return c;
}

HolSubgroup example_subgroup() {
  GroupShape s(2, {1, 4});
  std::vector<HolElement> gens{
      HolElement::translation(GroupElement(s, {0, 1})),
      HolElement(AutMatrix(EndoMatrix::canonicalize(s, {{1, 0}, {0, 9}})), GroupElement(s, {1, 0}))};
  return generate(s, gens);
}

HolSubgroup subgroup_of(const CensusRecord& r) {
  std::vector<HolElement> gens{r.X, r.Y};
  return generate(r.shape, gens);
}

// Automorphisms of M_{2^(m+2)} as permutations of presented indices,
// from all generator pairs satisfying the defining relations.
std::vector<std::vector<Label>> mmc_automorphisms(int m) {
  auto fam = TwoGroupFamily::mmc(m);
  const auto n = static_cast<std::uint32_t>(fam.order());
  const Residue twist = fam.twist();
  std::vector<std::vector<Label>> out;
  for (std::uint32_t xi = 0; xi < n; ++xi) {
    auto x = PresentedElement::from_index(fam, xi);
    if (pg_order(x, fam) != static_cast<std::uint64_t>(fam.a_order())) continue;
    for (std::uint32_t yi = 0; yi < n; ++yi) {
      auto y = PresentedElement::from_index(fam, yi);
      if (pg_order(y, fam) != 2) continue;
      if (!(pg_mul(pg_mul(y, x, fam), y, fam) == pg_pow(x, static_cast<std::uint64_t>(twist), fam))) continue;
      std::vector<Label> phi(n);
      std::set<Label> image;
      for (std::uint32_t g = 0; g < n; ++g) {
        auto e = PresentedElement::from_index(fam, g);
        auto img = pg_mul(pg_pow(y, static_cast<std::uint64_t>(e.eps), fam),
                          pg_pow(x, static_cast<std::uint64_t>(e.i), fam), fam);
        phi[g] = img.index(fam);
        image.insert(phi[g]);
      }
      if (image.size() == n) out.push_back(phi);
    }
  }
  return out;
}

// Census braces share the presented multiplication, so an isomorphism is
// an automorphism of M that is also additive.
std::size_t oracle_class_count(const Census& c) {
  auto auts = mmc_automorphisms(c.m);
  std::vector<int> cls(c.records.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < c.records.size(); ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = next;
    const auto& t1 = c.records[i].brace;
    for (std::size_t j = i + 1; j < c.records.size(); ++j) {
      if (cls[j] >= 0) continue;
      const auto& t2 = c.records[j].brace;
      for (const auto& phi : auts) {
        bool additive = true;
        for (Label x = 0; x < t1.size() && additive; ++x) {
          for (Label y = x; y < t1.size() && additive; ++y) {
            additive = phi[t1.add(x, y)] == t2.add(phi[x], phi[y]);
          }
        }
        if (additive) {
          cls[j] = next;
          break;
        }
      }
    }
    ++next;
  }
  return static_cast<std::size_t>(next);
}

}  // namespace

TEST_CASE("census on Z/2 x Z/16 contains the example subgroup") {
  const auto& c = census_m3();
  REQUIRE_FALSE(c.records.empty());
  auto keys = example_subgroup().keys();
  bool found = false;
  for (const auto& r : c.records) {
    if (r.element_keys == keys) {
      found = true;
      CHECK(r.socle_desc == "<a>");
    }
  }
  CHECK(found);
}

TEST_CASE("exact census sizes") {
  CHECK(census_m3().records.size() == 24);
  CHECK(census_m3().iso_classes.size() == 11);
  CHECK(census_m4().records.size() == 48);
  CHECK(census_m4().iso_classes.size() == 16);
  auto z32 = enumerate_mmc_regular(GroupShape(2, {5}), 3);
  CHECK(z32.records.size() == 8);
  CHECK(z32.iso_classes.size() == 1);
  CHECK(enumerate_mmc_regular(GroupShape(2, {6}), 4).iso_classes.size() == 1);
  CHECK(enumerate_mmc_regular(GroupShape(2, {2, 3}), 3).records.empty());
}

TEST_CASE("classification agrees with the automorphism oracle") {
  CHECK(mmc_automorphisms(3).size() == 32);
  CHECK(mmc_automorphisms(4).size() == 64);
  CHECK(oracle_class_count(census_m3()) == census_m3().iso_classes.size());
  CHECK(oracle_class_count(census_m4()) == census_m4().iso_classes.size());
}

TEST_CASE("pruned and unpruned searches agree at m = 3") {
  std::set<std::vector<std::uint64_t>> pruned;
  for (const auto& r : census_m3().records) pruned.insert(r.element_keys);
  CHECK(unpruned_regular_subgroups(GroupShape(2, {1, 4}), 3) == pruned);
}

TEST_CASE("records satisfy the relations and describe M-type braces") {
  for (const Census* c : {&census_m3(), &census_m4()}) {
    auto fam = TwoGroupFamily::mmc(c->m);
    const auto table = multiplication_table(fam);
    const auto half = std::uint64_t{1} << c->m;
    for (const auto& r : c->records) {
      const auto& S = r.X.aut();
      const auto& T = r.Y.aut();
      CHECK(half % matrix_order(S) == 0);
      CHECK(compose(T, T) == AutMatrix::identity(c->shape));
      CHECK(compose(T, S) == compose(S, T));
      CHECK(satisfies_relations(fam, r.X, r.Y));
      CHECK(verify_brace(r.brace).ok);
      CHECK(r.brace.circ_table() == table);
      CHECK(additive_shape(r.brace) == c->shape);
      CHECK(r.subgroup_key == subgroup_digest(r.element_keys));
      auto h = subgroup_of(r);
      CHECK(is_regular(h));
      CHECK(find_isomorphism(fam, h).has_value());
      auto rebuilt = make_record(c->m, h);
      rebuilt.iso_class_id = r.iso_class_id;
      CHECK(rebuilt == r);
    }
  }
}

TEST_CASE("census is closed under conjugation with stable classes") {
  const auto& c = census_m3();
  std::map<std::vector<std::uint64_t>, int> cls;
  for (const auto& r : c.records) cls[r.element_keys] = r.iso_class_id;
  for (const auto& C : enumerate_automorphisms(c.shape)) {
    HolElement g(C, GroupElement::zero(c.shape));
    for (const auto& r : c.records) {
      auto k = conjugate(subgroup_of(r), g);
      auto it = cls.find(k.keys());
      REQUIRE(it != cls.end());
      CHECK(it->second == r.iso_class_id);
    }
  }
}

TEST_CASE("class bookkeeping") {
  for (const Census* c : {&census_m3(), &census_m4()}) {
    std::size_t total = 0;
    for (const auto& k : c->iso_classes) {
      total += k.size;
      std::string least = "g";
      for (const auto& r : c->records) {
        if (r.iso_class_id == k.id) least = std::min(least, r.subgroup_key);
      }
      CHECK(k.representative == least);
      CHECK(c->representative(k).iso_class_id == k.id);
    }
    CHECK(total == c->records.size());
    CHECK(std::is_sorted(c->records.begin(), c->records.end(),
                         [](const CensusRecord& a, const CensusRecord& b) { return a.subgroup_key < b.subgroup_key; }));
    for (std::size_t i = 0; i < c->records.size(); ++i) {
      for (std::size_t j = i + 1; j < c->records.size(); ++j) {
        const auto& a = c->records[i];
        const auto& b = c->records[j];
        if (brace_fingerprint(a.brace) != brace_fingerprint(b.brace)) {
          CHECK(a.iso_class_id != b.iso_class_id);
        }
      }
    }
  }
}

TEST_CASE("worker count does not change the census") {
  SearchOptions opts;
  opts.workers = 3;
  CHECK(enumerate_mmc_regular(GroupShape(2, {1, 4}), 3, opts) == census_m3());
  CHECK(enumerate_mmc_regular(GroupShape(2, {1, 5}), 4, opts) == census_m4());
}

TEST_CASE("socle facts") {
  for (const Census* c : {&census_m3(), &census_m4()}) {
    auto r = verify_socle_facts(*c);
    CHECK(r.ok);
    CHECK(r.checked == c->records.size());
  }
  auto z32 = enumerate_mmc_regular(GroupShape(2, {5}), 3);
  CHECK(verify_socle_facts(z32).ok);
  auto fam = TwoGroupFamily::mmc(3);
  CHECK(socle_class_label(fam, "<a>") == "<b*a>");
  CHECK(socle_class_label(fam, "<a^2>") == "<a^2>");
  CHECK(socle_family("<b,a^4>") == "<b,a^k>");
  CHECK(socle_family("<b*a^2>") == "<b*a^k>");
  CHECK(socle_family("<a^4>") == "<a^k>");
  CHECK(socle_family("<b*a>") == "<b*a>");
}

TEST_CASE("additive scan at m = 3") {
  auto rows = additive_scan(3);
  REQUIRE(rows.size() == 5);
  std::vector<std::string> shapes;
  for (const auto& r : rows) shapes.push_back(r.shape.to_string());
  CHECK(shapes == std::vector<std::string>{"32", "2,16", "4,8", "2,2,8", "2,2,2,4"});
  CHECK(rows[0].exists());
  CHECK(rows[1].exists());
  CHECK_FALSE(rows[2].exists());
  CHECK_FALSE(rows[3].exists());
  CHECK_FALSE(rows[4].exists());
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(enumerate_mmc_regular(GroupShape(2, {1, 3}), 3), ShapeMismatch);
  SearchOptions tight;
  tight.enumeration_bound = 10;
  CHECK_THROWS_AS(enumerate_mmc_regular(GroupShape(2, {1, 4}), 3, tight), EnumerationBoundExceeded);
  SearchOptions quick;
  quick.time_budget = 1e-9;
  CHECK_THROWS_AS(enumerate_mmc_regular(GroupShape(2, {1, 5}), 4, quick), BoundExceeded);
  GroupShape s(2, {1, 4});
  std::vector<HolElement> t;
  for (std::uint64_t i = 0; i < 32; ++i) t.push_back(HolElement::translation(GroupElement::from_index(s, i)));
  CHECK_THROWS_AS(make_record(3, HolSubgroup(s, t)), FamilyMismatch);
  CHECK_THROWS_AS(census_m3().record("0000000000000000"), IncompleteCensus);
}
