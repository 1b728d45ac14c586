#include "mmcbrace/verify.hpp"

#include <chrono>
#include <optional>

#include "mmcbrace/errors.hpp"
#include "mmcbrace/families.hpp"

namespace mmc {

bool VerifyReport::ok() const { return first_failure() == nullptr; }

const VerifyItem* VerifyReport::first_failure() const {
  for (const auto& item : items) {
    if (!item.ok && !item.informational) return &item;
  }
  return nullptr;
}

Json VerifyReport::to_json() const {
  Json items_json = Json::array();
  for (const auto& item : items) {
    items_json.push_back(Json{{"data", item.data},
                              {"detail", item.detail},
                              {"informational", item.informational},
                              {"name", item.name},
                              {"ok", item.ok}});
  }
  return Json{{"items", items_json}, {"m", m}, {"ok", ok()}};
}

std::vector<std::uint64_t> expected_aut_orders(int m) {
  if (m < 2) throw FamilyMismatch("m must be at least 2");
  const std::uint64_t p = std::uint64_t{1} << m;
  return {2 * p, 4 * p, m > 2 ? 16 * p : 96, 16 * p * 3, m > 2 ? 128 * p * 21 : 20160};
}

std::uint64_t count_automorphisms(const GroupShape& shape, std::uint64_t bound, std::uint64_t* sylow) {
  std::uint64_t n = 0, s = 0;
  for_each_automorphism(
      shape,
      [&](const AutMatrix& a) {
        ++n;
        s += is_upper_unipotent_mod_p(a.endo()) ? 1 : 0;
      },
      bound);
  if (sylow) *sylow = s;
  return n;
}

namespace {

std::uint64_t two_part(std::uint64_t n) { return n & (~n + 1); }

}  // namespace

VerifyReport run_verify(const VerifyOptions& opts, const std::function<void(const VerifyItem&)>& on_item) {
  const int m = opts.m;
  if (m < kMinDescriptorM) {
    throw FamilyMismatch("verify needs m >= " + std::to_string(kMinDescriptorM) +
                         ": the classification covers braces of size 2^(m+2) with m >= 3");
  }
  TwoGroupFamily::mmc(m);
  VerifyReport report;
  report.m = m;

  auto run = [&](const std::string& name, const std::function<void(VerifyItem&)>& body) {
    VerifyItem item;
    item.name = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
      body(item);
    } catch (const std::exception& e) {
      item.ok = false;
      item.detail = e.what();
    }
    item.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (on_item) on_item(item);
    report.items.push_back(std::move(item));
  };

  run("aut-orders", [&](VerifyItem& item) {
    Json rows = Json::array();
    auto check = [&](int mm) {
      auto shapes = candidate_additive_shapes(mm);
      auto expected = expected_aut_orders(mm);
      for (std::size_t i = 0; i < shapes.size(); ++i) {
        std::uint64_t sylow = 0;
        auto n = count_automorphisms(shapes[i], opts.search.enumeration_bound, &sylow);
        bool ok = n == expected[i] && sylow == two_part(n);
        item.ok = item.ok && ok;
        rows.push_back(Json{{"aut_order", n}, {"expected", expected[i]}, {"m", mm},
                            {"shape", shapes[i].to_string()}, {"sylow_order", sylow}});
      }
    };
    check(m);
    if (m == 3) check(2);
    item.data = rows;
    item.detail = std::to_string(rows.size()) + " shapes";
  });

  run("normal-subgroups", [&](VerifyItem& item) {
    Json rows = Json::array();
    for (int mm = m; mm <= std::min(m + 1, kMaxSubgroupM); ++mm) {
      auto r = verify_subgroup_classification(TwoGroupFamily::mmc(mm));
      item.ok = item.ok && r.ok;
      rows.push_back(Json{{"m", mm}, {"non_normal", r.non_normal}, {"ok", r.ok}, {"problems", r.problems},
                          {"subgroups", r.subgroup_count}});
    }
    item.data = rows;
  });

  std::optional<Census> cyclic, noncyclic;
  run("additive-exclusion", [&](VerifyItem& item) {
    auto shapes = candidate_additive_shapes(m);
    Json rows = Json::array();
    for (std::size_t i = 0; i < shapes.size(); ++i) {
      Census c = enumerate_mmc_regular(shapes[i], m, opts.search);
      const bool expect = i < 2;
      item.ok = item.ok && (c.records.empty() != expect);
      rows.push_back(Json{{"exists", !c.records.empty()}, {"expected", expect}, {"iso_classes", c.iso_classes.size()},
                          {"shape", shapes[i].to_string()}, {"subgroups", c.records.size()}});
      if (i == 0) cyclic = std::move(c);
      if (i == 1) noncyclic = std::move(c);
    }
    item.data = rows;
    item.detail = "regular subgroups exist only on " + shapes[0].to_string() + " and " + shapes[1].to_string();
  });
  if (!cyclic) cyclic = enumerate_mmc_regular(candidate_additive_shapes(m)[0], m, opts.search);
  if (!noncyclic) noncyclic = enumerate_mmc_regular(family_shape(m), m, opts.search);

  run("cyclic-uniqueness", [&](VerifyItem& item) {
    item.ok = cyclic->iso_classes.size() == 1;
    item.data = Json{{"iso_classes", cyclic->iso_classes.size()}, {"subgroups", cyclic->records.size()}};
    item.detail = std::to_string(cyclic->iso_classes.size()) + " class(es) on " + cyclic->shape.to_string();
  });

  run("class-count", [&](VerifyItem& item) {
    const std::size_t bound = static_cast<std::size_t>(4 * m - 5);
    item.ok = noncyclic->iso_classes.size() >= bound;
    item.data = Json{{"iso_classes", noncyclic->iso_classes.size()}, {"lower_bound", bound},
                     {"subgroups", noncyclic->records.size()}};
    item.detail = std::to_string(noncyclic->iso_classes.size()) + " classes, bound " + std::to_string(bound);
  });

  run("family-validity", [&](VerifyItem& item) {
    std::size_t built = 0;
    Json failures = Json::array();
    for (const auto& d : all_descriptors(m)) {
      try {
        BraceTable t = build_family_brace(d);
        if (additive_shape(t) != family_shape(m)) throw NotABrace("wrong additive group");
        ++built;
      } catch (const std::exception& e) {
        failures.push_back(d.to_string() + ": " + e.what());
      }
    }
    const std::size_t stride = m == 3 ? 1 : 7;
    auto sep = cross_form_separation(m, stride);
    item.ok = failures.empty() && sep.ok;
    item.data = Json{{"built", built}, {"failures", failures}, {"isomorphic_pairs", sep.isomorphic_pairs},
                     {"pairs_checked", sep.pairs}, {"sampled", stride > 1}};
    item.detail = std::to_string(built) + " descriptors built, " + std::to_string(sep.pairs) +
                  " cross-form pairs checked";
  });

  run("coverage", [&](VerifyItem& item) {
    auto cov = families_cover_census(m, *noncyclic);
    item.ok = cov.ok;
    item.data = Json{{"matches", cov.matches}, {"uncovered", cov.uncovered}};
    item.detail = std::to_string(cov.uncovered.size()) + " uncovered classes";
  });

  run("socle-facts", [&](VerifyItem& item) {
    Json rows = Json::array();
    std::size_t violations = 0;
    for (const Census* c : {&*cyclic, &*noncyclic}) {
      auto r = verify_socle_facts(*c);
      item.ok = item.ok && r.ok;
      violations += r.violations.size();
      rows.push_back(Json{{"checked", r.checked}, {"shape", c->shape.to_string()}, {"violations", r.violations}});
    }
    item.data = rows;
    item.detail = std::to_string(violations) + " violations";
  });

  run("geometric-lemmas", [&](VerifyItem& item) {
    Json rows = Json::array();
    for (int mm = 2; mm <= 10; ++mm) {
      auto a = verify_lemma_geometric(mm);
      auto b = verify_lemma_non_vanishing(mm);
      item.ok = item.ok && a.ok && b.ok;
      rows.push_back(Json{{"counterexamples", a.counterexamples.size() + b.counterexamples.size()},
                          {"m", mm}, {"sum_cases", a.checked}, {"non_vanishing_cases", b.checked}});
    }
    item.data = rows;
  });

  if (opts.unpruned_oracle) {
    run("search-completeness", [&](VerifyItem& item) {
      auto unpruned = unpruned_regular_subgroups(noncyclic->shape, m, opts.search);
      std::set<std::vector<std::uint64_t>> pruned;
      for (const auto& r : noncyclic->records) pruned.insert(r.element_keys);
      item.ok = pruned == unpruned;
      item.data = Json{{"pruned", pruned.size()}, {"unpruned", unpruned.size()}};
      item.detail = std::to_string(pruned.size()) + " pruned vs " + std::to_string(unpruned.size()) + " unpruned";
    });
  }

  std::optional<Stratification> strat;
  run("socle-stratification", [&](VerifyItem& item) {
    strat = socle_stratification(m, *noncyclic);
    Json bounds = Json::array();
    for (const auto& b : strat->bounds) {
      bounds.push_back(Json{{"expected", b.expected}, {"name", b.name}, {"observed", b.observed},
                            {"ok", b.ok}, {"relation", b.relation}});
    }
    item.ok = strat->ok;
    item.data = bounds;
    for (const auto& b : strat->bounds) {
      if (b.ok) continue;
      if (!item.detail.empty()) item.detail += "; ";
      item.detail += b.name + ": " + std::to_string(b.observed) + ", expected " + b.relation + " " + std::to_string(b.expected);
    }
    if (item.detail.empty()) item.detail = std::to_string(strat->bounds.size()) + " bounds hold";
  });

  run("open-question-count", [&](VerifyItem& item) {
    item.informational = true;
    if (!strat) throw IncompleteCensus("no stratification");
    Json rows = Json::array();
    for (const auto& r : strat->rows) {
      rows.push_back(Json{{"classes", r.classes}, {"covered", r.covered}, {"family", r.family}, {"label", r.label}});
    }
    item.data = Json{{"corollary_bound", strat->corollary_bound},
                     {"per_socle_sum", strat->per_socle_sum},
                     {"power_socles_inner_range", strat->power_socles_inner},
                     {"power_socles_with_a", strat->power_socles_with_a},
                     {"rows", rows},
                     {"total_classes", strat->total_classes}};
    item.detail = "census " + std::to_string(strat->total_classes) + " classes; per-socle sum 4m-3 = " +
                  std::to_string(strat->per_socle_sum) + "; corollary 4m-5 = " +
                  std::to_string(strat->corollary_bound);
  });

  return report;
}

}  // namespace mmc
