#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <thread>

#include "mmcbrace/errors.hpp"
#include "mmcbrace/families.hpp"
#include "mmcbrace/verify.hpp"

using namespace mmc;

namespace {

struct RunConfig {
  int m = 3;
  std::string shape;
  std::string out;
  std::string descriptor;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  double time_budget = 0;
  bool unpruned_oracle = false;
};

SearchOptions search_options(const RunConfig& cfg) {
  SearchOptions o;
  o.workers = cfg.workers;
  o.time_budget = cfg.time_budget;
  o.enumeration_bound = enumeration_bound_from_env(kDefaultEnumerationBound);
  return o;
}

GroupShape require_shape(const RunConfig& cfg) {
  if (cfg.shape.empty()) throw ParseError("--shape is required");
  return GroupShape::parse(cfg.shape);
}

void maybe_write(const RunConfig& cfg, const Json& j) {
  if (!cfg.out.empty()) write_json_file(cfg.out, j);
}

void print_table(const Stratification& s) {
  std::printf("%-12s %8s %9s\n", "socle", "classes", "covered");
  for (const auto& r : s.rows) std::printf("%-12s %8zu %9zu\n", r.label.c_str(), r.classes, r.covered);
}

int cmd_aut(const RunConfig& cfg) {
  auto shape = require_shape(cfg);
  std::uint64_t sylow = 0;
  auto n = count_automorphisms(shape, enumeration_bound_from_env(kDefaultEnumerationBound), &sylow);
  std::printf("shape %s: |Aut| = %llu, Sylow 2-subgroup (upper unipotent mod 2) = %llu\n",
              shape.to_string().c_str(), static_cast<unsigned long long>(n),
              static_cast<unsigned long long>(sylow));
  maybe_write(cfg, Json{{"aut_order", n}, {"shape", shape.to_string()}, {"sylow_order", sylow}});
  return 0;
}

int cmd_census(const RunConfig& cfg) {
  auto shape = cfg.shape.empty() ? family_shape(cfg.m) : GroupShape::parse(cfg.shape);
  Census c = enumerate_mmc_regular(shape, cfg.m, search_options(cfg));
  std::printf("m=%d shape %s: %zu subgroups, %zu iso classes\n", cfg.m, shape.to_string().c_str(),
              c.records.size(), c.iso_classes.size());
  if (shape == family_shape(cfg.m) && cfg.m >= kMinDescriptorM) {
    print_table(socle_stratification(cfg.m, c));
  } else {
    const TwoGroupFamily fam = TwoGroupFamily::mmc(cfg.m);
    std::map<std::string, std::size_t> counts;
    for (const auto& k : c.iso_classes) ++counts[socle_class_label(fam, c.representative(k).socle_desc)];
    std::printf("%-12s %8s\n", "socle", "classes");
    for (const auto& [label, n] : counts) std::printf("%-12s %8zu\n", label.c_str(), n);
  }
  if (!cfg.out.empty()) export_census(c, cfg.out);
  return 0;
}

int cmd_scan(const RunConfig& cfg) {
  auto rows = additive_scan(cfg.m, search_options(cfg));
  Json out = Json::array();
  std::printf("%-10s %10s %12s %7s\n", "shape", "subgroups", "iso_classes", "exists");
  for (const auto& r : rows) {
    std::printf("%-10s %10zu %12zu %7s\n", r.shape.to_string().c_str(), r.subgroups, r.iso_classes,
                r.exists() ? "yes" : "no");
    out.push_back(Json{{"exists", r.exists()}, {"iso_classes", r.iso_classes}, {"shape", r.shape.to_string()},
                       {"subgroups", r.subgroups}});
  }
  maybe_write(cfg, Json{{"m", cfg.m}, {"shapes", out}});
  return 0;
}

int cmd_families(const RunConfig& cfg) {
  const int m = cfg.m;
  Json built = Json::array();
  bool ok = true;
  for (const auto& d : all_descriptors(m)) {
    BraceTable t = build_family_brace(d);
    auto soc = socle(t);
    built.push_back(Json{{"descriptor", d.to_string()},
                         {"socle", socle_class_label(TwoGroupFamily::mmc(m),
                                                     catalogue_form(TwoGroupFamily::mmc(m), soc))}});
  }
  std::printf("m=%d: %zu descriptors built\n", m, built.size());
  auto sep = cross_form_separation(m, m == 3 ? 1 : 7);
  std::printf("cross-form: %zu pairs, %zu isomorphic\n", sep.pairs, sep.isomorphic_pairs.size());
  ok = ok && sep.ok;
  Census c = enumerate_mmc_regular(family_shape(m), m, search_options(cfg));
  auto cov = families_cover_census(m, c);
  auto strat = socle_stratification(m, c);
  std::printf("census: %zu iso classes, %zu uncovered\n", c.iso_classes.size(), cov.uncovered.size());
  print_table(strat);
  ok = ok && cov.ok;
  maybe_write(cfg, Json{{"coverage", Json{{"matches", cov.matches}, {"uncovered", cov.uncovered}}},
                        {"descriptors", built},
                        {"m", m},
                        {"separation", Json{{"isomorphic_pairs", sep.isomorphic_pairs}, {"pairs", sep.pairs}}}});
  return ok ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg) {
  VerifyOptions opts;
  opts.m = cfg.m;
  opts.search = search_options(cfg);
  opts.unpruned_oracle = cfg.unpruned_oracle;
  auto report = run_verify(opts, [](const VerifyItem& item) {
    const char* tag = item.informational ? "INFO" : (item.ok ? "PASS" : "FAIL");
    std::printf("%-5s %-22s %7.2fs  %s\n", tag, item.name.c_str(), item.seconds, item.detail.c_str());
    std::fflush(stdout);
  });
  maybe_write(cfg, report.to_json());
  if (const auto* f = report.first_failure()) {
    std::fprintf(stderr, "verify failed: %s\n", f->name.c_str());
    return 1;
  }
  std::printf("all checks passed\n");
  return 0;
}

int cmd_export(const RunConfig& cfg) {
  if (cfg.out.empty()) throw ParseError("--out is required");
  if (!cfg.descriptor.empty()) {
    auto d = BraceDescriptor::parse(cfg.descriptor);
    Cocycle c = descriptor_cocycle(d);
    write_json_file(cfg.out, Json{{"brace", to_json(brace_from_cocycle(c))}, {"cocycle", to_json(c)},
                                  {"descriptor", d.to_string()}});
  } else {
    auto shape = cfg.shape.empty() ? family_shape(cfg.m) : GroupShape::parse(cfg.shape);
    export_census(enumerate_mmc_regular(shape, cfg.m, search_options(cfg)), cfg.out);
  }
  std::printf("wrote %s\n", cfg.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Right braces with modular maximal-cyclic adjoint group"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_m = [&](CLI::App* sub) { sub->add_option("--m", cfg.m, "m, the brace has size 2^(m+2)")->check(CLI::Range(2, 12)); };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "write JSON to this path");
    sub->add_option("--workers", cfg.workers, "parallel search workers")->check(CLI::PositiveNumber);
    sub->add_option("--time-budget", cfg.time_budget, "seconds per census search, 0 for none");
  };

  auto* aut = app.add_subcommand("aut", "automorphism group order of an abelian p-group");
  aut->add_option("--shape", cfg.shape, "cyclic orders, e.g. 2,16")->required();
  aut->add_option("--out", cfg.out, "write JSON to this path");

  auto* census = app.add_subcommand("census", "enumerate and classify regular subgroups");
  add_m(census);
  census->add_option("--shape", cfg.shape, "additive group, default 2,2^(m+1)");
  add_common(census);

  auto* scan = app.add_subcommand("scan-additive", "census over the five candidate additive groups");
  add_m(scan);
  add_common(scan);

  auto* fams = app.add_subcommand("families", "build the descriptor families and compare with the census");
  add_m(fams);
  add_common(fams);

  auto* verify = app.add_subcommand("verify", "run the full check suite");
  add_m(verify);
  add_common(verify);
  verify->add_flag("--unpruned-oracle", cfg.unpruned_oracle, "cross-check the pruned search by brute force");

  auto* exp = app.add_subcommand("export", "write a census or a descriptor brace as JSON");
  add_m(exp);
  exp->add_option("--shape", cfg.shape, "additive group, default 2,2^(m+1)");
  exp->add_option("--descriptor", cfg.descriptor, "e.g. m=3:I:x=0,y=1,z=2");
  add_common(exp);
  exp->get_option("--out")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*aut) return cmd_aut(cfg);
    if (*census) return cmd_census(cfg);
    if (*scan) return cmd_scan(cfg);
    if (*fams) return cmd_families(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*exp) return cmd_export(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
