#pragma once

// The full check suite behind `mmcbrace verify`.

#include <functional>
#include <string>
#include <vector>

#include "mmcbrace/json_io.hpp"

namespace mmc {

struct VerifyOptions {
  int m = 3;
  SearchOptions search;
  bool unpruned_oracle = false;
};

struct VerifyItem {
  std::string name;
  bool ok = true;
  bool informational = false;  // reported, never fails the run
  std::string detail;
  Json data;
  double seconds = 0;  // not part of the JSON report
};

struct VerifyReport {
  int m = 0;
  std::vector<VerifyItem> items;
  bool ok() const;
  const VerifyItem* first_failure() const;
  Json to_json() const;
};

// Expected |Aut(N)| for the five candidate additive groups, in the order
// of candidate_additive_shapes(m), for m >= 2.
std::vector<std::uint64_t> expected_aut_orders(int m);

std::uint64_t count_automorphisms(const GroupShape& shape, std::uint64_t bound, std::uint64_t* sylow = nullptr);

// Throws FamilyMismatch for m < 3. on_item is called after each item.
VerifyReport run_verify(const VerifyOptions& opts,
                        const std::function<void(const VerifyItem&)>& on_item = {});

}  // namespace mmc
