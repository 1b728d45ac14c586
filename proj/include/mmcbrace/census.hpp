#pragma once

// Exhaustive search for regular subgroups of Hol(N) isomorphic to
// M_{2^(m+2)}, and their classification up to brace isomorphism.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mmcbrace/brace.hpp"

namespace mmc {

struct SearchOptions {
  unsigned workers = 1;
  std::uint64_t enumeration_bound = kDefaultEnumerationBound;
  // Seconds; 0 disables the check. Exceeding it throws BoundExceeded.
  double time_budget = 0;
};

struct CensusRecord {
  int m = 0;
  GroupShape shape;
  // Canonical generators: X is the element of least key with order
  // 2^(m+1), Y the least partner with Y^2 = 1, YXY = X^(1+2^m), Y not in <X>.
  HolElement X;
  HolElement Y;
  std::vector<std::uint64_t> element_keys;  // sorted HolElement keys
  std::string subgroup_key;                 // 16 hex digits, FNV-1a of element_keys
  // Labels are PresentedElement indices of M_{2^(m+2)}: circ is the
  // presented multiplication and x + y is pulled back through the
  // translation parts of a^i -> X^i, b*a^i -> X^i Y.
  BraceTable brace;
  std::string socle_desc;  // catalogue form of the socle, e.g. "<a>"
  int iso_class_id = -1;

  friend bool operator==(const CensusRecord&, const CensusRecord&) = default;
};

struct IsoClass {
  int id = 0;
  std::size_t size = 0;
  std::string representative;  // least subgroup_key in the class

  friend bool operator==(const IsoClass&, const IsoClass&) = default;
};

struct Census {
  int m = 0;
  GroupShape shape;
  std::vector<CensusRecord> records;  // sorted by subgroup_key
  std::vector<IsoClass> iso_classes;  // sorted by id
  bool classified = false;

  const CensusRecord& record(const std::string& subgroup_key) const;
  const CensusRecord& representative(const IsoClass& c) const { return record(c.representative); }

  friend bool operator==(const Census&, const Census&) = default;
};

std::string subgroup_digest(const std::vector<std::uint64_t>& sorted_keys);

// The record for a regular subgroup of type M_{2^(m+2)}; throws
// FamilyMismatch when H is not of that type.
CensusRecord make_record(int m, const HolSubgroup& h);
// The record whose canonical generators are X, Y (which must satisfy the
// relations and generate a regular subgroup).
CensusRecord make_record(int m, const HolElement& X, const HolElement& Y);

// Pruned search: S, T restricted to the upper unipotent Sylow 2-subgroup
// of Aut(N), then closed under conjugation by Aut(N). Records are
// classified before returning.
Census enumerate_mmc_regular(const GroupShape& shape, int m, const SearchOptions& opts = {});

// Brute force over all pairs in Hol(N) of orders 2^(m+1) and 2, with no use
// of the defining relations beyond the final type check. Returns the
// sorted element-key sets.
std::set<std::vector<std::uint64_t>> unpruned_regular_subgroups(const GroupShape& shape, int m,
                                                                const SearchOptions& opts = {});

// Partitions records into brace-isomorphism classes, numbering classes by
// their least subgroup_key. Records conjugate under Aut(N) share a class
// without a search.
void classify(Census& c);

// The five candidate additive groups of an MMC brace of size 2^(m+2):
// Z/2^(m+2), Z/2 x Z/2^(m+1), Z/4 x Z/2^m, Z/2 x Z/2 x Z/2^m and
// Z/2 x Z/2 x Z/2 x Z/2^(m-1).
std::vector<GroupShape> candidate_additive_shapes(int m);

struct AdditiveScanRow {
  GroupShape shape;
  std::size_t subgroups = 0;
  std::size_t iso_classes = 0;
  bool exists() const { return subgroups > 0; }
};
std::vector<AdditiveScanRow> additive_scan(int m, const SearchOptions& opts = {});

struct SocleReport {
  bool ok = true;
  std::size_t checked = 0;
  std::vector<std::string> violations;
};
// a^(2^m) in every socle, a^(2^(m-1)) in every socle on a non-cyclic
// additive group, every socle an ideal matching the subgroup catalogue.
SocleReport verify_socle_facts(const Census& c);

// Socle label that does not depend on the choice of generators: "<a>" and
// "<b*a>" are exchanged by the automorphism a -> b*a and both read "<b*a>".
std::string socle_class_label(const TwoGroupFamily& fam, const std::string& socle_desc);
// "<b*a>", "<b,a^k>", "<a^k>", "<b*a^k>", or the label itself otherwise.
std::string socle_family(const std::string& label);

}  // namespace mmc
