#pragma once

// Two explicit parametrized families of braces on Z/2 x Z/2^(m+1) with
// adjoint group M_{2^(m+2)}, geometric-sum checks, and comparisons with
// the census.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mmcbrace/census.hpp"

namespace mmc {

enum class DescriptorForm { I, II };

// Form I:  S = [[1, y], [2^m x, 1+2z]], T = [[1, 0], [0, 1+2^m(1+x)]],
//          gamma(a) = (0, 1), gamma(b) = (1, 0).
// Form II: S = [[1, 0], [2^m x, 1+2z]], T = [[1, 0], [2^m, 1+2^m(1+x)]],
//          gamma(a) = (0, 1), gamma(b) = (1, 2^(m-1)).
struct BraceDescriptor {
  int m = 3;
  DescriptorForm form = DescriptorForm::I;
  int x = 0;
  int y = 0;       // always 0 in form II
  Residue z = 0;   // even, in [0, 2^m)

  // Throws ParseError / FamilyMismatch on malformed or illegal input.
  void validate() const;
  // "m=3:I:x=0,y=1,z=2" or "m=3:II:x=1,z=0"
  std::string to_string() const;
  static BraceDescriptor parse(std::string_view text);

  friend bool operator==(const BraceDescriptor&, const BraceDescriptor&) = default;
};

inline constexpr int kMinDescriptorM = 3;

// All 2^(m+1) form I descriptors followed by all 2^m form II descriptors.
std::vector<BraceDescriptor> all_descriptors(int m);
std::vector<BraceDescriptor> all_descriptors(int m, DescriptorForm form);

GroupShape family_shape(int m);  // Z/2 x Z/2^(m+1)
Cocycle descriptor_cocycle(const BraceDescriptor& d);
// Labels are PresentedElement indices, as for census records.
BraceTable build_family_brace(const BraceDescriptor& d);

// sum_{k=0}^{n} beta^k mod modulus
Residue geometric_sum(Residue beta, std::uint64_t n, Residue modulus);

struct LemmaReport {
  bool ok = true;
  std::uint64_t checked = 0;
  std::vector<std::string> counterexamples;
};
// For odd beta mod 2^(m+1): the sum over 2^m terms is 2^m when
// beta = 1 mod 4 and 0 when beta = 3 mod 4.
LemmaReport verify_lemma_geometric(int m);
// For beta = 1 mod 4 and 1 <= n <= 2^(m+1) - 2: the sum up to beta^n is
// nonzero mod 2^(m-1) unless n is 2^m - 1, 2^(m-1) - 1 or 2^m + 2^(m-1) - 1,
// and nonzero mod 2^m unless n = 2^m - 1.
LemmaReport verify_lemma_non_vanishing(int m);

struct StratumRow {
  std::string label;   // socle_class_label of the class representatives
  std::string family;  // socle_family(label)
  std::size_t classes = 0;
  std::size_t covered = 0;  // classes realized by some descriptor
};

struct StratumBound {
  std::string name;
  std::string relation;  // ">=" or "=="
  std::size_t expected = 0;
  std::size_t observed = 0;
  bool ok = true;
};

struct Stratification {
  int m = 0;
  std::vector<StratumRow> rows;  // sorted by label
  std::vector<StratumBound> bounds;
  std::size_t total_classes = 0;
  // <a^(2^k)> classes with 1 <= k <= m-1, the range of the asserted bound,
  // and the same count with the <a> classes (k = 0) added.
  std::size_t power_socles_inner = 0;
  std::size_t power_socles_with_a = 0;
  std::size_t per_socle_sum = 0;     // 2 + (m-1) + 2(m-1) + (m-2) = 4m-3
  std::size_t corollary_bound = 0;   // 4m-5
  bool ok = true;
};

// Requires a classified census on Z/2 x Z/2^(m+1); throws IncompleteCensus.
Stratification socle_stratification(int m, const Census& census);

struct CoverageReport {
  bool ok = true;
  std::vector<std::string> matches;    // per class: descriptor text or "-"
  std::vector<int> uncovered;          // class ids
};

// Every census class must be isomorphic to the brace of some descriptor.
// descriptors defaults to all_descriptors(m).
CoverageReport families_cover_census(int m, const Census& census,
                                     std::optional<std::vector<BraceDescriptor>> descriptors = {});

struct SeparationReport {
  bool ok = true;
  std::size_t pairs = 0;
  std::vector<std::string> isomorphic_pairs;
};
// Form I against form II; stride > 1 samples every stride-th pair.
SeparationReport cross_form_separation(int m, std::size_t stride = 1);

}  // namespace mmc
