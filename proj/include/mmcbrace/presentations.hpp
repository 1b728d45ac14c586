#pragma once

// The four non-abelian 2-groups of order 2^(m+2) with a cyclic subgroup of
// index 2, in normal form b^eps a^i.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mmcbrace/holomorph.hpp"

namespace mmc {

enum class FamilyKind { MMC, Dihedral, Quaternion, Semidihedral };

inline constexpr int kMinFamilyM = 2;
inline constexpr int kMaxFamilyM = 12;

class TwoGroupFamily {
 public:
  TwoGroupFamily(FamilyKind kind, int m);
  static TwoGroupFamily mmc(int m) { return TwoGroupFamily(FamilyKind::MMC, m); }
  // "M32", "D64", "Q32", "SD32"
  static TwoGroupFamily parse(std::string_view text);

  FamilyKind kind() const { return kind_; }
  int m() const { return m_; }
  std::uint64_t order() const { return std::uint64_t{1} << (m_ + 2); }
  Residue a_order() const { return Residue{1} << (m_ + 1); }
  // b^-1 a b = a^twist
  Residue twist() const;
  // b^2 = a^b_square_exponent
  Residue b_square_exponent() const;
  std::string to_string() const;

  friend bool operator==(const TwoGroupFamily& x, const TwoGroupFamily& y) {
    return x.kind_ == y.kind_ && x.m_ == y.m_;
  }

 private:
  FamilyKind kind_;
  int m_;
};

struct PresentedElement {
  int eps = 0;    // exponent of b
  Residue i = 0;  // exponent of a, in [0, 2^(m+1))

  static PresentedElement a_pow(Residue i) { return {0, i}; }
  static PresentedElement b_a_pow(Residue i) { return {1, i}; }
  static PresentedElement from_index(const TwoGroupFamily& fam, std::uint32_t index);
  std::uint32_t index(const TwoGroupFamily& fam) const;

  // "a^i" or "b*a^i"
  std::string to_string() const;
  static PresentedElement parse(std::string_view text, const TwoGroupFamily& fam);

  friend bool operator==(const PresentedElement&, const PresentedElement&) = default;
};

PresentedElement pg_mul(const PresentedElement& g, const PresentedElement& h,
                        const TwoGroupFamily& fam);
PresentedElement pg_inv(const PresentedElement& g, const TwoGroupFamily& fam);
PresentedElement pg_pow(const PresentedElement& g, std::uint64_t k, const TwoGroupFamily& fam);
std::uint64_t pg_order(const PresentedElement& g, const TwoGroupFamily& fam);

// Row-major table over element indices (see PresentedElement::index).
std::vector<std::uint32_t> multiplication_table(const TwoGroupFamily& fam);

struct PresentedSubgroup {
  std::vector<std::uint32_t> elements;  // sorted element indices
  bool normal = false;
  // Matching entry of the catalogue, e.g. "<a^4>", "<b>", "<b*a>", "<b*a^4>",
  // "<b,a^4>", "1" or "G"; "unclassified" when nothing matches.
  std::string form;

  bool contains(std::uint32_t index) const;
};

inline constexpr int kMaxSubgroupM = 10;

// Full subgroup lattice of M_{2^(m+2)}, each subgroup once, ordered by size
// then elements. Throws UnsupportedFamily for the other kinds.
std::vector<PresentedSubgroup> all_subgroups(const TwoGroupFamily& fam);

// Catalogue label of a subgroup of M_{2^(m+2)} given by sorted indices.
std::string catalogue_form(const TwoGroupFamily& fam, const std::vector<std::uint32_t>& elements);

struct SubgroupClassificationReport {
  bool ok = true;
  std::size_t subgroup_count = 0;
  std::vector<std::string> non_normal;
  std::vector<std::string> problems;
};

// Every non-trivial proper subgroup matches a catalogue form, the only
// non-normal ones are <b> and <b*a^(2^m)>, and every other non-trivial
// subgroup contains a^(2^m).
SubgroupClassificationReport verify_subgroup_classification(const TwoGroupFamily& fam);

struct GeneratorImages {
  HolElement x;
  HolElement y;
};

// Images of a and b inside H satisfying the family relations and
// generating H, or nullopt when H is not of that type.
std::optional<GeneratorImages> find_isomorphism(const TwoGroupFamily& fam, const HolSubgroup& h);

// True when x, y satisfy the defining relations and generate a group of
// the family's order.
bool satisfies_relations(const TwoGroupFamily& fam, const HolElement& x, const HolElement& y);

}  // namespace mmc
