#pragma once

// Hol(N) = N x| Aut(N) with (v1, A1)(v2, A2) = (v1 + A1 v2, A1 A2).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mmcbrace/zmod_matrix.hpp"

namespace mmc {

class HolElement {
 public:
  HolElement(AutMatrix aut, GroupElement trans);
  static HolElement identity(const GroupShape& shape);
  static HolElement translation(const GroupElement& v);

  const AutMatrix& aut() const { return aut_; }
  const GroupElement& trans() const { return trans_; }
  const GroupShape& shape() const { return trans_.shape(); }

  // aut.key() * |N| + trans.index(); sorting by key is the canonical order.
  std::uint64_t key() const;
  bool is_identity() const { return aut_.is_identity() && trans_.is_zero(); }
  std::string to_string() const;

  friend bool operator==(const HolElement& a, const HolElement& b) {
    return a.aut_ == b.aut_ && a.trans_ == b.trans_;
  }

 private:
  AutMatrix aut_;
  GroupElement trans_;
};

HolElement hol_mul(const HolElement& g, const HolElement& h);
HolElement hol_inv(const HolElement& g);
HolElement hol_pow(const HolElement& g, std::uint64_t k);
std::uint64_t hol_order(const HolElement& g);

// |Hol(N)| keys must fit in 64 bits; throws KeyOverflow otherwise.
void require_indexable_holomorph(const GroupShape& shape);

class HolSubgroup {
 public:
  // Elements are stored sorted by key. The constructor checks closure and
  // the presence of the identity.
  HolSubgroup(const GroupShape& shape, std::vector<HolElement> elements);

  const GroupShape& shape() const { return shape_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<HolElement>& elements() const { return elements_; }
  bool contains(const HolElement& g) const;
  std::optional<HolElement> find_by_trans(const GroupElement& v) const;
  const std::vector<std::uint64_t>& keys() const { return keys_; }

  friend bool operator==(const HolSubgroup& a, const HolSubgroup& b) {
    return a.shape_ == b.shape_ && a.elements_ == b.elements_;
  }

 private:
  struct Trusted {};
  HolSubgroup(const GroupShape& shape, std::vector<HolElement> sorted_unique, Trusted);

  GroupShape shape_;
  std::vector<HolElement> elements_;
  std::vector<std::uint64_t> keys_;

  friend HolSubgroup conjugate(const HolSubgroup& h, const HolElement& c);
  friend HolSubgroup generate(const GroupShape& shape, std::span<const HolElement> gens,
                              std::uint64_t bound);
};

inline constexpr std::uint64_t kDefaultGenerationBound = std::uint64_t{1} << 16;

// Closure of gens under multiplication. Throws BoundExceeded once the
// closure grows past bound.
HolSubgroup generate(const GroupShape& shape, std::span<const HolElement> gens,
                     std::uint64_t bound = kDefaultGenerationBound);
HolSubgroup generate(std::span<const HolElement> gens,
                     std::uint64_t bound = kDefaultGenerationBound);

bool is_regular(const HolSubgroup& h);

// {c h c^-1 : h in H}
HolSubgroup conjugate(const HolSubgroup& h, const HolElement& c);

}  // namespace mmc
