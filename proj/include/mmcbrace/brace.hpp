#pragma once

// Right braces (A, +, o) with (b + c) o a + a = b o a + c o a, in three
// equivalent forms: operation tables, regular subgroups of Hol(A, +), and
// bijective right 1-cocycles of a presented group.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmcbrace/holomorph.hpp"
#include "mmcbrace/presentations.hpp"

namespace mmc {

using Label = std::uint32_t;

// Elements are labels 0..size-1 and label 0 is the common identity.
class BraceTable {
 public:
  // Checks dimensions and label ranges only; see verify_brace.
  BraceTable(std::uint32_t size, std::vector<Label> add, std::vector<Label> circ);

  // The brace with x o y = x + y on N, labelled by GroupElement::index.
  static BraceTable trivial(const GroupShape& shape);

  std::uint32_t size() const { return size_; }
  Label add(Label x, Label y) const { return add_[index(x, y)]; }
  Label circ(Label x, Label y) const { return circ_[index(x, y)]; }
  const std::vector<Label>& add_table() const { return add_; }
  const std::vector<Label>& circ_table() const { return circ_; }

  // Valid only on tables that pass verify_brace.
  Label neg(Label x) const { return neg_[x]; }
  Label sub(Label x, Label y) const { return add(x, neg_[y]); }
  Label circ_inv(Label x) const { return circ_inv_[x]; }
  // rho_a(x) = x o a - a
  Label rho(Label a, Label x) const { return sub(circ(x, a), a); }

  std::uint64_t add_order(Label x) const;
  std::uint64_t circ_order(Label x) const;
  Label circ_pow(Label x, std::uint64_t k) const;

  friend bool operator==(const BraceTable& a, const BraceTable& b) {
    return a.size_ == b.size_ && a.add_ == b.add_ && a.circ_ == b.circ_;
  }

 private:
  std::size_t index(Label x, Label y) const { return static_cast<std::size_t>(x) * size_ + y; }

  std::uint32_t size_;
  std::vector<Label> add_;
  std::vector<Label> circ_;
  std::vector<Label> neg_;
  std::vector<Label> circ_inv_;
};

struct VerifyResult {
  bool ok = true;
  std::string failure;        // empty when ok
  std::vector<Label> witness;  // first violating tuple in lexicographic scan order

  explicit operator bool() const { return ok; }
  static VerifyResult fail(std::string what, std::vector<Label> witness) {
    return {false, std::move(what), std::move(witness)};
  }
};

VerifyResult verify_brace(const BraceTable& t);

// Labels are translation parts (GroupElement::index); x o y is the
// translation part of h_y * h_x where h_x is the element over x.
BraceTable brace_from_regular(const HolSubgroup& h);

// {(a, rho_a)}; ident[label] is the element of N standing for that label
// and must be an additive isomorphism.
HolSubgroup brace_to_regular(const BraceTable& t, const std::vector<GroupElement>& ident);
// Identification by GroupElement::index, inverse to brace_from_regular.
HolSubgroup brace_to_regular(const BraceTable& t, const GroupShape& shape);

// Abelian invariants of (A, +); nullopt when |A| is not a prime power > 1.
std::optional<GroupShape> additive_shape(const BraceTable& t);
std::optional<std::vector<GroupElement>> find_additive_identification(const BraceTable& t,
                                                                      const GroupShape& shape);

// gamma: M -> N with gamma(g h) = rho(h) gamma(g) + gamma(h) and rho an
// anti-homomorphism into Aut(N). Built only through cocycle_extend.
class Cocycle {
 public:
  const TwoGroupFamily& family() const { return family_; }
  const GroupShape& shape() const { return shape_; }
  const AutMatrix& S() const { return rho_[a_index()]; }
  const AutMatrix& T() const { return rho_[b_index()]; }
  const GroupElement& gamma_a() const { return gamma_[a_index()]; }
  const GroupElement& gamma_b() const { return gamma_[b_index()]; }

  const GroupElement& gamma(const PresentedElement& g) const { return gamma_[g.index(family_)]; }
  const AutMatrix& rho(const PresentedElement& g) const { return rho_[g.index(family_)]; }
  const GroupElement& gamma(std::uint32_t index) const { return gamma_[index]; }
  const AutMatrix& rho(std::uint32_t index) const { return rho_[index]; }

  // X = (S, gamma(a)), Y = (T, gamma(b)) generate the regular subgroup
  // {(gamma(g), rho(g))}.
  HolElement x_generator() const { return HolElement(S(), gamma_a()); }
  HolElement y_generator() const { return HolElement(T(), gamma_b()); }
  HolSubgroup regular_subgroup() const;

 private:
  Cocycle(TwoGroupFamily fam, GroupShape shape) : family_(fam), shape_(shape) {}
  std::uint32_t a_index() const { return PresentedElement{0, 1}.index(family_); }
  std::uint32_t b_index() const { return PresentedElement{1, 0}.index(family_); }

  TwoGroupFamily family_;
  GroupShape shape_;
  std::vector<GroupElement> gamma_;
  std::vector<AutMatrix> rho_;

  friend Cocycle cocycle_extend(const TwoGroupFamily&, const GroupShape&, const AutMatrix&,
                                const AutMatrix&, const GroupElement&, const GroupElement&);
};

// Extends generator data along normal forms. For MMC checks S^(2^m) = I,
// T^2 = I, TST = S, then conditions pp1..pp5 (pp5 only on Z/2 x Z/2^(m+1)),
// then the cocycle law on all pairs. Throws RelationViolation naming the
// failed condition, or NotBijective.
Cocycle cocycle_extend(const TwoGroupFamily& fam, const GroupShape& shape, const AutMatrix& S,
                       const AutMatrix& T, const GroupElement& gamma_a,
                       const GroupElement& gamma_b);

// Labels are PresentedElement indices; o is the presented multiplication.
BraceTable brace_from_cocycle(const Cocycle& c);

// {a : b o a = b + a for all b}, sorted.
std::vector<Label> socle(const BraceTable& t);

VerifyResult is_right_ideal(const BraceTable& t, const std::vector<Label>& subset);
VerifyResult is_ideal(const BraceTable& t, const std::vector<Label>& subset);

// Per-element isomorphism invariants: o-order, +-order, socle membership
// and |Fix(rho_x)|, as a sorted list. Equal for isomorphic braces.
std::vector<std::uint64_t> brace_fingerprint(const BraceTable& t);

// A bijection f with f(x + y) = f(x) + f(y) and f(x o y) = f(x) o f(y),
// found by extending images of a generating set of (A, o).
std::optional<std::vector<Label>> braces_isomorphic(const BraceTable& t1, const BraceTable& t2);

// Greedy generating set of (A, o): repeatedly the highest-order element
// outside the current subgroup.
std::vector<Label> circ_generators(const BraceTable& t);

}  // namespace mmc
