#pragma once

// Finite abelian p-groups Z/p^e1 x ... x Z/p^en and their endomorphism
// rings, using matrices whose i-th row lives modulo p^ei.

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mmc {

using Residue = std::int64_t;

class EndoMatrix;

inline constexpr int kMaxRank = 6;

class GroupShape {
 public:
  // exponents must be non-empty, each >= 1 and sorted ascending.
  GroupShape(Residue prime, std::vector<int> exponents);

  // Comma separated cyclic orders, e.g. "2,16" for Z/2 x Z/16.
  static GroupShape parse(std::string_view text);
  static GroupShape from_moduli(std::span<const Residue> moduli);

  Residue prime() const { return prime_; }
  int rank() const { return rank_; }
  int exponent(int i) const { return exponents_[i]; }
  Residue modulus(int i) const { return moduli_[i]; }
  std::uint64_t order() const { return order_; }
  int total_exponent() const;

  std::string to_string() const;

  friend bool operator==(const GroupShape& a, const GroupShape& b) {
    return a.prime_ == b.prime_ && a.rank_ == b.rank_ && a.exponents_ == b.exponents_;
  }

 private:
  Residue prime_ = 2;
  int rank_ = 0;
  std::array<int, kMaxRank> exponents_{};
  std::array<Residue, kMaxRank> moduli_{};
  std::uint64_t order_ = 1;
};

class GroupElement {
 public:
  GroupElement(const GroupShape& shape, std::span<const Residue> coords);
  GroupElement(const GroupShape& shape, std::initializer_list<Residue> coords);

  static GroupElement zero(const GroupShape& shape);
  // Mixed-radix index with coordinate 0 most significant; index 0 is zero.
  static GroupElement from_index(const GroupShape& shape, std::uint64_t index);

  const GroupShape& shape() const { return shape_; }
  Residue coord(int i) const { return coords_[i]; }
  std::uint64_t index() const;
  bool is_zero() const;
  // Additive order.
  std::uint64_t order() const;

  std::string to_string() const;

  friend GroupElement operator+(const GroupElement& a, const GroupElement& b);
  friend GroupElement operator-(const GroupElement& a, const GroupElement& b);
  friend GroupElement operator-(const GroupElement& a);
  friend GroupElement operator*(Residue k, const GroupElement& a);
  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.shape_ == b.shape_ && a.coords_ == b.coords_;
  }

 private:
  explicit GroupElement(const GroupShape& shape) : shape_(shape) {}

  GroupShape shape_;
  std::array<Residue, kMaxRank> coords_{};

  friend class EndoMatrix;
  friend GroupElement apply(const EndoMatrix& a, const GroupElement& x);
};

// An endomorphism of N in the modular-entry model: entry (i,j) is reduced
// mod p^ei and, for i > j, is divisible by p^(ei - ej).
class EndoMatrix {
 public:
  static EndoMatrix identity(const GroupShape& shape);
  static EndoMatrix zero(const GroupShape& shape);

  // Reduces each row mod p^ei. Throws DivisibilityViolation when an entry
  // below the diagonal fails the divisibility rule.
  static EndoMatrix canonicalize(const GroupShape& shape,
                                 const std::vector<std::vector<Residue>>& raw);
  static EndoMatrix canonicalize_row_major(const GroupShape& shape,
                                           std::span<const Residue> raw);
  static EndoMatrix diagonal(const GroupShape& shape, std::span<const Residue> diag);

  // Dense index over all canonical matrices of the shape, see candidate_count.
  static EndoMatrix from_key(const GroupShape& shape, std::uint64_t key);
  std::uint64_t key() const;

  const GroupShape& shape() const { return shape_; }
  int rank() const { return shape_.rank(); }
  Residue entry(int i, int j) const { return entries_[i * kMaxRank + j]; }
  std::vector<Residue> row_major() const;

  bool is_identity() const;
  std::string to_string() const;

  friend bool operator==(const EndoMatrix& a, const EndoMatrix& b) {
    return a.shape_ == b.shape_ && a.entries_ == b.entries_;
  }

  friend EndoMatrix compose(const EndoMatrix& a, const EndoMatrix& b);
  friend EndoMatrix operator+(const EndoMatrix& a, const EndoMatrix& b);
  friend GroupElement apply(const EndoMatrix& a, const GroupElement& x);

 private:
  explicit EndoMatrix(const GroupShape& shape) : shape_(shape) {}
  Residue& at(int i, int j) { return entries_[i * kMaxRank + j]; }

  GroupShape shape_;
  std::array<Residue, kMaxRank * kMaxRank> entries_{};
};

// Number of canonical matrices for the shape (the size of End(N)).
std::uint64_t candidate_count(const GroupShape& shape);

EndoMatrix compose(const EndoMatrix& a, const EndoMatrix& b);
EndoMatrix operator+(const EndoMatrix& a, const EndoMatrix& b);
GroupElement apply(const EndoMatrix& a, const GroupElement& x);
EndoMatrix power(const EndoMatrix& a, std::uint64_t k);

// Determinant of the reduction mod p, as a residue in [0, p).
Residue det_mod_p(const EndoMatrix& a);
bool is_automorphism(const EndoMatrix& a);
bool is_upper_unipotent_mod_p(const EndoMatrix& a);

class AutMatrix {
 public:
  // Throws NotAnAutomorphism unless the mod-p reduction is invertible.
  explicit AutMatrix(EndoMatrix m);
  static AutMatrix identity(const GroupShape& shape);

  const EndoMatrix& endo() const { return m_; }
  const GroupShape& shape() const { return m_.shape(); }
  Residue entry(int i, int j) const { return m_.entry(i, j); }
  std::uint64_t key() const { return m_.key(); }
  bool is_identity() const { return m_.is_identity(); }
  std::string to_string() const { return m_.to_string(); }

  friend bool operator==(const AutMatrix& a, const AutMatrix& b) { return a.m_ == b.m_; }

 private:
  struct Unchecked {};
  AutMatrix(EndoMatrix m, Unchecked) : m_(std::move(m)) {}

  EndoMatrix m_;

  friend AutMatrix compose(const AutMatrix& a, const AutMatrix& b);
  friend AutMatrix power(const AutMatrix& a, std::uint64_t k);
};

AutMatrix compose(const AutMatrix& a, const AutMatrix& b);
AutMatrix power(const AutMatrix& a, std::uint64_t k);
GroupElement apply(const AutMatrix& a, const GroupElement& x);
std::uint64_t matrix_order(const AutMatrix& a);
AutMatrix aut_inverse(const AutMatrix& a);

inline constexpr std::uint64_t kDefaultEnumerationBound = std::uint64_t{1} << 24;

// Reads BRACE_CENSUS_BOUND when set, otherwise returns fallback.
std::uint64_t enumeration_bound_from_env(std::uint64_t fallback);

// Visits every automorphism once, in increasing key order. Throws
// EnumerationBoundExceeded when candidate_count(shape) > bound.
void for_each_automorphism(const GroupShape& shape,
                           const std::function<void(const AutMatrix&)>& visit,
                           std::uint64_t bound = kDefaultEnumerationBound);
std::vector<AutMatrix> enumerate_automorphisms(const GroupShape& shape,
                                               std::uint64_t bound = kDefaultEnumerationBound);

}  // namespace mmc
