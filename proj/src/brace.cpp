#include "mmcbrace/brace.hpp"

#include <algorithm>
#include <functional>

#include "mmcbrace/errors.hpp"

namespace mmc {

namespace {

std::string triple(Label a, Label b, Label c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

}  // namespace

BraceTable::BraceTable(std::uint32_t size, std::vector<Label> add, std::vector<Label> circ)
    : size_(size), add_(std::move(add)), circ_(std::move(circ)) {
  const std::size_t cells = static_cast<std::size_t>(size) * size;
  if (size == 0 || add_.size() != cells || circ_.size() != cells) {
    throw NotABrace("tables do not match size " + std::to_string(size));
  }
  for (std::size_t k = 0; k < cells; ++k) {
    if (add_[k] >= size || circ_[k] >= size) throw NotABrace("label out of range");
  }
  neg_.assign(size, size);
  circ_inv_.assign(size, size);
  for (Label x = 0; x < size; ++x) {
    for (Label y = 0; y < size; ++y) {
      if (neg_[x] == size && this->add(x, y) == 0) neg_[x] = y;
      if (circ_inv_[x] == size && this->circ(x, y) == 0) circ_inv_[x] = y;
    }
  }
}

BraceTable BraceTable::trivial(const GroupShape& shape) {
  const auto n = static_cast<std::uint32_t>(shape.order());
  std::vector<Label> add(static_cast<std::size_t>(n) * n);
  for (Label x = 0; x < n; ++x) {
    auto gx = GroupElement::from_index(shape, x);
    for (Label y = 0; y < n; ++y) {
      add[static_cast<std::size_t>(x) * n + y] =
          static_cast<Label>((gx + GroupElement::from_index(shape, y)).index());
    }
  }
  auto circ = add;
  return BraceTable(n, std::move(add), std::move(circ));
}

std::uint64_t BraceTable::add_order(Label x) const {
  std::uint64_t k = 1;
  for (Label cur = x; cur != 0; cur = add(cur, x)) ++k;
  return k;
}

std::uint64_t BraceTable::circ_order(Label x) const {
  std::uint64_t k = 1;
  for (Label cur = x; cur != 0; cur = circ(cur, x)) ++k;
  return k;
}

Label BraceTable::circ_pow(Label x, std::uint64_t k) const {
  Label r = 0;
  for (std::uint64_t i = 0; i < k; ++i) r = circ(r, x);
  return r;
}

VerifyResult verify_brace(const BraceTable& t) {
  const Label n = t.size();
  for (Label x = 0; x < n; ++x) {
    if (t.add(0, x) != x || t.add(x, 0) != x) return VerifyResult::fail("0 is not the + identity", {x});
    if (t.circ(0, x) != x || t.circ(x, 0) != x) return VerifyResult::fail("0 is not the o identity", {x});
  }
  for (Label x = 0; x < n; ++x) {
    for (Label y = 0; y < n; ++y) {
      if (t.add(x, y) != t.add(y, x)) return VerifyResult::fail("+ is not commutative", {x, y});
    }
  }
  for (Label x = 0; x < n; ++x) {
    bool has_neg = false, has_inv = false;
    for (Label y = 0; y < n; ++y) {
      has_neg = has_neg || t.add(x, y) == 0;
      has_inv = has_inv || t.circ(x, y) == 0;
    }
    if (!has_neg) return VerifyResult::fail("no additive inverse", {x});
    if (!has_inv) return VerifyResult::fail("no o inverse", {x});
  }
  for (Label x = 0; x < n; ++x) {
    for (Label y = 0; y < n; ++y) {
      const Label xy_add = t.add(x, y);
      const Label xy_circ = t.circ(x, y);
      for (Label z = 0; z < n; ++z) {
        if (t.add(xy_add, z) != t.add(x, t.add(y, z))) {
          return VerifyResult::fail("+ is not associative at " + triple(x, y, z), {x, y, z});
        }
        if (t.circ(xy_circ, z) != t.circ(x, t.circ(y, z))) {
          return VerifyResult::fail("o is not associative at " + triple(x, y, z), {x, y, z});
        }
      }
    }
  }
  for (Label a = 0; a < n; ++a) {
    for (Label b = 0; b < n; ++b) {
      for (Label c = 0; c < n; ++c) {
        Label lhs = t.add(t.circ(t.add(b, c), a), a);
        Label rhs = t.add(t.circ(b, a), t.circ(c, a));
        if (lhs != rhs) {
          return VerifyResult::fail("(b+c)oa + a != boa + coa at (a,b,c) = " + triple(a, b, c),
                                    {a, b, c});
        }
      }
    }
  }
  return {};
}

BraceTable brace_from_regular(const HolSubgroup& h) {
  if (!is_regular(h)) throw NotRegular("subgroup of size " + std::to_string(h.size()) +
                                       " is not regular on " + h.shape().to_string());
  const auto n = static_cast<std::uint32_t>(h.shape().order());
  std::vector<const HolElement*> over(n, nullptr);
  for (const auto& e : h.elements()) over[e.trans().index()] = &e;
  std::vector<Label> add(static_cast<std::size_t>(n) * n), circ(add.size());
  for (Label x = 0; x < n; ++x) {
    const GroupElement& vx = over[x]->trans();
    for (Label y = 0; y < n; ++y) {
      const HolElement& hy = *over[y];
      add[static_cast<std::size_t>(x) * n + y] = static_cast<Label>((vx + over[y]->trans()).index());
      // translation part of h_y h_x
      circ[static_cast<std::size_t>(x) * n + y] =
          static_cast<Label>((hy.trans() + apply(hy.aut(), vx)).index());
    }
  }
  return BraceTable(n, std::move(add), std::move(circ));
}

HolSubgroup brace_to_regular(const BraceTable& t, const std::vector<GroupElement>& ident) {
  if (auto v = verify_brace(t); !v) throw NotABrace(v.failure);
  if (ident.size() != t.size() || ident.empty()) {
    throw AdditiveShapeMismatch("identification has " + std::to_string(ident.size()) +
                                " entries for a brace of size " + std::to_string(t.size()));
  }
  const GroupShape shape = ident.front().shape();
  if (shape.order() != t.size()) {
    throw AdditiveShapeMismatch("|N| = " + std::to_string(shape.order()) + " but |A| = " +
                                std::to_string(t.size()));
  }
  std::vector<Label> label_of(t.size(), t.size());
  for (Label x = 0; x < t.size(); ++x) {
    if (!(ident[x].shape() == shape)) throw AdditiveShapeMismatch("mixed shapes");
    auto idx = ident[x].index();
    if (label_of[idx] != t.size()) throw AdditiveShapeMismatch("identification is not injective");
    label_of[idx] = x;
  }
  for (Label x = 0; x < t.size(); ++x) {
    for (Label y = 0; y < t.size(); ++y) {
      if (!(ident[t.add(x, y)] == ident[x] + ident[y])) {
        throw AdditiveShapeMismatch("identification is not additive at (" + std::to_string(x) +
                                    "," + std::to_string(y) + ")");
      }
    }
  }
  const int n = shape.rank();
  std::vector<Label> basis;
  for (int j = 0; j < n; ++j) {
    std::vector<Residue> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(j)] = 1;
    basis.push_back(label_of[GroupElement(shape, e).index()]);
  }
  std::vector<HolElement> elements;
  for (Label a = 0; a < t.size(); ++a) {
    std::vector<Residue> raw(static_cast<std::size_t>(n * n));
    for (int j = 0; j < n; ++j) {
      const GroupElement& col = ident[t.rho(a, basis[static_cast<std::size_t>(j)])];
      for (int i = 0; i < n; ++i) raw[static_cast<std::size_t>(i * n + j)] = col.coord(i);
    }
    elements.emplace_back(AutMatrix(EndoMatrix::canonicalize_row_major(shape, raw)), ident[a]);
  }
  return HolSubgroup(shape, std::move(elements));
}

HolSubgroup brace_to_regular(const BraceTable& t, const GroupShape& shape) {
  if (shape.order() != t.size()) {
    throw AdditiveShapeMismatch("|N| = " + std::to_string(shape.order()) + " but |A| = " +
                                std::to_string(t.size()));
  }
  std::vector<GroupElement> ident;
  for (Label x = 0; x < t.size(); ++x) ident.push_back(GroupElement::from_index(shape, x));
  return brace_to_regular(t, ident);
}

std::optional<GroupShape> additive_shape(const BraceTable& t) {
  const std::uint32_t n = t.size();
  Residue p = 0;
  for (Residue d = 2; d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return std::nullopt;
  std::uint64_t v = n;
  while (v % static_cast<std::uint64_t>(p) == 0) v /= static_cast<std::uint64_t>(p);
  if (v != 1) return std::nullopt;

  // killed[k] = #{x : p^k x = 0}; the number of cyclic factors of exponent
  // >= k is log_p(killed[k] / killed[k-1]).
  std::vector<std::uint64_t> orders(n);
  for (Label x = 0; x < n; ++x) orders[x] = t.add_order(x);
  std::vector<std::uint64_t> killed{1};
  std::uint64_t pk = 1;
  while (killed.back() < n) {
    pk *= static_cast<std::uint64_t>(p);
    std::uint64_t c = 0;
    for (auto o : orders) c += pk % o == 0 ? 1 : 0;
    killed.push_back(c);
  }
  std::vector<int> at_least;
  for (std::size_t k = 1; k < killed.size(); ++k) {
    std::uint64_t ratio = killed[k] / killed[k - 1];
    int r = 0;
    while (ratio > 1) {
      ratio /= static_cast<std::uint64_t>(p);
      ++r;
    }
    at_least.push_back(r);
  }
  std::vector<int> exps;
  for (std::size_t k = 0; k < at_least.size(); ++k) {
    int next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
    for (int c = 0; c < at_least[k] - next; ++c) exps.push_back(static_cast<int>(k + 1));
  }
  std::sort(exps.begin(), exps.end());
  return GroupShape(p, exps);
}

std::optional<std::vector<GroupElement>> find_additive_identification(const BraceTable& t,
                                                                      const GroupShape& shape) {
  if (shape.order() != t.size()) return std::nullopt;
  const int n = shape.rank();
  const Label size = t.size();
  std::vector<Label> chosen(static_cast<std::size_t>(n));
  std::vector<Label> image;  // image[index of N element] = label

  // Labels hit by sum_{i<k} c_i g_i, in N-index order of the prefix.
  std::function<bool(int, const std::vector<Label>&)> search =
      [&](int k, const std::vector<Label>& span) -> bool {
    if (k == n) {
      image = span;
      return true;
    }
    const auto order = static_cast<std::uint64_t>(shape.modulus(k));
    for (Label g = 0; g < size; ++g) {
      if (t.add_order(g) != order) continue;
      std::vector<bool> used(size, false);
      for (auto l : span) used[l] = true;
      std::vector<Label> next;
      next.reserve(span.size() * order);
      bool injective = true;
      for (std::size_t s = 0; s < span.size() && injective; ++s) {
        Label cur = span[s];
        for (std::uint64_t c = 0; c < order; ++c) {
          if (c > 0) {
            if (used[cur]) {
              injective = false;
              break;
            }
            used[cur] = true;
          }
          next.push_back(cur);
          cur = t.add(cur, g);
        }
      }
      if (!injective) continue;
      // reorder so that next[idx] follows the mixed radix of the prefix
      chosen[static_cast<std::size_t>(k)] = g;
      if (search(k + 1, next)) return true;
    }
    return false;
  };
  if (!search(0, std::vector<Label>{0})) return std::nullopt;
  // image is indexed by (c_0, ..., c_{n-1}) with c_0 most significant,
  // matching GroupElement::index.
  std::vector<std::optional<GroupElement>> ident(size);
  for (std::uint64_t idx = 0; idx < image.size(); ++idx) {
    ident[image[idx]] = GroupElement::from_index(shape, idx);
  }
  std::vector<GroupElement> out;
  for (auto& e : ident) out.push_back(*e);
  return out;
}

HolSubgroup Cocycle::regular_subgroup() const {
  std::vector<HolElement> elements;
  for (std::uint32_t g = 0; g < gamma_.size(); ++g) elements.emplace_back(rho_[g], gamma_[g]);
  return HolSubgroup(shape_, std::move(elements));
}

Cocycle cocycle_extend(const TwoGroupFamily& fam, const GroupShape& shape, const AutMatrix& S,
                       const AutMatrix& T, const GroupElement& gamma_a,
                       const GroupElement& gamma_b) {
  if (shape.order() != fam.order()) {
    throw ShapeMismatch("|N| = " + std::to_string(shape.order()) + " but " + fam.to_string() +
                        " has order " + std::to_string(fam.order()));
  }
  for (const GroupShape* s : {&S.shape(), &T.shape(), &gamma_a.shape(), &gamma_b.shape()}) {
    if (!(*s == shape)) throw ShapeMismatch("generator data not on " + shape.to_string());
  }
  const int m = fam.m();
  const auto half = std::uint64_t{1} << m;
  const Residue n = fam.a_order();
  const AutMatrix I = AutMatrix::identity(shape);

  if (fam.kind() == FamilyKind::MMC) {
    if (!(power(S, half) == I)) throw RelationViolation("S^(2^m) = I fails");
    if (!(compose(T, T) == I)) throw RelationViolation("T^2 = I fails");
    if (!(compose(compose(T, S), T) == S)) throw RelationViolation("TST = S fails");
  } else {
    if (!(power(S, static_cast<std::uint64_t>(n)) == I)) {
      throw RelationViolation("S^(2^(m+1)) = I fails");
    }
    if (!(compose(T, T) == power(S, static_cast<std::uint64_t>(fam.b_square_exponent())))) {
      throw RelationViolation("T^2 = rho(b^2) fails");
    }
    if (!(compose(compose(T, S), aut_inverse(T)) == power(S, static_cast<std::uint64_t>(fam.twist())))) {
      throw RelationViolation("T S T^-1 = S^twist fails");
    }
  }

  Cocycle c(fam, shape);
  std::vector<GroupElement> ga;  // gamma(a^i)
  std::vector<AutMatrix> sa;     // S^i
  ga.push_back(GroupElement::zero(shape));
  sa.push_back(I);
  for (Residue i = 1; i < n; ++i) {
    ga.push_back(apply(S, ga.back()) + gamma_a);
    sa.push_back(compose(sa.back(), S));
  }
  c.gamma_ = ga;
  c.rho_ = sa;
  for (Residue i = 0; i < n; ++i) {
    c.gamma_.push_back(apply(sa[static_cast<std::size_t>(i)], gamma_b) + ga[static_cast<std::size_t>(i)]);
    c.rho_.push_back(compose(sa[static_cast<std::size_t>(i)], T));
  }

  auto gam = [&](int eps, Residue i) -> const GroupElement& {
    return c.gamma_[PresentedElement{eps, i}.index(fam)];
  };
  auto at = [&](Residue i) { return static_cast<std::size_t>(((i % n) + n) % n); };

  if (fam.kind() == FamilyKind::MMC) {
    for (Residue i = 0; i < n; ++i) {
      for (Residue j = 0; j < n; ++j) {
        if (!(ga[at(i + j)] == apply(sa[at(j)], ga[at(i)]) + ga[at(j)])) {
          throw RelationViolation("pp1 gamma(a^(i+j)) = S^j gamma(a^i) + gamma(a^j) fails at i=" +
                                  std::to_string(i) + ", j=" + std::to_string(j));
        }
      }
    }
    for (Residue i = 0; i < n; ++i) {
      if (!(gam(1, i) == apply(sa[at(i)], gamma_b) + ga[at(i)])) {
        throw RelationViolation("pp2 fails at i=" + std::to_string(i));
      }
    }
    for (Residue i = 0; i < n; ++i) {
      PresentedElement aib = pg_mul({0, i}, {1, 0}, fam);
      if (!(c.gamma_[aib.index(fam)] == apply(T, ga[at(i)]) + gamma_b)) {
        throw RelationViolation("pp3 gamma(a^i b) = T gamma(a^i) + gamma(b) fails at i=" +
                                std::to_string(i));
      }
    }
    if (!(apply(T, gamma_b) == -gamma_b)) {
      throw RelationViolation("pp4 T gamma(b) = -gamma(b) fails: " + apply(T, gamma_b).to_string() +
                              " != " + (-gamma_b).to_string());
    }
    if (shape == GroupShape(2, {1, m + 1})) {
      if (!(ga[at(Residue{1} << m)] == GroupElement(shape, {0, Residue{1} << m}))) {
        throw RelationViolation("pp5 gamma(a^(2^m)) = (0, 2^m) fails: got " +
                                ga[at(Residue{1} << m)].to_string());
      }
    }
  }

  const auto order = static_cast<std::uint32_t>(fam.order());
  const auto table = multiplication_table(fam);
  for (std::uint32_t g = 0; g < order; ++g) {
    for (std::uint32_t h = 0; h < order; ++h) {
      const std::uint32_t gh = table[static_cast<std::size_t>(g) * order + h];
      if (!(c.rho_[gh] == compose(c.rho_[h], c.rho_[g]))) {
        throw RelationViolation("rho is not an anti-homomorphism at (" +
                                PresentedElement::from_index(fam, g).to_string() + ", " +
                                PresentedElement::from_index(fam, h).to_string() + ")");
      }
      if (!(c.gamma_[gh] == apply(c.rho_[h], c.gamma_[g]) + c.gamma_[h])) {
        throw RelationViolation("cocycle law fails at (" +
                                PresentedElement::from_index(fam, g).to_string() + ", " +
                                PresentedElement::from_index(fam, h).to_string() + ")");
      }
    }
  }
  std::vector<bool> hit(shape.order(), false);
  for (const auto& v : c.gamma_) {
    if (hit[v.index()]) throw NotBijective("gamma hits " + v.to_string() + " twice");
    hit[v.index()] = true;
  }
  return c;
}

BraceTable brace_from_cocycle(const Cocycle& c) {
  const auto& fam = c.family();
  const auto n = static_cast<std::uint32_t>(fam.order());
  std::vector<Label> preimage(n);
  for (Label g = 0; g < n; ++g) preimage[c.gamma(g).index()] = g;
  std::vector<Label> add(static_cast<std::size_t>(n) * n);
  for (Label x = 0; x < n; ++x) {
    for (Label y = 0; y < n; ++y) {
      add[static_cast<std::size_t>(x) * n + y] = preimage[(c.gamma(x) + c.gamma(y)).index()];
    }
  }
  return BraceTable(n, std::move(add), multiplication_table(fam));
}

std::vector<Label> socle(const BraceTable& t) {
  std::vector<Label> out;
  for (Label a = 0; a < t.size(); ++a) {
    bool in = true;
    for (Label b = 0; b < t.size() && in; ++b) in = t.circ(b, a) == t.add(b, a);
    if (in) out.push_back(a);
  }
  return out;
}

namespace {

std::vector<bool> membership(const BraceTable& t, const std::vector<Label>& subset) {
  std::vector<bool> in(t.size(), false);
  for (auto x : subset) {
    if (x >= t.size()) throw Error("subset label out of range");
    in[x] = true;
  }
  return in;
}

}  // namespace

VerifyResult is_right_ideal(const BraceTable& t, const std::vector<Label>& subset) {
  const auto in = membership(t, subset);
  if (!in[0]) return VerifyResult::fail("0 not in subset", {0});
  for (Label x = 0; x < t.size(); ++x) {
    if (!in[x]) continue;
    for (Label y = 0; y < t.size(); ++y) {
      if (in[y] && !in[t.add(x, y)]) {
        return VerifyResult::fail("not an additive subgroup: x+y leaves the subset", {x, y});
      }
    }
  }
  for (Label a = 0; a < t.size(); ++a) {
    for (Label x = 0; x < t.size(); ++x) {
      if (in[x] && !in[t.rho(a, x)]) {
        return VerifyResult::fail("not rho-stable: rho_a(x) leaves the subset", {a, x});
      }
    }
  }
  return {};
}

VerifyResult is_ideal(const BraceTable& t, const std::vector<Label>& subset) {
  if (auto r = is_right_ideal(t, subset); !r) return r;
  const auto in = membership(t, subset);
  for (Label g = 0; g < t.size(); ++g) {
    for (Label x = 0; x < t.size(); ++x) {
      if (in[x] && !in[t.circ(t.circ(g, x), t.circ_inv(g))]) {
        return VerifyResult::fail("not normal in (A,o): g o x o g^-1 leaves the subset", {g, x});
      }
    }
  }
  return {};
}

namespace {

struct ElementInvariants {
  std::vector<std::uint64_t> signature;  // per label
  std::vector<bool> in_socle;
};

ElementInvariants element_invariants(const BraceTable& t) {
  ElementInvariants inv;
  const auto soc = socle(t);
  inv.in_socle.assign(t.size(), false);
  for (auto s : soc) inv.in_socle[s] = true;
  inv.signature.resize(t.size());
  for (Label x = 0; x < t.size(); ++x) {
    std::uint64_t fixed = 0;
    for (Label y = 0; y < t.size(); ++y) fixed += t.rho(x, y) == y ? 1 : 0;
    inv.signature[x] = (t.circ_order(x) << 40) | (t.add_order(x) << 20) | (fixed << 1) |
                       (inv.in_socle[x] ? 1 : 0);
  }
  return inv;
}

}  // namespace

std::vector<std::uint64_t> brace_fingerprint(const BraceTable& t) {
  auto sig = element_invariants(t).signature;
  std::sort(sig.begin(), sig.end());
  return sig;
}

std::vector<Label> circ_generators(const BraceTable& t) {
  std::vector<Label> gens;
  std::vector<bool> in(t.size(), false);
  in[0] = true;
  std::vector<Label> members{0};
  std::vector<std::uint64_t> order(t.size());
  for (Label x = 0; x < t.size(); ++x) order[x] = t.circ_order(x);
  while (members.size() < t.size()) {
    Label best = 0;
    std::uint64_t best_order = 0;
    for (Label x = 0; x < t.size(); ++x) {
      if (!in[x] && order[x] > best_order) {
        best = x;
        best_order = order[x];
      }
    }
    gens.push_back(best);
    members.assign(1, 0);
    std::fill(in.begin(), in.end(), false);
    in[0] = true;
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (auto g : gens) {
        Label next = t.circ(members[head], g);
        if (!in[next]) {
          in[next] = true;
          members.push_back(next);
        }
      }
    }
  }
  return gens;
}

std::optional<std::vector<Label>> braces_isomorphic(const BraceTable& t1, const BraceTable& t2) {
  if (t1.size() != t2.size()) return std::nullopt;
  const Label n = t1.size();
  const auto inv1 = element_invariants(t1);
  const auto inv2 = element_invariants(t2);
  {
    auto s1 = inv1.signature, s2 = inv2.signature;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return std::nullopt;
  }
  const auto gens = circ_generators(t1);
  std::vector<std::vector<Label>> candidates(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    for (Label y = 0; y < n; ++y) {
      if (inv2.signature[y] == inv1.signature[gens[k]]) candidates[k].push_back(y);
    }
  }

  std::vector<Label> images(gens.size());
  std::vector<Label> f(n), order;
  std::vector<bool> used(n);
  order.reserve(n);

  // Extends generator images along the right Cayley graph of (A1, o) and
  // checks that the result is a bijective homomorphism of both operations.
  auto try_images = [&]() -> bool {
    std::fill(f.begin(), f.end(), n);
    std::fill(used.begin(), used.end(), false);
    order.assign(1, 0);
    f[0] = 0;
    used[0] = true;
    for (std::size_t head = 0; head < order.size(); ++head) {
      const Label x = order[head];
      for (std::size_t k = 0; k < gens.size(); ++k) {
        const Label next = t1.circ(x, gens[k]);
        const Label want = t2.circ(f[x], images[k]);
        if (f[next] == n) {
          if (used[want]) return false;
          f[next] = want;
          used[want] = true;
          order.push_back(next);
        } else if (f[next] != want) {
          return false;
        }
      }
    }
    if (order.size() != n) return false;
    for (Label x = 0; x < n; ++x) {
      if (inv1.signature[x] != inv2.signature[f[x]]) return false;
    }
    for (Label x = 0; x < n; ++x) {
      for (Label y = x; y < n; ++y) {
        if (f[t1.add(x, y)] != t2.add(f[x], f[y])) return false;
      }
    }
    return true;
  };

  std::function<bool(std::size_t)> assign = [&](std::size_t k) -> bool {
    if (k == gens.size()) return try_images();
    for (Label c : candidates[k]) {
      images[k] = c;
      if (assign(k + 1)) return true;
    }
    return false;
  };
  if (assign(0)) return f;
  return std::nullopt;
}

}  // namespace mmc
