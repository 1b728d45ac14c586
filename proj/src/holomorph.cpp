#include "mmcbrace/holomorph.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "mmcbrace/errors.hpp"

namespace mmc {

HolElement::HolElement(AutMatrix aut, GroupElement trans)
    : aut_(std::move(aut)), trans_(std::move(trans)) {
  if (!(aut_.shape() == trans_.shape())) {
    throw ShapeMismatch("aut on " + aut_.shape().to_string() + ", translation in " +
                        trans_.shape().to_string());
  }
}

HolElement HolElement::identity(const GroupShape& shape) {
  return HolElement(AutMatrix::identity(shape), GroupElement::zero(shape));
}

HolElement HolElement::translation(const GroupElement& v) {
  return HolElement(AutMatrix::identity(v.shape()), v);
}

void require_indexable_holomorph(const GroupShape& shape) {
  const __int128 total = static_cast<__int128>(candidate_count(shape)) * shape.order();
  if (total > (static_cast<__int128>(1) << 63)) {
    throw KeyOverflow("Hol(" + shape.to_string() + ") keys exceed 64 bits");
  }
}

std::uint64_t HolElement::key() const { return aut_.key() * shape().order() + trans_.index(); }

std::string HolElement::to_string() const {
  return "(" + aut_.to_string() + ", " + trans_.to_string() + ")";
}

HolElement hol_mul(const HolElement& g, const HolElement& h) {
  if (!(g.shape() == h.shape())) {
    throw ShapeMismatch(g.shape().to_string() + " vs " + h.shape().to_string());
  }
  return HolElement(compose(g.aut(), h.aut()), g.trans() + apply(g.aut(), h.trans()));
}

HolElement hol_inv(const HolElement& g) {
  AutMatrix inv = aut_inverse(g.aut());
  GroupElement t = -apply(inv, g.trans());
  return HolElement(std::move(inv), std::move(t));
}

HolElement hol_pow(const HolElement& g, std::uint64_t k) {
  HolElement result = HolElement::identity(g.shape());
  HolElement base = g;
  while (k > 0) {
    if (k & 1) result = hol_mul(result, base);
    base = hol_mul(base, base);
    k >>= 1;
  }
  return result;
}

std::uint64_t hol_order(const HolElement& g) {
  std::uint64_t k = 1;
  HolElement cur = g;
  while (!cur.is_identity()) {
    cur = hol_mul(cur, g);
    ++k;
  }
  return k;
}

namespace {

bool key_less(const HolElement& a, const HolElement& b) { return a.key() < b.key(); }

}  // namespace

HolSubgroup::HolSubgroup(const GroupShape& shape, std::vector<HolElement> sorted_unique, Trusted)
    : shape_(shape), elements_(std::move(sorted_unique)) {
  keys_.reserve(elements_.size());
  for (const auto& e : elements_) keys_.push_back(e.key());
}

HolSubgroup::HolSubgroup(const GroupShape& shape, std::vector<HolElement> elements)
    : shape_(shape), elements_(std::move(elements)) {
  for (const auto& e : elements_) {
    if (!(e.shape() == shape_)) throw ShapeMismatch("subgroup element of wrong shape");
  }
  std::sort(elements_.begin(), elements_.end(), key_less);
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  for (const auto& e : elements_) keys_.push_back(e.key());
  if (!contains(HolElement::identity(shape_))) throw Error("subgroup lacks the identity");
  for (const auto& a : elements_) {
    for (const auto& b : elements_) {
      if (!contains(hol_mul(a, b))) throw Error("element set is not closed");
    }
  }
}

bool HolSubgroup::contains(const HolElement& g) const {
  if (!(g.shape() == shape_)) return false;
  return std::binary_search(keys_.begin(), keys_.end(), g.key());
}

std::optional<HolElement> HolSubgroup::find_by_trans(const GroupElement& v) const {
  for (const auto& e : elements_) {
    if (e.trans() == v) return e;
  }
  return std::nullopt;
}

HolSubgroup generate(const GroupShape& shape, std::span<const HolElement> gens,
                     std::uint64_t bound) {
  require_indexable_holomorph(shape);
  for (const auto& g : gens) {
    if (!(g.shape() == shape)) throw ShapeMismatch("generator of wrong shape");
  }
  std::vector<HolElement> found{HolElement::identity(shape)};
  std::unordered_set<std::uint64_t> seen{found.front().key()};
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (const auto& g : gens) {
      HolElement next = hol_mul(found[head], g);
      if (seen.insert(next.key()).second) {
        if (found.size() >= bound) {
          throw BoundExceeded("subgroup closure exceeds " + std::to_string(bound) + " elements");
        }
        found.push_back(std::move(next));
      }
    }
  }
  std::sort(found.begin(), found.end(), key_less);
  return HolSubgroup(shape, std::move(found), HolSubgroup::Trusted{});
}

HolSubgroup generate(std::span<const HolElement> gens, std::uint64_t bound) {
  if (gens.empty()) throw Error("generate: empty generator list needs an explicit shape");
  return generate(gens.front().shape(), gens, bound);
}

bool is_regular(const HolSubgroup& h) {
  if (h.size() != h.shape().order()) return false;
  std::vector<bool> hit(h.shape().order(), false);
  for (const auto& e : h.elements()) {
    auto idx = e.trans().index();
    if (hit[idx]) return false;
    hit[idx] = true;
  }
  return true;
}

HolSubgroup conjugate(const HolSubgroup& h, const HolElement& c) {
  if (!(c.shape() == h.shape())) throw ShapeMismatch("conjugator of wrong shape");
  const HolElement c_inv = hol_inv(c);
  std::vector<HolElement> out;
  out.reserve(h.size());
  for (const auto& e : h.elements()) out.push_back(hol_mul(hol_mul(c, e), c_inv));
  std::sort(out.begin(), out.end(), key_less);
  return HolSubgroup(h.shape(), std::move(out), HolSubgroup::Trusted{});
}

}  // namespace mmc
