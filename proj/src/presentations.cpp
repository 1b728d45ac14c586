#include "mmcbrace/presentations.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "mmcbrace/errors.hpp"

namespace mmc {

namespace {

Residue reduce(Residue v, Residue q) {
  Residue r = v % q;
  return r < 0 ? r + q : r;
}

void check_element(const PresentedElement& g, const TwoGroupFamily& fam) {
  if ((g.eps != 0 && g.eps != 1) || g.i < 0 || g.i >= fam.a_order()) {
    throw FamilyMismatch(g.to_string() + " is not a normal form in " + fam.to_string());
  }
}

std::string a_power_text(Residue i) {
  if (i == 0) return "1";
  if (i == 1) return "a";
  return "a^" + std::to_string(i);
}

}  // namespace

TwoGroupFamily::TwoGroupFamily(FamilyKind kind, int m) : kind_(kind), m_(m) {
  if (m < kMinFamilyM || m > kMaxFamilyM) {
    throw FamilyMismatch("m = " + std::to_string(m) + " outside [" + std::to_string(kMinFamilyM) +
                         ", " + std::to_string(kMaxFamilyM) + "]");
  }
}

TwoGroupFamily TwoGroupFamily::parse(std::string_view text) {
  FamilyKind kind;
  std::string_view digits;
  if (text.starts_with("SD")) {
    kind = FamilyKind::Semidihedral;
    digits = text.substr(2);
  } else if (!text.empty() && (text[0] == 'M' || text[0] == 'D' || text[0] == 'Q')) {
    kind = text[0] == 'M' ? FamilyKind::MMC : text[0] == 'D' ? FamilyKind::Dihedral
                                                             : FamilyKind::Quaternion;
    digits = text.substr(1);
  } else {
    throw ParseError("unknown family \"" + std::string(text) + "\"");
  }
  std::string d(digits);
  char* end = nullptr;
  unsigned long long order = std::strtoull(d.c_str(), &end, 10);
  if (d.empty() || *end != '\0' || order < 16 || (order & (order - 1)) != 0) {
    throw ParseError("family order must be a power of two >= 16: \"" + std::string(text) + "\"");
  }
  int log2 = 0;
  while ((1ULL << log2) < order) ++log2;
  return TwoGroupFamily(kind, log2 - 2);
}

Residue TwoGroupFamily::twist() const {
  const Residue n = a_order();
  const Residue half = Residue{1} << m_;
  switch (kind_) {
    case FamilyKind::MMC: return 1 + half;
    case FamilyKind::Dihedral: return n - 1;
    case FamilyKind::Quaternion: return n - 1;
    case FamilyKind::Semidihedral: return half - 1;
  }
  return 1;
}

Residue TwoGroupFamily::b_square_exponent() const {
  return kind_ == FamilyKind::Quaternion ? (Residue{1} << m_) : 0;
}

std::string TwoGroupFamily::to_string() const {
  const char* prefix = kind_ == FamilyKind::MMC ? "M"
                       : kind_ == FamilyKind::Dihedral ? "D"
                       : kind_ == FamilyKind::Quaternion ? "Q"
                                                          : "SD";
  return prefix + std::to_string(order());
}

PresentedElement PresentedElement::from_index(const TwoGroupFamily& fam, std::uint32_t index) {
  const auto n = static_cast<std::uint32_t>(fam.a_order());
  if (index >= 2 * n) throw FamilyMismatch("index out of range for " + fam.to_string());
  return {static_cast<int>(index / n), static_cast<Residue>(index % n)};
}

std::uint32_t PresentedElement::index(const TwoGroupFamily& fam) const {
  check_element(*this, fam);
  return static_cast<std::uint32_t>(eps * fam.a_order() + i);
}

std::string PresentedElement::to_string() const {
  if (eps == 0) return a_power_text(i);
  return i == 0 ? "b" : "b*" + a_power_text(i);
}

PresentedElement PresentedElement::parse(std::string_view text, const TwoGroupFamily& fam) {
  PresentedElement g;
  std::string_view rest = text;
  if (rest == "1") return g;
  if (rest.starts_with("b")) {
    g.eps = 1;
    rest.remove_prefix(1);
    if (rest.empty()) return g;
    if (!rest.starts_with("*")) throw ParseError("bad element \"" + std::string(text) + "\"");
    rest.remove_prefix(1);
  }
  if (!rest.starts_with("a")) throw ParseError("bad element \"" + std::string(text) + "\"");
  rest.remove_prefix(1);
  if (rest.empty()) {
    g.i = 1;
  } else {
    if (!rest.starts_with("^")) throw ParseError("bad element \"" + std::string(text) + "\"");
    std::string digits(rest.substr(1));
    char* end = nullptr;
    long long v = std::strtoll(digits.c_str(), &end, 10);
    if (digits.empty() || *end != '\0') throw ParseError("bad exponent in \"" + std::string(text) + "\"");
    g.i = reduce(v, fam.a_order());
  }
  return g;
}

PresentedElement pg_mul(const PresentedElement& g, const PresentedElement& h,
                        const TwoGroupFamily& fam) {
  check_element(g, fam);
  check_element(h, fam);
  const Residue n = fam.a_order();
  // a^i b = b a^(i * twist), twist^2 = 1
  Residue i = h.eps ? static_cast<Residue>((static_cast<__int128>(g.i) * fam.twist()) % n) : g.i;
  i += h.i;
  if (g.eps && h.eps) i += fam.b_square_exponent();
  return {g.eps ^ h.eps, reduce(i, n)};
}

PresentedElement pg_inv(const PresentedElement& g, const TwoGroupFamily& fam) {
  check_element(g, fam);
  const Residue n = fam.a_order();
  if (g.eps == 0) return {0, reduce(-g.i, n)};
  // (b a^i)(b a^j) = a^(i*twist + j + c) = 1
  Residue j = -static_cast<Residue>((static_cast<__int128>(g.i) * fam.twist()) % n) -
              fam.b_square_exponent();
  return {1, reduce(j, n)};
}

PresentedElement pg_pow(const PresentedElement& g, std::uint64_t k, const TwoGroupFamily& fam) {
  PresentedElement result;
  PresentedElement base = g;
  while (k > 0) {
    if (k & 1) result = pg_mul(result, base, fam);
    base = pg_mul(base, base, fam);
    k >>= 1;
  }
  return result;
}

std::uint64_t pg_order(const PresentedElement& g, const TwoGroupFamily& fam) {
  std::uint64_t k = 1;
  PresentedElement cur = g;
  while (!(cur == PresentedElement{})) {
    cur = pg_mul(cur, g, fam);
    ++k;
  }
  return k;
}

std::vector<std::uint32_t> multiplication_table(const TwoGroupFamily& fam) {
  const auto n = static_cast<std::uint32_t>(fam.order());
  std::vector<std::uint32_t> table(static_cast<std::size_t>(n) * n);
  for (std::uint32_t x = 0; x < n; ++x) {
    auto gx = PresentedElement::from_index(fam, x);
    for (std::uint32_t y = 0; y < n; ++y) {
      table[static_cast<std::size_t>(x) * n + y] =
          pg_mul(gx, PresentedElement::from_index(fam, y), fam).index(fam);
    }
  }
  return table;
}

bool PresentedSubgroup::contains(std::uint32_t index) const {
  return std::binary_search(elements.begin(), elements.end(), index);
}

namespace {

using ElementSet = std::vector<std::uint32_t>;

ElementSet closure(const TwoGroupFamily& fam, const std::vector<std::uint32_t>& table,
                   const std::vector<std::uint32_t>& gens) {
  const auto n = static_cast<std::uint32_t>(fam.order());
  std::vector<bool> seen(n, false);
  ElementSet found{0};
  seen[0] = true;
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (auto g : gens) {
      auto next = table[static_cast<std::size_t>(found[head]) * n + g];
      if (!seen[next]) {
        seen[next] = true;
        found.push_back(next);
      }
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

struct CatalogueEntry {
  std::string form;
  ElementSet elements;
};

std::vector<CatalogueEntry> catalogue(const TwoGroupFamily& fam,
                                      const std::vector<std::uint32_t>& table) {
  const int m = fam.m();
  auto idx = [&](int eps, Residue i) { return PresentedElement{eps, i}.index(fam); };
  std::vector<CatalogueEntry> out;
  out.push_back({"G", closure(fam, table, {idx(0, 1), idx(1, 0)})});
  for (int t = 0; t <= m + 1; ++t) {
    Residue e = Residue{1} << t;
    std::string form = t == m + 1 ? "1" : "<" + PresentedElement{0, e}.to_string() + ">";
    out.push_back({form, closure(fam, table, {idx(0, e % fam.a_order())})});
  }
  out.push_back({"<b>", closure(fam, table, {idx(1, 0)})});
  out.push_back({"<b*a>", closure(fam, table, {idx(1, 1)})});
  for (int s = 1; s <= m; ++s) {
    Residue e = Residue{1} << s;
    out.push_back({"<" + PresentedElement{1, e}.to_string() + ">", closure(fam, table, {idx(1, e)})});
    out.push_back({"<b," + PresentedElement{0, e}.to_string() + ">",
                   closure(fam, table, {idx(1, 0), idx(0, e)})});
  }
  return out;
}

std::string form_from_catalogue(const std::vector<CatalogueEntry>& cat, const ElementSet& s) {
  for (const auto& entry : cat) {
    if (entry.elements == s) return entry.form;
  }
  return "unclassified";
}

void require_mmc(const TwoGroupFamily& fam) {
  if (fam.kind() != FamilyKind::MMC) {
    throw UnsupportedFamily("subgroup classification is only available for MMC groups, not " +
                            fam.to_string());
  }
  if (fam.m() > kMaxSubgroupM) {
    throw UnsupportedFamily("subgroup lattice limited to m <= " + std::to_string(kMaxSubgroupM));
  }
}

}  // namespace

std::string catalogue_form(const TwoGroupFamily& fam, const std::vector<std::uint32_t>& elements) {
  require_mmc(fam);
  auto table = multiplication_table(fam);
  return form_from_catalogue(catalogue(fam, table), elements);
}

std::vector<PresentedSubgroup> all_subgroups(const TwoGroupFamily& fam) {
  require_mmc(fam);
  const auto n = static_cast<std::uint32_t>(fam.order());
  const auto table = multiplication_table(fam);

  // Every subgroup is a join of cyclic subgroups, so closing the cyclic
  // ones under pairwise joins reaches the whole lattice.
  std::map<ElementSet, std::vector<std::uint32_t>> gens_of;
  std::vector<std::pair<ElementSet, std::uint32_t>> cyclic;
  for (std::uint32_t g = 0; g < n; ++g) {
    ElementSet c = closure(fam, table, {g});
    if (gens_of.emplace(c, std::vector<std::uint32_t>{g}).second) cyclic.emplace_back(c, g);
  }
  std::vector<ElementSet> work;
  for (const auto& [set, gens] : gens_of) work.push_back(set);
  while (!work.empty()) {
    ElementSet s = work.back();
    work.pop_back();
    const auto gens = gens_of.at(s);
    for (const auto& [c, g] : cyclic) {
      if (std::includes(s.begin(), s.end(), c.begin(), c.end())) continue;
      auto joined_gens = gens;
      joined_gens.push_back(g);
      ElementSet j = closure(fam, table, joined_gens);
      if (gens_of.emplace(j, joined_gens).second) work.push_back(j);
    }
  }

  const auto cat = catalogue(fam, table);
  const auto a = PresentedElement{0, 1}.index(fam);
  const auto b = PresentedElement{1, 0}.index(fam);
  const auto a_inv = pg_inv({0, 1}, fam).index(fam);
  const auto b_inv = pg_inv({1, 0}, fam).index(fam);
  auto mul = [&](std::uint32_t x, std::uint32_t y) { return table[static_cast<std::size_t>(x) * n + y]; };

  std::vector<PresentedSubgroup> out;
  for (const auto& [set, gens] : gens_of) {
    PresentedSubgroup sg;
    sg.elements = set;
    sg.normal = true;
    for (auto h : set) {
      if (!sg.contains(mul(mul(a, h), a_inv)) || !sg.contains(mul(mul(b, h), b_inv))) {
        sg.normal = false;
        break;
      }
    }
    sg.form = form_from_catalogue(cat, set);
    out.push_back(std::move(sg));
  }
  std::sort(out.begin(), out.end(), [](const PresentedSubgroup& x, const PresentedSubgroup& y) {
    if (x.elements.size() != y.elements.size()) return x.elements.size() < y.elements.size();
    return x.elements < y.elements;
  });
  return out;
}

SubgroupClassificationReport verify_subgroup_classification(const TwoGroupFamily& fam) {
  SubgroupClassificationReport report;
  const auto subgroups = all_subgroups(fam);
  report.subgroup_count = subgroups.size();
  const auto central = PresentedElement{0, Residue{1} << fam.m()}.index(fam);
  const std::string b_form = "<b>";
  const std::string b_central_form = "<" + PresentedElement{1, Residue{1} << fam.m()}.to_string() + ">";
  std::set<std::string> non_normal;
  for (const auto& sg : subgroups) {
    if (sg.elements.size() == 1) continue;
    const std::string label = sg.form;
    if (label == "unclassified") {
      report.problems.push_back("subgroup of order " + std::to_string(sg.elements.size()) +
                                " matches no catalogue form");
    }
    if (!sg.normal) {
      non_normal.insert(label);
      report.non_normal.push_back(label);
      if (label != b_form && label != b_central_form) {
        report.problems.push_back("unexpected non-normal subgroup " + label);
      }
    } else if (!sg.contains(central)) {
      report.problems.push_back("normal subgroup " + label + " misses a^(2^m)");
    }
  }
  if (non_normal != std::set<std::string>{b_form, b_central_form}) {
    report.problems.push_back("non-normal set differs from {<b>, " + b_central_form + "}");
  }
  report.ok = report.problems.empty();
  return report;
}

bool satisfies_relations(const TwoGroupFamily& fam, const HolElement& x, const HolElement& y) {
  if (hol_order(x) != static_cast<std::uint64_t>(fam.a_order())) return false;
  if (!(hol_mul(y, y) == hol_pow(x, static_cast<std::uint64_t>(fam.b_square_exponent())))) {
    return false;
  }
  // x y = y x^twist
  if (!(hol_mul(x, y) == hol_mul(y, hol_pow(x, static_cast<std::uint64_t>(fam.twist()))))) {
    return false;
  }
  HolElement p = HolElement::identity(x.shape());
  for (Residue k = 0; k < fam.a_order(); ++k) {
    if (p == y) return false;
    p = hol_mul(p, x);
  }
  return true;
}

std::optional<GeneratorImages> find_isomorphism(const TwoGroupFamily& fam, const HolSubgroup& h) {
  if (h.size() != fam.order()) return std::nullopt;
  const auto x_order = static_cast<std::uint64_t>(fam.a_order());
  const std::uint64_t y_order = fam.kind() == FamilyKind::Quaternion ? 4 : 2;
  std::vector<const HolElement*> xs, ys;
  for (const auto& e : h.elements()) {
    const auto o = hol_order(e);
    if (o == x_order) xs.push_back(&e);
    if (o == y_order) ys.push_back(&e);
  }
  for (const auto* x : xs) {
    for (const auto* y : ys) {
      if (satisfies_relations(fam, *x, *y)) return GeneratorImages{*x, *y};
    }
  }
  return std::nullopt;
}

}  // namespace mmc
