#include "mmcbrace/census.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <mutex>
#include <numeric>
#include <thread>

#include "mmcbrace/errors.hpp"

namespace mmc {

namespace {

using KeySet = std::vector<std::uint64_t>;
using Clock = std::chrono::steady_clock;

void require_census_shape(const GroupShape& shape, int m) {
  TwoGroupFamily fam = TwoGroupFamily::mmc(m);
  if (shape.prime() != 2 || shape.order() != fam.order()) {
    throw ShapeMismatch("|N| = " + std::to_string(shape.order()) + " but " + fam.to_string() +
                        " has order " + std::to_string(fam.order()));
  }
  require_indexable_holomorph(shape);
}

HolElement element_from_key(const GroupShape& shape, std::uint64_t key) {
  return HolElement(AutMatrix(EndoMatrix::from_key(shape, key / shape.order())),
                    GroupElement::from_index(shape, key % shape.order()));
}

HolSubgroup subgroup_from_keys(const GroupShape& shape, const KeySet& keys) {
  std::vector<HolElement> elements;
  elements.reserve(keys.size());
  for (auto k : keys) elements.push_back(element_from_key(shape, k));
  return HolSubgroup(shape, std::move(elements));
}

KeySet conjugate_keys(const KeySet& keys, const GroupShape& shape, const AutMatrix& C,
                      const AutMatrix& C_inv) {
  KeySet out;
  out.reserve(keys.size());
  for (auto k : keys) {
    auto g = element_from_key(shape, k);
    out.push_back(HolElement(compose(compose(C, g.aut()), C_inv), apply(C, g.trans())).key());
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Deadline {
  Clock::time_point end;
  bool active = false;

  explicit Deadline(double seconds) {
    if (seconds > 0) {
      active = true;
      end = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                               std::chrono::duration<double>(seconds));
    }
  }
  bool passed() const { return active && Clock::now() > end; }
};

struct XCandidate {
  std::size_t s;                   // index into the Sylow list
  GroupElement v;                  // translation of X
  std::vector<std::uint32_t> t;    // translation indices of X^i
  std::vector<std::uint8_t> used;  // used[t_i] = 1
};

struct YCandidate {
  std::size_t t;  // index into the involution list
  GroupElement w;
};

}  // namespace

const CensusRecord& Census::record(const std::string& subgroup_key) const {
  auto it = std::lower_bound(records.begin(), records.end(), subgroup_key,
                             [](const CensusRecord& r, const std::string& k) { return r.subgroup_key < k; });
  if (it == records.end() || it->subgroup_key != subgroup_key) {
    throw IncompleteCensus("no record with key " + subgroup_key);
  }
  return *it;
}

std::string subgroup_digest(const std::vector<std::uint64_t>& sorted_keys) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto k : sorted_keys) {
    for (int b = 0; b < 8; ++b) {
      h ^= (k >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CensusRecord make_record(int m, const HolElement& X, const HolElement& Y) {
  const TwoGroupFamily fam = TwoGroupFamily::mmc(m);
  const GroupShape& shape = X.shape();
  if (!(Y.shape() == shape)) throw ShapeMismatch("X and Y act on different groups");
  if (shape.order() != fam.order()) {
    throw ShapeMismatch("|N| = " + std::to_string(shape.order()) + " but " + fam.to_string() +
                        " has order " + std::to_string(fam.order()));
  }
  if (!satisfies_relations(fam, X, Y)) {
    throw RelationViolation("X = " + X.to_string() + ", Y = " + Y.to_string() +
                            " do not satisfy the relations of " + fam.to_string());
  }
  const auto n = static_cast<std::uint32_t>(fam.order());
  std::vector<HolElement> h;  // h[g] for each presented index g
  h.reserve(n);
  HolElement p = HolElement::identity(shape);
  for (Residue i = 0; i < fam.a_order(); ++i) {
    h.push_back(p);
    p = hol_mul(p, X);
  }
  for (Residue i = 0; i < fam.a_order(); ++i) h.push_back(hol_mul(h[static_cast<std::size_t>(i)], Y));

  std::vector<Label> preimage(n, n);
  for (Label g = 0; g < n; ++g) {
    auto idx = h[g].trans().index();
    if (preimage[idx] != n) throw NotRegular("<X, Y> is not regular: two elements over " + h[g].trans().to_string());
    preimage[idx] = g;
  }
  std::vector<Label> add(static_cast<std::size_t>(n) * n);
  for (Label x = 0; x < n; ++x) {
    for (Label y = 0; y < n; ++y) {
      add[static_cast<std::size_t>(x) * n + y] = preimage[(h[x].trans() + h[y].trans()).index()];
    }
  }
  BraceTable brace(n, std::move(add), multiplication_table(fam));
  if (auto v = verify_brace(brace); !v) throw NotABrace(v.failure);

  KeySet keys;
  for (const auto& e : h) keys.push_back(e.key());
  std::sort(keys.begin(), keys.end());
  std::string digest = subgroup_digest(keys);
  std::string soc = catalogue_form(fam, socle(brace));
  return CensusRecord{m, shape, X, Y, std::move(keys), std::move(digest), std::move(brace), std::move(soc), -1};
}

CensusRecord make_record(int m, const HolSubgroup& h) {
  const TwoGroupFamily fam = TwoGroupFamily::mmc(m);
  if (h.size() != fam.order() || !is_regular(h)) {
    throw NotRegular("subgroup of size " + std::to_string(h.size()) + " is not regular of order " +
                     std::to_string(fam.order()));
  }
  const auto top = static_cast<std::uint64_t>(fam.a_order());
  for (const auto& x : h.elements()) {
    if (hol_order(x) != top) continue;
    std::vector<HolElement> powers;
    HolElement p = HolElement::identity(h.shape());
    for (std::uint64_t i = 0; i < top; ++i) {
      powers.push_back(p);
      p = hol_mul(p, x);
    }
    const HolElement target = powers[static_cast<std::size_t>((std::uint64_t{1} << m) + 1)];
    for (const auto& y : h.elements()) {
      if (y.is_identity() || !hol_mul(y, y).is_identity()) continue;
      if (std::find(powers.begin(), powers.end(), y) != powers.end()) continue;
      if (hol_mul(hol_mul(y, x), y) == target) return make_record(m, x, y);
    }
    // Aut(M) is transitive on elements of order 2^(m+1), so one X decides.
    break;
  }
  throw FamilyMismatch("subgroup is not of type " + fam.to_string());
}

Census enumerate_mmc_regular(const GroupShape& shape, int m, const SearchOptions& opts) {
  require_census_shape(shape, m);
  const Deadline deadline(opts.time_budget);
  const std::uint64_t half = std::uint64_t{1} << m;
  const auto top = static_cast<std::size_t>(2 * half);
  const std::uint64_t order = shape.order();
  const AutMatrix I = AutMatrix::identity(shape);

  std::vector<AutMatrix> all_auts;
  std::vector<AutMatrix> sylow;
  for_each_automorphism(
      shape,
      [&](const AutMatrix& A) {
        all_auts.push_back(A);
        if (is_upper_unipotent_mod_p(A.endo())) sylow.push_back(A);
      },
      opts.enumeration_bound);
  const bool two_group = sylow.size() == all_auts.size();

  std::vector<GroupElement> elems;
  for (std::uint64_t i = 0; i < order; ++i) elems.push_back(GroupElement::from_index(shape, i));

  // X = (S, v) with S^(2^m) = I. Its 2^m-th power is (I, G v) with
  // G = I + S + ... + S^(2^m - 1), so X has order 2^(m+1) iff G v has order 2.
  std::vector<std::vector<AutMatrix>> sylow_powers(sylow.size());
  std::vector<XCandidate> xs;
  for (std::size_t s = 0; s < sylow.size(); ++s) {
    const AutMatrix& S = sylow[s];
    if (!(power(S, half) == I)) continue;
    auto& pw = sylow_powers[s];
    pw.push_back(I);
    EndoMatrix G = EndoMatrix::zero(shape);
    for (std::uint64_t k = 0; k < half; ++k) {
      G = G + pw.back().endo();
      pw.push_back(compose(pw.back(), S));
    }
    for (const auto& v : elems) {
      GroupElement gv = apply(G, v);
      if (gv.is_zero() || !(2 * gv).is_zero()) continue;
      XCandidate c{s, v, {}, std::vector<std::uint8_t>(order, 0)};
      GroupElement t = GroupElement::zero(shape);
      bool distinct = true;
      for (std::size_t i = 0; i < top && distinct; ++i) {
        auto idx = t.index();
        distinct = c.used[idx] == 0;
        c.used[idx] = 1;
        c.t.push_back(static_cast<std::uint32_t>(idx));
        t = t + apply(pw[i % half], v);
      }
      if (distinct) xs.push_back(std::move(c));
    }
  }

  std::vector<AutMatrix> involutions;
  for (const auto& T : sylow) {
    if (compose(T, T) == I) involutions.push_back(T);
  }
  std::vector<std::vector<YCandidate>> ys(involutions.size());
  for (std::size_t t = 0; t < involutions.size(); ++t) {
    for (const auto& w : elems) {
      if (involutions[t].is_identity() && w.is_zero()) continue;
      if (apply(involutions[t], w) == -w) ys[t].push_back({t, w});
    }
  }

  std::vector<std::set<KeySet>> found(std::max(1u, opts.workers));
  std::atomic<bool> timed_out{false};
  auto work = [&](unsigned worker) {
    std::vector<std::vector<std::int8_t>> commutes(sylow.size());
    for (std::size_t xi = worker; xi < xs.size(); xi += found.size()) {
      if (timed_out.load() || deadline.passed()) {
        timed_out = true;
        return;
      }
      const XCandidate& X = xs[xi];
      const AutMatrix& S = sylow[X.s];
      auto& comm = commutes[X.s];
      if (comm.empty()) {
        comm.resize(involutions.size());
        for (std::size_t t = 0; t < involutions.size(); ++t) {
          comm[t] = compose(involutions[t], S) == compose(S, involutions[t]) ? 1 : 0;
        }
      }
      const GroupElement target = elems[X.t[static_cast<std::size_t>(half + 1)]];
      for (std::size_t t = 0; t < involutions.size(); ++t) {
        if (!comm[t]) continue;
        const AutMatrix& T = involutions[t];
        const GroupElement Tv = apply(T, X.v);
        std::vector<AutMatrix> ts;  // T S^i, built on first success
        for (const auto& Y : ys[t]) {
          // YXY = (S, w + Tv + TS w) must equal X^(1+2^m)
          if (!(Y.w + Tv + apply(T, apply(S, Y.w)) == target)) continue;
          bool regular = true;
          std::vector<std::uint32_t> over(top);
          for (std::size_t i = 0; i < top && regular; ++i) {
            auto idx = (Y.w + apply(T, elems[X.t[i]])).index();
            regular = X.used[idx] == 0;
            over[i] = static_cast<std::uint32_t>(idx);
          }
          if (!regular) continue;
          if (ts.empty()) {
            for (std::size_t i = 0; i < top; ++i) ts.push_back(compose(T, sylow_powers[X.s][i % half]));
          }
          KeySet keys;
          keys.reserve(2 * top);
          for (std::size_t i = 0; i < top; ++i) {
            keys.push_back(sylow_powers[X.s][i % half].key() * order + X.t[i]);
            keys.push_back(ts[i].key() * order + over[i]);
          }
          std::sort(keys.begin(), keys.end());
          found[worker].insert(std::move(keys));
        }
      }
    }
  };
  if (found.size() == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < found.size(); ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  if (timed_out) {
    throw BoundExceeded("time budget of " + std::to_string(opts.time_budget) + " s exhausted on " +
                        shape.to_string());
  }

  std::set<KeySet> merged;
  for (auto& f : found) merged.insert(f.begin(), f.end());
  if (!two_group && !merged.empty()) {
    std::set<KeySet> closed;
    for (const auto& C : all_auts) {
      const AutMatrix C_inv = aut_inverse(C);
      for (const auto& keys : merged) closed.insert(conjugate_keys(keys, shape, C, C_inv));
    }
    merged = std::move(closed);
  }

  Census census{m, shape, {}, {}, false};
  for (const auto& keys : merged) census.records.push_back(make_record(m, subgroup_from_keys(shape, keys)));
  std::sort(census.records.begin(), census.records.end(),
            [](const CensusRecord& a, const CensusRecord& b) { return a.subgroup_key < b.subgroup_key; });
  for (std::size_t i = 1; i < census.records.size(); ++i) {
    if (census.records[i].subgroup_key == census.records[i - 1].subgroup_key) {
      throw KeyOverflow("subgroup digest collision at " + census.records[i].subgroup_key);
    }
  }
  classify(census);
  return census;
}

std::set<std::vector<std::uint64_t>> unpruned_regular_subgroups(const GroupShape& shape, int m,
                                                                const SearchOptions& opts) {
  require_census_shape(shape, m);
  const Deadline deadline(opts.time_budget);
  const TwoGroupFamily fam = TwoGroupFamily::mmc(m);
  const auto top = static_cast<std::uint64_t>(fam.a_order());
  std::vector<HolElement> xs, ys;
  for (const auto& A : enumerate_automorphisms(shape, opts.enumeration_bound)) {
    for (std::uint64_t i = 0; i < shape.order(); ++i) {
      HolElement g(A, GroupElement::from_index(shape, i));
      auto o = hol_order(g);
      if (o == top) xs.push_back(g);
      if (o == 2) ys.push_back(g);
    }
  }
  std::set<KeySet> seen, accepted;
  for (const auto& x : xs) {
    if (deadline.passed()) throw BoundExceeded("time budget exhausted in the unpruned search");
    for (const auto& y : ys) {
      std::vector<HolElement> gens{x, y};
      try {
        HolSubgroup h = generate(shape, gens, fam.order());
        if (h.size() != fam.order() || !is_regular(h)) continue;
        if (!seen.insert(h.keys()).second) continue;
        if (find_isomorphism(fam, h)) accepted.insert(h.keys());
      } catch (const BoundExceeded&) {
      }
    }
  }
  return accepted;
}

void classify(Census& c) {
  const std::size_t n = c.records.size();
  std::map<std::string, std::size_t> by_key;
  for (std::size_t i = 0; i < n; ++i) by_key[c.records[i].subgroup_key] = i;

  // Union of Aut(N)-conjugate records; conjugation by (C, 0) is a brace
  // isomorphism.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  if (n > 0) {
    for (const auto& C : enumerate_automorphisms(c.shape)) {
      const AutMatrix C_inv = aut_inverse(C);
      for (std::size_t i = 0; i < n; ++i) {
        auto keys = conjugate_keys(c.records[i].element_keys, c.shape, C, C_inv);
        auto it = by_key.find(subgroup_digest(keys));
        if (it == by_key.end() || c.records[it->second].element_keys != keys) {
          throw IncompleteCensus("census is not closed under conjugation by " + C.to_string());
        }
        auto a = find(i), b = find(it->second);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }

  struct Cls {
    std::size_t rep;
    std::vector<std::uint64_t> fingerprint;
  };
  std::vector<Cls> classes;
  std::vector<int> class_of_root(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (root != i) continue;  // records are key-sorted, so roots come first
    auto fp = brace_fingerprint(c.records[i].brace);
    int id = -1;
    for (std::size_t k = 0; k < classes.size() && id < 0; ++k) {
      if (classes[k].fingerprint == fp &&
          braces_isomorphic(c.records[classes[k].rep].brace, c.records[i].brace)) {
        id = static_cast<int>(k);
      }
    }
    if (id < 0) {
      id = static_cast<int>(classes.size());
      classes.push_back({i, std::move(fp)});
    }
    class_of_root[i] = id;
  }
  c.iso_classes.clear();
  for (std::size_t k = 0; k < classes.size(); ++k) {
    c.iso_classes.push_back({static_cast<int>(k), 0, c.records[classes[k].rep].subgroup_key});
  }
  for (std::size_t i = 0; i < n; ++i) {
    c.records[i].iso_class_id = class_of_root[find(i)];
    ++c.iso_classes[static_cast<std::size_t>(c.records[i].iso_class_id)].size;
  }
  c.classified = true;
}

std::vector<GroupShape> candidate_additive_shapes(int m) {
  TwoGroupFamily::mmc(m);
  std::vector<GroupShape> out{GroupShape(2, {m + 2}), GroupShape(2, {1, m + 1}), GroupShape(2, {2, m}),
                              GroupShape(2, {1, 1, m})};
  std::vector<int> last{1, 1, 1, m - 1};
  std::sort(last.begin(), last.end());
  out.emplace_back(2, last);
  return out;
}

std::vector<AdditiveScanRow> additive_scan(int m, const SearchOptions& opts) {
  std::vector<AdditiveScanRow> rows;
  for (const auto& shape : candidate_additive_shapes(m)) {
    Census c = enumerate_mmc_regular(shape, m, opts);
    rows.push_back({shape, c.records.size(), c.iso_classes.size()});
  }
  return rows;
}

SocleReport verify_socle_facts(const Census& c) {
  SocleReport report;
  const TwoGroupFamily fam = TwoGroupFamily::mmc(c.m);
  const Label top = PresentedElement{0, Residue{1} << c.m}.index(fam);
  const Label next = PresentedElement{0, Residue{1} << (c.m - 1)}.index(fam);
  for (const auto& r : c.records) {
    ++report.checked;
    auto soc = socle(r.brace);
    auto has = [&](Label x) { return std::binary_search(soc.begin(), soc.end(), x); };
    auto fail = [&](const std::string& what) {
      report.ok = false;
      report.violations.push_back(r.subgroup_key + ": " + what);
    };
    if (!has(top)) fail("a^" + std::to_string(Residue{1} << c.m) + " not in the socle");
    if (c.shape.rank() > 1 && !has(next)) {
      fail("a^" + std::to_string(Residue{1} << (c.m - 1)) + " not in the socle");
    }
    if (auto v = is_ideal(r.brace, soc); !v) fail("socle is not an ideal: " + v.failure);
    const std::string form = catalogue_form(fam, soc);
    if (form == "unclassified") fail("socle matches no catalogue subgroup");
    if (form != r.socle_desc) fail("stored socle " + r.socle_desc + " differs from " + form);
  }
  return report;
}

std::string socle_class_label(const TwoGroupFamily&, const std::string& socle_desc) {
  if (socle_desc == "<a>") return "<b*a>";
  return socle_desc;
}

std::string socle_family(const std::string& label) {
  if (label == "<b*a>") return label;
  if (label.rfind("<b,a^", 0) == 0) return "<b,a^k>";
  if (label.rfind("<b*a^", 0) == 0) return "<b*a^k>";
  if (label.rfind("<a^", 0) == 0) return "<a^k>";
  return label;
}

}  // namespace mmc
