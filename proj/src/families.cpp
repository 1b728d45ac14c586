#include "mmcbrace/families.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "mmcbrace/errors.hpp"

namespace mmc {

namespace {

Residue mod(Residue v, Residue q) {
  Residue r = v % q;
  return r < 0 ? r + q : r;
}

int parse_int(std::string_view text, std::string_view what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

std::string_view take_field(std::string_view& rest, char sep) {
  auto pos = rest.find(sep);
  std::string_view head = rest.substr(0, pos);
  rest = pos == std::string_view::npos ? std::string_view{} : rest.substr(pos + 1);
  return head;
}

int field_value(std::string_view field, std::string_view name) {
  if (field.substr(0, name.size() + 1) != std::string(name) + "=") {
    throw ParseError("expected " + std::string(name) + "=..., got '" + std::string(field) + "'");
  }
  return parse_int(field.substr(name.size() + 1), name);
}

}  // namespace

void BraceDescriptor::validate() const {
  if (m < kMinDescriptorM || m > kMaxFamilyM) {
    throw FamilyMismatch("descriptor m = " + std::to_string(m) + " outside [" +
                         std::to_string(kMinDescriptorM) + ", " + std::to_string(kMaxFamilyM) + "]");
  }
  if ((x != 0 && x != 1) || (y != 0 && y != 1)) throw FamilyMismatch("x and y must be 0 or 1");
  if (form == DescriptorForm::II && y != 0) throw FamilyMismatch("form II requires y = 0");
  if (z < 0 || z >= (Residue{1} << m) || z % 2 != 0) {
    throw FamilyMismatch("z = " + std::to_string(z) + " must be even in [0, " +
                         std::to_string(Residue{1} << m) + ")");
  }
}

std::string BraceDescriptor::to_string() const {
  std::string out = "m=" + std::to_string(m) + (form == DescriptorForm::I ? ":I:" : ":II:");
  out += "x=" + std::to_string(x);
  if (form == DescriptorForm::I) out += ",y=" + std::to_string(y);
  return out + ",z=" + std::to_string(z);
}

BraceDescriptor BraceDescriptor::parse(std::string_view text) {
  std::string_view rest = text;
  BraceDescriptor d;
  d.m = field_value(take_field(rest, ':'), "m");
  std::string_view form = take_field(rest, ':');
  if (form == "I") {
    d.form = DescriptorForm::I;
  } else if (form == "II") {
    d.form = DescriptorForm::II;
  } else {
    throw ParseError("form must be I or II in '" + std::string(text) + "'");
  }
  d.x = field_value(take_field(rest, ','), "x");
  if (d.form == DescriptorForm::I) d.y = field_value(take_field(rest, ','), "y");
  d.z = field_value(take_field(rest, ','), "z");
  if (!rest.empty()) throw ParseError("trailing text in '" + std::string(text) + "'");
  d.validate();
  return d;
}

std::vector<BraceDescriptor> all_descriptors(int m, DescriptorForm form) {
  std::vector<BraceDescriptor> out;
  for (int x = 0; x <= 1; ++x) {
    for (int y = 0; y <= (form == DescriptorForm::I ? 1 : 0); ++y) {
      for (Residue z = 0; z < (Residue{1} << m); z += 2) {
        BraceDescriptor d{m, form, x, y, z};
        d.validate();
        out.push_back(d);
      }
    }
  }
  return out;
}

std::vector<BraceDescriptor> all_descriptors(int m) {
  auto out = all_descriptors(m, DescriptorForm::I);
  auto two = all_descriptors(m, DescriptorForm::II);
  out.insert(out.end(), two.begin(), two.end());
  return out;
}

GroupShape family_shape(int m) { return GroupShape(2, {1, m + 1}); }

Cocycle descriptor_cocycle(const BraceDescriptor& d) {
  d.validate();
  const GroupShape shape = family_shape(d.m);
  const Residue top = Residue{1} << d.m;
  const Residue beta = 1 + 2 * d.z;
  const Residue tau = 1 + top * (1 + d.x);
  const bool one = d.form == DescriptorForm::I;
  AutMatrix S(EndoMatrix::canonicalize(shape, {{1, one ? d.y : 0}, {top * d.x, beta}}));
  AutMatrix T(EndoMatrix::canonicalize(shape, {{1, 0}, {one ? 0 : top, tau}}));
  GroupElement ga(shape, {0, 1});
  GroupElement gb(shape, {1, one ? 0 : top / 2});
  return cocycle_extend(TwoGroupFamily::mmc(d.m), shape, S, T, ga, gb);
}

BraceTable build_family_brace(const BraceDescriptor& d) {
  BraceTable t = brace_from_cocycle(descriptor_cocycle(d));
  if (auto v = verify_brace(t); !v) throw NotABrace(d.to_string() + ": " + v.failure);
  return t;
}

Residue geometric_sum(Residue beta, std::uint64_t n, Residue modulus) {
  if (modulus <= 0) throw Error("modulus must be positive");
  if (beta % 2 == 0) throw Error("beta must be odd");
  Residue sum = 0, p = 1 % modulus, b = mod(beta, modulus);
  for (std::uint64_t k = 0; k <= n; ++k) {
    sum = (sum + p) % modulus;
    p = static_cast<Residue>((static_cast<__int128>(p) * b) % modulus);
  }
  return sum;
}

LemmaReport verify_lemma_geometric(int m) {
  if (m < 1 || m > 30) throw Error("m out of range");
  LemmaReport r;
  const Residue q = Residue{1} << (m + 1);
  const Residue half = Residue{1} << m;
  for (Residue beta = 1; beta < q; beta += 2) {
    ++r.checked;
    Residue s = geometric_sum(beta, static_cast<std::uint64_t>(half - 1), q);
    Residue want = beta % 4 == 1 ? half : 0;
    if (s != want) {
      r.ok = false;
      r.counterexamples.push_back("m=" + std::to_string(m) + " beta=" + std::to_string(beta) +
                                  " sum=" + std::to_string(s));
    }
  }
  return r;
}

LemmaReport verify_lemma_non_vanishing(int m) {
  if (m < 2 || m > 20) throw Error("m out of range");
  LemmaReport r;
  const Residue q = Residue{1} << (m + 1);
  const Residue half = Residue{1} << m;
  const Residue quarter = Residue{1} << (m - 1);
  const std::vector<Residue> weak{half - 1, quarter - 1, half + quarter - 1};
  for (Residue beta = 1; beta < q; beta += 4) {
    Residue sum = 1, p = 1;
    for (Residue n = 1; n <= q - 2; ++n) {
      p = p * beta % q;
      sum = (sum + p) % q;
      ++r.checked;
      auto report = [&](const std::string& what) {
        r.ok = false;
        r.counterexamples.push_back("m=" + std::to_string(m) + " beta=" + std::to_string(beta) +
                                    " n=" + std::to_string(n) + ": " + what);
      };
      if (sum % quarter == 0 && std::find(weak.begin(), weak.end(), n) == weak.end()) {
        report("sum = 0 mod 2^(m-1)");
      }
      if (sum % half == 0 && n != half - 1) report("sum = 0 mod 2^m");
    }
  }
  return r;
}

namespace {

void require_family_census(int m, const Census& c) {
  if (c.m != m || !(c.shape == family_shape(m))) {
    throw IncompleteCensus("need the census of m = " + std::to_string(m) + " on " +
                           family_shape(m).to_string());
  }
  if (!c.classified) throw IncompleteCensus("census has not been classified");
}

}  // namespace

CoverageReport families_cover_census(int m, const Census& census,
                                     std::optional<std::vector<BraceDescriptor>> descriptors) {
  require_family_census(m, census);
  const auto ds = descriptors ? *descriptors : all_descriptors(m);
  std::vector<BraceTable> tables;
  std::vector<std::vector<std::uint64_t>> prints;
  for (const auto& d : ds) {
    if (d.m != m) throw FamilyMismatch(d.to_string() + " does not have m = " + std::to_string(m));
    tables.push_back(build_family_brace(d));
    prints.push_back(brace_fingerprint(tables.back()));
  }
  CoverageReport r;
  for (const auto& cls : census.iso_classes) {
    const BraceTable& rep = census.representative(cls).brace;
    const auto fp = brace_fingerprint(rep);
    std::string match = "-";
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (prints[i] == fp && braces_isomorphic(tables[i], rep)) {
        match = ds[i].to_string();
        break;
      }
    }
    if (match == "-") {
      r.ok = false;
      r.uncovered.push_back(cls.id);
    }
    r.matches.push_back(match);
  }
  return r;
}

Stratification socle_stratification(int m, const Census& census) {
  require_family_census(m, census);
  const TwoGroupFamily fam = TwoGroupFamily::mmc(m);
  Stratification s;
  s.m = m;
  s.total_classes = census.iso_classes.size();
  s.per_socle_sum = static_cast<std::size_t>(4 * m - 3);
  s.corollary_bound = static_cast<std::size_t>(4 * m - 5);

  const auto coverage = families_cover_census(m, census);
  std::map<std::string, StratumRow> rows;
  for (const auto& cls : census.iso_classes) {
    const std::string desc = census.representative(cls).socle_desc;
    const std::string label = socle_class_label(fam, desc);
    auto& row = rows[label];
    row.label = label;
    row.family = socle_family(label);
    ++row.classes;
    if (coverage.matches[static_cast<std::size_t>(cls.id)] != "-") ++row.covered;
    if (desc.rfind("<a^", 0) == 0) ++s.power_socles_inner;
  }
  for (const auto& [label, row] : rows) s.rows.push_back(row);

  auto count_family = [&](const std::string& fam_label) {
    std::size_t n = 0;
    for (const auto& row : s.rows) n += row.family == fam_label ? row.classes : 0;
    return n;
  };
  const auto mm = static_cast<std::size_t>(m);
  const std::size_t ba = count_family("<b*a>");
  s.bounds.push_back({"socle <b*a>", "==", 2, ba, ba == 2});
  const std::size_t two_gen = count_family("<b,a^k>");
  s.bounds.push_back({"socle <b,a^(2^k)>", ">=", mm - 1, two_gen, two_gen >= mm - 1});
  // Asserted over 1 <= k <= m-1, two classes per k. The count that also
  // takes k = 0 (the <a> classes, already counted under <b*a>) is reported.
  s.power_socles_with_a = count_family("<a^k>") + ba;
  s.bounds.push_back({"socle <a^(2^k)>, 1 <= k <= m-1", ">=", 2 * (mm - 1), s.power_socles_inner,
                      s.power_socles_inner >= 2 * (mm - 1)});
  const std::size_t twisted = count_family("<b*a^k>");
  s.bounds.push_back({"socle <b*a^(2^k)>", ">=", mm - 2, twisted, twisted >= mm - 2});
  s.bounds.push_back({"all classes", ">=", s.corollary_bound, s.total_classes,
                      s.total_classes >= s.corollary_bound});
  for (const auto& b : s.bounds) s.ok = s.ok && b.ok;
  return s;
}

SeparationReport cross_form_separation(int m, std::size_t stride) {
  if (stride == 0) stride = 1;
  auto one = all_descriptors(m, DescriptorForm::I);
  auto two = all_descriptors(m, DescriptorForm::II);
  std::vector<BraceTable> t1, t2;
  for (const auto& d : one) t1.push_back(build_family_brace(d));
  for (const auto& d : two) t2.push_back(build_family_brace(d));
  SeparationReport r;
  std::size_t k = 0;
  for (std::size_t i = 0; i < t1.size(); ++i) {
    for (std::size_t j = 0; j < t2.size(); ++j, ++k) {
      if (k % stride != 0) continue;
      ++r.pairs;
      if (braces_isomorphic(t1[i], t2[j])) {
        r.ok = false;
        r.isomorphic_pairs.push_back(one[i].to_string() + " ~ " + two[j].to_string());
      }
    }
  }
  return r;
}

}  // namespace mmc
