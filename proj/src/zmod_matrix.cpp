#include "mmcbrace/zmod_matrix.hpp"

#include <cstdlib>
#include <numeric>
#include <sstream>

#include "mmcbrace/errors.hpp"

namespace mmc {

namespace {

Residue reduce(Residue value, Residue modulus) {
  Residue r = value % modulus;
  return r < 0 ? r + modulus : r;
}

Residue mul_mod(Residue a, Residue b, Residue modulus) {
  __int128 product = static_cast<__int128>(a) * static_cast<__int128>(b);
  auto r = static_cast<Residue>(product % modulus);
  return r < 0 ? r + modulus : r;
}

bool is_prime(Residue p) {
  if (p < 2) return false;
  for (Residue d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Residue pow_mod(Residue base, Residue exp, Residue modulus) {
  Residue result = 1 % modulus;
  base = reduce(base, modulus);
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, modulus);
    base = mul_mod(base, base, modulus);
    exp >>= 1;
  }
  return result;
}

Residue ipow(Residue base, int exp) {
  Residue r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void require_same_shape(const GroupShape& a, const GroupShape& b) {
  if (!(a == b)) {
    throw ShapeMismatch(a.to_string() + " vs " + b.to_string());
  }
}

// Number of admissible values of entry (i,j) and the step between them.
std::pair<Residue, Residue> entry_range(const GroupShape& shape, int i, int j) {
  if (i > j) {
    Residue step = ipow(shape.prime(), shape.exponent(i) - shape.exponent(j));
    return {shape.modulus(j), step};
  }
  return {shape.modulus(i), 1};
}

}  // namespace

GroupShape::GroupShape(Residue prime, std::vector<int> exponents) : prime_(prime) {
  if (!is_prime(prime)) throw InvalidShape("not a prime: " + std::to_string(prime));
  if (exponents.empty()) throw InvalidShape("no cyclic factors");
  if (exponents.size() > static_cast<std::size_t>(kMaxRank)) {
    throw InvalidShape("rank above " + std::to_string(kMaxRank));
  }
  rank_ = static_cast<int>(exponents.size());
  int total = 0;
  for (int i = 0; i < rank_; ++i) {
    if (exponents[i] < 1) throw InvalidShape("exponent below 1");
    if (i > 0 && exponents[i] < exponents[i - 1]) throw InvalidShape("exponents not ascending");
    exponents_[i] = exponents[i];
    total += exponents[i];
  }
  // order must stay well inside 64 bits so index arithmetic cannot overflow
  __int128 order = 1;
  for (int i = 0; i < total; ++i) {
    order *= prime;
    if (order > (static_cast<__int128>(1) << 62)) throw InvalidShape("order too large");
  }
  order_ = static_cast<std::uint64_t>(order);
  for (int i = 0; i < rank_; ++i) moduli_[i] = ipow(prime, exponents_[i]);
}

GroupShape GroupShape::from_moduli(std::span<const Residue> moduli) {
  if (moduli.empty()) throw InvalidShape("no cyclic factors");
  Residue prime = 0;
  for (Residue d = 2; d <= moduli[0]; ++d) {
    if (moduli[0] % d == 0) {
      prime = d;
      break;
    }
  }
  if (prime == 0) throw InvalidShape("modulus below 2");
  std::vector<int> exps;
  for (Residue q : moduli) {
    int e = 0;
    Residue v = q;
    while (v > 1 && v % prime == 0) {
      v /= prime;
      ++e;
    }
    if (v != 1 || e == 0) {
      throw InvalidShape(std::to_string(q) + " is not a power of " + std::to_string(prime));
    }
    exps.push_back(e);
  }
  return GroupShape(prime, std::move(exps));
}

GroupShape GroupShape::parse(std::string_view text) {
  std::vector<Residue> moduli;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string part(text.substr(pos, comma - pos));
    char* end = nullptr;
    long long v = std::strtoll(part.c_str(), &end, 10);
    if (part.empty() || end != part.c_str() + part.size() || v < 2) {
      throw InvalidShape("bad modulus '" + part + "' in \"" + std::string(text) + "\"");
    }
    moduli.push_back(v);
    pos = comma + 1;
  }
  return from_moduli(moduli);
}

int GroupShape::total_exponent() const {
  int t = 0;
  for (int i = 0; i < rank_; ++i) t += exponents_[i];
  return t;
}

std::string GroupShape::to_string() const {
  std::string s;
  for (int i = 0; i < rank_; ++i) {
    if (i) s += ',';
    s += std::to_string(moduli_[i]);
  }
  return s;
}

GroupElement::GroupElement(const GroupShape& shape, std::span<const Residue> coords)
    : shape_(shape) {
  if (static_cast<int>(coords.size()) != shape.rank()) {
    throw ShapeMismatch("element with " + std::to_string(coords.size()) +
                        " coordinates for shape " + shape.to_string());
  }
  for (int i = 0; i < shape.rank(); ++i) coords_[i] = reduce(coords[i], shape.modulus(i));
}

GroupElement::GroupElement(const GroupShape& shape, std::initializer_list<Residue> coords)
    : GroupElement(shape, std::span<const Residue>(coords.begin(), coords.size())) {}

GroupElement GroupElement::zero(const GroupShape& shape) { return GroupElement(shape); }

GroupElement GroupElement::from_index(const GroupShape& shape, std::uint64_t index) {
  GroupElement x(shape);
  for (int i = shape.rank() - 1; i >= 0; --i) {
    auto q = static_cast<std::uint64_t>(shape.modulus(i));
    x.coords_[i] = static_cast<Residue>(index % q);
    index /= q;
  }
  return x;
}

std::uint64_t GroupElement::index() const {
  std::uint64_t idx = 0;
  for (int i = 0; i < shape_.rank(); ++i) {
    idx = idx * static_cast<std::uint64_t>(shape_.modulus(i)) + static_cast<std::uint64_t>(coords_[i]);
  }
  return idx;
}

bool GroupElement::is_zero() const {
  for (int i = 0; i < shape_.rank(); ++i) {
    if (coords_[i] != 0) return false;
  }
  return true;
}

std::uint64_t GroupElement::order() const {
  std::uint64_t ord = 1;
  for (int i = 0; i < shape_.rank(); ++i) {
    Residue q = shape_.modulus(i);
    auto o = static_cast<std::uint64_t>(q / std::gcd(coords_[i], q));
    ord = std::lcm(ord, o);
  }
  return ord;
}

std::string GroupElement::to_string() const {
  std::string s = "(";
  for (int i = 0; i < shape_.rank(); ++i) {
    if (i) s += ',';
    s += std::to_string(coords_[i]);
  }
  return s + ")";
}

GroupElement operator+(const GroupElement& a, const GroupElement& b) {
  require_same_shape(a.shape_, b.shape_);
  GroupElement r(a.shape_);
  for (int i = 0; i < a.shape_.rank(); ++i) {
    Residue s = a.coords_[i] + b.coords_[i];
    Residue q = a.shape_.modulus(i);
    r.coords_[i] = s >= q ? s - q : s;
  }
  return r;
}

GroupElement operator-(const GroupElement& a) {
  GroupElement r(a.shape_);
  for (int i = 0; i < a.shape_.rank(); ++i) {
    r.coords_[i] = a.coords_[i] == 0 ? 0 : a.shape_.modulus(i) - a.coords_[i];
  }
  return r;
}

GroupElement operator-(const GroupElement& a, const GroupElement& b) { return a + (-b); }

GroupElement operator*(Residue k, const GroupElement& a) {
  GroupElement r(a.shape_);
  for (int i = 0; i < a.shape_.rank(); ++i) {
    r.coords_[i] = mul_mod(reduce(k, a.shape_.modulus(i)), a.coords_[i], a.shape_.modulus(i));
  }
  return r;
}

EndoMatrix EndoMatrix::zero(const GroupShape& shape) { return EndoMatrix(shape); }

EndoMatrix EndoMatrix::identity(const GroupShape& shape) {
  EndoMatrix m(shape);
  for (int i = 0; i < shape.rank(); ++i) m.at(i, i) = 1 % shape.modulus(i);
  return m;
}

EndoMatrix EndoMatrix::canonicalize_row_major(const GroupShape& shape,
                                              std::span<const Residue> raw) {
  const int n = shape.rank();
  if (static_cast<int>(raw.size()) != n * n) {
    throw ShapeMismatch("matrix with " + std::to_string(raw.size()) + " entries for shape " +
                        shape.to_string());
  }
  EndoMatrix m(shape);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Residue v = reduce(raw[i * n + j], shape.modulus(i));
      if (i > j) {
        Residue step = entry_range(shape, i, j).second;
        if (v % step != 0) {
          throw DivisibilityViolation("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                      ") = " + std::to_string(raw[i * n + j]) +
                                      " not divisible by " + std::to_string(step));
        }
      }
      m.at(i, j) = v;
    }
  }
  return m;
}

EndoMatrix EndoMatrix::canonicalize(const GroupShape& shape,
                                    const std::vector<std::vector<Residue>>& raw) {
  std::vector<Residue> flat;
  for (const auto& row : raw) {
    if (static_cast<int>(row.size()) != shape.rank()) {
      throw ShapeMismatch("ragged matrix for shape " + shape.to_string());
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return canonicalize_row_major(shape, flat);
}

EndoMatrix EndoMatrix::diagonal(const GroupShape& shape, std::span<const Residue> diag) {
  if (static_cast<int>(diag.size()) != shape.rank()) {
    throw ShapeMismatch("diagonal length for shape " + shape.to_string());
  }
  EndoMatrix m(shape);
  for (int i = 0; i < shape.rank(); ++i) m.at(i, i) = reduce(diag[i], shape.modulus(i));
  return m;
}

std::uint64_t candidate_count(const GroupShape& shape) {
  __int128 count = 1;
  for (int i = 0; i < shape.rank(); ++i) {
    for (int j = 0; j < shape.rank(); ++j) {
      count *= entry_range(shape, i, j).first;
      if (count > (static_cast<__int128>(1) << 63)) {
        throw KeyOverflow("End(" + shape.to_string() + ") too large to index");
      }
    }
  }
  return static_cast<std::uint64_t>(count);
}

EndoMatrix EndoMatrix::from_key(const GroupShape& shape, std::uint64_t key) {
  EndoMatrix m(shape);
  const int n = shape.rank();
  for (int idx = n * n - 1; idx >= 0; --idx) {
    int i = idx / n, j = idx % n;
    auto [count, step] = entry_range(shape, i, j);
    m.at(i, j) = static_cast<Residue>(key % static_cast<std::uint64_t>(count)) * step;
    key /= static_cast<std::uint64_t>(count);
  }
  return m;
}

std::uint64_t EndoMatrix::key() const {
  std::uint64_t key = 0;
  const int n = shape_.rank();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      auto [count, step] = entry_range(shape_, i, j);
      key = key * static_cast<std::uint64_t>(count) + static_cast<std::uint64_t>(entry(i, j) / step);
    }
  }
  return key;
}

std::vector<Residue> EndoMatrix::row_major() const {
  std::vector<Residue> out;
  for (int i = 0; i < rank(); ++i) {
    for (int j = 0; j < rank(); ++j) out.push_back(entry(i, j));
  }
  return out;
}

bool EndoMatrix::is_identity() const { return *this == identity(shape_); }

std::string EndoMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < rank(); ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < rank(); ++j) os << (j ? "," : "") << entry(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

EndoMatrix compose(const EndoMatrix& a, const EndoMatrix& b) {
  require_same_shape(a.shape_, b.shape_);
  const int n = a.rank();
  EndoMatrix r(a.shape_);
  for (int i = 0; i < n; ++i) {
    const Residue q = a.shape_.modulus(i);
    for (int j = 0; j < n; ++j) {
      __int128 s = 0;
      for (int k = 0; k < n; ++k) s += static_cast<__int128>(a.entry(i, k)) * b.entry(k, j);
      r.at(i, j) = static_cast<Residue>(s % q);
    }
  }
  return r;
}

EndoMatrix operator+(const EndoMatrix& a, const EndoMatrix& b) {
  require_same_shape(a.shape_, b.shape_);
  EndoMatrix r(a.shape_);
  for (int i = 0; i < a.rank(); ++i) {
    for (int j = 0; j < a.rank(); ++j) {
      r.at(i, j) = (a.entry(i, j) + b.entry(i, j)) % a.shape_.modulus(i);
    }
  }
  return r;
}

GroupElement apply(const EndoMatrix& a, const GroupElement& x) {
  require_same_shape(a.shape_, x.shape());
  const int n = a.rank();
  GroupElement r(a.shape_);
  for (int i = 0; i < n; ++i) {
    __int128 s = 0;
    for (int k = 0; k < n; ++k) s += static_cast<__int128>(a.entry(i, k)) * x.coords_[k];
    r.coords_[i] = static_cast<Residue>(s % a.shape_.modulus(i));
  }
  return r;
}

EndoMatrix power(const EndoMatrix& a, std::uint64_t k) {
  EndoMatrix result = EndoMatrix::identity(a.shape());
  EndoMatrix base = a;
  while (k > 0) {
    if (k & 1) result = compose(result, base);
    base = compose(base, base);
    k >>= 1;
  }
  return result;
}

Residue det_mod_p(const EndoMatrix& a) {
  const int n = a.rank();
  const Residue p = a.shape().prime();
  std::vector<Residue> m(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i * n + j] = a.entry(i, j) % p;
  }
  Residue det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (m[r * n + col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return 0;
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(m[pivot * n + j], m[col * n + j]);
      det = reduce(-det, p);
    }
    Residue piv = m[col * n + col];
    det = mul_mod(det, piv, p);
    Residue inv = pow_mod(piv, p - 2, p);
    for (int r = col + 1; r < n; ++r) {
      Residue f = mul_mod(m[r * n + col], inv, p);
      if (f == 0) continue;
      for (int j = col; j < n; ++j) {
        m[r * n + j] = reduce(m[r * n + j] - mul_mod(f, m[col * n + j], p), p);
      }
    }
  }
  return det;
}

bool is_automorphism(const EndoMatrix& a) { return det_mod_p(a) != 0; }

bool is_upper_unipotent_mod_p(const EndoMatrix& a) {
  const Residue p = a.shape().prime();
  for (int i = 0; i < a.rank(); ++i) {
    for (int j = 0; j <= i; ++j) {
      Residue want = i == j ? 1 : 0;
      if (a.entry(i, j) % p != want) return false;
    }
  }
  return true;
}

AutMatrix::AutMatrix(EndoMatrix m) : m_(std::move(m)) {
  if (!is_automorphism(m_)) throw NotAnAutomorphism(m_.to_string() + " is singular mod p");
}

AutMatrix AutMatrix::identity(const GroupShape& shape) {
  return AutMatrix(EndoMatrix::identity(shape), Unchecked{});
}

AutMatrix compose(const AutMatrix& a, const AutMatrix& b) {
  return AutMatrix(compose(a.m_, b.m_), AutMatrix::Unchecked{});
}

AutMatrix power(const AutMatrix& a, std::uint64_t k) {
  return AutMatrix(power(a.m_, k), AutMatrix::Unchecked{});
}

GroupElement apply(const AutMatrix& a, const GroupElement& x) { return apply(a.endo(), x); }

std::uint64_t matrix_order(const AutMatrix& a) {
  const std::uint64_t cap = candidate_count(a.shape());
  AutMatrix cur = a;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    if (cur.is_identity()) return k;
    cur = compose(cur, a);
  }
  throw Error("matrix_order: no finite order found for " + a.to_string());
}

AutMatrix aut_inverse(const AutMatrix& a) { return power(a, matrix_order(a) - 1); }

std::uint64_t enumeration_bound_from_env(std::uint64_t fallback) {
  const char* env = std::getenv("BRACE_CENSUS_BOUND");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) {
    throw ParseError(std::string("BRACE_CENSUS_BOUND is not a positive integer: ") + env);
  }
  return v;
}

void for_each_automorphism(const GroupShape& shape,
                           const std::function<void(const AutMatrix&)>& visit,
                           std::uint64_t bound) {
  const std::uint64_t total = candidate_count(shape);
  if (total > bound) {
    throw EnumerationBoundExceeded(std::to_string(total) + " candidate matrices for " +
                                   shape.to_string() + " exceed bound " + std::to_string(bound));
  }
  for (std::uint64_t key = 0; key < total; ++key) {
    EndoMatrix m = EndoMatrix::from_key(shape, key);
    if (is_automorphism(m)) visit(AutMatrix(std::move(m)));
  }
}

std::vector<AutMatrix> enumerate_automorphisms(const GroupShape& shape, std::uint64_t bound) {
  std::vector<AutMatrix> out;
  for_each_automorphism(shape, [&](const AutMatrix& a) { out.push_back(a); }, bound);
  return out;
}

}  // namespace mmc
