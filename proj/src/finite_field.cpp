#include "cacforge/finite_field.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

namespace cacforge {

namespace {

// Remainder of f modulo the monic polynomial m, over F_p.
Polynomial poly_rem(Polynomial f, const Polynomial& m, uint32_t p) {
  const size_t dm = m.size() - 1;
  while (f.size() > dm) {
    const uint64_t lead = f.back();
    if (lead != 0) {
      const size_t shift = f.size() - 1 - dm;
      for (size_t i = 0; i <= dm; ++i) {
        f[shift + i] = static_cast<uint32_t>((f[shift + i] + (p - lead) * m[i]) % p);
      }
    }
    f.pop_back();
  }
  return f;
}

Polynomial poly_mulmod(const Polynomial& a, const Polynomial& b, const Polynomial& m, uint32_t p) {
  Polynomial prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = static_cast<uint32_t>((prod[i + j] + static_cast<uint64_t>(a[i]) * b[j]) % p);
    }
  }
  return poly_rem(std::move(prod), m, p);
}

Polynomial decode(uint32_t code, uint32_t p, unsigned k) {
  Polynomial c(k, 0);
  for (unsigned i = 0; i < k; ++i) {
    c[i] = code % p;
    code /= p;
  }
  return c;
}

uint32_t encode(const Polynomial& c, uint32_t p) {
  uint32_t code = 0;
  for (size_t i = c.size(); i-- > 0;) code = code * p + c[i];
  return code;
}

Polynomial poly_powmod(Polynomial base, uint64_t e, const Polynomial& m, uint32_t p) {
  Polynomial result{1};
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  result.resize(m.size() - 1, 0);
  return result;
}

bool is_monic(const Polynomial& f) { return f.size() >= 2 && f.back() == 1; }

}  // namespace

std::optional<Polynomial> find_factor(uint32_t p, const Polynomial& f) {
  const unsigned deg = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= deg / 2; ++d) {
    uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (uint64_t c = 0; c < count; ++c) {
      Polynomial cand = decode(static_cast<uint32_t>(c), p, d);
      cand.push_back(1);
      const Polynomial r = poly_rem(f, cand, p);
      if (std::all_of(r.begin(), r.end(), [](uint32_t v) { return v == 0; })) return cand;
    }
  }
  return std::nullopt;
}

bool is_irreducible(uint32_t p, const Polynomial& f) { return is_monic(f) && !find_factor(p, f); }

std::string format_polynomial(const Polynomial& f) {
  std::string out;
  for (size_t i = f.size(); i-- > 0;) {
    if (f[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (i == 0 || f[i] != 1) out += std::to_string(f[i]);
    if (i >= 1) out += (f[i] != 1 ? "*x" : "x");
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

Polynomial parse_polynomial(std::string_view text) {
  Polynomial out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t next = text.find(',', pos);
    if (next == std::string_view::npos) next = text.size();
    std::string_view tok = text.substr(pos, next - pos);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
    uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw DomainError("bad polynomial coefficient list: '" + std::string(text) + "'");
    }
    out.push_back(v);
    pos = next + 1;
  }
  return out;
}

Polynomial default_modulus(uint32_t p, unsigned k) {
  if (k <= 1) return {0, 1};
  if (p == 2 && k == 4) return {1, 1, 0, 0, 1};
  if (k == 2 && (p == 3 || p == 7)) return {1, 0, 1};
  if (k == 2 && (p == 5 || p == 11 || p == 13)) return {p - 2, 0, 1};
  // Enumerate (c_{k-1}, ..., c_0) lexicographically; the code of the lower
  // coefficients read with c_{k-1} most significant is exactly that order.
  uint64_t count = 1;
  for (unsigned i = 0; i < k; ++i) count *= p;
  for (uint64_t c = 0; c < count; ++c) {
    Polynomial f = decode(static_cast<uint32_t>(c), p, k);
    f.push_back(1);
    if (f[0] != 0 && !find_factor(p, f)) return f;
  }
  throw DomainError("no irreducible polynomial found");
}

FieldElem FieldCtx::from_coeffs(std::span<const uint32_t> coeffs) const {
  if (coeffs.size() > k_) throw DomainError("too many coefficients for field element");
  Polynomial c(coeffs.begin(), coeffs.end());
  for (auto& v : c) v %= p_;
  return FieldElem{encode(c, p_)};
}

std::vector<uint32_t> FieldCtx::coeffs(FieldElem a) const { return decode(a.code, p_, k_); }

FieldElem FieldCtx::add(FieldElem a, FieldElem b) const {
  if (k_ == 1) return FieldElem{(a.code + b.code) % p_};
  uint32_t out = 0;
  for (unsigned i = k_; i-- > 0;) {
    const uint32_t da = a.code / pow_p_[i] % p_;
    const uint32_t db = b.code / pow_p_[i] % p_;
    out = out * p_ + (da + db) % p_;
  }
  return FieldElem{out};
}

FieldElem FieldCtx::neg(FieldElem a) const {
  if (k_ == 1) return FieldElem{a.code == 0 ? 0 : p_ - a.code};
  uint32_t out = 0;
  for (unsigned i = k_; i-- > 0;) {
    const uint32_t da = a.code / pow_p_[i] % p_;
    out = out * p_ + (da == 0 ? 0 : p_ - da);
  }
  return FieldElem{out};
}

FieldElem FieldCtx::sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

FieldElem FieldCtx::mul(FieldElem a, FieldElem b) const {
  if (a.is_zero() || b.is_zero()) return zero();
  const uint64_t e = static_cast<uint64_t>(log_[a.code]) + log_[b.code];
  return FieldElem{exp_[e % (q_ - 1)]};
}

FieldElem FieldCtx::inv(FieldElem a) const {
  if (a.is_zero()) throw DomainError("inverse of zero");
  const uint32_t e = log_[a.code];
  return FieldElem{exp_[e == 0 ? 0 : q_ - 1 - e]};
}

FieldElem FieldCtx::pow(FieldElem a, int64_t e) const {
  if (a.is_zero()) {
    if (e < 0) throw DomainError("negative power of zero");
    return e == 0 ? one() : zero();
  }
  const int64_t prod = static_cast<int64_t>(reduce_mod(e, q_ - 1)) * log_[a.code];
  return exp(prod);
}

FieldElem FieldCtx::exp(int64_t e) const { return FieldElem{exp_[reduce_mod(e, q_ - 1)]}; }

uint32_t FieldCtx::dlog(FieldElem a) const {
  if (a.is_zero() || a.code >= q_) throw DomainError("discrete log of zero or out-of-field element");
  return log_[a.code];
}

uint64_t FieldCtx::element_order(FieldElem a) const {
  const uint64_t n = q_ - 1;
  return n / std::gcd<uint64_t>(n, dlog(a));
}

bool FieldCtx::is_generator(FieldElem a) const {
  return contains(a) && !a.is_zero() && element_order(a) == q_ - 1;
}

std::string FieldCtx::format(FieldElem a) const {
  if (k_ == 1) return std::to_string(a.code);
  const auto c = coeffs(a);
  std::string out;
  for (unsigned i = 0; i < k_; ++i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    out += std::to_string(c[i]);
    if (i == 1) out += "*a";
    if (i >= 2) out += "*a^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

FieldElem FieldCtx::parse(std::string_view text) const {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  auto fail = [&]() -> DomainError { return DomainError("cannot parse field element '" + std::string(text) + "'"); };
  if (s.empty()) throw fail();
  std::vector<uint64_t> acc(k_, 0);
  size_t pos = 0;
  auto read_uint = [&](uint64_t& out) {
    const char* begin = s.data() + pos;
    auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), out);
    if (ec != std::errc() || ptr == begin) return false;
    pos = static_cast<size_t>(ptr - s.data());
    return true;
  };
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    } else if (pos != 0) {
      throw fail();
    }
    uint64_t coef = 1;
    bool have_coef = read_uint(coef);
    unsigned degree = 0;
    if (pos < s.size() && (s[pos] == '*' || s[pos] == 'a')) {
      if (s[pos] == '*') {
        if (!have_coef) throw fail();
        ++pos;
      }
      if (pos >= s.size() || s[pos] != 'a') throw fail();
      ++pos;
      degree = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        uint64_t d = 0;
        if (!read_uint(d)) throw fail();
        degree = static_cast<unsigned>(d);
      }
    } else if (!have_coef) {
      throw fail();
    }
    if (degree >= k_) throw DomainError("field element '" + std::string(text) + "' has degree >= extension degree");
    coef %= p_;
    acc[degree] = (acc[degree] + (negative ? (p_ - coef) % p_ : coef)) % p_;
  }
  Polynomial c(acc.begin(), acc.end());
  return FieldElem{encode(c, p_)};
}

std::shared_ptr<const FieldCtx> build_field(uint32_t p, Polynomial modulus) {
  auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
  const unsigned k = static_cast<unsigned>(modulus.size() - 1);
  uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) throw DomainError("field order exceeds table limit " + std::to_string(kMaxFieldOrder));
  }
  ctx->p_ = p;
  ctx->k_ = k;
  ctx->q_ = static_cast<uint32_t>(q);
  ctx->modulus_ = std::move(modulus);
  ctx->group_order_ = factorize(q - 1);
  ctx->pow_p_.resize(k);
  for (unsigned i = 0; i < k; ++i) ctx->pow_p_[i] = i == 0 ? 1 : ctx->pow_p_[i - 1] * p;

  const uint32_t n = ctx->q_ - 1;
  uint32_t g0 = 1;
  if (k == 1) {
    g0 = static_cast<uint32_t>(smallest_primitive_root(p, ctx->group_order_));
  } else {
    for (g0 = 2; g0 < q; ++g0) {
      const Polynomial g = decode(g0, p, k);
      bool primitive = true;
      for (uint64_t r : ctx->group_order_.primes()) {
        if (encode(poly_powmod(g, n / r, ctx->modulus_, p), p) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) break;
    }
  }

  ctx->exp_.assign(n, 0);
  ctx->log_.assign(q, 0);
  if (k == 1) {
    uint64_t cur = 1;
    for (uint32_t e = 0; e < n; ++e) {
      ctx->exp_[e] = static_cast<uint32_t>(cur);
      ctx->log_[cur] = e;
      cur = cur * g0 % p;
    }
  } else {
    const Polynomial g = decode(g0, p, k);
    Polynomial cur{1};
    for (uint32_t e = 0; e < n; ++e) {
      cur.resize(k, 0);
      const uint32_t code = encode(cur, p);
      ctx->exp_[e] = code;
      ctx->log_[code] = e;
      cur = poly_mulmod(cur, g, ctx->modulus_, p);
    }
  }
  return ctx;
}

FieldPtr make_prime_field(uint64_t p) {
  if (!is_prime(p)) throw DomainError("make_prime_field: " + std::to_string(p) + " is not prime");
  if (p > kMaxFieldOrder) throw DomainError("make_prime_field: p exceeds table limit");
  return build_field(static_cast<uint32_t>(p), {0, 1});
}

FieldPtr make_extension_field(uint64_t p, Polynomial modulus) {
  if (!is_prime(p)) throw DomainError("make_extension_field: " + std::to_string(p) + " is not prime");
  if (p > kMaxFieldOrder) throw DomainError("make_extension_field: p exceeds table limit");
  for (auto c : modulus) {
    if (c >= p) throw DomainError("make_extension_field: coefficient out of range [0, p)");
  }
  if (!is_monic(modulus)) throw DomainError("make_extension_field: modulus must be monic of degree >= 1");
  if (modulus.size() == 2) {
    if (modulus[0] != 0) throw DomainError("make_extension_field: degree-1 modulus must be x");
    return make_prime_field(p);
  }
  if (auto factor = find_factor(static_cast<uint32_t>(p), modulus)) {
    throw ReducibleModulusError("make_extension_field: " + format_polynomial(modulus) + " is reducible over F_" +
                                    std::to_string(p) + ", divisible by " + format_polynomial(*factor),
                                *factor);
  }
  return build_field(static_cast<uint32_t>(p), std::move(modulus));
}

FieldPtr make_field(uint64_t q) {
  const auto pk = prime_power(q);
  if (!pk) throw DomainError("make_field: " + std::to_string(q) + " is not a prime power");
  if (q > kMaxFieldOrder) throw DomainError("make_field: q exceeds table limit");
  const auto [p, k] = *pk;
  if (k == 1) return make_prime_field(p);
  return make_extension_field(p, default_modulus(static_cast<uint32_t>(p), k));
}

std::vector<uint64_t> generator_exponents(const FieldCtx& field) {
  const uint64_t n = field.q() - 1;
  std::vector<uint64_t> out;
  for (uint64_t t = 1; t <= n; ++t) {
    if (std::gcd(t, n) == 1) out.push_back(t);
  }
  return out;
}

std::vector<FieldElem> generators(const FieldCtx& field) {
  std::vector<FieldElem> out;
  for (uint64_t t : generator_exponents(field)) out.push_back(field.exp(static_cast<int64_t>(t)));
  return out;
}

uint64_t SubgroupCtx::coset_of(FieldElem a) const { return field_->dlog(a) % index_; }

uint64_t SubgroupCtx::coset_relative_to(FieldElem a, FieldElem g) const {
  if (index_ == 1) return 0;
  const uint64_t t = field_->dlog(g) % index_;
  return mul_mod(coset_of(a), inv_mod(t, index_), index_);
}

std::vector<FieldElem> SubgroupCtx::elements() const {
  std::vector<FieldElem> out;
  out.reserve(order_);
  for (uint64_t i = 0; i < order_; ++i) out.push_back(field_->exp(static_cast<int64_t>(i * index_)));
  std::sort(out.begin(), out.end());
  return out;
}

SubgroupCtx make_subgroup_ell(FieldPtr field, uint64_t ell) {
  const uint64_t n = field->q() - 1;
  if (ell == 0 || n % ell != 0) {
    throw DomainError("make_subgroup_ell: " + std::to_string(ell) + " does not divide q-1 = " + std::to_string(n));
  }
  SubgroupCtx s;
  s.field_ = std::move(field);
  s.kind_ = SubgroupKind::ell_powers;
  s.index_ = ell;
  s.order_ = n / ell;
  return s;
}

HIndex h_index(uint64_t p, const Factorization& p_minus_1) {
  if (p < 3 || p % 2 == 0) throw DomainError("h_index: p must be an odd prime");
  const uint64_t o = multiplicative_order(2 % p, p, p_minus_1);
  // -1 is in <2> exactly when o_p(2) is even
  const uint64_t h = o % 2 == 0 ? o : 2 * o;
  return {o, h, (p - 1) / h};
}

HIndex h_index(uint64_t p) {
  if (p < 3 || !is_prime(p)) throw DomainError("h_index: " + std::to_string(p) + " is not an odd prime");
  return h_index(p, factorize(p - 1));
}

SubgroupCtx make_subgroup_H(FieldPtr field) {
  if (field->k() != 1 || field->p() == 2) throw DomainError("make_subgroup_H: requires a prime field of odd order");
  const HIndex hi = h_index(field->p(), field->group_order());
  SubgroupCtx s;
  s.field_ = std::move(field);
  s.kind_ = SubgroupKind::minus_one_and_two;
  s.order_ = hi.h_order;
  s.index_ = hi.ell0;
  return s;
}

SubgroupCtx make_subgroup_H(uint64_t p) {
  if (p == 2) throw DomainError("make_subgroup_H: p must be odd");
  return make_subgroup_H(make_prime_field(p));
}

}  // namespace cacforge
