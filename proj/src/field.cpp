#include "prophecke/field.hpp"

#include <stdexcept>

namespace prophecke {

bool prime_power(std::uint32_t n, std::uint32_t& p, std::uint32_t& m) {
  if (n < 2) return false;
  std::uint32_t d = 2;
  while (d * d <= n && n % d != 0) ++d;
  if (n % d != 0) d = n;
  p = d;
  m = 0;
  while (n % d == 0) {
    n /= d;
    ++m;
  }
  return n == 1;
}

std::uint32_t Field::minimal_degree(std::uint32_t p, std::uint32_t d) {
  if (d == 0) throw std::invalid_argument("root-of-unity order must be positive");
  if (p % d == 0 && d != 1) throw std::invalid_argument("order divisible by p");
  if (d == 1) return 1;
  std::uint64_t pw = p % d;
  for (std::uint32_t m = 1; m <= 64; ++m) {
    if (pw % d == 1 % d) return m;
    pw = (pw * p) % d;
  }
  throw std::invalid_argument("no extension degree found");
}

namespace {

// Multiplies the digit vector a by x modulo the monic polynomial f.
std::vector<std::uint32_t> times_x(const std::vector<std::uint32_t>& a,
                                   const std::vector<std::uint32_t>& f, std::uint32_t p) {
  const std::size_t m = a.size();
  std::vector<std::uint32_t> r(m, 0);
  std::uint32_t top = a[m - 1];
  for (std::size_t i = m - 1; i > 0; --i) r[i] = a[i - 1];
  r[0] = 0;
  if (top != 0) {
    for (std::size_t i = 0; i < m; ++i) {
      r[i] = static_cast<std::uint32_t>((r[i] + (p - top) * static_cast<std::uint64_t>(f[i])) % p);
    }
  }
  return r;
}

std::uint32_t encode(const std::vector<std::uint32_t>& a, std::uint32_t p) {
  std::uint32_t v = 0;
  for (std::size_t i = a.size(); i-- > 0;) v = v * p + a[i];
  return v;
}

}  // namespace

Field::Field(std::uint32_t order) {
  if (!prime_power(order, p_, m_)) throw std::invalid_argument("field order is not a prime power");
  if (order > 65536) throw std::invalid_argument("field order above 2^16");
  q_ = order;
  const std::uint32_t n = q_ - 1;
  // Candidate f = x^m + sum c_i x^i enumerated by the integer sum c_i p^i.
  for (std::uint32_t code = 0; code < q_; ++code) {
    std::vector<std::uint32_t> f(m_ + 1, 0);
    std::uint32_t c = code;
    for (std::uint32_t i = 0; i < m_; ++i) {
      f[i] = c % p_;
      c /= p_;
    }
    f[m_] = 1;
    if (f[0] == 0) continue;
    std::vector<std::uint32_t> a(m_, 0);
    a[0] = 1;
    std::vector<Fe> ex(n);
    bool primitive = true;
    for (std::uint32_t i = 0; i < n; ++i) {
      ex[i] = encode(a, p_);
      if (i > 0 && ex[i] == 1) {
        primitive = false;
        break;
      }
      a = times_x(a, f, p_);
    }
    if (!primitive || encode(a, p_) != 1) continue;
    modulus_ = f;
    exp_.resize(2 * static_cast<std::size_t>(n));
    log_.assign(q_, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
      exp_[i] = ex[i];
      exp_[i + n] = ex[i];
      log_[ex[i]] = i;
    }
    return;
  }
  throw std::logic_error("no primitive polynomial found");
}

Fe Field::add(Fe a, Fe b) const {
  if (m_ == 1) return (a + b) % p_;
  if (p_ == 2) return a ^ b;
  Fe r = 0, scale = 1;
  while (a != 0 || b != 0) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

Fe Field::neg(Fe a) const {
  if (m_ == 1) return (p_ - a) % p_;
  if (p_ == 2) return a;
  Fe r = 0, scale = 1;
  while (a != 0) {
    r += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return r;
}

Fe Field::sub(Fe a, Fe b) const { return add(a, neg(b)); }

Fe Field::inv(Fe a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  const std::uint32_t n = q_ - 1;
  return exp_[(n - log_[a]) % n];
}

Fe Field::pow(Fe a, long long e) const {
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) throw std::domain_error("negative power of zero");
    return 0;
  }
  const long long n = q_ - 1;
  long long k = (static_cast<long long>(log_[a]) * (e % n)) % n;
  if (k < 0) k += n;
  return exp_[k];
}

Fe Field::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Fe>(r);
}

Fe Field::root_of_unity(std::uint32_t d) const {
  if (d == 0 || (q_ - 1) % d != 0) throw std::invalid_argument("root of unity order does not divide q-1");
  return exp_[(q_ - 1) / d];
}

std::string Field::to_string(Fe a) const {
  if (m_ == 1) return std::to_string(a);
  // Polynomial form in the generator x, highest degree first.
  std::string out;
  std::vector<std::uint32_t> d(m_);
  for (std::uint32_t i = 0; i < m_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  for (std::uint32_t i = m_; i-- > 0;) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(d[i]);
    } else {
      if (d[i] != 1) out += std::to_string(d[i]);
      out += "x";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace prophecke
