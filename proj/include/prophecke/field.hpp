#ifndef PROPHECKE_FIELD_HPP_
#define PROPHECKE_FIELD_HPP_

// Finite fields F_{p^m} with table arithmetic.
//
// An element is an integer 0 <= a < p^m read as the base-p digit vector of a
// polynomial in the generator x (digit i is the coefficient of x^i).  The
// defining polynomial is the lexicographically smallest monic primitive
// polynomial of degree m, so x generates the multiplicative group and the
// encoding is fixed for a given order.

#include <cstdint>
#include <string>
#include <vector>

namespace prophecke {

using Fe = std::uint32_t;

class Field {
 public:
  // Throws std::invalid_argument unless order is a prime power <= 2^16.
  explicit Field(std::uint32_t order);

  std::uint32_t p() const { return p_; }
  std::uint32_t m() const { return m_; }
  std::uint32_t order() const { return q_; }
  // Coefficients of the defining polynomial, constant term first, monic.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Fe zero() const { return 0; }
  Fe one() const { return 1; }
  // The class of x, a generator of the multiplicative group.
  Fe generator() const { return exp_[1]; }

  Fe add(Fe a, Fe b) const;
  Fe sub(Fe a, Fe b) const;
  Fe neg(Fe a) const;
  Fe mul(Fe a, Fe b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  // Throws std::domain_error on zero.
  Fe inv(Fe a) const;
  Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
  Fe pow(Fe a, long long e) const;
  // Image of an integer under Z -> F_p -> F.
  Fe from_int(long long n) const;
  // Primitive d-th root of unity; requires d | order - 1.
  Fe root_of_unity(std::uint32_t d) const;

  std::string to_string(Fe a) const;

  // Smallest m >= 1 with d | p^m - 1.
  static std::uint32_t minimal_degree(std::uint32_t p, std::uint32_t d);

 private:
  std::uint32_t p_ = 0, m_ = 0, q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<Fe> exp_;            // length 2(q-1), exp_[i] = x^i
  std::vector<std::uint32_t> log_;  // log_[0] unused
};

// Splits n = p^m; returns false if n is not a prime power.
bool prime_power(std::uint32_t n, std::uint32_t& p, std::uint32_t& m);

}  // namespace prophecke

#endif  // PROPHECKE_FIELD_HPP_
