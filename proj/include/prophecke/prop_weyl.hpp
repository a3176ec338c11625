#ifndef PROPHECKE_PROP_WEYL_HPP_
#define PROPHECKE_PROP_WEYL_HPP_

// The finite group Z_kappa, the extension W(1) of W = W_0 x| X_*(S) by it,
// lengths, simple affine reflections, Omega and the Bruhat order.
//
// Split model: Lambda(1) = X_*(S) x Z_kappa.  An element of W(1) is stored
// as (mu, t, w) meaning lambda * n_w with nu(lambda) = mu.  The lifts n_w are
// products of the simple lifts n_s along the stored reduced word, and
// n_u n_v = kappa(u, v) n_{uv}.

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "prophecke/field.hpp"
#include "prophecke/root_system.hpp"

namespace prophecke {

// Overrides for Z_kappa: cyclic factor orders, the action of each simple
// reflection as an integer matrix on the factor coordinates, and the image
// of a fixed generator of k^x under each simple coroot.
struct ZKappaSpec {
  std::vector<int> orders;
  std::vector<IntMatrix> reflections;
  std::vector<std::vector<long long>> coroot_images;
  bool operator==(const ZKappaSpec&) const = default;
};

class ZKappa {
 public:
  // Default: (Z/(q-1))^{lattice_rank} with the W_0 action on X_*(S).
  ZKappa(const RootSystem& rs, int q, const std::optional<ZKappaSpec>& spec = std::nullopt);

  int size() const { return size_; }
  const std::vector<int>& orders() const { return orders_; }
  int add(int a, int b) const { return add_[static_cast<std::size_t>(a) * size_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int mul_int(long long k, int a) const;
  int act(int w, int t) const { return act_[static_cast<std::size_t>(w) * size_ + t]; }
  std::vector<int> coords(int t) const;
  int from_coords(const std::vector<long long>& c) const;
  // Image of beta_k^vee(g^c) for root index k and a fixed generator g of k^x.
  int coroot_image(int k, long long c) const;
  // The subgroup beta_k^vee(k^x), listed with multiplicity over c = 0..q-2.
  std::vector<int> coroot_values(int k) const;
  // alpha_k^vee(-1).
  int coroot_minus_one(int k) const;
  // Unit vectors of the cyclic factors.
  std::vector<int> generators() const;

  // Characters are indexed like elements: psi_k(t) = prod_i zeta_{d_i}^{k_i t_i}.
  Fe character(const Field& F, int psi, int t) const;
  // (w psi)(t) = psi(w^{-1} t).
  int act_character(int w, int psi) const;

 private:
  int q_ = 0, size_ = 1;
  std::vector<int> orders_;
  std::vector<int> add_, neg_, act_;
  std::vector<int> coroot_gen_;  // per root index, image of beta^vee(g)
  std::vector<int> char_act_;
};

struct W1 {
  Vec mu{};
  int t = 0;
  int w = 0;
  bool operator==(const W1&) const = default;
  auto operator<=>(const W1&) const = default;
};

struct W1Hash {
  std::size_t operator()(const W1& x) const noexcept {
    std::size_t h = VecHash{}(x.mu);
    h ^= (static_cast<std::size_t>(x.t) * 0x9e3779b97f4a7c15ULL) + (static_cast<std::size_t>(x.w) << 20);
    return h * 0x100000001b3ULL;
  }
};

// Subgroup data for Lambda'_alpha(1) in the split model.
struct LambdaPrimeAlpha {
  W1 translation;          // a_alpha, nu = alpha^vee
  std::vector<int> finite;  // Z_kappa n Lambda'_alpha(1), sorted
};

class ProPWeyl {
 public:
  // alcove_sign = +1 puts the base alcove in the dominant chamber, -1 in the
  // anti-dominant one.  ns_squares[i] overrides n_{s_i}^2 for simple i.
  ProPWeyl(std::shared_ptr<const RootSystem> rs, int q, std::optional<ZKappaSpec> zk = std::nullopt,
           std::vector<std::optional<int>> ns_squares = {}, int alcove_sign = 1);

  const RootSystem& rs() const { return *rs_; }
  std::shared_ptr<const RootSystem> rs_ptr() const { return rs_; }
  const ZKappa& zk() const { return zk_; }
  int q() const { return q_; }
  int alcove_sign() const { return alcove_sign_; }
  int n() const { return rs_->lattice_rank(); }

  W1 identity() const { return W1{}; }
  W1 lambda(const Vec& mu, int t = 0) const { return W1{mu, t, 0}; }
  W1 from_t(int t) const { return W1{Vec{}, t, 0}; }
  // n_w, the product of simple lifts along the stored reduced word.
  W1 canonical_lift(int w) const { return W1{Vec{}, 0, w}; }
  // Element with nu = xi and trivial Z_kappa part.
  W1 lambda_s_member(const Vec& xi) const { return lambda(xi); }
  bool is_lambda(const W1& x) const { return x.w == 0; }

  int kappa(int u, int v) const { return kappa_[static_cast<std::size_t>(u) * rs_->order() + v]; }
  int ns_square(int i) const { return ns_sq_[i]; }
  W1 mul(const W1& a, const W1& b) const;
  W1 inv(const W1& a) const;
  W1 pow(const W1& a, long long e) const;
  // g lam g^{-1} for lam in Lambda(1).
  W1 conjugate(const W1& g, const W1& lam) const;

  int length(const W1& a) const;
  // Length of the image in W only depends on (mu, w).
  int length(const Vec& mu, int w) const;

  // Simple affine reflections: indices [0, r) are the finite s_i; index
  // r + c is s_0 of Dynkin component c.
  int num_affine_simple() const { return static_cast<int>(aff_.size()); }
  const W1& affine_lift(int s) const { return aff_[s].lift; }
  const W1& affine_lift_inv(int s) const { return aff_[s].lift_inv; }
  // Root index of the gradient of the wall (alpha_i or the highest root).
  int affine_root(int s) const { return aff_[s].root; }
  bool affine_is_finite(int s) const { return s < rs_->rank_ss(); }
  std::string affine_name(int s) const;
  // Multiset of Z_kappa elements whose T-sum is c_s.
  const std::vector<int>& c_s_terms(int s) const { return aff_[s].c_terms; }

  // Some simple affine s with l(n_s^{-1} a) < l(a), smallest index; -1 if none.
  int left_descent(const W1& a) const;
  struct Peeled {
    std::vector<int> word;  // a = n~_{s_1} ... n~_{s_k} u
    W1 u;                    // length zero
  };
  Peeled peel(const W1& a) const;
  // Omega component of the image in W (length-zero element), t forgotten.
  W1 omega_part(const W1& a) const;

  // Bruhat order on images in W: equal Omega parts and Coxeter order.
  bool bruhat_leq(const W1& a, const W1& b) const;
  bool bruhat_lt(const W1& a, const W1& b) const;

  // W(1)-conjugacy orbit of lam in Lambda(1), sorted.
  std::vector<W1> orbit(const W1& lam) const;
  LambdaPrimeAlpha lambda_prime_alpha(int i) const;

  // Omega(1) = length zero elements: generators of Omega = X_*/Q^vee (one
  // length-zero lift each, with the order of its class, 0 if infinite) and the
  // decomposition u = prod g_j^{c_j} * t of a length-zero element.
  struct OmegaGen {
    W1 lift;
    long long order;
  };
  const std::vector<OmegaGen>& omega_generators() const { return omega_gens_; }
  struct OmegaWord {
    std::vector<long long> exps;
    int t;
  };
  OmegaWord omega_decompose(const W1& u) const;

  // All elements of W(1) of length <= L whose Omega class has generator
  // exponents in [-omega_radius, omega_radius] (torsion classes in full).
  std::vector<W1> elements_up_to_length(int L, int omega_radius = 1, bool with_zk = true) const;

  // Lambda(1) elements with nu_height(mu) <= h, all Z_kappa parts if with_zk.
  std::vector<W1> lambdas_up_to_height(long long h, bool with_zk) const;

  std::string to_string(const W1& a) const;

 private:
  struct Affine {
    W1 lift, lift_inv;
    int root = 0;
    std::vector<int> c_terms;
  };
  std::shared_ptr<const RootSystem> rs_;
  ZKappa zk_;
  int q_;
  int alcove_sign_;
  std::vector<int> ns_sq_;
  std::vector<int> kappa_;
  std::vector<std::vector<char>> neg_under_inv_;  // [w][k] = (w^{-1} beta_k < 0), positive k
  std::vector<Affine> aff_;
  std::vector<OmegaGen> omega_gens_;
  IntMatrix omega_U_;                // class coordinates = U mu
  std::vector<long long> omega_d_;   // per coordinate: modulus (0 = free, 1 = trivial)
};

}  // namespace prophecke

#endif  // PROPHECKE_PROP_WEYL_HPP_
