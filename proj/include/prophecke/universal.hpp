#ifndef PROPHECKE_UNIVERSAL_HPP_
#define PROPHECKE_UNIVERSAL_HPP_

// The group algebra C[Lambda(1)] and its omega-components, the universal
// bimodules X_J inside X_emptyset = n_{w_Delta} C[Lambda(1)]_omega (x)_A H, the
// elements tau_alpha and c_w, and the Bruhat filtration of X_Delta.
//
// Elements of C[Lambda(1)] reuse AElement (Lambda(1) -> F).  Lambda(1) is
// commutative in the split model.  An XElement stores the coefficients f_w of
// sum_w f_w (x) T_{n_w}; the right A-action on n_{w_Delta} C[Lambda(1)] is
// E(lambda) -> right multiplication by tau_{n^{-1} lambda n}, n = n_{w_Delta},
// for anti-dominant lambda and 0 otherwise.
//
// Everything infinite is handled per character psi in omega: e_psi C[Lambda(1)]
// is identified with the Laurent ring F[X_*] by tau_{(mu, t)} -> psi(t) x^mu.
// Linear systems run over a nu-height window of exponents; a failed solve is
// reported as inconclusive, never as false.  False needs a certificate: an
// evaluation x -> a in (F^x)^n under which the target leaves the span.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "prophecke/hecke.hpp"
#include "prophecke/linalg.hpp"
#include "prophecke/localization.hpp"
#include "prophecke/module.hpp"

namespace prophecke {

using GroupElt = AElement;
// Laurent polynomial in x^mu, mu in X_*(S).
using LPoly = std::map<Vec, Fe>;

enum class Verdict { kPass, kFail, kInconclusive };
const char* verdict_name(Verdict v);

// E(lambda) -> tau_lambda for lambda in Lambda^+(1), 0 otherwise.
GroupElt chi_tilde(const HeckeAlgebra& H, const AElement& x);

// C[Lambda(1)]_omega for the Lambda(1)-orbit omega of one character.
class OmegaAlgebra {
 public:
  OmegaAlgebra(std::shared_ptr<const ProPWeyl> W, std::shared_ptr<const Field> F, int psi);

  const ProPWeyl& W() const { return *W_; }
  const Field& F() const { return *F_; }
  const std::vector<int>& orbit() const { return orbit_; }

  GroupElt tau(const W1& lam) const { return GroupElt::basis(lam); }
  GroupElt mul(const GroupElt& a, const GroupElt& b) const;
  GroupElt add(const GroupElt& a, const GroupElt& b) const;
  GroupElt sub(const GroupElt& a, const GroupElt& b) const;
  GroupElt scale(Fe c, const GroupElt& a) const;
  // #Z_kappa^{-1} sum_t psi(t)^{-1} tau_t.
  GroupElt idempotent(int psi) const;
  // e_omega, the unit of C[Lambda(1)]_omega.
  const GroupElt& one() const { return e_omega_; }
  GroupElt project(const GroupElt& f) const { return mul(e_omega_, f); }
  // tau_t f = psi(t) f componentwise (left) versus f tau_t = psi(t) f (right).
  bool in_omega_left(const GroupElt& f) const;
  bool in_omega_right(const GroupElt& f) const;

  LPoly specialize(int psi, const GroupElt& f) const;
  // e_psi sum_mu c_mu tau_mu.
  GroupElt lift(int psi, const LPoly& p) const;
  // Value of the character of Lambda(1) extending psi with x_i -> a[i].
  Fe evaluate(int psi, const GroupElt& f, const std::vector<Fe>& a) const;

 private:
  std::shared_ptr<const ProPWeyl> W_;
  std::shared_ptr<const Field> F_;
  std::vector<int> orbit_;
  GroupElt e_omega_;
};

LPoly lpoly_mul(const Field& F, const LPoly& a, const LPoly& b);
LPoly lpoly_sub(const Field& F, const LPoly& a, const LPoly& b);
// Exact quotient a / b in the Laurent ring, or nothing.
std::optional<LPoly> lpoly_divide(const Field& F, const LPoly& a, const LPoly& b);

struct XElement {
  std::vector<GroupElt> comps;  // coefficient of T_{n_w}, indexed by w in W_0
  bool operator==(const XElement&) const = default;
  bool is_zero() const;
};

struct Membership {
  Verdict verdict = Verdict::kInconclusive;  // kPass = member, kFail = certified non-member
  std::vector<GroupElt> coords;              // x = sum_u coords[u] g_u on kPass
  std::string witness;
};

struct QuotientCheck {
  Verdict verdict = Verdict::kInconclusive;
  int w = 0;                  // minimal element of A; the quotient factor is c_{w w_Delta}
  int truncated_elements = 0;  // dimension of the truncated X_{Delta,A}
  XElement section;            // element of X_{Delta,A} with quotient image c_w
  std::string witness;
};

class UniversalModule {
 public:
  UniversalModule(std::shared_ptr<const HeckeAlgebra> H, int psi);

  const HeckeAlgebra& H() const { return *H_; }
  std::shared_ptr<const HeckeAlgebra> H_ptr() const { return H_; }
  const OmegaAlgebra& omega() const { return C_; }
  int order() const { return H_->rs().order(); }

  XElement zero() const;
  // f (x) T_{n_w}, f projected to the omega-component.
  XElement basis(int w, const GroupElt& f) const;
  // f (x) T*_{n_w}.
  XElement star_basis(int w, const GroupElt& f) const;
  XElement add(const XElement& a, const XElement& b) const;
  XElement left(const GroupElt& f, const XElement& x) const;
  XElement act(const XElement& x, const HeckeElement& h) const;
  // Coefficients in the decomposition X_emptyset = (+)_w Y_w, Y_w = C (x) T*_{n_w}.
  std::vector<GroupElt> y_components(const XElement& x) const;

  // 1 (x) T*_{n_{w_Delta w_J w_Delta}}.
  XElement generator(const std::vector<int>& J) const;
  // C[Lambda(1)]_omega-basis g_u = generator(J) b_u of X_J, b_u the left
  // localization basis at the chamber w_Delta w_J.
  const std::vector<XElement>& free_generators(const std::vector<int>& J) const;

  Membership member(const XElement& x, const std::vector<int>& J, int nu_height) const;

  // Coefficient indices spanning X_{emptyset,A}: {w_Delta v : v in A}, sorted.
  std::vector<int> filtration_indices(const std::vector<int>& A) const;
  QuotientCheck quotient_identity_check(const std::vector<int>& A, int nu_height) const;

  // tau_alpha for the simple root alpha_i, using the lift a_alpha s.
  GroupElt tau_alpha(int i, int lift_index = 0) const;
  // Number of lifts a_alpha s, s in Z_kappa n Lambda'_alpha(1).
  int num_lifts(int i) const;
  // First simple index whose hypothesis fails, or nothing.
  std::optional<int> hypothesis_violation() const;
  // prod over i with w^{-1}(alpha_i) > 0 of (1 - tau_{alpha_i}), index order.
  GroupElt c_w(int w) const;
  // (1 - tau_a)(1 - tau_b) = (1 - tau_b)(1 - tau_a) for all simple a, b.
  bool c_factors_commute() const;

 private:
  std::vector<LPoly> specialize(int psi, const XElement& x) const;
  // Right multiplication on n_{w_Delta} C[Lambda(1)] by a localized coordinate.
  GroupElt twisted(const AElement& a) const;

  std::shared_ptr<const HeckeAlgebra> H_;
  OmegaAlgebra C_;
  ChamberLocalization loc_;
  W1 n_long_inv_;
  std::vector<std::vector<GroupElt>> star_matrix_;  // [w][u]: T*_{n_w} in the T_{n_u}
  mutable std::mutex mu_;
  mutable std::map<std::vector<int>, std::vector<XElement>> gens_cache_;
};

// Bruhat-upward-closed subsets of W_0: throws std::invalid_argument otherwise.
void check_upward_closed(const RootSystem& R, const std::vector<int>& A);
// A maximal chain W_0 = A_0 > A_1 > ... > {w_Delta}, removing a minimal element
// (smallest index) each step.
std::vector<std::vector<int>> filtration_chain(const RootSystem& R);
// Minimal element of A used for the step A -> A minus {w}.
int filtration_minimal(const RootSystem& R, const std::vector<int>& A);

struct RegularCheck {
  bool nonzero = false;
  int psi = -1;          // component carrying the leading term
  Vec leading{};         // leading exponent of c_w f in that component
  bool leading_matches = false;  // equals the product of the factors' leading terms
};
// Requires f != 0 in C[Lambda(1)]_omega (std::invalid_argument otherwise).
RegularCheck c_w_regular_check(const UniversalModule& U, int w, const GroupElt& f);

struct TensorWithModule {
  FinHModule module;
  Mat unit;
  IsoResult iso;           // against tensor_h(m, e)
  bool filtration_checked = false;    // every chain step certified within the window
  bool filtration_injective = false;  // sections of the quotients stay independent after M (x) -
  std::string diagnostic;
};
// M (x)_{C[Lambda(1)]_omega} X_Delta for M with support Lambda^+(1) and M = M_omega.
// Throws std::invalid_argument when a certificate fails.
TensorWithModule tensor_with_module(const FinAModule& m, const UniversalModule& U, int nu_height);

}  // namespace prophecke

#endif  // PROPHECKE_UNIVERSAL_HPP_
