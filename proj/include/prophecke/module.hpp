#ifndef PROPHECKE_MODULE_HPP_
#define PROPHECKE_MODULE_HPP_

// Finite-dimensional right modules over A and H.  Vectors are rows and an
// element X acts by v -> v A_X, so A_{XY} = A_X A_Y.

#include <functional>
#include <map>
#include <mutex>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "prophecke/hecke.hpp"
#include "prophecke/linalg.hpp"
#include "prophecke/localization.hpp"

namespace prophecke {

// Representation of the abelian group Lambda(1) = X_*(S) x Z_kappa: commuting
// invertible matrices for the lattice basis e_i and the Z_kappa generators.
struct LatticeRep {
  int dim = 0;
  std::vector<Mat> lattice;
  std::vector<Mat> zk;
};

// Right A-module given by the action of each E(lambda), lambda in Lambda(1).
// Actions are computed on demand and cached.
class FinAModule {
 public:
  using Action = std::function<Mat(const W1&)>;

  FinAModule(std::shared_ptr<const ProPWeyl> W, std::shared_ptr<const Field> F, int dim, Action act);

  int dim() const { return impl_->dim; }
  const ProPWeyl& W() const { return *impl_->W; }
  std::shared_ptr<const ProPWeyl> W_ptr() const { return impl_->W; }
  const Field& F() const { return *impl_->F; }
  std::shared_ptr<const Field> F_ptr() const { return impl_->F; }

  const Mat& action(const W1& lam) const;
  // tau_nu = E(lambda_0)^{-k} E(lambda_0^k nu) for the regular lambda_0 of the
  // support chamber v; requires E(lambda_0) invertible.
  Mat tau(const W1& nu, int chamber) const;
  Mat tau(const AElement& a, int chamber) const;

  // Finite family the structural checks run on: nu-height <= 2 and the W_0-orbit of
  // the regular dominant element, every Z_kappa part.
  std::vector<W1> seeds() const;
  // Product rule on seed pairs and E(1) = 1; returns a diagnostic on failure.
  std::optional<std::string> validate() const;

 private:
  struct Impl {
    std::shared_ptr<const ProPWeyl> W;
    std::shared_ptr<const Field> F;
    int dim;
    Action act;
    mutable std::mutex mu;
    mutable std::unordered_map<W1, Mat, W1Hash> cache;
  };
  std::shared_ptr<Impl> impl_;
};

// E(lambda) acts by the representation on the closed chamber v(Lambda^+(1)) and by 0 elsewhere.
FinAModule module_from_lattice_rep(std::shared_ptr<const ProPWeyl> W, std::shared_ptr<const Field> F, int chamber,
                                   const LatticeRep& rep);
Mat lattice_rep_action(const ProPWeyl& W, const Field& F, const LatticeRep& rep, const W1& lam);
// E(lambda) on n_w M is E(n_w^{-1} lambda n_w) on M.
FinAModule twist(const FinAModule& m, int w);
FinAModule direct_sum(const FinAModule& a, const FinAModule& b);
// Restriction to the A-stable row space with basis B.
FinAModule submodule(const FinAModule& m, const Mat& B);
// (M^*)^f: E(lambda) acts by the transpose of (-1)^{l(lambda)} E(lambda^{-1}).
FinAModule dual(const FinAModule& m);

// W_0 element w with supp M = w(Lambda^+(1)), checked on the seeds.
std::optional<int> support_of(const FinAModule& m);

// Right H-module given by the matrices of the algebra generators.
class FinHModule {
 public:
  // Generators: T_{n~_s} for each simple affine s, then T_g, T_{g^{-1}} for
  // each Omega generator g, then T_t for each Z_kappa generator t.
  static std::vector<HeckeElement> generators(const HeckeAlgebra& H);

  FinHModule(std::shared_ptr<const HeckeAlgebra> H, int dim, std::vector<Mat> gens);
  // Builds the generator matrices from an action defined on all of H.
  static FinHModule from_action(std::shared_ptr<const HeckeAlgebra> H, int dim,
                                const std::function<Mat(const HeckeElement&)>& act);

  int dim() const { return impl_->dim; }
  const HeckeAlgebra& H() const { return *impl_->H; }
  std::shared_ptr<const HeckeAlgebra> H_ptr() const { return impl_->H; }
  const Field& F() const { return impl_->H->F(); }
  const std::vector<Mat>& generator_matrices() const { return impl_->gens; }

  const Mat& act_basis(const W1& w) const;
  Mat act(const HeckeElement& x) const;

  // A_{g} A_{y} = A_{T_g T_y} for every generator g and l(y) <= max_length.
  std::optional<std::string> validate(int max_length = -1) const;

 private:
  struct Impl {
    std::shared_ptr<const HeckeAlgebra> H;
    int dim;
    std::vector<Mat> gens;
    mutable std::mutex mu;
    mutable std::unordered_map<W1, Mat, W1Hash> cache;
  };
  std::shared_ptr<Impl> impl_;
};

FinAModule restrict_to_a(const FinHModule& m);
FinHModule direct_sum(const FinHModule& a, const FinHModule& b);
FinHModule submodule(const FinHModule& m, const Mat& B);
// (M^*)^f with f = iota o zeta.
FinHModule dual(const FinHModule& m);

// z_{lambda_0} invertible for the regular dominant lambda_0.
bool in_category_c(const FinHModule& m);

struct SupportComponent {
  int w;
  Mat basis;  // rows spanning M_w = M E(n_w lambda_0 n_w^{-1})
  FinAModule module;
};
// Throws std::invalid_argument if m is not in C.
std::vector<SupportComponent> decompose_by_support(const FinHModule& m);

struct IsotypicComponent {
  std::vector<int> orbit;  // character indices
  Mat basis;
};
// Simultaneous eigenspaces of Z_kappa grouped into Lambda(1)-orbits of characters.
// Throws if the Z_kappa action is not diagonalizable over F.
std::vector<IsotypicComponent> isotypic(const FinAModule& m);
// Lambda(1)-orbit of the character psi.
std::vector<int> character_orbit(const ProPWeyl& W, int psi);

struct InducedModule {
  FinHModule module;
  Mat unit;  // dim m x dim module
};
// M (x)_A H on (+)_w M (x) b_w, b_w the left localization basis at the support chamber.
InducedModule tensor_h(const FinAModule& m, int chamber, std::shared_ptr<const HeckeAlgebra> H);
// Hom_A(H, M) on (+)_w M via phi -> (phi(b'_w))_w, b'_w the right localization basis.
FinHModule hom_from_h(const FinAModule& m, int chamber, std::shared_ptr<const HeckeAlgebra> H);
// For an H-module n whose restriction has support chamber v: n -> Hom_A(H, n), n -> (X -> nX).
Mat hom_embedding(const FinHModule& n, int chamber);

// Basis (rows, each a flattened d1 x d2 matrix P) of {P : A_g P = P B_g for all generators}.
Mat intertwiner_space(const FinHModule& a, const FinHModule& b);
struct IsoResult {
  bool found = false;
  int space_dim = 0;
  Mat P;
  std::string diagnostic;
};
// First invertible element of the intertwiner space in echelon order, then seeded combinations.
IsoResult find_isomorphism(const FinHModule& a, const FinHModule& b, std::uint64_t seed = 0);
// tensor_h(m) against hom_from_h(n_{w_Delta} m); m must have support e.
IsoResult check_iso_hom_tensor(const FinAModule& m, std::shared_ptr<const HeckeAlgebra> H);

struct SwitchResult {
  int unknowns = 0;
  int rank_chamber = 0;  // rank of the A_v-system
  int rank_full = 0;     // rank after adding the remaining A-equations
  int extra_equations = 0;
  bool coincide() const { return rank_chamber == rank_full; }
};
// Truncated solution spaces of the A- and A_v-equivariance systems for maps
// H -> M, unknowns phi(T_x) with l(x) <= max_length.  An A-equation for mu
// outside the chamber is only imposed where T_x E(mu) E(lambda_0) stays in the window.
SwitchResult switch_check(const FinAModule& m, int chamber, const HeckeAlgebra& H, int max_length, int nu_height);

// Dominant lambda_0 with <lambda_0, alpha> = 0 on J and > 0 off J; the index-th such
// element in increasing nu-height.
W1 levi_central_element(const ProPWeyl& W, const std::vector<int>& J, int index = 0);
// The A_J-module extending M (supp M = w(Lambda^+(1)), w in W_{0,J}), over the Levi W(1).
FinAModule extend_to_levi(const FinAModule& m, int w, const std::vector<int>& J,
                          std::shared_ptr<const ProPWeyl> levi, const W1& lambda0);

// All one-dimensional H-modules: Z_kappa by a character psi, T_{n~_s} by 0 or
// psi(c_s), Omega generators by nonzero scalars; kept when the relations hold.
std::vector<FinHModule> characters(std::shared_ptr<const HeckeAlgebra> H);

// Random commuting family: character blocks for Z_kappa, polynomials in one
// random matrix per block, conjugated by a random change of basis.
// psi >= 0 forces a single Z_kappa character.
LatticeRep random_lattice_rep(const ProPWeyl& W, const Field& F, int dim, std::mt19937_64& rng, int psi = -1);
// Random element of the commutant of m's generators.
Mat random_endomorphism(const FinHModule& m, std::mt19937_64& rng);

}  // namespace prophecke

#endif  // PROPHECKE_MODULE_HPP_
