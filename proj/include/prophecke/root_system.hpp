#ifndef PROPHECKE_ROOT_SYSTEM_HPP_
#define PROPHECKE_ROOT_SYSTEM_HPP_

// Based reduced root data of split groups and the finite Weyl group W_0.
//
// Cocharacters (elements of X_*(S)) are column vectors, characters are
// covectors; both are stored as fixed-size integer arrays padded with zeros.

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/rational.hpp>

namespace prophecke {

constexpr int kMaxRank = 4;
using Vec = std::array<std::int32_t, kMaxRank>;
using Rational = boost::rational<long long>;
using QVec = std::vector<Rational>;
using IntMatrix = std::vector<std::vector<long long>>;

struct VecHash {
  std::size_t operator()(const Vec& v) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto x : v) h = (h ^ static_cast<std::uint32_t>(x)) * 0x100000001b3ULL;
    return h;
  }
};

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_neg(const Vec& a);
Vec vec_scale(long long c, const Vec& a);
long long pairing(const Vec& cochar, const Vec& character, int n);

struct RootDatum {
  std::string name;
  int rank_ss = 0;
  int lattice_rank = 0;
  std::vector<Vec> simple_roots;    // covectors on X_*(S)
  std::vector<Vec> simple_coroots;  // vectors in X_*(S)
  std::vector<std::vector<int>> cartan;  // cartan[i][j] = <alpha_j, alpha_i^vee>

  // Throws std::invalid_argument naming the offending entry.
  void validate() const;
  bool operator==(const RootDatum&) const = default;

  static RootDatum SL2();
  static RootDatum GL2();
  static RootDatum SL3();
  static RootDatum Sp4();
  static RootDatum preset(const std::string& name);
  static std::vector<std::string> preset_names();
};

struct WeylElement {
  std::vector<int> word;  // reduced, letters are simple indices
  IntMatrix matrix;       // action on X_*(S)
};

class RootSystem {
 public:
  static constexpr std::size_t kMaxWeylOrder = 100000;

  explicit RootSystem(RootDatum rd);

  const RootDatum& datum() const { return rd_; }
  int rank_ss() const { return rd_.rank_ss; }
  int lattice_rank() const { return rd_.lattice_rank; }

  // Roots: indices [0, npos) are Sigma^+, index k + npos is -root(k).
  int num_roots() const { return static_cast<int>(roots_.size()); }
  int num_positive() const { return npos_; }
  const Vec& root(int k) const { return roots_[k]; }
  const Vec& coroot(int k) const { return coroots_[k]; }
  bool positive(int k) const { return k < npos_; }
  int negate(int k) const { return k < npos_ ? k + npos_ : k - npos_; }
  int simple_root_index(int i) const { return i; }
  // Coefficients of root k in the basis of simple roots.
  const std::vector<int>& root_coeffs(int k) const { return coeffs_[k]; }
  // -1 if the covector is not a root.
  int find_root(const Vec& covector) const;

  // W_0, identity has index 0.
  int order() const { return static_cast<int>(elems_.size()); }
  const WeylElement& element(int w) const { return elems_[w]; }
  int identity() const { return 0; }
  int simple(int i) const { return simple_idx_[i]; }
  int mul(int a, int b) const;
  int inv(int a) const { return inv_[a]; }
  int length(int a) const { return static_cast<int>(elems_[a].word.size()); }
  int root_image(int w, int k) const { return perm_[static_cast<std::size_t>(w) * roots_.size() + k]; }
  int inversion_count(int w) const;
  int from_matrix(const IntMatrix& m) const;  // -1 if absent
  int from_word(const std::vector<int>& word) const;
  int longest() const { return longest_; }
  // Coxeter order of s_i s_j.
  int coxeter_m(int i, int j) const;

  Vec act(int w, const Vec& mu) const;

  bool is_dominant(const Vec& mu) const;
  bool is_regular(const Vec& mu) const;
  bool is_dominant(const QVec& v) const;
  bool is_regular(const QVec& v) const;
  // {w : w^{-1} v dominant}, sorted by index.
  std::vector<int> chamber_of(const Vec& mu) const;
  std::vector<int> chamber_of(const QVec& v) const;
  bool in_chamber(int w, const Vec& mu) const;  // w^{-1} mu dominant
  // First w (by index) with w^{-1} mu dominant.
  int some_chamber(const Vec& mu) const;
  // Dominant W_0-conjugate of mu.
  Vec dominant_rep(const Vec& mu) const;
  std::vector<Vec> orbit(const Vec& mu) const;  // sorted, distinct

  std::vector<int> delta_w(int w) const;  // {i : w(alpha_i) > 0}
  int longest_element(const std::vector<int>& J) const;
  std::vector<int> parabolic_subgroup(const std::vector<int>& J) const;
  // Positive roots in the span of J.
  std::vector<int> positive_roots_in(const std::vector<int>& J) const;
  bool in_parabolic(int w, const std::vector<int>& J) const;

  // Connected components of the Dynkin diagram and the highest root of each.
  const std::vector<std::vector<int>>& components() const { return components_; }
  int highest_root(int component) const { return highest_[component]; }

  // <mu, alpha_i> for each simple root (fundamental-coweight coordinates),
  // followed by <mu, chi_k> for a basis chi_k of W_0-invariant characters.
  std::vector<long long> height_coords(const Vec& mu) const;
  long long nu_height(const Vec& mu) const;
  // All cocharacters with nu_height <= h, in lexicographic order.
  std::vector<Vec> cochars_up_to_height(long long h) const;
  // Basis of the W_0-invariant characters.
  const std::vector<Vec>& invariant_characters() const { return inv_chars_; }
  // Z-basis of the central cocharacters {mu : <mu, alpha> = 0 for all alpha}.
  const std::vector<Vec>& central_cochars() const { return central_; }
  // A fixed regular dominant cocharacter (used as lambda_0).
  Vec regular_dominant() const;

 private:
  RootDatum rd_;
  std::vector<Vec> roots_, coroots_;
  std::vector<std::vector<int>> coeffs_;
  int npos_ = 0;
  std::unordered_map<Vec, int, VecHash> root_lookup_;
  std::vector<WeylElement> elems_;
  std::vector<int> simple_idx_, inv_;
  std::vector<int> table_;  // multiplication table when small
  std::vector<int> perm_;
  std::unordered_map<std::string, int> by_matrix_;
  int longest_ = 0;
  std::vector<std::vector<int>> components_;
  std::vector<int> highest_;
  std::vector<Vec> inv_chars_, central_;
  std::vector<std::vector<Rational>> height_inverse_;  // mu = Inv * height_coords
};

std::string matrix_key(const IntMatrix& m);

}  // namespace prophecke

#endif  // PROPHECKE_ROOT_SYSTEM_HPP_
