#include "prophecke/root_system.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

#include "prophecke/intmath.hpp"

namespace prophecke {

Vec vec_add(const Vec& a, const Vec& b) {
  Vec r{};
  for (int i = 0; i < kMaxRank; ++i) r[i] = a[i] + b[i];
  return r;
}
Vec vec_sub(const Vec& a, const Vec& b) {
  Vec r{};
  for (int i = 0; i < kMaxRank; ++i) r[i] = a[i] - b[i];
  return r;
}
Vec vec_neg(const Vec& a) {
  Vec r{};
  for (int i = 0; i < kMaxRank; ++i) r[i] = -a[i];
  return r;
}
Vec vec_scale(long long c, const Vec& a) {
  Vec r{};
  for (int i = 0; i < kMaxRank; ++i) r[i] = static_cast<std::int32_t>(c * a[i]);
  return r;
}
long long pairing(const Vec& x, const Vec& y, int n) {
  long long s = 0;
  for (int i = 0; i < n; ++i) s += static_cast<long long>(x[i]) * y[i];
  return s;
}

std::string matrix_key(const IntMatrix& m) {
  std::string k;
  for (const auto& row : m)
    for (long long x : row) {
      k += std::to_string(x);
      k += ',';
    }
  return k;
}

// ---------------------------------------------------------------- presets

static Vec V(std::initializer_list<int> xs) {
  Vec v{};
  int i = 0;
  for (int x : xs) v[i++] = x;
  return v;
}

RootDatum RootDatum::SL2() {
  return {"SL2", 1, 1, {V({2})}, {V({1})}, {{2}}};
}
RootDatum RootDatum::GL2() {
  return {"GL2", 1, 2, {V({1, -1})}, {V({1, -1})}, {{2}}};
}
RootDatum RootDatum::SL3() {
  // X_*(S) in the basis of simple coroots.
  return {"SL3", 2, 2, {V({2, -1}), V({-1, 2})}, {V({1, 0}), V({0, 1})}, {{2, -1}, {-1, 2}}};
}
RootDatum RootDatum::Sp4() {
  // Torus diag(a, b, 1/b, 1/a); alpha_1 = e1 - e2 short, alpha_2 = 2 e2 long.
  return {"Sp4", 2, 2, {V({1, -1}), V({0, 2})}, {V({1, -1}), V({0, 1})}, {{2, -2}, {-1, 2}}};
}
RootDatum RootDatum::preset(const std::string& name) {
  if (name == "SL2") return SL2();
  if (name == "GL2") return GL2();
  if (name == "SL3") return SL3();
  if (name == "Sp4") return Sp4();
  throw std::invalid_argument("unknown preset group '" + name + "'");
}
std::vector<std::string> RootDatum::preset_names() { return {"GL2", "SL2", "SL3", "Sp4"}; }

void RootDatum::validate() const {
  auto fail = [](const std::string& m) { throw std::invalid_argument(m); };
  if (rank_ss < 0 || lattice_rank < 1 || lattice_rank > kMaxRank)
    fail("lattice_rank must lie in [1, " + std::to_string(kMaxRank) + "]");
  if (rank_ss > lattice_rank) fail("rank_ss exceeds lattice_rank");
  if (static_cast<int>(simple_roots.size()) != rank_ss) fail("simple_roots: expected rank_ss entries");
  if (static_cast<int>(simple_coroots.size()) != rank_ss) fail("simple_coroots: expected rank_ss entries");
  if (static_cast<int>(cartan.size()) != rank_ss) fail("cartan: expected rank_ss rows");
  for (int i = 0; i < rank_ss; ++i) {
    if (static_cast<int>(cartan[i].size()) != rank_ss) fail("cartan[" + std::to_string(i) + "]: wrong length");
    for (int k = lattice_rank; k < kMaxRank; ++k)
      if (simple_roots[i][k] != 0 || simple_coroots[i][k] != 0) fail("vector padding must be zero");
  }
  for (int i = 0; i < rank_ss; ++i)
    for (int j = 0; j < rank_ss; ++j) {
      const std::string at = "cartan[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      if (i == j && cartan[i][j] != 2) fail(at + " must be 2");
      if (i != j && cartan[i][j] > 0) fail(at + " must be <= 0");
      if (i != j && (cartan[i][j] == 0) != (cartan[j][i] == 0)) fail(at + " zero pattern not symmetric");
      if (i != j) {
        int prod = cartan[i][j] * cartan[j][i];
        if (prod > 3) fail(at + " product with transpose exceeds 3 (not finite type)");
      }
      long long pr = pairing(simple_coroots[i], simple_roots[j], lattice_rank);
      if (pr != cartan[i][j]) fail(at + " disagrees with <simple_roots[j], simple_coroots[i]>");
    }
}

// ------------------------------------------------------------ RootSystem

namespace {

IntMatrix reflection_matrix(const RootDatum& rd, int i) {
  const int n = rd.lattice_rank;
  IntMatrix m(n, std::vector<long long>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      m[a][b] = (a == b ? 1 : 0) - static_cast<long long>(rd.simple_coroots[i][a]) * rd.simple_roots[i][b];
  return m;
}

IntMatrix imat_mul(const IntMatrix& A, const IntMatrix& B) {
  const std::size_t n = A.size();
  IntMatrix C(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (A[i][k] != 0)
        for (std::size_t j = 0; j < n; ++j) C[i][j] += A[i][k] * B[k][j];
  return C;
}

}  // namespace

RootSystem::RootSystem(RootDatum rd) : rd_(std::move(rd)) {
  rd_.validate();
  const int n = rd_.lattice_rank, r = rd_.rank_ss;

  // Close the simple roots under simple reflections.
  struct RootRec {
    Vec root, coroot;
    std::vector<int> coeff;
  };
  std::vector<RootRec> all;
  std::unordered_map<Vec, int, VecHash> seen;
  std::deque<int> queue;
  for (int i = 0; i < r; ++i) {
    std::vector<int> c(r, 0);
    c[i] = 1;
    all.push_back({rd_.simple_roots[i], rd_.simple_coroots[i], c});
    if (!seen.emplace(rd_.simple_roots[i], i).second) throw std::invalid_argument("simple_roots: repeated root");
    queue.push_back(i);
  }
  while (!queue.empty()) {
    int k = queue.front();
    queue.pop_front();
    for (int i = 0; i < r; ++i) {
      RootRec rec = all[k];
      long long a = pairing(rd_.simple_coroots[i], rec.root, n);
      long long b = pairing(rec.coroot, rd_.simple_roots[i], n);
      rec.root = vec_sub(rec.root, vec_scale(a, rd_.simple_roots[i]));
      rec.coroot = vec_sub(rec.coroot, vec_scale(b, rd_.simple_coroots[i]));
      rec.coeff[i] -= static_cast<int>(a);
      if (seen.count(rec.root)) continue;
      if (all.size() > 10000) throw std::invalid_argument("root closure too large: cartan not of finite type");
      seen.emplace(rec.root, static_cast<int>(all.size()));
      all.push_back(rec);
      queue.push_back(static_cast<int>(all.size()) - 1);
    }
  }
  std::vector<RootRec> pos;
  for (const auto& rec : all) {
    bool p = std::all_of(rec.coeff.begin(), rec.coeff.end(), [](int c) { return c >= 0; });
    bool m = std::all_of(rec.coeff.begin(), rec.coeff.end(), [](int c) { return c <= 0; });
    if (!p && !m) throw std::invalid_argument("root neither positive nor negative: invalid cartan data");
    if (p) pos.push_back(rec);
  }
  if (pos.size() * 2 != all.size()) throw std::invalid_argument("Sigma is not Sigma+ disjoint -Sigma+");
  std::sort(pos.begin(), pos.end(), [](const RootRec& a, const RootRec& b) {
    int ha = 0, hb = 0;
    for (int c : a.coeff) ha += c;
    for (int c : b.coeff) hb += c;
    if (ha != hb) return ha < hb;
    return std::lexicographical_compare(b.coeff.begin(), b.coeff.end(), a.coeff.begin(), a.coeff.end());
  });
  npos_ = static_cast<int>(pos.size());
  for (const auto& rec : pos) {
    roots_.push_back(rec.root);
    coroots_.push_back(rec.coroot);
    coeffs_.push_back(rec.coeff);
  }
  for (const auto& rec : pos) {
    roots_.push_back(vec_neg(rec.root));
    coroots_.push_back(vec_neg(rec.coroot));
    std::vector<int> c = rec.coeff;
    for (int& x : c) x = -x;
    coeffs_.push_back(c);
  }
  for (int k = 0; k < num_roots(); ++k) root_lookup_[roots_[k]] = k;

  // Enumerate W_0 breadth first by left multiplication with simple reflections.
  std::vector<IntMatrix> refl;
  for (int i = 0; i < r; ++i) refl.push_back(reflection_matrix(rd_, i));
  IntMatrix id(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) id[i][i] = 1;
  elems_.push_back({{}, id});
  by_matrix_[matrix_key(id)] = 0;
  for (std::size_t head = 0; head < elems_.size(); ++head) {
    for (int i = 0; i < r; ++i) {
      IntMatrix m = imat_mul(refl[i], elems_[head].matrix);
      std::string key = matrix_key(m);
      if (by_matrix_.count(key)) continue;
      if (elems_.size() >= kMaxWeylOrder) throw std::invalid_argument("Weyl group exceeds enumeration bound");
      std::vector<int> word{i};
      word.insert(word.end(), elems_[head].word.begin(), elems_[head].word.end());
      by_matrix_[key] = static_cast<int>(elems_.size());
      elems_.push_back({word, m});
    }
  }
  for (int i = 0; i < r; ++i) simple_idx_.push_back(by_matrix_.at(matrix_key(refl[i])));
  const int N = order();
  if (N <= 2048) {
    table_.resize(static_cast<std::size_t>(N) * N);
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        table_[static_cast<std::size_t>(a) * N + b] =
            by_matrix_.at(matrix_key(imat_mul(elems_[a].matrix, elems_[b].matrix)));
  }
  inv_.resize(N);
  for (int a = 0; a < N; ++a) {
    std::vector<int> rw(elems_[a].word.rbegin(), elems_[a].word.rend());
    inv_[a] = from_word(rw);
  }
  // w(beta) as a covector is beta o w^{-1}.
  perm_.resize(static_cast<std::size_t>(N) * roots_.size());
  for (int a = 0; a < N; ++a) {
    const IntMatrix& mi = elems_[inv_[a]].matrix;
    for (int k = 0; k < num_roots(); ++k) {
      Vec img{};
      for (int j = 0; j < n; ++j) {
        long long s = 0;
        for (int t = 0; t < n; ++t) s += roots_[k][t] * mi[t][j];
        img[j] = static_cast<std::int32_t>(s);
      }
      int idx = find_root(img);
      if (idx < 0) throw std::logic_error("W_0 does not permute roots");
      perm_[static_cast<std::size_t>(a) * roots_.size() + k] = idx;
    }
  }
  for (int a = 0; a < N; ++a)
    if (length(a) > length(longest_)) longest_ = a;

  // Dynkin components and highest roots.
  std::vector<int> comp(r, -1);
  for (int i = 0; i < r; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> members;
    std::function<void(int)> dfs = [&](int v) {
      comp[v] = static_cast<int>(components_.size());
      members.push_back(v);
      for (int u = 0; u < r; ++u)
        if (comp[u] < 0 && rd_.cartan[v][u] != 0) dfs(u);
    };
    dfs(i);
    std::sort(members.begin(), members.end());
    components_.push_back(members);
  }
  for (const auto& members : components_) {
    int best = -1, bh = -1;
    for (int k = 0; k < npos_; ++k) {
      bool inside = true;
      int h = 0;
      for (int i = 0; i < r; ++i) {
        if (coeffs_[k][i] != 0 && std::find(members.begin(), members.end(), i) == members.end()) inside = false;
        h += coeffs_[k][i];
      }
      if (inside && h > bh) {
        bh = h;
        best = k;
      }
    }
    highest_.push_back(best);
  }

  // Invariant characters and central cocharacters.
  IMat corootm, rootm;
  for (int i = 0; i < r; ++i) {
    std::vector<long long> a(n), b(n);
    for (int j = 0; j < n; ++j) {
      a[j] = rd_.simple_coroots[i][j];
      b[j] = rd_.simple_roots[i][j];
    }
    corootm.push_back(a);
    rootm.push_back(b);
  }
  for (const auto& k : integer_kernel(corootm, n)) {
    Vec v{};
    for (int j = 0; j < n; ++j) v[j] = static_cast<std::int32_t>(k[j]);
    inv_chars_.push_back(v);
  }
  for (const auto& k : integer_kernel(rootm, n)) {
    Vec v{};
    for (int j = 0; j < n; ++j) v[j] = static_cast<std::int32_t>(k[j]);
    central_.push_back(v);
  }
  QMat H(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) H[i][j] = rd_.simple_roots[i][j];
  for (std::size_t k = 0; k < inv_chars_.size(); ++k)
    for (int j = 0; j < n; ++j) H[r + k][j] = inv_chars_[k][j];
  auto Hi = rational_inverse(H);
  if (!Hi) throw std::invalid_argument("simple roots and invariant characters do not span X^*(S)");
  height_inverse_ = *Hi;
}

int RootSystem::find_root(const Vec& covector) const {
  auto it = root_lookup_.find(covector);
  return it == root_lookup_.end() ? -1 : it->second;
}

int RootSystem::mul(int a, int b) const {
  const int N = order();
  if (!table_.empty()) return table_[static_cast<std::size_t>(a) * N + b];
  return by_matrix_.at(matrix_key(imat_mul(elems_[a].matrix, elems_[b].matrix)));
}

int RootSystem::from_matrix(const IntMatrix& m) const {
  auto it = by_matrix_.find(matrix_key(m));
  return it == by_matrix_.end() ? -1 : it->second;
}

int RootSystem::from_word(const std::vector<int>& word) const {
  const int n = rd_.lattice_rank;
  IntMatrix m(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  for (int i : word) {
    if (i < 0 || i >= rd_.rank_ss) throw std::invalid_argument("from_word: letter out of range");
    m = imat_mul(m, reflection_matrix(rd_, i));
  }
  return from_matrix(m);
}

int RootSystem::inversion_count(int w) const {
  int c = 0;
  for (int k = 0; k < npos_; ++k)
    if (!positive(root_image(w, k))) ++c;
  return c;
}

int RootSystem::coxeter_m(int i, int j) const {
  if (i == j) return 1;
  switch (rd_.cartan[i][j] * rd_.cartan[j][i]) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    default: return 6;
  }
}

Vec RootSystem::act(int w, const Vec& mu) const {
  const auto& m = elems_[w].matrix;
  const int n = rd_.lattice_rank;
  Vec r{};
  for (int i = 0; i < n; ++i) {
    long long s = 0;
    for (int j = 0; j < n; ++j) s += m[i][j] * mu[j];
    r[i] = static_cast<std::int32_t>(s);
  }
  return r;
}

bool RootSystem::is_dominant(const Vec& mu) const {
  for (int i = 0; i < rd_.rank_ss; ++i)
    if (pairing(mu, rd_.simple_roots[i], rd_.lattice_rank) < 0) return false;
  return true;
}

bool RootSystem::is_regular(const Vec& mu) const {
  for (int k = 0; k < npos_; ++k)
    if (pairing(mu, roots_[k], rd_.lattice_rank) == 0) return false;
  return true;
}

static Rational qpair(const QVec& v, const Vec& root, int n) {
  Rational s(0);
  for (int i = 0; i < n; ++i) s += v[i] * Rational(root[i]);
  return s;
}

bool RootSystem::is_dominant(const QVec& v) const {
  if (static_cast<int>(v.size()) != rd_.lattice_rank) throw std::invalid_argument("is_dominant: dimension mismatch");
  for (int k = 0; k < npos_; ++k)
    if (qpair(v, roots_[k], rd_.lattice_rank).numerator() < 0) return false;
  return true;
}

bool RootSystem::is_regular(const QVec& v) const {
  if (static_cast<int>(v.size()) != rd_.lattice_rank) throw std::invalid_argument("is_regular: dimension mismatch");
  for (int k = 0; k < npos_; ++k)
    if (qpair(v, roots_[k], rd_.lattice_rank).numerator() == 0) return false;
  return true;
}

bool RootSystem::in_chamber(int w, const Vec& mu) const {
  // <w^{-1} mu, alpha_i> = <mu, w(alpha_i)>
  for (int i = 0; i < rd_.rank_ss; ++i)
    if (pairing(mu, roots_[root_image(w, i)], rd_.lattice_rank) < 0) return false;
  return true;
}

std::vector<int> RootSystem::chamber_of(const Vec& mu) const {
  std::vector<int> out;
  for (int w = 0; w < order(); ++w)
    if (in_chamber(w, mu)) out.push_back(w);
  return out;
}

std::vector<int> RootSystem::chamber_of(const QVec& v) const {
  std::vector<int> out;
  for (int w = 0; w < order(); ++w) {
    bool ok = true;
    for (int i = 0; i < rd_.rank_ss && ok; ++i)
      if (qpair(v, roots_[root_image(w, i)], rd_.lattice_rank).numerator() < 0) ok = false;
    if (ok) out.push_back(w);
  }
  return out;
}

int RootSystem::some_chamber(const Vec& mu) const {
  for (int w = 0; w < order(); ++w)
    if (in_chamber(w, mu)) return w;
  throw std::logic_error("no chamber contains the vector");
}

Vec RootSystem::dominant_rep(const Vec& mu) const { return act(inv(some_chamber(mu)), mu); }

std::vector<Vec> RootSystem::orbit(const Vec& mu) const {
  std::set<Vec> s;
  for (int w = 0; w < order(); ++w) s.insert(act(w, mu));
  return {s.begin(), s.end()};
}

std::vector<int> RootSystem::delta_w(int w) const {
  std::vector<int> out;
  for (int i = 0; i < rd_.rank_ss; ++i)
    if (positive(root_image(w, i))) out.push_back(i);
  return out;
}

bool RootSystem::in_parabolic(int w, const std::vector<int>& J) const {
  // All reduced words of w share the same support.
  for (int i : elems_[w].word)
    if (std::find(J.begin(), J.end(), i) == J.end()) return false;
  return true;
}

std::vector<int> RootSystem::parabolic_subgroup(const std::vector<int>& J) const {
  std::vector<int> out;
  for (int w = 0; w < order(); ++w)
    if (in_parabolic(w, J)) out.push_back(w);
  return out;
}

int RootSystem::longest_element(const std::vector<int>& J) const {
  int best = 0;
  for (int w : parabolic_subgroup(J))
    if (length(w) > length(best)) best = w;
  return best;
}

std::vector<int> RootSystem::positive_roots_in(const std::vector<int>& J) const {
  std::vector<int> out;
  for (int k = 0; k < npos_; ++k) {
    bool inside = true;
    for (int i = 0; i < rd_.rank_ss; ++i)
      if (coeffs_[k][i] != 0 && std::find(J.begin(), J.end(), i) == J.end()) inside = false;
    if (inside) out.push_back(k);
  }
  return out;
}

std::vector<long long> RootSystem::height_coords(const Vec& mu) const {
  std::vector<long long> c;
  for (int i = 0; i < rd_.rank_ss; ++i) c.push_back(pairing(mu, rd_.simple_roots[i], rd_.lattice_rank));
  for (const auto& chi : inv_chars_) c.push_back(pairing(mu, chi, rd_.lattice_rank));
  return c;
}

long long RootSystem::nu_height(const Vec& mu) const {
  long long h = 0;
  for (long long x : height_coords(mu)) h += std::llabs(x);
  return h;
}

std::vector<Vec> RootSystem::cochars_up_to_height(long long h) const {
  const int n = rd_.lattice_rank;
  std::vector<long long> bound(n, 0);
  for (int j = 0; j < n; ++j) {
    Rational s(0);
    for (int k = 0; k < n; ++k) s += abs(height_inverse_[j][k]);
    bound[j] = static_cast<long long>(boost::rational_cast<double>(s * Rational(h))) + 1;
  }
  std::vector<Vec> out;
  Vec cur{};
  std::function<void(int)> rec = [&](int j) {
    if (j == n) {
      if (nu_height(cur) <= h) out.push_back(cur);
      return;
    }
    for (long long x = -bound[j]; x <= bound[j]; ++x) {
      cur[j] = static_cast<std::int32_t>(x);
      rec(j + 1);
    }
    cur[j] = 0;
  };
  rec(0);
  return out;
}

Vec RootSystem::regular_dominant() const {
  for (long long h = 0;; ++h) {
    for (const Vec& mu : cochars_up_to_height(h)) {
      if (nu_height(mu) != h || !is_dominant(mu) || !is_regular(mu)) continue;
      bool central_zero = true;
      for (const auto& chi : inv_chars_)
        if (pairing(mu, chi, rd_.lattice_rank) != 0) central_zero = false;
      if (central_zero) return mu;
    }
  }
}

}  // namespace prophecke
