#include "prophecke/parabolic.hpp"

#include <algorithm>
#include <stdexcept>

namespace prophecke {

RootDatum levi_datum(const RootDatum& rd, const std::vector<int>& J) {
  RootDatum l;
  l.name = rd.name + "_J";
  l.rank_ss = static_cast<int>(J.size());
  l.lattice_rank = rd.lattice_rank;
  for (int i : J) {
    l.simple_roots.push_back(rd.simple_roots[i]);
    l.simple_coroots.push_back(rd.simple_coroots[i]);
    std::vector<int> row;
    for (int j : J) row.push_back(rd.cartan[i][j]);
    l.cartan.push_back(row);
  }
  l.validate();
  return l;
}

LeviData levi_algebra(const HeckeAlgebra& H, std::vector<int> J, const std::optional<ZKappaSpec>& zk,
                      const std::vector<std::optional<int>>& ns_squares) {
  const ProPWeyl& W = H.W();
  const RootSystem& R = W.rs();
  std::sort(J.begin(), J.end());
  J.erase(std::unique(J.begin(), J.end()), J.end());
  for (int i : J)
    if (i < 0 || i >= R.rank_ss()) throw std::invalid_argument("levi_algebra: J contains an invalid simple index");
  LeviData ld;
  ld.J = J;
  ld.rs = std::make_shared<RootSystem>(levi_datum(R.datum(), J));
  std::optional<ZKappaSpec> lzk;
  if (zk) {
    lzk = ZKappaSpec{zk->orders, {}, {}};
    for (int i : J) {
      lzk->reflections.push_back(zk->reflections[i]);
      lzk->coroot_images.push_back(zk->coroot_images[i]);
    }
  }
  std::vector<std::optional<int>> lsq;
  if (!ns_squares.empty())
    for (int i : J) lsq.push_back(ns_squares[i]);
  ld.W = std::make_shared<ProPWeyl>(ld.rs, W.q(), lzk, lsq, W.alcove_sign());
  ld.H = std::make_shared<HeckeAlgebra>(ld.W, H.F_ptr());
  for (int w = 0; w < ld.rs->order(); ++w) {
    std::vector<int> word;
    for (int k : ld.rs->element(w).word) word.push_back(J[k]);
    ld.to_ambient.push_back(R.from_word(word));
  }
  for (int k = 0; k < R.num_positive(); ++k) {
    const auto& c = R.root_coeffs(k);
    bool outside = false;
    for (int i = 0; i < R.rank_ss(); ++i)
      if (c[i] != 0 && !std::binary_search(J.begin(), J.end(), i)) outside = true;
    if (outside) ld.outside_roots.push_back(R.root(k));
  }
  return ld;
}

bool variant_is_plus(JVariant v) { return v == JVariant::kPlus || v == JVariant::kPlusStar; }
bool variant_is_star(JVariant v) { return v == JVariant::kPlusStar || v == JVariant::kMinusStar; }

JVariant parse_variant(const std::string& s) {
  if (s == "+") return JVariant::kPlus;
  if (s == "+*") return JVariant::kPlusStar;
  if (s == "-") return JVariant::kMinus;
  if (s == "-*") return JVariant::kMinusStar;
  throw std::invalid_argument("unknown j variant '" + s + "' (expected +, +*, -, -*)");
}

bool plus_minus_membership(const LeviData& ld, const W1& x, int sign) {
  const int n = ld.rs->lattice_rank();
  for (const Vec& a : ld.outside_roots) {
    long long p = pairing(x.mu, a, n);
    if (sign > 0 ? p > 0 : p < 0) return false;
  }
  return true;
}

HeckeElement j_map(const LeviData& ld, const HeckeAlgebra& H, JVariant v, const HeckeElement& x) {
  const int sign = variant_is_plus(v) ? 1 : -1;
  const bool star = variant_is_star(v);
  HeckeElement src = star ? ld.H->star_coords(x) : x;
  HeckeElement out;
  for (const auto& [w, c] : src.terms()) {
    if (!plus_minus_membership(ld, w, sign))
      throw std::invalid_argument("j_map: support element " + ld.W->to_string(w) + " outside the region");
    W1 a = ld.to_ambient_elem(w);
    if (star)
      out.add(H.F(), H.t_star(a), c);
    else
      out.add_term(H.F(), a, c);
  }
  return out;
}

LocalizationCheck levi_localization_check(const LeviData& ld, const W1& lambda0, int bound, int max_power) {
  LocalizationCheck res;
  const HeckeAlgebra& HJ = *ld.H;
  HeckeElement e0 = HJ.e_of(lambda0);
  auto in_minus = [&](const HeckeElement& y) {
    for (const auto& [w, c] : y.terms())
      if (!plus_minus_membership(ld, w, -1)) return false;
    return true;
  };
  for (const W1& w : ld.W->elements_up_to_length(bound, 1, true)) {
    HeckeElement y = HJ.T(w);
    int k = 0;
    while (!in_minus(y) && k <= max_power) {
      y = HJ.mul(y, e0);
      ++k;
    }
    ++res.checked;
    if (k > max_power) {
      res.ok = false;
      res.witness = "T^J[" + ld.W->to_string(w) + "]";
      return res;
    }
    res.max_power = std::max(res.max_power, k);
  }
  return res;
}

}  // namespace prophecke
