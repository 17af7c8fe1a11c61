#pragma once

// Finite crystallographic root systems and their Weyl groups.
//
// Weights live in the fundamental-weight lattice of the simply connected
// group; a simple root alpha_j has weight coordinates given by column j of
// the Cartan matrix A_ij = 2(alpha_i, alpha_j)/(alpha_i, alpha_i).  Numbering
// follows Bourbaki:
//
//   type  rank  short roots            diagram
//   A     >=1   -                      1 - 2 - ... - n
//   B     >=2   alpha_n                1 - ... - (n-1) => n
//   C     >=2   alpha_1 .. alpha_{n-1} 1 - ... - (n-1) <= n
//   D     >=4   -                      (n-2) branches to (n-1) and n
//   E     6,7,8 -                      1 - 3 - 4 - 5 - ... with 2 on 4
//   F     4     alpha_3, alpha_4       1 - 2 => 3 - 4
//   G     2     alpha_1                1 <= 2 (triple bond)
//
// D3 is rejected (use A3).  Weyl group elements are dense indices into a
// table ordered by (length, canonical word); index 0 is the identity and
// the last index is w0.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kflag/laurent_poly.hpp"

namespace kflag {

using Weight = std::array<int, kMaxRank>;

struct WeightHash {
  std::size_t operator()(const Weight& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int v : w) h = (h ^ static_cast<std::uint32_t>(v)) * 1099511628211ull;
    return h;
  }
};

class RootSystem {
 public:
  /// Throws ConfigError naming the pair when (type, rank) is not a finite type.
  static std::shared_ptr<const RootSystem> build(char type, int rank);

  char type() const { return type_; }
  int rank() const { return rank_; }
  std::string label() const { return std::string(1, type_) + std::to_string(rank_); }
  int cartan(int i, int j) const { return cartan_[i][j]; }

  /// Number of positive roots N.  Root indices 0..N-1 are the positive roots
  /// in generation order (simple roots first, by height), N..2N-1 their
  /// negatives in the same order.
  int num_positive() const { return static_cast<int>(pos_weight_.size()); }
  int num_roots() const { return 2 * num_positive(); }
  const Weight& root_weight(int idx) const { return all_weight_[idx]; }
  /// Simple-root coordinates of a root (negative for negative roots).
  std::vector<int> root_simple_coords(int idx) const;
  bool is_positive(int idx) const { return idx < num_positive(); }
  int negate(int idx) const { return idx < num_positive() ? idx + num_positive() : idx - num_positive(); }
  /// Index of the simple root alpha_i.
  int simple_root(int i) const { return simple_idx_[i]; }
  /// Root index for a weight, or -1 if it is not a root.
  int find_root(const Weight& w) const;
  int height(int idx) const;

  Weight rho() const;
  Weight zero() const { return Weight{}; }

  /// Simple-root coordinates of an arbitrary weight; nullopt if the weight is
  /// outside the root lattice.
  std::optional<std::vector<int>> to_root_coordinates(const Weight& w) const;

  bool operator==(const RootSystem& o) const { return type_ == o.type_ && rank_ == o.rank_; }

 private:
  char type_ = 'A';
  int rank_ = 0;
  std::vector<std::vector<int>> cartan_;
  std::vector<Weight> pos_weight_;
  std::vector<std::vector<int>> pos_simple_;
  std::vector<Weight> all_weight_;
  std::vector<int> simple_idx_;
  std::unordered_map<Weight, int, WeightHash> lookup_;
  // Inverse Cartan matrix as numerators over a common denominator.
  std::vector<std::vector<long long>> cartan_inv_num_;
  long long cartan_inv_den_ = 1;

  void populate();
};

using Elt = int;

class WeylGroup {
 public:
  static constexpr std::size_t kDefaultCap = 1'000'000;

  /// Enumerates W; throws ResourceError when |W| exceeds cap.
  explicit WeylGroup(std::shared_ptr<const RootSystem> rs, std::size_t cap = kDefaultCap);

  const RootSystem& roots() const { return *rs_; }
  std::shared_ptr<const RootSystem> root_system() const { return rs_; }
  int rank() const { return rs_->rank(); }
  int size() const { return static_cast<int>(length_.size()); }
  Elt identity() const { return 0; }
  Elt longest() const { return size() - 1; }
  int dim() const { return length_.back(); }

  int length(Elt w) const { return length_[w]; }
  /// Canonical (lexicographically least) reduced word, 0-based generators.
  const std::vector<std::uint8_t>& word(Elt w) const { return word_[w]; }
  Elt simple(int i) const { return right_[0 * rank() + i]; }
  Elt mul_simple_right(Elt w, int i) const { return right_[w * rank() + i]; }
  Elt mul_simple_left(int i, Elt w) const { return left_[w * rank() + i]; }
  Elt mul(Elt a, Elt b) const;
  Elt inverse(Elt a) const;
  /// Product of a word of 0-based generators (not necessarily reduced).
  Elt from_word(const std::vector<int>& word) const;
  /// True iff the word is reduced.
  bool is_reduced(const std::vector<int>& word) const;

  bool right_descent(Elt w, int i) const { return length(mul_simple_right(w, i)) < length(w); }
  bool left_descent(Elt w, int i) const { return length(mul_simple_left(i, w)) < length(w); }
  std::vector<int> right_descents(Elt w) const;
  std::vector<int> left_descents(Elt w) const;

  /// Bruhat order test u <= w.
  bool bruhat_leq(Elt u, Elt w) const;
  /// All x with u <= x <= w, in table order.
  std::vector<Elt> interval(Elt u, Elt w) const;

  /// Action on root indices and on weights.
  int apply_to_root(Elt w, int root_idx) const { return root_perm_[static_cast<std::size_t>(w) * rs_->num_roots() + root_idx]; }
  Weight apply_to_weight(Elt w, const Weight& lambda) const;
  /// Action matrix in weight coordinates (row-major rank x rank).
  std::vector<int> action_matrix(Elt w) const;
  /// Element with a given action on rho (w(rho) determines w).
  std::optional<Elt> from_rho_image(const Weight& w_rho) const;

  /// Reflection s_beta for a root index (either sign).
  Elt reflection(int root_idx) const { return reflection_[root_idx % rs_->num_positive()]; }
  /// Positive root beta with s_beta = r, or -1 if r is not a reflection.
  int reflection_root(Elt r) const;

  /// "s1 s2" style rendering; identity is "e".
  std::string format(Elt w) const;
  /// Accepts "s1 s2", "s1s2", "1 2", "e", "id"; throws UsageError otherwise.
  /// Words need not be reduced.
  Elt parse(std::string_view text) const;

 private:
  std::shared_ptr<const RootSystem> rs_;
  std::vector<int> length_;
  std::vector<std::vector<std::uint8_t>> word_;
  std::vector<Elt> right_, left_;
  std::vector<Weight> rho_image_;
  std::unordered_map<Weight, Elt, WeightHash> by_rho_;
  std::vector<int> root_perm_;
  std::vector<Elt> reflection_;
  std::unordered_map<Elt, int> reflection_root_;
};

}  // namespace kflag
