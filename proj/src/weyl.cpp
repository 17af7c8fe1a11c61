#include "kflag/weyl.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "kflag/errors.hpp"

namespace kflag {

namespace {

using Matrix = std::vector<std::vector<int>>;

Matrix chain_cartan(int n) {
  Matrix a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  for (int i = 0; i + 1 < n; ++i) a[i][i + 1] = a[i + 1][i] = -1;
  return a;
}

Matrix cartan_for(char type, int n) {
  auto bad = [&] {
    std::string msg = "invalid root system (" + std::string(1, type) + ", " + std::to_string(n) + ")";
    if (type == 'D' && n == 3) msg += "; D3 is isomorphic to A3, use (A, 3)";
    return ConfigError(msg);
  };
  if (n < 1 || n > kMaxRank) throw bad();
  switch (type) {
    case 'A':
      return chain_cartan(n);
    case 'B': {
      if (n < 2) throw bad();
      Matrix a = chain_cartan(n);
      a[n - 1][n - 2] = -2;
      return a;
    }
    case 'C': {
      if (n < 2) throw bad();
      Matrix a = chain_cartan(n);
      a[n - 2][n - 1] = -2;
      return a;
    }
    case 'D': {
      if (n < 4) throw bad();
      Matrix a = chain_cartan(n);
      a[n - 2][n - 1] = a[n - 1][n - 2] = 0;
      a[n - 3][n - 1] = a[n - 1][n - 3] = -1;
      return a;
    }
    case 'E': {
      if (n < 6 || n > 8) throw bad();
      Matrix a(n, std::vector<int>(n, 0));
      for (int i = 0; i < n; ++i) a[i][i] = 2;
      auto link = [&](int i, int j) { a[i - 1][j - 1] = a[j - 1][i - 1] = -1; };
      link(1, 3);
      link(2, 4);
      for (int i = 3; i < n; ++i) link(i, i + 1);
      return a;
    }
    case 'F': {
      if (n != 4) throw bad();
      Matrix a = chain_cartan(4);
      a[2][1] = -2;
      return a;
    }
    case 'G': {
      if (n != 2) throw bad();
      return {{2, -3}, {-1, 2}};
    }
    default:
      throw bad();
  }
}

unsigned long long weyl_order(char type, int n) {
  auto fact = [](int k) {
    unsigned long long f = 1;
    for (int i = 2; i <= k; ++i) f *= static_cast<unsigned long long>(i);
    return f;
  };
  switch (type) {
    case 'A': return fact(n + 1);
    case 'B':
    case 'C': return (1ull << n) * fact(n);
    case 'D': return (1ull << (n - 1)) * fact(n);
    case 'E': return n == 6 ? 51840ull : n == 7 ? 2903040ull : 696729600ull;
    case 'F': return 1152;
    case 'G': return 12;
    default: return 0;
  }
}

}  // namespace

std::shared_ptr<const RootSystem> RootSystem::build(char type, int rank) {
  type = static_cast<char>(std::toupper(static_cast<unsigned char>(type)));
  auto rs = std::make_shared<RootSystem>();
  rs->type_ = type;
  rs->rank_ = rank;
  rs->cartan_ = cartan_for(type, rank);
  rs->populate();
  return rs;
}

void RootSystem::populate() {
  const int n = rank_;
  struct R {
    Weight w;
    std::vector<int> s;
  };
  std::vector<R> roots;
  std::unordered_map<Weight, int, WeightHash> seen;
  std::deque<int> queue;
  for (int j = 0; j < n; ++j) {
    R r{Weight{}, std::vector<int>(n, 0)};
    for (int i = 0; i < n; ++i) r.w[i] = cartan_[i][j];
    r.s[j] = 1;
    seen.emplace(r.w, static_cast<int>(roots.size()));
    queue.push_back(static_cast<int>(roots.size()));
    roots.push_back(std::move(r));
  }
  while (!queue.empty()) {
    R cur = roots[queue.front()];
    queue.pop_front();
    for (int j = 0; j < n; ++j) {
      int c = cur.w[j];
      if (c >= 0) continue;  // s_j raises the height iff <beta, alpha_j^vee> < 0
      R nxt = cur;
      for (int i = 0; i < n; ++i) nxt.w[i] -= c * cartan_[i][j];
      nxt.s[j] -= c;
      if (seen.emplace(nxt.w, static_cast<int>(roots.size())).second) {
        queue.push_back(static_cast<int>(roots.size()));
        roots.push_back(std::move(nxt));
      }
    }
  }
  std::sort(roots.begin(), roots.end(), [](const R& a, const R& b) {
    int ha = std::accumulate(a.s.begin(), a.s.end(), 0), hb = std::accumulate(b.s.begin(), b.s.end(), 0);
    if (ha != hb) return ha < hb;
    return a.s > b.s;
  });
  const int np = static_cast<int>(roots.size());
  for (const auto& r : roots) {
    pos_weight_.push_back(r.w);
    pos_simple_.push_back(r.s);
  }
  all_weight_ = pos_weight_;
  for (const auto& w : pos_weight_) {
    Weight m{};
    for (int i = 0; i < n; ++i) m[i] = -w[i];
    all_weight_.push_back(m);
  }
  for (int k = 0; k < 2 * np; ++k) lookup_.emplace(all_weight_[k], k);
  simple_idx_.resize(n);
  for (int j = 0; j < n; ++j) {
    Weight w{};
    for (int i = 0; i < n; ++i) w[i] = cartan_[i][j];
    simple_idx_[j] = lookup_.at(w);
  }

  // Inverse Cartan matrix by exact Gauss-Jordan elimination.
  using Q = boost::multiprecision::cpp_rational;
  std::vector<std::vector<Q>> m(n, std::vector<Q>(2 * n, Q(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = cartan_[i][j];
    m[i][n + i] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (m[piv][col] == 0) ++piv;
    std::swap(m[piv], m[col]);
    Q p = m[col][col];
    for (auto& v : m[col]) v /= p;
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Q f = m[r][col];
      for (int c = 0; c < 2 * n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  boost::multiprecision::cpp_int den = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(m[i][n + j]));
  cartan_inv_den_ = static_cast<long long>(den);
  cartan_inv_num_.assign(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cartan_inv_num_[i][j] = static_cast<long long>(boost::multiprecision::numerator(m[i][n + j] * Q(den)));
}

std::vector<int> RootSystem::root_simple_coords(int idx) const {
  if (is_positive(idx)) return pos_simple_[idx];
  std::vector<int> s = pos_simple_[idx - num_positive()];
  for (int& v : s) v = -v;
  return s;
}

int RootSystem::find_root(const Weight& w) const {
  auto it = lookup_.find(w);
  return it == lookup_.end() ? -1 : it->second;
}

int RootSystem::height(int idx) const {
  auto s = root_simple_coords(idx);
  return std::accumulate(s.begin(), s.end(), 0);
}

Weight RootSystem::rho() const {
  Weight r{};
  for (int i = 0; i < rank_; ++i) r[i] = 1;
  return r;
}

std::optional<std::vector<int>> RootSystem::to_root_coordinates(const Weight& w) const {
  std::vector<int> out(rank_);
  for (int i = 0; i < rank_; ++i) {
    long long acc = 0;
    for (int j = 0; j < rank_; ++j) acc += cartan_inv_num_[i][j] * w[j];
    if (acc % cartan_inv_den_ != 0) return std::nullopt;
    out[i] = static_cast<int>(acc / cartan_inv_den_);
  }
  return out;
}

// --- Weyl group ---------------------------------------------------------------

namespace {

Weight reflect(const RootSystem& rs, int i, Weight mu) {
  const int c = mu[i];
  if (c != 0)
    for (int k = 0; k < rs.rank(); ++k) mu[k] -= c * rs.cartan(k, i);
  return mu;
}

}  // namespace

WeylGroup::WeylGroup(std::shared_ptr<const RootSystem> rs, std::size_t cap) : rs_(std::move(rs)) {
  const RootSystem& R = *rs_;
  const int n = R.rank();
  const unsigned long long order = weyl_order(R.type(), n);
  if (order > cap)
    throw ResourceError("Weyl group of " + R.label() + " has " + std::to_string(order) +
                        " elements, above the cap of " + std::to_string(cap));

  // Breadth-first search over the orbit of rho under left multiplication.
  std::vector<Weight> img{R.rho()};
  std::vector<int> len{0};
  std::unordered_map<Weight, int, WeightHash> idx{{R.rho(), 0}};
  std::vector<int> left_raw;
  for (std::size_t head = 0; head < img.size(); ++head) {
    for (int i = 0; i < n; ++i) {
      Weight nb = reflect(R, i, img[head]);
      auto [it, inserted] = idx.emplace(nb, static_cast<int>(img.size()));
      if (inserted) {
        img.push_back(nb);
        len.push_back(len[head] + 1);
      }
      left_raw.push_back(it->second);
    }
  }
  const int sz = static_cast<int>(img.size());

  // Canonical words: the first letter of the lex-least reduced word is the
  // smallest left descent.
  std::vector<std::vector<std::uint8_t>> words(sz);
  for (int w = 1; w < sz; ++w) {  // BFS order is by length
    for (int j = 0; j < n; ++j) {
      int v = left_raw[w * n + j];
      if (len[v] < len[w]) {
        words[w].push_back(static_cast<std::uint8_t>(j));
        words[w].insert(words[w].end(), words[v].begin(), words[v].end());
        break;
      }
    }
  }

  std::vector<int> order_idx(sz);
  std::iota(order_idx.begin(), order_idx.end(), 0);
  std::sort(order_idx.begin(), order_idx.end(), [&](int a, int b) {
    if (len[a] != len[b]) return len[a] < len[b];
    return words[a] < words[b];
  });
  std::vector<int> pos(sz);
  for (int k = 0; k < sz; ++k) pos[order_idx[k]] = k;

  length_.resize(sz);
  word_.resize(sz);
  rho_image_.resize(sz);
  left_.resize(static_cast<std::size_t>(sz) * n);
  for (int k = 0; k < sz; ++k) {
    int old = order_idx[k];
    length_[k] = len[old];
    word_[k] = std::move(words[old]);
    rho_image_[k] = img[old];
    for (int j = 0; j < n; ++j) left_[k * n + j] = pos[left_raw[old * n + j]];
  }
  for (int k = 0; k < sz; ++k) by_rho_.emplace(rho_image_[k], k);

  // Right multiplication: w s_i = (s_i w^{-1})^{-1}.
  std::vector<Elt> inv(sz);
  for (int w = 0; w < sz; ++w) {
    Elt x = 0;
    for (auto letter : word_[w]) x = left_[x * n + letter];
    inv[w] = x;
  }
  right_.resize(static_cast<std::size_t>(sz) * n);
  for (int w = 0; w < sz; ++w)
    for (int i = 0; i < n; ++i) right_[w * n + i] = inv[left_[inv[w] * n + i]];

  // Root permutations, built along w = s_j w'.
  const int nr = R.num_roots();
  std::vector<std::vector<int>> sperm(n, std::vector<int>(nr));
  for (int j = 0; j < n; ++j)
    for (int r = 0; r < nr; ++r) sperm[j][r] = R.find_root(reflect(R, j, R.root_weight(r)));
  root_perm_.resize(static_cast<std::size_t>(sz) * nr);
  for (int r = 0; r < nr; ++r) root_perm_[r] = r;
  for (int w = 1; w < sz; ++w) {
    int j = word_[w][0];
    Elt rest = left_[w * n + j];
    for (int r = 0; r < nr; ++r)
      root_perm_[static_cast<std::size_t>(w) * nr + r] = sperm[j][root_perm_[static_cast<std::size_t>(rest) * nr + r]];
  }

  // Reflections: beta = w(alpha_i) gives s_beta = w s_i w^{-1}.
  const int np = R.num_positive();
  reflection_.assign(np, -1);
  int found = 0;
  for (int w = 0; w < sz && found < np; ++w) {
    for (int i = 0; i < n; ++i) {
      int b = apply_to_root(w, R.simple_root(i));
      if (b < np && reflection_[b] < 0) {
        reflection_[b] = mul(mul_simple_right(w, i), inv[w]);
        ++found;
      }
    }
  }
  for (int b = 0; b < np; ++b) reflection_root_.emplace(reflection_[b], b);
}

Elt WeylGroup::mul(Elt a, Elt b) const {
  Elt x = a;
  for (auto letter : word_[b]) x = mul_simple_right(x, letter);
  return x;
}

Elt WeylGroup::inverse(Elt a) const {
  Elt x = 0;
  for (auto letter : word_[a]) x = mul_simple_left(letter, x);
  return x;
}

Elt WeylGroup::from_word(const std::vector<int>& word) const {
  Elt x = 0;
  for (int letter : word) {
    if (letter < 0 || letter >= rank()) throw UsageError("generator index out of range");
    x = mul_simple_right(x, letter);
  }
  return x;
}

bool WeylGroup::is_reduced(const std::vector<int>& word) const {
  return length(from_word(word)) == static_cast<int>(word.size());
}

std::vector<int> WeylGroup::right_descents(Elt w) const {
  std::vector<int> d;
  for (int i = 0; i < rank(); ++i)
    if (right_descent(w, i)) d.push_back(i);
  return d;
}

std::vector<int> WeylGroup::left_descents(Elt w) const {
  std::vector<int> d;
  for (int i = 0; i < rank(); ++i)
    if (left_descent(w, i)) d.push_back(i);
  return d;
}

bool WeylGroup::bruhat_leq(Elt u, Elt w) const {
  // Lifting property: for w s < w, u <= w iff min(u, us) <= w s.
  while (true) {
    if (length(u) > length(w)) return false;
    if (length(u) == length(w)) return u == w;
    if (u == 0) return true;
    int s = word_[w].back();
    w = mul_simple_right(w, s);
    if (right_descent(u, s)) u = mul_simple_right(u, s);
  }
}

std::vector<Elt> WeylGroup::interval(Elt u, Elt w) const {
  std::vector<Elt> out;
  for (Elt x = 0; x < size(); ++x)
    if (length(x) >= length(u) && length(x) <= length(w) && bruhat_leq(u, x) && bruhat_leq(x, w)) out.push_back(x);
  return out;
}

Weight WeylGroup::apply_to_weight(Elt w, const Weight& lambda) const {
  Weight mu = lambda;
  const auto& wd = word_[w];
  for (auto it = wd.rbegin(); it != wd.rend(); ++it) mu = reflect(*rs_, *it, mu);
  return mu;
}

std::vector<int> WeylGroup::action_matrix(Elt w) const {
  const int n = rank();
  std::vector<int> m(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    Weight e{};
    e[k] = 1;
    Weight col = apply_to_weight(w, e);
    for (int i = 0; i < n; ++i) m[i * n + k] = col[i];
  }
  return m;
}

std::optional<Elt> WeylGroup::from_rho_image(const Weight& w_rho) const {
  auto it = by_rho_.find(w_rho);
  if (it == by_rho_.end()) return std::nullopt;
  return it->second;
}

int WeylGroup::reflection_root(Elt r) const {
  auto it = reflection_root_.find(r);
  return it == reflection_root_.end() ? -1 : it->second;
}

std::string WeylGroup::format(Elt w) const {
  if (word_[w].empty()) return "e";
  std::string s;
  for (auto letter : word_[w]) {
    if (!s.empty()) s += ' ';
    s += 's' + std::to_string(letter + 1);
  }
  return s;
}

Elt WeylGroup::parse(std::string_view text) const {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) || (!t.empty() && t.back() != ' ')) t += std::isspace(static_cast<unsigned char>(c)) ? ' ' : c;
  while (!t.empty() && t.back() == ' ') t.pop_back();
  if (t.empty() || t == "e" || t == "id") return 0;
  std::vector<int> word;
  std::size_t i = 0;
  while (i < t.size()) {
    char c = t[i];
    if (c == ' ' || c == 's' || c == '*' || c == ',') {
      ++i;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw UsageError("cannot parse Weyl group word '" + std::string(text) + "'");
    std::size_t j = i;
    while (j < t.size() && std::isdigit(static_cast<unsigned char>(t[j]))) ++j;
    int g = std::stoi(t.substr(i, j - i));
    if (g < 1 || g > rank())
      throw UsageError("generator s" + std::to_string(g) + " out of range for " + rs_->label());
    word.push_back(g - 1);
    i = j;
  }
  return from_word(word);
}

}  // namespace kflag
