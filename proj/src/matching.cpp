#include "qsn/matching.h"

#include <algorithm>
#include <cassert>
#include <deque>
#include <stdexcept>

namespace qsn {
namespace {

// Maximum-weight perfect matching via the O(V^3) primal-dual blossom
// method on a dense graph. Vertices are 1-based internally; ids above n
// are contracted blossoms. Weights are doubled on input so every dual
// adjustment stays integral.
class Blossom {
 public:
  explicit Blossom(int n) : n_(n), cap_(2 * n + 1) {
    g_.assign(cap_, std::vector<Edge>(cap_));
    for (int u = 0; u < cap_; ++u)
      for (int v = 0; v < cap_; ++v) g_[u][v] = {u, v, 0};
    lab_.assign(cap_, 0);
    match_.assign(cap_, 0);
    slack_.assign(cap_, 0);
    st_.assign(cap_, 0);
    pa_.assign(cap_, 0);
    state_.assign(cap_, 0);
    vis_.assign(cap_, 0);
    flower_.assign(cap_, {});
    flower_from_.assign(cap_, std::vector<int>(n + 1, 0));
  }

  // u, v in [1, n]; w raw weight >= 0 (stored doubled).
  void set_edge(int u, int v, int64_t w) {
    g_[u][v].w = g_[v][u].w = 2 * w;
    present_[u][v] = present_[v][u] = true;
  }

  void init_present() { present_.assign(cap_, std::vector<char>(cap_, false)); }

  // Returns mates (1-based, 0 = unmatched).
  std::vector<int> solve() {
    std::fill(match_.begin(), match_.end(), 0);
    n_x_ = n_;
    for (int u = 0; u <= n_; ++u) {
      st_[u] = u;
      flower_[u].clear();
    }
    int64_t w_max = 0;
    for (int u = 1; u <= n_; ++u)
      for (int v = 1; v <= n_; ++v) {
        flower_from_[u][v] = (u == v ? u : 0);
        w_max = std::max(w_max, g_[u][v].w);
      }
    for (int u = 1; u <= n_; ++u) lab_[u] = w_max;
    while (augment_round()) {
    }
    return match_;
  }

 private:
  struct Edge {
    int u, v;
    int64_t w;
  };

  int n_, cap_, n_x_ = 0;
  std::vector<std::vector<Edge>> g_;
  std::vector<std::vector<char>> present_;
  std::vector<int64_t> lab_;
  std::vector<int> match_, slack_, st_, pa_, state_, vis_;
  std::vector<std::vector<int>> flower_;
  std::vector<std::vector<int>> flower_from_;
  std::deque<int> queue_;
  int timestamp_ = 0;

  int64_t e_delta(const Edge& e) const { return lab_[e.u] + lab_[e.v] - g_[e.u][e.v].w; }

  bool edge_present(int u, int v) const { return present_[u][v]; }

  void update_slack(int u, int x) {
    if (!slack_[x] || e_delta(g_[u][x]) < e_delta(g_[slack_[x]][x])) slack_[x] = u;
  }

  void set_slack(int x) {
    slack_[x] = 0;
    for (int u = 1; u <= n_; ++u)
      if (edge_present(u, x) && st_[u] != x && state_[st_[u]] == 0) update_slack(u, x);
  }

  void push_queue(int x) {
    if (x <= n_) {
      queue_.push_back(x);
      return;
    }
    for (int sub : flower_[x]) push_queue(sub);
  }

  void set_st(int x, int b) {
    st_[x] = b;
    if (x > n_)
      for (int sub : flower_[x]) set_st(sub, b);
  }

  int get_pr(int b, int xr) {
    const int pr = static_cast<int>(std::find(flower_[b].begin(), flower_[b].end(), xr) - flower_[b].begin());
    if (pr % 2 == 1) {
      std::reverse(flower_[b].begin() + 1, flower_[b].end());
      return static_cast<int>(flower_[b].size()) - pr;
    }
    return pr;
  }

  void set_match(int u, int v) {
    match_[u] = g_[u][v].v;
    if (u <= n_) return;
    const Edge& e = g_[u][v];
    const int xr = flower_from_[u][e.u];
    const int pr = get_pr(u, xr);
    for (int i = 0; i < pr; ++i) set_match(flower_[u][i], flower_[u][i ^ 1]);
    set_match(xr, v);
    std::rotate(flower_[u].begin(), flower_[u].begin() + pr, flower_[u].end());
  }

  void augment(int u, int v) {
    for (;;) {
      const int xnv = st_[match_[u]];
      set_match(u, v);
      if (!xnv) return;
      set_match(xnv, st_[pa_[xnv]]);
      u = st_[pa_[xnv]];
      v = xnv;
    }
  }

  int get_lca(int u, int v) {
    for (++timestamp_; u || v; std::swap(u, v)) {
      if (u == 0) continue;
      if (vis_[u] == timestamp_) return u;
      vis_[u] = timestamp_;
      u = st_[match_[u]];
      if (u) u = st_[pa_[u]];
    }
    return 0;
  }

  void add_blossom(int u, int lca, int v) {
    int b = n_ + 1;
    while (b <= n_x_ && st_[b]) ++b;
    if (b > n_x_) ++n_x_;
    lab_[b] = 0;
    state_[b] = 0;
    match_[b] = match_[lca];
    flower_[b].clear();
    flower_[b].push_back(lca);
    for (int x = u, y; x != lca; x = st_[pa_[y]]) {
      flower_[b].push_back(x);
      flower_[b].push_back(y = st_[match_[x]]);
      push_queue(y);
    }
    std::reverse(flower_[b].begin() + 1, flower_[b].end());
    for (int x = v, y; x != lca; x = st_[pa_[y]]) {
      flower_[b].push_back(x);
      flower_[b].push_back(y = st_[match_[x]]);
      push_queue(y);
    }
    set_st(b, b);
    for (int x = 1; x <= n_x_; ++x) {
      g_[b][x].w = g_[x][b].w = 0;
      present_[b][x] = present_[x][b] = false;
    }
    for (int x = 1; x <= n_; ++x) flower_from_[b][x] = 0;
    for (int xs : flower_[b]) {
      for (int x = 1; x <= n_x_; ++x)
        if (!present_[b][x] || (edge_present(xs, x) && e_delta(g_[xs][x]) < e_delta(g_[b][x]))) {
          if (edge_present(xs, x)) {
            g_[b][x] = g_[xs][x];
            g_[x][b] = g_[x][xs];
            present_[b][x] = present_[x][b] = true;
          }
        }
      for (int x = 1; x <= n_; ++x)
        if (flower_from_[xs][x]) flower_from_[b][x] = xs;
    }
    set_slack(b);
  }

  void expand_blossom(int b) {
    for (int sub : flower_[b]) set_st(sub, sub);
    const int xr = flower_from_[b][g_[b][pa_[b]].u];
    const int pr = get_pr(b, xr);
    for (int i = 0; i < pr; i += 2) {
      const int xs = flower_[b][i];
      const int xns = flower_[b][i + 1];
      pa_[xs] = g_[xns][xs].u;
      state_[xs] = 1;
      state_[xns] = 0;
      slack_[xs] = 0;
      set_slack(xns);
      push_queue(xns);
    }
    state_[xr] = 1;
    pa_[xr] = pa_[b];
    for (size_t i = pr + 1; i < flower_[b].size(); ++i) {
      const int xs = flower_[b][static_cast<int>(i)];
      state_[xs] = -1;
      set_slack(xs);
    }
    st_[b] = 0;
  }

  bool on_found_edge(const Edge& e) {
    const int u = st_[e.u];
    const int v = st_[e.v];
    if (state_[v] == -1) {
      pa_[v] = e.u;
      state_[v] = 1;
      const int nu = st_[match_[v]];
      slack_[v] = slack_[nu] = 0;
      state_[nu] = 0;
      push_queue(nu);
    } else if (state_[v] == 0) {
      const int lca = get_lca(u, v);
      if (!lca) {
        augment(u, v);
        augment(v, u);
        return true;
      }
      add_blossom(u, lca, v);
    }
    return false;
  }

  bool augment_round() {
    std::fill(state_.begin(), state_.begin() + n_x_ + 1, -1);
    std::fill(slack_.begin(), slack_.begin() + n_x_ + 1, 0);
    queue_.clear();
    for (int x = 1; x <= n_x_; ++x)
      if (st_[x] == x && !match_[x]) {
        pa_[x] = 0;
        state_[x] = 0;
        push_queue(x);
      }
    if (queue_.empty()) return false;
    for (;;) {
      while (!queue_.empty()) {
        const int u = queue_.front();
        queue_.pop_front();
        if (state_[st_[u]] == 1) continue;
        for (int v = 1; v <= n_; ++v)
          if (edge_present(u, v) && st_[u] != st_[v]) {
            if (e_delta(g_[u][v]) == 0) {
              if (on_found_edge(g_[u][v])) return true;
            } else {
              update_slack(u, st_[v]);
            }
          }
      }
      int64_t d = -1;
      for (int b = n_ + 1; b <= n_x_; ++b)
        if (st_[b] == b && state_[b] == 1) d = d < 0 ? lab_[b] / 2 : std::min(d, lab_[b] / 2);
      for (int x = 1; x <= n_x_; ++x)
        if (st_[x] == x && slack_[x]) {
          if (state_[x] == -1) {
            const int64_t cand = e_delta(g_[slack_[x]][x]);
            d = d < 0 ? cand : std::min(d, cand);
          } else if (state_[x] == 0) {
            const int64_t cand = e_delta(g_[slack_[x]][x]) / 2;
            d = d < 0 ? cand : std::min(d, cand);
          }
        }
      if (d < 0) return false;  // duals exhausted; no augmenting path exists
      for (int u = 1; u <= n_; ++u) {
        if (state_[st_[u]] == 0) {
          if (lab_[u] <= d) return false;  // lab would hit zero: no perfect matching
          lab_[u] -= d;
        } else if (state_[st_[u]] == 1) {
          lab_[u] += d;
        }
      }
      for (int b = n_ + 1; b <= n_x_; ++b)
        if (st_[b] == b) {
          if (state_[b] == 0)
            lab_[b] += 2 * d;
          else if (state_[b] == 1)
            lab_[b] -= 2 * d;
        }
      queue_.clear();
      for (int x = 1; x <= n_x_; ++x)
        if (st_[x] == x && slack_[x] && st_[slack_[x]] != x && e_delta(g_[slack_[x]][x]) == 0)
          if (on_found_edge(g_[slack_[x]][x])) return true;
      for (int b = n_ + 1; b <= n_x_; ++b)
        if (st_[b] == b && state_[b] == 1 && lab_[b] == 0) expand_blossom(b);
    }
  }
};

}  // namespace

std::vector<int> min_weight_perfect_matching(const std::vector<std::vector<int64_t>>& weights) {
  const int n = static_cast<int>(weights.size());
  if (n == 0) return {};
  if (n % 2 != 0) throw std::invalid_argument("perfect matching needs an even vertex count");
  int64_t w_max = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (weights[i][j] != kNoEdge) {
        if (weights[i][j] < 0) throw std::invalid_argument("negative edge weight");
        w_max = std::max(w_max, weights[i][j]);
      }
  // Minimize by maximizing (C - w) with C large enough that any matching
  // with more edges outweighs any with fewer; the maximum is then perfect
  // whenever a perfect matching exists, and minimizes the original sum.
  if (w_max > (int64_t{1} << 40)) throw std::invalid_argument("edge weights too large");
  const int64_t c = w_max * (n / 2 + 1) + 1;
  Blossom blossom(n);
  blossom.init_present();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (weights[i][j] != kNoEdge) blossom.set_edge(i + 1, j + 1, c - weights[i][j]);
  const std::vector<int> internal = blossom.solve();
  std::vector<int> mate(n, -1);
  for (int i = 0; i < n; ++i)
    if (internal[i + 1] > 0) mate[i] = internal[i + 1] - 1;
  for (int i = 0; i < n; ++i)
    if (mate[i] < 0 || mate[mate[i]] != i)
      throw std::invalid_argument("no perfect matching exists over the given edges");
  return mate;
}

int64_t matching_weight(const std::vector<int>& mate, const std::vector<std::vector<int64_t>>& weights) {
  int64_t total = 0;
  for (size_t i = 0; i < mate.size(); ++i)
    if (mate[i] >= 0 && static_cast<size_t>(mate[i]) > i) total += weights[i][mate[i]];
  return total;
}

}  // namespace qsn
