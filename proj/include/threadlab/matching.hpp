#pragma once

// General-graph perfect matching.
//
// One primal-dual blossom solver (Edmonds, in the O(n^3) formulation with
// explicit blossom bookkeeping) computes a maximum-weight matching among the
// maximum-cardinality ones. Minimum-weight and plain feasibility are derived
// from it by negating or zeroing weights. All arithmetic is integral: weights
// are shifted positive and doubled, so every dual variable stays an integer.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace threadlab {

using Weight = std::int64_t;

struct WeightedGraph {
  struct Link {
    int id;
    int u;
    int v;
    Weight weight;
  };

  int node_count = 0;
  std::vector<Link> links;

  explicit WeightedGraph(int nodes = 0) : node_count(nodes) {}

  int add_node() { return node_count++; }
  int add_link(int u, int v, Weight w) {
    if (u == v) throw std::invalid_argument("matching graph link is a self-loop");
    if (u < 0 || v < 0 || u >= node_count || v >= node_count) throw std::out_of_range("matching graph node");
    links.push_back({static_cast<int>(links.size()), u, v, w});
    return links.back().id;
  }
};

struct Matching {
  std::vector<int> links;  // link ids, ascending
  Weight weight = 0;
};

enum class Objective { Min, Max };

namespace detail {

/// Maximum-weight maximum-cardinality matching on a simple graph with
/// positive even integer weights. Returns mate[v] (or -1).
class BlossomMatcher {
 public:
  struct Edge {
    int i, j;
    Weight w;
  };

  BlossomMatcher(int nvertex, std::vector<Edge> edges) : n_(nvertex), edges_(std::move(edges)) {}

  std::vector<int> solve() {
    const int nedge = static_cast<int>(edges_.size());
    std::vector<int> result(static_cast<std::size_t>(n_), -1);
    if (nedge == 0) return result;
    Weight maxweight = 0;
    for (const Edge& e : edges_) maxweight = std::max(maxweight, e.w);

    endpoint_.resize(2 * static_cast<std::size_t>(nedge));
    for (int p = 0; p < 2 * nedge; ++p) endpoint_[p] = (p % 2 == 0) ? edges_[p / 2].i : edges_[p / 2].j;
    neighbend_.assign(static_cast<std::size_t>(n_), {});
    for (int k = 0; k < nedge; ++k) {
      neighbend_[edges_[k].i].push_back(2 * k + 1);
      neighbend_[edges_[k].j].push_back(2 * k);
    }
    const std::size_t n2 = 2 * static_cast<std::size_t>(n_);
    mate_.assign(static_cast<std::size_t>(n_), -1);
    label_.assign(n2, 0);
    labelend_.assign(n2, -1);
    inblossom_.resize(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) inblossom_[v] = v;
    blossomparent_.assign(n2, -1);
    blossomchilds_.assign(n2, {});
    blossombase_.assign(n2, -1);
    for (int v = 0; v < n_; ++v) blossombase_[v] = v;
    blossomendps_.assign(n2, {});
    bestedge_.assign(n2, -1);
    blossombestedges_.assign(n2, {});
    hasbestedges_.assign(n2, false);
    unusedblossoms_.clear();
    for (int b = n_; b < 2 * n_; ++b) unusedblossoms_.push_back(b);
    dualvar_.assign(n2, 0);
    for (int v = 0; v < n_; ++v) dualvar_[v] = maxweight;
    allowedge_.assign(static_cast<std::size_t>(nedge), false);
    queue_.clear();

    for (int stage = 0; stage < n_; ++stage) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(bestedge_.begin(), bestedge_.end(), -1);
      for (int b = n_; b < 2 * n_; ++b) {
        blossombestedges_[b].clear();
        hasbestedges_[b] = false;
      }
      std::fill(allowedge_.begin(), allowedge_.end(), false);
      queue_.clear();
      for (int v = 0; v < n_; ++v)
        if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);

      bool augmented = false;
      while (true) {
        while (!queue_.empty() && !augmented) {
          const int v = queue_.back();
          queue_.pop_back();
          assert(label_[inblossom_[v]] == 1);
          for (int p : neighbend_[v]) {
            const int k = p / 2;
            const int w = endpoint_[p];
            if (inblossom_[v] == inblossom_[w]) continue;
            Weight kslack = 0;
            if (!allowedge_[k]) {
              kslack = slack(k);
              if (kslack <= 0) allowedge_[k] = true;
            }
            if (allowedge_[k]) {
              if (label_[inblossom_[w]] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label_[inblossom_[w]] == 1) {
                const int base = scan_blossom(v, w);
                if (base >= 0) {
                  add_blossom(base, k);
                } else {
                  augment_matching(k);
                  augmented = true;
                  break;
                }
              } else if (label_[w] == 0) {
                label_[w] = 2;
                labelend_[w] = p ^ 1;
              }
            } else if (label_[inblossom_[w]] == 1) {
              const int b = inblossom_[v];
              if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
            } else if (label_[w] == 0) {
              if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
            }
          }
        }
        if (augmented) break;

        // Dual update. Max-cardinality mode: no vertex-dual delta unless nothing else applies.
        int deltatype = -1;
        Weight delta = 0;
        int deltaedge = -1;
        int deltablossom = -1;
        for (int v = 0; v < n_; ++v) {
          if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
            const Weight d = slack(bestedge_[v]);
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[v];
            }
          }
        }
        for (int b = 0; b < 2 * n_; ++b) {
          if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
            const Weight kslack = slack(bestedge_[b]);
            assert(kslack % 2 == 0);
            const Weight d = kslack / 2;
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[b];
            }
          }
        }
        for (int b = n_; b < 2 * n_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
              (deltatype == -1 || dualvar_[b] < delta)) {
            delta = dualvar_[b];
            deltatype = 4;
            deltablossom = b;
          }
        }
        if (deltatype == -1) {
          deltatype = 1;
          Weight mn = dualvar_[0];
          for (int v = 1; v < n_; ++v) mn = std::min(mn, dualvar_[v]);
          delta = std::max<Weight>(0, mn);
        }
        for (int v = 0; v < n_; ++v) {
          if (label_[inblossom_[v]] == 1)
            dualvar_[v] -= delta;
          else if (label_[inblossom_[v]] == 2)
            dualvar_[v] += delta;
        }
        for (int b = n_; b < 2 * n_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
            if (label_[b] == 1)
              dualvar_[b] += delta;
            else if (label_[b] == 2)
              dualvar_[b] -= delta;
          }
        }
        if (deltatype == 1) {
          break;
        } else if (deltatype == 2) {
          allowedge_[deltaedge] = true;
          int i = edges_[deltaedge].i;
          int j = edges_[deltaedge].j;
          if (label_[inblossom_[i]] == 0) std::swap(i, j);
          assert(label_[inblossom_[i]] == 1);
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allowedge_[deltaedge] = true;
          const int i = edges_[deltaedge].i;
          assert(label_[inblossom_[i]] == 1);
          queue_.push_back(i);
        } else {
          expand_blossom(deltablossom, false);
        }
      }
      if (!augmented) break;
      for (int b = n_; b < 2 * n_; ++b) {
        if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0)
          expand_blossom(b, true);
      }
    }
    for (int v = 0; v < n_; ++v)
      if (mate_[v] >= 0) result[v] = endpoint_[mate_[v]];
    return result;
  }

 private:
  Weight slack(int k) const { return dualvar_[edges_[k].i] + dualvar_[edges_[k].j] - 2 * edges_[k].w; }

  void blossom_leaves(int b, std::vector<int>& out) const {
    if (b < n_) {
      out.push_back(b);
      return;
    }
    for (int t : blossomchilds_[b]) blossom_leaves(t, out);
  }
  std::vector<int> leaves(int b) const {
    std::vector<int> out;
    blossom_leaves(b, out);
    return out;
  }

  void assign_label(int w, int t, int p) {
    const int b = inblossom_[w];
    assert(label_[w] == 0 && label_[b] == 0);
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
      for (int v : leaves(b)) queue_.push_back(v);
    } else if (t == 2) {
      const int base = blossombase_[b];
      assert(mate_[base] >= 0);
      assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
  }

  int scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
      int b = inblossom_[v];
      if (label_[b] & 4) {
        base = blossombase_[b];
        break;
      }
      assert(label_[b] == 1);
      path.push_back(b);
      label_[b] = 5;
      if (labelend_[b] == -1) {
        v = -1;
      } else {
        v = endpoint_[labelend_[b]];
        b = inblossom_[v];
        assert(label_[b] == 2);
        v = endpoint_[labelend_[b]];
      }
      if (w != -1) std::swap(v, w);
    }
    for (int b : path) label_[b] = 1;
    return base;
  }

  void add_blossom(int base, int k) {
    int v = edges_[k].i;
    int w = edges_[k].j;
    const int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];
    const int b = unusedblossoms_.back();
    unusedblossoms_.pop_back();
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;
    std::vector<int>& path = blossomchilds_[b];
    std::vector<int>& endps = blossomendps_[b];
    path.clear();
    endps.clear();
    while (bv != bb) {
      blossomparent_[bv] = b;
      path.push_back(bv);
      endps.push_back(labelend_[bv]);
      v = endpoint_[labelend_[bv]];
      bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
      blossomparent_[bw] = b;
      path.push_back(bw);
      endps.push_back(labelend_[bw] ^ 1);
      w = endpoint_[labelend_[bw]];
      bw = inblossom_[w];
    }
    assert(label_[bb] == 1);
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dualvar_[b] = 0;
    for (int leaf : leaves(b)) {
      if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
      inblossom_[leaf] = b;
    }
    std::vector<int> bestedgeto(2 * static_cast<std::size_t>(n_), -1);
    for (int child : path) {
      std::vector<std::vector<int>> nblists;
      if (!hasbestedges_[child]) {
        for (int leaf : leaves(child)) {
          std::vector<int> lst;
          for (int p : neighbend_[leaf]) lst.push_back(p / 2);
          nblists.push_back(std::move(lst));
        }
      } else {
        nblists.push_back(blossombestedges_[child]);
      }
      for (const auto& nblist : nblists) {
        for (int kk : nblist) {
          int i = edges_[kk].i;
          int j = edges_[kk].j;
          if (inblossom_[j] == b) std::swap(i, j);
          const int bj = inblossom_[j];
          if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj])))
            bestedgeto[bj] = kk;
        }
      }
      blossombestedges_[child].clear();
      hasbestedges_[child] = false;
      bestedge_[child] = -1;
    }
    blossombestedges_[b].clear();
    for (int kk : bestedgeto)
      if (kk != -1) blossombestedges_[b].push_back(kk);
    hasbestedges_[b] = true;
    bestedge_[b] = -1;
    for (int kk : blossombestedges_[b])
      if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
  }

  void expand_blossom(int b, bool endstage) {
    const std::vector<int> childs = blossomchilds_[b];
    for (int s : childs) {
      blossomparent_[s] = -1;
      if (s < n_) {
        inblossom_[s] = s;
      } else if (endstage && dualvar_[s] == 0) {
        expand_blossom(s, endstage);
      } else {
        for (int leaf : leaves(s)) inblossom_[leaf] = s;
      }
    }
    if (!endstage && label_[b] == 2) {
      const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
      const int len = static_cast<int>(blossomchilds_[b].size());
      int j = static_cast<int>(std::find(blossomchilds_[b].begin(), blossomchilds_[b].end(), entrychild) -
                               blossomchilds_[b].begin());
      int jstep;
      int endptrick;
      if (j & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      auto child_at = [&](int idx) { return blossomchilds_[b][((idx % len) + len) % len]; };
      auto endp_at = [&](int idx) { return blossomendps_[b][((idx % len) + len) % len]; };
      int p = labelend_[b];
      while (j != 0) {
        label_[endpoint_[p ^ 1]] = 0;
        label_[endpoint_[endp_at(j - endptrick) ^ endptrick ^ 1]] = 0;
        assign_label(endpoint_[p ^ 1], 2, p);
        allowedge_[endp_at(j - endptrick) / 2] = true;
        j += jstep;
        p = endp_at(j - endptrick) ^ endptrick;
        allowedge_[p / 2] = true;
        j += jstep;
      }
      int bv = child_at(j);
      label_[endpoint_[p ^ 1]] = label_[bv] = 2;
      labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
      bestedge_[bv] = -1;
      j += jstep;
      while (child_at(j) != entrychild) {
        bv = child_at(j);
        if (label_[bv] == 1) {
          j += jstep;
          continue;
        }
        int found = -1;
        for (int leaf : leaves(bv)) {
          if (label_[leaf] != 0) {
            found = leaf;
            break;
          }
        }
        if (found >= 0) {
          assert(label_[found] == 2);
          assert(inblossom_[found] == bv);
          label_[found] = 0;
          label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
          assign_label(found, 2, labelend_[found]);
        }
        j += jstep;
      }
    }
    label_[b] = labelend_[b] = -1;
    blossomchilds_[b].clear();
    blossomendps_[b].clear();
    blossombase_[b] = -1;
    blossombestedges_[b].clear();
    hasbestedges_[b] = false;
    bestedge_[b] = -1;
    unusedblossoms_.push_back(b);
  }

  void augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[t] != b) t = blossomparent_[t];
    if (t >= n_) augment_blossom(t, v);
    const int len = static_cast<int>(blossomchilds_[b].size());
    const int i = static_cast<int>(std::find(blossomchilds_[b].begin(), blossomchilds_[b].end(), t) -
                                   blossomchilds_[b].begin());
    int j = i;
    int jstep;
    int endptrick;
    if (i & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    auto child_at = [&](int idx) { return blossomchilds_[b][((idx % len) + len) % len]; };
    auto endp_at = [&](int idx) { return blossomendps_[b][((idx % len) + len) % len]; };
    while (j != 0) {
      j += jstep;
      t = child_at(j);
      const int p = endp_at(j - endptrick) ^ endptrick;
      if (t >= n_) augment_blossom(t, endpoint_[p]);
      j += jstep;
      t = child_at(j);
      if (t >= n_) augment_blossom(t, endpoint_[p ^ 1]);
      mate_[endpoint_[p]] = p ^ 1;
      mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(blossomchilds_[b].begin(), blossomchilds_[b].begin() + i, blossomchilds_[b].end());
    std::rotate(blossomendps_[b].begin(), blossomendps_[b].begin() + i, blossomendps_[b].end());
    blossombase_[b] = blossombase_[blossomchilds_[b][0]];
    assert(blossombase_[b] == v);
  }

  void augment_matching(int k) {
    const int v = edges_[k].i;
    const int w = edges_[k].j;
    const int starts[2][2] = {{v, 2 * k + 1}, {w, 2 * k}};
    for (const auto& sp : starts) {
      int s = sp[0];
      int p = sp[1];
      while (true) {
        const int bs = inblossom_[s];
        assert(label_[bs] == 1);
        if (bs >= n_) augment_blossom(bs, s);
        mate_[s] = p;
        if (labelend_[bs] == -1) break;
        const int t = endpoint_[labelend_[bs]];
        const int bt = inblossom_[t];
        assert(label_[bt] == 2);
        s = endpoint_[labelend_[bt]];
        const int j = endpoint_[labelend_[bt] ^ 1];
        assert(blossombase_[bt] == t);
        if (bt >= n_) augment_blossom(bt, j);
        mate_[j] = labelend_[bt];
        p = labelend_[bt] ^ 1;
      }
    }
  }

  int n_;
  std::vector<Edge> edges_;
  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_;
  std::vector<int> label_;
  std::vector<int> labelend_;
  std::vector<int> inblossom_;
  std::vector<int> blossomparent_;
  std::vector<std::vector<int>> blossomchilds_;
  std::vector<int> blossombase_;
  std::vector<std::vector<int>> blossomendps_;
  std::vector<int> bestedge_;
  std::vector<std::vector<int>> blossombestedges_;
  std::vector<bool> hasbestedges_;
  std::vector<int> unusedblossoms_;
  std::vector<Weight> dualvar_;
  std::vector<bool> allowedge_;
  std::vector<int> queue_;
};

inline void check_matching(const WeightedGraph& g, const Matching& m) {
  std::vector<char> used(static_cast<std::size_t>(g.node_count), 0);
  for (int id : m.links) {
    const auto& l = g.links[id];
    if (used[l.u] || used[l.v]) throw std::logic_error("matching links share a node");
    used[l.u] = used[l.v] = 1;
  }
}

inline std::optional<Matching> optimal_perfect_matching(const WeightedGraph& g, Objective objective) {
  if (g.node_count % 2 != 0) return std::nullopt;
  if (g.node_count == 0) return Matching{};
  // Keep the best link per node pair; parallel links never matter beyond that.
  std::vector<int> best;
  {
    std::vector<std::vector<int>> by_pair(static_cast<std::size_t>(g.node_count));
    std::vector<std::pair<std::pair<int, int>, int>> keyed;
    keyed.reserve(g.links.size());
    for (const auto& l : g.links) keyed.push_back({{std::min(l.u, l.v), std::max(l.u, l.v)}, l.id});
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 0; i < keyed.size();) {
      std::size_t j = i;
      int pick = keyed[i].second;
      while (j < keyed.size() && keyed[j].first == keyed[i].first) {
        const Weight wj = g.links[keyed[j].second].weight;
        const Weight wp = g.links[pick].weight;
        if (objective == Objective::Max ? wj > wp : wj < wp) pick = keyed[j].second;
        ++j;
      }
      best.push_back(pick);
      i = j;
    }
  }
  if (best.empty()) return std::nullopt;
  Weight lo = 0;
  Weight hi = 0;
  bool first = true;
  for (int id : best) {
    const Weight w = objective == Objective::Max ? g.links[id].weight : -g.links[id].weight;
    lo = first ? w : std::min(lo, w);
    hi = first ? w : std::max(hi, w);
    first = false;
  }
  std::vector<BlossomMatcher::Edge> edges;
  edges.reserve(best.size());
  for (int id : best) {
    const Weight w = objective == Objective::Max ? g.links[id].weight : -g.links[id].weight;
    // Shifting every weight by a constant leaves the optimal perfect matchings unchanged.
    edges.push_back({g.links[id].u, g.links[id].v, 2 * (w - lo + 1)});
  }
  BlossomMatcher solver(g.node_count, std::move(edges));
  const std::vector<int> mate = solver.solve();
  Matching m;
  for (std::size_t k = 0; k < best.size(); ++k) {
    const auto& l = g.links[best[k]];
    if (mate[l.u] == l.v) m.links.push_back(l.id);
  }
  if (static_cast<int>(m.links.size()) * 2 != g.node_count) return std::nullopt;
  std::sort(m.links.begin(), m.links.end());
  for (int id : m.links) m.weight += g.links[id].weight;
  check_matching(g, m);
  return m;
}

}  // namespace detail

inline std::optional<Matching> max_weight_perfect_matching(const WeightedGraph& g) {
  return detail::optimal_perfect_matching(g, Objective::Max);
}

inline std::optional<Matching> min_weight_perfect_matching(const WeightedGraph& g) {
  return detail::optimal_perfect_matching(g, Objective::Min);
}

/// Some perfect matching, if one exists. Weights are ignored.
inline std::optional<Matching> perfect_matching(const WeightedGraph& g) {
  WeightedGraph flat(g.node_count);
  for (const auto& l : g.links) flat.add_link(l.u, l.v, 0);
  auto m = detail::optimal_perfect_matching(flat, Objective::Max);
  if (!m) return std::nullopt;
  m->weight = 0;
  for (int id : m->links) m->weight += g.links[id].weight;
  return m;
}

/// Exhaustive optimum; intended as a test oracle for at most 20 nodes.
inline std::optional<Matching> brute_force_perfect_matching(const WeightedGraph& g, Objective objective) {
  if (g.node_count > 20) throw std::invalid_argument("brute_force_perfect_matching: more than 20 nodes");
  if (g.node_count % 2 != 0) return std::nullopt;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.node_count));
  for (const auto& l : g.links) {
    adj[l.u].push_back(l.id);
    adj[l.v].push_back(l.id);
  }
  std::vector<char> used(static_cast<std::size_t>(g.node_count), 0);
  std::vector<int> chosen;
  std::optional<Matching> best;
  std::function<void(Weight)> rec = [&](Weight w) {
    int first = -1;
    for (int v = 0; v < g.node_count; ++v)
      if (!used[v]) {
        first = v;
        break;
      }
    if (first < 0) {
      if (!best || (objective == Objective::Max ? w > best->weight : w < best->weight)) {
        best = Matching{chosen, w};
        std::sort(best->links.begin(), best->links.end());
      }
      return;
    }
    used[first] = 1;
    for (int id : adj[first]) {
      const auto& l = g.links[id];
      const int other = l.u == first ? l.v : l.u;
      if (used[other]) continue;
      used[other] = 1;
      chosen.push_back(id);
      rec(w + l.weight);
      chosen.pop_back();
      used[other] = 0;
    }
    used[first] = 0;
  };
  rec(0);
  return best;
}

}  // namespace threadlab
