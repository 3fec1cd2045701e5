#include "tetracode/matching.hpp"

#include <algorithm>
#include <stdexcept>

#include "tetracode/lattice.hpp"

namespace tetracode {

namespace {

// Primal-dual blossom algorithm after Galil's exposition, in the layout of
// the widely used mwmatching reference implementation. Edge endpoints are
// numbered 2k and 2k+1 for edge k; blossoms get ids n..2n-1. Weights are
// doubled internally so all dual updates stay integral.
class Blossom {
 public:
  Blossom(int n, const std::vector<WeightedEdge>& edges, bool max_cardinality)
      : n_(n), max_card_(max_cardinality), edges_(edges) {
    for (auto& e : edges_) e.weight *= 2;
    const auto m = edges_.size();
    std::int64_t max_w = 0;
    for (const auto& e : edges_) max_w = std::max(max_w, e.weight);
    endpoint_.resize(2 * m);
    neighbend_.resize(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < m; ++k) {
      endpoint_[2 * k] = edges_[k].u;
      endpoint_[2 * k + 1] = edges_[k].v;
      neighbend_[static_cast<std::size_t>(edges_[k].u)].push_back(static_cast<int>(2 * k + 1));
      neighbend_[static_cast<std::size_t>(edges_[k].v)].push_back(static_cast<int>(2 * k));
    }
    const auto n2 = static_cast<std::size_t>(2 * n);
    mate_.assign(static_cast<std::size_t>(n), -1);
    label_.assign(n2, 0);
    labelend_.assign(n2, -1);
    inblossom_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) inblossom_[static_cast<std::size_t>(i)] = i;
    blossomparent_.assign(n2, -1);
    blossomchilds_.assign(n2, {});
    blossombase_.assign(n2, -1);
    for (int i = 0; i < n; ++i) blossombase_[static_cast<std::size_t>(i)] = i;
    blossomendps_.assign(n2, {});
    bestedge_.assign(n2, -1);
    blossombestedges_.assign(n2, {});
    has_bestedges_.assign(n2, false);
    for (int b = 2 * n - 1; b >= n; --b) unused_.push_back(b);
    dualvar_.assign(n2, 0);
    for (int i = 0; i < n; ++i) dualvar_[static_cast<std::size_t>(i)] = max_w;
    allowedge_.assign(m, false);
  }

  std::vector<int> solve() {
    const auto n = static_cast<std::size_t>(n_);
    for (int stage = 0; stage < n_; ++stage) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(bestedge_.begin(), bestedge_.end(), -1);
      for (std::size_t b = n; b < 2 * n; ++b) {
        blossombestedges_[b].clear();
        has_bestedges_[b] = false;
      }
      std::fill(allowedge_.begin(), allowedge_.end(), false);
      queue_.clear();
      for (int v = 0; v < n_; ++v)
        if (mate_[u(v)] == -1 && label_[u(inblossom_[u(v)])] == 0) assign_label(v, 1, -1);

      bool augmented = false;
      while (true) {
        while (!queue_.empty() && !augmented) {
          const int v = queue_.back();
          queue_.pop_back();
          for (int p : neighbend_[u(v)]) {
            const int k = p / 2;
            const int w = endpoint_[u(p)];
            if (inblossom_[u(v)] == inblossom_[u(w)]) continue;
            std::int64_t kslack = 0;
            if (!allowedge_[u(k)]) {
              kslack = slack(k);
              if (kslack <= 0) allowedge_[u(k)] = true;
            }
            if (allowedge_[u(k)]) {
              if (label_[u(inblossom_[u(w)])] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label_[u(inblossom_[u(w)])] == 1) {
                const int base = scan_blossom(v, w);
                if (base >= 0) {
                  add_blossom(base, k);
                } else {
                  augment_matching(k);
                  augmented = true;
                  break;
                }
              } else if (label_[u(w)] == 0) {
                label_[u(w)] = 2;
                labelend_[u(w)] = p ^ 1;
              }
            } else if (label_[u(inblossom_[u(w)])] == 1) {
              const int b = inblossom_[u(v)];
              if (bestedge_[u(b)] == -1 || kslack < slack(bestedge_[u(b)])) bestedge_[u(b)] = k;
            } else if (label_[u(w)] == 0) {
              if (bestedge_[u(w)] == -1 || kslack < slack(bestedge_[u(w)])) bestedge_[u(w)] = k;
            }
          }
        }
        if (augmented) break;

        int deltatype = -1;
        std::int64_t delta = 0;
        int deltaedge = -1, deltablossom = -1;
        if (!max_card_) {
          deltatype = 1;
          delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n_);
        }
        for (int v = 0; v < n_; ++v) {
          if (label_[u(inblossom_[u(v)])] == 0 && bestedge_[u(v)] != -1) {
            const std::int64_t d = slack(bestedge_[u(v)]);
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[u(v)];
            }
          }
        }
        for (int b = 0; b < 2 * n_; ++b) {
          if (blossomparent_[u(b)] == -1 && label_[u(b)] == 1 && bestedge_[u(b)] != -1) {
            const std::int64_t ks = slack(bestedge_[u(b)]);
            if (ks % 2 != 0) throw std::logic_error("blossom: odd slack between S-blossoms");
            const std::int64_t d = ks / 2;
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[u(b)];
            }
          }
        }
        for (int b = n_; b < 2 * n_; ++b) {
          if (blossombase_[u(b)] >= 0 && blossomparent_[u(b)] == -1 && label_[u(b)] == 2 &&
              (deltatype == -1 || dualvar_[u(b)] < delta)) {
            delta = dualvar_[u(b)];
            deltatype = 4;
            deltablossom = b;
          }
        }
        if (deltatype == -1) {
          // No further progress possible; final dual adjustment.
          deltatype = 1;
          delta = std::max<std::int64_t>(0, *std::min_element(dualvar_.begin(), dualvar_.begin() + n_));
        }

        for (int v = 0; v < n_; ++v) {
          const int l = label_[u(inblossom_[u(v)])];
          if (l == 1)
            dualvar_[u(v)] -= delta;
          else if (l == 2)
            dualvar_[u(v)] += delta;
        }
        for (int b = n_; b < 2 * n_; ++b) {
          if (blossombase_[u(b)] >= 0 && blossomparent_[u(b)] == -1) {
            if (label_[u(b)] == 1)
              dualvar_[u(b)] += delta;
            else if (label_[u(b)] == 2)
              dualvar_[u(b)] -= delta;
          }
        }

        if (deltatype == 1) break;
        if (deltatype == 2) {
          allowedge_[u(deltaedge)] = true;
          int i = edges_[u(deltaedge)].u, j = edges_[u(deltaedge)].v;
          if (label_[u(inblossom_[u(i)])] == 0) std::swap(i, j);
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allowedge_[u(deltaedge)] = true;
          queue_.push_back(edges_[u(deltaedge)].u);
        } else if (deltatype == 4) {
          expand_blossom(deltablossom, false);
        }
      }
      if (!augmented) break;
      for (int b = n_; b < 2 * n_; ++b)
        if (blossomparent_[u(b)] == -1 && blossombase_[u(b)] >= 0 && label_[u(b)] == 1 && dualvar_[u(b)] == 0)
          expand_blossom(b, true);
    }
    std::vector<int> out(n);
    for (int v = 0; v < n_; ++v) out[u(v)] = mate_[u(v)] >= 0 ? endpoint_[u(mate_[u(v)])] : -1;
    return out;
  }

 private:
  static std::size_t u(int i) { return static_cast<std::size_t>(i); }

  std::int64_t slack(int k) const {
    const auto& e = edges_[u(k)];
    return dualvar_[u(e.u)] + dualvar_[u(e.v)] - 2 * e.weight;
  }

  void leaves(int b, std::vector<int>& out) const {
    if (b < n_) {
      out.push_back(b);
      return;
    }
    for (int t : blossomchilds_[u(b)]) leaves(t, out);
  }
  std::vector<int> leaves(int b) const {
    std::vector<int> out;
    leaves(b, out);
    return out;
  }

  void assign_label(int w, int t, int p) {
    const int b = inblossom_[u(w)];
    label_[u(w)] = label_[u(b)] = t;
    labelend_[u(w)] = labelend_[u(b)] = p;
    bestedge_[u(w)] = bestedge_[u(b)] = -1;
    if (t == 1) {
      leaves(b, queue_);
    } else if (t == 2) {
      const int base = blossombase_[u(b)];
      assign_label(endpoint_[u(mate_[u(base)])], 1, mate_[u(base)] ^ 1);
    }
  }

  int scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
      int b = inblossom_[u(v)];
      if (label_[u(b)] & 4) {
        base = blossombase_[u(b)];
        break;
      }
      path.push_back(b);
      label_[u(b)] = 5;
      if (labelend_[u(b)] == -1) {
        v = -1;
      } else {
        v = endpoint_[u(labelend_[u(b)])];
        b = inblossom_[u(v)];
        v = endpoint_[u(labelend_[u(b)])];
      }
      if (w != -1) std::swap(v, w);
    }
    for (int b : path) label_[u(b)] = 1;
    return base;
  }

  void add_blossom(int base, int k) {
    int v = edges_[u(k)].u, w = edges_[u(k)].v;
    const int bb = inblossom_[u(base)];
    int bv = inblossom_[u(v)];
    int bw = inblossom_[u(w)];
    const int b = unused_.back();
    unused_.pop_back();
    blossombase_[u(b)] = base;
    blossomparent_[u(b)] = -1;
    blossomparent_[u(bb)] = b;
    auto& path = blossomchilds_[u(b)];
    auto& endps = blossomendps_[u(b)];
    path.clear();
    endps.clear();
    while (bv != bb) {
      blossomparent_[u(bv)] = b;
      path.push_back(bv);
      endps.push_back(labelend_[u(bv)]);
      v = endpoint_[u(labelend_[u(bv)])];
      bv = inblossom_[u(v)];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
      blossomparent_[u(bw)] = b;
      path.push_back(bw);
      endps.push_back(labelend_[u(bw)] ^ 1);
      w = endpoint_[u(labelend_[u(bw)])];
      bw = inblossom_[u(w)];
    }
    label_[u(b)] = 1;
    labelend_[u(b)] = labelend_[u(bb)];
    dualvar_[u(b)] = 0;
    for (int leaf : leaves(b)) {
      if (label_[u(inblossom_[u(leaf)])] == 2) queue_.push_back(leaf);
      inblossom_[u(leaf)] = b;
    }
    std::vector<int> bestedgeto(u(2 * n_), -1);
    for (int child : path) {
      std::vector<std::vector<int>> nblists;
      if (!has_bestedges_[u(child)]) {
        for (int leaf : leaves(child)) {
          std::vector<int> ks;
          for (int p : neighbend_[u(leaf)]) ks.push_back(p / 2);
          nblists.push_back(std::move(ks));
        }
      } else {
        nblists.push_back(blossombestedges_[u(child)]);
      }
      for (const auto& nblist : nblists) {
        for (int kk : nblist) {
          int i = edges_[u(kk)].u, j = edges_[u(kk)].v;
          if (inblossom_[u(j)] == b) std::swap(i, j);
          const int bj = inblossom_[u(j)];
          if (bj != b && label_[u(bj)] == 1 && (bestedgeto[u(bj)] == -1 || slack(kk) < slack(bestedgeto[u(bj)])))
            bestedgeto[u(bj)] = kk;
        }
      }
      blossombestedges_[u(child)].clear();
      has_bestedges_[u(child)] = false;
      bestedge_[u(child)] = -1;
    }
    auto& best = blossombestedges_[u(b)];
    best.clear();
    for (int kk : bestedgeto)
      if (kk != -1) best.push_back(kk);
    has_bestedges_[u(b)] = true;
    bestedge_[u(b)] = -1;
    for (int kk : best)
      if (bestedge_[u(b)] == -1 || slack(kk) < slack(bestedge_[u(b)])) bestedge_[u(b)] = kk;
  }

  void expand_blossom(int b, bool endstage) {
    const std::vector<int> childs = blossomchilds_[u(b)];
    for (int s : childs) {
      blossomparent_[u(s)] = -1;
      if (s < n_) {
        inblossom_[u(s)] = s;
      } else if (endstage && dualvar_[u(s)] == 0) {
        expand_blossom(s, endstage);
      } else {
        for (int leaf : leaves(s)) inblossom_[u(leaf)] = s;
      }
    }
    if (!endstage && label_[u(b)] == 2) {
      const auto& ch = blossomchilds_[u(b)];
      const auto& endps = blossomendps_[u(b)];
      const int len = static_cast<int>(ch.size());
      auto at = [len](const std::vector<int>& xs, int j) { return xs[u(((j % len) + len) % len)]; };
      const int entrychild = inblossom_[u(endpoint_[u(labelend_[u(b)] ^ 1)])];
      int j = static_cast<int>(std::find(ch.begin(), ch.end(), entrychild) - ch.begin());
      int jstep, endptrick;
      if (j & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      int p = labelend_[u(b)];
      while (j != 0) {
        label_[u(endpoint_[u(p ^ 1)])] = 0;
        label_[u(endpoint_[u(at(endps, j - endptrick) ^ endptrick ^ 1)])] = 0;
        assign_label(endpoint_[u(p ^ 1)], 2, p);
        allowedge_[u(at(endps, j - endptrick) / 2)] = true;
        j += jstep;
        p = at(endps, j - endptrick) ^ endptrick;
        allowedge_[u(p / 2)] = true;
        j += jstep;
      }
      int bv = at(ch, j);
      label_[u(endpoint_[u(p ^ 1)])] = label_[u(bv)] = 2;
      labelend_[u(endpoint_[u(p ^ 1)])] = labelend_[u(bv)] = p;
      bestedge_[u(bv)] = -1;
      j += jstep;
      while (at(ch, j) != entrychild) {
        bv = at(ch, j);
        if (label_[u(bv)] == 1) {
          j += jstep;
          continue;
        }
        int found = -1;
        for (int leaf : leaves(bv))
          if (label_[u(leaf)] != 0) {
            found = leaf;
            break;
          }
        if (found >= 0) {
          label_[u(found)] = 0;
          label_[u(endpoint_[u(mate_[u(blossombase_[u(bv)])])])] = 0;
          assign_label(found, 2, labelend_[u(found)]);
        }
        j += jstep;
      }
    }
    label_[u(b)] = labelend_[u(b)] = -1;
    blossomchilds_[u(b)].clear();
    blossomendps_[u(b)].clear();
    blossombase_[u(b)] = -1;
    blossombestedges_[u(b)].clear();
    has_bestedges_[u(b)] = false;
    bestedge_[u(b)] = -1;
    unused_.push_back(b);
  }

  void augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[u(t)] != b) t = blossomparent_[u(t)];
    if (t >= n_) augment_blossom(t, v);
    auto& ch = blossomchilds_[u(b)];
    auto& endps = blossomendps_[u(b)];
    const int len = static_cast<int>(ch.size());
    auto at = [len](const std::vector<int>& xs, int j) { return xs[u(((j % len) + len) % len)]; };
    const int i = static_cast<int>(std::find(ch.begin(), ch.end(), t) - ch.begin());
    int j = i;
    int jstep, endptrick;
    if (i & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    while (j != 0) {
      j += jstep;
      t = at(ch, j);
      const int p = at(endps, j - endptrick) ^ endptrick;
      if (t >= n_) augment_blossom(t, endpoint_[u(p)]);
      j += jstep;
      t = at(ch, j);
      if (t >= n_) augment_blossom(t, endpoint_[u(p ^ 1)]);
      mate_[u(endpoint_[u(p)])] = p ^ 1;
      mate_[u(endpoint_[u(p ^ 1)])] = p;
    }
    std::rotate(ch.begin(), ch.begin() + i, ch.end());
    std::rotate(endps.begin(), endps.begin() + i, endps.end());
    blossombase_[u(b)] = blossombase_[u(ch[0])];
  }

  void augment_matching(int k) {
    const int v = edges_[u(k)].u, w = edges_[u(k)].v;
    for (auto [s, p] : {std::pair{v, 2 * k + 1}, std::pair{w, 2 * k}}) {
      while (true) {
        const int bs = inblossom_[u(s)];
        if (bs >= n_) augment_blossom(bs, s);
        mate_[u(s)] = p;
        if (labelend_[u(bs)] == -1) break;
        const int t = endpoint_[u(labelend_[u(bs)])];
        const int bt = inblossom_[u(t)];
        s = endpoint_[u(labelend_[u(bt)])];
        const int j = endpoint_[u(labelend_[u(bt)] ^ 1)];
        if (bt >= n_) augment_blossom(bt, j);
        mate_[u(j)] = labelend_[u(bt)];
        p = labelend_[u(bt)] ^ 1;
      }
    }
  }

  int n_;
  bool max_card_;
  std::vector<WeightedEdge> edges_;
  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_, label_, labelend_, inblossom_, blossomparent_, blossombase_, bestedge_, unused_, queue_;
  std::vector<std::vector<int>> blossomchilds_, blossomendps_, blossombestedges_;
  std::vector<bool> has_bestedges_, allowedge_;
  std::vector<std::int64_t> dualvar_;
};

}  // namespace

std::vector<int> max_weight_matching(int node_count, const std::vector<WeightedEdge>& edges, bool max_cardinality) {
  if (node_count < 0) throw ContractError("node count must be non-negative");
  for (const auto& e : edges)
    if (e.u < 0 || e.v < 0 || e.u >= node_count || e.v >= node_count || e.u == e.v)
      throw ContractError("matching edge endpoints out of range");
  if (node_count == 0) return {};
  return Blossom(node_count, edges, max_cardinality).solve();
}

std::optional<Matching> min_weight_perfect_matching(int node_count, const std::vector<WeightedEdge>& edges) {
  if (node_count % 2 != 0) throw ContractError("perfect matching needs an even node count, got " + std::to_string(node_count));
  std::int64_t top = 0;
  for (const auto& e : edges) {
    if (e.weight < 0) throw ContractError("matching weights must be non-negative");
    top = std::max(top, e.weight);
  }
  // Maximum cardinality first, then maximum of (top + 1 - w): a minimum-weight
  // perfect matching whenever one exists.
  std::vector<WeightedEdge> flipped = edges;
  for (auto& e : flipped) e.weight = top + 1 - e.weight;
  const auto mate = max_weight_matching(node_count, flipped, true);
  Matching m;
  for (int v = 0; v < node_count; ++v) {
    const int w = mate[static_cast<std::size_t>(v)];
    if (w < 0) return std::nullopt;
    if (v < w) m.pairs.emplace_back(v, w);
  }
  // Total weight from the cheapest parallel edge of each matched pair.
  for (const auto& [a, b] : m.pairs) {
    std::int64_t best = -1;
    for (const auto& e : edges)
      if ((e.u == a && e.v == b) || (e.u == b && e.v == a))
        if (best < 0 || e.weight < best) best = e.weight;
    m.total_weight += best;
  }
  return m;
}

}  // namespace tetracode
