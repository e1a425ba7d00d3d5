#include "w2bounds/ot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "w2bounds/error.hpp"

namespace w2b {

namespace {

constexpr double kBalanceTolerance = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Primal network simplex for the uncapacitated transportation problem on
// the complete bipartite graph sources x sinks. Arc e = i * m + j runs from
// source i to sink n + j. An artificial root (node n + m) carries one
// artificial arc per node, forming the initial spanning tree.
//
// Tree bookkeeping follows the usual parent / thread (preorder) / successor
// count representation. Leaving arcs are chosen by the strongly feasible
// rule so degenerate pivots cannot cycle. Pricing is a block search that
// resumes where the previous search stopped; within a block the first arc
// with the most negative reduced cost wins.
class NetworkSimplex {
 public:
  NetworkSimplex(std::span<const double> supply, std::span<const double> demand,
                 const CostMatrix& cost)
      : n_(supply.size()),
        m_(demand.size()),
        nodes_(n_ + m_),
        root_(static_cast<int>(nodes_)),
        search_arcs_(n_ * m_),
        cost_(cost) {
    const std::size_t all_arcs = search_arcs_ + nodes_;
    flow_.assign(all_arcs, 0.0);
    state_.assign(all_arcs, kLower);
    art_source_.resize(nodes_);
    art_target_.resize(nodes_);
    art_cost_.resize(nodes_);

    parent_.resize(nodes_ + 1);
    pred_.resize(nodes_ + 1);
    thread_.resize(nodes_ + 1);
    rev_thread_.resize(nodes_ + 1);
    succ_num_.resize(nodes_ + 1);
    last_succ_.resize(nodes_ + 1);
    pred_dir_.resize(nodes_ + 1);
    pi_.assign(nodes_ + 1, 0.0);

    double max_cost = 0.0;
    for (double c : cost_.values) max_cost = std::max(max_cost, c);
    art_cost_value_ = (max_cost + 1.0) * static_cast<double>(nodes_);
    // Reduced costs are accepted as negative only below this threshold;
    // potentials live on the artificial-cost scale.
    price_tolerance_ = 64.0 * std::numeric_limits<double>::epsilon() * art_cost_value_;

    parent_[root_] = -1;
    pred_[root_] = -1;
    thread_[root_] = 0;
    rev_thread_[0] = root_;
    succ_num_[root_] = static_cast<int>(nodes_) + 1;
    last_succ_[root_] = root_ - 1;
    pi_[root_] = 0.0;

    for (std::size_t u = 0; u < nodes_; ++u) {
      const std::size_t e = search_arcs_ + u;
      const double s = u < n_ ? supply[u] : -demand[u - n_];
      const int ui = static_cast<int>(u);
      parent_[u] = root_;
      pred_[u] = static_cast<std::int64_t>(e);
      thread_[u] = ui + 1;
      rev_thread_[u + 1] = ui;
      succ_num_[u] = 1;
      last_succ_[u] = ui;
      state_[e] = kTree;
      if (s >= 0.0) {
        pred_dir_[u] = kUp;
        pi_[u] = 0.0;
        art_source_[u] = ui;
        art_target_[u] = root_;
        flow_[e] = s;
        art_cost_[u] = 0.0;
      } else {
        pred_dir_[u] = kDown;
        pi_[u] = art_cost_value_;
        art_source_[u] = root_;
        art_target_[u] = ui;
        flow_[e] = -s;
        art_cost_[u] = art_cost_value_;
      }
    }

    block_size_ = std::max<std::size_t>(
        10, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(search_arcs_)))));
  }

  void run() {
    const std::size_t limit =
        std::max<std::size_t>(1000000, 50 * (nodes_ + 1) * (nodes_ + 1));
    for (;;) {
      if (!find_entering_arc()) {
        // Potentials drift under incremental updates; recompute them from
        // the tree and only stop once exact pricing agrees.
        refresh_potentials();
        if (!find_entering_arc()) break;
      }
      find_join_node();
      if (!find_leaving_arc()) throw_numerical("emd: unbounded pivot (corrupt cost data)");
      change_flow();
      update_tree_structure();
      update_potential();
      if (++iterations_ > limit) throw_numerical("emd: network simplex iteration limit reached");
    }
    for (std::size_t u = 0; u < nodes_; ++u) {
      if (flow_[search_arcs_ + u] > kBalanceTolerance) {
        throw_numerical("emd: infeasible transport problem");
      }
    }
  }

  EmdResult result() const {
    EmdResult out;
    out.iterations = iterations_;
    out.plan.source_size = n_;
    out.plan.target_size = m_;
    double total = 0.0;
    for (std::size_t e = 0; e < search_arcs_; ++e) {
      if (flow_[e] > 0.0) {
        out.plan.entries.push_back({e / m_, e % m_, flow_[e]});
        total += flow_[e] * cost_.values[e];
      }
    }
    out.cost = total;
    // u_i = -pi_i, v_j = pi_{n+j}, shifted so that u_0 = 0.
    const double shift = pi_[0];
    out.source_potential.resize(n_);
    out.target_potential.resize(m_);
    for (std::size_t i = 0; i < n_; ++i) out.source_potential[i] = shift - pi_[i];
    for (std::size_t j = 0; j < m_; ++j) out.target_potential[j] = pi_[n_ + j] - shift;
    return out;
  }

 private:
  static constexpr std::int8_t kTree = 0;
  static constexpr std::int8_t kLower = 1;
  static constexpr int kUp = 1;
  static constexpr int kDown = -1;

  int source(std::int64_t e) const {
    const auto ue = static_cast<std::size_t>(e);
    return ue < search_arcs_ ? static_cast<int>(ue / m_) : art_source_[ue - search_arcs_];
  }
  int target(std::int64_t e) const {
    const auto ue = static_cast<std::size_t>(e);
    return ue < search_arcs_ ? static_cast<int>(n_ + ue % m_) : art_target_[ue - search_arcs_];
  }
  double cost(std::int64_t e) const {
    const auto ue = static_cast<std::size_t>(e);
    return ue < search_arcs_ ? cost_.values[ue] : art_cost_[ue - search_arcs_];
  }

  bool find_entering_arc() {
    double best = -price_tolerance_;
    std::size_t cnt = block_size_;
    bool found = false;
    std::size_t e = next_arc_;
    std::size_t i = e / m_, j = e % m_;
    for (std::size_t visited = 0; visited < search_arcs_; ++visited) {
      if (state_[e] == kLower) {
        const double c = cost_.values[e] + pi_[i] - pi_[n_ + j];
        if (c < best) {
          best = c;
          in_arc_ = static_cast<std::int64_t>(e);
          found = true;
        }
      }
      ++e;
      if (++j == m_) {
        j = 0;
        if (++i == n_) {
          i = 0;
          e = 0;
        }
      }
      if (--cnt == 0) {
        if (found) {
          next_arc_ = e;
          return true;
        }
        cnt = block_size_;
      }
    }
    if (found) next_arc_ = e;
    return found;
  }

  void find_join_node() {
    int u = source(in_arc_);
    int v = target(in_arc_);
    while (u != v) {
      if (succ_num_[u] < succ_num_[v]) {
        u = parent_[u];
      } else {
        v = parent_[v];
      }
    }
    join_ = u;
  }

  bool find_leaving_arc() {
    const int first = source(in_arc_);
    const int second = target(in_arc_);
    delta_ = kInf;
    int result = 0;
    // Along first -> join the cycle runs against the tree direction: arcs
    // pointing up lose flow.
    for (int u = first; u != join_; u = parent_[u]) {
      const double d = pred_dir_[u] == kUp ? flow_[pred_[u]] : kInf;
      if (d < delta_) {
        delta_ = d;
        u_out_ = u;
        result = 1;
      }
    }
    for (int u = second; u != join_; u = parent_[u]) {
      const double d = pred_dir_[u] == kDown ? flow_[pred_[u]] : kInf;
      if (d <= delta_) {
        delta_ = d;
        u_out_ = u;
        result = 2;
      }
    }
    if (result == 1) {
      u_in_ = first;
      v_in_ = second;
    } else {
      u_in_ = second;
      v_in_ = first;
    }
    return result != 0;
  }

  void change_flow() {
    if (delta_ > 0.0) {
      const double val = delta_;
      flow_[in_arc_] += val;
      for (int u = source(in_arc_); u != join_; u = parent_[u]) {
        flow_[pred_[u]] -= pred_dir_[u] * val;
      }
      for (int u = target(in_arc_); u != join_; u = parent_[u]) {
        flow_[pred_[u]] += pred_dir_[u] * val;
      }
    }
    state_[in_arc_] = kTree;
    const std::int64_t leaving = pred_[u_out_];
    state_[leaving] = kLower;
    flow_[leaving] = 0.0;
  }

  void update_tree_structure() {
    const int old_rev_thread = rev_thread_[u_out_];
    const int old_succ_num = succ_num_[u_out_];
    const int old_last_succ = last_succ_[u_out_];
    v_out_ = parent_[u_out_];

    if (u_in_ == u_out_) {
      parent_[u_in_] = v_in_;
      pred_[u_in_] = in_arc_;
      pred_dir_[u_in_] = u_in_ == source(in_arc_) ? kUp : kDown;

      if (thread_[v_in_] != u_out_) {
        int after = thread_[old_last_succ];
        thread_[old_rev_thread] = after;
        rev_thread_[after] = old_rev_thread;
        after = thread_[v_in_];
        thread_[v_in_] = u_out_;
        rev_thread_[u_out_] = v_in_;
        thread_[old_last_succ] = after;
        rev_thread_[after] = old_last_succ;
      }
    } else {
      // old_rev_thread == v_in implies join == v_out.
      const int thread_continue =
          old_rev_thread == v_in_ ? thread_[old_last_succ] : thread_[v_in_];

      // Re-hang the stem u_in ... u_out under v_in, reversing parent links.
      int stem = u_in_;
      int par_stem = v_in_;
      int last = last_succ_[u_in_];
      int after = thread_[last];
      thread_[v_in_] = u_in_;
      dirty_revs_.clear();
      dirty_revs_.push_back(v_in_);
      while (stem != u_out_) {
        const int next_stem = parent_[stem];
        thread_[last] = next_stem;
        dirty_revs_.push_back(last);

        const int before = rev_thread_[stem];
        thread_[before] = after;
        rev_thread_[after] = before;

        parent_[stem] = par_stem;
        par_stem = stem;
        stem = next_stem;

        last = last_succ_[stem] == last_succ_[par_stem] ? rev_thread_[par_stem]
                                                         : last_succ_[stem];
        after = thread_[last];
      }
      parent_[u_out_] = par_stem;
      thread_[last] = thread_continue;
      rev_thread_[thread_continue] = last;
      last_succ_[u_out_] = last;

      if (old_rev_thread != v_in_) {
        thread_[old_rev_thread] = after;
        rev_thread_[after] = old_rev_thread;
      }

      for (int u : dirty_revs_) rev_thread_[thread_[u]] = u;

      int tmp_sc = 0;
      const int tmp_ls = last_succ_[u_out_];
      for (int u = u_out_, p = parent_[u]; u != u_in_; u = p, p = parent_[u]) {
        pred_[u] = pred_[p];
        pred_dir_[u] = -pred_dir_[p];
        tmp_sc += succ_num_[u] - succ_num_[p];
        succ_num_[u] = tmp_sc;
        last_succ_[p] = tmp_ls;
      }
      pred_[u_in_] = in_arc_;
      pred_dir_[u_in_] = u_in_ == source(in_arc_) ? kUp : kDown;
      succ_num_[u_in_] = old_succ_num;
    }

    const int up_limit_out = last_succ_[join_] == v_in_ ? join_ : -1;
    const int last_succ_out = last_succ_[u_out_];
    for (int u = v_in_; u != -1 && last_succ_[u] == v_in_; u = parent_[u]) {
      last_succ_[u] = last_succ_out;
    }

    if (join_ != old_rev_thread && v_in_ != old_rev_thread) {
      for (int u = v_out_; u != up_limit_out && last_succ_[u] == old_last_succ; u = parent_[u]) {
        last_succ_[u] = old_rev_thread;
      }
    } else if (last_succ_out != old_last_succ) {
      for (int u = v_out_; u != up_limit_out && last_succ_[u] == old_last_succ; u = parent_[u]) {
        last_succ_[u] = last_succ_out;
      }
    }

    for (int u = v_in_; u != join_; u = parent_[u]) succ_num_[u] += old_succ_num;
    for (int u = v_out_; u != join_; u = parent_[u]) succ_num_[u] -= old_succ_num;
  }

  void update_potential() {
    const double sigma = pi_[v_in_] - pi_[u_in_] - pred_dir_[u_in_] * cost(in_arc_);
    const int end = thread_[last_succ_[u_in_]];
    for (int u = u_in_; u != end; u = thread_[u]) pi_[u] += sigma;
  }

  // Tree arcs have zero reduced cost; walk the preorder thread from the root.
  void refresh_potentials() {
    pi_[root_] = 0.0;
    for (int u = thread_[root_]; u != root_; u = thread_[u]) {
      pi_[u] = pi_[parent_[u]] - pred_dir_[u] * cost(pred_[u]);
    }
  }

  std::size_t n_, m_, nodes_;
  int root_;
  std::size_t search_arcs_;
  const CostMatrix& cost_;

  std::vector<double> flow_;
  std::vector<std::int8_t> state_;
  std::vector<int> art_source_, art_target_;
  std::vector<double> art_cost_;
  double art_cost_value_ = 0.0;
  double price_tolerance_ = 0.0;

  std::vector<int> parent_, thread_, rev_thread_, succ_num_, last_succ_, pred_dir_;
  std::vector<std::int64_t> pred_;
  std::vector<double> pi_;
  std::vector<int> dirty_revs_;

  std::size_t block_size_ = 10;
  std::size_t next_arc_ = 0;
  std::size_t iterations_ = 0;

  std::int64_t in_arc_ = 0;
  int join_ = 0, u_in_ = 0, v_in_ = 0, u_out_ = 0, v_out_ = 0;
  double delta_ = 0.0;
};

// Probability vector with the rounding residual parked on the largest entry.
std::vector<double> normalized(std::span<const double> w, double total) {
  std::vector<double> out(w.begin(), w.end());
  for (double& x : out) x /= total;
  double sum = 0.0;
  for (double x : out) sum += x;
  const auto largest = std::max_element(out.begin(), out.end());
  *largest += 1.0 - sum;
  return out;
}

double checked_total(std::span<const double> w, const char* side) {
  if (w.empty()) throw_input(std::string("emd: empty ") + side + " weights");
  double total = 0.0;
  for (double x : w) {
    if (!std::isfinite(x) || x < 0.0) {
      throw_input(std::string("emd: negative or non-finite ") + side + " weight");
    }
    total += x;
  }
  if (total <= 0.0) throw_input(std::string("emd: ") + side + " weights sum to zero");
  return total;
}

}  // namespace

std::vector<double> TransportPlan::row_sums() const {
  std::vector<double> out(source_size, 0.0);
  for (const auto& e : entries) out[e.source] += e.mass;
  return out;
}

std::vector<double> TransportPlan::column_sums() const {
  std::vector<double> out(target_size, 0.0);
  for (const auto& e : entries) out[e.target] += e.mass;
  return out;
}

CostMatrix cost_matrix(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  CostMatrix c{mu.size(), nu.size(), std::vector<double>(mu.size() * nu.size())};
  const auto& p = mu.points();
  const auto& q = nu.points();
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) c(i, j) = norm_sq(p[i] - q[j]);
  }
  return c;
}

EmdResult emd(std::span<const double> a, std::span<const double> b, const CostMatrix& cost) {
  if (cost.rows != a.size() || cost.cols != b.size() ||
      cost.values.size() != a.size() * b.size()) {
    throw_input("emd: cost matrix shape does not match weights");
  }
  for (double c : cost.values) {
    if (!std::isfinite(c)) throw_input("emd: non-finite cost");
  }
  const double ta = checked_total(a, "source");
  const double tb = checked_total(b, "target");
  if (std::abs(ta - tb) > kBalanceTolerance) {
    throw_input("emd: source and target masses differ (unbalanced problem)");
  }
  const std::vector<double> supply = normalized(a, ta);
  const std::vector<double> demand = normalized(b, tb);
  NetworkSimplex solver(supply, demand, cost);
  solver.run();
  return solver.result();
}

EmdResult emd(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  return emd(mu.weights(), nu.weights(), cost_matrix(mu, nu));
}

double w2(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  return std::sqrt(std::max(0.0, emd(mu, nu).cost));
}

}  // namespace w2b
