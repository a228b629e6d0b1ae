#include "crawlrlr/crawl.hpp"

#include <algorithm>

#include "crawlrlr/error.hpp"

namespace crawlrlr {

namespace {

void check_seed(const AttributedGraph& g, NodeId seed, const char* what) {
  if (seed >= g.node_count()) {
    throw ArgumentError(std::string(what) + ": seed node out of range");
  }
}

}  // namespace

std::string crawl_method_name(CrawlMethod m) {
  switch (m) {
    case CrawlMethod::BFS: return "BFS";
    case CrawlMethod::FF: return "FF";
    case CrawlMethod::RW: return "RW";
    case CrawlMethod::MH: return "MH";
    case CrawlMethod::TS: return "TS";
  }
  return "?";
}

CrawlMethod crawl_method_from_name(const std::string& name) {
  if (name == "BFS") return CrawlMethod::BFS;
  if (name == "FF") return CrawlMethod::FF;
  if (name == "RW") return CrawlMethod::RW;
  if (name == "MH") return CrawlMethod::MH;
  if (name == "TS") return CrawlMethod::TS;
  throw ArgumentError("unknown crawl method: " + name);
}

// ---------------------------------------------------------------- BFS

BfsCrawler::BfsCrawler(const AttributedGraph& g, NodeId seed)
    : g_(g), seed_(seed) {
  check_seed(g, seed, "crawl_bfs");
  sample_.method = CrawlMethod::BFS;
}

void BfsCrawler::advance(QueryTracker& tracker) {
  if (finished_) return;
  if (!seeded_) {
    if (!tracker.try_query(seed_)) return;
    sample_.visited.push_back(seed_);
    queue_.push_back(seed_);
    seeded_ = true;
  }
  while (queue_head_ < queue_.size()) {
    const NodeId v = queue_[queue_head_];
    const auto nbrs = g_.neighbors(v);  // sorted, so enqueue order is by id
    while (front_pos_ < nbrs.size()) {
      const NodeId u = nbrs[front_pos_];
      if (!tracker.seen(u)) {
        if (!tracker.try_query(u)) return;  // resume here when budget grows
        sample_.visited.push_back(u);
        queue_.push_back(u);
      }
      ++front_pos_;
    }
    ++queue_head_;
    front_pos_ = 0;
  }
  finished_ = true;
}

// ---------------------------------------------------------------- FF

FfCrawler::FfCrawler(const AttributedGraph& g, NodeId seed, double p_f,
                     std::uint64_t rng_seed)
    : g_(g), p_f_(p_f), rng_(rng_seed), visited_(g.node_count(), 0), seed_(seed) {
  check_seed(g, seed, "crawl_ff");
  if (!(p_f > 0.0 && p_f < 1.0)) {
    throw ArgumentError("crawl_ff: p_f must be in (0, 1)");
  }
  sample_.method = CrawlMethod::FF;
}

void FfCrawler::advance(QueryTracker& tracker) {
  if (finished_) return;
  if (!seeded_) {
    if (!tracker.try_query(seed_)) return;
    sample_.visited.push_back(seed_);
    visited_[seed_] = 1;
    queue_.push_back(seed_);
    seeded_ = true;
  }
  std::vector<NodeId> unvisited;
  for (;;) {
    if (queue_head_ >= queue_.size()) {
      // Fire died: restart from a random burned node that can still spread.
      std::vector<NodeId> candidates;
      for (NodeId v : sample_.visited) {
        for (NodeId u : g_.neighbors(v)) {
          if (!visited_[u]) {
            candidates.push_back(v);
            break;
          }
        }
      }
      if (candidates.empty()) {
        finished_ = true;  // component covered
        return;
      }
      queue_.clear();
      queue_head_ = 0;
      queue_.push_back(candidates[rng_.index(candidates.size())]);
    }
    const NodeId v = queue_[queue_head_++];
    unvisited.clear();
    for (NodeId u : g_.neighbors(v)) {
      if (!visited_[u]) unvisited.push_back(u);
    }
    if (unvisited.empty()) continue;
    // Burn count: failures before first success with success prob 1 - p_f,
    // so the mean is p_f / (1 - p_f).
    const std::uint64_t want = rng_.geometric(1.0 - p_f_);
    const std::size_t burn =
        std::min<std::size_t>(static_cast<std::size_t>(want), unvisited.size());
    if (burn == 0) continue;
    rng_.partial_shuffle(unvisited, burn);
    for (std::size_t i = 0; i < burn; ++i) {
      const NodeId u = unvisited[i];
      if (!tracker.try_query(u)) return;  // budget exhausted
      visited_[u] = 1;
      sample_.visited.push_back(u);
      queue_.push_back(u);
    }
  }
}

// ---------------------------------------------------------------- RW

RwCrawler::RwCrawler(const AttributedGraph& g, NodeId seed, std::uint64_t rng_seed)
    : g_(g), rng_(rng_seed), visited_(g.node_count(), 0), current_(seed) {
  check_seed(g, seed, "crawl_rw");
  sample_.method = CrawlMethod::RW;
}

void RwCrawler::advance(QueryTracker& tracker) {
  if (finished_) return;
  if (!seeded_) {
    if (!tracker.try_query(current_)) return;
    sample_.visited.push_back(current_);
    visited_[current_] = 1;
    seeded_ = true;
  }
  while (sample_.visited.size() < g_.node_count()) {
    const auto nbrs = g_.neighbors(current_);
    if (nbrs.empty()) break;  // isolated start; nothing reachable
    const NodeId next = nbrs[rng_.index(nbrs.size())];
    if (!visited_[next]) {
      if (!tracker.try_query(next)) return;
      visited_[next] = 1;
      sample_.visited.push_back(next);
    }
    current_ = next;
  }
  finished_ = true;
}

// ---------------------------------------------------------------- MH

MhCrawler::MhCrawler(const AttributedGraph& g, NodeId seed, std::uint64_t rng_seed)
    : g_(g), rng_(rng_seed), visited_(g.node_count(), 0), current_(seed) {
  check_seed(g, seed, "crawl_mh");
  sample_.method = CrawlMethod::MH;
}

NodeId MhCrawler::step_chain() {
  const auto nbrs = g_.neighbors(current_);
  if (nbrs.empty()) return current_;
  const NodeId proposal = nbrs[rng_.index(nbrs.size())];
  const double d_u = static_cast<double>(g_.degree(current_));
  const double d_v = static_cast<double>(g_.degree(proposal));
  // Accept with min(1, d_u/d_v): together with the 1/d_u proposal this gives
  // P(u->v) = min(1/d_u, 1/d_v). Rejection is a self-loop and costs nothing.
  if (d_v <= d_u || rng_.next_double() < d_u / d_v) {
    current_ = proposal;
  }
  return current_;
}

void MhCrawler::advance(QueryTracker& tracker) {
  if (finished_) return;
  if (!seeded_) {
    if (!tracker.try_query(current_)) return;
    sample_.visited.push_back(current_);
    visited_[current_] = 1;
    seeded_ = true;
  }
  while (sample_.visited.size() < g_.node_count()) {
    if (g_.neighbors(current_).empty()) break;
    const NodeId before = current_;
    const NodeId now = step_chain();
    if (now != before && !visited_[now]) {
      if (!tracker.try_query(now)) {
        current_ = before;  // the blocked move never happened
        return;
      }
      visited_[now] = 1;
      sample_.visited.push_back(now);
    }
  }
  finished_ = true;
}

// ---------------------------------------------------------------- tours

TourSampler::TourSampler(const AttributedGraph& g, std::vector<NodeId> seeds,
                         std::uint64_t rng_seed)
    : g_(g), rng_(rng_seed), in_seed_(g.node_count(), 0) {
  if (seeds.empty()) throw ArgumentError("sample_tours: empty seed set");
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  for (NodeId s : seeds) {
    if (s >= g.node_count()) {
      throw ArgumentError("sample_tours: seed node out of range");
    }
    in_seed_[s] = 1;
  }
  for (NodeId s : seeds) {
    for (NodeId u : g.neighbors(s)) {
      if (!in_seed_[u]) outgoing_.emplace_back(s, u);
    }
  }
  collection_.seeds = std::move(seeds);
  collection_.d_s = outgoing_.size();
  if (outgoing_.empty()) {
    throw DataError("absorbing seed set: no outgoing edges from S");
  }
}

std::size_t TourSampler::sample(QueryTracker& tracker, std::size_t max_tours) {
  if (!seeds_charged_) {
    for (NodeId s : collection_.seeds) {
      if (!tracker.try_query(s)) {
        throw ArgumentError("sample_tours: budget smaller than seed set");
      }
    }
    seeds_charged_ = true;
  }
  std::size_t added = 0;
  std::vector<NodeId> tour;
  while (added < max_tours) {
    const auto [start, first] = outgoing_[rng_.index(outgoing_.size())];
    tour.clear();
    tour.push_back(start);
    NodeId cur = first;
    bool complete = false;
    bool out_of_budget = false;
    for (;;) {
      if (!tracker.try_query(cur)) {
        out_of_budget = true;  // incomplete tour: discard and stop sampling
        break;
      }
      tour.push_back(cur);
      collection_.interior_degrees.emplace(cur, g_.degree(cur));
      const auto nbrs = g_.neighbors(cur);
      const NodeId next = nbrs[rng_.index(nbrs.size())];
      if (in_seed_[next]) {
        tour.push_back(next);
        complete = true;
        break;
      }
      cur = next;
    }
    if (out_of_budget) break;
    if (complete) {
      collection_.tours.push_back(tour);
      ++added;
    }
  }
  return added;
}

// ---------------------------------------------------------------- wrappers

CrawlSample crawl_bfs(const AttributedGraph& g, NodeId seed, CrawlBudget budget) {
  BfsCrawler crawler(g, seed);
  QueryTracker tracker(g.node_count(), budget.max_unique_queries);
  crawler.advance(tracker);
  return crawler.sample();
}

CrawlSample crawl_ff(const AttributedGraph& g, NodeId seed, CrawlBudget budget,
                     double p_f, std::uint64_t rng_seed) {
  FfCrawler crawler(g, seed, p_f, rng_seed);
  QueryTracker tracker(g.node_count(), budget.max_unique_queries);
  crawler.advance(tracker);
  return crawler.sample();
}

CrawlSample crawl_rw(const AttributedGraph& g, NodeId seed, CrawlBudget budget,
                     std::uint64_t rng_seed) {
  RwCrawler crawler(g, seed, rng_seed);
  QueryTracker tracker(g.node_count(), budget.max_unique_queries);
  crawler.advance(tracker);
  return crawler.sample();
}

CrawlSample crawl_mh(const AttributedGraph& g, NodeId seed, CrawlBudget budget,
                     std::uint64_t rng_seed) {
  MhCrawler crawler(g, seed, rng_seed);
  QueryTracker tracker(g.node_count(), budget.max_unique_queries);
  crawler.advance(tracker);
  return crawler.sample();
}

std::vector<NodeId> collect_seeds(const AttributedGraph& g, NodeId start,
                                  std::size_t walk_len, std::size_t target_size,
                                  std::uint64_t rng_seed) {
  check_seed(g, start, "collect_seeds");
  if (walk_len == 0) throw ArgumentError("collect_seeds: walk_len must be positive");
  if (target_size == 0 || target_size >= g.node_count()) {
    throw ArgumentError("collect_seeds: target_size must be in [1, |V|)");
  }
  Rng rng(rng_seed);
  QueryTracker tracker(g.node_count(), g.node_count());
  std::vector<NodeId> seeds = collect_seeds_tracked(g, start, target_size, rng, tracker);
  if (seeds.size() != target_size) {
    throw DataError("collect_seeds: walk cannot reach target_size distinct nodes");
  }
  return seeds;
}

std::vector<NodeId> collect_seeds_tracked(const AttributedGraph& g, NodeId start,
                                          std::size_t target_size, Rng& rng,
                                          QueryTracker& tracker) {
  std::vector<NodeId> seeds;
  std::vector<char> in_s(g.node_count(), 0);
  NodeId cur = start;
  if (tracker.try_query(cur)) {
    seeds.push_back(cur);
    in_s[cur] = 1;
  } else {
    return seeds;
  }
  // The walk stops once the target is met; steps beyond that would not
  // change S (it is the first target_size distinct nodes by definition).
  std::size_t stall_guard = 0;
  const std::size_t max_steps = 1000 * g.node_count() + 1000;
  while (seeds.size() < target_size && stall_guard++ < max_steps) {
    const auto nbrs = g.neighbors(cur);
    if (nbrs.empty()) break;
    cur = nbrs[rng.index(nbrs.size())];
    if (!in_s[cur]) {
      if (!tracker.try_query(cur)) break;
      in_s[cur] = 1;
      seeds.push_back(cur);
    }
  }
  std::sort(seeds.begin(), seeds.end());
  return seeds;
}

TourCollection sample_tours(const AttributedGraph& g,
                            const std::vector<NodeId>& seeds, std::size_t m,
                            CrawlBudget budget, std::uint64_t rng_seed) {
  TourSampler sampler(g, seeds, rng_seed);
  QueryTracker tracker(g.node_count(), budget.max_unique_queries);
  sampler.sample(tracker, m);
  return sampler.take_collection();
}

std::size_t seed_out_degree(const AttributedGraph& g,
                            const std::vector<NodeId>& seeds) {
  std::vector<char> in_s(g.node_count(), 0);
  for (NodeId s : seeds) in_s[s] = 1;
  std::size_t d_s = 0;
  for (NodeId s : seeds) {
    for (NodeId u : g.neighbors(s)) {
      if (!in_s[u]) ++d_s;
    }
  }
  return d_s;
}

void validate_tours(const AttributedGraph& g, const TourCollection& tours) {
  std::vector<char> in_s(g.node_count(), 0);
  for (NodeId s : tours.seeds) {
    if (s >= g.node_count()) throw DataError("tours: seed node out of range");
    in_s[s] = 1;
  }
  if (seed_out_degree(g, tours.seeds) != tours.d_s) {
    throw DataError("tours: stored d_S disagrees with the graph");
  }
  for (const auto& tour : tours.tours) {
    if (tour.size() < 3) throw DataError("tours: tour shorter than 3 nodes");
    if (!in_s[tour.front()] || !in_s[tour.back()]) {
      throw DataError("tours: tour does not start and end in S");
    }
    for (std::size_t t = 1; t + 1 < tour.size(); ++t) {
      if (in_s[tour[t]]) throw DataError("tours: interior node inside S");
    }
    for (std::size_t t = 1; t < tour.size(); ++t) {
      if (!g.has_edge(tour[t - 1], tour[t])) {
        throw DataError("tours: consecutive tour nodes are not adjacent");
      }
    }
  }
  for (const auto& [v, d] : tours.interior_degrees) {
    if (v >= g.node_count() || g.degree(v) != d) {
      throw DataError("tours: stored interior degree disagrees with the graph");
    }
  }
}

}  // namespace crawlrlr
