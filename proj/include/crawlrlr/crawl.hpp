#pragma once

// The five crawlers. All network access goes through QueryTracker, which
// charges one budget unit the first time a node's attributes/neighbors are
// read; revisits and rejected Metropolis-Hastings proposals are free.
//
// Each crawler is incremental: advance() runs until the budget is exhausted
// or the component is covered, and can be called again after the budget
// limit has been raised (the experiment harness grows the same crawl through
// its budget checkpoints).

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "crawlrlr/graph.hpp"
#include "crawlrlr/rng.hpp"

namespace crawlrlr {

struct CrawlBudget {
  std::size_t max_unique_queries = 0;
  std::size_t spent = 0;
};

enum class CrawlMethod { BFS, FF, RW, MH, TS };

std::string crawl_method_name(CrawlMethod m);
CrawlMethod crawl_method_from_name(const std::string& name);

class QueryTracker {
 public:
  QueryTracker(std::size_t node_count, std::size_t max_unique_queries)
      : seen_(node_count, 0) {
    budget_.max_unique_queries = max_unique_queries;
  }

  bool seen(NodeId v) const { return seen_[v] != 0; }

  // Free if v has been queried before; otherwise charges one unit. Returns
  // false (state unchanged) when v is new and the budget is exhausted.
  bool try_query(NodeId v) {
    if (seen_[v]) return true;
    if (budget_.spent >= budget_.max_unique_queries) return false;
    seen_[v] = 1;
    ++budget_.spent;
    return true;
  }

  bool exhausted() const { return budget_.spent >= budget_.max_unique_queries; }
  std::size_t spent() const { return budget_.spent; }
  const CrawlBudget& budget() const { return budget_; }
  void raise_limit(std::size_t new_max) {
    if (new_max > budget_.max_unique_queries) budget_.max_unique_queries = new_max;
  }

 private:
  std::vector<char> seen_;
  CrawlBudget budget_;
};

struct CrawlSample {
  CrawlMethod method = CrawlMethod::BFS;
  std::vector<NodeId> visited;  // unique nodes in first-visit order
};

struct TourCollection {
  std::vector<NodeId> seeds;  // sorted
  std::size_t d_s = 0;        // outgoing edges of the seed super-node
  std::vector<std::vector<NodeId>> tours;
  std::map<NodeId, std::size_t> interior_degrees;  // original-graph degrees
};

class Crawler {
 public:
  virtual ~Crawler() = default;
  // Crawls until the budget is exhausted or the component is covered.
  virtual void advance(QueryTracker& tracker) = 0;
  virtual const CrawlSample& sample() const = 0;
  virtual bool finished() const = 0;
};

class BfsCrawler : public Crawler {
 public:
  BfsCrawler(const AttributedGraph& g, NodeId seed);
  void advance(QueryTracker& tracker) override;
  const CrawlSample& sample() const override { return sample_; }
  bool finished() const override { return finished_; }

 private:
  const AttributedGraph& g_;
  CrawlSample sample_;
  std::vector<NodeId> queue_;
  std::size_t queue_head_ = 0;
  std::size_t front_pos_ = 0;  // resume offset into the front node's neighbors
  bool seeded_ = false;
  bool finished_ = false;
  NodeId seed_;
};

class FfCrawler : public Crawler {
 public:
  FfCrawler(const AttributedGraph& g, NodeId seed, double p_f,
            std::uint64_t rng_seed);
  void advance(QueryTracker& tracker) override;
  const CrawlSample& sample() const override { return sample_; }
  bool finished() const override { return finished_; }

 private:
  const AttributedGraph& g_;
  CrawlSample sample_;
  double p_f_;
  Rng rng_;
  std::vector<NodeId> queue_;
  std::size_t queue_head_ = 0;
  std::vector<char> visited_;
  bool seeded_ = false;
  bool finished_ = false;
  NodeId seed_;
};

class RwCrawler : public Crawler {
 public:
  RwCrawler(const AttributedGraph& g, NodeId seed, std::uint64_t rng_seed);
  void advance(QueryTracker& tracker) override;
  const CrawlSample& sample() const override { return sample_; }
  bool finished() const override { return finished_; }

 private:
  const AttributedGraph& g_;
  CrawlSample sample_;
  Rng rng_;
  std::vector<char> visited_;
  NodeId current_;
  bool seeded_ = false;
  bool finished_ = false;
};

class MhCrawler : public Crawler {
 public:
  MhCrawler(const AttributedGraph& g, NodeId seed, std::uint64_t rng_seed);
  void advance(QueryTracker& tracker) override;
  const CrawlSample& sample() const override { return sample_; }
  bool finished() const override { return finished_; }
  // One Metropolis-Hastings transition from the current state (used by the
  // stationarity tests); does not touch budgets.
  NodeId step_chain();
  NodeId current() const { return current_; }

 private:
  const AttributedGraph& g_;
  CrawlSample sample_;
  Rng rng_;
  std::vector<char> visited_;
  NodeId current_;
  bool seeded_ = false;
  bool finished_ = false;
};

// Samples random-walk tours that leave the seed set through one of its d_S
// outgoing edges (chosen uniformly) and walk the original graph until
// re-entering the seed set. Incomplete tours at budget exhaustion are
// discarded.
class TourSampler {
 public:
  TourSampler(const AttributedGraph& g, std::vector<NodeId> seeds,
              std::uint64_t rng_seed);

  // Samples up to max_tours additional tours, stopping early when the budget
  // is exhausted mid-tour. Seed nodes are pre-queried on the first call.
  // Returns the number of tours added.
  std::size_t sample(QueryTracker& tracker, std::size_t max_tours);

  const TourCollection& collection() const { return collection_; }
  TourCollection take_collection() { return std::move(collection_); }
  std::size_t d_s() const { return collection_.d_s; }

 private:
  const AttributedGraph& g_;
  Rng rng_;
  TourCollection collection_;
  std::vector<std::pair<NodeId, NodeId>> outgoing_;  // seed -> non-seed edges
  std::vector<char> in_seed_;
  bool seeds_charged_ = false;
};

// One-shot wrappers.
CrawlSample crawl_bfs(const AttributedGraph& g, NodeId seed, CrawlBudget budget);
CrawlSample crawl_ff(const AttributedGraph& g, NodeId seed, CrawlBudget budget,
                     double p_f, std::uint64_t rng_seed);
CrawlSample crawl_rw(const AttributedGraph& g, NodeId seed, CrawlBudget budget,
                     std::uint64_t rng_seed);
CrawlSample crawl_mh(const AttributedGraph& g, NodeId seed, CrawlBudget budget,
                     std::uint64_t rng_seed);

// Random-walk seed collection: S = first target_size distinct nodes visited
// by a walk from start (extended past walk_len if needed). Returns sorted S.
std::vector<NodeId> collect_seeds(const AttributedGraph& g, NodeId start,
                                  std::size_t walk_len, std::size_t target_size,
                                  std::uint64_t rng_seed);

// Budget-aware variant used by the harness: every distinct node on the walk
// is charged; collection stops short if the budget runs out.
std::vector<NodeId> collect_seeds_tracked(const AttributedGraph& g, NodeId start,
                                          std::size_t target_size, Rng& rng,
                                          QueryTracker& tracker);

TourCollection sample_tours(const AttributedGraph& g,
                            const std::vector<NodeId>& seeds, std::size_t m,
                            CrawlBudget budget, std::uint64_t rng_seed);

// Checks every TourCollection invariant against the graph (endpoints in S,
// interiors outside S, consecutive pairs are edges, d_S and stored degrees
// match a recomputation). Throws DataError on violation.
void validate_tours(const AttributedGraph& g, const TourCollection& tours);

// d_S recomputed from the graph: edges from S to V\S.
std::size_t seed_out_degree(const AttributedGraph& g,
                            const std::vector<NodeId>& seeds);

}  // namespace crawlrlr
