#include "cpm/structure.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "cpm/error.hpp"

namespace cpm {

namespace {

using Colouring = std::vector<std::size_t>;

// One refinement step: a world's new colour is its old colour plus, per
// agent, the sorted colours of its class. Keys are interned through `codes`
// so colourings of different models stay comparable.
template <class Codes>
Colouring refine(const EpistemicModel& m, const std::vector<std::size_t>& agent_order,
                 const Colouring& colour, Codes& codes) {
  Colouring next(m.size());
  for (WorldIndex w = 0; w < m.size(); ++w) {
    std::vector<std::size_t> key{colour[w]};
    for (auto a : agent_order) {
      const auto& cls = m.relation(a).members(m.relation(a).class_of(w));
      std::vector<std::size_t> seen;
      seen.reserve(cls.size());
      for (auto v : cls) seen.push_back(colour[v]);
      std::sort(seen.begin(), seen.end());
      key.push_back(seen.size());
      key.insert(key.end(), seen.begin(), seen.end());
    }
    next[w] = codes.try_emplace(std::move(key), codes.size()).first->second;
  }
  return next;
}

std::size_t distinct(const Colouring& c) {
  auto copy = c;
  std::sort(copy.begin(), copy.end());
  return static_cast<std::size_t>(std::unique(copy.begin(), copy.end()) - copy.begin());
}

}  // namespace

EpistemicModel bisimulation_quotient(const EpistemicModel& model) {
  const auto n = model.size();
  const auto agents = model.agents().size();
  std::vector<std::size_t> block(n);
  {
    std::map<std::vector<Proposition>, std::size_t> by_label;
    for (WorldIndex w = 0; w < n; ++w) {
      block[w] = by_label.try_emplace(model.world(w).label, by_label.size()).first->second;
    }
  }
  std::size_t count = distinct(block);
  while (true) {
    // Signature: own block plus, per agent, the set of blocks in its class.
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (WorldIndex w = 0; w < n; ++w) {
      std::vector<std::size_t> sig{block[w]};
      for (std::size_t a = 0; a < agents; ++a) {
        const auto& rel = model.relation(a);
        std::vector<std::size_t> reach;
        for (auto v : rel.members(rel.class_of(w))) reach.push_back(block[v]);
        std::sort(reach.begin(), reach.end());
        reach.erase(std::unique(reach.begin(), reach.end()), reach.end());
        sig.push_back(reach.size());
        sig.insert(sig.end(), reach.begin(), reach.end());
      }
      next[w] = ids.try_emplace(std::move(sig), ids.size()).first->second;
    }
    block = std::move(next);
    auto refined = distinct(block);
    if (refined == count) break;
    count = refined;
  }

  // Worlds are sorted by id, so the first member met is the least.
  std::vector<WorldIndex> rep(count, n);
  for (WorldIndex w = 0; w < n; ++w) {
    if (rep[block[w]] == n) rep[block[w]] = w;
  }
  std::vector<World> worlds;
  for (auto w : rep) worlds.push_back(model.world(w));
  std::vector<Partition> relations;
  for (std::size_t a = 0; a < agents; ++a) {
    const auto& rel = model.relation(a);
    std::vector<std::vector<std::size_t>> keys;
    for (auto w : rep) {
      std::vector<std::size_t> reach;
      for (auto v : rel.members(rel.class_of(w))) reach.push_back(block[v]);
      std::sort(reach.begin(), reach.end());
      reach.erase(std::unique(reach.begin(), reach.end()), reach.end());
      keys.push_back(std::move(reach));
    }
    relations.push_back(Partition::from_keys(keys));
  }
  return EpistemicModel(model.agents(), model.inputs(), std::move(worlds), std::move(relations));
}

namespace {

class IsoSearch {
 public:
  IsoSearch(const EpistemicModel& m1, const EpistemicModel& m2,
            std::vector<std::size_t> agent_map, Colouring c1, Colouring c2)
      : m1_(m1), m2_(m2), agent_map_(std::move(agent_map)), c1_(std::move(c1)),
        c2_(std::move(c2)), image_(m1.size(), kUnset), used_(m2.size(), false) {
    const auto agents = agent_map_.size();
    class_to_.resize(agents);
    class_from_.resize(agents);
    for (std::size_t a = 0; a < agents; ++a) {
      class_to_[a].assign(m1.relation(a).class_count(), kUnset);
      class_from_[a].assign(m2.relation(agent_map_[a]).class_count(), kUnset);
    }
    order_ = search_order();
  }

  std::optional<Isomorphism> run() {
    if (!extend(0)) return std::nullopt;
    return image_;
  }

 private:
  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  // BFS from the rarest colour so every later world is constrained by an
  // already placed neighbour whenever the model is connected.
  std::vector<WorldIndex> search_order() const {
    std::map<std::size_t, std::size_t> freq;
    for (auto c : c1_) ++freq[c];
    std::vector<WorldIndex> starts(m1_.size());
    for (WorldIndex w = 0; w < m1_.size(); ++w) starts[w] = w;
    std::stable_sort(starts.begin(), starts.end(),
                     [&](auto x, auto y) { return freq[c1_[x]] < freq[c1_[y]]; });
    std::vector<bool> seen(m1_.size(), false);
    std::vector<WorldIndex> order;
    for (auto s : starts) {
      if (seen[s]) continue;
      std::deque<WorldIndex> queue{s};
      seen[s] = true;
      while (!queue.empty()) {
        auto w = queue.front();
        queue.pop_front();
        order.push_back(w);
        for (std::size_t a = 0; a < agent_map_.size(); ++a) {
          const auto& rel = m1_.relation(a);
          for (auto v : rel.members(rel.class_of(w))) {
            if (!seen[v]) {
              seen[v] = true;
              queue.push_back(v);
            }
          }
        }
      }
    }
    return order;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    const auto w = order_[depth];
    for (WorldIndex v = 0; v < m2_.size(); ++v) {
      if (used_[v] || c1_[w] != c2_[v]) continue;
      std::vector<std::size_t> bound;
      if (!bind(w, v, bound)) {
        unbind(bound);
        continue;
      }
      image_[w] = v;
      used_[v] = true;
      if (extend(depth + 1)) return true;
      image_[w] = kUnset;
      used_[v] = false;
      unbind(bound);
    }
    return false;
  }

  // Maps w's class to v's class for every agent; `bound` records the agents
  // whose class pairing was newly fixed so it can be undone.
  bool bind(WorldIndex w, WorldIndex v, std::vector<std::size_t>& bound) {
    for (std::size_t a = 0; a < agent_map_.size(); ++a) {
      const auto& r1 = m1_.relation(a);
      const auto& r2 = m2_.relation(agent_map_[a]);
      auto k1 = r1.class_of(w);
      auto k2 = r2.class_of(v);
      if (class_to_[a][k1] == kUnset && class_from_[a][k2] == kUnset) {
        if (r1.members(k1).size() != r2.members(k2).size()) return false;
        class_to_[a][k1] = k2;
        class_from_[a][k2] = k1;
        bound.push_back(a);
        bound_classes_.push_back(k1);
      } else if (class_to_[a][k1] != k2) {
        return false;
      }
    }
    return true;
  }

  void unbind(std::vector<std::size_t>& bound) {
    while (!bound.empty()) {
      auto a = bound.back();
      auto k1 = bound_classes_.back();
      bound.pop_back();
      bound_classes_.pop_back();
      class_from_[a][class_to_[a][k1]] = kUnset;
      class_to_[a][k1] = kUnset;
    }
  }

  const EpistemicModel& m1_;
  const EpistemicModel& m2_;
  std::vector<std::size_t> agent_map_;
  Colouring c1_, c2_;
  Isomorphism image_;
  std::vector<bool> used_;
  std::vector<std::vector<std::size_t>> class_to_, class_from_;
  std::vector<std::size_t> bound_classes_;
  std::vector<WorldIndex> order_;
};

}  // namespace

std::optional<Isomorphism> isomorphic(const EpistemicModel& m1, const EpistemicModel& m2) {
  if (m1.size() != m2.size() || m1.agents().size() != m2.agents().size()) return std::nullopt;
  std::vector<std::size_t> agent_map;
  for (const auto& a : m1.agents()) {
    auto b = m2.agents().find(a);
    if (!b) return std::nullopt;
    agent_map.push_back(*b);
  }
  for (std::size_t a = 0; a < agent_map.size(); ++a) {
    if (m1.relation(a).class_count() != m2.relation(agent_map[a]).class_count()) {
      return std::nullopt;
    }
  }

  std::map<std::vector<Proposition>, std::size_t> labels;
  Colouring c1(m1.size()), c2(m2.size());
  for (WorldIndex w = 0; w < m1.size(); ++w) {
    c1[w] = labels.try_emplace(m1.world(w).label, labels.size()).first->second;
  }
  for (WorldIndex w = 0; w < m2.size(); ++w) {
    c2[w] = labels.try_emplace(m2.world(w).label, labels.size()).first->second;
  }
  std::vector<std::size_t> identity(agent_map.size());
  for (std::size_t a = 0; a < identity.size(); ++a) identity[a] = a;
  while (true) {
    auto h1 = c1, h2 = c2;
    std::sort(h1.begin(), h1.end());
    std::sort(h2.begin(), h2.end());
    if (h1 != h2) return std::nullopt;
    std::map<std::vector<std::size_t>, std::size_t> codes;
    auto n1 = refine(m1, identity, c1, codes);
    auto n2 = refine(m2, agent_map, c2, codes);
    bool stable = distinct(n1) == distinct(c1);
    c1 = std::move(n1);
    c2 = std::move(n2);
    if (stable) {
      h1 = c1;
      h2 = c2;
      std::sort(h1.begin(), h1.end());
      std::sort(h2.begin(), h2.end());
      if (h1 != h2) return std::nullopt;
      break;
    }
  }
  return IsoSearch(m1, m2, std::move(agent_map), std::move(c1), std::move(c2)).run();
}

std::size_t related_pairs(const EpistemicModel& model, std::size_t agent) {
  std::size_t pairs = 0;
  for (const auto& cls : model.relation(agent).classes()) pairs += cls.size() * (cls.size() - 1) / 2;
  return pairs;
}

}  // namespace cpm
