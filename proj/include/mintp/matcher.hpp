#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <span>
#include <vector>

#include "mintp/graph.hpp"

namespace mintp {

// Aho-Corasick automaton over vertex sequences. Feeding a walk one vertex at a
// time reports every pattern that ends at the current position.
class PathMatcher {
 public:
  using State = std::uint32_t;

  PathMatcher() = default;

  PathMatcher(std::span<const Path> patterns, std::size_t alphabet)
      : alphabet_(alphabet), pattern_count_(patterns.size()) {
    new_node();
    for (std::uint32_t id = 0; id < patterns.size(); ++id) {
      State cur = root();
      for (Vertex v : patterns[id].vertices) {
        auto& slot = delta_[cur * alphabet_ + v];
        if (slot == kNone) {
          const State fresh = new_node();
          delta_[cur * alphabet_ + v] = fresh;
          cur = fresh;
        } else {
          cur = slot;
        }
      }
      out_[cur].push_back(id);
    }
    link();
  }

  State root() const { return 0; }
  std::size_t state_count() const { return out_.size(); }
  std::size_t alphabet() const { return alphabet_; }

  State next(State s, Vertex v) const { return delta_[s * alphabet_ + v]; }

  // Pattern ids ending at this state, ascending.
  std::span<const std::uint32_t> matches(State s) const { return out_[s]; }

  State feed(State s, std::span<const Vertex> walk) const {
    for (Vertex v : walk) s = next(s, v);
    return s;
  }

  // Ids of every pattern toured by `walk`, ascending and unique.
  std::vector<std::uint32_t> toured(std::span<const Vertex> walk) const {
    std::vector<bool> hit(pattern_count_, false);
    std::vector<std::uint32_t> ids;
    State s = root();
    for (Vertex v : walk) {
      s = next(s, v);
      for (auto id : out_[s]) {
        if (!hit[id]) {
          hit[id] = true;
          ids.push_back(id);
        }
      }
    }
    std::sort(ids.begin(), ids.end());
    return ids;
  }

 private:
  static constexpr State kNone = static_cast<State>(-1);

  State new_node() {
    delta_.insert(delta_.end(), alphabet_, kNone);
    out_.emplace_back();
    return static_cast<State>(out_.size() - 1);
  }

  void link() {
    std::vector<State> fail(out_.size(), 0);
    std::queue<State> queue;
    for (std::size_t v = 0; v < alphabet_; ++v) {
      auto& slot = delta_[v];
      if (slot == kNone) {
        slot = root();
      } else {
        fail[slot] = root();
        queue.push(slot);
      }
    }
    while (!queue.empty()) {
      const State u = queue.front();
      queue.pop();
      const auto& inherited = out_[fail[u]];
      out_[u].insert(out_[u].end(), inherited.begin(), inherited.end());
      std::sort(out_[u].begin(), out_[u].end());
      for (std::size_t v = 0; v < alphabet_; ++v) {
        auto& slot = delta_[u * alphabet_ + v];
        const State via_fail = delta_[fail[u] * alphabet_ + v];
        if (slot == kNone) {
          slot = via_fail;
        } else {
          fail[slot] = via_fail;
          queue.push(slot);
        }
      }
    }
  }

  std::size_t alphabet_ = 0;
  std::size_t pattern_count_ = 0;
  std::vector<State> delta_;
  std::vector<std::vector<std::uint32_t>> out_;
};

}  // namespace mintp
