#include "nukc/ws_dp.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace nukc {

namespace {

constexpr Weight kUnreachable = -1;

// 0/1 knapsack over the points of one block: best(c, r) is the largest blue
// weight of a subset of exactly c points whose red weight, capped at red_cap,
// equals r. Every layer is kept for witness extraction.
class BlockKnapsack {
 public:
  BlockKnapsack(std::span<const PointId> block, int max_count, Weight red_cap, const WeightFn& red,
                const WeightFn& blue)
      : items_(block.begin(), block.end()),
        count_cap_(std::min<int>(max_count, static_cast<int>(block.size()))),
        red_cap_(std::max<Weight>(red_cap, 0)) {
    const std::size_t cells = static_cast<std::size_t>(count_cap_ + 1) * (red_cap_ + 1);
    layers_.assign(items_.size() + 1, std::vector<Weight>(cells, kUnreachable));
    layers_[0][index(0, 0)] = 0;
    for (std::size_t j = 0; j < items_.size(); ++j) {
      const auto& prev = layers_[j];
      auto& next = layers_[j + 1];
      next = prev;
      const Weight rw = red[items_[j]];
      const Weight bw = blue[items_[j]];
      for (int c = 0; c < count_cap_; ++c) {
        for (Weight r = 0; r <= red_cap_; ++r) {
          const Weight v = prev[index(c, r)];
          if (v == kUnreachable) continue;
          auto& slot = next[index(c + 1, std::min(red_cap_, r + rw))];
          slot = std::max(slot, v + bw);
        }
      }
    }
  }

  int count_cap() const { return count_cap_; }
  Weight red_cap() const { return red_cap_; }
  Weight best(int c, Weight r) const { return layers_.back()[index(c, r)]; }

  PointSet witness(int c, Weight r, const WeightFn& red, const WeightFn& blue) const {
    PointSet out;
    Weight value = best(c, r);
    for (std::size_t j = items_.size(); j > 0; --j) {
      const auto& prev = layers_[j - 1];
      if (prev[index(c, r)] == value) continue;
      // Item j-1 was taken: find the predecessor cell it came from.
      const Weight rw = red[items_[j - 1]];
      const Weight bw = blue[items_[j - 1]];
      bool found = false;
      for (Weight pr = 0; pr <= red_cap_ && !found; ++pr) {
        if (std::min(red_cap_, pr + rw) != r) continue;
        const Weight pv = prev[index(c - 1, pr)];
        if (pv != kUnreachable && pv + bw == value) {
          out.push_back(items_[j - 1]);
          --c;
          r = pr;
          value = pv;
          found = true;
        }
      }
      if (!found) throw InternalAssertion("knapsack witness extraction lost its trail");
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::size_t index(int c, Weight r) const { return static_cast<std::size_t>(c) * (red_cap_ + 1) + r; }

  PointSet items_;
  int count_cap_;
  Weight red_cap_;
  std::vector<std::vector<Weight>> layers_;
};

struct OuterStep {
  int prev = -1;
  int kind = 0;  // 0 skip, 1 whole block with a top ball, 2 zero-radius balls
  int count = 0;
  Weight inner_red = 0;
};

}  // namespace

PartitionByCenters partition_by_centers(const MetricSpace& space, std::span<const PointId> centers, double radius) {
  PartitionByCenters out;
  out.centers.assign(centers.begin(), centers.end());
  std::vector<int> owner(space.size(), -1);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    PointSet block;
    for (PointId p : ball_members(space, centers[i], radius)) {
      if (owner[p] >= 0) throw InputError(fmt::format("candidate balls around {} and {} overlap", centers[owner[p]], centers[i]));
      owner[p] = static_cast<int>(i);
      block.push_back(p);
    }
    out.blocks.push_back(std::move(block));
  }
  PointSet rest;
  for (PointId p = 0; p < space.size(); ++p) {
    if (owner[p] < 0) rest.push_back(p);
  }
  out.blocks.push_back(std::move(rest));
  return out;
}

InnerResult inner_feasible(std::span<const PointId> block, int k, Weight red_target, Weight blue_target,
                           const WeightFn& red, const WeightFn& blue) {
  if (k < 0) throw InputError("inner budget must be nonnegative");
  const BlockKnapsack table(block, k, red_target, red, blue);
  const Weight need_red = table.red_cap();
  for (int c = 0; c <= table.count_cap(); ++c) {
    if (table.best(c, need_red) >= std::max<Weight>(blue_target, 0)) {
      return {true, table.witness(c, need_red, red, blue)};
    }
  }
  return {false, {}};
}

WsResult solve_ws(const ColorfulInstance& instance, const CenterRestriction& restriction) {
  if (instance.levels() != 2 || instance.radii[1] != 0) {
    throw InputError("well-separated solver expects radii (r_1, 0)");
  }
  const auto& d = instance.space;
  const int n = d.size();
  const double r1 = instance.radii[0];
  const auto& ys = restriction.candidates;
  for (std::size_t a = 0; a < ys.size(); ++a) {
    if (!d.contains(ys[a])) throw InputError(fmt::format("candidate {} out of range", ys[a]));
    for (std::size_t b = 0; b < a; ++b) {
      if (!(d(ys[a], ys[b]) > 2 * r1)) {
        throw InputError(fmt::format("candidates {} and {} are not more than 2 r_1 apart", ys[b], ys[a]));
      }
    }
  }
  const PartitionByCenters parts = partition_by_centers(d, ys, r1);
  const int z = parts.candidate_blocks();
  const int top_cap = std::min(instance.budgets[0], z);
  const int zero_cap = std::min(instance.budgets[1], n);
  const Weight red_cap = std::min(std::max<Weight>(instance.red_target, 0), instance.red.total());
  const Weight blue_need = std::max<Weight>(instance.blue_target, 0);
  if (instance.red_target > instance.red.total()) return {};

  const auto cell = [&](int a, int b, Weight r) {
    return (static_cast<std::size_t>(a) * (zero_cap + 1) + b) * (red_cap + 1) + r;
  };
  const std::size_t cells = static_cast<std::size_t>(top_cap + 1) * (zero_cap + 1) * (red_cap + 1);

  std::vector<BlockKnapsack> knapsacks;
  std::vector<std::vector<OuterStep>> steps;
  std::vector<Weight> table(cells, kUnreachable);
  table[cell(0, 0, 0)] = 0;
  for (int i = 0; i <= z; ++i) {
    const PointSet& block = parts.blocks[i];
    knapsacks.emplace_back(block, zero_cap, red_cap, instance.red, instance.blue);
    const BlockKnapsack& inner = knapsacks.back();
    const Weight block_red = instance.red.sum(block);
    const Weight block_blue = instance.blue.sum(block);

    std::vector<Weight> next(cells, kUnreachable);
    std::vector<OuterStep> step(cells);
    const auto relax = [&](std::size_t to, Weight value, OuterStep how) {
      if (value > next[to]) {
        next[to] = value;
        step[to] = how;
      }
    };
    for (int a = 0; a <= top_cap; ++a) {
      for (int b = 0; b <= zero_cap; ++b) {
        for (Weight r = 0; r <= red_cap; ++r) {
          const std::size_t from = cell(a, b, r);
          const Weight v = table[from];
          if (v == kUnreachable) continue;
          relax(from, v, {static_cast<int>(from), 0, 0, 0});
          if (i < z && a < top_cap) {
            relax(cell(a + 1, b, std::min(red_cap, r + block_red)), v + block_blue, {static_cast<int>(from), 1, 0, 0});
          }
          for (int c = 1; c <= std::min(zero_cap - b, inner.count_cap()); ++c) {
            for (Weight ri = 0; ri <= red_cap; ++ri) {
              const Weight bi = inner.best(c, ri);
              if (bi == kUnreachable) continue;
              relax(cell(a, b + c, std::min(red_cap, r + ri)), v + bi, {static_cast<int>(from), 2, c, ri});
            }
          }
        }
      }
    }
    table = std::move(next);
    steps.push_back(std::move(step));
  }

  for (int a = 0; a <= top_cap; ++a) {
    for (int b = 0; b <= zero_cap; ++b) {
      std::size_t at = cell(a, b, red_cap);
      if (table[at] < blue_need) continue;
      WsResult result;
      result.feasible = true;
      LevelAssignment top{{}, r1};
      LevelAssignment zero{{}, 0.0};
      for (int i = z; i >= 0; --i) {
        const OuterStep& s = steps[i][at];
        if (s.kind == 1) {
          top.centers.push_back(parts.centers[i]);
        } else if (s.kind == 2) {
          auto picked = knapsacks[i].witness(s.count, s.inner_red, instance.red, instance.blue);
          zero.centers.insert(zero.centers.end(), picked.begin(), picked.end());
        }
        at = static_cast<std::size_t>(s.prev);
      }
      std::sort(top.centers.begin(), top.centers.end());
      std::sort(zero.centers.begin(), zero.centers.end());
      result.witness.levels = {std::move(top), std::move(zero)};
      return result;
    }
  }
  return {};
}

}  // namespace nukc
