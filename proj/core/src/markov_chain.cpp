#include "driftkit/markov_chain.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "driftkit/error.hpp"
#include "driftkit/special.hpp"

namespace driftkit {

namespace {

constexpr double kRowSumTol = 1e-12;

}  // namespace

MarkovChain::MarkovChain(std::vector<double> labels, std::vector<std::vector<Transition>> rows,
                         std::vector<char> target)
    : labels_(std::move(labels)), target_(std::move(target)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw StructuralError("chain has no states");
  if (rows.size() != n || target_.size() != n) {
    throw StructuralError("labels, rows and target flags differ in length");
  }
  if (n > 0xFFFFFFFFu) throw CapacityError("chain exceeds 2^32 states");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(labels_[i])) throw StructuralError("state " + std::to_string(i) + " has a non-finite label");
  }

  offsets_.reserve(n + 1);
  offsets_.push_back(0);
  for (std::size_t i = 0; i < n; ++i) {
    auto& r = rows[i];
    if (r.empty()) {
      if (!target_[i]) throw StructuralError("non-target state " + std::to_string(i) + " has no transitions");
      r.push_back({static_cast<std::uint32_t>(i), 1.0});
    }
    std::sort(r.begin(), r.end(), [](const Transition& a, const Transition& b) { return a.to < b.to; });
    CompensatedSum total;
    std::size_t begin = transitions_.size();
    for (const auto& t : r) {
      if (t.to >= n) {
        throw StructuralError("state " + std::to_string(i) + " points to missing state " + std::to_string(t.to));
      }
      if (!(t.prob >= 0.0 && t.prob <= 1.0 + kRowSumTol)) {
        throw StructuralError("state " + std::to_string(i) + " has an invalid probability");
      }
      total += t.prob;
      if (t.prob == 0.0) continue;
      if (transitions_.size() > begin && transitions_.back().to == t.to) {
        transitions_.back().prob += t.prob;
      } else {
        transitions_.push_back(t);
      }
    }
    if (std::abs(total.value() - 1.0) > kRowSumTol) {
      throw StructuralError("row " + std::to_string(i) + " sums to " + std::to_string(total.value()));
    }
    offsets_.push_back(transitions_.size());
  }
  rows.clear();

  // Reverse breadth-first search from the targets.
  std::vector<std::vector<std::uint32_t>> reverse(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& t : row(i)) reverse[t.to].push_back(static_cast<std::uint32_t>(i));
  }
  std::vector<char> seen(n, 0);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (target_[i]) {
      seen[i] = 1;
      queue.push_back(i);
    }
  }
  if (queue.empty()) throw StructuralError("chain has no target state");
  while (!queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    for (auto p : reverse[s]) {
      if (!seen[p] && !target_[p]) {
        seen[p] = 1;
        queue.push_back(p);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen[i]) throw StructuralError("target unreachable from state " + std::to_string(i));
  }
}

MarkovChain MarkovChain::with_threshold(std::vector<double> labels, std::vector<std::vector<Transition>> rows,
                                        double a) {
  std::vector<char> target(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) target[i] = labels[i] <= a ? 1 : 0;
  return MarkovChain(std::move(labels), std::move(rows), std::move(target));
}

MarkovChain MarkovChain::with_absorbing_targets() const {
  std::vector<std::vector<Transition>> rows(size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (target_[i]) {
      rows[i] = {{static_cast<std::uint32_t>(i), 1.0}};
    } else {
      auto r = row(i);
      rows[i].assign(r.begin(), r.end());
    }
  }
  return MarkovChain(labels_, std::move(rows), target_);
}

bool MarkovChain::targets_absorbing() const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (!target_[i]) continue;
    for (const auto& t : row(i)) {
      if (!target_[t.to]) return false;
    }
  }
  return true;
}

bool MarkovChain::is_monotone() const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (target_[i]) continue;
    for (const auto& t : row(i)) {
      if (labels_[t.to] > labels_[i]) return false;
    }
  }
  return true;
}

std::optional<std::size_t> MarkovChain::index_of_label(double label) const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

}  // namespace driftkit
