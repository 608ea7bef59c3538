#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace driftkit {

struct Transition {
  std::uint32_t to;
  double prob;
};

// Finite chain over real-labelled states with a designated target set.
// Rows are stored sorted by destination with duplicates merged. Construction
// validates row sums (1e-12), index ranges and that every non-target state
// can reach a target.
class MarkovChain {
 public:
  MarkovChain(std::vector<double> labels, std::vector<std::vector<Transition>> rows, std::vector<char> target);

  // Target set {i : labels[i] <= a}.
  static MarkovChain with_threshold(std::vector<double> labels, std::vector<std::vector<Transition>> rows, double a);

  std::size_t size() const noexcept { return labels_.size(); }
  double label(std::size_t i) const { return labels_.at(i); }
  const std::vector<double>& labels() const noexcept { return labels_; }
  bool is_target(std::size_t i) const { return target_.at(i) != 0; }
  std::span<const Transition> row(std::size_t i) const {
    return {transitions_.data() + offsets_.at(i), transitions_.data() + offsets_.at(i + 1)};
  }
  std::size_t transition_count() const noexcept { return transitions_.size(); }

  // Copy in which every target state loops on itself with probability 1.
  MarkovChain with_absorbing_targets() const;
  bool targets_absorbing() const;

  // No non-target state moves to a strictly larger label.
  bool is_monotone() const;

  std::optional<std::size_t> index_of_label(double label) const;

 private:
  std::vector<double> labels_;
  std::vector<char> target_;
  std::vector<std::size_t> offsets_;
  std::vector<Transition> transitions_;
};

}  // namespace driftkit
