#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bbs {

// Carrier capacity: a positive integer or unbounded.
class Capacity {
 public:
  static Capacity finite(unsigned k);
  static Capacity infinite() { return Capacity(0, true); }
  // "inf" or a positive integer.
  static Capacity parse(std::string_view text);

  bool is_infinite() const { return infinite_; }
  unsigned value() const;  // throws std::logic_error when infinite
  bool admits(std::uint64_t load) const { return infinite_ || load <= k_; }
  std::string str() const { return infinite_ ? "inf" : std::to_string(k_); }

  bool operator==(const Capacity&) const = default;

 private:
  Capacity(unsigned k, bool inf) : k_(k), infinite_(inf) {}
  unsigned k_;
  bool infinite_;
};

// Boxes in a finite window; everything outside the window is empty.
struct BallConfiguration {
  std::vector<std::uint8_t> bits;
  std::uint64_t load = 0;  // balls held by the carrier

  static BallConfiguration parse(std::string_view text);
  std::string str() const;
  std::uint64_t ball_count() const;
  BallConfiguration padded(std::size_t extra_zeros) const;

  bool operator==(const BallConfiguration&) const = default;
};

struct CarrierResult {
  BallConfiguration config;  // config.load == final_load
  std::uint64_t final_load;
};

// One left-to-right carrier pass. Throws std::invalid_argument when
// initial_load exceeds the capacity.
CarrierResult evolve_carrier(const BallConfiguration& c, Capacity capacity,
                             std::uint64_t initial_load = 0);

// B'_n = min(1 - B_n, sum_{j<n} (B_j - B'_j)).
BallConfiguration evolve_udkdv(const BallConfiguration& c);
// B'_n = min(1 - B_n, L) + max(0, L + B_n - k), L = sum_{j<n} (B_j - B'_j).
BallConfiguration evolve_udkdv_capacity(const BallConfiguration& c, unsigned k);

struct Trajectory {
  Capacity capacity = Capacity::infinite();
  std::vector<BallConfiguration> steps;
};

// T carrier passes from load 0. The window is first extended to the right by
// (T + 1) * ball_count zeros so that no ball leaves it and the carrier is
// empty at the end of every pass.
Trajectory run_trajectory(const BallConfiguration& c, Capacity capacity, unsigned steps);

struct Block {
  std::size_t position;  // index of the leftmost ball
  std::size_t size;
};

struct SolitonReport {
  std::vector<std::vector<Block>> blocks;  // per step, left to right
  std::vector<std::uint64_t> ball_counts;
  bool conserved = true;
  std::vector<std::size_t> initial_sizes;  // sorted descending
  std::vector<std::size_t> final_sizes;
  bool sizes_preserved = true;
};

std::vector<Block> maximal_blocks(const BallConfiguration& c);
SolitonReport soliton_report(const Trajectory& t);

}  // namespace bbs
