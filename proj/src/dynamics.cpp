#include "bbs/dynamics.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace bbs {

Capacity Capacity::finite(unsigned k) {
  if (k == 0) throw std::invalid_argument("capacity must be positive");
  return Capacity(k, false);
}

Capacity Capacity::parse(std::string_view text) {
  if (text == "inf" || text == "infinite" || text == "infinity") return infinite();
  unsigned k = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("capacity must be a positive integer or 'inf': " +
                                std::string(text));
  }
  return finite(k);
}

unsigned Capacity::value() const {
  if (infinite_) throw std::logic_error("infinite capacity has no finite value");
  return k_;
}

BallConfiguration BallConfiguration::parse(std::string_view text) {
  BallConfiguration c;
  c.bits.reserve(text.size());
  for (char ch : text) {
    if (ch != '0' && ch != '1') {
      throw std::invalid_argument("configuration must be a 0/1 string");
    }
    c.bits.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return c;
}

std::string BallConfiguration::str() const {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) s[i] = static_cast<char>('0' + bits[i]);
  return s;
}

std::uint64_t BallConfiguration::ball_count() const {
  return static_cast<std::uint64_t>(std::count(bits.begin(), bits.end(), 1));
}

BallConfiguration BallConfiguration::padded(std::size_t extra_zeros) const {
  BallConfiguration c = *this;
  c.bits.resize(bits.size() + extra_zeros, 0);
  return c;
}

CarrierResult evolve_carrier(const BallConfiguration& c, Capacity capacity,
                             std::uint64_t initial_load) {
  if (!capacity.admits(initial_load)) {
    throw std::invalid_argument("initial load exceeds the carrier capacity");
  }
  BallConfiguration out;
  out.bits.resize(c.bits.size());
  std::uint64_t load = initial_load;
  for (std::size_t i = 0; i < c.bits.size(); ++i) {
    if (c.bits[i]) {
      if (capacity.admits(load + 1)) {
        ++load;
        out.bits[i] = 0;
      } else {
        out.bits[i] = 1;
      }
    } else if (load > 0) {
      --load;
      out.bits[i] = 1;
    } else {
      out.bits[i] = 0;
    }
  }
  out.load = load;
  return {out, load};
}

BallConfiguration evolve_udkdv(const BallConfiguration& c) {
  BallConfiguration out;
  out.bits.resize(c.bits.size());
  std::int64_t running = 0;  // sum_{j<n} (B_j - B'_j)
  for (std::size_t i = 0; i < c.bits.size(); ++i) {
    const std::int64_t b = c.bits[i];
    const std::int64_t next = std::min<std::int64_t>(1 - b, running);
    out.bits[i] = static_cast<std::uint8_t>(next);
    running += b - next;
  }
  out.load = static_cast<std::uint64_t>(running);
  return out;
}

BallConfiguration evolve_udkdv_capacity(const BallConfiguration& c, unsigned k) {
  if (k == 0) throw std::invalid_argument("capacity must be positive");
  BallConfiguration out;
  out.bits.resize(c.bits.size());
  const std::int64_t cap = k;
  std::int64_t running = 0;
  for (std::size_t i = 0; i < c.bits.size(); ++i) {
    const std::int64_t b = c.bits[i];
    const std::int64_t next =
        std::min<std::int64_t>(1 - b, running) + std::max<std::int64_t>(0, running + b - cap);
    out.bits[i] = static_cast<std::uint8_t>(next);
    running += b - next;
  }
  out.load = static_cast<std::uint64_t>(running);
  return out;
}

Trajectory run_trajectory(const BallConfiguration& c, Capacity capacity, unsigned steps) {
  Trajectory t;
  t.capacity = capacity;
  const std::size_t balls = static_cast<std::size_t>(c.ball_count());
  BallConfiguration cur = c.padded((static_cast<std::size_t>(steps) + 1) * balls);
  cur.load = 0;
  t.steps.reserve(steps + 1);
  t.steps.push_back(cur);
  for (unsigned s = 0; s < steps; ++s) {
    cur = evolve_carrier(cur, capacity, 0).config;
    t.steps.push_back(cur);
  }
  return t;
}

std::vector<Block> maximal_blocks(const BallConfiguration& c) {
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < c.bits.size();) {
    if (!c.bits[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < c.bits.size() && c.bits[j]) ++j;
    blocks.push_back({i, j - i});
    i = j;
  }
  return blocks;
}

SolitonReport soliton_report(const Trajectory& t) {
  SolitonReport r;
  for (const BallConfiguration& c : t.steps) {
    r.blocks.push_back(maximal_blocks(c));
    r.ball_counts.push_back(c.ball_count());
  }
  if (t.steps.empty()) return r;
  r.conserved = std::all_of(r.ball_counts.begin(), r.ball_counts.end(),
                            [&](std::uint64_t b) { return b == r.ball_counts.front(); });
  auto sizes = [](const std::vector<Block>& bs) {
    std::vector<std::size_t> s;
    for (const Block& b : bs) s.push_back(b.size);
    std::sort(s.rbegin(), s.rend());
    return s;
  };
  r.initial_sizes = sizes(r.blocks.front());
  r.final_sizes = sizes(r.blocks.back());
  r.sizes_preserved = r.initial_sizes == r.final_sizes;
  return r;
}

}  // namespace bbs
