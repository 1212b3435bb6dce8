#include "bbs/level_matrix.hpp"

#include <stdexcept>
#include <string>

namespace bbs {

namespace {

void check_level(unsigned n) {
  if (n > kMaxSparseLevel) {
    throw InfeasibleSize("level " + std::to_string(n) + " exceeds the sparse budget of " +
                         std::to_string(kMaxSparseLevel));
  }
}

// One block of a level-(n+1) matrix: column block c (first input symbol) is
// sent to row block `row_block` and filled with the level-n matrix of `child`.
struct Block {
  unsigned row_block;
  StateId child;
};
using BlockRule = std::array<Block, 2>;  // indexed by column block

std::vector<std::vector<std::uint64_t>> run_recursion(const std::vector<BlockRule>& rules,
                                                      unsigned n) {
  check_level(n);
  std::vector<std::vector<std::uint64_t>> images(rules.size(), std::vector<std::uint64_t>{0});
  for (unsigned level = 0; level < n; ++level) {
    const std::uint64_t half = std::uint64_t{1} << level;
    std::vector<std::vector<std::uint64_t>> next(rules.size(),
                                                 std::vector<std::uint64_t>(2 * half));
    for (std::size_t i = 0; i < rules.size(); ++i) {
      for (unsigned cb = 0; cb < 2; ++cb) {
        const Block& b = rules[i][cb];
        const auto& child = images[b.child];
        const std::uint64_t row_off = b.row_block * half;
        const std::uint64_t col_off = cb * half;
        for (std::uint64_t c = 0; c < half; ++c) next[i][col_off + c] = row_off + child[c];
      }
    }
    images = std::move(next);
  }
  return images;
}

}  // namespace

LevelMatrix::LevelMatrix(System system, StateId state, unsigned level,
                         std::vector<std::uint64_t> image)
    : system_(system), state_(state), level_(level), image_(std::move(image)) {
  if (image_.size() != dim()) throw std::invalid_argument("level matrix has the wrong size");
  for (std::uint64_t r : image_) {
    if (r >= dim()) throw std::invalid_argument("level matrix row index out of range");
  }
}

SparseIntMatrix LevelMatrix::to_sparse() const {
  std::vector<Triplet> e;
  e.reserve(image_.size());
  for (std::uint64_t c = 0; c < image_.size(); ++c) e.push_back({image_[c], c, 1});
  return SparseIntMatrix(dim(), std::move(e));
}

LevelMatrix build_direct(const MealyAutomaton& automaton, StateId state, unsigned n) {
  check_level(n);
  if (state >= automaton.state_count()) throw std::out_of_range("no such state");
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<std::uint64_t> image(dim);
  for (std::uint64_t c = 0; c < dim; ++c) image[c] = act_index(automaton, state, c, n);
  return LevelMatrix(automaton.system(), state, n, std::move(image));
}

std::vector<LevelMatrix> build_recursive(unsigned k, unsigned n) {
  const System system = System::bbs(k);
  std::vector<BlockRule> rules(k + 1);
  rules[0] = {Block{0, 0}, Block{0, 1}};
  for (StateId i = 1; i < k; ++i) rules[i] = {Block{1, i - 1}, Block{0, i + 1}};
  rules[k] = {Block{1, k - 1}, Block{1, k}};

  auto images = run_recursion(rules, n);
  std::vector<LevelMatrix> out;
  out.reserve(images.size());
  for (StateId i = 0; i <= k; ++i) out.emplace_back(system, i, n, std::move(images[i]));
  return out;
}

std::array<LevelMatrix, 2> build_lamplighter_recursive(unsigned n) {
  const std::vector<BlockRule> rules = {
      {Block{1, 0}, Block{0, 1}},
      {Block{0, 0}, Block{1, 1}},
  };
  auto images = run_recursion(rules, n);
  const System system = System::lamplighter();
  return {LevelMatrix(system, 0, n, std::move(images[0])),
          LevelMatrix(system, 1, n, std::move(images[1]))};
}

std::vector<LevelMatrix> build_level(const System& system, unsigned n) {
  switch (system.kind) {
    case SystemKind::Bbs: return build_recursive(system.capacity, n);
    case SystemKind::Lamplighter: {
      auto pair = build_lamplighter_recursive(n);
      return {std::move(pair[0]), std::move(pair[1])};
    }
    case SystemKind::Custom: break;
  }
  throw std::invalid_argument("custom systems have no level matrices");
}

int entry_formula(SystemKind kind, unsigned eps, std::uint64_t row, std::uint64_t col,
                  unsigned n) {
  if (n == 0 || n > 63) throw std::invalid_argument("entry formula needs 1 <= n <= 63");
  if (eps > 1) throw std::invalid_argument("entry formula is defined for states 0 and 1");
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (row >= dim || col >= dim) throw std::out_of_range("entry outside the level");
  auto digit = [n](std::uint64_t x, unsigned i) {  // i-th digit, 1-based, MSB first
    return static_cast<unsigned>((x >> (n - i)) & 1u);
  };
  unsigned prod = 1;
  for (unsigned i = 1; i <= n && prod; ++i) {
    const unsigned prev = i == 1 ? eps : digit(col, i - 1);
    const unsigned factor = kind == SystemKind::Bbs
                                ? digit(row, i) + 1 + prev
                                : digit(row, i) + digit(col, i) + prev;
    prod &= factor & 1u;
  }
  return static_cast<int>(prod);
}

SparseIntMatrix transpose(const LevelMatrix& m) { return m.to_sparse().transpose(); }

}  // namespace bbs
