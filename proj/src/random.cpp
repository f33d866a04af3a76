#include "faircss/random.hpp"

#include <algorithm>
#include <numeric>

namespace faircss {

std::uint64_t SubsetSampler::uniform(std::uint64_t bound) {
  // 2^64 mod bound, computed without overflow.
  const std::uint64_t excess = (0 - bound) % bound;
  const std::uint64_t limit = 0 - excess;  // 2^64 - excess, 0 meaning 2^64
  for (;;) {
    const std::uint64_t x = engine_();
    if (limit == 0 || x < limit) return x % bound;
  }
}

std::vector<std::size_t> SubsetSampler::subset(std::size_t n, std::size_t k) {
  std::vector<std::size_t> slots(n);
  std::iota(slots.begin(), slots.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform(n - i));
    std::swap(slots[i], slots[j]);
  }
  slots.resize(k);
  std::sort(slots.begin(), slots.end());
  return slots;
}

}  // namespace faircss
