#include "bruhat/packets.hpp"

#include <map>
#include <mutex>

namespace bruhat {

PacketTable::PacketTable(int n, int k)
    : n_(n), k_(k), ksets_(KSetUniverse::get(n, k)), generators_(KSetUniverse::get(n, k + 1)) {
  const std::size_t m = static_cast<std::size_t>(k + 1);
  const std::size_t gens = generators_->size();
  members_.resize(gens * m);
  std::vector<std::size_t> counts(ksets_->size(), 0);
  for (std::size_t g = 0; g < gens; ++g) {
    const KSet& x = generators_->at(g);
    for (std::size_t pos = 0; pos < m; ++pos) {
      const std::uint32_t r =
          static_cast<std::uint32_t>(ksets_->rank(x.hat(static_cast<int>(m - pos))));
      members_[g * m + pos] = r;
      ++counts[r];
    }
  }
  offsets_.assign(ksets_->size() + 1, 0);
  for (std::size_t r = 0; r < counts.size(); ++r) offsets_[r + 1] = offsets_[r] + counts[r];
  incidences_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t g = 0; g < gens; ++g) {
    for (std::size_t pos = 0; pos < m; ++pos) {
      const std::uint32_t r = members_[g * m + pos];
      incidences_[fill[r]++] = {static_cast<std::uint32_t>(g), static_cast<std::uint32_t>(pos)};
    }
  }
}

std::shared_ptr<const PacketTable> PacketTable::get(int n, int k) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const PacketTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, k}];
  if (!slot) slot = std::make_shared<const PacketTable>(n, k);
  return slot;
}

}  // namespace bruhat
