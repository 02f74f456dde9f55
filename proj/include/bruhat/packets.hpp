#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "bruhat/family.hpp"

namespace bruhat {

/// Packet incidence for C(n,k): every generator in C(n,k+1) with its member
/// ranks in lexicographic order, and for every k-set the packets it lies in.
class PacketTable {
 public:
  struct Incidence {
    std::uint32_t generator;
    std::uint32_t position;
  };

  static std::shared_ptr<const PacketTable> get(int n, int k);

  PacketTable(int n, int k);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  const KSetUniverse& ksets() const noexcept { return *ksets_; }
  const KSetUniverse& generators() const noexcept { return *generators_; }
  std::size_t generator_count() const noexcept { return generators_->size(); }
  int packet_size() const noexcept { return k_ + 1; }

  std::span<const std::uint32_t> members(std::size_t g) const {
    return {members_.data() + g * static_cast<std::size_t>(k_ + 1),
            static_cast<std::size_t>(k_ + 1)};
  }
  std::span<const Incidence> incidences(std::size_t r) const {
    return {incidences_.data() + offsets_[r], offsets_[r + 1] - offsets_[r]};
  }

 private:
  int n_;
  int k_;
  std::shared_ptr<const KSetUniverse> ksets_;
  std::shared_ptr<const KSetUniverse> generators_;
  std::vector<std::uint32_t> members_;
  std::vector<std::size_t> offsets_;
  std::vector<Incidence> incidences_;
};

}  // namespace bruhat
