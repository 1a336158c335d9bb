// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "drot/geometry.hpp"

namespace drot::detail {

/// Dense membership bitmap over a scan box.
class VisitedMap {
 public:
  explicit VisitedMap(const ScanBox& box)
      : box_(box), bits_(box.width() * box.height(), false) {}

  bool test(std::int64_t x, std::int64_t y) const {
    return box_.contains(x, y) && bits_[index(x, y)];
  }
  void set(std::int64_t x, std::int64_t y) {
    if (box_.contains(x, y)) bits_[index(x, y)] = true;
  }

 private:
  std::size_t index(std::int64_t x, std::int64_t y) const {
    return static_cast<std::size_t>(x - box_.x_min) * box_.height() +
           static_cast<std::size_t>(y - box_.y_min);
  }

  ScanBox box_;
  std::vector<bool> bits_;
};

}  // namespace drot::detail
