#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "swald/numerics.hpp"

namespace swald::detail {

// Order-independent reduction: pairwise within fixed blocks, pairwise across.
class BlockSum {
  public:
    void add(double x) {
        block_[fill_++] = x;
        if (fill_ == kBlock) flush();
    }
    double total() {
        flush();
        return pairwise_sum(sums_);
    }

  private:
    static constexpr std::size_t kBlock = 4096;
    void flush() {
        if (fill_ == 0) return;
        sums_.push_back(pairwise_sum({block_.data(), fill_}));
        fill_ = 0;
    }
    std::array<double, kBlock> block_{};
    std::size_t fill_ = 0;
    std::vector<double> sums_;
};

}  // namespace swald::detail
