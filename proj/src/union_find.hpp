#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace hyperpoly::detail {

// Plain union-find with path halving; small instances only, so no ranks.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), components_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Returns false if x and y were already joined.
    bool unite(std::size_t x, std::size_t y) {
        x = find(x);
        y = find(y);
        if (x == y) return false;
        if (y < x) std::swap(x, y);
        parent_[y] = x;
        --components_;
        return true;
    }

    std::size_t components() const noexcept { return components_; }
    std::size_t size() const noexcept { return parent_.size(); }

private:
    std::vector<std::size_t> parent_;
    std::size_t components_;
};

}  // namespace hyperpoly::detail
