#include "hyperdec/series.hpp"

#include <mutex>
#include <tuple>

namespace hyperdec {

IndexSpace::IndexSpace(Arity arity, int bound) : arity_(arity), bound_(bound) {
  if (bound < 0) throw std::invalid_argument("IndexSpace: negative bound");
  for (int t = 0; t <= bound; ++t) {
    layer_begin_.push_back(static_cast<int>(indices_.size()));
    for_each_composition(t, arity.vars(), [&](const std::vector<int>& c) {
      MultiIndex idx{std::vector<int>(c.begin(), c.begin() + arity.m),
                     std::vector<int>(c.begin() + arity.m, c.end())};
      rank_.emplace(c, static_cast<int>(indices_.size()));
      indices_.push_back(std::move(idx));
    });
  }
  layer_begin_.push_back(static_cast<int>(indices_.size()));
}

std::shared_ptr<const IndexSpace> IndexSpace::get(Arity arity, int bound) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>,
                  std::shared_ptr<const IndexSpace>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[std::make_tuple(arity.m, arity.n, bound)];
  if (!slot) slot = std::make_shared<IndexSpace>(arity, bound);
  return slot;
}

int IndexSpace::rank(const MultiIndex& idx) const {
  std::vector<int> c;
  c.reserve(idx.x.size() + idx.y.size());
  c.insert(c.end(), idx.x.begin(), idx.x.end());
  c.insert(c.end(), idx.y.begin(), idx.y.end());
  auto it = rank_.find(c);
  return it == rank_.end() ? -1 : it->second;
}

int IndexSpace::layer_end(int t) const {
  if (t < 0) return 0;
  if (t >= bound_) return size();
  return layer_begin_[t + 1];
}

int IndexSpace::layer_begin(int t) const {
  if (t < 0) return 0;
  if (t > bound_) return size();
  return layer_begin_[t];
}

}  // namespace hyperdec
