#include "spatialcv/prediction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace spatialcv {

bool StandardizationParams::has_degenerate_feature() const {
  return std::any_of(stddev.begin(), stddev.end(), [](double s) { return s == 0.0; });
}

StandardizationParams fit_standardizer(std::span<const PointRecord> train) {
  if (train.empty()) {
    throw std::invalid_argument("standardizer needs at least one training record");
  }
  const std::size_t dim = train.front().features.size();
  StandardizationParams p;
  p.mean.assign(dim, 0.0);
  p.stddev.assign(dim, 0.0);
  for (const auto& r : train) {
    for (std::size_t f = 0; f < dim; ++f) {
      p.mean[f] += r.features[f];
    }
  }
  const double n = static_cast<double>(train.size());
  for (std::size_t f = 0; f < dim; ++f) {
    p.mean[f] /= n;
  }
  for (const auto& r : train) {
    for (std::size_t f = 0; f < dim; ++f) {
      const double d = r.features[f] - p.mean[f];
      p.stddev[f] += d * d;
    }
  }
  for (std::size_t f = 0; f < dim; ++f) {
    p.stddev[f] = std::sqrt(p.stddev[f] / n);
  }
  return p;
}

std::vector<double> transform(const StandardizationParams& p, std::span<const double> x) {
  if (x.size() != p.mean.size()) {
    throw std::invalid_argument("feature dimension mismatch: got " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(p.mean.size()));
  }
  std::vector<double> out(x.size());
  for (std::size_t f = 0; f < x.size(); ++f) {
    out[f] = p.stddev[f] == 0.0 ? 0.0 : (x[f] - p.mean[f]) / p.stddev[f];
  }
  return out;
}

KnnModel::KnnModel(std::span<const PointRecord> train, int k, Task task,
                   StandardizationParams params)
    : k_(k), task_(task), params_(std::move(params)) {
  if (k < 1) {
    throw std::invalid_argument("k must be at least 1");
  }
  if (static_cast<std::size_t>(k) > train.size()) {
    throw std::invalid_argument("k = " + std::to_string(k) + " exceeds training size " +
                                std::to_string(train.size()));
  }
  dim_ = static_cast<int>(train.front().features.size());
  ids_.reserve(train.size());
  responses_.reserve(train.size());
  features_.reserve(train.size() * dim_);
  for (const auto& r : train) {
    ids_.push_back(r.id);
    responses_.push_back(r.response);
    const auto z = transform(params_, r.features);
    features_.insert(features_.end(), z.begin(), z.end());
  }
}

KnnModel KnnModel::fit(std::span<const PointRecord> train, int k, Task task) {
  return KnnModel(train, k, task, fit_standardizer(train));
}

std::vector<std::pair<double, int>> KnnModel::neighbor_order(
    std::span<const double> raw) const {
  const auto q = transform(params_, raw);
  const std::size_t n = ids_.size();
  std::vector<std::pair<double, int>> order(n);  // (squared distance, position)
  for (std::size_t i = 0; i < n; ++i) {
    double d2 = 0.0;
    const double* row = features_.data() + i * dim_;
    for (int f = 0; f < dim_; ++f) {
      const double d = q[f] - row[f];
      d2 += d * d;
    }
    order[i] = {d2, static_cast<int>(i)};
  }
  auto cmp = [&](const std::pair<double, int>& a, const std::pair<double, int>& b) {
    if (a.first != b.first) return a.first < b.first;
    return ids_[a.second] < ids_[b.second];
  };
  std::nth_element(order.begin(), order.begin() + (k_ - 1), order.end(), cmp);
  order.resize(k_);
  std::sort(order.begin(), order.end(), cmp);
  return order;
}

double KnnModel::predict(std::span<const double> raw_features) const {
  const auto neighbors = neighbor_order(raw_features);
  if (task_ == Task::regression) {
    double sum = 0.0;
    for (const auto& [d2, pos] : neighbors) {
      sum += responses_[pos];
    }
    return sum / static_cast<double>(k_);
  }
  // Classification: mode of the neighbor labels. The representative of each
  // label is its first neighbor in (distance, id) order.
  std::map<double, std::pair<int, double>> tally;  // label -> (count, rep distance^2)
  for (const auto& [d2, pos] : neighbors) {
    auto [it, inserted] = tally.try_emplace(responses_[pos], 0, d2);
    ++it->second.first;
  }
  double best_label = 0.0;
  int best_count = -1;
  double best_rep = 0.0;
  for (const auto& [label, stat] : tally) {
    const auto& [count, rep] = stat;
    const bool wins = count > best_count ||
                      (count == best_count &&
                       (rep < best_rep || (rep == best_rep && label < best_label)));
    if (wins) {
      best_label = label;
      best_count = count;
      best_rep = rep;
    }
  }
  return best_label;
}

double rmse(std::span<const double> predicted, std::span<const double> actual) {
  if (predicted.size() != actual.size()) {
    throw std::invalid_argument("rmse: length mismatch");
  }
  if (predicted.empty()) {
    throw std::invalid_argument("rmse: empty input");
  }
  double ss = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double d = predicted[i] - actual[i];
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(predicted.size()));
}

double accuracy(std::span<const double> predicted, std::span<const double> actual) {
  if (predicted.size() != actual.size()) {
    throw std::invalid_argument("accuracy: length mismatch");
  }
  if (predicted.empty()) {
    throw std::invalid_argument("accuracy: empty input");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] == actual[i]) {
      ++hits;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

}  // namespace spatialcv
