/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef QRECOVER_LAYOUT_HPP_
#define QRECOVER_LAYOUT_HPP_

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "qrecover/errors.hpp"

namespace qrecover {

// Ordered list of named tensor factors. Index convention everywhere: row-major,
// first subsystem most significant (so basis index = sum_j i_j * stride_j with
// stride decreasing left to right, matching the Kronecker product order).
struct SubsystemLayout {
  std::vector<std::string> labels;
  std::vector<int> dims;

  SubsystemLayout() = default;
  SubsystemLayout(std::vector<std::string> labels_, std::vector<int> dims_)
      : labels(std::move(labels_)), dims(std::move(dims_)) {
    check();
  }

  void check() const {
    if (labels.size() != dims.size())
      throw DimensionMismatch("layout has " + std::to_string(labels.size()) +
                              " labels but " + std::to_string(dims.size()) +
                              " dims");
    for (int d : dims)
      if (d < 1)
        throw DimensionMismatch("subsystem dimension < 1");
    for (std::size_t i = 0; i < labels.size(); ++i)
      for (std::size_t j = i + 1; j < labels.size(); ++j)
        if (labels[i] == labels[j])
          throw OverlappingLabels("duplicate label '" + labels[i] + "'");
  }

  int size() const { return static_cast<int>(labels.size()); }

  long long total_dim() const {
    long long n = 1;
    for (int d : dims) n *= d;
    return n;
  }

  bool has(const std::string &label) const {
    return std::find(labels.begin(), labels.end(), label) != labels.end();
  }

  int index_of(const std::string &label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end())
      throw UnknownLabel("'" + label + "' not in layout");
    return static_cast<int>(it - labels.begin());
  }

  int dim_of(const std::string &label) const { return dims[index_of(label)]; }

  // Product dimension of a label subset.
  long long dim_of(const std::vector<std::string> &subset) const {
    long long n = 1;
    for (const auto &l : subset) n *= dim_of(l);
    return n;
  }

  // Labels not in `subset`, in layout order. Every element of `subset` must
  // name a factor.
  std::vector<std::string> complement(const std::vector<std::string> &subset) const {
    for (const auto &l : subset) (void)index_of(l);
    std::vector<std::string> out;
    for (const auto &l : labels)
      if (std::find(subset.begin(), subset.end(), l) == subset.end())
        out.push_back(l);
    return out;
  }

  // Strides for the row-major mixed-radix index (first factor most significant).
  std::vector<long long> strides() const {
    std::vector<long long> s(dims.size());
    long long acc = 1;
    for (int i = size() - 1; i >= 0; --i) {
      s[i] = acc;
      acc *= dims[i];
    }
    return s;
  }

  bool operator==(const SubsystemLayout &o) const {
    return labels == o.labels && dims == o.dims;
  }
};

// Layout restricted to `order`, in the order given (not layout order).
inline SubsystemLayout sublayout_reordered(const SubsystemLayout &layout,
                                           const std::vector<std::string> &order) {
  std::vector<int> dims;
  dims.reserve(order.size());
  for (const auto &l : order) dims.push_back(layout.dim_of(l));
  return SubsystemLayout(order, std::move(dims));
}

inline SubsystemLayout sublayout(const SubsystemLayout &layout,
                                 const std::vector<std::string> &keep) {
  std::vector<std::string> labels;
  std::vector<int> dims;
  for (const auto &l : keep) (void)layout.index_of(l);
  for (int i = 0; i < layout.size(); ++i) {
    if (std::find(keep.begin(), keep.end(), layout.labels[i]) != keep.end()) {
      labels.push_back(layout.labels[i]);
      dims.push_back(layout.dims[i]);
    }
  }
  return SubsystemLayout(std::move(labels), std::move(dims));
}

} // namespace qrecover

#endif // QRECOVER_LAYOUT_HPP_
