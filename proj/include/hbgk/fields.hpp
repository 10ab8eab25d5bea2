#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hbgk/macro.hpp"
#include "hbgk/quadrature.hpp"

namespace hbgk {

/// Nodal coefficients on the Lagrange basis, K + 1 per cell. T is double for
/// scalar fields (r_h, T_h) and ConservedState for U_h.
template <class T>
class NodalField {
 public:
  NodalField() = default;
  NodalField(int n_cells, int n_nodes, T fill = T{})
      : n_cells_(n_cells), n_nodes_(n_nodes), data_(static_cast<std::size_t>(n_cells) * n_nodes, fill) {}

  int n_cells() const { return n_cells_; }
  int n_nodes() const { return n_nodes_; }
  std::size_t size() const { return data_.size(); }

  T& operator()(int i, int k) { return data_[static_cast<std::size_t>(i) * n_nodes_ + k]; }
  const T& operator()(int i, int k) const { return data_[static_cast<std::size_t>(i) * n_nodes_ + k]; }

  std::span<T> cell(int i) { return {data_.data() + static_cast<std::size_t>(i) * n_nodes_, static_cast<std::size_t>(n_nodes_)}; }
  std::span<const T> cell(int i) const {
    return {data_.data() + static_cast<std::size_t>(i) * n_nodes_, static_cast<std::size_t>(n_nodes_)};
  }
  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }

  /// Average over cell i: sum_k w_k v_k (exact for the P^K interpolant).
  T cell_average(int i, const NodalBasis& basis) const {
    T s{};
    for (int k = 0; k < n_nodes_; ++k) s += basis.weight(k) * (*this)(i, k);
    return s;
  }
  T left_trace(int i, const NodalBasis& basis) const {
    T s{};
    for (int k = 0; k < n_nodes_; ++k) s += basis.left_trace[k] * (*this)(i, k);
    return s;
  }
  T right_trace(int i, const NodalBasis& basis) const {
    T s{};
    for (int k = 0; k < n_nodes_; ++k) s += basis.right_trace[k] * (*this)(i, k);
    return s;
  }

  friend bool operator==(const NodalField&, const NodalField&) = default;

 private:
  int n_cells_ = 0;
  int n_nodes_ = 0;
  std::vector<T> data_;
};

using ScalarField = NodalField<double>;
using StateField = NodalField<ConservedState>;

/// The micro part g sampled at every (cell, Gauss node, velocity point).
class KineticField {
 public:
  KineticField() = default;
  KineticField(int n_cells, int n_nodes, int n_velocities)
      : n_cells_(n_cells),
        n_nodes_(n_nodes),
        n_v_(n_velocities),
        data_(static_cast<std::size_t>(n_cells) * n_nodes * n_velocities, 0.0) {}

  int n_cells() const { return n_cells_; }
  int n_nodes() const { return n_nodes_; }
  int n_velocities() const { return n_v_; }

  std::span<double> slice(int i, int k) { return {data_.data() + offset(i, k), static_cast<std::size_t>(n_v_)}; }
  std::span<const double> slice(int i, int k) const {
    return {data_.data() + offset(i, k), static_cast<std::size_t>(n_v_)};
  }
  /// All K+1 slices of cell i, contiguous.
  std::span<double> cell(int i) { return {data_.data() + offset(i, 0), static_cast<std::size_t>(n_nodes_) * n_v_}; }
  std::span<const double> cell(int i) const {
    return {data_.data() + offset(i, 0), static_cast<std::size_t>(n_nodes_) * n_v_};
  }
  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  friend bool operator==(const KineticField&, const KineticField&) = default;

 private:
  std::size_t offset(int i, int k) const {
    return (static_cast<std::size_t>(i) * n_nodes_ + k) * static_cast<std::size_t>(n_v_);
  }

  int n_cells_ = 0;
  int n_nodes_ = 0;
  int n_v_ = 0;
  std::vector<double> data_;
};

}  // namespace hbgk
