#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace seplen {

/// Thrown when shapes disagree with the bound dimension vector.
class dimension_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Local dimensions (d_1, ..., d_n) of a multipartite system.
///
/// Requires n >= 2 and every d_i >= 2. Basis tuples (j_1, ..., j_n) are
/// flattened row-major with 0-based indices:
///   flat = sum_q j_q * prod_{q' > q} d_{q'}
/// which is the usual 1-based Kronecker index minus one.
class Dims {
 public:
  Dims() = default;

  explicit Dims(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.size() < 2) throw dimension_error("need at least two parties");
    total_ = 1;
    for (int d : dims_) {
      if (d < 2) throw dimension_error("every local dimension must be >= 2");
      total_ *= static_cast<std::uint64_t>(d);
      if (total_ > (std::uint64_t{1} << 31)) throw dimension_error("total dimension too large");
    }
    strides_.assign(dims_.size(), 1);
    for (std::size_t q = dims_.size() - 1; q > 0; --q)
      strides_[q - 1] = strides_[q] * static_cast<std::size_t>(dims_[q]);
  }

  Dims(std::initializer_list<int> dims) : Dims(std::vector<int>(dims)) {}

  [[nodiscard]] std::size_t parties() const noexcept { return dims_.size(); }
  [[nodiscard]] int operator[](std::size_t q) const { return dims_.at(q); }
  [[nodiscard]] const std::vector<int>& values() const noexcept { return dims_; }

  /// d = prod d_i
  [[nodiscard]] std::size_t total() const noexcept { return static_cast<std::size_t>(total_); }
  /// d^2, the real dimension of the space of Hermitian operators.
  [[nodiscard]] std::size_t hermitian_dim() const noexcept { return total() * total(); }
  /// sum d_q
  [[nodiscard]] std::size_t local_sum() const {
    return static_cast<std::size_t>(std::accumulate(dims_.begin(), dims_.end(), 0));
  }
  [[nodiscard]] std::size_t stride(std::size_t q) const { return strides_.at(q); }

  [[nodiscard]] std::size_t flat_index(std::span<const int> multi) const {
    if (multi.size() != dims_.size()) throw dimension_error("multi-index has wrong length");
    std::size_t flat = 0;
    for (std::size_t q = 0; q < dims_.size(); ++q) {
      if (multi[q] < 0 || multi[q] >= dims_[q]) throw std::out_of_range("multi-index component out of range");
      flat += static_cast<std::size_t>(multi[q]) * strides_[q];
    }
    return flat;
  }

  [[nodiscard]] std::vector<int> multi_index(std::size_t flat) const {
    if (flat >= total()) throw std::out_of_range("flat index out of range");
    std::vector<int> out(dims_.size());
    for (std::size_t q = 0; q < dims_.size(); ++q) {
      out[q] = static_cast<int>(flat / strides_[q]);
      flat %= strides_[q];
    }
    return out;
  }

  friend bool operator==(const Dims& a, const Dims& b) { return a.dims_ == b.dims_; }

  [[nodiscard]] std::string to_string() const {
    std::ostringstream os;
    for (std::size_t q = 0; q < dims_.size(); ++q) os << (q ? "," : "") << dims_[q];
    return os.str();
  }

 private:
  std::vector<int> dims_;
  std::vector<std::size_t> strides_;
  std::uint64_t total_ = 0;
};

/// Parses "2,3,4". Throws dimension_error on malformed input.
inline Dims parse_dims(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw dimension_error("malformed dims: " + text);
    }
    if (used != item.size()) throw dimension_error("malformed dims: " + text);
    out.push_back(v);
  }
  if (!text.empty() && text.back() == ',') throw dimension_error("malformed dims: " + text);
  return Dims(std::move(out));
}

}  // namespace seplen
