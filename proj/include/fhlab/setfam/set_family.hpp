#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fhlab::setfam {

using Element = std::uint32_t;

/// Ordered tuple of subsets of the ground set {0, ..., ground_size-1}.
/// Members may repeat and may be empty. Each member is stored as a sorted,
/// duplicate-free element list.
class SetFamily {
 public:
  SetFamily() = default;

  /// Throws std::invalid_argument naming the offending set and element when a
  /// member leaves the ground set, or when labels and members disagree in count.
  SetFamily(std::size_t ground_size, std::vector<std::vector<Element>> members,
            std::vector<std::string> labels = {});

  [[nodiscard]] std::size_t ground_size() const { return ground_size_; }
  [[nodiscard]] std::size_t size() const { return members_.size(); }
  [[nodiscard]] bool empty() const { return members_.empty(); }

  [[nodiscard]] std::span<const Element> member(std::size_t index) const {
    return members_[index];
  }
  [[nodiscard]] const std::vector<std::vector<Element>>& members() const { return members_; }
  [[nodiscard]] bool contains(std::size_t index, Element element) const;

  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] bool has_labels() const { return !labels_.empty(); }

  /// Indices of empty members (diagnostics; empty members are legal).
  [[nodiscard]] std::vector<std::size_t> empty_members() const;

  /// Subfamily keeping the given member indices in the given order.
  [[nodiscard]] SetFamily subfamily(std::span<const std::size_t> indices) const;

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

 private:
  std::size_t ground_size_ = 0;
  std::vector<std::vector<Element>> members_;
  std::vector<std::string> labels_;
};

/// Sorted-list intersection; `out` is overwritten.
void intersect_into(std::span<const Element> a, std::span<const Element> b,
                    std::vector<Element>& out);

/// Number of members containing each ground element.
std::vector<std::size_t> depth_profile(const SetFamily& family);

}  // namespace fhlab::setfam
