#include "fhlab/setfam/set_family.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fhlab::setfam {

SetFamily::SetFamily(std::size_t ground_size, std::vector<std::vector<Element>> members,
                     std::vector<std::string> labels)
    : ground_size_(ground_size), members_(std::move(members)), labels_(std::move(labels)) {
  if (!labels_.empty() && labels_.size() != members_.size()) {
    throw std::invalid_argument("family has " + std::to_string(members_.size()) +
                                " sets but " + std::to_string(labels_.size()) + " labels");
  }
  for (std::size_t i = 0; i < members_.size(); ++i) {
    auto& set = members_[i];
    for (Element e : set) {
      if (e >= ground_size_) {
        throw std::invalid_argument("set " + std::to_string(i) + " contains element " +
                                    std::to_string(e) + " outside ground set of size " +
                                    std::to_string(ground_size_));
      }
    }
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
  }
}

bool SetFamily::contains(std::size_t index, Element element) const {
  const auto& set = members_[index];
  return std::binary_search(set.begin(), set.end(), element);
}

std::vector<std::size_t> SetFamily::empty_members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i].empty()) out.push_back(i);
  return out;
}

SetFamily SetFamily::subfamily(std::span<const std::size_t> indices) const {
  std::vector<std::vector<Element>> sets;
  std::vector<std::string> labels;
  sets.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= members_.size())
      throw std::out_of_range("subfamily index " + std::to_string(i) + " out of range");
    sets.push_back(members_[i]);
    if (!labels_.empty()) labels.push_back(labels_[i]);
  }
  return SetFamily(ground_size_, std::move(sets), std::move(labels));
}

void intersect_into(std::span<const Element> a, std::span<const Element> b,
                    std::vector<Element>& out) {
  out.clear();
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
}

std::vector<std::size_t> depth_profile(const SetFamily& family) {
  std::vector<std::size_t> depth(family.ground_size(), 0);
  for (const auto& set : family.members())
    for (Element e : set) ++depth[e];
  return depth;
}

}  // namespace fhlab::setfam
