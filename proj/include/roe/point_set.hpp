#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace roe {

/// An ordered set of distinct point identifiers. The declared order fixes the
/// matrix index order everywhere else in the library.
class PointSet {
 public:
  PointSet() = default;
  /// Throws std::invalid_argument on duplicate, empty, or malformed ids
  /// (ids may not contain whitespace or ':', may not start with '#',
  /// and may not be the token "->").
  explicit PointSet(std::vector<std::string> ids);

  std::size_t size() const { return ids_.size(); }
  const std::string& id(std::size_t i) const { return ids_[i]; }
  const std::vector<std::string>& ids() const { return ids_; }

  std::optional<std::size_t> find(std::string_view id) const;
  /// Throws std::invalid_argument for unknown ids.
  std::size_t index_of(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id).has_value(); }

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.ids_ == b.ids_;
  }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace roe
