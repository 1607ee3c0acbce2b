#include "roe/point_set.hpp"

#include <cctype>
#include <stdexcept>

namespace roe {

namespace {

bool id_ok(const std::string& id) {
  if (id.empty() || id == "->" || id.front() == '#') return false;
  for (char c : id) {
    if (c == ':' || std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

PointSet::PointSet(std::vector<std::string> ids) : ids_(std::move(ids)) {
  index_.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!id_ok(ids_[i])) {
      throw std::invalid_argument("malformed point id '" + ids_[i] + "'");
    }
    if (!index_.emplace(ids_[i], i).second) {
      throw std::invalid_argument("duplicate point id '" + ids_[i] + "'");
    }
  }
}

std::optional<std::size_t> PointSet::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t PointSet::index_of(std::string_view id) const {
  auto i = find(id);
  if (!i) throw std::invalid_argument("unknown point id '" + std::string(id) + "'");
  return *i;
}

}  // namespace roe
