#include "schemadig/relation.hpp"

#include <unordered_set>
#include <utility>

#include "schemadig/errors.hpp"

namespace schemadig {

std::string fold_case(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

RelationInstance RelationInstance::create(std::string name,
                                          std::vector<std::string> attributes,
                                          std::vector<std::vector<std::string>> rows) {
  if (attributes.empty()) {
    throw InvalidAttributeError("relation must have at least one attribute");
  }
  if (attributes.size() > kMaxAttributes) {
    throw CapacityError("relation has " + std::to_string(attributes.size()) +
                        " attributes; the supported maximum is " +
                        std::to_string(kMaxAttributes));
  }
  std::unordered_set<std::string> seen;
  for (const std::string& attr : attributes) {
    if (attr.empty()) {
      throw InvalidAttributeError("empty attribute name");
    }
    if (!seen.insert(fold_case(attr)).second) {
      throw DuplicateAttributeError(attr);
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != attributes.size()) {
      throw RaggedRowError(i + 1, attributes.size(), rows[i].size());
    }
  }
  if (rows.empty()) {
    throw EmptyInputError();
  }

  RelationInstance rel;
  rel.name_ = std::move(name);
  rel.attributes_ = std::move(attributes);
  rel.rows_ = std::move(rows);
  return rel;
}

std::size_t RelationInstance::attribute_index(const std::string& name) const {
  const std::string folded = fold_case(name);
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (fold_case(attributes_[i]) == folded) return i;
  }
  return npos;
}

}  // namespace schemadig
