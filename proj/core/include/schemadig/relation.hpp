#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace schemadig {

// Hard cap inherited from the bitmask representation of attribute sets.
inline constexpr std::size_t kMaxAttributes = 64;

// Sentinel stored for empty cells under NullPolicy::kSentinel.
inline constexpr const char* kNullToken = "⟨NULL⟩";  // ⟨NULL⟩

// A flat instance relation: attribute names plus rows of opaque string
// tokens. Values carry no type information; FD discovery only needs
// equality. Immutable once built.
class RelationInstance {
public:
  // Empty placeholder; real instances come from create() or load_csv().
  RelationInstance() = default;

  // Validates arity, attribute-name uniqueness (case-insensitive) and the
  // attribute-count cap. Throws InputError subclasses on violation.
  static RelationInstance create(std::string name,
                                 std::vector<std::string> attributes,
                                 std::vector<std::vector<std::string>> rows);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& attributes() const { return attributes_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  std::size_t row_count() const { return rows_.size(); }
  std::size_t attribute_count() const { return attributes_.size(); }

  // Case-insensitive lookup; returns npos when absent.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t attribute_index(const std::string& name) const;

private:
  std::string name_;
  std::vector<std::string> attributes_;
  std::vector<std::vector<std::string>> rows_;
};

// Lowercases ASCII; used for case-insensitive attribute-name comparison.
std::string fold_case(const std::string& s);

}  // namespace schemadig
