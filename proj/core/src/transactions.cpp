#include "schemadig/transactions.hpp"

#include <unordered_map>

#include "schemadig/errors.hpp"

namespace schemadig {

std::vector<Item> TransactionDB::items_of(std::size_t t) const {
  std::vector<Item> items;
  items.reserve(num_attributes_);
  for (std::size_t a = 0; a < num_attributes_; ++a) {
    items.push_back(Item{static_cast<std::uint32_t>(a), code_at(t, a)});
  }
  return items;
}

std::vector<std::string> TransactionDB::decode_row(std::size_t t) const {
  std::vector<std::string> row;
  row.reserve(num_attributes_);
  for (std::size_t a = 0; a < num_attributes_; ++a) {
    row.push_back(dictionaries_[a][code_at(t, a)]);
  }
  return row;
}

TransactionDB encode_transactions(const RelationInstance& rel) {
  const std::size_t n = rel.attribute_count();
  TransactionDB db;
  db.num_attributes_ = n;
  db.num_transactions_ = rel.row_count();
  db.attribute_names_ = rel.attributes();
  db.dictionaries_.resize(n);
  db.codes_.reserve(n * rel.row_count());

  // Codes are dense per attribute, assigned by first appearance.
  std::vector<std::unordered_map<std::string, std::uint32_t>> index(n);
  for (const auto& row : rel.rows()) {
    for (std::size_t a = 0; a < n; ++a) {
      auto [it, inserted] = index[a].try_emplace(
          row[a], static_cast<std::uint32_t>(db.dictionaries_[a].size()));
      if (inserted) {
        if (db.dictionaries_[a].size() >= Item::kMaxCodes) {
          throw CapacityError("attribute " + rel.attributes()[a] + " exceeds " +
                              std::to_string(Item::kMaxCodes) + " distinct values");
        }
        db.dictionaries_[a].push_back(row[a]);
      }
      db.codes_.push_back(it->second);
    }
  }
  return db;
}

}  // namespace schemadig
