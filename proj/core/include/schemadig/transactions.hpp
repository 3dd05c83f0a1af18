#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "schemadig/relation.hpp"

namespace schemadig {

// One cell of a transaction: attribute index plus the dictionary code of
// its value. Packs into 32 bits (6-bit attribute, 26-bit code) so itemsets
// sort and hash cheaply.
struct Item {
  std::uint32_t attribute = 0;
  std::uint32_t code = 0;

  static constexpr std::uint32_t kCodeBits = 26;
  static constexpr std::uint32_t kMaxCodes = 1u << kCodeBits;

  std::uint32_t packed() const { return (attribute << kCodeBits) | code; }
  static Item unpack(std::uint32_t p) {
    return Item{p >> kCodeBits, p & (kMaxCodes - 1)};
  }

  friend bool operator==(const Item& a, const Item& b) {
    return a.attribute == b.attribute && a.code == b.code;
  }
  friend bool operator<(const Item& a, const Item& b) {
    return a.packed() < b.packed();
  }
};

// Dictionary-encoded rows: every transaction holds exactly one value code
// per attribute, stored row-major. Codes are dense per attribute and
// assigned in first-appearance order, so two loads of the same file encode
// identically. Immutable after construction; safe to share across threads.
class TransactionDB {
public:
  std::size_t num_attributes() const { return num_attributes_; }
  std::size_t num_transactions() const { return num_transactions_; }

  std::uint32_t code_at(std::size_t transaction, std::size_t attribute) const {
    return codes_[transaction * num_attributes_ + attribute];
  }
  std::span<const std::uint32_t> transaction(std::size_t t) const {
    return {codes_.data() + t * num_attributes_, num_attributes_};
  }

  std::size_t distinct_count(std::size_t attribute) const {
    return dictionaries_[attribute].size();
  }
  const std::string& token(std::size_t attribute, std::uint32_t code) const {
    return dictionaries_[attribute][code];
  }
  const std::vector<std::string>& attribute_names() const { return attribute_names_; }

  // Items of transaction t in attribute order (the canonical itemset of
  // the whole row).
  std::vector<Item> items_of(std::size_t t) const;

  // Reconstructs the source row; decode(encode(rel)) == rel.rows()[t].
  std::vector<std::string> decode_row(std::size_t t) const;

private:
  friend TransactionDB encode_transactions(const RelationInstance& rel);

  std::size_t num_attributes_ = 0;
  std::size_t num_transactions_ = 0;
  std::vector<std::uint32_t> codes_;                     // row-major
  std::vector<std::vector<std::string>> dictionaries_;   // attr -> code -> token
  std::vector<std::string> attribute_names_;
};

// Dictionary-encodes a relation. Throws CapacityError if an attribute has
// more than Item::kMaxCodes distinct values.
TransactionDB encode_transactions(const RelationInstance& rel);

}  // namespace schemadig
