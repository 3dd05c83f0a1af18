#pragma once

#include <cstddef>
#include <string>

#include "schemadig/relation.hpp"

namespace schemadig {

enum class NullPolicy {
  kSentinel,  // empty cells become kNullToken and participate as values
  kDropRow,   // rows containing an empty cell are skipped
};

struct IngestOptions {
  char delimiter = ',';
  bool has_header = true;
  NullPolicy null_policy = NullPolicy::kSentinel;
};

struct IngestStats {
  std::size_t rows_loaded = 0;
  std::size_t rows_dropped = 0;  // only under NullPolicy::kDropRow
};

// Loads an RFC-4180-style delimited file (quoted fields, doubled quotes,
// embedded newlines, LF or CRLF) into a validated RelationInstance. The
// relation name is derived from the file stem. With has_header=false,
// synthetic names col_1..col_n are assigned.
//
// Throws FileNotFoundError, RaggedRowError (1-based data-row index),
// EmptyInputError, DuplicateAttributeError, InvalidAttributeError,
// CapacityError.
RelationInstance load_csv(const std::string& path, const IngestOptions& options,
                          IngestStats* stats = nullptr);

// Same parser over an in-memory buffer; `name` becomes the relation name.
RelationInstance load_csv_text(const std::string& text, const std::string& name,
                               const IngestOptions& options,
                               IngestStats* stats = nullptr);

}  // namespace schemadig
