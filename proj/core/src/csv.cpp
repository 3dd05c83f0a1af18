#include "schemadig/csv.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "schemadig/errors.hpp"

namespace schemadig {
namespace {

// RFC-4180-style field splitter. Handles quoted fields with doubled quotes
// and embedded delimiters/newlines; accepts LF and CRLF line endings.
// Returns one record per call; `pos` advances past the record.
bool next_record(const std::string& text, std::size_t& pos, char delimiter,
                 std::vector<std::string>& fields) {
  fields.clear();
  if (pos >= text.size()) return false;

  std::string field;
  bool in_quotes = false;
  bool saw_any = false;

  while (pos < text.size()) {
    char c = text[pos];
    if (in_quotes) {
      if (c == '"') {
        if (pos + 1 < text.size() && text[pos + 1] == '"') {
          field.push_back('"');
          pos += 2;
        } else {
          in_quotes = false;
          ++pos;
        }
      } else {
        field.push_back(c);
        ++pos;
      }
      continue;
    }
    if (c == '"' && field.empty()) {
      in_quotes = true;
      saw_any = true;
      ++pos;
      continue;
    }
    if (c == delimiter) {
      fields.push_back(std::move(field));
      field.clear();
      saw_any = true;
      ++pos;
      continue;
    }
    if (c == '\n' || c == '\r') {
      if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
      ++pos;
      fields.push_back(std::move(field));
      return true;
    }
    field.push_back(c);
    saw_any = true;
    ++pos;
  }
  // Final record without trailing newline.
  if (saw_any || !field.empty()) {
    fields.push_back(std::move(field));
    return true;
  }
  return false;
}

bool is_blank_record(const std::vector<std::string>& fields) {
  return fields.size() == 1 && fields[0].empty();
}

std::string relation_name_from_path(const std::string& path) {
  std::string stem = std::filesystem::path(path).stem().string();
  if (stem.empty()) stem = "relation";
  // Identifier-safe: keep alnum and underscore, map the rest to '_'.
  for (char& c : stem) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_';
    if (!ok) c = '_';
  }
  if (stem[0] >= '0' && stem[0] <= '9') stem = "t_" + stem;
  return stem;
}

}  // namespace

RelationInstance load_csv_text(const std::string& text, const std::string& name,
                               const IngestOptions& options, IngestStats* stats) {
  std::size_t pos = 0;
  std::vector<std::string> fields;

  std::vector<std::string> attributes;
  std::vector<std::vector<std::string>> rows;
  std::size_t dropped = 0;

  bool header_pending = options.has_header;
  std::size_t data_row = 0;
  while (next_record(text, pos, options.delimiter, fields)) {
    if (is_blank_record(fields)) continue;  // skip blank lines
    if (header_pending) {
      attributes = fields;
      header_pending = false;
      continue;
    }
    if (attributes.empty()) {
      // Headerless file: width comes from the first data row.
      attributes.reserve(fields.size());
      for (std::size_t i = 0; i < fields.size(); ++i) {
        attributes.push_back("col_" + std::to_string(i + 1));
      }
    }
    ++data_row;
    if (fields.size() != attributes.size()) {
      throw RaggedRowError(data_row, attributes.size(), fields.size());
    }
    bool has_empty = std::any_of(fields.begin(), fields.end(),
                                 [](const std::string& f) { return f.empty(); });
    if (has_empty && options.null_policy == NullPolicy::kDropRow) {
      ++dropped;
      continue;
    }
    if (has_empty) {
      for (std::string& f : fields) {
        if (f.empty()) f = kNullToken;
      }
    }
    rows.push_back(fields);
  }

  if (attributes.empty() || rows.empty()) {
    throw EmptyInputError();
  }
  if (stats != nullptr) {
    stats->rows_loaded = rows.size();
    stats->rows_dropped = dropped;
  }
  return RelationInstance::create(name, std::move(attributes), std::move(rows));
}

RelationInstance load_csv(const std::string& path, const IngestOptions& options,
                          IngestStats* stats) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FileNotFoundError(path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_csv_text(buffer.str(), relation_name_from_path(path), options, stats);
}

}  // namespace schemadig
