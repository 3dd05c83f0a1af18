#include "schemadig/emit.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "schemadig/errors.hpp"

namespace schemadig {
namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

bool is_plain_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

std::string quote_identifier(const std::string& s) {
  if (is_plain_identifier(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

std::string column_list(AttributeSet set, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i : set.indexes()) {
    if (!out.empty()) out += ", ";
    out += quote_identifier(names[i]);
  }
  return out;
}

// Dependency order: referenced tables first. Kahn's algorithm with
// lexicographic tie-breaking; relations left over sit on a cycle and are
// appended by name with their FK clauses commented.
void ddl_order(const SchemaDesign& schema, std::vector<std::size_t>& order,
               std::vector<bool>& cyclic) {
  const std::size_t n = schema.relations.size();
  std::map<std::string, std::size_t> by_name;
  for (std::size_t i = 0; i < n; ++i) by_name[schema.relations[i].name] = i;

  std::vector<std::vector<std::size_t>> deps(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& fk : schema.relations[i].foreign_keys) {
      auto it = by_name.find(fk.target_relation);
      if (it != by_name.end() && it->second != i) deps[i].push_back(it->second);
    }
  }

  order.clear();
  cyclic.assign(n, false);
  std::vector<bool> emitted(n, false);
  while (order.size() < n) {
    std::size_t pick = n;
    for (const auto& [name, i] : by_name) {
      if (emitted[i]) continue;
      bool ready = true;
      for (std::size_t d : deps[i]) {
        if (!emitted[d]) {
          ready = false;
          break;
        }
      }
      if (ready) {
        pick = i;
        break;
      }
    }
    if (pick == n) break;  // only cyclic relations remain
    emitted[pick] = true;
    order.push_back(pick);
  }
  for (const auto& [name, i] : by_name) {
    if (!emitted[i]) {
      cyclic[i] = true;
      order.push_back(i);
    }
  }
}

std::vector<std::string> name_list(AttributeSet set, const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (std::size_t i : set.indexes()) out.push_back(names[i]);
  return out;
}

std::string brace_list(AttributeSet set, const std::vector<std::string>& names) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : set.indexes()) {
    if (!first) out += ", ";
    out += names[i];
    first = false;
  }
  out += "}";
  return out;
}

}  // namespace

std::string emit_ddl(const SchemaDesign& schema) {
  const auto& names = schema.attribute_names;
  std::vector<std::size_t> order;
  std::vector<bool> cyclic;
  ddl_order(schema, order, cyclic);

  std::ostringstream out;
  bool any_cycle = std::find(cyclic.begin(), cyclic.end(), true) != cyclic.end();
  if (any_cycle) {
    out << "-- warning: foreign-key graph contains a cycle; affected\n"
           "-- constraints are emitted as comments\n\n";
  }

  for (std::size_t idx : order) {
    const OutputRelation& rel = schema.relations[idx];
    out << "CREATE TABLE " << quote_identifier(rel.name) << " (\n";

    // Key columns first, remaining attributes after, both in index order.
    std::vector<std::size_t> cols = rel.primary_key.indexes();
    for (std::size_t i : rel.attributes.indexes()) {
      if (!rel.primary_key.contains(i)) cols.push_back(i);
    }
    for (std::size_t i : cols) {
      out << "  " << quote_identifier(names[i]) << " TEXT";
      if (rel.primary_key.contains(i)) out << " NOT NULL";
      out << ",\n";
    }
    out << "  PRIMARY KEY (" << column_list(rel.primary_key, names) << ")";
    for (const auto& fk : rel.foreign_keys) {
      out << ",\n  ";
      if (cyclic[idx]) out << "-- ";
      out << "FOREIGN KEY (" << column_list(fk.local_attributes, names) << ") REFERENCES "
          << quote_identifier(fk.target_relation) << " ("
          << column_list(fk.local_attributes, names) << ")";
    }
    out << "\n);\n\n";
  }
  return out.str();
}

std::string render_rules(const std::vector<AssociationRule>& rules, const TransactionDB& db) {
  std::ostringstream out;
  ordered_json header;
  header["format"] = "schemadig-rules";
  header["version"] = 1;
  header["attributes"] = db.attribute_names();
  header["rules"] = rules.size();
  out << header.dump() << "\n";

  auto side = [&](const Itemset& set) {
    ordered_json arr = ordered_json::array();
    for (const Item& item : set.items) {
      arr.push_back(ordered_json::array(
          {item.attribute, item.code, db.token(item.attribute, item.code)}));
    }
    return arr;
  };
  for (const auto& r : rules) {
    ordered_json rec;
    rec["lhs"] = side(r.antecedent);
    rec["rhs"] = side(r.consequent);
    rec["support"] = r.support_count;
    rec["confidence"] = ordered_json::array({r.confidence.num, r.confidence.den});
    out << rec.dump() << "\n";
  }
  return out.str();
}

void persist_rules(const std::vector<AssociationRule>& rules, const TransactionDB& db,
                   const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << render_rules(rules, db);
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

std::vector<AssociationRule> load_rules(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFoundError(path);

  std::string line;
  if (!std::getline(in, line)) throw IoError("rule store is empty: " + path);
  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception& e) {
    throw IoError("rule store header is not valid JSON: " + std::string(e.what()));
  }
  if (header.value("format", "") != "schemadig-rules") {
    throw IoError("not a schemadig rule store: " + path);
  }

  std::vector<AssociationRule> rules;
  auto parse_side = [](const json& arr) {
    Itemset set;
    for (const auto& entry : arr) {
      set.items.push_back(Item{entry.at(0).get<std::uint32_t>(),
                               entry.at(1).get<std::uint32_t>()});
    }
    return set;
  };
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw IoError("rule store line " + std::to_string(line_no) +
                    " is not valid JSON: " + std::string(e.what()));
    }
    AssociationRule rule;
    rule.antecedent = parse_side(rec.at("lhs"));
    rule.consequent = parse_side(rec.at("rhs"));
    rule.support_count = rec.at("support").get<std::uint64_t>();
    rule.confidence = Ratio{rec.at("confidence").at(0).get<std::uint64_t>(),
                            rec.at("confidence").at(1).get<std::uint64_t>()};
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::string emit_report_json(const RunReport& report) {
  const auto& names = report.attributes;
  ordered_json j;
  j["tool"] = "schemadig";
  j["report_version"] = 1;

  ordered_json input;
  input["path"] = report.input_path;
  input["relation"] = report.relation_name;
  input["rows"] = report.rows;
  input["attributes"] = names;
  input["rows_dropped"] = report.rows_dropped;
  j["input"] = input;

  ordered_json params;
  params["min_support"] = report.min_support_abs;
  params["min_confidence"] = report.min_confidence.str();
  params["max_itemset_size"] = report.max_itemset_size;
  params["max_lhs"] = report.max_lhs;
  params["null_policy"] = report.null_policy;
  j["parameters"] = params;

  ordered_json mining;
  mining["frequent_itemsets"] = report.frequent_itemset_count;
  ordered_json rules;
  rules["generated"] = report.filter.rules_before;
  rules["after_confidence"] = report.filter.rules_after_confidence;
  rules["after_minimality"] = report.filter.rules_after_minimality;
  rules["fds_lifted"] = report.filter.fds_lifted;
  mining["rules"] = rules;
  j["mining"] = mining;

  ordered_json fds = ordered_json::array();
  for (const auto& lf : report.lifted_fds) {
    ordered_json fd;
    fd["lhs"] = name_list(lf.fd.lhs, names);
    fd["rhs"] = names[lf.fd.rhs];
    fd["distinct_lhs"] = lf.lhs_distinct;
    fd["distinct_lhs_rhs"] = lf.lhs_rhs_distinct;
    fds.push_back(fd);
  }
  j["functional_dependencies"] = fds;

  ordered_json cover = ordered_json::array();
  for (const auto& lf : report.cover) {
    ordered_json entry;
    entry["lhs"] = name_list(lf.fd.lhs, names);
    entry["rhs"] = names[lf.fd.rhs];
    entry["distinct_lhs"] = lf.lhs_distinct;
    entry["distinct_lhs_rhs"] = lf.lhs_rhs_distinct;
    cover.push_back(entry);
  }
  j["minimal_cover"] = cover;

  ordered_json keys = ordered_json::array();
  for (AttributeSet k : report.candidate_keys) keys.push_back(name_list(k, names));
  j["candidate_keys"] = keys;

  j["warnings"] = report.warnings;

  ordered_json schema;
  ordered_json relations = ordered_json::array();
  for (const auto& rel : report.schema.relations) {
    ordered_json r;
    r["name"] = rel.name;
    r["attributes"] = name_list(rel.attributes, names);
    r["primary_key"] = name_list(rel.primary_key, names);
    ordered_json fks = ordered_json::array();
    for (const auto& fk : rel.foreign_keys) {
      ordered_json f;
      f["columns"] = name_list(fk.local_attributes, names);
      f["references"] = fk.target_relation;
      fks.push_back(f);
    }
    r["foreign_keys"] = fks;
    relations.push_back(r);
  }
  schema["relations"] = relations;

  ordered_json verification;
  ordered_json violations = ordered_json::array();
  for (const auto& v : report.verification.violations) {
    ordered_json entry;
    entry["relation"] = v.relation;
    entry["fd"] = v.fd.str(names);
    entry["reason"] = v.reason;
    violations.push_back(entry);
  }
  verification["three_nf_violations"] = violations;
  verification["lossless_join"] = report.verification.lossless_join;
  verification["dependency_preserving"] = report.verification.dependency_preserving;
  schema["verification"] = verification;
  j["schema"] = schema;

  if (report.include_timings) {
    ordered_json timings;
    for (const auto& t : report.timings) timings[t.stage] = t.milliseconds;
    j["timings_ms"] = timings;
  }
  return j.dump(2) + "\n";
}

std::string emit_report_text(const RunReport& report) {
  const auto& names = report.attributes;
  std::ostringstream out;
  out << "schemadig run report\n";
  out << "====================\n";
  out << "input: " << report.input_path << " (relation " << report.relation_name << ")\n";
  out << "rows: " << report.rows << ", attributes: " << names.size() << " (";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out << ", ";
    out << names[i];
  }
  out << ")\n";
  if (report.rows_dropped > 0) {
    out << "rows dropped by null policy: " << report.rows_dropped << "\n";
  }
  out << "parameters: min_support=" << report.min_support_abs
      << " min_confidence=" << report.min_confidence.str()
      << " max_itemset_size=" << report.max_itemset_size << " max_lhs=" << report.max_lhs
      << " null_policy=" << report.null_policy << "\n";
  out << "\n";

  out << "rule reduction:\n";
  out << "  frequent itemsets:      " << report.frequent_itemset_count << "\n";
  out << "  rules generated:        " << report.filter.rules_before << "\n";
  out << "  after 100% confidence:  " << report.filter.rules_after_confidence << "\n";
  out << "  after minimal lhs:      " << report.filter.rules_after_minimality << "\n";
  out << "  FDs lifted:             " << report.filter.fds_lifted << "\n";
  out << "\n";

  out << "functional dependencies (distinct-projection evidence |lhs| = |lhs+rhs|):\n";
  for (const auto& lf : report.lifted_fds) {
    out << "  " << lf.fd.str(names) << "  [" << lf.lhs_distinct << " = "
        << lf.lhs_rhs_distinct << "]\n";
  }
  out << "\n";

  out << "minimal cover:\n";
  for (const auto& lf : report.cover) {
    out << "  " << lf.fd.str(names) << "  [" << lf.lhs_distinct << " = "
        << lf.lhs_rhs_distinct << "]\n";
  }
  out << "\n";

  out << "candidate keys:\n";
  for (AttributeSet k : report.candidate_keys) out << "  " << brace_list(k, names) << "\n";
  out << "\n";

  if (!report.warnings.empty()) {
    out << "warnings:\n";
    for (const auto& w : report.warnings) out << "  - " << w << "\n";
    out << "\n";
  }

  out << "schema (3NF):\n";
  for (const auto& rel : report.schema.relations) {
    out << "  " << rel.name << ": attributes " << brace_list(rel.attributes, names)
        << ", primary key " << brace_list(rel.primary_key, names);
    for (const auto& fk : rel.foreign_keys) {
      out << ", fk " << brace_list(fk.local_attributes, names) << " -> " << fk.target_relation;
    }
    out << "\n";
  }
  out << "\n";

  out << "verification: " << report.verification.violations.size() << " violation(s)"
      << ", lossless join: " << (report.verification.lossless_join ? "yes" : "no")
      << ", dependency preserving: "
      << (report.verification.dependency_preserving ? "yes" : "no") << "\n";
  for (const auto& v : report.verification.violations) {
    out << "  violation in " << v.relation << ": " << v.fd.str(names) << " (" << v.reason
        << ")\n";
  }

  if (report.include_timings) {
    out << "\nstage timings (ms):\n";
    for (const auto& t : report.timings) {
      out << "  " << t.stage << ": " << t.milliseconds << "\n";
    }
  }
  return out.str();
}

}  // namespace schemadig
