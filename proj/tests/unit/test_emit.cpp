#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "schemadig/emit.hpp"
#include "schemadig/errors.hpp"
#include "support/datagen.hpp"

#include <json.hpp>

using namespace schemadig;

namespace {

AttributeSet set_of(std::initializer_list<std::size_t> idx) {
  AttributeSet s;
  for (std::size_t i : idx) s.add(i);
  return s;
}

FunctionalDependency fd(std::initializer_list<std::size_t> lhs, std::size_t rhs) {
  return FunctionalDependency{set_of(lhs), rhs};
}

SchemaDesign register_schema() {
  std::vector<FunctionalDependency> cover{fd({0}, 1), fd({2}, 3), fd({5}, 6), fd({5}, 4),
                                          fd({5}, 2)};
  auto keys = candidate_keys(7, cover);
  return assign_foreign_keys(synthesize_3nf(
      {"STUDENT_CODE", "STUDENT_NAME", "TEACHER_CODE", "TEACHER_NAME", "UNIT", "SUBJECT_CODE",
       "SUBJECT_NAME"},
      cover, keys));
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("register DDL: four tables, registration last, teacher before subject") {
  std::string ddl = emit_ddl(register_schema());
  const auto pos_student = ddl.find("CREATE TABLE STUDENT_CODE (");
  const auto pos_teacher = ddl.find("CREATE TABLE TEACHER_CODE (");
  const auto pos_subject = ddl.find("CREATE TABLE SUBJECT_CODE (");
  const auto pos_reg = ddl.find("CREATE TABLE STUDENT_CODE_SUBJECT_CODE (");
  REQUIRE(pos_student != std::string::npos);
  REQUIRE(pos_teacher != std::string::npos);
  REQUIRE(pos_subject != std::string::npos);
  REQUIRE(pos_reg != std::string::npos);
  CHECK(pos_teacher < pos_subject);   // referenced before referencing
  CHECK(pos_subject < pos_reg);
  CHECK(pos_student < pos_reg);
  CHECK(ddl.find("FOREIGN KEY (TEACHER_CODE) REFERENCES TEACHER_CODE (TEACHER_CODE)") !=
        std::string::npos);
  CHECK(ddl.find("PRIMARY KEY (STUDENT_CODE, SUBJECT_CODE)") != std::string::npos);
}

TEST_CASE("single relation emits one CREATE TABLE with a primary key only") {
  SchemaDesign schema;
  schema.attribute_names = {"a", "b"};
  schema.candidate_keys = {set_of({0})};
  schema.relations.push_back(OutputRelation{"a", set_of({0, 1}), set_of({0}), {}});
  std::string ddl = emit_ddl(schema);
  CHECK(ddl ==
        "CREATE TABLE a (\n"
        "  a TEXT NOT NULL,\n"
        "  b TEXT,\n"
        "  PRIMARY KEY (a)\n"
        ");\n\n");
}

TEST_CASE("mutually referencing relations are emitted with commented FKs") {
  SchemaDesign schema;
  schema.attribute_names = {"k", "x", "y"};
  schema.candidate_keys = {set_of({0})};
  OutputRelation r1{"K_X", set_of({0, 1}), set_of({0}), {ForeignKey{set_of({0}), "K_Y"}}};
  OutputRelation r2{"K_Y", set_of({0, 2}), set_of({0}), {ForeignKey{set_of({0}), "K_X"}}};
  schema.relations = {r1, r2};
  std::string ddl = emit_ddl(schema);
  CHECK(ddl.find("-- warning: foreign-key graph contains a cycle") != std::string::npos);
  CHECK(ddl.find("CREATE TABLE K_X") != std::string::npos);
  CHECK(ddl.find("CREATE TABLE K_Y") != std::string::npos);
  CHECK(ddl.find("-- FOREIGN KEY (k) REFERENCES K_Y (k)") != std::string::npos);
  CHECK(ddl.find("-- FOREIGN KEY (k) REFERENCES K_X (k)") != std::string::npos);
}

TEST_CASE("identifiers that are not plain get quoted") {
  SchemaDesign schema;
  schema.attribute_names = {"order id", "total$"};
  schema.candidate_keys = {set_of({0})};
  schema.relations.push_back(OutputRelation{"order id", set_of({0, 1}), set_of({0}), {}});
  std::string ddl = emit_ddl(schema);
  CHECK(ddl.find("CREATE TABLE \"order id\" (") != std::string::npos);
  CHECK(ddl.find("\"total$\" TEXT") != std::string::npos);
}

TEST_CASE("DDL is byte-identical across calls") {
  CHECK(emit_ddl(register_schema()) == emit_ddl(register_schema()));
}

TEST_CASE("rule store round trip over table1 mining output") {
  TransactionDB db = encode_transactions(testing::table1_fixture());
  MinerOptions options;
  options.max_size = 6;
  auto rules = generate_rules(frequent_itemsets(db, options), Ratio{1, 1});
  REQUIRE(!rules.empty());

  const std::string path = temp_path("schemadig_rules_roundtrip.store");
  persist_rules(rules, db, path);
  auto loaded = load_rules(path);
  REQUIRE(loaded.size() == rules.size());
  for (std::size_t i = 0; i < rules.size(); ++i) CHECK(loaded[i] == rules[i]);
  std::remove(path.c_str());
}

TEST_CASE("table1 store contains {INV=001} -> {C_ID=C01} with counts 2/2") {
  TransactionDB db = encode_transactions(testing::table1_fixture());
  MinerOptions options;
  options.max_size = 6;
  auto rules = generate_rules(frequent_itemsets(db, options), Ratio{1, 1});
  std::string text = render_rules(rules, db);
  CHECK(text.find("{\"lhs\":[[0,0,\"001\"]],\"rhs\":[[2,0,\"C01\"]],\"support\":2,"
                  "\"confidence\":[2,2]}") != std::string::npos);
}

TEST_CASE("empty rule list gives a valid header-only store") {
  TransactionDB db = encode_transactions(testing::table1_fixture());
  const std::string path = temp_path("schemadig_rules_empty.store");
  persist_rules({}, db, path);
  CHECK(load_rules(path).empty());
  std::remove(path.c_str());
}

TEST_CASE("property: rule store round trip on random tables") {
  std::mt19937 rng(9);
  for (int iter = 0; iter < 10; ++iter) {
    RelationInstance rel =
        testing::random_relation(rng, 2 + rng() % 4, 1 + rng() % 12, 1 + rng() % 4);
    TransactionDB db = encode_transactions(rel);
    MinerOptions options;
    options.max_size = rel.attribute_count();
    auto rules = generate_rules(frequent_itemsets(db, options), Ratio{1, 2});
    const std::string path = temp_path("schemadig_rules_prop.store");
    persist_rules(rules, db, path);
    auto loaded = load_rules(path);
    REQUIRE(loaded.size() == rules.size());
    for (std::size_t i = 0; i < rules.size(); ++i) CHECK(loaded[i] == rules[i]);
    std::remove(path.c_str());
  }
}

TEST_CASE("report json is machine-parseable and carries FD evidence") {
  RunReport report;
  report.input_path = "in.csv";
  report.relation_name = "r";
  report.rows = 4;
  report.attributes = {"INV", "DATE", "C_ID"};
  report.min_support_abs = 1;
  report.max_itemset_size = 3;
  report.max_lhs = 2;
  report.null_policy = "sentinel";
  report.frequent_itemset_count = 10;
  report.filter = FilterReport{9, 7, 4, 2};
  report.lifted_fds.push_back(LiftedFd{fd({0}, 1), 2, 2});
  report.cover.push_back(LiftedFd{fd({0}, 1), 2, 2});
  report.candidate_keys.push_back(set_of({0, 2}));
  report.warnings.push_back("DATE: constant attribute (single distinct value)");
  report.schema.attribute_names = report.attributes;
  report.schema.candidate_keys = report.candidate_keys;
  report.schema.relations.push_back(OutputRelation{"INV", set_of({0, 1}), set_of({0}), {}});
  report.verification.lossless_join = true;
  report.verification.dependency_preserving = true;

  auto j = nlohmann::json::parse(emit_report_json(report));
  CHECK(j["input"]["rows"] == 4);
  CHECK(j["mining"]["rules"]["generated"] == 9);
  CHECK(j["mining"]["rules"]["after_confidence"] == 7);
  CHECK(j["mining"]["rules"]["after_minimality"] == 4);
  CHECK(j["functional_dependencies"][0]["lhs"][0] == "INV");
  CHECK(j["functional_dependencies"][0]["rhs"] == "DATE");
  CHECK(j["functional_dependencies"][0]["distinct_lhs"] == 2);
  CHECK(j["candidate_keys"][0][1] == "C_ID");
  CHECK(j["schema"]["verification"]["lossless_join"] == true);
  CHECK(j.contains("timings_ms") == false);

  // Text form carries the reduction counters.
  std::string text = emit_report_text(report);
  CHECK(text.find("rules generated:        9") != std::string::npos);
  CHECK(text.find("after 100% confidence:  7") != std::string::npos);
  CHECK(text.find("after minimal lhs:      4") != std::string::npos);
  CHECK(text.find("DATE: constant attribute") != std::string::npos);
}

TEST_CASE("timings appear only when requested") {
  RunReport report;
  report.attributes = {"a"};
  report.schema.attribute_names = {"a"};
  report.timings.push_back(StageTiming{"ingest", 12});
  CHECK(emit_report_json(report).find("timings_ms") == std::string::npos);
  report.include_timings = true;
  auto j = nlohmann::json::parse(emit_report_json(report));
  CHECK(j["timings_ms"]["ingest"] == 12);
}
