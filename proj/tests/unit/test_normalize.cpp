#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "schemadig/errors.hpp"
#include "schemadig/normalize.hpp"

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

// Register heading: SC=0 SN=1 TC=2 TN=3 UNIT=4 SUBJ=5 SUBN=6.
const std::vector<std::string> kRegisterNames = {
    "STUDENT_CODE", "STUDENT_NAME", "TEACHER_CODE", "TEACHER_NAME",
    "UNIT",         "SUBJECT_CODE", "SUBJECT_NAME"};

std::vector<FunctionalDependency> register_cover() {
  return {fd({0}, 1), fd({2}, 3), fd({5}, 6), fd({5}, 4), fd({5}, 2)};
}

SchemaDesign register_schema() {
  auto cover = register_cover();
  auto keys = candidate_keys(7, cover);
  return synthesize_3nf(kRegisterNames, cover, keys);
}

std::vector<FunctionalDependency> random_fds(std::mt19937& rng, std::size_t n) {
  std::vector<FunctionalDependency> fds;
  const std::size_t count = 1 + rng() % 10;
  for (std::size_t i = 0; i < count; ++i) {
    AttributeSet lhs;
    const std::size_t k = 1 + rng() % std::min<std::size_t>(3, n);
    while (lhs.size() < k) lhs.add(rng() % n);
    std::size_t rhs = rng() % n;
    if (lhs.contains(rhs)) continue;
    fds.push_back(FunctionalDependency{lhs, rhs});
  }
  return fds;
}

}  // namespace

TEST_CASE("register cover synthesizes the four expected relations") {
  SchemaDesign schema = register_schema();
  REQUIRE(schema.relations.size() == 4);

  CHECK(schema.relations[0].name == "STUDENT_CODE");
  CHECK(schema.relations[0].attributes == set_of({0, 1}));
  CHECK(schema.relations[0].primary_key == set_of({0}));

  CHECK(schema.relations[1].name == "TEACHER_CODE");
  CHECK(schema.relations[1].attributes == set_of({2, 3}));

  CHECK(schema.relations[2].name == "SUBJECT_CODE");
  CHECK(schema.relations[2].attributes == set_of({2, 4, 5, 6}));
  CHECK(schema.relations[2].primary_key == set_of({5}));

  CHECK(schema.relations[3].name == "STUDENT_CODE_SUBJECT_CODE");
  CHECK(schema.relations[3].attributes == set_of({0, 5}));
  CHECK(schema.relations[3].primary_key == set_of({0, 5}));
}

TEST_CASE("empty cover gives one relation with the whole heading as key") {
  auto keys = candidate_keys(3, {});
  SchemaDesign schema = synthesize_3nf({"a", "b", "c"}, {}, keys);
  REQUIRE(schema.relations.size() == 1);
  CHECK(schema.relations[0].attributes == set_of({0, 1, 2}));
  CHECK(schema.relations[0].primary_key == set_of({0, 1, 2}));
}

TEST_CASE("key absorbed into an existing relation adds no key relation") {
  std::vector<FunctionalDependency> cover{fd({0}, 1)};
  auto keys = candidate_keys(2, cover);
  SchemaDesign schema = synthesize_3nf({"A", "B"}, cover, keys);
  REQUIRE(schema.relations.size() == 1);
  CHECK(schema.relations[0].attributes == set_of({0, 1}));
  CHECK(schema.relations[0].primary_key == set_of({0}));
}

TEST_CASE("empty key list is an upstream bug") {
  CHECK_THROWS_AS(synthesize_3nf({"a"}, {}, {}), NoKeyAvailableError);
}

TEST_CASE("mutually determining determinants collapse by subset absorption") {
  std::vector<FunctionalDependency> cover{fd({0}, 1), fd({1}, 0)};
  auto keys = candidate_keys(2, cover);
  SchemaDesign schema = synthesize_3nf({"A", "B"}, cover, keys);
  REQUIRE(schema.relations.size() == 1);
  CHECK(schema.relations[0].attributes == set_of({0, 1}));
}

TEST_CASE("attributes in no FD land in the key relation") {
  // c and d are free; every key must contain them.
  std::vector<FunctionalDependency> cover{fd({0}, 1)};
  auto keys = candidate_keys(4, cover);
  REQUIRE(keys.size() == 1);
  CHECK(keys[0] == set_of({0, 2, 3}));
  SchemaDesign schema = synthesize_3nf({"a", "b", "c", "d"}, cover, keys);
  REQUIRE(schema.relations.size() == 2);
  CHECK(schema.relations[1].attributes == set_of({0, 2, 3}));
  CHECK(schema.relations[1].primary_key == set_of({0, 2, 3}));

  // Attribute conservation.
  AttributeSet all_attrs;
  for (const auto& rel : schema.relations) all_attrs = all_attrs | rel.attributes;
  CHECK(all_attrs == AttributeSet::all(4));
}

TEST_CASE("register schema verifies clean: 3NF, lossless, dependency preserving") {
  SchemaDesign schema = register_schema();
  VerificationReport report = verify_3nf(schema, register_cover());
  CHECK(report.violations.empty());
  CHECK(report.lossless_join);
  CHECK(report.dependency_preserving);
  CHECK(report.passed());
}

TEST_CASE("a transitive dependency inside a relation is flagged") {
  // Relation (SC, SUBJ, TC) with SUBJ -> TC embedded: SUBJ is not a
  // superkey of it and TC is not prime.
  SchemaDesign schema;
  schema.attribute_names = kRegisterNames;
  schema.candidate_keys = {set_of({0, 5})};
  OutputRelation merged;
  merged.name = "MERGED";
  merged.attributes = set_of({0, 5, 2});
  merged.primary_key = set_of({0, 5});
  schema.relations.push_back(merged);
  schema.source_fds = register_cover();

  VerificationReport report = verify_3nf(schema, register_cover());
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].relation == "MERGED");
  CHECK(report.violations[0].fd == fd({5}, 2));
}

TEST_CASE("single relation with no FDs verifies vacuously") {
  SchemaDesign schema;
  schema.attribute_names = {"a", "b"};
  schema.candidate_keys = {set_of({0, 1})};
  OutputRelation rel;
  rel.name = "R";
  rel.attributes = set_of({0, 1});
  rel.primary_key = set_of({0, 1});
  schema.relations.push_back(rel);
  VerificationReport report = verify_3nf(schema, {});
  CHECK(report.passed());
}

TEST_CASE("register foreign keys: registration references both entities, subject references teacher") {
  SchemaDesign schema = assign_foreign_keys(register_schema());

  const OutputRelation& student = schema.relations[0];
  const OutputRelation& teacher = schema.relations[1];
  const OutputRelation& subject = schema.relations[2];
  const OutputRelation& reg = schema.relations[3];

  CHECK(student.foreign_keys.empty());
  CHECK(teacher.foreign_keys.empty());

  REQUIRE(subject.foreign_keys.size() == 1);
  CHECK(subject.foreign_keys[0].local_attributes == set_of({2}));
  CHECK(subject.foreign_keys[0].target_relation == "TEACHER_CODE");

  REQUIRE(reg.foreign_keys.size() == 2);
  CHECK(reg.foreign_keys[0].local_attributes == set_of({0}));
  CHECK(reg.foreign_keys[0].target_relation == "STUDENT_CODE");
  CHECK(reg.foreign_keys[1].local_attributes == set_of({5}));
  CHECK(reg.foreign_keys[1].target_relation == "SUBJECT_CODE");
}

TEST_CASE("single relation gets no foreign keys") {
  auto keys = candidate_keys(2, {fd({0}, 1)});
  SchemaDesign schema = assign_foreign_keys(synthesize_3nf({"a", "b"}, {fd({0}, 1)}, keys));
  CHECK(schema.relations[0].foreign_keys.empty());
}

TEST_CASE("identical primary keys reference each other symmetrically") {
  SchemaDesign schema;
  schema.attribute_names = {"k", "x", "y"};
  schema.candidate_keys = {set_of({0})};
  OutputRelation r1{"K_X", set_of({0, 1}), set_of({0}), {}};
  OutputRelation r2{"K_Y", set_of({0, 2}), set_of({0}), {}};
  schema.relations = {r1, r2};
  schema = assign_foreign_keys(schema);
  REQUIRE(schema.relations[0].foreign_keys.size() == 1);
  CHECK(schema.relations[0].foreign_keys[0].target_relation == "K_Y");
  REQUIRE(schema.relations[1].foreign_keys.size() == 1);
  CHECK(schema.relations[1].foreign_keys[0].target_relation == "K_X");
}

TEST_CASE("ambiguous targets prefer the smallest relation then name") {
  SchemaDesign schema;
  schema.attribute_names = {"k", "x", "y", "z"};
  schema.candidate_keys = {set_of({0})};
  OutputRelation big{"BIG", set_of({0, 1, 2}), set_of({0}), {}};
  OutputRelation small{"SMALL", set_of({0, 3}), set_of({0}), {}};
  OutputRelation user{"USER", set_of({0, 1, 2, 3}), set_of({0, 1, 2, 3}), {}};
  schema.relations = {big, small, user};
  schema = assign_foreign_keys(schema);
  const auto& fks = schema.relations[2].foreign_keys;
  REQUIRE(fks.size() == 1);
  CHECK(fks[0].target_relation == "SMALL");
}

TEST_CASE("property: synthesis output is 3NF, conserving, lossless, dependency preserving") {
  std::mt19937 rng(20240304);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 2 + rng() % 7;  // up to 8 attributes
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("a" + std::to_string(i));
    auto cover = minimal_cover(random_fds(rng, n));
    auto keys = candidate_keys(n, cover);
    SchemaDesign schema = assign_foreign_keys(synthesize_3nf(names, cover, keys));

    VerificationReport report = verify_3nf(schema, cover);
    CHECK(report.violations.empty());
    CHECK(report.lossless_join);
    CHECK(report.dependency_preserving);

    AttributeSet all_attrs;
    for (const auto& rel : schema.relations) {
      CHECK(!rel.primary_key.empty());
      CHECK(rel.attributes.contains_all(rel.primary_key));
      all_attrs = all_attrs | rel.attributes;
    }
    CHECK(all_attrs == AttributeSet::all(n));

    // Exhaustive dependency-preservation cross-check.
    for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
      AttributeSet s(bits);
      CHECK(projected_closure(s, schema, cover) == closure(s, cover));
    }

    // Determinism: repeat the synthesis and compare names and sets.
    SchemaDesign again = assign_foreign_keys(synthesize_3nf(names, cover, keys));
    REQUIRE(again.relations.size() == schema.relations.size());
    for (std::size_t i = 0; i < schema.relations.size(); ++i) {
      CHECK(again.relations[i].name == schema.relations[i].name);
      CHECK(again.relations[i].attributes == schema.relations[i].attributes);
      CHECK(again.relations[i].primary_key == schema.relations[i].primary_key);
    }
  }
}

TEST_CASE("relation name collision gets the R_ prefix") {
  // Heading: "A_B", "A", "B", "x": group keys {A,B} and {A_B} both name
  // to "A_B".
  std::vector<std::string> names{"A_B", "A", "B", "x"};
  std::vector<FunctionalDependency> cover{fd({0}, 3), fd({1, 2}, 0)};
  auto keys = candidate_keys(4, cover);
  SchemaDesign schema = synthesize_3nf(names, cover, keys);
  REQUIRE(schema.relations.size() >= 2);
  CHECK(schema.relations[0].name == "A_B");
  CHECK(schema.relations[1].name == "R_A_B");
}
