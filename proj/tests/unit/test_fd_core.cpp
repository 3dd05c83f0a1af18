#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "schemadig/errors.hpp"
#include "schemadig/fd.hpp"
#include "support/datagen.hpp"

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

// Random FD set over n attributes; lhs sizes 1..3.
std::vector<FunctionalDependency> random_fds(std::mt19937& rng, std::size_t n,
                                             std::size_t count) {
  std::vector<FunctionalDependency> fds;
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

// Table 1 attribute indexes: INV=0 DATE=1 C_ID=2 P_ID=3 P_Name=4 QTY=5.

TEST_CASE("holds_on_instance on table1") {
  RelationInstance rel = testing::table1_fixture();
  CHECK(holds_on_instance(rel, fd({0}, 2)));   // INV -> C_ID
  CHECK(!holds_on_instance(rel, fd({0}, 3)));  // INV -> P_ID: rows 1,2 differ
  CHECK(holds_on_instance(rel, fd({0}, 1)));   // INV -> DATE
  CHECK(holds_on_instance(rel, fd({3}, 4)));   // P_ID -> P_Name
}

TEST_CASE("empty lhs holds only for constant columns") {
  RelationInstance rel = testing::table1_fixture();
  CHECK(holds_on_instance(rel, FunctionalDependency{AttributeSet{}, 1}));   // DATE constant
  CHECK(!holds_on_instance(rel, FunctionalDependency{AttributeSet{}, 0}));  // INV varies
}

TEST_CASE("full-width determinant always holds on duplicate-free rows") {
  RelationInstance rel = testing::table1_fixture();
  for (std::size_t rhs = 0; rhs < 6; ++rhs) {
    AttributeSet lhs = AttributeSet::all(6);
    lhs.remove(rhs);
    CHECK(holds_on_instance(rel, FunctionalDependency{lhs, rhs}));
  }
}

TEST_CASE("closure follows transitivity chains") {
  auto fds = std::vector<FunctionalDependency>{fd({0}, 1), fd({1}, 2)};
  CHECK(closure(set_of({0}), fds) == set_of({0, 1, 2}));
}

TEST_CASE("closure with no dependencies is the identity") {
  CHECK(closure(set_of({2, 4}), {}) == set_of({2, 4}));
}

TEST_CASE("closure laws: extensive, idempotent, monotone") {
  std::mt19937 rng(17);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 2 + rng() % 5;
    auto fds = random_fds(rng, n, rng() % 8);
    AttributeSet x(rng() & ((1ull << n) - 1));
    AttributeSet y = x;
    for (std::size_t a = 0; a < n; ++a) {
      if (rng() % 2) y.add(a);
    }
    AttributeSet cx = closure(x, fds);
    CHECK(cx.contains_all(x));
    CHECK(closure(cx, fds) == cx);
    CHECK(closure(y, fds).contains_all(cx));  // x ⊆ y
  }
}

TEST_CASE("minimal cover removes the implied FD") {
  auto cover = minimal_cover({fd({0}, 1), fd({1}, 2), fd({0}, 2)});
  std::vector<FunctionalDependency> expected{fd({0}, 1), fd({1}, 2)};
  CHECK(cover == expected);
}

TEST_CASE("minimal cover shrinks an extraneous lhs attribute and collapses") {
  // {AB -> C, A -> C}: B is extraneous, then the duplicate is removed.
  auto cover = minimal_cover({fd({0, 1}, 2), fd({0}, 2)});
  std::vector<FunctionalDependency> expected{fd({0}, 2)};
  CHECK(cover == expected);
}

TEST_CASE("already-minimal set is unchanged") {
  std::vector<FunctionalDependency> fds{fd({0}, 1), fd({2}, 3)};
  CHECK(minimal_cover(fds) == fds);
}

TEST_CASE("property: cover is closure-equivalent over all subsets") {
  std::mt19937 rng(23);
  for (int iter = 0; iter < 120; ++iter) {
    const std::size_t n = 2 + rng() % 5;  // up to 6 attributes
    auto fds = random_fds(rng, n, 1 + rng() % 9);
    auto cover = minimal_cover(fds);
    for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
      AttributeSet s(bits);
      CHECK(closure(s, fds) == closure(s, cover));
    }
    // No redundant FD and no extraneous lhs attribute remain.
    for (std::size_t i = 0; i < cover.size(); ++i) {
      std::vector<FunctionalDependency> without;
      for (std::size_t j = 0; j < cover.size(); ++j) {
        if (j != i) without.push_back(cover[j]);
      }
      CHECK(!closure(cover[i].lhs, without).contains(cover[i].rhs));
      for (std::size_t a : cover[i].lhs.indexes()) {
        AttributeSet reduced = cover[i].lhs;
        reduced.remove(a);
        CHECK(!closure(reduced, cover).contains(cover[i].rhs));
      }
    }
  }
}

TEST_CASE("candidate keys: single chain") {
  auto keys = candidate_keys(3, {fd({0}, 1), fd({1}, 2)});
  REQUIRE(keys.size() == 1);
  CHECK(keys[0] == set_of({0}));
}

TEST_CASE("candidate keys: no FDs means the whole heading") {
  auto keys = candidate_keys(2, {});
  REQUIRE(keys.size() == 1);
  CHECK(keys[0] == set_of({0, 1}));
}

TEST_CASE("candidate keys: register cover has exactly {STUDENT_CODE, SUBJECT_CODE}") {
  // SC=0 SN=1 TC=2 TN=3 UNIT=4 SUBJ=5 SUBN=6
  std::vector<FunctionalDependency> cover{fd({0}, 1), fd({2}, 3), fd({5}, 6), fd({5}, 4),
                                          fd({5}, 2)};
  CHECK(closure(set_of({0, 5}), cover) == AttributeSet::all(7));
  auto keys = candidate_keys(7, cover);
  REQUIRE(keys.size() == 1);
  CHECK(keys[0] == set_of({0, 5}));
}

TEST_CASE("candidate keys are exactly the minimal full-closure sets (exhaustive)") {
  std::mt19937 rng(31);
  for (int iter = 0; iter < 60; ++iter) {
    const std::size_t n = 2 + rng() % 5;
    auto fds = random_fds(rng, n, rng() % 8);
    auto keys = candidate_keys(n, fds);
    const AttributeSet all = AttributeSet::all(n);
    for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
      AttributeSet s(bits);
      bool is_key = closure(s, fds) == all;
      if (is_key) {
        for (std::size_t a : s.indexes()) {
          AttributeSet sub = s;
          sub.remove(a);
          if (closure(sub, fds) == all) {
            is_key = false;  // not minimal
            break;
          }
        }
      }
      bool reported = std::find(keys.begin(), keys.end(), s) != keys.end();
      CHECK(reported == is_key);
    }
  }
}

TEST_CASE("key search budget fails loudly") {
  // 20 attributes, no FDs relating them except a cycle that forces a wide
  // frontier: every pair a->b, b->a leaves singletons useless.
  std::vector<FunctionalDependency> fds;
  for (std::size_t a = 0; a + 1 < 20; a += 2) {
    fds.push_back(fd({a}, a + 1));
    fds.push_back(fd({a + 1}, a));
  }
  KeySearchOptions options;
  options.budget = 50;
  CHECK_THROWS_AS(candidate_keys(20, fds, options), KeySearchBudgetError);
}

TEST_CASE("bruteforce discovery on table1 finds the expected single-attribute FDs") {
  RelationInstance rel = testing::table1_fixture();
  auto fds = discover_fds_bruteforce(rel, 1);
  auto has = [&](FunctionalDependency f) {
    return std::find(fds.begin(), fds.end(), f) != fds.end();
  };
  CHECK(has(fd({0}, 2)));                                   // INV -> C_ID
  CHECK(has(fd({0}, 1)));                                   // INV -> DATE
  CHECK(has(fd({3}, 4)));                                   // P_ID -> P_Name
  CHECK(has(fd({5}, 0)));                                   // QTY -> INV (small sample)
  CHECK(has(FunctionalDependency{AttributeSet{}, 1}));      // DATE constant
  CHECK(!has(fd({0}, 3)));                                  // INV -> P_ID fails
  // 19 single-attribute FDs hold plus the constant record.
  CHECK(fds.size() == 20);
}

TEST_CASE("single non-constant column yields no FDs") {
  auto rel = RelationInstance::create("r", {"a"}, {{"1"}, {"2"}});
  CHECK(discover_fds_bruteforce(rel, 3).empty());
}

TEST_CASE("all rows identical: constants plus pairwise FDs") {
  auto rel = RelationInstance::create("r", {"a", "b"}, {{"x", "y"}, {"x", "y"}});
  auto fds = discover_fds_bruteforce(rel, 1);
  // ∅->a, ∅->b, a->b, b->a.
  CHECK(fds.size() == 4);
  CHECK(std::find(fds.begin(), fds.end(), FunctionalDependency{AttributeSet{}, 0}) != fds.end());
  CHECK(std::find(fds.begin(), fds.end(), fd({0}, 1)) != fds.end());
}

TEST_CASE("property: oracle output is sound and complete for minimal FDs") {
  std::mt19937 rng(41);
  for (int iter = 0; iter < 40; ++iter) {
    RelationInstance rel =
        testing::random_relation(rng, 2 + rng() % 4, 1 + rng() % 15, 1 + rng() % 4);
    const std::size_t n = rel.attribute_count();
    auto fds = discover_fds_bruteforce(rel, n - 1);
    for (const auto& f : fds) CHECK(holds_on_instance(rel, f));

    // Completeness and minimality, by direct enumeration.
    for (std::size_t rhs = 0; rhs < n; ++rhs) {
      for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
        AttributeSet lhs(bits);
        if (lhs.contains(rhs)) continue;
        FunctionalDependency f{lhs, rhs};
        bool held = holds_on_instance(rel, f);
        bool minimal = held;
        if (held && !lhs.empty()) {
          for (std::size_t a : lhs.indexes()) {
            AttributeSet sub = lhs;
            sub.remove(a);
            if (sub.empty()) continue;  // minimality among non-empty lhs
            if (holds_on_instance(rel, FunctionalDependency{sub, rhs})) {
              minimal = false;
              break;
            }
          }
        }
        bool reported = std::find(fds.begin(), fds.end(), f) != fds.end();
        CHECK(reported == minimal);
      }
    }
  }
}
