#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "gdt/analysis.hpp"
#include "gdt/error.hpp"

using namespace gdt;
using fixtures::rel_err;

namespace {

// Reference relative efficiencies (percent) for the laser example. The V
// blocks are listed as published; their rows follow α and columns γ.
const double kType1D[] = {99.95, 99.99, 100, 100, 100, 99.99, 99.97};
const double kType1A[] = {94.85, 98.27, 99.65, 100, 99.75, 99.13, 98.26};
const double kType2D[] = {100, 100, 100, 100, 100, 100, 100};
const double kType2A[] = {96.01, 98.64, 99.73, 100, 99.80, 99.29, 98.57};
const double kType1V[7][7] = {{99.16, 99.48, 99.72, 99.88, 99.97, 100, 99.98},
                              {99.37, 99.66, 99.86, 99.97, 100, 99.95, 99.83},
                              {99.47, 99.75, 99.92, 100, 99.98, 99.87, 99.68},
                              {99.53, 99.79, 99.95, 100, 99.95, 99.81, 99.58},
                              {99.57, 99.82, 99.97, 100, 99.93, 99.76, 99.49},
                              {99.60, 99.84, 99.97, 100, 99.91, 99.72, 99.43},
                              {99.62, 99.86, 99.98, 100, 99.89, 99.68, 99.37}};
const double kType2V[7][7] = {{99.12, 99.43, 99.67, 99.83, 99.94, 99.99, 100},
                              {99.37, 99.64, 99.84, 99.95, 100, 99.98, 99.91},
                              {99.51, 99.76, 99.92, 99.99, 99.99, 99.92, 99.78},
                              {99.61, 99.83, 99.96, 100, 99.96, 99.84, 99.65},
                              {99.69, 99.88, 99.98, 99.99, 99.92, 99.77, 99.54},
                              {99.75, 99.92, 99.99, 99.98, 99.88, 99.69, 99.43},
                              {99.79, 99.94, 100, 99.96, 99.84, 99.62, 99.33}};

void check_row(const SensitivityTable& t, const double* expected) {
  REQUIRE(t.cells.size() == 1);
  for (std::size_t j = 0; j < 7; ++j) {
    REQUIRE(t.cells[0][j].efficiency);
    CHECK(std::abs(100 * *t.cells[0][j].efficiency - expected[j]) < 0.5);
  }
}

void check_block(const SensitivityTable& t, const double (*expected)[7]) {
  REQUIRE(t.cells.size() == 7);
  for (std::size_t g = 0; g < 7; ++g) {
    for (std::size_t a = 0; a < 7; ++a) {
      REQUIRE(t.cells[g][a].efficiency);
      CHECK(std::abs(100 * *t.cells[g][a].efficiency - expected[a][g]) < 0.05);
    }
  }
}

}  // namespace

TEST_CASE("design family names") {
  CHECK(design_family_from("type1") == DesignFamily::Type1);
  CHECK(to_string(DesignFamily::Type2) == "type2");
  CHECK_THROWS_AS(design_family_from("type3"), DomainError);
}

TEST_CASE("integer designs exhaust the budget") {
  const auto cost = fixtures::laser_cost();
  const auto d1 = integer_design(cost, DesignFamily::Type1, 4, 98);
  REQUIRE(d1);
  CHECK(std::abs(d1->termination() - 2411) < 1);
  CHECK(std::abs(cost.total(*d1) - 1) < 1e-12);
  const auto d2 = integer_design(cost, DesignFamily::Type2, 4, 82);
  REQUIRE(d2);
  CHECK(std::abs(d2->termination() - 2991) < 1);
  CHECK_FALSE(integer_design(cost, DesignFamily::Type1, 14, 1));
  CHECK_FALSE(integer_design(cost, DesignFamily::Type1, 0, 1));
}

TEST_CASE("integer search on the laser example") {
  const auto cost = fixtures::laser_cost();
  const struct {
    CriterionKind kind;
    DesignFamily family;
    int n, m;
    double objective;
  } rows[] = {{CriterionKind::D, DesignFamily::Type1, 4, 98, 1.084e-8},
              {CriterionKind::D, DesignFamily::Type2, 4, 82, 8.17e-9},
              {CriterionKind::A, DesignFamily::Type1, 6, 4, 1.391e-3},
              {CriterionKind::A, DesignFamily::Type2, 6, 4, 1.367e-3},
              {CriterionKind::V, DesignFamily::Type1, 6, 25, 2.158e2},
              {CriterionKind::V, DesignFamily::Type2, 6, 20, 1.916e2}};
  for (const auto& row : rows) {
    const auto c = bind(fixtures::kLaser, fixtures::criterion_of(row.kind, fixtures::kLaserLife));
    const auto anchor = plan(c, cost, row.family);
    const auto best = integer_search(c, cost, row.family, anchor);
    CHECK(best.design.units() == row.n);
    CHECK(best.design.inspections() == row.m);
    CHECK(rel_err(best.objective, row.objective) < 0.01);
    CHECK(best.objective >= anchor.objective);
  }
}

TEST_CASE("integer search beats its whole neighbourhood") {
  const auto cost = fixtures::led_cost();
  for (auto family : {DesignFamily::Type1, DesignFamily::Type2}) {
    for (auto kind : {CriterionKind::D, CriterionKind::A, CriterionKind::V}) {
      const auto c = bind(fixtures::kLed, fixtures::criterion_of(kind, fixtures::kLedLife));
      const auto anchor = plan(c, cost, family);
      const auto best = integer_search(c, cost, family, anchor, 1);
      CHECK(best.objective >= anchor.objective);
      for (int n = 1; n <= 33; ++n) {
        for (int m = 1; m <= 70; ++m) {
          if (const auto d = integer_design(cost, family, n, m)) {
            CHECK(best.objective <= objective(c, *d) * (1 + 1e-12));
          }
        }
      }
    }
  }
}

TEST_CASE("integer search errors") {
  const auto cost = fixtures::laser_cost();
  const auto c = bind(fixtures::kLaser, Criterion::d());
  auto anchor = plan(c, cost, DesignFamily::Type1);
  CHECK_THROWS_AS(integer_search(c, cost, DesignFamily::Type1, anchor, 0), DomainError);
  anchor.design = Design::periodic(60, 60, 5);
  CHECK_THROWS_AS(integer_search(c, cost, DesignFamily::Type1, anchor, 2), InfeasibleError);
}

TEST_CASE("sensitivity tables for the laser example") {
  const auto cost = fixtures::laser_cost();
  const auto& truth = fixtures::kLaser;
  check_row(sensitivity_table(truth, Criterion::d(), cost, DesignFamily::Type1), kType1D);
  check_row(sensitivity_table(truth, Criterion::a(), cost, DesignFamily::Type1), kType1A);
  check_row(sensitivity_table(truth, Criterion::d(), cost, DesignFamily::Type2), kType2D);
  check_row(sensitivity_table(truth, Criterion::a(), cost, DesignFamily::Type2), kType2A);
  const auto v = Criterion::v(fixtures::kLaserLife);
  const auto t1 = sensitivity_table(truth, v, cost, DesignFamily::Type1);
  const auto t2 = sensitivity_table(truth, v, cost, DesignFamily::Type2);
  check_block(t1, kType1V);
  check_block(t2, kType2V);
  for (const auto* t : {&t1, &t2}) {
    CHECK(*t->cells[3][3].efficiency == 1.0);
    for (const auto& row : t->cells) {
      for (const auto& cell : row) CHECK(*cell.efficiency <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("sensitivity edge cases") {
  const auto cost = fixtures::laser_cost();
  SensitivityGrid centre;
  centre.multipliers = {0};
  const auto one = sensitivity_table(fixtures::kLaser, Criterion::a(), cost, DesignFamily::Type1,
                                     centre);
  REQUIRE(one.cells.size() == 1);
  REQUIRE(one.cells[0].size() == 1);
  CHECK(*one.cells[0][0].efficiency == 1.0);

  SensitivityGrid wide;
  wide.sigma_alpha = 0.02;
  const auto flagged =
      sensitivity_table(fixtures::kLaser, Criterion::d(), cost, DesignFamily::Type1, wide);
  CHECK_FALSE(flagged.cells[0][0].efficiency);
  CHECK(flagged.cells[0][0].note.find("alpha") != std::string::npos);
  CHECK(flagged.cells[0][3].efficiency);
}
