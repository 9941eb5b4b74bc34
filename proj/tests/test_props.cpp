#include "lams/props.hpp"

#include "lams/denote.hpp"
#include "lams/parse.hpp"
#include "lams/rewrite.hpp"

#include <doctest.h>

using namespace lams;

namespace {

GenConfig smoke_cfg() {
  GenConfig cfg;
  cfg.seed = 5;
  cfg.count = 40;
  cfg.max_size = 10;
  return cfg;
}

}  // namespace

TEST_CASE("generated terms are closed and well-typed at their goal") {
  GenConfig cfg = smoke_cfg();
  TermGen gen(cfg);
  for (int i = 0; i < 200; ++i) {
    TypePtr goal = Type::span(Type::bools(1 + static_cast<int>(gen.rand_below(3))));
    TermPtr t = gen.next_at(goal);
    CHECK(is_closed(t));
    CHECK_NOTHROW(check({}, t, goal));
  }
}

TEST_CASE("identical configuration reproduces the identical stream") {
  GenConfig cfg = smoke_cfg();
  TermGen a(cfg), b(cfg);
  for (int i = 0; i < 100; ++i) CHECK(term_eq(a.next(), b.next()));
}

TEST_CASE("the full suite passes at smoke scale") {
  for (const auto& rep : run_all_properties(smoke_cfg())) {
    CAPTURE(rep.name);
    CHECK(rep.cases > 0);
    for (const auto& f : rep.failures) {
      CAPTURE(f.term);
      CAPTURE(f.detail);
    }
    CHECK(rep.failures.empty());
  }
}

TEST_CASE("reports are deterministic") {
  GenConfig cfg = smoke_cfg();
  cfg.count = 20;
  auto a = run_all_properties(cfg);
  auto b = run_all_properties(cfg);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == b[i].name);
    CHECK(a[i].cases == b[i].cases);
    CHECK(a[i].failures.size() == b[i].failures.size());
  }
}

TEST_CASE("properties run on every scalar ring") {
  for (RingId ring : {RingId::Q, RingId::Z, RingId::QSqrt2I}) {
    GenConfig cfg = smoke_cfg();
    cfg.ring = ring;
    cfg.count = 15;
    for (const auto& rep : run_all_properties(cfg)) {
      CAPTURE(ring_name(ring));
      CAPTURE(rep.name);
      CHECK(rep.failures.empty());
    }
  }
}

TEST_CASE("the harness flags a genuinely broken step") {
  // corrupted fixture: pretend a step rewrote 1/2.|0> into 1/3.|0>
  RingId r = RingId::QSqrt2I;
  TypePtr ty = parse_type("S(B)");
  SemPtr before = denote(check({}, parse_term("1/2 . |0>"), ty), r);
  SemPtr after = denote(check({}, parse_term("1/3 . |0>"), ty), r);
  CHECK(sem_eq(before, after, ty, r) == TriBool::False);
}

TEST_CASE("the double-derivation example evaluates identically both ways") {
  GenConfig cfg = smoke_cfg();
  cfg.count = 1;
  PropertyReport rep = run_property("derivation_independence", cfg);
  CHECK(rep.cases >= 3);  // the two fixed examples plus generated ones
  CHECK(rep.failures.empty());
}
