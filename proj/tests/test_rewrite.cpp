#include "lams/parse.hpp"
#include "lams/rewrite.hpp"

#include <doctest.h>

using namespace lams;

namespace {

const Rewriter rw;

std::vector<std::string> rule_trace(const std::string& src) {
  std::vector<std::string> out;
  for (const auto& s : rw.normalize(parse_term(src)).steps)
    out.push_back(rule_name(s.rule));
  return out;
}

std::string nf(const std::string& src) {
  return pretty(rw.normalize(parse_term(src)).final_term);
}

bool has_reduct(const std::string& src, RuleId rule, const std::string& after) {
  TermPtr expect = parse_term(after);
  for (const auto& r : rw.all_reducts(parse_term(src)))
    if (r.rule == rule && term_eq(r.after, expect)) return true;
  return false;
}

}  // namespace

TEST_CASE("quantum-if distributes over the superposed condition") {
  CHECK(nf("(if {|0>} else {|1>}) (1/2 . |1> + 1/3 . |0>)") ==
        "1/2 . |0> + 1/3 . |1>");
}

TEST_CASE("the CNOT example reduces exactly as displayed") {
  auto names = rule_trace("(\\x:B. x * x) ((1/2)*sqrt2 . (|0> + |1>))");
  CHECK(names == std::vector<std::string>{"lin_r_scal", "lin_r_plus", "beta_b",
                                          "beta_b"});
  CHECK(nf("(\\x:B. x * x) ((1/2)*sqrt2 . (|0> + |1>))") ==
        "(1/2)*sqrt2 . (|0> * |0> + |1> * |1>)");
}

TEST_CASE("casting turns a pair of a superposition into a superposition") {
  CHECK(nf("upR (((1/2)*sqrt2 . (|0> + |1>)) * |0>)") ==
        "(1/2)*sqrt2 . (|0> * |0> + |1> * |0>)");
  // the mirrored cast, through the left component
  CHECK(nf("upL (|0> * (|0> + |1>))") == "|0> * |0> + |0> * |1>");
}

TEST_CASE("the introduction's five-step derivation") {
  auto names = rule_trace("(-1) . |0> + |0> + 3 . |1> + (-2) . |1>");
  CHECK(names == std::vector<std::string>{"fact1", "fact", "zero_scal", "neut",
                                          "unit"});
  CHECK(nf("(-1) . |0> + |0> + 3 . |1> + (-2) . |1>") == "|1>");
}

TEST_CASE("vector space axioms as steps") {
  CHECK(nf("zero[B] + 1/2 . |0>") == "1/2 . |0>");   // neut
  CHECK(nf("1 . (|0> + |1>)") == "|0> + |1>");        // unit
  CHECK(nf("0 . (|0> + |1>)") == "zero[B]");          // zero_scal
  CHECK(nf("0 . ((1/2 . |0>) * |1>)") == "zero[S(B) x B]");
  CHECK(nf("2 . zero[B]") == "zero[B]");              // zero
  CHECK(nf("2 . 3 . |0>") == "6 . |0>");              // prod
  CHECK(nf("|0> + |0>") == "2 . |0>");                // fact2
  CHECK(nf("2 . |0> + |0>") == "3 . |0>");            // fact1
  // a factored scalar over a sum is a normal form
  CHECK(nf("1/2 . (|0> + |1>)") == "1/2 . (|0> + |1>)");
}

TEST_CASE("beta discipline") {
  // call-by-base fires only on basis arguments
  CHECK(rule_trace("(\\x:B. x * x) |0>") ==
        std::vector<std::string>{"beta_b"});
  // call-by-name substitutes the argument unevaluated
  auto names = rule_trace("(\\x:S(B). x + zero[B]) (|0> + |1>)");
  REQUIRE(!names.empty());
  CHECK(names.front() == "beta_n");
  // the argument of a call-by-base abstraction reduces first
  auto head_arg = rule_trace("(\\x:B. x) (head (|0> * |1>))");
  CHECK(head_arg == std::vector<std::string>{"head", "beta_b"});
}

TEST_CASE("linear distribution in function position") {
  CHECK(nf("((\\x:B. |1>) + (\\y:B. |1>)) |0>") == "2 . |1>");
  CHECK(nf("(2 . (\\x:B. x)) |1>") == "2 . |1>");
  CHECK(nf("zero[B => B] |0>") == "zero[B]");
  CHECK(nf("(\\x:B. x) zero[B]") == "zero[B]");
}

TEST_CASE("lists") {
  CHECK(nf("head (|0> * |1> * |1>)") == "|0>");
  CHECK(nf("tail (|0> * |1> * |1>)") == "|1> * |1>");
  // the head position itself reduces first
  CHECK(rule_trace("head ((\\x:B. x * |1>) |0>)") ==
        std::vector<std::string>{"beta_b", "head"});
}

TEST_CASE("cast zero rules") {
  CHECK(nf("upR (zero[S(B) x B])") == "zero[B x B]");        // cast_neut_zero_r
  CHECK(nf("upR (zero[S(S(B)) x B])") == "zero[B x B]");     // dist_cast_zero_r first
  CHECK(nf("upL (zero[B x S(B^2)])") == "zero[B x B x B]");  // mirrored
  CHECK(nf("upR (zero[B] * |1>)") == "zero[B x B]");         // dist_zero_r
  CHECK(nf("upL (|1> * zero[B])") == "zero[B x B]");         // dist_zero_l
}

TEST_CASE("cast neutrality on basis pairs keeps the printed labels") {
  auto r = rw.step(parse_term("upR (|0> * |1>)"));
  REQUIRE(r.has_value());
  CHECK(rule_name(r->rule) == std::string("cast_neut_l"));
  auto l = rw.step(parse_term("upL (|0> * |1>)"));
  REQUIRE(l.has_value());
  CHECK(rule_name(l->rule) == std::string("cast_neut_r"));
}

TEST_CASE("casts distribute through sums and scales of pairs") {
  CHECK(rule_trace("upR ((2 . |0>) * |1> + (3 . |1>) * |1>)").front() ==
        "dist_cast_sum");
  CHECK(rule_trace("upR (2 . ((3 . |0>) * |1>))").front() == "dist_cast_scal");
}

TEST_CASE("normal forms are normal") {
  for (const char* src :
       {"|0>", "zero[B]", "1/2 . (|0> + |1>)", "\\x:B. x * x",
        "1/2 . |0> + 1/3 . |1>", "if { |0> } else { |1> }",
        "(2 . |0>) * |1>"}) {
    CAPTURE(src);
    CHECK(rw.is_normal(parse_term(src)));
  }
}

TEST_CASE("all_reducts enumerates matches, not the strategy") {
  CHECK(has_reduct("1 . (|0> + |1>)", RuleId::unit, "|0> + |1>"));
  // exactly the prod redex at the root of a nested scale over a normal body
  auto reds = rw.all_reducts(parse_term("2 . (3 . |0>)"));
  REQUIRE(reds.size() == 1);
  CHECK(reds[0].rule == RuleId::prod);
  CHECK(reds[0].path.empty());
  // the fact redex on the two |0> summands is found by the pair scan
  CHECK(has_reduct("2 . |0> + 3 . |0> + |1>", RuleId::fact,
                   "5 . |0> + |1>"));
  // a brute-force scan over all summand pairs agrees on every fact redex
  TermPtr t = parse_term("2 . |0> + 3 . |0> + |1> + |1>");
  int fact_like = 0;
  for (const auto& r : rw.all_reducts(t))
    if (r.rule == RuleId::fact || r.rule == RuleId::fact1 ||
        r.rule == RuleId::fact2)
      ++fact_like;
  CHECK(fact_like == 2);  // (2.|0>, 3.|0>) and (|1>, |1>)
}

TEST_CASE("trace bookkeeping") {
  Trace tr = rw.normalize(parse_term("(\\x:B. x * x) (2 . |0>)"));
  CHECK(tr.normal);
  REQUIRE(tr.steps.size() >= 2);
  for (size_t i = 0; i + 1 < tr.steps.size(); ++i)
    CHECK(term_eq(tr.steps[i].after, tr.steps[i + 1].before));
  CHECK(term_eq(tr.steps.front().before, tr.initial));
  CHECK(term_eq(tr.steps.back().after, tr.final_term));
  CHECK(rw.is_normal(tr.final_term));
}

TEST_CASE("step budget surfaces as a strong-normalization failure") {
  CHECK_THROWS_AS(
      rw.normalize(parse_term("(\\x:B. x * x) ((1/2)*sqrt2 . (|0> + |1>))"), 2),
      normalization_budget_exceeded);
}
