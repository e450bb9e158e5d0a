#include "doctest.h"

#include "ndk/error.hpp"
#include "ndk/gentzen.hpp"
#include "ndk/parser.hpp"
#include "ndk/printer.hpp"

using namespace ndk;
using namespace ndk::gentzen;

namespace {

Expr f(const std::string& text) { return parse_formula(text, Signature()); }

std::vector<ReductionStep> steps(const std::vector<std::string>& texts) {
  std::vector<ReductionStep> out;
  for (const auto& t : texts) out.push_back(ReductionStep::parse(t));
  return out;
}

const char* kGoal = "( neg (A v B) -> (neg A & neg B))";

}  // namespace

TEST_CASE("negation expansion") {
  CHECK(negation_expand(f("neg (A v B)")) == Expr::implies(f("A v B"), Expr::bottom()));
  CHECK(negation_expand(f("A -> B")) == f("A -> B"));
  Expr once = negation_expand(f("A <-> neg B"));
  CHECK(negation_expand(once) == once);
  Signature s;
  CHECK_THROWS_AS(negation_expand(parse_formula("forall x. A", s)), Error);
  CHECK_THROWS_AS(negation_expand(parse_formula("x = y", s)), Error);
}

TEST_CASE("manual reductions match the displayed states") {
  auto st = SequentListState::initial(f(kGoal));
  CHECK(st.display() == "0. => ¬(A v B) -> (¬A & ¬B)\n");
  CHECK(reduce(st, ReductionStep::parse("rimp(0)")).ok());
  CHECK(st.display() == "0. ¬(A v B) => ¬A & ¬B\n");
  CHECK(reduce(st, ReductionStep::parse("rand(0)")).ok());
  CHECK(st.display() == "0. ¬(A v B) => ¬A\n1. ¬(A v B) => ¬B\n");
  CHECK(reduce(st, ReductionStep::parse("rimp(0)")).ok());
  CHECK(st.display() == "0. A, ¬(A v B) => _|_\n1. ¬(A v B) => ¬B\n");
  CHECK(reduce(st, ReductionStep::parse("limp(0,1)")).ok());
  CHECK(st.display() == "0. A, ¬(A v B) => A v B\n1. A, _|_ => _|_\n2. ¬(A v B) => ¬B\n");
}

TEST_CASE("reduce rejections leave the state unchanged") {
  auto st = SequentListState::initial(f("A -> A"));
  auto before = st.display();
  CHECK(reduce(st, ReductionStep::parse("ax(0,0)")).status == ReduceStatus::OutOfRange);
  CHECK(reduce(st, ReductionStep::parse("rand(0)")).status == ReduceStatus::ShapeMismatch);
  CHECK(reduce(st, ReductionStep::parse("rimp(3)")).status == ReduceStatus::OutOfRange);
  CHECK(st.display() == before);
  CHECK(st.history().empty());
  CHECK(reduce(st, ReductionStep::parse("rimp(0)")).ok());
  // head compound: ax refused
  auto st2 = SequentListState::initial(f("(A & B) -> (A & B)"));
  CHECK(reduce(st2, ReductionStep::parse("rimp(0)")).ok());
  CHECK(reduce(st2, ReductionStep::parse("ax(0,0)")).status == ReduceStatus::ShapeMismatch);
}

TEST_CASE("cycle guard refuses repeating a sequent on its own branch") {
  auto st = SequentListState::initial(f("(A -> B) -> A"));
  CHECK(reduce(st, ReductionStep::parse("rimp(0)")).ok());
  // A -> B => A ; limp(0,0) left premise is the same sequent
  auto r = reduce(st, ReductionStep::parse("limp(0,0)"));
  CHECK(r.status == ReduceStatus::Cycle);
  CHECK(st.sequents().size() == 1);
}

TEST_CASE("memory grows monotonically") {
  auto st = SequentListState::initial(f(kGoal));
  std::size_t last = st.memory().size();
  for (const auto& s : steps({"rimp(0)", "rand(0)", "rimp(0)", "limp(0,1)", "ror1(0)", "ax(0,0)"})) {
    CHECK(reduce(st, s).ok());
    CHECK(st.memory().size() >= last);
    last = st.memory().size();
  }
}

TEST_CASE("step text round trip") {
  for (std::string t : {"rimp(0)", "limp(0,1)", "ax(2,3)", "ror2(0)"}) CHECK(ReductionStep::parse(t).text() == t);
  CHECK_THROWS_AS(ReductionStep::parse("imp(0,1)"), Error);
  CHECK_THROWS_AS(ReductionStep::parse("rimp(0,1)"), Error);
  CHECK_THROWS_AS(ReductionStep::parse("limp(0)"), Error);
}

TEST_CASE("auto proves A -> A in two steps") {
  auto h = auto_prove(f("(A -> A)"));
  REQUIRE(h);
  CHECK(*h == steps({"rimp(0)", "ax(0,0)"}));
  auto lines = reconstruct(f("(A -> A)"), *h);
  CHECK(lines == std::vector<std::string>{"0. A => A Ax0", "1. => A -> A Rimp 0"});
}

TEST_CASE("auto reproduces the de Morgan history") {
  auto h = auto_prove(f(kGoal));
  REQUIRE(h);
  std::vector<std::string> got;
  for (auto& s : *h) got.push_back(s.text());
  CHECK(got == std::vector<std::string>{"rimp(0)", "rand(0)", "rimp(0)", "limp(0,1)", "ror1(0)", "ax(0,0)",
                                        "ax(0,1)", "rimp(0)", "limp(0,1)", "ror2(0)", "ax(0,0)", "ax(0,1)"});
}

TEST_CASE("reconstruction of the de Morgan proof") {
  auto h = steps({"rimp(0)", "rand(0)", "rimp(0)", "limp(0,1)", "ror1(0)", "ax(0,0)", "ax(0,1)", "rimp(0)",
                  "limp(0,1)", "ror2(0)", "ax(0,0)", "ax(0,1)"});
  auto lines = reconstruct(f(kGoal), h);
  std::vector<std::string> expected = {
      "0. B, ¬(A v B) => B Ax0",
      "1. B, _|_ => _|_ Ax1",
      "2. B, ¬(A v B) => A v B Ror2 0",
      "3. B, ¬(A v B) => _|_ Limp1 2 1",
      "4. A, ¬(A v B) => A Ax0",
      "5. A, _|_ => _|_ Ax1",
      "6. A, ¬(A v B) => A v B Ror1 4",
      "7. A, ¬(A v B) => _|_ Limp1 6 5",
      "8. ¬(A v B) => ¬B Rimp 3",
      "9. ¬(A v B) => ¬A Rimp 7",
      "10. ¬(A v B) => ¬A & ¬B Rand 9 8",
      "11. => ¬(A v B) -> (¬A & ¬B) Rimp 10",
  };
  CHECK(lines == expected);
  CHECK_THROWS_AS(reconstruct(f(kGoal), {}), Error);
}

TEST_CASE("discrimination") {
  CHECK(auto_prove(f("neg neg (A v neg A)")));
  CHECK(auto_prove(f("neg (A v B) -> (neg A & neg B)")));
  CHECK_FALSE(auto_prove(f("A v neg A")));
  CHECK_FALSE(auto_prove(f("((A -> B) -> A) -> A")));
  CHECK_FALSE(auto_prove(f("neg neg A -> A")));
  CHECK(auto_prove(f("(A -> A) & (A -> A)")));
  CHECK(auto_prove(f("_|_ -> A")));
  CHECK(auto_prove(f("neg neg neg A -> neg A")));
}

TEST_CASE("every found history closes the state under reduce") {
  for (std::string g : {"A -> A", kGoal, "neg neg (A v neg A)", "(A & B) -> (B & A)", "(A v B) -> (B v A)",
                        "((A v B) -> C) -> ((A -> C) & (B -> C))", "(A -> B) -> (neg B -> neg A)"}) {
    auto h = auto_prove(f(g));
    REQUIRE(h);
    auto st = SequentListState::initial(f(g));
    for (const auto& s : *h) REQUIRE(reduce(st, s).ok());
    CHECK(st.closed());
  }
}
