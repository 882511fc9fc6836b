#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ergolab/checks/random_sets.hpp"
#include "ergolab/errors.hpp"
#include "ergolab/parse.hpp"

namespace ergolab {
namespace {

Scalar q(long p, long r) { return Scalar::fraction(p, r); }

TEST(ParseScalar, Forms) {
  EXPECT_EQ(parse_scalar("3/8"), q(3, 8));
  EXPECT_EQ(parse_scalar(" -7 "), Scalar(-7));
  EXPECT_EQ(parse_scalar("(-1/2 + 1/2*sqrt(5))"), Scalar::quadratic(mpq_class(-1, 2), mpq_class(1, 2), 5));
  EXPECT_EQ(parse_scalar("(−1/2 + 1/2*sqrt(5))"), parse_scalar("(-1/2+1/2*sqrt(5))"));
  EXPECT_EQ(parse_scalar("sqrt(8)/4"), Scalar::sqrt(2) / Scalar(2));
  EXPECT_EQ(parse_scalar("2*(1/3 - 1/4)"), q(1, 6));
}

TEST(ParseScalar, Errors) {
  EXPECT_THROW(parse_scalar(""), ParseError);
  EXPECT_THROW(parse_scalar("1/0"), ParseError);
  EXPECT_THROW(parse_scalar("sqrt(-2)"), ParseError);
  EXPECT_THROW(parse_scalar("1 +"), ParseError);
  EXPECT_THROW(parse_scalar("sqrt(2) + sqrt(3)"), ParseError);
  try {
    parse_scalar("1/2 x");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 5U);
  }
}

TEST(ParseSet, Examples) {
  const SpaceRef bin = Space::cylinders(2);
  const SetClass u = parse_set_expr("cyl(\"0\") | cyl(\"11\")", bin);
  EXPECT_EQ(measure(u), q(3, 4));
  EXPECT_TRUE(u.is_canonical());

  const SetClass c = parse_set_expr("~interval(1/3, 1/2)", Space::circle());
  EXPECT_EQ(c.as<IntervalSet>().intervals.size(), 2U);
  EXPECT_EQ(measure(c), q(5, 6));

  EXPECT_TRUE(is_null(parse_set_expr("full ^ full", bin)));
}

TEST(ParseSet, PrecedenceTightestFirst) {
  const SpaceRef atoms = Space::uniform_atoms(4);
  auto set = [&](std::vector<std::size_t> m) { return SetClass::atoms(atoms, m); };
  // ~ binds tighter than &, & than ^, ^ than |, | than difference.
  EXPECT_EQ(parse_set_expr("~atoms{0} & atoms{0,1}", atoms), set({1}));
  EXPECT_EQ(parse_set_expr("atoms{0} | atoms{1} & atoms{2}", atoms), set({0}));
  EXPECT_EQ(parse_set_expr("atoms{0,1} ^ atoms{1} | atoms{3}", atoms), set({0, 3}));
  EXPECT_EQ(parse_set_expr("atoms{0,1} | atoms{2} \\ atoms{1,2}", atoms), set({0}));
  EXPECT_EQ(parse_set_expr("atoms{0,1} \\ atoms{1} \\ atoms{0}", atoms), set({}));
  EXPECT_EQ(parse_set_expr("(atoms{0} | atoms{1}) & atoms{1,2}", atoms), set({1}));
  EXPECT_EQ(parse_set_expr("atoms{}", atoms), set({}));
}

TEST(ParseSet, ProductSpaces) {
  const SpaceRef prod = Space::product({q(1, 2), q(1, 2)}, Space::cylinders(2));
  EXPECT_EQ(measure(parse_set_expr("atoms{0}", prod)), q(1, 2));
  EXPECT_EQ(measure(parse_set_expr("cyl(\"0\")", prod)), q(1, 2));
  EXPECT_EQ(measure(parse_set_expr("fiber(1, cyl(\"01\"))", prod)), q(1, 8));
  EXPECT_EQ(parse_set_expr("fiber(0, full) | fiber(1, full)", prod), SetClass::full(prod));
}

TEST(ParseSet, Errors) {
  const SpaceRef bin = Space::cylinders(2);
  EXPECT_THROW(parse_set_expr("cyl(\"012\")", bin), ParseError);
  EXPECT_THROW(parse_set_expr("interval(1/2, 1/3)", Space::circle()), ParseError);
  EXPECT_THROW(parse_set_expr("interval(0, 3/2)", Space::circle()), ParseError);
  EXPECT_THROW(parse_set_expr("atoms{0,4}", Space::uniform_atoms(4)), ParseError);
  EXPECT_THROW(parse_set_expr("interval(0, 1/2)", bin), ParseError);
  EXPECT_THROW(parse_set_expr("cyl(\"0\") |", bin), ParseError);
  EXPECT_THROW(parse_set_expr("blob", bin), ParseError);
  EXPECT_THROW(parse_set_expr("(full", bin), ParseError);
  try {
    parse_set_expr("cyl(\"0\") | cyl(\"02\")", bin);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 17U);
    EXPECT_NE(std::string(e.what()).find("outside base"), std::string::npos);
  }
}

TEST(ParseSystem, Examples) {
  EXPECT_EQ(parse_system_spec("kind=odometer base=2"), System::odometer(2));
  EXPECT_EQ(parse_system_spec("kind=rotation alpha=(−1/2 + 1/2*sqrt(5))"),
            System::rotation(Scalar::quadratic(mpq_class(-1, 2), mpq_class(1, 2), 5)));
  EXPECT_EQ(parse_system_spec("kind=power k=2 of { kind=odometer base=2 }"), System::odometer(2).power(2));
  EXPECT_EQ(parse_system_spec("# two copies\nkind=product\nfinite={ kind=identity n=2 }\nfiber={ kind=odometer base=2 }"),
            System::product(System::identity(2), System::odometer(2)));
  EXPECT_EQ(parse_system_spec("kind=permutation perm=[1, 0, 3, 2] weights=[1/8, 1/8, 3/8, 3/8]"),
            System::permutation({1, 0, 3, 2}, {q(1, 8), q(1, 8), q(3, 8), q(3, 8)}));
}

TEST(ParseSystem, SyntaxErrorsCarryLineAndColumn) {
  try {
    parse_system_spec("kind=odometer\nbase 2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2U);
    EXPECT_EQ(e.column(), 6U);
  }
  EXPECT_THROW(parse_system_spec("kind=odometer base=2 extra=1"), ParseError);
  EXPECT_THROW(parse_system_spec("kind=odometer"), ParseError);
  EXPECT_THROW(parse_system_spec("kind=warp"), ParseError);
  EXPECT_THROW(parse_system_spec("kind=power k=2 of { kind=odometer base=2"), ParseError);
  EXPECT_THROW(parse_system_spec("kind=odometer base=two"), ParseError);
  EXPECT_THROW(parse_system_spec("kind=rotation alpha=(1/2"), ParseError);
}

TEST(ParseSystem, SemanticErrorsNameTheInvariant) {
  auto message = [](const std::string& text) {
    try {
      parse_system_spec(text);
    } catch (const SemanticError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("kind=permutation perm=[0, 1] weights=[1/2, 1/3]").find("sum"), std::string::npos);
  EXPECT_NE(message("kind=permutation perm=[0, 0]").find("bijection"), std::string::npos);
  EXPECT_NE(message("kind=rotation alpha=3/2").find("[0, 1)"), std::string::npos);
  EXPECT_NE(message("kind=power k=0 of { kind=odometer base=2 }").find("positive"), std::string::npos);
  EXPECT_NE(message("kind=odometer base=1").find("base"), std::string::npos);
}

TEST(ParseSystem, RoundTrip) {
  CounterRng rng(3);
  std::vector<System> systems{System::odometer(2),
                              System::odometer(36).power(5),
                              System::rotation(q(3, 7)),
                              System::rotation(Scalar::quadratic(mpq_class(-1, 2), mpq_class(1, 2), 5)).power(3),
                              System::product(System::identity(3), System::odometer(2)),
                              System::product(System::permutation({1, 0}), System::product(System::identity(2), System::rotation(q(1, 5))))};
  for (int i = 0; i < 20; ++i) systems.push_back(gen::permutation(rng, rng.between(1, 20), true));
  for (const System& T : systems) EXPECT_EQ(parse_system_spec(to_spec_text(T)), T) << to_spec_text(T);
}

TEST(ParseSystem, FixtureCorpusRoundTrips) {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(ERGOLAB_TEST_DATA)) {
    if (entry.path().extension() != ".sys") continue;
    std::ifstream in(entry.path());
    std::stringstream text;
    text << in.rdbuf();
    const System T = parse_system_spec(text.str());
    EXPECT_EQ(parse_system_spec(to_spec_text(T)), T) << entry.path();
    ++seen;
  }
  EXPECT_GE(seen, 5U);
}

}  // namespace
}  // namespace ergolab
