#include "mathieu/io.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace mathieu;

namespace {

MatrixElementIndex idx(std::int64_t l2, std::int64_t m2, std::int64_t n2) {
  return make_index(HalfInt::from_twice(l2), HalfInt::from_twice(m2), HalfInt::from_twice(n2));
}

std::string field_of(const std::string& text) {
  try {
    function_from_json(Json::parse(text));
  } catch (const ParseError& e) {
    return e.field();
  }
  return "(accepted)";
}

}  // namespace

TEST(RadicalJson, Examples) {
  EXPECT_EQ(to_json(RadicalScalar(1)).dump(), R"({"real":[{"radicand":1,"coeff":"1"}],"imag":[]})");
  EXPECT_EQ(to_json(RadicalScalar()).dump(), R"({"real":[],"imag":[]})");
  const auto x = RadicalScalar(Rational(1, 2)) + RadicalScalar::term(Rational(-3), Integer(8), true) +
                 RadicalScalar::sqrt(Integer(3));
  EXPECT_EQ(to_json(x).dump(),
            R"({"real":[{"radicand":1,"coeff":"1/2"},{"radicand":3,"coeff":"1"}],"imag":[{"radicand":2,"coeff":"-6"}]})");
}

TEST(RadicalJson, RoundTrip) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 200; ++t) {
    const auto x = oracle::random_radical(rng);
    EXPECT_EQ(radical_from_json(to_json(x)), x);
  }
  EXPECT_THROW(radical_from_json(Json::parse(R"({"real":[{"radicand":0,"coeff":"1"}],"imag":[]})")), ParseError);
}

TEST(FunctionFile, RoundTrip) {
  const FiniteFunction f{{idx(1, 1, -1), GaussianRational(1)},
                         {idx(4, -2, 0), GaussianRational(Rational(-1, 2), Rational(3))}};
  const Json doc = function_to_json(f);
  EXPECT_EQ(doc["schema"], 1);
  EXPECT_EQ(doc["terms"][0]["l"], "1/2");
  EXPECT_EQ(doc["terms"][1]["coeff"]["re"], "-1/2");
  EXPECT_EQ(function_from_json(doc), f);
  EXPECT_EQ(function_to_json(function_from_json(Json::parse(doc.dump()))).dump(), doc.dump());
}

TEST(FunctionFile, ErrorsNameTheField) {
  EXPECT_EQ(field_of(R"({"terms":[{"l":"1/2","m":"1/2","n":"1/2","coeff":{"re":"1","im":"0"}}]})"), "(accepted)");
  EXPECT_EQ(field_of(R"({"terms":[{"l":"0.5","m":"1/2","n":"1/2","coeff":{"re":"1"}}]})"), "terms[0].l");
  EXPECT_EQ(field_of(R"({"terms":[{"l":"1/2","m":"3/2","n":"1/2","coeff":{"re":"1"}}]})"), "terms[0]");
  EXPECT_EQ(field_of(R"({"terms":[{"l":"1","m":"0","n":"0","coeff":{"re":"0","im":"0"}}]})"), "terms[0].coeff");
  EXPECT_EQ(field_of(R"({"terms":[{"l":"1","m":"0","n":"0","coeff":{"re":"1/0"}}]})"), "terms[0].coeff.re");
  EXPECT_EQ(field_of(R"({"terms":[{"l":"1","m":"0","n":"0"}]})"), "terms[0].coeff");
  EXPECT_EQ(field_of(R"({"terms":[{"l":"1","m":"0","n":"0","coeff":{"re":"1"}},{"l":"1","m":"0","n":"0","coeff":{"re":"2"}}]})"),
            "terms[1]");
  EXPECT_EQ(field_of(R"({"schema":2,"terms":[]})"), "schema");
  EXPECT_EQ(field_of(R"({"items":[]})"), "terms");
  EXPECT_EQ(field_of(R"([1,2])"), "(root)");
  EXPECT_EQ(field_of(R"({"terms":[{"l":1,"m":"0","n":"0","coeff":{"re":"1"}}]})"), "terms[0].l");
}

TEST(ProductFile, ParseAndPrint) {
  const auto spec = product_from_json(Json::parse(
      R"({"schema":1,"factors":[{"l":"1/2","m":"1/2","n":"1/2"},{"l":"1/2","m":"-1/2","n":"-1/2","power":2}]})"));
  EXPECT_EQ(spec, (ProductSpec{{idx(1, 1, 1), 1}, {idx(1, -1, -1), 2}}));
  EXPECT_EQ(product_from_json(product_to_json(spec)), spec);
  EXPECT_THROW(product_from_json(Json::parse(R"({"factors":[{"l":"1","m":"0","n":"0","power":-1}]})")), ParseError);
}

TEST(IndexTriple, Parse) {
  EXPECT_EQ(parse_index_triple("1,-1,-1"), idx(2, -2, -2));
  EXPECT_EQ(parse_index_triple("1/2,1/2,-1/2"), idx(1, 1, -1));
  EXPECT_THROW(parse_index_triple("1,2,0"), ParseError);
  EXPECT_THROW(parse_index_triple("1,0"), ParseError);
  EXPECT_THROW(parse_index_triple("x,0,0"), ParseError);
}

TEST(HullJson, Certificates) {
  const SupportHull outside{WeightPoint{HalfInt::from_twice(1), HalfInt::from_twice(1)}};
  const auto j = to_json(hull_certificate(outside), outside);
  EXPECT_EQ(j["contains_origin"], false);
  EXPECT_EQ(j["separator"]["text"], "1*m + 1*n >= 1");
  const SupportHull inside{WeightPoint{HalfInt::from_twice(1), HalfInt::from_twice(-1)},
                           WeightPoint{HalfInt::from_twice(-1), HalfInt::from_twice(1)}};
  const auto k = to_json(hull_certificate(inside), inside);
  EXPECT_EQ(k["weights"], Json::array({"1/2", "1/2"}));
}
