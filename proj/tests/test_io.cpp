#include <prelie/io.hpp>

#include <gtest/gtest.h>

#include <stdexcept>

using namespace prelie;
using prelie::io::json;

TEST(IO, SeriesJson) {
  const auto j = io::series_json(magnus_closed_form(2));
  EXPECT_EQ(j.dump(), R"([{"forest":"[]","coeff":"1"},{"forest":"[[]]","coeff":"-1/2"}])");
}

TEST(IO, TensorAndPolyJson) {
  const auto delta = ck_coproduct(chain(2));
  EXPECT_EQ(io::tensor_json(delta).dump(),
            R"([{"slots":["1","[[]]"],"coeff":"1"},{"slots":["[]","[]"],"coeff":"1"},{"slots":["[[]]","1"],"coeff":"1"}])");
  WordPoly p;
  p.add(parse_word_monomial("b·ac"), Rational(Integer(1), Integer(3)));
  EXPECT_EQ(io::word_poly_json(p).dump(), R"([{"monomial":"b·ac","coeff":"1/3"}])");
}

TEST(IO, ForestTermJson) {
  const auto terms = ForestEngine<CKBasis>{CKBasis{}}.terms(parse_tree("[[][]]"), 2, CoproductFlavor::irr);
  ASSERT_EQ(terms.size(), 1u);
  EXPECT_EQ(io::forest_term_json(terms[0]).dump(), R"({"tree":"([[][]];[[]])[([])]","lambda":"2","slots":["[[]]","[]"]})");
}

TEST(IO, TreeRows) {
  std::vector<io::TreeRow> rows;
  for (const auto& t : enumerate_trees_up_to(3)) rows.push_back(io::tree_row(t));
  EXPECT_EQ(io::tree_rows_csv(rows),
            "tree,size,sigma,factorial,linearizations,cm,omega\n"
            "[],1,1,1,1,1,1\n"
            "[[]],2,1,2,1,1,-1/2\n"
            "[[[]]],3,1,6,1,1,1/3\n"
            "[[][]],3,2,3,2,1,1/6\n");
  const auto j = io::tree_rows_json(rows);
  EXPECT_EQ(j[3]["tree"], "[[][]]");
  EXPECT_EQ(j[3]["sigma"], "2");
  EXPECT_EQ(j[3]["omega"], "1/6");
}

TEST(IO, CumulantTableRoundTrip) {
  CumulantTable t(Brand::boolean, "ab", 2);
  for (const auto& w : t.words()) t.set(w, Rational(Integer(w.size()), Integer(3)));
  const auto text = io::cumulant_table_json(t).dump();
  EXPECT_EQ(text,
            R"({"brand":"boolean","variables":["a","b"],"maxlen":2,"values":{"a":"1/3","b":"1/3","aa":"2/3","ab":"2/3","ba":"2/3","bb":"2/3"}})");
  EXPECT_EQ(io::parse_cumulant_table(text), t);
}

TEST(IO, CumulantTableAcceptsIntegers) {
  const auto t = io::parse_cumulant_table(R"({"brand":"free","variables":["a"],"maxlen":1,"values":{"a":2}})");
  EXPECT_EQ(t.at(Word("a")), Rational(2));
}

TEST(IO, CumulantTableErrors) {
  EXPECT_THROW(io::parse_cumulant_table("{"), std::invalid_argument);
  EXPECT_THROW(io::parse_cumulant_table("[]"), std::invalid_argument);
  EXPECT_THROW(io::parse_cumulant_table(R"({"brand":"free","variables":["a"],"maxlen":1})"), std::invalid_argument);
  EXPECT_THROW(io::parse_cumulant_table(R"({"brand":"tensor","variables":["a"],"maxlen":1,"values":{}})"),
               std::invalid_argument);
  EXPECT_THROW(io::parse_cumulant_table(R"({"brand":"free","variables":["ab"],"maxlen":1,"values":{}})"),
               std::invalid_argument);
  EXPECT_THROW(io::parse_cumulant_table(R"({"brand":"free","variables":["a"],"maxlen":1,"values":{"a":"x"}})"),
               std::invalid_argument);
  EXPECT_THROW(io::parse_cumulant_table(R"({"brand":"free","variables":["a"],"maxlen":1,"values":{"a":0.5}})"),
               std::invalid_argument);
  EXPECT_THROW(io::parse_cumulant_table(R"({"brand":"free","variables":["a"],"maxlen":1,"values":{"b":"1"}})"),
               std::domain_error);
}
