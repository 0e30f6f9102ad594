#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "fractal_ineq/json_io.hpp"

namespace fi = fractal_ineq;

namespace {

// Runs a parser expecting input_error and returns its message for path checks.
template <typename F>
std::string capture_error(F&& f) {
  try {
    f();
  } catch (const fi::input_error& e) {
    return e.what();
  }
  ADD_FAILURE() << "expected input_error";
  return {};
}

}  // namespace

TEST(JsonIo, NestedFunctionRoundTrip) {
  // piecewise( x1 < 1 -> wsum(2*fpoly + cpoly), else compose(cpoly, fmono) )
  const std::string text = R"({
    "type": "piecewise",
    "pieces": [
      {"if": {"var": 1, "op": "<", "c": 1.0},
       "fn": {"type": "wsum", "terms": [
         {"weight": 2.0,
          "fn": {"type": "fpoly", "alpha": 0.5, "terms": [[1.0, 2.0], [0.5, 0.0]]}},
         {"weight": 1.0, "fn": {"type": "cpoly", "coeffs": [0.0, 1.0]}}]}},
      {"if": {"var": 1, "op": ">=", "c": 1.0},
       "fn": {"type": "compose",
              "outer": {"type": "cpoly", "coeffs": [0.0, 0.0, 1.0]},
              "inner": {"type": "fmono", "coeff": 3.0, "exps": [1.0]}}}
    ]
  })";
  const fi::FnPtr fn = fi::fn_from_text(text);
  const fi::ojson once = fi::fn_to_json(fn);
  const fi::FnPtr back = fi::fn_from_json(once);
  EXPECT_EQ(once, fi::fn_to_json(back));

  // Parsed functions evaluate: the first branch at x = 0.5 under alpha = 0.5.
  const fi::EvalEnv env{0.5, false};
  const double direct = 2.0 * (0.5 + 0.5) + 0.5;  // 2*(x^{2a}+0.5) + x at 0.5
  EXPECT_NEAR(fi::eval_fn(fn, {0.5}, env), direct, 1e-12);
}

TEST(JsonIo, EmapAndRegionRoundTrips) {
  const std::string etext = R"({
    "type": "emap-componentwise",
    "fns": [{"type": "cpoly", "coeffs": [0.0, 1.0]},
            {"type": "cpoly", "coeffs": [0.25]}]
  })";
  const fi::EMap e = fi::emap_from_json(fi::ojson::parse(etext));
  const fi::ojson ejson = fi::emap_to_json(e);
  EXPECT_EQ(ejson, fi::emap_to_json(fi::emap_from_json(ejson)));

  fi::RegionSpec simplex;
  simplex.dim = 2;
  simplex.region = fi::SimplexRegion{{{0.0, 0.0}, {0.0, 3.0}, {2.0, 1.0}}, false};
  const fi::ojson sj = fi::region_to_json(simplex);
  EXPECT_EQ(sj, fi::region_to_json(fi::region_from_json(sj)));
  EXPECT_EQ(sj["closed"], false);

  const std::string htext = R"({
    "type": "halfspaces",
    "normals": [[1.0, 1.0], [-1.0, 0.0]],
    "offsets": [1.0, 0.0],
    "bbox": {"lo": [0.0, 0.0], "hi": [1.0, 1.0]}
  })";
  const fi::RegionSpec hs = fi::region_from_json(fi::ojson::parse(htext));
  const fi::ojson hj = fi::region_to_json(hs);
  EXPECT_EQ(hj, fi::region_to_json(fi::region_from_json(hj)));

  // Dim-1 boxes serialize under the interval spelling.
  const fi::ojson ij = fi::region_to_json(fi::make_interval_region(0.0, 2.0));
  EXPECT_EQ(ij["type"], "interval");
}

TEST(JsonIo, LiftedRegionRoundTripAndLabels) {
  const fi::RegionSpec unit = fi::make_box({0.0}, {1.0});
  const fi::LiftedRegion epi =
      fi::epigraph_lift(unit, fi::make_fn({fi::CPolyNode{{0.0, 0.0, 1.0}}}));
  const fi::ojson ej = fi::lifted_to_json(epi);
  EXPECT_EQ(ej["lift"], "epigraph");
  EXPECT_EQ(ej, fi::lifted_to_json(fi::lifted_from_json(ej)));

  const fi::LiftedRegion slab{unit, fi::LiftedRegion::ProductInterval{0.0, 2.0}};
  const fi::ojson pj = fi::lifted_to_json(slab);
  EXPECT_EQ(pj["lift"], "product");
  EXPECT_EQ(pj, fi::lifted_to_json(fi::lifted_from_json(pj)));

  const std::string msg = capture_error([&] {
    fi::ojson bad = pj;
    bad["lift"] = "cone";
    fi::lifted_from_json(bad);
  });
  EXPECT_NE(msg.find("set.lift"), std::string::npos);
}

TEST(JsonIo, OffendingPathsNameTheField) {
  const std::string op_msg = capture_error([] {
    fi::fn_from_text(R"({"type":"piecewise","pieces":[
      {"if":{"var":1,"op":"!=","c":0.0},"fn":{"type":"cpoly","coeffs":[1.0]}}]})");
  });
  EXPECT_NE(op_msg.find("fn.pieces[0].if.op"), std::string::npos) << op_msg;

  const std::string term_msg = capture_error([] {
    fi::poly_from_json(fi::ojson::parse(
        R"({"type":"fpoly","alpha":0.5,"terms":[[1.0,2.0],[3.0]]})"));
  });
  EXPECT_NE(term_msg.find("fpoly.terms[1]"), std::string::npos) << term_msg;

  const std::string weight_msg = capture_error([] {
    fi::fn_from_text(R"({"type":"wsum","terms":[
      {"weight":-1.0,"fn":{"type":"cpoly","coeffs":[1.0]}}]})");
  });
  EXPECT_NE(weight_msg.find("fn.terms[0].weight"), std::string::npos) << weight_msg;

  const std::string dim_msg = capture_error([] {
    fi::emap_from_json(fi::ojson::parse(R"({"type":"emap-identity","dim":4})"));
  });
  EXPECT_NE(dim_msg.find("emap.dim"), std::string::npos) << dim_msg;
}

TEST(JsonIo, CertificateRoundTripAndWitnessRule) {
  fi::Certificate c;
  c.status = fi::CertStatus::Counterexample;
  c.budget = fi::Budget{16, 1000, 7};
  c.seed = 7;
  c.witness = fi::Witness{{0.25}, {1.0}, 0.5, 1.2, 1.0, 0.2};
  const fi::ojson j = fi::certificate_to_json(c);
  EXPECT_EQ(j, fi::certificate_to_json(fi::certificate_from_json(j)));
  EXPECT_EQ(j["violation"], j["witness"]["violation"]);

  const std::string msg = capture_error([&] {
    fi::ojson bad = j;
    bad["witness"] = nullptr;
    fi::certificate_from_json(bad);
  });
  EXPECT_NE(msg.find("certificate.witness"), std::string::npos) << msg;
}

TEST(JsonIo, ReportFieldOrderAndCsvAgreement) {
  fi::IneqReport rep;
  rep.label = "eq8";
  rep.alpha = 0.5;
  rep.lo = 0.0;
  rep.hi = 1.0;
  rep.lhs = 1.0 / 3.0;
  rep.middle = 0.5;
  rep.rhs = 2.0 / 3.0;
  rep.add_link("lhs<=middle", rep.lhs, *rep.middle);
  rep.add_link("middle<=rhs", *rep.middle, rep.rhs);
  rep.notes.push_back("identity-check");

  const fi::ojson j = fi::report_to_json(rep);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  const std::vector<std::string> expected{"label", "alpha", "s",      "p1",
                                          "p2",    "interval", "lhs", "middle",
                                          "rhs",   "links",  "notes"};
  EXPECT_EQ(keys, expected);

  const std::string csv = fi::report_to_csv(rep);
  std::vector<std::string> lines;
  size_t pos = 0;
  while (pos < csv.size()) {
    const size_t nl = csv.find('\n', pos);
    lines.push_back(csv.substr(pos, nl - pos));
    pos = nl + 1;
  }
  ASSERT_EQ(lines.size(), 3u);  // header plus one row per link
  EXPECT_EQ(lines[0], fi::report_csv_header());
  // Numeric cells reuse the JSON digits: lhs of row 1 equals the JSON dump.
  const std::string lhs_cell = j["lhs"].dump();
  EXPECT_NE(lines[1].find("," + lhs_cell + ","), std::string::npos);
  EXPECT_NE(lines[1].find("lhs<=middle,true,"), std::string::npos);
  EXPECT_NE(lines[2].find("middle<=rhs,true,"), std::string::npos);
  EXPECT_NE(lines[1].find("identity-check"), std::string::npos);

  // Empty s/p1/p2 stay as empty cells, keeping the column count fixed.
  const std::string row = lines[1];
  size_t commas = 0;
  for (char ch : row) commas += ch == ',';
  EXPECT_EQ(commas, 13u);
}

TEST(InlinePoly, SyntaxEquivalences) {
  const fi::FractalPoly greek = fi::poly_from_inline("fpoly(α=0.5; x^{2α})");
  const fi::FractalPoly ascii = fi::poly_from_inline("fpoly(a=0.5; x^{2a})");
  EXPECT_EQ(greek.alpha, ascii.alpha);
  ASSERT_EQ(greek.terms.size(), 1u);
  EXPECT_EQ(greek.terms[0].k, ascii.terms[0].k);
  EXPECT_EQ(greek.terms[0].k, 2.0);

  // Plain x is total power one: k = 1/alpha. Bare exponents divide by alpha.
  const fi::FractalPoly bare = fi::poly_from_inline("fpoly(a=0.5; x)");
  ASSERT_EQ(bare.terms.size(), 1u);
  EXPECT_EQ(bare.terms[0].k, 2.0);
  const fi::FractalPoly quarter = fi::poly_from_inline("fpoly(a=0.5; x^{0.25})");
  EXPECT_EQ(quarter.terms[0].k, 0.5);

  const fi::FractalPoly multi = fi::poly_from_inline("fpoly(a=1; 3*x^{2a}+0.5-x)");
  ASSERT_EQ(multi.terms.size(), 3u);
  EXPECT_EQ(multi.terms[0].coeff, 0.5);
  EXPECT_EQ(multi.terms[0].k, 0.0);
  EXPECT_EQ(multi.terms[1].coeff, -1.0);
  EXPECT_EQ(multi.terms[1].k, 1.0);
  EXPECT_EQ(multi.terms[2].coeff, 3.0);
  EXPECT_EQ(multi.terms[2].k, 2.0);

  // fn_from_text dispatches on the fpoly( prefix.
  const fi::FnPtr fn = fi::fn_from_text(" fpoly( a = 0.5 ; x^{2a} ) ");
  const fi::EvalEnv env{0.5, false};
  EXPECT_NEAR(fi::eval_fn(fn, {0.7}, env), 0.7, 1e-15);

  EXPECT_THROW(fi::poly_from_inline("fpoly(a=0.5 x)"), fi::input_error);
  EXPECT_THROW(fi::poly_from_inline("fpoly(a=0.5; x^2a)"), fi::input_error);
  EXPECT_THROW(fi::poly_from_inline("fpoly(a=1.5; x)"), fi::input_error);
  EXPECT_THROW(fi::poly_from_inline("fpoly(a=0.5; )"), fi::input_error);
  EXPECT_THROW(fi::fn_from_text("not json at all"), fi::input_error);
}

TEST(ConfigHash, KnownVectorsAndSeedSensitivity) {
  // Reference FNV-1a 64 vectors pin the exact hash function.
  EXPECT_EQ(fi::fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fi::fnv1a64("a"), 0xaf63dc4c8601ec8cULL);

  const fi::ojson cfg{{"seed", 42}};
  EXPECT_EQ(fi::config_hash(cfg), "0d69936f2d7fec4a");
  EXPECT_EQ(fi::config_hash(cfg), fi::config_hash(fi::ojson{{"seed", 42}}));
  EXPECT_NE(fi::config_hash(cfg), fi::config_hash(fi::ojson{{"seed", 43}}));
}
