#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "oracles.hpp"
#include "schwinger/error.hpp"
#include "schwinger/io.hpp"

namespace schwinger {
namespace {

void expect_same_tables(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  const auto& ta = a.tables();
  const auto& tb = b.tables();
  EXPECT_EQ(ta.n_objects, tb.n_objects);
  EXPECT_EQ(ta.morphisms, tb.morphisms);
  EXPECT_EQ(ta.unit_of, tb.unit_of);
  EXPECT_EQ(ta.inverse_of, tb.inverse_of);
  EXPECT_EQ(ta.compose, tb.compose);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::io;
}

TEST(FormatDouble, RoundTrips) {
  std::mt19937_64 rng(501);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 100; ++i) {
    const double v = u(rng) / 7.0;
    EXPECT_EQ(std::stod(io::format_double(v)), v);
  }
  EXPECT_EQ(io::format_double(0.5), "0.5");
}

TEST(GroupoidJson, RoundTripsBuiltins) {
  for (const auto& spec : {"pair:3", "cyclic:4", "pair_x_cyclic:2,3"}) {
    const auto g = builtin_groupoid(spec);
    expect_same_tables(io::parse_groupoid_json(io::groupoid_to_json(g)), g);
  }
}

TEST(GroupoidJson, InfersThinTables) {
  // The pair groupoid of two points, morphisms listed without tables.
  const std::string text = R"({"objects": 2, "morphisms": [
    {"id": 0, "src": 0, "tgt": 0}, {"id": 1, "src": 0, "tgt": 1},
    {"id": 2, "src": 1, "tgt": 0}, {"id": 3, "src": 1, "tgt": 1}]})";
  const auto g = io::parse_groupoid_json(text);
  EXPECT_TRUE(validate_axioms(g).ok());
  EXPECT_EQ(g.compose(MorphismId(1), MorphismId(2)), MorphismId(3));
  EXPECT_EQ(g.inverse(MorphismId(1)), MorphismId(2));
  EXPECT_EQ(g.unit(ObjectId(1)), MorphismId(3));
}

TEST(GroupoidJson, Errors) {
  EXPECT_EQ(kind_of([] { io::parse_groupoid_json("{not json"); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([] { io::parse_groupoid_json(R"({"objects": 1})"); }), ErrorKind::parse);
  // Two loops on one object: tables cannot be inferred.
  EXPECT_EQ(kind_of([] {
              io::parse_groupoid_json(
                  R"({"objects": 1, "morphisms": [{"id": 0, "src": 0, "tgt": 0}, {"id": 1, "src": 0, "tgt": 0}]})");
            }),
            ErrorKind::parse);
  EXPECT_EQ(kind_of([] {
              io::parse_groupoid_json(
                  R"({"objects": 1, "morphisms": [{"id": 0, "src": 0, "tgt": 0}, {"id": 0, "src": 0, "tgt": 0}]})");
            }),
            ErrorKind::parse);
  EXPECT_EQ(kind_of([] { io::parse_groupoid_json(R"({"objects": 1, "morphisms": [{"id": 0, "src": 1, "tgt": 0}]})"); }),
            ErrorKind::parse);
  // Missing inverse of a non-loop.
  EXPECT_EQ(kind_of([] {
              io::parse_groupoid_json(R"({"objects": 2, "morphisms": [{"id": 0, "src": 0, "tgt": 0},
                {"id": 1, "src": 1, "tgt": 1}, {"id": 2, "src": 0, "tgt": 1}]})");
            }),
            ErrorKind::parse);
}

TEST(GroupoidJson, CorruptedTableFailsValidation) {
  auto doc = nlohmann::json::parse(io::groupoid_to_json(pair_groupoid(3)));
  // Point (1,0) o (0,0) at the wrong composite.
  for (auto& e : doc["compose"])
    if (e[0] == 3 && e[1] == 0) e[2] = 6;
  EXPECT_FALSE(validate_axioms(io::parse_groupoid_json(doc.dump())).ok());
}

TEST(LoadGroupoid, BuiltinAndFile) {
  EXPECT_EQ(io::load_groupoid("pair:4").morphism_count(), 16u);
  const std::string path = ::testing::TempDir() + "/g.json";
  {
    std::ofstream out(path);
    out << io::groupoid_to_json(cyclic_groupoid(3));
  }
  EXPECT_EQ(io::load_groupoid(path).morphism_count(), 3u);
  EXPECT_EQ(kind_of([] { io::load_groupoid("/nonexistent/g.json"); }), ErrorKind::io);
  EXPECT_EQ(kind_of([] { io::load_groupoid("pair:x"); }), ErrorKind::parse);
}

TEST(MeasureCsv, SectionsAndDefaults) {
  const auto g = pair_groupoid(2);
  const auto m = io::parse_measure_csv("object_id,weight\n0,2\n# comment\nmorphism_id,fiber_weight\n1,0.5\n", g);
  EXPECT_EQ(m.object_weights, (std::vector<double>{2.0, 1.0}));
  EXPECT_EQ(m.fiber_weights, (std::vector<double>{1.0, 0.5, 1.0, 1.0}));
  EXPECT_EQ(kind_of([&] { io::parse_measure_csv("0,2\n", g); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([&] { io::parse_measure_csv("object_id,weight\n5,2\n", g); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([&] { io::parse_measure_csv("object_id,weight\n0,-2\n", g); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([&] { io::parse_measure_csv("object_id,weight\n0,abc\n", g); }), ErrorKind::parse);
}

TEST(QLagrangianCsv, RoundTrip) {
  const auto g = pair_groupoid(3);
  const auto l = random_q_lagrangian(g, 77);
  std::ostringstream out;
  io::write_q_lagrangian_csv(out, l);
  const auto back = io::parse_q_lagrangian_csv(out.str(), g);
  EXPECT_EQ(back.values, l.values);
  EXPECT_TRUE(back.symmetric);
  EXPECT_EQ(kind_of([&] { io::parse_q_lagrangian_csv("id,value\n", g); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([&] { io::parse_q_lagrangian_csv("morphism_id,value\n0,1\n", g); }), ErrorKind::parse);
}

TEST(DfsSpecJson, Parses) {
  const auto spec = io::parse_dfs_spec_json(R"({"hbar": 0.5, "mode": "euclidean", "convention": "anchored",
                                               "density": [0.25, 0.75]})",
                                            2);
  EXPECT_EQ(spec.hbar, 0.5);
  EXPECT_EQ(spec.mode, PhaseMode::euclidean);
  EXPECT_EQ(spec.convention, ActionConvention::anchored);
  ASSERT_EQ(spec.density.size(), 1u);
  EXPECT_EQ(spec.density[0], (std::vector<double>{0.25, 0.75}));
  const auto rows = io::parse_dfs_spec_json(R"({"density": [[0.5, 0.5], [0.1, 0.9]]})", 2);
  EXPECT_EQ(rows.density.size(), 2u);
  EXPECT_EQ(rows.mode, PhaseMode::real);
  const auto uniform = io::parse_dfs_spec_json(R"({"density": "uniform"})", 2, {3.0, 1.0});
  EXPECT_EQ(uniform.density[0], (std::vector<double>{0.25, 0.25}));
  EXPECT_EQ(io::parse_dfs_spec_json("{}", 4).density[0], (std::vector<double>(4, 0.25)));
  EXPECT_EQ(kind_of([] { io::parse_dfs_spec_json(R"({"mode": "imaginary"})", 2); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([] { io::parse_dfs_spec_json(R"({"density": [0.5]})", 2); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([] { io::parse_dfs_spec_json("[", 2); }), ErrorKind::parse);
}

TEST(AlgebraElementCsv, RoundTrip) {
  std::mt19937_64 rng(503);
  const auto f = oracle::random_element(9, rng);
  std::ostringstream out;
  io::write_algebra_element_csv(out, f);
  EXPECT_EQ(io::parse_algebra_element_csv(out.str(), pair_groupoid(3)).max_abs_diff(f), 0.0);
  EXPECT_EQ(kind_of([] { io::parse_algebra_element_csv("morphism_id,re,im\n0,1\n", pair_groupoid(2)); }),
            ErrorKind::parse);
}

TEST(Writers, HistoryAndWord) {
  const auto g = pair_groupoid(3);
  const auto w = from_links(TimeGrid({0.0, 0.5}), {MorphismId(1 * 3 + 0)}, g);
  std::ostringstream h;
  io::write_history_csv(h, w);
  EXPECT_EQ(h.str(), "k,time,kpath_morphism_id\n0,0,0\n1,0.5,3\n");
  std::ostringstream wd;
  io::write_word_csv(wd, reduce_word({w}, g));
  EXPECT_EQ(wd.str(), "segment,orientation,k,time,kpath_morphism_id\n0,future,0,0,0\n0,future,1,0.5,3\n");
}

TEST(Writers, PropagatorAndConvergence) {
  PropagatorTable table{{{ObjectId(0), 0.0, ObjectId(1), 1.0, Complex(0.0, 2.0)}}};
  std::ostringstream csv;
  io::write_propagator_csv(csv, table);
  EXPECT_EQ(csv.str(), "x0,t0,x1,t1,re,im,abs,phase\n0,0,1,1,0,2,2," + io::format_double(std::atan2(2.0, 0.0)) + "\n");
  std::ostringstream js;
  io::write_propagator_json(js, table);
  const auto doc = nlohmann::json::parse(js.str());
  EXPECT_EQ(doc["entries"][0]["im"], 2.0);
  ConvergenceTable conv;
  conv.rows.push_back({4, 0.25, {1.0, 0.0}, {2.0, 0.0}, 0.5});
  conv.warnings.push_back("w");
  std::ostringstream cc;
  io::write_convergence_csv(cc, conv);
  EXPECT_EQ(cc.str(), "N,dt,value_re,value_im,reference_re,reference_im,rel_error\n4,0.25,1,0,2,0,0.5\n");
  std::ostringstream cj;
  io::write_convergence_json(cj, conv);
  EXPECT_EQ(nlohmann::json::parse(cj.str())["warnings"][0], "w");
  std::ostringstream cert;
  io::write_certificate_csv(cert, PositivityCertificate{-0.5, 3, 0.0, Verdict::indefinite});
  EXPECT_EQ(cert.str(), "min_eigenvalue,form_matrix_dim,hermiticity_defect,verdict\n-0.5,3,0,indefinite\n");
}

}  // namespace
}  // namespace schwinger
