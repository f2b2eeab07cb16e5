#include "dermat/commands.hpp"
#include "dermat/io.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>
#include <string>

using namespace dermat;

namespace {

const std::string data = DERMAT_TEST_DATA;
std::string path(const std::string& file) { return data + "/" + file; }

struct Run {
  int code;
  std::string out, err;
};

template <class F>
Run run(F&& f) {
  std::ostringstream out, err;
  const int code = f(out, err);
  return {code, out.str(), err.str()};
}

CommandOptions opts(const std::string& algebra) {
  CommandOptions o;
  o.algebra_path = path(algebra);
  return o;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("algebra files round-trip", "[io]") {
  for (const auto& name : catalog_names()) {
    INFO(name);
    const Algebra a = catalog(name).algebra;
    const Algebra b = algebra_from_json(algebra_to_json(a));
    CHECK(b.dim() == a.dim());
    CHECK(b.labels() == a.labels());
    CHECK(b.unit() == a.unit());
    CHECK(b.structure_constants() == a.structure_constants());
  }
  const Algebra dual = load_algebra(path("dual_numbers.json"));
  CHECK(dual.name() == "dual_numbers");
  CHECK(dual.structure_constants() == catalog("dual_numbers").algebra.structure_constants());
}

TEST_CASE("module files round-trip", "[io]") {
  const auto p = catalog("upper_triangular_2");
  const Bimodule m = bimodule_from_json(bimodule_to_json(p.module), p.algebra.dim());
  CHECK(m.left_tensor() == p.module.left_tensor());
  CHECK(m.right_tensor() == p.module.right_tensor());
  CHECK_THROWS_AS(bimodule_from_json(bimodule_to_json(p.module), 2), ParseError);
}

TEST_CASE("map files", "[io]") {
  const MapFile f = load_map(path("inner_E11_m2_field.json"));
  CHECK(f.kind == "derivation");
  CHECK(f.n == std::optional<std::size_t>(2));
  CHECK(f.matrix.rows() == 4);
  const MapFile g = map_from_json(map_to_json(f));
  CHECK(g.matrix == f.matrix);
  CHECK(g.algebra == "field");
}

TEST_CASE("malformed input raises ParseError", "[io]") {
  using nlohmann::json;
  CHECK_THROWS_AS(load_algebra(path("truncated.json")), ParseError);
  CHECK_THROWS_AS(load_algebra(path("does_not_exist.json")), ParseError);
  const json good = algebra_to_json(catalog("dual_numbers").algebra);

  json j = good;
  j["mult"][0]["c"] = 1;  // numbers are not rationals
  CHECK_THROWS_AS(algebra_from_json(j), ParseError);
  j = good;
  j["mult"][0]["k"] = 5;
  CHECK_THROWS_AS(algebra_from_json(j), ParseError);
  j = good;
  j["unit"] = json::array({"1"});
  CHECK_THROWS_AS(algebra_from_json(j), ParseError);
  j = good;
  j["unit"][0] = "1/0";
  CHECK_THROWS_AS(algebra_from_json(j), ParseError);
  j = good;
  j.erase("dim");
  CHECK_THROWS_AS(algebra_from_json(j), ParseError);

  json m = map_to_json(load_map(path("inner_E11_m2_field.json")));
  m["kind"] = "automorphism";
  CHECK_THROWS_AS(map_from_json(m), ParseError);
  m["kind"] = "linear_map";
  m["matrix"][1] = json::array({"1"});
  CHECK_THROWS_AS(map_from_json(m), ParseError);
}

TEST_CASE("validate command", "[cli]") {
  auto ok = run([](auto& o, auto& e) { return cmd_validate(path("dual_numbers.json"), o, e); });
  CHECK(ok.code == exit_ok);
  CHECK(contains(ok.out, "valid"));

  auto bad = run([](auto& o, auto& e) { return cmd_validate(path("bad_unit.json"), o, e); });
  CHECK(bad.code == exit_violation);
  CHECK(contains(bad.out, "left unit law at (1)"));

  auto trunc = run([](auto& o, auto& e) { return cmd_validate(path("truncated.json"), o, e); });
  CHECK(trunc.code == exit_input_error);
  CHECK(contains(trunc.err, "input error"));
}

TEST_CASE("derspace command", "[cli]") {
  auto dual = run([](auto& o, auto& e) { return cmd_derspace(opts("dual_numbers.json"), o, e); });
  CHECK(dual.code == exit_ok);
  CHECK(contains(dual.out, "Der=1 Inner=0 H1=1"));

  auto m2 = run([](auto& o, auto& e) {
    auto c = opts("full_matrix_2.json");
    c.jordan = true;
    return cmd_derspace(c, o, e);
  });
  CHECK(contains(m2.out, "Der=3 Inner=3 H1=0"));
  CHECK(contains(m2.out, "Jordan=3 equal_to_Der=yes"));

  auto field2 = run([](auto& o, auto& e) {
    auto c = opts("field.json");
    c.n = 2;
    return cmd_derspace(c, o, e);
  });
  CHECK(contains(field2.out, "Der=3 Inner=3 H1=0"));
  CHECK(field2.out == run([](auto& o, auto& e) {
                        auto c = opts("field.json");
                        c.n = 2;
                        return cmd_derspace(c, o, e);
                      }).out);

  auto small = run([](auto& o, auto& e) {
    auto c = opts("field.json");
    c.n = 1;
    return cmd_derspace(c, o, e);
  });
  CHECK(small.code == exit_input_error);
}

TEST_CASE("decompose command", "[cli]") {
  auto lifted = run([](auto& o, auto& e) {
    auto c = opts("dual_numbers.json");
    c.n = 2;
    c.derivation_path = path("lift_dual_delta_n2.json");
    return cmd_decompose(c, o, e);
  });
  CHECK(lifted.code == exit_ok);
  CHECK(contains(lifted.out, "B =\n  [(0,0) (0,0)]\n  [(0,0) (0,0)]\n"));
  CHECK(contains(lifted.out, "delta =\n  [0 0]\n  [0 1]\n"));
  CHECK(contains(lifted.out, "recomposition exact: yes"));

  auto inner = run([](auto& o, auto& e) {
    auto c = opts("field.json");
    c.n = 2;
    c.derivation_path = path("inner_E11_m2_field.json");
    return cmd_decompose(c, o, e);
  });
  CHECK(inner.code == exit_ok);
  CHECK(contains(inner.out, "B =\n  [0 0]\n  [0 -1]\n"));

  auto transpose = run([](auto& o, auto& e) {
    auto c = opts("field.json");
    c.n = 2;
    c.derivation_path = path("transpose_m2_field.json");
    return cmd_decompose(c, o, e);
  });
  CHECK(transpose.code == exit_violation);
  CHECK(contains(transpose.out, "Leibniz rule fails at basis pair"));

  auto shape = run([](auto& o, auto& e) {
    auto c = opts("dual_numbers.json");
    c.n = 2;
    c.derivation_path = path("transpose_m2_field.json");
    return cmd_decompose(c, o, e);
  });
  CHECK(shape.code == exit_input_error);

  auto missing = run([](auto& o, auto& e) { return cmd_decompose(opts("field.json"), o, e); });
  CHECK(missing.code == exit_input_error);
}

TEST_CASE("lemma22 command", "[cli]") {
  auto lifted = run([](auto& o, auto& e) {
    auto c = opts("dual_numbers.json");
    c.n = 2;
    c.derivation_path = path("lift_dual_delta_n2.json");
    return cmd_lemma22(c, o, e);
  });
  CHECK(lifted.code == exit_ok);
  for (const char* item : {"(i) ", "(ii) ", "(iii) ", "(iv) ", "(v) "}) CHECK(contains(lifted.out, item));
  CHECK_FALSE(contains(lifted.out, "fail"));

  auto forged = run([](auto& o, auto& e) {
    auto c = opts("field.json");
    c.n = 2;
    c.derivation_path = path("transpose_m2_field.json");
    c.unchecked = true;
    return cmd_lemma22(c, o, e);
  });
  CHECK(forged.code == exit_violation);
  CHECK(contains(forged.out, "(i) D^{ij}_{rs} = 0 for i!=r, j!=s: fail at i,j,r,s=1,2,2,1"));

  auto checked = run([](auto& o, auto& e) {
    auto c = opts("field.json");
    c.n = 2;
    c.derivation_path = path("transpose_m2_field.json");
    return cmd_lemma22(c, o, e);
  });
  CHECK(checked.code == exit_violation);
  CHECK(contains(checked.out, "not a derivation"));
}

TEST_CASE("twolocal command", "[cli]") {
  auto wrapped = run([](auto& o, auto& e) {
    auto c = opts("field.json");
    c.n = 2;
    c.oracle = path("inner_E11_m2_field.json");
    return cmd_twolocal(c, o, e);
  });
  CHECK(wrapped.code == exit_ok);
  CHECK(contains(wrapped.out, "queries before verification: 2"));
  CHECK(contains(wrapped.out, "seed=42 samples=100 agreeing=100"));

  auto perturbed = run([](auto& o, auto& e) {
    auto c = opts("field.json");
    c.n = 2;
    c.oracle = "perturb:quadratic_block:" + path("inner_E11_m2_field.json");
    return cmd_twolocal(c, o, e);
  });
  CHECK(perturbed.code == exit_violation);
  CHECK((contains(perturbed.out, "first disagreeing point") || contains(perturbed.out, "not 2-local")));

  auto unverified = run([](auto& o, auto& e) {
    auto c = opts("field.json");
    c.n = 2;
    c.oracle = path("inner_E11_m2_field.json");
    c.samples = 0;
    return cmd_twolocal(c, o, e);
  });
  CHECK(unverified.code == exit_ok);
  CHECK(contains(unverified.out, "verdict: reconstructed, unverified"));

  auto bad_kind = run([](auto& o, auto& e) {
    auto c = opts("field.json");
    c.n = 2;
    c.oracle = "perturb:cubic:" + path("inner_E11_m2_field.json");
    return cmd_twolocal(c, o, e);
  });
  CHECK(bad_kind.code == exit_input_error);

  auto transpose = run([](auto& o, auto& e) {
    auto c = opts("field.json");
    c.n = 2;
    c.oracle = path("transpose_m2_field.json");
    return cmd_twolocal(c, o, e);
  });
  CHECK(transpose.code == exit_violation);
}
