#include <doctest.h>

#include "helpers.hpp"
#include "normform/errors.hpp"
#include "normform/report.hpp"

using namespace normform;
using namespace normform::testing;

namespace {

ModelSpec sphere(int n) { return make_model(n, 0, 2, hermitian_form(n)); }
ModelSpec cubic(int n) { return make_model(n, 1, 3, hermitian_form(n)); }

}  // namespace

TEST_CASE("json round trips") {
  std::mt19937 rng(1);
  for (int n = 1; n <= 2; ++n) {
    const Poly p = random_poly<Poly>(rng, n, 6, 5);
    CHECK(poly_from_json(Json::parse(to_json(p).dump()), n) == p);
    const HoloPoly h = random_poly<HoloPoly>(rng, n, 6, 5);
    CHECK(holo_poly_from_json(to_json(h), n) == h);

    const auto m = cubic(n);
    CHECK(model_from_json(to_json(m)) == m);
    const FormalMap g = random_normalized_map(rng, n, m.k0, 8);
    CHECK(map_from_json(to_json(g), n) == g);
    const auto s = transform_defining(model_defining(m, 8), g, 8);
    const auto back = defining_from_json(Json::parse(to_json(s).dump()));
    CHECK(back.order == s.order);
    CHECK(back.tail == s.tail_through(1000));
  }
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(rational_from_json("1/0"), ParseError);
  CHECK_THROWS_AS(rational_from_json("x"), ParseError);
  CHECK_THROWS_AS(rational_from_json(1.5), ParseError);
  CHECK(rational_from_json("-3/6") == Rational(-1, 2));
  CHECK_THROWS_AS(poly_from_json(Json::parse(R"([{"re":"1","ez":[1,0],"ezb":[0],"ex":0}])"), 2), ParseError);
  CHECK_THROWS_AS(poly_from_json(Json::parse(R"([{"re":"1","ez":[1],"ezb":[0]}])"), 1), ParseError);
  CHECK_THROWS_AS(defining_from_json(Json::parse(R"({"model":{"N":1,"s":0,"k0":2,"P":[]},"order":4,"tail":{"a":[]}})")),
                  std::exception);
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), IoError);
}

TEST_CASE("parse_input validates") {
  const R r{1};
  Json j = to_json(model_defining(sphere(1), 6));
  RunConfig cfg;
  cfg.subcommand = "normalize";
  const auto in = parse_input(j, cfg);
  CHECK(in.model == sphere(1));
  CHECK(in.config.order == 6);

  Json bad = j;
  bad["model"]["P"] = to_json(r.z() * r.z());
  CHECK_THROWS_AS(parse_input(bad, cfg), ValidationError);

  Json unreal = j;
  unreal["tail"]["3"] = to_json(r.z() * r.z() * r.zb());
  CHECK_THROWS_AS(parse_input(unreal, cfg), ValidationError);

  cfg.order = 8;
  CHECK_THROWS_AS(parse_input(j, cfg), ValidationError);
  cfg.order = 2;
  CHECK_THROWS_AS(parse_input(j, cfg), ValidationError);
}

TEST_CASE("brute force oracle") {
  const R r{1};
  const auto m = sphere(1);
  const auto zero = brute_force_decompose(Poly(1), m.divisor(), m);
  CHECK(zero.A.is_zero());
  CHECK(zero.B.is_zero());
  CHECK_THROWS_AS(brute_force_decompose(r.z(), r.x() + r.z() * r.zb() * r.zb(), m), NotHomogeneous);

  const WeightSystem ws(m, Preset::kBlockMinimal);
  const Poly f = r.z() * r.zb() + r.x() * r.z() * r.z() * r.zb() * gi(2, 1) + r.x() * r.x();
  const auto a = brute_force_decompose(f, m.divisor(), m);
  const auto b = fischer_decompose(f, m.divisor(), ws);
  CHECK(a.A == b.A);
  CHECK(a.B == b.B);
}

TEST_CASE("verify_result") {
  std::mt19937 rng(3);
  const auto m = sphere(1);
  const auto model = model_defining(m, 6);
  auto rep = verify_result(model, normalize(model, 6));
  CHECK(rep.pass());

  const auto src = transform_defining(model, random_normalized_map(rng, 1, 2, 6), 6);
  auto res = normalize(src, 6);
  CHECK(verify_result(src, res).pass());

  const R r{1};
  res.normal_form.tail[4] += r.z() * r.z() * r.zb() * r.zb();
  rep = verify_result(src, res);
  CHECK_FALSE(rep.pass());
  bool named = false;
  for (const auto& c : rep.checks) named = named || (!c.pass && c.name == "normal space class 4");
  CHECK(named);

  NormalFormResult other = normalize(model_defining(sphere(2), 6), 6);
  CHECK_THROWS_AS(verify_result(model, other), ValidationError);
}
