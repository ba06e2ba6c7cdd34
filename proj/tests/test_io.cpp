#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"
#include "msf/errors.hpp"
#include "msf/families.hpp"
#include "msf/spec_io.hpp"

using namespace msf;
using nlohmann::json;

namespace {

MonomialOp random_gate_op(std::mt19937_64& rng, const SiteSpace& sp) {
  std::uint32_t site = rng() % sp.num_sites();
  std::uint32_t d = sp.dims[site];
  std::vector<std::uint32_t> perm(d);
  for (std::uint32_t i = 0; i < d; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Phase> ph;
  for (std::uint32_t i = 0; i < d; ++i)
    ph.push_back(Phase::root_of_unity(std::int64_t(rng() % 8), 8));
  return MonomialOp::embedded(LocalMonomialGate({d}, perm, ph), {site});
}

}  // namespace

TEST_CASE("phase json: exact phases stay rational, float phases stay complex") {
  json j = phase_to_json(Phase::root_of_unity(3, 8));
  CHECK(j["num"] == 3);
  CHECK(j["den"] == 8);
  Phase p = phase_from_json(j);
  CHECK(p.exact());
  CHECK(p.same_phase(Phase::root_of_unity(3, 8)));

  Phase f = Phase::from_complex({0.0, 1.0});
  json jf = phase_to_json(f);
  if (jf.contains("re")) {
    Phase back = phase_from_json(jf);
    CHECK(back.same_phase(Phase::imag_unit(), 1e-9));
  }
  CHECK_THROWS_AS(phase_from_json(json{{"num", 1}}), input_error);
}

TEST_CASE("operator trees round trip through json byte-for-byte") {
  std::mt19937_64 rng(4242);
  SiteSpace sp({2, 3, 4});
  for (int trial = 0; trial < 1000; ++trial) {
    MonomialOp op = random_gate_op(rng, sp);
    int shape = int(rng() % 3);
    if (shape == 1) op = MonomialOp::product({op, random_gate_op(rng, sp)});
    if (shape == 2) op = invert(op);
    json j = op_to_json(op);
    MonomialOp back = op_from_json(j, sp);
    CHECK(canonical_dump(op_to_json(back)) == canonical_dump(j));
    // action equality on a random vector, phase and permutation both
    BasisVector x = sp.from_flat(rng() % sp.total_dim);
    auto [y1, p1] = apply(op, x);
    auto [y2, p2] = apply(back, x);
    CHECK(y1 == y2);
    CHECK(p1.same_phase(p2));
  }
}

TEST_CASE("opaque function nodes refuse serialization, named ones rebuild") {
  MonomialOp opaque = MonomialOp::diagonal_fn(
      [](const BasisVector&) { return Phase::one(); }, "anonymous");
  CHECK_THROWS_AS(op_to_json(opaque), refused_error);

  // Family-built function ops carry constructor specs and survive the trip.
  Family lme = build_lme(3, "cz_chain");
  json file = generator_file_to_json(lme.gens, lme.metadata);
  FnRegistry reg = family_fn_registry();
  GeneratorFile loaded = generator_file_from_json(file, &reg);
  REQUIRE(loaded.set.size() == lme.gens.size());
  const SiteSpace& sp = lme.gens.space();
  for (std::size_t gi = 0; gi < lme.gens.size(); ++gi) {
    CHECK(loaded.set.name(gi) == lme.gens.name(gi));
    for (std::uint64_t f = 0; f < sp.total_dim; ++f) {
      BasisVector x = sp.from_flat(f);
      auto [y1, p1] = apply(lme.gens.op(gi), x);
      auto [y2, p2] = apply(loaded.set.op(gi), x);
      CHECK(y1 == y2);
      CHECK(p1.same_phase(p2));
    }
  }
  // loading a function op without the registry is rejected as unreadable input
  CHECK_THROWS_AS(generator_file_from_json(file, nullptr), input_error);
}

TEST_CASE("generator file layout") {
  Family w = build_w(3);
  json j = generator_file_to_json(w.gens, w.metadata);
  CHECK(j["format"] == "msf.generators");
  CHECK(j["version"] == 1);
  CHECK(j["space"]["dims"] == json::array({2, 2, 2}));
  REQUIRE(j["generators"].is_array());
  CHECK(j["generators"].size() == w.gens.size());
  for (const auto& g : j["generators"]) CHECK(g.contains("name"));
  CHECK(j["metadata"]["family"] == "w");

  CHECK_THROWS_AS(generator_file_from_json(json{{"format", "other"}}), input_error);
  json no_gens = j;
  no_gens.erase("generators");
  CHECK_THROWS_AS(generator_file_from_json(no_gens), input_error);
  json bad_version = j;
  bad_version["version"] = 99;
  CHECK_THROWS_AS(generator_file_from_json(bad_version), input_error);
}

TEST_CASE("canonical dump sorts keys and is insertion-order independent") {
  json a;
  a["zeta"] = 1;
  a["alpha"] = json{{"b", 2}, {"a", 1}};
  json b;
  b["alpha"] = json::object();
  b["alpha"]["a"] = 1;
  b["alpha"]["b"] = 2;
  b["zeta"] = 1;
  CHECK(canonical_dump(a) == canonical_dump(b));
  CHECK(canonical_dump(a).find(' ') == std::string::npos);
  CHECK(canonical_dump(a).find('\n') == std::string::npos);
}

TEST_CASE("file save and load round trip on disk") {
  std::string path = "io_roundtrip_tmp.json";
  Family d = build_dicke(4, 2);
  save_generator_file(path, d.gens, d.metadata);
  GeneratorFile loaded = load_generator_file(path);
  CHECK(loaded.set.size() == d.gens.size());
  CHECK(loaded.set.space() == d.gens.space());
  CHECK(loaded.metadata["family"] == "dicke");
  // saving again produces identical bytes
  std::string path2 = "io_roundtrip_tmp2.json";
  save_generator_file(path2, loaded.set, loaded.metadata);
  std::ifstream f1(path), f2(path2);
  std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
  std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
  CHECK(s1 == s2);
  std::remove(path.c_str());
  std::remove(path2.c_str());
  CHECK_THROWS_AS(load_generator_file("no_such_file_here.json"), input_error);
}
