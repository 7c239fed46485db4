#include <doctest.h>

#include <algorithm>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "thimac/isomorphism.hpp"
#include "thimac/model.hpp"

using namespace thimac;
using namespace thimac::testing;

namespace {

ThimacDecl thimac_decl(std::string id, std::vector<StageKind> stages,
                       std::optional<std::string> parent = {}) {
  ThimacDecl t;
  t.id = std::move(id);
  t.stages = std::move(stages);
  t.parent = std::move(parent);
  return t;
}

ArcDecl flow(std::string id, StageRef from, StageRef to, ArcKind kind = ArcKind::Flow) {
  return ArcDecl{std::move(id), kind, std::move(from), std::move(to), {}};
}

std::vector<std::string> codes_of(const ModelDecl& m) {
  try {
    build_model(m);
  } catch (const BuildError& e) {
    std::vector<std::string> codes;
    for (const auto& d : e.diagnostics()) codes.push_back(d.code);
    return codes;
  }
  return {};
}

using K = StageKind;

}  // namespace

TEST_CASE("stage kinds print and parse") {
  for (auto k : kAllStageKinds) CHECK(parse_stage_kind(to_string(k)) == k);
  CHECK_FALSE(parse_stage_kind("memory"));
  CHECK(to_string(StageRef{"queue", K::Transfer}) == "queue.transfer");
}

TEST_CASE("stage sets iterate in kind order") {
  StageSet s{K::Receive, K::Create, K::Process};
  CHECK(s.size() == 3);
  CHECK(s.kinds() == std::vector<K>{K::Create, K::Process, K::Receive});
  s.erase(K::Create);
  CHECK_FALSE(s.contains(K::Create));
  CHECK(StageSet{}.empty());
}

TEST_CASE("an empty declaration builds an empty model") {
  auto m = build_model(ModelDecl{});
  CHECK(m.thimacs().empty());
  CHECK(m.arcs().empty());
  CHECK(m.stage_count() == 0);
}

TEST_CASE("thimacs are stored in pre-order with resolved parents") {
  ModelDecl d;
  d.thimacs = {thimac_decl("a", {K::Create}), thimac_decl("b", {K::Process}, "a"),
               thimac_decl("c", {}, "b"), thimac_decl("d", {K::Release})};
  auto m = build_model(d);
  REQUIRE(m.thimacs().size() == 4);
  CHECK(m.roots() == std::vector<std::size_t>{0, 3});
  CHECK(m.thimacs()[1].parent == 0u);
  CHECK(m.thimacs()[0].children == std::vector<std::size_t>{1});
  CHECK(m.has_stage({"b", K::Process}));
  CHECK_FALSE(m.has_stage({"b", K::Create}));
  CHECK(m.lookup({"b", K::Create}).owner != nullptr);
  CHECK(m.lookup({"zz", K::Create}).owner == nullptr);
  CHECK(m.stages().size() == 3);
}

TEST_CASE("build errors are all collected") {
  ModelDecl d;
  d.thimacs = {thimac_decl("a", {K::Create, K::Create}), thimac_decl("a", {K::Process}),
               thimac_decl("b", {K::Arrive}), thimac_decl("c", {K::Receive, K::Arrive, K::Accept}),
               thimac_decl("e", {}, "ghost")};
  d.arcs = {flow("f", {"a", K::Create}, {"nobody", K::Process}),
            flow("g", {"a", K::Create}, {"b", K::Transfer})};
  auto codes = codes_of(d);
  auto has = [&](const char* c) { return std::count(codes.begin(), codes.end(), c); };
  CHECK(has("E-DUPLICATE-STAGE") == 1);
  CHECK(has("E-DUPLICATE-ID") == 1);
  CHECK(has("E-STAGE-REFINE") == 2);
  CHECK(has("E-UNRESOLVED-REF") == 3);
}

TEST_CASE("arc ids share the identifier namespace with thimacs") {
  ModelDecl d;
  d.thimacs = {thimac_decl("a", {K::Create, K::Process})};
  d.arcs = {flow("a", {"a", K::Create}, {"a", K::Process})};
  CHECK(codes_of(d) == std::vector<std::string>{"E-DUPLICATE-ID"});
}

TEST_CASE("containment cycles are rejected") {
  ModelDecl d;
  d.thimacs = {thimac_decl("a", {}, "b"), thimac_decl("b", {}, "a")};
  auto codes = codes_of(d);
  CHECK(std::count(codes.begin(), codes.end(), "E-CONTAINMENT-CYCLE") >= 1);
}

TEST_CASE("build diagnostics cite a source span and an element") {
  Document doc = parse({"bad.tm", "model m {\n  thimac a { stages: create, create }\n}\n"});
  try {
    build_model(doc.model);
    FAIL("expected a build error");
  } catch (const BuildError& e) {
    REQUIRE(e.diagnostics().size() == 1);
    const auto& d = e.diagnostics().front();
    CHECK(d.span.file == "bad.tm");
    CHECK(d.span.line == 2);
    CHECK(d.elements == std::vector<std::string>{"a"});
    CHECK(format(d).rfind("bad.tm:2:", 0) == 0);
  }
}

TEST_CASE("to_decl inverts build_model") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    ModelDecl d = random_simplified_model(rng);
    for (auto& t : d.thimacs) std::sort(t.stages.begin(), t.stages.end());
    StaticModel m = build_model(d);
    CHECK(to_decl(m) == d);
  }
}

TEST_CASE("isomorphism is reflexive, symmetric and blind to labels") {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    ModelDecl d = random_simplified_model(rng);
    StaticModel a = build_model(d);
    StaticModel b = build_model(relabel(d, rng));
    CHECK(models_isomorphic(a, a).isomorphic);
    auto ab = models_isomorphic(a, b);
    auto ba = models_isomorphic(b, a);
    CHECK(ab.isomorphic);
    CHECK(ba.isomorphic);
    for (const auto& [x, y] : ab.mapping) CHECK(ba.mapping.at(y) == x);
  }
}

TEST_CASE("isomorphism notices a changed arc") {
  Rng rng(9);
  int checked = 0;
  for (int i = 0; i < 200 && checked < 50; ++i) {
    ModelDecl d = random_simplified_model(rng);
    if (d.arcs.empty()) continue;
    ModelDecl e = d;
    e.arcs.pop_back();
    CHECK_FALSE(models_isomorphic(build_model(d), build_model(e)).isomorphic);
    ++checked;
  }
  CHECK(checked == 50);
}

TEST_CASE("isomorphism respects nesting") {
  ModelDecl flat, nested;
  flat.thimacs = {thimac_decl("a", {K::Create}), thimac_decl("b", {K::Create})};
  nested.thimacs = {thimac_decl("a", {K::Create}), thimac_decl("b", {K::Create}, "a")};
  CHECK_FALSE(models_isomorphic(build_model(flat), build_model(nested)).isomorphic);
}

TEST_CASE("isomorphism enforces its size bound") {
  ModelDecl d;
  for (int i = 0; i < 5; ++i) d.thimacs.push_back(thimac_decl("t" + std::to_string(i), {K::Create}));
  auto m = build_model(d);
  CHECK_THROWS_AS(models_isomorphic(m, m, 4), SizeLimitExceeded);
  CHECK(models_isomorphic(m, m, 5).isomorphic);
}

TEST_CASE("empty models are isomorphic") {
  auto e = build_model(load_fixture("empty.tm").model);
  CHECK(models_isomorphic(e, e).isomorphic);
}
