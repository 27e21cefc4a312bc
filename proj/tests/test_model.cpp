#include "doctest.h"
#include "support.hpp"

#include <fstream>
#include <sstream>

using namespace mcl;
using namespace mcl::testing;

namespace {

JointAction act(const GameModel& m, Coalition c, std::vector<std::string> moves) {
    JointAction ja = JointAction::empty(m.n_agents());
    std::size_t k = 0;
    for (std::size_t a : c.members()) {
        ja.domain = ja.domain.with(a);
        ja.moves[a] = *m.find_action(moves[k++]);
    }
    return ja;
}

std::set<std::string> names(const GameModel& m, const std::vector<StateId>& ids) {
    std::set<std::string> out;
    for (StateId s : ids) out.insert(m.states()[s]);
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("availability by projection") {
    const auto pm = one_mask();
    const auto& m = pm.model;
    const Coalition a = Coalition::singleton(0);
    const auto s0 = m.state("s0");
    const auto av_a = av(m, a, s0);
    CHECK(av_a.size() == 2);
    CHECK(contains(av_a, act(m, a, {"w"})));
    CHECK(contains(av_a, act(m, a, {"n"})));
    CHECK(av(m, m.universe().grand(), m.state("s1")).empty());
    const auto av_empty = av(m, Coalition::empty(), s0);
    REQUIRE(av_empty.size() == 1);
    CHECK(av_empty.front().domain.is_empty());
}

TEST_CASE("outcomes by union over extensions") {
    const auto pm = one_mask();
    const auto& m = pm.model;
    const auto s0 = m.state("s0");
    CHECK(names(m, out(m, Coalition::singleton(0), s0, act(m, Coalition::singleton(0), {"w"}))) ==
          std::set<std::string>{"s1", "s'1"});
    CHECK(names(m, out(m, Coalition::empty(), s0, JointAction::empty(2))) ==
          std::set<std::string>{"s0", "s1", "s'1", "s2", "s'2", "s3"});
    CHECK(out(m, m.universe().grand(), m.state("s1"), act(m, m.universe().grand(), {"n", "n"})).empty());
}

TEST_CASE("oplus") {
    const std::size_t n = 3;
    auto single = [&](std::size_t agent, ActionId x) {
        JointAction ja = JointAction::empty(n);
        ja.domain = Coalition::singleton(agent);
        ja.moves[agent] = x;
        return ja;
    };
    std::vector<std::pair<Coalition, std::vector<JointAction>>> family{
        {Coalition::singleton(0), {single(0, 0), single(0, 1)}},
        {Coalition::singleton(1), {single(1, 0), single(1, 1)}},
        {Coalition::singleton(2), {single(2, 0)}},
    };
    const auto product = oplus(family, n);
    CHECK(product.size() == 4);
    for (const auto& ja : product) CHECK(ja.domain == Coalition::all(3));

    const auto unit = oplus({}, n);
    REQUIRE(unit.size() == 1);
    CHECK(unit.front().domain.is_empty());

    family[2].second.clear();
    CHECK(oplus(family, n).empty());
}

TEST_CASE("fixture classification") {
    const auto two = classify(two_masks().model);
    CHECK(two.serial);
    CHECK(two.independent);
    CHECK(two.deterministic);
    CHECK(two.is_cgm);

    const auto pm = one_mask();
    const auto& m = pm.model;
    const auto one = classify(m);
    CHECK_FALSE(one.is_cgm);
    CHECK_FALSE(one.serial);
    REQUIRE(one.serial_witness);
    CHECK(m.states()[*one.serial_witness] == "s1");
    CHECK_FALSE(one.independent);
    REQUIRE(one.independence_witness);
    CHECK(m.states()[one.independence_witness->first] == "s0");
    CHECK(format_joint_action(m, one.independence_witness->second) == "(w,w)");
    CHECK_FALSE(one.deterministic);
    REQUIRE(one.determinism_witness);
    CHECK(m.states()[one.determinism_witness->first] == "s0");
    CHECK(format_joint_action(m, one.determinism_witness->second) == "(w,n)");
}

TEST_CASE("dead-end state classification is vacuous except for seriality") {
    const GameModel m(ab(), {"s0"}, {"x"}, {});
    const auto c = classify(m);
    CHECK_FALSE(c.serial);
    CHECK(c.independent);
    CHECK(c.deterministic);
}

TEST_CASE("disjoint renaming") {
    const GameModel one(ab(), {"s0"}, {"x"}, {"p"});
    const auto renamed = rename_disjoint({one, one}, "g");
    REQUIRE(renamed.size() == 2);
    CHECK(renamed[0].states() == std::vector<std::string>{"g0.s0"});
    CHECK(renamed[1].states() == std::vector<std::string>{"g1.s0"});
    CHECK(rename_disjoint({}, "g").empty());
    const auto mask = rename_disjoint({one_mask().model}, "g");
    CHECK(mask.front().states().front() == "g0.s0");
    CHECK(mask.front().n_states() == 6);
}

TEST_CASE("random models") {
    const auto u = ab();
    const auto empty = random_model(u, 3, 2, 0.0, 5, {"p"});
    for (StateId s = 0; s < 3; ++s) CHECK(empty.transitions(s).empty());
    CHECK_FALSE(classify(empty).serial);

    const auto full = random_model(u, 3, 2, 1.0, 5, {"p"});
    for (StateId s = 0; s < 3; ++s) {
        CHECK(full.transitions(s).size() == 4);
        for (const auto& [p, targets] : full.transitions(s)) CHECK(targets.size() == 3);
    }

    CHECK(serialize_model(random_model(u, 4, 2, 0.4, 99, {"p", "q"})) ==
          serialize_model(random_model(u, 4, 2, 0.4, 99, {"p", "q"})));

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto cgm = random_cgm(u, 3, 2, seed, {"p"});
        CHECK(classify(cgm).is_cgm);
    }
}

TEST_CASE("serialization round trip") {
    for (const auto& pm : {two_masks(), one_mask()}) {
        const auto loaded = parse_model(serialize_pointed(pm));
        CHECK(loaded.model == pm.model);
        REQUIRE(loaded.designated);
        CHECK(*loaded.designated == pm.state);
    }
    std::mt19937_64 rng(3);
    for (int k = 0; k < 30; ++k) {
        const auto pm = random_pointed(rng, ab(), {"p", "q"});
        CHECK(parse_model(serialize_model(pm.model)).model == pm.model);
    }
}

TEST_CASE("fixture files match the built-in fixtures") {
    const std::string dir = MCL_FIXTURE_DIR;
    CHECK(slurp(dir + "/two_masks.json") == serialize_pointed(two_masks()));
    CHECK(slurp(dir + "/one_mask.json") == serialize_pointed(one_mask()));
    CHECK(load_model_file(dir + "/one_mask.json").model == one_mask().model);
}

TEST_CASE("malformed model files are rejected") {
    CHECK_THROWS_AS(parse_model("{"), ModelError);
    CHECK_THROWS_AS(parse_model(R"({"agents":[],"actions":["x"],"states":[{"name":"s","label":[]}],
                                    "atoms":[],"transitions":[]})"),
                    ModelError);
    CHECK_THROWS_AS(parse_model(R"({"agents":["a"],"actions":["x"],"states":[{"name":"s","label":["p"]}],
                                    "atoms":[],"transitions":[]})"),
                    ModelError);
    CHECK_THROWS_AS(parse_model(R"({"agents":["a"],"actions":["x"],"states":[{"name":"s","label":[]}],
                                    "atoms":[],"transitions":[{"from":"s","profile":{"a":"y"},"to":["s"]}]})"),
                    ModelError);
    CHECK_THROWS_AS(load_model_file("/nonexistent/model.json"), ModelError);
}

TEST_CASE("availability identities on sampled models") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 100; ++k) {
        const auto pm = random_pointed(rng, ab(), {"p"});
        CHECK(availability_violations(pm.model) == 0);
        CHECK(conditional_availability_violations(pm.model) == 0);
    }
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        CHECK(decomposition_violations(random_cgm(ab(), 3, 2, seed, {"p"})) == 0);
    }
    CHECK(decomposition_violations(two_masks().model) == 0);
    CHECK(decomposition_violations(one_mask().model) > 0);
}
