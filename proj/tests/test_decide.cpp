#include "doctest.h"
#include "support.hpp"

using namespace mcl;
using namespace mcl::testing;

namespace {

bool valid(const std::string& text) { return decide_valid(F(text), ab()).valid; }

StandardFormula worked_clause(const AgentUniverse& u) {
    const Coalition a = Coalition::singleton(0), b = Coalition::singleton(1);
    StandardFormula sf;
    sf.ni = {{a, F("p")}, {b, F("q")}, {Coalition::empty(), Formula::top()}};
    sf.pi = {{u.grand(), F("p & q")}, {a, F("~p | q")}, {u.grand(), Formula::bot()}};
    return sf;
}

}  // namespace

TEST_CASE("validity examples") {
    CHECK(valid("~<{a,b}>false"));
    CHECK_FALSE(valid("(<{a}>p & <{b}>q) -> <{a,b}>(p & q)"));
    CHECK(valid("(<{}>p & <{a}>q) -> <{a}>(p & q)"));
    CHECK_FALSE(valid("<{a,b}>p | <{a,b}>~p"));
    CHECK_FALSE(valid("<{a}>true"));
    CHECK(valid("p | ~p"));
    CHECK_FALSE(valid("p"));
    CHECK(valid("<{a}>p -> <{a,b}>p"));
    CHECK(valid("<{}>(p -> q) -> (<{a}>p -> <{a}>q)"));
}

TEST_CASE("satisfiability examples") {
    const auto u = ab();
    CHECK_FALSE(decide_sat(F("p & ~p"), u).satisfiable);
    // Monotonicity of coalitions makes this conjunction unsatisfiable.
    CHECK_FALSE(decide_sat(F("<{a}>p & ~<{a,b}>p"), u).satisfiable);
    const auto dead = decide_sat(F("~<{}>true"), u);
    REQUIRE(dead.satisfiable);
    REQUIRE(dead.witness);
    CHECK(eval(*dead.witness, F("~<{}>true")));
    const auto ia = decide_sat(F("<{a}>p & <{b}>q & ~<{a,b}>(p & q)"), u);
    REQUIRE(ia.satisfiable);
    CHECK(eval(*ia.witness, F("<{a}>p & <{b}>q & ~<{a,b}>(p & q)")));
}

TEST_CASE("empty negative part yields a single dead-end state") {
    const auto u = ab();
    const auto clauses = to_standard_conjunction(F("<{a}>true"), u);
    REQUIRE(clauses.size() == 1);
    const auto pm = build_countermodel(clauses.front(), u);
    CHECK(pm.model.n_states() == 1);
    CHECK(pm.model.transitions(pm.state).empty());
    CHECK_FALSE(eval(pm, F("<{a}>true")));
}

TEST_CASE("independence clause hub has no beta actions") {
    const auto u = ab();
    const auto clauses = to_standard_conjunction(F("(<{a}>p & <{b}>q) -> <{a,b}>(p & q)"), u);
    REQUIRE(clauses.size() == 1);
    const auto& sf = clauses.front();
    const auto form = make_game_form(sf, u);
    CHECK(form.beta_count() == 0);
    CHECK(form.actions.size() == 3);
    CHECK(form.targets.size() == 6);
    const auto pm = build_countermodel(sf, u);
    CHECK_FALSE(eval(pm, sf.to_formula()));
    CHECK(eval(pm, hub_conjunction(sf)));
    CHECK(hub_extension_claim(pm, sf, u));
}

TEST_CASE("worked clause: one beta action with witness b") {
    const auto u = ab();
    const auto sf = worked_clause(u);
    Decider decider(u);
    CHECK_FALSE(decider.clause_valid(sf));
    const auto form = make_game_form(sf, u);
    REQUIRE(form.beta_count() == 1);
    const auto& lambda = form.profiles.back();
    CHECK(lambda.kind == GameForm::Profile::Kind::Lambda);
    CHECK(lambda.ni_index == 1);
    CHECK(lambda.pi_index == 1);
    CHECK(u.name(lambda.witness_agent) == "b");
    const auto pm = decider.build_countermodel(sf);
    pm.model.validate();
    CHECK(pm.state_name() == "h");
    CHECK_FALSE(eval(pm, sf.to_formula()));
    CHECK(eval(pm, hub_conjunction(sf)));
    CHECK(hub_extension_claim(pm, sf, u));
    CHECK_FALSE(decide_valid(sf.to_formula(), u).valid);
}

TEST_CASE("valid clauses have no countermodel") {
    const auto u = ab();
    const auto clauses = to_standard_conjunction(F("~<{a,b}>false"), u);
    CHECK_THROWS_AS(build_countermodel(clauses.front(), u), CertificationError);
}

TEST_CASE("trace") {
    const auto v = decide_valid(F("(<{}>p & <{a}>q) -> <{a}>(p & q)"), ab());
    REQUIRE_FALSE(v.trace.empty());
    CHECK(v.trace.front().outcome.rfind("valid (b)", 0) == 0);
}

TEST_CASE("countermodels of random formulas are certified") {
    const auto u = ab();
    const std::vector<std::string> atoms{"p", "q"};
    std::mt19937_64 rng(41);
    Decider decider(u);
    for (int k = 0; k < 200; ++k) {
        const Formula f = random_formula(rng, u, atoms, 2, 8);
        CAPTURE(print(f, u));
        const auto v = decider.decide_valid(f);
        CHECK(v.valid != v.countermodel.has_value());
        if (v.countermodel) {
            v.countermodel->model.validate();
            CHECK_FALSE(eval(*v.countermodel, f));
        }
        if (modal_depth(f) == 0) continue;
        for (const auto& sf : to_standard_conjunction(f, u)) {
            if (decider.clause_valid(sf) || sf.ni.empty()) continue;
            const auto pm = decider.build_countermodel(sf);
            CHECK(eval(pm, hub_conjunction(sf)));
            CHECK(hub_extension_claim(pm, sf, u));
        }
    }
    CHECK(decider.memo_size() > 0);
}

TEST_CASE("foreign agents are rejected") {
    const AgentUniverse abc({"a", "b", "c"});
    CHECK_THROWS(decide_valid(parse("<{c}>p", abc), ab()));
}
