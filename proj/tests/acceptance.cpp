// Acceptance runner: one PASS/FAIL line per criterion.

#include "support.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace mcl;
using namespace mcl::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Every INVALID verdict from criteria 3, 5 and 7 is routed through here.
struct Certifier {
    std::size_t verdicts = 0, certified = 0, hubs = 0, hubs_ok = 0;
    std::vector<std::string> failures;

    void verdict(const Verdict& v, const Formula& f, const AgentUniverse& u) {
        if (v.valid) return;
        ++verdicts;
        bool ok = v.countermodel.has_value();
        if (ok) {
            try {
                v.countermodel->model.validate();
                ok = !eval(*v.countermodel, f);
            } catch (const std::exception&) {
                ok = false;
            }
        }
        if (ok) {
            ++certified;
        } else if (failures.size() < 5) {
            failures.push_back(print(f, u));
        }
        if (modal_depth(f) == 0) return;
        Decider d(u);
        for (const auto& sf : to_standard_conjunction(f, u)) {
            if (sf.ni.empty() || d.clause_valid(sf)) continue;
            ++hubs;
            const auto pm = d.build_countermodel(sf);
            if (eval(pm, hub_conjunction(sf)) && hub_extension_claim(pm, sf, u)) {
                ++hubs_ok;
            } else if (failures.size() < 5) {
                failures.push_back("hub: " + sf.to_string(u));
            }
        }
    }
};

Certifier certifier;

Outcome fixture_classification() {
    const auto two = classify(two_masks().model);
    const auto pm = one_mask();
    const auto& m = pm.model;
    const auto one = classify(m);
    const bool two_ok = two.is_cgm && two.serial && two.independent && two.deterministic;
    const bool one_ok = !one.is_cgm && !one.serial && !one.independent && !one.deterministic &&
                        one.serial_witness && m.states()[*one.serial_witness] == "s1" && one.independence_witness &&
                        m.states()[one.independence_witness->first] == "s0" &&
                        format_joint_action(m, one.independence_witness->second) == "(w,w)" &&
                        one.determinism_witness && m.states()[one.determinism_witness->first] == "s0" &&
                        format_joint_action(m, one.determinism_witness->second) == "(w,n)";
    std::ostringstream os;
    os << "two_masks CGM=" << two.is_cgm << "; one_mask witnesses: ";
    for (const auto& w : one.witnesses) os << "[" << w << "] ";
    return {two_ok && one_ok, os.str()};
}

Outcome constraint_equivalence() {
    const auto u = ab();
    std::mt19937_64 rng(2024);
    std::size_t fact52 = 0, fact53 = 0, fact33 = 0, cgm_seen = 0;
    for (int k = 0; k < 500; ++k) {
        const std::size_t n = 1 + rng() % 4;
        const std::size_t a = 1 + rng() % 2;
        const double density = 0.1 + 0.8 * static_cast<double>(rng() % 1000) / 1000.0;
        const GameModel m = random_model(u, n, a, density, rng(), {"p"});
        fact52 += availability_violations(m);
        fact53 += conditional_availability_violations(m);
        if (classify(m).is_cgm) {
            ++cgm_seen;
            fact33 += decomposition_violations(m);
        }
    }
    // Random GCGMs are rarely CGMs; add sampled CGMs so the check is not vacuous.
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const GameModel m = random_cgm(u, 1 + seed % 4, 1 + seed % 2, seed, {"p"});
        if (!classify(m).is_cgm) {
            ++fact33;
            continue;
        }
        ++cgm_seen;
        fact33 += decomposition_violations(m);
    }
    std::ostringstream os;
    os << "500 GCGMs: availability violations " << fact52 << ", conditional availability violations " << fact53
       << "; " << cgm_seen << " CGMs: decomposition/merge violations " << fact33;
    return {fact52 == 0 && fact53 == 0 && fact33 == 0 && cgm_seen > 0, os.str()};
}

Outcome scheme_suite() {
    const AgentUniverse u({"a", "b", "c"});
    const std::vector<std::string> atoms{"p", "q", "r"};
    std::mt19937_64 rng(77);
    Decider decider(u);
    auto goal = [&] { return random_formula(rng, u, atoms, 1, 5); };
    auto subset_pair = [&] {
        const Coalition a = random_coalition(rng, u);
        return std::make_pair(a, a | random_coalition(rng, u));
    };

    std::map<std::string, std::pair<std::size_t, std::size_t>> valid_counts;  // scheme -> (valid, total)
    auto expect_valid = [&](const std::string& scheme, const Formula& f) {
        const auto v = decider.decide_valid(f);
        certifier.verdict(v, f, u);
        auto& c = valid_counts[scheme];
        ++c.second;
        if (v.valid) ++c.first;
    };

    const std::size_t n = 25;
    for (std::size_t k = 0; k < n; ++k) {
        const Formula phi = goal(), psi = goal(), chi = goal();
        switch (k % 6) {
            case 0: expect_valid("A-Tau", Formula::implies(phi, phi)); break;
            case 1: expect_valid("A-Tau", Formula::disj(phi, Formula::neg(phi))); break;
            case 2: expect_valid("A-Tau", Formula::implies(Formula::conj(phi, psi), phi)); break;
            case 3: expect_valid("A-Tau", Formula::implies(phi, Formula::implies(psi, phi))); break;
            case 4:
                expect_valid("A-Tau", Formula::implies(Formula::conj(Formula::implies(phi, psi), Formula::implies(psi, chi)),
                                                       Formula::implies(phi, chi)));
                break;
            default: expect_valid("A-Tau", Formula::implies(Formula::neg(Formula::neg(phi)), phi)); break;
        }
        expect_valid("A-MG", schemes::monotonicity_of_goals(random_coalition(rng, u), phi, psi));
        const auto [a, b] = subset_pair();
        expect_valid("A-MC", schemes::monotonicity_of_coalitions(a, b, phi));
        expect_valid("A-SIA", schemes::special_independence(random_coalition(rng, u), phi, psi));

        // R-Mon: the premise phi -> (phi | chi) is valid.
        const Formula weaker = Formula::disj(phi, chi);
        const bool mon_premise = decider.is_valid(Formula::implies(phi, weaker));
        const auto [c, d] = subset_pair();
        if (mon_premise) expect_valid("R-Mon", schemes::monotonicity_rule(c, d, phi, weaker));
        else ++valid_counts["R-Mon"].second;

        // R-CN: the premise is a tautology or liveness instance.
        const Formula premise = k % 2 ? Formula::disj(chi, Formula::neg(chi)) : schemes::liveness(random_coalition(rng, u));
        if (decider.is_valid(premise)) expect_valid("R-CN", schemes::conditional_necessitation(random_coalition(rng, u), premise, psi));
        else ++valid_counts["R-CN"].second;
    }
    for (std::size_t size = 1; size <= 4; ++size) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < size; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
        const AgentUniverse w(names);
        Decider live(w);
        for (Coalition a : w.all_coalitions()) {
            const Formula f = schemes::liveness(a);
            const auto v = live.decide_valid(f);
            certifier.verdict(v, f, w);
            auto& cnt = valid_counts["A-Live"];
            ++cnt.second;
            if (v.valid) ++cnt.first;
        }
    }

    // CL-only schemes: canonical instances over AG={a,b} and generated ones
    // over AG={a,b,c} with fresh atoms.
    const auto two = ab();
    Decider cl(two);
    const char* canonical[] = {
        "<{a}>true",
        "(<{a}>p & <{b}>q) -> <{a,b}>(p & q)",
        "<{a}>(p | q) -> (<{a}>p | <{a,b}>q)",
        "~<{}>~p -> <{a,b}>p",
        "<{a,b}>p | <{a,b}>~p",
    };
    std::size_t canonical_invalid = 0;
    for (const char* text : canonical) {
        const Formula f = parse(text, two);
        const auto v = cl.decide_valid(f);
        certifier.verdict(v, f, two);
        if (!v.valid) ++canonical_invalid;
    }
    std::map<std::string, std::pair<std::size_t, std::size_t>> invalid_counts;  // scheme -> (invalid, total)
    auto expect_invalid = [&](const std::string& scheme, const Formula& f) {
        const auto v = decider.decide_valid(f);
        certifier.verdict(v, f, u);
        auto& cnt = invalid_counts[scheme];
        ++cnt.second;
        if (!v.valid) ++cnt.first;
    };
    const Formula p = Formula::atom("p"), q = Formula::atom("q");
    for (Coalition a : u.all_coalitions()) {
        expect_invalid("A-Ser", schemes::seriality(a));
        expect_invalid("A-Det", schemes::determinism(a, u.grand(), p, q));
        for (Coalition b : u.all_coalitions()) {
            if (a.is_empty() || b.is_empty() || !a.disjoint_with(b)) continue;
            expect_invalid("A-IA", schemes::independence(a, b, p, q));
        }
    }
    expect_invalid("A-Max", schemes::maximality(u.grand(), p));
    expect_invalid("A-Max", schemes::maximality_split(u.grand(), p));

    bool pass = canonical_invalid == std::size(canonical);
    std::ostringstream os;
    for (const auto& [scheme, c] : valid_counts) {
        os << scheme << " " << c.first << "/" << c.second << " valid; ";
        pass = pass && c.first == c.second && c.second >= 20;
    }
    os << "canonical CL-only instances invalid " << canonical_invalid << "/" << std::size(canonical) << "; ";
    for (const auto& [scheme, c] : invalid_counts) {
        os << scheme << " " << c.first << "/" << c.second << " invalid; ";
        pass = pass && c.first == c.second;
    }
    return {pass, os.str()};
}

Outcome oracle_agreement() {
    const AgentUniverse one({"a"});
    const char* templates[] = {
        "<{a}>true",           "<{}>true",         "~<{a}>false",           "~<{}>false",
        "<{}>p -> <{a}>p",     "<{a}>p | <{a}>~p", "~<{}>true",             "<{a}>p -> p",
        "p -> <{a}>p",         "<{a}>(p | ~p)",    "<{a}>p -> <{a}>true",   "~<{a}>p -> <{a}>~p",
        "<{}>true -> <{a}>true", "(<{}>p & <{a}>true) -> <{a}>p",
        "<{}>(p -> p)",        "[{a}]p -> <{a}>p", "box p -> dia p",        "dia p -> box p",
        "<{a}>~p | <{}>p | ~<{}>true",
    };
    Decider d1(one);
    SearchBounds exhaustive{one, 2, 1};
    std::size_t agree = 0;
    std::vector<std::string> disagreements;
    for (const char* t : templates) {
        const Formula f = parse(t, one);
        const auto v = d1.decide_valid(f);
        certifier.verdict(v, f, one);
        const auto r = search_countermodel(f, exhaustive);
        if (!r.truncated && v.valid == !r.countermodel.has_value()) {
            ++agree;
        } else {
            disagreements.push_back(t);
        }
    }

    const auto u = ab();
    const std::vector<std::string> atoms{"p", "q"};
    std::mt19937_64 rng(555);
    Decider d2(u);
    SearchBounds sampled{u, 3, 2};
    sampled.mode = SearchBounds::Mode::Sampled;
    sampled.samples = 1000;
    std::size_t contradictions = 0, valid = 0, refuted = 0;
    for (int k = 0; k < 200; ++k) {
        const Formula f = random_formula(rng, u, atoms, 2, 8);
        const auto v = d2.decide_valid(f);
        certifier.verdict(v, f, u);
        sampled.seed = rng();
        const auto r = search_countermodel(f, sampled);
        if (r.countermodel) ++refuted;
        if (v.valid) {
            ++valid;
            if (r.countermodel) ++contradictions;
        }
    }
    std::ostringstream os;
    os << "exhaustive grid " << agree << "/" << std::size(templates) << " templates agree";
    for (const auto& t : disagreements) os << " [disagree: " << t << "]";
    os << "; sampled grid 200 formulas x 1000 samples: " << valid << " valid, " << refuted
       << " refuted by search, contradictions " << contradictions;
    return {agree == std::size(templates) && contradictions == 0, os.str()};
}

Outcome normal_form() {
    const auto u = ab();
    const std::vector<std::string> atoms{"p", "q"};
    std::mt19937_64 rng(666);
    std::size_t formulas = 0, mismatches = 0, depth_errors = 0, checks = 0;
    while (formulas < 200) {
        const Formula f = random_formula(rng, u, atoms, 2, 8);
        const std::size_t depth = modal_depth(f);
        if (depth == 0) continue;
        ++formulas;
        const auto clauses = to_standard_conjunction(f, u);
        std::size_t nf_depth = 0;
        for (const auto& c : clauses) nf_depth = std::max(nf_depth, c.depth());
        if (nf_depth != depth) ++depth_errors;
        const Formula g = conjunction_of(clauses);
        for (int k = 0; k < 100; ++k) {
            const auto pm = random_pointed(rng, u, atoms);
            ++checks;
            if (eval(pm, f) != eval(pm, g)) ++mismatches;
        }
    }
    std::ostringstream os;
    os << formulas << " formulas, " << checks << " pointed-model checks: mismatches " << mismatches
       << ", depth errors " << depth_errors;
    return {mismatches == 0 && depth_errors == 0, os.str()};
}

Outcome worked_example() {
    const auto u = ab();
    const Coalition a = Coalition::singleton(0), b = Coalition::singleton(1);
    StandardFormula sf;
    sf.ni = {{a, parse("p", u)}, {b, parse("q", u)}, {Coalition::empty(), Formula::top()}};
    sf.pi = {{u.grand(), parse("p & q", u)}, {a, parse("~p | q", u)}, {u.grand(), Formula::bot()}};
    Decider d(u);
    const Formula f = sf.to_formula();
    const auto v = d.decide_valid(f);
    certifier.verdict(v, f, u);
    const auto form = make_game_form(sf, u);
    std::string witness;
    std::size_t ni_index = 0, pi_index = 0;
    for (const auto& p : form.profiles) {
        if (p.kind == GameForm::Profile::Kind::Lambda) {
            witness = u.name(p.witness_agent);
            ni_index = p.ni_index;
            pi_index = p.pi_index;
        }
    }
    const auto pm = d.build_countermodel(sf);
    const bool certified = !eval(pm, f) && eval(pm, hub_conjunction(sf));
    std::ostringstream os;
    os << "verdict " << (v.valid ? "VALID" : "INVALID") << ", beta actions " << form.beta_count() << " (ni "
       << ni_index << ", pi " << pi_index << ", witness " << witness << "), certified " << certified;
    return {!v.valid && form.beta_count() == 1 && witness == "b" && ni_index == 1 && pi_index == 1 && certified,
            os.str()};
}

Outcome certification() {
    std::ostringstream os;
    os << certifier.certified << "/" << certifier.verdicts << " INVALID verdicts certified; " << certifier.hubs_ok
       << "/" << certifier.hubs << " grafted hubs satisfy the hub conjunction";
    for (const auto& f : certifier.failures) os << " [failed: " << f << "]";
    return {certifier.verdicts > 0 && certifier.certified == certifier.verdicts && certifier.hubs_ok == certifier.hubs,
            os.str()};
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"fixture classification", fixture_classification},
        {"constraint equivalence", constraint_equivalence},
        {"decider scheme suite", scheme_suite},
        {"oracle agreement", oracle_agreement},
        {"normal form", normal_form},
        {"worked example", worked_example},
    };
    std::map<int, Outcome> results;
    const int numbers[] = {1, 2, 3, 5, 6, 7};
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        try {
            results[numbers[k]] = criteria[k].second();
        } catch (const std::exception& e) {
            results[numbers[k]] = {false, std::string("exception: ") + e.what()};
        }
    }
    results[4] = certification();
    const char* names[] = {"", "fixture classification", "constraint equivalence", "decider scheme suite",
                           "certification", "oracle agreement", "normal form", "worked example"};

    bool all = true;
    for (const auto& [number, outcome] : results) {
        all = all && outcome.pass;
        std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << number << " (" << names[number]
                  << "): " << outcome.detail << "\n";
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "elapsed " << seconds << " s\n";
    return all ? 0 : 1;
}
