// Shared helpers for the unit tests and the acceptance runner.

#ifndef MCL_TESTS_SUPPORT_HPP
#define MCL_TESTS_SUPPORT_HPP

#include "mcl/decide.hpp"
#include "mcl/formula.hpp"
#include "mcl/model.hpp"
#include "mcl/normalform.hpp"
#include "mcl/oracle.hpp"
#include "mcl/semantics.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace mcl::testing {

inline AgentUniverse ab() { return AgentUniverse({"a", "b"}); }

inline Formula F(const std::string& text, const AgentUniverse& u = ab()) { return parse(text, u); }

/// Every joint action of `c` over the model's action set.
inline std::vector<JointAction> joint_actions(const GameModel& m, Coalition c) {
    std::set<JointAction> out;
    for (const auto& p : all_profiles(m.n_agents(), m.actions().size())) out.insert(p.restrict_to(c));
    return {out.begin(), out.end()};
}

inline bool contains(const std::vector<JointAction>& v, const JointAction& ja) {
    return std::find(v.begin(), v.end(), ja) != v.end();
}

/// av_A(s) = { σ_A : out_A(s, σ_A) ≠ ∅ } for every coalition and state.
inline std::size_t availability_violations(const GameModel& m) {
    std::size_t bad = 0;
    for (StateId s = 0; s < m.n_states(); ++s) {
        for (Coalition c : m.universe().all_coalitions()) {
            const auto available = av(m, c, s);
            for (const auto& ja : joint_actions(m, c)) {
                if (contains(available, ja) != !out(m, c, s, ja).empty()) ++bad;
            }
        }
    }
    return bad;
}

/// Projection into av_A and extension by some σ_B, for disjoint A, B.
inline std::size_t conditional_availability_violations(const GameModel& m) {
    std::size_t bad = 0;
    const auto coalitions = m.universe().all_coalitions();
    for (StateId s = 0; s < m.n_states(); ++s) {
        for (Coalition a : coalitions) {
            const auto av_a = av(m, a, s);
            for (Coalition b : coalitions) {
                if (!a.disjoint_with(b)) continue;
                const auto av_b = av(m, b, s);
                for (const auto& joint : av(m, a | b, s)) {
                    if (!contains(av_a, joint.restrict_to(a))) ++bad;
                }
                const auto av_ab = av(m, a | b, s);
                for (const auto& sa : av_a) {
                    const bool extends = std::any_of(av_b.begin(), av_b.end(), [&](const JointAction& sb) {
                        return contains(av_ab, sa.merge(sb));
                    });
                    if (!extends) ++bad;
                }
            }
        }
    }
    return bad;
}

/// On CGMs: av_A(s) = ⨁_{a∈A} av_a(s) and disjoint available actions merge.
inline std::size_t decomposition_violations(const GameModel& m) {
    std::size_t bad = 0;
    const std::size_t n = m.n_agents();
    const auto coalitions = m.universe().all_coalitions();
    for (StateId s = 0; s < m.n_states(); ++s) {
        for (Coalition c : coalitions) {
            std::vector<std::pair<Coalition, std::vector<JointAction>>> family;
            for (std::size_t a : c.members()) family.emplace_back(Coalition::singleton(a), av(m, Coalition::singleton(a), s));
            auto expected = oplus(family, n);
            auto actual = av(m, c, s);
            std::sort(expected.begin(), expected.end());
            std::sort(actual.begin(), actual.end());
            if (expected != actual) ++bad;
            if (actual.empty()) ++bad;
        }
        for (Coalition a : coalitions) {
            for (Coalition b : coalitions) {
                if (!a.disjoint_with(b)) continue;
                const auto av_ab = av(m, a | b, s);
                for (const auto& sa : av(m, a, s)) {
                    for (const auto& sb : av(m, b, s)) {
                        if (!contains(av_ab, sa.merge(sb))) ++bad;
                    }
                }
            }
        }
    }
    return bad;
}

/// A random pointed model over `atoms`.
inline PointedModel random_pointed(std::mt19937_64& rng, const AgentUniverse& u, const std::vector<std::string>& atoms,
                                   std::size_t max_states = 4, std::size_t max_actions = 2) {
    const std::size_t n = 1 + rng() % max_states;
    const std::size_t k = 1 + rng() % max_actions;
    const double density = 0.15 + 0.6 * static_cast<double>(rng() % 100) / 100.0;
    GameModel m = random_model(u, n, k, density, rng(), atoms);
    return PointedModel{std::move(m), static_cast<StateId>(rng() % n)};
}

/// The hub conjunction ¬γ ∧ ∧⟨A_i⟩φ_i ∧ ∧¬⟨B_j⟩ψ_j of a clause.
inline Formula hub_conjunction(const StandardFormula& sf) {
    std::vector<Formula> parts;
    for (const auto& l : sf.gamma) parts.push_back(Formula::neg(l.to_formula()));
    for (const auto& m : sf.ni) parts.push_back(m.to_formula());
    for (const auto& m : sf.pi) parts.push_back(Formula::neg(m.to_formula()));
    return Formula::conj_all(parts);
}

/// At the hub, σ^i is the only available extension of σ^i|A_i.
inline bool hub_extension_claim(const PointedModel& pm, const StandardFormula& sf, const AgentUniverse& u) {
    const GameForm form = make_game_form(sf, u);
    const auto& m = pm.model;
    const auto profiles = m.av_ag(pm.state);
    for (const auto& p : form.profiles) {
        if (p.kind != GameForm::Profile::Kind::Sigma) continue;
        const Coalition a = sf.ni[p.ni_index].coalition;
        if (a.is_empty()) continue;
        std::vector<ActionId> moves;
        for (const auto& name : p.moves) moves.push_back(*m.find_action(name));
        const JointAction sigma = JointAction::profile(moves);
        for (const auto& q : profiles) {
            if (q.restrict_to(a) == sigma.restrict_to(a) && q != sigma) return false;
        }
    }
    return true;
}

}  // namespace mcl::testing

#endif  // MCL_TESTS_SUPPORT_HPP
