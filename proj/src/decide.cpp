// ============================================================================
// decide.cpp: Depth-recursive validity check and grafted countermodels
// ============================================================================

#include "mcl/decide.hpp"

#include "mcl/semantics.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mcl {

// ── Game forms ──────────────────────────────────────────────────────────────

std::size_t GameForm::beta_count() const {
    return static_cast<std::size_t>(std::count_if(profiles.begin(), profiles.end(), [](const Profile& p) {
        return p.kind == Profile::Kind::Lambda;
    }));
}

GameForm make_game_form(const StandardFormula& sf, const AgentUniverse& universe) {
    if (sf.ni.empty()) throw std::invalid_argument("a game form needs a nonempty negative part");
    GameForm form;
    const std::size_t n_agents = universe.size();

    for (std::size_t i = 0; i < sf.ni.size(); ++i) form.actions.push_back("alpha" + std::to_string(i));
    for (std::size_t i = 0; i < sf.ni.size(); ++i) {
        for (std::size_t j = 0; j < sf.pi.size(); ++j) {
            if (sf.ni[i].coalition.subset_of(sf.pi[j].coalition)) form.targets.emplace_back(i, j);
        }
    }

    for (std::size_t i = 0; i < sf.ni.size(); ++i) {
        GameForm::Profile sigma;
        sigma.kind = GameForm::Profile::Kind::Sigma;
        sigma.ni_index = i;
        sigma.moves.assign(n_agents, form.actions[i]);
        for (std::size_t k = 0; k < form.targets.size(); ++k) {
            if (form.targets[k].first == i) sigma.targets.push_back(k);
        }
        form.profiles.push_back(std::move(sigma));
    }

    std::vector<std::size_t> all_targets(form.targets.size());
    for (std::size_t k = 0; k < all_targets.size(); ++k) all_targets[k] = k;

    for (std::size_t i = 0; i < sf.ni.size(); ++i) {
        for (std::size_t j = 0; j < sf.pi.size(); ++j) {
            const Coalition escape = sf.ni[i].coalition - sf.pi[j].coalition;
            if (escape.is_empty()) continue;
            GameForm::Profile lambda;
            lambda.kind = GameForm::Profile::Kind::Lambda;
            lambda.ni_index = i;
            lambda.pi_index = j;
            lambda.witness_agent = escape.members().front();
            const std::string beta = "beta" + std::to_string(i) + "_" + std::to_string(j);
            form.actions.push_back(beta);
            lambda.moves.assign(n_agents, form.actions[i]);
            lambda.moves[lambda.witness_agent] = beta;
            lambda.targets = all_targets;
            form.profiles.push_back(std::move(lambda));
        }
    }
    return form;
}

// ── Decider ─────────────────────────────────────────────────────────────────

namespace {

bool eval_propositional(const Formula& f, const std::map<std::string, bool>& assignment) {
    switch (f.kind()) {
        case Formula::Kind::Top:
            return true;
        case Formula::Kind::Atom:
            return assignment.at(f.name());
        case Formula::Kind::Neg:
            return !eval_propositional(f.child(), assignment);
        case Formula::Kind::And:
            return eval_propositional(f.lhs(), assignment) && eval_propositional(f.rhs(), assignment);
        case Formula::Kind::Can:
            break;
    }
    throw std::logic_error("modality in propositional evaluation");
}

constexpr std::size_t kMaxTruthTableAtoms = 24;

// Visits assignments in binary-counter order until `stop` returns true.
template <typename Stop>
std::optional<std::map<std::string, bool>> find_assignment(const Formula& f, Stop stop) {
    const auto atom_set = atoms_of(f);
    const std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
    if (atoms.size() > kMaxTruthTableAtoms) {
        throw std::invalid_argument("too many atoms for truth-table checking");
    }
    std::map<std::string, bool> assignment;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << atoms.size()); ++bits) {
        for (std::size_t k = 0; k < atoms.size(); ++k) assignment[atoms[k]] = ((bits >> k) & 1U) != 0;
        if (stop(assignment)) return assignment;
    }
    return std::nullopt;
}

std::string describe_pair(const StandardFormula& sf, std::size_t i, std::size_t j, const AgentUniverse& u) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ") " + u.format(sf.ni[i].coalition) +
           " <= " + u.format(sf.pi[j].coalition);
}

Formula reduction(const StandardFormula& sf, const Formula& phi_ni0, std::size_t i, std::size_t j) {
    return Formula::implies(Formula::conj(phi_ni0, sf.ni[i].goal), sf.pi[j].goal);
}

}  // namespace

Decider::Decider(AgentUniverse universe) : universe_(std::move(universe)) {}

void Decider::check_formula(const Formula& f) const {
    if (!agents_of(f).subset_of(universe_.grand())) {
        throw std::invalid_argument("formula mentions agents outside the universe");
    }
}

bool Decider::propositional_valid(const Formula& f) const {
    return !find_assignment(f, [&](const auto& a) { return !eval_propositional(f, a); });
}

PointedModel Decider::propositional_countermodel(const Formula& f) const {
    auto assignment = find_assignment(f, [&](const auto& a) { return !eval_propositional(f, a); });
    if (!assignment) throw CertificationError("countermodel requested for a tautology");
    std::vector<std::string> atoms;
    for (const auto& [a, _] : *assignment) atoms.push_back(a);
    GameModel m(universe_, {"h"}, {"idle"}, atoms);
    for (const auto& [a, value] : *assignment) {
        if (value) m.set_holds(0, *m.find_atom(a));
    }
    return PointedModel{std::move(m), 0};
}

bool Decider::is_valid(const Formula& f) {
    const std::string key = canonical_key(f);
    if (auto it = validity_memo_.find(key); it != validity_memo_.end()) return it->second;
    bool valid = true;
    if (modal_depth(f) == 0) {
        valid = propositional_valid(f);
    } else {
        for (const auto& clause : to_standard_conjunction(f, universe_)) {
            if (!clause_valid(clause)) {
                valid = false;
                break;
            }
        }
    }
    validity_memo_.emplace(key, valid);
    return valid;
}

bool Decider::clause_valid(const StandardFormula& sf) {
    if (gamma_is_tautology(sf.gamma)) return true;
    const Formula phi_ni0 = ni0(sf).phi;
    for (std::size_t i = 0; i < sf.ni.size(); ++i) {
        for (std::size_t j = 0; j < sf.pi.size(); ++j) {
            if (sf.ni[i].coalition.subset_of(sf.pi[j].coalition) && is_valid(reduction(sf, phi_ni0, i, j))) {
                return true;
            }
        }
    }
    return false;
}

PointedModel Decider::countermodel(const Formula& f) {
    const std::string key = canonical_key(f);
    if (auto it = countermodel_memo_.find(key); it != countermodel_memo_.end()) return it->second;
    PointedModel pm;
    if (modal_depth(f) == 0) {
        pm = propositional_countermodel(f);
    } else {
        std::optional<PointedModel> built;
        for (const auto& clause : to_standard_conjunction(f, universe_)) {
            if (!clause_valid(clause)) {
                built = build_countermodel(clause);
                break;
            }
        }
        if (!built) throw CertificationError("countermodel requested for a valid formula");
        pm = std::move(*built);
    }
    for (const auto& a : atoms_of(f)) pm.model.declare_atom(a);
    if (eval(pm, f)) throw CertificationError("constructed countermodel satisfies the formula");
    countermodel_memo_.emplace(key, pm);
    return pm;
}

PointedModel Decider::build_countermodel(const StandardFormula& sf) {
    if (clause_valid(sf)) throw CertificationError("countermodel requested for a valid clause");
    PointedModel pm;
    if (sf.ni.empty()) {
        // Nothing is available at the single state, so every <B_j>ψ_j fails.
        std::set<std::string> atoms;
        for (const auto& l : sf.gamma) {
            if (!l.is_top) atoms.insert(l.atom);
        }
        GameModel m(universe_, {"h"}, {"idle"}, {atoms.begin(), atoms.end()});
        for (const auto& l : sf.gamma) {
            if (!l.is_top && !l.positive) m.set_holds(0, *m.find_atom(l.atom));
        }
        pm = PointedModel{std::move(m), 0};
    } else {
        pm = graft(sf);
    }
    const Formula f = sf.to_formula();
    for (const auto& a : atoms_of(f)) pm.model.declare_atom(a);
    if (eval(pm, f)) throw CertificationError("grafted model satisfies the clause");
    return pm;
}

PointedModel Decider::graft(const StandardFormula& sf) {
    const GameForm form = make_game_form(sf, universe_);
    const Formula phi_ni0 = ni0(sf).phi;

    // Sub-models satisfying φ_NI₀ ∧ φ_i ∧ ¬ψ_j, one per target, made disjoint.
    std::vector<PointedModel> subs;
    for (const auto& [i, j] : form.targets) subs.push_back(countermodel(reduction(sf, phi_ni0, i, j)));
    for (std::size_t k = 0; k < subs.size(); ++k) {
        subs[k].model = with_prefix(subs[k].model, "g" + std::to_string(k) + ".");
    }

    std::vector<std::string> states{form.hub};
    std::vector<std::string> actions = form.actions;
    std::set<std::string> atom_set;
    for (const auto& l : sf.gamma) {
        if (!l.is_top) atom_set.insert(l.atom);
    }
    std::vector<StateId> state_offset, action_offset;
    for (const auto& sub : subs) {
        state_offset.push_back(states.size());
        action_offset.push_back(actions.size());
        states.insert(states.end(), sub.model.states().begin(), sub.model.states().end());
        actions.insert(actions.end(), sub.model.actions().begin(), sub.model.actions().end());
        atom_set.insert(sub.model.atoms().begin(), sub.model.atoms().end());
    }
    GameModel m(universe_, std::move(states), std::move(actions), {atom_set.begin(), atom_set.end()});

    // Hub: labeled by the assignment falsifying γ (unmentioned atoms false).
    for (const auto& l : sf.gamma) {
        if (!l.is_top && !l.positive) m.set_holds(0, *m.find_atom(l.atom));
    }
    for (const auto& p : form.profiles) {
        std::vector<ActionId> moves;
        for (const auto& name : p.moves) moves.push_back(*m.find_action(name));
        std::vector<StateId> targets;
        for (std::size_t k : p.targets) targets.push_back(state_offset[k] + subs[k].state);
        m.set_outcomes(0, JointAction::profile(std::move(moves)), std::move(targets));
    }

    // Copy every sub-model in place.
    for (std::size_t k = 0; k < subs.size(); ++k) {
        const GameModel& sub = subs[k].model;
        for (StateId s = 0; s < sub.n_states(); ++s) {
            const StateId to_s = state_offset[k] + s;
            for (AtomId p = 0; p < sub.atoms().size(); ++p) {
                if (sub.holds(s, p)) m.set_holds(to_s, *m.find_atom(sub.atoms()[p]));
            }
            for (const auto& [profile, targets] : sub.transitions(s)) {
                JointAction moved = profile;
                for (auto& a : moved.moves) a += action_offset[k];
                std::vector<StateId> moved_targets;
                for (StateId t : targets) moved_targets.push_back(state_offset[k] + t);
                m.set_outcomes(to_s, moved, std::move(moved_targets));
            }
        }
    }
    return PointedModel{std::move(m), 0};
}

Verdict Decider::decide_valid(const Formula& f) {
    check_formula(f);
    Verdict v;
    if (modal_depth(f) == 0) {
        v.valid = is_valid(f);
        v.trace.push_back({print(f, universe_), v.valid ? "valid: propositional tautology"
                                                         : "invalid: falsified by a truth assignment"});
    } else {
        v.valid = true;
        for (const auto& clause : to_standard_conjunction(f, universe_)) {
            TraceEntry entry{clause.to_string(universe_), ""};
            if (gamma_is_tautology(clause.gamma)) {
                entry.outcome = "valid (a): gamma is a tautology";
            } else {
                const Formula phi_ni0 = ni0(clause).phi;
                for (std::size_t i = 0; i < clause.ni.size() && entry.outcome.empty(); ++i) {
                    for (std::size_t j = 0; j < clause.pi.size(); ++j) {
                        if (clause.ni[i].coalition.subset_of(clause.pi[j].coalition) &&
                            is_valid(reduction(clause, phi_ni0, i, j))) {
                            entry.outcome = "valid (b): pair " + describe_pair(clause, i, j, universe_);
                            break;
                        }
                    }
                }
                if (entry.outcome.empty()) {
                    entry.outcome = "invalid: gamma is not a tautology and no pair with A_i <= B_j reduces to a "
                                    "valid formula";
                    v.valid = false;
                }
            }
            v.trace.push_back(std::move(entry));
        }
    }
    if (!v.valid) v.countermodel = countermodel(f);
    return v;
}

SatResult Decider::decide_sat(const Formula& f) {
    Verdict v = decide_valid(Formula::neg(f));
    SatResult r{!v.valid, std::move(v.countermodel), std::move(v.trace)};
    if (r.witness && !eval(*r.witness, f)) throw CertificationError("satisfiability witness falsifies the formula");
    return r;
}

Verdict decide_valid(const Formula& f, const AgentUniverse& universe) {
    return Decider(universe).decide_valid(f);
}

SatResult decide_sat(const Formula& f, const AgentUniverse& universe) {
    return Decider(universe).decide_sat(f);
}

PointedModel build_countermodel(const StandardFormula& sf, const AgentUniverse& universe) {
    return Decider(universe).build_countermodel(sf);
}

}  // namespace mcl
