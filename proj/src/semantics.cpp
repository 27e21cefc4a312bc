// ============================================================================
// semantics.cpp: Direct and bulk evaluation
// ============================================================================

#include "mcl/semantics.hpp"

#include <algorithm>
#include <unordered_map>

namespace mcl {

void check_vocabulary(const GameModel& m, const Formula& f) {
    for (const auto& a : atoms_of(f)) {
        if (!m.find_atom(a)) throw EvalError("atom '" + a + "' is not declared by the model");
    }
    if (!agents_of(f).subset_of(m.universe().grand())) {
        throw EvalError("formula mentions agents outside the model's universe");
    }
}

namespace {

bool eval_direct(const GameModel& m, StateId s, const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Top:
            return true;
        case Formula::Kind::Atom:
            return m.holds(s, *m.find_atom(f.name()));
        case Formula::Kind::Neg:
            return !eval_direct(m, s, f.child());
        case Formula::Kind::And:
            return eval_direct(m, s, f.lhs()) && eval_direct(m, s, f.rhs());
        case Formula::Kind::Can: {
            const Coalition c = f.coalition();
            for (const auto& sigma : av(m, c, s)) {
                const auto targets = out(m, c, s, sigma);
                const bool all = std::all_of(targets.begin(), targets.end(),
                                             [&](StateId t) { return eval_direct(m, t, f.child()); });
                if (all) return true;
            }
            return false;
        }
    }
    return false;
}

class BulkEvaluator {
public:
    explicit BulkEvaluator(const GameModel& m) : m_(m) {}

    const std::vector<bool>& run(const Formula& f) {
        if (auto it = memo_.find(f.node_id()); it != memo_.end()) return it->second;
        std::vector<bool> v(m_.n_states(), false);
        switch (f.kind()) {
            case Formula::Kind::Top:
                v.assign(m_.n_states(), true);
                break;
            case Formula::Kind::Atom: {
                const AtomId p = *m_.find_atom(f.name());
                for (StateId s = 0; s < m_.n_states(); ++s) v[s] = m_.holds(s, p);
                break;
            }
            case Formula::Kind::Neg: {
                const auto& c = run(f.child());
                for (StateId s = 0; s < m_.n_states(); ++s) v[s] = !c[s];
                break;
            }
            case Formula::Kind::And: {
                const auto l = run(f.lhs());
                const auto& r = run(f.rhs());
                for (StateId s = 0; s < m_.n_states(); ++s) v[s] = l[s] && r[s];
                break;
            }
            case Formula::Kind::Can: {
                const auto& goal = run(f.child());
                const Coalition c = f.coalition();
                for (StateId s = 0; s < m_.n_states(); ++s) {
                    // σ_A ensures the goal iff every profile extending it has
                    // only goal states as outcomes.
                    std::map<JointAction, bool> ensures_goal;
                    for (const auto& [profile, targets] : m_.transitions(s)) {
                        auto [it, _] = ensures_goal.try_emplace(profile.restrict_to(c), true);
                        it->second = it->second && std::all_of(targets.begin(), targets.end(),
                                                               [&](StateId t) { return goal[t]; });
                    }
                    v[s] = std::any_of(ensures_goal.begin(), ensures_goal.end(),
                                       [](const auto& kv) { return kv.second; });
                }
                break;
            }
        }
        return memo_.emplace(f.node_id(), std::move(v)).first->second;
    }

private:
    const GameModel& m_;
    std::unordered_map<const void*, std::vector<bool>> memo_;
};

}  // namespace

bool eval(const GameModel& m, StateId s, const Formula& f) {
    if (s >= m.n_states()) throw EvalError("state id out of range");
    check_vocabulary(m, f);
    return eval_direct(m, s, f);
}

bool ensures(const GameModel& m, StateId s, Coalition coalition, const JointAction& action, const Formula& f) {
    check_vocabulary(m, f);
    const auto available = av(m, coalition, s);
    if (!std::binary_search(available.begin(), available.end(), action)) {
        throw EvalError("joint action " + format_joint_action(m, action) + " is not available at " + m.states().at(s));
    }
    const auto targets = out(m, coalition, s, action);
    return std::all_of(targets.begin(), targets.end(), [&](StateId t) { return eval_direct(m, t, f); });
}

std::vector<bool> eval_all(const GameModel& m, const Formula& f) {
    check_vocabulary(m, f);
    BulkEvaluator ev(m);
    return ev.run(f);
}

}  // namespace mcl
