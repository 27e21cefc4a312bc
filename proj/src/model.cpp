// ============================================================================
// model.cpp: Game models, derived av/out functions and classification
// ============================================================================

#include "mcl/model.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace mcl {

// ── JointAction ─────────────────────────────────────────────────────────────

JointAction JointAction::empty(std::size_t n_agents) {
    return JointAction{Coalition::empty(), std::vector<ActionId>(n_agents, kNoAction)};
}

JointAction JointAction::uniform(std::size_t n_agents, ActionId action) {
    return JointAction{Coalition::all(n_agents), std::vector<ActionId>(n_agents, action)};
}

JointAction JointAction::profile(std::vector<ActionId> moves) {
    const std::size_t n = moves.size();
    return JointAction{Coalition::all(n), std::move(moves)};
}

JointAction JointAction::restrict_to(Coalition sub) const {
    JointAction out{domain & sub, moves};
    for (std::size_t i = 0; i < out.moves.size(); ++i) {
        if (!out.domain.contains(i)) out.moves[i] = kNoAction;
    }
    return out;
}

bool JointAction::is_part_of(const JointAction& other) const {
    if (!domain.subset_of(other.domain)) return false;
    for (std::size_t i : domain.members()) {
        if (moves[i] != other.moves[i]) return false;
    }
    return true;
}

JointAction JointAction::merge(const JointAction& other) const {
    if (!domain.disjoint_with(other.domain)) {
        throw std::invalid_argument("merge of joint actions with overlapping domains");
    }
    JointAction out = *this;
    out.domain = domain | other.domain;
    for (std::size_t i : other.domain.members()) out.moves[i] = other.moves[i];
    return out;
}

// ── GameModel ───────────────────────────────────────────────────────────────

namespace {

template <typename T>
std::optional<std::size_t> find_name(const std::vector<T>& names, std::string_view name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names.begin());
}

void require_unique(const std::vector<std::string>& names, const char* what) {
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (!seen.insert(n).second) {
            throw ModelError(std::string("duplicate ") + what + " name '" + n + "'");
        }
    }
}

}  // namespace

GameModel::GameModel(AgentUniverse universe, std::vector<std::string> states,
                     std::vector<std::string> actions, std::vector<std::string> atoms)
    : universe_(std::move(universe)),
      states_(std::move(states)),
      actions_(std::move(actions)),
      atoms_(std::move(atoms)) {
    if (universe_.size() == 0) throw ModelError("model needs at least one agent");
    if (states_.empty()) throw ModelError("model needs at least one state");
    if (actions_.empty()) throw ModelError("model needs at least one action");
    require_unique(states_, "state");
    require_unique(actions_, "action");
    require_unique(atoms_, "atom");
    labels_.assign(states_.size(), std::vector<bool>(atoms_.size(), false));
    transitions_.resize(states_.size());
}

std::optional<StateId> GameModel::find_state(std::string_view name) const { return find_name(states_, name); }
std::optional<ActionId> GameModel::find_action(std::string_view name) const { return find_name(actions_, name); }
std::optional<AtomId> GameModel::find_atom(std::string_view name) const { return find_name(atoms_, name); }

StateId GameModel::state(std::string_view name) const {
    auto s = find_state(name);
    if (!s) throw ModelError("unknown state '" + std::string(name) + "'");
    return *s;
}

AtomId GameModel::declare_atom(const std::string& name) {
    if (auto p = find_atom(name)) return *p;
    atoms_.push_back(name);
    for (auto& row : labels_) row.push_back(false);
    return atoms_.size() - 1;
}

void GameModel::set_holds(StateId s, AtomId p, bool value) {
    check_state(s);
    labels_.at(s).at(p) = value;
}

void GameModel::set_label(StateId s, const std::vector<std::string>& atoms) {
    check_state(s);
    std::fill(labels_[s].begin(), labels_[s].end(), false);
    for (const auto& a : atoms) {
        auto p = find_atom(a);
        if (!p) throw ModelError("label of state '" + states_[s] + "' uses undeclared atom '" + a + "'");
        labels_[s][*p] = true;
    }
}

std::vector<std::string> GameModel::label(StateId s) const {
    check_state(s);
    std::vector<std::string> out;
    for (AtomId p = 0; p < atoms_.size(); ++p) {
        if (labels_[s][p]) out.push_back(atoms_[p]);
    }
    return out;
}

void GameModel::check_state(StateId s) const {
    if (s >= states_.size()) throw ModelError("state id " + std::to_string(s) + " out of range");
}

void GameModel::check_profile(const JointAction& profile) const {
    if (profile.moves.size() != universe_.size() || profile.domain != universe_.grand()) {
        throw ModelError("outcome entries are keyed by full action profiles");
    }
    for (ActionId a : profile.moves) {
        if (a >= actions_.size()) throw ModelError("action id out of range in profile");
    }
}

void GameModel::add_outcome(StateId from, const JointAction& profile, StateId to) {
    check_state(from);
    check_state(to);
    check_profile(profile);
    auto& targets = transitions_[from][profile];
    auto it = std::lower_bound(targets.begin(), targets.end(), to);
    if (it == targets.end() || *it != to) targets.insert(it, to);
}

void GameModel::set_outcomes(StateId from, const JointAction& profile, std::vector<StateId> to) {
    check_state(from);
    check_profile(profile);
    for (StateId t : to) check_state(t);
    std::sort(to.begin(), to.end());
    to.erase(std::unique(to.begin(), to.end()), to.end());
    if (to.empty()) {
        transitions_[from].erase(profile);
    } else {
        transitions_[from][profile] = std::move(to);
    }
}

const std::vector<StateId>& GameModel::out_ag(StateId s, const JointAction& profile) const {
    static const std::vector<StateId> kNone;
    check_state(s);
    auto it = transitions_[s].find(profile);
    return it == transitions_[s].end() ? kNone : it->second;
}

std::vector<JointAction> GameModel::av_ag(StateId s) const {
    check_state(s);
    std::vector<JointAction> out;
    out.reserve(transitions_[s].size());
    for (const auto& [profile, targets] : transitions_[s]) {
        if (!targets.empty()) out.push_back(profile);
    }
    return out;
}

void GameModel::validate() const {
    if (universe_.size() == 0 || states_.empty() || actions_.empty()) {
        throw ModelError("model needs agents, states and actions");
    }
    require_unique(states_, "state");
    require_unique(actions_, "action");
    require_unique(atoms_, "atom");
    if (labels_.size() != states_.size() || transitions_.size() != states_.size()) {
        throw ModelError("internal tables do not match the state list");
    }
    for (const auto& row : labels_) {
        if (row.size() != atoms_.size()) throw ModelError("label row does not match the atom list");
    }
    for (StateId s = 0; s < states_.size(); ++s) {
        for (const auto& [profile, targets] : transitions_[s]) {
            check_profile(profile);
            if (targets.empty()) throw ModelError("stored outcome set is empty");
            for (StateId t : targets) check_state(t);
        }
    }
}

// ── Derived functions ───────────────────────────────────────────────────────

std::vector<JointAction> av(const GameModel& m, Coalition coalition, StateId s) {
    std::set<JointAction> out;
    for (const auto& [profile, targets] : m.transitions(s)) {
        if (!targets.empty()) out.insert(profile.restrict_to(coalition));
    }
    return {out.begin(), out.end()};
}

std::vector<StateId> out(const GameModel& m, Coalition coalition, StateId s, const JointAction& action) {
    if (action.domain != coalition || action.moves.size() != m.n_agents()) {
        throw ModelError("joint action does not match its coalition");
    }
    for (std::size_t i = 0; i < action.moves.size(); ++i) {
        if (coalition.contains(i) ? action.moves[i] >= m.actions().size() : action.moves[i] != kNoAction) {
            throw ModelError("joint action names an unknown action");
        }
    }
    std::set<StateId> result;
    for (const auto& [profile, targets] : m.transitions(s)) {
        if (action.is_part_of(profile)) result.insert(targets.begin(), targets.end());
    }
    return {result.begin(), result.end()};
}

std::vector<StateId> successors(const GameModel& m, StateId s) {
    return out(m, Coalition::empty(), s, JointAction::empty(m.n_agents()));
}

std::vector<JointAction> all_profiles(std::size_t n_agents, std::size_t n_actions) {
    std::vector<JointAction> out;
    if (n_actions == 0) return out;
    std::vector<ActionId> moves(n_agents, 0);
    while (true) {
        out.push_back(JointAction::profile(moves));
        // Odometer with the last agent varying fastest.
        std::size_t i = n_agents;
        while (i > 0) {
            --i;
            if (++moves[i] < n_actions) break;
            moves[i] = 0;
            if (i == 0) return out;
        }
        if (n_agents == 0) return out;
    }
}

std::vector<JointAction> oplus(const std::vector<std::pair<Coalition, std::vector<JointAction>>>& family,
                               std::size_t n_agents) {
    Coalition seen;
    for (const auto& [c, _] : family) {
        if (!c.disjoint_with(seen)) throw std::invalid_argument("oplus over overlapping coalitions");
        seen = seen | c;
    }
    std::vector<JointAction> acc{JointAction::empty(n_agents)};
    for (const auto& [c, members] : family) {
        std::vector<JointAction> next;
        for (const auto& partial : acc) {
            for (const auto& pick : members) {
                if (pick.domain != c) throw std::invalid_argument("joint action outside its coalition");
                next.push_back(partial.merge(pick));
            }
        }
        acc = std::move(next);
    }
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    return acc;
}

// ── Classification ──────────────────────────────────────────────────────────

std::string format_joint_action(const GameModel& m, const JointAction& ja) {
    auto action_name = [&](ActionId a) {
        return a < m.actions().size() ? m.actions()[a] : std::string("?");
    };
    std::string out;
    if (ja.domain == m.universe().grand()) {
        out = "(";
        for (std::size_t i = 0; i < ja.moves.size(); ++i) {
            if (i) out += ',';
            out += action_name(ja.moves[i]);
        }
        return out + ")";
    }
    out = "{";
    bool first = true;
    for (std::size_t i : ja.domain.members()) {
        if (!first) out += ',';
        out += m.universe().name(i) + ":" + action_name(ja.moves[i]);
        first = false;
    }
    return out + "}";
}

ModelClassification classify(const GameModel& m) {
    m.validate();
    ModelClassification c;
    const std::size_t n = m.n_agents();
    std::string serial_note, independence_note, determinism_note;

    for (StateId s = 0; s < m.n_states(); ++s) {
        const auto profiles = m.av_ag(s);

        if (profiles.empty() && !c.serial_witness) {
            c.serial = false;
            c.serial_witness = s;
            serial_note = ("not serial: no action profile is available at " + m.states()[s]);
        }

        if (!c.independence_witness) {
            // Rectangularity: av_AG(s) must equal the product of the agents'
            // individual availability sets.
            std::vector<std::pair<Coalition, std::vector<JointAction>>> family;
            for (std::size_t a = 0; a < n; ++a) {
                family.emplace_back(Coalition::singleton(a), av(m, Coalition::singleton(a), s));
            }
            for (const auto& candidate : oplus(family, n)) {
                if (!std::binary_search(profiles.begin(), profiles.end(), candidate)) {
                    c.independent = false;
                    c.independence_witness = std::make_pair(s, candidate);
                    independence_note = ("not independent: individually available actions " +
                                          format_joint_action(m, candidate) + " are not jointly available at " +
                                          m.states()[s]);
                    break;
                }
            }
        }

        if (!c.determinism_witness) {
            for (const auto& p : profiles) {
                if (m.out_ag(s, p).size() != 1) {
                    c.deterministic = false;
                    c.determinism_witness = std::make_pair(s, p);
                    determinism_note = ("not deterministic: " + format_joint_action(m, p) + " has " +
                                          std::to_string(m.out_ag(s, p).size()) + " outcomes at " +
                                          m.states()[s]);
                    break;
                }
            }
        }
    }
    for (auto* note : {&serial_note, &independence_note, &determinism_note}) {
        if (!note->empty()) c.witnesses.push_back(std::move(*note));
    }
    c.is_cgm = c.serial && c.independent && c.deterministic;
    return c;
}

// ── Construction helpers ────────────────────────────────────────────────────

GameModel with_prefix(const GameModel& m, const std::string& prefix) {
    auto prefixed = [&](const std::vector<std::string>& names) {
        std::vector<std::string> out;
        out.reserve(names.size());
        for (const auto& n : names) out.push_back(prefix + n);
        return out;
    };
    GameModel r(m.universe(), prefixed(m.states()), prefixed(m.actions()), m.atoms());
    for (StateId s = 0; s < m.n_states(); ++s) {
        for (AtomId p = 0; p < m.atoms().size(); ++p) {
            if (m.holds(s, p)) r.set_holds(s, p);
        }
        for (const auto& [profile, targets] : m.transitions(s)) r.set_outcomes(s, profile, targets);
    }
    return r;
}

std::vector<GameModel> rename_disjoint(const std::vector<GameModel>& models, const std::string& prefix) {
    std::vector<GameModel> out;
    out.reserve(models.size());
    for (std::size_t i = 0; i < models.size(); ++i) {
        out.push_back(with_prefix(models[i], prefix + std::to_string(i) + "."));
    }
    return out;
}

namespace {

// Uniform double in [0, 1) from the top 53 bits; independent of the
// standard library's distribution implementations.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<std::string> numbered(const char* stem, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(stem + std::to_string(i));
    return out;
}

void random_labels(GameModel& m, std::mt19937_64& rng) {
    for (StateId s = 0; s < m.n_states(); ++s) {
        for (AtomId p = 0; p < m.atoms().size(); ++p) m.set_holds(s, p, (rng() & 1U) != 0);
    }
}

}  // namespace

GameModel random_model(const AgentUniverse& universe, std::size_t n_states, std::size_t n_actions,
                       double density, std::uint64_t seed, const std::vector<std::string>& atoms) {
    if (n_states == 0 || n_actions == 0) throw std::invalid_argument("random_model needs states and actions");
    if (!(density >= 0.0 && density <= 1.0)) throw std::invalid_argument("density must lie in [0, 1]");
    std::mt19937_64 rng(seed);
    GameModel m(universe, numbered("s", n_states), numbered("x", n_actions), atoms);
    random_labels(m, rng);
    const auto profiles = all_profiles(universe.size(), n_actions);
    for (StateId s = 0; s < n_states; ++s) {
        for (const auto& p : profiles) {
            for (StateId t = 0; t < n_states; ++t) {
                if (unit(rng) < density) m.add_outcome(s, p, t);
            }
        }
    }
    return m;
}

GameModel random_cgm(const AgentUniverse& universe, std::size_t n_states, std::size_t n_actions,
                     std::uint64_t seed, const std::vector<std::string>& atoms) {
    if (n_states == 0 || n_actions == 0) throw std::invalid_argument("random_cgm needs states and actions");
    std::mt19937_64 rng(seed);
    GameModel m(universe, numbered("s", n_states), numbered("x", n_actions), atoms);
    random_labels(m, rng);
    const std::size_t n = universe.size();
    for (StateId s = 0; s < n_states; ++s) {
        std::vector<std::pair<Coalition, std::vector<JointAction>>> family;
        for (std::size_t a = 0; a < n; ++a) {
            std::vector<JointAction> choices;
            for (ActionId x = 0; x < n_actions; ++x) {
                if ((rng() & 1U) != 0) {
                    JointAction ja = JointAction::empty(n);
                    ja.domain = Coalition::singleton(a);
                    ja.moves[a] = x;
                    choices.push_back(ja);
                }
            }
            if (choices.empty()) {
                JointAction ja = JointAction::empty(n);
                ja.domain = Coalition::singleton(a);
                ja.moves[a] = static_cast<ActionId>(rng() % n_actions);
                choices.push_back(ja);
            }
            family.emplace_back(Coalition::singleton(a), std::move(choices));
        }
        for (const auto& p : oplus(family, n)) {
            m.add_outcome(s, p, static_cast<StateId>(rng() % n_states));
        }
    }
    return m;
}

// ── Fixtures ────────────────────────────────────────────────────────────────

namespace {

GameModel mask_skeleton(std::vector<std::string> states) {
    return GameModel(AgentUniverse({"a", "b"}), std::move(states), {"w", "n"}, {"m_a", "m_b", "l_a", "l_b"});
}

JointAction mask_profile(const GameModel& m, const char* a, const char* b) {
    return JointAction::profile({*m.find_action(a), *m.find_action(b)});
}

}  // namespace

PointedModel two_masks() {
    GameModel m = mask_skeleton({"s0", "s1", "s2", "s3", "s4"});
    m.set_label(m.state("s0"), {"l_a", "l_b"});
    m.set_label(m.state("s1"), {"m_a", "l_a"});
    m.set_label(m.state("s2"), {"m_b", "l_b"});
    m.set_label(m.state("s3"), {});
    m.set_label(m.state("s4"), {"m_a", "m_b", "l_a", "l_b"});
    const StateId s0 = m.state("s0");
    m.add_outcome(s0, mask_profile(m, "w", "n"), m.state("s1"));
    m.add_outcome(s0, mask_profile(m, "n", "w"), m.state("s2"));
    m.add_outcome(s0, mask_profile(m, "n", "n"), m.state("s3"));
    m.add_outcome(s0, mask_profile(m, "w", "w"), m.state("s4"));
    for (const char* s : {"s1", "s2", "s3", "s4"}) {
        m.add_outcome(m.state(s), mask_profile(m, "n", "n"), m.state(s));
    }
    return PointedModel{std::move(m), s0};
}

PointedModel one_mask() {
    GameModel m = mask_skeleton({"s0", "s1", "s'1", "s2", "s'2", "s3"});
    m.set_label(m.state("s0"), {"l_a", "l_b"});
    m.set_label(m.state("s1"), {"m_a", "l_a"});
    m.set_label(m.state("s2"), {"m_b", "l_b"});
    m.set_label(m.state("s3"), {});
    m.set_label(m.state("s'1"), {"m_a", "l_a", "l_b"});
    m.set_label(m.state("s'2"), {"m_b", "l_a", "l_b"});
    const StateId s0 = m.state("s0");
    m.set_outcomes(s0, mask_profile(m, "w", "n"), {m.state("s1"), m.state("s'1")});
    m.set_outcomes(s0, mask_profile(m, "n", "w"), {m.state("s2"), m.state("s'2")});
    m.set_outcomes(s0, mask_profile(m, "n", "n"), {m.state("s3"), s0});
    m.set_outcomes(m.state("s'1"), mask_profile(m, "n", "n"), {m.state("s1"), m.state("s'1")});
    m.set_outcomes(m.state("s'2"), mask_profile(m, "n", "n"), {m.state("s2"), m.state("s'2")});
    return PointedModel{std::move(m), s0};
}

std::optional<PointedModel> fixture(std::string_view name) {
    if (name == "two_masks") return two_masks();
    if (name == "one_mask") return one_mask();
    return std::nullopt;
}

}  // namespace mcl
