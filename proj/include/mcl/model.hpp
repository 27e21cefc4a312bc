// ============================================================================
// mcl/model.hpp: General concurrent game models
// ============================================================================
//
// A model stores only the grand coalition's outcome map out_AG.  Everything
// else is derived on demand:
//
//   av_AG(s)          = { σ : out_AG(s, σ) ≠ ∅ }
//   av_A(s)           = av_AG(s)|_A
//   out_A(s, σ_A)     = ∪ { out_AG(s, σ) : σ_A ⊆ σ }
//
// so every well-formed GameModel is a general concurrent game model by
// construction.  Profiles with no entry have an empty outcome set and are
// therefore unavailable.
//
// ============================================================================

#ifndef MCL_MODEL_HPP
#define MCL_MODEL_HPP

#include "mcl/formula.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mcl {

using StateId = std::size_t;
using ActionId = std::size_t;
using AtomId = std::size_t;

inline constexpr ActionId kNoAction = std::numeric_limits<ActionId>::max();

class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ── JointAction ─────────────────────────────────────────────────────────────
// A partial assignment of actions to agents.  `moves` has one slot per agent
// of the universe; slots outside `domain` hold kNoAction.  A joint action of
// the grand coalition is an action profile.

struct JointAction {
    Coalition domain;
    std::vector<ActionId> moves;

    /// The unique joint action of the empty coalition.
    static JointAction empty(std::size_t n_agents);
    /// The profile in which every agent plays `action`.
    static JointAction uniform(std::size_t n_agents, ActionId action);
    /// Builds a profile from one action per agent in canonical order.
    static JointAction profile(std::vector<ActionId> moves);

    JointAction restrict_to(Coalition sub) const;
    /// σ ⊆ other as sets of (agent, action) pairs.
    bool is_part_of(const JointAction& other) const;
    /// Union with a joint action over a disjoint domain.
    JointAction merge(const JointAction& other) const;

    auto operator<=>(const JointAction&) const = default;
};

// ── GameModel ───────────────────────────────────────────────────────────────

class GameModel {
public:
    GameModel() = default;
    GameModel(AgentUniverse universe, std::vector<std::string> states,
              std::vector<std::string> actions, std::vector<std::string> atoms = {});

    const AgentUniverse& universe() const noexcept { return universe_; }
    const std::vector<std::string>& states() const noexcept { return states_; }
    const std::vector<std::string>& actions() const noexcept { return actions_; }
    const std::vector<std::string>& atoms() const noexcept { return atoms_; }

    std::size_t n_states() const noexcept { return states_.size(); }
    std::size_t n_agents() const noexcept { return universe_.size(); }

    std::optional<StateId> find_state(std::string_view name) const;
    std::optional<ActionId> find_action(std::string_view name) const;
    std::optional<AtomId> find_atom(std::string_view name) const;
    /// Throws ModelError when the state is unknown.
    StateId state(std::string_view name) const;

    /// Adds an atom to the vocabulary (no-op if present) and returns its id.
    AtomId declare_atom(const std::string& name);

    bool holds(StateId s, AtomId p) const { return labels_.at(s).at(p); }
    void set_holds(StateId s, AtomId p, bool value = true);
    void set_label(StateId s, const std::vector<std::string>& atoms);
    /// Atoms true at s, in vocabulary order.
    std::vector<std::string> label(StateId s) const;

    /// Adds `to` to out_AG(from, profile).
    void add_outcome(StateId from, const JointAction& profile, StateId to);
    /// Replaces out_AG(from, profile); an empty target list removes the entry.
    void set_outcomes(StateId from, const JointAction& profile, std::vector<StateId> to);

    /// out_AG(s, profile); empty when the profile is unavailable.
    const std::vector<StateId>& out_ag(StateId s, const JointAction& profile) const;
    /// Stored entries at s: available profiles with their (sorted) outcomes.
    const std::map<JointAction, std::vector<StateId>>& transitions(StateId s) const {
        return transitions_.at(s);
    }
    std::vector<JointAction> av_ag(StateId s) const;

    /// Structural well-formedness; throws ModelError on violation.
    void validate() const;

    bool operator==(const GameModel&) const = default;

private:
    void check_state(StateId s) const;
    void check_profile(const JointAction& profile) const;

    AgentUniverse universe_;
    std::vector<std::string> states_;
    std::vector<std::string> actions_;
    std::vector<std::string> atoms_;
    std::vector<std::vector<bool>> labels_;
    std::vector<std::map<JointAction, std::vector<StateId>>> transitions_;
};

struct PointedModel {
    GameModel model;
    StateId state = 0;

    const std::string& state_name() const { return model.states().at(state); }
};

// ── Derived availability / outcome functions ────────────────────────────────

/// av_A(s): sorted, duplicate-free.
std::vector<JointAction> av(const GameModel& m, Coalition coalition, StateId s);

/// out_A(s, σ_A): sorted, duplicate-free.  Throws ModelError if the joint
/// action's domain is not `coalition` or names an unknown action.
std::vector<StateId> out(const GameModel& m, Coalition coalition, StateId s, const JointAction& action);

/// out_∅(s, ∅): every successor of s.
std::vector<StateId> successors(const GameModel& m, StateId s);

/// Every action profile over `n_actions` actions, in canonical (lexicographic) order.
std::vector<JointAction> all_profiles(std::size_t n_agents, std::size_t n_actions);

/// ⨁ of a family of (coalition, joint-action set) pairs: every union of one
/// pick per member.  Throws std::invalid_argument on overlapping coalitions.
std::vector<JointAction> oplus(const std::vector<std::pair<Coalition, std::vector<JointAction>>>& family,
                               std::size_t n_agents);

// ── Classification ──────────────────────────────────────────────────────────

struct ModelClassification {
    bool is_gcgm = true;
    bool serial = true;
    bool independent = true;
    bool deterministic = true;
    bool is_cgm = true;

    std::optional<StateId> serial_witness;
    std::optional<std::pair<StateId, JointAction>> independence_witness;
    std::optional<std::pair<StateId, JointAction>> determinism_witness;

    std::vector<std::string> witnesses;
};

ModelClassification classify(const GameModel& m);

/// "(w,n)" for profiles, "{a:w}" for proper sub-coalitions.
std::string format_joint_action(const GameModel& m, const JointAction& ja);

// ── Construction helpers ────────────────────────────────────────────────────

/// Prefixes the states and actions of the i-th model with "g<i>." so that
/// all state sets and all action sets become pairwise disjoint.
std::vector<GameModel> rename_disjoint(const std::vector<GameModel>& models,
                                       const std::string& prefix = "g");

/// Copy of `m` with every state and action name prefixed.
GameModel with_prefix(const GameModel& m, const std::string& prefix);

/// Random model: every (state, profile, target) edge is present with
/// probability `density`; each atom holds at each state with probability 1/2.
GameModel random_model(const AgentUniverse& universe, std::size_t n_states, std::size_t n_actions,
                       double density, std::uint64_t seed, const std::vector<std::string>& atoms = {});

/// Random concurrent game model: per state every agent gets a nonempty
/// random set of available actions, the profile set is their product, and
/// each profile has exactly one random outcome.
GameModel random_cgm(const AgentUniverse& universe, std::size_t n_states, std::size_t n_actions,
                     std::uint64_t seed, const std::vector<std::string>& atoms = {});

// ── Fixtures ────────────────────────────────────────────────────────────────

/// The two-mask laboratory: a concurrent game model pointed at s0.
PointedModel two_masks();
/// The one-mask laboratory: a general model that is neither serial,
/// independent nor deterministic, pointed at s0.
PointedModel one_mask();
std::optional<PointedModel> fixture(std::string_view name);

// ── Serialization ───────────────────────────────────────────────────────────

/// Deterministic text: keys sorted, lists in declaration order.  When
/// `designated` is set the document carries a "state" field.
std::string serialize_model(const GameModel& m, std::optional<StateId> designated = std::nullopt);
std::string serialize_pointed(const PointedModel& pm);

struct LoadedModel {
    GameModel model;
    std::optional<StateId> designated;
};

LoadedModel parse_model(std::string_view text);
LoadedModel load_model_file(const std::string& path);

}  // namespace mcl

#endif  // MCL_MODEL_HPP
