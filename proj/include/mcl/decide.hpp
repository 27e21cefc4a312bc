// ============================================================================
// mcl/decide.hpp: Validity, satisfiability and countermodel synthesis
// ============================================================================
//
// Validity over all pointed general concurrent game models reduces by
// modal depth:
//
//   depth 0   truth table
//   depth ≥ 1 normalize into standard clauses; a clause
//               γ ∨ (∧ <A_i>φ_i → ∨ <B_j>ψ_j)
//             is valid iff γ is a tautology, or some pair (i, j) with
//             A_i ⊆ B_j has (φ_NI₀ ∧ φ_i) → ψ_j valid.
//
// When a clause fails, a countermodel is grafted together: a fresh hub
// state whose one-round game form (profiles σ^i where every agent plays
// α_i, and λ^{i-j} where one witness agent deviates to β_{i-j}) leads into
// disjoint copies of models of φ_NI₀ ∧ φ_i ∧ ¬ψ_j.  Every countermodel is
// re-checked with the model checker before it is returned.
// ============================================================================

#ifndef MCL_DECIDE_HPP
#define MCL_DECIDE_HPP

#include "mcl/formula.hpp"
#include "mcl/model.hpp"
#include "mcl/normalform.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mcl {

struct TraceEntry {
    std::string clause;
    std::string outcome;
};

struct Verdict {
    bool valid = false;
    std::optional<PointedModel> countermodel;  // present iff !valid
    std::vector<TraceEntry> trace;
};

struct SatResult {
    bool satisfiable = false;
    std::optional<PointedModel> witness;  // present iff satisfiable
    std::vector<TraceEntry> trace;
};

// ── GameForm ────────────────────────────────────────────────────────────────
// The hub of a grafted countermodel, described by name so tests can locate
// it inside the assembled model.

struct GameForm {
    struct Profile {
        enum class Kind : std::uint8_t { Sigma, Lambda };
        Kind kind = Kind::Sigma;
        std::size_t ni_index = 0;
        std::size_t pi_index = 0;              // Lambda only
        std::size_t witness_agent = 0;         // Lambda only
        std::vector<std::string> moves;        // one action name per agent
        std::vector<std::size_t> targets;      // indices into GameForm::targets
    };

    std::string hub = "h";
    std::vector<std::string> actions;                          // α_i then β_{i-j}
    std::vector<std::pair<std::size_t, std::size_t>> targets;  // (i, j) with A_i ⊆ B_j
    std::vector<Profile> profiles;

    std::size_t beta_count() const;
};

/// The game form for a clause with nonempty NI.
GameForm make_game_form(const StandardFormula& sf, const AgentUniverse& universe);

/// Raised when a countermodel fails re-checking or a precondition of the
/// construction does not hold; either indicates a bug, not bad input.
class CertificationError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// ── Decider ─────────────────────────────────────────────────────────────────
// Holds the per-session memo of sub-verdicts, keyed by canonical_key.  Not
// thread-safe; use one Decider per thread.

class Decider {
public:
    explicit Decider(AgentUniverse universe);

    const AgentUniverse& universe() const noexcept { return universe_; }

    Verdict decide_valid(const Formula& f);
    SatResult decide_sat(const Formula& f);

    /// Validity only, without building a countermodel.
    bool is_valid(const Formula& f);

    /// Whether a single standard clause is valid.
    bool clause_valid(const StandardFormula& sf);

    /// A pointed model falsifying an invalid standard clause.  Throws
    /// CertificationError if the clause is valid.
    PointedModel build_countermodel(const StandardFormula& sf);

    /// A pointed model falsifying an invalid formula (memoized).
    PointedModel countermodel(const Formula& f);

    std::size_t memo_size() const noexcept { return validity_memo_.size(); }

private:
    bool propositional_valid(const Formula& f) const;
    PointedModel propositional_countermodel(const Formula& f) const;
    PointedModel graft(const StandardFormula& sf);
    void check_formula(const Formula& f) const;

    AgentUniverse universe_;
    std::unordered_map<std::string, bool> validity_memo_;
    std::unordered_map<std::string, PointedModel> countermodel_memo_;
};

Verdict decide_valid(const Formula& f, const AgentUniverse& universe);
SatResult decide_sat(const Formula& f, const AgentUniverse& universe);
PointedModel build_countermodel(const StandardFormula& sf, const AgentUniverse& universe);

}  // namespace mcl

#endif  // MCL_DECIDE_HPP
