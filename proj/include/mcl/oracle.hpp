// ============================================================================
// mcl/oracle.hpp: Brute-force countermodel search and differential testing
// ============================================================================
//
// The oracle knows nothing about normal forms or grafting: it enumerates
// (or samples) small models and asks the model checker.  It is the
// independent side against which the decider is compared.
//
//   exhaustive  every model with ≤ max_states states and ≤ max_actions
//               actions, out_AG and labels read off a binary counter over
//               (state, profile, target) and (state, atom) bits
//   sampled     random_model over a fixed seed ladder
//
// A run that hits the model budget reports itself as truncated.
// ============================================================================

#ifndef MCL_ORACLE_HPP
#define MCL_ORACLE_HPP

#include "mcl/formula.hpp"
#include "mcl/model.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace mcl {

struct SearchBounds {
    enum class Mode : std::uint8_t { Exhaustive, Sampled };

    AgentUniverse universe;
    std::size_t max_states = 2;
    std::size_t max_actions = 1;
    std::vector<std::string> atoms;  // formula atoms are always added
    Mode mode = Mode::Exhaustive;
    std::size_t samples = 1000;      // sampled mode
    std::uint64_t seed = 1;          // sampled mode
    std::uint64_t budget = 1'000'000;
};

struct SearchResult {
    std::optional<PointedModel> countermodel;
    std::uint64_t models_checked = 0;
    bool truncated = false;  // budget exhausted before the space was covered
};

SearchResult search_countermodel(const Formula& f, const SearchBounds& bounds);

/// Random formula of modal depth ≤ max_depth built from roughly max_size
/// connectives, using both core constructors and sugar.
Formula random_formula(std::mt19937_64& rng, const AgentUniverse& universe, const std::vector<std::string>& atoms,
                       std::size_t max_depth, std::size_t max_size);

/// A uniformly random coalition.
Coalition random_coalition(std::mt19937_64& rng, const AgentUniverse& universe);

// ── Scheme instances ────────────────────────────────────────────────────────

namespace schemes {

// Valid over general concurrent game models.
Formula monotonicity_of_goals(Coalition a, const Formula& phi, const Formula& psi);   // A-MG
Formula monotonicity_of_coalitions(Coalition a, Coalition b, const Formula& phi);     // A-MC, a ⊆ b
Formula liveness(Coalition a);                                                        // A-Live
Formula special_independence(Coalition a, const Formula& phi, const Formula& psi);    // A-SIA
/// Conclusion of monotonicity from the premise φ → ψ, a ⊆ b.
Formula monotonicity_rule(Coalition a, Coalition b, const Formula& phi, const Formula& psi);
/// Conclusion of conditional necessitation from the premise φ.
Formula conditional_necessitation(Coalition a, const Formula& phi, const Formula& psi);

// Valid over concurrent game models only.
Formula seriality(Coalition a);                                                       // A-Ser
Formula independence(Coalition a, Coalition b, const Formula& phi, const Formula& psi);  // A-IA, a ∩ b = ∅
Formula determinism(Coalition a, Coalition grand, const Formula& phi, const Formula& psi);  // A-Det
Formula maximality(Coalition grand, const Formula& phi);                              // A-Max
Formula maximality_split(Coalition grand, const Formula& phi);                        // <AG>φ | <AG>~φ

}  // namespace schemes

// ── Differential harness ────────────────────────────────────────────────────

struct Generator {
    enum class Kind : std::uint8_t {
        RandomFormulas,  // decide vs. oracle on random formulas
        Seriality,       // A-Ser instances on sampled CGMs and GCGMs
        Independence,    // A-IA
        Determinism,     // A-Det
    };
    Kind kind = Kind::RandomFormulas;
    std::size_t count = 100;      // formulas, or sampled models for schemes
    std::size_t max_depth = 2;
    std::size_t max_size = 8;
};

struct DifferentialConfig {
    AgentUniverse universe;
    std::vector<std::string> atoms;
    std::vector<Generator> generators;
    SearchBounds bounds;                       // oracle bounds for random formulas
    std::uint64_t seed = 1;
    std::size_t scheme_max_states = 3;
    std::size_t scheme_max_actions = 2;
    std::vector<PointedModel> extra_models;    // also checked by scheme generators
};

struct Finding {
    std::string kind;
    std::string formula;
    std::uint64_t seed = 0;
    std::string model;     // serialized pointed model, when one is involved
    std::string detail;
};

struct DifferentialReport {
    std::size_t formulas = 0;
    std::size_t valid = 0;
    std::size_t invalid = 0;
    std::size_t certified = 0;
    std::size_t oracle_refuted = 0;
    std::size_t oracle_truncated = 0;
    std::size_t scheme_checks = 0;
    std::size_t cgm_samples = 0;
    std::size_t violation_count = 0;
    std::vector<Finding> violations;      // examples of scheme failures on models lacking the property
    std::vector<Finding> discrepancies;   // contradictions; any entry is a bug

    bool ok() const noexcept { return discrepancies.empty(); }
    bool empty() const noexcept;
    std::string to_text() const;
    std::string to_json() const;
};

DifferentialReport differential_run(const DifferentialConfig& config);

}  // namespace mcl

#endif  // MCL_ORACLE_HPP
