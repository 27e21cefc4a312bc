// ============================================================================
// mcl/normalform.hpp: Standard formulas and the normal-form transformation
// ============================================================================
//
// A standard formula is a clause
//
//     γ ∨ ( ∧_{i∈NI} <A_i>φ_i  →  ∨_{j∈PI} <B_j>ψ_j )
//
// where γ is a disjunction of propositional literals, PI contains
// (AG, false) and NI, when nonempty, contains ({}, true).  Every formula of
// modal depth ≥ 1 is equivalent to a conjunction of standard formulas of the
// same depth; to_standard_conjunction computes one by CNF over the
// propositional skeleton, treating maximal <A>ψ subformulas as opaque atoms.
// The goals φ_i / ψ_j are left as they are.
// ============================================================================

#ifndef MCL_NORMALFORM_HPP
#define MCL_NORMALFORM_HPP

#include "mcl/formula.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace mcl {

/// A propositional literal of γ: an atom, its negation, or the constant true.
struct PropLiteral {
    bool is_top = false;
    std::string atom;
    bool positive = true;

    static PropLiteral top() { return PropLiteral{true, {}, true}; }
    static PropLiteral of(std::string atom, bool positive) { return PropLiteral{false, std::move(atom), positive}; }

    Formula to_formula() const;
    auto operator<=>(const PropLiteral&) const = default;
};

/// One <A>φ occurrence in NI or PI.
struct ModalPair {
    Coalition coalition;
    Formula goal;

    Formula to_formula() const { return Formula::can(coalition, goal); }
    auto operator<=>(const ModalPair&) const = default;
    bool operator==(const ModalPair&) const = default;
};

struct StandardFormula {
    std::vector<PropLiteral> gamma;  // empty means false
    std::vector<ModalPair> ni;
    std::vector<ModalPair> pi;

    /// γ ∨ (∧NI → ∨PI) as a core formula.
    Formula to_formula() const;
    /// Rendering in the formula grammar; parses back to an equivalent formula.
    std::string to_string(const AgentUniverse& universe) const;
    std::size_t depth() const;

    /// Throws std::logic_error if PI lacks (AG, false) or a nonempty NI
    /// lacks ({}, true).
    void check(const AgentUniverse& universe) const;
};

struct Ni0Summary {
    std::vector<std::size_t> indices;  // positions in ni with empty coalition
    Formula phi;                       // conjunction of their goals, true if none
};

Ni0Summary ni0(const StandardFormula& sf);

/// True iff γ contains true or a complementary pair of literals.
bool gamma_is_tautology(const std::vector<PropLiteral>& gamma);

class NormalFormError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Equivalent conjunction of standard formulas with the same modal depth.
/// Throws NormalFormError for modality-free input.
std::vector<StandardFormula> to_standard_conjunction(const Formula& f, const AgentUniverse& universe);

/// Conjunction of the clauses' formulas.
Formula conjunction_of(const std::vector<StandardFormula>& clauses);

}  // namespace mcl

#endif  // MCL_NORMALFORM_HPP
