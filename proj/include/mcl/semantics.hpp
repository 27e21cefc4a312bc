// ============================================================================
// mcl/semantics.hpp: Model checking formulas over pointed game models
// ============================================================================
//
//   M, s ⊨ <A>φ  iff  some σ_A ∈ av_A(s) has every t ∈ out_A(s, σ_A)
//                     satisfying φ
//
// The remaining clauses are classical.  `eval` follows the definition
// literally through av/out; `eval_all` labels every state bottom-up with a
// per-call memo and is what bulk callers should use.
// ============================================================================

#ifndef MCL_SEMANTICS_HPP
#define MCL_SEMANTICS_HPP

#include "mcl/formula.hpp"
#include "mcl/model.hpp"

#include <stdexcept>
#include <vector>

namespace mcl {

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws EvalError if f uses an atom the model does not declare or an
/// agent outside the model's universe.
void check_vocabulary(const GameModel& m, const Formula& f);

bool eval(const GameModel& m, StateId s, const Formula& f);
inline bool eval(const PointedModel& pm, const Formula& f) { return eval(pm.model, pm.state, f); }

/// Whether the available joint action σ_A ensures f at s, i.e. every
/// outcome satisfies f.  Throws EvalError if σ_A is not available.
bool ensures(const GameModel& m, StateId s, Coalition coalition, const JointAction& action, const Formula& f);

/// Truth value of f at every state, indexed by StateId.
std::vector<bool> eval_all(const GameModel& m, const Formula& f);

}  // namespace mcl

#endif  // MCL_SEMANTICS_HPP
