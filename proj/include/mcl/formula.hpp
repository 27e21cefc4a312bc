// ============================================================================
// mcl/formula.hpp: Agents, coalitions and the coalition-logic formula AST
// ============================================================================
//
// Design notes:
//
//   The core language has five constructors:
//
//     Top | Atom(p) | Neg(φ) | And(φ, ψ) | Can(A, φ)        Can(A, φ) = <A>φ
//
//   Everything else (false, |, ->, <->, [A], box, dia) is sugar and is
//   lowered by the smart constructors in this header, so no other module
//   ever sees a derived connective.  Falsum is Neg(Top).
//
//   Formulas are immutable values backed by shared nodes; copying a Formula
//   is a reference-count bump and sharing across threads is safe.
//
//   Coalitions are bitsets over the positions of an AgentUniverse, so a
//   universe holds at most 64 agents.
//
// ============================================================================

#ifndef MCL_FORMULA_HPP
#define MCL_FORMULA_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mcl {

// ── Coalition ───────────────────────────────────────────────────────────────
// A set of agent positions.  Set operations are total; complement needs the
// universe size.

class Coalition {
public:
    static constexpr std::size_t kMaxAgents = 64;

    constexpr Coalition() noexcept = default;
    constexpr explicit Coalition(std::uint64_t bits) noexcept : bits_(bits) {}

    static Coalition empty() noexcept { return Coalition{}; }
    static Coalition singleton(std::size_t agent) noexcept {
        return Coalition{std::uint64_t{1} << agent};
    }
    static Coalition all(std::size_t n_agents) noexcept {
        return Coalition{n_agents >= 64 ? ~std::uint64_t{0}
                                        : (std::uint64_t{1} << n_agents) - 1};
    }

    std::uint64_t bits() const noexcept { return bits_; }
    bool is_empty() const noexcept { return bits_ == 0; }
    bool contains(std::size_t agent) const noexcept { return (bits_ >> agent) & 1U; }
    std::size_t size() const noexcept;
    std::vector<std::size_t> members() const;

    bool subset_of(Coalition other) const noexcept { return (bits_ & ~other.bits_) == 0; }
    bool disjoint_with(Coalition other) const noexcept { return (bits_ & other.bits_) == 0; }

    Coalition operator|(Coalition o) const noexcept { return Coalition{bits_ | o.bits_}; }
    Coalition operator&(Coalition o) const noexcept { return Coalition{bits_ & o.bits_}; }
    Coalition operator-(Coalition o) const noexcept { return Coalition{bits_ & ~o.bits_}; }
    Coalition complement(std::size_t n_agents) const noexcept { return all(n_agents) - *this; }

    Coalition with(std::size_t agent) const noexcept { return *this | singleton(agent); }

    auto operator<=>(const Coalition&) const = default;

private:
    std::uint64_t bits_ = 0;
};

// ── AgentUniverse ───────────────────────────────────────────────────────────
// The grand coalition AG with a fixed canonical order.  Agent i is the i-th
// declared name; that order breaks every tie elsewhere in the library.

class AgentUniverse {
public:
    AgentUniverse() = default;
    explicit AgentUniverse(std::vector<std::string> names);

    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::string& name(std::size_t agent) const { return names_.at(agent); }
    std::optional<std::size_t> index_of(std::string_view name) const;

    Coalition grand() const noexcept { return Coalition::all(names_.size()); }

    /// Builds a coalition from names; throws std::invalid_argument on unknown names.
    Coalition coalition(const std::vector<std::string>& members) const;

    /// "{a,b}" with members in canonical order.
    std::string format(Coalition c) const;

    /// All subsets of AG in binary-counter order.
    std::vector<Coalition> all_coalitions() const;

    bool operator==(const AgentUniverse&) const = default;

private:
    std::vector<std::string> names_;
};

// ── Formula ─────────────────────────────────────────────────────────────────

class Formula {
public:
    enum class Kind : std::uint8_t { Top, Atom, Neg, And, Can };

    /// Defaults to Top.
    Formula();

    // Core constructors.
    static Formula top();
    static Formula atom(std::string name);
    static Formula neg(Formula f);
    static Formula conj(Formula lhs, Formula rhs);
    static Formula can(Coalition coalition, Formula f);

    // Sugar, lowered on construction.
    static Formula bot();
    static Formula disj(Formula lhs, Formula rhs);
    static Formula implies(Formula lhs, Formula rhs);
    static Formula iff(Formula lhs, Formula rhs);
    static Formula dual(Coalition coalition, Formula f);   // [A]φ = ~<A>~φ
    static Formula box(Formula f);                         // <{}>true -> <{}>φ
    static Formula dia(Formula f);                         // <{}>true & ~<{}>~φ

    /// Left-nested conjunction of the list; Top when empty.
    static Formula conj_all(const std::vector<Formula>& fs);
    /// Left-nested disjunction of the list; falsum when empty.
    static Formula disj_all(const std::vector<Formula>& fs);

    Kind kind() const noexcept;
    bool is_top() const noexcept { return kind() == Kind::Top; }
    bool is_bot() const noexcept;

    /// Atom name (Atom only).
    const std::string& name() const;
    /// Operand of Neg/Can, left operand of And.
    const Formula& child() const;
    const Formula& lhs() const { return child(); }
    const Formula& rhs() const;
    Coalition coalition() const;

    /// Structural total order; equal iff the trees are identical.
    std::strong_ordering operator<=>(const Formula& other) const;
    bool operator==(const Formula& other) const;

    /// Identity of the shared node, used by memo tables.
    const void* node_id() const noexcept { return node_.get(); }

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

// ── Structural measures ─────────────────────────────────────────────────────

std::size_t modal_depth(const Formula& f);
std::size_t formula_size(const Formula& f);
std::set<std::string> atoms_of(const Formula& f);
/// Union of all coalitions occurring in the formula.
Coalition agents_of(const Formula& f);

/// Order-insensitive key: conjunction operands are flattened and sorted, so
/// formulas equal up to associativity/commutativity of & share a key.
std::string canonical_key(const Formula& f);

// ── Text ────────────────────────────────────────────────────────────────────

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t position);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Parses the concrete grammar and returns the lowered core AST.
Formula parse(std::string_view text, const AgentUniverse& universe);

/// Deterministic rendering with minimal parentheses; parse(print(f)) == f.
std::string print(const Formula& f, const AgentUniverse& universe);

/// Agent names occurring in coalition brackets, in order of first appearance.
/// Used to default the grand coalition when none is given.
std::vector<std::string> scan_agent_names(std::string_view text);

}  // namespace mcl

#endif  // MCL_FORMULA_HPP
