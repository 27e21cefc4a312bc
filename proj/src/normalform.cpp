// ============================================================================
// normalform.cpp: CNF over modal atoms, then padding into standard clauses
// ============================================================================

#include "mcl/normalform.hpp"

#include <algorithm>
#include <set>

namespace mcl {

// ── StandardFormula ─────────────────────────────────────────────────────────

Formula PropLiteral::to_formula() const {
    if (is_top) return Formula::top();
    Formula a = Formula::atom(atom);
    return positive ? a : Formula::neg(a);
}

Formula StandardFormula::to_formula() const {
    std::vector<Formula> neg, pos;
    for (const auto& m : ni) neg.push_back(m.to_formula());
    for (const auto& m : pi) pos.push_back(m.to_formula());
    Formula body = Formula::implies(Formula::conj_all(neg), Formula::disj_all(pos));
    if (gamma.empty()) return body;
    std::vector<Formula> lits;
    for (const auto& l : gamma) lits.push_back(l.to_formula());
    return Formula::disj(Formula::disj_all(lits), body);
}

std::string StandardFormula::to_string(const AgentUniverse& universe) const {
    std::string out;
    if (gamma.empty()) {
        out = "false";
    } else {
        for (std::size_t k = 0; k < gamma.size(); ++k) {
            if (k) out += " | ";
            out += print(gamma[k].to_formula(), universe);
        }
    }
    out += " | (";
    if (ni.empty()) out += "true";
    for (std::size_t k = 0; k < ni.size(); ++k) {
        if (k) out += " & ";
        out += print(ni[k].to_formula(), universe);
    }
    out += " -> ";
    for (std::size_t k = 0; k < pi.size(); ++k) {
        if (k) out += " | ";
        out += print(pi[k].to_formula(), universe);
    }
    out += ")";
    return out;
}

std::size_t StandardFormula::depth() const {
    std::size_t d = 0;
    for (const auto* list : {&ni, &pi}) {
        for (const auto& m : *list) d = std::max(d, 1 + modal_depth(m.goal));
    }
    return d;
}

void StandardFormula::check(const AgentUniverse& universe) const {
    const ModalPair live{universe.grand(), Formula::bot()};
    if (std::find(pi.begin(), pi.end(), live) == pi.end()) {
        throw std::logic_error("standard formula lacks <AG>false among its positive disjuncts");
    }
    const ModalPair ser{Coalition::empty(), Formula::top()};
    if (!ni.empty() && std::find(ni.begin(), ni.end(), ser) == ni.end()) {
        throw std::logic_error("standard formula with negative part lacks <{}>true");
    }
}

Ni0Summary ni0(const StandardFormula& sf) {
    Ni0Summary s;
    std::vector<Formula> goals;
    for (std::size_t i = 0; i < sf.ni.size(); ++i) {
        if (sf.ni[i].coalition.is_empty()) {
            s.indices.push_back(i);
            goals.push_back(sf.ni[i].goal);
        }
    }
    s.phi = Formula::conj_all(goals);
    return s;
}

bool gamma_is_tautology(const std::vector<PropLiteral>& gamma) {
    std::set<std::string> pos, neg;
    for (const auto& l : gamma) {
        if (l.is_top) return true;
        (l.positive ? pos : neg).insert(l.atom);
    }
    return std::any_of(pos.begin(), pos.end(), [&](const std::string& a) { return neg.count(a) != 0; });
}

// ── CNF over the propositional skeleton ─────────────────────────────────────

namespace {

// A literal of the skeleton: true, an atom, or an opaque modal atom.
struct Literal {
    enum class Kind : std::uint8_t { Top, Prop, Modal };
    Kind kind = Kind::Top;
    std::string atom;
    ModalPair modal;
    bool positive = true;

    auto operator<=>(const Literal&) const = default;
    bool operator==(const Literal&) const = default;

    std::size_t depth() const { return kind == Kind::Modal ? 1 + modal_depth(modal.goal) : 0; }
};

using Clause = std::vector<Literal>;  // sorted, duplicate-free
using Cnf = std::vector<Clause>;

constexpr std::size_t kClauseLimit = 1'000'000;

Clause merge_clauses(const Clause& a, const Clause& b) {
    Clause out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

void dedupe(Cnf& cnf) {
    std::sort(cnf.begin(), cnf.end());
    cnf.erase(std::unique(cnf.begin(), cnf.end()), cnf.end());
}

Cnf product(const Cnf& a, const Cnf& b) {
    if (a.size() * b.size() > kClauseLimit) {
        throw NormalFormError("normal form exceeds " + std::to_string(kClauseLimit) + " clauses");
    }
    Cnf out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a) {
        for (const auto& y : b) out.push_back(merge_clauses(x, y));
    }
    dedupe(out);
    return out;
}

// CNF of f (positive) or of ¬f (negative), pushing negations to literals.
Cnf to_cnf(const Formula& f, bool positive) {
    switch (f.kind()) {
        case Formula::Kind::Top:
            if (positive) return Cnf{Clause{Literal{}}};
            return Cnf{Clause{}};
        case Formula::Kind::Atom:
            return Cnf{Clause{Literal{Literal::Kind::Prop, f.name(), {}, positive}}};
        case Formula::Kind::Neg:
            return to_cnf(f.child(), !positive);
        case Formula::Kind::Can:
            return Cnf{Clause{Literal{Literal::Kind::Modal, {}, ModalPair{f.coalition(), f.child()}, positive}}};
        case Formula::Kind::And: {
            Cnf l = to_cnf(f.lhs(), positive);
            Cnf r = to_cnf(f.rhs(), positive);
            if (!positive) return product(l, r);
            l.insert(l.end(), r.begin(), r.end());
            dedupe(l);
            return l;
        }
    }
    return {};
}

std::size_t clause_depth(const Clause& c) {
    std::size_t d = 1;  // padding always contributes <AG>false
    for (const auto& l : c) d = std::max(d, l.depth());
    return d;
}

// Drops clauses that strictly contain another clause.  If that would lower
// the maximal clause depth, the deepest dropped clause is kept: it is implied
// by the clause that absorbed it, so keeping it preserves equivalence.
Cnf absorb(const Cnf& cnf) {
    std::vector<bool> dropped(cnf.size(), false);
    for (std::size_t i = 0; i < cnf.size(); ++i) {
        for (std::size_t j = 0; j < cnf.size() && !dropped[i]; ++j) {
            if (i == j || dropped[j] || cnf[j].size() >= cnf[i].size()) continue;
            if (std::includes(cnf[i].begin(), cnf[i].end(), cnf[j].begin(), cnf[j].end())) dropped[i] = true;
        }
    }
    std::size_t kept_depth = 0, all_depth = 0, deepest_dropped = cnf.size();
    for (std::size_t i = 0; i < cnf.size(); ++i) {
        const std::size_t d = clause_depth(cnf[i]);
        all_depth = std::max(all_depth, d);
        if (!dropped[i]) {
            kept_depth = std::max(kept_depth, d);
        } else if (deepest_dropped == cnf.size() || d > clause_depth(cnf[deepest_dropped])) {
            deepest_dropped = i;
        }
    }
    if (kept_depth < all_depth) dropped[deepest_dropped] = false;
    Cnf out;
    for (std::size_t i = 0; i < cnf.size(); ++i) {
        if (!dropped[i]) out.push_back(cnf[i]);
    }
    return out;
}

StandardFormula to_standard(const Clause& clause, const AgentUniverse& universe) {
    StandardFormula sf;
    for (const auto& l : clause) {
        switch (l.kind) {
            case Literal::Kind::Top:
                sf.gamma.push_back(PropLiteral::top());
                break;
            case Literal::Kind::Prop:
                sf.gamma.push_back(PropLiteral::of(l.atom, l.positive));
                break;
            case Literal::Kind::Modal:
                (l.positive ? sf.pi : sf.ni).push_back(l.modal);
                break;
        }
    }
    const ModalPair live{universe.grand(), Formula::bot()};
    if (std::find(sf.pi.begin(), sf.pi.end(), live) == sf.pi.end()) sf.pi.push_back(live);
    const ModalPair ser{Coalition::empty(), Formula::top()};
    if (!sf.ni.empty() && std::find(sf.ni.begin(), sf.ni.end(), ser) == sf.ni.end()) sf.ni.push_back(ser);
    return sf;
}

}  // namespace

std::vector<StandardFormula> to_standard_conjunction(const Formula& f, const AgentUniverse& universe) {
    if (modal_depth(f) == 0) {
        throw NormalFormError("modality-free formulas have no standard normal form");
    }
    Cnf cnf = absorb(to_cnf(f, true));
    std::vector<StandardFormula> out;
    out.reserve(cnf.size());
    for (const auto& c : cnf) out.push_back(to_standard(c, universe));
    return out;
}

Formula conjunction_of(const std::vector<StandardFormula>& clauses) {
    std::vector<Formula> parts;
    for (const auto& c : clauses) parts.push_back(c.to_formula());
    return Formula::conj_all(parts);
}

}  // namespace mcl
