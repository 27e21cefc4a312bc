// ============================================================================
// formula.cpp: Formula nodes, sugar lowering, measures and printing
// ============================================================================

#include "mcl/formula.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

namespace mcl {

// ── Coalition / AgentUniverse ───────────────────────────────────────────────

std::size_t Coalition::size() const noexcept {
    return static_cast<std::size_t>(std::popcount(bits_));
}

std::vector<std::size_t> Coalition::members() const {
    std::vector<std::size_t> out;
    for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(rest)));
    }
    return out;
}

AgentUniverse::AgentUniverse(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) {
        throw std::invalid_argument("agent universe must be nonempty");
    }
    if (names_.size() > Coalition::kMaxAgents) {
        throw std::invalid_argument("at most 64 agents are supported");
    }
    std::unordered_set<std::string> seen;
    for (const auto& n : names_) {
        if (!seen.insert(n).second) {
            throw std::invalid_argument("duplicate agent name '" + n + "'");
        }
    }
}

std::optional<std::size_t> AgentUniverse::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return i;
    }
    return std::nullopt;
}

Coalition AgentUniverse::coalition(const std::vector<std::string>& members) const {
    Coalition c;
    for (const auto& m : members) {
        auto idx = index_of(m);
        if (!idx) throw std::invalid_argument("unknown agent '" + m + "'");
        c = c.with(*idx);
    }
    return c;
}

std::string AgentUniverse::format(Coalition c) const {
    std::string out = "{";
    bool first = true;
    for (std::size_t i : c.members()) {
        if (!first) out += ',';
        out += i < names_.size() ? names_[i] : "#" + std::to_string(i);
        first = false;
    }
    out += '}';
    return out;
}

std::vector<Coalition> AgentUniverse::all_coalitions() const {
    std::vector<Coalition> out;
    const std::uint64_t n = std::uint64_t{1} << names_.size();
    out.reserve(n);
    for (std::uint64_t bits = 0; bits < n; ++bits) out.emplace_back(bits);
    return out;
}

// ── Formula nodes ───────────────────────────────────────────────────────────

struct Formula::Node {
    Kind kind = Kind::Top;
    std::string name;
    Coalition coalition;
    Formula lhs;
    Formula rhs;
};

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula::Formula() : Formula(top()) {}

Formula Formula::top() {
    // Formula's default constructor is Top, so the shared Top node must be
    // built without recursing into it.
    static const std::shared_ptr<const Node> shared = [] {
        auto n = std::shared_ptr<Node>(new Node{Kind::Top, {}, {}, Formula(nullptr), Formula(nullptr)});
        return std::shared_ptr<const Node>(std::move(n));
    }();
    return Formula(shared);
}

Formula Formula::atom(std::string name) {
    return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(name), {}, top(), top()}));
}

Formula Formula::neg(Formula f) {
    return Formula(std::make_shared<const Node>(Node{Kind::Neg, {}, {}, std::move(f), top()}));
}

Formula Formula::conj(Formula lhs, Formula rhs) {
    return Formula(std::make_shared<const Node>(Node{Kind::And, {}, {}, std::move(lhs), std::move(rhs)}));
}

Formula Formula::can(Coalition coalition, Formula f) {
    return Formula(std::make_shared<const Node>(Node{Kind::Can, {}, coalition, std::move(f), top()}));
}

Formula Formula::bot() { return neg(top()); }

Formula Formula::disj(Formula lhs, Formula rhs) {
    return neg(conj(neg(std::move(lhs)), neg(std::move(rhs))));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
    return neg(conj(std::move(lhs), neg(std::move(rhs))));
}

Formula Formula::iff(Formula lhs, Formula rhs) {
    return conj(implies(lhs, rhs), implies(rhs, lhs));
}

Formula Formula::dual(Coalition coalition, Formula f) {
    return neg(can(coalition, neg(std::move(f))));
}

Formula Formula::box(Formula f) {
    return implies(can(Coalition::empty(), top()), can(Coalition::empty(), std::move(f)));
}

Formula Formula::dia(Formula f) {
    return conj(can(Coalition::empty(), top()), dual(Coalition::empty(), std::move(f)));
}

Formula Formula::conj_all(const std::vector<Formula>& fs) {
    if (fs.empty()) return top();
    Formula acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
    return acc;
}

Formula Formula::disj_all(const std::vector<Formula>& fs) {
    if (fs.empty()) return bot();
    Formula acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
    return acc;
}

Formula::Kind Formula::kind() const noexcept { return node_->kind; }

bool Formula::is_bot() const noexcept {
    return kind() == Kind::Neg && node_->lhs.is_top();
}

const std::string& Formula::name() const {
    if (kind() != Kind::Atom) throw std::logic_error("Formula::name on non-atom");
    return node_->name;
}

const Formula& Formula::child() const {
    if (kind() != Kind::Neg && kind() != Kind::And && kind() != Kind::Can) {
        throw std::logic_error("Formula::child on leaf");
    }
    return node_->lhs;
}

const Formula& Formula::rhs() const {
    if (kind() != Kind::And) throw std::logic_error("Formula::rhs on non-conjunction");
    return node_->rhs;
}

Coalition Formula::coalition() const {
    if (kind() != Kind::Can) throw std::logic_error("Formula::coalition on non-modality");
    return node_->coalition;
}

std::strong_ordering Formula::operator<=>(const Formula& other) const {
    if (node_ == other.node_) return std::strong_ordering::equal;
    const Node& a = *node_;
    const Node& b = *other.node_;
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    switch (a.kind) {
        case Kind::Top:
            return std::strong_ordering::equal;
        case Kind::Atom:
            return a.name <=> b.name;
        case Kind::Neg:
            return a.lhs <=> b.lhs;
        case Kind::Can:
            if (auto c = a.coalition <=> b.coalition; c != 0) return c;
            return a.lhs <=> b.lhs;
        case Kind::And:
            if (auto c = a.lhs <=> b.lhs; c != 0) return c;
            return a.rhs <=> b.rhs;
    }
    return std::strong_ordering::equal;
}

bool Formula::operator==(const Formula& other) const {
    return (*this <=> other) == std::strong_ordering::equal;
}

// ── Measures ────────────────────────────────────────────────────────────────

std::size_t modal_depth(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Top:
        case Formula::Kind::Atom:
            return 0;
        case Formula::Kind::Neg:
            return modal_depth(f.child());
        case Formula::Kind::And:
            return std::max(modal_depth(f.lhs()), modal_depth(f.rhs()));
        case Formula::Kind::Can:
            return 1 + modal_depth(f.child());
    }
    return 0;
}

std::size_t formula_size(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Top:
        case Formula::Kind::Atom:
            return 1;
        case Formula::Kind::Neg:
        case Formula::Kind::Can:
            return 1 + formula_size(f.child());
        case Formula::Kind::And:
            return 1 + formula_size(f.lhs()) + formula_size(f.rhs());
    }
    return 1;
}

namespace {

void collect_atoms(const Formula& f, std::set<std::string>& out) {
    switch (f.kind()) {
        case Formula::Kind::Top:
            return;
        case Formula::Kind::Atom:
            out.insert(f.name());
            return;
        case Formula::Kind::Neg:
        case Formula::Kind::Can:
            collect_atoms(f.child(), out);
            return;
        case Formula::Kind::And:
            collect_atoms(f.lhs(), out);
            collect_atoms(f.rhs(), out);
            return;
    }
}

void flatten_conj(const Formula& f, std::vector<Formula>& out) {
    if (f.kind() == Formula::Kind::And) {
        flatten_conj(f.lhs(), out);
        flatten_conj(f.rhs(), out);
    } else {
        out.push_back(f);
    }
}

void write_key(const Formula& f, std::string& out) {
    switch (f.kind()) {
        case Formula::Kind::Top:
            out += 'T';
            return;
        case Formula::Kind::Atom:
            out += '"';
            out += f.name();
            out += '"';
            return;
        case Formula::Kind::Neg:
            out += "~";
            write_key(f.child(), out);
            return;
        case Formula::Kind::Can:
            out += "<" + std::to_string(f.coalition().bits()) + ">";
            write_key(f.child(), out);
            return;
        case Formula::Kind::And: {
            std::vector<Formula> parts;
            flatten_conj(f, parts);
            std::vector<std::string> keys;
            keys.reserve(parts.size());
            for (const auto& p : parts) {
                std::string k;
                write_key(p, k);
                keys.push_back(std::move(k));
            }
            std::sort(keys.begin(), keys.end());
            out += "&(";
            for (std::size_t i = 0; i < keys.size(); ++i) {
                if (i) out += ',';
                out += keys[i];
            }
            out += ')';
            return;
        }
    }
}

Coalition collect_agents(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Top:
        case Formula::Kind::Atom:
            return {};
        case Formula::Kind::Neg:
            return collect_agents(f.child());
        case Formula::Kind::Can:
            return f.coalition() | collect_agents(f.child());
        case Formula::Kind::And:
            return collect_agents(f.lhs()) | collect_agents(f.rhs());
    }
    return {};
}

}  // namespace

std::set<std::string> atoms_of(const Formula& f) {
    std::set<std::string> out;
    collect_atoms(f, out);
    return out;
}

Coalition agents_of(const Formula& f) { return collect_agents(f); }

std::string canonical_key(const Formula& f) {
    std::string out;
    write_key(f, out);
    return out;
}

// ── Printing ────────────────────────────────────────────────────────────────
// Unary operators bind tighter than &, and & is parsed left-associatively,
// so only a conjunction under a unary operator or in right position of
// another conjunction needs parentheses.

namespace {

void print_into(const Formula& f, const AgentUniverse& u, std::string& out);

void print_operand(const Formula& f, const AgentUniverse& u, std::string& out) {
    if (f.kind() == Formula::Kind::And) {
        out += '(';
        print_into(f, u, out);
        out += ')';
    } else {
        print_into(f, u, out);
    }
}

void print_into(const Formula& f, const AgentUniverse& u, std::string& out) {
    switch (f.kind()) {
        case Formula::Kind::Top:
            out += "true";
            return;
        case Formula::Kind::Atom:
            out += f.name();
            return;
        case Formula::Kind::Neg:
            if (f.child().is_top()) {
                out += "false";
                return;
            }
            out += '~';
            print_operand(f.child(), u, out);
            return;
        case Formula::Kind::Can:
            out += '<';
            out += u.format(f.coalition());
            out += '>';
            print_operand(f.child(), u, out);
            return;
        case Formula::Kind::And:
            print_into(f.lhs(), u, out);
            out += " & ";
            print_operand(f.rhs(), u, out);
            return;
    }
}

}  // namespace

std::string print(const Formula& f, const AgentUniverse& universe) {
    std::string out;
    print_into(f, universe, out);
    return out;
}

}  // namespace mcl
