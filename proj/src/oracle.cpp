// ============================================================================
// oracle.cpp: Bounded countermodel search and the differential harness
// ============================================================================

#include "mcl/oracle.hpp"

#include "mcl/decide.hpp"
#include "mcl/semantics.hpp"

#include "json.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace mcl {

// ── Bounded search ──────────────────────────────────────────────────────────

namespace {

std::vector<std::string> search_atoms(const Formula& f, const std::vector<std::string>& extra) {
    std::set<std::string> atoms(extra.begin(), extra.end());
    for (const auto& a : atoms_of(f)) atoms.insert(a);
    return {atoms.begin(), atoms.end()};
}

std::vector<std::string> numbered(const char* stem, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(stem + std::to_string(i));
    return out;
}

std::optional<StateId> first_falsifying_state(const GameModel& m, const Formula& f) {
    const auto truth = eval_all(m, f);
    for (StateId s = 0; s < truth.size(); ++s) {
        if (!truth[s]) return s;
    }
    return std::nullopt;
}

SearchResult search_exhaustive(const Formula& f, const SearchBounds& b, const std::vector<std::string>& atoms) {
    SearchResult r;
    const std::size_t n_agents = b.universe.size();
    for (std::size_t n = 1; n <= b.max_states; ++n) {
        for (std::size_t k = 1; k <= b.max_actions; ++k) {
            const auto profiles = all_profiles(n_agents, k);
            const std::size_t label_bits = n * atoms.size();
            const std::size_t edge_bits = n * profiles.size() * n;
            const std::size_t total_bits = label_bits + edge_bits;
            const std::uint64_t space =
                total_bits >= 63 ? std::numeric_limits<std::uint64_t>::max() : (std::uint64_t{1} << total_bits);
            for (std::uint64_t code = 0; code < space; ++code) {
                if (r.models_checked >= b.budget) {
                    r.truncated = true;
                    return r;
                }
                ++r.models_checked;
                GameModel m(b.universe, numbered("s", n), numbered("x", k), atoms);
                std::size_t bit = 0;
                for (StateId s = 0; s < n; ++s) {
                    for (AtomId p = 0; p < atoms.size(); ++p, ++bit) {
                        if ((code >> bit) & 1U) m.set_holds(s, p);
                    }
                }
                for (StateId s = 0; s < n; ++s) {
                    for (const auto& prof : profiles) {
                        for (StateId t = 0; t < n; ++t, ++bit) {
                            if ((code >> bit) & 1U) m.add_outcome(s, prof, t);
                        }
                    }
                }
                if (auto s = first_falsifying_state(m, f)) {
                    r.countermodel = PointedModel{std::move(m), *s};
                    return r;
                }
            }
        }
    }
    return r;
}

constexpr double kDensityLadder[] = {0.15, 0.3, 0.5, 0.75};

SearchResult search_sampled(const Formula& f, const SearchBounds& b, const std::vector<std::string>& atoms) {
    SearchResult r;
    const std::size_t samples = std::min<std::uint64_t>(b.samples, b.budget);
    r.truncated = samples < b.samples;
    for (std::size_t i = 0; i < samples; ++i) {
        std::mt19937_64 rng(b.seed + i);
        const std::size_t n = 1 + rng() % b.max_states;
        const std::size_t k = 1 + rng() % b.max_actions;
        GameModel m = random_model(b.universe, n, k, kDensityLadder[i % 4], rng(), atoms);
        ++r.models_checked;
        if (auto s = first_falsifying_state(m, f)) {
            r.countermodel = PointedModel{std::move(m), *s};
            return r;
        }
    }
    return r;
}

}  // namespace

SearchResult search_countermodel(const Formula& f, const SearchBounds& bounds) {
    if (bounds.max_states == 0 || bounds.max_actions == 0) {
        throw std::invalid_argument("search bounds need at least one state and one action");
    }
    if (!agents_of(f).subset_of(bounds.universe.grand())) {
        throw std::invalid_argument("formula mentions agents outside the search universe");
    }
    const auto atoms = search_atoms(f, bounds.atoms);
    return bounds.mode == SearchBounds::Mode::Exhaustive ? search_exhaustive(f, bounds, atoms)
                                                         : search_sampled(f, bounds, atoms);
}

// ── Random formulas ─────────────────────────────────────────────────────────

Coalition random_coalition(std::mt19937_64& rng, const AgentUniverse& universe) {
    return Coalition{rng() & universe.grand().bits()};
}

namespace {

class FormulaGen {
public:
    FormulaGen(std::mt19937_64& rng, const AgentUniverse& u, const std::vector<std::string>& atoms)
        : rng_(rng), u_(u), atoms_(atoms) {}

    Formula gen(std::size_t depth, std::size_t size) {
        if (size <= 1) return leaf();
        const std::size_t choices = depth > 0 ? 11 : 5;
        const std::size_t rest = size - 1;
        switch (rng_() % choices) {
            case 0:
                return Formula::neg(gen(depth, rest));
            case 1:
                return binary(depth, rest, Formula::conj);
            case 2:
                return binary(depth, rest, Formula::disj);
            case 3:
                return binary(depth, rest, Formula::implies);
            case 4:
                return rng_() % 4 == 0 ? binary(depth, rest, Formula::iff) : binary(depth, rest, Formula::conj);
            case 5:
            case 6:
            case 7:
                return Formula::can(random_coalition(rng_, u_), gen(depth - 1, rest));
            case 8:
                return Formula::dual(random_coalition(rng_, u_), gen(depth - 1, rest));
            case 9:
                return Formula::box(gen(depth - 1, rest));
            default:
                return Formula::dia(gen(depth - 1, rest));
        }
    }

private:
    Formula leaf() {
        const std::size_t roll = rng_() % 10;
        if (atoms_.empty() || roll == 0) return Formula::top();
        if (roll == 1) return Formula::bot();
        return Formula::atom(atoms_[rng_() % atoms_.size()]);
    }

    template <typename Make>
    Formula binary(std::size_t depth, std::size_t size, Make make) {
        const std::size_t left = size <= 1 ? 1 : 1 + rng_() % (size - 1);
        const std::size_t right = size > left ? size - left : 1;
        Formula l = gen(depth, left);
        return make(l, gen(depth, right));
    }

    std::mt19937_64& rng_;
    const AgentUniverse& u_;
    const std::vector<std::string>& atoms_;
};

}  // namespace

Formula random_formula(std::mt19937_64& rng, const AgentUniverse& universe, const std::vector<std::string>& atoms,
                       std::size_t max_depth, std::size_t max_size) {
    return FormulaGen(rng, universe, atoms).gen(max_depth, std::max<std::size_t>(max_size, 1));
}

// ── Schemes ─────────────────────────────────────────────────────────────────

namespace schemes {

Formula monotonicity_of_goals(Coalition a, const Formula& phi, const Formula& psi) {
    return Formula::implies(Formula::can(Coalition::empty(), Formula::implies(phi, psi)),
                            Formula::implies(Formula::can(a, phi), Formula::can(a, psi)));
}

Formula monotonicity_of_coalitions(Coalition a, Coalition b, const Formula& phi) {
    return Formula::implies(Formula::can(a, phi), Formula::can(b, phi));
}

Formula liveness(Coalition a) { return Formula::neg(Formula::can(a, Formula::bot())); }

Formula special_independence(Coalition a, const Formula& phi, const Formula& psi) {
    return Formula::implies(Formula::conj(Formula::can(Coalition::empty(), phi), Formula::can(a, psi)),
                            Formula::can(a, Formula::conj(phi, psi)));
}

Formula monotonicity_rule(Coalition a, Coalition b, const Formula& phi, const Formula& psi) {
    return Formula::implies(Formula::can(a, phi), Formula::can(b, psi));
}

Formula conditional_necessitation(Coalition a, const Formula& phi, const Formula& psi) {
    return Formula::implies(Formula::can(a, psi), Formula::can(Coalition::empty(), phi));
}

Formula seriality(Coalition a) { return Formula::can(a, Formula::top()); }

Formula independence(Coalition a, Coalition b, const Formula& phi, const Formula& psi) {
    return Formula::implies(Formula::conj(Formula::can(a, phi), Formula::can(b, psi)),
                            Formula::can(a | b, Formula::conj(phi, psi)));
}

Formula determinism(Coalition a, Coalition grand, const Formula& phi, const Formula& psi) {
    return Formula::implies(Formula::can(a, Formula::disj(phi, psi)),
                            Formula::disj(Formula::can(a, phi), Formula::can(grand, psi)));
}

Formula maximality(Coalition grand, const Formula& phi) {
    return Formula::implies(Formula::neg(Formula::can(Coalition::empty(), Formula::neg(phi))),
                            Formula::can(grand, phi));
}

Formula maximality_split(Coalition grand, const Formula& phi) {
    return Formula::disj(Formula::can(grand, phi), Formula::can(grand, Formula::neg(phi)));
}

}  // namespace schemes

// ── Differential harness ────────────────────────────────────────────────────

namespace {

constexpr std::size_t kStoredViolationsPerScheme = 5;

struct SchemeInstance {
    Formula formula;
    std::string label;
};

Formula random_goal(std::mt19937_64& rng, const std::vector<std::string>& atoms) {
    if (atoms.empty()) return rng() % 2 ? Formula::top() : Formula::bot();
    Formula a = Formula::atom(atoms[rng() % atoms.size()]);
    switch (rng() % 4) {
        case 0: return Formula::neg(a);
        case 1: return Formula::disj(a, Formula::atom(atoms[rng() % atoms.size()]));
        default: return a;
    }
}

std::vector<SchemeInstance> scheme_instances(Generator::Kind kind, const AgentUniverse& u,
                                             const std::vector<std::string>& atoms, std::mt19937_64& rng) {
    std::vector<SchemeInstance> out;
    const auto coalitions = u.all_coalitions();
    switch (kind) {
        case Generator::Kind::Seriality:
            for (Coalition a : coalitions) out.push_back({schemes::seriality(a), "A-Ser"});
            break;
        case Generator::Kind::Independence:
            for (Coalition a : coalitions) {
                for (Coalition b : coalitions) {
                    if (!a.disjoint_with(b)) continue;
                    out.push_back({schemes::independence(a, b, random_goal(rng, atoms), random_goal(rng, atoms)),
                                   "A-IA"});
                }
            }
            break;
        case Generator::Kind::Determinism:
            for (Coalition a : coalitions) {
                out.push_back({schemes::determinism(a, u.grand(), random_goal(rng, atoms), random_goal(rng, atoms)),
                               "A-Det"});
            }
            break;
        case Generator::Kind::RandomFormulas:
            break;
    }
    return out;
}

std::string missing_property(Generator::Kind kind, const ModelClassification& c) {
    const char* prefix = kind == Generator::Kind::Seriality      ? "not serial"
                         : kind == Generator::Kind::Independence ? "not independent"
                                                                 : "not deterministic";
    for (const auto& w : c.witnesses) {
        if (w.rfind(prefix, 0) == 0) return w;
    }
    return prefix;
}

bool property_holds(Generator::Kind kind, const ModelClassification& c) {
    switch (kind) {
        case Generator::Kind::Seriality: return c.serial;
        case Generator::Kind::Independence: return c.independent;
        case Generator::Kind::Determinism: return c.deterministic;
        case Generator::Kind::RandomFormulas: break;
    }
    return true;
}

class Harness {
public:
    explicit Harness(const DifferentialConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

    DifferentialReport run() {
        for (const auto& g : cfg_.generators) {
            if (g.kind == Generator::Kind::RandomFormulas) {
                run_formulas(g);
            } else {
                run_scheme(g);
            }
        }
        return std::move(report_);
    }

private:
    void discrepancy(std::string kind, const Formula& f, std::uint64_t seed, const PointedModel* pm,
                     std::string detail) {
        report_.discrepancies.push_back({std::move(kind), print(f, cfg_.universe), seed,
                                         pm ? serialize_pointed(*pm) : std::string(), std::move(detail)});
    }

    void run_formulas(const Generator& g) {
        Decider decider(cfg_.universe);
        for (std::size_t c = 0; c < g.count; ++c) {
            const std::uint64_t seed = rng_();
            std::mt19937_64 local(seed);
            const Formula f = random_formula(local, cfg_.universe, cfg_.atoms, g.max_depth, g.max_size);
            ++report_.formulas;

            Verdict v;
            try {
                v = decider.decide_valid(f);
            } catch (const std::exception& e) {
                discrepancy("decider-error", f, seed, nullptr, e.what());
                continue;
            }
            if (v.valid) {
                ++report_.valid;
            } else {
                ++report_.invalid;
                try {
                    v.countermodel->model.validate();
                    if (!eval(*v.countermodel, f)) {
                        ++report_.certified;
                    } else {
                        discrepancy("uncertified-countermodel", f, seed, &*v.countermodel,
                                    "countermodel satisfies the formula");
                    }
                } catch (const std::exception& e) {
                    discrepancy("uncertified-countermodel", f, seed, &*v.countermodel, e.what());
                }
            }

            SearchBounds bounds = cfg_.bounds;
            bounds.universe = cfg_.universe;
            bounds.seed = seed;
            const SearchResult sr = search_countermodel(f, bounds);
            if (sr.truncated) ++report_.oracle_truncated;
            if (sr.countermodel) {
                ++report_.oracle_refuted;
                if (v.valid) {
                    discrepancy("valid-but-refuted", f, seed, &*sr.countermodel,
                                "decider says valid but bounded search found a countermodel");
                }
            }
        }
    }

    void check_model(const Generator& g, const PointedModel& pm, bool sampled_cgm, std::uint64_t seed) {
        const ModelClassification cls = classify(pm.model);
        if (sampled_cgm && !cls.is_cgm) {
            report_.discrepancies.push_back({"generator", "", seed, serialize_pointed(pm),
                                             "random_cgm produced a model that is not a CGM"});
            return;
        }
        const bool has_property = property_holds(g.kind, cls);
        for (const auto& inst : scheme_instances(g.kind, cfg_.universe, pm.model.atoms(), rng_)) {
            ++report_.scheme_checks;
            const auto truth = eval_all(pm.model, inst.formula);
            for (StateId s = 0; s < truth.size(); ++s) {
                if (truth[s]) continue;
                PointedModel at{pm.model, s};
                const std::string text = print(inst.formula, cfg_.universe);
                if (has_property) {
                    report_.discrepancies.push_back({inst.label + (sampled_cgm ? " on CGM" : " separation"), text,
                                                     seed, serialize_pointed(at),
                                                     "scheme fails on a model whose classification has the property"});
                } else {
                    ++report_.violation_count;
                    const auto same = std::count_if(report_.violations.begin(), report_.violations.end(),
                                                    [&](const Finding& v) { return v.kind == inst.label; });
                    if (static_cast<std::size_t>(same) < kStoredViolationsPerScheme) {
                        report_.violations.push_back({inst.label, text, seed, serialize_pointed(at),
                                                      "fails at " + pm.model.states()[s] + "; " +
                                                          missing_property(g.kind, cls)});
                    }
                }
                break;
            }
        }
    }

    void run_scheme(const Generator& g) {
        std::vector<std::string> atoms = cfg_.atoms;
        if (atoms.empty()) atoms = {"p"};
        for (std::size_t c = 0; c < g.count; ++c) {
            const std::uint64_t seed = rng_();
            std::mt19937_64 local(seed);
            const std::size_t n = 1 + local() % cfg_.scheme_max_states;
            const std::size_t k = 1 + local() % cfg_.scheme_max_actions;
            const GameModel cgm = random_cgm(cfg_.universe, n, k, local(), atoms);
            ++report_.cgm_samples;
            check_model(g, PointedModel{cgm, 0}, true, seed);
            const double density = kDensityLadder[c % 4];
            const GameModel gcgm = random_model(cfg_.universe, n, k, density, local(), atoms);
            check_model(g, PointedModel{gcgm, 0}, false, seed);
        }
        for (const auto& pm : cfg_.extra_models) check_model(g, pm, false, 0);
    }

    const DifferentialConfig& cfg_;
    std::mt19937_64 rng_;
    DifferentialReport report_;
};

}  // namespace

bool DifferentialReport::empty() const noexcept {
    return formulas == 0 && scheme_checks == 0 && violation_count == 0 && discrepancies.empty();
}

std::string DifferentialReport::to_text() const {
    std::ostringstream os;
    os << "formulas: " << formulas << " (valid " << valid << ", invalid " << invalid << ", certified " << certified
       << ")\n";
    os << "oracle: refuted " << oracle_refuted << ", truncated " << oracle_truncated << "\n";
    os << "scheme checks: " << scheme_checks << " over " << cgm_samples << " sampled CGMs (plus GCGMs)\n";
    os << "violations on models lacking the property: " << violation_count << " (" << violations.size()
       << " shown)\n";
    for (const auto& v : violations) os << "  [" << v.kind << "] " << v.formula << " -- " << v.detail << "\n";
    os << "discrepancies: " << discrepancies.size() << "\n";
    for (const auto& d : discrepancies) {
        os << "  [" << d.kind << "] seed=" << d.seed << " " << d.formula << " -- " << d.detail << "\n";
        if (!d.model.empty()) os << d.model;
    }
    return os.str();
}

std::string DifferentialReport::to_json() const {
    using nlohmann::json;
    auto findings = [](const std::vector<Finding>& items) {
        json arr = json::array();
        for (const auto& f : items) {
            json item{{"kind", f.kind}, {"formula", f.formula}, {"seed", f.seed}, {"detail", f.detail}};
            if (!f.model.empty()) item["model"] = json::parse(f.model);
            arr.push_back(std::move(item));
        }
        return arr;
    };
    json doc{{"formulas", formulas},
             {"valid", valid},
             {"invalid", invalid},
             {"certified", certified},
             {"oracle_refuted", oracle_refuted},
             {"oracle_truncated", oracle_truncated},
             {"scheme_checks", scheme_checks},
             {"cgm_samples", cgm_samples},
             {"violation_count", violation_count},
             {"violations", findings(violations)},
             {"discrepancies", findings(discrepancies)},
             {"ok", ok()}};
    return doc.dump(2) + "\n";
}

DifferentialReport differential_run(const DifferentialConfig& config) { return Harness(config).run(); }

}  // namespace mcl
