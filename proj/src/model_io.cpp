// ============================================================================
// model_io.cpp: Model file format
// ============================================================================
//
//   {
//     "actions": ["w", "n"],
//     "agents": ["a", "b"],
//     "atoms": ["p"],
//     "state": "s0",                                   (optional)
//     "states": [{"label": ["p"], "name": "s0"}, ...],
//     "transitions": [{"from": "s0", "profile": {"a": "w", "b": "n"},
//                      "to": ["s1"]}, ...]
//   }
//
// Keys are emitted sorted; lists follow declaration order.
// ============================================================================

#include "mcl/model.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace mcl {

using nlohmann::json;

namespace {

json to_document(const GameModel& m, std::optional<StateId> designated) {
    json doc;
    doc["agents"] = m.universe().names();
    doc["actions"] = m.actions();
    doc["atoms"] = m.atoms();
    json states = json::array();
    for (StateId s = 0; s < m.n_states(); ++s) {
        states.push_back(json{{"name", m.states()[s]}, {"label", m.label(s)}});
    }
    doc["states"] = std::move(states);
    json transitions = json::array();
    for (StateId s = 0; s < m.n_states(); ++s) {
        for (const auto& [profile, targets] : m.transitions(s)) {
            json prof = json::object();
            for (std::size_t a = 0; a < m.n_agents(); ++a) {
                prof[m.universe().name(a)] = m.actions()[profile.moves[a]];
            }
            json to = json::array();
            for (StateId t : targets) to.push_back(m.states()[t]);
            transitions.push_back(json{{"from", m.states()[s]}, {"profile", std::move(prof)}, {"to", std::move(to)}});
        }
    }
    doc["transitions"] = std::move(transitions);
    if (designated) doc["state"] = m.states().at(*designated);
    return doc;
}

std::vector<std::string> string_list(const json& doc, const char* key, bool required) {
    if (!doc.contains(key)) {
        if (required) throw ModelError(std::string("model file lacks \"") + key + "\"");
        return {};
    }
    const json& v = doc.at(key);
    if (!v.is_array()) throw ModelError(std::string("\"") + key + "\" must be a list");
    std::vector<std::string> out;
    for (const auto& item : v) {
        if (!item.is_string()) throw ModelError(std::string("\"") + key + "\" must list strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

}  // namespace

std::string serialize_model(const GameModel& m, std::optional<StateId> designated) {
    return to_document(m, designated).dump(2) + "\n";
}

std::string serialize_pointed(const PointedModel& pm) { return serialize_model(pm.model, pm.state); }

LoadedModel parse_model(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ModelError(std::string("model file is not a valid document: ") + e.what());
    }
    if (!doc.is_object()) throw ModelError("model file must be an object");

    std::vector<std::string> agents = string_list(doc, "agents", true);
    std::vector<std::string> actions = string_list(doc, "actions", true);
    std::vector<std::string> atoms = string_list(doc, "atoms", false);

    if (!doc.contains("states") || !doc["states"].is_array()) throw ModelError("model file lacks \"states\" list");
    std::vector<std::string> state_names;
    std::vector<std::vector<std::string>> labels;
    for (const auto& st : doc["states"]) {
        if (!st.is_object() || !st.contains("name") || !st["name"].is_string()) {
            throw ModelError("every state needs a \"name\"");
        }
        state_names.push_back(st["name"].get<std::string>());
        labels.push_back(string_list(st, "label", false));
    }

    AgentUniverse universe = [&] {
        try {
            return AgentUniverse(agents);
        } catch (const std::invalid_argument& e) {
            throw ModelError(e.what());
        }
    }();
    LoadedModel loaded{GameModel(std::move(universe), std::move(state_names), std::move(actions), std::move(atoms)),
                       std::nullopt};
    GameModel& m = loaded.model;
    for (StateId s = 0; s < labels.size(); ++s) m.set_label(s, labels[s]);

    if (doc.contains("transitions")) {
        if (!doc["transitions"].is_array()) throw ModelError("\"transitions\" must be a list");
        for (const auto& tr : doc["transitions"]) {
            if (!tr.is_object() || !tr.contains("from") || !tr.contains("profile")) {
                throw ModelError("every transition needs \"from\" and \"profile\"");
            }
            const StateId from = m.state(tr["from"].get<std::string>());
            const json& prof = tr["profile"];
            if (!prof.is_object() || prof.size() != m.n_agents()) {
                throw ModelError("a profile must assign one action to every agent");
            }
            std::vector<ActionId> moves(m.n_agents(), kNoAction);
            for (const auto& [agent, action] : prof.items()) {
                auto a = m.universe().index_of(agent);
                if (!a) throw ModelError("profile names unknown agent '" + agent + "'");
                if (!action.is_string()) throw ModelError("profile actions must be strings");
                auto x = m.find_action(action.get<std::string>());
                if (!x) throw ModelError("profile names unknown action '" + action.get<std::string>() + "'");
                moves[*a] = *x;
            }
            const JointAction profile = JointAction::profile(std::move(moves));
            for (const auto& t : string_list(tr, "to", false)) m.add_outcome(from, profile, m.state(t));
        }
    }
    if (doc.contains("state")) {
        if (!doc["state"].is_string()) throw ModelError("\"state\" must be a state name");
        loaded.designated = m.state(doc["state"].get<std::string>());
    }
    m.validate();
    return loaded;
}

LoadedModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelError("cannot open model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

}  // namespace mcl
