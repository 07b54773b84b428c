#pragma once

#include <string>
#include <string_view>

#include "edgesec/model.hpp"

namespace edgesec {

namespace detail {

inline std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

inline void append_stereotypes(std::string& out, const std::vector<AppliedStereotype>& list) {
    for (const AppliedStereotype& st : list)
        out += " <<" + st.name + ">>";
}

inline void append_display(std::string& out, const std::optional<std::string>& display) {
    if (display) out += " " + quote(*display);
}

inline std::string tuple_string(const std::vector<TraceTuple>& tuples) {
    std::string out;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        if (i) out += ", ";
        out += "(" + tuples[i].attribute;
        for (const std::string& actor : tuples[i].actors)
            out += ", " + actor;
        out += ")";
    }
    return out;
}

} // namespace detail

// Canonical text form: custom stereotype declarations first (before any
// use), then deployment, classes, and adversaries in declaration order.
// parse_model(serialize_model(m)) reconstructs a Model structurally equal
// to m (spans aside).
inline std::string serialize_model(const Model& m) {
    std::string out = "model " + detail::quote(m.name) + " {\n";

    for (const Stereotype& st : m.custom_stereotypes)
        out += "  stereotype " + st.name + " extends " + (st.parent ? *st.parent : "") + "\n";

    if (!m.nodes.empty() || !m.paths.empty() || !m.dependencies.empty()) {
        out += "  deployment {\n";
        for (const Node& n : m.nodes) {
            out += "    node " + n.name;
            detail::append_display(out, n.display_name);
            detail::append_stereotypes(out, n.stereotypes);
            out += " {\n";
            for (const Component& c : n.components) {
                out += "      component " + c.name;
                detail::append_display(out, c.display_name);
                out += "\n";
            }
            out += "    }\n";
        }
        for (const CommunicationPath& p : m.paths)
            out += "    path " + p.node_a + " -- " + p.node_b + " <<" + p.stereotype.name + ">>\n";
        for (const Dependency& d : m.dependencies) {
            out += "    dependency " + d.source + " -> " + d.target;
            detail::append_stereotypes(out, d.stereotypes);
            out += "\n";
        }
        out += "  }\n";
    }

    if (!m.classes.empty()) {
        out += "  classes {\n";
        for (const ClassSpec& c : m.classes) {
            if (c.actor_form) {
                out += "    actor " + c.name;
                detail::append_display(out, c.display_name);
                out += " {\n";
                if (!c.roles.empty()) {
                    out += "      roles = [";
                    bool first = true;
                    for (RoleType r : c.roles) {
                        if (!first) out += ", ";
                        out += to_string(r);
                        first = false;
                    }
                    out += "]\n";
                }
                if (!c.trusts.empty()) {
                    out += "      trusts = [";
                    for (std::size_t i = 0; i < c.trusts.size(); ++i) {
                        if (i) out += ", ";
                        out += c.trusts[i];
                    }
                    out += "]\n";
                }
                out += "    }\n";
            } else {
                out += "    class " + c.name;
                detail::append_display(out, c.display_name);
                detail::append_stereotypes(out, c.stereotypes);
                out += " {\n";
                for (const Attribute& a : c.attributes) {
                    out += "      attr " + a.name;
                    detail::append_display(out, a.display_name);
                    out += "\n";
                }
                if (c.rights)
                    out += "      rights = " + detail::quote(detail::tuple_string(c.rights->tuples)) + "\n";
                if (c.obligations)
                    out += "      obligations = " +
                           detail::quote(detail::tuple_string(c.obligations->tuples)) + "\n";
                out += "    }\n";
            }
        }
        out += "  }\n";
    }

    for (const AdversaryModel& adv : m.adversaries) {
        out += "  adversary " + adv.name + " {\n";
        for (const auto& [stereo, threats] : adv.mapping) {
            out += "    <<" + stereo + ">> = {";
            bool first = true;
            for (Threat t : threats) {
                if (!first) out += ", ";
                out += to_string(t);
                first = false;
            }
            out += "}\n";
        }
        out += "  }\n";
    }

    out += "}\n";
    return out;
}

} // namespace edgesec
