#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "edgesec/analysis.hpp"
#include "edgesec/model.hpp"
#include "edgesec/validator.hpp"
#include "edgesec/version.hpp"

namespace edgesec {

// Rows are qualified class.attribute names, columns are actor names (both
// effective names, sorted); a cell is nonempty iff a corresponding tuple
// exists.
struct TraceabilityMatrix {
    struct Cell {
        bool rights = false;
        bool obligations = false;

        bool operator==(const Cell&) const = default;
    };

    std::vector<std::string> rows;
    std::vector<std::string> columns;
    std::map<std::pair<std::string, std::string>, Cell> cells;

    bool operator==(const TraceabilityMatrix&) const = default;
};

inline TraceabilityMatrix traceability_matrix(const Model& m) {
    TraceabilityMatrix matrix;
    std::set<std::string> rows, columns;
    for (const ClassSpec& c : m.classes) {
        struct TagRef {
            const TupleTag* tag;
            bool rights;
        };
        for (TagRef ref : {TagRef{c.rights ? &*c.rights : nullptr, true},
                           TagRef{c.obligations ? &*c.obligations : nullptr, false}}) {
            if (!ref.tag) continue;
            for (const TraceTuple& t : ref.tag->tuples) {
                const Attribute* attr = m.resolve_attribute_ref(c, t.attribute);
                if (!attr) continue;
                std::string row = std::string(c.effective_name()) + "." +
                                  std::string(attr->effective_name());
                rows.insert(row);
                for (const std::string& actor : t.actors) {
                    const ClassSpec* target = m.resolve_class_ref(actor);
                    if (!target || !m.is_actor_class(*target)) continue;
                    std::string column{target->effective_name()};
                    columns.insert(column);
                    TraceabilityMatrix::Cell& cell = matrix.cells[{row, column}];
                    if (ref.rights)
                        cell.rights = true;
                    else
                        cell.obligations = true;
                }
            }
        }
    }
    matrix.rows.assign(rows.begin(), rows.end());
    matrix.columns.assign(columns.begin(), columns.end());
    return matrix;
}

// Actor classes with their role sets, sorted by effective name.
inline std::vector<std::pair<std::string, std::set<RoleType>>> role_listing(const Model& m) {
    std::vector<std::pair<std::string, std::set<RoleType>>> out;
    for (const ClassSpec& c : m.classes)
        if (m.is_actor_class(c))
            out.emplace_back(std::string(c.effective_name()), c.roles);
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

enum class ReportFormat { Text, Json };

// Rendered bytes: text payloads are line-oriented and stable for golden-file
// testing; json payloads conform to report.schema.json and embed the tool
// version. Identical input renders to identical bytes.
struct ReportDocument {
    ReportFormat format = ReportFormat::Text;
    std::string payload;
};

namespace detail {

inline std::string threat_set_string(const ThreatSet& threats) {
    std::string out = "{";
    bool first = true;
    for (Threat t : threats) {
        if (!first) out += ", ";
        out += to_string(t);
        first = false;
    }
    out += "}";
    return out;
}

inline std::string channel_phrase(const ChannelInfo& ch) {
    if (ch.kind == Channel::Kind::InterNode)
        return "path " + ch.endpoint_a + " -- " + ch.endpoint_b;
    return "intra-node channel of " + ch.node;
}

inline std::string channel_heading(const ChannelInfo& ch) {
    if (ch.kind == Channel::Kind::InterNode)
        return "path " + ch.endpoint_a + " -- " + ch.endpoint_b + " via <<" + ch.via + ">>";
    if (ch.via.empty())
        return "intra-node " + ch.node + " (no internal marking)";
    return "intra-node " + ch.node + " via <<" + ch.via + ">>";
}

inline std::string cause_line(const CauseChain& cause) {
    std::string out = "threat " + std::string(to_string(cause.threat));
    if (cause.kind == CauseChain::Kind::Channel)
        out += " from <<" + cause.stereotype + ">> on " + channel_phrase(cause.channel);
    else
        out += " implied by physical access to node " + cause.node + " <<" + cause.stereotype + ">>";
    out += " [adversary " + cause.adversary + "]";
    return out;
}

inline nlohmann::json channel_json(const ChannelInfo& ch) {
    nlohmann::json j;
    if (ch.kind == Channel::Kind::InterNode) {
        j["kind"] = "path";
        j["endpoints"] = {ch.endpoint_a, ch.endpoint_b};
    } else {
        j["kind"] = "intra-node";
        j["node"] = ch.node;
    }
    if (!ch.via.empty()) j["via"] = ch.via;
    return j;
}

inline nlohmann::json threats_json(const ThreatSet& threats) {
    nlohmann::json arr = nlohmann::json::array();
    for (Threat t : threats)
        arr.push_back(std::string(to_string(t)));
    return arr;
}

inline nlohmann::json span_json(const SourceSpan& span) {
    return nlohmann::json{{"file", span.file},
                          {"start_line", span.start_line},
                          {"start_col", span.start_col},
                          {"end_line", span.end_line},
                          {"end_col", span.end_col}};
}

inline std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

} // namespace detail

inline ReportDocument render_analysis(const AnalysisReport& report, ReportFormat format) {
    if (format == ReportFormat::Json) {
        nlohmann::json j;
        j["document"] = "analysis";
        j["version"] = kVersion;
        j["model"] = report.model_name;
        j["adversary"] = report.adversary;
        j["exposed_nodes"] = nlohmann::json::array();
        for (const ExposedNode& n : report.exposed_nodes)
            j["exposed_nodes"].push_back(
                {{"node", n.node}, {"stereotype", n.device_stereotype}});
        j["channels"] = nlohmann::json::array();
        for (const ChannelThreatEntry& e : report.channels) {
            nlohmann::json entry;
            entry["channel"] = detail::channel_json(e.channel);
            entry["threats"] = detail::threats_json(e.threats);
            j["channels"].push_back(entry);
        }
        j["violations"] = nlohmann::json::array();
        for (const Violation& v : report.violations) {
            nlohmann::json cause;
            cause["kind"] = v.cause.kind == CauseChain::Kind::Channel ? "channel" : "node-compromise";
            if (v.cause.kind == CauseChain::Kind::Channel)
                cause["channel"] = detail::channel_json(v.cause.channel);
            else
                cause["node"] = v.cause.node;
            cause["stereotype"] = v.cause.stereotype;
            cause["threat"] = std::string(to_string(v.cause.threat));
            cause["adversary"] = v.cause.adversary;
            j["violations"].push_back({{"source", v.source},
                                       {"target", v.target},
                                       {"requirement", std::string(to_string(v.requirement))},
                                       {"cause", cause}});
        }
        return ReportDocument{format, detail::dump(j)};
    }

    std::string out = "analysis of \"" + report.model_name + "\" against adversary \"" +
                      report.adversary + "\"\n";
    if (!report.exposed_nodes.empty()) {
        out += "\nexposed nodes:\n";
        for (const ExposedNode& n : report.exposed_nodes)
            out += "  " + n.node + " <<" + n.device_stereotype + ">>\n";
    }
    if (!report.channels.empty()) {
        out += "\nchannel threats:\n";
        for (const ChannelThreatEntry& e : report.channels)
            out += "  " + detail::channel_heading(e.channel) + ": " +
                   detail::threat_set_string(e.threats) + "\n";
    }
    if (report.violations.empty()) {
        out += "\nno violations\n";
    } else {
        out += "\nviolations:\n";
        for (const Violation& v : report.violations) {
            out += "  " + std::string(to_string(v.requirement)) + " violated on " + v.source +
                   " -> " + v.target + "\n";
            out += "    cause: " + detail::cause_line(v.cause) + "\n";
        }
    }
    return ReportDocument{format, std::move(out)};
}

inline ReportDocument render_diagnostics(const std::vector<ParseDiagnostic>& parse_diags,
                                         const std::vector<ValidationDiagnostic>& validation_diags,
                                         std::string_view file, ReportFormat format) {
    if (format == ReportFormat::Json) {
        nlohmann::json j;
        j["document"] = "diagnostics";
        j["version"] = kVersion;
        j["file"] = std::string(file);
        j["diagnostics"] = nlohmann::json::array();
        for (const ParseDiagnostic& d : parse_diags) {
            nlohmann::json entry;
            entry["severity"] = to_string(d.severity);
            entry["message"] = d.message;
            entry["span"] = detail::span_json(d.span);
            j["diagnostics"].push_back(entry);
        }
        for (const ValidationDiagnostic& d : validation_diags) {
            nlohmann::json entry;
            entry["severity"] = to_string(d.severity);
            entry["code"] = d.code;
            entry["message"] = d.message;
            entry["subject"] = d.subject;
            if (d.span) entry["span"] = detail::span_json(*d.span);
            j["diagnostics"].push_back(entry);
        }
        return ReportDocument{format, detail::dump(j)};
    }

    std::string out;
    for (const ParseDiagnostic& d : parse_diags)
        out += location_string(d.span) + ": " + to_string(d.severity) + ": " + d.message + "\n";
    for (const ValidationDiagnostic& d : validation_diags) {
        if (d.span) out += location_string(*d.span) + ": ";
        out += std::string(to_string(d.severity)) + " " + d.code + ": " + d.message + "\n";
    }
    return ReportDocument{format, std::move(out)};
}

inline ReportDocument render_traceability(std::string_view model_name,
                                          const TraceabilityMatrix& matrix, ReportFormat format) {
    if (format == ReportFormat::Json) {
        nlohmann::json j;
        j["document"] = "traceability";
        j["version"] = kVersion;
        j["model"] = std::string(model_name);
        j["rows"] = matrix.rows;
        j["columns"] = matrix.columns;
        j["cells"] = nlohmann::json::array();
        for (const auto& [key, cell] : matrix.cells) {
            nlohmann::json marks = nlohmann::json::array();
            if (cell.rights) marks.push_back("rights");
            if (cell.obligations) marks.push_back("obligations");
            j["cells"].push_back({{"row", key.first}, {"column", key.second}, {"marks", marks}});
        }
        return ReportDocument{format, detail::dump(j)};
    }

    std::string out = "traceability matrix for \"" + std::string(model_name) + "\"\n";
    if (matrix.cells.empty()) {
        out += "  (none)\n";
    } else {
        for (const auto& [key, cell] : matrix.cells) {
            std::string marks;
            if (cell.rights) marks += "rights";
            if (cell.obligations) marks += marks.empty() ? "obligations" : ", obligations";
            out += "  " + key.first + " | " + key.second + ": " + marks + "\n";
        }
    }
    return ReportDocument{format, std::move(out)};
}

inline ReportDocument render_trust(std::string_view model_name,
                                   const std::vector<std::pair<std::string, std::string>>& pairs,
                                   ReportFormat format) {
    std::vector<std::pair<std::string, std::string>> sorted = pairs;
    std::stable_sort(sorted.begin(), sorted.end());
    if (format == ReportFormat::Json) {
        nlohmann::json j;
        j["document"] = "trust";
        j["version"] = kVersion;
        j["model"] = std::string(model_name);
        j["pairs"] = nlohmann::json::array();
        for (const auto& [actor, trusted] : sorted)
            j["pairs"].push_back({{"actor", actor}, {"trusts", trusted}});
        return ReportDocument{format, detail::dump(j)};
    }

    std::string out = "trust relations in \"" + std::string(model_name) + "\"\n";
    if (sorted.empty()) {
        out += "  (none)\n";
    } else {
        for (const auto& [actor, trusted] : sorted)
            out += "  " + actor + " -> " + trusted + "\n";
    }
    return ReportDocument{format, std::move(out)};
}

inline ReportDocument render_roles(
    std::string_view model_name,
    const std::vector<std::pair<std::string, std::set<RoleType>>>& listing, ReportFormat format) {
    if (format == ReportFormat::Json) {
        nlohmann::json j;
        j["document"] = "roles";
        j["version"] = kVersion;
        j["model"] = std::string(model_name);
        j["actors"] = nlohmann::json::array();
        for (const auto& [actor, roles] : listing) {
            nlohmann::json role_array = nlohmann::json::array();
            for (RoleType r : roles)
                role_array.push_back(std::string(to_string(r)));
            j["actors"].push_back({{"actor", actor}, {"roles", role_array}});
        }
        return ReportDocument{format, detail::dump(j)};
    }

    std::string out = "roles in \"" + std::string(model_name) + "\"\n";
    if (listing.empty()) {
        out += "  (none)\n";
    } else {
        for (const auto& [actor, roles] : listing) {
            out += "  " + actor + ": ";
            if (roles.empty()) {
                out += "(none)";
            } else {
                bool first = true;
                for (RoleType r : roles) {
                    if (!first) out += ", ";
                    out += to_string(r);
                    first = false;
                }
            }
            out += "\n";
        }
    }
    return ReportDocument{format, std::move(out)};
}

} // namespace edgesec
