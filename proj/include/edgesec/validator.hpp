#pragma once

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "edgesec/model.hpp"

namespace edgesec {

// Well-formedness rules for a parsed model. Error codes (V...) block
// analysis; warning codes (W...) are lints. Codes and messages are stable;
// see docs/diagnostics.md.
//
//   V001  connection stereotype applied to something other than a path
//   V002  device or internal stereotype applied to something other than a node
//   V003  requirement stereotype applied to something other than a dependency
//   V004  Actor/DataTraceability stereotype applied to something other than a class
//   V005  rights/obligations tag on a class without <<DataTraceability>>
//   V006  tuple attribute is not an attribute of the annotated class
//   V007  tuple actor does not name an Actor class
//   V008  trusts entry does not name an Actor class
//   V009  dependency has no connecting channel
//   V010  adversary maps threats to a stereotype kind that cannot carry them
//   V011  'access' mapped to a non-device stereotype
//   V012  read/insert/delete mapped to a device stereotype
//   V013  path endpoint does not name a node
//   V014  dependency endpoint does not name a deployed component
//   V015  node carries more than one device stereotype
//   W001  actor trusts itself
//   W002  duplicate tuples for the same attribute within one tag
//   W003  obligations holder lacks the DataController/DataProcessor role
//   W004  dependency carries no protection requirements
inline std::vector<ValidationDiagnostic> validate(const Model& m) {
    std::vector<ValidationDiagnostic> out;

    auto emit = [&](std::string code, Severity sev, std::string message, std::string subject,
                    const SourceSpan& span) {
        out.push_back(ValidationDiagnostic{std::move(code), sev, std::move(message),
                                           std::move(subject), span});
    };

    auto misapplied = [&](const AppliedStereotype& ap, StereotypeKind kind,
                          std::string_view element, std::string subject,
                          const SourceSpan& span) {
        std::string st = "<<" + ap.name + ">>";
        switch (kind) {
        case StereotypeKind::Connection:
            emit("V001", Severity::Error,
                 "connection stereotype " + st + " cannot be applied to a " +
                     std::string(element) + "; it belongs on communication paths",
                 std::move(subject), span);
            break;
        case StereotypeKind::Device:
        case StereotypeKind::NodeMarker:
            emit("V002", Severity::Error,
                 st + " cannot be applied to a " + std::string(element) +
                     "; device and internal stereotypes belong on nodes",
                 std::move(subject), span);
            break;
        case StereotypeKind::Requirement:
            emit("V003", Severity::Error,
                 "requirement stereotype " + st + " cannot be applied to a " +
                     std::string(element) + "; it belongs on dependencies",
                 std::move(subject), span);
            break;
        case StereotypeKind::ActorMarker:
        case StereotypeKind::TraceabilityMarker:
            emit("V004", Severity::Error,
                 st + " cannot be applied to a " + std::string(element) +
                     "; it belongs on classes",
                 std::move(subject), span);
            break;
        }
    };

    // Stereotype applicability on nodes, plus the one-device-stereotype rule.
    for (const Node& n : m.nodes) {
        std::string subject = "node " + n.name;
        int device_count = 0;
        for (const AppliedStereotype& ap : n.stereotypes) {
            const Stereotype& st = m.taxonomy.require(ap.name);
            if (st.kind == StereotypeKind::Device) {
                ++device_count;
            } else if (st.kind != StereotypeKind::NodeMarker) {
                misapplied(ap, st.kind, "node", subject, ap.span);
            }
        }
        if (device_count > 1)
            emit("V015", Severity::Error,
                 "node '" + n.name + "' carries " + std::to_string(device_count) +
                     " device stereotypes; at most one is allowed",
                 subject, n.span);
    }

    // Paths: applicability plus endpoint resolution.
    for (const CommunicationPath& p : m.paths) {
        std::string subject = "path " + p.node_a + " -- " + p.node_b;
        const Stereotype& st = m.taxonomy.require(p.stereotype.name);
        if (st.kind != StereotypeKind::Connection)
            misapplied(p.stereotype, st.kind, "path", subject, p.stereotype.span);
        for (const std::string* end : {&p.node_a, &p.node_b})
            if (!m.find_node(*end))
                emit("V013", Severity::Error,
                     "path endpoint '" + *end + "' does not name a node", subject, p.span);
    }

    // Dependencies: applicability, endpoint resolution, connectivity, W004.
    for (const Dependency& d : m.dependencies) {
        std::string subject = "dependency " + d.source + " -> " + d.target;
        for (const AppliedStereotype& ap : d.stereotypes) {
            const Stereotype& st = m.taxonomy.require(ap.name);
            if (st.kind != StereotypeKind::Requirement)
                misapplied(ap, st.kind, "dependency", subject, ap.span);
        }
        bool endpoints_ok = true;
        for (const std::string* end : {&d.source, &d.target}) {
            if (!m.host_of(*end)) {
                emit("V014", Severity::Error,
                     "dependency endpoint '" + *end + "' does not name a deployed component",
                     subject, d.span);
                endpoints_ok = false;
            }
        }
        if (endpoints_ok && connecting_channels(m, d.source, d.target).empty()) {
            emit("V009", Severity::Error,
                 "no communication path connects the nodes hosting '" + d.source + "' and '" +
                     d.target + "'",
                 subject, d.span);
        }
        if (m.requirements_of(d).empty())
            emit("W004", Severity::Warning,
                 "dependency '" + d.source + " -> " + d.target +
                     "' carries no protection requirements",
                 subject, d.span);
    }

    // Classes: applicability, tuple tags, trust edges.
    std::set<std::string> obligations_warned;
    for (const ClassSpec& c : m.classes) {
        std::string subject = (c.actor_form ? "actor " : "class ") + c.name;
        for (const AppliedStereotype& ap : c.stereotypes) {
            const Stereotype& st = m.taxonomy.require(ap.name);
            if (st.kind != StereotypeKind::ActorMarker &&
                st.kind != StereotypeKind::TraceabilityMarker)
                misapplied(ap, st.kind, "class", subject, ap.span);
        }

        bool traceability = m.is_traceability_class(c);
        struct TagRef {
            const TupleTag* tag;
            const char* name;
        };
        for (TagRef ref : {TagRef{c.rights ? &*c.rights : nullptr, "rights"},
                           TagRef{c.obligations ? &*c.obligations : nullptr, "obligations"}}) {
            if (!ref.tag) continue;
            if (!traceability)
                emit("V005", Severity::Error,
                     "class '" + c.name + "' has a " + ref.name +
                         " tag but no <<DataTraceability>> stereotype",
                     subject, ref.tag->span);
            std::set<std::string> seen_attrs;
            for (const TraceTuple& t : ref.tag->tuples) {
                const Attribute* attr = m.resolve_attribute_ref(c, t.attribute);
                if (!attr) {
                    emit("V006", Severity::Error,
                         "unknown attribute '" + t.attribute + "' in " + ref.name +
                             " tuple of class '" + c.name + "'",
                         subject, ref.tag->span);
                } else if (!seen_attrs.insert(attr->name).second) {
                    emit("W002", Severity::Warning,
                         "attribute '" + t.attribute + "' appears in more than one " +
                             ref.name + " tuple of class '" + c.name + "'",
                         subject, ref.tag->span);
                }
                for (const std::string& actor : t.actors) {
                    const ClassSpec* target = m.resolve_class_ref(actor);
                    if (!target || !m.is_actor_class(*target)) {
                        emit("V007", Severity::Error,
                             std::string("tuple actor '") + actor + "' in " + ref.name +
                                 " of class '" + c.name + "' " +
                                 (target ? "is not an Actor class" : "does not name a class"),
                             subject, ref.tag->span);
                    } else if (ref.tag == (c.obligations ? &*c.obligations : nullptr)) {
                        bool responsible = target->roles.count(RoleType::DataController) ||
                                           target->roles.count(RoleType::DataProcessor);
                        if (!responsible && obligations_warned.insert(target->name).second)
                            emit("W003", Severity::Warning,
                                 "actor '" + std::string(target->effective_name()) +
                                     "' holds obligations but has neither the DataController "
                                     "nor the DataProcessor role",
                                 "actor " + target->name, ref.tag->span);
                    }
                }
            }
        }

        for (const std::string& trusted : c.trusts) {
            const ClassSpec* target = m.find_class(trusted);
            if (!target || !m.is_actor_class(*target)) {
                emit("V008", Severity::Error,
                     "trusts entry '" + trusted + "' of actor '" + c.name + "' " +
                         (target ? "is not an Actor class" : "does not name a class"),
                     subject, c.span);
            } else if (trusted == c.name) {
                emit("W001", Severity::Warning, "actor '" + c.name + "' trusts itself",
                     subject, c.span);
            }
        }
    }

    // Adversary threat placement.
    for (const AdversaryModel& adv : m.adversaries) {
        for (const auto& [stereo, threats] : adv.mapping) {
            std::string subject = "adversary " + adv.name + " <<" + stereo + ">>";
            auto span_it = adv.entry_spans.find(stereo);
            const SourceSpan& span = span_it != adv.entry_spans.end() ? span_it->second : adv.span;
            const Stereotype& st = m.taxonomy.require(stereo);
            if (!carries_threats(st.kind)) {
                emit("V010", Severity::Error,
                     std::string(to_string(st.kind)) + " stereotype <<" + stereo +
                         ">> cannot carry threats",
                     subject, span);
                continue;
            }
            bool has_access = threats.count(Threat::Access) > 0;
            bool has_rid = threats.count(Threat::Read) || threats.count(Threat::Insert) ||
                           threats.count(Threat::Delete);
            if (st.kind == StereotypeKind::Device) {
                if (has_rid)
                    emit("V012", Severity::Error,
                         "only 'access' may be mapped to device stereotype <<" + stereo + ">>",
                         subject, span);
            } else if (has_access) {
                emit("V011", Severity::Error,
                     "'access' may only be mapped to device stereotypes, not <<" + stereo + ">>",
                     subject, span);
            }
        }
    }

    return out;
}

inline bool has_errors(const std::vector<ValidationDiagnostic>& diagnostics) {
    for (const ValidationDiagnostic& d : diagnostics)
        if (d.severity == Severity::Error) return true;
    return false;
}

// The direct trust relation exactly as declared, as (actor, trusted actor)
// pairs of effective names. No transitive closure is computed: trust is
// directed and non-transitive.
inline std::vector<std::pair<std::string, std::string>> trust_closure_report(const Model& m) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const ClassSpec& c : m.classes) {
        if (!m.is_actor_class(c)) continue;
        for (const std::string& trusted : c.trusts) {
            const ClassSpec* target = m.find_class(trusted);
            if (target)
                pairs.emplace_back(std::string(c.effective_name()),
                                   std::string(target->effective_name()));
        }
    }
    return pairs;
}

} // namespace edgesec
