#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "edgesec/diagnostics.hpp"
#include "edgesec/taxonomy.hpp"

namespace edgesec {

// GDPR-defined data-specific roles an actor can take.
enum class RoleType { DataSubject, DataController, DataProcessor, ThirdParty };

constexpr std::string_view to_string(RoleType r) {
    switch (r) {
    case RoleType::DataSubject: return "DataSubject";
    case RoleType::DataController: return "DataController";
    case RoleType::DataProcessor: return "DataProcessor";
    case RoleType::ThirdParty: return "ThirdParty";
    }
    return "";
}

inline std::optional<RoleType> role_from_string(std::string_view s) {
    if (s == "DataSubject") return RoleType::DataSubject;
    if (s == "DataController") return RoleType::DataController;
    if (s == "DataProcessor") return RoleType::DataProcessor;
    if (s == "ThirdParty") return RoleType::ThirdParty;
    return std::nullopt;
}

// A stereotype annotation as written in the source, e.g. <<5G>>. Equality
// throughout the model ignores source spans.
struct AppliedStereotype {
    std::string name;
    SourceSpan span;

    bool operator==(const AppliedStereotype& o) const { return name == o.name; }
};

struct Component {
    std::string name;
    std::optional<std::string> display_name;
    SourceSpan span;

    std::string_view effective_name() const { return display_name ? *display_name : name; }
    bool operator==(const Component& o) const {
        return name == o.name && display_name == o.display_name;
    }
};

struct Node {
    std::string name;
    std::optional<std::string> display_name;
    std::vector<AppliedStereotype> stereotypes;
    std::vector<Component> components;
    SourceSpan span;

    std::string_view effective_name() const { return display_name ? *display_name : name; }
    bool operator==(const Node& o) const {
        return name == o.name && display_name == o.display_name &&
               stereotypes == o.stereotypes && components == o.components;
    }
};

// Unordered pair of nodes linked by exactly one connection stereotype.
struct CommunicationPath {
    std::string node_a;
    std::string node_b;
    AppliedStereotype stereotype;
    SourceSpan span;

    bool operator==(const CommunicationPath& o) const {
        return node_a == o.node_a && node_b == o.node_b && stereotype == o.stereotype;
    }
};

// Directed component-to-component communication need. The stereotype list is
// kept as written; requirements_of() extracts the requirement annotations.
struct Dependency {
    std::string source;
    std::string target;
    std::vector<AppliedStereotype> stereotypes;
    SourceSpan span;

    bool operator==(const Dependency& o) const {
        return source == o.source && target == o.target && stereotypes == o.stereotypes;
    }
};

struct Attribute {
    std::string name;
    std::optional<std::string> display_name;
    SourceSpan span;

    std::string_view effective_name() const { return display_name ? *display_name : name; }
    bool operator==(const Attribute& o) const {
        return name == o.name && display_name == o.display_name;
    }
};

// One (attribute, actors...) entry of a rights/obligations tag; at least one
// actor per tuple.
struct TraceTuple {
    std::string attribute;
    std::vector<std::string> actors;

    bool operator==(const TraceTuple&) const = default;
};

struct TupleTag {
    std::vector<TraceTuple> tuples;
    SourceSpan span;

    bool operator==(const TupleTag& o) const { return tuples == o.tuples; }
};

// A class-view entry. Actor classes come from the `actor` keyword
// (actor_form) or an explicit <<Actor>> annotation; traceability classes
// carry <<DataTraceability>> plus rights/obligations tags.
struct ClassSpec {
    std::string name;
    std::optional<std::string> display_name;
    bool actor_form = false;
    std::vector<AppliedStereotype> stereotypes;
    std::vector<Attribute> attributes;
    std::set<RoleType> roles;
    std::vector<std::string> trusts;
    std::optional<TupleTag> rights;
    std::optional<TupleTag> obligations;
    SourceSpan span;

    std::string_view effective_name() const { return display_name ? *display_name : name; }
    bool operator==(const ClassSpec& o) const {
        return name == o.name && display_name == o.display_name &&
               actor_form == o.actor_form && stereotypes == o.stereotypes &&
               attributes == o.attributes && roles == o.roles && trusts == o.trusts &&
               rights == o.rights && obligations == o.obligations;
    }
};

// A named mapping from stereotypes to the threats an attacker holds against
// elements bearing them. An explicit entry, even an empty one, overrides
// anything inherited from the stereotype's parent.
struct AdversaryModel {
    std::string name;
    std::map<std::string, ThreatSet, std::less<>> mapping;
    SourceSpan span;
    std::map<std::string, SourceSpan, std::less<>> entry_spans;

    bool operator==(const AdversaryModel& o) const {
        return name == o.name && mapping == o.mapping;
    }
};

// Root container for a parsed system. Immutable after parsing; every
// analysis is a pure function of (Model, AdversaryModel).
struct Model {
    std::string name;
    StereotypeTaxonomy taxonomy;
    std::vector<Stereotype> custom_stereotypes;
    std::vector<Node> nodes;
    std::vector<CommunicationPath> paths;
    std::vector<Dependency> dependencies;
    std::vector<ClassSpec> classes;
    std::vector<AdversaryModel> adversaries;

    bool operator==(const Model& o) const {
        return name == o.name && custom_stereotypes == o.custom_stereotypes &&
               nodes == o.nodes && paths == o.paths && dependencies == o.dependencies &&
               classes == o.classes && adversaries == o.adversaries;
    }

    const Node* find_node(std::string_view n) const {
        for (const Node& node : nodes)
            if (node.name == n) return &node;
        return nullptr;
    }

    const Node* host_of(std::string_view component) const {
        for (const Node& node : nodes)
            for (const Component& c : node.components)
                if (c.name == component) return &node;
        return nullptr;
    }

    const Component* find_component(std::string_view n) const {
        for (const Node& node : nodes)
            for (const Component& c : node.components)
                if (c.name == n) return &c;
        return nullptr;
    }

    const ClassSpec* find_class(std::string_view n) const {
        for (const ClassSpec& c : classes)
            if (c.name == n) return &c;
        return nullptr;
    }

    // Lookup by identifier or display name, identifier first.
    const ClassSpec* resolve_class_ref(std::string_view text) const {
        if (const ClassSpec* c = find_class(text)) return c;
        for (const ClassSpec& c : classes)
            if (c.display_name && *c.display_name == text) return &c;
        return nullptr;
    }

    const Attribute* resolve_attribute_ref(const ClassSpec& cls, std::string_view text) const {
        for (const Attribute& a : cls.attributes)
            if (a.name == text) return &a;
        for (const Attribute& a : cls.attributes)
            if (a.display_name && *a.display_name == text) return &a;
        return nullptr;
    }

    const AdversaryModel* find_adversary(std::string_view n) const {
        for (const AdversaryModel& a : adversaries)
            if (a.name == n) return &a;
        return nullptr;
    }

    std::optional<std::string> device_stereotype(const Node& n) const {
        for (const AppliedStereotype& ap : n.stereotypes) {
            const Stereotype* st = taxonomy.find(ap.name);
            if (st && st->kind == StereotypeKind::Device) return st->name;
        }
        return std::nullopt;
    }

    bool internal_marked(const Node& n) const {
        for (const AppliedStereotype& ap : n.stereotypes) {
            const Stereotype* st = taxonomy.find(ap.name);
            if (st && st->kind == StereotypeKind::NodeMarker) return true;
        }
        return false;
    }

    RequirementSet requirements_of(const Dependency& d) const {
        RequirementSet out;
        for (const AppliedStereotype& ap : d.stereotypes)
            if (auto r = requirement_from_string(ap.name)) out.insert(*r);
        return out;
    }

    bool is_actor_class(const ClassSpec& c) const {
        if (c.actor_form) return true;
        for (const AppliedStereotype& ap : c.stereotypes) {
            const Stereotype* st = taxonomy.find(ap.name);
            if (st && st->kind == StereotypeKind::ActorMarker) return true;
        }
        return false;
    }

    bool is_traceability_class(const ClassSpec& c) const {
        for (const AppliedStereotype& ap : c.stereotypes) {
            const Stereotype* st = taxonomy.find(ap.name);
            if (st && st->kind == StereotypeKind::TraceabilityMarker) return true;
        }
        return false;
    }
};

// Most-specific-first threat lookup: the entry of the nearest ancestor
// (including the stereotype itself) wins; no entry anywhere resolves to the
// empty set. Throws TaxonomyError for unknown stereotypes and for kinds that
// cannot carry threats.
inline ThreatSet resolve_threats(const StereotypeTaxonomy& taxonomy,
                                 const AdversaryModel& adversary,
                                 std::string_view stereotype) {
    const Stereotype* st = &taxonomy.require(stereotype);
    if (!carries_threats(st->kind))
        throw TaxonomyError("stereotype <<" + st->name + ">> cannot carry threats");
    for (;;) {
        auto it = adversary.mapping.find(st->name);
        if (it != adversary.mapping.end()) return it->second;
        if (!st->parent) return {};
        st = &taxonomy.require(*st->parent);
    }
}

// A medium a dependency's data traverses: a declared communication path, or
// the interior of the node hosting both endpoints.
struct Channel {
    enum class Kind { InterNode, IntraNode };

    Kind kind = Kind::InterNode;
    std::size_t path_index = 0; // InterNode: index into Model::paths
    std::string node;           // IntraNode: hosting node identifier

    bool operator==(const Channel&) const = default;
};

// Channels over which data for source->target flows: the single intra-node
// channel when both components share a node, otherwise one channel per
// communication path linking the two hosts (declaration order). An empty
// result signals an unconnected dependency; the validator reports it.
inline std::vector<Channel> connecting_channels(const Model& m,
                                                std::string_view source_component,
                                                std::string_view target_component) {
    std::vector<Channel> out;
    const Node* a = m.host_of(source_component);
    const Node* b = m.host_of(target_component);
    if (!a || !b) return out;
    if (a == b) {
        out.push_back(Channel{Channel::Kind::IntraNode, 0, a->name});
        return out;
    }
    for (std::size_t i = 0; i < m.paths.size(); ++i) {
        const CommunicationPath& p = m.paths[i];
        bool forward = p.node_a == a->name && p.node_b == b->name;
        bool reverse = p.node_a == b->name && p.node_b == a->name;
        if (forward || reverse)
            out.push_back(Channel{Channel::Kind::InterNode, i, {}});
    }
    return out;
}

} // namespace edgesec
