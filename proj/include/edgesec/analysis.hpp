#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "edgesec/model.hpp"

namespace edgesec {

struct AnalysisError : std::logic_error {
    using std::logic_error::logic_error;
};

struct UnknownAdversaryError : std::runtime_error {
    std::vector<std::string> available;

    UnknownAdversaryError(std::string_view name, std::vector<std::string> names)
        : std::runtime_error("unknown adversary '" + std::string(name) + "'"),
          available(std::move(names)) {}
};

// Channel identity materialized for reporting: path channels carry their
// endpoints in sorted order (analysis results are invariant under endpoint
// swap), intra-node channels carry the hosting node. `via` is the stereotype
// the threat set resolves through; empty for intra-node channels on nodes
// without <<internal>>.
struct ChannelInfo {
    Channel::Kind kind = Channel::Kind::InterNode;
    std::string endpoint_a;
    std::string endpoint_b;
    std::string node;
    std::string via;

    bool operator==(const ChannelInfo&) const = default;
};

// Full explanation of a violation: either a channel whose resolved threat
// set contains the paired threat, or physical access to an endpoint's host.
// Always names the stereotype whose threat set produced the threat.
struct CauseChain {
    enum class Kind { Channel, NodeCompromise };

    Kind kind = Kind::Channel;
    ChannelInfo channel;    // Kind::Channel
    std::string node;       // Kind::NodeCompromise: compromised host
    std::string stereotype; // producing stereotype
    Threat threat = Threat::Read;
    std::string adversary;

    bool operator==(const CauseChain&) const = default;
};

struct Violation {
    std::string source;
    std::string target;
    Requirement requirement = Requirement::Secrecy;
    CauseChain cause;

    bool operator==(const Violation&) const = default;
};

struct ChannelThreatEntry {
    ChannelInfo channel;
    ThreatSet threats;

    bool operator==(const ChannelThreatEntry&) const = default;
};

struct ExposedNode {
    std::string node;
    std::string device_stereotype;

    bool operator==(const ExposedNode&) const = default;
};

struct AnalysisReport {
    std::string model_name;
    std::string adversary;
    std::vector<ExposedNode> exposed_nodes;      // sorted by node name
    std::vector<ChannelThreatEntry> channels;    // paths first, then intra-node
    std::vector<Violation> violations;           // sorted by (source, target, requirement)

    bool operator==(const AnalysisReport&) const = default;
};

// Threats an adversary holds against data on a channel: path channels
// resolve the connection stereotype; intra-node channels resolve <<internal>>
// when the node opted in, and are trusted (empty set) otherwise.
inline ThreatSet effective_threats(const Model& m, const AdversaryModel& adv, const Channel& ch) {
    if (ch.kind == Channel::Kind::InterNode)
        return resolve_threats(m.taxonomy, adv, m.paths[ch.path_index].stereotype.name);
    const Node* node = m.find_node(ch.node);
    if (!node) return {};
    return m.internal_marked(*node) ? resolve_threats(m.taxonomy, adv, "internal") : ThreatSet{};
}

// A node is compromised iff it has a device stereotype whose resolved threat
// set contains 'access'.
inline bool node_compromised(const Model& m, const AdversaryModel& adv, const Node& n) {
    auto device = m.device_stereotype(n);
    if (!device) return false;
    return resolve_threats(m.taxonomy, adv, *device).count(Threat::Access) > 0;
}

namespace detail {

inline ChannelInfo materialize_channel(const Model& m, const Channel& ch) {
    ChannelInfo info;
    info.kind = ch.kind;
    if (ch.kind == Channel::Kind::InterNode) {
        const CommunicationPath& p = m.paths[ch.path_index];
        const Node* a = m.find_node(p.node_a);
        const Node* b = m.find_node(p.node_b);
        std::string ea{a ? a->effective_name() : std::string_view(p.node_a)};
        std::string eb{b ? b->effective_name() : std::string_view(p.node_b)};
        if (eb < ea) std::swap(ea, eb);
        info.endpoint_a = std::move(ea);
        info.endpoint_b = std::move(eb);
        info.via = p.stereotype.name;
    } else {
        const Node* n = m.find_node(ch.node);
        info.node = std::string(n ? n->effective_name() : std::string_view(ch.node));
        if (n && m.internal_marked(*n)) info.via = "internal";
    }
    return info;
}

} // namespace detail

// Checks every requirement of a dependency against the adversary, worst-case
// over all connecting channels. A requirement is violated iff its paired
// threat lies in T(ch) = effective_threats(ch) ∪ {read, insert, delete when
// either endpoint's host is compromised} for any channel. One violation is
// reported per requirement, citing the first violating channel; the channel's
// own stereotype is preferred as cause over node compromise.
inline std::vector<Violation> check_dependency(const Model& m, const AdversaryModel& adv,
                                               const Dependency& d) {
    std::vector<Channel> channels = connecting_channels(m, d.source, d.target);
    if (channels.empty())
        throw AnalysisError("dependency '" + d.source + " -> " + d.target +
                            "' has no connecting channel");

    const Node* source_host = m.host_of(d.source);
    const Node* target_host = m.host_of(d.target);
    const Node* compromised = nullptr;
    if (node_compromised(m, adv, *source_host))
        compromised = source_host;
    else if (node_compromised(m, adv, *target_host))
        compromised = target_host;

    std::vector<ThreatSet> channel_threats;
    channel_threats.reserve(channels.size());
    for (const Channel& ch : channels)
        channel_threats.push_back(effective_threats(m, adv, ch));

    const Component* source = m.find_component(d.source);
    const Component* target = m.find_component(d.target);
    std::string source_name{source ? source->effective_name() : std::string_view(d.source)};
    std::string target_name{target ? target->effective_name() : std::string_view(d.target)};

    std::vector<Violation> out;
    for (Requirement r : m.requirements_of(d)) {
        Threat t = paired_threat(r);
        for (std::size_t i = 0; i < channels.size(); ++i) {
            bool from_channel = channel_threats[i].count(t) > 0;
            if (!from_channel && !compromised) continue;
            CauseChain cause;
            cause.threat = t;
            cause.adversary = adv.name;
            if (from_channel) {
                cause.kind = CauseChain::Kind::Channel;
                cause.channel = detail::materialize_channel(m, channels[i]);
                cause.stereotype = cause.channel.via;
            } else {
                cause.kind = CauseChain::Kind::NodeCompromise;
                cause.node = std::string(compromised->effective_name());
                cause.stereotype = *m.device_stereotype(*compromised);
            }
            out.push_back(Violation{source_name, target_name, r, std::move(cause)});
            break;
        }
    }
    return out;
}

// Runs the full adversary analysis: node exposure, the per-channel threat
// table (every declared path plus the intra-node channel of every node with
// at least two components), and every dependency's violations. Output
// ordering is deterministic.
inline AnalysisReport analyze(const Model& m, std::string_view adversary_name) {
    const AdversaryModel* adv = m.find_adversary(adversary_name);
    if (!adv) {
        std::vector<std::string> names;
        for (const AdversaryModel& a : m.adversaries)
            names.push_back(a.name);
        throw UnknownAdversaryError(adversary_name, std::move(names));
    }

    AnalysisReport report;
    report.model_name = m.name;
    report.adversary = adv->name;

    for (const Node& n : m.nodes)
        if (node_compromised(m, *adv, n))
            report.exposed_nodes.push_back(
                ExposedNode{std::string(n.effective_name()), *m.device_stereotype(n)});
    std::stable_sort(report.exposed_nodes.begin(), report.exposed_nodes.end(),
                     [](const ExposedNode& a, const ExposedNode& b) { return a.node < b.node; });

    for (std::size_t i = 0; i < m.paths.size(); ++i) {
        Channel ch{Channel::Kind::InterNode, i, {}};
        report.channels.push_back(
            ChannelThreatEntry{detail::materialize_channel(m, ch), effective_threats(m, *adv, ch)});
    }
    for (const Node& n : m.nodes) {
        if (n.components.size() < 2) continue;
        Channel ch{Channel::Kind::IntraNode, 0, n.name};
        report.channels.push_back(
            ChannelThreatEntry{detail::materialize_channel(m, ch), effective_threats(m, *adv, ch)});
    }
    std::stable_sort(report.channels.begin(), report.channels.end(),
                     [](const ChannelThreatEntry& a, const ChannelThreatEntry& b) {
                         auto key = [](const ChannelThreatEntry& e) {
                             return std::tuple(e.channel.kind == Channel::Kind::IntraNode ? 1 : 0,
                                               e.channel.endpoint_a, e.channel.endpoint_b,
                                               e.channel.via, e.channel.node);
                         };
                         return key(a) < key(b);
                     });

    for (const Dependency& d : m.dependencies) {
        std::vector<Violation> found = check_dependency(m, *adv, d);
        report.violations.insert(report.violations.end(), found.begin(), found.end());
    }
    std::stable_sort(report.violations.begin(), report.violations.end(),
                     [](const Violation& a, const Violation& b) {
                         return std::tuple(a.source, a.target, a.requirement) <
                                std::tuple(b.source, b.target, b.requirement);
                     });

    return report;
}

} // namespace edgesec
