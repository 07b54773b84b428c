#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace edgesec {

// Threat capabilities an adversary may hold against a stereotyped element.
enum class Threat { Read, Insert, Delete, Access };

// Protection requirements a dependency may carry.
enum class Requirement { Secrecy, Integrity, Availability };

using ThreatSet = std::set<Threat>;
using RequirementSet = std::set<Requirement>;

// secrecy falls to read, integrity to insert, availability to delete.
constexpr Threat paired_threat(Requirement r) {
    switch (r) {
    case Requirement::Secrecy: return Threat::Read;
    case Requirement::Integrity: return Threat::Insert;
    case Requirement::Availability: return Threat::Delete;
    }
    return Threat::Read;
}

constexpr std::string_view to_string(Threat t) {
    switch (t) {
    case Threat::Read: return "read";
    case Threat::Insert: return "insert";
    case Threat::Delete: return "delete";
    case Threat::Access: return "access";
    }
    return "";
}

inline std::optional<Threat> threat_from_string(std::string_view s) {
    if (s == "read") return Threat::Read;
    if (s == "insert") return Threat::Insert;
    if (s == "delete") return Threat::Delete;
    if (s == "access") return Threat::Access;
    return std::nullopt;
}

constexpr std::string_view to_string(Requirement r) {
    switch (r) {
    case Requirement::Secrecy: return "secrecy";
    case Requirement::Integrity: return "integrity";
    case Requirement::Availability: return "availability";
    }
    return "";
}

inline std::optional<Requirement> requirement_from_string(std::string_view s) {
    if (s == "secrecy") return Requirement::Secrecy;
    if (s == "integrity") return Requirement::Integrity;
    if (s == "availability") return Requirement::Availability;
    return std::nullopt;
}

enum class StereotypeKind {
    Connection,
    Device,
    NodeMarker,
    Requirement,
    ActorMarker,
    TraceabilityMarker,
};

constexpr std::string_view to_string(StereotypeKind k) {
    switch (k) {
    case StereotypeKind::Connection: return "connection";
    case StereotypeKind::Device: return "device";
    case StereotypeKind::NodeMarker: return "node-marker";
    case StereotypeKind::Requirement: return "requirement";
    case StereotypeKind::ActorMarker: return "actor-marker";
    case StereotypeKind::TraceabilityMarker: return "traceability-marker";
    }
    return "";
}

// Only connection, device and node-marker stereotypes may carry threats in
// an adversary model.
constexpr bool carries_threats(StereotypeKind k) {
    return k == StereotypeKind::Connection || k == StereotypeKind::Device ||
           k == StereotypeKind::NodeMarker;
}

struct Stereotype {
    std::string name;
    StereotypeKind kind = StereotypeKind::Connection;
    std::optional<std::string> parent;

    bool operator==(const Stereotype&) const = default;
};

struct TaxonomyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The built-in stereotype forest plus user-registered extensions. Custom
// stereotypes extend Wireless (yielding a connection stereotype usable on
// paths) or ComputingContinuumDevice (yielding a device stereotype usable
// on nodes). Parent chains are acyclic and at most one hop deep.
class StereotypeTaxonomy {
public:
    StereotypeTaxonomy() {
        add("wire", StereotypeKind::Connection);
        add("LAN", StereotypeKind::Connection);
        add("Internet", StereotypeKind::Connection);
        add("Wireless", StereotypeKind::Connection);
        for (const char* wireless : {"3G", "4G", "5G", "RFID", "NFC", "Bluetooth", "WLAN"})
            add(wireless, StereotypeKind::Connection, "Wireless");
        add("ComputingContinuumDevice", StereotypeKind::Device);
        for (const char* device : {"EndDevice", "EdgeNode", "Cloud"})
            add(device, StereotypeKind::Device, "ComputingContinuumDevice");
        add("internal", StereotypeKind::NodeMarker);
        add("secrecy", StereotypeKind::Requirement);
        add("integrity", StereotypeKind::Requirement);
        add("availability", StereotypeKind::Requirement);
        add("Actor", StereotypeKind::ActorMarker);
        add("DataTraceability", StereotypeKind::TraceabilityMarker);
    }

    const Stereotype* find(std::string_view name) const {
        auto it = entries_.find(name);
        return it == entries_.end() ? nullptr : &it->second;
    }

    const Stereotype& require(std::string_view name) const {
        if (const Stereotype* st = find(name))
            return *st;
        throw TaxonomyError("unknown stereotype '" + std::string(name) + "'");
    }

    const Stereotype& register_custom(std::string_view name, std::string_view parent) {
        if (find(name))
            throw TaxonomyError("stereotype '" + std::string(name) + "' is already defined");
        const Stereotype* p = find(parent);
        if (!p)
            throw TaxonomyError("unknown parent stereotype '" + std::string(parent) + "'");
        if (p->name != "Wireless" && p->name != "ComputingContinuumDevice")
            throw TaxonomyError("custom stereotypes must extend Wireless or ComputingContinuumDevice");
        StereotypeKind kind = p->name == "Wireless" ? StereotypeKind::Connection
                                                    : StereotypeKind::Device;
        return add(name, kind, std::string(parent));
    }

    const std::map<std::string, Stereotype, std::less<>>& all() const { return entries_; }

private:
    const Stereotype& add(std::string_view name, StereotypeKind kind,
                          std::optional<std::string> parent = std::nullopt) {
        Stereotype st{std::string(name), kind, std::move(parent)};
        auto [it, inserted] = entries_.emplace(st.name, std::move(st));
        return it->second;
    }

    std::map<std::string, Stereotype, std::less<>> entries_;
};

} // namespace edgesec
