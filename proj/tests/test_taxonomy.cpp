#include <catch2/catch_amalgamated.hpp>

#include "edgesec/model.hpp"
#include "edgesec/taxonomy.hpp"
#include "support/oracle.hpp"

using namespace edgesec;

namespace {

AdversaryModel smart_manufacturing_adversary() {
    AdversaryModel adv;
    adv.name = "Default";
    adv.mapping["5G"] = {Threat::Read, Threat::Insert, Threat::Delete};
    adv.mapping["EdgeNode"] = {Threat::Access};
    adv.mapping["EndDevice"] = {Threat::Access};
    adv.mapping["internal"] = {Threat::Read, Threat::Insert, Threat::Delete};
    return adv;
}

} // namespace

TEST_CASE("built-in taxonomy inventory") {
    StereotypeTaxonomy tax;

    SECTION("connection stereotypes") {
        for (const char* root : {"wire", "LAN", "Internet", "Wireless"}) {
            const Stereotype& st = tax.require(root);
            CHECK(st.kind == StereotypeKind::Connection);
            CHECK(!st.parent.has_value());
        }
        for (const char* sub : {"3G", "4G", "5G", "RFID", "NFC", "Bluetooth", "WLAN"}) {
            const Stereotype& st = tax.require(sub);
            CHECK(st.kind == StereotypeKind::Connection);
            REQUIRE(st.parent.has_value());
            CHECK(*st.parent == "Wireless");
        }
    }

    SECTION("device stereotypes") {
        CHECK(!tax.require("ComputingContinuumDevice").parent.has_value());
        for (const char* sub : {"EndDevice", "EdgeNode", "Cloud"}) {
            const Stereotype& st = tax.require(sub);
            CHECK(st.kind == StereotypeKind::Device);
            REQUIRE(st.parent.has_value());
            CHECK(*st.parent == "ComputingContinuumDevice");
        }
    }

    SECTION("markers and requirements") {
        CHECK(tax.require("internal").kind == StereotypeKind::NodeMarker);
        CHECK(tax.require("secrecy").kind == StereotypeKind::Requirement);
        CHECK(tax.require("integrity").kind == StereotypeKind::Requirement);
        CHECK(tax.require("availability").kind == StereotypeKind::Requirement);
        CHECK(tax.require("Actor").kind == StereotypeKind::ActorMarker);
        CHECK(tax.require("DataTraceability").kind == StereotypeKind::TraceabilityMarker);
    }

    SECTION("parent chains are acyclic and at most one hop") {
        for (const auto& [name, st] : tax.all()) {
            int hops = 0;
            const Stereotype* cur = &st;
            while (cur->parent) {
                cur = &tax.require(*cur->parent);
                REQUIRE(++hops <= 2);
            }
            CHECK(hops <= 1);
        }
    }
}

TEST_CASE("register_custom") {
    StereotypeTaxonomy tax;

    SECTION("wireless extension yields a connection stereotype") {
        const Stereotype& st = tax.register_custom("LoRa", "Wireless");
        CHECK(st.kind == StereotypeKind::Connection);
        CHECK(*st.parent == "Wireless");
        CHECK(tax.find("LoRa") != nullptr);
    }

    SECTION("device extension yields a device stereotype") {
        const Stereotype& st = tax.register_custom("Gateway", "ComputingContinuumDevice");
        CHECK(st.kind == StereotypeKind::Device);
        CHECK(*st.parent == "ComputingContinuumDevice");
    }

    SECTION("built-in name collision is rejected") {
        CHECK_THROWS_AS(tax.register_custom("5G", "Wireless"), TaxonomyError);
    }

    SECTION("duplicate custom name is rejected") {
        tax.register_custom("LoRa", "Wireless");
        CHECK_THROWS_AS(tax.register_custom("LoRa", "Wireless"), TaxonomyError);
    }

    SECTION("only Wireless and ComputingContinuumDevice may be extended") {
        CHECK_THROWS_AS(tax.register_custom("Zigbee", "5G"), TaxonomyError);
        CHECK_THROWS_AS(tax.register_custom("Robot", "EndDevice"), TaxonomyError);
        CHECK_THROWS_AS(tax.register_custom("Odd", "internal"), TaxonomyError);
        CHECK_THROWS_AS(tax.register_custom("Odd", "NoSuchParent"), TaxonomyError);
    }
}

TEST_CASE("resolve_threats") {
    StereotypeTaxonomy tax;

    SECTION("direct entry") {
        AdversaryModel adv = smart_manufacturing_adversary();
        CHECK(resolve_threats(tax, adv, "5G") ==
              ThreatSet{Threat::Read, Threat::Insert, Threat::Delete});
        CHECK(resolve_threats(tax, adv, "internal") ==
              ThreatSet{Threat::Read, Threat::Insert, Threat::Delete});
        CHECK(resolve_threats(tax, adv, "EndDevice") == ThreatSet{Threat::Access});
    }

    SECTION("no entries resolves to the empty set") {
        AdversaryModel adv;
        adv.name = "Empty";
        CHECK(resolve_threats(tax, adv, "WLAN").empty());
    }

    SECTION("parent fallback") {
        AdversaryModel adv;
        adv.name = "Parents";
        adv.mapping["Wireless"] = {Threat::Read};
        CHECK(resolve_threats(tax, adv, "5G") == ThreatSet{Threat::Read});
        CHECK(resolve_threats(tax, adv, "Wireless") == ThreatSet{Threat::Read});
        CHECK(resolve_threats(tax, adv, "wire").empty());
    }

    SECTION("explicit empty entry overrides inheritance") {
        AdversaryModel adv;
        adv.name = "Override";
        adv.mapping["Wireless"] = {Threat::Read, Threat::Insert};
        adv.mapping["5G"] = {};
        CHECK(resolve_threats(tax, adv, "5G").empty());
        CHECK(resolve_threats(tax, adv, "4G") == ThreatSet{Threat::Read, Threat::Insert});
    }

    SECTION("unknown stereotype raises a taxonomy error") {
        AdversaryModel adv;
        CHECK_THROWS_AS(resolve_threats(tax, adv, "Telepathy"), TaxonomyError);
    }

    SECTION("requirement and marker stereotypes cannot be resolved") {
        AdversaryModel adv;
        CHECK_THROWS_AS(resolve_threats(tax, adv, "secrecy"), TaxonomyError);
        CHECK_THROWS_AS(resolve_threats(tax, adv, "Actor"), TaxonomyError);
    }

    SECTION("custom stereotypes inherit through their declared parent") {
        tax.register_custom("LoRa", "Wireless");
        AdversaryModel adv;
        adv.mapping["Wireless"] = {Threat::Delete};
        CHECK(resolve_threats(tax, adv, "LoRa") == ThreatSet{Threat::Delete});
    }
}

TEST_CASE("resolve_threats agrees with a brute-force ancestor scan") {
    // Exhaustive over every threat-bearing built-in and a generated
    // adversary suite covering all entry placements.
    StereotypeTaxonomy tax;
    std::vector<std::string> subjects;
    for (const auto& [name, st] : tax.all())
        if (carries_threats(st.kind)) subjects.push_back(name);

    std::vector<AdversaryModel> suite;
    {
        AdversaryModel none;
        none.name = "none";
        suite.push_back(none);
        // Systematic single- and double-entry adversaries per subject.
        for (const std::string& subject : subjects) {
            for (ThreatSet threats : {ThreatSet{}, ThreatSet{Threat::Read},
                                      ThreatSet{Threat::Read, Threat::Insert, Threat::Delete},
                                      ThreatSet{Threat::Access}}) {
                AdversaryModel adv;
                adv.name = "single";
                adv.mapping[subject] = threats;
                suite.push_back(adv);
                const Stereotype& st = tax.require(subject);
                if (st.parent) {
                    AdversaryModel both = adv;
                    both.name = "both";
                    both.mapping[*st.parent] = {Threat::Insert};
                    suite.push_back(both);
                    AdversaryModel parent_only;
                    parent_only.name = "parent";
                    parent_only.mapping[*st.parent] = threats;
                    suite.push_back(parent_only);
                }
            }
        }
    }

    std::vector<Stereotype> no_customs;
    for (const AdversaryModel& adv : suite)
        for (const std::string& subject : subjects)
            REQUIRE(resolve_threats(tax, adv, subject) ==
                    testsupport::oracle::resolve(no_customs, adv, subject));
}
