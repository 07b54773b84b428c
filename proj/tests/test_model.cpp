#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "edgesec/parser.hpp"
#include "edgesec/serializer.hpp"
#include "support/proc.hpp"

using namespace edgesec;

namespace {

Model linked_model() {
    const char* text = R"(
model "Channels" {
  deployment {
    node Hub <<EdgeNode>> <<internal>> {
      component Control
      component Store
    }
    node Sensor <<EndDevice>> {
      component Probe
    }
    node Island {
      component Remote
    }
    path Sensor -- Hub <<5G>>
    path Sensor -- Hub <<WLAN>>
  }
}
)";
    ParseResult result = parse_model(text);
    REQUIRE(result.ok());
    return *result.model;
}

} // namespace

TEST_CASE("connecting_channels") {
    Model m = linked_model();

    SECTION("co-deployed components use one intra-node channel") {
        auto channels = connecting_channels(m, "Control", "Store");
        REQUIRE(channels.size() == 1);
        CHECK(channels[0].kind == Channel::Kind::IntraNode);
        CHECK(channels[0].node == "Hub");
    }

    SECTION("one channel per linking path, in declaration order") {
        auto channels = connecting_channels(m, "Probe", "Control");
        REQUIRE(channels.size() == 2);
        CHECK(channels[0].kind == Channel::Kind::InterNode);
        CHECK(m.paths[channels[0].path_index].stereotype.name == "5G");
        CHECK(m.paths[channels[1].path_index].stereotype.name == "WLAN");
    }

    SECTION("endpoint order does not matter") {
        CHECK(connecting_channels(m, "Control", "Probe") ==
              connecting_channels(m, "Probe", "Control"));
    }

    SECTION("unlinked nodes yield no channels") {
        CHECK(connecting_channels(m, "Probe", "Remote").empty());
        CHECK(connecting_channels(m, "Control", "Remote").empty());
    }

    SECTION("unknown components yield no channels") {
        CHECK(connecting_channels(m, "Probe", "Ghost").empty());
    }
}

TEST_CASE("connecting_channels on the manufacturing fixture") {
    std::ifstream in(testsupport::model_path("smart_manufacturing.edgesec"));
    REQUIRE(in.is_open());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    ParseResult result = parse_model(buffer.str());
    REQUIRE(result.ok());
    const Model& m = *result.model;

    auto inter = connecting_channels(m, "RobotService", "RobotControl");
    REQUIRE(inter.size() == 1);
    CHECK(inter[0].kind == Channel::Kind::InterNode);
    CHECK(m.paths[inter[0].path_index].stereotype.name == "5G");

    auto intra = connecting_channels(m, "RobotControl", "DataHubEdge");
    REQUIRE(intra.size() == 1);
    CHECK(intra[0].kind == Channel::Kind::IntraNode);
    CHECK(intra[0].node == "FiaBEdgeNode");
    CHECK(m.internal_marked(*m.find_node(intra[0].node)));
}

TEST_CASE("model lookups") {
    Model m = linked_model();

    CHECK(m.find_node("Hub") != nullptr);
    CHECK(m.find_node("Nope") == nullptr);
    REQUIRE(m.host_of("Store") != nullptr);
    CHECK(m.host_of("Store")->name == "Hub");
    CHECK(m.find_component("Probe") != nullptr);

    const Node& hub = *m.find_node("Hub");
    CHECK(m.device_stereotype(hub) == "EdgeNode");
    CHECK(m.internal_marked(hub));
    const Node& island = *m.find_node("Island");
    CHECK(!m.device_stereotype(island).has_value());
    CHECK(!m.internal_marked(island));
}

TEST_CASE("structural equality ignores spans") {
    Model a = linked_model();
    Model b = linked_model();
    REQUIRE(a == b);

    // Same text, different file name: spans differ, structure does not.
    ParseResult renamed = parse_model(serialize_model(a), "other.edgesec");
    REQUIRE(renamed.ok());
    CHECK(*renamed.model == a);

    b.name = "Changed";
    CHECK(!(a == b));

    Model c = linked_model();
    c.nodes[0].components[0].display_name = "Display";
    CHECK(!(a == c));
}
