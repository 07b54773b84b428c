#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include "support/proc.hpp"
#include "support/schema_check.hpp"

using testsupport::CmdResult;
using testsupport::model_path;
using testsupport::run_cli;
using testsupport::write_temp_model;

TEST_CASE("check command") {
    const std::string fixture = model_path("smart_manufacturing.edgesec");

    SECTION("valid fixture exits 0 and lists warnings") {
        CmdResult r = run_cli({"--no-banner", "check", fixture});
        CHECK(r.exit_code == 0);
        CHECK(r.out.find(": ok") != std::string::npos);
        CHECK(r.err.find("W003") != std::string::npos);
    }

    SECTION("--quiet suppresses warnings") {
        CmdResult r = run_cli({"--no-banner", "--quiet", "check", fixture});
        CHECK(r.exit_code == 0);
        CHECK(r.err.empty());
        CHECK(r.out.find("warning") == std::string::npos);
    }

    SECTION("validation errors exit 2") {
        std::string bad = write_temp_model(
            "model \"m\" { deployment { node N <<5G>> {} } }");
        CmdResult r = run_cli({"--no-banner", "check", bad});
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("V001") != std::string::npos);
        std::remove(bad.c_str());
    }

    SECTION("tuple grammar error surfaces as a positioned parse error, exit 3") {
        std::string bad = write_temp_model(
            "model \"m\" { classes { class C { attr A rights = \"(X)\" } } }");
        CmdResult r = run_cli({"--no-banner", "check", bad});
        CHECK(r.exit_code == 3);
        CHECK(r.err.find("tuple requires attribute plus at least one actor") !=
              std::string::npos);
        CHECK(r.err.find(":1:") != std::string::npos);
        std::remove(bad.c_str());
    }

    SECTION("missing file exits 4") {
        CmdResult r = run_cli({"--no-banner", "check", "/nonexistent/nope.edgesec"});
        CHECK(r.exit_code == 4);
    }

    SECTION("a directory path exits 4") {
        CmdResult r = run_cli({"--no-banner", "check", "/tmp"});
        CHECK(r.exit_code == 4);
        CHECK(r.err.find("cannot read file") != std::string::npos);
    }

    SECTION("json diagnostics document") {
        CmdResult r = run_cli({"--no-banner", "check", fixture, "--format", "json"});
        CHECK(r.exit_code == 0);
        nlohmann::json doc = nlohmann::json::parse(r.out);
        CHECK(doc["document"] == "diagnostics");
        testsupport::SchemaChecker checker(
            nlohmann::json::parse(testsupport::read_all(EDGESEC_SCHEMA_PATH)));
        std::string why;
        bool ok = checker.valid(doc, &why);
        INFO(why);
        CHECK(ok);
    }
}

TEST_CASE("analyze command") {
    const std::string fixture = model_path("smart_manufacturing.edgesec");

    SECTION("violations exit 1 and the report reaches stdout") {
        CmdResult r = run_cli({"--no-banner", "analyze", fixture, "--adversary", "Default"});
        CHECK(r.exit_code == 1);
        CHECK(r.out.find("secrecy violated on RobotService -> RobotControl") !=
              std::string::npos);
        CHECK(r.out.find("<<5G>>") != std::string::npos);
    }

    SECTION("stdout matches the golden file") {
        CmdResult r = run_cli({"--no-banner", "--quiet", "analyze", fixture,
                               "--adversary", "Default"});
        CHECK(r.out == testsupport::read_all(
                           testsupport::golden_path("smart_manufacturing_default.txt")));
    }

    SECTION("empty adversary exits 0") {
        CmdResult r = run_cli({"--no-banner", "analyze", fixture, "--adversary", "Empty"});
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("no violations") != std::string::npos);
    }

    SECTION("unknown adversary exits 4 and lists the available names") {
        CmdResult r = run_cli({"--no-banner", "analyze", fixture, "--adversary", "Missing"});
        CHECK(r.exit_code == 4);
        CHECK(r.err.find("unknown adversary 'Missing'") != std::string::npos);
        CHECK(r.err.find("Default") != std::string::npos);
        CHECK(r.err.find("Empty") != std::string::npos);
    }

    SECTION("missing --adversary is a usage error") {
        CmdResult r = run_cli({"--no-banner", "analyze", fixture});
        CHECK(r.exit_code == 4);
    }

    SECTION("json report") {
        CmdResult r = run_cli({"--no-banner", "--quiet", "analyze", fixture,
                               "--adversary", "Default", "--format", "json"});
        CHECK(r.exit_code == 1);
        nlohmann::json doc = nlohmann::json::parse(r.out);
        CHECK(doc["document"] == "analysis");
        CHECK(doc["adversary"] == "Default");
        CHECK(doc["violations"].size() == 3);
    }

    SECTION("identical invocations produce identical bytes") {
        CmdResult a = run_cli({"--no-banner", "analyze", fixture, "--adversary", "Default"});
        CmdResult b = run_cli({"--no-banner", "analyze", fixture, "--adversary", "Default"});
        CHECK(a.exit_code == b.exit_code);
        CHECK(a.out == b.out);
        CHECK(a.err == b.err);
    }

    SECTION("parse failures beat analysis, exit 3") {
        std::string bad = write_temp_model("model \"m\" { deployment { node } }");
        CmdResult r = run_cli({"--no-banner", "analyze", bad, "--adversary", "Default"});
        CHECK(r.exit_code == 3);
        std::remove(bad.c_str());
    }

    SECTION("validation failures beat analysis, exit 2") {
        std::string bad = write_temp_model(
            "model \"m\" { deployment { node N <<5G>> {} } adversary Default {} }");
        CmdResult r = run_cli({"--no-banner", "analyze", bad, "--adversary", "Default"});
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("V001") != std::string::npos);
        CHECK(r.out.empty());
        std::remove(bad.c_str());
    }
}

TEST_CASE("report command") {
    const std::string fixture = model_path("smart_manufacturing.edgesec");

    SECTION("roles") {
        CmdResult r = run_cli({"--no-banner", "--quiet", "report", fixture, "--kind", "roles"});
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("Operator: DataSubject, DataProcessor") != std::string::npos);
    }

    SECTION("trust") {
        CmdResult r = run_cli({"--no-banner", "--quiet", "report", fixture, "--kind", "trust"});
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("Operator -> Authorized Personnel") != std::string::npos);
        CHECK(r.out.find("Operator -> FiaB-Container Owner") != std::string::npos);
    }

    SECTION("traceability") {
        CmdResult r =
            run_cli({"--no-banner", "--quiet", "report", fixture, "--kind", "traceability"});
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("DashboardEdge.Customer Data | Customer: rights") !=
              std::string::npos);
    }

    SECTION("model without actors yields an empty trust report, exit 0") {
        std::string bare = write_temp_model("model \"m\" {}");
        CmdResult r = run_cli({"--no-banner", "report", bare, "--kind", "trust"});
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("(none)") != std::string::npos);
        std::remove(bare.c_str());
    }

    SECTION("invalid kind exits 4") {
        CmdResult r = run_cli({"--no-banner", "report", fixture, "--kind", "everything"});
        CHECK(r.exit_code == 4);
    }
}

TEST_CASE("banner and output streams") {
    const std::string fixture = model_path("smart_manufacturing.edgesec");

    SECTION("banner goes to stderr by default") {
        CmdResult r = run_cli({"--quiet", "check", fixture});
        CHECK(r.err.rfind("edgesec ", 0) == 0);
    }

    SECTION("--no-banner silences it") {
        CmdResult r = run_cli({"--no-banner", "--quiet", "check", fixture});
        CHECK(r.err.empty());
    }

    SECTION("reports go to stdout, diagnostics to stderr") {
        CmdResult r = run_cli({"--no-banner", "analyze", fixture, "--adversary", "Default"});
        CHECK(r.out.find("analysis of") != std::string::npos);
        CHECK(r.err.find("W003") != std::string::npos);
        CHECK(r.out.find("W003") == std::string::npos);
    }
}
