// Command-line front end: check / analyze / report over .edgesec files.
// Exit codes: 0 clean, 1 violations found, 2 validation errors,
// 3 parse errors, 4 usage errors.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "edgesec/edgesec.hpp"

namespace {

constexpr int kExitClean = 0;
constexpr int kExitViolations = 1;
constexpr int kExitValidationErrors = 2;
constexpr int kExitParseErrors = 3;
constexpr int kExitUsage = 4;

struct Options {
    std::string file;
    std::string format = "text";
    std::string adversary;
    std::string kind;
    bool quiet = false;
    bool no_banner = false;
};

bool use_color() {
    if (std::getenv("EDGESEC_NO_COLOR") != nullptr) return false;
    return isatty(fileno(stderr)) != 0;
}

std::string severity_tag(edgesec::Severity sev) {
    const char* word = edgesec::to_string(sev);
    if (!use_color()) return word;
    return sev == edgesec::Severity::Error ? std::string("\x1b[31m") + word + "\x1b[0m"
                                           : std::string("\x1b[33m") + word + "\x1b[0m";
}

void print_parse_diagnostics(const std::vector<edgesec::ParseDiagnostic>& diags, bool quiet) {
    for (const edgesec::ParseDiagnostic& d : diags) {
        if (quiet && d.severity == edgesec::Severity::Warning) continue;
        std::cerr << edgesec::location_string(d.span) << ": " << severity_tag(d.severity) << ": "
                  << d.message << "\n";
    }
}

void print_validation_diagnostics(const std::vector<edgesec::ValidationDiagnostic>& diags,
                                  bool quiet) {
    for (const edgesec::ValidationDiagnostic& d : diags) {
        if (quiet && d.severity == edgesec::Severity::Warning) continue;
        if (d.span) std::cerr << edgesec::location_string(*d.span) << ": ";
        std::cerr << severity_tag(d.severity) << " " << d.code << ": " << d.message << "\n";
    }
}

bool read_file(const std::string& path, std::string& out) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) return false;
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) return false;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    out = buffer.str();
    return !in.bad();
}

edgesec::ReportFormat parse_format(const std::string& format) {
    return format == "json" ? edgesec::ReportFormat::Json : edgesec::ReportFormat::Text;
}

// Shared pipeline front: parse then validate. Returns an exit code != -1 to
// stop, and leaves the model plus validation diagnostics behind otherwise.
int load_and_validate(const Options& opt, std::optional<edgesec::Model>& model,
                      std::vector<edgesec::ValidationDiagnostic>& diagnostics) {
    std::string text;
    if (!read_file(opt.file, text)) {
        std::cerr << "error: cannot read file '" << opt.file << "'\n";
        return kExitUsage;
    }
    edgesec::ParseResult parsed = edgesec::parse_model(text, opt.file);
    if (!parsed.ok()) {
        print_parse_diagnostics(parsed.diagnostics, opt.quiet);
        return kExitParseErrors;
    }
    print_parse_diagnostics(parsed.diagnostics, opt.quiet);
    diagnostics = edgesec::validate(*parsed.model);
    print_validation_diagnostics(diagnostics, opt.quiet);
    if (edgesec::has_errors(diagnostics)) return kExitValidationErrors;
    model = std::move(parsed.model);
    return -1;
}

int run_check(const Options& opt) {
    std::string text;
    if (!read_file(opt.file, text)) {
        std::cerr << "error: cannot read file '" << opt.file << "'\n";
        return kExitUsage;
    }
    edgesec::ReportFormat format = parse_format(opt.format);
    edgesec::ParseResult parsed = edgesec::parse_model(text, opt.file);
    if (!parsed.ok()) {
        if (format == edgesec::ReportFormat::Json) {
            std::cout << edgesec::render_diagnostics(parsed.diagnostics, {}, opt.file, format)
                             .payload;
        } else {
            print_parse_diagnostics(parsed.diagnostics, opt.quiet);
        }
        return kExitParseErrors;
    }
    std::vector<edgesec::ValidationDiagnostic> diagnostics = edgesec::validate(*parsed.model);
    std::size_t errors = 0, warnings = 0;
    for (const edgesec::ValidationDiagnostic& d : diagnostics)
        (d.severity == edgesec::Severity::Error ? errors : warnings)++;

    if (format == edgesec::ReportFormat::Json) {
        std::vector<edgesec::ValidationDiagnostic> shown;
        for (const edgesec::ValidationDiagnostic& d : diagnostics)
            if (!opt.quiet || d.severity == edgesec::Severity::Error) shown.push_back(d);
        std::cout << edgesec::render_diagnostics({}, shown, opt.file, format).payload;
    } else {
        print_validation_diagnostics(diagnostics, opt.quiet);
        std::cout << opt.file << ": ";
        if (errors == 0) {
            std::cout << "ok";
            if (warnings > 0 && !opt.quiet)
                std::cout << " (" << warnings << (warnings == 1 ? " warning)" : " warnings)");
            std::cout << "\n";
        } else {
            std::cout << errors << (errors == 1 ? " error" : " errors");
            if (warnings > 0) std::cout << ", " << warnings << (warnings == 1 ? " warning" : " warnings");
            std::cout << "\n";
        }
    }
    return errors > 0 ? kExitValidationErrors : kExitClean;
}

int run_analyze(const Options& opt) {
    std::optional<edgesec::Model> model;
    std::vector<edgesec::ValidationDiagnostic> diagnostics;
    int stop = load_and_validate(opt, model, diagnostics);
    if (stop != -1) return stop;

    try {
        edgesec::AnalysisReport report = edgesec::analyze(*model, opt.adversary);
        std::cout << edgesec::render_analysis(report, parse_format(opt.format)).payload;
        return report.violations.empty() ? kExitClean : kExitViolations;
    } catch (const edgesec::UnknownAdversaryError& e) {
        std::cerr << "error: " << e.what();
        if (!e.available.empty()) {
            std::cerr << "; available:";
            for (const std::string& name : e.available)
                std::cerr << " " << name;
        }
        std::cerr << "\n";
        return kExitUsage;
    }
}

int run_report(const Options& opt) {
    std::optional<edgesec::Model> model;
    std::vector<edgesec::ValidationDiagnostic> diagnostics;
    int stop = load_and_validate(opt, model, diagnostics);
    if (stop != -1) return stop;

    edgesec::ReportFormat format = parse_format(opt.format);
    if (opt.kind == "traceability") {
        edgesec::TraceabilityMatrix matrix = edgesec::traceability_matrix(*model);
        std::cout << edgesec::render_traceability(model->name, matrix, format).payload;
    } else if (opt.kind == "trust") {
        auto pairs = edgesec::trust_closure_report(*model);
        std::cout << edgesec::render_trust(model->name, pairs, format).payload;
    } else {
        auto listing = edgesec::role_listing(*model);
        std::cout << edgesec::render_roles(model->name, listing, format).payload;
    }
    return kExitClean;
}

int run_main(int argc, char** argv) {
    CLI::App app{"edgesec: data-protection analysis for edge deployment models"};
    app.require_subcommand(1);

    Options opt;
    app.add_flag("--quiet", opt.quiet, "Suppress warnings");
    app.add_flag("--no-banner", opt.no_banner, "Suppress the version banner");

    CLI::App* check = app.add_subcommand("check", "Parse and validate a model file");
    check->add_option("file", opt.file, "Model file (.edgesec)")->required();
    check->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* analyze = app.add_subcommand("analyze", "Run the adversary analysis");
    analyze->add_option("file", opt.file, "Model file (.edgesec)")->required();
    analyze->add_option("--adversary", opt.adversary, "Adversary model name")->required();
    analyze->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* report = app.add_subcommand("report", "Render a class-view report");
    report->add_option("file", opt.file, "Model file (.edgesec)")->required();
    report->add_option("--kind", opt.kind, "Report kind")
        ->required()
        ->check(CLI::IsMember({"traceability", "trust", "roles"}));
    report->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (!opt.no_banner)
        std::cerr << "edgesec " << edgesec::kVersion << "\n";

    if (check->parsed()) return run_check(opt);
    if (analyze->parsed()) return run_analyze(opt);
    return run_report(opt);
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_main(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
