#pragma once

#include <cctype>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "edgesec/lexer.hpp"
#include "edgesec/model.hpp"

namespace edgesec {

struct TupleListResult {
    std::vector<TraceTuple> tuples;
    std::optional<ParseDiagnostic> error;

    bool ok() const { return !error.has_value(); }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

} // namespace detail

// Grammar for rights/obligations tag strings:
//
//   list  := tuple ("," tuple)* | nothing
//   tuple := "(" element ("," element)+ ")"
//
// Elements are trimmed at both ends and may contain internal spaces and
// hyphens; the first element names an attribute, the rest name actors.
// Every input either parses or yields exactly one diagnostic whose column
// is the 1-based byte offset of the offending character.
inline TupleListResult parse_tuple_list(std::string_view text) {
    TupleListResult result;
    std::size_t i = 0;
    auto fail = [&](std::size_t pos, std::string message) {
        SourceSpan span;
        span.start_col = span.end_col = static_cast<int>(pos) + 1;
        result.tuples.clear();
        result.error = ParseDiagnostic{Severity::Error, std::move(message), std::move(span)};
    };
    auto skip_space = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
    };

    skip_space();
    while (i < text.size()) {
        if (text[i] != '(') {
            fail(i, "expected '(' to open a tuple");
            return result;
        }
        std::size_t open = i;
        ++i;
        TraceTuple tuple;
        bool have_attribute = false;
        for (;;) {
            std::size_t start = i;
            while (i < text.size() && text[i] != ',' && text[i] != ')') {
                if (text[i] == '(') {
                    fail(i, "unexpected '(' inside tuple");
                    return result;
                }
                ++i;
            }
            if (i == text.size()) {
                fail(open, "unbalanced parentheses in tuple list");
                return result;
            }
            std::string element{detail::trim(text.substr(start, i - start))};
            if (element.empty()) {
                fail(start, "empty tuple element");
                return result;
            }
            if (!have_attribute) {
                tuple.attribute = std::move(element);
                have_attribute = true;
            } else {
                tuple.actors.push_back(std::move(element));
            }
            if (text[i] == ',') {
                ++i;
                continue;
            }
            ++i; // ')'
            break;
        }
        if (tuple.actors.empty()) {
            fail(open, "tuple requires attribute plus at least one actor");
            return result;
        }
        result.tuples.push_back(std::move(tuple));
        skip_space();
        if (i == text.size()) break;
        if (text[i] != ',') {
            fail(i, "expected ',' between tuples");
            return result;
        }
        std::size_t sep = i;
        ++i;
        skip_space();
        if (i == text.size()) {
            fail(sep, "trailing separator after last tuple");
            return result;
        }
    }
    return result;
}

struct ParseResult {
    std::optional<Model> model; // present iff no errors were reported
    std::vector<ParseDiagnostic> diagnostics;

    bool ok() const { return model.has_value(); }
};

namespace detail {

// Recursive descent with single-token lookahead. Errors recover at the next
// statement boundary so several diagnostics can be reported per run.
class ModelParser {
public:
    ModelParser(std::string_view text, std::string file)
        : lexer_(text, std::move(file)) {
        advance();
    }

    ParseResult run() {
        parse_model_decl();
        ParseResult result;
        result.diagnostics = std::move(diagnostics_);
        bool has_error = false;
        for (const ParseDiagnostic& d : result.diagnostics)
            if (d.severity == Severity::Error) has_error = true;
        if (!has_error)
            result.model = std::move(model_);
        return result;
    }

private:
    static constexpr std::size_t kMaxErrors = 100;

    void advance() {
        if (bail_) {
            cur_ = Token{};
            return;
        }
        cur_ = lexer_.next();
        while (cur_.kind == TokenKind::Invalid) {
            error(cur_.span, cur_.error);
            if (bail_) {
                cur_ = Token{};
                return;
            }
            cur_ = lexer_.next();
        }
    }

    void error(const SourceSpan& span, std::string message) {
        if (error_count_ >= kMaxErrors) {
            bail_ = true;
            return;
        }
        ++error_count_;
        diagnostics_.push_back(ParseDiagnostic{Severity::Error, std::move(message), span});
    }

    bool at(TokenKind k) const { return cur_.kind == k; }
    bool at_keyword(std::string_view kw) const {
        return cur_.kind == TokenKind::Ident && cur_.text == kw;
    }
    bool accept(TokenKind k) {
        if (!at(k)) return false;
        advance();
        return true;
    }
    bool accept_keyword(std::string_view kw) {
        if (!at_keyword(kw)) return false;
        advance();
        return true;
    }
    bool expect(TokenKind k, std::string_view what) {
        if (accept(k)) return true;
        error(cur_.span, "expected " + std::string(what));
        return false;
    }

    std::optional<Token> take_ident(std::string_view what) {
        if (at(TokenKind::Ident)) {
            Token t = cur_;
            advance();
            return t;
        }
        error(cur_.span, "expected " + std::string(what));
        return std::nullopt;
    }

    std::optional<Token> take_string(std::string_view what) {
        if (at(TokenKind::String)) {
            Token t = cur_;
            advance();
            return t;
        }
        error(cur_.span, "expected " + std::string(what));
        return std::nullopt;
    }

    std::optional<std::string> maybe_display_name() {
        if (!at(TokenKind::String)) return std::nullopt;
        std::string s = cur_.text;
        advance();
        return s;
    }

    void recover(std::initializer_list<std::string_view> sync) {
        while (!at(TokenKind::End) && !at(TokenKind::RBrace)) {
            for (std::string_view kw : sync)
                if (at_keyword(kw)) return;
            advance();
        }
    }

    std::optional<AppliedStereotype> parse_stereo() {
        advance(); // '<<', checked by caller
        auto name = take_ident("stereotype name inside '<< >>'");
        if (!name) return std::nullopt;
        if (!expect(TokenKind::StereoClose, "'>>' to close stereotype"))
            return std::nullopt;
        if (!model_.taxonomy.find(name->text)) {
            error(name->span, "unknown stereotype '" + name->text + "'");
            return std::nullopt;
        }
        return AppliedStereotype{name->text, name->span};
    }

    std::vector<AppliedStereotype> parse_stereo_list() {
        std::vector<AppliedStereotype> out;
        while (at(TokenKind::StereoOpen))
            if (auto st = parse_stereo()) out.push_back(std::move(*st));
        return out;
    }

    void parse_model_decl() {
        if (!accept_keyword("model")) {
            error(cur_.span, "expected 'model \"<name>\" { ... }' header");
            return;
        }
        if (auto name = take_string("model name string"))
            model_.name = name->text;
        if (!expect(TokenKind::LBrace, "'{' after model name")) return;
        while (!at(TokenKind::RBrace) && !at(TokenKind::End)) {
            if (at_keyword("stereotype"))
                parse_stereotype_decl();
            else if (at_keyword("deployment"))
                parse_deployment();
            else if (at_keyword("classes"))
                parse_classes();
            else if (at_keyword("adversary"))
                parse_adversary();
            else {
                error(cur_.span, "expected a section: stereotype, deployment, classes, or adversary");
                advance();
                recover({"stereotype", "deployment", "classes", "adversary"});
            }
        }
        expect(TokenKind::RBrace, "'}' to close model");
        if (!at(TokenKind::End))
            error(cur_.span, "unexpected text after closing '}'");
    }

    void parse_stereotype_decl() {
        advance();
        auto name = take_ident("stereotype name");
        if (!name) {
            recover({"stereotype", "deployment", "classes", "adversary"});
            return;
        }
        if (!accept_keyword("extends")) {
            error(cur_.span, "expected 'extends' after stereotype name");
            recover({"stereotype", "deployment", "classes", "adversary"});
            return;
        }
        auto parent = take_ident("parent stereotype name");
        if (!parent) {
            recover({"stereotype", "deployment", "classes", "adversary"});
            return;
        }
        try {
            const Stereotype& st = model_.taxonomy.register_custom(name->text, parent->text);
            model_.custom_stereotypes.push_back(st);
        } catch (const TaxonomyError& e) {
            error(name->span, e.what());
        }
    }

    void parse_deployment() {
        advance();
        if (!expect(TokenKind::LBrace, "'{' after 'deployment'")) {
            recover({"stereotype", "deployment", "classes", "adversary"});
            return;
        }
        while (!at(TokenKind::RBrace) && !at(TokenKind::End)) {
            if (at_keyword("node"))
                parse_node();
            else if (at_keyword("path"))
                parse_path();
            else if (at_keyword("dependency"))
                parse_dependency();
            else {
                error(cur_.span, "expected node, path, or dependency declaration");
                advance();
                recover({"node", "path", "dependency"});
            }
        }
        expect(TokenKind::RBrace, "'}' to close deployment section");
    }

    void parse_node() {
        advance();
        auto name = take_ident("node name");
        if (!name) {
            recover({"node", "path", "dependency"});
            return;
        }
        Node node;
        node.name = name->text;
        node.span = name->span;
        node.display_name = maybe_display_name();
        node.stereotypes = parse_stereo_list();
        if (!node_names_.insert(node.name).second)
            error(name->span, "duplicate node name '" + node.name + "'");
        if (!expect(TokenKind::LBrace, "'{' to open node body")) {
            recover({"node", "path", "dependency"});
            return;
        }
        while (!at(TokenKind::RBrace) && !at(TokenKind::End)) {
            if (at_keyword("component")) {
                advance();
                auto cname = take_ident("component name");
                if (!cname) {
                    recover({"component"});
                    continue;
                }
                Component comp;
                comp.name = cname->text;
                comp.span = cname->span;
                comp.display_name = maybe_display_name();
                if (!component_names_.insert(comp.name).second)
                    error(cname->span, "duplicate component name '" + comp.name + "'");
                node.components.push_back(std::move(comp));
            } else {
                error(cur_.span, "expected 'component' declaration in node body");
                advance();
                recover({"component"});
            }
        }
        expect(TokenKind::RBrace, "'}' to close node body");
        model_.nodes.push_back(std::move(node));
    }

    void parse_path() {
        advance();
        auto a = take_ident("node name");
        if (!a) {
            recover({"node", "path", "dependency"});
            return;
        }
        if (!expect(TokenKind::PathSep, "'--' between path endpoints")) {
            recover({"node", "path", "dependency"});
            return;
        }
        auto b = take_ident("node name");
        if (!b) {
            recover({"node", "path", "dependency"});
            return;
        }
        CommunicationPath path;
        path.node_a = a->text;
        path.node_b = b->text;
        path.span = a->span;
        if (path.node_a == path.node_b)
            error(b->span, "path endpoints must be distinct");
        if (at(TokenKind::StereoOpen)) {
            if (auto st = parse_stereo())
                path.stereotype = std::move(*st);
        } else {
            error(cur_.span, "path requires a connection stereotype, e.g. <<5G>>");
        }
        if (at(TokenKind::StereoOpen)) {
            error(cur_.span, "a path carries exactly one stereotype");
            parse_stereo_list();
        }
        model_.paths.push_back(std::move(path));
    }

    void parse_dependency() {
        advance();
        auto src = take_ident("component name");
        if (!src) {
            recover({"node", "path", "dependency"});
            return;
        }
        if (!expect(TokenKind::Arrow, "'->' between dependency endpoints")) {
            recover({"node", "path", "dependency"});
            return;
        }
        auto dst = take_ident("component name");
        if (!dst) {
            recover({"node", "path", "dependency"});
            return;
        }
        Dependency dep;
        dep.source = src->text;
        dep.target = dst->text;
        dep.span = src->span;
        if (dep.source == dep.target)
            error(dst->span, "dependency endpoints must be distinct");
        dep.stereotypes = parse_stereo_list();
        model_.dependencies.push_back(std::move(dep));
    }

    void parse_classes() {
        advance();
        if (!expect(TokenKind::LBrace, "'{' after 'classes'")) {
            recover({"stereotype", "deployment", "classes", "adversary"});
            return;
        }
        while (!at(TokenKind::RBrace) && !at(TokenKind::End)) {
            if (at_keyword("actor"))
                parse_actor();
            else if (at_keyword("class"))
                parse_class();
            else {
                error(cur_.span, "expected actor or class declaration");
                advance();
                recover({"actor", "class"});
            }
        }
        expect(TokenKind::RBrace, "'}' to close classes section");
    }

    void parse_actor() {
        advance();
        auto name = take_ident("actor name");
        if (!name) {
            recover({"actor", "class"});
            return;
        }
        ClassSpec cls;
        cls.name = name->text;
        cls.span = name->span;
        cls.actor_form = true;
        cls.display_name = maybe_display_name();
        if (!class_names_.insert(cls.name).second)
            error(name->span, "duplicate class name '" + cls.name + "'");
        if (!expect(TokenKind::LBrace, "'{' to open actor body")) {
            recover({"actor", "class"});
            return;
        }
        bool saw_roles = false, saw_trusts = false;
        while (!at(TokenKind::RBrace) && !at(TokenKind::End)) {
            if (at_keyword("roles")) {
                Token kw = cur_;
                advance();
                if (saw_roles) error(kw.span, "duplicate roles tag");
                saw_roles = true;
                parse_roles(cls);
            } else if (at_keyword("trusts")) {
                Token kw = cur_;
                advance();
                if (saw_trusts) error(kw.span, "duplicate trusts tag");
                saw_trusts = true;
                parse_trusts(cls);
            } else {
                error(cur_.span, "expected roles or trusts tag in actor body");
                advance();
                recover({"roles", "trusts"});
            }
        }
        expect(TokenKind::RBrace, "'}' to close actor body");
        model_.classes.push_back(std::move(cls));
    }

    void parse_roles(ClassSpec& cls) {
        if (!expect(TokenKind::Equals, "'=' after 'roles'")) return;
        if (!expect(TokenKind::LBracket, "'[' to open roles list")) return;
        if (!at(TokenKind::RBracket)) {
            for (;;) {
                auto id = take_ident("role name");
                if (!id) break;
                if (auto role = role_from_string(id->text))
                    cls.roles.insert(*role);
                else
                    error(id->span, "unknown role '" + id->text +
                                        "' (expected DataSubject, DataController, "
                                        "DataProcessor, or ThirdParty)");
                if (!accept(TokenKind::Comma)) break;
            }
        }
        expect(TokenKind::RBracket, "']' to close roles list");
    }

    void parse_trusts(ClassSpec& cls) {
        if (!expect(TokenKind::Equals, "'=' after 'trusts'")) return;
        if (!expect(TokenKind::LBracket, "'[' to open trusts list")) return;
        if (!at(TokenKind::RBracket)) {
            for (;;) {
                auto id = take_ident("actor class name");
                if (!id) break;
                cls.trusts.push_back(id->text);
                if (!accept(TokenKind::Comma)) break;
            }
        }
        expect(TokenKind::RBracket, "']' to close trusts list");
    }

    void parse_class() {
        advance();
        auto name = take_ident("class name");
        if (!name) {
            recover({"actor", "class"});
            return;
        }
        ClassSpec cls;
        cls.name = name->text;
        cls.span = name->span;
        cls.display_name = maybe_display_name();
        cls.stereotypes = parse_stereo_list();
        if (!class_names_.insert(cls.name).second)
            error(name->span, "duplicate class name '" + cls.name + "'");
        if (!expect(TokenKind::LBrace, "'{' to open class body")) {
            recover({"actor", "class"});
            return;
        }
        std::set<std::string> attr_names;
        while (!at(TokenKind::RBrace) && !at(TokenKind::End)) {
            if (at_keyword("attr")) {
                advance();
                auto aname = take_ident("attribute name");
                if (!aname) {
                    recover({"attr", "rights", "obligations"});
                    continue;
                }
                Attribute attr;
                attr.name = aname->text;
                attr.span = aname->span;
                attr.display_name = maybe_display_name();
                if (!attr_names.insert(attr.name).second)
                    error(aname->span, "duplicate attribute '" + attr.name + "'");
                cls.attributes.push_back(std::move(attr));
            } else if (at_keyword("rights")) {
                parse_tuple_tag(cls.rights, "rights");
            } else if (at_keyword("obligations")) {
                parse_tuple_tag(cls.obligations, "obligations");
            } else {
                error(cur_.span, "expected attr, rights, or obligations in class body");
                advance();
                recover({"attr", "rights", "obligations"});
            }
        }
        expect(TokenKind::RBrace, "'}' to close class body");
        model_.classes.push_back(std::move(cls));
    }

    void parse_tuple_tag(std::optional<TupleTag>& slot, std::string_view tag_name) {
        Token kw = cur_;
        advance();
        if (slot) error(kw.span, "duplicate " + std::string(tag_name) + " tag");
        if (!expect(TokenKind::Equals, "'=' after tag name")) return;
        auto str = take_string("tuple string");
        if (!str) return;
        TupleListResult parsed = parse_tuple_list(str->text);
        if (!parsed.ok()) {
            error(str->span, "in " + std::string(tag_name) + " tag: " + parsed.error->message);
            return;
        }
        if (!slot)
            slot = TupleTag{std::move(parsed.tuples), str->span};
    }

    void parse_adversary() {
        advance();
        auto name = take_ident("adversary name");
        if (!name) {
            recover({"stereotype", "deployment", "classes", "adversary"});
            return;
        }
        AdversaryModel adv;
        adv.name = name->text;
        adv.span = name->span;
        if (!adversary_names_.insert(adv.name).second)
            error(name->span, "duplicate adversary name '" + adv.name + "'");
        if (!expect(TokenKind::LBrace, "'{' to open adversary body")) {
            recover({"stereotype", "deployment", "classes", "adversary"});
            return;
        }
        while (!at(TokenKind::RBrace) && !at(TokenKind::End)) {
            if (at(TokenKind::StereoOpen)) {
                auto st = parse_stereo();
                if (!st) {
                    skip_to_adversary_entry();
                    continue;
                }
                ThreatSet threats;
                bool entry_ok = expect(TokenKind::Equals, "'=' after stereotype") &&
                                expect(TokenKind::LBrace, "'{' to open threat set");
                if (!entry_ok) {
                    skip_to_adversary_entry();
                    continue;
                }
                if (!at(TokenKind::RBrace)) {
                    for (;;) {
                        auto id = take_ident("threat name");
                        if (!id) break;
                        if (auto t = threat_from_string(id->text))
                            threats.insert(*t);
                        else
                            error(id->span, "unknown threat '" + id->text +
                                                "' (expected read, insert, delete, or access)");
                        if (!accept(TokenKind::Comma)) break;
                    }
                }
                expect(TokenKind::RBrace, "'}' to close threat set");
                if (adv.mapping.count(st->name)) {
                    error(st->span, "duplicate adversary entry for <<" + st->name + ">>");
                } else {
                    adv.entry_spans.emplace(st->name, st->span);
                    adv.mapping.emplace(st->name, std::move(threats));
                }
            } else {
                error(cur_.span, "expected '<<stereotype>> = { threats }' entry");
                advance();
                skip_to_adversary_entry();
            }
        }
        expect(TokenKind::RBrace, "'}' to close adversary body");
        model_.adversaries.push_back(std::move(adv));
    }

    void skip_to_adversary_entry() {
        while (!at(TokenKind::End) && !at(TokenKind::RBrace) && !at(TokenKind::StereoOpen))
            advance();
    }

    Lexer lexer_;
    Token cur_;
    Model model_;
    std::vector<ParseDiagnostic> diagnostics_;
    std::size_t error_count_ = 0;
    bool bail_ = false;
    std::set<std::string> node_names_;
    std::set<std::string> component_names_;
    std::set<std::string> class_names_;
    std::set<std::string> adversary_names_;
};

} // namespace detail

// Parses edgesec DSL source. On success the returned Model's every
// annotation names a taxonomy stereotype (built-in or one declared with
// `stereotype X extends Y` earlier in the same file); name resolution
// between elements is deferred to the validator.
inline ParseResult parse_model(std::string_view text, std::string file = "<input>") {
    detail::ModelParser parser(text, std::move(file));
    return parser.run();
}

} // namespace edgesec
