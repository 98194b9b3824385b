#include "ontorep/ttl_parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

namespace ontorep {

SyntaxError::SyntaxError(int line, int col, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + message),
      line_(line),
      col_(col) {}

UnknownPrefix::UnknownPrefix(std::string name)
    : std::runtime_error("unknown prefix '" + name + ":'"), name_(std::move(name)) {}

namespace {

bool is_name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
           static_cast<unsigned char>(c) >= 0x80;
}

bool is_name_char(char c) {
    return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-';
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) { ts_.prefixes = default_prefixes(); }

    TripleSet run() {
        skip_ws();
        while (!at_end()) {
            if (peek() == '@') {
                prefix_directive();
            } else if (starts_with_keyword("PREFIX")) {
                sparql_prefix_directive();
            } else {
                statement();
            }
            skip_ws();
        }
        return std::move(ts_);
    }

private:
    std::string_view text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    int blank_counter_ = 0;
    std::unordered_map<std::string, BlankId> labels_;
    TripleSet ts_;

    bool at_end() const { return pos_ >= text_.size(); }
    char peek(size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }
    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    [[noreturn]] void fail(const std::string& message) const { throw SyntaxError(line_, col_, message); }

    void skip_ws() {
        while (!at_end()) {
            char c = peek();
            if (c == '#') {
                while (!at_end() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    void expect(char c) {
        skip_ws();
        if (at_end()) fail(std::string("expected '") + c + "' but reached end of input");
        if (peek() != c) fail(std::string("expected '") + c + "' but found '" + peek() + "'");
        advance();
    }

    bool starts_with_keyword(std::string_view kw) const {
        if (text_.substr(pos_, kw.size()) != kw) return false;
        char after = peek(kw.size());
        return !is_name_char(after) && after != ':';
    }

    BlankId fresh_blank() { return BlankId{"_:b" + std::to_string(++blank_counter_)}; }

    void emit(Node s, Iri p, Node o) { ts_.triples.push_back(Triple{std::move(s), std::move(p), std::move(o)}); }

    // '@prefix' PNAME_NS IRIREF '.'
    void prefix_directive() {
        advance();  // '@'
        std::string word;
        while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) word += advance();
        if (word != "prefix") fail("unsupported directive '@" + word + "'");
        skip_ws();
        std::string name = prefix_name();
        skip_ws();
        std::string iri = iri_ref();
        ts_.prefixes[name] = iri;
        expect('.');
    }

    // 'PREFIX' PNAME_NS IRIREF
    void sparql_prefix_directive() {
        for (int i = 0; i < 6; ++i) advance();
        skip_ws();
        std::string name = prefix_name();
        skip_ws();
        ts_.prefixes[name] = iri_ref();
    }

    std::string prefix_name() {
        std::string name;
        if (!at_end() && is_name_start(peek())) {
            while (!at_end() && (is_name_char(peek()) || peek() == '.')) name += advance();
        }
        if (peek() != ':') fail("expected ':' after prefix name");
        advance();
        return name;
    }

    std::string iri_ref() {
        if (peek() != '<') fail("expected '<' to start an IRI");
        advance();
        std::string iri;
        while (!at_end() && peek() != '>') {
            char c = peek();
            if (c == '\n' || c == ' ') fail("unterminated IRI");
            iri += advance();
        }
        if (at_end()) fail("unterminated IRI");
        advance();
        return iri;
    }

    void statement() {
        skip_ws();
        if (peek() == '[') {
            Node subject = blank_property_list();
            skip_ws();
            if (peek() != '.') predicate_object_list(subject);
        } else {
            Node subject = subject_node();
            predicate_object_list(subject);
        }
        expect('.');
    }

    Node subject_node() {
        skip_ws();
        char c = peek();
        if (c == '(') return collection();
        if (c == '_' && peek(1) == ':') return labeled_blank();
        if (c == '"' || std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+')
            fail("a literal cannot be a subject");
        return iri();
    }

    void predicate_object_list(const Node& subject) {
        for (;;) {
            skip_ws();
            Iri predicate = verb();
            object_list(subject, predicate);
            skip_ws();
            if (peek() != ';') return;
            while (peek() == ';') {
                advance();
                skip_ws();
            }
            // A trailing ';' before '.' or ']' is allowed.
            if (peek() == '.' || peek() == ']') return;
        }
    }

    Iri verb() {
        skip_ws();
        if (peek() == 'a' && !is_name_char(peek(1)) && peek(1) != ':') {
            advance();
            return vocab::rdf("type");
        }
        if (at_end()) fail("expected a predicate but reached end of input");
        if (peek() == '[' || peek() == '"' || peek() == '(' || (peek() == '_' && peek(1) == ':'))
            fail("a predicate must be an IRI");
        return iri();
    }

    void object_list(const Node& subject, const Iri& predicate) {
        for (;;) {
            Node o = object();
            emit(subject, predicate, std::move(o));
            skip_ws();
            if (peek() != ',') return;
            advance();
        }
    }

    Node object() {
        skip_ws();
        if (at_end()) fail("expected an object but reached end of input");
        char c = peek();
        if (c == '[') return blank_property_list();
        if (c == '(') return collection();
        if (c == '_' && peek(1) == ':') return labeled_blank();
        if (c == '"') return string_literal();
        if (std::isdigit(static_cast<unsigned char>(c)) || ((c == '-' || c == '+') &&
                                                            std::isdigit(static_cast<unsigned char>(peek(1)))))
            return integer_literal();
        return iri();
    }

    // '[' predicateObjectList? ']'
    Node blank_property_list() {
        advance();  // '['
        BlankId b = fresh_blank();
        skip_ws();
        if (peek() != ']') predicate_object_list(b);
        expect(']');
        return b;
    }

    Node labeled_blank() {
        advance();
        advance();
        std::string label;
        while (!at_end() && (is_name_char(peek()) ||
                             (peek() == '.' && is_name_char(peek(1))))) {
            label += advance();
        }
        if (label.empty()) fail("empty blank node label");
        auto it = labels_.find(label);
        if (it != labels_.end()) return it->second;
        BlankId b = fresh_blank();
        labels_.emplace(label, b);
        return b;
    }

    // '(' object* ')' expands to an rdf:first / rdf:rest chain.
    Node collection() {
        advance();  // '('
        std::vector<Node> items;
        skip_ws();
        while (peek() != ')') {
            if (at_end()) fail("unterminated collection");
            items.push_back(object());
            skip_ws();
        }
        advance();
        if (items.empty()) return vocab::rdf("nil");
        std::vector<BlankId> cells;
        for (size_t i = 0; i < items.size(); ++i) cells.push_back(fresh_blank());
        for (size_t i = 0; i < items.size(); ++i) {
            emit(cells[i], vocab::rdf("first"), items[i]);
            emit(cells[i], vocab::rdf("rest"),
                 i + 1 < items.size() ? Node(cells[i + 1]) : Node(vocab::rdf("nil")));
        }
        return cells.front();
    }

    Node string_literal() {
        advance();  // '"'
        std::string value;
        for (;;) {
            if (at_end() || peek() == '\n') fail("unterminated string literal");
            char c = advance();
            if (c == '"') break;
            if (c == '\\') {
                if (at_end()) fail("unterminated escape");
                char e = advance();
                switch (e) {
                    case 'n': value += '\n'; break;
                    case 't': value += '\t'; break;
                    case 'r': value += '\r'; break;
                    case '"': value += '"'; break;
                    case '\\': value += '\\'; break;
                    default: fail(std::string("unsupported escape '\\") + e + "'");
                }
            } else {
                value += c;
            }
        }
        Literal lit{std::move(value), Literal::Kind::String, std::nullopt};
        if (peek() == '@') fail("language tags are not supported");
        if (peek() == '^' && peek(1) == '^') {
            advance();
            advance();
            Iri dt = iri();
            lit.datatype = dt.full;
            if (dt.full == std::string(ns::xsd) + "integer") {
                if (!valid_integer(lit.lexical)) fail("invalid xsd:integer literal '" + lit.lexical + "'");
                lit.kind = Literal::Kind::Integer;
                lit.datatype.reset();
            }
        }
        return lit;
    }

    static bool valid_integer(const std::string& s) {
        size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i >= s.size()) return false;
        return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                           [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    }

    Node integer_literal() {
        std::string digits;
        if (peek() == '-' || peek() == '+') digits += advance();
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) digits += advance();
        if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))
            fail("decimal literals are not supported");
        return Literal{digits, Literal::Kind::Integer, std::nullopt};
    }

    Iri iri() {
        skip_ws();
        if (peek() == '<') {
            return Iri::absolute(iri_ref());
        }
        int start_line = line_;
        int start_col = col_;
        std::string prefix;
        if (is_name_start(peek())) {
            while (!at_end() && (is_name_char(peek()) || (peek() == '.' && is_name_char(peek(1)))))
                prefix += advance();
        }
        if (peek() != ':') {
            if (prefix.empty()) {
                if (at_end()) fail("unexpected end of input");
                fail(std::string("unexpected character '") + peek() + "'");
            }
            throw SyntaxError(start_line, start_col, "expected a prefixed name, found '" + prefix + "'");
        }
        advance();
        std::string local;
        while (!at_end() && (is_name_char(peek()) || (peek() == '.' && is_name_char(peek(1)))))
            local += advance();
        if (local.empty()) throw SyntaxError(start_line, start_col, "empty local name after '" + prefix + ":'");
        auto it = ts_.prefixes.find(prefix);
        if (it == ts_.prefixes.end()) throw UnknownPrefix(prefix);
        return Iri(prefix, local, it->second + local);
    }
};

bool valid_local(std::string_view local) {
    if (local.empty() || !is_name_start(local.front()) || local.back() == '.') return false;
    return std::all_of(local.begin(), local.end(), [](char c) { return is_name_char(c) || c == '.'; });
}

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    return out;
}

class Writer {
public:
    explicit Writer(const std::map<std::string, std::string>& prefixes) : prefixes_(prefixes) {}

    std::string term(const Node& n) {
        if (auto* iri = std::get_if<Iri>(&n)) return qname(*iri);
        if (auto* b = std::get_if<BlankId>(&n)) return blank(*b);
        const auto& lit = std::get<Literal>(n);
        if (lit.kind == Literal::Kind::Integer) return lit.lexical;
        std::string out = "\"" + escape(lit.lexical) + "\"";
        if (lit.datatype) out += "^^" + qname(Iri::absolute(*lit.datatype));
        return out;
    }

    std::string qname(const Iri& iri) {
        const std::string* best_name = nullptr;
        size_t best_len = 0;
        for (const auto& [name, ns] : prefixes_) {
            if (ns.size() > best_len && iri.full.compare(0, ns.size(), ns) == 0 &&
                valid_local(std::string_view(iri.full).substr(ns.size()))) {
                best_name = &name;
                best_len = ns.size();
            }
        }
        if (best_name) return *best_name + ":" + iri.full.substr(best_len);
        return "<" + iri.full + ">";
    }

private:
    const std::map<std::string, std::string>& prefixes_;
    std::unordered_map<std::string, std::string> blanks_;

    std::string blank(const BlankId& b) {
        auto [it, fresh] = blanks_.try_emplace(b.id, "");
        if (fresh) it->second = "_:b" + std::to_string(blanks_.size());
        return it->second;
    }
};

}  // namespace

TripleSet parse_document(std::string_view text) { return Parser(text).run(); }

std::string serialize(const TripleSet& ts) {
    std::ostringstream out;
    for (const auto& [name, iri] : ts.prefixes) out << "@prefix " << name << ": <" << iri << "> .\n";
    Writer w(ts.prefixes);
    if (!ts.triples.empty()) out << "\n";
    const std::string type = std::string(ns::rdf) + "type";
    for (const auto& t : ts.triples) {
        out << w.term(t.subject) << ' ' << (t.predicate.full == type ? std::string("a") : w.qname(t.predicate))
            << ' ' << w.term(t.object) << " .\n";
    }
    return out.str();
}

}  // namespace ontorep
