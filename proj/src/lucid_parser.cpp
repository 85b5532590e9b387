#include "jooip/lucid_parser.hpp"

#include "jooip/desugar.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <set>

namespace jooip::lucid {

const char* to_string(DialectTag tag)
{
    switch (tag) {
    case DialectTag::GIPL: return "GIPL";
    case DialectTag::IndexicalLucid: return "INDEXICALLUCID";
    case DialectTag::JLucid: return "JLUCID";
    case DialectTag::ObjectiveLucid: return "OBJECTIVELUCID";
    case DialectTag::Lucx: return "LUCX";
    }
    return "?";
}

std::optional<DialectTag> parse_dialect(std::string_view name)
{
    if (name.empty() || name == "GIPL") {
        return DialectTag::GIPL;
    }
    if (name == "INDEXICALLUCID") {
        return DialectTag::IndexicalLucid;
    }
    if (name == "JLUCID") {
        return DialectTag::JLucid;
    }
    if (name == "OBJECTIVELUCID") {
        return DialectTag::ObjectiveLucid;
    }
    if (name == "LUCX") {
        return DialectTag::Lucx;
    }
    return std::nullopt;
}

std::string dialect_names()
{
    return "GIPL, INDEXICALLUCID, JLUCID, OBJECTIVELUCID, LUCX";
}

namespace {

enum class Tok { Ident, Int, Double, String, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourceLoc loc;
};

const std::set<std::string, std::less<>> kKeywords = {
    "if", "then", "else", "fi", "where", "end", "dimension", "true", "false",
    "first", "next", "fby", "wvr", "upon", "asa",
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        while (true) {
            skip_space();
            Token t;
            t.loc = {line_, col_};
            if (pos_ >= src_.size()) {
                t.kind = Tok::End;
                out.push_back(t);
                return out;
            }
            char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                t.kind = Tok::Ident;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                    t.text += advance();
                }
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                t.kind = Tok::Int;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    t.text += advance();
                }
                if (pos_ + 1 < src_.size() && src_[pos_] == '.' &&
                    std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
                    t.kind = Tok::Double;
                    t.text += advance();
                    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                        t.text += advance();
                    }
                }
            } else if (c == '"') {
                t.kind = Tok::String;
                advance();
                while (true) {
                    if (pos_ >= src_.size()) {
                        throw CompileError("unterminated string literal", t.loc);
                    }
                    char ch = advance();
                    if (ch == '"') {
                        break;
                    }
                    if (ch == '\\' && pos_ < src_.size()) {
                        char esc = advance();
                        ch = esc == 'n' ? '\n' : esc == 't' ? '\t' : esc;
                    }
                    t.text += ch;
                }
            } else {
                t.kind = Tok::Punct;
                static const char* two[] = {"<=", ">=", "==", "!=", "&&", "||"};
                for (const char* op : two) {
                    if (src_.substr(pos_, 2) == op) {
                        t.text = op;
                        advance();
                        advance();
                        break;
                    }
                }
                if (t.text.empty()) {
                    static const std::string_view single = "+-*/%<>!()[],:;.#@=";
                    if (single.find(c) == std::string_view::npos) {
                        throw CompileError(std::string("unexpected character '") + c + "'", t.loc);
                    }
                    t.text = std::string(1, advance());
                }
            }
            out.push_back(std::move(t));
        }
    }

private:
    char advance()
    {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space()
    {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (src_.substr(pos_, 2) == "//") {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    advance();
                }
            } else if (src_.substr(pos_, 2) == "/*") {
                SourceLoc start{line_, col_};
                advance();
                advance();
                while (pos_ < src_.size() && src_.substr(pos_, 2) != "*/") {
                    advance();
                }
                if (pos_ >= src_.size()) {
                    throw CompileError("unterminated comment", start);
                }
                advance();
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Parser {
public:
    Parser(std::vector<Token> tokens, const ParseOptions& options) : toks_(std::move(tokens)), opts_(options) {}

    ExprPtr parse_all()
    {
        ExprPtr e = expression();
        if (peek().kind != Tok::End) {
            fail({"end of input"});
        }
        return e;
    }

private:
    const Token& peek(std::size_t ahead = 0) const
    {
        std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[i];
    }

    Token take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    bool is_punct(const char* p, std::size_t ahead = 0) const
    {
        return peek(ahead).kind == Tok::Punct && peek(ahead).text == p;
    }

    bool is_keyword(const char* k, std::size_t ahead = 0) const
    {
        return peek(ahead).kind == Tok::Ident && peek(ahead).text == k;
    }

    [[noreturn]] void fail(std::initializer_list<std::string> expected) const
    {
        std::string msg = "syntax error: expected ";
        std::size_t i = 0;
        for (const auto& e : expected) {
            msg += (i++ ? " or " : "") + e;
        }
        const Token& t = peek();
        msg += ", found " + (t.kind == Tok::End ? std::string("end of input") : "'" + t.text + "'");
        throw CompileError(msg, t.loc);
    }

    void expect_punct(const char* p)
    {
        if (!is_punct(p)) {
            fail({std::string("'") + p + "'"});
        }
        take();
    }

    void expect_keyword(const char* k)
    {
        if (!is_keyword(k)) {
            fail({std::string("'") + k + "'"});
        }
        take();
    }

    std::string identifier()
    {
        if (peek().kind != Tok::Ident || kKeywords.count(peek().text)) {
            fail({"identifier"});
        }
        return take().text;
    }

    /// Member names after '.' may collide with Lucid keywords (`obj.next()`).
    std::string member_name()
    {
        if (peek().kind != Tok::Ident) {
            fail({"member name"});
        }
        return take().text;
    }

    std::optional<IndexicalOp> binary_indexical(std::initializer_list<IndexicalOp> ops) const
    {
        if (peek().kind != Tok::Ident || !is_punct(".", 1)) {
            return std::nullopt;
        }
        for (IndexicalOp op : ops) {
            if (peek().text == to_string(op)) {
                return op;
            }
        }
        return std::nullopt;
    }

    std::string indexical_dimension(IndexicalOp op, SourceLoc loc)
    {
        if (!opts_.indexical) {
            throw CompileError(std::string("operator '") + to_string(op) + "' requires INDEXICALLUCID", loc);
        }
        expect_punct(".");
        return identifier();
    }

    ExprPtr expression()
    {
        ExprPtr body = stream_filter();
        for (;;) {
            // A `;` may separate an expression from its where clause.
            if (is_punct(";") && is_keyword("where", 1)) {
                take();
            }
            if (!is_keyword("where")) {
                break;
            }
            SourceLoc loc = take().loc;
            std::vector<Decl> decls;
            while (!is_keyword("end")) {
                if (peek().kind == Tok::End) {
                    fail({"'end'"});
                }
                decls.push_back(declaration());
                if (is_punct(";")) {
                    take();
                }
            }
            take();
            body = make_where(body, std::move(decls), loc);
        }
        return body;
    }

    Decl declaration()
    {
        Decl d;
        d.loc = peek().loc;
        if (is_keyword("dimension")) {
            take();
            d.kind = Decl::Kind::Dimension;
            d.dimensions.push_back(identifier());
            while (is_punct(",")) {
                take();
                d.dimensions.push_back(identifier());
            }
            return d;
        }
        d.name = identifier();
        if (is_punct("=")) {
            take();
            d.kind = Decl::Kind::Variable;
            d.body = expression();
            return d;
        }
        d.kind = Decl::Kind::Function;
        while (is_punct(".")) {
            take();
            d.dim_params.push_back(identifier());
        }
        expect_punct("(");
        if (!is_punct(")")) {
            d.params.push_back(identifier());
            while (is_punct(",")) {
                take();
                d.params.push_back(identifier());
            }
        }
        expect_punct(")");
        expect_punct("=");
        d.body = expression();
        return d;
    }

    // wvr / upon / asa: left associative, loosest binary operators.
    ExprPtr stream_filter()
    {
        ExprPtr lhs = followed_by();
        while (auto op = binary_indexical({IndexicalOp::Wvr, IndexicalOp::Upon, IndexicalOp::Asa})) {
            SourceLoc loc = take().loc;
            std::string dim = indexical_dimension(*op, loc);
            ExprPtr rhs = followed_by();
            lhs = make_indexical(*op, dim, {lhs, rhs}, loc);
        }
        return lhs;
    }

    // fby: right associative.
    ExprPtr followed_by()
    {
        ExprPtr lhs = conditional();
        if (binary_indexical({IndexicalOp::Fby})) {
            SourceLoc loc = take().loc;
            std::string dim = indexical_dimension(IndexicalOp::Fby, loc);
            ExprPtr rhs = followed_by();
            return make_indexical(IndexicalOp::Fby, dim, {lhs, rhs}, loc);
        }
        return lhs;
    }

    ExprPtr conditional()
    {
        if (!is_keyword("if")) {
            return logical_or();
        }
        SourceLoc loc = take().loc;
        ExprPtr cond = expression();
        expect_keyword("then");
        ExprPtr then_branch = expression();
        expect_keyword("else");
        ExprPtr else_branch = conditional();
        if (is_keyword("fi")) {
            take();
        }
        return make_conditional(cond, then_branch, else_branch, loc);
    }

    ExprPtr logical_or()
    {
        ExprPtr lhs = logical_and();
        while (is_punct("||")) {
            SourceLoc loc = take().loc;
            lhs = make_binary(BinaryOp::Or, lhs, logical_and(), loc);
        }
        return lhs;
    }

    ExprPtr logical_and()
    {
        ExprPtr lhs = comparison();
        while (is_punct("&&")) {
            SourceLoc loc = take().loc;
            lhs = make_binary(BinaryOp::And, lhs, comparison(), loc);
        }
        return lhs;
    }

    ExprPtr comparison()
    {
        static const std::pair<const char*, BinaryOp> ops[] = {
            {"==", BinaryOp::Eq}, {"!=", BinaryOp::Ne}, {"<=", BinaryOp::Le},
            {">=", BinaryOp::Ge}, {"<", BinaryOp::Lt},  {">", BinaryOp::Gt},
        };
        ExprPtr lhs = additive();
        while (true) {
            bool matched = false;
            for (const auto& [text, op] : ops) {
                if (is_punct(text)) {
                    SourceLoc loc = take().loc;
                    lhs = make_binary(op, lhs, additive(), loc);
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                return lhs;
            }
        }
    }

    ExprPtr additive()
    {
        ExprPtr lhs = multiplicative();
        while (is_punct("+") || is_punct("-")) {
            Token t = take();
            lhs = make_binary(t.text == "+" ? BinaryOp::Add : BinaryOp::Sub, lhs, multiplicative(), t.loc);
        }
        return lhs;
    }

    ExprPtr multiplicative()
    {
        ExprPtr lhs = unary();
        while (is_punct("*") || is_punct("/") || is_punct("%")) {
            Token t = take();
            BinaryOp op = t.text == "*" ? BinaryOp::Mul : t.text == "/" ? BinaryOp::Div : BinaryOp::Mod;
            lhs = make_binary(op, lhs, unary(), t.loc);
        }
        return lhs;
    }

    ExprPtr unary()
    {
        if (is_punct("-") || is_punct("!")) {
            Token t = take();
            return make_unary(t.text == "-" ? UnaryOp::Neg : UnaryOp::Not, unary(), t.loc);
        }
        if ((is_keyword("first") || is_keyword("next")) && is_punct(".", 1)) {
            Token t = take();
            IndexicalOp op = t.text == "first" ? IndexicalOp::First : IndexicalOp::Next;
            std::string dim = indexical_dimension(op, t.loc);
            return make_indexical(op, dim, {unary()}, t.loc);
        }
        return context_change();
    }

    ExprPtr context_change()
    {
        ExprPtr body = tag_query();
        while (is_punct("@")) {
            SourceLoc loc = take().loc;
            std::vector<AtBinding> delta;
            if (is_punct(".")) {
                take();
                std::string dim = identifier();
                delta.push_back({dim, tag_query()});
                body = make_at(body, std::move(delta), loc);
                continue;
            }
            expect_punct("[");
            // Chained `@[x:a][y:b]` nests: the first bracket is innermost.
            while (true) {
                delta.push_back(at_binding());
                while (is_punct(",")) {
                    take();
                    delta.push_back(at_binding());
                }
                expect_punct("]");
                body = make_at(body, std::move(delta), loc);
                delta.clear();
                if (!is_punct("[")) {
                    break;
                }
                take();
            }
        }
        return body;
    }

    AtBinding at_binding()
    {
        AtBinding b;
        b.dimension = identifier();
        expect_punct(":");
        b.tag = expression();
        return b;
    }

    ExprPtr tag_query()
    {
        if (!is_punct("#")) {
            return postfix();
        }
        SourceLoc loc = take().loc;
        if (is_punct(".")) {
            take();
        }
        return make_tag_query(identifier(), loc);
    }

    ExprPtr postfix()
    {
        ExprPtr e = primary();
        while (is_punct(".")) {
            SourceLoc loc = take().loc;
            std::string member = member_name();
            if (is_punct("(")) {
                e = make_dot_call(e, member, arguments(), loc);
            } else {
                e = make_dot_member(e, member, loc);
            }
        }
        return e;
    }

    std::vector<ExprPtr> arguments()
    {
        expect_punct("(");
        std::vector<ExprPtr> args;
        if (!is_punct(")")) {
            args.push_back(expression());
            while (is_punct(",")) {
                take();
                args.push_back(expression());
            }
        }
        expect_punct(")");
        return args;
    }

    ExprPtr primary()
    {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Int: {
            std::int64_t v = 0;
            auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
            if (ec != std::errc()) {
                throw CompileError("integer literal out of range: " + t.text, t.loc);
            }
            take();
            return make_literal({v}, t.loc);
        }
        case Tok::Double: {
            double v = std::strtod(t.text.c_str(), nullptr);
            SourceLoc loc = take().loc;
            return make_literal({v}, loc);
        }
        case Tok::String: {
            Token s = take();
            return make_literal({s.text}, s.loc);
        }
        case Tok::Ident:
            if (t.text == "true" || t.text == "false") {
                Token b = take();
                return make_literal({b.text == "true"}, b.loc);
            }
            if (!kKeywords.count(t.text)) {
                Token id = take();
                if (is_punct("(")) {
                    return make_call(id.text, {}, arguments(), id.loc);
                }
                return make_identifier(id.text, id.loc);
            }
            break;
        case Tok::Punct:
            if (t.text == "(") {
                take();
                ExprPtr e = expression();
                expect_punct(")");
                return e;
            }
            break;
        case Tok::End:
            break;
        }
        fail({"expression"});
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    ParseOptions opts_;
};

}  // namespace

ExprPtr parse_gipl(std::string_view text, const ParseOptions& options)
{
    Parser parser(Lexer(text).run(), options);
    ExprPtr root = parser.parse_all();
    number_nodes(root);
    return root;
}

SegmentParse parse_segment(std::string_view tag, std::string_view text)
{
    auto dialect = parse_dialect(tag);
    if (!dialect) {
        throw CompileError("unknown Lucid variant tag '" + std::string(tag) + "' (valid tags: " + dialect_names() +
                           ")");
    }
    SegmentParse out;
    out.dialect = *dialect;
    ParseOptions options;
    options.indexical = *dialect != DialectTag::GIPL;
    out.ast = parse_gipl(text, options);
    out.dot_notation = *dialect == DialectTag::ObjectiveLucid || *dialect == DialectTag::JLucid ||
                       *dialect == DialectTag::Lucx;
    if (*dialect == DialectTag::JLucid || *dialect == DialectTag::Lucx) {
        out.warnings.push_back(std::string(to_string(*dialect)) + " segment compiled as OBJECTIVELUCID");
    }
    if (*dialect != DialectTag::GIPL) {
        out.ast = desugar_indexical(out.ast);
    }
    number_nodes(out.ast);
    return out;
}

}  // namespace jooip::lucid
