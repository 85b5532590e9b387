#include "jooip/host_parser.hpp"

#include <cctype>
#include <charconv>
#include <set>

namespace jooip::host {

namespace {

enum class Tok { Ident, Int, Long, Double, Char, String, Punct, Segment, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::int64_t integer = 0;
    double real = 0;
    std::size_t segment = 0;
    SourceLoc loc;
};

class Lexer {
public:
    Lexer(std::string_view src, Unit& unit) : src_(src), unit_(unit) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t;
            t.loc = {line_, col_};
            if (pos_ >= src_.size()) {
                out.push_back(t);
                return out;
            }
            char c = src_[pos_];
            if (c == '/' && peek(1) == '@') {
                out.push_back(segment(t.loc));
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
                t.kind = Tok::Ident;
                while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                              src_[pos_] == '_' || src_[pos_] == '$')) {
                    t.text += advance();
                }
                out.push_back(t);
            } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                       (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
                out.push_back(number(t));
            } else if (c == '"' || c == '\'') {
                out.push_back(quoted(t, c));
            } else {
                out.push_back(punct(t));
            }
        }
    }

private:
    char peek(std::size_t k) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

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

    [[noreturn]] void fail(const std::string& msg, SourceLoc loc) const { throw CompileError(msg, loc, unit_.file); }

    void skip_space()
    {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    advance();
                }
            } else if (c == '/' && peek(1) == '*') {
                SourceLoc at{line_, col_};
                advance();
                advance();
                while (pos_ < src_.size() && !(src_[pos_] == '*' && peek(1) == '/')) {
                    advance();
                }
                if (pos_ >= src_.size()) {
                    fail("unterminated comment", at);
                }
                advance();
                advance();
            } else {
                return;
            }
        }
    }

    Token segment(SourceLoc loc)
    {
        Segment seg;
        seg.begin = pos_;
        seg.loc = loc;
        advance();
        advance();
        if (pos_ < src_.size() && src_[pos_] == '#') {
            advance();
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                seg.tag += advance();
            }
        }
        if (seg.tag.empty()) {
            seg.tag = "GIPL";
        }
        std::size_t text_begin = pos_;
        for (;;) {
            if (pos_ >= src_.size()) {
                fail("unterminated Lucid segment", loc);
            }
            if (src_[pos_] == '/' && peek(1) == '@') {
                fail("nested Lucid segment ('/@' inside a segment)", {line_, col_});
            }
            if (src_[pos_] == '@' && peek(1) == '/') {
                break;
            }
            advance();
        }
        seg.text = std::string(src_.substr(text_begin, pos_ - text_begin));
        advance();
        advance();
        seg.end = pos_;
        seg.index = unit_.segments.size() + 1;
        unit_.segments.push_back(seg);
        Token t;
        t.kind = Tok::Segment;
        t.segment = seg.index;
        t.loc = loc;
        t.text = "/@";
        return t;
    }

    Token number(Token t)
    {
        std::size_t start = pos_;
        bool real = false;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
                real = true;
                advance();
            } else if ((c == 'e' || c == 'E') &&
                       (std::isdigit(static_cast<unsigned char>(peek(1))) ||
                        ((peek(1) == '-' || peek(1) == '+') && std::isdigit(static_cast<unsigned char>(peek(2)))))) {
                real = true;
                advance();
                advance();
            } else {
                break;
            }
        }
        std::string text(src_.substr(start, pos_ - start));
        t.text = text;
        if (pos_ < src_.size() && (src_[pos_] == 'L' || src_[pos_] == 'l') && !real) {
            advance();
            t.kind = Tok::Long;
        } else if (pos_ < src_.size() && (src_[pos_] == 'd' || src_[pos_] == 'D' || src_[pos_] == 'f' ||
                                          src_[pos_] == 'F')) {
            advance();
            real = true;
        }
        if (real) {
            t.kind = Tok::Double;
            t.real = std::stod(text);
            return t;
        }
        if (t.kind != Tok::Long) {
            t.kind = Tok::Int;
        }
        auto r = std::from_chars(text.data(), text.data() + text.size(), t.integer);
        if (r.ec != std::errc()) {
            fail("integer literal out of range: " + text, t.loc);
        }
        if (t.kind == Tok::Int && t.integer > 2147483648LL) {
            fail("integer literal out of range: " + text, t.loc);
        }
        return t;
    }

    Token quoted(Token t, char q)
    {
        advance();
        t.kind = q == '"' ? Tok::String : Tok::Char;
        for (;;) {
            if (pos_ >= src_.size() || src_[pos_] == '\n') {
                fail(q == '"' ? "unterminated string literal" : "unterminated character literal", t.loc);
            }
            char c = advance();
            if (c == q) {
                break;
            }
            if (c == '\\' && pos_ < src_.size()) {
                char e = advance();
                switch (e) {
                case 'n': c = '\n'; break;
                case 't': c = '\t'; break;
                case 'r': c = '\r'; break;
                case '0': c = '\0'; break;
                default: c = e;
                }
            }
            t.text += c;
        }
        if (t.kind == Tok::Char && t.text.size() != 1) {
            fail("character literal must hold one character", t.loc);
        }
        return t;
    }

    Token punct(Token t)
    {
        static const char* three[] = {">>>", "<<=", ">>="};
        static const char* two[] = {"==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=", "%="};
        for (const char* p : three) {
            if (src_.substr(pos_, 3) == p) {
                fail(std::string("unsupported operator '") + p + "'", t.loc);
            }
        }
        t.kind = Tok::Punct;
        for (const char* p : two) {
            if (src_.substr(pos_, 2) == p) {
                t.text = p;
                advance();
                advance();
                return t;
            }
        }
        char c = src_[pos_];
        if (std::string_view("{}()[];,.=<>+-*/%!?:").find(c) == std::string_view::npos) {
            fail(std::string("unexpected character '") + c + "'", t.loc);
        }
        t.text = std::string(1, advance());
        return t;
    }

    std::string_view src_;
    Unit& unit_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

const std::set<std::string> kModifiers = {"public", "private", "protected", "static", "final", "abstract"};

struct Modifiers {
    Visibility visibility = Visibility::Default;
    bool is_static = false;
    bool is_final = false;
};

class Parser {
public:
    Parser(std::vector<Token> tokens, Unit& unit) : toks_(std::move(tokens)), unit_(unit) {}

    void run()
    {
        while (!at_end()) {
            std::size_t start = i_;
            Modifiers mods = modifiers();
            if (is_ident("class")) {
                unit_.classes.push_back(class_decl(mods, start));
            } else {
                TypeRef type = type_ref();
                Token name = expect_ident("function name");
                MethodDecl f = method_rest(mods, type, name);
                f.is_static = true;
                unit_.functions.push_back(std::move(f));
            }
        }
    }

private:
    const Token& cur() const { return toks_[i_]; }
    const Token& ahead(std::size_t k) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
    bool at_end() const { return cur().kind == Tok::End; }
    bool is_punct(const char* p) const { return cur().kind == Tok::Punct && cur().text == p; }
    bool is_ident(const char* w) const { return cur().kind == Tok::Ident && cur().text == w; }

    static std::string describe(const Token& t)
    {
        switch (t.kind) {
        case Tok::End: return "end of input";
        case Tok::Segment: return "Lucid segment";
        case Tok::String: return "\"" + t.text + "\"";
        default: return "'" + t.text + "'";
        }
    }

    [[noreturn]] void fail_expected(const std::string& what) const
    {
        throw CompileError("syntax error: expected " + what + ", found " + describe(cur()), cur().loc, unit_.file);
    }

    Token take() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }

    bool accept(const char* p)
    {
        if (is_punct(p)) {
            ++i_;
            return true;
        }
        return false;
    }

    void expect(const char* p)
    {
        if (!accept(p)) {
            fail_expected(std::string("'") + p + "'");
        }
    }

    Token expect_ident(const std::string& what)
    {
        if (cur().kind != Tok::Ident || kModifiers.count(cur().text)) {
            fail_expected(what);
        }
        return take();
    }

    Modifiers modifiers()
    {
        Modifiers m;
        while (cur().kind == Tok::Ident && kModifiers.count(cur().text)) {
            std::string w = take().text;
            if (w == "public") m.visibility = Visibility::Public;
            else if (w == "private") m.visibility = Visibility::Private;
            else if (w == "protected") m.visibility = Visibility::Protected;
            else if (w == "static") m.is_static = true;
            else if (w == "final") m.is_final = true;
        }
        return m;
    }

    TypeRef type_ref()
    {
        TypeRef t;
        t.name = expect_ident("a type").text;
        while (is_punct("[") && ahead(1).kind == Tok::Punct && ahead(1).text == "]") {
            i_ += 2;
            ++t.array_dims;
        }
        return t;
    }

    std::string source_between(std::size_t from, std::size_t to) const
    {
        // Declaration text: tokens joined by single spaces.
        std::string out;
        for (std::size_t k = from; k < to && k < toks_.size(); ++k) {
            if (toks_[k].kind == Tok::Segment) {
                const Segment& s = unit_.segment(toks_[k].segment);
                out += (out.empty() ? "" : " ") + std::string("/@#") + s.tag + s.text + "@/";
                continue;
            }
            std::string t = toks_[k].kind == Tok::String ? "\"" + toks_[k].text + "\"" : toks_[k].text;
            out += (out.empty() ? "" : " ") + t;
        }
        return out;
    }

    ClassDecl class_decl(Modifiers mods, std::size_t)
    {
        ClassDecl c;
        c.loc = take().loc;
        c.visibility = mods.visibility;
        c.name = expect_ident("class name").text;
        if (is_ident("extends")) {
            ++i_;
            c.parent = expect_ident("parent class name").text;
        }
        if (is_ident("implements")) {
            ++i_;
            do {
                c.interfaces.push_back(expect_ident("interface name").text);
            } while (accept(","));
        }
        expect("{");
        while (!accept("}")) {
            if (at_end()) {
                fail_expected("'}' closing class " + c.name);
            }
            member(c);
        }
        return c;
    }

    void member(ClassDecl& c)
    {
        std::size_t start = i_;
        if (is_ident("static") && ahead(1).kind == Tok::Punct && ahead(1).text == "{") {
            ++i_;
            c.static_blocks.push_back(block());
            return;
        }
        Modifiers mods = modifiers();
        if (cur().kind == Tok::Ident && cur().text == c.name && ahead(1).kind == Tok::Punct && ahead(1).text == "(") {
            Token name = take();
            MethodDecl m = method_rest(mods, TypeRef{"void", 0}, name);
            m.is_constructor = true;
            c.methods.push_back(std::move(m));
            return;
        }
        TypeRef type = type_ref();
        Token name = expect_ident("member name");
        if (is_punct("(")) {
            c.methods.push_back(method_rest(mods, type, name));
            return;
        }
        for (;;) {
            FieldDecl f;
            f.visibility = mods.visibility;
            f.is_static = mods.is_static;
            f.is_final = mods.is_final;
            f.type = type;
            f.name = name.text;
            f.loc = name.loc;
            if (accept("=")) {
                f.init = is_punct("{") ? array_literal(TypeRef{}) : expression();
            }
            f.source = source_between(start, i_);
            c.fields.push_back(std::move(f));
            if (!accept(",")) {
                break;
            }
            start = i_;
            name = expect_ident("member name");
        }
        expect(";");
    }

    MethodDecl method_rest(Modifiers mods, TypeRef type, const Token& name)
    {
        MethodDecl m;
        m.visibility = mods.visibility;
        m.is_static = mods.is_static;
        m.return_type = type;
        m.name = name.text;
        m.loc = name.loc;
        expect("(");
        if (!is_punct(")")) {
            do {
                modifiers();
                Param p;
                p.type = type_ref();
                p.name = expect_ident("parameter name").text;
                m.params.push_back(p);
            } while (accept(","));
        }
        expect(")");
        m.body = block();
        return m;
    }

    StmtPtr block()
    {
        auto s = make_stmt(StmtKind::Block, cur().loc);
        expect("{");
        while (!accept("}")) {
            if (at_end()) {
                fail_expected("'}'");
            }
            s->body.push_back(statement());
        }
        return s;
    }

    bool looks_like_decl() const
    {
        if (cur().kind != Tok::Ident) {
            return false;
        }
        static const std::set<std::string> stmt_words = {"return", "if", "for", "while", "break", "continue",
                                                         "new", "this", "null", "true", "false"};
        if (stmt_words.count(cur().text)) {
            return false;
        }
        if (cur().text == "final") {
            return true;
        }
        std::size_t k = 1;
        while (ahead(k).kind == Tok::Punct && ahead(k).text == "[" && ahead(k + 1).kind == Tok::Punct &&
               ahead(k + 1).text == "]") {
            k += 2;
        }
        return ahead(k).kind == Tok::Ident;
    }

    StmtPtr local_decl()
    {
        auto s = make_stmt(StmtKind::LocalDecl, cur().loc);
        if (is_ident("final")) {
            ++i_;
        }
        s->type = type_ref();
        do {
            std::string name = expect_ident("variable name").text;
            ExprPtr init;
            if (accept("=")) {
                init = is_punct("{") ? array_literal(s->type) : expression();
            }
            s->vars.emplace_back(name, init);
        } while (accept(","));
        return s;
    }

    StmtPtr statement()
    {
        SourceLoc loc = cur().loc;
        if (is_punct("{")) {
            return block();
        }
        if (accept(";")) {
            return make_stmt(StmtKind::Empty, loc);
        }
        if (is_ident("if")) {
            ++i_;
            auto s = make_stmt(StmtKind::If, loc);
            expect("(");
            s->expr = expression();
            expect(")");
            s->then_branch = statement();
            if (is_ident("else")) {
                ++i_;
                s->else_branch = statement();
            }
            return s;
        }
        if (is_ident("while")) {
            ++i_;
            auto s = make_stmt(StmtKind::While, loc);
            expect("(");
            s->expr = expression();
            expect(")");
            s->then_branch = statement();
            return s;
        }
        if (is_ident("for")) {
            ++i_;
            auto s = make_stmt(StmtKind::For, loc);
            expect("(");
            if (!is_punct(";")) {
                if (looks_like_decl()) {
                    s->init = local_decl();
                } else {
                    s->init = make_stmt(StmtKind::ExprStmt, cur().loc);
                    s->init->expr = expression();
                }
            }
            expect(";");
            if (!is_punct(";")) {
                s->expr = expression();
            }
            expect(";");
            if (!is_punct(")")) {
                do {
                    s->update.push_back(expression());
                } while (accept(","));
            }
            expect(")");
            s->then_branch = statement();
            return s;
        }
        if (is_ident("return")) {
            ++i_;
            auto s = make_stmt(StmtKind::Return, loc);
            if (!is_punct(";")) {
                s->expr = expression();
            }
            expect(";");
            return s;
        }
        if (is_ident("break") || is_ident("continue")) {
            auto s = make_stmt(cur().text == "break" ? StmtKind::Break : StmtKind::Continue, loc);
            ++i_;
            expect(";");
            return s;
        }
        if (looks_like_decl()) {
            auto s = local_decl();
            expect(";");
            return s;
        }
        auto s = make_stmt(StmtKind::ExprStmt, loc);
        s->expr = expression();
        expect(";");
        return s;
    }

    // ---- expressions -----------------------------------------------------

    ExprPtr expression() { return assignment(); }

    static bool is_lvalue(const Expr& e)
    {
        return e.kind == ExprKind::Name || e.kind == ExprKind::FieldAccess || e.kind == ExprKind::Index;
    }

    ExprPtr assignment()
    {
        ExprPtr lhs = ternary();
        static const std::set<std::string> ops = {"=", "+=", "-=", "*=", "/=", "%="};
        if (cur().kind == Tok::Punct && ops.count(cur().text)) {
            Token op = take();
            if (!is_lvalue(*lhs)) {
                throw CompileError("invalid assignment target", op.loc, unit_.file);
            }
            auto e = make_expr(ExprKind::Assign, op.loc);
            e->op = op.text;
            e->operands = {lhs, assignment()};
            return e;
        }
        return lhs;
    }

    ExprPtr ternary()
    {
        ExprPtr cond = binary(0);
        if (is_punct("?")) {
            Token q = take();
            auto e = make_expr(ExprKind::Ternary, q.loc);
            ExprPtr a = ternary();
            expect(":");
            e->operands = {cond, a, ternary()};
            return e;
        }
        return cond;
    }

    static int binary_prec(const Token& t)
    {
        if (t.kind != Tok::Punct) return -1;
        const std::string& s = t.text;
        if (s == "||") return 0;
        if (s == "&&") return 1;
        if (s == "==" || s == "!=") return 2;
        if (s == "<" || s == ">" || s == "<=" || s == ">=") return 3;
        if (s == "+" || s == "-") return 4;
        if (s == "*" || s == "/" || s == "%") return 5;
        return -1;
    }

    ExprPtr binary(int min_prec)
    {
        ExprPtr lhs = unary();
        for (;;) {
            int p = binary_prec(cur());
            if (p < min_prec) {
                return lhs;
            }
            Token op = take();
            auto e = make_expr(ExprKind::Binary, op.loc);
            e->op = op.text;
            e->operands = {lhs, binary(p + 1)};
            lhs = e;
        }
    }

    ExprPtr unary()
    {
        SourceLoc loc = cur().loc;
        if (is_punct("-") || is_punct("!") || is_punct("+")) {
            std::string op = take().text;
            ExprPtr operand = unary();
            if (op == "-" && operand->kind == ExprKind::Literal &&
                (operand->literal.kind == HostLiteral::Kind::Int || operand->literal.kind == HostLiteral::Kind::Long ||
                 operand->literal.kind == HostLiteral::Kind::Double)) {
                operand->literal.integer = -operand->literal.integer;
                operand->literal.real = -operand->literal.real;
                return operand;
            }
            auto e = make_expr(ExprKind::Unary, loc);
            e->op = op;
            e->operands = {operand};
            return e;
        }
        if (is_punct("++") || is_punct("--")) {
            auto e = make_expr(ExprKind::IncDec, loc);
            e->op = take().text;
            e->prefix = true;
            e->operands = {unary()};
            if (!is_lvalue(*e->operands[0])) {
                throw CompileError("invalid operand of " + e->op, loc, unit_.file);
            }
            return e;
        }
        return postfix(primary());
    }

    ExprPtr postfix(ExprPtr e)
    {
        for (;;) {
            SourceLoc loc = cur().loc;
            if (accept(".")) {
                Token name = expect_ident("member name");
                if (accept("(")) {
                    auto call = make_expr(ExprKind::MethodCall, name.loc);
                    call->name = name.text;
                    call->operands.push_back(e);
                    arguments(call->operands);
                    e = call;
                } else {
                    auto f = make_expr(ExprKind::FieldAccess, name.loc);
                    f->name = name.text;
                    f->operands = {e};
                    e = f;
                }
            } else if (accept("[")) {
                auto idx = make_expr(ExprKind::Index, loc);
                idx->operands = {e, expression()};
                expect("]");
                e = idx;
            } else if ((is_punct("++") || is_punct("--")) && is_lvalue(*e)) {
                auto inc = make_expr(ExprKind::IncDec, loc);
                inc->op = take().text;
                inc->operands = {e};
                e = inc;
            } else {
                return e;
            }
        }
    }

    void arguments(std::vector<ExprPtr>& out)
    {
        if (!accept(")")) {
            do {
                out.push_back(expression());
            } while (accept(","));
            expect(")");
        }
    }

    ExprPtr array_literal(TypeRef type)
    {
        auto e = make_expr(ExprKind::ArrayLiteral, cur().loc);
        e->type = type;
        expect("{");
        if (!accept("}")) {
            do {
                if (is_punct("}")) {
                    break;
                }
                e->operands.push_back(is_punct("{") ? array_literal(TypeRef{}) : expression());
            } while (accept(","));
            expect("}");
        }
        return e;
    }

    ExprPtr primary()
    {
        const Token& t = cur();
        SourceLoc loc = t.loc;
        switch (t.kind) {
        case Tok::Int:
        case Tok::Long: {
            auto e = make_expr(ExprKind::Literal, loc);
            e->literal.kind = t.kind == Tok::Int ? HostLiteral::Kind::Int : HostLiteral::Kind::Long;
            e->literal.integer = t.integer;
            ++i_;
            return e;
        }
        case Tok::Double: {
            auto e = make_expr(ExprKind::Literal, loc);
            e->literal.kind = HostLiteral::Kind::Double;
            e->literal.real = t.real;
            ++i_;
            return e;
        }
        case Tok::String:
        case Tok::Char: {
            auto e = make_expr(ExprKind::Literal, loc);
            e->literal.kind = t.kind == Tok::String ? HostLiteral::Kind::String : HostLiteral::Kind::Char;
            e->literal.text = t.text;
            ++i_;
            return e;
        }
        case Tok::Segment: {
            auto e = make_expr(ExprKind::Segment, loc);
            e->segment = t.segment;
            ++i_;
            return e;
        }
        case Tok::Punct:
            if (accept("(")) {
                ExprPtr inner = expression();
                expect(")");
                return inner;
            }
            fail_expected("an expression");
        case Tok::Ident:
            break;
        case Tok::End:
            fail_expected("an expression");
        }
        const std::string& w = t.text;
        if (w == "true" || w == "false") {
            auto e = make_expr(ExprKind::Literal, loc);
            e->literal.kind = HostLiteral::Kind::Boolean;
            e->literal.boolean = w == "true";
            ++i_;
            return e;
        }
        if (w == "null") {
            ++i_;
            return make_expr(ExprKind::Null, loc);
        }
        if (w == "this") {
            ++i_;
            return make_expr(ExprKind::This, loc);
        }
        if (w == "new") {
            ++i_;
            TypeRef type;
            type.name = expect_ident("a type after 'new'").text;
            if (accept("(")) {
                auto e = make_expr(ExprKind::New, loc);
                e->type = type;
                arguments(e->operands);
                return e;
            }
            if (is_punct("[") && ahead(1).kind == Tok::Punct && ahead(1).text == "]") {
                while (is_punct("[") && ahead(1).kind == Tok::Punct && ahead(1).text == "]") {
                    i_ += 2;
                    ++type.array_dims;
                }
                return array_literal(type);
            }
            expect("[");
            auto e = make_expr(ExprKind::NewArray, loc);
            type.array_dims = 1;
            e->type = type;
            e->operands = {expression()};
            expect("]");
            return e;
        }
        if (kModifiers.count(w)) {
            fail_expected("an expression");
        }
        Token name = take();
        if (accept("(")) {
            auto e = make_expr(ExprKind::Call, loc);
            e->name = name.text;
            arguments(e->operands);
            return e;
        }
        auto e = make_expr(ExprKind::Name, loc);
        e->name = name.text;
        return e;
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
    Unit& unit_;
};

}  // namespace

Unit parse_host(std::string_view text, const std::string& file)
{
    Unit unit;
    unit.source = std::string(text);
    unit.file = file;
    Parser parser(Lexer(text, unit).run(), unit);
    parser.run();
    return unit;
}

}  // namespace jooip::host
