#include "uhatlab/parser.hpp"

#include <cctype>
#include <sstream>

namespace uhatlab {

using namespace ex;

namespace {

struct Token {
    enum Kind { Ident, Number, Letter, Punct, End } kind = End;
    std::string text;
    int line = 0;
    int col = 0;
};

[[noreturn]] void syntax_error(const Token& at, const std::string& msg) {
    fail(ErrorKind::SyntaxError,
         "line " + std::to_string(at.line) + ", column " + std::to_string(at.col) + ": " + msg);
}

class Lexer {
public:
    Lexer(const std::string& text, int line_offset = 0) {
        int line = line_offset;
        int col = 1;
        size_t k = 0;
        auto push = [&](Token::Kind kind, std::string t, int c) {
            tokens_.push_back({kind, std::move(t), line, c});
        };
        while (k < text.size()) {
            char c = text[k];
            if (c == '\n') {
                ++line;
                col = 1;
                ++k;
                continue;
            }
            if (isspace(static_cast<unsigned char>(c))) {
                ++col;
                ++k;
                continue;
            }
            if (c == '#') { // comment to end of line
                while (k < text.size() && text[k] != '\n') ++k;
                continue;
            }
            int start_col = col;
            if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string word;
                while (k < text.size() &&
                       (isalnum(static_cast<unsigned char>(text[k])) || text[k] == '_')) {
                    word += text[k++];
                    ++col;
                }
                push(Token::Ident, word, start_col);
                continue;
            }
            if (isdigit(static_cast<unsigned char>(c))) {
                std::string digits;
                while (k < text.size() && isdigit(static_cast<unsigned char>(text[k]))) {
                    digits += text[k++];
                    ++col;
                }
                push(Token::Number, digits, start_col);
                continue;
            }
            if (c == '\'') {
                if (k + 2 >= text.size() || text[k + 2] != '\'')
                    fail(ErrorKind::SyntaxError, "line " + std::to_string(line) + ", column " +
                                                     std::to_string(col) +
                                                     ": expected 'x' letter literal");
                push(Token::Letter, std::string(1, text[k + 1]), start_col);
                k += 3;
                col += 3;
                continue;
            }
            // multi-char operators
            static const char* two_char[] = {"==", "!=", "<=", ">=", "&&", "||", "->"};
            bool matched = false;
            for (const char* op : two_char) {
                if (text.compare(k, 2, op) == 0) {
                    push(Token::Punct, op, start_col);
                    k += 2;
                    col += 2;
                    matched = true;
                    break;
                }
            }
            if (matched) continue;
            push(Token::Punct, std::string(1, c), start_col);
            ++k;
            ++col;
        }
        Token end;
        end.kind = Token::End;
        end.line = line;
        end.col = col;
        tokens_.push_back(end);
    }

    const Token& peek(int ahead = 0) const {
        size_t idx = pos_ + ahead;
        return idx < tokens_.size() ? tokens_[idx] : tokens_.back();
    }
    Token next() {
        Token t = peek();
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }
    bool at_end() const { return peek().kind == Token::End; }

    bool accept_punct(const std::string& p) {
        if (peek().kind == Token::Punct && peek().text == p) {
            next();
            return true;
        }
        return false;
    }
    bool accept_ident(const std::string& word) {
        if (peek().kind == Token::Ident && peek().text == word) {
            next();
            return true;
        }
        return false;
    }
    void expect_punct(const std::string& p) {
        if (!accept_punct(p)) syntax_error(peek(), "expected '" + p + "'");
    }
    void expect_ident(const std::string& word) {
        if (!accept_ident(word)) syntax_error(peek(), "expected '" + word + "'");
    }

private:
    std::vector<Token> tokens_;
    size_t pos_ = 0;
};

// Recursive-descent expression parser over the DSL grammar. `allow_c`
// permits the initialization letter variable c.
class ExprParser {
public:
    ExprParser(Lexer& lex, bool allow_c) : lex_(lex), allow_c_(allow_c) {}

    Expr parse() { return parse_or(); }

private:
    Lexer& lex_;
    bool allow_c_;

    Expr parse_or() {
        Expr e = parse_and();
        while (lex_.accept_punct("||")) e = logic_or(e, parse_and());
        return e;
    }
    Expr parse_and() {
        Expr e = parse_cmp();
        while (lex_.accept_punct("&&")) e = logic_and(e, parse_cmp());
        return e;
    }
    Expr parse_cmp() {
        Expr e = parse_add();
        if (lex_.accept_punct("==")) return eq(e, parse_add());
        if (lex_.accept_punct("!=")) return logic_not(eq(e, parse_add()));
        if (lex_.accept_punct("<")) return lt(e, parse_add());
        if (lex_.accept_punct("<=")) {
            Expr rhs = parse_add();
            return logic_not(lt(rhs, e));
        }
        if (lex_.accept_punct(">")) {
            Expr rhs = parse_add();
            return lt(rhs, e);
        }
        if (lex_.accept_punct(">=")) return logic_not(lt(e, parse_add()));
        return e;
    }
    Expr parse_add() {
        Expr e = parse_mul();
        while (true) {
            if (lex_.accept_punct("+")) {
                e = add(e, parse_mul());
            } else if (lex_.accept_punct("-")) {
                e = sub(e, parse_mul());
            } else {
                return e;
            }
        }
    }
    Expr parse_mul() {
        Expr e = parse_unary();
        while (lex_.accept_punct("*")) e = mul(e, parse_unary());
        return e;
    }
    Expr parse_unary() {
        if (lex_.accept_punct("!")) return logic_not(parse_unary());
        if (lex_.accept_punct("-")) {
            Expr inner = parse_unary();
            // fold unary minus on rational literals so that printed
            // negative constants re-parse to the identical node
            if (const auto* r = std::get_if<RatLit>(&inner->node)) return rat(Rat(-r->value));
            if (const auto* i = std::get_if<IntLit>(&inner->node)) return intlit(Int(-i->value));
            return neg(inner);
        }
        return parse_postfix();
    }
    Expr parse_postfix() {
        Expr e = parse_primary();
        while (lex_.peek().kind == Token::Punct && lex_.peek().text == ".") {
            lex_.next();
            Token idx = lex_.next();
            if (idx.kind != Token::Number) syntax_error(idx, "expected a tuple index after '.'");
            e = get(e, std::stoi(idx.text));
        }
        return e;
    }
    Expr parse_primary() {
        Token t = lex_.peek();
        if (t.kind == Token::Number) {
            lex_.next();
            Int num(t.text);
            if (lex_.peek().kind == Token::Punct && lex_.peek().text == "/") {
                Token after = lex_.peek(1);
                if (after.kind != Token::Number)
                    syntax_error(after, "expected a denominator (division is not an operator)");
                lex_.next();
                lex_.next();
                Int den(after.text);
                if (den == 0) syntax_error(after, "zero denominator");
                return rat(Rat(num, den));
            }
            return rat(Rat(num));
        }
        if (t.kind == Token::Letter) {
            lex_.next();
            return sym(t.text[0]);
        }
        if (t.kind == Token::Punct && t.text == "(") {
            lex_.next();
            Expr e = parse_or();
            lex_.expect_punct(")");
            return e;
        }
        if (t.kind == Token::Ident) {
            if (t.text == "i") {
                lex_.next();
                return pos_i();
            }
            if (t.text == "j") {
                lex_.next();
                return pos_j();
            }
            if (t.text == "n") {
                lex_.next();
                return len();
            }
            if (t.text == "c") {
                if (!allow_c_)
                    syntax_error(t, "'c' is only available in initialization expressions");
                lex_.next();
                return var(Side::I, 0);
            }
            if (t.text == "true" || t.text == "false") {
                lex_.next();
                return boolean(t.text == "true");
            }
            if (t.text == "pow") {
                lex_.next();
                lex_.expect_punct("(");
                Expr base = parse_or();
                lex_.expect_punct(",");
                Expr exponent = parse_or();
                lex_.expect_punct(")");
                return pow(base, exponent);
            }
            if (t.text == "if") {
                lex_.next();
                lex_.expect_punct("(");
                Expr cond = parse_or();
                lex_.expect_punct(",");
                Expr then_branch = parse_or();
                lex_.expect_punct(",");
                Expr else_branch = parse_or();
                lex_.expect_punct(")");
                return ite(cond, then_branch, else_branch);
            }
            if (t.text == "tuple") {
                lex_.next();
                lex_.expect_punct("(");
                std::vector<Expr> items;
                if (!lex_.accept_punct(")")) {
                    items.push_back(parse_or());
                    while (lex_.accept_punct(",")) items.push_back(parse_or());
                    lex_.expect_punct(")");
                }
                return tuple(std::move(items));
            }
            if (t.text.size() > 1 && t.text[0] == 'L') {
                bool digits = true;
                for (size_t k = 1; k < t.text.size(); ++k)
                    if (!isdigit(static_cast<unsigned char>(t.text[k]))) digits = false;
                if (digits) {
                    lex_.next();
                    int layer = std::stoi(t.text.substr(1));
                    lex_.expect_punct("[");
                    Token side = lex_.next();
                    Side s;
                    if (side.kind == Token::Ident && side.text == "i") {
                        s = Side::I;
                    } else if (side.kind == Token::Ident && side.text == "j") {
                        s = Side::J;
                    } else {
                        syntax_error(side, "expected i or j inside layer reference");
                    }
                    lex_.expect_punct("]");
                    return var(s, layer);
                }
            }
        }
        syntax_error(t, "unexpected token '" + t.text + "' in expression");
    }
};

std::vector<char> parse_alphabet(Lexer& lex) {
    std::vector<char> letters;
    while (true) {
        Token t = lex.next();
        if (t.kind == Token::Letter) {
            letters.push_back(t.text[0]);
        } else if (t.kind == Token::Ident && t.text.size() == 1) {
            letters.push_back(t.text[0]);
        } else if (t.kind == Token::Number && t.text.size() == 1) {
            letters.push_back(t.text[0]);
        } else {
            syntax_error(t, "expected an alphabet letter");
        }
        if (!lex.accept_punct(",")) break;
    }
    return letters;
}

} // namespace

Recognizer parse_program(const std::string& text) {
    Recognizer rec;
    bool saw_init = false, saw_accept = false, saw_empty = false;
    int expected_line = 1;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        Lexer lex(raw, line_no);
        if (lex.at_end()) continue;
        Token head = lex.next();
        if (head.kind != Token::Ident) syntax_error(head, "expected a directive");

        if (head.text == "init") {
            if (saw_init) syntax_error(head, "duplicate init directive");
            saw_init = true;
            Token kind = lex.next();
            if (kind.text == "charonly") {
                rec.init.kind = InitKind::CharOnly;
            } else if (kind.text == "charposlen") {
                rec.init.kind = InitKind::CharPosLen;
            } else if (kind.text == "custom") {
                rec.init.kind = InitKind::CustomExpr;
            } else {
                syntax_error(kind, "expected charonly, charposlen or custom");
            }
            lex.expect_ident("alphabet");
            lex.expect_punct("=");
            rec.init.alphabet = parse_alphabet(lex);
            if (rec.init.kind == InitKind::CustomExpr) {
                lex.expect_ident("expr");
                lex.expect_punct("=");
                rec.init.custom = ExprParser(lex, true).parse();
            }
            if (!lex.at_end()) syntax_error(lex.peek(), "trailing tokens after init");
            continue;
        }

        if (head.text == "accept") {
            if (saw_accept) syntax_error(head, "duplicate accept directive");
            saw_accept = true;
            lex.expect_ident("at");
            Token where = lex.next();
            if (where.text == "last") {
                rec.read_pos = ReadPos::Last;
            } else if (where.text == "first") {
                rec.read_pos = ReadPos::First;
            } else {
                syntax_error(where, "expected last or first");
            }
            lex.expect_ident("when");
            rec.accept = ExprParser(lex, false).parse();
            if (!lex.at_end()) syntax_error(lex.peek(), "trailing tokens after accept");
            continue;
        }

        if (head.text == "empty") {
            if (saw_empty) syntax_error(head, "duplicate empty directive");
            saw_empty = true;
            Token what = lex.next();
            if (what.text == "accept") {
                rec.empty_word_accepts = true;
            } else if (what.text == "reject") {
                rec.empty_word_accepts = false;
            } else {
                syntax_error(what, "expected accept or reject");
            }
            if (!lex.at_end()) syntax_error(lex.peek(), "trailing tokens after empty");
            continue;
        }

        // L<k>(i) = ...
        if (head.text.size() > 1 && head.text[0] == 'L') {
            int declared = -1;
            try {
                declared = std::stoi(head.text.substr(1));
            } catch (const std::exception&) {
                syntax_error(head, "expected a line L<k>");
            }
            if (declared != expected_line)
                syntax_error(head, "expected line L" + std::to_string(expected_line) +
                                       " at this point");
            ++expected_line;
            lex.expect_punct("(");
            lex.expect_ident("i");
            lex.expect_punct(")");
            lex.expect_punct("=");

            if (lex.accept_ident("attend")) {
                AttentionLine at;
                Token tie = lex.next();
                if (tie.text == "rightmost") {
                    at.tie = TieBreak::Rightmost;
                } else if (tie.text == "leftmost") {
                    at.tie = TieBreak::Leftmost;
                } else {
                    syntax_error(tie, "expected rightmost or leftmost");
                }
                lex.expect_ident("j");
                lex.expect_punct("[");
                lex.expect_ident("mask");
                lex.expect_punct("=");
                Token mask = lex.next();
                if (mask.text == "none") {
                    at.mask = Masking::NoMask;
                } else if (mask.text == "future") {
                    at.mask = Masking::StrictFuture;
                } else if (mask.text == "past") {
                    at.mask = Masking::StrictPast;
                } else {
                    syntax_error(mask, "expected none, future or past");
                }
                lex.expect_punct(",");
                lex.expect_ident("score");
                lex.expect_punct("=");
                at.score = ExprScore{ExprParser(lex, false).parse()};
                lex.expect_punct("]");
                lex.expect_ident("value");
                lex.expect_punct("=");
                at.value = ExprParser(lex, false).parse();
                lex.expect_ident("default");
                lex.expect_punct("=");
                at.default_value = ExprParser(lex, false).parse();
                if (!lex.at_end()) syntax_error(lex.peek(), "trailing tokens after attention line");
                rec.lines.push_back(std::move(at));
            } else {
                PointwiseLine pw;
                pw.value = ExprParser(lex, false).parse();
                if (!lex.at_end()) syntax_error(lex.peek(), "trailing tokens after line");
                rec.lines.push_back(std::move(pw));
            }
            continue;
        }
        syntax_error(head, "unknown directive '" + head.text + "'");
    }

    if (!saw_init) fail(ErrorKind::SyntaxError, "missing init directive");
    if (!saw_accept) fail(ErrorKind::SyntaxError, "missing accept directive");
    validate_recognizer(rec);
    return rec;
}

namespace {

bool plain_letter(char c) {
    return isalnum(static_cast<unsigned char>(c));
}

std::string dsl_expr(const Expr& e) { return expr_to_string(e); }

} // namespace

std::string program_to_dsl(const Recognizer& rec) {
    std::ostringstream out;
    out << "init " << initkind_name(rec.init.kind) << " alphabet=";
    for (size_t k = 0; k < rec.init.alphabet.size(); ++k) {
        if (k) out << ",";
        char c = rec.init.alphabet[k];
        if (plain_letter(c))
            out << c;
        else
            out << "'" << c << "'";
    }
    if (rec.init.kind == InitKind::CustomExpr) {
        // print the custom expression with layer-0 references as c
        std::string body = dsl_expr(rec.init.custom);
        // L0[i] only appears for the letter in init expressions
        std::string needle = "L0[i]";
        size_t pos = 0;
        while ((pos = body.find(needle, pos)) != std::string::npos) {
            body.replace(pos, needle.size(), "c");
            ++pos;
        }
        out << " expr=" << body;
    }
    out << "\n";
    int line_no = 1;
    for (const Line& line : rec.lines) {
        out << "L" << line_no << "(i) = ";
        if (const auto* pw = std::get_if<PointwiseLine>(&line)) {
            out << dsl_expr(pw->value);
        } else {
            const auto& at = std::get<AttentionLine>(line);
            const auto* es = std::get_if<ExprScore>(&at.score.v);
            if (!es)
                fail(ErrorKind::SyntaxError,
                     "line " + std::to_string(line_no) +
                         ": only expression scores have a DSL form; use the JSON format");
            out << "attend " << tiebreak_name(at.tie) << " j [mask=" << masking_name(at.mask)
                << ", score=" << dsl_expr(es->expr) << "] value=" << dsl_expr(at.value)
                << " default=" << dsl_expr(at.default_value);
        }
        out << "\n";
        ++line_no;
    }
    out << "accept at " << (rec.read_pos == ReadPos::Last ? "last" : "first") << " when "
        << dsl_expr(rec.accept) << "\n";
    out << "empty " << (rec.empty_word_accepts ? "accept" : "reject") << "\n";
    return out.str();
}

namespace {

std::set<char> parse_letter_set(Lexer& lex) {
    lex.expect_punct("[");
    std::set<char> letters;
    while (true) {
        Token t = lex.next();
        if (t.kind == Token::Punct && t.text == "]") break;
        if (t.kind == Token::Ident || t.kind == Token::Number) {
            for (char c : t.text) letters.insert(c);
        } else if (t.kind == Token::Letter) {
            letters.insert(t.text[0]);
        } else if (t.kind == Token::Punct && t.text.size() == 1) {
            letters.insert(t.text[0]);
        } else {
            syntax_error(t, "unexpected token in letter set");
        }
    }
    if (letters.empty()) fail(ErrorKind::SyntaxError, "empty letter set");
    return letters;
}

// Formula parsers share the lexer; precedence (tightest first):
// unary (! X Y), U / S (right associative), &, |, ->.
class LtlParser {
public:
    explicit LtlParser(Lexer& lex) : lex_(lex) {}

    Ltl parse() { return parse_implies(); }

private:
    Lexer& lex_;

    Ltl parse_implies() {
        Ltl e = parse_or();
        if (lex_.accept_punct("->")) return ltl::disj(ltl::negate(e), parse_implies());
        return e;
    }
    Ltl parse_or() {
        Ltl e = parse_and();
        while (lex_.accept_punct("|")) e = ltl::disj(e, parse_and());
        return e;
    }
    Ltl parse_and() {
        Ltl e = parse_until();
        while (lex_.accept_punct("&")) e = ltl::conj(e, parse_until());
        return e;
    }
    Ltl parse_until() {
        Ltl e = parse_unary();
        if (lex_.accept_ident("U")) return ltl::until(e, parse_until());
        if (lex_.accept_ident("S")) return ltl::since(e, parse_until());
        return e;
    }
    Ltl parse_unary() {
        if (lex_.accept_punct("!")) return ltl::negate(parse_unary());
        if (lex_.accept_ident("X")) return ltl::next(parse_unary());
        if (lex_.accept_ident("Y")) return ltl::yesterday(parse_unary());
        return parse_atom();
    }
    Ltl parse_atom() {
        Token t = lex_.peek();
        if (t.kind == Token::Punct && t.text == "(") {
            lex_.next();
            Ltl e = parse_implies();
            lex_.expect_punct(")");
            return e;
        }
        if (t.kind == Token::Punct && t.text == "[") return ltl::letter(parse_letter_set(lex_));
        if (t.kind == Token::Punct && t.text == "$") {
            lex_.next();
            Token name = lex_.next();
            if (name.kind != Token::Ident) syntax_error(name, "expected a predicate name after $");
            return ltl::mon(name.text);
        }
        if (t.kind == Token::Ident && (t.text == "true" || t.text == "false")) {
            lex_.next();
            return ltl::truth(t.text == "true");
        }
        syntax_error(t, "unexpected token '" + t.text + "' in formula");
    }
};

class FoParser {
public:
    explicit FoParser(Lexer& lex) : lex_(lex) {}

    Fo parse() { return parse_implies(); }

private:
    Lexer& lex_;

    Fo parse_implies() {
        Fo e = parse_or();
        if (lex_.accept_punct("->")) return fo::disj(fo::negate(e), parse_implies());
        return e;
    }
    Fo parse_or() {
        Fo e = parse_and();
        while (lex_.accept_punct("|")) e = fo::disj(e, parse_and());
        return e;
    }
    Fo parse_and() {
        Fo e = parse_unary();
        while (lex_.accept_punct("&")) e = fo::conj(e, parse_unary());
        return e;
    }
    Fo parse_unary() {
        if (lex_.accept_punct("!")) return fo::negate(parse_unary());
        if (lex_.peek().kind == Token::Ident &&
            (lex_.peek().text == "exists" || lex_.peek().text == "forall")) {
            bool existential = lex_.next().text == "exists";
            Token var = lex_.next();
            if (var.kind != Token::Ident) syntax_error(var, "expected a variable name");
            lex_.expect_punct(".");
            Fo body = parse_implies();
            return existential ? fo::exists(var.text, body) : fo::forall(var.text, body);
        }
        return parse_atom();
    }
    Fo parse_atom() {
        Token t = lex_.peek();
        if (t.kind == Token::Punct && t.text == "(") {
            lex_.next();
            Fo e = parse_implies();
            lex_.expect_punct(")");
            return e;
        }
        if (t.kind == Token::Punct && t.text == "[") {
            std::set<char> letters = parse_letter_set(lex_);
            lex_.expect_punct("(");
            Token var = lex_.next();
            if (var.kind != Token::Ident) syntax_error(var, "expected a variable name");
            lex_.expect_punct(")");
            return fo::letter_at(std::move(letters), var.text);
        }
        if (t.kind == Token::Punct && t.text == "$") {
            lex_.next();
            Token name = lex_.next();
            if (name.kind != Token::Ident) syntax_error(name, "expected a predicate name after $");
            lex_.expect_punct("(");
            Token var = lex_.next();
            if (var.kind != Token::Ident) syntax_error(var, "expected a variable name");
            lex_.expect_punct(")");
            return fo::mon_at(name.text, var.text);
        }
        if (t.kind == Token::Ident && (t.text == "true" || t.text == "false")) {
            lex_.next();
            return fo::truth(t.text == "true");
        }
        if (t.kind == Token::Ident) {
            // comparison x < y
            Token lhs = lex_.next();
            lex_.expect_punct("<");
            Token rhs = lex_.next();
            if (rhs.kind != Token::Ident) syntax_error(rhs, "expected a variable name");
            return fo::less(lhs.text, rhs.text);
        }
        syntax_error(t, "unexpected token '" + t.text + "' in formula");
    }
};

} // namespace

Ltl parse_ltl(const std::string& text) {
    Lexer lex(text, 1);
    if (lex.at_end()) fail(ErrorKind::SyntaxError, "empty formula");
    LtlParser parser(lex);
    Ltl f = parser.parse();
    if (!lex.at_end()) syntax_error(lex.peek(), "trailing tokens after formula");
    return f;
}

Fo parse_fo(const std::string& text) {
    Lexer lex(text, 1);
    if (lex.at_end()) fail(ErrorKind::SyntaxError, "empty formula");
    FoParser parser(lex);
    Fo f = parser.parse();
    if (!lex.at_end()) syntax_error(lex.peek(), "trailing tokens after formula");
    return f;
}

} // namespace uhatlab
